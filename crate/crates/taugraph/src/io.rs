//! Text formats: graphs, family definitions, weight tables, censuses and
//! sample streams.
//!
//! Graph files use 1-based labels. The edge-list form is a first line `n`
//! followed by one `u v` pair per line; the mask form is a single line
//! `n:hex` where bit `i` of the hex number is the `i`-th pair in
//! lexicographic order `(1,2), (1,3), …, (n-1,n)`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use taugraph_core::enumeration::{UnlabelledCensus, WeightTable};
use taugraph_core::families::{Flag, Flags, GraphFamily};
use taugraph_core::graph::MAX_MASK_VERTICES;
use taugraph_core::scalar::{BigRational, Scalar};
use taugraph_core::Graph;

use crate::error::{CliError, CliResult};

pub fn parse_graph(text: &str) -> CliResult<Graph> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let first = lines.next().ok_or_else(|| CliError::config("empty graph text"))?;
    if let Some((n, hex)) = first.split_once(':') {
        if lines.next().is_some() {
            return Err(CliError::config("mask-form graph must be a single line"));
        }
        let n: usize = n.trim().parse().map_err(|_| CliError::config("bad vertex count"))?;
        if n > MAX_MASK_VERTICES {
            return Err(CliError::config(format!("mask form supports at most {MAX_MASK_VERTICES} vertices")));
        }
        let mask = u64::from_str_radix(hex.trim(), 16).map_err(|_| CliError::config("bad hex edge mask"))?;
        return Ok(Graph::from_edge_mask(n, mask)?);
    }
    let n: usize = first.parse().map_err(|_| CliError::config(format!("bad vertex count {first:?}")))?;
    let mut edges = Vec::new();
    for line in lines {
        let mut it = line.split_whitespace();
        let (Some(u), Some(v), None) = (it.next(), it.next(), it.next()) else {
            return Err(CliError::config(format!("bad edge line {line:?}")));
        };
        let parse = |s: &str| -> CliResult<usize> {
            let x: usize = s.parse().map_err(|_| CliError::config(format!("bad vertex {s:?}")))?;
            if x == 0 || x > n {
                return Err(CliError::config(format!("vertex {x} outside 1..={n}")));
            }
            Ok(x - 1)
        };
        edges.push((parse(u)?, parse(v)?));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Edge-list form with 1-based labels.
pub fn render_graph(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{} {}", u + 1, v + 1);
    }
    s
}

/// Mask form `n:hex`, for graphs small enough to have one.
pub fn render_graph_mask(g: &Graph) -> Option<String> {
    g.edge_mask().map(|m| format!("{}:{m:x}", g.n()))
}

pub fn read_graph(path: &Path) -> CliResult<Graph> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_graph(&text)
}

/// JSON form of a graph with 1-based edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().map(|(u, v)| [u + 1, v + 1]).collect(),
        }
    }

    pub fn to_graph(&self) -> CliResult<Graph> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for &[u, v] in &self.edges {
            if u == 0 || v == 0 || u > self.n || v > self.n {
                return Err(CliError::config(format!("edge {u}-{v} outside 1..={}", self.n)));
            }
            edges.push((u - 1, v - 1));
        }
        Ok(Graph::from_edges(self.n, &edges)?)
    }
}

/// One line of a sample stream.
pub fn sample_line(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from_graph(g)).expect("graph serialises")
}

pub fn parse_samples(text: &str) -> CliResult<Vec<Graph>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let gj: GraphJson = serde_json::from_str(l).map_err(|e| CliError::config(format!("bad sample line: {e}")))?;
            gj.to_graph()
        })
        .collect()
}

/// An excluded minor in a family file: a path to a graph file (relative to
/// the family file) or an inline graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphRef {
    Path(String),
    Inline(GraphJson),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct FlagsJson {
    pub bridge_addable: Option<bool>,
    pub decomposable: Option<bool>,
    pub addable: Option<bool>,
    pub trimmable: Option<bool>,
}

impl FlagsJson {
    fn to_flags(&self) -> Flags {
        let f = |x: Option<bool>| x.map_or(Flag::Unknown, Flag::from);
        Flags {
            bridge_addable: f(self.bridge_addable),
            decomposable: f(self.decomposable),
            addable: f(self.addable),
            trimmable: f(self.trimmable),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub name: String,
    pub excluded_minors: Vec<GraphRef>,
    #[serde(default)]
    pub flags: FlagsJson,
}

impl FamilyFile {
    pub fn to_family(&self, base: &Path) -> CliResult<GraphFamily> {
        let mut minors = Vec::with_capacity(self.excluded_minors.len());
        for r in &self.excluded_minors {
            minors.push(match r {
                GraphRef::Path(p) => read_graph(&base.join(p))?,
                GraphRef::Inline(gj) => gj.to_graph()?,
            });
        }
        Ok(GraphFamily::excluded(self.name.clone(), minors, self.flags.to_flags()))
    }
}

pub fn read_family_file(path: &Path) -> CliResult<GraphFamily> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let file: FamilyFile =
        serde_json::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."));
    file.to_family(&base)
}

/// A built-in family name, or a path to a family JSON file.
pub fn resolve_family(spec: &str) -> CliResult<GraphFamily> {
    match GraphFamily::by_name(spec) {
        Ok(f) => Ok(f),
        Err(_) if spec.ends_with(".json") || Path::new(spec).exists() => read_family_file(Path::new(spec)),
        Err(e) => Err(CliError::config(e.to_string())),
    }
}

/// Fixed 12-significant-digit rendering.
pub fn fmt12(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').into()
        } else {
            s
        }
    } else {
        format!("{x:.11e}")
    }
}

pub const TABLE_HEADER: &str = "n,a_n,c_n,b_n,r_n,growth_estimate";

/// CSV rows for `n_min..` of an exact table.
pub fn table_csv(t: &WeightTable<BigRational>, n_min: usize) -> String {
    let ratios = t.ratios();
    let growth = t.growth_estimates();
    let mut s = format!("{TABLE_HEADER}\n");
    for n in n_min..t.len() {
        let r = ratios[n].as_ref().map(|r| r.to_string()).unwrap_or_default();
        let g = growth[n].map(fmt12).unwrap_or_default();
        let _ = writeln!(s, "{n},{},{},{},{r},{g}", t.a[n], t.c[n], t.b[n]);
    }
    s
}

/// CSV rows for a floating-point table.
pub fn table_csv_f64(t: &WeightTable<f64>, n_min: usize) -> String {
    let ratios = t.ratios();
    let growth = t.growth_estimates();
    let mut s = format!("{TABLE_HEADER}\n");
    for n in n_min..t.len() {
        let r = ratios[n].map(fmt12).unwrap_or_default();
        let g = growth[n].map(fmt12).unwrap_or_default();
        let _ = writeln!(s, "{n},{},{},{},{r},{g}", fmt12(t.a[n]), fmt12(t.c[n]), fmt12(t.b[n]));
    }
    s
}

pub const CENSUS_HEADER: &str = "code,v,e,kappa,aut";

pub fn census_csv(c: &UnlabelledCensus) -> String {
    let mut s = format!("{CENSUS_HEADER}\n");
    for e in &c.entries {
        let _ = writeln!(s, "{},{},{},{},{}", e.code, e.v, e.e, e.kappa, e.aut);
    }
    s
}

/// Rational parameter from the command line; decimals are read exactly.
pub fn parse_param(s: &str) -> CliResult<BigRational> {
    let r = taugraph_core::scalar::parse_rational(s).ok_or_else(|| CliError::config(format!("bad number {s:?}")))?;
    if r.to_f64() <= 0.0 {
        return Err(CliError::config(format!("parameter {s} must be positive")));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 3), (2, 3)]).unwrap();
        let text = render_graph(&g);
        assert_eq!(text, "4\n1 2\n2 4\n3 4\n");
        assert_eq!(parse_graph(&text).unwrap(), g);
        assert_eq!(parse_graph("# comment\n3\n1 2 # edge\n").unwrap(), Graph::path(2).disjoint_union(&Graph::new(1)));
        assert!(parse_graph("3\n1 4\n").is_err());
        assert!(parse_graph("3\n1 1\n").is_err());
        assert_eq!(parse_graph("0\n").unwrap(), Graph::empty());
    }

    #[test]
    fn mask_form() {
        let g = Graph::cycle(4);
        let m = render_graph_mask(&g).unwrap();
        assert_eq!(parse_graph(&m).unwrap(), g);
        assert_eq!(parse_graph("3:7").unwrap(), Graph::complete(3));
        assert!(parse_graph("12:1").is_err());
    }

    #[test]
    fn samples_round_trip() {
        let gs = vec![Graph::path(3), Graph::empty(), Graph::complete(4)];
        let text: String = gs.iter().map(|g| sample_line(g) + "\n").collect();
        assert_eq!(parse_samples(&text).unwrap(), gs);
    }

    #[test]
    fn family_files() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("k4.txt"), render_graph(&Graph::complete(4))).unwrap();
        let json = r#"{"name":"sp","excluded_minors":["k4.txt",{"n":3,"edges":[[1,2]]}],"flags":{"addable":true}}"#;
        let path = dir.path().join("fam.json");
        std::fs::write(&path, json).unwrap();
        let fam = read_family_file(&path).unwrap();
        assert_eq!(fam.name(), "sp");
        assert_eq!(fam.excluded_minors().unwrap().len(), 2);
        assert_eq!(fam.flags().addable, Flag::True);
        assert_eq!(fam.flags().trimmable, Flag::Unknown);
        assert!(resolve_family("planar").is_ok());
        assert!(resolve_family("no-such-family").is_err());
    }

    #[test]
    fn twelve_digits() {
        assert_eq!(fmt12(0.5), "0.5");
        assert_eq!(fmt12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt12(27.226878), "27.226878");
        assert_eq!(fmt12(1e20), "1.00000000000e20");
        assert_eq!(fmt12(0.0), "0");
    }
}
