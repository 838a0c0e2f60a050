//! The weighting τ(G) = λ₀^{e₀} λ₁^{e₁} ν^{κ}.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::structure::{bridge_partition, component_count};

/// Edge and component parameters. `lambda0` weighs bridges and `lambda1`
/// the remaining edges; the base model has them equal.
#[derive(Clone, Debug, PartialEq)]
pub struct Weighting<T> {
    lambda0: T,
    lambda1: T,
    nu: T,
}

impl<T: Scalar> Weighting<T> {
    /// Base model τ(G) = λ^{e(G)} ν^{κ(G)}.
    pub fn new(lambda: T, nu: T) -> Result<Self> {
        Self::extended(lambda.clone(), lambda, nu)
    }

    /// Bridges and non-bridges weighted separately.
    pub fn extended(lambda0: T, lambda1: T, nu: T) -> Result<Self> {
        for x in [&lambda0, &lambda1, &nu] {
            if !(*x > T::zero()) {
                return Err(Error::invalid("weighting parameters must be strictly positive"));
            }
        }
        Ok(Weighting { lambda0, lambda1, nu })
    }

    pub fn uniform() -> Self {
        Weighting {
            lambda0: T::one(),
            lambda1: T::one(),
            nu: T::one(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.lambda0 == self.lambda1
    }

    /// λ for the base model. On an extended weighting this is λ₁.
    pub fn lambda(&self) -> &T {
        &self.lambda1
    }

    pub fn lambda0(&self) -> &T {
        &self.lambda0
    }

    pub fn lambda1(&self) -> &T {
        &self.lambda1
    }

    pub fn nu(&self) -> &T {
        &self.nu
    }

    /// Weight from precomputed statistics.
    pub fn eval(&self, bridges: usize, others: usize, components: usize) -> T {
        self.lambda0.powi(bridges as i64) * self.lambda1.powi(others as i64) * self.nu.powi(components as i64)
    }

    pub fn to_f64(&self) -> Weighting<f64> {
        Weighting {
            lambda0: self.lambda0.to_f64(),
            lambda1: self.lambda1.to_f64(),
            nu: self.nu.to_f64(),
        }
    }
}

/// τ(g). Equals 1 on the empty graph.
pub fn weight<T: Scalar>(g: &Graph, w: &Weighting<T>) -> T {
    let kappa = component_count(g);
    if w.is_diagonal() {
        w.eval(0, g.edge_count(), kappa)
    } else {
        let (e0, e1) = bridge_partition(g);
        w.eval(e0, e1, kappa)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use num_rational::BigRational;

    #[test]
    fn examples() {
        let w = Weighting::new(rational(2, 1), rational(3, 1)).unwrap();
        assert_eq!(weight(&Graph::empty(), &w), rational(1, 1));
        assert_eq!(weight(&Graph::path(2), &w), rational(6, 1));

        let tri_pendant = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let ext = Weighting::extended(rational(2, 1), rational(1, 1), rational(5, 1)).unwrap();
        assert_eq!(weight(&tri_pendant, &ext), rational(10, 1));
    }

    #[test]
    fn rejects_non_positive() {
        assert!(Weighting::new(0.0, 1.0).is_err());
        assert!(Weighting::extended(rational(1, 1), rational(-1, 1), rational(1, 1)).is_err());
        assert!(Weighting::<BigRational>::uniform().is_diagonal());
    }
}
