//! Space parameters and power weights.

use crate::error::{LabError, Result};

/// Boundary condition selecting the Dirichlet or Neumann Laplacian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bc {
    Dirichlet,
    Neumann,
}

impl Bc {
    pub fn as_str(&self) -> &'static str {
        match self {
            Bc::Dirichlet => "dirichlet",
            Bc::Neumann => "neumann",
        }
    }
}

impl std::str::FromStr for Bc {
    type Err = LabError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dirichlet" | "dir" => Ok(Bc::Dirichlet),
            "neumann" | "neu" => Ok(Bc::Neumann),
            other => Err(LabError::InvalidParameter(format!("unknown bc '{other}'"))),
        }
    }
}

/// Parameters (p, k, gamma, d) of a weighted Sobolev space on the half-space.
///
/// The semigroup for these parameters acts on W^{k,p}(w_{gamma + k p}); all
/// norm evaluations there use the effective weight exponent `gamma + k p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceParams {
    pub p: f64,
    pub k: i32,
    pub gamma: f64,
    pub d: usize,
}

impl SpaceParams {
    pub fn new(p: f64, k: i32, gamma: f64, d: usize) -> Result<SpaceParams> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(LabError::InvalidParameter(format!("p = {p}, need p > 1")));
        }
        if k < -1 {
            return Err(LabError::InvalidParameter(format!("k = {k}, need k >= -1")));
        }
        if !(1..=3).contains(&d) {
            return Err(LabError::InvalidParameter(format!("d = {d}, need d in 1..=3")));
        }
        if !gamma.is_finite() {
            return Err(LabError::InvalidParameter("gamma not finite".into()));
        }
        if hits_excluded_set(gamma, p) {
            return Err(LabError::ExcludedWeightExponent { gamma, p });
        }
        let sp = SpaceParams { p, k, gamma, d };
        if sp.weight_exponent() <= -1.0 {
            return Err(LabError::NonIntegrableWeight { gamma: sp.weight_exponent() });
        }
        Ok(sp)
    }

    /// Effective weight exponent gamma + k p of the space the operator acts on.
    pub fn weight_exponent(&self) -> f64 {
        self.gamma + self.k as f64 * self.p
    }

    /// Dirichlet growth exponent (gamma + kp - 2p + 1) / (2p); positive in
    /// the polynomial-growth regime, used as the fitted-slope reference.
    pub fn dirichlet_growth_exponent(&self) -> f64 {
        (self.weight_exponent() - 2.0 * self.p + 1.0) / (2.0 * self.p)
    }

    /// Neumann growth exponent (gamma + kp - p + 1) / (2p).
    pub fn neumann_growth_exponent(&self) -> f64 {
        (self.weight_exponent() - self.p + 1.0) / (2.0 * self.p)
    }

    pub fn growth_exponent(&self, bc: Bc) -> f64 {
        match bc {
            Bc::Dirichlet => self.dirichlet_growth_exponent(),
            Bc::Neumann => self.neumann_growth_exponent(),
        }
    }

    /// Whether the semigroup is bounded on this space (no polynomial growth).
    pub fn is_bounded_regime(&self, bc: Bc) -> bool {
        match bc {
            Bc::Dirichlet => self.weight_exponent() < 2.0 * self.p - 1.0,
            Bc::Neumann => self.weight_exponent() < self.p - 1.0,
        }
    }
}

/// gamma in {j p - 1 : j >= 1} up to floating tolerance.
pub fn hits_excluded_set(gamma: f64, p: f64) -> bool {
    if gamma <= p - 1.0 - 1e-12 {
        return false;
    }
    let j = ((gamma + 1.0) / p).round();
    j >= 1.0 && (gamma - (j * p - 1.0)).abs() < 1e-12
}

/// The power weight w_gamma(x) = x_1^gamma.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerWeight {
    pub gamma: f64,
}

impl PowerWeight {
    pub fn new(gamma: f64) -> PowerWeight {
        PowerWeight { gamma }
    }

    pub fn eval(&self, x1: f64) -> f64 {
        debug_assert!(x1 > 0.0);
        x1.powf(self.gamma)
    }

    /// Locally integrable over (0, 1) iff gamma > -1.
    pub fn locally_integrable(&self) -> bool {
        self.gamma > -1.0
    }

    pub fn require_integrable(&self) -> Result<()> {
        if self.locally_integrable() {
            Ok(())
        } else {
            Err(LabError::NonIntegrableWeight { gamma: self.gamma })
        }
    }
}

/// All multi-indices alpha in N^d with |alpha| <= k, lexicographic order.
pub fn multi_indices(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        let used: usize = cur.iter().sum();
        for a in 0..=(k - used) {
            cur.push(a);
            rec(d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, k, &mut Vec::new(), &mut out);
    out
}
