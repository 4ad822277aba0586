//! Hypergeometric families: the data `σ`, `τ` of
//! `(σ(x) Δ∇ + τ(x) Δ) Φ = λ(n) Φ`, the conjugated second-order operator
//! `H(x; n)`, the gauge ratio `ρ(x+1)/ρ(x) = σ(x) + τ(x)`, and a direct
//! eigenpolynomial solver used as an oracle for everything downstream.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::diffop::DiffOp;
use crate::poly::Poly;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyKind {
    Charlier,
    Meixner,
    Kravchuk,
    Hahn,
    Custom,
}

impl FamilyKind {
    pub const BUILT_IN: [FamilyKind; 4] = [
        FamilyKind::Charlier,
        FamilyKind::Meixner,
        FamilyKind::Kravchuk,
        FamilyKind::Hahn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Charlier => "charlier",
            FamilyKind::Meixner => "meixner",
            FamilyKind::Kravchuk => "kravchuk",
            FamilyKind::Hahn => "hahn",
            FamilyKind::Custom => "custom",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "charlier" => Some(FamilyKind::Charlier),
            "meixner" => Some(FamilyKind::Meixner),
            "kravchuk" | "krawtchouk" => Some(FamilyKind::Kravchuk),
            "hahn" => Some(FamilyKind::Hahn),
            "custom" => Some(FamilyKind::Custom),
            _ => None,
        }
    }

    /// Parameter names accepted by [`FamilySpec::make`], in echo order.
    pub fn parameter_names(self) -> &'static [&'static str] {
        match self {
            FamilyKind::Charlier => &["mu"],
            FamilyKind::Meixner => &["gamma", "mu"],
            FamilyKind::Kravchuk => &["p", "N"],
            FamilyKind::Hahn => &["alpha", "beta", "N"],
            FamilyKind::Custom => &[],
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyError {
    InadmissibleParameter {
        name: String,
        value: Rational,
        reason: &'static str,
    },
    MissingParameter {
        family: FamilyKind,
        name: &'static str,
    },
    UnknownParameter {
        family: FamilyKind,
        name: String,
    },
    InvalidCoefficients(&'static str),
    /// `λ(n) = λ(k)` for some `k < n`: the degree-`n` eigenpolynomial is not
    /// determined by the eigenvalue equation.
    EigenvalueCollision {
        n: usize,
        k: usize,
    },
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::InadmissibleParameter {
                name,
                value,
                reason,
            } => {
                write!(f, "inadmissible parameter {name}={value}: {reason}")
            }
            FamilyError::MissingParameter { family, name } => {
                write!(f, "family {family} requires parameter {name}")
            }
            FamilyError::UnknownParameter { family, name } => {
                write!(f, "family {family} has no parameter {name:?}")
            }
            FamilyError::InvalidCoefficients(msg) => write!(f, "invalid coefficients: {msg}"),
            FamilyError::EigenvalueCollision { n, k } => {
                write!(f, "eigenvalue collision: lambda({n}) = lambda({k})")
            }
        }
    }
}

impl core::error::Error for FamilyError {}

/// The five scalars `σ(x) = σ0 x² + σ1 x + σ2`, `τ(x) = τ0 x + τ1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficients {
    pub s0: Rational,
    pub s1: Rational,
    pub s2: Rational,
    pub t0: Rational,
    pub t1: Rational,
}

/// An immutable hypergeometric family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    kind: FamilyKind,
    sigma: Poly,
    tau: Poly,
    params: Vec<(&'static str, Rational)>,
}

fn positive_integer(name: &str, value: &Rational) -> Result<(), FamilyError> {
    if value.is_integer() && value.is_positive() {
        Ok(())
    } else {
        Err(FamilyError::InadmissibleParameter {
            name: String::from(name),
            value: value.clone(),
            reason: "must be a positive integer",
        })
    }
}

impl FamilySpec {
    /// Charlier: `σ = x`, `τ = μ - x`.
    pub fn charlier(mu: Rational) -> Result<Self, FamilyError> {
        if mu.is_zero() {
            return Err(FamilyError::InadmissibleParameter {
                name: "mu".into(),
                value: mu,
                reason: "must be nonzero",
            });
        }
        Ok(FamilySpec {
            kind: FamilyKind::Charlier,
            sigma: Poly::x(),
            tau: Poly::from_coeffs(vec![mu.clone(), Rational::from(-1)]),
            params: vec![("mu", mu)],
        })
    }

    /// Meixner: `σ = x`, `τ = (μ - 1) x + μ γ`.
    pub fn meixner(gamma: Rational, mu: Rational) -> Result<Self, FamilyError> {
        if mu.is_zero() || mu.is_one() {
            return Err(FamilyError::InadmissibleParameter {
                name: "mu".into(),
                value: mu,
                reason: "must differ from 0 and 1",
            });
        }
        Ok(FamilySpec {
            kind: FamilyKind::Meixner,
            sigma: Poly::x(),
            tau: Poly::from_coeffs(vec![&mu * &gamma, &mu - &Rational::one()]),
            params: vec![("gamma", gamma), ("mu", mu)],
        })
    }

    /// Kravchuk: `σ = x`, `τ = (N p - x) / (1 - p)`.
    pub fn kravchuk(p: Rational, n: Rational) -> Result<Self, FamilyError> {
        positive_integer("N", &n)?;
        let q = &Rational::one() - &p;
        let inv_q = q
            .recip()
            .ok_or_else(|| FamilyError::InadmissibleParameter {
                name: "p".into(),
                value: p.clone(),
                reason: "must differ from 1",
            })?;
        Ok(FamilySpec {
            kind: FamilyKind::Kravchuk,
            sigma: Poly::x(),
            tau: Poly::from_coeffs(vec![&(&n * &p) * &inv_q, -&inv_q]),
            params: vec![("p", p), ("N", n)],
        })
    }

    /// Hahn: `σ = -x² + (N + α) x`, `τ = (β + 1)(N - 1) - (α + β + 2) x`.
    pub fn hahn(alpha: Rational, beta: Rational, n: Rational) -> Result<Self, FamilyError> {
        positive_integer("N", &n)?;
        let t0 = -(&(&alpha + &beta) + &Rational::from(2));
        if t0.is_zero() {
            return Err(FamilyError::InadmissibleParameter {
                name: "alpha+beta".into(),
                value: &alpha + &beta,
                reason: "alpha + beta = -2 makes tau constant",
            });
        }
        let one = Rational::one();
        Ok(FamilySpec {
            kind: FamilyKind::Hahn,
            sigma: Poly::from_coeffs(vec![Rational::zero(), &n + &alpha, -&one]),
            tau: Poly::from_coeffs(vec![&(&beta + &one) * &(&n - &one), t0]),
            params: vec![("alpha", alpha), ("beta", beta), ("N", n)],
        })
    }

    /// Arbitrary `σ` of degree at most 2 and `τ` of degree exactly 1.
    pub fn custom(sigma: Poly, tau: Poly) -> Result<Self, FamilyError> {
        if sigma.degree().is_some_and(|d| d > 2) {
            return Err(FamilyError::InvalidCoefficients(
                "sigma must have degree <= 2",
            ));
        }
        if tau.degree() != Some(1) {
            return Err(FamilyError::InvalidCoefficients(
                "tau must have degree exactly 1",
            ));
        }
        Ok(FamilySpec {
            kind: FamilyKind::Custom,
            sigma,
            tau,
            params: Vec::new(),
        })
    }

    /// Builds a built-in family from named parameters, e.g.
    /// `[("alpha", 0), ("beta", 0), ("N", 3)]` for Hahn.
    pub fn make(kind: FamilyKind, params: &[(&str, Rational)]) -> Result<Self, FamilyError> {
        let names = kind.parameter_names();
        if let Some((bad, _)) = params.iter().find(|(k, _)| !names.contains(k)) {
            return Err(FamilyError::UnknownParameter {
                family: kind,
                name: String::from(*bad),
            });
        }
        let get = |name: &'static str| {
            params
                .iter()
                .rev()
                .find(|(k, _)| *k == name)
                .map(|(_, v)| v.clone())
                .ok_or(FamilyError::MissingParameter { family: kind, name })
        };
        match kind {
            FamilyKind::Charlier => FamilySpec::charlier(get("mu")?),
            FamilyKind::Meixner => FamilySpec::meixner(get("gamma")?, get("mu")?),
            FamilyKind::Kravchuk => FamilySpec::kravchuk(get("p")?, get("N")?),
            FamilyKind::Hahn => FamilySpec::hahn(get("alpha")?, get("beta")?, get("N")?),
            FamilyKind::Custom => Err(FamilyError::InvalidCoefficients(
                "custom families are built from sigma and tau",
            )),
        }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn sigma(&self) -> &Poly {
        &self.sigma
    }

    pub fn tau(&self) -> &Poly {
        &self.tau
    }

    pub fn params(&self) -> &[(&'static str, Rational)] {
        &self.params
    }

    pub fn param(&self, name: &str) -> Option<&Rational> {
        self.params.iter().find(|(k, _)| *k == name).map(|(_, v)| v)
    }

    pub fn coefficients(&self) -> Coefficients {
        Coefficients {
            s0: self.sigma.coeff(2),
            s1: self.sigma.coeff(1),
            s2: self.sigma.coeff(0),
            t0: self.tau.coeff(1),
            t1: self.tau.coeff(0),
        }
    }

    /// Departures from the usual positivity ranges. These never block
    /// construction since the algebraic identities do not depend on them.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        let zero = Rational::zero();
        let one = Rational::one();
        let minus_one = Rational::from(-1);
        let mut want = |ok: bool, msg: &str| {
            if !ok {
                out.push(String::from(msg));
            }
        };
        match self.kind {
            FamilyKind::Charlier => {
                want(
                    self.param("mu").is_some_and(|m| m > &zero),
                    "charlier: expected mu > 0",
                );
            }
            FamilyKind::Meixner => {
                let mu = self.param("mu").cloned().unwrap_or_default();
                let gamma = self.param("gamma").cloned().unwrap_or_default();
                want(mu > zero && mu < one, "meixner: expected 0 < mu < 1");
                want(gamma > zero, "meixner: expected gamma > 0");
            }
            FamilyKind::Kravchuk => {
                let p = self.param("p").cloned().unwrap_or_default();
                want(p > zero && p < one, "kravchuk: expected 0 < p < 1");
            }
            FamilyKind::Hahn => {
                let a = self.param("alpha").cloned().unwrap_or_default();
                let b = self.param("beta").cloned().unwrap_or_default();
                want(a > minus_one, "hahn: expected alpha > -1");
                want(b > minus_one, "hahn: expected beta > -1");
            }
            FamilyKind::Custom => {}
        }
        out
    }

    /// `λ(n) = n τ0 + n (n - 1) σ0`.
    pub fn lambda(&self, n: i64) -> Rational {
        let c = self.coefficients();
        let n_r = Rational::from(n);
        &(&n_r * &c.t0) + &(&(&n_r * &Rational::from(n - 1)) * &c.s0)
    }

    /// `H(x; n) = E² - [2σ(x+1) + τ(x+1) + λ(n)] E + (σ + τ)(x) σ(x+1)`.
    pub fn hamiltonian(&self, n: i64) -> DiffOp {
        self.hamiltonian_with_lambda(&self.lambda(n))
    }

    /// `H` with an explicit eigenvalue in place of `λ(n)`.
    pub fn hamiltonian_with_lambda(&self, lambda: &Rational) -> DiffOp {
        let s1 = self.sigma.shift(1);
        let middle =
            &(&s1.scale(&Rational::from(2)) + &self.tau.shift(1)) + &Poly::constant(lambda.clone());
        DiffOp::from_terms([
            (2, Poly::one()),
            (1, -middle),
            (0, &self.gauge_ratio() * &s1),
        ])
    }

    /// `σ Δ∇ + τ Δ` written in shifts: `(σ+τ) E - (2σ+τ) + σ E⁻¹`.
    pub fn hypergeometric_operator(&self) -> DiffOp {
        DiffOp::from_terms([
            (1, self.gauge_ratio()),
            (0, -(&self.sigma.scale(&Rational::from(2)) + &self.tau)),
            (-1, self.sigma.clone()),
        ])
    }

    /// `σ + τ = ρ(x+1) / ρ(x)`.
    pub fn gauge_ratio(&self) -> Poly {
        &self.sigma + &self.tau
    }

    /// `ρ(0), …, ρ(m)` with `ρ(0) = 1`.
    pub fn gauge_lattice(&self, m: usize) -> GaugeSequence {
        let ratio = self.gauge_ratio();
        let mut values = Vec::with_capacity(m + 1);
        let mut rho = Rational::one();
        values.push(rho.clone());
        for x in 0..m {
            rho = &rho * &ratio.eval(&Rational::from(x as i64));
            values.push(rho.clone());
        }
        GaugeSequence { values }
    }

    /// The monic degree-`n` solution of `(σΔ∇ + τΔ) Φ = λ(n) Φ`.
    ///
    /// Solved on the monomial basis: the operator maps `x^k` to `λ(k) x^k`
    /// plus lower terms, so the system is upper triangular with diagonal
    /// `λ(k) - λ(n)` and is back-substituted from the top.
    pub fn eigenpoly(&self, n: usize) -> Result<Poly, FamilyError> {
        let lam_n = self.lambda(n as i64);
        // images[k] = σ Δ∇ x^k + τ Δ x^k
        let images: Vec<Poly> = (0..=n)
            .map(|k| {
                let mono = Poly::monomial(Rational::one(), k);
                &(&self.sigma * &mono.nabla().delta()) + &(&self.tau * &mono.delta())
            })
            .collect();
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = Rational::one();
        for i in (0..n).rev() {
            let diag = &images[i].coeff(i) - &lam_n;
            if diag.is_zero() {
                return Err(FamilyError::EigenvalueCollision { n, k: i });
            }
            let rhs: Rational = ((i + 1)..=n).map(|k| &images[k].coeff(i) * &c[k]).sum();
            c[i] = -(rhs / diag);
        }
        Ok(Poly::from_coeffs(c))
    }

    /// `(σ+τ)(x+1) Φ(x+2) - [2σ(x+1) + τ(x+1) + λ] Φ(x+1) + σ(x+1) Φ(x)`,
    /// which is `H (ρ Φ)` divided by `ρ(x+1)`.
    pub fn gauge_residual(&self, phi: &Poly, lambda: &Rational) -> Poly {
        let s1 = self.sigma.shift(1);
        let middle =
            &(&s1.scale(&Rational::from(2)) + &self.tau.shift(1)) + &Poly::constant(lambda.clone());
        let a = &self.gauge_ratio().shift(1) * &phi.shift(2);
        let b = &middle * &phi.shift(1);
        let c = &s1 * phi;
        &(&a - &b) + &c
    }

    /// Checks that `H(x; n)` annihilates `ρ Φ(·; n)` in the ρ-free form.
    pub fn verify_gauge_identity(&self, n: usize) -> Result<bool, FamilyError> {
        let phi = self.eigenpoly(n)?;
        Ok(self.gauge_residual(&phi, &self.lambda(n as i64)).is_zero())
    }

    /// Human-readable label such as `hahn(alpha=0, beta=0, N=3)`.
    pub fn label(&self) -> String {
        if self.kind == FamilyKind::Custom {
            return format!("custom(sigma={}, tau={})", self.sigma, self.tau);
        }
        let inner: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        format!("{}({})", self.kind, inner.join(", "))
    }
}

/// `ρ(0), ρ(1), …, ρ(m)` on the integer lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeSequence {
    pub values: Vec<Rational>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn i(n: i64) -> Rational {
        Rational::from(n)
    }

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn hahn003() -> FamilySpec {
        FamilySpec::hahn(i(0), i(0), i(3)).unwrap()
    }

    #[test]
    fn built_in_sigma_tau() {
        let c = FamilySpec::charlier(i(1)).unwrap();
        assert_eq!(c.sigma(), &p(&[0, 1]));
        assert_eq!(c.tau(), &p(&[1, -1]));

        let m = FamilySpec::meixner(r(1, 2), r(1, 3)).unwrap();
        assert_eq!(m.tau(), &Poly::from_coeffs(vec![r(1, 6), r(-2, 3)]));
        // σ + τ = μ (x + γ)
        assert_eq!(m.gauge_ratio(), Poly::from_coeffs(vec![r(1, 6), r(1, 3)]));

        let h = hahn003();
        assert_eq!(h.sigma(), &p(&[0, 3, -1]));
        assert_eq!(h.tau(), &p(&[2, -2]));
        // (x + β + 1)(N - 1 - x)
        assert_eq!(h.gauge_ratio(), &p(&[1, 1]) * &p(&[2, -1]));
    }

    #[test]
    fn make_by_name() {
        let h = FamilySpec::make(
            FamilyKind::Hahn,
            &[("alpha", i(0)), ("beta", i(0)), ("N", i(3))],
        )
        .unwrap();
        assert_eq!(h, hahn003());
        assert!(matches!(
            FamilySpec::make(FamilyKind::Charlier, &[]),
            Err(FamilyError::MissingParameter { name: "mu", .. })
        ));
        assert!(matches!(
            FamilySpec::make(FamilyKind::Charlier, &[("mu", i(1)), ("nu", i(2))]),
            Err(FamilyError::UnknownParameter { .. })
        ));
    }

    #[test]
    fn inadmissible_parameters() {
        assert!(FamilySpec::charlier(i(0)).is_err());
        assert!(FamilySpec::meixner(i(1), i(1)).is_err());
        assert!(FamilySpec::kravchuk(r(1, 2), r(5, 2)).is_err());
        assert!(FamilySpec::kravchuk(i(1), i(4)).is_err());
        assert!(FamilySpec::hahn(i(0), i(0), i(0)).is_err());
        assert!(FamilySpec::hahn(i(-1), i(-1), i(3)).is_err());
        assert!(FamilySpec::custom(p(&[0, 0, 0, 1]), p(&[0, 1])).is_err());
        assert!(FamilySpec::custom(p(&[0, 1]), p(&[1])).is_err());
    }

    #[test]
    fn warnings_outside_positivity_range() {
        assert!(FamilySpec::charlier(i(1)).unwrap().warnings().is_empty());
        assert_eq!(FamilySpec::charlier(i(-2)).unwrap().warnings().len(), 1);
        assert_eq!(
            FamilySpec::meixner(i(-1), i(2)).unwrap().warnings().len(),
            2
        );
    }

    #[test]
    fn lambda_values() {
        assert_eq!(FamilySpec::charlier(i(1)).unwrap().lambda(3), i(-3));
        assert_eq!(hahn003().lambda(2), i(-6));
        assert_eq!(
            FamilySpec::meixner(r(1, 2), r(1, 3)).unwrap().lambda(0),
            i(0)
        );
        assert_eq!(hahn003().lambda(-1), i(0));
    }

    #[test]
    fn hamiltonian_charlier() {
        let c = FamilySpec::charlier(i(1)).unwrap();
        let h0 = DiffOp::from_terms([(2, p(&[1])), (1, p(&[-2, -1])), (0, p(&[1, 1]))]);
        assert_eq!(c.hamiltonian(0), h0);
        // λ(2) = -2 turns -(x + μ + λ + 1) into -x.
        let h2 = DiffOp::from_terms([(2, p(&[1])), (1, p(&[0, -1])), (0, p(&[1, 1]))]);
        assert_eq!(c.hamiltonian(2), h2);
    }

    #[test]
    fn hamiltonian_hahn_middle_coefficient() {
        let h = hahn003();
        for n in 0..5 {
            let expected = Poly::from_coeffs(vec![&i(-4) - &h.lambda(n), i(0), i(2)]);
            assert_eq!(h.hamiltonian(n).coeff(1), expected);
        }
    }

    #[test]
    fn gauge_examples() {
        let c1 = FamilySpec::charlier(i(1)).unwrap();
        assert_eq!(c1.gauge_lattice(3).values, [i(1), i(1), i(1), i(1)]);
        let c2 = FamilySpec::charlier(r(1, 2)).unwrap();
        assert_eq!(c2.gauge_lattice(2).values, [i(1), r(1, 2), r(1, 4)]);
        assert_eq!(hahn003().gauge_lattice(2).values, [i(1), i(2), i(4)]);
        assert_eq!(c2.gauge_ratio(), Poly::constant(r(1, 2)));
    }

    #[test]
    fn eigenpoly_examples() {
        let c = FamilySpec::charlier(i(1)).unwrap();
        assert_eq!(c.eigenpoly(2).unwrap(), p(&[1, -3, 1]));
        assert_eq!(c.eigenpoly(0).unwrap(), Poly::one());
        let h = hahn003();
        assert_eq!(h.eigenpoly(1).unwrap(), p(&[-1, 1]));
        assert_eq!(
            h.eigenpoly(2).unwrap(),
            Poly::from_coeffs(vec![r(1, 3), i(-2), i(1)])
        );
    }

    #[test]
    fn eigenvalue_collision_is_reported() {
        // α + β = -3: λ(n) = -n(n - 2) gives λ(2) = λ(0).
        let h = FamilySpec::hahn(r(-3, 2), r(-3, 2), i(4)).unwrap();
        assert_eq!(
            h.eigenpoly(2),
            Err(FamilyError::EigenvalueCollision { n: 2, k: 0 })
        );
        assert!(h.verify_gauge_identity(2).is_err());
    }

    #[test]
    fn gauge_identity_examples() {
        let c = FamilySpec::charlier(i(1)).unwrap();
        assert!(c.verify_gauge_identity(2).unwrap());
        assert!(c.verify_gauge_identity(0).unwrap());
        assert!(hahn003().verify_gauge_identity(2).unwrap());
        // wrong eigenvalue leaves a residual
        let phi = c.eigenpoly(2).unwrap();
        assert!(!c.gauge_residual(&phi, &c.lambda(3)).is_zero());
    }

    #[test]
    fn hypergeometric_operator_matches_direct_differences() {
        let h = hahn003();
        let q = p(&[3, -1, 4, 1]);
        let direct = &(h.sigma() * &q.nabla().delta()) + &(h.tau() * &q.delta());
        assert_eq!(h.hypergeometric_operator().apply(&q), direct);
    }
}
