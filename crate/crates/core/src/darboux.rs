//! Discrete Darboux factorization of `H(x; n)`.
//!
//! For each degree `n` and branch, the closed forms give scalars `φ(n)`,
//! `ψ(n)`, `μ(n)` and quadratic polynomials `f`, `g` with
//!
//! ```text
//! H(x; n)  - μ(n) = (E + g)(E + f)
//! H(x; n') - μ(n) = (E + f)(E + g),   n' = n ± 1
//! ```
//!
//! from which the intertwining `H(x; n') (E + f) = (E + f) H(x; n)` follows.
//! All of these, along with the Riccati equation behind them and the
//! dressing-chain system, are checked here as exact identities.

use core::fmt;

use crate::diffop::DiffOp;
use crate::families::FamilySpec;
use crate::poly::Poly;
use crate::rational::Rational;

/// Which linear Riccati solution to use: `One` raises the degree, `Two`
/// lowers it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    One,
    Two,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::One, Branch::Two];

    pub fn index(self) -> u8 {
        match self {
            Branch::One => 1,
            Branch::Two => 2,
        }
    }

    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(Branch::One),
            2 => Some(Branch::Two),
            _ => None,
        }
    }

    /// `n + 1` for branch one, `n - 1` for branch two.
    pub fn target_degree(self, n: i64) -> i64 {
        match self {
            Branch::One => n + 1,
            Branch::Two => n - 1,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DarbouxError {
    /// `2φ(n) + 2σ0 - τ0 = 0`, i.e. `λ(n ± 1) = λ(n)`: no Darboux step here.
    DegenerateDenominator { n: i64, branch: Branch },
    /// The closed forms failed to factor `H`; only an implementation bug
    /// can produce this.
    InternalIdentityFailure { n: i64, branch: Branch },
}

impl fmt::Display for DarbouxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DarbouxError::DegenerateDenominator { n, branch } => write!(
                f,
                "degenerate denominator at n={n}, branch {branch}: lambda(n') = lambda(n)"
            ),
            DarbouxError::InternalIdentityFailure { n, branch } => write!(
                f,
                "internal identity failure at n={n}, branch {branch}: (E+g)(E+f) != H - mu"
            ),
        }
    }
}

impl core::error::Error for DarbouxError {}

/// `(φ(n), ψ(n))` such that `φ(n) x + ψ(n)` solves the discrete Riccati
/// equation for the given branch.
pub fn riccati_coeffs(
    fam: &FamilySpec,
    n: i64,
    branch: Branch,
) -> Result<(Rational, Rational), DarbouxError> {
    let c = fam.coefficients();
    let lam = fam.lambda(n);
    let phi = match branch {
        Branch::One => &c.t0 + &(&Rational::from(n - 1) * &c.s0),
        Branch::Two => -(&Rational::from(n) * &c.s0),
    };
    let two = Rational::from(2);
    let denom = &(&(&two * &phi) + &(&two * &c.s0)) - &c.t0;
    if denom.is_zero() {
        return Err(DarbouxError::DegenerateDenominator { n, branch });
    }
    let inner = &(&(&c.t1 + &c.t0) - &c.s0) - &phi;
    let numer = &(&(&(&phi * &inner) + &(&lam * &c.s0)) + &(&lam * &c.s1))
        + &(&(&Rational::half() * &lam) * &c.t0);
    Ok((phi, numer / denom))
}

fn mu_from(fam: &FamilySpec, n: i64, phi: &Rational, psi: &Rational) -> Rational {
    let c = fam.coefficients();
    let lam = fam.lambda(n);
    let half_lam = &Rational::half() * &lam;
    let first = psi * &(&(&(&(psi + phi) + &c.s1) + &c.s0) - &c.t1);
    let second = &half_lam * &(&(&(&c.s0 + &c.s1) + &(&Rational::from(2) * &c.s2)) + &c.t1);
    let third = phi * &(&(&c.s2 + &c.t1) + &half_lam);
    let fourth = &Rational::new(1, 4) * &(&lam * &lam);
    &(&(&first - &second) - &third) - &fourth
}

/// The factorization shift `μ(n)`.
pub fn mu_shift(fam: &FamilySpec, n: i64, branch: Branch) -> Result<Rational, DarbouxError> {
    let (phi, psi) = riccati_coeffs(fam, n, branch)?;
    Ok(mu_from(fam, n, &phi, &psi))
}

fn f_from(fam: &FamilySpec, n: i64, phi: &Rational, psi: &Rational) -> Poly {
    let c = fam.coefficients();
    let half_lam = &Rational::half() * &fam.lambda(n);
    let constant = &(&(psi - &c.s2) - &c.t1) - &half_lam;
    let linear = &(phi - &c.s1) - &c.t0;
    Poly::from_coeffs(alloc::vec![constant, linear, -&c.s0])
}

fn g_from(fam: &FamilySpec, n: i64, phi: &Rational, psi: &Rational) -> Poly {
    let c = fam.coefficients();
    let half_lam = &Rational::half() * &fam.lambda(n);
    let linear = -(&(phi + &(&Rational::from(2) * &c.s0)) + &c.s1);
    let constant = -(&(&(&(&(&c.s0 + &c.s1) + &c.s2) + &half_lam) + phi) + psi);
    Poly::from_coeffs(alloc::vec![constant, linear, -&c.s0])
}

/// One verified Darboux step: `H(x; n) - μ(n) = (E + g)(E + f)` holds for
/// every value of this type, since [`factor_pair`] checks it before
/// returning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationData {
    branch: Branch,
    n: i64,
    phi: Rational,
    psi: Rational,
    mu: Rational,
    f: Poly,
    g: Poly,
}

impl FactorizationData {
    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn phi(&self) -> &Rational {
        &self.phi
    }

    pub fn psi(&self) -> &Rational {
        &self.psi
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    pub fn target_degree(&self) -> i64 {
        self.branch.target_degree(self.n)
    }

    /// Inputs for the identity checks, with the eigenvalue of the
    /// neighbouring operator `λ(n ± 1)`.
    pub fn inputs(&self, fam: &FamilySpec) -> StepInputs {
        StepInputs {
            branch: self.branch,
            n: self.n,
            phi: self.phi.clone(),
            psi: self.psi.clone(),
            mu: self.mu.clone(),
            f: self.f.clone(),
            g: self.g.clone(),
            target_lambda: fam.lambda(self.target_degree()),
        }
    }
}

/// Builds `f`, `g` from the closed forms and checks the factorization.
pub fn factor_pair(
    fam: &FamilySpec,
    n: i64,
    branch: Branch,
) -> Result<FactorizationData, DarbouxError> {
    let (phi, psi) = riccati_coeffs(fam, n, branch)?;
    let mu = mu_from(fam, n, &phi, &psi);
    let f = f_from(fam, n, &phi, &psi);
    let g = g_from(fam, n, &phi, &psi);
    let data = FactorizationData {
        branch,
        n,
        phi,
        psi,
        mu,
        f,
        g,
    };
    if !data.inputs(fam).factorization_holds(fam) {
        return Err(DarbouxError::InternalIdentityFailure { n, branch });
    }
    Ok(data)
}

/// A single-coefficient corruption used as a negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Perturbation {
    /// `f + 1`
    F,
    /// `g + 1`
    G,
    /// `λ(n ± 1) + 1` in the neighbouring operator
    Lambda,
    /// `ψ(n) + 1` in the Riccati solution
    Psi,
}

impl Perturbation {
    pub const ALL: [Perturbation; 4] = [
        Perturbation::F,
        Perturbation::G,
        Perturbation::Lambda,
        Perturbation::Psi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Perturbation::F => "f",
            Perturbation::G => "g",
            Perturbation::Lambda => "lambda",
            Perturbation::Psi => "psi",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Perturbation::ALL.into_iter().find(|p| p.name() == s)
    }
}

/// Outcome of every per-step identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct StepChecks {
    /// `H(n) - μ = (E + g)(E + f)`
    pub factorization: bool,
    /// the coefficient system `f(x+1) + g = -2σ(x+1) - τ(x+1) - λ`,
    /// `f g = (σ + τ) σ(x+1) - μ`
    pub riccati_system: bool,
    /// `(E + f)(E + g) = H(n') - μ`
    pub swap: bool,
    /// `Δ(f - g) = λ(n') - λ(n)`
    pub eigen_shift: bool,
    /// `H(n') (E + f) = (E + f) H(n)`
    pub commutation: bool,
    /// the discrete Riccati equation for `φ(n) x + ψ(n)`
    pub riccati_residual: bool,
}

impl StepChecks {
    pub fn all(&self) -> bool {
        self.factorization
            && self.riccati_system
            && self.swap
            && self.eigen_shift
            && self.commutation
            && self.riccati_residual
    }
}

/// The raw data every identity is evaluated on. Unlike
/// [`FactorizationData`] this carries no guarantee, which lets negative
/// controls feed corrupted values through the same checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepInputs {
    pub branch: Branch,
    pub n: i64,
    pub phi: Rational,
    pub psi: Rational,
    pub mu: Rational,
    pub f: Poly,
    pub g: Poly,
    /// Eigenvalue of the neighbouring operator, `λ(n ± 1)` when exact.
    pub target_lambda: Rational,
}

impl StepInputs {
    pub fn perturb(mut self, p: Perturbation) -> Self {
        let one = Rational::one();
        match p {
            Perturbation::F => self.f = &self.f + &Poly::one(),
            Perturbation::G => self.g = &self.g + &Poly::one(),
            Perturbation::Lambda => self.target_lambda += &one,
            Perturbation::Psi => self.psi += &one,
        }
        self
    }

    fn e_plus_f(&self) -> DiffOp {
        DiffOp::shift_plus(&self.f)
    }

    fn e_plus_g(&self) -> DiffOp {
        DiffOp::shift_plus(&self.g)
    }

    pub fn factorization_holds(&self, fam: &FamilySpec) -> bool {
        let lhs = fam.hamiltonian(self.n).minus_scalar(&self.mu);
        (&lhs - &self.e_plus_g().compose(&self.e_plus_f())).is_zero()
    }

    pub fn riccati_system_holds(&self, fam: &FamilySpec) -> bool {
        let s1 = fam.sigma().shift(1);
        let lam = Poly::constant(fam.lambda(self.n));
        let first = &(&self.f.shift(1) + &self.g)
            + &(&(&s1.scale(&Rational::from(2)) + &fam.tau().shift(1)) + &lam);
        let second = &(&(&self.f * &self.g) - &(&fam.gauge_ratio() * &s1))
            + &Poly::constant(self.mu.clone());
        first.is_zero() && second.is_zero()
    }

    pub fn swap_holds(&self, fam: &FamilySpec) -> bool {
        let rhs = fam
            .hamiltonian_with_lambda(&self.target_lambda)
            .minus_scalar(&self.mu);
        (&self.e_plus_f().compose(&self.e_plus_g()) - &rhs).is_zero()
    }

    pub fn eigen_shift_holds(&self, fam: &FamilySpec) -> bool {
        let diff = (&self.f - &self.g).delta();
        let expected = &self.target_lambda - &fam.lambda(self.n);
        diff == Poly::constant(expected)
    }

    pub fn commutation_holds(&self, fam: &FamilySpec) -> bool {
        let step = self.e_plus_f();
        let lhs = fam
            .hamiltonian_with_lambda(&self.target_lambda)
            .compose(&step);
        let rhs = step.compose(&fam.hamiltonian(self.n));
        (&lhs - &rhs).is_zero()
    }

    /// Left side of the Riccati equation for `φ(x) = φ(n) x + ψ(n)`,
    /// assembled term by term.
    pub fn riccati_residual(&self, fam: &FamilySpec) -> Poly {
        let lam = fam.lambda(self.n);
        let half_lam = &Rational::half() * &lam;
        let sigma = fam.sigma();
        let s1 = sigma.shift(1);
        let phi = Poly::from_coeffs(alloc::vec![self.psi.clone(), self.phi.clone()]);
        let phi1 = phi.shift(1);
        let terms = [
            (&(&s1 + sigma) + fam.tau()).scale(&half_lam),
            Poly::constant(&Rational::new(1, 4) * &(&lam * &lam)),
            Poly::constant(self.mu.clone()),
            &fam.gauge_ratio() * &phi1,
            -(&s1 * &phi),
            phi.delta().scale(&half_lam),
            -(&phi * &phi1),
        ];
        terms.iter().fold(Poly::zero(), |acc, t| &acc + t)
    }

    pub fn riccati_residual_holds(&self, fam: &FamilySpec) -> bool {
        self.riccati_residual(fam).is_zero()
    }

    pub fn check_all(&self, fam: &FamilySpec) -> StepChecks {
        StepChecks {
            factorization: self.factorization_holds(fam),
            riccati_system: self.riccati_system_holds(fam),
            swap: self.swap_holds(fam),
            eigen_shift: self.eigen_shift_holds(fam),
            commutation: self.commutation_holds(fam),
            riccati_residual: self.riccati_residual_holds(fam),
        }
    }
}

pub fn verify_factorization(
    fam: &FamilySpec,
    n: i64,
    branch: Branch,
) -> Result<bool, DarbouxError> {
    let inputs = factor_pair(fam, n, branch)?.inputs(fam);
    Ok(inputs.factorization_holds(fam) && inputs.riccati_system_holds(fam))
}

pub fn verify_swap(fam: &FamilySpec, n: i64, branch: Branch) -> Result<bool, DarbouxError> {
    let inputs = factor_pair(fam, n, branch)?.inputs(fam);
    Ok(inputs.swap_holds(fam) && inputs.eigen_shift_holds(fam))
}

pub fn verify_commutation(fam: &FamilySpec, n: i64, branch: Branch) -> Result<bool, DarbouxError> {
    Ok(factor_pair(fam, n, branch)?
        .inputs(fam)
        .commutation_holds(fam))
}

pub fn verify_riccati_residual(
    fam: &FamilySpec,
    n: i64,
    branch: Branch,
) -> Result<bool, DarbouxError> {
    Ok(factor_pair(fam, n, branch)?
        .inputs(fam)
        .riccati_residual_holds(fam))
}

/// Both lines of the dressing-chain system with `α ≡ 0` between two
/// consecutive raising steps `j` and `j + 1`.
pub fn chain_link_holds(current: &FactorizationData, next: &FactorizationData) -> bool {
    let line1 = &(current.f() + &current.g().shift(1)) - &(&next.f().shift(1) + next.g());
    let line2 = &(&(current.f() * current.g()) - &(next.f() * next.g()))
        - &Poly::constant(next.mu() - current.mu());
    line1.is_zero() && line2.is_zero()
}

/// The dressing chain along branch one from `n0` through `n0 + steps`.
pub fn verify_chain(fam: &FamilySpec, n0: i64, steps: usize) -> Result<bool, DarbouxError> {
    let mut current = factor_pair(fam, n0, Branch::One)?;
    let mut ok = true;
    for j in 1..=steps as i64 {
        let next = factor_pair(fam, n0 + j, Branch::One)?;
        ok &= chain_link_holds(&current, &next);
        current = next;
    }
    Ok(ok)
}
