//! Ladder relations between neighbouring eigenpolynomials.
//!
//! With `Φ̃ = ρ Φ`, the first-order factor `E + f` maps `Φ̃(·; n)` to a
//! multiple of `Φ̃(·; n ± 1)`. Dividing by `ρ(x)` and using
//! `ρ(x+1)/ρ(x) = σ + τ` gives the ρ-free relation
//!
//! ```text
//! (σ + τ)(x) Φ(x + 1; n) + f(x; n) Φ(x; n) = c(n) Φ(x; n ± 1)
//! ```
//!
//! which is what this module evaluates. Eigenpolynomials are monic, which
//! pins down `c1(n)` and `c2(n)`.

use alloc::vec::Vec;
use core::fmt;

use crate::darboux::{factor_pair, Branch, DarbouxError};
use crate::families::{FamilyError, FamilySpec};
use crate::poly::Poly;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Up => "up",
            Direction::Down => "down",
        }
    }

    pub fn branch(self) -> Branch {
        match self {
            Direction::Up => Branch::One,
            Direction::Down => Branch::Two,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LadderError {
    Darboux(DarbouxError),
    Family(FamilyError),
    /// Lowering from degree zero.
    NoLowerNeighbor,
    /// The input is not a monic polynomial of the stated degree.
    NotMonicOfDegree {
        n: usize,
    },
    /// The assembled left side has the wrong degree.
    Degree {
        expected: usize,
        found: Option<usize>,
    },
    /// The normalized image does not satisfy the eigenvalue equation at `n ± 1`.
    NotEigen {
        n: usize,
    },
    /// `E + f` annihilates `ρ Φ(·; n)`: the relation holds with `c = 0` and
    /// there is no target to normalize. Happens on finite lattices, e.g.
    /// lowering Hahn at `n = N`.
    Annihilated {
        n: usize,
        direction: Direction,
    },
}

impl fmt::Display for LadderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LadderError::Darboux(e) => e.fmt(f),
            LadderError::Family(e) => e.fmt(f),
            LadderError::NoLowerNeighbor => f.write_str("cannot lower from degree 0"),
            LadderError::NotMonicOfDegree { n } => {
                write!(f, "input is not a monic polynomial of degree {n}")
            }
            LadderError::Degree { expected, found } => match found {
                Some(d) => write!(f, "ladder image has degree {d}, expected {expected}"),
                None => write!(f, "ladder image vanished, expected degree {expected}"),
            },
            LadderError::NotEigen { n } => {
                write!(f, "ladder image is not an eigenpolynomial of degree {n}")
            }
            LadderError::Annihilated { n, direction } => {
                write!(
                    f,
                    "ladder step {} from n={n} annihilates the eigenfunction (c = 0)",
                    direction.name()
                )
            }
        }
    }
}

impl core::error::Error for LadderError {}

impl From<DarbouxError> for LadderError {
    fn from(e: DarbouxError) -> Self {
        LadderError::Darboux(e)
    }
}

impl From<FamilyError> for LadderError {
    fn from(e: FamilyError) -> Self {
        LadderError::Family(e)
    }
}

/// `c · target`, with `target` the monic eigenpolynomial of degree `n ± 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderResult {
    pub n: usize,
    pub direction: Direction,
    pub c: Rational,
    pub target: Poly,
}

/// The two summands `(σ+τ)(x) Φ(x+1)` and `f(x; n) Φ(x)` of the ladder
/// relation for the given branch.
pub fn ladder_terms(
    fam: &FamilySpec,
    n: usize,
    branch: Branch,
    phi_n: &Poly,
) -> Result<(Poly, Poly), LadderError> {
    let data = factor_pair(fam, n as i64, branch)?;
    Ok((&fam.gauge_ratio() * &phi_n.shift(1), data.f() * phi_n))
}

fn is_eigen(fam: &FamilySpec, p: &Poly, degree: usize) -> bool {
    let lam = fam.lambda(degree as i64);
    fam.hypergeometric_operator().apply(p) == p.scale(&lam)
}

fn image(
    fam: &FamilySpec,
    n: usize,
    phi_n: &Poly,
    direction: Direction,
) -> Result<(usize, Poly), LadderError> {
    if phi_n.degree() != Some(n) || !phi_n.is_monic() {
        return Err(LadderError::NotMonicOfDegree { n });
    }
    let target_degree = match direction {
        Direction::Up => n + 1,
        Direction::Down => n.checked_sub(1).ok_or(LadderError::NoLowerNeighbor)?,
    };
    let (a, b) = ladder_terms(fam, n, direction.branch(), phi_n)?;
    Ok((target_degree, &a + &b))
}

fn step(
    fam: &FamilySpec,
    n: usize,
    phi_n: &Poly,
    direction: Direction,
) -> Result<LadderResult, LadderError> {
    let (target_degree, image) = image(fam, n, phi_n, direction)?;
    if image.is_zero() {
        return Err(LadderError::Annihilated { n, direction });
    }
    if image.degree() != Some(target_degree) {
        return Err(LadderError::Degree {
            expected: target_degree,
            found: image.degree(),
        });
    }
    let c = image.leading();
    let target = image.div_scalar(&c);
    if !is_eigen(fam, &target, target_degree) {
        return Err(LadderError::NotEigen { n: target_degree });
    }
    Ok(LadderResult {
        n,
        direction,
        c,
        target,
    })
}

/// `c1(n) Φ(x; n+1) = (σ+τ)(x) Φ(x+1; n) + f1(x; n) Φ(x; n)`.
pub fn raise_once(fam: &FamilySpec, n: usize, phi_n: &Poly) -> Result<LadderResult, LadderError> {
    step(fam, n, phi_n, Direction::Up)
}

/// `c2(n) Φ(x; n-1) = (σ+τ)(x) Φ(x+1; n) + f2(x; n) Φ(x; n)`.
pub fn lower_once(fam: &FamilySpec, n: usize, phi_n: &Poly) -> Result<LadderResult, LadderError> {
    step(fam, n, phi_n, Direction::Down)
}

/// One ladder step starting from the oracle eigenpolynomial of degree `n`.
pub fn ladder_from_oracle(
    fam: &FamilySpec,
    n: usize,
    direction: Direction,
) -> Result<LadderResult, LadderError> {
    if direction == Direction::Down && n == 0 {
        return Err(LadderError::NoLowerNeighbor);
    }
    let phi = fam.eigenpoly(n)?;
    step(fam, n, &phi, direction)
}

/// The ladder constant `c(n)` for the oracle eigenpolynomial, allowing
/// `c = 0` when the step annihilates it.
pub fn ladder_constant(
    fam: &FamilySpec,
    n: usize,
    direction: Direction,
) -> Result<Rational, LadderError> {
    match ladder_from_oracle(fam, n, direction) {
        Ok(r) => Ok(r.c),
        Err(LadderError::Annihilated { .. }) => Ok(Rational::zero()),
        Err(e) => Err(e),
    }
}

/// A generated eigenpolynomial and the raising constant `c1(n-1)` that
/// produced it (`None` for `Φ(x; 0) = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedTerm {
    pub n: usize,
    pub poly: Poly,
    pub raised_by: Option<Rational>,
}

/// `Φ(x; 0), …, Φ(x; n_max)` by repeated raising from `Φ(x; 0) = 1`.
pub fn generate_family(fam: &FamilySpec, n_max: usize) -> Result<Vec<GeneratedTerm>, LadderError> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(GeneratedTerm {
        n: 0,
        poly: Poly::one(),
        raised_by: None,
    });
    for n in 0..n_max {
        let up = raise_once(fam, n, &out[n].poly)?;
        out.push(GeneratedTerm {
            n: n + 1,
            poly: up.target,
            raised_by: Some(up.c),
        });
    }
    Ok(out)
}

/// Raise then lower: checks `c1(n) c2(n+1) = -μ1(n)` and that lowering
/// returns the starting polynomial. When lowering annihilates `Φ(·; n+1)`
/// only the constant law (with `c2 = 0`) can be checked.
pub fn roundtrip_check(fam: &FamilySpec, n: usize) -> Result<bool, LadderError> {
    let phi = fam.eigenpoly(n)?;
    let up = raise_once(fam, n, &phi)?;
    let mu1 = factor_pair(fam, n as i64, Branch::One)?.mu().clone();
    match lower_once(fam, n + 1, &up.target) {
        Ok(down) => Ok(&up.c * &down.c == -mu1 && down.target == phi),
        Err(LadderError::Annihilated { .. }) => Ok(mu1.is_zero()),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i(n: i64) -> Rational {
        Rational::from(n)
    }

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn charlier1() -> FamilySpec {
        FamilySpec::charlier(i(1)).unwrap()
    }

    fn hahn003() -> FamilySpec {
        FamilySpec::hahn(i(0), i(0), i(3)).unwrap()
    }

    #[test]
    fn raise_charlier() {
        let up = raise_once(&charlier1(), 2, &p(&[1, -3, 1])).unwrap();
        assert_eq!(up.c, i(-1));
        assert_eq!(up.target, p(&[-1, 8, -6, 1]));
        // monic recurrence p3 = (x - 3) p2 - 2 p1
        let rec = &(&p(&[-3, 1]) * &p(&[1, -3, 1])) - &p(&[-1, 1]).scale(&i(2));
        assert_eq!(up.target, rec);
    }

    #[test]
    fn raise_hahn() {
        let h = hahn003();
        let (a, b) = ladder_terms(&h, 1, Branch::One, &p(&[-1, 1])).unwrap();
        assert_eq!(&a + &b, p(&[-1, 6, -3]));
        let up = raise_once(&h, 1, &p(&[-1, 1])).unwrap();
        assert_eq!(up.c, i(-3));
        assert_eq!(
            up.target,
            Poly::from_coeffs(alloc::vec![Rational::new(1, 3), i(-2), i(1)])
        );
    }

    #[test]
    fn raise_from_one_matches_oracle() {
        for fam in [charlier1(), hahn003()] {
            let up = raise_once(&fam, 0, &Poly::one()).unwrap();
            assert_eq!(up.target, fam.eigenpoly(1).unwrap());
        }
    }

    #[test]
    fn lower_charlier() {
        let mu = Rational::new(5, 2);
        let fam = FamilySpec::charlier(mu.clone()).unwrap();
        for n in 1..6usize {
            let phi = fam.eigenpoly(n).unwrap();
            let (a, b) = ladder_terms(&fam, n, Branch::Two, &phi).unwrap();
            assert_eq!(&a + &b, phi.delta().scale(&mu));
            let down = lower_once(&fam, n, &phi).unwrap();
            assert_eq!(down.c, &mu * &i(n as i64));
        }
        let down = lower_once(&charlier1(), 2, &p(&[1, -3, 1])).unwrap();
        assert_eq!(down.c, i(2));
        assert_eq!(down.target, p(&[-1, 1]));
        let down = lower_once(&charlier1(), 1, &p(&[-1, 1])).unwrap();
        assert_eq!(down.c, i(1));
        assert_eq!(down.target, Poly::one());
    }

    #[test]
    fn lower_from_zero_is_rejected() {
        assert_eq!(
            lower_once(&charlier1(), 0, &Poly::one()),
            Err(LadderError::NoLowerNeighbor)
        );
        assert_eq!(
            ladder_from_oracle(&charlier1(), 0, Direction::Down),
            Err(LadderError::NoLowerNeighbor)
        );
    }

    #[test]
    fn input_must_be_monic_of_degree_n() {
        assert_eq!(
            raise_once(&charlier1(), 2, &p(&[1, -3, 2])),
            Err(LadderError::NotMonicOfDegree { n: 2 })
        );
        assert_eq!(
            raise_once(&charlier1(), 1, &p(&[1, -3, 1])),
            Err(LadderError::NotMonicOfDegree { n: 1 })
        );
    }

    #[test]
    fn non_eigen_input_is_caught() {
        // monic of the right degree but not the eigenpolynomial
        assert!(raise_once(&charlier1(), 2, &p(&[0, 0, 1])).is_err());
    }

    #[test]
    fn lowering_annihilates_past_the_lattice() {
        // Hahn with N = 3 at n = 3, Kravchuk with N = 8 at n = 9
        let kr = FamilySpec::kravchuk(Rational::new(1, 2), i(8)).unwrap();
        for (fam, n) in [(hahn003(), 3usize), (kr, 9)] {
            assert_eq!(
                ladder_from_oracle(&fam, n, Direction::Down),
                Err(LadderError::Annihilated {
                    n,
                    direction: Direction::Down
                })
            );
            assert_eq!(ladder_constant(&fam, n, Direction::Down).unwrap(), i(0));
            assert!(factor_pair(&fam, n as i64, Branch::Two)
                .unwrap()
                .mu()
                .is_zero());
            assert!(roundtrip_check(&fam, n - 1).unwrap());
            // one step further the image is nonzero again
            assert!(ladder_from_oracle(&fam, n + 1, Direction::Down).is_ok());
        }
    }

    #[test]
    fn generate_examples() {
        let fam = charlier1();
        let polys: Vec<Poly> = generate_family(&fam, 3)
            .unwrap()
            .into_iter()
            .map(|t| t.poly)
            .collect();
        assert_eq!(
            polys,
            [p(&[1]), p(&[-1, 1]), p(&[1, -3, 1]), p(&[-1, 8, -6, 1])]
        );
        let h: Vec<Poly> = generate_family(&hahn003(), 2)
            .unwrap()
            .into_iter()
            .map(|t| t.poly)
            .collect();
        assert_eq!(
            h[2],
            Poly::from_coeffs(alloc::vec![Rational::new(1, 3), i(-2), i(1)])
        );
        let zero = generate_family(&fam, 0).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].raised_by, None);
    }

    #[test]
    fn roundtrip_examples() {
        assert!(roundtrip_check(&charlier1(), 2).unwrap());
        let mu = Rational::new(1, 3);
        let fam = FamilySpec::charlier(mu.clone()).unwrap();
        for n in 0..6usize {
            let up = ladder_from_oracle(&fam, n, Direction::Up).unwrap();
            let down = ladder_from_oracle(&fam, n + 1, Direction::Down).unwrap();
            assert_eq!(up.c, i(-1));
            assert_eq!(down.c, &mu * &i(n as i64 + 1));
            assert!(roundtrip_check(&fam, n).unwrap());
        }
    }
}
