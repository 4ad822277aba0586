//! Every identity over the built-in families for n = 0..=12.

use hyperdarboux_core::darboux::{mu_shift, verify_chain};
use hyperdarboux_core::ladder::{
    generate_family, ladder_constant, ladder_from_oracle, ladder_terms, roundtrip_check,
};
use hyperdarboux_core::{
    factor_pair, Branch, DarbouxError, Direction, FamilyKind, FamilySpec, LadderError, Rational,
};

const N_MAX: usize = 12;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn families() -> Vec<FamilySpec> {
    vec![
        FamilySpec::charlier(r(1, 3)).unwrap(),
        FamilySpec::charlier(r(1, 1)).unwrap(),
        FamilySpec::charlier(r(5, 2)).unwrap(),
        FamilySpec::meixner(r(1, 2), r(1, 3)).unwrap(),
        FamilySpec::kravchuk(r(1, 2), r(8, 1)).unwrap(),
        FamilySpec::hahn(r(0, 1), r(0, 1), r(3, 1)).unwrap(),
        FamilySpec::hahn(r(1, 2), r(3, 2), r(8, 1)).unwrap(),
    ]
}

fn is_hahn003_lowering_at_zero(fam: &FamilySpec, n: i64, b: Branch) -> bool {
    fam.label() == "hahn(alpha=0, beta=0, N=3)" && n == 0 && b == Branch::Two
}

#[test]
fn eigen_oracle_and_gauge_identity() {
    for fam in families() {
        let op = fam.hypergeometric_operator();
        for n in 0..=N_MAX {
            let phi = fam.eigenpoly(n).unwrap();
            assert!(phi.is_monic() && phi.degree() == Some(n));
            assert_eq!(
                op.apply(&phi),
                phi.scale(&fam.lambda(n as i64)),
                "{} n={n}",
                fam.label()
            );
            assert!(
                fam.verify_gauge_identity(n).unwrap(),
                "{} n={n}",
                fam.label()
            );
        }
    }
}

#[test]
fn all_step_identities() {
    for fam in families() {
        for n in 0..=N_MAX as i64 {
            for b in Branch::BOTH {
                match factor_pair(&fam, n, b) {
                    Ok(data) => {
                        let checks = data.inputs(&fam).check_all(&fam);
                        assert!(checks.all(), "{} n={n} b={b}: {checks:?}", fam.label());
                        let s0 = fam.coefficients().s0;
                        assert_eq!(data.f().coeff(2), data.g().coeff(2));
                        if !s0.is_zero() {
                            assert_eq!(data.f().degree(), Some(2));
                            assert_eq!(data.f().leading(), -s0);
                        } else {
                            assert!(data.f().degree() <= Some(1) && data.g().degree() <= Some(1));
                        }
                    }
                    Err(e) => {
                        assert!(
                            is_hahn003_lowering_at_zero(&fam, n, b),
                            "{}: {e}",
                            fam.label()
                        );
                        assert_eq!(e, DarbouxError::DegenerateDenominator { n, branch: b });
                    }
                }
            }
        }
    }
}

#[test]
fn branch_pairing() {
    for fam in families() {
        for n in 0..N_MAX as i64 {
            let up = factor_pair(&fam, n, Branch::One).unwrap();
            let down_next = factor_pair(&fam, n + 1, Branch::Two).unwrap();
            assert_eq!(up.g(), down_next.f(), "{} n={n}", fam.label());
            assert_eq!(up.mu(), down_next.mu(), "{} n={n}", fam.label());
            assert_eq!(down_next.g(), up.f(), "{} n={n}", fam.label());
        }
    }
}

#[test]
fn dressing_chain() {
    for fam in families() {
        assert!(verify_chain(&fam, 0, 10).unwrap(), "{}", fam.label());
    }
}

#[test]
fn ladder_relations_match_oracle() {
    for fam in families() {
        let generated = generate_family(&fam, N_MAX).unwrap();
        for term in &generated {
            assert_eq!(
                term.poly,
                fam.eigenpoly(term.n).unwrap(),
                "{} n={}",
                fam.label(),
                term.n
            );
        }
        for n in 0..=N_MAX {
            let up = ladder_from_oracle(&fam, n, Direction::Up).unwrap();
            assert_eq!(up.target, fam.eigenpoly(n + 1).unwrap());
            assert!(!up.c.is_zero());
            if n == 0 {
                continue;
            }
            match ladder_from_oracle(&fam, n, Direction::Down) {
                Ok(down) => assert_eq!(down.target, fam.eigenpoly(n - 1).unwrap()),
                Err(LadderError::Annihilated { .. }) => {
                    // only on a finite lattice, and exactly where μ2(n) vanishes
                    assert!(
                        mu_shift(&fam, n as i64, Branch::Two).unwrap().is_zero(),
                        "{} n={n}",
                        fam.label()
                    );
                }
                Err(e) => panic!("{} n={n}: {e}", fam.label()),
            }
        }
    }
}

#[test]
fn ladder_constant_laws() {
    for fam in families() {
        for n in 0..N_MAX {
            let c1 = ladder_constant(&fam, n, Direction::Up).unwrap();
            let c2_next = ladder_constant(&fam, n + 1, Direction::Down).unwrap();
            let mu1 = mu_shift(&fam, n as i64, Branch::One).unwrap();
            assert_eq!(&c1 * &c2_next, -mu1, "{} n={n}", fam.label());
            let mu2_next = mu_shift(&fam, n as i64 + 1, Branch::Two).unwrap();
            assert_eq!(&c2_next * &c1, -mu2_next);
            assert!(roundtrip_check(&fam, n).unwrap(), "{} n={n}", fam.label());
        }
    }
}

#[test]
fn raising_cancels_top_degree() {
    for fam in families()
        .into_iter()
        .filter(|f| !f.coefficients().s0.is_zero())
    {
        for n in 0..=N_MAX {
            let phi = fam.eigenpoly(n).unwrap();
            let (a, b) = ladder_terms(&fam, n, Branch::One, &phi).unwrap();
            assert_eq!(a.degree(), Some(n + 2));
            assert_eq!(b.degree(), Some(n + 2));
            assert_eq!(a.coeff(n + 2), -b.coeff(n + 2));
        }
    }
}

#[test]
fn finite_lattice_gauge_values_are_nonzero() {
    for fam in families() {
        let values = fam.gauge_lattice(20).values;
        // σ + τ vanishes at x = N - 1 (Hahn) and x = N (Kravchuk)
        let big_n = fam
            .param("N")
            .and_then(Rational::to_i64)
            .map(|n| n as usize);
        let limit = match (fam.kind(), big_n) {
            (FamilyKind::Hahn, Some(n)) => n - 1,
            (FamilyKind::Kravchuk, Some(n)) => n,
            _ => 20,
        };
        assert!(
            values[..=limit].iter().all(|v| !v.is_zero()),
            "{}",
            fam.label()
        );
        if limit < 20 {
            assert!(values[limit + 1].is_zero());
        }
    }
}
