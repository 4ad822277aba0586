//! The full identity sweep over `n = 0..=n_max`, aggregated into a
//! deterministic list of check rows.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::darboux::{
    factor_pair, verify_chain, Branch, DarbouxError, FactorizationData, Perturbation,
};
use crate::families::FamilySpec;
use crate::ladder::{
    generate_family, ladder_constant, ladder_from_oracle, roundtrip_check, Direction, LadderError,
};
use crate::reference::{compare_at, has_printed_forms, ComparisonReport};

pub const DEFAULT_N_MAX: usize = 12;

/// Check names in report order.
pub const CHECK_NAMES: [&str; 15] = [
    "factorization",
    "riccati_system",
    "swap",
    "eigen_shift",
    "riccati_residual",
    "commutation",
    "branch_pairing",
    "gauge",
    "ladder_up",
    "ladder_down",
    "roundtrip",
    "lowering_law",
    "generation",
    "dressing_chain",
    "reference",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub n_max: usize,
    pub branches: Vec<Branch>,
    /// Treat degenerate `(n, branch)` cells as failures instead of skips.
    pub strict: bool,
    pub perturbation: Option<Perturbation>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            n_max: DEFAULT_N_MAX,
            branches: Branch::BOTH.to_vec(),
            strict: false,
            perturbation: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRow {
    pub check: &'static str,
    pub n: Option<i64>,
    pub branch: Option<Branch>,
    pub status: Status,
    pub detail: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub family: FamilySpec,
    pub options: SuiteOptions,
    pub rows: Vec<CheckRow>,
    pub reference: Option<ComparisonReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != Status::Fail)
    }

    /// Per-check counts, in [`CHECK_NAMES`] order, omitting checks with no rows.
    pub fn tallies(&self) -> Vec<(&'static str, Tally)> {
        CHECK_NAMES
            .iter()
            .filter_map(|&name| {
                let mut t = Tally::default();
                for row in self.rows.iter().filter(|r| r.check == name) {
                    match row.status {
                        Status::Pass => t.pass += 1,
                        Status::Fail => t.fail += 1,
                        Status::Skip => t.skip += 1,
                    }
                }
                (t != Tally::default()).then_some((name, t))
            })
            .collect()
    }

    pub fn status_of(&self, check: &str) -> Option<Status> {
        let rows: Vec<&CheckRow> = self.rows.iter().filter(|r| r.check == check).collect();
        if rows.is_empty() {
            None
        } else if rows.iter().any(|r| r.status == Status::Fail) {
            Some(Status::Fail)
        } else if rows.iter().all(|r| r.status == Status::Skip) {
            Some(Status::Skip)
        } else {
            Some(Status::Pass)
        }
    }
}

struct Rows {
    rows: Vec<CheckRow>,
    strict: bool,
}

impl Rows {
    fn push(
        &mut self,
        check: &'static str,
        n: Option<i64>,
        branch: Option<Branch>,
        status: Status,
    ) {
        self.rows.push(CheckRow {
            check,
            n,
            branch,
            status,
            detail: None,
        });
    }

    fn skip(&mut self, check: &'static str, n: Option<i64>, branch: Option<Branch>, why: String) {
        let status = if self.strict {
            Status::Fail
        } else {
            Status::Skip
        };
        self.rows.push(CheckRow {
            check,
            n,
            branch,
            status,
            detail: Some(why),
        });
    }

    fn fail(&mut self, check: &'static str, n: Option<i64>, branch: Option<Branch>, why: String) {
        self.rows.push(CheckRow {
            check,
            n,
            branch,
            status: Status::Fail,
            detail: Some(why),
        });
    }

    /// Degeneracies are skips (or strict failures); anything else fails.
    fn ladder_error(&mut self, check: &'static str, n: i64, err: LadderError) {
        match err {
            LadderError::Annihilated { .. } => self.rows.push(CheckRow {
                check,
                n: Some(n),
                branch: None,
                status: Status::Skip,
                detail: Some(err.to_string()),
            }),
            LadderError::Darboux(DarbouxError::DegenerateDenominator { .. })
            | LadderError::Family(_) => self.skip(check, Some(n), None, err.to_string()),
            other => self.fail(check, Some(n), None, other.to_string()),
        }
    }
}

/// Runs every identity for `fam` over the requested degrees and branches.
pub fn run_suite(fam: &FamilySpec, options: &SuiteOptions) -> SuiteReport {
    let mut out = Rows {
        rows: Vec::new(),
        strict: options.strict,
    };
    let n_max = options.n_max as i64;

    // per-(n, branch) identities
    let step_names = &CHECK_NAMES[..6];
    let mut steps: Vec<(i64, Branch, FactorizationData)> = Vec::new();
    for n in 0..=n_max {
        for &b in &options.branches {
            match factor_pair(fam, n, b) {
                Ok(data) => {
                    let mut inputs = data.inputs(fam);
                    if let Some(p) = options.perturbation {
                        inputs = inputs.perturb(p);
                    }
                    let c = inputs.check_all(fam);
                    let results = [
                        c.factorization,
                        c.riccati_system,
                        c.swap,
                        c.eigen_shift,
                        c.riccati_residual,
                        c.commutation,
                    ];
                    for (name, ok) in step_names.iter().zip(results) {
                        out.push(name, Some(n), Some(b), Status::from_bool(ok));
                    }
                    steps.push((n, b, data));
                }
                Err(e @ DarbouxError::DegenerateDenominator { .. }) => {
                    out.skip("factorization", Some(n), Some(b), e.to_string());
                }
                Err(e) => out.fail("factorization", Some(n), Some(b), e.to_string()),
            }
        }
    }

    // g1(n) = f2(n+1), mu1(n) = mu2(n+1)
    let find = |n: i64, b: Branch| {
        steps
            .iter()
            .find(|(m, c, _)| *m == n && *c == b)
            .map(|(_, _, d)| d)
    };
    for n in 0..n_max {
        if let (Some(up), Some(down)) = (find(n, Branch::One), find(n + 1, Branch::Two)) {
            let ok = up.g() == down.f() && up.mu() == down.mu() && down.g() == up.f();
            out.push("branch_pairing", Some(n), None, Status::from_bool(ok));
        }
    }

    // gauge identity and ladder steps from the oracle polynomials
    for n in 0..=options.n_max {
        let ni = n as i64;
        match fam.verify_gauge_identity(n) {
            Ok(ok) => out.push("gauge", Some(ni), None, Status::from_bool(ok)),
            Err(e) => out.skip("gauge", Some(ni), None, e.to_string()),
        }
        match ladder_from_oracle(fam, n, Direction::Up) {
            Ok(up) => match fam.eigenpoly(n + 1) {
                Ok(expected) => out.push(
                    "ladder_up",
                    Some(ni),
                    None,
                    Status::from_bool(up.target == expected),
                ),
                Err(e) => out.skip("ladder_up", Some(ni), None, e.to_string()),
            },
            Err(e) => out.ladder_error("ladder_up", ni, e),
        }
        if n >= 1 {
            match ladder_from_oracle(fam, n, Direction::Down) {
                Ok(down) => match fam.eigenpoly(n - 1) {
                    Ok(expected) => out.push(
                        "ladder_down",
                        Some(ni),
                        None,
                        Status::from_bool(down.target == expected),
                    ),
                    Err(e) => out.skip("ladder_down", Some(ni), None, e.to_string()),
                },
                Err(e) => out.ladder_error("ladder_down", ni, e),
            }
        }
    }

    // c1(n) c2(n+1) = -mu1(n), lowering back to the start
    for n in 0..options.n_max {
        match roundtrip_check(fam, n) {
            Ok(ok) => out.push("roundtrip", Some(n as i64), None, Status::from_bool(ok)),
            Err(e) => out.ladder_error("roundtrip", n as i64, e),
        }
    }

    // c2(n) c1(n-1) = -mu2(n)
    for n in 1..=options.n_max {
        let ni = n as i64;
        let lhs = ladder_constant(fam, n, Direction::Down)
            .and_then(|down| Ok(down * ladder_constant(fam, n - 1, Direction::Up)?))
            .and_then(|prod| Ok((prod, factor_pair(fam, ni, Branch::Two)?)));
        match lhs {
            Ok((prod, data)) => out.push(
                "lowering_law",
                Some(ni),
                None,
                Status::from_bool(prod == -data.mu()),
            ),
            Err(e) => out.ladder_error("lowering_law", ni, e),
        }
    }

    match generate_family(fam, options.n_max) {
        Ok(terms) => {
            let ok = terms
                .iter()
                .all(|t| fam.eigenpoly(t.n).is_ok_and(|oracle| oracle == t.poly));
            out.push("generation", None, None, Status::from_bool(ok));
        }
        Err(e) => match e {
            LadderError::Darboux(DarbouxError::DegenerateDenominator { .. })
            | LadderError::Family(_) => out.skip("generation", None, None, e.to_string()),
            other => out.fail("generation", None, None, other.to_string()),
        },
    }

    match verify_chain(fam, 0, options.n_max) {
        Ok(ok) => out.push("dressing_chain", None, None, Status::from_bool(ok)),
        Err(e) => out.skip("dressing_chain", None, None, e.to_string()),
    }

    let reference = has_printed_forms(fam.kind()).then(|| {
        let ns: Vec<i64> = (0..=n_max).collect();
        compare_at(fam, &ns)
    });
    if let Some(report) = &reference {
        let unexpected: Vec<String> = report
            .unexpected_mismatches()
            .map(|c| format!("{} at n={}", c.expression, c.n))
            .collect();
        if unexpected.is_empty() {
            out.push("reference", None, None, Status::Pass);
        } else {
            out.fail("reference", None, None, unexpected.join("; "));
        }
    }

    SuiteReport {
        family: fam.clone(),
        options: options.clone(),
        rows: out.rows,
        reference,
    }
}
