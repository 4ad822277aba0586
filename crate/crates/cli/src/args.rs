use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperdarboux_core::suite::DEFAULT_N_MAX;
use hyperdarboux_core::{Branch, Direction, FamilyKind, FamilySpec, Perturbation, Poly, Rational};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "hyperdarboux",
    version,
    about = "Exact discrete Darboux factorization of hypergeometric difference operators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full identity suite for n = 0..=n_max.
    Verify(VerifyArgs),
    /// Print the factorization data for one (n, branch).
    Factorize(FactorizeArgs),
    /// Apply one raising or lowering step to the degree-n eigenpolynomial.
    Ladder(LadderArgs),
    /// Generate eigenpolynomials by repeated raising.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Charlier,
    Meixner,
    Kravchuk,
    Hahn,
    Custom,
}

impl From<FamilyName> for FamilyKind {
    fn from(f: FamilyName) -> Self {
        match f {
            FamilyName::Charlier => FamilyKind::Charlier,
            FamilyName::Meixner => FamilyKind::Meixner,
            FamilyName::Kravchuk => FamilyKind::Kravchuk,
            FamilyName::Hahn => FamilyKind::Hahn,
            FamilyName::Custom => FamilyKind::Custom,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Both,
}

impl BranchArg {
    pub fn branches(self) -> Vec<Branch> {
        match self {
            BranchArg::One => vec![Branch::One],
            BranchArg::Two => vec![Branch::Two],
            BranchArg::Both => Branch::BOTH.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Up,
    Down,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Up => Direction::Up,
            DirectionArg::Down => Direction::Down,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PerturbArg {
    F,
    G,
    Lambda,
    Psi,
}

impl From<PerturbArg> for Perturbation {
    fn from(p: PerturbArg) -> Self {
        match p {
            PerturbArg::F => Perturbation::F,
            PerturbArg::G => Perturbation::G,
            PerturbArg::Lambda => Perturbation::Lambda,
            PerturbArg::Psi => Perturbation::Psi,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    /// Family parameter as name=p/q; repeatable.
    #[arg(long = "param", value_name = "NAME=P/Q")]
    pub params: Vec<String>,
    /// Custom sigma = s0 x^2 + s1 x + s2, given as "s0,s1,s2".
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<String>,
    /// Custom tau = t0 x + t1, given as "t0,t1".
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value = "both")]
    pub branch: BranchArg,
    #[arg(long)]
    pub json: bool,
    #[arg(long, conflicts_with = "json")]
    pub csv: bool,
    /// Count degenerate (n, branch) cells as failures.
    #[arg(long)]
    pub strict: bool,
    /// Negative control: corrupt one coefficient before checking.
    #[arg(long, value_enum)]
    pub perturb: Option<PerturbArg>,
    /// Include wall-clock time in the report (breaks byte-identical output).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct FactorizeArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    #[arg(long, value_enum)]
    pub branch: BranchArg,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Clone, Args)]
pub struct LadderArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub direction: DirectionArg,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    pub n_max: usize,
    /// Evaluate at the lattice points a..b (inclusive), with 0 <= a <= b.
    #[arg(long, value_name = "A..B")]
    pub points: Option<String>,
    #[arg(long)]
    pub json: bool,
    #[arg(long, conflicts_with = "json")]
    pub csv: bool,
}

fn parse_list(flag: &str, text: &str, len: usize) -> Result<Vec<Rational>, CliError> {
    let values = text
        .split(',')
        .map(|t| t.parse::<Rational>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("--{flag}: {e}")))?;
    if values.len() != len {
        return Err(CliError::Usage(format!(
            "--{flag} takes {len} comma-separated values"
        )));
    }
    Ok(values)
}

impl FamilyArgs {
    pub fn build(&self) -> Result<FamilySpec, CliError> {
        let kind = FamilyKind::from(self.family);
        if kind == FamilyKind::Custom {
            if !self.params.is_empty() {
                return Err(CliError::Usage(
                    "custom families take --sigma and --tau, not --param".into(),
                ));
            }
            let (Some(sigma), Some(tau)) = (&self.sigma, &self.tau) else {
                return Err(CliError::Usage(
                    "custom family requires --sigma and --tau".into(),
                ));
            };
            let mut s = parse_list("sigma", sigma, 3)?;
            s.reverse();
            let mut t = parse_list("tau", tau, 2)?;
            t.reverse();
            return Ok(FamilySpec::custom(
                Poly::from_coeffs(s),
                Poly::from_coeffs(t),
            )?);
        }
        if self.sigma.is_some() || self.tau.is_some() {
            return Err(CliError::Usage(
                "--sigma/--tau are only valid with --family custom".into(),
            ));
        }
        let mut params = Vec::with_capacity(self.params.len());
        for raw in &self.params {
            let (name, value) = raw
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("--param {raw:?}: expected name=p/q")))?;
            let name = kind
                .parameter_names()
                .iter()
                .find(|k| **k == name.trim())
                .copied()
                .ok_or_else(|| {
                    CliError::Usage(format!("family {kind} has no parameter {:?}", name.trim()))
                })?;
            let value: Rational = value
                .parse()
                .map_err(|e| CliError::Usage(format!("--param {name}: {e}")))?;
            params.push((name, value));
        }
        Ok(FamilySpec::make(kind, &params)?)
    }
}

/// `a..b` with `0 <= a <= b`.
pub fn parse_points(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("--points {text:?}: expected a..b with 0 <= a <= b"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}
