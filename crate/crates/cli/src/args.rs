use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use zetalab::atom::XcModel;
use zetalab::FunctionalId;

#[derive(Debug, Parser)]
#[command(name = "zetalab", version, about = "Density scaling, gradient expansions and noble-gas atoms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Self-consistent closed-shell atom: density.csv, orbitals.csv, energies.json
    Atom(AtomArgs),
    /// Thomas–Fermi atom and the correlation expansion of its scaled density
    Tf(TfArgs),
    /// ζ-scale a density and check the scaling laws of s, q and t
    Scale(ScaleArgs),
    /// Evaluate functionals on a density file
    Eval(EvalArgs),
    /// Large-Z fits of exchange energies over the noble gases
    Fit(FitArgs),
    /// Cusp, bulk and evanescent regions of a·exp(−b r)
    Regions(RegionsArgs),
    /// Curve data (fig1..fig4.csv) and energy tables for the noble gases
    Figures(FiguresArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Output directory
    #[arg(long = "out", env = "ZETALAB_OUT", default_value = "zetalab-out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Xc {
    /// LDA exchange with PW92 correlation
    Lda,
    /// Exact exchange for two electrons (He only)
    Exx2,
}

impl From<Xc> for XcModel {
    fn from(x: Xc) -> Self {
        match x {
            Xc::Lda => XcModel::Lda,
            Xc::Exx2 => XcModel::ExactExchangeTwoElectron,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ScfArgs {
    /// Energy convergence threshold (hartree)
    #[arg(long = "tol", default_value_t = 1e-8)]
    pub tol: f64,
    /// Density convergence threshold, ∫|n_out − n_in| d³r
    #[arg(long = "density-tol", default_value_t = 1e-6)]
    pub density_tol: f64,
    #[arg(long, default_value_t = 0.3)]
    pub mixing: f64,
    #[arg(long = "max-iter", default_value_t = 200)]
    pub max_iter: usize,
    /// Grid points (default 1200)
    #[arg(long)]
    pub points: Option<usize>,
    /// Innermost radius in bohr (default 1e-6/Z)
    #[arg(long = "r-min")]
    pub r_min: Option<f64>,
    /// Outermost radius in bohr (default 50)
    #[arg(long = "r-max")]
    pub r_max: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AtomArgs {
    /// Nuclear charge: 2, 10, 18, 36, 54 or 86
    #[arg(long = "Z", short = 'Z')]
    pub z: u32,
    #[arg(long, value_enum, default_value_t = Xc::Lda)]
    pub xc: Xc,
    #[command(flatten)]
    pub scf: ScfArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrModel {
    /// ζ ln ζ and ζ only
    Leading,
    /// adds ζ^{1/3} ln ζ, ζ^{1/3} and a constant
    Full,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TfArgs {
    /// Nuclear charge of the TF atom written to tf_density.csv
    #[arg(long = "Z", short = 'Z', default_value_t = 1.0)]
    pub z: f64,
    /// Fit E_C(ζ) of lda_c or pbe_c on the scaled Z = 1 TF density; repeat or separate with commas
    #[arg(long = "fit-corr", value_delimiter = ',')]
    pub fit_corr: Vec<FunctionalId>,
    #[arg(long, default_value_t = 1.0)]
    pub zmin: f64,
    #[arg(long, default_value_t = 1e4)]
    pub zmax: f64,
    /// ζ values, log-spaced between zmin and zmax
    #[arg(long = "zeta-points", default_value_t = 41)]
    pub zeta_points: usize,
    #[arg(long, value_enum, default_value_t = CorrModel::Full)]
    pub model: CorrModel,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
#[group(required = true, multiple = false, id = "source")]
pub struct DensitySource {
    /// Density CSV file
    #[arg(long)]
    pub density: Option<PathBuf>,
    /// Solve this atom (KS-LDA) and use its density
    #[arg(long = "atom")]
    pub atom: Option<u32>,
    /// Closed-form a·exp(−b r)
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub exponential: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ScaleArgs {
    #[command(flatten)]
    pub source: DensitySource,
    /// Scaling factors; repeat or separate with commas
    #[arg(long, value_delimiter = ',', required = true)]
    pub zeta: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EvalArgs {
    #[command(flatten)]
    pub source: DensitySource,
    /// Functional ids; repeat or separate with commas (default: all)
    #[arg(long = "functional", value_delimiter = ',')]
    pub functionals: Vec<FunctionalId>,
    /// Also write radial energy densities to eval_curves.csv
    #[arg(long)]
    pub curves: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityChoice {
    /// Exact exchange for He, KS-LDA for the rest
    Reference,
    /// KS-LDA for every atom
    Lda,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FitArgs {
    /// Exchange functionals to fit; lda_x fits the C^LDA intercept
    #[arg(long, value_delimiter = ',', default_values_t = [FunctionalId::GeaX, FunctionalId::PbeX, FunctionalId::B88X, FunctionalId::LdaX])]
    pub series: Vec<FunctionalId>,
    #[arg(long, value_delimiter = ',', default_values_t = zetalab::atom::NOBLE_GASES)]
    pub atoms: Vec<u32>,
    /// Polynomial order in Z^{-1/3}
    #[arg(long, default_value_t = 1)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = DensityChoice::Reference)]
    pub densities: DensityChoice,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RegionsArgs {
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    /// Scaling factors; repeat or separate with commas
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub zeta: Vec<f64>,
    /// Bound on s and |q/s| in the region conditions
    #[arg(long, default_value_t = 1.0)]
    pub threshold: f64,
    /// Functionals whose region contributions are reported
    #[arg(long = "functional", value_delimiter = ',', default_values_t = [FunctionalId::Tf, FunctionalId::LdaX])]
    pub functionals: Vec<FunctionalId>,
    /// Fit ζ-orders over a log sweep between these bounds instead
    #[arg(long, num_args = 2, value_names = ["ZMIN", "ZMAX"])]
    pub sweep: Option<Vec<f64>>,
    /// Sweep points per decade
    #[arg(long = "per-decade", default_value_t = 4)]
    pub per_decade: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FiguresArgs {
    /// ζ values of the scaled He densities in fig1.csv
    #[arg(long = "he-zeta", value_delimiter = ',', default_value = "1,2")]
    pub he_zeta: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}
