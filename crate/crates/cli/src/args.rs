use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use tricur::harness::MatrixGenerator;
use tricur::io::ResultFormat;
use tricur::selection::Selector;

#[derive(Debug, Parser)]
#[command(
    name = "tricur",
    version,
    about = "CUR-type decompositions guided by the restricted SVD"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// CUR of one matrix.
    Cur {
        #[arg(long)]
        a: PathBuf,
        #[arg(short, long)]
        k: usize,
        #[arg(long, default_value = "deim")]
        selector: Selector,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generalized CUR of a pair (A, G).
    Gcur {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(short, long)]
        k: usize,
        #[arg(long, default_value = "deim")]
        selector: Selector,
        #[arg(long)]
        out: PathBuf,
    },
    /// RSVD-CUR of a triplet (A, B, G).
    RsvdCur {
        #[command(flatten)]
        triplet: Triplet,
        #[arg(short, long)]
        k: usize,
        #[arg(long, default_value = "deim")]
        selector: Selector,
        /// Append the a-posteriori error bound report.
        #[arg(long)]
        bounds: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rank-k restricted SVD factors, written as `<out>_{z,w,u,v,alpha,beta,gamma}.mtx`.
    Rsvd {
        #[command(flatten)]
        triplet: Triplet,
        #[arg(short, long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Synthetic experiments that write result tables.
    #[command(subcommand)]
    Experiment(Experiment),
    /// Pick k features from each of two views.
    SelectMultiview {
        #[arg(long)]
        view1: PathBuf,
        #[arg(long)]
        view2: PathBuf,
        #[arg(short, long)]
        k: usize,
        #[arg(long, default_value = "deim")]
        selector: Selector,
        /// Skip the first line of both files.
        #[arg(long)]
        header: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct Triplet {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long)]
    pub g: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Experiment {
    /// Recover a sparse low-rank matrix from correlated noise.
    NoiseRecovery(NoiseArgs),
    /// Reduced versus full Gauss-Markov systems.
    GaussMarkov(GaussMarkovArgs),
}

#[derive(Debug, Args)]
pub struct NoiseArgs {
    #[arg(long, default_value_t = 1000)]
    pub m: usize,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 30)]
    pub rank: usize,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    /// Number of seeds, starting at `--first-seed`.
    #[arg(long, default_value_t = 5)]
    pub seeds: u64,
    #[arg(long, default_value_t = 0)]
    pub first_seed: u64,
    /// Errors are reported for k = 1..=kmax.
    #[arg(long, default_value_t = 30)]
    pub kmax: usize,
    #[arg(long, default_value_t = 0.25)]
    pub cs_xi: f64,
    #[arg(long, default_value_t = 2.0)]
    pub cs_nu: f64,
    #[arg(long, default_value_t = 0.99)]
    pub ar1_xi: f64,
    #[arg(long, default_value_t = 1.0)]
    pub ar1_nu: f64,
    #[arg(long, default_value_t = 0.025)]
    pub density: f64,
    #[arg(long, default_value = "deim")]
    pub selector: Selector,
    /// Give the RSVD perturbed Cholesky factors.
    #[arg(long)]
    pub inexact: bool,
    /// Required when m exceeds 4000.
    #[arg(long)]
    pub allow_large: bool,
    #[arg(long, default_value = "csv")]
    pub format: ResultFormat,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct GaussMarkovArgs {
    #[arg(long, default_value_t = 1000)]
    pub m: usize,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 50)]
    pub l: usize,
    #[arg(long, default_value_t = 10)]
    pub d: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, value_delimiter = ',', default_value = "10,20,30")]
    pub ks: Vec<usize>,
    /// `randn` or `randsvd:<kappa>`.
    #[arg(long, default_value = "randn")]
    pub gen_a: MatrixGenerator,
    #[arg(long, default_value = "randn")]
    pub gen_b: MatrixGenerator,
    #[arg(long, default_value = "randn")]
    pub gen_g: MatrixGenerator,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Weight of the regularizing identity blocks.
    #[arg(long, default_value_t = 1e-8)]
    pub mu: f64,
    #[arg(long, default_value = "csv")]
    pub format: ResultFormat,
    #[arg(long)]
    pub out: PathBuf,
}
