use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "hdx", version, about = "F2 cochain invariants, buildings and expansion checks for small simplicial complexes")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Global {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest subspace dimension enumerated exhaustively.
    #[arg(long, global = true)]
    pub exact_threshold: Option<usize>,
    /// Candidate evaluations allowed to heuristics.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// exact, heuristic or auto.
    #[arg(long, global = true)]
    pub mode: Option<String>,
    /// Dense eigensolver and building size cap.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Write the JSON report here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a complex and write its facet list.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Spherical building S(r, q) with a vertex annotation sidecar.
    Spherical {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        q: u32,
        #[arg(short, long)]
        output: PathBuf,
        /// Sidecar path (default: <output>.types).
        #[arg(long)]
        annotation: Option<PathBuf>,
    },
    /// Expansion invariants of a complex.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated: epsilon, epsilon_tilde, mu, systole.
        #[arg(long, value_delimiter = ',', default_value = "epsilon,epsilon_tilde,mu,systole")]
        invariants: Vec<String>,
        /// Comma-separated dimensions (default: all below the top).
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
    },
    /// Local descent of a cochain.
    Minimize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cochain: PathBuf,
        /// Expected cochain dimension.
        #[arg(long)]
        dim: Option<usize>,
        /// Descent trace JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the locally minimal cochain here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Spectrum of a graph, with Cheeger and mixing checks.
    Spectra {
        #[arg(long)]
        input: Option<PathBuf>,
        /// skeleton, link:<vertex id>, z13 or z12.
        #[arg(long, default_value = "skeleton")]
        graph: String,
        /// Field size for z13 and z12.
        #[arg(long)]
        q: Option<u32>,
        /// Random subsets when the graph has more than 14 vertices.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Compare the gap of a regular skeleton with the quotient bounds for this dimension.
        #[arg(long)]
        quotient_dim: Option<usize>,
        /// Eigenvalues as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Instance checks of counting identities and the filling pipeline.
    Verify {
        #[command(subcommand)]
        what: VerifyKind,
    },
    /// Geometric overlap of random planar placements.
    Overlap {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Also run the exhaustive arrangement oracle (small inputs).
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum BuildKind {
    /// Full d-skeleton of the simplex on n vertices.
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Boundary of the (d+1)-simplex.
    Sphere {
        #[arg(long)]
        d: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Six-vertex real projective plane.
    Rp2 {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Random complex with every d-cell kept with probability p.
    Lm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cone over an input complex; the apex gets the next free id.
    Cone {
        #[arg(long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyKind {
    /// Triangle, pyramid and vertex-split identities on random cochains.
    Counting {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Vertex annotation sidecar, enabling the colored form in dimension 3.
        #[arg(long)]
        types: Option<PathBuf>,
    },
    /// Filling procedure on the 2-skeleton of a 3-complex.
    Pipeline {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        dim: usize,
        /// Positive rational such as 1/10.
        #[arg(long)]
        eta: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Greedy T-sets in the 1-skeleton of S(4, q).
    Tsets {
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        q: Vec<u32>,
    },
    /// Thin/thick classification of a cochain.
    ThinThick {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cochain: PathBuf,
        #[arg(long, value_enum)]
        level: LevelArg,
        #[arg(long)]
        types: Option<PathBuf>,
        /// Threshold constant (default 1/10).
        #[arg(long)]
        epsilon: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum LevelArg {
    Vertex2d,
    Vertex3dColored,
    Edge3d,
    Vertex3d,
}
