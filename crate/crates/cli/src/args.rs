//! Flag definitions. Every value is kept as text here and parsed (with
//! units) after merging with the config file.

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "rfsquid", version, about = "rf-SQUID particle interface simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Detection error budget of a device (minima shift, stray field, leakage).
    ErrorBudget {
        #[command(flatten)]
        device: Device,
        #[command(flatten)]
        geometry: Geometry,
        #[command(flatten)]
        dissipation: Dissipation,
        #[command(flatten)]
        common: Common,
    },
    /// Potential energy U and current-biased U' on a flux grid.
    PotentialScan {
        #[command(flatten)]
        device: Device,
        /// Grid start in units of the flux quantum [default: -1]
        #[arg(long, allow_hyphen_values = true)]
        phi_min: Option<String>,
        /// Grid end in units of the flux quantum [default: 1]
        #[arg(long, allow_hyphen_values = true)]
        phi_max: Option<String>,
        /// Grid points [default: 4001]
        #[arg(long)]
        points: Option<String>,
        /// Bias current i_b for U' (A, e.g. 0.16nA) [default: 0]
        #[arg(long)]
        bias_current: Option<String>,
        /// Transit time T; sets i_b = e/T (s, e.g. 1ns)
        #[arg(long)]
        transit_time: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Monte Carlo runs of the non-destructive particle detector.
    Detect {
        #[command(flatten)]
        interaction: Interaction,
        /// Number of trials [default: 10000]
        #[arg(long)]
        trials: Option<String>,
        /// Run with no particle present
        #[arg(long)]
        absent: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Forward transfer of random array states to a detector.
    Transfer {
        #[command(flatten)]
        array: Array,
        /// Number of trials [default: 100]
        #[arg(long)]
        trials: Option<String>,
        /// Record every detector outcome instead of sampling one
        #[arg(long)]
        exhaustive: bool,
        /// Use the far-field phase map instead of random detector phases
        #[arg(long)]
        far_field: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Reverse teleportation of random register states onto an electron.
    Teleport {
        #[command(flatten)]
        array: Array,
        /// Number of trials [default: 100]
        #[arg(long)]
        trials: Option<String>,
        /// Record every Bell outcome instead of sampling one
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep one parameter of the error budget or the detector.
    Sweep {
        /// li0 | ec_over_ej | aspect_ratio | delta | epsilon
        #[arg(long)]
        param: Option<String>,
        /// First value
        #[arg(long, allow_hyphen_values = true)]
        from: Option<String>,
        /// Last value
        #[arg(long, allow_hyphen_values = true)]
        to: Option<String>,
        /// Number of points [default: 11]
        #[arg(long)]
        steps: Option<String>,
        /// Space points logarithmically
        #[arg(long)]
        log: bool,
        /// Detector trials per point (delta, epsilon sweeps) [default: 10000]
        #[arg(long)]
        trials: Option<String>,
        #[command(flatten)]
        device: Device,
        #[command(flatten)]
        geometry: Geometry,
        #[command(flatten)]
        interaction: Interaction,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
#[group(skip)]
pub struct Common {
    /// Base seed (required by randomized commands)
    #[arg(long)]
    pub seed: Option<String>,
    /// Output file [default: stdout]
    #[arg(long)]
    pub out: Option<String>,
    /// json | csv [default: json]
    #[arg(long)]
    pub format: Option<String>,
    /// Flat `key = value` parameter file
    #[arg(long)]
    pub config: Option<String>,
    /// Run single-threaded (output is identical)
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Args)]
#[group(skip)]
pub struct Device {
    /// Loop inductance L (H, e.g. 1nH) [default: 1nH]
    #[arg(long)]
    pub inductance: Option<String>,
    /// Junction critical current i0 (A, e.g. 0.8uA)
    #[arg(long)]
    pub critical_current: Option<String>,
    /// Screening parameter beta = 2 pi L i0 / phi0
    #[arg(long)]
    pub beta: Option<String>,
    /// L i0 / phi0 [default: 2.4]
    #[arg(long)]
    pub li0: Option<String>,
    /// Junction capacitance C (F, e.g. 5fF)
    #[arg(long)]
    pub capacitance: Option<String>,
    /// E_C / E_J [default: 1e-3]
    #[arg(long)]
    pub ec_over_ej: Option<String>,
}

#[derive(Debug, Args)]
#[group(skip)]
pub struct Geometry {
    /// Bore length over radius l/r [default: 10]
    #[arg(long)]
    pub aspect_ratio: Option<String>,
    /// Bore radius r (m, e.g. 1um) [default: 1um]
    #[arg(long)]
    pub radius: Option<String>,
    /// Bore length l (m, e.g. 10um)
    #[arg(long)]
    pub length: Option<String>,
}

#[derive(Debug, Args)]
#[group(skip)]
pub struct Dissipation {
    /// Normal-state resistance seen by the transit (ohm)
    #[arg(long)]
    pub resistance: Option<String>,
    /// Transit pulse duration tau (s, e.g. 0.33ps)
    #[arg(long)]
    pub tau: Option<String>,
    /// Superconducting gap (J or eV, e.g. 180ueV) [default: 180ueV]
    #[arg(long)]
    pub gap: Option<String>,
}

#[derive(Debug, Args)]
#[group(skip)]
pub struct Interaction {
    /// Stray-field phase deficit delta (rad) [default: 0]
    #[arg(long)]
    pub delta: Option<String>,
    /// Minima-shift phase deficit epsilon (rad) [default: 0]
    #[arg(long)]
    pub epsilon: Option<String>,
    /// Particle charge sign: negative | positive [default: negative]
    #[arg(long)]
    pub charge: Option<String>,
}

#[derive(Debug, Args)]
#[group(skip)]
pub struct Array {
    /// Pixels in a line array
    #[arg(long)]
    pub n: Option<String>,
    /// Lattice width (with --ny)
    #[arg(long)]
    pub nx: Option<String>,
    /// Lattice height (with --nx)
    #[arg(long)]
    pub ny: Option<String>,
}
