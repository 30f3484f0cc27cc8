//! `grushin` — Grushin-plane experiments from the shell.
//!
//! Every subcommand is deterministic for a fixed seed and emits
//! machine-readable CSV (default) or JSON. Exit codes: 0 success, 2 bad
//! arguments, 3 precondition violation, 4 I/O failure.

mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use grushin::cc::{comparability_scan, grid_cc_distance, staircase_distance, StaircaseBranch};
use grushin::jacobian::{
    acl_integrability, alpha_for_beta, jacobian_density, semmes_quasidistance, WeightRegime,
};
use grushin::qs::{
    eta_estimate, sandwich_scan, CaseLabel, EtaMap, EtaTable, SandwichWindow,
};
use grushin::{
    quasidistance_with_branch, GrushinPoint, MetricParams, Norm, QuasiBranch, Region,
};

use output::{bool_str, emit, num, Csv};

#[derive(Parser)]
#[command(
    name = "grushin",
    version,
    about = "Numerical experiments on the Grushin plane: quasidistance, \
             Carnot-Caratheodory estimators, quasisymmetric flattening maps, \
             and Jacobian weight analysis",
    after_help = "Exit codes: 0 success, 2 bad arguments, 3 precondition \
                  violation, 4 I/O failure.\nAll randomized subcommands are \
                  bit-reproducible for a fixed --seed."
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Metric exponent alpha > 0 (alpha = 2 is the classical plane)
    #[arg(long, global = true, default_value_t = 2.0)]
    alpha: f64,
    /// Seed for all randomized sampling
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Number of sampled pairs (and triples, unless --triples is given)
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: usize,
    /// Grid resolution (columns across the region width)
    #[arg(long, global = true, default_value_t = 512)]
    resolution: u32,
    /// Sampling/grid region as xmin,ymin,xmax,ymax
    #[arg(long, global = true, value_parser = parse_region, default_value = "-2,-2,2,2", allow_hyphen_values = true)]
    region: [f64; 4],
    /// Norm for image-plane distances
    #[arg(long, global = true, value_enum, default_value_t = NormArg::Linf)]
    norm: NormArg,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output file (atomic write); stdout when omitted
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the quasidistance between two points
    #[command(after_help = "CSV columns: alpha,z1_x,z1_y,z2_x,z2_y,value,branch")]
    Quasidistance {
        /// First point as x,y
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        z1: (f64, f64),
        /// Second point as x,y
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        z2: (f64, f64),
    },
    /// Estimate the Carnot-Caratheodory distance by staircase and grid
    #[command(after_help = "CSV columns: alpha,resolution,z1_x,z1_y,z2_x,z2_y,\
                            staircase,pivot,branch,grid,staircase_over_grid")]
    Ccdist {
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        z1: (f64, f64),
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        z2: (f64, f64),
    },
    /// Scan the quasidistance / CC-estimate ratio over sampled pairs
    #[command(after_help = "CSV columns: sample_id,z1_x,z1_y,z2_x,z2_y,\
                            quasidistance,staircase,grid,ratio; a trailing \
                            comment line carries ratio_min/ratio_max/C.")]
    Compare,
    /// Sandwich checks and the empirical quasisymmetry envelope
    #[command(after_help = "CSV sections: sandwich samples (sample_id,z1_x,\
                            z1_y,z2_x,z2_y,case,distance,lower_ratio,\
                            upper_ratio,passed), then the eta envelope table \
                            (bin,log10_lo,log10_hi,count,max_ratio,envelope).")]
    Qs {
        /// Number of sampled triples for the envelope (defaults to --samples)
        #[arg(long)]
        triples: Option<usize>,
        /// Number of log-spaced envelope bins
        #[arg(long, default_value_t = 32)]
        bins: usize,
        /// Map under test (identity is the estimator's test hook)
        #[arg(long, value_enum, default_value_t = MapArg::Forward)]
        map: MapArg,
        /// Symmetric sandwich constant: window [1/cs, cs]
        #[arg(long, default_value_t = 20.0)]
        cs: f64,
        /// Override the lower window bound (e.g. 0.0833 for [1/12, 20])
        #[arg(long)]
        cs_lower: Option<f64>,
    },
    /// Weight exponent algebra, Jacobian density table, and ACL verdict
    #[command(after_help = "CSV sections: exponent classification, the \
                            density table (u,euclidean_factor,\
                            grushin_density,total) for in-range beta, and \
                            the ACL verdict for t = -beta.")]
    Jacobian {
        /// Weight exponent beta in |x|^beta
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        /// Smallest probed |u|
        #[arg(long, default_value_t = 0.01)]
        u_min: f64,
        /// Largest probed |u|
        #[arg(long, default_value_t = 100.0)]
        u_max: f64,
        /// Number of log-spaced density probes
        #[arg(long, default_value_t = 25)]
        points: usize,
    },
    /// Local integrability of |x|^{-t/2} across the axis
    #[command(after_help = "CSV columns: t,integrable,integral; divergent \
                            probes append a lower_limit,value certificate \
                            section.")]
    Acl {
        /// Derivative exponent t
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// Ball-measure quasidistance for the weight |x|^beta
    #[command(after_help = "CSV columns: beta,z1_x,z1_y,z2_x,z2_y,radius,\
                            value,std_error,relative_std_error,integral,\
                            integral_std_error,samples_used,strata_per_axis")]
    Semmes {
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        z1: (f64, f64),
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        z2: (f64, f64),
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    Linf,
    Euclid,
}

impl From<NormArg> for Norm {
    fn from(n: NormArg) -> Norm {
        match n {
            NormArg::Linf => Norm::Linf,
            NormArg::Euclid => Norm::Euclidean,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    Forward,
    Identity,
}

impl From<MapArg> for EtaMap {
    fn from(m: MapArg) -> EtaMap {
        match m {
            MapArg::Forward => EtaMap::Forward,
            MapArg::Identity => EtaMap::Identity,
        }
    }
}

fn parse_point(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected x,y but got {s:?}"));
    }
    let x: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| format!("bad coordinate {:?}", parts[0]))?;
    let y: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| format!("bad coordinate {:?}", parts[1]))?;
    Ok((x, y))
}

fn parse_region(s: &str) -> Result<[f64; 4], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("expected xmin,ymin,xmax,ymax but got {s:?}"));
    }
    let mut vals = [0.0; 4];
    for (slot, part) in vals.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| format!("bad coordinate {part:?}"))?;
    }
    Ok(vals)
}

#[derive(Debug)]
enum CliError {
    Precondition(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Precondition(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Precondition(msg) | CliError::Io(msg) => f.write_str(msg),
        }
    }
}

impl From<grushin::Error> for CliError {
    fn from(e: grushin::Error) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = &cli.global;
    let params = MetricParams::new(g.alpha)?;
    let region = Region::new(g.region[0], g.region[1], g.region[2], g.region[3])?;
    let norm: Norm = g.norm.into();
    let bytes = match cli.command {
        Command::Quasidistance { z1, z2 } => cmd_quasidistance(g, params, z1, z2)?,
        Command::Ccdist { z1, z2 } => cmd_ccdist(g, params, region, z1, z2)?,
        Command::Compare => cmd_compare(g, params, region)?,
        Command::Qs {
            triples,
            bins,
            map,
            cs,
            cs_lower,
        } => cmd_qs(g, params, region, norm, triples, bins, map, cs, cs_lower)?,
        Command::Jacobian {
            beta,
            u_min,
            u_max,
            points,
        } => cmd_jacobian(g, beta, u_min, u_max, points)?,
        Command::Acl { t } => cmd_acl(g, t)?,
        Command::Semmes { z1, z2, beta } => cmd_semmes(g, z1, z2, beta)?,
    };
    emit(g.out.as_deref(), &bytes)
}

fn point(xy: (f64, f64)) -> Result<GrushinPoint, CliError> {
    Ok(GrushinPoint::new(xy.0, xy.1)?)
}

fn quasi_branch_name(branch: QuasiBranch) -> &'static str {
    match branch {
        QuasiBranch::HorizontalGap => "horizontal-gap",
        QuasiBranch::VerticalPower => "vertical-power",
        QuasiBranch::VerticalRatio => "vertical-ratio",
    }
}

fn staircase_branch_name(branch: StaircaseBranch) -> &'static str {
    match branch {
        StaircaseBranch::InteriorOptimum => "interior-optimum",
        StaircaseBranch::EndpointX1 => "endpoint-x1",
        StaircaseBranch::EndpointX2 => "endpoint-x2",
        StaircaseBranch::PureVertical => "pure-vertical",
    }
}

fn case_name(case: CaseLabel) -> &'static str {
    match case {
        CaseLabel::AxisBase => "axis-base",
        CaseLabel::Near => "near",
        CaseLabel::FarInner => "far-inner",
        CaseLabel::FarMiddle => "far-middle",
        CaseLabel::FarOuter => "far-outer",
    }
}

fn regime_name(regime: WeightRegime) -> &'static str {
    match regime {
        WeightRegime::TrivialIdentity => "trivial-identity",
        WeightRegime::SemmesRange => "semmes-range",
        WeightRegime::GrushinRange => "grushin-range",
        WeightRegime::Open => "open",
        WeightRegime::Rejected => "rejected",
    }
}

fn cmd_quasidistance(
    g: &GlobalOpts,
    params: MetricParams,
    z1: (f64, f64),
    z2: (f64, f64),
) -> Result<Vec<u8>, CliError> {
    let (z1, z2) = (point(z1)?, point(z2)?);
    let (value, branch) = quasidistance_with_branch(z1, z2, params);
    Ok(match g.format {
        FormatArg::Csv => {
            let mut csv = Csv::new("alpha,z1_x,z1_y,z2_x,z2_y,value,branch");
            csv.row(&[
                num(params.alpha()),
                num(z1.x()),
                num(z1.y()),
                num(z2.x()),
                num(z2.y()),
                num(value),
                quasi_branch_name(branch).to_string(),
            ]);
            csv.into_bytes()
        }
        FormatArg::Json => to_json(&json!({
            "alpha": params.alpha(),
            "z1": z1,
            "z2": z2,
            "value": value,
            "branch": quasi_branch_name(branch),
        })),
    })
}

fn cmd_ccdist(
    g: &GlobalOpts,
    params: MetricParams,
    region: Region,
    z1: (f64, f64),
    z2: (f64, f64),
) -> Result<Vec<u8>, CliError> {
    let (z1, z2) = (point(z1)?, point(z2)?);
    let stair = staircase_distance(z1, z2, params);
    let grid = grid_cc_distance(z1, z2, params, g.resolution, region)?;
    let ratio = if grid > 0.0 { stair.length / grid } else { 1.0 };
    Ok(match g.format {
        FormatArg::Csv => {
            let mut csv = Csv::new(
                "alpha,resolution,z1_x,z1_y,z2_x,z2_y,staircase,pivot,branch,grid,staircase_over_grid",
            );
            csv.row(&[
                num(params.alpha()),
                g.resolution.to_string(),
                num(z1.x()),
                num(z1.y()),
                num(z2.x()),
                num(z2.y()),
                num(stair.length),
                num(stair.pivot_abscissa),
                staircase_branch_name(stair.branch).to_string(),
                num(grid),
                num(ratio),
            ]);
            csv.into_bytes()
        }
        FormatArg::Json => to_json(&json!({
            "alpha": params.alpha(),
            "resolution": g.resolution,
            "z1": z1,
            "z2": z2,
            "staircase": stair,
            "grid": grid,
            "staircase_over_grid": ratio,
        })),
    })
}

fn cmd_compare(
    g: &GlobalOpts,
    params: MetricParams,
    region: Region,
) -> Result<Vec<u8>, CliError> {
    let scan = comparability_scan(region, params, g.samples, g.seed, g.resolution)?;
    Ok(match g.format {
        FormatArg::Csv => {
            let mut csv =
                Csv::new("sample_id,z1_x,z1_y,z2_x,z2_y,quasidistance,staircase,grid,ratio");
            for s in &scan.samples {
                csv.row(&[
                    s.index.to_string(),
                    num(s.z1.x()),
                    num(s.z1.y()),
                    num(s.z2.x()),
                    num(s.z2.y()),
                    num(s.quasidistance),
                    num(s.staircase),
                    num(s.grid),
                    num(s.ratio),
                ]);
            }
            let r = &scan.report;
            csv.comment(&format!(
                "ratio_min={} ratio_max={} C={} alpha={} seed={} resolution={} samples={}",
                num(r.ratio_min),
                num(r.ratio_max),
                num(r.comparability_constant()),
                num(r.alpha),
                r.seed,
                r.resolution,
                r.sample_count,
            ));
            csv.into_bytes()
        }
        FormatArg::Json => to_json(&json!({
            "samples": scan.samples,
            "report": scan.report,
            "comparability_constant": scan.report.comparability_constant(),
        })),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_qs(
    g: &GlobalOpts,
    params: MetricParams,
    region: Region,
    norm: Norm,
    triples: Option<usize>,
    bins: usize,
    map: MapArg,
    cs: f64,
    cs_lower: Option<f64>,
) -> Result<Vec<u8>, CliError> {
    if !(cs.is_finite() && cs > 0.0) {
        return Err(CliError::Precondition(format!(
            "sandwich constant must be positive, got {cs}"
        )));
    }
    let window = SandwichWindow {
        lower: cs_lower.unwrap_or(1.0 / cs),
        upper: cs,
    };
    let sandwich = sandwich_scan(region, params, g.samples, g.seed, window, norm)?;
    let eta = eta_estimate(
        region,
        params,
        triples.unwrap_or(g.samples),
        g.seed,
        bins,
        map.into(),
        norm,
    )?;
    Ok(match g.format {
        FormatArg::Csv => {
            let mut csv = Csv::new(
                "sample_id,z1_x,z1_y,z2_x,z2_y,case,distance,lower_ratio,upper_ratio,passed",
            );
            for s in &sandwich.samples {
                csv.row(&[
                    s.index.to_string(),
                    num(s.z1.x()),
                    num(s.z1.y()),
                    num(s.z2.x()),
                    num(s.z2.y()),
                    case_name(s.check.case).to_string(),
                    num(s.check.distance),
                    num(s.check.lower_ratio),
                    num(s.check.upper_ratio),
                    bool_str(s.check.passed).to_string(),
                ]);
            }
            let s = &sandwich.summary;
            csv.comment(&format!(
                "sandwich: min_lower_ratio={} max_upper_ratio={} violations={} window=[{},{}]",
                num(s.min_lower_ratio),
                num(s.max_upper_ratio),
                s.violations,
                num(s.window.lower),
                num(s.window.upper),
            ));
            append_eta_csv(&mut csv, &eta);
            csv.into_bytes()
        }
        FormatArg::Json => to_json(&json!({
            "sandwich": sandwich,
            "eta": eta,
            "envelope_at_one": eta.envelope_at_one(),
        })),
    })
}

fn append_eta_csv(csv: &mut Csv, eta: &EtaTable) {
    csv.section(
        "eta envelope",
        "bin,log10_lo,log10_hi,count,max_ratio,envelope",
    );
    for (i, (bin, env)) in eta.bins.iter().zip(&eta.envelope).enumerate() {
        csv.row(&[
            i.to_string(),
            num(bin.log10_lo),
            num(bin.log10_hi),
            bin.count.to_string(),
            bin.max_ratio.map(num).unwrap_or_default(),
            env.map(num).unwrap_or_default(),
        ]);
    }
    csv.comment(&format!(
        "eta: triples={} underflow_count={} overflow_count={} envelope_at_one={}",
        eta.n_triples,
        eta.underflow.count,
        eta.overflow.count,
        eta.envelope_at_one().map(num).unwrap_or_default(),
    ));
}

fn cmd_jacobian(
    g: &GlobalOpts,
    beta: f64,
    u_min: f64,
    u_max: f64,
    points: usize,
) -> Result<Vec<u8>, CliError> {
    if !(u_min.is_finite() && u_max.is_finite() && 0.0 < u_min && u_min < u_max) {
        return Err(CliError::Precondition(format!(
            "need 0 < u_min < u_max, got {u_min}, {u_max}"
        )));
    }
    if points < 2 {
        return Err(CliError::Precondition(format!(
            "need at least 2 density probes, got {points}"
        )));
    }
    let exponent = alpha_for_beta(beta);
    let density: Vec<grushin::jacobian::DensityProbe> = if exponent.derived_alpha.is_some() {
        (0..points)
            .map(|i| {
                let frac = i as f64 / (points - 1) as f64;
                let u = u_min * (u_max / u_min).powf(frac);
                jacobian_density(u, beta).expect("probes are in range and off the axis")
            })
            .collect()
    } else {
        Vec::new()
    };
    let slope = log_log_slope(&density);
    // The composite map's Jacobian is of order |u|^beta, so its derivative
    // obstruction exponent is t = -beta.
    let acl = acl_integrability(-beta);
    Ok(match g.format {
        FormatArg::Csv => {
            let mut csv = Csv::new("beta,regime,derived_alpha");
            csv.row(&[
                num(beta),
                regime_name(exponent.regime).to_string(),
                exponent.derived_alpha.map(num).unwrap_or_default(),
            ]);
            if !density.is_empty() {
                csv.section("density", "u,euclidean_factor,grushin_density,total");
                for probe in &density {
                    csv.row(&[
                        num(probe.u),
                        num(probe.euclidean_factor),
                        num(probe.grushin_density),
                        num(probe.total),
                    ]);
                }
                csv.comment(&format!(
                    "log_log_slope={}",
                    slope.map(num).unwrap_or_default()
                ));
            }
            csv.section("acl verdict for t = -beta", "t,integrable,integral");
            csv.row(&[
                num(acl.exponent),
                bool_str(acl.integrable).to_string(),
                acl.integral.map(num).unwrap_or_default(),
            ]);
            csv.into_bytes()
        }
        FormatArg::Json => to_json(&json!({
            "exponent": exponent,
            "density": density,
            "log_log_slope": slope,
            "acl": acl,
        })),
    })
}

fn log_log_slope(density: &[grushin::jacobian::DensityProbe]) -> Option<f64> {
    if density.len() < 2 {
        return None;
    }
    let n = density.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for probe in density {
        let x = probe.u.ln();
        let y = probe.total.ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    Some((n * sxy - sx * sy) / (n * sxx - sx * sx))
}

fn cmd_acl(g: &GlobalOpts, t: f64) -> Result<Vec<u8>, CliError> {
    if !t.is_finite() {
        return Err(CliError::Precondition(format!(
            "exponent t must be finite, got {t}"
        )));
    }
    let report = acl_integrability(t);
    Ok(match g.format {
        FormatArg::Csv => {
            let mut csv = Csv::new("t,integrable,integral");
            csv.row(&[
                num(report.exponent),
                bool_str(report.integrable).to_string(),
                report.integral.map(num).unwrap_or_default(),
            ]);
            if !report.divergence.is_empty() {
                csv.section("divergence certificate", "lower_limit,value");
                for partial in &report.divergence {
                    csv.row(&[num(partial.lower_limit), num(partial.value)]);
                }
            }
            csv.into_bytes()
        }
        FormatArg::Json => to_json(&report),
    })
}

fn cmd_semmes(
    g: &GlobalOpts,
    z1: (f64, f64),
    z2: (f64, f64),
    beta: f64,
) -> Result<Vec<u8>, CliError> {
    let est = semmes_quasidistance([z1.0, z1.1], [z2.0, z2.1], beta, g.samples, g.seed)?;
    let radius = grushin::euclidean_distance([z1.0, z1.1], [z2.0, z2.1]);
    Ok(match g.format {
        FormatArg::Csv => {
            let mut csv = Csv::new(
                "beta,z1_x,z1_y,z2_x,z2_y,radius,value,std_error,relative_std_error,integral,integral_std_error,samples_used,strata_per_axis",
            );
            csv.row(&[
                num(beta),
                num(z1.0),
                num(z1.1),
                num(z2.0),
                num(z2.1),
                num(radius),
                num(est.value),
                num(est.std_error),
                num(est.relative_std_error()),
                num(est.integral),
                num(est.integral_std_error),
                est.samples_used.to_string(),
                est.strata_per_axis.to_string(),
            ]);
            csv.into_bytes()
        }
        FormatArg::Json => to_json(&json!({
            "beta": beta,
            "z1": [z1.0, z1.1],
            "z2": [z2.0, z2.1],
            "radius": radius,
            "estimate": est,
        })),
    })
}

fn to_json<T: serde::Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("reports serialize cleanly");
    bytes.push(b'\n');
    bytes
}
