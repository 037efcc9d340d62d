use std::f64::consts::PI;
use std::path::PathBuf;

use serde::Serialize;

use rfsquid::constants::{ALUMINIUM_GAP, ELEMENTARY_CHARGE, FLUX_QUANTUM};
use rfsquid::interface::{run_detection, ChargeSign, InteractionParams};
use rfsquid::numeric::golden_section_min;
use rfsquid::protocols::{run_teleport_trials, run_transfer_trials, Lattice2D, Layout, ProtocolSummary};
use rfsquid::rng::trial_seed;
use rfsquid::squid::{
    biased_potential, detection_error_budget, dissipation, geometric_delta, leakage_probability, potential,
    solve_epsilon, BoreGeometry, SquidParams,
};
use rfsquid::Execution;

use crate::error::CliError;
use crate::output::{self, Format};
use crate::settings::Settings;
use crate::units::Unit;

const DEFAULT_INDUCTANCE: f64 = 1e-9;
const DEFAULT_LI0: f64 = 2.4;
const DEFAULT_EC_OVER_EJ: f64 = 1e-3;
const DEFAULT_ASPECT: f64 = 10.0;
const DEFAULT_RADIUS: f64 = 1e-6;

pub fn run(command: &str, s: &Settings) -> Result<(), CliError> {
    match command {
        "error-budget" => error_budget(s),
        "potential-scan" => potential_scan(s),
        "detect" => detect(s),
        "transfer" => transfer(s),
        "teleport" => teleport(s),
        "sweep" => sweep(s),
        other => Err(CliError::Usage(format!("unknown command `{other}`"))),
    }
}

fn emit<T: Serialize>(s: &Settings, records: &[T]) -> Result<(), CliError> {
    let format = Format::parse(s.raw("format").unwrap_or("json"))?;
    let out = s.raw("out").map(PathBuf::from);
    let mut w = output::open(out.as_deref())?;
    output::write_records(&mut *w, format, records)
}

fn execution(s: &Settings) -> Result<Execution, CliError> {
    Ok(if s.flag("sequential")? {
        Execution::Sequential
    } else {
        Execution::Parallel
    })
}

fn device(s: &Settings) -> Result<SquidParams, CliError> {
    let l = s.quantity_or("inductance", Unit::Henry, DEFAULT_INDUCTANCE)?;
    let i0 = match s.pick(&["critical_current", "beta", "li0"])? {
        Some("critical_current") => s.quantity_or("critical_current", Unit::Ampere, 0.0)?,
        Some("beta") => s.quantity_or("beta", Unit::Dimensionless, 0.0)? * FLUX_QUANTUM / (2.0 * PI * l),
        _ => s.quantity_or("li0", Unit::Dimensionless, DEFAULT_LI0)? * FLUX_QUANTUM / l,
    };
    let c = match s.pick(&["capacitance", "ec_over_ej"])? {
        Some("capacitance") => s.quantity_or("capacitance", Unit::Farad, 0.0)?,
        _ => {
            let ratio = s.quantity_or("ec_over_ej", Unit::Dimensionless, DEFAULT_EC_OVER_EJ)?;
            let ej = i0 * FLUX_QUANTUM / (2.0 * PI);
            ELEMENTARY_CHARGE * ELEMENTARY_CHARGE / (2.0 * ratio * ej)
        }
    };
    Ok(SquidParams::new(l, i0, c)?)
}

fn geometry(s: &Settings) -> Result<BoreGeometry, CliError> {
    let r = s.quantity_or("radius", Unit::Metre, DEFAULT_RADIUS)?;
    Ok(match s.pick(&["aspect_ratio", "length"])? {
        Some("length") => BoreGeometry::new(r, s.quantity_or("length", Unit::Metre, 0.0)?)?,
        _ => BoreGeometry::from_aspect_ratio(r, s.quantity_or("aspect_ratio", Unit::Dimensionless, DEFAULT_ASPECT)?)?,
    })
}

#[derive(Debug, Serialize)]
struct BudgetRecord {
    inductance: f64,
    critical_current: f64,
    capacitance: f64,
    beta: f64,
    li0_over_phi0: f64,
    ec_over_ej: f64,
    aspect_ratio: f64,
    delta: f64,
    epsilon: f64,
    phi1_over_phi0: f64,
    p_delta: f64,
    p_epsilon: f64,
    p_leak: f64,
    p_leak_approx: f64,
    p_total: f64,
    resistance: Option<f64>,
    tau: Option<f64>,
    eta: Option<f64>,
    dissipated_energy: Option<f64>,
    gap: Option<f64>,
    energy_scale: Option<f64>,
    quasiparticle_safe: Option<bool>,
    eta_below_threshold: Option<bool>,
}

fn budget_record(p: &SquidParams, g: &BoreGeometry) -> Result<BudgetRecord, CliError> {
    let budget = detection_error_budget(p, g)?;
    let minima = solve_epsilon(p.beta())?;
    let leak = leakage_probability(p)?;
    let (delta, _) = geometric_delta(g);
    Ok(BudgetRecord {
        inductance: p.inductance(),
        critical_current: p.critical_current(),
        capacitance: p.capacitance(),
        beta: p.beta(),
        li0_over_phi0: p.li0_over_phi0(),
        ec_over_ej: p.charging_energy() / p.josephson_energy(),
        aspect_ratio: g.aspect_ratio(),
        delta,
        epsilon: minima.epsilon,
        phi1_over_phi0: leak.phi1 / FLUX_QUANTUM,
        p_delta: budget.p_delta,
        p_epsilon: budget.p_epsilon,
        p_leak: budget.p_leak,
        p_leak_approx: leak.p_approx,
        p_total: budget.p_total,
        resistance: None,
        tau: None,
        eta: None,
        dissipated_energy: None,
        gap: None,
        energy_scale: None,
        quasiparticle_safe: None,
        eta_below_threshold: None,
    })
}

fn error_budget(s: &Settings) -> Result<(), CliError> {
    let p = device(s)?;
    let g = geometry(s)?;
    let mut rec = budget_record(&p, &g)?;
    let r = s.quantity("resistance", Unit::Ohm)?;
    let tau = s.quantity("tau", Unit::Second)?;
    match (r, tau) {
        (Some(r), Some(tau)) => {
            let d = dissipation(r, tau, s.quantity_or("gap", Unit::Energy, ALUMINIUM_GAP)?)?;
            rec.resistance = Some(d.resistance);
            rec.tau = Some(d.tau);
            rec.eta = Some(d.eta);
            rec.dissipated_energy = Some(d.delta_e);
            rec.gap = Some(d.gap);
            rec.energy_scale = Some(d.energy_scale);
            rec.quasiparticle_safe = Some(d.quasiparticle_safe);
            rec.eta_below_threshold = Some(d.eta_below_threshold);
        }
        (None, None) => {}
        _ => {
            return Err(CliError::Usage(
                "the dissipation estimate needs both --resistance and --tau".into(),
            ))
        }
    }
    emit(s, &[rec])
}

#[derive(Debug, Serialize)]
struct ScanRow {
    kind: &'static str,
    phi_over_phi0: f64,
    u: f64,
    u_biased: f64,
}

#[derive(Debug, Serialize)]
struct ScanSummary {
    beta: f64,
    epsilon: Option<f64>,
    delta_phi_over_phi0: Option<f64>,
    bias_current: f64,
    /// `U'(−φ₀/2) − U'(φ₀/2)`.
    split_ideal: f64,
    /// `U'` difference between the two actual minima of `U'`.
    split_minima: Option<f64>,
}

fn potential_scan(s: &Settings) -> Result<(), CliError> {
    let p = device(s)?;
    let lo = s.quantity_or("phi_min", Unit::Dimensionless, -1.0)?;
    let hi = s.quantity_or("phi_max", Unit::Dimensionless, 1.0)?;
    let points = s.count_or("points", 4001)? as usize;
    if lo.is_nan() || hi.is_nan() || lo >= hi || points < 2 {
        return Err(CliError::Usage("need --phi-min < --phi-max and --points >= 2".into()));
    }
    let ib = match s.pick(&["bias_current", "transit_time"])? {
        Some("transit_time") => {
            let t = s.quantity_or("transit_time", Unit::Second, 0.0)?;
            if t.is_nan() || t <= 0.0 {
                return Err(CliError::Usage("--transit-time must be positive".into()));
            }
            ELEMENTARY_CHARGE / t
        }
        _ => s.quantity_or("bias_current", Unit::Ampere, 0.0)?,
    };

    let row = |kind, x: f64| {
        let phi = x * FLUX_QUANTUM;
        ScanRow {
            kind,
            phi_over_phi0: x,
            u: potential(phi, &p),
            u_biased: biased_potential(phi, ib, &p),
        }
    };
    // written as a weighted mean so a symmetric range gives an exactly
    // symmetric grid
    let den = (points - 1) as f64;
    let mut rows: Vec<ScanRow> = (0..points)
        .map(|i| row("grid", ((points - 1 - i) as f64 * lo + i as f64 * hi) / den))
        .collect();
    let grid_minima: Vec<f64> = (1..points - 1)
        .filter(|&i| rows[i].u < rows[i - 1].u && rows[i].u <= rows[i + 1].u)
        .map(|i| rows[i].phi_over_phi0)
        .collect();
    rows.extend(grid_minima.into_iter().map(|x| row("grid_minimum", x)));

    let minima = solve_epsilon(p.beta()).ok();
    if let Some(m) = minima {
        let x = m.minimum_flux() / FLUX_QUANTUM;
        rows.extend([row("minimum", -x), row("minimum", x)]);
    }
    let ub = |phi: f64| biased_potential(phi, ib, &p);
    let half = 0.5 * FLUX_QUANTUM;
    let split_minima = minima.map(|_| {
        let diff = |a: f64, b: f64| ub(a) - ub(b);
        let left = golden_section_min(diff, -FLUX_QUANTUM, 0.0);
        let right = golden_section_min(diff, 0.0, FLUX_QUANTUM);
        ub(left) - ub(right)
    });
    output::summary(&ScanSummary {
        beta: p.beta(),
        epsilon: minima.map(|m| m.epsilon),
        delta_phi_over_phi0: minima.map(|m| m.delta_phi / FLUX_QUANTUM),
        bias_current: ib,
        split_ideal: ub(-half) - ub(half),
        split_minima,
    })?;
    emit(s, &rows)
}

fn interaction(s: &Settings, delta: Option<f64>, epsilon: Option<f64>) -> Result<InteractionParams, CliError> {
    let delta = match delta {
        Some(d) => d,
        None => s.quantity_or("delta", Unit::Dimensionless, 0.0)?,
    };
    let epsilon = match epsilon {
        Some(e) => e,
        None => s.quantity_or("epsilon", Unit::Dimensionless, 0.0)?,
    };
    let charge = match s.raw("charge").map(str::to_ascii_lowercase).as_deref() {
        None | Some("negative") | Some("-") => ChargeSign::Negative,
        Some("positive") | Some("+") => ChargeSign::Positive,
        Some(other) => return Err(CliError::Usage(format!("--charge must be negative or positive, got `{other}`"))),
    };
    Ok(InteractionParams::new(delta, epsilon)?.with_charge(charge))
}

fn charge_name(c: ChargeSign) -> &'static str {
    match c {
        ChargeSign::Negative => "negative",
        ChargeSign::Positive => "positive",
    }
}

fn positive_count(s: &Settings, key: &str, default: u64) -> Result<u64, CliError> {
    let n = s.count_or(key, default)?;
    if n == 0 {
        return Err(CliError::Usage(format!("--{} must be positive", key.replace('_', "-"))));
    }
    Ok(n)
}

#[derive(Debug, Serialize)]
struct DetectRecord {
    delta: f64,
    epsilon: f64,
    charge: &'static str,
    particle_present: bool,
    trials: u64,
    clicks: u64,
    p_click: f64,
    error_rate: f64,
    expected_error: f64,
    z_score: f64,
}

fn detect(s: &Settings) -> Result<(), CliError> {
    let seed = s.seed()?;
    let ip = interaction(s, None, None)?;
    let trials = positive_count(s, "trials", 10_000)?;
    let present = !s.flag("absent")?;
    let st = run_detection(&ip, present, trials, seed, execution(s)?)?;
    emit(
        s,
        &[DetectRecord {
            delta: ip.delta(),
            epsilon: ip.epsilon(),
            charge: charge_name(ip.charge()),
            particle_present: present,
            trials: st.trials,
            clicks: st.clicks,
            p_click: st.p_click,
            error_rate: st.error_rate,
            expected_error: st.expected_error,
            z_score: st.z_score,
        }],
    )
}

fn layout(s: &Settings) -> Result<Layout, CliError> {
    let size = |key: &str| -> Result<usize, CliError> {
        s.count(key)?
            .map(|v| v as usize)
            .ok_or_else(|| CliError::Usage("a lattice needs both --nx and --ny".into()))
    };
    Ok(match s.pick(&["n", "nx"])? {
        Some("nx") => Layout::Lattice(Lattice2D::new(size("nx")?, size("ny")?)?),
        Some(_) if s.raw("ny").is_some() && s.raw("nx").is_none() => {
            return Err(CliError::Usage("--ny needs --nx".into()))
        }
        Some(_) => Layout::Line(size("n")?),
        None if s.raw("ny").is_some() => return Err(CliError::Usage("--ny needs --nx".into())),
        None => return Err(CliError::Usage("give --n, or --nx and --ny".into())),
    })
}

fn transfer(s: &Settings) -> Result<(), CliError> {
    let seed = s.seed()?;
    let layout = layout(s)?;
    let trials = positive_count(s, "trials", 100)? as usize;
    let records = run_transfer_trials(
        layout,
        trials,
        !s.flag("far_field")?,
        s.flag("exhaustive")?,
        seed,
        execution(s)?,
    )?;
    output::summary(&ProtocolSummary::of_transfer(&records))?;
    emit(s, &records)
}

fn teleport(s: &Settings) -> Result<(), CliError> {
    let seed = s.seed()?;
    let layout = layout(s)?;
    let trials = positive_count(s, "trials", 100)? as usize;
    let records = run_teleport_trials(layout, trials, s.flag("exhaustive")?, seed, execution(s)?)?;
    output::summary(&ProtocolSummary::of_teleport(&records))?;
    emit(s, &records)
}

#[derive(Debug, Serialize)]
struct BudgetSweepRecord {
    index: usize,
    param: &'static str,
    value: f64,
    beta: f64,
    epsilon: f64,
    delta: f64,
    p_delta: f64,
    p_epsilon: f64,
    p_leak: f64,
    p_total: f64,
}

#[derive(Debug, Serialize)]
struct DetectSweepRecord {
    index: usize,
    param: &'static str,
    value: f64,
    delta: f64,
    epsilon: f64,
    trials: u64,
    clicks: u64,
    error_rate: f64,
    expected_error: f64,
    z_score: f64,
}

pub fn sweep_values(from: f64, to: f64, steps: usize, log: bool) -> Result<Vec<f64>, CliError> {
    if steps == 0 {
        return Err(CliError::Usage("--steps must be positive".into()));
    }
    if log && !(from > 0.0 && to > 0.0) {
        return Err(CliError::Usage("a log sweep needs positive --from and --to".into()));
    }
    if steps == 1 {
        return Ok(vec![from]);
    }
    let den = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            let t = i as f64 / den;
            if i + 1 == steps {
                to
            } else if log {
                (from.ln() + t * (to.ln() - from.ln())).exp()
            } else {
                from + t * (to - from)
            }
        })
        .collect())
}

fn sweep(s: &Settings) -> Result<(), CliError> {
    let param: &'static str = match s.raw("param") {
        Some("li0") => "li0",
        Some("ec_over_ej") | Some("ec-over-ej") => "ec_over_ej",
        Some("aspect_ratio") | Some("aspect-ratio") => "aspect_ratio",
        Some("delta") => "delta",
        Some("epsilon") => "epsilon",
        Some(other) => return Err(CliError::Usage(format!("cannot sweep `{other}`"))),
        None => return Err(CliError::Usage("--param is required".into())),
    };
    let need = |key: &str| -> Result<f64, CliError> {
        s.quantity(key, Unit::Dimensionless)?
            .ok_or_else(|| CliError::Usage(format!("--{key} is required")))
    };
    let values = sweep_values(need("from")?, need("to")?, s.count_or("steps", 11)? as usize, s.flag("log")?)?;
    let exec = execution(s)?;

    match param {
        "delta" | "epsilon" => {
            let seed = s.seed()?;
            let trials = positive_count(s, "trials", 10_000)?;
            let mut records = Vec::with_capacity(values.len());
            // trials inside each point already run in parallel
            for (index, &value) in values.iter().enumerate() {
                let ip = if param == "delta" {
                    interaction(s, Some(value), None)?
                } else {
                    interaction(s, None, Some(value))?
                };
                let st = run_detection(&ip, true, trials, trial_seed(seed, index as u64), exec)?;
                records.push(DetectSweepRecord {
                    index,
                    param,
                    value,
                    delta: ip.delta(),
                    epsilon: ip.epsilon(),
                    trials: st.trials,
                    clicks: st.clicks,
                    error_rate: st.error_rate,
                    expected_error: st.expected_error,
                    z_score: st.z_score,
                });
            }
            emit(s, &records)
        }
        _ => {
            let points = exec.map_slice(&values, |&value| -> Result<BudgetRecord, CliError> {
                let text = value.to_string();
                let point = match param {
                    "li0" => s.with_value("li0", &text, &["critical_current", "beta"]),
                    "ec_over_ej" => s.with_value("ec_over_ej", &text, &["capacitance"]),
                    _ => s.with_value("aspect_ratio", &text, &["length"]),
                };
                budget_record(&device(&point)?, &geometry(&point)?)
            });
            let mut records = Vec::with_capacity(points.len());
            for (index, (r, &value)) in points.into_iter().zip(&values).enumerate() {
                let r = r?;
                records.push(BudgetSweepRecord {
                    index,
                    param,
                    value,
                    beta: r.beta,
                    epsilon: r.epsilon,
                    delta: r.delta,
                    p_delta: r.p_delta,
                    p_epsilon: r.p_epsilon,
                    p_leak: r.p_leak,
                    p_total: r.p_total,
                });
            }
            emit(s, &records)
        }
    }
}
