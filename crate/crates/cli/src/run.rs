//! Certification runs over either scalar backend, producing
//! format-independent reports that the renderers serialize.

use alphabox_core::alphacert::{certify_box, cluster_solutions, CertResult, PairVerdict};
use alphabox_core::polysys::parse_system;
use alphabox_core::{ComplexInterval, Dir, Endpoint, MpFloat, PrecisionContext};

use crate::config::{validate_radius, CliError, Precision, RunConfig, MIN_SWEEP_BITS};
use crate::points::parse_points;

/// One certified (or rejected) candidate box. The bounds are upper bounds:
/// a singular Jacobian enclosure yields infinite fields, not a failure.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Row {
    pub idx: usize,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub certified: bool,
}

impl Row {
    fn new(idx: usize, res: &CertResult) -> Self {
        Row {
            idx,
            alpha: res.alpha_up,
            beta: res.beta_up,
            gamma: res.gamma_up,
            certified: res.certified,
        }
    }
}

/// Output of `certify`: one row per candidate box, in input order, plus
/// the pairwise verdicts and solution clusters when `--distinct` is set.
#[derive(Clone, Debug, PartialEq)]
pub struct CertifyReport {
    pub rows: Vec<Row>,
    pub distinct: Option<DistinctReport>,
}

/// Pairwise verdict matrix (diagonal: `Same` iff certified) and the
/// partition of box indices induced by the transitive closure of `Same`.
#[derive(Clone, Debug, PartialEq)]
pub struct DistinctReport {
    pub matrix: Vec<Vec<PairVerdict>>,
    pub clusters: Vec<Vec<usize>>,
}

impl CertifyReport {
    pub fn all_certified(&self) -> bool {
        self.rows.iter().all(|r| r.certified)
    }
}

/// Which quantity a sweep varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepKey {
    Radius,
    Bits,
}

/// Output of the sweep subcommands: certify rows labelled by the sweep
/// value they were computed at, in sweep order then input order.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub key: SweepKey,
    pub rows: Vec<(String, Row)>,
}

impl SweepReport {
    pub fn all_certified(&self) -> bool {
        self.rows.iter().all(|(_, r)| r.certified)
    }
}

/// Input texts with the labels used in error messages.
struct Inputs {
    system_text: String,
    system_label: String,
    points_text: String,
    points_label: String,
}

fn load_inputs(cfg: &RunConfig) -> Result<Inputs, CliError> {
    let system_label = cfg.system_path.display().to_string();
    let system_text = std::fs::read_to_string(&cfg.system_path)
        .map_err(|e| CliError::Input(format!("{system_label}: {e}")))?;
    let points_label = cfg.points_path.display().to_string();
    let points_text = std::fs::read_to_string(&cfg.points_path)
        .map_err(|e| CliError::Input(format!("{points_label}: {e}")))?;
    Ok(Inputs {
        system_text,
        system_label,
        points_text,
        points_label,
    })
}

fn input_err(label: &str, e: alphabox_core::Error) -> CliError {
    CliError::Input(format!("{label}: {e}"))
}

/// Parse the system and points at one precision and certify every box.
fn certify_at<S: Endpoint>(
    inputs: &Inputs,
    radius: &str,
    bits: u32,
    ctx: PrecisionContext,
    distinct: bool,
) -> Result<CertifyReport, CliError> {
    let system = parse_system::<S>(&inputs.system_text, ctx)
        .map_err(|e| input_err(&inputs.system_label, e))?;
    let points = parse_points(&inputs.points_text, system.nvars(), &inputs.points_label)?;
    let r = S::parse_decimal(radius, bits, Dir::Up)
        .map_err(|e| CliError::Config(format!("radius '{radius}': {e}")))?;

    let mut regions: Vec<Vec<ComplexInterval<S>>> = Vec::with_capacity(points.blocks.len());
    for block in &points.blocks {
        let mut region = Vec::with_capacity(block.len());
        for (re, im) in block {
            let point = ComplexInterval::<S>::parse_point(re, im, ctx)
                .map_err(|e| input_err(&inputs.points_label, e))?;
            region.push(point.widen(&r));
        }
        regions.push(region);
    }

    let mut rows = Vec::with_capacity(regions.len());
    let mut results = Vec::with_capacity(regions.len());
    for (idx, region) in regions.iter().enumerate() {
        let res =
            certify_box(&system, region).map_err(|e| input_err(&inputs.points_label, e))?;
        rows.push(Row::new(idx, &res));
        results.push(res);
    }

    let distinct = if distinct {
        let (matrix, clusters) = cluster_solutions(&regions, &results)
            .map_err(|e| input_err(&inputs.points_label, e))?;
        Some(DistinctReport { matrix, clusters })
    } else {
        None
    };
    Ok(CertifyReport { rows, distinct })
}

fn certify_dispatch(
    inputs: &Inputs,
    radius: &str,
    precision: Precision,
    distinct: bool,
) -> Result<CertifyReport, CliError> {
    match precision {
        Precision::Double => certify_at::<f64>(
            inputs,
            radius,
            53,
            PrecisionContext::hardware_double(),
            distinct,
        ),
        Precision::Bits(bits) => certify_at::<MpFloat>(
            inputs,
            radius,
            bits,
            PrecisionContext::arbitrary(bits),
            distinct,
        ),
    }
}

/// `certify`: one run at the configured radius and precision.
pub fn run_certify(cfg: &RunConfig) -> Result<CertifyReport, CliError> {
    cfg.validate()?;
    let inputs = load_inputs(cfg)?;
    certify_dispatch(&inputs, &cfg.radius, cfg.precision, cfg.distinct)
}

/// `radius-sweep`: one certify run per radius, same precision throughout.
pub fn run_radius_sweep(cfg: &RunConfig, radii: &[String]) -> Result<SweepReport, CliError> {
    if radii.is_empty() {
        return Err(CliError::Config(
            "radius sweep needs at least one radius".to_owned(),
        ));
    }
    for radius in radii {
        validate_radius(radius)?;
    }
    cfg.validate()?;
    let inputs = load_inputs(cfg)?;
    let mut rows = Vec::new();
    for radius in radii {
        let report = certify_dispatch(&inputs, radius, cfg.precision, false)?;
        for row in report.rows {
            rows.push((radius.clone(), row));
        }
    }
    Ok(SweepReport {
        key: SweepKey::Radius,
        rows,
    })
}

/// `precision-sweep`: one certify run per mantissa size at a fixed radius.
/// The config's own precision field is ignored; the swept list drives it.
pub fn run_precision_sweep(cfg: &RunConfig, bits_list: &[u32]) -> Result<SweepReport, CliError> {
    if bits_list.is_empty() {
        return Err(CliError::Config(
            "precision sweep needs at least one bits value".to_owned(),
        ));
    }
    for &bits in bits_list {
        if bits < MIN_SWEEP_BITS {
            return Err(CliError::Config(format!(
                "bits {bits} is below the sweep minimum of {MIN_SWEEP_BITS}"
            )));
        }
    }
    validate_radius(&cfg.radius)?;
    let inputs = load_inputs(cfg)?;
    let mut rows = Vec::new();
    for &bits in bits_list {
        let report = certify_at::<MpFloat>(
            &inputs,
            &cfg.radius,
            bits,
            PrecisionContext::arbitrary(bits),
            false,
        )?;
        for row in report.rows {
            rows.push((bits.to_string(), row));
        }
    }
    Ok(SweepReport {
        key: SweepKey::Bits,
        rows,
    })
}
