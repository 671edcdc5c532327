//! Serializable reports. Field order in the structs is the JSON key order.
//! Big integers and floating results are rendered as decimal strings.

use serde::Serialize;
use serde_json::Value;

use toral::conjugacy::ConjugacyVerdict;
use toral::dynamics::{count_fixed_points, DensityScan, FixedPointCount};
use toral::factor::cyclotomic_divisors;
use toral::foliation::{classify_foliation, decomposition_report, DecompositionReport, FoliationVerdict};
use toral::forms::{solve_invariant_form, SkewFormLattice};
use toral::io::{matrix_to_json, poly_to_json, vector_to_json};
use toral::spectral::{bowen_entropy, spectrum_trichotomy, EntropyMethod, EntropyValue, SpectrumSplit};
use toral::{Error, IntMatrix, IntPoly};

pub fn float_string(x: f64) -> String {
    format!("{x:.15}")
}

pub fn bound_string(x: f64) -> String {
    format!("{x:.3e}")
}

#[derive(Serialize)]
pub struct Input {
    pub source: String,
    pub dimension: usize,
    pub matrix: Value,
}

#[derive(Serialize)]
pub struct FormsSummary {
    pub rank: usize,
    pub nondegenerate: Option<Value>,
    pub search_note: String,
    pub basis: Vec<Value>,
}

impl From<&SkewFormLattice> for FormsSummary {
    fn from(l: &SkewFormLattice) -> Self {
        FormsSummary {
            rank: l.rank,
            nondegenerate: l.nondegenerate.as_ref().map(matrix_to_json),
            search_note: l.search_note.clone(),
            basis: l.basis.iter().map(matrix_to_json).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct FactorCounts {
    pub factor: Value,
    pub display: String,
    pub inside: usize,
    pub on: usize,
    pub outside: usize,
}

#[derive(Serialize)]
pub struct Trichotomy {
    pub char_poly: Value,
    pub stable: usize,
    pub center: usize,
    pub unstable: usize,
    pub factors: Vec<FactorCounts>,
}

impl From<&SpectrumSplit> for Trichotomy {
    fn from(s: &SpectrumSplit) -> Self {
        Trichotomy {
            char_poly: poly_to_json(&s.char_poly),
            stable: s.dims.stable,
            center: s.dims.center,
            unstable: s.dims.unstable,
            factors: s
                .factors
                .iter()
                .map(|f| FactorCounts {
                    factor: poly_to_json(&f.factor),
                    display: f.factor.to_string(),
                    inside: f.counts.inside,
                    on: f.counts.on,
                    outside: f.counts.outside,
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct Ergodicity {
    pub ergodic: bool,
    /// Orders `k` such that the k-th cyclotomic polynomial divides the
    /// characteristic polynomial.
    pub cyclotomic_orders: Vec<u64>,
}

#[derive(Serialize)]
pub struct EntropyTermReport {
    pub factor: String,
    pub contribution: String,
    pub error_bound: String,
    pub method: &'static str,
}

#[derive(Serialize)]
pub struct EntropyReport {
    pub value: String,
    pub error_bound: String,
    pub tolerance: String,
    pub terms: Vec<EntropyTermReport>,
}

impl EntropyReport {
    pub fn new(e: &EntropyValue, tolerance: f64) -> Self {
        EntropyReport {
            value: float_string(e.value),
            error_bound: bound_string(e.error_bound),
            tolerance: bound_string(tolerance),
            terms: e
                .terms
                .iter()
                .map(|t| EntropyTermReport {
                    factor: t.factor.to_string(),
                    contribution: float_string(t.contribution),
                    error_bound: bound_string(t.error_bound),
                    method: match t.method {
                        EntropyMethod::ExactReal => "exact-real",
                        EntropyMethod::Polar => "polar",
                        EntropyMethod::Floating => "floating",
                    },
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct FoliationReport {
    pub kind: &'static str,
    pub closure_dim: usize,
    pub hull_basis: Vec<Value>,
    pub resonance_basis: Vec<Value>,
    pub unstable_dim_not_two: bool,
}

impl From<&FoliationVerdict> for FoliationReport {
    fn from(f: &FoliationVerdict) -> Self {
        FoliationReport {
            kind: f.kind.label(),
            closure_dim: f.closure_dim,
            hull_basis: f.hull_basis.iter().map(|v| vector_to_json(v)).collect(),
            resonance_basis: f.resonance_basis.iter().map(|v| vector_to_json(v)).collect(),
            unstable_dim_not_two: f.unstable_dim_not_two,
        }
    }
}

#[derive(Serialize)]
pub struct BlockReport {
    pub factor: Value,
    pub display: String,
    pub role: &'static str,
    pub sublattice: Vec<Value>,
}

#[derive(Serialize)]
pub struct DecompositionSummary {
    pub factors: Vec<BlockReport>,
    pub center_order: Option<u32>,
    pub center_note: String,
}

impl From<&DecompositionReport> for DecompositionSummary {
    fn from(d: &DecompositionReport) -> Self {
        DecompositionSummary {
            factors: d
                .factors
                .iter()
                .map(|b| BlockReport {
                    factor: poly_to_json(&b.factor),
                    display: b.factor.to_string(),
                    role: b.role.label(),
                    sublattice: b.sublattice.iter().map(|v| vector_to_json(v)).collect(),
                })
                .collect(),
            center_order: d.center_order,
            center_note: d.center_note.clone(),
        }
    }
}

/// One failed or inapplicable stage. Only `severity == "error"` entries
/// make `analyze` exit with the analysis-error code.
#[derive(Serialize)]
pub struct StageError {
    pub stage: &'static str,
    pub severity: &'static str,
    pub message: String,
}

#[derive(Serialize)]
pub struct Timing {
    pub total_ms: f64,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub input: Input,
    pub unimodular: bool,
    pub determinant: String,
    pub symplectic_forms: FormsSummary,
    pub trichotomy: Option<Trichotomy>,
    pub partially_hyperbolic: Option<bool>,
    pub anosov: Option<bool>,
    pub ergodic: Ergodicity,
    pub entropy: Option<EntropyReport>,
    pub foliation: Option<FoliationReport>,
    pub decomposition: Option<DecompositionSummary>,
    pub errors: Vec<StageError>,
    pub timing: Timing,
}

impl AnalysisReport {
    pub fn has_fatal_error(&self) -> bool {
        self.errors.iter().any(|e| e.severity == "error")
    }
}

fn stage_error(stage: &'static str, e: &Error) -> StageError {
    let severity = match e {
        Error::NotPartiallyHyperbolic => "not_applicable",
        _ => "error",
    };
    StageError { stage, severity, message: e.to_string() }
}

/// Runs every analysis stage; a failing stage records an error and leaves
/// its field null instead of aborting the report.
pub fn analyze(source: &str, a: &IntMatrix, tolerance: f64) -> AnalysisReport {
    let start = std::time::Instant::now();
    let mut errors = Vec::new();
    let det = a.det();
    let unimodular = a.is_unimodular();
    if !unimodular {
        errors.push(stage_error("input", &Error::NotUnimodular(det.to_string())));
    }
    let forms = solve_invariant_form(a);
    let cp: IntPoly = a.char_poly();
    let ergodic = Ergodicity {
        ergodic: cp.degree() == 0 || cyclotomic_divisors(&cp).is_empty(),
        cyclotomic_orders: cyclotomic_divisors(&cp),
    };

    let mut trichotomy = None;
    let (mut ph, mut anosov) = (None, None);
    let (mut entropy, mut foliation, mut decomposition) = (None, None, None);
    match spectrum_trichotomy(a) {
        Err(e) => errors.push(stage_error("trichotomy", &e)),
        Ok(split) => {
            let d = split.dims;
            let partially = d.stable >= 1 && d.unstable >= 1;
            ph = Some(partially);
            anosov = Some(partially && d.center == 0);
            trichotomy = Some(Trichotomy::from(&split));
            match bowen_entropy(a, tolerance) {
                Ok(v) => entropy = Some(EntropyReport::new(&v, tolerance)),
                Err(e) => errors.push(stage_error("entropy", &e)),
            }
            match classify_foliation(a) {
                Ok(v) => foliation = Some(FoliationReport::from(&v)),
                Err(e) => errors.push(stage_error("foliation", &e)),
            }
            match decomposition_report(a) {
                Ok(v) => decomposition = Some(DecompositionSummary::from(&v)),
                Err(e) => errors.push(stage_error("decomposition", &e)),
            }
        }
    }
    AnalysisReport {
        input: Input { source: source.to_string(), dimension: a.rows(), matrix: matrix_to_json(a) },
        unimodular,
        determinant: det.to_string(),
        symplectic_forms: FormsSummary::from(&forms),
        trichotomy,
        partially_hyperbolic: ph,
        anosov,
        ergodic,
        entropy,
        foliation,
        decomposition,
        errors,
        timing: Timing { total_ms: (start.elapsed().as_secs_f64() * 1e6).round() / 1e3 },
    }
}

#[derive(Serialize)]
pub struct ConjugacyReport {
    pub status: &'static str,
    pub witness: Option<Value>,
    pub separating_invariant: Option<String>,
    pub search_bound: u32,
    pub scope: &'static str,
    pub note: String,
}

impl From<&ConjugacyVerdict> for ConjugacyReport {
    fn from(v: &ConjugacyVerdict) -> Self {
        ConjugacyReport {
            status: v.status.label(),
            witness: v.witness.as_ref().map(matrix_to_json),
            separating_invariant: v.separating_invariant.clone(),
            search_bound: v.search_bound,
            scope: v.scope.label(),
            note: v.note.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct SimulationReport {
    pub coverage: f64,
    pub boxes_hit: u64,
    pub total_boxes: u64,
    pub resolution: u32,
    pub samples: u64,
    pub seed: u64,
}

impl From<&DensityScan> for SimulationReport {
    fn from(s: &DensityScan) -> Self {
        SimulationReport {
            coverage: s.coverage,
            boxes_hit: s.boxes_hit,
            total_boxes: s.total_boxes,
            resolution: s.resolution,
            samples: s.samples,
            seed: s.seed,
        }
    }
}

#[derive(Serialize)]
pub struct FixedPointEntry {
    pub k: u32,
    /// Decimal count, or `"infinite"` when `A^k - I` is singular.
    pub count: String,
}

#[derive(Serialize)]
pub struct PointPeriod {
    pub point: Vec<String>,
    pub period: u64,
}

#[derive(Serialize)]
pub struct PeriodicReport {
    pub fixed_points: Vec<FixedPointEntry>,
    pub point: Option<PointPeriod>,
}

pub fn fixed_point_table(a: &IntMatrix, max_k: u32) -> toral::Result<Vec<FixedPointEntry>> {
    (1..=max_k)
        .map(|k| {
            let count = match count_fixed_points(a, k)? {
                FixedPointCount::Finite(n) => n.to_string(),
                FixedPointCount::Infinite => "infinite".to_string(),
            };
            Ok(FixedPointEntry { k, count })
        })
        .collect()
}
