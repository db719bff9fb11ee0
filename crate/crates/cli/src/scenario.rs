//! Scenario documents: one homogeneous geometry, an optional special-form
//! candidate and the tasks to run on it.

use std::collections::BTreeMap;

use fluxform::exterior::{norm_sq, Frame, KForm};
use fluxform::g2::{classify, stabilizer_algebra};
use fluxform::homogeneous::{
    einstein_constant, numbered_labels, reductive_split, ricci, Bilinear, CoframeDGA, InvariantMetric, LieAlgebraData,
    ReductiveSpace,
};
use fluxform::sugra::{
    classify_type, solve_maxwell, verify_background, BackgroundReport, MaxwellSpectrum, SpecialFormCandidate,
};
use fluxform::{Error, Matrix, Result, Scalar, Tolerance};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::expr::{parse_form, render_form};
use crate::json::{form_to_json, matrix_to_json, scalar_from_json, scalar_to_json, scalars_from_json};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }

    pub fn parse(s: &str) -> Option<Mode> {
        match s {
            "exact" => Some(Mode::Exact),
            "float" => Some(Mode::Float),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Task {
    Verify,
    SolveMaxwell,
    Classify,
    Ricci,
}

impl Task {
    pub fn parse(s: &str) -> Option<Task> {
        match s {
            "verify" => Some(Task::Verify),
            "solve-maxwell" => Some(Task::SolveMaxwell),
            "classify" => Some(Task::Classify),
            "ricci" => Some(Task::Ricci),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Task::Verify => "verify",
            Task::SolveMaxwell => "solve-maxwell",
            Task::Classify => "classify",
            Task::Ricci => "ricci",
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema: u32,
    pub name: String,
    #[serde(default)]
    pub mode: Option<String>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub lie_algebra: Option<LieSpec>,
    #[serde(default)]
    pub h: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    pub m: Option<MSpec>,
    #[serde(default)]
    pub coframe_dga: Option<DgaSpec>,
    #[serde(default)]
    pub metric: Option<MetricSpec>,
    #[serde(default)]
    pub forms: Option<FormsSpec>,
    pub tasks: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieSpec {
    pub dim: usize,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketSpec>,
}

/// `[X_i, X_j] = Σ coeffs[k] X_k`, indices 1-based; keys may also be labels.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub i: Value,
    pub j: Value,
    pub coeffs: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum MSpec {
    Vectors(Vec<Vec<Value>>),
    Rule(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DgaSpec {
    pub generators: Vec<String>,
    /// Generator label to its differential; absent generators are closed.
    #[serde(default)]
    pub d: BTreeMap<String, String>,
    #[serde(default)]
    pub h_generators: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricSpec {
    #[serde(default)]
    pub diagonal: Option<Vec<Value>>,
    #[serde(default)]
    pub gram: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    pub signs: Option<Vec<i8>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormsSpec {
    #[serde(default)]
    pub phi: Option<Value>,
    #[serde(default)]
    pub f: Option<Value>,
    #[serde(default)]
    pub orientation: Option<i8>,
    #[serde(default)]
    pub lorentz_constant: Option<Value>,
}

impl Scenario {
    /// Schema, geometry-source and task checks that do not need arithmetic.
    pub fn validate(&self) -> Result<Vec<Task>> {
        if self.schema != 1 {
            return Err(Error::Invalid(format!("unsupported schema {}; expected 1", self.schema)));
        }
        match (&self.lie_algebra, &self.coframe_dga) {
            (Some(_), Some(_)) => return Err(Error::Invalid("give either lie_algebra or coframe_dga, not both".into())),
            (None, None) => return Err(Error::Invalid("a geometry source (lie_algebra or coframe_dga) is required".into())),
            (Some(_), None) if self.m.is_none() => return Err(Error::Invalid("lie_algebra scenarios need 'm'".into())),
            (None, Some(_)) if self.h.is_some() || self.m.is_some() => {
                return Err(Error::Invalid("'h' and 'm' belong to lie_algebra scenarios; use h_generators".into()))
            }
            _ => {}
        }
        if self.tasks.is_empty() {
            return Err(Error::Invalid("'tasks' must not be empty".into()));
        }
        let mut tasks = Vec::new();
        for t in &self.tasks {
            let task = Task::parse(t).ok_or_else(|| {
                Error::Invalid(format!("unknown task '{t}'; expected verify, solve-maxwell, classify or ricci"))
            })?;
            if !tasks.contains(&task) {
                tasks.push(task);
            }
        }
        if let Some(m) = &self.mode {
            Mode::parse(m).ok_or_else(|| Error::Invalid(format!("unknown mode '{m}'")))?;
        }
        Ok(tasks)
    }
}

/// Geometry, metric and the labels accepted in form expressions.
pub struct Geometry<S: Scalar> {
    pub space: ReductiveSpace<S>,
    pub metric: InvariantMetric<S>,
    pub m_labels: Vec<String>,
    pub notes: Vec<String>,
}

fn index_or_label(v: &Value, labels: &[String], what: &str) -> Result<usize> {
    let found = match v {
        Value::Number(n) => n.as_u64().filter(|&i| i >= 1 && i as usize <= labels.len()).map(|i| i as usize - 1),
        Value::String(s) => labels.iter().position(|l| l == s).or_else(|| {
            s.parse::<usize>().ok().filter(|&i| i >= 1 && i <= labels.len()).map(|i| i - 1)
        }),
        _ => None,
    };
    found.ok_or_else(|| Error::Invalid(format!("{what}: '{v}' is neither an index in 1..={} nor a label", labels.len())))
}

fn lie_algebra<S: Scalar>(spec: &LieSpec, tol: &Tolerance) -> Result<LieAlgebraData<S>> {
    let labels = match &spec.labels {
        Some(l) if l.len() != spec.dim => return Err(Error::DimensionMismatch { expected: spec.dim, found: l.len() }),
        Some(l) => l.clone(),
        None => numbered_labels("X", spec.dim),
    };
    let mut brackets = Vec::with_capacity(spec.brackets.len());
    for (n, b) in spec.brackets.iter().enumerate() {
        let what = format!("bracket {}", n + 1);
        let i = index_or_label(&b.i, &labels, &what)?;
        let j = index_or_label(&b.j, &labels, &what)?;
        let mut coeffs = Vec::new();
        for (k, c) in &b.coeffs {
            coeffs.push((index_or_label(&Value::String(k.clone()), &labels, &what)?, scalar_from_json::<S>(c, &what)?));
        }
        brackets.push((i, j, coeffs));
    }
    LieAlgebraData::from_brackets(labels, &brackets, tol)
}

fn vectors<S: Scalar>(rows: &[Vec<Value>], dim: usize, what: &str) -> Result<Vec<Vec<S>>> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            if r.len() != dim {
                return Err(Error::Invalid(format!("{what} vector {} has {} entries, expected {dim}", i + 1, r.len())));
            }
            scalars_from_json(r, what)
        })
        .collect()
}

fn metric<S: Scalar>(spec: Option<&MetricSpec>, n: usize, notes: &mut Vec<String>) -> Result<InvariantMetric<S>> {
    let Some(spec) = spec else {
        notes.push("no metric given: using the unit Gram matrix on m".into());
        return Ok(InvariantMetric::identity(n));
    };
    let base = match (&spec.diagonal, &spec.gram) {
        (Some(d), None) => {
            if d.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: d.len() });
            }
            InvariantMetric::diagonal(&scalars_from_json::<S>(d, "metric.diagonal")?)
        }
        (None, Some(g)) => {
            let rows = vectors::<S>(g, n, "metric.gram")?;
            if rows.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: rows.len() });
            }
            InvariantMetric::from_gram(Matrix::from_fn(n, n, |i, j| rows[i][j].clone()))
        }
        _ => return Err(Error::Invalid("metric needs exactly one of 'diagonal' or 'gram'".into())),
    };
    match &spec.signs {
        Some(s) => base.with_signs(s.clone()),
        None => Ok(base),
    }
}

impl<S: Scalar> Geometry<S> {
    pub fn build(sc: &Scenario, tol: &Tolerance) -> Result<Self> {
        let mut notes = Vec::new();
        let (space, m_labels) = if let Some(dga) = &sc.coframe_dga {
            let labels = dga.generators.clone();
            let frame = Frame::euclidean(labels.len());
            let mut d = vec![KForm::zero(frame, 2); labels.len()];
            for (gen, text) in &dga.d {
                let i = labels
                    .iter()
                    .position(|l| l == gen)
                    .ok_or_else(|| Error::Invalid(format!("coframe_dga.d: unknown generator '{gen}'")))?;
                d[i] = parse_form(text, &labels, 2).map_err(|e| Error::Invalid(format!("d{gen}: {e}")))?;
            }
            let dga_obj = CoframeDGA::new(labels.clone(), d)?;
            let failures = dga_obj.d_squared_failures(tol);
            if !failures.is_empty() {
                let list: Vec<String> = failures.iter().map(|(i, f)| format!("d(d{}) = {}", labels[*i], render_form(f, &labels))).collect();
                return Err(Error::Invalid(format!("structure equations violate d² = 0: {}", list.join("; "))));
            }
            let mut h = Vec::new();
            for g in &dga.h_generators {
                h.push(
                    labels
                        .iter()
                        .position(|l| l == g)
                        .ok_or_else(|| Error::Invalid(format!("h_generators: unknown generator '{g}'")))?,
                );
            }
            let space = dga_obj.reductive_space(&h, tol)?;
            let m_labels = (0..labels.len()).filter(|i| !h.contains(i)).map(|i| labels[i].clone()).collect();
            (space, m_labels)
        } else {
            let spec = sc.lie_algebra.as_ref().expect("validated");
            let g = lie_algebra::<S>(spec, tol)?;
            let h = vectors::<S>(sc.h.as_deref().unwrap_or(&[]), g.dim(), "h")?;
            let space = match sc.m.as_ref().expect("validated") {
                MSpec::Vectors(m) => ReductiveSpace::new(g.clone(), h, vectors::<S>(m, g.dim(), "m")?, tol)?,
                MSpec::Rule(r) if r == "killing-complement" => reductive_split(&g, &h, Bilinear::Killing, tol)?,
                MSpec::Rule(r) if r == "trace-complement" => reductive_split(&g, &h, Bilinear::Trace, tol)?,
                MSpec::Rule(r) => {
                    return Err(Error::Invalid(format!(
                        "m: unknown rule '{r}'; expected vectors, killing-complement or trace-complement"
                    )))
                }
            };
            let n = space.m_dim();
            (space, numbered_labels("e", n))
        };
        let metric = metric::<S>(sc.metric.as_ref(), space.m_dim(), &mut notes)?;
        metric.check(&space, tol)?;
        Ok(Geometry { space, metric, m_labels, notes })
    }

    pub fn frame(&self) -> Frame {
        Frame::euclidean(self.space.m_dim())
    }
}

/// A 3-form given as an expression over the m labels or as a term object.
pub fn form_value<S: Scalar>(v: &Value, labels: &[String], degree: usize, what: &str) -> Result<KForm<S>> {
    match v {
        Value::String(s) => parse_form(s, labels, degree).map_err(|e| Error::Invalid(format!("{what}: {e}"))),
        other => {
            let f = crate::json::form_from_json(other, Frame::euclidean(labels.len()), what)?;
            if f.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: f.degree() });
            }
            Ok(f)
        }
    }
}

pub fn spectrum_json<S: Scalar>(spec: &MaxwellSpectrum<S>) -> Value {
    let branches: Vec<Value> = spec
        .branches
        .iter()
        .map(|b| json!({"f": scalar_to_json(&b.f), "dimension": b.basis.len(), "basis": b.basis.iter().map(form_to_json).collect::<Vec<_>>()}))
        .collect();
    json!({
        "invariant_3forms": spec.invariant_dim,
        "coclosed_invariant_3forms": spec.coclosed_dim,
        "branches": branches,
        "notes": spec.notes,
    })
}

pub fn background_json<S: Scalar>(r: &BackgroundReport<S>, tol: &Tolerance) -> Value {
    let solution_type = r.solution_type.as_ref().map(|t| {
        json!({
            "type": t.tag.name(),
            "orbit": t.genericity.tag.name(),
            "signature": [t.genericity.signature.0, t.genericity.signature.1],
        })
    });
    json!({
        "closure_residual": scalar_to_json(&r.closure_residual),
        "maxwell_residual": scalar_to_json(&r.maxwell_residual),
        "einstein7_residual": scalar_to_json(&r.einstein7_residual),
        "ricci": matrix_to_json(&r.ricci),
        "einstein_constant": r.einstein_constant.as_ref().map(scalar_to_json),
        "lorentz_einstein_constant": scalar_to_json(&r.lorentz_constant),
        "phi_norm_sq": scalar_to_json(&r.phi_norm_sq),
        "solution_type": solution_type,
        "eleven_dim_crosscheck_residual": r.crosscheck_residual.as_ref().map(scalar_to_json),
        "maxwell_ok": r.maxwell_ok(tol),
        "einstein_ok": r.einstein_ok(tol),
        "flags": r.flags,
        "notes": r.notes,
        "exit_code": r.exit_code(tol),
    })
}

/// Run `tasks` on the scenario in scalar type `S`, appending to `report`.
pub fn run_tasks<S: Scalar>(sc: &Scenario, tasks: &[Task], tol: &Tolerance, report: &mut Report) -> Result<()> {
    let geo = Geometry::<S>::build(sc, tol)?;
    for n in &geo.notes {
        report.note(n.clone());
    }
    let forms = sc.forms.as_ref();
    let phi = forms
        .and_then(|f| f.phi.as_ref())
        .map(|v| form_value::<S>(v, &geo.m_labels, 3, "forms.phi"))
        .transpose()?;
    let f = forms.and_then(|f| f.f.as_ref()).map(|v| scalar_from_json::<S>(v, "forms.f")).transpose()?;
    let orientation = forms.and_then(|f| f.orientation).unwrap_or(1);
    let declared = forms
        .and_then(|f| f.lorentz_constant.as_ref())
        .map(|v| scalar_from_json::<S>(v, "forms.lorentz_constant"))
        .transpose()?;
    report.section(
        "geometry",
        json!({
            "dim_g": geo.space.algebra().dim(),
            "dim_h": geo.space.h_dim(),
            "dim_m": geo.space.m_dim(),
            "m_labels": geo.m_labels,
            "symmetric": geo.space.is_symmetric(tol),
            "almost_effective": geo.space.is_almost_effective(tol),
            "metric_gram": matrix_to_json(geo.metric.gram()),
            "orientation_signs": geo.metric.signs(),
        }),
    );
    let candidate = |phi: &KForm<S>, f: &S| {
        SpecialFormCandidate::new(geo.space.clone(), geo.metric.clone(), orientation, phi.clone(), f.clone(), tol)
    };
    for task in tasks {
        match task {
            Task::Ricci => {
                let ric = ricci(&geo.space, &geo.metric, tol)?;
                let k = einstein_constant(&ric, geo.metric.gram(), tol);
                report.section(
                    "ricci",
                    json!({
                        "basis": "m",
                        "ricci": matrix_to_json(&ric),
                        "einstein_constant": k.as_ref().map(scalar_to_json),
                    }),
                );
            }
            Task::SolveMaxwell => {
                let spec = solve_maxwell(&geo.space, &geo.metric, orientation, tol)?;
                if spec.branches.is_empty() {
                    report.raise(1);
                    report.note("no invariant 3-form satisfies dφ = f★φ with d★φ = 0");
                }
                report.section("solve-maxwell", spectrum_json(&spec));
            }
            Task::Classify => {
                let phi = phi.as_ref().ok_or_else(|| Error::Invalid("classify needs forms.phi".into()))?;
                let mut body = classify_json(phi, tol)?;
                if let Some(f) = &f {
                    let entry = match classify_type(&candidate(phi, f)?, tol) {
                        Ok(t) => json!(t.tag.name()),
                        Err(e) => json!(format!("unavailable: {e}")),
                    };
                    body.as_object_mut().expect("object").insert("solution_type".into(), entry);
                }
                report.section("classify", body);
            }
            Task::Verify => {
                let (phi, f) = match (&phi, &f) {
                    (Some(p), Some(f)) => (p, f),
                    _ => return Err(Error::Invalid("verify needs forms.phi and forms.f".into())),
                };
                let r = verify_background(&candidate(phi, f)?, declared.as_ref(), tol)?;
                report.raise(r.exit_code(tol));
                report.section("verify", background_json(&r, tol));
            }
        }
    }
    Ok(())
}

/// Orbit data of a 3-form on a seven-dimensional frame.
pub fn classify_json<S: Scalar>(phi: &KForm<S>, tol: &Tolerance) -> Result<Value> {
    if phi.frame().dim() != 7 || phi.degree() != 3 {
        return Err(Error::Invalid("classification needs a 3-form in seven dimensions".into()));
    }
    let class = classify(phi, tol)?;
    let stab = stabilizer_algebra(phi, tol)?;
    Ok(json!({
        "form": form_to_json(phi),
        "orbit": class.tag.name(),
        "signature": [class.signature.0, class.signature.1],
        "det_b": scalar_to_json(&class.det_b),
        "norm_sq": scalar_to_json(&norm_sq(phi)),
        "stabilizer_dim": stab.len(),
        "warning": class.warning,
    }))
}

/// Bare form document for `classify-form`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDocument {
    pub schema: u32,
    #[serde(default)]
    pub name: Option<String>,
    pub form: Value,
    /// `[p, q]` with `p + q = 7`; default `[7, 0]`.
    #[serde(default)]
    pub signature: Option<[usize; 2]>,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub mode: Option<String>,
}

pub fn classify_document<S: Scalar>(doc: &FormDocument, tol: &Tolerance, report: &mut Report) -> Result<()> {
    let [p, q] = doc.signature.unwrap_or([7, 0]);
    if p + q != 7 {
        return Err(Error::Invalid(format!("signature ({p}, {q}) is not seven-dimensional")));
    }
    let labels = doc.labels.clone().unwrap_or_else(|| numbered_labels("e", 7));
    if labels.len() != 7 {
        return Err(Error::DimensionMismatch { expected: 7, found: labels.len() });
    }
    let phi = form_value::<S>(&doc.form, &labels, 3, "form")?.on_frame(Frame::new(p, q))?;
    report.section("classify", classify_json(&phi, tol)?);
    Ok(())
}
