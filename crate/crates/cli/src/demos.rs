//! Built-in demos. All data is embedded.

use fluxform::exterior::{norm_sq, wedge, Frame, KForm};
use fluxform::g2::{
    canonical_g2_form, classify, contraction_3g_check, find_split_form, induced_metric, stabilizer_algebra,
    stabilizer_in_so, OrbitTag,
};
use fluxform::homogeneous::algebras::so;
use fluxform::homogeneous::{centralizer, invariant_forms, isotypic_decomposition, InvariantMetric};
use fluxform::models::*;
use fluxform::sugra::*;
use fluxform::{Error, Matrix, Result, Scalar, Tolerance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::expr::render_form;
use crate::json::{form_to_json, matrix_to_json, scalar_to_json};
use crate::report::{check, Report};
use crate::scenario::{background_json, spectrum_json, Mode};
use crate::sweep;

pub const DEMOS: [(&str, &str); 7] = [
    ("canonical-g2", "standard G2 3-form: orbit, induced metric, stabilizer, split variant"),
    ("cp2xs3", "CP2 x S3: structure equations, Maxwell branches, failing Einstein equation"),
    ("s3xt4", "SU2 x T4: parity rule for the special 3-form over all signs and dualities"),
    ("spin7-g2", "SO7/G2: weak G2 solution, normalization to f = 2, Ric = 3/2 g"),
    ("torus7", "flat T7 with a parallel G2-structure: non-existence flag"),
    ("example-2-15", "H3 x S4 with phi = vol(H3), f = 0"),
    ("lemma-sweep", "exterior-algebra property sweep, centralizers and isotypic decompositions"),
];

pub fn names() -> Vec<&'static str> {
    DEMOS.iter().map(|(n, _)| *n).collect()
}

/// Runs a demo; unknown names are an error listing the valid ones.
pub fn run(name: &str, mode: Mode, tol: &Tolerance) -> Result<Report> {
    let mut report = Report::new(format!("demo {name}"), mode.name());
    match (name, mode) {
        ("canonical-g2", Mode::Exact) => canonical_g2::<Q>(tol, &mut report)?,
        ("canonical-g2", Mode::Float) => canonical_g2::<f64>(tol, &mut report)?,
        ("cp2xs3", Mode::Exact) => cp2xs3::<Q>(tol, &mut report)?,
        ("cp2xs3", Mode::Float) => cp2xs3::<f64>(tol, &mut report)?,
        ("s3xt4", Mode::Exact) => s3xt4::<Q>(tol, &mut report)?,
        ("s3xt4", Mode::Float) => s3xt4::<f64>(tol, &mut report)?,
        ("spin7-g2", mode) => spin7_g2(mode, tol, &mut report)?,
        ("torus7", Mode::Exact) => torus7_demo::<Q>(tol, &mut report)?,
        ("torus7", Mode::Float) => torus7_demo::<f64>(tol, &mut report)?,
        ("example-2-15", Mode::Exact) => match hyperbolic_sphere::<Q>(tol, &mut report) {
            Err(Error::Inexact(why)) => {
                report = Report::new(format!("demo {name}"), Mode::Float.name());
                report.note(format!("exact arithmetic unavailable ({why}); ran in float mode"));
                hyperbolic_sphere::<f64>(tol, &mut report)?
            }
            other => other?,
        },
        ("example-2-15", Mode::Float) => hyperbolic_sphere::<f64>(tol, &mut report)?,
        ("lemma-sweep", Mode::Exact) => lemma_sweep::<Q>(tol, &mut report)?,
        ("lemma-sweep", Mode::Float) => lemma_sweep::<f64>(tol, &mut report)?,
        _ => {
            return Err(Error::Invalid(format!("unknown demo '{name}'; available demos: {}", names().join(", "))))
        }
    }
    Ok(report)
}

type Q = fluxform::Rational;

/// Records checks in a section; a failed check raises the exit code to 1.
struct Checks(Vec<Value>);

impl Checks {
    fn new() -> Self {
        Checks(Vec::new())
    }

    fn add(&mut self, name: &str, expected: Value, observed: Value, pass: bool) {
        self.0.push(check(name, expected, observed, pass));
    }

    fn finish(self, report: &mut Report) {
        let failed: Vec<String> = self
            .0
            .iter()
            .filter(|c| c["pass"] == Value::Bool(false))
            .map(|c| c["check"].as_str().unwrap_or_default().to_string())
            .collect();
        if !failed.is_empty() {
            report.raise(1);
            report.note(format!("failed checks: {}", failed.join(", ")));
        }
        report.section("checks", Value::Array(self.0));
    }
}

fn canonical_g2<S: Scalar>(tol: &Tolerance, report: &mut Report) -> Result<()> {
    let frame = Frame::euclidean(7);
    let omega = canonical_g2_form::<S>(frame)?;
    let norm = norm_sq(&omega);
    let induced = induced_metric(&omega, tol)?;
    let g_identity = match &induced.g {
        Some(g) => g.sub(&Matrix::identity(7)).is_negligible(tol),
        None => induced.g_approx.sub(&Matrix::identity(7)).is_negligible(&Tolerance::absolute(1e-9)),
    };
    let class = classify(&omega, tol)?;
    let stab = stabilizer_algebra(&omega, tol)?.len();
    let stab_so = stabilizer_in_so(&omega, tol)?.len();
    let contraction = contraction_3g_check(&omega, tol)?;
    report.section(
        "canonical form",
        json!({
            "form": form_to_json(&omega),
            "norm_sq": scalar_to_json(&norm),
            "bilinear_b": matrix_to_json(&induced.b),
            "det_b": scalar_to_json(&induced.det_b),
            "induced_metric": induced.g.as_ref().map(matrix_to_json),
            "orbit": class.tag.name(),
            "signature": [class.signature.0, class.signature.1],
            "stabilizer_dim_gl7": stab,
            "stabilizer_dim_so7": stab_so,
            "max_contraction_defect": scalar_to_json(&contraction),
        }),
    );
    let split = find_split_form::<S>(frame, tol)?;
    let split_json = split.as_ref().map(|(pattern, form, c)| {
        json!({
            "sign_pattern": pattern,
            "form": form_to_json(form),
            "orbit": c.tag.name(),
            "signature": [c.signature.0, c.signature.1],
            "det_b": scalar_to_json(&c.det_b),
        })
    });
    report.section("split variant", json!({"found": split.is_some(), "variant": split_json}));

    let mut checks = Checks::new();
    checks.add("norm_sq", json!(7), scalar_to_json(&norm), norm.approx_eq(&S::from_i64(7), tol));
    checks.add("induced metric is the identity", json!(true), json!(g_identity), g_identity);
    checks.add("orbit", json!("GenericG2"), json!(class.tag.name()), class.tag == OrbitTag::GenericG2);
    checks.add("stabilizer dimension", json!(14), json!(stab), stab == 14);
    checks.add("stabilizer inside so7", json!(14), json!(stab_so), stab_so == 14);
    checks.add("<X.w, Y.w> = 3 g", json!(0), scalar_to_json(&contraction), contraction.is_negligible(tol));
    let split_ok = matches!(&split, Some((_, _, c)) if c.tag == OrbitTag::GenericG2Star && c.signature == (4, 3));
    checks.add(
        "split variant",
        json!({"orbit": "GenericG2Star", "signature": [4, 3]}),
        split.as_ref().map(|(_, _, c)| json!({"orbit": c.tag.name(), "signature": [c.signature.0, c.signature.1]})).unwrap_or(Value::Null),
        split_ok,
    );
    checks.finish(report);
    Ok(())
}

fn table_text(table: TwoFormTerms) -> String {
    let mut out = String::new();
    for (n, &(c, i, j)) in table.iter().enumerate() {
        let sign = match (n, c < 0) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
        out.push_str(&format!("{sign}{mag}{}^{}", CP2XS3_LABELS[i], CP2XS3_LABELS[j]));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn cp2xs3<S: Scalar>(tol: &Tolerance, report: &mut Report) -> Result<()> {
    let printed = cp2xs3_dga_as_printed::<S>();
    let labels: Vec<String> = CP2XS3_LABELS.iter().map(|s| s.to_string()).collect();
    let failures: Vec<Value> = printed
        .d_squared_failures(tol)
        .iter()
        .map(|(i, f)| json!({"generator": CP2XS3_LABELS[*i], "d_squared": render_form(f, &labels)}))
        .collect();
    let corrected: Vec<Value> = (0..CP2XS3_LABELS.len())
        .filter(|&i| CP2XS3_TABLE[i] != CP2XS3_TABLE_AS_PRINTED[i])
        .map(|i| {
            json!({
                "generator": CP2XS3_LABELS[i],
                "as_printed": table_text(CP2XS3_TABLE_AS_PRINTED[i]),
                "consistent": table_text(CP2XS3_TABLE[i]),
            })
        })
        .collect();
    let fixed_ok = cp2xs3_dga::<S>().validate(tol).is_ok();
    let printed_ok = failures.is_empty();
    report.section(
        "structure equations",
        json!({
            "as_printed_passes_d_squared": printed_ok,
            "as_printed_failures": failures,
            "corrected_entries": corrected,
            "corrected_passes_d_squared": fixed_ok,
        }),
    );

    let space = cp2xs3_space::<S>(tol)?;
    let invariant = invariant_forms(&space, 3, tol)?;
    report.section(
        "invariant 3-forms",
        json!({"dimension": invariant.len(), "basis": invariant.iter().map(form_to_json).collect::<Vec<_>>()}),
    );

    let mut checks = Checks::new();
    checks.add("as-printed table fails d^2 = 0", json!(true), json!(!printed_ok), !printed_ok);
    checks.add("corrected table passes d^2 = 0", json!(true), json!(fixed_ok), fixed_ok);
    checks.add("invariant 3-forms", json!(4), json!(invariant.len()), invariant.len() == 4);

    let cases: [([i64; 3], Vec<(S, usize)>); 2] = [
        ([1, 1, 1], vec![(S::zero(), 1), (S::one(), 3)]),
        ([4, 2, 2], vec![(S::zero(), 1), (S::from_ratio(1, 2), 2), (S::one(), 1)]),
    ];
    for (c, expected) in cases {
        let metric = cp2xs3_metric(S::one(), c.map(S::from_i64));
        let spectrum = solve_maxwell(&space, &metric, 1, tol)?;
        let mut backgrounds = Vec::new();
        let mut all_fail_einstein = !spectrum.branches.is_empty();
        for b in &spectrum.branches {
            for phi in &b.basis {
                let cand = SpecialFormCandidate::new(space.clone(), metric.clone(), 1, phi.clone(), b.f.clone(), tol)?;
                let r = verify_background(&cand, None, tol)?;
                all_fail_einstein &= r.maxwell_ok(tol) && !r.einstein7_residual.is_negligible(tol);
                report.raise(r.exit_code(tol));
                backgrounds.push(json!({"f": scalar_to_json(&b.f), "phi": form_to_json(phi), "report": background_json(&r, tol)}));
            }
        }
        let label = format!("metric a = 1, c = ({}, {}, {})", c[0], c[1], c[2]);
        let observed: Vec<Value> = spectrum.branches.iter().map(|b| json!([scalar_to_json(&b.f), b.basis.len()])).collect();
        let want: Vec<Value> = expected.iter().map(|(f, d)| json!([scalar_to_json(f), d])).collect();
        let branch_ok = spectrum.branches.len() == expected.len()
            && spectrum.branches.iter().zip(&expected).all(|(b, (f, d))| b.f.approx_eq(f, tol) && b.basis.len() == *d);
        checks.add(&format!("branches (f, dim) for c = {:?}", c), Value::Array(want), Value::Array(observed), branch_ok);
        checks.add(&format!("Einstein residual > 0 on every solution, c = {:?}", c), json!(true), json!(all_fail_einstein), all_fail_einstein);
        report.section(label, json!({"maxwell": spectrum_json(&spectrum), "backgrounds": backgrounds}));
    }
    checks.finish(report);
    Ok(())
}

fn s3xt4<S: Scalar>(tol: &Tolerance, report: &mut Report) -> Result<()> {
    let space = s3xt4_space::<S>(tol)?;
    let w1 = KForm::<S>::basis(Frame::euclidean(7), &[0])?;
    let mut rows = Vec::new();
    let mut agree_all = true;
    for bits in 0..8u8 {
        let lambda = [0, 1, 2].map(|i| if bits >> i & 1 == 1 { -1i8 } else { 1 });
        let units = lambda.iter().filter(|&&l| l == 1).count();
        for self_dual in [true, false] {
            let metric = s3xt4_metric::<S>(lambda)?;
            let phi = wedge(&w1, &s3xt4_sigma(self_dual))?;
            let cand = SpecialFormCandidate::new(space.clone(), metric, 1, phi, S::one(), tol)?;
            let (closure, maxwell) = special_form_residual(&cand, tol)?;
            let holds = closure.is_negligible(tol) && maxwell.is_negligible(tol);
            let rule = if self_dual { units % 2 == 1 } else { units % 2 == 0 };
            agree_all &= holds == rule;
            rows.push(json!({
                "lambda": lambda,
                "sigma": if self_dual { "self-dual" } else { "anti-self-dual" },
                "units": units,
                "parity_rule": rule,
                "closure_residual": scalar_to_json(&closure),
                "maxwell_residual": scalar_to_json(&maxwell),
                "special": holds,
            }));
        }
    }
    report.section("parity rule at f = 1, phi = w1 ^ sigma", Value::Array(rows));

    let metric = s3xt4_metric::<S>([1, 1, 1])?;
    let phi = wedge(&w1, &s3xt4_sigma(true))?;
    let cand = SpecialFormCandidate::new(space, metric, 1, phi, S::one(), tol)?;
    let r = verify_background(&cand, None, tol)?;
    report.section("lambda = (1, 1, 1), self-dual sigma", background_json(&r, tol));
    report.note("Maxwell-only demo: the exit code reflects dphi = f*phi and d*phi = 0; the Einstein data is informational");
    report.raise(if r.maxwell_ok(tol) { 0 } else { 1 });

    let mut checks = Checks::new();
    checks.add("residual vanishes iff parity rule holds (16 cases)", json!(true), json!(agree_all), agree_all);
    checks.add("all-ones self-dual case is special", json!(true), json!(r.maxwell_ok(tol)), r.maxwell_ok(tol));
    checks.finish(report);
    Ok(())
}

/// SO₇/G₂ on one complement; returns the background exit code.
fn so7_path<S: Scalar>(complement: G2Complement, tol: &Tolerance, ricci_tol: f64, checks: &mut Checks) -> Result<(Value, i32)> {
    let tag = match complement {
        G2Complement::Killing => "killing",
        G2Complement::Contraction => "contraction",
    };
    let (space, metric) = so7_over_g2::<S>(complement, tol)?;
    let invariant = invariant_forms(&space, 3, tol)?;
    let spectrum = solve_maxwell(&space, &metric, 1, tol)?;
    checks.add(&format!("[{tag}] dim h"), json!(14), json!(space.h_dim()), space.h_dim() == 14);
    checks.add(&format!("[{tag}] dim m"), json!(7), json!(space.m_dim()), space.m_dim() == 7);
    checks.add(&format!("[{tag}] invariant 3-forms"), json!(1), json!(invariant.len()), invariant.len() == 1);
    let nonzero = spectrum.branches.iter().filter(|b| !b.f.is_negligible(tol)).count();
    checks.add(&format!("[{tag}] one real f != 0"), json!(1), json!(nonzero), spectrum.branches.len() == 1 && nonzero == 1);
    let branch = spectrum
        .branches
        .iter()
        .find(|b| !b.f.is_negligible(tol))
        .ok_or_else(|| Error::Precondition("no branch with f ≠ 0".into()))?;
    let cand = SpecialFormCandidate::new(space.clone(), metric.clone(), 1, branch.basis[0].clone(), branch.f.clone(), tol)?;
    let normalized = normalize_weak_g2(&cand, tol)?;
    let lambda = S::from_ratio(-15, 6);
    let r = verify_background(&normalized, Some(&lambda), tol)?;
    let ric = candidate_ricci(&normalized, tol)?;
    let ric_dev = ric.sub(&Matrix::identity(7).scale(&S::from_ratio(3, 2))).max_abs();
    let rtol = if S::EXACT { *tol } else { Tolerance::absolute(ricci_tol) };
    checks.add(&format!("[{tag}] normalized f"), json!(2), scalar_to_json(normalized.f()), normalized.f().approx_eq(&S::from_i64(2), tol));
    let n2 = norm_sq(normalized.phi());
    checks.add(&format!("[{tag}] normalized |phi|^2"), json!(7), scalar_to_json(&n2), n2.approx_eq(&S::from_i64(7), tol));
    checks.add(&format!("[{tag}] max |Ric - 3/2 g|"), json!(0), scalar_to_json(&ric_dev), ric_dev.is_negligible(&rtol));
    checks.add(
        &format!("[{tag}] Lorentz Einstein constant"),
        json!("-15/6"),
        scalar_to_json(&r.lorentz_constant),
        r.lorentz_constant.approx_eq(&lambda, tol),
    );
    let ty = r.solution_type.as_ref().map(|t| t.tag.name());
    checks.add(&format!("[{tag}] solution type"), json!("TypeIIIalpha"), json!(ty), ty == Some("TypeIIIalpha"));
    let body = json!({
        "complement": tag,
        "dim_h": space.h_dim(),
        "dim_m": space.m_dim(),
        "invariant_3forms": invariant.len(),
        "maxwell": spectrum_json(&spectrum),
        "normalized": {
            "f": scalar_to_json(normalized.f()),
            "orientation": normalized.orientation(),
            "metric_gram": matrix_to_json(normalized.metric().gram()),
            "phi": form_to_json(normalized.phi()),
            "max_ricci_deviation_from_3/2": scalar_to_json(&ric_dev),
        },
        "background": background_json(&r, tol),
    });
    Ok((body, r.exit_code(tol)))
}

fn spin7_g2(mode: Mode, tol: &Tolerance, report: &mut Report) -> Result<()> {
    let mut checks = Checks::new();
    let (body, code) = match mode {
        Mode::Exact => so7_path::<Q>(G2Complement::Contraction, tol, 1e-8, &mut checks)?,
        Mode::Float => so7_path::<f64>(G2Complement::Contraction, tol, 1e-8, &mut checks)?,
    };
    report.raise(code);
    report.section("contraction complement", body);
    // The Killing-orthogonal complement needs square roots: always float.
    let (body, code) = so7_path::<f64>(G2Complement::Killing, tol, 1e-8, &mut checks)?;
    report.raise(code);
    report.section("killing complement (float)", body);
    let weak: Vec<Value> = weak_g2_f_values::<Q>().iter().map(scalar_to_json).collect();
    report.section("weak G2 values of f", Value::Array(weak.clone()));
    checks.add("weak G2 f values", json!(["2", "-2"]), Value::Array(weak), weak_g2_f_values::<Q>() == [Q::from_i64(2), Q::from_i64(-2)]);
    checks.finish(report);
    Ok(())
}

fn torus7_demo<S: Scalar>(tol: &Tolerance, report: &mut Report) -> Result<()> {
    let space = torus7::<S>(tol)?;
    let phi = so7_over_g2_form::<S>();
    let cand = SpecialFormCandidate::new(space, InvariantMetric::identity(7), 1, phi, S::zero(), tol)?;
    let r = verify_background(&cand, None, tol)?;
    report.raise(r.exit_code(tol));
    let flagged = r.flags.iter().any(|f| f == FLAG_PARALLEL_G2);
    report.section("flat T7, canonical phi, f = 0", background_json(&r, tol));
    let mut checks = Checks::new();
    checks.add("parallel G2 non-existence flag", json!(true), json!(flagged), flagged);
    checks.finish(report);
    Ok(())
}

fn hyperbolic_sphere<S: Scalar>(tol: &Tolerance, report: &mut Report) -> Result<()> {
    let (space, metric) = hyperbolic_times_sphere::<S>(tol)?;
    let lambda = S::from_ratio(-1, 6);
    let cand = SpecialFormCandidate::new(space, metric, 1, hyperbolic_volume(), S::zero(), tol)?;
    let r = verify_background(&cand, Some(&lambda), tol)?;
    report.raise(r.exit_code(tol));
    let diag: Vec<Value> = (0..7).map(|i| scalar_to_json(&r.ricci[(i, i)])).collect();
    report.section("H3 x S4, phi = vol(H3), f = 0", background_json(&r, tol));
    let mut checks = Checks::new();
    checks.add("einstein7 residual", json!(0), scalar_to_json(&r.einstein7_residual), r.einstein7_residual.is_negligible(tol));
    checks.add("Lorentz Einstein constant", json!("-1/6"), scalar_to_json(&r.lorentz_constant), r.lorentz_constant.approx_eq(&lambda, tol));
    let want: Vec<S> = (0..7).map(|i| if i < 3 { S::from_ratio(-1, 6) } else { S::from_ratio(1, 3) }).collect();
    let diag_ok = (0..7).all(|i| r.ricci[(i, i)].approx_eq(&want[i], tol));
    checks.add("Ricci diagonal", json!(want.iter().map(scalar_to_json).collect::<Vec<_>>()), Value::Array(diag), diag_ok);
    checks.finish(report);
    Ok(())
}

fn lemma_sweep<S: Scalar>(tol: &Tolerance, report: &mut Report) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let conventions = sweep::hodge_conventions::<S, _>(&mut rng, 1000, 11);
    let contractions = sweep::contraction_identities::<S, _>(&mut rng, 3, 7)?;
    let product = sweep::product_lemma::<S>()?;
    let tally = |t: &sweep::Tally| json!({"checked": t.checked, "failures": t.failures});
    report.section(
        "exterior algebra",
        json!({
            "hodge_conventions_p+q<=11": tally(&conventions),
            "contraction_identities_n<=7": tally(&contractions),
            "product_split_star_and_norm": tally(&product),
        }),
    );

    let so7 = so::<S>(7)?;
    let c_pair = centralizer(&so7, &so3_diagonal_pair(), tol).len();
    let c_quat = centralizer(&so7, &su2_quaternionic(), tol).len();
    let (g_irr, h_irr) = so3_irreducible::<S>(tol)?;
    let c_irr = centralizer(&g_irr, &h_irr, tol).len();
    report.section(
        "centralizers in so7",
        json!({
            "so3 acting as V3 + V3 + R": c_pair,
            "su2 acting as V4 + 3R": c_quat,
            "so3 acting irreducibly on R7": c_irr,
        }),
    );
    report.note(
        "the centralizer of su2 on V4 + 3R is right quaternion multiplication (3) plus so3 on the trivial block (3); \
         counting the trivial block as gl3 would give 9",
    );

    let iso = |space: fluxform::homogeneous::ReductiveSpace<S>| -> Result<(Vec<usize>, Value)> {
        let d = isotypic_decomposition(&space, tol)?;
        let blocks: Vec<Value> = d
            .blocks
            .iter()
            .map(|b| json!({"casimir": scalar_to_json(&b.casimir), "irrep_dim": b.irrep_dim, "multiplicity": b.multiplicity, "kind": format!("{:?}", b.kind)}))
            .collect();
        Ok((d.irreducible_dims(), json!({"dims": d.irreducible_dims(), "blocks": blocks, "notes": d.notes})))
    };
    let (sp, sp_json) = iso(sp2_over_sp1::<S>(tol)?)?;
    let (su, su_json) = iso(su3r2_over_so3::<S>(tol)?)?;
    report.section("isotypic decompositions", json!({"Sp2/Sp1": sp_json, "(SU3 x R2)/SO3": su_json}));

    let mut checks = Checks::new();
    checks.add("Hodge conventions", json!(0), json!(conventions.failures.len()), conventions.passed());
    checks.add("contraction identities", json!(0), json!(contractions.failures.len()), contractions.passed());
    checks.add("product lemma", json!(0), json!(product.failures.len()), product.passed());
    checks.add("C(so3 on V3+V3+R)", json!(1), json!(c_pair), c_pair == 1);
    checks.add("C(su2 on V4+3R)", json!(6), json!(c_quat), c_quat == 6);
    checks.add("C(so3 irreducible)", json!(0), json!(c_irr), c_irr == 0);
    checks.add("Sp2/Sp1 blocks", json!([4, 1, 1, 1]), json!(sp), sp == [4, 1, 1, 1]);
    checks.add("(SU3 x R2)/SO3 blocks", json!([5, 1, 1]), json!(su), su == [5, 1, 1]);
    checks.finish(report);
    Ok(())
}
