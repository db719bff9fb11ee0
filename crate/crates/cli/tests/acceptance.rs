//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Exact criteria compare exact rationals; float criteria use the pinned
//! tolerances below. Reference values are recomputed here with small
//! independent routines (sparse integer exterior algebra, dense rational
//! elimination) rather than taken from the library.

use std::collections::BTreeMap;
use std::panic;
use std::time::{Duration, Instant};

use fluxform::exterior::{form_inner, hodge, interior, norm_sq, wedge, Frame, FrameVector, KForm};
use fluxform::g2::{canonical_g2_form, classify, find_split_form, induced_metric, OrbitTag};
use fluxform::homogeneous::algebras::{so, so3_harmonic_cubics};
use fluxform::homogeneous::{centralizer, invariant_forms, isotypic_decomposition, InvariantMetric};
use fluxform::models::*;
use fluxform::product::{FluxForm, ProductFrame};
use fluxform::sugra::*;
use fluxform::{Matrix, Rational, Scalar, Tolerance};
use fluxform_cli::scenario::{Geometry, Scenario};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = Rational;

/// Float tolerance for the Ricci comparison on SO7/G2.
const RICCI_TOL: f64 = 1e-8;
/// Default float tolerance.
const FLOAT_TOL: f64 = 1e-9;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn exact() -> Tolerance {
    Tolerance::default()
}

fn q(n: i64, d: i64) -> Q {
    Q::from_ratio(n, d)
}

fn sign(e: usize) -> Q {
    if e.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Q {
    let n = [-5, -4, -3, -2, -1, 1, 2, 3, 4, 5][rng.gen_range(0..10)];
    q(n, rng.gen_range(1..=4))
}

fn random_form(rng: &mut ChaCha8Rng, frame: Frame, k: usize, max_terms: usize) -> KForm<Q> {
    let masks = frame.basis_masks(k);
    let mut f = KForm::zero(frame, k);
    for _ in 0..rng.gen_range(1..=max_terms) {
        f.add_term(masks[rng.gen_range(0..masks.len())], nonzero_rational(rng));
    }
    f
}

/// Rank of a dense rational matrix by Gaussian elimination.
fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone() / pivot.clone();
                for j in c..cols {
                    let v = rows[r][j].clone() * factor.clone();
                    rows[i][j] = rows[i][j].clone() - v;
                }
            }
        }
        r += 1;
    }
    r
}

// ---------------------------------------------------------------------------
// 1. Hodge conventions.

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut count = 0;
    for _ in 0..1200 {
        let n = rng.gen_range(1..=11);
        let qn = rng.gen_range(0..=n);
        let fr = Frame::new(n - qn, qn);
        let k = rng.gen_range(0..=n);
        let a = random_form(&mut rng, fr, k, 6);
        ensure!(hodge(&hodge(&a)) == a.scale(&sign(k * (n - k) + qn)), "★★ fails on {a} in ({}, {qn})", n - qn);
        count += 1;
    }
    for n in 1..=11 {
        for qn in 0..=n {
            let fr = Frame::new(n - qn, qn);
            let vol = fr.vol::<Q>();
            ensure!(hodge(&fr.one::<Q>()) == vol, "★1 ≠ vol in ({}, {qn})", n - qn);
            ensure!(hodge(&vol) == fr.one::<Q>().scale(&sign(qn)), "★vol ≠ (−1)^q in ({}, {qn})", n - qn);
            ensure!(norm_sq(&vol) == sign(qn), "⟨vol, vol⟩ ≠ (−1)^q in ({}, {qn})", n - qn);
        }
    }
    Ok(format!("{count} random forms, all 77 signatures"))
}

// ---------------------------------------------------------------------------
// 2. Contraction identities and the product lemma.

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut count = 0;
    for n in 1..=7usize {
        for qn in 0..=n {
            let fr = Frame::new(n - qn, qn);
            for k in 1..=n {
                for _ in 0..4 {
                    let a = random_form(&mut rng, fr, k, 5);
                    let x = FrameVector::new(fr, (0..n).map(|_| Q::from_i64(rng.gen_range(-3..=3))).collect()).unwrap();
                    let y = FrameVector::new(fr, (0..n).map(|_| Q::from_i64(rng.gen_range(-3..=3))).collect()).unwrap();
                    let xy = x.inner(&y).unwrap();
                    let xa = interior(&x, &a).unwrap();
                    let ya = interior(&y, &a).unwrap();
                    let contracted = form_inner(&xa, &ya).unwrap();
                    let aa = norm_sq(&a);
                    if k == n {
                        ensure!(contracted == aa * xy, "top-degree identity fails on {a}");
                    } else {
                        let s = hodge(&a);
                        let lhs = sign(qn) * form_inner(&interior(&x, &s).unwrap(), &interior(&y, &s).unwrap()).unwrap();
                        ensure!(lhs == aa * xy - contracted, "contraction identity fails on {a} in ({}, {qn})", n - qn);
                    }
                    count += 1;
                }
            }
        }
    }
    // (3,1) × (7,0): split star with sign (−1)^{l(4−k)} and norm factorization,
    // checked against embeddings built here.
    let pf = ProductFrame::standard();
    let eleven = pf.combined();
    let lift = |a: &KForm<Q>, offset: usize| {
        let mut out = KForm::zero(eleven, a.degree());
        for (idx, c) in a.sorted_terms() {
            let shifted: Vec<usize> = idx.iter().map(|i| i + offset).collect();
            out.add_indexed(&shifted, c).unwrap();
        }
        out
    };
    let mut pairs = 0;
    for k in 0..=4 {
        for ml in pf.left().basis_masks(k) {
            let left = KForm::<Q>::basis_mask(pf.left(), ml);
            for l in 0..=7 {
                for mr in pf.right().basis_masks(l) {
                    let right = KForm::<Q>::basis_mask(pf.right(), mr);
                    let prod = wedge(&lift(&left, 0), &lift(&right, 4)).unwrap();
                    let split = wedge(&lift(&hodge(&left), 0), &lift(&hodge(&right), 4)).unwrap();
                    ensure!(hodge(&prod) == split.scale(&sign(l * (4 - k))), "split star fails on {left} ∧ {right}");
                    ensure!(norm_sq(&prod) == norm_sq(&left) * norm_sq(&right), "norm factorization fails on {left} ∧ {right}");
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{count} random contractions (n ≤ 7, every degree and signature), {pairs} product basis pairs"))
}

// ---------------------------------------------------------------------------
// 3. Flux closed forms on the eleven-dimensional frame.

fn eleven_lift(a: &KForm<Q>, offset: usize) -> KForm<Q> {
    let mut out = KForm::zero(ProductFrame::standard().combined(), a.degree());
    for (idx, c) in a.sorted_terms() {
        out.add_indexed(&idx.iter().map(|i| i + offset).collect::<Vec<_>>(), c).unwrap();
    }
    out
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pf = ProductFrame::standard();
    let vol4 = eleven_lift(&pf.left().vol(), 0);
    let vol7 = eleven_lift(&pf.right().vol(), 4);
    for _ in 0..120 {
        let f = nonzero_rational(&mut rng);
        let f4 = random_form(&mut rng, pf.right(), 4, 8);
        let flux = FluxForm::new(pf, f.clone(), f4.clone()).unwrap();
        let full = vol4.scale(&f).add(&eleven_lift(&f4, 4)).unwrap();
        ensure!(flux.assembled() == &full, "assembled flux differs");
        let star_closed = vol7.scale(&-f.clone()).add(&wedge(&vol4, &eleven_lift(&hodge(&f4), 4)).unwrap()).unwrap();
        ensure!(hodge(&full) == star_closed, "★₁₁F closed form fails for f = {f}, F⁴ = {f4}");
        let (d, c) = flux.star_flux().unwrap();
        ensure!(d == star_closed && c == star_closed, "library ★F pair disagrees");
        let sq_closed = wedge(&vol4, &eleven_lift(&f4, 4)).unwrap().scale(&(Q::from_i64(2) * f.clone()));
        ensure!(wedge(&full, &full).unwrap() == sq_closed, "F∧F closed form fails");
        let (d, c) = flux.flux_square().unwrap();
        ensure!(d == sq_closed && c == sq_closed, "library F∧F pair disagrees");
        let norm_closed = -(f.clone() * f.clone()) + norm_sq(&f4);
        ensure!(norm_sq(&full) == norm_closed, "‖F‖² ≠ −f² + ‖F⁴‖²");
        let (d, c) = flux.flux_norm();
        ensure!(d == norm_closed && c == norm_closed, "library ‖F‖² pair disagrees");
    }
    Ok("120 random flux forms".into())
}

// ---------------------------------------------------------------------------
// 4. Stress tensor against the reduced blocks.

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let t = exact();
    let pools: Vec<Vec<KForm<Q>>> = vec![
        invariant_forms(&cp2xs3_space::<Q>(&t).unwrap(), 3, &t).unwrap(),
        invariant_forms(&s3xt4_space::<Q>(&t).unwrap(), 3, &t).unwrap(),
        invariant_forms(&so7_over_g2::<Q>(G2Complement::Contraction, &t).unwrap().0, 3, &t).unwrap(),
    ];
    let pf = ProductFrame::standard();
    let eleven = pf.combined();
    let mut count = 0;
    for round in 0..120 {
        let pool = &pools[round % pools.len()];
        let mut phi = KForm::zero(Frame::euclidean(7), 3);
        for b in pool {
            if rng.gen_bool(0.6) {
                phi = phi.add(&b.scale(&nonzero_rational(&mut rng))).unwrap();
            }
        }
        let f = Q::from_ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        let flux = FluxForm::new(pf, f.clone(), hodge(&phi)).unwrap();
        let phi2 = norm_sq(&phi);
        let lambda = -(Q::from_i64(2) * f.clone() * f.clone() + phi2.clone()) / Q::from_i64(6);
        let diag = (f.clone() * f.clone() + Q::from_i64(2) * phi2) / Q::from_i64(6);
        let contractions: Vec<KForm<Q>> =
            (0..7).map(|i| interior(&FrameVector::basis(Frame::euclidean(7), i), &phi).unwrap()).collect();
        for i in 0..11 {
            for j in i..11 {
                let x = FrameVector::basis(eleven, i);
                let y = FrameVector::basis(eleven, j);
                let direct = flux.stress_rhs(&x, &y).unwrap();
                let expected = match (i < 4, j < 4) {
                    (true, true) => {
                        if i == j {
                            lambda.clone() * Q::from_i64(eleven.eta(i))
                        } else {
                            Q::zero()
                        }
                    }
                    (false, false) => {
                        let qphi = -q(1, 2) * form_inner(&contractions[i - 4], &contractions[j - 4]).unwrap();
                        if i == j {
                            diag.clone() + qphi
                        } else {
                            qphi
                        }
                    }
                    _ => Q::zero(),
                };
                ensure!(direct == expected, "stress ({i}, {j}) = {direct}, blocks give {expected} for φ = {phi}");
            }
        }
        count += 1;
    }
    Ok(format!("{count} random invariant φ, all 66 frame pairs each"))
}

// ---------------------------------------------------------------------------
// 5. Canonical G₂ form.

/// Dense antisymmetric coefficient tensor of a 3-form on R⁷.
fn dense3(a: &KForm<Q>) -> Vec<Q> {
    let mut t = vec![Q::zero(); 343];
    for (idx, c) in a.sorted_terms() {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        for (p, s) in [((i, j, k), 1), ((j, k, i), 1), ((k, i, j), 1), ((j, i, k), -1), ((i, k, j), -1), ((k, j, i), -1)] {
            t[(p.0 * 7 + p.1) * 7 + p.2] = c.clone() * Q::from_i64(s);
        }
    }
    t
}

/// Dimension of `{A ∈ gl₇ : A·ω = 0}` with `A` acting as a derivation that
/// replaces `e^j` by `e^i`.
fn stabilizer_dim(a: &KForm<Q>) -> usize {
    let mut columns: Vec<BTreeMap<Vec<usize>, Q>> = Vec::new();
    for i in 0..7 {
        for j in 0..7 {
            let mut image: BTreeMap<Vec<usize>, Q> = BTreeMap::new();
            for (idx, c) in a.sorted_terms() {
                for pos in 0..3 {
                    if idx[pos] != j {
                        continue;
                    }
                    let mut new = idx.clone();
                    new[pos] = i;
                    if pos_duplicate(&new) {
                        continue;
                    }
                    let (sorted, s) = sort_with_sign(new);
                    *image.entry(sorted).or_insert_with(Q::zero) += c.clone() * Q::from_i64(s);
                }
            }
            columns.push(image);
        }
    }
    let keys: Vec<Vec<usize>> = {
        let mut all: Vec<Vec<usize>> = columns.iter().flat_map(|c| c.keys().cloned()).collect();
        all.sort();
        all.dedup();
        all
    };
    let rows: Vec<Vec<Q>> = keys.iter().map(|k| columns.iter().map(|c| c.get(k).cloned().unwrap_or_else(Q::zero)).collect()).collect();
    49 - rank(rows)
}

fn pos_duplicate(v: &[usize]) -> bool {
    (0..v.len()).any(|i| (i + 1..v.len()).any(|j| v[i] == v[j]))
}

fn sort_with_sign(mut v: Vec<usize>) -> (Vec<usize>, i64) {
    let mut s = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                s = -s;
            }
        }
    }
    (v, s)
}

fn criterion_5() -> Outcome {
    let t = exact();
    let fr = Frame::euclidean(7);
    let omega = canonical_g2_form::<Q>(fr).unwrap();
    ensure!(omega.len() == 7, "canonical form has {} terms", omega.len());
    ensure!(norm_sq(&omega) == Q::from_i64(7), "‖ω‖² = {}", norm_sq(&omega));
    let g = induced_metric(&omega, &t).unwrap().g.ok_or("induced metric has no exact value")?;
    ensure!(g == Matrix::identity(7), "induced metric is not the identity");
    let stab = stabilizer_dim(&omega);
    ensure!(stab == 14, "stabilizer dimension {stab}");
    let w = dense3(&omega);
    for i in 0..7 {
        for j in 0..7 {
            // ⟨eᵢ⌟ω, eⱼ⌟ω⟩ = ½ Σ_{kl} ω_ikl ω_jkl.
            let mut s = Q::zero();
            for k in 0..7 {
                for l in 0..7 {
                    s += w[(i * 7 + k) * 7 + l].clone() * w[(j * 7 + k) * 7 + l].clone();
                }
            }
            s *= q(1, 2);
            let lib = form_inner(
                &interior(&FrameVector::basis(fr, i), &omega).unwrap(),
                &interior(&FrameVector::basis(fr, j), &omega).unwrap(),
            )
            .unwrap();
            let want = if i == j { Q::from_i64(3) } else { Q::zero() };
            ensure!(s == want && lib == want, "⟨e{}⌟ω, e{}⌟ω⟩ = {s}", i + 1, j + 1);
        }
    }
    let class = classify(&omega, &t).unwrap();
    ensure!(class.tag == OrbitTag::GenericG2, "classified as {}", class.tag.name());
    let (pattern, split, split_class) = find_split_form::<Q>(fr, &t).unwrap().ok_or("no split form found")?;
    ensure!(split_class.tag == OrbitTag::GenericG2Star, "split candidate is {}", split_class.tag.name());
    ensure!(split_class.signature == (4, 3), "split signature {:?}", split_class.signature);
    let split_stab = stabilizer_dim(&split);
    ensure!(split_stab == 14, "split stabilizer dimension {split_stab}");
    Ok(format!("stabilizer 14, split variant at sign pattern {pattern:#09b} with signature (4, 3)"))
}

// ---------------------------------------------------------------------------
// 6. CP² × S³.

const VERBATIM_D: [(&str, &str); 11] = [
    ("a1", "-a2^g3 - 3a3^g1 + a3^g2 - a4^g4"),
    ("a2", "a1^g3 - a3^g4 - 3a1^g1 - a1^g2"),
    ("a3", "3a1^g1 - a1^g2 + a2^g4 - a4^g2"),
    ("a4", "a1^g4 + 3a2^g1 + a2^g2 - a3^g3"),
    ("b1", "-b2^b3"),
    ("b2", "-b3^b1"),
    ("b3", "-b1^b2"),
    ("g1", "-a1^a3 - a2^a4"),
    ("g2", "a1^a3 - a2^a4 - 2g3^g4"),
    ("g3", "-a1^a2 - a3^a4 - 2g4^g2"),
    ("g4", "-a1^a4 - a2^a3 - 2g2^g3"),
];

const CONSISTENT_D: [(&str, &str); 4] = [
    ("a1", "-a2^g3 - 3a3^g1 + a3^g2 - a4^g4"),
    ("a2", "a1^g3 - a3^g4 - 3a4^g1 - a4^g2"),
    ("a3", "3a1^g1 - a1^g2 + a2^g4 - a4^g3"),
    ("a4", "a1^g4 + 3a2^g1 + a2^g2 + a3^g3"),
];

type Sparse = BTreeMap<Vec<usize>, i64>;

/// `d` on a sparse integer exterior algebra, extended as an antiderivation.
fn sparse_d(form: &Sparse, d1: &[Sparse]) -> Sparse {
    let mut out = Sparse::new();
    for (idx, c) in form {
        for (pos, &g) in idx.iter().enumerate() {
            let s = if pos % 2 == 0 { 1 } else { -1 };
            for (two, c2) in &d1[g] {
                let mut new = idx[..pos].to_vec();
                new.extend(two);
                new.extend(&idx[pos + 1..]);
                if pos_duplicate(&new) {
                    continue;
                }
                let (sorted, sg) = sort_with_sign(new);
                *out.entry(sorted).or_insert(0) += s * sg * c * c2;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Parses the two-form expressions into sparse integer tables.
fn sparse_table(table: &[(&str, &str)]) -> Vec<Sparse> {
    let labels: Vec<String> = table.iter().map(|(l, _)| l.to_string()).collect();
    table
        .iter()
        .map(|(_, e)| {
            let f: KForm<Q> = fluxform_cli::expr::parse_form(e, &labels, 2).unwrap();
            f.sorted_terms()
                .into_iter()
                .map(|(idx, c)| (idx, c.to_rational().unwrap().to_integer().try_into().unwrap()))
                .collect()
        })
        .collect()
}

fn d_squared_failures(table: &[(&str, &str)]) -> Vec<String> {
    let d1 = sparse_table(table);
    (0..d1.len()).filter(|&i| !sparse_d(&d1[i], &d1).is_empty()).map(|i| table[i].0.to_string()).collect()
}

fn scenario_json(table: &[(&str, &str)]) -> String {
    let d: BTreeMap<&str, &str> = table.iter().copied().collect();
    serde_json::json!({
        "schema": 1,
        "name": "CP2 x S3",
        "coframe_dga": {
            "generators": table.iter().map(|(l, _)| *l).collect::<Vec<_>>(),
            "d": d,
            "h_generators": ["g1", "g2", "g3", "g4"],
        },
        "metric": {"diagonal": [1, 1, 1, 1, 1, 1, 1]},
        "tasks": ["solve-maxwell"],
    })
    .to_string()
}

fn criterion_6() -> Outcome {
    let t = exact();
    let mut failed = Vec::new();
    // Verbatim ingestion through the scenario loader.
    let verbatim: Scenario = serde_json::from_str(&scenario_json(&VERBATIM_D)).unwrap();
    let oracle_failures = d_squared_failures(&VERBATIM_D);
    match Geometry::<Q>::build(&verbatim, &t) {
        Ok(_) => ensure!(oracle_failures.is_empty(), "library accepted a table failing d² on {}", oracle_failures.join(", ")),
        Err(_) => failed.push(format!(
            "the verbatim structure equations are rejected: d² ≠ 0 on {} (library and independent check agree)",
            oracle_failures.join(", ")
        )),
    }
    // Everything else on the consistent table.
    let mut consistent: Vec<(&str, &str)> = VERBATIM_D.to_vec();
    for (l, e) in CONSISTENT_D {
        consistent.iter_mut().find(|(x, _)| *x == l).unwrap().1 = e;
    }
    ensure!(d_squared_failures(&consistent).is_empty(), "consistent table fails the independent d² check");
    let sc: Scenario = serde_json::from_str(&scenario_json(&consistent)).unwrap();
    let geo = Geometry::<Q>::build(&sc, &t).map_err(|e| format!("consistent table rejected: {e}"))?;
    let space = geo.space;
    let inv = invariant_forms(&space, 3, &t).unwrap().len();
    if inv != 4 {
        failed.push(format!("invariant 3-forms: {inv}"));
    }
    let mut sol_count = 0;
    for (c, want) in [
        ([1, 1, 1], vec![(q(0, 1), 1), (q(1, 1), 3)]),
        ([4, 2, 2], vec![(q(0, 1), 1), (q(1, 2), 2), (q(1, 1), 1)]),
    ] {
        let metric = cp2xs3_metric(Q::one(), c.map(Q::from_i64));
        let spec = solve_maxwell(&space, &metric, 1, &t).unwrap();
        let got: Vec<(Q, usize)> = spec.branches.iter().map(|b| (b.f.clone(), b.basis.len())).collect();
        if got != want {
            failed.push(format!("branches for c = {c:?}: {got:?}"));
        }
        if c == [1, 1, 1] {
            let zero = spec.branch(&Q::zero(), &t).ok_or("no f = 0 branch")?;
            if zero.basis.len() != 1 || !is_multiple(&zero.basis[0], &cp2xs3_vol3()) {
                failed.push("f = 0 branch is not spanned by vol₃".into());
            }
        }
        for b in &spec.branches {
            for phi in &b.basis {
                let cand = SpecialFormCandidate::new(space.clone(), metric.clone(), 1, phi.clone(), b.f.clone(), &t).unwrap();
                let r = verify_background(&cand, None, &t).unwrap();
                if r.einstein7_residual.is_zero() || r.exit_code(&t) != 2 {
                    failed.push(format!("solution f = {} passes the Einstein equation", b.f));
                }
                sol_count += 1;
            }
        }
    }
    let demo = fluxform_cli::run(["fluxform", "demo", "cp2xs3"]);
    if demo.code != 2 {
        failed.push(format!("demo exit code {}", demo.code));
    }
    if failed.is_empty() {
        Ok(format!("{sol_count} Maxwell solutions, all with Einstein residual > 0"))
    } else {
        Err(format!(
            "{}; remaining sub-checks pass on the d²-consistent table ({sol_count} solutions, demo exit 2)",
            failed.join("; ")
        ))
    }
}

fn is_multiple(a: &KForm<Q>, b: &KForm<Q>) -> bool {
    let Some((idx, c)) = b.sorted_terms().into_iter().next() else { return a.is_zero() };
    let ratio = a.coeff(&idx) / c;
    !ratio.is_zero() && *a == b.scale(&ratio)
}

// ---------------------------------------------------------------------------
// 7. S³ × T⁴ parity rule.

fn criterion_7() -> Outcome {
    let t = exact();
    let space = s3xt4_space::<Q>(&t).unwrap();
    let w1 = KForm::<Q>::basis(Frame::euclidean(7), &[0]).unwrap();
    for bits in 0..8u8 {
        let lambda = [0, 1, 2].map(|i| if bits >> i & 1 == 1 { -1i8 } else { 1 });
        let units = lambda.iter().filter(|&&l| l == 1).count();
        for self_dual in [true, false] {
            // σ = ρ¹² ± ρ³⁴ on the flat factor.
            let mut sigma = KForm::zero(Frame::euclidean(7), 2);
            sigma.add_indexed(&[3, 4], Q::one()).unwrap();
            sigma.add_indexed(&[5, 6], if self_dual { Q::one() } else { -Q::one() }).unwrap();
            let phi = wedge(&w1, &sigma).unwrap();
            let metric = InvariantMetric::identity(7).with_signs(vec![lambda[0], lambda[1], lambda[2], 1, 1, 1, 1]).unwrap();
            let cand = SpecialFormCandidate::new(space.clone(), metric, 1, phi, Q::one(), &t).unwrap();
            let (closure, maxwell) = special_form_residual(&cand, &t).unwrap();
            let rule = if self_dual { units % 2 == 1 } else { units % 2 == 0 };
            ensure!(closure.is_zero(), "d★φ ≠ 0 for λ = {lambda:?}");
            ensure!(maxwell.is_zero() == rule, "λ = {lambda:?}, self-dual = {self_dual}: residual {maxwell}, rule {rule}");
            if lambda == [1, 1, 1] && self_dual {
                // dφ = ★φ from the structure equations dω¹ = ω²³.
                let phi = cand.phi().clone();
                let d_phi = KForm::basis(Frame::euclidean(7), &[1, 2]).and_then(|w23| wedge(&w23, &sigma)).unwrap();
                ensure!(d_phi == cand.star(&phi), "dφ ≠ ★φ in the all-ones case");
            }
        }
    }
    Ok("16 cases match the parity rule; dφ = ★φ in the all-ones self-dual case".into())
}

// ---------------------------------------------------------------------------
// 8. SO₇/G₂ end to end (float, Killing complement).

fn criterion_8() -> Outcome {
    let t = Tolerance::absolute(FLOAT_TOL);
    let (space, metric) = so7_over_g2::<f64>(G2Complement::Killing, &t).map_err(|e| e.to_string())?;
    ensure!(space.h_dim() == 14, "dim g₂ = {}", space.h_dim());
    ensure!(space.m_dim() == 7, "dim m = {}", space.m_dim());
    let inv = invariant_forms(&space, 3, &t).unwrap();
    ensure!(inv.len() == 1, "invariant 3-forms: {}", inv.len());
    let spec = solve_maxwell(&space, &metric, 1, &t).unwrap();
    ensure!(spec.branches.len() == 1 && spec.branches[0].f.abs() > 1e-6, "branches: {:?}", spec.branches.iter().map(|b| b.f).collect::<Vec<_>>());
    let b = &spec.branches[0];
    let cand = SpecialFormCandidate::new(space, metric, 1, b.basis[0].clone(), b.f, &t).unwrap();
    let n = normalize_weak_g2(&cand, &t).unwrap();
    ensure!((n.f() - 2.0).abs() < FLOAT_TOL, "normalized f = {}", n.f());
    ensure!((norm_sq(n.phi()) - 7.0).abs() < FLOAT_TOL, "‖φ‖² = {}", norm_sq(n.phi()));
    let ric = candidate_ricci(&n, &t).unwrap();
    let dev = ric.sub(&Matrix::identity(7).scale(&1.5)).max_abs();
    ensure!(dev < RICCI_TOL, "max |Ric − 3/2 g| = {dev:e}");
    // Λ from the normalized data, compared with −15/6 = −(2·4 + 7)/6 exactly.
    let lambda = Q::from_f64(lorentz_einstein_constant(n.phi(), n.f())).ok_or("Λ is not a small rational")?;
    ensure!(lambda == q(-15, 6), "Λ = {lambda}");
    let exact_lambda = lorentz_einstein_constant(&so7_over_g2_form::<Q>(), &Q::from_i64(2));
    ensure!(exact_lambda == q(-15, 6), "exact Λ = {exact_lambda}");
    let r = verify_background(&n, Some(&-2.5), &t).unwrap();
    ensure!(r.exit_code(&t) == 0, "background exit code {}", r.exit_code(&t));
    ensure!(r.flags.iter().any(|f| f == FLAG_WEAK_G2), "weak G2 flag missing");
    Ok(format!("f₀ = {:.6}, normalized Ric deviation {dev:.1e}", b.f))
}

// ---------------------------------------------------------------------------
// 9. Negative results.

fn criterion_9() -> Outcome {
    let t = exact();
    let cand = SpecialFormCandidate::new(
        torus7::<Q>(&t).unwrap(),
        InvariantMetric::identity(7),
        1,
        canonical_g2_form(Frame::euclidean(7)).unwrap(),
        Q::zero(),
        &t,
    )
    .unwrap();
    let r = verify_background(&cand, None, &t).unwrap();
    ensure!(r.solution_type.as_ref().map(|s| s.tag) == Some(SolutionTag::TypeII), "torus background is not TypeII");
    ensure!(r.flags.iter().any(|f| f == FLAG_PARALLEL_G2), "parallel G2 flag missing: {:?}", r.flags);
    // Weak G₂ with ‖φ‖² = 7: ⅜f² = (f² + 14)/6 − 3/2, so f² = 4.
    let f2 = (Q::from_i64(14) / Q::from_i64(6) - q(3, 2)) / (q(3, 8) - q(1, 6));
    ensure!(f2 == Q::from_i64(4), "oracle f² = {f2}");
    let mut got = weak_g2_f_values::<Q>().to_vec();
    got.sort();
    ensure!(got == vec![Q::from_i64(-2), Q::from_i64(2)], "weak_g2_f_values = {got:?}");
    Ok("parallel flag raised; weak values {+2, −2}".into())
}

// ---------------------------------------------------------------------------
// 10. Constant-curvature 3-factor times a round 4-sphere.

fn criterion_10() -> Outcome {
    let t = Tolerance::absolute(FLOAT_TOL);
    let (space, metric) = hyperbolic_times_sphere::<f64>(&t).unwrap();
    let cand = SpecialFormCandidate::new(space, metric, 1, hyperbolic_volume(), 0.0, &t).unwrap();
    let r = verify_background(&cand, Some(&(-1.0 / 6.0)), &t).unwrap();
    ensure!(r.einstein7_residual < FLOAT_TOL, "einstein7 residual {:e}", r.einstein7_residual);
    ensure!((r.lorentz_constant + 1.0 / 6.0).abs() < FLOAT_TOL, "Λ = {}", r.lorentz_constant);
    // Factor Einstein constants: −1/6 on the 3-factor, 1/3 on the 4-factor.
    for i in 0..7 {
        let want = if i < 3 { -1.0 / 6.0 } else { 1.0 / 3.0 };
        ensure!((r.ricci[(i, i)] - want).abs() < FLOAT_TOL, "Ric_{i}{i} = {}", r.ricci[(i, i)]);
    }
    ensure!(r.exit_code(&t) == 0, "exit code {}", r.exit_code(&t));
    Ok(format!("residual {:.1e}, Λ = −1/6", r.einstein7_residual))
}

// ---------------------------------------------------------------------------
// 11. Centralizers and isotypic blocks.

/// `dim {X : [X, hₐ] = 0 ∀a, XᵀQ + QX = 0}` by elimination over the entries of X.
fn centralizer_dim(h: &[Matrix<Q>], qform: &Matrix<Q>) -> usize {
    let n = qform.rows();
    let var = |i: usize, j: usize| i * n + j;
    let mut rows = Vec::new();
    for a in h {
        for i in 0..n {
            for j in 0..n {
                // (XA − AX)_ij
                let mut row = vec![Q::zero(); n * n];
                for k in 0..n {
                    row[var(i, k)] += a[(k, j)].clone();
                    row[var(k, j)] -= a[(i, k)].clone();
                }
                rows.push(row);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            // (XᵀQ + QX)_ij
            let mut row = vec![Q::zero(); n * n];
            for k in 0..n {
                row[var(k, i)] += qform[(k, j)].clone();
                row[var(k, j)] += qform[(i, k)].clone();
            }
            rows.push(row);
        }
    }
    n * n - rank(rows)
}

fn so3_generators() -> Vec<Matrix<Q>> {
    let mut out = Vec::new();
    for (i, j) in [(1, 2), (2, 0), (0, 1)] {
        out.push(Matrix::from_fn(3, 3, |r, c| {
            if (r, c) == (i, j) {
                -Q::one()
            } else if (r, c) == (j, i) {
                Q::one()
            } else {
                Q::zero()
            }
        }));
    }
    out
}

fn criterion_11() -> Outcome {
    let t = exact();
    let id7 = Matrix::<Q>::identity(7);
    // so₃ acting as V³ ⊕ V³ ⊕ R.
    let pair: Vec<Matrix<Q>> = so3_generators()
        .iter()
        .map(|a| Matrix::from_fn(7, 7, |r, c| if r < 6 && c < 6 && r / 3 == c / 3 { a[(r % 3, c % 3)].clone() } else { Q::zero() }))
        .collect();
    let c_pair = centralizer_dim(&pair, &id7);
    let lib_pair = centralizer(&so::<Q>(7).unwrap(), &so3_diagonal_pair(), &t).len();
    ensure!(c_pair == 1 && lib_pair == 1, "C(so₃ on V³⊕V³⊕R): oracle {c_pair}, library {lib_pair}");
    // so₃ irreducible on R⁷ inside so(Q) for its invariant form.
    let (gens, qform) = so3_harmonic_cubics::<Q>(&t);
    let c_irr = centralizer_dim(&gens, &qform);
    let (g, h) = so3_irreducible::<Q>(&t).unwrap();
    let lib_irr = centralizer(&g, &h, &t).len();
    ensure!(c_irr == 0 && lib_irr == 0, "C(so₃ irreducible): oracle {c_irr}, library {lib_irr}");
    // Isotypic blocks: the trivial multiplicity is the common kernel.
    for (name, space, want) in [
        ("Sp2/Sp1", sp2_over_sp1::<Q>(&t).unwrap(), vec![4, 1, 1, 1]),
        ("(SU3+R2)/SO3", su3r2_over_so3::<Q>(&t).unwrap(), vec![5, 1, 1]),
    ] {
        let dims = isotypic_decomposition(&space, &t).unwrap().irreducible_dims();
        ensure!(dims == want, "{name}: blocks {dims:?}");
        let n = space.m_dim();
        let stacked: Vec<Vec<Q>> = space.isotropy().iter().flat_map(|a| (0..n).map(|i| a.row(i).to_vec()).collect::<Vec<_>>()).collect();
        let trivial = n - rank(stacked);
        let want_trivial = want.iter().filter(|&&d| d == 1).count();
        ensure!(trivial == want_trivial, "{name}: common kernel {trivial}, expected {want_trivial}");
    }
    Ok("C = 1 and 0; blocks {4,1,1,1} and {5,1,1}".into())
}

// ---------------------------------------------------------------------------

struct Criterion {
    id: u32,
    about: &'static str,
    run: fn() -> Outcome,
    budget: Option<Duration>,
}

/// Criteria that fail for a reason outside the implementation.
const KNOWN_UNATTAINABLE: [(u32, &str); 1] = [(
    6,
    "the structure equations as printed violate d² = 0; the three differing terms are corrected in the built-in model",
)];

fn main() {
    let criteria = [
        Criterion { id: 1, about: "Hodge conventions, p+q <= 11, >= 1000 random forms", run: criterion_1, budget: Some(Duration::from_secs(10)) },
        Criterion { id: 2, about: "contraction identities n <= 7; product lemma on (3,1)x(7,0)", run: criterion_2, budget: Some(Duration::from_secs(30)) },
        Criterion { id: 3, about: "flux closed forms vs direct 11-frame computation", run: criterion_3, budget: None },
        Criterion { id: 4, about: "stress tensor vs reduced block formulas", run: criterion_4, budget: None },
        Criterion { id: 5, about: "canonical G2 form and its split variant", run: criterion_5, budget: None },
        Criterion { id: 6, about: "CP2 x S3 from the structure equations as printed", run: criterion_6, budget: None },
        Criterion { id: 7, about: "S3 x T4 parity rule", run: criterion_7, budget: None },
        Criterion { id: 8, about: "SO7/G2 end to end (float, Killing complement)", run: criterion_8, budget: Some(Duration::from_secs(60)) },
        Criterion { id: 9, about: "parallel G2 flag and weak G2 values", run: criterion_9, budget: None },
        Criterion { id: 10, about: "constant-curvature 3-factor x round S4", run: criterion_10, budget: None },
        Criterion { id: 11, about: "centralizers and isotypic blocks", run: criterion_11, budget: None },
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = Vec::new();
    for c in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let result = panic::catch_unwind(c.run).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let result = match (result, c.budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (r, _) => r,
        };
        let known = KNOWN_UNATTAINABLE.iter().find(|(id, _)| *id == c.id);
        match (&result, known) {
            (Ok(detail), _) => println!("PASS criterion {}: {} [{detail}; {elapsed:.2?}]", c.id, c.about),
            (Err(why), Some((_, reason))) => {
                println!("FAIL criterion {}: {} [{why}] (known unattainable: {reason})", c.id, c.about)
            }
            (Err(why), None) => {
                println!("FAIL criterion {}: {} [{why}]", c.id, c.about);
                unexpected.push(c.id);
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
