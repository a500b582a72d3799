use num_complex::Complex64;
use serde_json::{json, Value};
use sl2_harmonic::algebra::LieAlgebraSpec;
use sl2_harmonic::kac_moody::{
    cg_project, CentralCharges, Cocycle, KMElement, KMGenerator, KacMoody, ModeIndex, Truncation,
};
use sl2_harmonic::losert::{phi, LosertIndex};
use sl2_harmonic::matrix::{norm, psi, tabulate as tab_rows};
use sl2_harmonic::plancherel::{
    analyze, basis_conversion, line_parseval, plancherel_weight, reconstruct_from_transform, round_trip_error,
    synthesize, SigmaGrid,
};
use sl2_harmonic::reps::RepLabel;
use sl2_harmonic::suite::{self, random_points, Check};
use sl2_harmonic::{Error, HalfInt, Result};

use crate::report::{row, Report, Row};
use crate::{Params, Suite, TabulateWhat, TransformOp};

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

fn grid(p: &Params) -> Result<SigmaGrid> {
    SigmaGrid::new(p.sigma_max, p.sigma_max.ceil() as usize, p.quad_order as usize)
}

fn c(v: Complex64) -> [(&'static str, Value); 2] {
    [("re", json!(v.re)), ("im", json!(v.im))]
}

/// All (n, m) in the grade ranges with n − m an integer.
fn grade_pairs(p: &Params) -> Vec<(HalfInt, HalfInt)> {
    let ms = p.m_range.values();
    p.n_range
        .values()
        .into_iter()
        .flat_map(|n| ms.iter().filter(move |&&m| (n - m).is_integer()).map(move |&m| (n, m)))
        .collect()
}

fn g_max(p: &Params) -> HalfInt {
    p.n_range.max_abs().max(p.m_range.max_abs())
}

/// Product expansions of modes with k ≤ k_max are complete well inside this truncation.
fn km_for(p: &Params, k_max: u32) -> KacMoody {
    let truncation = Truncation { k_max: 12.max(4 * k_max), ..Truncation::default() };
    KacMoody::new(LieAlgebraSpec::sl2(), CentralCharges { k_l: p.kl, k_r: p.kr }, truncation)
}

fn finite_check(rows: &[Row]) -> Check {
    let bad = rows
        .iter()
        .filter(|r| ["re", "im"].iter().any(|k| !r.get(*k).and_then(Value::as_f64).is_some_and(f64::is_finite)))
        .count();
    Check::new("non-finite values", bad as f64, 0.0)
}

pub fn tabulate(p: &Params, what: TabulateWhat) -> Result<Report> {
    let pts = random_points(p.seed, p.points);
    let mut rows = Vec::new();
    match what {
        TabulateWhat::Psi => {
            let Some(label) = p.rep else {
                return invalid("tabulate psi needs --rep");
            };
            for (n, m) in grade_pairs(p) {
                if !(label.weight_support(n) && label.weight_support(m)) {
                    continue;
                }
                for r in tab_rows(&label.to_string(), &psi(&label, n, m)?, &pts)? {
                    rows.push(serde_json::to_value(r)?.as_object().cloned().expect("struct serialises to an object"));
                }
            }
        }
        TabulateWhat::Phi => {
            for (n, m) in grade_pairs(p) {
                for k in 0..=p.k_max.unwrap_or(3) {
                    let f = phi(n, m, k)?;
                    for pt in &pts {
                        let [re, im] = c(f.eval(pt)?);
                        rows.push(row([
                            ("n", json!(n)),
                            ("m", json!(m)),
                            ("k", json!(k)),
                            ("rho", json!(pt.rho)),
                            ("phi1", json!(pt.phi1)),
                            ("phi2", json!(pt.phi2)),
                            re,
                            im,
                        ]));
                    }
                }
            }
        }
    }
    if rows.is_empty() {
        return invalid("no functions in the requested grade ranges");
    }
    let checks = vec![finite_check(&rows)];
    Ok(Report::new(format!("tabulate {what:?}").to_lowercase(), checks).with_data(rows))
}

pub fn verify(p: &Params, which: Suite) -> Result<Report> {
    let checks = match which {
        Suite::Orthonormality => suite::discrete_orthonormality(p.lambda_max, 3, p.tol.unwrap_or(1e-8))?,
        Suite::Eigen => {
            let elements = match &p.rep {
                Some(label) => suite::elements_of(label),
                None => suite::eigen_elements(),
            };
            suite::eigen_equations(&elements, p.points, p.seed, p.tol.unwrap_or(1e-6))?
        }
        Suite::Ladder => {
            let labels = match p.rep {
                Some(label) => vec![label],
                None => {
                    let mut l = suite::discrete_label_range(p.lambda_max);
                    l.push(RepLabel::continuous(1.3, HalfInt::ZERO)?);
                    l.push(RepLabel::continuous(0.4, HalfInt::from_twice(1))?);
                    l
                }
            };
            suite::ladder_consistency(&labels, 3, p.points.min(5), p.seed, p.tol.unwrap_or(1e-7))?
        }
        Suite::Gram => {
            let tol = p.tol.unwrap_or(1e-8);
            suite::losert_gram(g_max(p), p.k_max.unwrap_or(6), tol, tol.min(1e-10))?
        }
        Suite::Jacobi | Suite::Cocycle => {
            let k_max = p.k_max.unwrap_or(3);
            let km = km_for(p, k_max);
            let samples = p.points.min(12);
            let all = suite::kac_moody_checks(&km, g_max(p), k_max, samples, p.seed, p.tol.unwrap_or(1e-5))?;
            let keep: &[&str] = if which == Suite::Jacobi { &["jacobi", "central"] } else { &["cocycle", "omega", "central"] };
            all.into_iter()
                .filter(|c| keep.iter().any(|k| c.name.starts_with(k)))
                .map(|c| match (which, p.tol) {
                    (Suite::Cocycle, Some(tol)) if c.name.starts_with("cocycle") => Check::new(c.name, c.value, tol),
                    _ => c,
                })
                .collect()
        }
        Suite::Parseval => suite::plancherel_round_trip(&grid(p)?, p.lambda_max, p.x_max, p.tol.unwrap_or(1e-3))?,
    };
    Ok(Report::new(format!("verify {which:?}").to_lowercase(), checks))
}

fn parse_phi(s: &str) -> Result<LosertIndex> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [n, m, k] = parts.as_slice() else {
        return invalid(format!("expected n,m,k, got {s:?}"));
    };
    let k: u32 = k.parse().map_err(|_| Error::InvalidInput(format!("bad k {k:?}")))?;
    LosertIndex::new(n.parse()?, m.parse()?, k)
}

pub fn transform(p: &Params, op: TransformOp, spec: &str) -> Result<Report> {
    let idx = parse_phi(spec)?;
    let grid = grid(p)?;
    let tol = p.tol.unwrap_or(1e-3);
    let f = phi(idx.n, idx.m, idx.k)?;
    let name = format!("phi{idx}");
    let pts = random_points(p.seed, p.points);
    let (checks, rows) = match op {
        TransformOp::Analyze => {
            let coeffs = analyze(&f, p.lambda_max, &grid, None)?;
            let f2 = norm(&f)?.powi(2);
            let mut rows = Vec::new();
            for d in &coeffs.discrete {
                let [re, im] = c(d.value());
                rows.push(row([
                    ("kind", json!("discrete")),
                    ("label", json!(d.label().to_string())),
                    ("sigma", Value::Null),
                    ("weight", Value::Null),
                    re,
                    im,
                ]));
            }
            for (s, w) in coeffs.continuous.iter().zip(&grid.weights) {
                let [re, im] = c(s.value());
                rows.push(row([
                    ("kind", json!("continuous")),
                    ("label", json!(RepLabel::Continuous { sigma: s.sigma, eps: s.eps }.to_string())),
                    ("sigma", json!(s.sigma)),
                    ("weight", json!(w * plancherel_weight(s.sigma, s.eps))),
                    re,
                    im,
                ]));
            }
            let checks = vec![
                Check::new(format!("parseval {name}"), (coeffs.parseval() - f2) / f2, tol),
                Check::new(format!("round trip {name}"), round_trip_error(&f, &coeffs, p.x_max)?, tol),
            ];
            (checks, rows)
        }
        TransformOp::Synthesize => {
            let coeffs = analyze(&f, p.lambda_max, &grid, None)?;
            let mut rows = Vec::new();
            let (mut err, mut scale) = (0.0f64, 0.0f64);
            for pt in &pts {
                let (s, exact) = (synthesize(&coeffs, pt)?, f.eval(pt)?);
                err = err.max((s - exact).norm());
                scale = scale.max(exact.norm());
                let [re, im] = c(s);
                rows.push(row([
                    ("rho", json!(pt.rho)),
                    ("phi1", json!(pt.phi1)),
                    ("phi2", json!(pt.phi2)),
                    re,
                    im,
                    ("exact_re", json!(exact.re)),
                    ("exact_im", json!(exact.im)),
                ]));
            }
            (vec![Check::new(format!("synthesis {name} max error / max |f|"), err / scale.max(f64::MIN_POSITIVE), tol)], rows)
        }
        TransformOp::Convert => {
            let samples = basis_conversion(idx, &grid)?;
            let mut rec = 0.0f64;
            for pt in &pts {
                rec = rec.max((reconstruct_from_transform(&samples, &grid, pt)? - f.eval(pt)?).norm());
            }
            let rows = samples
                .iter()
                .map(|s| {
                    let [re, im] = c(s.value());
                    row([("sigma", json!(s.sigma)), ("eps", json!(s.eps)), re, im])
                })
                .collect();
            let checks = vec![
                Check::new(format!("line parseval {name}"), line_parseval(&samples, &grid) - 1.0, tol),
                Check::new(format!("reconstruct {name} from sigma-transform"), rec, tol),
            ];
            (checks, rows)
        }
    };
    Ok(Report::new(format!("transform {op:?}").to_lowercase(), checks).with_data(rows))
}

fn parse_generator(alg: &LieAlgebraSpec, s: &str) -> Result<KMGenerator> {
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    let [a, n, m, k] = parts.as_slice() else {
        return invalid(format!("expected a:n:m:k, got {s:?}"));
    };
    let a = match a.parse::<usize>() {
        Ok(i) if i < alg.dim() => i,
        _ => alg.index_of(a).ok_or_else(|| Error::InvalidInput(format!("unknown algebra index {a:?}")))?,
    };
    let k: u32 = k.parse().map_err(|_| Error::InvalidInput(format!("bad k {k:?}")))?;
    KMGenerator::losert(a, n.parse()?, m.parse()?, k)
}

fn element_rows(e: &KMElement) -> Vec<Row> {
    let mut rows: Vec<Row> = e
        .generators
        .iter()
        .map(|(g, v)| {
            let [re, im] = c(*v);
            row([("term", json!(g.to_string())), re, im])
        })
        .collect();
    for (name, v) in [("c_L", e.c_l), ("c_R", e.c_r)] {
        let [re, im] = c(v);
        rows.push(row([("term", json!(name)), re, im]));
    }
    rows
}

pub fn bracket(p: &Params, left: Option<&str>, right: Option<&str>) -> Result<Report> {
    let alg = LieAlgebraSpec::sl2();
    let tol = p.tol.unwrap_or(1e-12);
    if let (Some(l), Some(r)) = (left, right) {
        let (x, y) = (parse_generator(&alg, l)?, parse_generator(&alg, r)?);
        let ModeIndex::Losert(ix) = x.mode else { unreachable!() };
        let ModeIndex::Losert(iy) = y.mode else { unreachable!() };
        let km = km_for(p, ix.k.max(iy.k));
        let xy = km.bracket_generators(&x, &y)?;
        let mut sum = km.bracket_generators(&y, &x)?;
        sum.axpy(Complex64::new(1.0, 0.0), &xy);
        let (ex, ey) = (KMElement::generator(x), KMElement::generator(y));
        let central = (xy.c_l - km.omega(Cocycle::L, &ex, &ey)?).norm().max((xy.c_r - km.omega(Cocycle::R, &ex, &ey)?).norm());
        let checks = vec![
            Check::new("antisymmetry [x,y] + [y,x]", sum.norm(), tol),
            Check::new("central part - (omega_L, omega_R)", central, 0.0),
        ];
        return Ok(Report::new("bracket", checks).with_data(element_rows(&xy.pruned(0.0))));
    }
    bracket_table(p, &alg)
}

/// Mode-product table and nonzero cocycle values over the grade ranges, k ≤ k_max.
fn bracket_table(p: &Params, alg: &LieAlgebraSpec) -> Result<Report> {
    let k_max = p.k_max.unwrap_or(1);
    let km = km_for(p, k_max);
    let modes: Vec<LosertIndex> = grade_pairs(p)
        .into_iter()
        .flat_map(|(n, m)| (0..=k_max).map(move |k| LosertIndex::new(n, m, k)))
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut anti = 0.0f64;
    for (i, x) in modes.iter().enumerate() {
        for y in &modes[i..] {
            let table = km.mode_product(&ModeIndex::Losert(*x), &ModeIndex::Losert(*y))?;
            for (target, v) in table.iter() {
                let ModeIndex::Losert(t) = target else { continue };
                let [re, im] = c(*v);
                rows.push(row([
                    ("kind", json!("product")),
                    ("left", json!(x.to_string())),
                    ("right", json!(y.to_string())),
                    ("target", json!(t.to_string())),
                    re,
                    im,
                ]));
            }
            if x.n != -y.n || x.m != -y.m {
                continue;
            }
            for a in 0..alg.dim() {
                for b in 0..alg.dim() {
                    let ex = KMElement::generator(KMGenerator::losert(a, x.n, x.m, x.k)?);
                    let ey = KMElement::generator(KMGenerator::losert(b, y.n, y.m, y.k)?);
                    for (which, name) in [(Cocycle::L, "omega_L"), (Cocycle::R, "omega_R")] {
                        let w = km.omega(which, &ex, &ey)?;
                        anti = anti.max((w + km.omega(which, &ey, &ex)?).norm());
                        if w.norm() == 0.0 {
                            continue;
                        }
                        let [re, im] = c(w);
                        rows.push(row([
                            ("kind", json!(name)),
                            ("left", json!(format!("T^{a}_{x}"))),
                            ("right", json!(format!("T^{b}_{y}"))),
                            ("target", Value::Null),
                            re,
                            im,
                        ]));
                    }
                }
            }
        }
    }
    let checks = vec![finite_check(&rows), Check::new("omega antisymmetry", anti, 0.0)];
    Ok(Report::new("bracket table", checks).with_data(rows))
}

fn parse_factor(s: &str) -> Result<(RepLabel, HalfInt, HalfInt)> {
    let (label, nm) = s.split_once('@').ok_or_else(|| Error::InvalidInput(format!("expected <rep>@n,m, got {s:?}")))?;
    let (n, m) = nm.split_once(',').ok_or_else(|| Error::InvalidInput(format!("expected n,m after @, got {nm:?}")))?;
    let label: RepLabel = label.parse()?;
    let (n, m): (HalfInt, HalfInt) = (n.parse()?, m.parse()?);
    if !(label.weight_support(n) && label.weight_support(m)) {
        return invalid(format!("weights ({n}, {m}) outside the support of {label}"));
    }
    Ok((label, n, m))
}

pub fn cg(p: &Params, left: &str, right: &str) -> Result<Report> {
    let (a, b) = (parse_factor(left)?, parse_factor(right)?);
    let exp = cg_project(a, b, p.lambda_max, &grid(p)?)?;
    let prod = psi(&a.0, a.1, a.2)?.product(&psi(&b.0, b.1, b.2)?);
    let mut rec = 0.0f64;
    for pt in random_points(p.seed, p.points) {
        rec = rec.max((exp.eval(&pt)? - prod.eval(&pt)?).norm());
    }
    let mut rows = Vec::new();
    for (label, v) in exp.discrete.iter() {
        let [re, im] = c(*v);
        rows.push(row([
            ("kind", json!("discrete")),
            ("label", json!(label.rep().to_string())),
            ("sigma", Value::Null),
            ("weight", Value::Null),
            re,
            im,
        ]));
    }
    for d in &exp.continuous {
        let [re, im] = c(d.value());
        rows.push(row([
            ("kind", json!("continuous")),
            ("label", json!(d.label().rep().to_string())),
            ("sigma", json!(d.sigma)),
            ("weight", json!(d.weight)),
            re,
            im,
        ]));
    }
    let checks = vec![Check::new("cg reconstruction max error", rec, p.tol.unwrap_or(1e-3))];
    Ok(Report::new("cg", checks).with_data(rows))
}
