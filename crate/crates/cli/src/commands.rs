use crate::{Command, CycloCheck, GlobalOpts, PolyArg};
use gentrig::acceptance::{run_all, sample_disc, sample_interval, AcceptanceConfig};
use gentrig::cyclotomic::{
    addition_rule, cubic_form, det_constant, factorial_identity_check, CyclotomicSystem,
};
use gentrig::gentrig::{identity_certificate, GenTrigSystem};
use gentrig::poly::{
    find_roots, parse_complex_literal, parse_polynomial, ComplexPolynomial, DEFAULT_MAX_ITER,
};
use gentrig::series::{associated_matrix, evaluate_sums_for, SeriesOptions};
use gentrig::{Error, Result, C64};
use serde_json::{json, Value};

pub struct Doc {
    pub command: &'static str,
    pub inputs: Value,
    pub results: Value,
    pub diagnostics: Value,
}

impl Doc {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "diagnostics": self.diagnostics,
        })
    }
}

pub struct Failure {
    pub command: &'static str,
    pub error: Error,
}

pub fn c(z: C64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn cv(v: &[C64]) -> Value {
    Value::Array(v.iter().map(|&z| c(z)).collect())
}

fn cm(rows: &[Vec<C64>]) -> Value {
    Value::Array(rows.iter().map(|r| cv(r)).collect())
}

fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Roots { .. } => "roots",
        Command::Eval { .. } => "eval",
        Command::Taylor { .. } => "taylor",
        Command::Identity { .. } => "identity",
        Command::Cyclo { .. } => "cyclo",
        Command::MatrixC { .. } => "matrix-c",
        Command::Sum { .. } => "sum",
        Command::Verify => "verify",
    }
}

pub fn run(cmd: &Command, g: &GlobalOpts) -> std::result::Result<(Doc, u8), Failure> {
    let command = name(cmd);
    dispatch(cmd, g, command).map_err(|error| Failure { command, error })
}

fn validate(g: &GlobalOpts) -> Result<()> {
    if g.tol.is_nan() || g.tol <= 0.0 {
        return Err(Error::InvalidArgument("--tol must be positive".into()));
    }
    if let Some(t) = g.sum_tol {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::InvalidArgument("--sum-tol must be positive".into()));
        }
    }
    if g.oracle_n < 1000 {
        return Err(Error::InvalidArgument(
            "--oracle-n must be at least 1000".into(),
        ));
    }
    Ok(())
}

fn read_poly(arg: &PolyArg) -> Result<ComplexPolynomial> {
    match (&arg.poly, &arg.coeffs) {
        (Some(text), _) => parse_polynomial(text),
        (None, Some(list)) => {
            let coeffs = list
                .split(',')
                .map(|s| parse_complex_literal(s.trim()))
                .collect::<Result<Vec<_>>>()?;
            let p = ComplexPolynomial::new(coeffs)?;
            if p.coeffs().iter().all(|z| z.norm() == 0.0) {
                return Err(Error::ZeroPolynomial);
            }
            Ok(p)
        }
        (None, None) => Err(Error::InvalidArgument(
            "one of --poly or --coeffs is required".into(),
        )),
    }
}

fn poly_inputs(p: &ComplexPolynomial) -> Value {
    json!({"poly": p.to_string(), "coeffs": cv(p.coeffs())})
}

fn system(p: &ComplexPolynomial, g: &GlobalOpts) -> Result<GenTrigSystem> {
    GenTrigSystem::with_tolerance(p, g.tol, DEFAULT_MAX_ITER)
}

fn dispatch(cmd: &Command, g: &GlobalOpts, command: &'static str) -> Result<(Doc, u8)> {
    validate(g)?;
    let doc = |inputs, results, diagnostics| Doc {
        command,
        inputs,
        results,
        diagnostics,
    };
    match cmd {
        Command::Roots { poly } => {
            let p = read_poly(poly)?;
            if p.degree() == 0 {
                return Err(Error::InvalidArgument("a constant has no roots".into()));
            }
            let roots = find_roots(&p, g.tol, DEFAULT_MAX_ITER)?;
            Ok((
                doc(
                    poly_inputs(&p),
                    json!({"roots": cv(roots.roots())}),
                    json!({"residual": roots.residual()}),
                ),
                0,
            ))
        }
        Command::Eval { poly, l, x } => {
            let p = read_poly(poly)?;
            let sys = system(&p, g)?;
            let mut inputs = poly_inputs(&p);
            inputs["x"] = c(*x);
            let results = match l {
                Some(l) => {
                    inputs["l"] = json!(l);
                    json!({"S": c(sys.eval_s(*l, *x)?)})
                }
                None => json!({"S": cv(&sys.eval_s_all(*x)?)}),
            };
            Ok((
                doc(
                    inputs,
                    results,
                    json!({"root_residual": sys.roots().residual()}),
                ),
                0,
            ))
        }
        Command::Taylor { poly, l, order } => {
            let p = read_poly(poly)?;
            let sys = system(&p, g)?;
            let b = sys.taylor_coeffs(*l, *order)?;
            let num = sys.taylor_numerators(*l, *order)?;
            let mut inputs = poly_inputs(&p);
            inputs["l"] = json!(l);
            inputs["order"] = json!(order);
            Ok((
                doc(
                    inputs,
                    json!({"b": cv(&b), "factorial_times_b": cv(&num)}),
                    json!({"root_residual": sys.roots().residual()}),
                ),
                0,
            ))
        }
        Command::Identity { poly, xs, samples } => {
            let p = read_poly(poly)?;
            let sys = system(&p, g)?;
            let cert = identity_certificate(&sys)?;
            let points = if xs.is_empty() {
                sample_disc(g.seed, *samples, 1.0)
            } else {
                xs.clone()
            };
            let mut rows = Vec::new();
            let mut worst = 0.0f64;
            for &x in &points {
                let d = cert.eval_det_m(&sys, x)?;
                worst = worst.max((d - cert.det_ref).norm());
                rows.push(json!({"x": c(x), "det": c(d)}));
            }
            let bound = 1e-7 * (1.0 + cert.det_ref.norm());
            let ratio = cert.hadamard_ratio(&sys, C64::new(0.0, 0.0))?;
            let mut inputs = poly_inputs(&p);
            inputs["seed"] = json!(g.seed);
            Ok((
                doc(
                    inputs,
                    json!({
                        "lambda": c(cert.lambda),
                        "left": cv(&cert.left),
                        "det_ref": c(cert.det_ref),
                        "samples": rows,
                        "max_deviation": worst,
                    }),
                    json!({
                        "eigen_residual": cert.eigen_residual,
                        "constancy_bound": bound,
                        "constant": worst <= bound,
                        "hadamard_ratio": ratio,
                        "vacuous": ratio < 1e-10,
                    }),
                ),
                0,
            ))
        }
        Command::Cyclo {
            m,
            check,
            n,
            samples,
        } => {
            let (inputs, results, diagnostics) = cyclo(*m, *check, *n, *samples, g.seed)?;
            Ok((doc(inputs, results, diagnostics), 0))
        }
        Command::MatrixC { poly } => {
            let p = read_poly(poly)?;
            let sys = system(&p, g)?;
            let a = associated_matrix(&sys)?;
            let scaled = if g.descending_columns {
                a.scaled_descending()
            } else {
                a.scaled().to_vec()
            };
            let mut inputs = poly_inputs(&p);
            inputs["columns"] = json!(columns(g));
            Ok((
                doc(
                    inputs,
                    json!({"two_pi_i_C": cm(&scaled), "roots": cv(sys.roots().roots())}),
                    json!({
                        "cross_check": a.cross_check(),
                        "condition_estimate": a.condition_estimate(),
                    }),
                ),
                0,
            ))
        }
        Command::Sum { poly, no_oracle } => {
            let p = read_poly(poly)?;
            if p.degree() < 2 {
                return Err(Error::Divergent(p.degree()));
            }
            let sys = system(&p, g)?;
            let opts = SeriesOptions {
                root_tol: g.tol,
                max_iter: DEFAULT_MAX_ITER,
                oracle_n: if *no_oracle { None } else { Some(g.oracle_n) },
            };
            let res = evaluate_sums_for(&p, &sys, &opts)?;
            let order = |v: &[C64]| {
                let mut v = v.to_vec();
                if g.descending_columns {
                    v.reverse();
                }
                cv(&v)
            };
            let oracle = |o: &Option<Vec<gentrig::oracle::OracleEstimate>>| match o {
                None => Value::Null,
                Some(list) => {
                    let mut items: Vec<Value> = list
                        .iter()
                        .map(|e| json!({"estimate": c(e.estimate), "error_bar": e.error_bar}))
                        .collect();
                    if g.descending_columns {
                        items.reverse();
                    }
                    Value::Array(items)
                }
            };
            let mut inputs = poly_inputs(&p);
            inputs["order"] = json!(columns(g));
            inputs["oracle_n"] = if *no_oracle {
                Value::Null
            } else {
                json!(g.oracle_n)
            };
            Ok((
                doc(
                    inputs,
                    json!({
                        "A": order(&res.a),
                        "B": order(&res.b),
                        "oracle_A": oracle(&res.oracle_a),
                        "oracle_B": oracle(&res.oracle_b),
                    }),
                    json!({
                        "condition_estimate": res.condition_estimate,
                        "residual_A": res.residual_a,
                        "residual_B": res.residual_b,
                        "oracle_deviation": res.oracle_deviation(),
                        "oracle_excess": res.oracle_excess(),
                        "cross_check": res.associated.cross_check(),
                    }),
                ),
                0,
            ))
        }
        Command::Verify => {
            let config = AcceptanceConfig {
                seed: g.seed,
                root_tol: g.tol,
                oracle_n: g.oracle_n,
                sum_tol: g.sum_tol,
            };
            let outcomes = run_all(&config);
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            let criteria = serde_json::to_value(&outcomes).expect("outcomes serialize");
            Ok((
                doc(
                    json!({"seed": g.seed, "oracle_n": g.oracle_n, "sum_tol": g.sum_tol, "tol": g.tol}),
                    json!({"criteria": criteria}),
                    json!({"passed": outcomes.len() - failed, "failed": failed}),
                ),
                if failed == 0 { 0 } else { 1 },
            ))
        }
    }
}

fn columns(g: &GlobalOpts) -> &'static str {
    if g.descending_columns {
        "descending"
    } else {
        "ascending"
    }
}

fn cyclo(
    m: usize,
    check: CycloCheck,
    n: Option<usize>,
    samples: usize,
    seed: u64,
) -> Result<(Value, Value, Value)> {
    let sys = CyclotomicSystem::new(m)?;
    let mut inputs = json!({"m": m, "check": format!("{check:?}").to_lowercase(), "seed": seed});
    let max = |it: &mut dyn Iterator<Item = f64>| it.fold(0.0f64, f64::max);
    let out = match check {
        CycloCheck::Identity => {
            let points = sample_disc(seed, samples, 2.0);
            let dets: Vec<C64> = points
                .iter()
                .map(|&x| sys.det_m(x))
                .collect::<Result<_>>()?;
            let d0 = sys.det_m(C64::new(0.0, 0.0))?;
            let stated = if m % 2 == 1 { 1.0 } else { -1.0 };
            let mut results = json!({
                "det_at_zero": c(d0),
                "max_variation": max(&mut dets.iter().map(|d| (d - d0).norm())),
                "stated_constant": stated,
                "max_deviation_from_stated": max(&mut dets.iter().map(|d| (d - stated).norm())),
                "computed_constant": det_constant(m),
            });
            if m == 3 {
                let xs = sample_interval(seed, samples.max(1) * 5, 3.0);
                let vals: Vec<C64> = xs
                    .iter()
                    .map(|&x| sys.eval_s_all(C64::new(x, 0.0)).map(|s| cubic_form(&s)))
                    .collect::<Result<_>>()?;
                let mean = vals.iter().sum::<C64>() / vals.len() as f64;
                results["cubic_form_mean"] = c(mean);
                results["cubic_form_max_deviation_from_1"] =
                    json!(max(&mut vals.iter().map(|v| (v - 1.0).norm())));
            }
            (results, json!({"samples": samples, "radius": 2.0}))
        }
        CycloCheck::Addition => {
            let xs = sample_disc(seed, 2 * samples, 1.0);
            let mut rules = Vec::new();
            let mut worst = 0.0f64;
            for l in 0..m {
                let rule = addition_rule(m, l)?;
                for pair in xs.chunks(2) {
                    if let [x1, x2] = pair {
                        let e =
                            (sys.eval_s(l, x1 + x2)? - sys.apply_addition(&rule, *x1, *x2)?).norm();
                        worst = worst.max(e);
                    }
                }
                rules.push(json!({"l": l, "signs": rule.signs, "partners": rule.partners}));
            }
            (
                json!({"rules": rules, "max_error": worst}),
                json!({"pairs": samples}),
            )
        }
        CycloCheck::Taylor => {
            let terms = gentrig::gentrig::MAX_TAYLOR_ORDER / m;
            let xs = sample_disc(seed, samples, 2.0);
            let mut per_l = Vec::new();
            for l in 0..m {
                let mut worst = 0.0f64;
                for &x in &xs {
                    worst = worst.max((sys.taylor_eval(l, x, terms)? - sys.eval_s(l, x)?).norm());
                }
                per_l.push(worst);
            }
            (
                json!({"max_error_by_l": per_l}),
                json!({"terms": terms, "samples": samples}),
            )
        }
        CycloCheck::Rescale => {
            let general = sys.general_system()?;
            let xs = sample_disc(seed, samples, 2.0);
            let mut rows = Vec::new();
            for l in 0..m {
                let (mut literal, mut corrected) = (0.0f64, 0.0f64);
                for &x in &xs {
                    let (lhs, rhs) = sys.rescale_with(&general, l, x)?;
                    literal = literal.max((lhs - rhs).norm());
                    corrected = corrected.max((rhs - sys.rescale_factor(l) * lhs).norm());
                }
                rows.push(json!({
                    "l": l,
                    "factor": c(sys.rescale_factor(l)),
                    "max_literal_error": literal,
                    "max_error_with_factor": corrected,
                }));
            }
            (json!({"by_l": rows}), json!({"samples": samples}))
        }
        CycloCheck::Factorial => {
            let n = n.ok_or_else(|| {
                Error::InvalidArgument("--n is required for the factorial check".into())
            })?;
            inputs["n"] = json!(n);
            let r = factorial_identity_check(n)?;
            (
                json!({
                    "sum_a": r.sum_a.to_string(),
                    "sum_b": r.sum_b.to_string(),
                    "sum_b_all_orders": r.sum_b_all_orders.to_string(),
                    "holds": r.holds,
                }),
                json!({"exact": true}),
            )
        }
        CycloCheck::MatrixA => {
            let r = sys.matrix_a()?;
            (
                json!({
                    "A": cm(&r.a.rows()),
                    "det": c(r.det),
                    "det_modulus": r.det.norm(),
                    "det_via_factorization": r.det_via_factorization,
                }),
                json!({"relative_gap": (r.det.norm() - r.det_via_factorization).abs() / (1.0 + r.det.norm())}),
            )
        }
        CycloCheck::Delta => {
            let d: Vec<C64> = (0..m).map(|l| sys.delta(l)).collect::<Result<_>>()?;
            (json!({"delta": cv(&d)}), json!({}))
        }
    };
    Ok((inputs, out.0, out.1))
}
