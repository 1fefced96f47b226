use std::time::Instant;

use anyhow::{bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use catminors::catalecticant::{
    build_generic, compare_ideals, hilbert_function, power_sum_form, random_linear_forms, rewrite_2x2_minor_with,
    secant_vanishing_check, split_range, ComparisonReport, FormCoefficients, GradedAmbient, Minor2, Split,
};
use catminors::combinatorics::{combinations, partitions, partitions_up_to, IntPartition, Multiset, EAGER_LIMIT_N};
use catminors::exactla::{rational_string, CertificationMode, Verdict};
use catminors::polyalg::{poly_to_json, Poly, VarSpace};
use catminors::symgrp::{
    check_1flattening, circled_expand, compare_generic, generic_flattening, multiplicity, subtableau_flattening,
    GenericFlattening, MultiplicityMethod, SampleConfig,
};

use crate::args::{parse_blocks, CatCommand, Cli, Command, Common, GenericCommand, MethodArg, VerifyCommand};
use crate::output::{comparison_table, emit, Table};

/// Largest graded piece compared without `--force`.
const AMBIENT_LIMIT: usize = 50_000;

/// Runs the command; `Ok(false)` means an expectation was not met.
pub fn run(cli: &Cli) -> Result<bool> {
    if cli.common.threads > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(cli.common.threads).build_global()?;
    }
    let start = Instant::now();
    let ok = match &cli.command {
        Command::Cat(c) => run_cat(c, &cli.common)?,
        Command::Generic(c) => run_generic(c, &cli.common)?,
        Command::Verify(c) => run_verify(c, &cli.common)?,
    };
    eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    Ok(ok)
}

fn check_t(t: usize, d: usize) -> Result<()> {
    if t == 0 || t >= d {
        bail!("t = {t} must lie in 1..{}", d.saturating_sub(1));
    }
    Ok(())
}

fn check_envelope(n: usize, common: &Common) -> Result<()> {
    if n > EAGER_LIMIT_N && !common.force {
        bail!("N = {n} exceeds the generic envelope N <= {EAGER_LIMIT_N}; pass --force, or use the catalecticant side (`cat compare`)");
    }
    Ok(())
}

fn compare_checked(k: usize, n: usize, d: usize, ts: &[usize], r: usize, common: &Common) -> Result<ComparisonReport> {
    let dim = GradedAmbient::new(n, d, r)?.dim();
    if dim > AMBIENT_LIMIT && !common.force {
        bail!("the degree-{r} piece has dimension {dim} > {AMBIENT_LIMIT}; lower r or n, or pass --force");
    }
    Ok(compare_ideals(k, n, d, ts, r, &common.certification())?)
}

fn multiset_json(m: &Multiset) -> Value {
    json!(m.exponents())
}

fn run_cat(cmd: &CatCommand, common: &Common) -> Result<bool> {
    match cmd {
        CatCommand::Build { n, d, t } => {
            check_t(*t, *d)?;
            let cat = build_generic(*t, d - t, *n)?;
            let space = cat.space();
            let entries: Vec<Vec<Value>> = (0..cat.nrows())
                .map(|i| (0..cat.ncols()).map(|j| multiset_json(space.var(cat.entry(i, j)))).collect())
                .collect();
            let json = json!({
                "n": n, "a": t, "b": d - t,
                "rows": cat.row_labels().iter().map(multiset_json).collect::<Vec<_>>(),
                "cols": cat.col_labels().iter().map(multiset_json).collect::<Vec<_>>(),
                "entries": entries,
            });
            let mut table = Table::new(&["row", "col", "entry"]);
            for i in 0..cat.nrows() {
                for j in 0..cat.ncols() {
                    table.push(vec![
                        format!("{:?}", cat.row_labels()[i].exponents()),
                        format!("{:?}", cat.col_labels()[j].exponents()),
                        format!("{:?}", space.var(cat.entry(i, j)).exponents()),
                    ]);
                }
            }
            emit(common, &json, &table)?;
            Ok(true)
        }
        CatCommand::Hilbert { n, d, summands } => {
            let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
            let f = match summands {
                Some(s) => power_sum_form(&random_linear_forms(*s, *n, 10, &mut rng), *n, *d)?,
                None => loop {
                    let f = FormCoefficients::random(*n, *d, 10, &mut rng)?;
                    if !f.is_zero() {
                        break f;
                    }
                },
            };
            let h = hilbert_function(&f)?;
            let json = json!({"n": n, "d": d, "summands": summands, "seed": common.seed, "h": h.values()});
            let mut table = Table::new(&["i", "h"]);
            for (i, v) in h.values().iter().enumerate() {
                table.push(vec![i.to_string(), v.to_string()]);
            }
            emit(common, &json, &table)?;
            Ok(true)
        }
        CatCommand::Minors { k, n, d, t, limit } => {
            check_t(*t, *d)?;
            let cat = build_generic(*t, d - t, *n)?;
            let rows = combinations(cat.nrows(), *k);
            let cols = combinations(cat.ncols(), *k);
            let mut shown = Vec::new();
            let mut table = Table::new(&["rows", "cols", "terms"]);
            'outer: for r in &rows {
                for c in &cols {
                    if shown.len() >= *limit {
                        break 'outer;
                    }
                    let p = cat.minor(r, c)?;
                    table.push(vec![format!("{r:?}"), format!("{c:?}"), p.len().to_string()]);
                    shown.push(json!({"rows": r, "cols": c, "poly": poly_to_json(&p, cat.space())}));
                }
            }
            let json = json!({"k": k, "n": n, "d": d, "t": t, "count": rows.len() * cols.len(), "minors": shown});
            emit(common, &json, &table)?;
            Ok(true)
        }
        CatCommand::Compare { k, n, d, r, t, expect } => {
            let ts: Vec<usize> = if t.is_empty() { (1..*d).collect() } else { t.clone() };
            for &x in &ts {
                check_t(x, *d)?;
            }
            let rep = compare_checked(*k, *n, *d, &ts, r.unwrap_or(*k), common)?;
            emit(common, &rep.to_json(), &comparison_table(&rep))?;
            Ok(expect.is_none_or(|v| rep.pairs.iter().all(|p| p.verdict == v && p.consistent)))
        }
    }
}

fn run_generic(cmd: &GenericCommand, common: &Common) -> Result<bool> {
    match cmd {
        GenericCommand::Compare { k, d, r, pairs, plateau, expect } => {
            check_envelope(d * r, common)?;
            let pairs: Vec<(usize, usize)> = if pairs.is_empty() { (1..*d).map(|a| (a, d - a)).collect() } else { pairs.clone() };
            let cfg = SampleConfig { seed: common.seed, plateau: *plateau, force: common.force, target_rank: None };
            let cert = common.certification();
            let rep = compare_generic(*k, *d, *r, &pairs, &cert, &cfg)?;
            let key = |(a, b): (usize, usize)| format!("{a},{b}");
            let dims: Map<String, Value> =
                pairs.iter().zip(rep.module_dims()).map(|(&p, dim)| (key(p), json!(dim as u64))).collect();
            let mut verdicts = Map::new();
            let mut ok = true;
            for i in 0..pairs.len() {
                for j in i + 1..pairs.len() {
                    let (_, _, _, v) = rep.module_comparison(i, j).expect("all pairs compared");
                    ok &= expect.is_none_or(|e| e == v);
                    verdicts.insert(format!("{}|{}", key(pairs[i]), key(pairs[j])), json!(v.as_str()));
                }
            }
            ok &= expect.is_none() || rep.shapes.iter().all(|s| s.consistent);
            let json = json!({
                "k": k, "d": d, "r": r,
                "shapes": rep.to_json(),
                "module": {"dims": dims, "verdicts": verdicts},
                "mode": cert.label(),
                "primes": cert.primes(),
                "seed": common.seed,
            });
            let mut table = Table::new(&["k", "d", "r", "lambda", "a", "b", "dim", "multiplicity", "verdict"]);
            for s in &rep.shapes {
                for (&(a, b), dim) in pairs.iter().zip(&s.dims) {
                    table.push(vec![
                        k.to_string(),
                        d.to_string(),
                        r.to_string(),
                        s.lambda.to_string(),
                        a.to_string(),
                        b.to_string(),
                        dim.to_string(),
                        s.multiplicity.to_string(),
                        s.verdict().as_str().to_string(),
                    ]);
                }
            }
            emit(common, &json, &table)?;
            Ok(ok)
        }
        GenericCommand::Multiplicity { d, r, lambda, method } => {
            check_envelope(d * r, common)?;
            let m = match method {
                MethodArg::Rank => MultiplicityMethod::Rank,
                MethodArg::Character => MultiplicityMethod::Character,
            };
            let shapes = match lambda {
                Some(l) => vec![l.clone()],
                None => partitions(d * r),
            };
            let mut rows = Vec::new();
            let mut table = Table::new(&["lambda", "multiplicity"]);
            for l in shapes {
                let v = multiplicity(&l, *d, *r, m)?;
                table.push(vec![l.to_string(), v.to_string()]);
                rows.push(json!({"lambda": l.parts(), "multiplicity": v}));
            }
            let method = match method {
                MethodArg::Rank => "rank",
                MethodArg::Character => "character",
            };
            emit(common, &json!({"d": d, "r": r, "method": method, "multiplicities": rows}), &table)?;
            Ok(true)
        }
        GenericCommand::Flatten { alphas, betas, gammas, lambda } => {
            let f = GenericFlattening::new(&parse_blocks(alphas)?, &parse_blocks(betas)?, &parse_blocks(gammas)?)?;
            check_envelope(f.ground_size(), common)?;
            let w = generic_flattening(&f);
            let mut table = Table::new(&["monomial", "coefficient"]);
            let terms: Vec<Value> = w
                .terms()
                .map(|(m, c)| {
                    table.push(vec![format!("{:?}", m.blocks()), rational_string(c)]);
                    json!({"blocks": m.blocks(), "coefficient": rational_string(c)})
                })
                .collect();
            let mut json = json!({"k": f.k(), "a": f.a(), "b": f.b(), "r": f.r(), "terms": terms});
            if let Some(l) = lambda {
                let e = circled_expand(l, &f)?;
                json["circled"] = json!({
                    "lambda": l.parts(),
                    "circled_boxes": e.circled,
                    "tableaux": e.terms.iter().map(|t| json!({
                        "sign": t.sign,
                        "tau": t.tau,
                        "tableau": t.tableau.to_string(),
                        "vanishes": t.vanishes,
                    })).collect::<Vec<_>>(),
                    "equals_leading": e.equals_leading,
                    "zero": e.value.is_empty(),
                });
            }
            emit(common, &json, &table)?;
            Ok(true)
        }
    }
}

struct Check {
    name: String,
    expected: String,
    observed: String,
}

impl Check {
    fn new(name: impl Into<String>, expected: impl ToString, observed: impl ToString) -> Self {
        Check { name: name.into(), expected: expected.to_string(), observed: observed.to_string() }
    }

    fn ok(&self) -> bool {
        self.expected == self.observed
    }
}

fn emit_checks(common: &Common, task: &str, params: Value, cert: Option<&CertificationMode>, checks: &[Check]) -> Result<bool> {
    let all_ok = checks.iter().all(Check::ok);
    let mut json = json!({
        "task": task,
        "params": params,
        "checks": checks.iter().map(|c| json!({
            "name": c.name, "expected": c.expected, "observed": c.observed, "ok": c.ok(),
        })).collect::<Vec<_>>(),
        "all_ok": all_ok,
    });
    if let Some(cert) = cert {
        json["mode"] = json!(cert.label());
        json["primes"] = json!(cert.primes());
    }
    let mut table = Table::new(&["name", "expected", "observed", "ok"]);
    for c in checks {
        table.push(vec![c.name.clone(), c.expected.clone(), c.observed.clone(), c.ok().to_string()]);
    }
    emit(common, &json, &table)?;
    Ok(all_ok)
}

fn verdict_checks(rep: &ComparisonReport, expected: impl Fn(usize, usize) -> Verdict) -> Vec<Check> {
    rep.pairs
        .iter()
        .map(|p| Check::new(format!("t={} vs t={}", p.t1, p.t2), expected(p.t1, p.t2), p.verdict))
        .collect()
}

fn random_multiset(n: usize, deg: usize, rng: &mut impl Rng) -> Result<Multiset> {
    let e: Vec<usize> = (0..deg).map(|_| rng.gen_range(0..n)).collect();
    Ok(Multiset::from_elements(n, &e)?)
}

fn run_verify(cmd: &VerifyCommand, common: &Common) -> Result<bool> {
    let (ok, expect) = match cmd {
        VerifyCommand::Pucci { n, d, expect } => {
            let ts: Vec<usize> = (1..*d).collect();
            let rep = compare_checked(2, *n, *d, &ts, 2, common)?;
            let checks = verdict_checks(&rep, |_, _| Verdict::Equal);
            let params = json!({"n": n, "d": d, "ranks": rep.to_json()["ranks"]});
            (emit_checks(common, "pucci", params, Some(&rep.certification), &checks)?, expect.expect)
        }
        VerifyCommand::ThmMain { n, d, expect } => {
            if *d < 4 {
                bail!("the statement needs d >= 4");
            }
            let ts: Vec<usize> = (1..=d - 2).collect();
            let rep = compare_checked(3, *n, *d, &ts, 3, common)?;
            let checks = verdict_checks(&rep, |t1, _| if t1 == 1 { Verdict::StrictlyContained } else { Verdict::Equal });
            let params = json!({"n": n, "d": d, "ranks": rep.to_json()["ranks"]});
            (emit_checks(common, "thm-main", params, Some(&rep.certification), &checks)?, expect.expect)
        }
        VerifyCommand::Rel2x2 { n, d, trials, expect } => {
            if *d < 3 {
                bail!("the identity needs d >= 3");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
            let space = VarSpace::new(*n, *d)?;
            let mut holds = 0;
            for _ in 0..*trials {
                let a = rng.gen_range(1..=d - 2);
                let b = d - a;
                let (m1, m2) = (random_multiset(*n, a, &mut rng)?, random_multiset(*n, a, &mut rng)?);
                let (n1, n2) = (random_multiset(*n, b, &mut rng)?, random_multiset(*n, b, &mut rng)?);
                let (lo, hi) = match split_range(a, b)? {
                    Split::RowSplit { lo, hi } | Split::ColumnSplit { lo, hi } => (lo, hi),
                };
                let terms = rewrite_2x2_minor_with(&m1, &m2, &n1, &n2, rng.gen_range(lo..=hi))?;
                let lhs = Minor2::new(m1, m2, n1, n2).poly(&space)?;
                let mut rhs = Poly::zero(*n, *d);
                for t in terms {
                    let p = t.minor.poly(&space)?;
                    rhs = if t.sign > 0 { &rhs + &p } else { &rhs - &p };
                }
                holds += usize::from((&lhs - &rhs).is_zero());
            }
            let checks = [Check::new("identities holding", trials, holds)];
            let params = json!({"n": n, "d": d, "trials": trials, "seed": common.seed});
            (emit_checks(common, "rel2x2", params, Some(&CertificationMode::Exact), &checks)?, expect.expect)
        }
        VerifyCommand::Secant { n, d, trials, expect } => {
            let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
            let mut vanishing = 0;
            for i in 0..*trials {
                let f = power_sum_form(&random_linear_forms(1 + i % 2, *n, 5, &mut rng), *n, *d)?;
                vanishing += usize::from(secant_vanishing_check(2, &f)?.vanishes());
            }
            let control = power_sum_form(&random_linear_forms(3, *n, 5, &mut rng), *n, *d)?;
            let control_vanishes = secant_vanishing_check(2, &control)?.vanishes();
            let checks = [
                Check::new("rank <= 2 forms with vanishing 3x3 minors", trials, vanishing),
                Check::new("3-summand control vanishes", false, control_vanishes),
            ];
            let params = json!({"n": n, "d": d, "trials": trials, "seed": common.seed});
            (emit_checks(common, "secant", params, Some(&CertificationMode::Exact), &checks)?, expect.expect)
        }
        VerifyCommand::Examples { expect } => {
            let d = GenericFlattening::new(&[vec![1, 2], vec![4, 6], vec![5, 8]], &[vec![3], vec![7], vec![9]], &[])?;
            let e = circled_expand(&IntPartition::new(vec![5, 3, 1])?, &d)?;
            let mut checks = vec![
                Check::new("Example D terms", 6, generic_flattening(&d).len()),
                Check::new("circled example T", "11123/223/3", e.leading()),
                Check::new("circled example T^ = T", true, e.equals_leading),
                Check::new("circled example vanishing companions", 5, e.companions().iter().filter(|t| t.vanishes).count()),
            ];
            for (deg, a) in [(3, 2), (4, 2)] {
                for l in partitions(3 * deg).into_iter().filter(|l| l.len() == 3 && l.parts()[1] >= 2) {
                    let x = circled_expand(&l, &subtableau_flattening(&l, a, deg - a)?)?;
                    let ok = x.equals_leading && x.companions().iter().all(|t| t.vanishes);
                    checks.push(Check::new(format!("subtableau {l} d={deg}: T^ = T"), true, ok));
                }
            }
            (emit_checks(common, "examples", json!({}), Some(&CertificationMode::Exact), &checks)?, expect.expect)
        }
        VerifyCommand::OneFlattening { k, r, d, expect } => {
            check_envelope(d * r, common)?;
            let c = check_1flattening(*k, *d, *r)?;
            let checks = [Check::new("dim I(1,d-1)", c.isotypic_dim, c.ideal_dim)];
            let params = json!({"k": k, "r": r, "d": d, "shapes": partitions_up_to(d * r, d * r).into_iter().filter(|l| l.len() >= *k).count()});
            (emit_checks(common, "one-flattening", params, Some(&CertificationMode::Exact), &checks)?, expect.expect)
        }
    };
    Ok(ok || !expect)
}
