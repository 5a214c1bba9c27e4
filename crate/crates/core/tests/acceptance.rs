//! Acceptance suite. Prints one line per criterion and sub-check and exits
//! nonzero when a check fails that is not listed as a known failure.

mod common;

use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::Rng;

use common::*;
use pbw_core::casimir::{casimirs, proportional, verify_casimir, CasimirVerdict, DegreeFilter};
use pbw_core::catalog::{entry, resolve_printed_casimir, CatalogEntry};
use pbw_core::coeff::{Assignment, Monomial, ParamPoly, RatFunc, Rational, Sym};
use pbw_core::diamond::{is_pbw, pbw_constraints, Verdict};
use pbw_core::freealg::{NCPoly, Word};
use pbw_core::relations::{find_degree_map, Mode, Reducer, RelationSet, Strategy};
use pbw_core::syntax::{parse_algebra, parse_expr, Scope};
use pbw_core::transform::{apply, classify_ab_form, FormKind, Transformation};

type Check = Result<String, String>;

struct Suite {
    passed: usize,
    failed: Vec<String>,
    known: Vec<String>,
}

impl Suite {
    fn line(&mut self, id: &str, what: &str, res: Check, known_red: bool) {
        match res {
            Ok(detail) => {
                self.passed += 1;
                println!("criterion {id:<5} PASS  {what}: {detail}");
            }
            Err(detail) if known_red => {
                self.known.push(id.to_string());
                println!("criterion {id:<5} FAIL  {what}: {detail} [known, see notes]");
            }
            Err(detail) => {
                self.failed.push(id.to_string());
                println!("criterion {id:<5} FAIL  {what}: {detail}");
            }
        }
    }

    fn check(&mut self, id: &str, what: &str, f: impl FnOnce() -> Check) {
        let res = f();
        self.line(id, what, res, false);
    }

    fn known_red(&mut self, id: &str, what: &str, f: impl FnOnce() -> Check) {
        let res = f();
        self.line(id, what, res, true);
    }

    fn timed(&mut self, id: &str, limit: Duration, start: Instant) {
        let t = start.elapsed();
        let res = if t <= limit {
            Ok(format!("{:.2} s", t.as_secs_f64()))
        } else {
            Err(format!("{:.2} s", t.as_secs_f64()))
        };
        self.line(id, &format!("runtime under {} s", limit.as_secs()), res, false);
    }
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e(err: impl std::fmt::Display) -> String {
    err.to_string()
}

fn assignment(pairs: &[(&str, Rational)]) -> Assignment {
    pairs.iter().map(|(s, v)| (Sym::new(s), v.clone())).collect()
}

fn coeff_expr(r: &RelationSet, src: &str) -> ParamPoly {
    let scope = Scope { generators: r.generators(), params: r.params(), brackets: false };
    let p = parse_expr(src, &scope).expect("oracle expression parses");
    p.coefficient(&Word::unit()).as_poly().cloned().expect("polynomial")
}

fn word(r: &RelationSet, s: &str) -> Word {
    Word::from_indices(&s.chars().map(|c| r.generator_index(&c.to_string()).unwrap()).collect::<Vec<_>>())
}

/// Term-by-term transcription of the reference constraint table, with the
/// general quadratic algebra in form 1a.
const TABLE: &[(&str, &str)] = &[
    ("A", "b100*b200 + b100*c001 + b100*b200*c011 - b001*c100 - a110*b001*c100 + b110*c100 + b110*c011*c100 + c020*c100 + a110*c020*c100"),
    ("B", "b010*b200 + b010*c001 - b001*c010 - a110*b001*c010 + b110*c010 + b010*b200*c011 + b110*c010*c011 + c010*c020 + a110*c010*c020"),
    ("C", "b100 + b001*b200 - a110*b001*c001 + b110*c001 + c010 + b100*c011 + b001*b200*c011 + b110*c001*c011 + c001*c020 + a110*c001*c020"),
    ("AA", "b200^2 + b200*c001 + b200^2*c011 - a110*c100 - b101*c100 - a110*b101*c100 + b100*c101 - b001*c200 - a110*b001*c200 + b110*c200 + b110*c011*c200 + c020*c200 + a110*c020*c200"),
    ("AB", "b110*b200 + b110*c001 - b101*c010 - a110*b101*c010 + b100*c011 + a110*b100*c011 + b110*b200*c011 + b010*c101 - b001*c110 - a110*b001*c110 + b110*c110 + b110*c011*c110 + c020*c110 + a110*c020*c110"),
    ("AC", "2*b200 + a110*b200 + b101*b200 - a110*c001 - a110*b101*c001 + 2*b200*c011 + a110*b200*c011 + b101*b200*c011 - a110*b001*c101 + b110*c101 + b110*c011*c101 + c020*c101 + a110*c020*c101 + c110"),
    ("BB", "-a110*b010 + b020*b200 + b020*c001 + b010*c011 + b020*b200*c011 - b001*c020 - a110*b001*c020 + b110*c020 + b110*c011*c020 + c020^2 + a110*c020^2"),
    ("BC", "-a110*b001 + b110 - a110*b001*c011 + 2*b110*c011 + b110*c011^2 + 2*c020 + a110*c020 + c011*c020 + a110*c011*c020"),
    ("CC", "b101 + c011 + b101*c011"),
    ("AAA", "b200*c101 - a110*c200 - b101*c200 - a110*b101*c200"),
    ("AAB", "a110*b200 + a110^2*b200 + b200*c011 + 2*a110*b200*c011 + a110^2*b200*c011 + b110*c101 - b101*c110 - a110*b101*c110"),
    ("AAC", "-a110*c101 - a110*b101*c101"),
    ("ABB", "b110*c011 + a110*b110*c011 + a110*c020 + a110^2*c020 - b101*c020 - a110*b101*c020 + b020*c101"),
    ("BBB", "-a110*b020 + b020*c011"),
];

/// The B^2 row exactly as printed, including the repeated run of terms.
const TABLE_BB_AS_PRINTED: &str = "-a110*b010 + b020*b200 + b020*c001 + b010*c011 + b020*b200*c011 - b001*c020 - a110*b001*c020 + c001 + b010*c011 + b020*b200*c011 - b001*c020 - a110*b001*c020 + b110*c020 + b110*c011*c020 + c020^2 + a110*c020^2";

fn criterion_1(s: &mut Suite) {
    let start = Instant::now();
    let gq = entry("general-quadratic").unwrap().relations();
    let full = pbw_constraints(&gq).unwrap();
    let form_1a = assignment(&[("a200", q(0, 1)), ("a100", q(0, 1)), ("a010", q(0, 1)), ("a001", q(1, 1))]);
    let r = gq.specialize(&form_1a).unwrap();
    let cs = pbw_constraints(&r).unwrap();
    s.timed("1", Duration::from_secs(5), start);

    s.check("1.a", "every table row equals the generated row up to one global sign", || {
        let mut sign: Option<bool> = None;
        for (w, src) in TABLE {
            let want = coeff_expr(&gq, src);
            let got = cs.row(&word(&r, w)).ok_or(format!("no row {w}"))?;
            let flip = if *got == want {
                false
            } else if *got == -&want {
                true
            } else {
                return Err(format!("row {w} differs"));
            };
            if sign.is_some_and(|x| x != flip) {
                return Err(format!("row {w} needs the other sign"));
            }
            sign = Some(flip);
        }
        ensure(cs.len() == TABLE.len(), format!("{} generated rows", cs.len()))?;
        Ok(format!("{} rows, sign {}", TABLE.len(), if sign == Some(true) { "flipped" } else { "as printed" }))
    });
    s.check("1.b", "printed B^2 row differs only by a repeated run of terms", || {
        let printed = coeff_expr(&gq, TABLE_BB_AS_PRINTED);
        let got = cs.row(&word(&r, "BB")).unwrap();
        ensure(printed != *got, "printed row unexpectedly matches")?;
        let dup = coeff_expr(&gq, "c001 + b010*c011 + b020*b200*c011 - b001*c020 - a110*b001*c020");
        ensure(&printed - &dup == *got, "difference is not the repeated run")?;
        Ok("generated row used as the golden value".into())
    });
    s.check("1.c", "spot rows C^2 and B^3", || {
        let c2 = cs.row(&word(&r, "CC")).ok_or("no C^2 row")?;
        let b3 = cs.row(&word(&r, "BBB")).ok_or("no B^3 row")?;
        ensure(*c2 == coeff_expr(&gq, "b101 + c011 + b101*c011"), format!("C^2: {c2}"))?;
        ensure(*b3 == coeff_expr(&gq, "-a110*b020 + b020*c011"), format!("B^3: {b3}"))?;
        Ok(format!("C^2: {c2}; B^3: {b3}"))
    });
    s.check("1.e", "general algebra has rows on the same words", || {
        let a: Vec<String> = full.rows().map(|(_, w, _)| w.render(gq.generators())).collect();
        let b: Vec<String> = cs.rows().map(|(_, w, _)| w.render(r.generators())).collect();
        ensure(a == b, format!("{a:?}"))?;
        Ok(format!("{} rows", a.len()))
    });
    s.known_red("1.d", "row count is 13", || {
        ensure(cs.len() == 13, format!("{} rows; the reference table itself has {} rows including A^2C", cs.len(), TABLE.len()))?;
        Ok("13".into())
    });
}

/// Structure constants of the linear part, `f[(j,i)] = [x_j, x_i]` as a
/// coefficient vector.
fn jacobi_oracle(r: &RelationSet) -> [ParamPoly; 3] {
    let lin = |j: usize, i: usize| -> [ParamPoly; 3] {
        let (j, i, s) = if j > i { (j, i, 1) } else { (i, j, -1) };
        let br = r.brackets().remove(&(j, i)).unwrap_or_else(NCPoly::zero);
        let c = |g: usize| {
            let v = br.coefficient(&Word::gen(g)).as_poly().cloned().unwrap();
            if s < 0 {
                -&v
            } else {
                v
            }
        };
        [c(0), c(1), c(2)]
    };
    let bracket = |x: &[ParamPoly; 3], y: &[ParamPoly; 3]| -> [ParamPoly; 3] {
        let mut out = [ParamPoly::zero(), ParamPoly::zero(), ParamPoly::zero()];
        for a in 0..3 {
            for b in 0..3 {
                if a == b || x[a].is_zero() || y[b].is_zero() {
                    continue;
                }
                let f = lin(a, b);
                for k in 0..3 {
                    out[k] = &out[k] + &(&(&x[a] * &y[b]) * &f[k]);
                }
            }
        }
        out
    };
    let unit = |g: usize| {
        let mut v = [ParamPoly::zero(), ParamPoly::zero(), ParamPoly::zero()];
        v[g] = ParamPoly::one();
        v
    };
    let (a, b, c) = (unit(0), unit(1), unit(2));
    let t1 = bracket(&c, &lin(1, 0));
    let t2 = bracket(&b, &lin(0, 2));
    let t3 = bracket(&a, &lin(2, 1));
    [0, 1, 2].map(|k| &(&t1[k] + &t2[k]) + &t3[k])
}

fn criterion_2(s: &mut Suite) {
    let start = Instant::now();
    let gq = entry("general-quadratic").unwrap().relations();
    let zero: Vec<(&str, Rational)> = ["a200", "a110", "b200", "b110", "b101", "b020", "c200", "c110", "c101", "c020", "c011"]
        .iter()
        .map(|n| (*n, q(0, 1)))
        .collect();
    let lie = gq.specialize(&assignment(&zero)).unwrap();
    let cs = pbw_constraints(&lie).unwrap();
    s.check("2", "linear specialization leaves exactly the Jacobi identity", || {
        let j = jacobi_oracle(&lie);
        let mut sign: Option<bool> = None;
        for (k, jk) in j.iter().enumerate() {
            let got = cs.row(&Word::gen(k)).cloned().unwrap_or_else(ParamPoly::zero);
            let flip = if got == *jk {
                false
            } else if got == -jk {
                true
            } else {
                return Err(format!("component {k}: {got} vs {jk}"));
            };
            if !jk.is_zero() && sign.is_some_and(|x| x != flip) {
                return Err("inconsistent sign".into());
            }
            sign = Some(flip);
        }
        ensure(cs.rows().all(|(_, w, _)| w.len() == 1), "rows beyond the linear words")?;
        Ok(format!("{} rows, all linear", cs.len()))
    });
    s.timed("2", Duration::from_secs(1), start);
}

const FAMILIES: &[&str] = &[
    "form-1a-casimir",
    "form-1a-nocasimir-lambda-nonzero",
    "form-1a-nocasimir-lambda-zero",
    "form-1a-lambda-minus-one",
    "form-1b",
    "form-2d",
    "calabi-yau-omega",
    "rho-sigma-omega",
    "central-extension",
];

fn criterion_3(s: &mut Suite) {
    let start = Instant::now();
    for id in FAMILIES {
        let en = entry(id).unwrap();
        s.check("3", &format!("{id} satisfies its constraints"), || {
            let r = en.relations();
            match is_pbw(&r, &Assignment::new()).map_err(e)? {
                Verdict::Pbw { assumptions } => {
                    let excl = en.exclusion_polys();
                    let extra: Vec<String> = assumptions.iter().filter(|a| !excl.contains(a)).map(|a| a.to_string()).collect();
                    ensure(extra.is_empty(), format!("unrecorded assumptions {extra:?}"))?;
                    let a: Vec<String> = assumptions.iter().map(|p| format!("{p} != 0")).collect();
                    Ok(if a.is_empty() { "identically zero".into() } else { format!("zero assuming {}", a.join(", ")) })
                }
                v => Err(format!("{v:?}")),
            }
        });
        if let Some(src) = en.printed_source {
            s.check("3", &format!("{id} as printed does not satisfy them"), || {
                let printed = parse_algebra(src).map_err(e)?;
                match pbw_constraints(&printed) {
                    Ok(cs) if !cs.is_empty() => Ok(format!("{} nonzero rows", cs.len())),
                    Ok(_) => Err("printed display passes".into()),
                    Err(err) => Ok(format!("rewriting diverges ({err})")),
                }
            });
        }
    }
    s.timed("3", Duration::from_secs(30), start);
}

fn criterion_4(s: &mut Suite) {
    let start = Instant::now();
    for id in ["daskaloyannis", "form-1a-casimir", "form-1b", "form-2d", "cubic-parametric-quartic-casimir"] {
        s.check("4", &format!("printed Casimir of {id} is central"), || {
            let (k, vals) = resolve_printed_casimir(id).map_err(e)?;
            let r = entry(id).unwrap().relations();
            match verify_casimir(&k, &r).map_err(e)? {
                CasimirVerdict::Casimir => {
                    let v: Vec<String> = vals.iter().map(|(s, v)| format!("{} = {v}", s.name())).collect();
                    Ok(if v.is_empty() { "verified symbolically".into() } else { format!("verified with {}", v.join(", ")) })
                }
                CasimirVerdict::Residual { generator, residual } => {
                    Err(format!("[K,{}] = {}", r.generators()[generator], r.render(&residual)))
                }
            }
        });
    }
    s.timed("4", Duration::from_secs(60), start);
}

fn without_constant(k: &NCPoly) -> NCPoly {
    NCPoly::from_terms(k.terms().filter(|(w, _)| !w.is_empty()).map(|(w, c)| (w.clone(), c.clone())))
}

/// Parameters with denominators at most 50, avoiding the entry's exclusions.
fn point(en: &CatalogEntry, g: &mut impl Rng) -> (Assignment, RelationSet) {
    admissible_point(en, g)
}

fn criterion_5(s: &mut Suite) {
    let start = Instant::now();
    let mut g = rng(2024);
    let en = entry("form-1a-casimir").unwrap();
    let (k, _) = resolve_printed_casimir(en.id).unwrap();
    s.check("5.a", "form 1a with Casimir: 20 points, one-dimensional and proportional", || {
        for n in 0..20 {
            let (a, spec) = point(en, &mut g);
            let b = casimirs(&spec, 3, DegreeFilter::Polynomial).map_err(e)?;
            ensure(b.dimension() == 1, format!("point {n}: dimension {}", b.dimension()))?;
            let kp = without_constant(&k.try_map_coeffs(|c| c.substitute(&a)).map_err(e)?);
            ensure(proportional(&b.elements[0], &kp), format!("point {n}: not proportional"))?;
        }
        Ok("20/20".into())
    });
    let en = entry("form-1a-lambda-minus-one").unwrap();
    s.check("5.b", "form 1a at lambda = -1: 20 points, no cubic Casimir", || {
        for n in 0..20 {
            let (_, spec) = point(en, &mut g);
            let b = casimirs(&spec, 3, DegreeFilter::Polynomial).map_err(e)?;
            ensure(b.dimension() == 0, format!("point {n}: dimension {}", b.dimension()))?;
        }
        Ok("20/20".into())
    });
    s.timed("5", Duration::from_secs(120), start);
}

const STRATEGIES: [Strategy; 7] = [
    Strategy::Leftmost,
    Strategy::Rightmost,
    Strategy::Random(1),
    Strategy::Random(2),
    Strategy::Random(3),
    Strategy::Random(4),
    Strategy::Random(5),
];

fn strategy_dependent(red: &Reducer<Rational>, w: &[usize]) -> Result<bool, String> {
    let m = NCPoly::monomial(Word::from_indices(w), Rational::one());
    let first = red.reduce(&m, STRATEGIES[0]).map_err(e)?;
    for st in &STRATEGIES[1..] {
        if red.reduce(&m, *st).map_err(e)? != first {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A generic point of small height: `|p| <= 9`, `1 <= q <= 7`.
fn small_point(en: &CatalogEntry, g: &mut impl Rng) -> RelationSet {
    let r = en.relations();
    loop {
        let a: Assignment = r
            .params()
            .iter()
            .map(|&s| {
                let p = loop {
                    let p: i64 = g.gen_range(-9..=9);
                    if p != 0 {
                        break p;
                    }
                };
                (s, q(p, g.gen_range(1..=7)))
            })
            .collect();
        if let Ok(spec) = en.instantiate(&a) {
            return spec;
        }
    }
}

fn criterion_6(s: &mut Suite) {
    let start = Instant::now();
    let mut g = rng(6);
    let ids: Vec<&CatalogEntry> = pbw_core::catalog::entries()
        .iter()
        .filter(|en| en.pbw == pbw_core::catalog::ExpectedPbw::Pbw && en.relations().mode() == Mode::Strict)
        .collect();
    for en in ids {
        s.check("6.a", &format!("{}: 1000 words, 7 strategies agree", en.id), || {
            let spec = small_point(en, &mut g);
            let red: Reducer<Rational> = Reducer::new(&spec).map_err(e)?;
            for _ in 0..1000 {
                let w = random_word(spec.n(), 6, &mut g);
                if strategy_dependent(&red, &w)? {
                    return Err(format!("word {w:?} depends on the strategy"));
                }
            }
            Ok("identical normal forms".into())
        });
    }
    s.check("6.b", "perturbed non-PBW algebra shows strategy dependence", || {
        let en = entry("form-1a-casimir").unwrap();
        let spec = small_point(en, &mut g);
        // add C to [C,B]
        let mut br = spec.brackets();
        let cb = br.entry((2, 1)).or_insert_with(NCPoly::zero);
        *cb = cb.add(&NCPoly::monomial(Word::gen(2), RatFunc::one()));
        let bad = RelationSet::from_brackets(spec.generators().to_vec(), vec![], spec.degrees().clone(), br, Mode::Strict).map_err(e)?;
        ensure(bad.validate().is_empty(), "perturbation breaks the ordering")?;
        ensure(!pbw_constraints(&bad).map_err(e)?.is_empty(), "perturbation kept PBW")?;
        let red: Reducer<Rational> = Reducer::new(&bad).map_err(e)?;
        let mut hits = 0;
        for _ in 0..1000 {
            if strategy_dependent(&red, &random_word(3, 6, &mut g))? {
                hits += 1;
            }
        }
        ensure(hits > 0, "no strategy-dependent word")?;
        Ok(format!("{hits} of 1000 words"))
    });
    s.timed("6", Duration::from_secs(60), start);
}

/// The base family with the central terms of `[C,A]` and `[C,B]` left free.
const CENTRAL_FREE: &str = "\
generators: A B C
params: b200 b110 b010 c011 c001 c1 c2 c3
rel: [B,A] = -A*B + C + c1
rel: [C,A] = b200*A^2 + b110*A*B - c011/(1 + c011)*A*C + b110*b200*(1 + c011)*A + b010*B + (b010/(b110*(1 + c011)) - b110*(1 + c011))*C + c2
rel: [C,B] = (-b200 - c001/(1 + c011))*A*B - b010/b110*B^2 + c011*B*C - b200*(b200*(1 + c011) + c001)*A - b010*(b200*(1 + c011) + c001)/(b110*(1 + c011))*B + c001*C + c3
";

/// The printed constraint triple, with `c1` inside the first parenthesis read
/// as `c001` and `b10` as `b010`.
const PRINTED_TRIPLE: [&str; 3] = [
    "b110*(c011 + 1)*(b200*(c011 + 1)*c1 + c3) - b010*c1*(b200*c011 + b200 + c001)/(b110*(c011 + 1)) + c2*(b200*c011 + b200 + c001)",
    "b200*c011*c1 - c001*c1/(c011 + 1) + c3",
    "(c011 + 1)*(b110*c1 + c2) - b010*c1/b110",
];

const PRINTED_C2: &str = "-c1*(b110^2*c011 + b110^2 - b010)/(b110*(c011 + 1))";
const PRINTED_C3: &str = "c1*(c001/(c011 + 1) - b200*c011)";

/// Solves equations affine in `c2`, `c3` (rational coefficients) by
/// elimination; all equations must be consistent.
fn solve_c2_c3(eqs: &[RatFunc]) -> Result<(Rational, Rational), String> {
    let (s2, s3) = (Sym::new("c2"), Sym::new("c3"));
    let mut rows: Vec<[Rational; 3]> = Vec::new();
    for f in eqs {
        let num = f.numer();
        let lin = |s: Sym| num.coefficient(&Monomial::var(s));
        let c0 = num.coefficient(&Monomial::one());
        ensure(num.total_degree() <= 1, format!("{num} is not affine"))?;
        rows.push([lin(s2), lin(s3), c0]);
    }
    // eliminate with the first rows that pin each unknown
    let p2 = rows.iter().position(|r| !r[0].is_zero()).ok_or("c2 undetermined")?;
    let r2 = rows[p2].clone();
    let mut reduced: Vec<[Rational; 3]> = rows
        .iter()
        .map(|r| {
            let f = &r[0] / &r2[0];
            [Rational::zero(), &r[1] - &(&f * &r2[1]), &r[2] - &(&f * &r2[2])]
        })
        .collect();
    let p3 = reduced.iter().position(|r| !r[1].is_zero()).ok_or("c3 undetermined")?;
    let c3 = -(&reduced[p3][2] / &reduced[p3][1]);
    for r in reduced.iter_mut() {
        ensure((&r[1] * &c3 + &r[2]).is_zero(), "inconsistent equations")?;
    }
    let c2 = -(&(&r2[1] * &c3) + &r2[2]) / &r2[0];
    Ok((c2, c3))
}

fn criterion_7(s: &mut Suite) {
    let start = Instant::now();
    let free = parse_algebra(CENTRAL_FREE).unwrap();
    let scope_params = free.params().to_vec();
    let scalar = |src: &str| -> RatFunc {
        let scope = Scope { generators: free.generators(), params: &scope_params, brackets: false };
        parse_expr(src, &scope).unwrap().coefficient(&Word::unit())
    };
    let mut g = rng(77);
    let names = ["b200", "b110", "b010", "c011", "c001", "c1"];
    let mut points = Vec::new();
    while points.len() < 10 {
        let a: Assignment = names.iter().map(|n| (Sym::new(n), small_rational(&mut g))).collect();
        if a[&Sym::new("c011")] != q(-1, 1) {
            points.push(a);
        }
    }
    let closed = |a: &Assignment| -> (Rational, Rational) {
        (
            scalar(PRINTED_C2).substitute(a).unwrap().as_rational().unwrap(),
            scalar(PRINTED_C3).substitute(a).unwrap().as_rational().unwrap(),
        )
    };
    s.check("7.a", "generated central rows solved at 10 points give the printed c2, c3", || {
        for (n, a) in points.iter().enumerate() {
            let spec = free.specialize(a).map_err(e)?;
            let cs = pbw_constraints(&spec).map_err(e)?;
            let eqs: Vec<RatFunc> = cs.rows().map(|(_, _, f)| RatFunc::from_poly(f.clone())).collect();
            let rest: Vec<String> = cs
                .rows()
                .filter(|(_, w, _)| w.len() > 1)
                .map(|(_, w, _)| w.render(free.generators()))
                .collect();
            ensure(rest.is_empty(), format!("point {n}: nonlinear rows {rest:?}"))?;
            let got = solve_c2_c3(&eqs).map_err(|m| format!("point {n}: {m}"))?;
            ensure(got == closed(a), format!("point {n}: solved {got:?}"))?;
        }
        Ok("10/10".into())
    });
    s.check("7.b", "printed triple solved at 10 points gives the printed c2, c3", || {
        for (n, a) in points.iter().enumerate() {
            let eqs: Vec<RatFunc> = PRINTED_TRIPLE.iter().map(|t| scalar(t).substitute(a).unwrap()).collect();
            let got = solve_c2_c3(&eqs).map_err(|m| format!("point {n}: {m}"))?;
            ensure(got == closed(a), format!("point {n}: solved {got:?}"))?;
        }
        Ok("10/10".into())
    });
    s.check("7.c", "closed forms make the family PBW symbolically", || {
        let r = entry("central-extension").unwrap().relations();
        ensure(pbw_constraints(&r).map_err(e)?.is_empty(), "rows remain")?;
        Ok("no rows".into())
    });
    s.timed("7", Duration::from_secs(30), start);
}

fn criterion_8(s: &mut Suite) {
    let start = Instant::now();
    let gq = entry("general-quadratic").unwrap().relations();
    let v = |n: &str| RatFunc::var(Sym::new(n));
    s.check("8.a", "lowest bracket after a symbolic change of generators", || {
        let t = Transformation::triangular3(v("alpha1"), v("beta1"), v("beta2"), v("gamma1"), v("gamma2"), v("gamma3")).map_err(e)?;
        let out = apply(&t, &gq).map_err(e)?;
        let ba = out.brackets().remove(&(1, 0)).ok_or("no bracket")?;
        let (a1, b1, b2, g1, g2, g3) = (v("alpha1"), v("beta1"), v("beta2"), v("gamma1"), v("gamma2"), v("gamma3"));
        let (a200, a110, a100, a010, a001) = (v("a200"), v("a110"), v("a100"), v("a010"), v("a001"));
        // the printed coefficients, with the two misprinted indices
        // corrected (a001 in the gamma2 terms)
        let printed = [
            ("AA", &(&a200 / &(&a1 * &a1)) - &(&(&a110 * &b2) / &(&(&a1 * &a1) * &b1))),
            ("AB", &a110 / &(&a1 * &b1)),
            (
                "A",
                &(&(&a100 / &a1) - &(&(&a010 * &b2) / &(&a1 * &b1)))
                    + &(&(&(&(&a001 * &b2) * &g2) / &(&(&a1 * &b1) * &g1)) - &(&(&a001 * &g3) / &(&a1 * &g1))),
            ),
            ("B", &(&a010 / &b1) - &(&(&a001 * &g2) / &(&b1 * &g1))),
            ("C", &a001 / &g1),
        ];
        let scale = &a1 * &b1;
        for (w, c) in &printed {
            let got = ba.coefficient(&word(&gq, w));
            ensure(got == c * &scale, format!("{w}: {got}"))?;
        }
        ensure(ba.terms().count() == printed.len(), "extra words")?;
        Ok("all five coefficients equal alpha1*beta1 times the printed ones".into())
    });
    s.check("8.b", "apply then invert is the identity for 50 random transformations", || {
        let mut g = rng(8);
        for n in 0..50 {
            let mut r = || RatFunc::from_rational(small_rational(&mut g));
            let t = Transformation::triangular3(r(), r(), r(), r(), r(), r()).map_err(e)?;
            let there = apply(&t, &gq).map_err(e)?;
            let back = apply(&t.invert().map_err(e)?, &there).map_err(e)?;
            ensure(back == gq, format!("transformation {n}"))?;
        }
        Ok("50/50".into())
    });
    s.check("8.c", "Daskaloyannis algebra classifies as 1a", || {
        let c = classify_ab_form(&entry("daskaloyannis").unwrap().relations()).map_err(e)?;
        ensure(c.label.kind == FormKind::F1a, format!("got {}", c.label))?;
        Ok(format!("{}", c.label))
    });
    s.timed("8", Duration::from_secs(60), start);
}

fn criterion_9(s: &mut Suite) {
    let start = Instant::now();
    let map = |r: &RelationSet| find_degree_map(r, 6).map(|d| d.values().to_vec());
    s.check("9.a", "quadratic Daskaloyannis algebra gets (1,1,1)", || {
        let got = map(&entry("daskaloyannis").unwrap().relations());
        ensure(got == Some(vec![1, 1, 1]), format!("{got:?}"))?;
        Ok("(1,1,1)".into())
    });
    s.known_red("9.b", "cubic Daskaloyannis extension gets (2,3,4)", || {
        let r = entry("daskaloyannis-cubic").unwrap().relations().with_mode(Mode::Permissive { cap: 10_000 });
        let got = map(&r);
        ensure(got == Some(vec![2, 3, 4]), format!("lexicographically first admissible map is {got:?}"))?;
        Ok("(2,3,4)".into())
    });
    s.check("9.c", "printed rho, sigma, omega family has no map up to 6", || {
        let printed = parse_algebra(entry("rho-sigma-omega").unwrap().printed_source.unwrap()).map_err(e)?;
        let got = map(&printed);
        ensure(got.is_none(), format!("{got:?}"))?;
        Ok("none".into())
    });
    s.check("9.d", "corrected rho, sigma, omega family", || {
        let got = map(&entry("rho-sigma-omega").unwrap().relations());
        ensure(got == Some(vec![2, 3, 4]), format!("{got:?}"))?;
        Ok("(2,3,4)".into())
    });
    s.timed("9", Duration::from_secs(5), start);
}

fn main() {
    let mut s = Suite { passed: 0, failed: Vec::new(), known: Vec::new() };
    criterion_1(&mut s);
    criterion_2(&mut s);
    criterion_3(&mut s);
    criterion_4(&mut s);
    criterion_5(&mut s);
    criterion_6(&mut s);
    criterion_7(&mut s);
    criterion_8(&mut s);
    criterion_9(&mut s);
    println!(
        "acceptance: {} passed, {} failed, {} known failures ({})",
        s.passed,
        s.failed.len(),
        s.known.len(),
        s.known.join(", ")
    );
    if !s.failed.is_empty() {
        std::process::exit(1);
    }
}
