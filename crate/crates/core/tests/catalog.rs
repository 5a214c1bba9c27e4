mod common;

use common::*;
use pbw_core::casimir::{casimirs, casimirs_at, verify_casimir, CasimirVerdict, DegreeFilter};
use pbw_core::catalog::{entries, entry, instantiate, list_entries, resolve_printed_casimir, ExpectedCasimir, ExpectedPbw};
use pbw_core::coeff::{Assignment, RatFunc, Sym};
use pbw_core::diamond::{is_pbw, pbw_constraints, Verdict};
use pbw_core::freealg::Word;
use pbw_core::syntax::parse_algebra;
use pbw_core::Error;

#[test]
fn fifteen_entries_with_unique_ids() {
    let ids: Vec<&str> = list_entries().iter().map(|(id, _)| *id).collect();
    assert_eq!(ids.len(), 15);
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), 15);
    assert!(matches!(entry("no-such-entry"), Err(Error::UnknownEntry(_))));
}

#[test]
fn unicode_aliases() {
    assert_eq!(entry("form-1a-λ=−1").unwrap().id, "form-1a-lambda-minus-one");
    assert_eq!(entry("form-1a-nocasimir-λ≠0").unwrap().id, "form-1a-nocasimir-lambda-nonzero");
    assert_eq!(entry("form-1a-nocasimir-λ=0").unwrap().id, "form-1a-nocasimir-lambda-zero");
}

/// PBW holds symbolically, and every assumption the check needs is one of the
/// recorded exclusions.
#[test]
fn pbw_under_recorded_exclusions() {
    for e in entries().iter().filter(|e| e.pbw == ExpectedPbw::Pbw) {
        let r = e.relations();
        match is_pbw(&r, &Assignment::new()).unwrap() {
            Verdict::Pbw { assumptions } => {
                let excl = e.exclusion_polys();
                for a in &assumptions {
                    assert!(excl.contains(a), "{}: assumption {a} is not a recorded exclusion", e.id);
                }
            }
            v => panic!("{}: {v:?}", e.id),
        }
    }
}

#[test]
fn constrained_and_divergent_entries() {
    let gq = entry("general-quadratic").unwrap().relations();
    assert!(matches!(is_pbw(&gq, &Assignment::new()).unwrap(), Verdict::Undetermined { .. }));
    let gc = entry("general-cubic").unwrap().relations();
    assert!(matches!(pbw_constraints(&gc), Err(Error::ReductionCap(_))));
}

/// The displays as printed, where they differ from the catalog source, do not
/// define PBW algebras; the corrected sources do.
#[test]
fn printed_displays_fail_and_corrections_pass() {
    let mut seen = 0;
    for e in entries() {
        let Some(src) = e.printed_source else { continue };
        seen += 1;
        let printed = parse_algebra(src).unwrap();
        assert_ne!(printed, e.relations(), "{}", e.id);
        match pbw_constraints(&printed) {
            Ok(cs) => assert!(!cs.is_empty(), "{}: printed display passes", e.id),
            Err(err) => assert!(matches!(err, Error::ReductionCap(_)), "{}: {err}", e.id),
        }
        assert!(pbw_constraints(&e.relations()).unwrap().is_empty(), "{}", e.id);
    }
    assert_eq!(seen, 6);
}

#[test]
fn printed_casimirs_are_central_and_found_by_the_solver() {
    let mut g = rng(17);
    for e in entries().iter().filter(|e| e.printed_casimir.is_some()) {
        let r = e.relations();
        let (k, _) = resolve_printed_casimir(e.id).unwrap();
        assert_eq!(verify_casimir(&k, &r).unwrap(), CasimirVerdict::Casimir, "{}", e.id);
        let ExpectedCasimir::Degree(d) = e.casimir else { panic!("{} has a printed Casimir", e.id) };
        for _ in 0..5 {
            let (a, spec) = admissible_point(e, &mut g);
            let basis = casimirs(&spec, d, DegreeFilter::Polynomial).unwrap();
            let kp = k.try_map_coeffs(|c| c.substitute(&a)).unwrap();
            // constants are left out of the basis
            let kp = pbw_core::NCPoly::from_terms(kp.terms().filter(|(w, _)| !w.is_empty()).map(|(w, c)| (w.clone(), c.clone())));
            let cols: Vec<Word> = basis.elements.iter().chain(std::iter::once(&kp)).flat_map(|p| p.words().cloned()).collect();
            let row = |p: &pbw_core::NCPoly| cols.iter().map(|w| p.coefficient(w).as_rational().unwrap()).collect::<Vec<_>>();
            let m: Vec<_> = basis.elements.iter().map(row).collect();
            let mut with = m.clone();
            with.push(row(&kp));
            assert_eq!(rank(with), rank(m), "{}: printed Casimir outside the solved space", e.id);
        }
    }
}

#[test]
fn kappa_is_two_thirds_nu() {
    let (_, vals) = resolve_printed_casimir("daskaloyannis").unwrap();
    assert_eq!(vals.len(), 1);
    assert_eq!(vals[0].0, Sym::new("kappa"));
    assert_eq!(vals[0].1, &RatFunc::var(Sym::new("nu")) * &RatFunc::from_rational(q(2, 3)));
    assert!(matches!(resolve_printed_casimir("racah"), Err(Error::NoPrintedCasimir(_))));
}

/// Casimir dimensions at random points follow the recorded degree.
#[test]
fn casimir_metadata_at_points() {
    let mut g = rng(23);
    for e in entries() {
        let (top, first) = match e.casimir {
            ExpectedCasimir::Degree(d) => (d, Some(d)),
            ExpectedCasimir::NoneUpTo(d) => (d, None),
            ExpectedCasimir::NotRecorded => continue,
        };
        let (a, _) = admissible_point(e, &mut g);
        let r = e.relations();
        for n in 1..=top {
            let dim = casimirs_at(&r, n, &a).unwrap().dimension();
            match first {
                Some(d) if n >= d => assert!(dim >= 1, "{} degree {n}", e.id),
                _ => assert_eq!(dim, 0, "{} degree {n}", e.id),
            }
        }
    }
}

#[test]
fn exclusions_are_checked_on_instantiation() {
    let lam = |v: i64| -> Assignment { [(Sym::new("lambda"), q(v, 1))].into_iter().collect() };
    assert!(matches!(instantiate("form-1a-casimir", &lam(-1)), Err(Error::ExclusionViolated(_))));
    // at lambda = -2 every bracket is an anticommutator relation
    let r = instantiate("form-1a-casimir", &lam(-2)).unwrap();
    for rule in r.rules() {
        let swapped = Word::from_indices(&[rule.i, rule.j]);
        assert_eq!(rule.rhs.coefficient(&swapped), RatFunc::from_int(-1), "[{},{}]", rule.j, rule.i);
    }
}

#[test]
fn racah_is_daskaloyannis_without_nu() {
    let a: Assignment = [(Sym::new("nu"), q(0, 1))].into_iter().collect();
    let d = entry("daskaloyannis").unwrap().relations().specialize(&a).unwrap();
    let r = entry("racah").unwrap().relations();
    assert_eq!(d.brackets(), r.brackets());
}

#[test]
fn missing_brackets_commute() {
    let r = parse_algebra("generators: A B C\nrel: [B,A] = C\n").unwrap();
    assert!(r.brackets().get(&(2, 1)).is_none());
    assert_eq!(r.rule(2, 1).unwrap().rhs, pbw_core::NCPoly::monomial(Word::from_indices(&[1, 2]), RatFunc::one()));
}
