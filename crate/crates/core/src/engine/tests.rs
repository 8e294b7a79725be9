use super::*;
use crate::gideal::{injector, is_pure};
use crate::poly::parse_univariate;

fn uni(s: &str) -> UniPoly {
    parse_univariate(s).unwrap()
}

fn run(s: &str) -> GaloisResult {
    galois_group(&uni(s), &GaloisConfig::default()).unwrap()
}

#[test]
fn quadratic_and_cubics() {
    assert_eq!(run("x^2 - 2").order(), 2);
    assert_eq!(run("x^2 - 3*x + 2").order(), 1);
    let r = run("x^3 - 2");
    assert_eq!(r.order(), 6);
    assert_eq!(r.triangular.init_degrees(), &[3, 2, 1]);
    let r = run("x^3 - 3*x + 1");
    assert_eq!(r.order(), 3);
    assert_eq!(r.label.unwrap().name, "A3");
    assert!(r.oracles.discriminant_square);
    assert_eq!(r.relations_ideal.dim(), 3);
}

#[test]
fn step_examples() {
    let s3 = PermGroup::symmetric(3);
    let a3 = PermGroup::alternating(3);
    let cfg = GaloisConfig::default();
    for (f, descends) in [("x^3 - 2", false), ("x^3 - 3*x + 1", true)] {
        let f = uni(f);
        let node = IdealChainNode {
            algebra: QuotientAlgebra::symmetric_ideal(&f).unwrap(),
            known_supergroup: s3.clone(),
            invariant_used: None,
            factor_used: None,
        };
        let mut roots = complex_roots(&f, 64).unwrap();
        match descend_step(&node, &a3, &mut roots, &cfg).unwrap() {
            StepOutcome::Descended(child, attempt) => {
                assert!(descends);
                assert_eq!(child.algebra.dim(), 3);
                assert_eq!(attempt.resolvent.resolvent, uni("x^2 - 81"));
            }
            StepOutcome::NoDescent(a) => {
                assert!(!descends);
                assert_eq!(a[0].resolvent.resolvent, uni("x^2 + 108"));
            }
        }
    }
}

#[test]
fn x4_plus_1_step_selects_identity_coset() {
    let f = uni("x^4 + 1");
    let s4 = PermGroup::symmetric(4);
    let h = s4
        .stabilizer(&crate::poly::parse_multivariate("x1*x2 + x3*x4", 4).unwrap())
        .unwrap();
    let node = IdealChainNode {
        algebra: QuotientAlgebra::symmetric_ideal(&f).unwrap(),
        known_supergroup: s4,
        invariant_used: None,
        factor_used: None,
    };
    let mut roots = complex_roots(&f, 64).unwrap();
    let StepOutcome::Descended(child, attempt) =
        descend_step(&node, &h, &mut roots, &GaloisConfig::default()).unwrap()
    else {
        panic!("the resolvent x^3 - 4x has rational roots");
    };
    assert_eq!(attempt.resolvent.resolvent, uni("x^3 - 4*x"));
    assert_eq!(child.algebra.dim(), 8);
    // In the canonical root order Θ(α) = 2.
    assert_eq!(child.factor_used, Some(uni("x - 2")));
    assert_eq!(child.known_supergroup, h);
}

#[test]
fn quartics() {
    let r = run("x^4 + 1");
    assert_eq!(r.order(), 4);
    assert_eq!(r.label.unwrap().name, "V4");
    assert_eq!(r.triangular.init_degrees(), &[4, 1, 1, 1]);
    for t in r.oracles.dedekind.cycle_types() {
        assert!(t == vec![1, 1, 1, 1] || t == vec![2, 2]);
    }
    let r = run("x^4 - 2");
    assert_eq!(r.order(), 8);
    let r = run("x^4 + x^3 + x^2 + x + 1");
    assert_eq!(r.order(), 4);
    assert!(r.group.has_cycle_type(&[4]));
    let r = run("x^4 - 2*x^3 + 2*x^2 + 2");
    assert_eq!(r.relations_ideal.dim(), r.order());
}

#[test]
fn result_invariants() {
    for s in ["x^3 - 3*x + 1", "x^4 - 2", "x^4 - 5*x^2 + 6"] {
        let r = run(s);
        let n = r.f.degree();
        assert_eq!((1..=n).product::<usize>() % r.order(), 0);
        let p = is_pure(&r.relations_ideal).unwrap();
        assert!(p.pure);
        assert_eq!(
            injector(&r.relations_ideal, &r.relations_ideal).unwrap(),
            r.group.as_set()
        );
        let dims: Vec<usize> = r.chain.iter().map(|c| c.algebra.dim()).collect();
        for w in dims.windows(2) {
            assert!(w[1] < w[0] && w[0] % w[1] == 0);
        }
        for sigma in r.group.elements() {
            for g in r.triangular.gens() {
                assert!(r
                    .relations_ideal
                    .member(&g.permute(sigma).unwrap())
                    .unwrap());
            }
        }
        assert_eq!(fundamental_modules(&r).unwrap(), r.triangular);
    }
}

#[test]
fn reducible_input_is_intransitive() {
    let r = run("x^4 - 5*x^2 + 6");
    assert_eq!(r.order(), 4);
    assert!(!r.group.is_transitive());
    assert!(r.label.is_none());
}

#[test]
fn rejects_bad_input() {
    let cfg = GaloisConfig::default();
    assert!(matches!(
        galois_group(&uni("x^3 - x^2"), &cfg),
        Err(Error::NotSquarefree)
    ));
    assert!(matches!(
        galois_group(&uni("x - 1"), &cfg),
        Err(Error::UnsupportedDegree(1))
    ));
    let small = GaloisConfig {
        max_degree: 3,
        ..GaloisConfig::default()
    };
    assert!(matches!(
        galois_group(&uni("x^4 + 1"), &small),
        Err(Error::UnsupportedDegree(4))
    ));
}
