mod common;

use assoc_core::families::{symmetric_action, gamma_action, Family, FamilyAlgebra, GammaTuple, Permutation};
use assoc_core::operadic::*;
use assoc_core::quotient::{TableCache, TableProvider};
use assoc_core::series::TruncatedSeries;
use common::{random_in, rng};
use rand::seq::SliceRandom;
use rand::Rng;

const DEG: u32 = 3;

fn assert_equal_mod(tables: &TableCache, a: &TruncatedSeries, b: &TruncatedSeries) {
    let table = tables.table(a.alphabet().family(), a.maxdeg()).unwrap();
    if let Some((d, r)) = table.first_failure(a, b).unwrap() {
        panic!("differ in weight {d}: {r}");
    }
}

#[test]
fn insertion_is_functorial() {
    let mut r = rng(1);
    let x = random_in(Family::Dk(3), DEG, &mut r);
    let fs = PartialMap::all(Pointing::Single, 3, 3);
    let gs = PartialMap::all(Pointing::Single, 4, 3);
    for _ in 0..40 {
        let f = fs.choose(&mut r).unwrap();
        let g = gs.choose(&mut r).unwrap();
        let lhs = insertion_coproduct(g, &insertion_coproduct(f, &x).unwrap()).unwrap();
        let rhs = insertion_coproduct(&f.after(g).unwrap(), &x).unwrap();
        assert_eq!(lhs, rhs, "{f} then {g}");
    }

    let order = 2;
    let y = random_in(Family::CyclotomicDk { n: 2, order }, DEG, &mut r);
    let fs = PartialMap::all(Pointing::Double, 2, 2);
    let gs = PartialMap::all(Pointing::Double, 3, 2);
    for _ in 0..40 {
        let f = fs.choose(&mut r).unwrap();
        let g = gs.choose(&mut r).unwrap();
        let lhs = insertion_coproduct_cyclotomic(g, &insertion_coproduct_cyclotomic(f, &y, order).unwrap(), order).unwrap();
        let rhs = insertion_coproduct_cyclotomic(&f.after(g).unwrap(), &y, order).unwrap();
        assert_eq!(lhs, rhs, "{f} then {g}");
    }

    // mixed after doubly pointed, and singly pointed after mixed
    let z = random_in(Family::Dk(2), DEG, &mut r);
    let ms = PartialMap::all(Pointing::Mixed, 2, 2);
    let bs = PartialMap::all(Pointing::Double, 3, 2);
    let ss = PartialMap::all(Pointing::Single, 2, 2);
    for _ in 0..30 {
        let f = ms.choose(&mut r).unwrap();
        let g = bs.choose(&mut r).unwrap();
        let lhs = insertion_coproduct_cyclotomic(g, &insertion_coproduct_cyclotomic(f, &z, order).unwrap(), order).unwrap();
        assert_eq!(lhs, insertion_coproduct_cyclotomic(&f.after(g).unwrap(), &z, order).unwrap());
        let s = ss.choose(&mut r).unwrap();
        let lhs = insertion_coproduct_cyclotomic(f, &insertion_coproduct(s, &z).unwrap(), order).unwrap();
        assert_eq!(lhs, insertion_coproduct_cyclotomic(&s.after(f).unwrap(), &z, order).unwrap());
    }
}

#[test]
fn insertion_respects_relations() {
    // images of relations lie in the ideal of the target
    let tables = TableCache::default();
    for rel in Family::Dk(4).relations().unwrap() {
        let rel = rel.extend_to(DEG).unwrap();
        for f in PartialMap::all(Pointing::Single, 3, 4).into_iter().step_by(7) {
            let img = insertion_coproduct(&f, &rel).unwrap();
            assert!(tables.table(&Family::Dk(3), DEG).unwrap().reduce(&img).unwrap().is_zero(), "{f}");
        }
    }
    let order = 2;
    for rel in (Family::CyclotomicDk { n: 2, order }).relations().unwrap() {
        let rel = rel.extend_to(DEG).unwrap();
        for f in PartialMap::all(Pointing::Double, 3, 2) {
            let img = insertion_coproduct_cyclotomic(&f, &rel, order).unwrap();
            let table = tables.table(&Family::CyclotomicDk { n: 3, order }, DEG).unwrap();
            assert!(table.reduce(&img).unwrap().is_zero(), "{f}");
        }
    }
}

#[test]
fn five_case_table() {
    let tables = TableCache::default();
    let (n, m) = (3, 2);
    let host = FamilyAlgebra::new(Family::Dk(n), 2).unwrap();
    let guest_one = TruncatedSeries::one(FamilyAlgebra::new(Family::Dk(m), 2).unwrap().context());
    let target = FamilyAlgebra::new(Family::Dk(n + m - 1), 2).unwrap();
    let t = |i, j| target.t(i, j).unwrap();
    let sum = |items: Vec<TruncatedSeries>| {
        items.into_iter().fold(TruncatedSeries::zero(target.context()), |a, b| a.add(&b).unwrap())
    };
    for p in 1..=n {
        for i in 1..=n {
            for j in i + 1..=n {
                let expected = if p < i {
                    t(i + m - 1, j + m - 1)
                } else if p == i {
                    sum((i..i + m).map(|k| t(k, j + m - 1)).collect())
                } else if p < j {
                    t(i, j + m - 1)
                } else if p == j {
                    sum((j..j + m).map(|k| t(i, k)).collect())
                } else {
                    t(i, j)
                };
                let got = operad_compose(&tables, p, &host.t(i, j).unwrap(), &guest_one).unwrap();
                assert_eq!(got, expected, "p={p} t[{i},{j}]");
            }
        }
    }
}

#[test]
fn operad_axioms() {
    let tables = TableCache::default();
    let mut r = rng(2);
    let a = random_in(Family::Dk(3), DEG, &mut r);
    let b = random_in(Family::Dk(2), DEG, &mut r);
    let c = random_in(Family::Dk(2), DEG, &mut r);
    let one = TruncatedSeries::one(FamilyAlgebra::new(Family::Dk(1), DEG).unwrap().context());
    let nf = |x: &TruncatedSeries| tables.table(x.alphabet().family(), DEG).unwrap().reduce(x).unwrap();
    let m = 2;
    for i in 1..=3 {
        // sequential
        for j in 1..=2 {
            let lhs = operad_compose(&tables, i + j - 1, &operad_compose(&tables, i, &a, &b).unwrap(), &c).unwrap();
            let rhs = operad_compose(&tables, i, &a, &operad_compose(&tables, j, &b, &c).unwrap()).unwrap();
            assert_equal_mod(&tables, &lhs, &rhs);
        }
        // parallel
        for j in i + 1..=3 {
            let lhs = operad_compose(&tables, j + m - 1, &operad_compose(&tables, i, &a, &b).unwrap(), &c).unwrap();
            let rhs = operad_compose(&tables, i, &operad_compose(&tables, j, &a, &c).unwrap(), &b).unwrap();
            assert_equal_mod(&tables, &lhs, &rhs);
        }
        assert_eq!(operad_compose(&tables, i, &a, &one).unwrap(), nf(&a));
    }
    assert_eq!(operad_compose(&tables, 1, &one, &a).unwrap(), nf(&a));
}

#[test]
fn operad_equivariance() {
    let tables = TableCache::default();
    let mut r = rng(3);
    let a = random_in(Family::Dk(3), DEG, &mut r);
    let b = random_in(Family::Dk(2), DEG, &mut r);
    for sigma in Permutation::all(3) {
        for tau in Permutation::all(2) {
            for p in 1..=3 {
                let lhs = operad_compose(
                    &tables,
                    sigma.apply(p),
                    &symmetric_action(&sigma, &a).unwrap(),
                    &symmetric_action(&tau, &b).unwrap(),
                )
                .unwrap();
                let block = block_permutation(&sigma, p, &tau).unwrap();
                let rhs = symmetric_action(&block, &operad_compose(&tables, p, &a, &b).unwrap()).unwrap();
                assert_equal_mod(&tables, &lhs, &rhs);
            }
        }
    }
}

#[test]
fn moperad_axioms() {
    let tables = TableCache::default();
    let mut r = rng(4);
    let order = 2;
    let g = |n| Family::CyclotomicDk { n, order };
    let a = random_in(g(2), DEG, &mut r);
    let b = random_in(g(1), DEG, &mut r);
    let c = random_in(g(1), DEG, &mut r);
    let p2 = random_in(Family::Dk(2), DEG, &mut r);
    let q2 = random_in(Family::Dk(2), DEG, &mut r);
    let nf = |x: &TruncatedSeries| tables.table(x.alphabet().family(), DEG).unwrap().reduce(x).unwrap();

    // monoid associativity and unit
    let lhs = moperad_compose_monoid(&tables, &moperad_compose_monoid(&tables, &a, &b).unwrap(), &c).unwrap();
    let rhs = moperad_compose_monoid(&tables, &a, &moperad_compose_monoid(&tables, &b, &c).unwrap()).unwrap();
    assert_equal_mod(&tables, &lhs, &rhs);
    let unit = TruncatedSeries::one(FamilyAlgebra::new(g(0), DEG).unwrap().context());
    assert_eq!(moperad_compose_monoid(&tables, &a, &unit).unwrap(), nf(&a));
    assert_eq!(moperad_compose_monoid(&tables, &unit, &a).unwrap(), nf(&a));

    // module: sequential, parallel, unit
    for i in 1..=2 {
        for j in 1..=2 {
            let lhs = moperad_compose_module(&tables, i + j - 1, &moperad_compose_module(&tables, i, &a, &p2).unwrap(), &q2).unwrap();
            let rhs = moperad_compose_module(&tables, i, &a, &operad_compose(&tables, j, &p2, &q2).unwrap()).unwrap();
            assert_equal_mod(&tables, &lhs, &rhs);
        }
    }
    let lhs = moperad_compose_module(&tables, 3, &moperad_compose_module(&tables, 1, &a, &p2).unwrap(), &q2).unwrap();
    let rhs = moperad_compose_module(&tables, 1, &moperad_compose_module(&tables, 2, &a, &q2).unwrap(), &p2).unwrap();
    assert_equal_mod(&tables, &lhs, &rhs);
    let one = TruncatedSeries::one(FamilyAlgebra::new(Family::Dk(1), DEG).unwrap().context());
    assert_eq!(moperad_compose_module(&tables, 2, &a, &one).unwrap(), nf(&a));

    // compatibility of the two structures; b has arity m = 1
    let m = 1;
    let ab = moperad_compose_monoid(&tables, &a, &b).unwrap();
    let lhs = moperad_compose_module(&tables, 1, &ab, &p2).unwrap();
    let rhs = moperad_compose_monoid(&tables, &a, &moperad_compose_module(&tables, 1, &b, &p2).unwrap()).unwrap();
    assert_equal_mod(&tables, &lhs, &rhs);
    for i in 1..=2 {
        let lhs = moperad_compose_module(&tables, m + i, &ab, &p2).unwrap();
        let rhs = moperad_compose_monoid(&tables, &moperad_compose_module(&tables, i, &a, &p2).unwrap(), &b).unwrap();
        assert_equal_mod(&tables, &lhs, &rhs);
    }
}

#[test]
fn module_equivariance() {
    let tables = TableCache::default();
    let mut r = rng(5);
    let order = 3;
    let a = random_in(Family::CyclotomicDk { n: 2, order }, DEG, &mut r);
    let b = random_in(Family::Dk(2), DEG, &mut r);
    for p in 1..=2 {
        for sigma in Permutation::all(2) {
            for tau in Permutation::all(2) {
                let lhs = moperad_compose_module(
                    &tables,
                    sigma.apply(p),
                    &symmetric_action(&sigma, &a).unwrap(),
                    &symmetric_action(&tau, &b).unwrap(),
                )
                .unwrap();
                let block = block_permutation(&sigma, p, &tau).unwrap();
                let rhs = symmetric_action(&block, &moperad_compose_module(&tables, p, &a, &b).unwrap()).unwrap();
                assert_equal_mod(&tables, &lhs, &rhs);
            }
        }
        for _ in 0..4 {
            let values: Vec<i64> = (0..2).map(|_| r.gen_range(0..order as i64)).collect();
            let gamma = GammaTuple::new(&values, order).unwrap();
            let collapse = collapse_map(Pointing::Single, 2, 2, p);
            let spread: Vec<i64> = (1..=3).map(|k| values[collapse.apply(k).unwrap() - 1]).collect();
            let lhs = moperad_compose_module(&tables, p, &gamma_action(&gamma, &a).unwrap(), &b).unwrap();
            let rhs = gamma_action(&GammaTuple::new(&spread, order).unwrap(), &moperad_compose_module(&tables, p, &a, &b).unwrap()).unwrap();
            assert_equal_mod(&tables, &lhs, &rhs);
        }
    }
    // monoid map: Γ^n × Γ^m acts blockwise, guest first
    let c = random_in(Family::CyclotomicDk { n: 1, order }, DEG, &mut r);
    for _ in 0..4 {
        let gv: Vec<i64> = (0..2).map(|_| r.gen_range(0..order as i64)).collect();
        let dv: Vec<i64> = vec![r.gen_range(0..order as i64)];
        let lhs = moperad_compose_monoid(
            &tables,
            &gamma_action(&GammaTuple::new(&gv, order).unwrap(), &a).unwrap(),
            &gamma_action(&GammaTuple::new(&dv, order).unwrap(), &c).unwrap(),
        )
        .unwrap();
        let joint: Vec<i64> = dv.iter().chain(gv.iter()).copied().collect();
        let rhs = gamma_action(&GammaTuple::new(&joint, order).unwrap(), &moperad_compose_monoid(&tables, &a, &c).unwrap()).unwrap();
        assert_equal_mod(&tables, &lhs, &rhs);
    }
}

/// Host and guest images commute in the target, generator by generator.
#[test]
fn images_commute() {
    let tables = TableCache::default();
    let check = |hosts: Vec<TruncatedSeries>, guests: Vec<TruncatedSeries>, compose: &dyn Fn(&TruncatedSeries, &TruncatedSeries) -> TruncatedSeries, host_one: &TruncatedSeries, guest_one: &TruncatedSeries| {
        for h in &hosts {
            let hi = compose(h, guest_one);
            for g in &guests {
                let gi = compose(host_one, g);
                let table = tables.table(hi.alphabet().family(), hi.maxdeg()).unwrap();
                assert!(table.reduce(&hi.bracket(&gi).unwrap()).unwrap().is_zero());
            }
        }
    };
    let deg = 4;
    let t = |n| FamilyAlgebra::new(Family::Dk(n), deg).unwrap();
    let one = |a: &FamilyAlgebra| TruncatedSeries::one(a.context());
    let (t3, t2) = (t(3), t(2));
    for p in 1..=3 {
        check(t3.generators(), t2.generators(), &|h, g| operad_compose(&tables, p, h, g).unwrap(), &one(&t3), &one(&t2));
    }
    let gm = |n| FamilyAlgebra::new(Family::CyclotomicDk { n, order: 2 }, deg).unwrap();
    let (g2, g1) = (gm(2), gm(1));
    for p in 1..=2 {
        check(g2.generators(), t2.generators(), &|h, g| moperad_compose_module(&tables, p, h, g).unwrap(), &one(&g2), &one(&t2));
    }
    check(g2.generators(), g1.generators(), &|h, g| moperad_compose_monoid(&tables, h, g).unwrap(), &one(&g2), &one(&g1));
    let e = FamilyAlgebra::new(Family::ReducedElliptic(2), deg).unwrap();
    for p in 1..=2 {
        check(e.generators(), t2.generators(), &|h, g| elliptic_module_compose(&tables, p, h, g).unwrap(), &one(&e), &one(&t2));
    }
}

#[test]
fn elliptic_module_axioms() {
    let tables = TableCache::default();
    let mut r = rng(6);
    for family in [Family::Elliptic(2), Family::ReducedElliptic(2)] {
        let a = random_in(family.clone(), DEG, &mut r);
        let b = random_in(Family::Dk(2), DEG, &mut r);
        let c = random_in(Family::Dk(2), DEG, &mut r);
        for i in 1..=2 {
            for j in 1..=2 {
                let lhs = elliptic_module_compose(&tables, i + j - 1, &elliptic_module_compose(&tables, i, &a, &b).unwrap(), &c).unwrap();
                let rhs = elliptic_module_compose(&tables, i, &a, &operad_compose(&tables, j, &b, &c).unwrap()).unwrap();
                assert_equal_mod(&tables, &lhs, &rhs);
            }
        }
        let lhs = elliptic_module_compose(&tables, 3, &elliptic_module_compose(&tables, 1, &a, &b).unwrap(), &c).unwrap();
        let rhs = elliptic_module_compose(&tables, 1, &elliptic_module_compose(&tables, 2, &a, &c).unwrap(), &b).unwrap();
        assert_equal_mod(&tables, &lhs, &rhs);
        for p in 1..=2 {
            for sigma in Permutation::all(2) {
                for tau in Permutation::all(2) {
                    let lhs = elliptic_module_compose(
                        &tables,
                        sigma.apply(p),
                        &symmetric_action(&sigma, &a).unwrap(),
                        &symmetric_action(&tau, &b).unwrap(),
                    )
                    .unwrap();
                    let block = block_permutation(&sigma, p, &tau).unwrap();
                    let rhs = symmetric_action(&block, &elliptic_module_compose(&tables, p, &a, &b).unwrap()).unwrap();
                    assert_equal_mod(&tables, &lhs, &rhs);
                }
            }
        }
    }
}
