use vpf_core::counting::{count_points, ehrhart, parametric_count, volume, CountStatus};
use vpf_core::exact_core::{rat, ratio, BigInt, Rational};
use vpf_core::oracle::brute_count;
use vpf_core::root_systems::{Family, RootSystemType};

fn ty(f: Family, r: usize) -> RootSystemType {
    RootSystemType::new(f, r).unwrap()
}

fn count(t: RootSystemType, h: &[i64]) -> BigInt {
    count_points(t, h).unwrap().value
}

#[test]
fn small_counts() {
    assert_eq!(count(ty(Family::B, 2), &[1, 1]), BigInt::from(3));
    assert_eq!(count(ty(Family::A, 2), &[1, 0, -1]), BigInt::from(2));
    assert_eq!(count(ty(Family::B, 2), &[2, 0]), BigInt::from(4));
    assert_eq!(count(ty(Family::B, 2), &[3, 1]), BigInt::from(8));
    let r = count_points(ty(Family::A, 2), &[1, 1, -1]).unwrap();
    assert_eq!(r.status, CountStatus::LatticeViolation);
    let r = count_points(ty(Family::B, 2), &[-1, 0]).unwrap();
    assert_eq!(r.status, CountStatus::OutsideCone);
    assert_eq!(r.value, BigInt::from(0));
}

#[test]
fn matches_oracle_on_a_grid() {
    let cases: Vec<(RootSystemType, Vec<Vec<i64>>)> = vec![
        (ty(Family::A, 2), vec![vec![3, 1, -4], vec![2, 2, -4], vec![5, -2, -3], vec![0, 0, 0]]),
        (ty(Family::A, 3), vec![vec![3, 1, -2, -2], vec![4, 0, 1, -5], vec![2, 2, 2, -6]]),
        (ty(Family::B, 2), vec![vec![5, 3], vec![4, -1], vec![2, 2], vec![6, 0]]),
        (ty(Family::B, 3), vec![vec![3, 2, 1], vec![4, 1, -2], vec![2, 0, 0]]),
        (ty(Family::C, 2), vec![vec![3, 1], vec![4, 2], vec![3, -1], vec![2, 0]]),
        (ty(Family::C, 3), vec![vec![3, 2, 1], vec![4, 1, -1], vec![2, 2, 0]]),
        (ty(Family::D, 3), vec![vec![3, 2, 1], vec![4, 1, -1], vec![2, 0, 0]]),
        (ty(Family::D, 4), vec![vec![3, 2, 1, 0], vec![2, 1, 1, -2]]),
    ];
    for (t, hs) in cases {
        for h in hs {
            let expect = brute_count(t, &h).unwrap();
            assert_eq!(count(t, &h), expect, "{t} {h:?}");
        }
    }
}

#[test]
fn volumes() {
    let b2 = ty(Family::B, 2);
    let v = |x: &[i64]| volume(b2, &x.iter().map(|&a| rat(a)).collect::<Vec<Rational>>()).unwrap();
    assert_eq!(v(&[2, 2]), rat(2));
    assert_eq!(v(&[3, 1]), ratio(7, 2));
    assert_eq!(v(&[1, 0]), ratio(1, 4));
}

#[test]
fn quasipolynomials() {
    let b2 = ty(Family::B, 2);
    let c1 = parametric_count(b2, &[rat(1), rat(3)]).unwrap();
    assert_eq!(c1.to_string(), "1/2*h1^2 + 3/2*h1 + 1");
    let c2 = parametric_count(b2, &[rat(3), rat(1)]).unwrap();
    assert_eq!(c2.terms.len(), 2);
    for h in [[3, 1], [5, 2], [4, 0], [7, 3]] {
        assert_eq!(c2.eval(&h), Rational::from(count(b2, &h)));
    }
    let a3 = parametric_count(ty(Family::A, 2), &[rat(2), rat(1), rat(-3)]).unwrap();
    assert_eq!(a3.to_string(), "h1 + 1");
    let e = ehrhart(b2, &[1, 1]).unwrap();
    assert_eq!(e.to_string(), "1/2*k^2 + 3/2*k + 1");
}
