//! Positive root systems of types A, B, C, D: roots, heights, cone and lattice tests,
//! and the conversion of an inequality description into partition-polytope data.

use crate::exact_core::{rat, Rational};
use crate::{Error, Result};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Some(Family::A),
            "B" => Some(Family::B),
            "C" => Some(Family::C),
            "D" => Some(Family::D),
            _ => None,
        }
    }
}

/// Type and rank; for A, rank r lives on r+1 coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootSystemType {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = if family == Family::D { 3 } else { 2 };
        if rank < min {
            return Err(Error::InvalidRank { family: family.letter(), rank });
        }
        Ok(RootSystemType { family, rank })
    }

    /// Number of ambient coordinates.
    pub fn dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    pub fn num_roots(&self) -> usize {
        let n = self.dim();
        match self.family {
            Family::A => n * (n - 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * n - n,
        }
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: len });
        }
        Ok(())
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Shape of a root; indices are 0-based coordinates with i < j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootKind {
    Unit(usize),
    Double(usize),
    Diff(usize, usize),
    Sum(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub coords: Vec<i64>,
    pub kind: RootKind,
}

impl Root {
    pub fn new(kind: RootKind, n: usize) -> Root {
        let mut coords = vec![0; n];
        match kind {
            RootKind::Unit(i) => coords[i] = 1,
            RootKind::Double(i) => coords[i] = 2,
            RootKind::Diff(i, j) => {
                coords[i] = 1;
                coords[j] = -1;
            }
            RootKind::Sum(i, j) => {
                coords[i] = 1;
                coords[j] = 1;
            }
        }
        Root { coords, kind }
    }

    /// Recover the kind from coordinates, if they describe a root shape.
    pub fn from_coords(coords: &[i64]) -> Option<Root> {
        let nz: Vec<(usize, i64)> = coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        let kind = match nz.as_slice() {
            [(i, 1)] => RootKind::Unit(*i),
            [(i, 2)] => RootKind::Double(*i),
            [(i, 1), (j, -1)] => RootKind::Diff(*i, *j),
            [(i, 1), (j, 1)] => RootKind::Sum(*i, *j),
            _ => return None,
        };
        Some(Root { coords: coords.to_vec(), kind })
    }

    /// Coordinates touched by the root.
    pub fn indices(&self) -> Vec<usize> {
        match self.kind {
            RootKind::Unit(i) | RootKind::Double(i) => vec![i],
            RootKind::Diff(i, j) | RootKind::Sum(i, j) => vec![i, j],
        }
    }

    pub fn dot(&self, v: &[Rational]) -> Rational {
        self.coords
            .iter()
            .zip(v)
            .filter(|(c, _)| **c != 0)
            .map(|(c, x)| x * rat(*c))
            .sum()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RootKind::Unit(i) => write!(f, "e{}", i + 1),
            RootKind::Double(i) => write!(f, "2e{}", i + 1),
            RootKind::Diff(i, j) => write!(f, "e{}-e{}", i + 1, j + 1),
            RootKind::Sum(i, j) => write!(f, "e{}+e{}", i + 1, j + 1),
        }
    }
}

pub fn positive_roots(t: RootSystemType) -> Vec<Root> {
    let n = t.dim();
    let mut kinds = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            kinds.push(RootKind::Diff(i, j));
            if t.family != Family::A {
                kinds.push(RootKind::Sum(i, j));
            }
        }
        match t.family {
            Family::B => kinds.push(RootKind::Unit(i)),
            Family::C => kinds.push(RootKind::Double(i)),
            _ => {}
        }
    }
    let mut roots: Vec<Root> = kinds.into_iter().map(|k| Root::new(k, n)).collect();
    roots.sort_by(|a, b| root_cmp(t, &a.coords, &b.coords));
    roots
}

/// Height functional; C uses the B heights with 2e_i ranked as e_i.
pub fn height(t: RootSystemType, v: &[i64]) -> i64 {
    let n = t.dim() as i64;
    let w: Vec<i64> = v
        .iter()
        .map(|&c| if t.family == Family::C && c.abs() == 2 { c / 2 } else { c })
        .collect();
    let top = match t.family {
        Family::A | Family::D => n,
        Family::B | Family::C => n + 1,
    };
    w.iter().enumerate().map(|(i, c)| (top - 1 - i as i64) * c).sum()
}

/// Total order on roots: height, then the root with the larger coordinate vector first.
pub fn root_cmp(t: RootSystemType, a: &[i64], b: &[i64]) -> Ordering {
    height(t, a).cmp(&height(t, b)).then_with(|| b.cmp(a))
}

pub fn highest_root(t: RootSystemType) -> Root {
    let n = t.dim();
    match t.family {
        Family::A => Root::new(RootKind::Diff(0, n - 1), n),
        _ => Root::new(RootKind::Sum(0, 1), n),
    }
}

/// Real cone test (no parity).
pub fn cone_contains(t: RootSystemType, v: &[Rational]) -> Result<bool> {
    t.check_len(v.len())?;
    Ok(cone_contains_local(t.family, v))
}

/// Cone test for a system of the given family on the coordinates of `v`.
pub(crate) fn cone_contains_local(family: Family, v: &[Rational]) -> bool {
    let n = v.len();
    let mut s = Rational::zero();
    let upto = if family == Family::D { n.saturating_sub(1) } else { n };
    for x in &v[..upto] {
        s += x;
        if s.is_negative() {
            return false;
        }
    }
    match family {
        Family::A => s.is_zero(),
        Family::D if n >= 1 => !(&s + &v[n - 1]).is_negative() && !(&s - &v[n - 1]).is_negative(),
        _ => true,
    }
}

pub fn cone_contains_int(t: RootSystemType, v: &[i64]) -> Result<bool> {
    let q: Vec<Rational> = v.iter().map(|&x| rat(x)).collect();
    cone_contains(t, &q)
}

pub fn lattice_contains(t: RootSystemType, h: &[i64]) -> bool {
    let s: i64 = h.iter().sum();
    match t.family {
        Family::A => s == 0,
        Family::B => true,
        Family::C | Family::D => s % 2 == 0,
    }
}

/// Partition-polytope data (generator matrix and right-hand side).
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionPolytope {
    pub generators: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
}

/// {y >= 0, C y + lambda >= 0} becomes A = [-C | I], h = lambda.
pub fn hrep_to_partition_polytope(c: &[Vec<Rational>], lambda: &[Rational]) -> Result<PartitionPolytope> {
    let r = c.len();
    if lambda.len() != r {
        return Err(Error::DimensionMismatch { expected: r, got: lambda.len() });
    }
    let d = c.first().map(|row| row.len()).unwrap_or(0);
    let mut generators = Vec::with_capacity(r);
    for (i, row) in c.iter().enumerate() {
        if row.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: row.len() });
        }
        let mut g: Vec<Rational> = row.iter().map(|x| -x).collect();
        g.extend((0..r).map(|k| if k == i { rat(1) } else { rat(0) }));
        generators.push(g);
    }
    Ok(PartitionPolytope { generators, rhs: lambda.to_vec() })
}

/// Raw {x : Q x + b >= 0}: the first d rows become the new coordinates y, the rest
/// are rewritten in y before the standard conversion.
pub fn hrep_raw_to_partition_polytope(q: &[Vec<Rational>], b: &[Rational]) -> Result<PartitionPolytope> {
    let m = q.len();
    if b.len() != m {
        return Err(Error::DimensionMismatch { expected: m, got: b.len() });
    }
    let d = q.first().map(|row| row.len()).unwrap_or(0);
    if m < d {
        return Err(Error::SingularBasisBlock);
    }
    let inv = invert(&q[..d]).ok_or(Error::SingularBasisBlock)?;
    // x = inv (y - b_top); row i of the rest: Q_i inv y + (b_i - Q_i inv b_top)
    let mut c = Vec::new();
    let mut lambda = Vec::new();
    for i in d..m {
        let qi_inv: Vec<Rational> = (0..d)
            .map(|k| (0..d).map(|j| &q[i][j] * &inv[j][k]).sum())
            .collect();
        let shift: Rational = (0..d).map(|k| &qi_inv[k] * &b[k]).sum();
        lambda.push(&b[i] - shift);
        c.push(qi_inv);
    }
    hrep_to_partition_polytope(&c, &lambda)
}

/// Gauss-Jordan inverse of a square rational matrix.
pub(crate) fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let d = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..d).map(|k| if k == i { rat(1) } else { rat(0) }));
            r
        })
        .collect();
    for col in 0..d {
        let piv = (col..d).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..d {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[d..].to_vec()).collect())
}

/// Exact determinant by fraction-based elimination.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let d = m.len();
    let mut a = m.to_vec();
    let mut det = rat(1);
    for col in 0..d {
        let Some(piv) = (col..d).find(|&r| !a[r][col].is_zero()) else {
            return rat(0);
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..d {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &p;
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    det
}

/// Rank of a rational matrix.
pub fn matrix_rank(rows: &[Vec<Rational>]) -> usize {
    let mut a = rows.to_vec();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let p = a[rank][col].clone();
        for r in rank + 1..a.len() {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &p;
                let pivot_row = a[rank].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(f: Family, r: usize) -> RootSystemType {
        RootSystemType::new(f, r).unwrap()
    }

    #[test]
    fn root_counts() {
        assert_eq!(positive_roots(ty(Family::A, 2)).len(), 3);
        assert_eq!(positive_roots(ty(Family::B, 2)).len(), 4);
        assert_eq!(positive_roots(ty(Family::D, 3)).len(), 6);
        for f in [Family::A, Family::B, Family::C, Family::D] {
            for r in 3..6 {
                let t = ty(f, r);
                assert_eq!(positive_roots(t).len(), t.num_roots());
            }
        }
    }

    #[test]
    fn a3_order_matches_height_listing() {
        let names: Vec<String> = positive_roots(ty(Family::A, 3)).iter().map(|r| r.to_string()).collect();
        assert_eq!(names, ["e1-e2", "e2-e3", "e3-e4", "e1-e3", "e2-e4", "e1-e4"]);
    }

    #[test]
    fn highest_root_is_maximum() {
        for f in [Family::A, Family::B, Family::C, Family::D] {
            for r in 3..7 {
                let t = ty(f, r);
                let roots = positive_roots(t);
                assert_eq!(roots.last().unwrap(), &highest_root(t), "{t}");
            }
        }
        assert_eq!(highest_root(ty(Family::A, 3)).coords, vec![1, 0, 0, -1]);
        assert_eq!(highest_root(ty(Family::B, 3)).coords, vec![1, 1, 0]);
        assert_eq!(highest_root(ty(Family::D, 4)).coords, vec![1, 1, 0, 0]);
    }

    #[test]
    fn cone_and_lattice() {
        let q = |v: &[i64]| v.iter().map(|&x| rat(x)).collect::<Vec<_>>();
        assert!(cone_contains(ty(Family::A, 3), &q(&[1, 0, 0, -1])).unwrap());
        assert!(!cone_contains(ty(Family::B, 2), &q(&[1, -2])).unwrap());
        assert!(cone_contains(ty(Family::D, 3), &q(&[1, 1, -1])).unwrap());
        assert_eq!(
            cone_contains(ty(Family::B, 2), &q(&[1])),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        );
        assert!(lattice_contains(ty(Family::A, 2), &[1, 0, -1]));
        assert!(!lattice_contains(ty(Family::A, 2), &[1, 1, -1]));
        assert!(lattice_contains(ty(Family::C, 2), &[1, 1]));
        assert!(!lattice_contains(ty(Family::D, 3), &[1, 1, 1]));
    }

    #[test]
    fn hrep_examples() {
        let q = |v: &[i64]| v.iter().map(|&x| rat(x)).collect::<Vec<_>>();
        let p = hrep_to_partition_polytope(&[q(&[1, 1]), q(&[-2, -1])], &q(&[-1, 3])).unwrap();
        assert_eq!(p.generators, vec![q(&[-1, -1, 1, 0]), q(&[2, 1, 0, 1])]);
        assert_eq!(p.rhs, q(&[-1, 3]));
        let p = hrep_to_partition_polytope(&[q(&[-1])], &q(&[1])).unwrap();
        assert_eq!(p.generators, vec![q(&[1, 1])]);
        let p = hrep_to_partition_polytope(&[q(&[-1, -1])], &q(&[1])).unwrap();
        assert_eq!(p.generators, vec![q(&[1, 1, 1])]);
        // raw form of the 2-simplex with the coordinate rows first
        let p = hrep_raw_to_partition_polytope(&[q(&[1, 0]), q(&[0, 1]), q(&[-1, -1])], &q(&[0, 0, 1])).unwrap();
        assert_eq!(p.generators, vec![q(&[1, 1, 1])]);
        assert_eq!(p.rhs, q(&[1]));
        assert_eq!(
            hrep_raw_to_partition_polytope(&[q(&[1, 1]), q(&[2, 2]), q(&[0, 1])], &q(&[0, 0, 1])),
            Err(Error::SingularBasisBlock)
        );
    }
}
