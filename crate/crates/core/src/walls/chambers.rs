//! Chambers as connected pieces of the cone cut by the cones spanned by roots in
//! each wall. Regions of the full wall arrangement are found by incremental
//! splitting; neighbouring regions whose shared facet lies outside the wall's
//! root cone belong to the same chamber.

use super::fm::{feasible_point, Ineq};
use super::{admissible_walls, in_wall_cone, Wall};
use crate::exact_core::{rat, Rational};
use crate::exec::{self, Exec};
use crate::root_systems::{Family, RootSystemType};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use std::collections::HashMap;

pub const CHAMBER_RANK_LIMIT: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct ChamberEnumeration {
    pub count: usize,
    /// One interior integer point per chamber, in ambient coordinates.
    pub representatives: Vec<Vec<i64>>,
    pub adjacencies: Vec<ChamberAdjacency>,
}

/// Two chambers separated by a wall, with an integer point in the relative
/// interior of their common facet.
#[derive(Clone, Debug, PartialEq)]
pub struct ChamberAdjacency {
    pub chambers: (usize, usize),
    pub wall: Wall,
    pub facet_point: Vec<i64>,
}

struct Frame {
    t: RootSystemType,
    r: usize,
}

impl Frame {
    /// Linear form of an ambient covector in intrinsic coordinates.
    fn restrict(&self, u: &[i64]) -> Vec<Rational> {
        match self.t.family {
            Family::A => {
                let last = u[self.r];
                (0..self.r).map(|i| rat(u[i] - last)).collect()
            }
            _ => u.iter().map(|&x| rat(x)).collect(),
        }
    }

    fn ambient(&self, x: &[Rational]) -> Vec<Rational> {
        let mut v = x.to_vec();
        if self.t.family == Family::A {
            let s: Rational = x.iter().sum();
            v.push(-s);
        }
        v
    }

    fn facets(&self) -> Vec<Vec<i64>> {
        let n = self.t.dim();
        let prefix = |k: usize| (0..n).map(|i| i64::from(i < k)).collect::<Vec<i64>>();
        match self.t.family {
            Family::A => (1..n).map(prefix).collect(),
            Family::B | Family::C => (1..=n).map(prefix).collect(),
            Family::D => {
                let mut f: Vec<Vec<i64>> = (1..n - 1).map(prefix).collect();
                let mut plus = vec![1; n];
                f.push(plus.clone());
                plus[n - 1] = -1;
                f.push(plus);
                f
            }
        }
    }
}

fn integer_point(v: &[Rational]) -> Vec<i64> {
    let mut l = BigInt::from(1);
    for x in v {
        l = l.lcm(x.denom());
    }
    v.iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer().to_i64().expect("small representative"))
        .collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn enumerate_chambers(t: RootSystemType) -> Result<ChamberEnumeration> {
    enumerate_chambers_with_limit(t, CHAMBER_RANK_LIMIT)
}

pub fn enumerate_chambers_with_limit(t: RootSystemType, max_rank: usize) -> Result<ChamberEnumeration> {
    if t.rank > max_rank {
        return Err(Error::RankTooLarge { max: max_rank });
    }
    let frame = Frame { t, r: t.rank };
    let walls = admissible_walls(t);
    let n = t.dim();
    let forms: Vec<Vec<Rational>> = walls.iter().map(|w| frame.restrict(&w.form(n))).collect();
    let base: Vec<Ineq> = frame
        .facets()
        .iter()
        .map(|u| Ineq::new(frame.restrict(u), rat(1)))
        .collect();
    let side = |signs: &[i8], extra: Option<Ineq>| -> Vec<Ineq> {
        let mut rows = base.clone();
        for (j, &s) in signs.iter().enumerate() {
            if s != 0 {
                rows.push(Ineq::new(forms[j].iter().map(|x| x * rat(s as i64)).collect(), rat(1)));
            }
        }
        rows.extend(extra);
        rows
    };

    let start = feasible_point(&base, frame.r).expect("cone interior is nonempty");
    let mut regions: Vec<(Vec<i8>, Vec<Rational>)> = vec![(vec![0; walls.len()], start)];
    for (wi, form) in forms.iter().enumerate() {
        let split = exec::map(Exec::Parallel, &regions, |(signs, rep)| {
            let val = dot(form, rep);
            let mut out = Vec::new();
            for s in [1i8, -1] {
                let same_side = (s > 0 && val.is_positive()) || (s < 0 && val.is_negative());
                let point = if same_side {
                    Some(rep.clone())
                } else {
                    let cut = Ineq::new(form.iter().map(|x| x * rat(s as i64)).collect(), rat(1));
                    feasible_point(&side(signs, Some(cut)), frame.r)
                };
                if let Some(p) = point {
                    let mut sg = signs.clone();
                    sg[wi] = s;
                    out.push((sg, p));
                }
            }
            out
        });
        regions = split.into_iter().flatten().collect();
    }

    let index: HashMap<Vec<i8>, usize> = regions.iter().enumerate().map(|(i, (s, _))| (s.clone(), i)).collect();
    // facets between regions that differ in exactly one wall
    let pairs = exec::map(Exec::Parallel, &(0..regions.len()).collect::<Vec<_>>(), |&i| {
        let signs = &regions[i].0;
        let mut found = Vec::new();
        for (wi, form) in forms.iter().enumerate() {
            let mut other = signs.clone();
            other[wi] = -other[wi];
            let Some(&j) = index.get(&other) else { continue };
            if j < i {
                continue;
            }
            let mut rest = signs.clone();
            rest[wi] = 0;
            let mut rows = side(&rest, None);
            rows.push(Ineq::new(form.clone(), rat(0)));
            rows.push(Ineq::new(form.iter().map(|x| -x).collect(), rat(0)));
            let p = feasible_point(&rows, frame.r).expect("regions differing in one wall share a facet");
            let p = frame.ambient(&p);
            let real = in_wall_cone(t, &walls[wi], &p);
            found.push((i, j, wi, p, real));
        }
        found
    });

    let mut uf: Vec<usize> = (0..regions.len()).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        let mut y = x;
        while uf[y] != r {
            let next = uf[y];
            uf[y] = r;
            y = next;
        }
        r
    }
    let pairs: Vec<_> = pairs.into_iter().flatten().collect();
    for (i, j, _, _, real) in &pairs {
        if !real {
            let (a, b) = (find(&mut uf, *i), find(&mut uf, *j));
            if a != b {
                uf[a.max(b)] = a.min(b);
            }
        }
    }
    let mut chamber_of_root: HashMap<usize, usize> = HashMap::new();
    let mut representatives = Vec::new();
    let mut chamber_of = vec![0; regions.len()];
    for i in 0..regions.len() {
        let root = find(&mut uf, i);
        let c = *chamber_of_root.entry(root).or_insert_with(|| {
            representatives.push(integer_point(&frame.ambient(&regions[i].1)));
            representatives.len() - 1
        });
        chamber_of[i] = c;
    }
    let mut adjacencies: Vec<ChamberAdjacency> = Vec::new();
    for (i, j, wi, p, real) in pairs {
        if !real {
            continue;
        }
        let (a, b) = (chamber_of[i], chamber_of[j]);
        let key = (a.min(b), a.max(b));
        if adjacencies.iter().any(|adj| adj.chambers == key && adj.wall == walls[wi]) {
            continue;
        }
        adjacencies.push(ChamberAdjacency { chambers: key, wall: walls[wi].clone(), facet_point: integer_point(&p) });
    }
    Ok(ChamberEnumeration { count: representatives.len(), representatives, adjacencies })
}
