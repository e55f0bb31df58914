//! Admissible hyperplanes, the wall test used by the nested-set recursion,
//! chamber signatures and small-rank chamber enumeration.

mod chambers;
pub mod fm;

pub use chambers::{enumerate_chambers, enumerate_chambers_with_limit, ChamberAdjacency, ChamberEnumeration, CHAMBER_RANK_LIMIT};

use crate::exact_core::{rat, Rational};
use crate::mpns::Block;
use crate::root_systems::{cone_contains_local, Family, RootSystemType};
use crate::{Error, Result};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// Hyperplane with form sum over `plus` minus sum over `minus`; positions are
/// coordinates for a top-level wall, or local block positions inside the recursion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Wall {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
}

impl Wall {
    pub fn form(&self, n: usize) -> Vec<i64> {
        let mut u = vec![0; n];
        for &i in &self.plus {
            u[i] = 1;
        }
        for &i in &self.minus {
            u[i] = -1;
        }
        u
    }

    pub fn eval(&self, v: &[Rational]) -> Rational {
        let p: Rational = self.plus.iter().map(|&i| &v[i]).sum();
        let m: Rational = self.minus.iter().map(|&i| &v[i]).sum();
        p - m
    }

    fn negated(&self) -> Wall {
        Wall { plus: self.minus.clone(), minus: self.plus.clone() }
    }
}

impl std::fmt::Display for Wall {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let p: Vec<String> = self.plus.iter().map(|i| (i + 1).to_string()).collect();
        let m: Vec<String> = self.minus.iter().map(|i| (i + 1).to_string()).collect();
        if m.is_empty() {
            write!(f, "[{}]", p.join(","))
        } else {
            write!(f, "[{}|{}]", p.join(","), m.join(","))
        }
    }
}

/// Local walls of a block, canonical up to sign (first nonzero position in `plus`).
pub(crate) fn local_walls(block: &Block) -> Vec<Wall> {
    match block {
        Block::A(list) => {
            let k = list.len();
            (0u64..1 << (k - 1))
                .map(|mask| {
                    let mut plus = vec![0];
                    plus.extend((1..k).filter(|&p| mask >> (p - 1) & 1 == 1));
                    Wall { plus, minus: vec![] }
                })
                .filter(|w| w.plus.len() < k)
                .collect()
        }
        Block::Ortho { family, indices } => {
            let k = indices.len();
            let mut out = Vec::new();
            let total = 3u64.pow(k as u32);
            for code in 1..total {
                let mut c = code;
                let (mut plus, mut minus) = (vec![], vec![]);
                for p in 0..k {
                    match c % 3 {
                        1 => plus.push(p),
                        2 => minus.push(p),
                        _ => {}
                    }
                    c /= 3;
                }
                let first = plus.iter().chain(&minus).min().copied();
                if first.is_none_or(|f| !plus.contains(&f)) {
                    continue;
                }
                if *family == Family::D && k - plus.len() - minus.len() == 1 {
                    continue;
                }
                out.push(Wall { plus, minus });
            }
            out.sort();
            out
        }
    }
}

pub fn admissible_walls(t: RootSystemType) -> Vec<Wall> {
    local_walls(&Block::top(t))
}

/// Result of an accepted wall: the projection and the irreducible pieces it splits into.
#[derive(Clone, Debug, PartialEq)]
pub struct WallSplit {
    pub wall: Wall,
    pub projection: Vec<Rational>,
    /// Blocks of size at least one root, each with its local coordinates.
    pub components: Vec<(Block, Vec<Rational>)>,
}

fn theta_local(block: &Block, k: usize) -> Vec<Rational> {
    let mut th = vec![rat(0); k];
    match block {
        Block::A(_) => {
            th[0] = rat(1);
            th[k - 1] = rat(-1);
        }
        Block::Ortho { .. } => {
            th[0] = rat(1);
            th[1] = rat(1);
        }
    }
    th
}

/// Partial sums in order must stay positive; the full sum is exempt for A.
fn prefix_check(xs: &[Rational], skip_last: bool) -> Result<bool> {
    let mut s = Rational::zero();
    let upto = if skip_last { xs.len().saturating_sub(1) } else { xs.len() };
    for x in &xs[..upto] {
        s += x;
        if s.is_zero() {
            return Err(Error::NonGenericVector);
        }
        if s.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn a_component(list: Vec<(usize, i8)>, coords: Vec<Rational>, out: &mut Vec<(Block, Vec<Rational>)>) -> Result<bool> {
    if !prefix_check(&coords, true)? {
        return Ok(false);
    }
    if list.len() >= 2 {
        out.push((Block::A(list), coords));
    }
    Ok(true)
}

fn ortho_component(
    family: Family,
    indices: Vec<usize>,
    coords: Vec<Rational>,
    out: &mut Vec<(Block, Vec<Rational>)>,
) -> Result<bool> {
    match (family, indices.len()) {
        (_, 0) => Ok(true),
        (Family::D, 1) => Err(Error::InvalidInput("one-coordinate D component".into())),
        (Family::D, 2) => {
            let (a, b) = (indices[0], indices[1]);
            for (sign, val) in [(1i8, &coords[0] - &coords[1]), (-1, &coords[0] + &coords[1])] {
                if val.is_zero() {
                    return Err(Error::NonGenericVector);
                }
                if val.is_negative() {
                    return Ok(false);
                }
                out.push((Block::A(vec![(a, 1), (b, sign)]), vec![val.clone() / rat(2), -val / rat(2)]));
            }
            Ok(true)
        }
        _ => {
            if family == Family::D {
                let n = coords.len();
                if !prefix_check(&coords[..n - 1], false)? {
                    return Ok(false);
                }
                let s: Rational = coords[..n - 1].iter().sum();
                for val in [&s + &coords[n - 1], &s - &coords[n - 1]] {
                    if val.is_zero() {
                        return Err(Error::NonGenericVector);
                    }
                    if val.is_negative() {
                        return Ok(false);
                    }
                }
            } else if !prefix_check(&coords, false)? {
                return Ok(false);
            }
            debug_assert!(cone_contains_local(family, &coords));
            out.push((Block::Ortho { family, indices }, coords));
            Ok(true)
        }
    }
}

/// Wall test inside a block: the wall must not contain theta, must have v and
/// theta on the same side, and every piece of the projection must lie in its cone.
pub(crate) fn split_local(block: &Block, x: &[Rational], wall: &Wall) -> Result<Option<WallSplit>> {
    let k = x.len();
    let th = theta_local(block, k);
    let mut wall = wall.clone();
    let mut u_theta = wall.eval(&th);
    if u_theta.is_zero() {
        return Ok(None);
    }
    if u_theta.is_negative() {
        if let Block::A(_) = block {
            return Ok(None);
        }
        wall = wall.negated();
        u_theta = -u_theta;
    }
    let u_x = wall.eval(x);
    if u_x.is_zero() {
        return Err(Error::NonGenericVector);
    }
    if u_x.is_negative() {
        return Ok(None);
    }
    let s = u_x / u_theta;
    let proj: Vec<Rational> = x.iter().zip(&th).map(|(a, t)| a - &s * t).collect();
    let mut components = Vec::new();
    let ok = match block {
        Block::A(list) => {
            let p_part: Vec<usize> = wall.plus.clone();
            let q_part: Vec<usize> = (0..k).filter(|p| !wall.plus.contains(p)).collect();
            let mut ok = true;
            for part in [p_part, q_part] {
                let sub: Vec<(usize, i8)> = part.iter().map(|&p| list[p]).collect();
                let coords: Vec<Rational> = part.iter().map(|&p| proj[p].clone()).collect();
                if !a_component(sub, coords, &mut components)? {
                    ok = false;
                    break;
                }
            }
            ok
        }
        Block::Ortho { family, indices } => {
            let mut plus = wall.plus.clone();
            plus.sort();
            let mut minus = wall.minus.clone();
            minus.sort_by(|a, b| b.cmp(a));
            let mut list = Vec::new();
            let mut coords = Vec::new();
            for &p in &plus {
                list.push((indices[p], 1i8));
                coords.push(proj[p].clone());
            }
            for &p in &minus {
                list.push((indices[p], -1i8));
                coords.push(-proj[p].clone());
            }
            let rest: Vec<usize> = (0..k).filter(|p| !plus.contains(p) && !minus.contains(p)).collect();
            a_component(list, coords, &mut components)?
                && ortho_component(
                    *family,
                    rest.iter().map(|&p| indices[p]).collect(),
                    rest.iter().map(|&p| proj[p].clone()).collect(),
                    &mut components,
                )?
        }
    };
    Ok(ok.then_some(WallSplit { wall, projection: proj, components }))
}

/// Candidate walls for `split_local`, skipping assignments whose partial sums
/// over known coordinates already go negative.
pub(crate) fn pruned_candidates(block: &Block, x: &[Rational]) -> Vec<Wall> {
    let k = x.len();
    let mut out = Vec::new();
    match block {
        Block::A(_) => {
            // position 0 in P, k-1 in Q; the coordinate of either depends on the
            // projection shift, which only lowers the P sums and raises the last Q entry
            fn rec(p: usize, k: usize, x: &[Rational], plus: &mut Vec<usize>, sp: &Rational, sq: &Rational, out: &mut Vec<Wall>) {
                if p == k - 1 {
                    out.push(Wall { plus: plus.clone(), minus: vec![] });
                    return;
                }
                let np = sp + &x[p];
                if !np.is_negative() {
                    plus.push(p);
                    rec(p + 1, k, x, plus, &np, sq, out);
                    plus.pop();
                }
                let nq = sq + &x[p];
                if !nq.is_negative() {
                    rec(p + 1, k, x, plus, sp, &nq, out);
                }
            }
            let mut plus = vec![0];
            rec(1, k, x, &mut plus, &x[0], &Rational::zero(), &mut out);
        }
        Block::Ortho { family, .. } => {
            // u_0 + u_1 > 0 fixes the orientation; positions 0 and 1 carry the
            // unknown shift, which only lowers their partial sums
            let family = *family;
            struct St<'a> {
                x: &'a [Rational],
                family: Family,
                plus: Vec<usize>,
                minus: Vec<usize>,
                out: Vec<Wall>,
            }
            fn rec(st: &mut St, p: usize, sums: [Rational; 3]) {
                let k = st.x.len();
                if p == k {
                    let rest = k - st.plus.len() - st.minus.len();
                    if st.family == Family::D && rest == 1 {
                        return;
                    }
                    st.out.push(Wall { plus: st.plus.clone(), minus: st.minus.clone() });
                    return;
                }
                let choices: &[usize] = match p {
                    0 => &[0, 2],
                    1 if !st.plus.contains(&0) => &[0],
                    1 => &[0, 2],
                    _ => &[0, 1, 2],
                };
                for &c in choices {
                    // c: 0 plus, 1 minus, 2 rest
                    let mut ns = sums.clone();
                    ns[c] += &st.x[p];
                    if ns[c].is_negative() {
                        continue;
                    }
                    match c {
                        0 => st.plus.push(p),
                        1 => st.minus.push(p),
                        _ => {}
                    }
                    rec(st, p + 1, ns);
                    match c {
                        0 => {
                            st.plus.pop();
                        }
                        1 => {
                            st.minus.pop();
                        }
                        _ => {}
                    }
                }
            }
            let mut st = St { x, family, plus: vec![], minus: vec![], out: vec![] };
            rec(&mut st, 0, [Rational::zero(), Rational::zero(), Rational::zero()]);
            out = st.out;
        }
    }
    out
}

/// Accepted walls of a block for the local vector `x`.
pub(crate) fn accepted_splits(block: &Block, x: &[Rational], pruned: bool) -> Result<Vec<WallSplit>> {
    let candidates = if pruned { pruned_candidates(block, x) } else { local_walls(block) };
    let mut out = Vec::new();
    for w in candidates {
        if let Some(split) = split_local(block, x, &w)? {
            out.push(split);
        }
    }
    out.sort_by(|a, b| a.wall.cmp(&b.wall));
    Ok(out)
}

fn check_generic(t: RootSystemType, v: &[Rational]) -> Result<()> {
    if v.len() != t.dim() {
        return Err(Error::DimensionMismatch { expected: t.dim(), got: v.len() });
    }
    if admissible_walls(t).iter().any(|w| w.eval(v).is_zero()) {
        return Err(Error::NonGenericVector);
    }
    Ok(())
}

/// Top-level wall test for a generic vector.
pub fn wall_filter(t: RootSystemType, v: &[Rational], wall: &Wall) -> Result<Option<WallSplit>> {
    check_generic(t, v)?;
    let top = Block::top(t);
    split_local(&top, &top.local_coords(v), wall)
}

/// Signs of all admissible walls at a generic vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChamberSignature(pub Vec<i8>);

impl ChamberSignature {
    pub fn key(&self) -> String {
        self.0.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
    }
}

pub fn chamber_signature(t: RootSystemType, v: &[Rational]) -> Result<ChamberSignature> {
    check_generic(t, v)?;
    Ok(ChamberSignature(
        admissible_walls(t)
            .iter()
            .map(|w| if w.eval(v).is_positive() { 1 } else { -1 })
            .collect(),
    ))
}

/// Membership of a point of the wall in the cone spanned by the roots inside it.
pub(crate) fn in_wall_cone(t: RootSystemType, wall: &Wall, p: &[Rational]) -> bool {
    let n = p.len();
    let nonneg_prefix = |xs: &[Rational]| {
        let mut s = Rational::zero();
        xs.iter().all(|x| {
            s += x;
            !s.is_negative()
        })
    };
    match t.family {
        Family::A => {
            let q: Vec<usize> = (0..n).filter(|i| !wall.plus.contains(i)).collect();
            [wall.plus.clone(), q]
                .iter()
                .all(|part| nonneg_prefix(&part.iter().map(|&i| p[i].clone()).collect::<Vec<_>>()))
        }
        family => {
            let mut plus = wall.plus.clone();
            plus.sort();
            let mut minus = wall.minus.clone();
            minus.sort_by(|a, b| b.cmp(a));
            let mut f: Vec<Rational> = plus.iter().map(|&i| p[i].clone()).collect();
            f.extend(minus.iter().map(|&i| -p[i].clone()));
            if !nonneg_prefix(&f) {
                return false;
            }
            let rest: Vec<Rational> = (0..n)
                .filter(|i| !plus.contains(i) && !minus.contains(i))
                .map(|i| p[i].clone())
                .collect();
            match (family, rest.len()) {
                (_, 0) => true,
                (Family::D, 2) => !(&rest[0] - &rest[1]).is_negative() && !(&rest[0] + &rest[1]).is_negative(),
                _ => cone_contains_local(family, &rest),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_systems::matrix_rank;
    use crate::root_systems::positive_roots;

    fn ty(f: Family, r: usize) -> RootSystemType {
        RootSystemType::new(f, r).unwrap()
    }

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn wall_counts() {
        assert_eq!(admissible_walls(ty(Family::A, 3)).len(), 7);
        assert_eq!(admissible_walls(ty(Family::B, 2)).len(), 4);
        assert_eq!(admissible_walls(ty(Family::B, 3)).len(), 13);
    }

    #[test]
    fn walls_are_spanned_by_roots() {
        // brute force: every hyperplane with {-1,0,1} normal spanned by roots is listed
        for t in [ty(Family::B, 3), ty(Family::C, 3), ty(Family::D, 3), ty(Family::D, 4), ty(Family::A, 3)] {
            let n = t.dim();
            let roots = positive_roots(t);
            let listed: std::collections::BTreeSet<Vec<i64>> =
                admissible_walls(t).iter().map(|w| w.form(n)).collect();
            let target_dim = t.rank - 1;
            let mut found = std::collections::BTreeSet::new();
            for code in 1..3i64.pow(n as u32) {
                let mut c = code;
                let mut u = vec![0i64; n];
                for x in u.iter_mut() {
                    *x = [0, 1, -1][(c % 3) as usize];
                    c /= 3;
                }
                if u.iter().find(|&&x| x != 0) != Some(&1) {
                    continue;
                }
                if t.family == Family::A && (u.iter().any(|&x| x < 0) || u[0] != 1) {
                    continue;
                }
                let inside: Vec<Vec<Rational>> = roots
                    .iter()
                    .filter(|r| r.coords.iter().zip(&u).map(|(a, b)| a * b).sum::<i64>() == 0)
                    .map(|r| r.coords.iter().map(|&x| rat(x)).collect())
                    .collect();
                if !inside.is_empty() && matrix_rank(&inside) == target_dim {
                    found.insert(u);
                }
            }
            assert_eq!(found, listed, "{t}");
        }
    }

    #[test]
    fn a3_filter_examples() {
        let t = ty(Family::A, 3);
        let v = q(&[4, 1, -2, -3]);
        let split = wall_filter(t, &v, &Wall { plus: vec![0, 1, 2], minus: vec![] }).unwrap().unwrap();
        assert_eq!(split.projection, q(&[1, 1, -2, 0]));
        assert_eq!(split.components.len(), 1);
        assert_eq!(split.components[0].0, Block::A(vec![(0, 1), (1, 1), (2, 1)]));
        assert_eq!(wall_filter(t, &v, &Wall { plus: vec![0, 3], minus: vec![] }).unwrap(), None);
        // complement of [3,4] is [1,2]
        assert_eq!(wall_filter(t, &v, &Wall { plus: vec![0, 1], minus: vec![] }).unwrap(), None);
    }

    #[test]
    fn signatures() {
        let t = ty(Family::B, 2);
        let walls = admissible_walls(t);
        let names: Vec<Vec<i64>> = walls.iter().map(|w| w.form(2)).collect();
        let sig = chamber_signature(t, &q(&[3, 1])).unwrap();
        assert!(sig.0.iter().all(|&s| s == 1));
        let sig = chamber_signature(t, &q(&[1, -2])).unwrap();
        for (u, s) in names.iter().zip(&sig.0) {
            let val = u[0] - 2 * u[1];
            assert_eq!(val.signum() as i8, *s);
        }
        assert_eq!(chamber_signature(t, &q(&[1, 1])), Err(Error::NonGenericVector));
    }
}
