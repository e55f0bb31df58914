//! Maximal proper nested sets adapted to a vector: blocks, deformation of wall
//! points, the recursive enumeration, theta sequences and residue paths.

use crate::exact_core::{rat, Rational};
use crate::root_systems::{cone_contains, determinant, root_cmp, Family, Root, RootSystemType};
use crate::walls::{accepted_splits, admissible_walls};
use crate::{Error, Result};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Irreducible root subset of a nested set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Block {
    /// Type-A block on the signed coordinates f_p = sign_p * e_index_p; its
    /// positive roots are f_x - f_y for x listed before y.
    A(Vec<(usize, i8)>),
    /// All roots of the family supported on `indices`.
    Ortho { family: Family, indices: Vec<usize> },
}

impl Block {
    pub fn top(t: RootSystemType) -> Block {
        let n = t.dim();
        match t.family {
            Family::A => Block::A((0..n).map(|i| (i, 1)).collect()),
            family => Block::Ortho { family, indices: (0..n).collect() },
        }
    }

    /// Coordinates of an ambient vector along the block's local axes.
    pub fn local_coords(&self, v: &[Rational]) -> Vec<Rational> {
        match self {
            Block::A(list) => list.iter().map(|&(i, s)| if s > 0 { v[i].clone() } else { -v[i].clone() }).collect(),
            Block::Ortho { indices, .. } => indices.iter().map(|&i| v[i].clone()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Block::A(list) => list.len(),
            Block::Ortho { indices, .. } => indices.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_single_root(&self) -> bool {
        match self {
            Block::A(list) => list.len() == 2,
            Block::Ortho { family, indices } => indices.len() == 1 && *family != Family::D,
        }
    }

    pub fn num_roots(&self) -> usize {
        let k = self.len();
        match self {
            Block::A(_) => k * (k - 1) / 2,
            Block::Ortho { family: Family::D, .. } => k * k - k,
            Block::Ortho { .. } => k * k,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Block::A(list) => list.len() - 1,
            Block::Ortho { indices, .. } => indices.len(),
        }
    }

    /// Certified pole order along the block's theta: |J| - dim<J> + 1.
    pub fn pole_bound(&self) -> usize {
        self.num_roots() - self.dim() + 1
    }

    pub fn roots(&self, n: usize) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        match self {
            Block::A(list) => {
                for x in 0..list.len() {
                    for y in x + 1..list.len() {
                        let mut c = vec![0; n];
                        c[list[x].0] += list[x].1 as i64;
                        c[list[y].0] -= list[y].1 as i64;
                        out.push(c);
                    }
                }
            }
            Block::Ortho { family, indices } => {
                for (a, &i) in indices.iter().enumerate() {
                    for &j in &indices[a + 1..] {
                        for s in [-1, 1] {
                            let mut c = vec![0; n];
                            c[i] = 1;
                            c[j] = s;
                            out.push(c);
                        }
                    }
                    match family {
                        Family::B => {
                            let mut c = vec![0; n];
                            c[i] = 1;
                            out.push(c);
                        }
                        Family::C => {
                            let mut c = vec![0; n];
                            c[i] = 2;
                            out.push(c);
                        }
                        _ => {}
                    }
                }
            }
        }
        out
    }

    /// Highest root of the block in the global root order.
    pub fn theta(&self, t: RootSystemType) -> Root {
        let roots = self.roots(t.dim());
        let top = roots
            .into_iter()
            .max_by(|a, b| root_cmp(t, a, b))
            .expect("block has a root");
        Root::from_coords(&top).expect("block roots are roots")
    }

    /// Same root set, written in a unique way.
    pub fn canonical(&self) -> Block {
        match self {
            Block::A(list) => {
                let flipped: Vec<(usize, i8)> = list.iter().rev().map(|&(i, s)| (i, -s)).collect();
                Block::A(list.clone().min(flipped))
            }
            Block::Ortho { family, indices } => {
                let mut idx = indices.clone();
                idx.sort();
                Block::Ortho { family: *family, indices: idx }
            }
        }
    }
}

impl std::fmt::Display for Block {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Block::A(list) => {
                let parts: Vec<String> = list
                    .iter()
                    .map(|&(i, s)| format!("{}{}", if s > 0 { "" } else { "-" }, i + 1))
                    .collect();
                write!(f, "A[{}]", parts.join(","))
            }
            Block::Ortho { family, indices } => {
                let parts: Vec<String> = indices.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "{}[{}]", family.letter(), parts.join(","))
            }
        }
    }
}

/// Maximal nested set as a canonical sorted list of blocks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Mns {
    pub blocks: Vec<Block>,
}

impl Mns {
    pub fn new(blocks: Vec<Block>) -> Mns {
        let mut blocks: Vec<Block> = blocks.iter().map(Block::canonical).collect();
        blocks.sort();
        blocks.dedup();
        Mns { blocks }
    }

    /// Blocks ordered so that each block comes after every block it contains.
    pub fn tree_order(&self, t: RootSystemType) -> Vec<&Block> {
        let mut keyed: Vec<(&Block, Root)> = self.blocks.iter().map(|b| (b, b.theta(t))).collect();
        keyed.sort_by(|(a, ta), (b, tb)| {
            a.num_roots()
                .cmp(&b.num_roots())
                .then_with(|| root_cmp(t, &ta.coords, &tb.coords))
        });
        keyed.into_iter().map(|(b, _)| b).collect()
    }
}

/// Wall point pushed off every wall: point = base + eps * direction.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericVector {
    pub base: Vec<Rational>,
    pub direction: Vec<Rational>,
    pub point: Vec<Rational>,
}

/// Candidate directions w_i = m^(n-1-i), m = 3, 4, ..., projected to zero sum for A.
fn candidate(t: RootSystemType, m: i64) -> Vec<Rational> {
    let n = t.dim();
    let w: Vec<i64> = (0..n).map(|i| m.pow((n - 1 - i) as u32)).collect();
    if t.family == Family::A {
        let s: i64 = w.iter().sum();
        w.iter().map(|&x| rat(n as i64 * x - s)).collect()
    } else {
        w.iter().map(|&x| rat(x)).collect()
    }
}

const CANDIDATES: i64 = 24;

pub fn deform_vector(t: RootSystemType, v: &[Rational]) -> Result<GenericVector> {
    for m in 3..3 + CANDIDATES {
        match deform_with(t, v, &candidate(t, m)) {
            Ok(g) => return Ok(g),
            Err(Error::NoGenericDirection) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NoGenericDirection)
}

/// Deform along an explicit direction; it must separate every wall through v and
/// keep the point inside the cone.
pub fn deform_with(t: RootSystemType, v: &[Rational], w: &[Rational]) -> Result<GenericVector> {
    if !cone_contains(t, v)? {
        return Err(Error::InvalidInput("vector is outside the cone".into()));
    }
    if w.len() != v.len() {
        return Err(Error::DimensionMismatch { expected: v.len(), got: w.len() });
    }
    let walls = admissible_walls(t);
    let mut eps = rat(1);
    for wall in &walls {
        let (uv, uw) = (wall.eval(v), wall.eval(w));
        if uv.is_zero() {
            if uw.is_zero() {
                return Err(Error::NoGenericDirection);
            }
        } else if !uw.is_zero() {
            let bound = uv.abs() / (rat(2) * uw.abs());
            if bound < eps {
                eps = bound;
            }
        }
    }
    let point: Vec<Rational> = v.iter().zip(w).map(|(a, b)| a + &eps * b).collect();
    if !cone_contains(t, &point)? {
        return Err(Error::NoGenericDirection);
    }
    Ok(GenericVector { base: v.to_vec(), direction: w.to_vec(), point })
}

fn enumerate_block(block: &Block, x: &[Rational], pruned: bool) -> Result<BTreeSet<Vec<Block>>> {
    let mut out = BTreeSet::new();
    if block.is_single_root() {
        out.insert(vec![block.canonical()]);
        return Ok(out);
    }
    for split in accepted_splits(block, x, pruned)? {
        let mut partial: Vec<Vec<Block>> = vec![vec![block.canonical()]];
        for (sub, coords) in &split.components {
            let subs = enumerate_block(sub, coords, pruned)?;
            let mut next = Vec::new();
            for p in &partial {
                for s in &subs {
                    let mut m = p.clone();
                    m.extend(s.iter().cloned());
                    next.push(m);
                }
            }
            partial = next;
            if partial.is_empty() {
                break;
            }
        }
        for mut m in partial {
            m.sort();
            out.insert(m);
        }
    }
    Ok(out)
}

/// All maximal proper nested sets whose cone contains the deformed point.
pub fn mpns_enumerate(t: RootSystemType, v: &GenericVector) -> Result<Vec<Mns>> {
    mpns_enumerate_point(t, &v.point, true)
}

pub(crate) fn mpns_enumerate_point(t: RootSystemType, point: &[Rational], pruned: bool) -> Result<Vec<Mns>> {
    if !cone_contains(t, point)? {
        return Ok(Vec::new());
    }
    if admissible_walls(t).iter().any(|w| w.eval(point).is_zero()) {
        return Err(Error::NonGenericVector);
    }
    let top = Block::top(t);
    let sets = enumerate_block(&top, &top.local_coords(point), pruned)?;
    Ok(sets.into_iter().map(Mns::new).collect())
}

/// Exhaustive wall candidates instead of the pruned generator; for cross-checks.
pub fn mpns_enumerate_unpruned(t: RootSystemType, v: &GenericVector) -> Result<Vec<Mns>> {
    mpns_enumerate_point(t, &v.point, false)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaSequence {
    pub roots: Vec<Root>,
    pub vol: Rational,
}

/// Matrix row of a root in the coordinates used for volumes (lattice basis e_i - e_n for A).
pub(crate) fn volume_row(t: RootSystemType, coords: &[i64]) -> Vec<i64> {
    match t.family {
        Family::A => coords[..t.rank].to_vec(),
        _ => coords.to_vec(),
    }
}

pub fn theta_sequence(t: RootSystemType, m: &Mns) -> Result<ThetaSequence> {
    let roots: Vec<Root> = m.tree_order(t).iter().map(|b| b.theta(t)).collect();
    if roots.len() != t.rank {
        return Err(Error::NotProper);
    }
    let mat: Vec<Vec<Rational>> = roots
        .iter()
        .map(|r| volume_row(t, &r.coords).into_iter().map(rat).collect())
        .collect();
    let det = determinant(&mat);
    if det.is_zero() {
        return Err(Error::NotProper);
    }
    Ok(ThetaSequence { roots, vol: det.abs() })
}

/// How the eliminated variable is replaced, in z = E - 1 terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubstitutionRule {
    /// z_var <- 0
    Zero { var: usize },
    /// z_var <- z_to
    Equal { var: usize, to: usize },
    /// z_var <- -z_to/(1+z_to)
    Inverse { var: usize, to: usize },
    /// any other primitive image
    General { var: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathStep {
    pub root: Root,
    pub bound: usize,
    /// Primitive image of the root after the earlier substitutions; first nonzero entry is 1.
    pub image: Vec<i64>,
    /// Variable eliminated at this step (first nonzero index of `image`).
    pub var: usize,
    /// The substituted root equals scale * image.
    pub scale: i64,
    pub rule: SubstitutionRule,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResiduePath {
    pub steps: Vec<PathStep>,
    pub sign: i32,
    pub vol: Rational,
}

/// Linear form of a root in the residue variables (u_n = 0 for A).
pub(crate) fn root_form(t: RootSystemType, coords: &[i64]) -> Vec<i64> {
    volume_row(t, coords)
}

pub fn residue_path(t: RootSystemType, m: &Mns) -> Result<ResiduePath> {
    let seq = theta_sequence(t, m)?;
    let blocks = m.tree_order(t);
    let mut subs: Vec<(usize, Vec<i64>)> = Vec::new();
    let mut steps = Vec::new();
    let mut sign = 1;
    let mut scale_prod = rat(1);
    for (block, root) in blocks.iter().zip(&seq.roots) {
        let mut lam = root_form(t, &root.coords);
        for (a, kappa) in &subs {
            let la = lam[*a];
            if la != 0 {
                for (x, k) in lam.iter_mut().zip(kappa) {
                    *x -= la * k;
                }
            }
        }
        let g = lam.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g == 0 {
            return Err(Error::NotProper);
        }
        let first = lam.iter().position(|&x| x != 0).unwrap();
        let scale = if lam[first] > 0 { g } else { -g };
        let kappa: Vec<i64> = lam.iter().map(|x| x / scale).collect();
        if kappa[first] != 1 {
            return Err(Error::InvalidInput(format!("unsupported path image {kappa:?}")));
        }
        let others: Vec<(usize, i64)> = kappa
            .iter()
            .enumerate()
            .filter(|&(i, &c)| i != first && c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        let rule = match others.as_slice() {
            [] => SubstitutionRule::Zero { var: first },
            [(b, -1)] => SubstitutionRule::Equal { var: first, to: *b },
            [(b, 1)] => SubstitutionRule::Inverse { var: first, to: *b },
            _ => SubstitutionRule::General { var: first },
        };
        if scale < 0 {
            sign = -sign;
        }
        scale_prod *= rat(scale.abs());
        steps.push(PathStep {
            root: root.clone(),
            bound: block.pole_bound(),
            image: kappa.clone(),
            var: first,
            scale,
            rule,
        });
        subs.push((first, kappa));
    }
    debug_assert_eq!(scale_prod, seq.vol);
    Ok(ResiduePath { steps, sign, vol: seq.vol })
}

pub fn path_sign(p: &ResiduePath) -> i32 {
    p.sign
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(f: Family, r: usize) -> RootSystemType {
        RootSystemType::new(f, r).unwrap()
    }

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    fn count(t: RootSystemType, v: &[i64]) -> usize {
        let g = deform_vector(t, &q(v)).unwrap();
        mpns_enumerate(t, &g).unwrap().len()
    }

    #[test]
    fn table_counts() {
        assert_eq!(count(ty(Family::A, 6), &[5067, 3639, -3103, 435, -729, 2267, -7576]), 8);
        assert_eq!(count(ty(Family::B, 3), &[1070, 1006, -37]), 3);
        assert_eq!(count(ty(Family::D, 3), &[8608, -305, 183]), 1);
    }

    #[test]
    fn theta_examples() {
        let t = ty(Family::A, 3);
        let m = Mns::new(vec![
            Block::A(vec![(0, 1), (1, 1)]),
            Block::A(vec![(0, 1), (1, 1), (2, 1)]),
            Block::top(t),
        ]);
        let seq = theta_sequence(t, &m).unwrap();
        let names: Vec<String> = seq.roots.iter().map(|r| r.to_string()).collect();
        assert_eq!(names, ["e1-e2", "e1-e3", "e1-e4"]);
        assert_eq!(seq.vol, rat(1));
        let b2 = ty(Family::B, 2);
        let m = Mns::new(vec![Block::A(vec![(0, 1), (1, 1)]), Block::top(b2)]);
        assert_eq!(theta_sequence(b2, &m).unwrap().vol, rat(2));
        let m = Mns::new(vec![Block::Ortho { family: Family::B, indices: vec![1] }, Block::top(b2)]);
        assert_eq!(theta_sequence(b2, &m).unwrap().vol, rat(1));
    }

    #[test]
    fn bounds() {
        assert_eq!(Block::A(vec![(0, 1), (1, 1), (2, 1)]).pole_bound(), 2);
        assert_eq!(Block::A((0..7).map(|i| (i, 1)).collect()).pole_bound(), 16);
        assert_eq!(Block::A(vec![(0, 1), (1, 1)]).pole_bound(), 1);
    }

    #[test]
    fn deformation_examples() {
        let t = ty(Family::B, 2);
        let g = deform_vector(t, &q(&[3, 1])).unwrap();
        assert_eq!(
            crate::walls::chamber_signature(t, &g.point).unwrap(),
            crate::walls::chamber_signature(t, &q(&[3, 1])).unwrap()
        );
        let g = deform_vector(t, &q(&[1, 1])).unwrap();
        assert!(g.point[0] > g.point[1] && g.point[1].is_positive());
        let g = deform_vector(t, &q(&[2, 0])).unwrap();
        assert!(g.point[1].is_positive());
    }
}
