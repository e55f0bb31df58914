//! Exact point counts, normalized volumes, chamber quasipolynomials and Ehrhart
//! quasipolynomials, each assembled as a sum over maximal proper nested sets.

use crate::exact_core::{rat, to_integer, BigInt, Polynomial, Rational};
use crate::exec::{self, Exec};
use crate::mpns::{deform_vector, mpns_enumerate, residue_path, GenericVector, Mns, ResiduePath};
use crate::residue_engine::{
    character_value, g_compatible, group_f, iterated_residue, kostant_fraction, kostant_fraction_parametric,
    kostant_fraction_ray, volume_fraction, LinFraction, SignVector,
};
use crate::root_systems::{cone_contains, cone_contains_int, lattice_contains, Family, RootSystemType};
use crate::walls::{chamber_signature, ChamberSignature};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// One (character, polynomial) summand: g^x * poly(x).
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiTerm {
    pub character: SignVector,
    pub poly: Polynomial,
}

/// Sum of polynomials twisted by sign characters.
#[derive(Clone, Debug, PartialEq)]
pub struct Quasipolynomial {
    pub vars: Vec<String>,
    /// Sorted by character, identity first; characters distinct; polynomials nonzero.
    pub terms: Vec<QuasiTerm>,
    /// Chamber whose closure the formula is valid on, when it came from one.
    pub chamber: Option<ChamberSignature>,
}

impl Quasipolynomial {
    pub fn new(vars: Vec<String>, terms: Vec<QuasiTerm>) -> Self {
        let mut merged: BTreeMap<std::cmp::Reverse<SignVector>, Polynomial> = BTreeMap::new();
        for term in terms {
            let slot = merged.entry(std::cmp::Reverse(term.character)).or_insert_with(Polynomial::zero);
            *slot = slot.add(&term.poly);
        }
        let terms = merged
            .into_iter()
            .filter(|(_, p)| !p.is_empty())
            .map(|(c, poly)| QuasiTerm { character: c.0, poly })
            .collect();
        Quasipolynomial { vars, terms, chamber: None }
    }

    pub fn eval(&self, x: &[i64]) -> Rational {
        let point: Vec<Rational> = x.iter().map(|&v| rat(v)).collect();
        let mut acc = rat(0);
        for term in &self.terms {
            let v = term.poly.eval(&point);
            if character_value(&term.character, x) > 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        acc
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().filter_map(|t| t.poly.degree()).max()
    }

    /// Number of residue classes the formula distinguishes: 1 or 2.
    pub fn period(&self) -> usize {
        if self.terms.iter().any(|t| t.character.iter().any(|&g| g < 0)) {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for Quasipolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let body = t.poly.fmt_with(&names);
                let flipped: Vec<&str> =
                    t.character.iter().zip(&names).filter(|(&g, _)| g < 0).map(|(_, n)| *n).collect();
                if flipped.is_empty() {
                    body
                } else {
                    format!("(-1)^({}) * ({})", flipped.join("+"), body)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountStatus {
    InsideCone,
    OutsideCone,
    LatticeViolation,
}

impl CountStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CountStatus::InsideCone => "inside_cone",
            CountStatus::OutsideCone => "outside_cone",
            CountStatus::LatticeViolation => "lattice_violation",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountResult {
    pub value: BigInt,
    pub signature: Option<ChamberSignature>,
    pub mns_count: usize,
    pub status: CountStatus,
}

/// Where nested sets come from; the CLI plugs a disk cache in here.
pub trait MnsSource: Sync {
    fn mns_list(&self, t: RootSystemType, v: &GenericVector) -> Result<Vec<Mns>>;
}

/// Direct enumeration, no caching.
pub struct Enumerate;

impl MnsSource for Enumerate {
    fn mns_list(&self, t: RootSystemType, v: &GenericVector) -> Result<Vec<Mns>> {
        mpns_enumerate(t, v)
    }
}

#[derive(Clone, Copy)]
pub struct Options<'a> {
    pub exec: Exec,
    pub source: &'a dyn MnsSource,
}

impl Default for Options<'static> {
    fn default() -> Self {
        Options { exec: Exec::default(), source: &Enumerate }
    }
}

impl Options<'static> {
    pub fn sequential() -> Self {
        Options { exec: Exec::Sequential, source: &Enumerate }
    }
}

/// Nested sets, residue paths and contributing (path, g) pairs for one vector.
struct Plan {
    signature: ChamberSignature,
    mns_count: usize,
    paths: Vec<ResiduePath>,
    group: Vec<SignVector>,
    multiplier: Rational,
    /// (path index, group index) pairs that can contribute.
    pairs: Vec<(usize, usize)>,
}

fn plan(t: RootSystemType, v: &[Rational], opts: &Options) -> Result<Plan> {
    let generic = deform_vector(t, v)?;
    let signature = chamber_signature(t, &generic.point)?;
    let list = opts.source.mns_list(t, &generic)?;
    let paths = list.iter().map(|m| residue_path(t, m)).collect::<Result<Vec<_>>>()?;
    let (group, multiplier) = group_f(t);
    let mut pairs = Vec::new();
    for (pi, p) in paths.iter().enumerate() {
        for (gi, g) in group.iter().enumerate() {
            if g_compatible(p, g) {
                pairs.push((pi, gi));
            }
        }
    }
    Ok(Plan { signature, mns_count: list.len(), paths, group, multiplier, pairs })
}

fn check_dim(t: RootSystemType, len: usize) -> Result<()> {
    if len != t.dim() {
        return Err(Error::DimensionMismatch { expected: t.dim(), got: len });
    }
    Ok(())
}

fn weight(p: &ResiduePath) -> Rational {
    rat(p.sign as i64) / &p.vol
}

pub fn count_points(t: RootSystemType, h: &[i64]) -> Result<CountResult> {
    count_points_with(t, h, &Options::default())
}

pub fn count_points_with(t: RootSystemType, h: &[i64], opts: &Options) -> Result<CountResult> {
    check_dim(t, h.len())?;
    let empty = |status| CountResult { value: BigInt::from(0), signature: None, mns_count: 0, status };
    if !lattice_contains(t, h) {
        return Ok(empty(CountStatus::LatticeViolation));
    }
    if !cone_contains_int(t, h)? {
        return Ok(empty(CountStatus::OutsideCone));
    }
    let v: Vec<Rational> = h.iter().map(|&x| rat(x)).collect();
    let plan = plan(t, &v, opts)?;
    let terms = exec::map(opts.exec, &plan.pairs, |&(pi, gi)| -> Result<Rational> {
        let frac = kostant_fraction(t, h, &plan.group[gi])?;
        let path = &plan.paths[pi];
        Ok(iterated_residue(path, frac)? * weight(path))
    });
    let mut total = rat(0);
    for term in terms {
        total += term?;
    }
    total *= &plan.multiplier;
    let value = to_integer(&total).ok_or_else(|| Error::InvalidInput(format!("non-integral count {total}")))?;
    Ok(CountResult {
        value,
        signature: Some(plan.signature),
        mns_count: plan.mns_count,
        status: CountStatus::InsideCone,
    })
}

/// 1 for A and B, 2 for C and D.
fn volume_constant(t: RootSystemType) -> Rational {
    match t.family {
        Family::A | Family::B => rat(1),
        Family::C | Family::D => rat(2),
    }
}

/// Normalized volume of the partition polytope of v; 0 outside the cone.
pub fn volume(t: RootSystemType, v: &[Rational]) -> Result<Rational> {
    volume_with(t, v, &Options::default())
}

pub fn volume_with(t: RootSystemType, v: &[Rational], opts: &Options) -> Result<Rational> {
    check_dim(t, v.len())?;
    if !cone_contains(t, v)? {
        return Ok(rat(0));
    }
    Ok(jk_residue_with(t, v, &volume_fraction(t, v)?, opts)? * volume_constant(t))
}

/// Jeffrey-Kirwan residue of a linear-variable fraction for the chamber of v:
/// the sum over adapted nested sets of sign / vol times the raw iterated residue.
pub fn jk_residue(t: RootSystemType, v: &[Rational], f: &LinFraction) -> Result<Rational> {
    jk_residue_with(t, v, f, &Options::default())
}

pub fn jk_residue_with(t: RootSystemType, v: &[Rational], f: &LinFraction, opts: &Options) -> Result<Rational> {
    check_dim(t, v.len())?;
    let plan = plan(t, v, opts)?;
    let terms = exec::map(opts.exec, &plan.paths, |path| -> Result<Rational> {
        Ok(iterated_residue(path, f.clone())? * weight(path))
    });
    let mut total = rat(0);
    for term in terms {
        total += term?;
    }
    Ok(total)
}

fn param_names(t: RootSystemType) -> Vec<String> {
    (1..=t.dim()).map(|i| format!("h{i}")).collect()
}

/// Quasipolynomial in h_1..h_n valid on the closure of the chamber containing v.
pub fn parametric_count(t: RootSystemType, v: &[Rational]) -> Result<Quasipolynomial> {
    parametric_count_with(t, v, &Options::default())
}

pub fn parametric_count_with(t: RootSystemType, v: &[Rational], opts: &Options) -> Result<Quasipolynomial> {
    check_dim(t, v.len())?;
    // rejects wall points
    chamber_signature(t, v)?;
    if !cone_contains(t, v)? {
        return Err(Error::InvalidInput("vector is outside the cone".into()));
    }
    let plan = plan(t, v, opts)?;
    let polys = exec::map(opts.exec, &plan.pairs, |&(pi, gi)| -> Result<Polynomial> {
        let frac = kostant_fraction_parametric(t, &plan.group[gi])?;
        let path = &plan.paths[pi];
        Ok(iterated_residue(path, frac)?.scale(&weight(path)))
    });
    let mut terms = Vec::with_capacity(polys.len());
    for (&(_, gi), poly) in plan.pairs.iter().zip(polys) {
        terms.push(QuasiTerm { character: plan.group[gi].clone(), poly: poly?.scale(&plan.multiplier) });
    }
    let mut q = Quasipolynomial::new(param_names(t), terms);
    q.chamber = Some(plan.signature);
    Ok(q)
}

/// k -> N(k h) as a quasipolynomial in k.
pub fn ehrhart(t: RootSystemType, h: &[i64]) -> Result<Quasipolynomial> {
    ehrhart_with(t, h, &Options::default())
}

pub fn ehrhart_with(t: RootSystemType, h: &[i64], opts: &Options) -> Result<Quasipolynomial> {
    check_dim(t, h.len())?;
    if !lattice_contains(t, h) {
        return Err(Error::LatticeViolation);
    }
    if !cone_contains_int(t, h)? {
        return Err(Error::InvalidInput("vector is outside the cone".into()));
    }
    let v: Vec<Rational> = h.iter().map(|&x| rat(x)).collect();
    let plan = plan(t, &v, opts)?;
    let polys = exec::map(opts.exec, &plan.pairs, |&(pi, gi)| -> Result<Polynomial> {
        let frac = kostant_fraction_ray(t, h, &plan.group[gi])?;
        let path = &plan.paths[pi];
        Ok(iterated_residue(path, frac)?.scale(&weight(path)))
    });
    let mut terms = Vec::with_capacity(polys.len());
    for (&(_, gi), poly) in plan.pairs.iter().zip(polys) {
        let character = vec![character_value(&plan.group[gi], h)];
        terms.push(QuasiTerm { character, poly: poly?.scale(&plan.multiplier) });
    }
    let mut q = Quasipolynomial::new(vec!["k".to_string()], terms);
    q.chamber = Some(plan.signature);
    Ok(q)
}

/// The deformed point and nested sets a count at h would use.
pub fn generic_vector(t: RootSystemType, h: &[Rational]) -> Result<GenericVector> {
    deform_vector(t, h)
}

