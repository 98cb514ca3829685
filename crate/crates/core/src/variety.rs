//! Membership in DA, R, L, J, B, J1 and the levels of the Trotter-Weil
//! hierarchy.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::monoid::{ElementId, Monoid, Morphism};
use crate::omega::{self, IdentityOfTerms, Verdict};
use crate::ranker::{self, Step};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variety {
    DA,
    R,
    L,
    J,
    B,
    J1,
}

impl Variety {
    pub fn identities(self) -> Vec<IdentityOfTerms> {
        match self {
            Variety::DA => vec![omega::da_identity()],
            Variety::R => vec![omega::r2_identity()],
            Variety::L => vec![omega::l2_identity()],
            Variety::J => vec![omega::r2_identity(), omega::l2_identity()],
            Variety::B => vec![omega::band_identity()],
            Variety::J1 => vec![omega::commutativity_identity(), omega::band_identity()],
        }
    }
}

impl FromStr for Variety {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variety> {
        Ok(match s {
            "DA" => Variety::DA,
            "R" => Variety::R,
            "L" => Variety::L,
            "J" => Variety::J,
            "B" => Variety::B,
            "J1" => Variety::J1,
            _ => return Err(Error::InvalidArgument(format!("unknown variety `{s}`"))),
        })
    }
}

/// The first failing identity of a set, with its verdict.
pub fn check_identities(
    monoid: &Monoid,
    ids: &[IdentityOfTerms],
    limits: &Limits,
) -> Result<Option<(usize, Verdict)>> {
    for (i, id) in ids.iter().enumerate() {
        let verdict = omega::satisfies_identity(monoid, id, limits)?;
        if !verdict.holds() {
            return Ok(Some((i, verdict)));
        }
    }
    Ok(None)
}

pub fn in_variety(monoid: &Monoid, variety: Variety, limits: &Limits) -> Result<bool> {
    Ok(check_identities(monoid, &variety.identities(), limits)?.is_none())
}

fn check_level(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "hierarchy levels start at 2, got {m}"
        )));
    }
    Ok(())
}

pub fn in_rm_identity(monoid: &Monoid, m: usize, limits: &Limits) -> Result<bool> {
    check_level(m)?;
    Ok(omega::satisfies_identity(monoid, &omega::rm_identity(m), limits)?.holds())
}

pub fn in_lm_identity(monoid: &Monoid, m: usize, limits: &Limits) -> Result<bool> {
    check_level(m)?;
    Ok(omega::satisfies_identity(monoid, &omega::lm_identity(m), limits)?.holds())
}

/// `R_2` is R-triviality and `R_{m+1} = K ⓜ L_m`, decided on `M/~K`.
pub fn in_rm_malcev(monoid: &Monoid, m: usize) -> Result<bool> {
    check_level(m)?;
    malcev(monoid, m, true)
}

/// `L_2` is L-triviality and `L_{m+1} = D ⓜ R_m`, decided on `M/~D`.
pub fn in_lm_malcev(monoid: &Monoid, m: usize) -> Result<bool> {
    check_level(m)?;
    malcev(monoid, m, false)
}

fn malcev(monoid: &Monoid, m: usize, r_side: bool) -> Result<bool> {
    if m == 2 {
        return Ok(if r_side {
            monoid.is_r_trivial()
        } else {
            monoid.is_l_trivial()
        });
    }
    let congruence = if r_side {
        monoid.sim_k()?
    } else {
        monoid.sim_d()?
    };
    if congruence.class_count() == 1 {
        return Ok(true);
    }
    let (quotient, _) = monoid.quotient(&congruence)?;
    malcev(&quotient, m - 1, !r_side)
}

/// Full verdict of the `W_m` identity, with the counterexample on failure.
pub fn wm_verdict(monoid: &Monoid, m: usize, limits: &Limits) -> Result<Verdict> {
    check_level(m)?;
    omega::satisfies_identity(monoid, &omega::w_identity(m), limits)
}

pub fn in_wm(monoid: &Monoid, m: usize, limits: &Limits) -> Result<bool> {
    Ok(wm_verdict(monoid, m, limits)?.holds())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chain {
    R,
    L,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    K,
    D,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepKind::K => "K",
            StepKind::D => "D",
        })
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chain::R => "R",
            Chain::L => "L",
        })
    }
}

/// One quotient step of a tower: which chain, which congruence, and the size
/// of the quotient it produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TowerStep {
    pub chain: Chain,
    pub kind: StepKind,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierarchyProfile {
    pub size: usize,
    pub in_da: bool,
    pub min_r: Option<usize>,
    pub min_l: Option<usize>,
    pub min_join: Option<usize>,
    pub min_intersection: Option<usize>,
    pub tower_trace: Vec<TowerStep>,
}

/// Smallest level of the chain by unrolling the quotient tower, or `None`
/// when two consecutive steps change nothing (the tower then cycles).
fn tower(monoid: &Monoid, chain: Chain, trace: &mut Vec<TowerStep>) -> Result<Option<usize>> {
    let mut current = monoid.clone();
    let mut r_test = chain == Chain::R;
    let mut idle_steps = 0;
    for j in 0.. {
        let passes = if r_test {
            current.is_r_trivial()
        } else {
            current.is_l_trivial()
        };
        if passes {
            return Ok(Some(2 + j));
        }
        let (kind, congruence) = if r_test {
            (StepKind::K, current.sim_k()?)
        } else {
            (StepKind::D, current.sim_d()?)
        };
        if congruence.is_identity() {
            idle_steps += 1;
            if idle_steps == 2 {
                trace.push(TowerStep {
                    chain,
                    kind,
                    size: current.size(),
                });
                return Ok(None);
            }
        } else {
            idle_steps = 0;
            current = current.quotient(&congruence)?.0;
        }
        trace.push(TowerStep {
            chain,
            kind,
            size: current.size(),
        });
        r_test = !r_test;
    }
    unreachable!("the loop only exits by returning")
}

/// Places `M` in the hierarchy.
///
/// The corner levels come from the quotient towers, `in_da` from the DA
/// identity; the two must agree. Join levels are searched by the `W_m`
/// identity below the smaller corner level, which is itself a join level.
pub fn classify(monoid: &Monoid, limits: &Limits) -> Result<HierarchyProfile> {
    let mut trace = Vec::new();
    let min_r = tower(monoid, Chain::R, &mut trace)?;
    let min_l = tower(monoid, Chain::L, &mut trace)?;
    let in_da = in_variety(monoid, Variety::DA, limits)?;
    if in_da != (min_r.is_some() && min_l.is_some()) {
        return Err(Error::Inconsistent(format!(
            "DA identity says {in_da} but the towers give R level {min_r:?} and L level {min_l:?}"
        )));
    }
    let min_join = match (min_r, min_l) {
        (Some(r), Some(l)) => {
            let bound = r.min(l);
            let mut found = bound;
            for m in 2..bound {
                if in_wm(monoid, m, limits)? {
                    found = m;
                    break;
                }
            }
            Some(found)
        }
        _ => None,
    };
    Ok(HierarchyProfile {
        size: monoid.size(),
        in_da,
        min_r,
        min_l,
        min_join,
        min_intersection: min_r.zip(min_l).map(|(r, l)| r.max(l)),
        tower_trace: trace,
    })
}

/// Factorizations of two words aligned by an `X`-only and a `Y`-only ranker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignedFactorization {
    /// Cuts of the R-factorization of `u`, as `X_{b_1}⋯X_{b_k}`.
    pub r: Vec<Step>,
    /// Cuts of the L-factorization of `v`, as `Y_{c_k'}⋯Y_{c_1}`.
    pub s: Vec<Step>,
    /// The marker letters `a_1..a_ℓ`.
    pub letters: Vec<char>,
    /// 1-based marker positions in `u` and in `v`.
    pub u_positions: Vec<usize>,
    pub v_positions: Vec<usize>,
    /// `u_0..u_ℓ` and `v_0..v_ℓ`.
    pub u_factors: Vec<String>,
    pub v_factors: Vec<String>,
}

/// Positions `i` (1-based) where the R-class of the prefix of length `i - 1`
/// lies strictly above that of the prefix of length `i`.
fn r_cuts(phi: &Morphism, word: &[char]) -> Result<Vec<usize>> {
    let m = &phi.monoid;
    let mut prefix = m.identity();
    let mut cuts = Vec::new();
    for (i, &a) in word.iter().enumerate() {
        let next = m.mul(prefix, phi.letter(a)?);
        if !m.r_related(prefix, next) {
            cuts.push(i + 1);
        }
        prefix = next;
    }
    Ok(cuts)
}

/// Dual of [`r_cuts`] on suffixes, in increasing order.
fn l_cuts(phi: &Morphism, word: &[char]) -> Result<Vec<usize>> {
    let m = &phi.monoid;
    let mut suffix = m.identity();
    let mut cuts = Vec::new();
    for (i, &a) in word.iter().enumerate().rev() {
        let next = m.mul(phi.letter(a)?, suffix);
        if !m.l_related(suffix, next) {
            cuts.push(i + 1);
        }
        suffix = next;
    }
    cuts.reverse();
    Ok(cuts)
}

fn split(word: &[char], positions: &[usize]) -> Vec<String> {
    let mut out = Vec::with_capacity(positions.len() + 1);
    let mut start = 0;
    for &p in positions {
        out.push(word[start..p - 1].iter().collect());
        start = p;
    }
    out.push(word[start..].iter().collect());
    out
}

/// Aligns the R-factorization of `u` with the L-factorization of `v`.
///
/// Requires the monoid in DA and `u ≡_{1, 2|M|-2} v`. Every position visited
/// by a prefix of `r` or `s` is a marker, recorded once when both visit it.
pub fn aligned_factorization(
    phi: &Morphism,
    u: &str,
    v: &str,
    limits: &Limits,
) -> Result<AlignedFactorization> {
    if !in_variety(&phi.monoid, Variety::DA, limits)? {
        return Err(Error::PreconditionFailed("the monoid is not in DA".into()));
    }
    let depth = 2 * phi.monoid.size() - 2;
    if !ranker::one_block_equivalent(u, v, depth) {
        return Err(Error::PreconditionFailed(format!(
            "the words are not equivalent on single-block rankers of depth {depth}"
        )));
    }
    let uw: Vec<char> = u.chars().collect();
    let vw: Vec<char> = v.chars().collect();
    let r: Vec<Step> = r_cuts(phi, &uw)?
        .into_iter()
        .map(|p| Step::x(uw[p - 1]))
        .collect();
    let s: Vec<Step> = l_cuts(phi, &vw)?
        .into_iter()
        .rev()
        .map(|p| Step::y(vw[p - 1]))
        .collect();

    let not_defined =
        |which: &str| Error::Inconsistent(format!("ranker {which} is undefined on the other word"));
    let ru = ranker::run(&r, &uw).ok_or_else(|| not_defined("r"))?;
    let rv = ranker::run(&r, &vw).ok_or_else(|| not_defined("r"))?;
    let su = ranker::run(&s, &uw).ok_or_else(|| not_defined("s"))?;
    let sv = ranker::run(&s, &vw).ok_or_else(|| not_defined("s"))?;
    let mut pairs: Vec<(usize, usize)> = ru
        .into_iter()
        .zip(rv)
        .chain(su.into_iter().zip(sv))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    for w in pairs.windows(2) {
        if w[0].0 == w[1].0 || w[0].1 >= w[1].1 {
            return Err(Error::Inconsistent(format!(
                "marker order differs between the words at {:?} and {:?}",
                w[0], w[1]
            )));
        }
    }
    let (u_positions, v_positions): (Vec<usize>, Vec<usize>) = pairs.into_iter().unzip();
    let letters: Vec<char> = u_positions.iter().map(|&p| uw[p - 1]).collect();
    if v_positions
        .iter()
        .zip(&letters)
        .any(|(&p, &a)| vw[p - 1] != a)
    {
        return Err(Error::Inconsistent(
            "marker letters differ between the words".into(),
        ));
    }
    Ok(AlignedFactorization {
        u_factors: split(&uw, &u_positions),
        v_factors: split(&vw, &v_positions),
        r,
        s,
        letters,
        u_positions,
        v_positions,
    })
}

/// Prefix images `φ(u_0 a_1 ⋯ u_{i-1} a_i)` paired with `φ(… a_i u_i)`,
/// index 0 being `(1, φ(u_0))`, for checking R-factorization refinement.
pub fn prefix_images(
    phi: &Morphism,
    factors: &[String],
    letters: &[char],
) -> Result<Vec<(ElementId, ElementId)>> {
    let m = &phi.monoid;
    let mut at = m.identity();
    let mut out = Vec::with_capacity(factors.len());
    for (i, f) in factors.iter().enumerate() {
        let before = at;
        at = m.mul(at, phi.eval(f)?);
        out.push((before, at));
        if let Some(&a) = letters.get(i) {
            at = m.mul(at, phi.letter(a)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn u_monoid() -> Monoid {
        Monoid::new(vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 1, 2]], 0, None).unwrap()
    }

    fn left_zero() -> Monoid {
        Monoid::new(vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]], 0, None).unwrap()
    }

    fn z2() -> Monoid {
        Monoid::new(vec![vec![0, 1], vec![1, 0]], 0, None).unwrap()
    }

    #[test]
    fn named_varieties() {
        let lim = Limits::default();
        for v in [
            Variety::DA,
            Variety::R,
            Variety::L,
            Variety::J,
            Variety::B,
            Variety::J1,
        ] {
            assert!(in_variety(&Monoid::trivial(), v, &lim).unwrap());
        }
        let u = u_monoid();
        assert!(!in_variety(&u, Variety::R, &lim).unwrap());
        assert!(in_variety(&u, Variety::L, &lim).unwrap());
        assert!(!in_variety(&u, Variety::J, &lim).unwrap());
        assert!(in_variety(&u, Variety::DA, &lim).unwrap());
        assert!(!in_variety(&z2(), Variety::B, &lim).unwrap());
        assert!(!in_variety(&z2(), Variety::DA, &lim).unwrap());
    }

    #[test]
    fn corner_levels() {
        let lim = Limits::default();
        let u = u_monoid();
        assert!(in_rm_identity(&u, 3, &lim).unwrap());
        assert!(!in_rm_identity(&u, 2, &lim).unwrap());
        assert!(in_rm_malcev(&u, 3).unwrap());
        assert!(!in_rm_malcev(&u, 2).unwrap());
        assert!(in_rm_malcev(&left_zero(), 2).unwrap());
        for m in 2..=5 {
            assert!(in_rm_malcev(&Monoid::trivial(), m).unwrap());
            assert!(in_lm_malcev(&Monoid::trivial(), m).unwrap());
            assert!(in_rm_identity(&Monoid::trivial(), m, &lim).unwrap());
        }
        assert!(in_rm_malcev(&u, 1).is_err());
        assert!(in_wm(&u, 2, &lim).unwrap());
        assert!(!in_wm(&z2(), 2, &lim).unwrap());
    }

    #[test]
    fn classification() {
        let lim = Limits::default();
        let p = classify(&u_monoid(), &lim).unwrap();
        assert_eq!(
            (p.in_da, p.min_r, p.min_l, p.min_join, p.min_intersection),
            (true, Some(3), Some(2), Some(2), Some(3))
        );
        let t = classify(&Monoid::trivial(), &lim).unwrap();
        assert_eq!(
            (t.in_da, t.min_r, t.min_l, t.min_join, t.min_intersection),
            (true, Some(2), Some(2), Some(2), Some(2))
        );
        let g = classify(&z2(), &lim).unwrap();
        assert_eq!(
            (g.in_da, g.min_r, g.min_l, g.min_join),
            (false, None, None, None)
        );
        assert!(g.tower_trace.iter().all(|s| s.size == 2));
    }

    #[test]
    fn factorization_on_u() {
        let phi = Morphism {
            monoid: u_monoid(),
            images: BTreeMap::from([('a', ElementId(1)), ('b', ElementId(2))]),
        };
        let lim = Limits::default();
        let empty = aligned_factorization(&phi, "", "", &lim).unwrap();
        assert!(empty.letters.is_empty() && empty.r.is_empty() && empty.s.is_empty());
        let f = aligned_factorization(&phi, "ab", "ab", &lim).unwrap();
        assert_eq!(f.r, [Step::x('a')]);
        assert_eq!(f.s, [Step::y('b')]);
        assert_eq!(f.letters, ['a', 'b']);
        assert_eq!(f.u_factors, ["", "", ""]);
        assert!(matches!(
            aligned_factorization(&phi, "ab", "ba", &lim),
            Err(Error::PreconditionFailed(_))
        ));
        let g = Morphism {
            monoid: z2(),
            images: BTreeMap::from([('a', ElementId(1))]),
        };
        assert!(matches!(
            aligned_factorization(&g, "a", "a", &lim),
            Err(Error::PreconditionFailed(_))
        ));
    }
}
