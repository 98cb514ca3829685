//! Rankers: sequences of "next a" / "previous a" jumps over a word.
//!
//! Positions are 1-based. `X_a` starts from the virtual position 0 and `Y_a`
//! from `|u| + 1`, so the first instruction may be either direction.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::monoid::{ElementId, Monoid, Morphism};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    X,
    Y,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::X => Dir::Y,
            Dir::Y => Dir::X,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub dir: Dir,
    pub letter: char,
}

impl Step {
    pub fn x(letter: char) -> Step {
        Step {
            dir: Dir::X,
            letter,
        }
    }

    pub fn y(letter: char) -> Step {
        Step {
            dir: Dir::Y,
            letter,
        }
    }

    /// Position reached from `from` in `word`, if any.
    pub fn apply(self, word: &[char], from: usize) -> Option<usize> {
        let target = self.letter;
        match self.dir {
            Dir::X => (from + 1..=word.len()).find(|&p| word[p - 1] == target),
            Dir::Y => (1..from.min(word.len() + 1))
                .rev()
                .find(|&p| word[p - 1] == target),
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.dir {
            Dir::X => 'X',
            Dir::Y => 'Y',
        };
        write!(f, "{d}{}", self.letter)
    }
}

/// Positions visited by executing `steps` on `word` from the left to right.
///
/// Returns `None` as soon as one step is undefined. An empty step list
/// visits nothing.
pub fn run(steps: &[Step], word: &[char]) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(steps.len());
    let mut pos = 0;
    for (i, step) in steps.iter().enumerate() {
        let start = if i == 0 && step.dir == Dir::Y {
            word.len() + 1
        } else {
            pos
        };
        pos = step.apply(word, start)?;
        out.push(pos);
    }
    Some(out)
}

/// Condensation test on an already computed run: for each `i < k`, the later
/// positions lie all to the right or all to the left of `x_i`.
fn condensed_run(positions: &[usize]) -> bool {
    let Some(&last) = positions.last() else {
        return false;
    };
    let (mut lo, mut hi) = (last, last);
    for &x in positions.iter().rev().skip(1) {
        if !(lo > x || hi < x) {
            return false;
        }
        lo = lo.min(x);
        hi = hi.max(x);
    }
    true
}

/// A nonempty sequence of instructions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ranker {
    steps: Vec<Step>,
}

impl Ranker {
    pub fn new(steps: Vec<Step>) -> Result<Ranker> {
        if steps.is_empty() {
            return Err(Error::InvalidArgument(
                "a ranker has at least one instruction".into(),
            ));
        }
        Ok(Ranker { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    pub fn block_count(&self) -> usize {
        block_count(&self.steps)
    }

    pub fn first_dir(&self) -> Dir {
        self.steps[0].dir
    }

    /// Final position on `word`, or `None` when undefined.
    pub fn eval(&self, word: &str) -> Option<usize> {
        let w: Vec<char> = word.chars().collect();
        self.eval_chars(&w)
    }

    pub fn eval_chars(&self, word: &[char]) -> Option<usize> {
        run(&self.steps, word).and_then(|p| p.last().copied())
    }

    pub fn is_condensed(&self, word: &str) -> bool {
        let w: Vec<char> = word.chars().collect();
        self.is_condensed_chars(&w)
    }

    pub fn is_condensed_chars(&self, word: &[char]) -> bool {
        run(&self.steps, word).is_some_and(|p| condensed_run(&p))
    }

    /// `self` followed by `tail`.
    pub fn then(&self, tail: &Ranker) -> Ranker {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&tail.steps);
        Ranker { steps }
    }

    /// Left-right mirror image with letters mapped through `rename`.
    pub fn mirror(&self, rename: impl Fn(char) -> char) -> Ranker {
        Ranker {
            steps: self
                .steps
                .iter()
                .map(|s| Step {
                    dir: s.dir.flip(),
                    letter: rename(s.letter),
                })
                .collect(),
        }
    }
}

pub fn block_count(steps: &[Step]) -> usize {
    if steps.is_empty() {
        return 0;
    }
    1 + steps.windows(2).filter(|w| w[0].dir != w[1].dir).count()
}

impl fmt::Display for Ranker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Ranker {
    type Err = Error;

    /// Tokens `X<letter>` / `Y<letter>`, e.g. `XaYbXc`.
    fn from_str(text: &str) -> Result<Ranker> {
        let chars: Vec<char> = text.chars().collect();
        let mut steps = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let dir = match chars[i] {
                'X' => Dir::X,
                'Y' => Dir::Y,
                _ => return Err(Error::syntax(i, "`X` or `Y`")),
            };
            match chars.get(i + 1) {
                Some(&c) if c.is_ascii_lowercase() => steps.push(Step { dir, letter: c }),
                _ => return Err(Error::syntax(i + 1, "a letter a-z")),
            }
            i += 2;
        }
        if steps.is_empty() {
            return Err(Error::syntax(0, "at least one instruction"));
        }
        Ok(Ranker { steps })
    }
}

/// Which ranker set an equivalence compares on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `R_{m,n}`, giving `≡_{m,n}`.
    Full,
    /// `Rˣ_{m,n}`, giving `⊳_{m,n}`.
    X,
    /// `Rʸ_{m,n}`, giving `⊲_{m,n}`.
    Y,
}

/// Membership of a step list in the variant's ranker set.
pub fn in_set(steps: &[Step], m: usize, n: usize, variant: Variant) -> bool {
    let (depth, blocks) = (steps.len(), block_count(steps));
    if depth == 0 {
        return false;
    }
    let full = depth <= n && blocks <= m;
    let lower = m >= 1 && n >= 1 && depth < n && blocks < m;
    match variant {
        Variant::Full => full,
        Variant::X => (full && steps[0].dir == Dir::X) || lower,
        Variant::Y => (full && steps[0].dir == Dir::Y) || lower,
    }
}

/// A finite, canonically ordered ranker set.
#[derive(Debug, Clone)]
pub struct RankerSet {
    pub alphabet: Vec<char>,
    pub m: usize,
    pub n: usize,
    pub variant: Variant,
    pub members: Vec<Ranker>,
}

impl RankerSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Bitset of the members condensed on `word`, in member order.
    pub fn signature(&self, word: &[char]) -> Signature {
        let mut bits = vec![0u64; self.members.len().div_ceil(64)];
        for (i, r) in self.members.iter().enumerate() {
            if r.is_condensed_chars(word) {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        Signature(bits)
    }

    /// Members condensed on `word`.
    pub fn condensed_on(&self, word: &str) -> Vec<Ranker> {
        let w: Vec<char> = word.chars().collect();
        self.members
            .iter()
            .filter(|r| r.is_condensed_chars(&w))
            .cloned()
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature(Vec<u64>);

/// Canonical order: by depth, then instruction-wise with `X < Y` and
/// letters in alphabet order.
fn canonical_steps(alphabet: &[char]) -> Vec<Step> {
    let mut letters = alphabet.to_vec();
    letters.sort_unstable();
    letters.dedup();
    letters
        .iter()
        .map(|&a| Step::x(a))
        .chain(letters.iter().map(|&a| Step::y(a)))
        .collect()
}

/// Enumerates `R_{m,n}`, `Rˣ_{m,n}` or `Rʸ_{m,n}` over `alphabet`.
pub fn enumerate_rankers(
    alphabet: &[char],
    m: usize,
    n: usize,
    variant: Variant,
    cap: usize,
) -> Result<RankerSet> {
    let steps = canonical_steps(alphabet);
    let mut members = Vec::new();
    let mut layer: Vec<Vec<Step>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for prefix in &layer {
            for &s in &steps {
                let mut r = prefix.clone();
                r.push(s);
                if block_count(&r) <= m {
                    next.push(r);
                }
            }
        }
        for r in &next {
            if in_set(r, m, n, variant) {
                if members.len() >= cap {
                    return Err(Error::SizeCapExceeded { cap });
                }
                members.push(Ranker { steps: r.clone() });
            }
        }
        layer = next;
    }
    Ok(RankerSet {
        alphabet: canonical_steps(alphabet)
            .iter()
            .filter(|s| s.dir == Dir::X)
            .map(|s| s.letter)
            .collect(),
        m,
        n,
        variant,
        members,
    })
}

/// Decides `u ⊳_{m,n} v`, `u ⊲_{m,n} v` or `u ≡_{m,n} v` over `alphabet`.
///
/// Condensation is closed under taking prefixes, so the search only extends
/// rankers that are condensed on at least one of the two words.
pub fn equivalent(
    u: &str,
    v: &str,
    alphabet: &[char],
    m: usize,
    n: usize,
    variant: Variant,
) -> bool {
    distinguishing_ranker(u, v, alphabet, m, n, variant).is_none()
}

/// A ranker of the variant's set condensed on exactly one of `u`, `v`.
/// The first one in canonical order among the shortest.
pub fn distinguishing_ranker(
    u: &str,
    v: &str,
    alphabet: &[char],
    m: usize,
    n: usize,
    variant: Variant,
) -> Option<Ranker> {
    let u: Vec<char> = u.chars().collect();
    let v: Vec<char> = v.chars().collect();
    let steps = canonical_steps(alphabet);
    let mut layer: Vec<Vec<Step>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for prefix in &layer {
            for &s in &steps {
                let mut r = prefix.clone();
                r.push(s);
                if block_count(&r) > m {
                    continue;
                }
                let cu = run(&r, &u).is_some_and(|p| condensed_run(&p));
                let cv = run(&r, &v).is_some_and(|p| condensed_run(&p));
                if cu != cv && in_set(&r, m, n, variant) {
                    return Some(Ranker { steps: r });
                }
                if cu || cv {
                    next.push(r);
                }
            }
        }
        layer = next;
    }
    None
}

/// `u ≡_{1,n} v`: single-block rankers are condensed exactly when defined,
/// and `X_{a_1}⋯X_{a_k}` is defined iff `a_1⋯a_k` is a subsequence, so this
/// is agreement on subsequences of length at most `n`.
pub fn one_block_equivalent(u: &str, v: &str, n: usize) -> bool {
    let u: Vec<char> = u.chars().collect();
    let v: Vec<char> = v.chars().collect();
    let mut letters: Vec<char> = u.iter().chain(&v).copied().collect();
    letters.sort_unstable();
    letters.dedup();
    // memo[(i, j)] = largest budget already verified from that state
    let mut memo: HashMap<(usize, usize), usize> = HashMap::new();
    fn go(
        u: &[char],
        v: &[char],
        letters: &[char],
        i: usize,
        j: usize,
        budget: usize,
        memo: &mut HashMap<(usize, usize), usize>,
    ) -> bool {
        if budget == 0 || memo.get(&(i, j)).is_some_and(|&b| b >= budget) {
            return true;
        }
        for &a in letters {
            let nu = u[i..].iter().position(|&c| c == a);
            let nv = v[j..].iter().position(|&c| c == a);
            match (nu, nv) {
                (None, None) => {}
                (Some(p), Some(q)) => {
                    if !go(u, v, letters, i + p + 1, j + q + 1, budget - 1, memo) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        memo.insert((i, j), budget);
        true
    }
    go(&u, &v, &letters, 0, 0, n, &mut memo)
}

/// The quotient `A*/~` for one of the ranker equivalences, with its
/// canonical morphism and one shortest representative per class.
#[derive(Debug, Clone)]
pub struct RankerQuotient {
    pub morphism: Morphism,
    pub representatives: Vec<String>,
}

const SPOT_CHECKS: usize = 20;
const SPOT_CHECK_SEED: u64 = 0x5eed;

/// Builds `A*/⊳_{m,n}`, `A*/⊲_{m,n}` or `A*/≡_{m,n}`.
///
/// Classes are discovered breadth-first from the empty word by appending
/// letters, so representatives are shortest and the right action of letters
/// is a byproduct. Products extend the left representative by the letters of
/// the right one. Twenty random products are re-checked on alternative
/// representatives of the same classes.
pub fn quotient_monoid(
    alphabet: &[char],
    m: usize,
    n: usize,
    variant: Variant,
    limits: &Limits,
) -> Result<RankerQuotient> {
    let mut letters = alphabet.to_vec();
    letters.sort_unstable();
    letters.dedup();
    let set = enumerate_rankers(&letters, m, n, variant, limits.ranker_cap)?;
    let cap = limits.size_cap;

    let mut reps: Vec<Vec<char>> = vec![Vec::new()];
    let mut alternative: Vec<Option<Vec<char>>> = vec![None];
    let mut index: HashMap<Signature, usize> = HashMap::new();
    index.insert(set.signature(&[]), 0);
    let k = letters.len();
    let mut action: Vec<usize> = Vec::new();
    let mut head = 0;
    while head < reps.len() {
        for &a in &letters {
            let mut w = reps[head].clone();
            w.push(a);
            let sig = set.signature(&w);
            let id = match index.get(&sig) {
                Some(&id) => {
                    if alternative[id].is_none() && w != reps[id] {
                        alternative[id] = Some(w);
                    }
                    id
                }
                None => {
                    let id = reps.len();
                    if id >= cap {
                        return Err(Error::SizeCapExceeded { cap });
                    }
                    index.insert(sig, id);
                    reps.push(w);
                    alternative.push(None);
                    id
                }
            };
            action.push(id);
        }
        head += 1;
    }

    let size = reps.len();
    let letter_pos: HashMap<char, usize> =
        letters.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let act = |mut class: usize, word: &[char]| {
        for c in word {
            class = action[class * k + letter_pos[c]];
        }
        class
    };
    let mut table = vec![0usize; size * size];
    for x in 0..size {
        for y in 0..size {
            table[x * size + y] = act(x, &reps[y]);
        }
    }

    let class_of = |w: &[char]| -> Result<usize> {
        index.get(&set.signature(w)).copied().ok_or_else(|| {
            Error::Inconsistent(format!(
                "word {:?} reached an undiscovered class",
                String::from_iter(w)
            ))
        })
    };
    let mut rng = ChaCha8Rng::seed_from_u64(SPOT_CHECK_SEED);
    for _ in 0..SPOT_CHECKS {
        let x = rng.gen_range(0..size);
        let y = rng.gen_range(0..size);
        let pick = |c: usize| alternative[c].clone().unwrap_or_else(|| reps[c].clone());
        let expected = table[x * size + y];
        for (left, right) in [(reps[x].clone(), reps[y].clone()), (pick(x), pick(y))] {
            let mut w = left;
            w.extend_from_slice(&right);
            if class_of(&w)? != expected {
                return Err(Error::Incompatible(format!(
                    "ranker equivalence is not a congruence on classes {x} and {y}"
                )));
            }
        }
    }

    let representatives: Vec<String> = reps.iter().map(String::from_iter).collect();
    let labels = representatives
        .iter()
        .map(|w| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.clone()
            }
        })
        .collect();
    let images = letters
        .iter()
        .enumerate()
        .map(|(i, &a)| (a, ElementId(action[i])))
        .collect();
    Ok(RankerQuotient {
        morphism: Morphism {
            monoid: Monoid::from_parts(size, 0, table, Some(labels)),
            images,
        },
        representatives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(text: &str) -> Ranker {
        text.parse().unwrap()
    }

    #[test]
    fn worked_evaluations() {
        let xyz = r("XaYbXc");
        assert_eq!(xyz.eval("bca"), Some(2));
        assert_eq!(xyz.eval("bac"), Some(3));
        assert_eq!(xyz.eval("abac"), None);
        assert_eq!(xyz.eval("bcba"), None);
        assert!(xyz.is_condensed("bca"));
        assert!(!xyz.is_condensed("bac"));
    }

    #[test]
    fn boundaries() {
        assert_eq!(r("Ya").eval("aba"), Some(3));
        assert_eq!(r("Xa").eval("bba"), Some(3));
        assert_eq!(r("YaYa").eval("a"), None);
        assert_eq!(r("Xa").eval(""), None);
        assert!(r("Xb").is_condensed("ab"));
        assert!(!r("Xb").is_condensed("aa"));
    }

    #[test]
    fn blocks_and_depth() {
        assert_eq!((r("XaXb").block_count(), r("XaXb").depth()), (1, 2));
        assert_eq!((r("XaYbXc").block_count(), r("XaYbXc").depth()), (3, 3));
        assert_eq!((r("Ya").block_count(), r("Ya").depth()), (1, 1));
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(r("XaYbXc").to_string(), "XaYbXc");
        assert!("".parse::<Ranker>().is_err());
        assert!("Xa Y".parse::<Ranker>().is_err());
        assert!("Za".parse::<Ranker>().is_err());
        assert!("XA".parse::<Ranker>().is_err());
    }

    #[test]
    fn enumeration_sizes() {
        let ab = ['a', 'b'];
        let full = enumerate_rankers(&ab, 1, 1, Variant::Full, 100).unwrap();
        let names: Vec<String> = full.members.iter().map(|r| r.to_string()).collect();
        assert_eq!(names, ["Xa", "Xb", "Ya", "Yb"]);
        assert_eq!(
            enumerate_rankers(&['a'], 2, 2, Variant::Full, 100)
                .unwrap()
                .len(),
            6
        );
        let x = enumerate_rankers(&ab, 1, 1, Variant::X, 100).unwrap();
        let names: Vec<String> = x.members.iter().map(|r| r.to_string()).collect();
        assert_eq!(names, ["Xa", "Xb"]);
        assert!(enumerate_rankers(&ab, 0, 3, Variant::Full, 100)
            .unwrap()
            .is_empty());
        assert!(enumerate_rankers(&ab, 3, 0, Variant::Full, 100)
            .unwrap()
            .is_empty());
        assert!(matches!(
            enumerate_rankers(&ab, 3, 4, Variant::Full, 10),
            Err(Error::SizeCapExceeded { cap: 10 })
        ));
    }

    #[test]
    fn signatures() {
        let set = enumerate_rankers(&['a'], 1, 1, Variant::Full, 100).unwrap();
        assert!(set.condensed_on("").is_empty());
        assert_eq!(set.condensed_on("a").len(), 2);
        let set = enumerate_rankers(&['a', 'b'], 1, 2, Variant::Full, 100).unwrap();
        assert_ne!(set.condensed_on("ab"), set.condensed_on("ba"));
        assert!(set.condensed_on("ab").contains(&r("XaXb")));
        assert!(!set.condensed_on("ba").contains(&r("XaXb")));
    }

    #[test]
    fn equivalences() {
        let ab = ['a', 'b'];
        assert!(equivalent("abba", "abba", &ab, 2, 3, Variant::Full));
        assert!(equivalent("ab", "ba", &ab, 1, 1, Variant::Full));
        assert!(!equivalent("ab", "ba", &ab, 1, 2, Variant::Full));
        assert!(equivalent("ab", "bbb", &ab, 0, 5, Variant::Full));
        assert!(equivalent("ab", "bbb", &ab, 5, 0, Variant::Full));
        assert_eq!(
            distinguishing_ranker("ab", "ba", &ab, 1, 2, Variant::Full),
            Some(r("XaXb"))
        );
    }

    #[test]
    fn enumeration_agrees_with_search() {
        let ab = ['a', 'b'];
        let words = [
            "", "a", "ab", "ba", "aab", "aba", "bab", "abab", "abba", "baab",
        ];
        for variant in [Variant::Full, Variant::X, Variant::Y] {
            for (m, n) in [(1, 2), (2, 2), (2, 3), (3, 3)] {
                let set = enumerate_rankers(&ab, m, n, variant, 10_000).unwrap();
                for u in words {
                    for v in words {
                        let by_set = set.signature(&u.chars().collect::<Vec<_>>())
                            == set.signature(&v.chars().collect::<Vec<_>>());
                        assert_eq!(
                            by_set,
                            equivalent(u, v, &ab, m, n, variant),
                            "{u} {v} {m} {n} {variant:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn one_block_matches_ranker_sets() {
        let ab = ['a', 'b'];
        let words = [
            "", "a", "b", "ab", "ba", "aab", "abab", "baba", "abba", "bbaa",
        ];
        for n in 0..=4 {
            for u in words {
                for v in words {
                    assert_eq!(
                        one_block_equivalent(u, v, n),
                        equivalent(u, v, &ab, 1, n, Variant::Full),
                        "{u} {v} {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn small_quotients() {
        let q = quotient_monoid(&['a'], 1, 1, Variant::Full, &Limits::default()).unwrap();
        let m = &q.morphism.monoid;
        assert_eq!(m.size(), 2);
        let a = q.morphism.letter('a').unwrap();
        assert_eq!(m.mul(a, a), a);
        for variant in [Variant::Full, Variant::X, Variant::Y] {
            let q = quotient_monoid(&['a'], 2, 0, variant, &Limits::default()).unwrap();
            assert_eq!(q.morphism.monoid.size(), 1);
        }
        let q = quotient_monoid(&['a', 'b'], 2, 2, Variant::Full, &Limits::default()).unwrap();
        q.morphism.monoid.check_associativity().unwrap();
        assert_eq!(q.representatives[0], "");
    }
}
