//! The languages `L_{k,ℓ}` and words separating the join level `W_m` from
//! `R_{m+1} ∩ L_{m+1}`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::lang::{regex_to_dfa, syntactic_monoid, Dfa, Regex, SyntacticMorphism};
use crate::limits::Limits;
use crate::monoid::{ElementId, Monoid};
use crate::omega::{self, Assignment, Verdict};
use crate::ranker::{Dir, Ranker, Step};
use crate::variety;

/// Letters of the construction before they are given concrete names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Abstract {
    D,
    B(usize),
    C(usize),
}

/// Largest index `i` with concrete letters for both `b_i` and `c_i`.
pub const MAX_INDEX: usize = 13;

/// `d → d`, `b_2 → b`, `c_2 → c`, then `b_3 → e`, `c_3 → f`, `b_4 → g`, …
pub fn letter(x: Abstract) -> Result<char> {
    let offset = |i: usize, second: u8| -> Result<char> {
        if !(2..=MAX_INDEX).contains(&i) {
            return Err(Error::AlphabetExhausted { needed: 2 * i - 1 });
        }
        Ok(if i == 2 {
            b"bc"[second as usize] as char
        } else {
            (b'e' + 2 * (i as u8 - 3) + second) as char
        })
    };
    match x {
        Abstract::D => Ok('d'),
        Abstract::B(i) => offset(i, 0),
        Abstract::C(i) => offset(i, 1),
    }
}

/// `A_i = {b_2, …, b_{i-1}, c_2, …, c_{i-1}, d}`, listed as `d, b_2, c_2, b_3, …`.
fn a_set(i: usize) -> Vec<Abstract> {
    let mut out = vec![Abstract::D];
    for j in 2..i {
        out.extend([Abstract::B(j), Abstract::C(j)]);
    }
    out
}

fn b_set(i: usize) -> Vec<Abstract> {
    let mut s = a_set(i);
    s.push(Abstract::B(i));
    s
}

fn c_set(i: usize) -> Vec<Abstract> {
    let mut s = a_set(i);
    s.push(Abstract::C(i));
    s
}

fn concrete(set: &[Abstract]) -> Result<Vec<char>> {
    set.iter().map(|&x| letter(x)).collect()
}

/// Shape of `L_{k,ℓ}` as a sequence of blocks `X*` and single letters.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Star(Vec<char>),
    Letter(char),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSpec {
    pub k: usize,
    pub l: usize,
    pub letter_map: BTreeMap<Abstract, char>,
    pub alphabet: Vec<char>,
    tokens: Vec<Token>,
}

impl WitnessSpec {
    pub fn new(k: usize, l: usize) -> Result<WitnessSpec> {
        if k == 0 || l == 0 {
            return Err(Error::InvalidArgument("witness levels start at 1".into()));
        }
        let mut tokens = Vec::new();
        for i in (2..=k).rev() {
            tokens.push(Token::Star(concrete(&b_set(i))?));
            tokens.push(Token::Letter(letter(Abstract::B(i))?));
        }
        tokens.push(Token::Letter('d'));
        for j in 2..=l {
            tokens.push(Token::Letter(letter(Abstract::C(j))?));
            tokens.push(Token::Star(concrete(&c_set(j))?));
        }
        let mut letter_map = BTreeMap::new();
        let mut abstract_letters = vec![Abstract::D];
        for i in 2..=k.max(l) {
            abstract_letters.extend([Abstract::B(i), Abstract::C(i)]);
        }
        let used: BTreeSet<char> = tokens.iter().flat_map(s_or_letter).collect();
        for x in abstract_letters {
            let c = letter(x)?;
            if used.contains(&c) {
                letter_map.insert(x, c);
            }
        }
        Ok(WitnessSpec {
            k,
            l,
            letter_map,
            alphabet: used.into_iter().collect(),
            tokens,
        })
    }

    /// `B_k* b_k ⋯ B_2* b_2 d c_2 C_2* ⋯ c_ℓ C_ℓ*`.
    pub fn regex(&self) -> Regex {
        Regex::sequence(self.tokens.iter().map(|t| match t {
            Token::Star(s) => Regex::star(Regex::any_of(s)),
            Token::Letter(a) => Regex::lit(*a),
        }))
    }

    pub fn dfa(&self, limits: &Limits) -> Result<Dfa> {
        Ok(regex_to_dfa(&self.regex(), &self.alphabet, limits)?.minimize())
    }

    /// Number of ways to cut `word` as `u_k b_k ⋯ u_2 b_2 d c_2 v_2 ⋯ c_ℓ v_ℓ`
    /// with `u_i ∈ B_i*` and `v_j ∈ C_j*`.
    pub fn factorization_count(&self, word: &str) -> u64 {
        let w: Vec<char> = word.chars().collect();
        let n = w.len();
        let mut ways = vec![0u64; n + 1];
        ways[0] = 1;
        for t in &self.tokens {
            let mut next = vec![0u64; n + 1];
            for p in 0..=n {
                if ways[p] == 0 {
                    continue;
                }
                match t {
                    Token::Letter(a) => {
                        if p < n && w[p] == *a {
                            next[p + 1] += ways[p];
                        }
                    }
                    Token::Star(s) => {
                        next[p] += ways[p];
                        for q in p..n {
                            if !s.contains(&w[q]) {
                                break;
                            }
                            next[q + 1] += ways[p];
                        }
                    }
                }
            }
            ways = next;
        }
        ways[n]
    }
}

fn s_or_letter(t: &Token) -> Vec<char> {
    match t {
        Token::Star(s) => s.clone(),
        Token::Letter(a) => vec![*a],
    }
}

pub fn witness_language(k: usize, l: usize) -> Result<(Regex, WitnessSpec)> {
    let spec = WitnessSpec::new(k, l)?;
    Ok((spec.regex(), spec))
}

/// `u = e_m ⋯ e_1 d f_1 ⋯ f_m` and `v = e_m ⋯ e_1 f_1 ⋯ f_m` with
/// `e_i = (e_{i-1} ⋯ e_1 d f_1 ⋯ f_{i-1} b_i)^n`, `f_i = (c_i e_{i-1} ⋯ d ⋯ f_{i-1})^n`.
pub fn witness_words(m: usize, n: usize) -> Result<(String, String)> {
    if m == 0 {
        return Err(Error::InvalidArgument("witness levels start at 1".into()));
    }
    // middle = e_i ⋯ e_1 d f_1 ⋯ f_i; es/fs collect e_i and f_i for i >= 2
    let mut middle = String::from("d");
    let mut es: Vec<String> = Vec::new();
    let mut fs: Vec<String> = Vec::new();
    for i in 2..=m {
        let b = letter(Abstract::B(i))?;
        let c = letter(Abstract::C(i))?;
        let e = format!("{middle}{b}").repeat(n);
        let f = format!("{c}{middle}").repeat(n);
        middle = format!("{e}{middle}{f}");
        es.push(e);
        fs.push(f);
    }
    let left: String = es.iter().rev().map(String::as_str).collect();
    let right: String = fs.concat();
    Ok((format!("{left}d{right}"), format!("{left}{right}")))
}

/// Witness words whose exponent makes every `n`-th power of `monoid`
/// idempotent.
pub fn witness_words_for(m: usize, monoid: &Monoid) -> Result<(String, String)> {
    witness_words(m, monoid.global_exponent())
}

/// How the reported `W_m` counterexample was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CounterexampleSource {
    /// Full scan, first failing assignment.
    Scan,
    /// The scan was over the search cap; the letters `d`, `b_{i+1}`,
    /// `c_{i+1}` were substituted for `z`, `x_i`, `y_i` and checked.
    Letters,
}

#[derive(Debug, Clone)]
pub struct SeparationReport {
    pub m: usize,
    pub regex: String,
    pub monoid_size: usize,
    pub in_r_next: bool,
    pub in_l_next: bool,
    pub in_wm: bool,
    pub counterexample: Assignment,
    pub counterexample_source: CounterexampleSource,
    /// Both sides re-evaluated on the counterexample.
    pub counterexample_sides: (ElementId, ElementId),
    pub exponent: usize,
    pub u: String,
    pub v: String,
    pub u_in_language: bool,
    pub v_in_language: bool,
    pub images_differ: bool,
    pub syntactic: SyntacticMorphism,
}

impl SeparationReport {
    pub fn passed(&self) -> bool {
        self.in_r_next
            && self.in_l_next
            && !self.in_wm
            && self.counterexample_sides.0 != self.counterexample_sides.1
            && self.u_in_language
            && !self.v_in_language
            && self.images_differ
    }
}

/// The assignment `z ↦ φ(d)`, `x_i ↦ φ(b_{i+1})`, `y_i ↦ φ(c_{i+1})`.
fn letter_assignment(phi: &SyntacticMorphism, m: usize) -> Result<Assignment> {
    let mut out = vec![("z".to_string(), phi.morphism.letter('d')?)];
    for i in 1..m {
        out.push((
            format!("x{i}"),
            phi.morphism.letter(letter(Abstract::B(i + 1))?)?,
        ));
    }
    for i in 1..m {
        out.push((
            format!("y{i}"),
            phi.morphism.letter(letter(Abstract::C(i + 1))?)?,
        ));
    }
    Ok(Assignment(out))
}

/// A counterexample to the `W_m` identity on `monoid`, or `NotAWitness`
/// when the identity holds.
pub fn check_witness_monoid(
    monoid: &Monoid,
    m: usize,
    limits: &Limits,
) -> Result<(Assignment, ElementId, ElementId)> {
    match variety::wm_verdict(monoid, m, limits)? {
        Verdict::Holds => Err(Error::NotAWitness { m }),
        Verdict::Fails {
            assignment,
            lhs,
            rhs,
        } => Ok((assignment, lhs, rhs)),
    }
}

/// Checks on `L_{m,m}` that its syntactic monoid lies in `R_{m+1}` and
/// `L_{m+1}` but fails the `W_m` identity, and that the witness words are
/// separated by the language and by the syntactic morphism.
pub fn verify_separation(m: usize, limits: &Limits) -> Result<SeparationReport> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "separation needs m >= 2, got {m}"
        )));
    }
    let spec = WitnessSpec::new(m, m)?;
    let dfa = spec.dfa(limits)?;
    let phi = syntactic_monoid(&dfa, limits)?;
    let monoid = &phi.morphism.monoid;
    let in_r_next = variety::in_rm_malcev(monoid, m + 1)?;
    let in_l_next = variety::in_lm_malcev(monoid, m + 1)?;

    let identity = omega::w_identity(m);
    let (in_wm, counterexample, source) = match variety::wm_verdict(monoid, m, limits) {
        Ok(Verdict::Holds) => (
            true,
            letter_assignment(&phi, m)?,
            CounterexampleSource::Letters,
        ),
        Ok(Verdict::Fails { assignment, .. }) => (false, assignment, CounterexampleSource::Scan),
        Err(Error::SearchSpaceExceeded { .. }) => (
            false,
            letter_assignment(&phi, m)?,
            CounterexampleSource::Letters,
        ),
        Err(e) => return Err(e),
    };
    let map = counterexample.to_map();
    let sides = (
        omega::eval_term(monoid, &identity.lhs, &map)?,
        omega::eval_term(monoid, &identity.rhs, &map)?,
    );
    // without a scan, non-membership rests on the substituted letters
    let in_wm = in_wm || (source == CounterexampleSource::Letters && sides.0 == sides.1);

    let exponent = monoid.global_exponent();
    let (u, v) = witness_words(m, exponent)?;
    let images_differ = phi.morphism.eval(&u)? != phi.morphism.eval(&v)?;
    Ok(SeparationReport {
        m,
        regex: spec.regex().to_string(),
        monoid_size: monoid.size(),
        in_r_next,
        in_l_next,
        in_wm,
        counterexample,
        counterexample_source: source,
        counterexample_sides: sides,
        exponent,
        u_in_language: dfa.accepts(&u)?,
        v_in_language: dfa.accepts(&v)?,
        u,
        v,
        images_differ,
        syntactic: phi,
    })
}

/// Ranker sets `S`, `T` with `L = ⋂_{r∈S} L_c(r) \ ⋃_{r∈T} L_c(r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankerDescription {
    pub s: Vec<Ranker>,
    pub t: Vec<Ranker>,
    /// Direction every ranker starts with.
    pub side: Dir,
}

impl RankerDescription {
    pub fn accepts(&self, word: &str) -> bool {
        let w: Vec<char> = word.chars().collect();
        self.s.iter().all(|r| r.is_condensed_chars(&w))
            && !self.t.iter().any(|r| r.is_condensed_chars(&w))
    }

    /// Description of the mirrored language: reversed words with `b_i` and
    /// `c_i` exchanged.
    pub fn mirror(&self) -> RankerDescription {
        let swap = swap_b_c();
        let image = |r: &Ranker| r.mirror(|a| swap.get(&a).copied().unwrap_or(a));
        RankerDescription {
            s: self.s.iter().map(image).collect(),
            t: self.t.iter().map(image).collect(),
            side: self.side.flip(),
        }
    }
}

fn swap_b_c() -> BTreeMap<char, char> {
    let mut out = BTreeMap::new();
    for i in 2..=MAX_INDEX {
        let (b, c) = (
            letter(Abstract::B(i)).unwrap(),
            letter(Abstract::C(i)).unwrap(),
        );
        out.insert(b, c);
        out.insert(c, b);
    }
    out
}

fn single(steps: &[Step]) -> Ranker {
    Ranker::new(steps.to_vec()).expect("nonempty")
}

/// `X`-leading description of `L_{m,m+1}` over `alphabet` (which must
/// contain `C_{m+1}`).
pub fn ranker_description(m: usize, alphabet: &[char]) -> Result<RankerDescription> {
    if m == 0 {
        return Err(Error::InvalidArgument("descriptions start at m = 1".into()));
    }
    let needed = concrete(&c_set(m + 1))?;
    if let Some(a) = needed.iter().find(|a| !alphabet.contains(a)) {
        return Err(Error::PreconditionFailed(format!("alphabet lacks `{a}`")));
    }
    let c_next = letter(Abstract::C(m + 1))?;
    let outside = |set: &[char]| -> Vec<Ranker> {
        let mut letters: Vec<char> = alphabet
            .iter()
            .copied()
            .filter(|a| !set.contains(a))
            .collect();
        letters.sort_unstable();
        letters.dedup();
        letters.into_iter().map(|a| single(&[Step::x(a)])).collect()
    };
    if m == 1 {
        let (c, d) = (c_next, 'd');
        let mut t = vec![single(&[Step::x(c), Step::y(d), Step::y(d)])];
        t.extend(outside(&needed));
        return Ok(RankerDescription {
            s: vec![single(&[Step::x(c), Step::y(d)])],
            t,
            side: Dir::X,
        });
    }
    let c_m = letter(Abstract::C(m))?;
    let mirrored_alphabet: Vec<char> = {
        let swap = swap_b_c();
        alphabet
            .iter()
            .map(|a| swap.get(a).copied().unwrap_or(*a))
            .collect()
    };
    let inner = ranker_description(m - 1, &mirrored_alphabet)?.mirror();
    let prefix = single(&[Step::x(c_m)]);
    let both = single(&[Step::x(c_m), Step::x(c_next)]);
    let mut s: Vec<Ranker> = inner.s.iter().map(|r| prefix.then(r)).collect();
    s.push(both.clone());
    let mut t: Vec<Ranker> = inner.t.iter().map(|r| prefix.then(r)).collect();
    t.extend(outside(&needed));
    let c_m_set = concrete(&c_set(m))?;
    let mut tail: Vec<char> = alphabet
        .iter()
        .copied()
        .filter(|a| !c_m_set.contains(a))
        .collect();
    tail.sort_unstable();
    tail.dedup();
    t.extend(tail.into_iter().map(|a| both.then(&single(&[Step::y(a)]))));
    Ok(RankerDescription { s, t, side: Dir::X })
}
