//! Unambiguous interval temporal logic over finite words.
//!
//! `φ F_a ψ` splits a word at its first `a`, `φ L_a ψ` at its last `a`; the
//! left part must satisfy `φ` and the right part `ψ`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lang::{syntactic_monoid, Dfa};
use crate::limits::Limits;
use crate::ranker::{self, Variant};
use crate::variety;

pub type F = Arc<Formula>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Not(F),
    Or(F, F),
    And(F, F),
    FMod(F, char, F),
    LMod(F, char, F),
}

impl Formula {
    pub fn t() -> F {
        Arc::new(Formula::True)
    }

    pub fn f() -> F {
        Arc::new(Formula::False)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(p: F) -> F {
        Arc::new(Formula::Not(p))
    }

    pub fn or(p: F, q: F) -> F {
        Arc::new(Formula::Or(p, q))
    }

    pub fn and(p: F, q: F) -> F {
        Arc::new(Formula::And(p, q))
    }

    pub fn first(p: F, a: char, q: F) -> F {
        Arc::new(Formula::FMod(p, a, q))
    }

    pub fn last(p: F, a: char, q: F) -> F {
        Arc::new(Formula::LMod(p, a, q))
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False => 1,
            Formula::Not(p) => 1 + p.size(),
            Formula::Or(p, q)
            | Formula::And(p, q)
            | Formula::FMod(p, _, q)
            | Formula::LMod(p, _, q) => 1 + p.size() + q.size(),
        }
    }

    pub fn letters(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<char>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Not(p) => p.collect_letters(out),
            Formula::Or(p, q) | Formula::And(p, q) => {
                p.collect_letters(out);
                q.collect_letters(out);
            }
            Formula::FMod(p, a, q) | Formula::LMod(p, a, q) => {
                out.insert(*a);
                p.collect_letters(out);
                q.collect_letters(out);
            }
        }
    }

    pub fn eval(&self, word: &str) -> bool {
        let w: Vec<char> = word.chars().collect();
        self.eval_chars(&w)
    }

    pub fn eval_chars(&self, w: &[char]) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Not(p) => !p.eval_chars(w),
            Formula::Or(p, q) => p.eval_chars(w) || q.eval_chars(w),
            Formula::And(p, q) => p.eval_chars(w) && q.eval_chars(w),
            Formula::FMod(p, a, q) => match w.iter().position(|c| c == a) {
                Some(i) => p.eval_chars(&w[..i]) && q.eval_chars(&w[i + 1..]),
                None => false,
            },
            Formula::LMod(p, a, q) => match w.iter().rposition(|c| c == a) {
                Some(i) => p.eval_chars(&w[..i]) && q.eval_chars(&w[i + 1..]),
                None => false,
            },
        }
    }

    /// Number of direction blocks.
    pub fn turns(&self) -> usize {
        match self {
            Formula::True | Formula::False => 0,
            Formula::Not(p) => p.turns(),
            Formula::Or(p, q) | Formula::And(p, q) => p.turns().max(q.turns()),
            Formula::FMod(p, _, q) => (p.turns() + 1).max(q.turns()),
            Formula::LMod(p, _, q) => p.turns().max(q.turns() + 1),
        }
    }

    /// Modal nesting depth.
    pub fn nesting_depth(&self) -> usize {
        match self {
            Formula::True | Formula::False => 0,
            Formula::Not(p) => p.nesting_depth(),
            Formula::Or(p, q) | Formula::And(p, q) => p.nesting_depth().max(q.nesting_depth()),
            Formula::FMod(p, _, q) | Formula::LMod(p, _, q) => {
                1 + p.nesting_depth().max(q.nesting_depth())
            }
        }
    }

    pub fn in_fragment(&self, m: usize, n: usize) -> bool {
        self.turns() <= m && self.nesting_depth() <= n
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(..) => 0,
            Formula::And(..) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, p: &Formula, min: u8| {
            if p.precedence() < min {
                write!(f, "({p})")
            } else {
                write!(f, "{p}")
            }
        };
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Not(p) => {
                f.write_str("!")?;
                wrap(f, p, 2)
            }
            Formula::Or(p, q) => {
                wrap(f, p, 0)?;
                f.write_str(" | ")?;
                wrap(f, q, 1)
            }
            Formula::And(p, q) => {
                wrap(f, p, 1)?;
                f.write_str(" & ")?;
                wrap(f, q, 2)
            }
            Formula::FMod(p, a, q) => write!(f, "({p} F{a} {q})"),
            Formula::LMod(p, a, q) => write!(f, "({p} L{a} {q})"),
        }
    }
}

pub fn render_formula(p: &Formula) -> String {
    p.to_string()
}

/// Parses `true`, `false`, `!`, `&`, `|`, grouping and modal terms
/// `(φ Fa ψ)` / `(φ La ψ)`.
pub fn parse_formula(text: &str) -> Result<F> {
    let mut p = FormulaParser {
        src: text.as_bytes(),
        pos: 0,
    };
    let f = p.or()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(Error::syntax(p.pos, "end of input"));
    }
    Ok(f)
}

struct FormulaParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl FormulaParser<'_> {
    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let end = self.pos + word.len();
        let follows_ident = self.src.get(end).is_some_and(|c| c.is_ascii_alphanumeric());
        if self.src.get(self.pos..end) == Some(word.as_bytes()) && !follows_ident {
            self.pos = end;
            true
        } else {
            false
        }
    }

    fn or(&mut self) -> Result<F> {
        let mut f = self.and()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            f = Formula::or(f, self.and()?);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<F> {
        let mut f = self.unary()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<F> {
        match self.peek() {
            Some(b'!') => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let left = self.or()?;
                let f = match self.peek() {
                    Some(m @ (b'F' | b'L')) => {
                        let a = match self.src.get(self.pos + 1) {
                            Some(&c) if c.is_ascii_lowercase() => c as char,
                            _ => {
                                return Err(Error::syntax(
                                    self.pos + 1,
                                    "a letter a-z after the modality",
                                ))
                            }
                        };
                        self.pos += 2;
                        let right = self.or()?;
                        if m == b'F' {
                            Formula::first(left, a, right)
                        } else {
                            Formula::last(left, a, right)
                        }
                    }
                    _ => left,
                };
                if self.peek() != Some(b')') {
                    return Err(Error::syntax(self.pos, "`)`"));
                }
                self.pos += 1;
                Ok(f)
            }
            _ if self.keyword("true") => Ok(Formula::t()),
            _ if self.keyword("false") => Ok(Formula::f()),
            _ => Err(Error::syntax(self.pos, "`true`, `false`, `!` or `(`")),
        }
    }
}

/// Deterministic automaton for `(L1 ∩ B*) a L2`: run `d1` until the first
/// `a`, then hand over to `d2`.
fn first_split(d1: &Dfa, a: char, d2: &Dfa) -> Result<Dfa> {
    let alphabet = d1.alphabet().to_vec();
    let (n1, n2) = (d1.states(), d2.states());
    let sink = n1 + n2;
    let mut rows = Vec::with_capacity(sink + 1);
    let mut accepting = Vec::with_capacity(sink + 1);
    for q in 0..n1 {
        let row = alphabet
            .iter()
            .map(|&c| {
                if c != a {
                    d1.next(q, c)
                } else if d1.is_accepting(q) {
                    Ok(n1 + d2.initial())
                } else {
                    Ok(sink)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
        accepting.push(false);
    }
    for q in 0..n2 {
        rows.push(
            alphabet
                .iter()
                .map(|&c| Ok(n1 + d2.next(q, c)?))
                .collect::<Result<Vec<_>>>()?,
        );
        accepting.push(d2.is_accepting(q));
    }
    rows.push(vec![sink; alphabet.len()]);
    accepting.push(false);
    Dfa::new(&alphabet, d1.initial(), accepting, rows)
}

/// Deterministic automaton for `L1 a (L2 ∩ B*)`: track `d1` and the set of
/// `d2` runs started after each `a` so far (a run dies on the next `a`).
fn last_split(d1: &Dfa, a: char, d2: &Dfa, limits: &Limits) -> Result<Dfa> {
    let alphabet = d1.alphabet().to_vec();
    let mut index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    let start = (d1.initial(), Vec::new());
    index.insert(start.clone(), 0);
    let mut states = vec![start];
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut head = 0;
    while head < states.len() {
        let (q, runs) = states[head].clone();
        let mut row = Vec::with_capacity(alphabet.len());
        for &c in &alphabet {
            let q2 = d1.next(q, c)?;
            let mut next: Vec<usize> = if c == a {
                Vec::new()
            } else {
                runs.iter().map(|&s| d2.next(s, c)).collect::<Result<_>>()?
            };
            if c == a && d1.is_accepting(q) {
                next.push(d2.initial());
            }
            next.sort_unstable();
            next.dedup();
            let key = (q2, next);
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    if states.len() >= limits.state_cap {
                        return Err(Error::StateCapExceeded {
                            cap: limits.state_cap,
                        });
                    }
                    index.insert(key.clone(), states.len());
                    states.push(key);
                    states.len() - 1
                }
            };
            row.push(id);
        }
        rows.push(row);
        head += 1;
    }
    let accepting = states
        .iter()
        .map(|(_, runs)| runs.iter().any(|&s| d2.is_accepting(s)))
        .collect();
    Dfa::new(&alphabet, 0, accepting, rows)
}

/// Minimal automaton for the models of `p` over `alphabet` (widened by the
/// letters of `p`).
pub fn compile_formula(p: &Formula, alphabet: &[char], limits: &Limits) -> Result<Dfa> {
    let mut letters: Vec<char> = alphabet.iter().copied().chain(p.letters()).collect();
    letters.sort_unstable();
    letters.dedup();
    compile(p, &letters, limits)
}

fn compile(p: &Formula, alphabet: &[char], limits: &Limits) -> Result<Dfa> {
    Ok(match p {
        Formula::True => Dfa::universal(alphabet, true),
        Formula::False => Dfa::universal(alphabet, false),
        Formula::Not(q) => compile(q, alphabet, limits)?.complement(),
        Formula::Or(q, r) => compile(q, alphabet, limits)?
            .product(&compile(r, alphabet, limits)?, |x, y| x || y, limits)?
            .minimize(),
        Formula::And(q, r) => compile(q, alphabet, limits)?
            .product(&compile(r, alphabet, limits)?, |x, y| x && y, limits)?
            .minimize(),
        Formula::FMod(q, a, r) => first_split(
            &compile(q, alphabet, limits)?,
            *a,
            &compile(r, alphabet, limits)?,
        )?
        .minimize(),
        Formula::LMod(q, a, r) => last_split(
            &compile(q, alphabet, limits)?,
            *a,
            &compile(r, alphabet, limits)?,
            limits,
        )?
        .minimize(),
    })
}

fn content(w: &[char]) -> BTreeSet<char> {
    w.iter().copied().collect()
}

/// A formula of `ITL_{m,n}` separating `u` and `v`, or `None` when
/// `u ≡_{m,n} v`.
///
/// Follows the inductive characterization of `⊳_{m,n}`: equal content,
/// `⊲_{m-1,n-1}`-equivalence of the whole words, and for each letter the
/// prefixes before its first occurrence `⊲_{m-1,n-1}`-equivalent and the
/// suffixes after it `⊳_{m,n-1}`-equivalent; dually for `⊲_{m,n}` at the last
/// occurrence.
pub fn distinguishing_formula(u: &str, v: &str, m: usize, n: usize) -> Option<F> {
    let u: Vec<char> = u.chars().collect();
    let v: Vec<char> = v.chars().collect();
    let mut memo = HashMap::new();
    separate(&u, &v, m, n, true, &mut memo).or_else(|| separate(&u, &v, m, n, false, &mut memo))
}

type Memo = HashMap<(Vec<char>, Vec<char>, usize, usize, bool), Option<F>>;

/// `forward` separates for `⊳` with `F` modalities, otherwise for `⊲` with
/// `L` modalities.
fn separate(
    u: &[char],
    v: &[char],
    m: usize,
    n: usize,
    forward: bool,
    memo: &mut Memo,
) -> Option<F> {
    if m == 0 || n == 0 {
        return None;
    }
    let key = (u.to_vec(), v.to_vec(), m, n, forward);
    if let Some(done) = memo.get(&key) {
        return done.clone();
    }
    let modal = |p: F, a: char, q: F| {
        if forward {
            Formula::first(p, a, q)
        } else {
            Formula::last(p, a, q)
        }
    };
    let (cu, cv) = (content(u), content(v));
    let found = if let Some(&a) = cu.symmetric_difference(&cv).next() {
        let p = modal(Formula::t(), a, Formula::t());
        Some(if cu.contains(&a) { p } else { Formula::not(p) })
    } else if let Some(p) = separate(u, v, m - 1, n - 1, !forward, memo) {
        Some(p)
    } else {
        cu.iter().find_map(|&a| {
            let (iu, iv) = if forward {
                (
                    u.iter().position(|&c| c == a)?,
                    v.iter().position(|&c| c == a)?,
                )
            } else {
                (
                    u.iter().rposition(|&c| c == a)?,
                    v.iter().rposition(|&c| c == a)?,
                )
            };
            let (u0, u1) = (&u[..iu], &u[iu + 1..]);
            let (v0, v1) = (&v[..iv], &v[iv + 1..]);
            // the side kept at the same level is the one the modality walks into
            let (near_u, near_v, far_u, far_v) = if forward {
                (u0, v0, u1, v1)
            } else {
                (u1, v1, u0, v0)
            };
            if let Some(p) = separate(near_u, near_v, m - 1, n - 1, !forward, memo) {
                let q = Formula::t();
                return Some(if forward {
                    modal(p, a, q)
                } else {
                    modal(q, a, p)
                });
            }
            separate(far_u, far_v, m, n - 1, forward, memo).map(|p| {
                let q = Formula::t();
                if forward {
                    modal(q, a, p)
                } else {
                    modal(p, a, q)
                }
            })
        })
    };
    // keep the formula true on `u`
    let found = found.map(|p| if p.eval_chars(u) { p } else { Formula::not(p) });
    memo.insert(key, found.clone());
    found
}

/// `u ≡_{m,n} v` decided by ranker signatures, for cross-checking.
pub fn ranker_equivalent(u: &str, v: &str, alphabet: &[char], m: usize, n: usize) -> bool {
    ranker::equivalent(u, v, alphabet, m, n, Variant::Full)
}

/// Decides whether the language of `d` is definable in `ITL_m`, i.e. whether
/// its syntactic monoid satisfies the `W_m` identity.
pub fn definable_in_itl_m(d: &Dfa, m: usize, limits: &Limits) -> Result<bool> {
    let phi = syntactic_monoid(d, limits)?;
    variety::in_wm(&phi.morphism.monoid, m, limits)
}

/// Every formula with at most `max_size` nodes over `alphabet`, grouped by
/// size (index `s` holds the formulas of size `s`).
pub fn formulas_by_size(alphabet: &[char], max_size: usize) -> Vec<Vec<F>> {
    let mut by_size: Vec<Vec<F>> = vec![Vec::new(); max_size + 1];
    if max_size >= 1 {
        by_size[1] = vec![Formula::t(), Formula::f()];
    }
    for s in 2..=max_size {
        let mut out = Vec::new();
        for p in &by_size[s - 1] {
            out.push(Formula::not(p.clone()));
        }
        for ls in 1..s - 1 {
            let rs = s - 1 - ls;
            for p in &by_size[ls] {
                for q in &by_size[rs] {
                    out.push(Formula::and(p.clone(), q.clone()));
                    out.push(Formula::or(p.clone(), q.clone()));
                    for &a in alphabet {
                        out.push(Formula::first(p.clone(), a, q.clone()));
                        out.push(Formula::last(p.clone(), a, q.clone()));
                    }
                }
            }
        }
        by_size[s] = out;
    }
    by_size
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{dfa_equivalent, parse_regex, regex_to_dfa};

    fn p(text: &str) -> F {
        parse_formula(text).unwrap()
    }

    #[test]
    fn semantics() {
        assert!(p("true").eval(""));
        assert!(!p("(true Fa true)").eval(""));
        assert!(p("(true Fc true)").eval("bca"));
        assert!(!p("(true Fa (true Fb true))").eval("ba"));
        assert!(p("(true Fa (true Fb true))").eval("ab"));
        assert!(p("((true Fb true) La true)").eval("ba"));
        assert!(!p("((true Fb true) La true)").eval("ab"));
    }

    #[test]
    fn metrics() {
        let t = p("true");
        assert_eq!((t.turns(), t.nesting_depth()), (0, 0));
        let f = p("(true Fa (true Fb true))");
        assert_eq!((f.turns(), f.nesting_depth()), (1, 2));
        let g = p("((true Fb true) Fa true)");
        assert_eq!(g.turns(), 2);
        assert!(!g.in_fragment(1, 2));
        assert!(f.in_fragment(1, 2));
        assert!(t.in_fragment(0, 0));
        let mixed = p("((true Lb true) Fa true)");
        assert_eq!(mixed.turns(), 2);
        let h = p("(true Fa (true Lb true))");
        assert_eq!(h.turns(), 1);
    }

    #[test]
    fn parse_render() {
        assert_eq!(*p("true"), Formula::True);
        let nested = p("(true Fa (true Fb true))");
        assert_eq!(
            nested,
            Formula::first(
                Formula::t(),
                'a',
                Formula::first(Formula::t(), 'b', Formula::t())
            )
        );
        assert_eq!(nested.to_string(), "(true Fa (true Fb true))");
        assert_eq!(
            *p("!(true La false)"),
            Formula::Not(Formula::last(Formula::t(), 'a', Formula::f()))
        );
        for text in [
            "!(true La false)",
            "true | false & !true",
            "(true | false) & true",
            "(true & false Fa !true)",
        ] {
            assert_eq!(p(text).to_string(), text);
        }
        assert!(parse_formula("(true Fa").is_err());
        assert!(parse_formula("(true FA true)").is_err());
        assert!(parse_formula("truex").is_err());
        assert!(parse_formula("").is_err());
    }

    #[test]
    fn compilation() {
        let lim = Limits::default();
        let ab = ['a', 'b'];
        let re = |s: &str| regex_to_dfa(&parse_regex(s).unwrap(), &ab, &lim).unwrap();
        assert!(dfa_equivalent(
            &compile_formula(&p("(true Fa true)"), &ab, &lim).unwrap(),
            &re("b*a(a|b)*")
        ));
        assert!(!compile_formula(&p("false"), &ab, &lim)
            .unwrap()
            .accepts("")
            .unwrap());
        assert_eq!(compile_formula(&p("false"), &ab, &lim).unwrap().states(), 1);
        assert!(dfa_equivalent(
            &compile_formula(&p("!(true Fa true)"), &ab, &lim).unwrap(),
            &re("b*")
        ));
        assert!(dfa_equivalent(
            &compile_formula(&p("((true Fb true) La true)"), &ab, &lim).unwrap(),
            &re("(a|b)*b(a|b)*ab*")
        ));
    }

    #[test]
    fn distinguishing() {
        assert_eq!(distinguishing_formula("abba", "abba", 3, 3), None);
        let f = distinguishing_formula("ab", "ba", 1, 2).unwrap();
        assert_eq!(f.to_string(), "(true Fa (true Fb true))");
        let g = distinguishing_formula("a", "b", 1, 1).unwrap();
        assert!(g.eval("a") && !g.eval("b"));
        assert_eq!(g.to_string(), "(true Fa true)");
        assert_eq!(distinguishing_formula("ab", "ba", 1, 1), None);
    }

    #[test]
    fn enumeration_counts() {
        let by = formulas_by_size(&['a'], 3);
        assert_eq!(by[1].len(), 2);
        assert_eq!(by[2].len(), 2);
        // sizes 3: !!x (2) + binary over 1x1 (4 kinds * 4 pairs)
        assert_eq!(by[3].len(), 2 + 16);
    }
}
