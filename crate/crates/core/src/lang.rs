//! Regular languages: regexes, complete DFAs, minimization and syntactic
//! monoids.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::monoid::{transition_monoid, ElementId, Morphism, Transformation};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Regex {
    Empty,
    Epsilon,
    Literal(char),
    Union(Box<Regex>, Box<Regex>),
    Concat(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn lit(a: char) -> Regex {
        Regex::Literal(a)
    }

    pub fn union(l: Regex, r: Regex) -> Regex {
        Regex::Union(Box::new(l), Box::new(r))
    }

    pub fn concat(l: Regex, r: Regex) -> Regex {
        Regex::Concat(Box::new(l), Box::new(r))
    }

    pub fn star(body: Regex) -> Regex {
        Regex::Star(Box::new(body))
    }

    /// Union of the letters, in the given order; `∅` when empty.
    pub fn any_of(letters: &[char]) -> Regex {
        letters
            .iter()
            .map(|&a| Regex::lit(a))
            .reduce(Regex::union)
            .unwrap_or(Regex::Empty)
    }

    /// Left-nested concatenation; `ε` when empty.
    pub fn sequence<I: IntoIterator<Item = Regex>>(parts: I) -> Regex {
        parts
            .into_iter()
            .reduce(Regex::concat)
            .unwrap_or(Regex::Epsilon)
    }

    pub fn letters(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<char>) {
        match self {
            Regex::Empty | Regex::Epsilon => {}
            Regex::Literal(a) => {
                out.insert(*a);
            }
            Regex::Union(l, r) | Regex::Concat(l, r) => {
                l.collect_letters(out);
                r.collect_letters(out);
            }
            Regex::Star(b) => b.collect_letters(out),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Regex::Union(..) => 0,
            Regex::Concat(..) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, r: &Regex, min: u8| {
            if r.precedence() < min {
                write!(f, "({r})")
            } else {
                write!(f, "{r}")
            }
        };
        match self {
            Regex::Empty => f.write_str("∅"),
            Regex::Epsilon => f.write_str("%"),
            Regex::Literal(a) => write!(f, "{a}"),
            Regex::Union(l, r) => {
                wrap(f, l, 0)?;
                f.write_str("|")?;
                wrap(f, r, 1)
            }
            Regex::Concat(l, r) => {
                wrap(f, l, 1)?;
                wrap(f, r, 2)
            }
            Regex::Star(b) => {
                if matches!(**b, Regex::Literal(_) | Regex::Epsilon | Regex::Empty) {
                    write!(f, "{b}*")
                } else {
                    write!(f, "({b})*")
                }
            }
        }
    }
}

/// Parses `|`, `*`, grouping, juxtaposition, `%` for the empty word and
/// letters `a`-`z`. Whitespace is ignored.
pub fn parse_regex(text: &str) -> Result<Regex> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut p = RegexParser {
        chars,
        pos: 0,
        end: text.len(),
    };
    let r = p.union()?;
    if p.pos < p.chars.len() {
        return Err(Error::syntax(p.offset(), "end of input"));
    }
    Ok(r)
}

struct RegexParser {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
}

impl RegexParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(i, _)| i)
    }

    fn union(&mut self) -> Result<Regex> {
        let mut r = self.concat()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            r = Regex::union(r, self.concat()?);
        }
        Ok(r)
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut parts = Vec::new();
        while matches!(self.peek(), Some(c) if c == '(' || c == '%' || c.is_ascii_lowercase()) {
            parts.push(self.starred()?);
        }
        if parts.is_empty() {
            return Err(Error::syntax(self.offset(), "a letter, `%` or `(`"));
        }
        Ok(Regex::sequence(parts))
    }

    fn starred(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            r = Regex::star(r);
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex> {
        match self.peek() {
            Some('%') => {
                self.pos += 1;
                Ok(Regex::Epsilon)
            }
            Some('(') => {
                self.pos += 1;
                let r = self.union()?;
                if self.peek() != Some(')') {
                    return Err(Error::syntax(self.offset(), "`)`"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some(c) if c.is_ascii_lowercase() => {
                self.pos += 1;
                Ok(Regex::Literal(c))
            }
            _ => Err(Error::syntax(self.offset(), "a letter, `%` or `(`")),
        }
    }
}

/// A complete deterministic automaton over a sorted alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<char>,
    initial: usize,
    accepting: Vec<bool>,
    /// `delta[q * |alphabet| + i]`
    delta: Vec<usize>,
}

impl Dfa {
    /// `transitions[q][i]` is the successor of `q` on the `i`-th letter of
    /// the sorted, deduplicated `alphabet`.
    pub fn new(
        alphabet: &[char],
        initial: usize,
        accepting: Vec<bool>,
        transitions: Vec<Vec<usize>>,
    ) -> Result<Dfa> {
        let mut sorted = alphabet.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != alphabet.len() {
            return Err(Error::InvalidArgument(
                "alphabet has repeated letters".into(),
            ));
        }
        let states = accepting.len();
        if states == 0 || initial >= states {
            return Err(Error::IndexOutOfRange {
                value: initial,
                size: states,
            });
        }
        if transitions.len() != states {
            return Err(Error::InvalidArgument(format!(
                "{} transition rows for {states} states",
                transitions.len()
            )));
        }
        let order: Vec<usize> = sorted
            .iter()
            .map(|a| alphabet.iter().position(|b| b == a).expect("same letters"))
            .collect();
        let mut delta = Vec::with_capacity(states * sorted.len());
        for row in &transitions {
            if row.len() != sorted.len() {
                return Err(Error::InvalidArgument(
                    "transition row length differs from the alphabet".into(),
                ));
            }
            for &i in &order {
                if row[i] >= states {
                    return Err(Error::IndexOutOfRange {
                        value: row[i],
                        size: states,
                    });
                }
                delta.push(row[i]);
            }
        }
        Ok(Dfa {
            alphabet: sorted,
            initial,
            accepting,
            delta,
        })
    }

    /// One-state automaton for `A*` (when `accept`) or `∅`.
    pub fn universal(alphabet: &[char], accept: bool) -> Dfa {
        let mut letters = alphabet.to_vec();
        letters.sort_unstable();
        letters.dedup();
        let k = letters.len();
        Dfa {
            alphabet: letters,
            initial: 0,
            accepting: vec![accept],
            delta: vec![0; k],
        }
    }

    pub fn states(&self) -> usize {
        self.accepting.len()
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    fn letter_index(&self, a: char) -> Result<usize> {
        self.alphabet
            .binary_search(&a)
            .map_err(|_| Error::UnknownLetter(a))
    }

    #[inline]
    fn step_index(&self, q: usize, i: usize) -> usize {
        self.delta[q * self.alphabet.len() + i]
    }

    pub fn next(&self, q: usize, a: char) -> Result<usize> {
        Ok(self.step_index(q, self.letter_index(a)?))
    }

    pub fn run(&self, word: &str) -> Result<usize> {
        word.chars().try_fold(self.initial, |q, a| self.next(q, a))
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        Ok(self.accepting[self.run(word)?])
    }

    /// Same language over a larger alphabet; new letters lead to a sink.
    pub fn with_alphabet(&self, letters: &[char]) -> Dfa {
        let mut alphabet: Vec<char> = self.alphabet.iter().chain(letters).copied().collect();
        alphabet.sort_unstable();
        alphabet.dedup();
        if alphabet == self.alphabet {
            return self.clone();
        }
        let n = self.states();
        let sink = n;
        let mut accepting = self.accepting.clone();
        accepting.push(false);
        let mut delta = Vec::with_capacity((n + 1) * alphabet.len());
        for q in 0..=n {
            for &a in &alphabet {
                let to = match self.alphabet.binary_search(&a) {
                    Ok(i) if q < n => self.step_index(q, i),
                    _ => sink,
                };
                delta.push(to);
            }
        }
        Dfa {
            alphabet,
            initial: self.initial,
            accepting,
            delta,
        }
    }

    pub fn complement(&self) -> Dfa {
        Dfa {
            accepting: self.accepting.iter().map(|&b| !b).collect(),
            ..self.clone()
        }
    }

    /// Reachable part of the product automaton, accepting by `op`.
    pub fn product(
        &self,
        other: &Dfa,
        op: impl Fn(bool, bool) -> bool,
        limits: &Limits,
    ) -> Result<Dfa> {
        let a = self.with_alphabet(&other.alphabet);
        let b = other.with_alphabet(&self.alphabet);
        let k = a.alphabet.len();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(a.initial, b.initial)];
        index.insert(pairs[0], 0);
        let mut delta = Vec::new();
        let mut head = 0;
        while head < pairs.len() {
            let (p, q) = pairs[head];
            for i in 0..k {
                let next = (a.step_index(p, i), b.step_index(q, i));
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if pairs.len() >= limits.state_cap {
                            return Err(Error::StateCapExceeded {
                                cap: limits.state_cap,
                            });
                        }
                        index.insert(next, pairs.len());
                        pairs.push(next);
                        pairs.len() - 1
                    }
                };
                delta.push(id);
            }
            head += 1;
        }
        Ok(Dfa {
            alphabet: a.alphabet.clone(),
            initial: 0,
            accepting: pairs
                .iter()
                .map(|&(p, q)| op(a.accepting[p], b.accepting[q]))
                .collect(),
            delta,
        })
    }

    /// Minimal complete automaton for the same language, states numbered in
    /// breadth-first order from the initial state.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let reachable = self.bfs_order(self.initial);
        let mut local = vec![usize::MAX; self.states()];
        for (i, &q) in reachable.iter().enumerate() {
            local[q] = i;
        }
        let n = reachable.len();
        let step = |i: usize, c: usize| local[self.step_index(reachable[i], c)];

        // Moore refinement: split blocks by (block, successor blocks)
        let mut block: Vec<usize> = reachable
            .iter()
            .map(|&q| usize::from(self.accepting[q]))
            .collect();
        let mut count = block.iter().collect::<BTreeSet<_>>().len();
        loop {
            let mut keys: HashMap<Vec<usize>, usize> = HashMap::new();
            let next: Vec<usize> = (0..n)
                .map(|i| {
                    let mut key = Vec::with_capacity(k + 1);
                    key.push(block[i]);
                    key.extend((0..k).map(|c| block[step(i, c)]));
                    let fresh = keys.len();
                    *keys.entry(key).or_insert(fresh)
                })
                .collect();
            let new_count = keys.len();
            block = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }

        let quotient_delta: Vec<usize> = {
            let mut d = vec![0; count * k];
            for i in 0..n {
                for c in 0..k {
                    d[block[i] * k + c] = block[step(i, c)];
                }
            }
            d
        };
        let mut accepting = vec![false; count];
        for i in 0..n {
            accepting[block[i]] = self.accepting[reachable[i]];
        }
        let quotient = Dfa {
            alphabet: self.alphabet.clone(),
            initial: block[0],
            accepting,
            delta: quotient_delta,
        };
        quotient.renumbered()
    }

    fn bfs_order(&self, from: usize) -> Vec<usize> {
        let k = self.alphabet.len();
        let mut seen = vec![false; self.states()];
        let mut order = vec![from];
        seen[from] = true;
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            for c in 0..k {
                let r = self.step_index(q, c);
                if !seen[r] {
                    seen[r] = true;
                    order.push(r);
                }
            }
            head += 1;
        }
        order
    }

    /// Reachable part, renumbered breadth-first.
    fn renumbered(&self) -> Dfa {
        let k = self.alphabet.len();
        let order = self.bfs_order(self.initial);
        let mut local = vec![usize::MAX; self.states()];
        for (i, &q) in order.iter().enumerate() {
            local[q] = i;
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            accepting: order.iter().map(|&q| self.accepting[q]).collect(),
            delta: order
                .iter()
                .flat_map(|&q| (0..k).map(move |c| (q, c)))
                .map(|(q, c)| local[self.step_index(q, c)])
                .collect(),
        }
    }

    /// The transformation each letter induces on the states.
    pub fn letter_transformations(&self) -> Vec<(char, Transformation)> {
        let k = self.alphabet.len();
        self.alphabet
            .iter()
            .enumerate()
            .map(|(c, &a)| {
                let map = (0..self.states()).map(|q| self.delta[q * k + c]).collect();
                (a, Transformation::new(map).expect("successors are states"))
            })
            .collect()
    }

    /// Text form accepted by [`parse_dfa`].
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "states {}\ninitial {}\naccepting",
            self.states(),
            self.initial
        );
        for q in (0..self.states()).filter(|&q| self.accepting[q]) {
            out.push_str(&format!(" {q}"));
        }
        out.push_str(&format!(
            "\nalphabet {}\ndelta\n",
            String::from_iter(&self.alphabet)
        ));
        for q in 0..self.states() {
            for (c, a) in self.alphabet.iter().enumerate() {
                out.push_str(&format!("{q} {a} {}\n", self.step_index(q, c)));
            }
        }
        out
    }
}

/// First word (shortest, then alphabetical) in exactly one of the two
/// languages, compared over the union of their alphabets.
pub fn dfa_difference(d1: &Dfa, d2: &Dfa) -> Option<String> {
    let a = d1.with_alphabet(&d2.alphabet);
    let b = d2.with_alphabet(&d1.alphabet);
    let k = a.alphabet.len();
    // pair of states -> predecessor pair and the letter leading here
    type Back = Option<((usize, usize), char)>;
    let mut parent: HashMap<(usize, usize), Back> = HashMap::new();
    let start = (a.initial, b.initial);
    parent.insert(start, None);
    let mut queue = VecDeque::from([start]);
    while let Some((p, q)) = queue.pop_front() {
        if a.accepting[p] != b.accepting[q] {
            let mut word = Vec::new();
            let mut at = (p, q);
            while let Some(&Some((prev, c))) = parent.get(&at) {
                word.push(c);
                at = prev;
            }
            word.reverse();
            return Some(word.into_iter().collect());
        }
        for c in 0..k {
            let next = (a.step_index(p, c), b.step_index(q, c));
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                e.insert(Some(((p, q), a.alphabet[c])));
                queue.push_back(next);
            }
        }
    }
    None
}

pub fn dfa_equivalent(d1: &Dfa, d2: &Dfa) -> bool {
    dfa_difference(d1, d2).is_none()
}

/// Parses the text automaton format:
///
/// ```text
/// states 3
/// initial 0
/// accepting 0 2
/// alphabet ab
/// delta
/// 0 a 1
/// 0 b 2
/// ```
///
/// Missing transitions go to an added sink. `#` starts a comment.
pub fn parse_dfa(text: &str) -> Result<Dfa> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let err = |line: usize, message: String| Error::Format { line, message };
    let mut header = |key: &str| -> Result<(usize, Vec<String>)> {
        let (line, l) = lines
            .next()
            .ok_or_else(|| err(0, format!("missing `{key}`")))?;
        let mut words = l.split_whitespace();
        if words.next() != Some(key) {
            return Err(err(line, format!("expected `{key}`")));
        }
        Ok((line, words.map(str::to_string).collect()))
    };
    let num = |line: usize, s: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| err(line, format!("`{s}` is not a non-negative integer")))
    };
    let (line, args) = header("states")?;
    let states = match args.as_slice() {
        [n] => num(line, n)?,
        _ => return Err(err(line, "usage: states <n>".into())),
    };
    if states == 0 {
        return Err(err(line, "an automaton has at least one state".into()));
    }
    let (line, args) = header("initial")?;
    let initial = match args.as_slice() {
        [q] => num(line, q)?,
        _ => return Err(err(line, "usage: initial <q>".into())),
    };
    if initial >= states {
        return Err(err(line, format!("state {initial} out of range")));
    }
    let (line, args) = header("accepting")?;
    let mut accepting = vec![false; states + 1];
    for a in &args {
        let q = num(line, a)?;
        if q >= states {
            return Err(err(line, format!("state {q} out of range")));
        }
        accepting[q] = true;
    }
    let (line, args) = header("alphabet")?;
    let mut alphabet: Vec<char> = args.concat().chars().collect();
    if let Some(c) = alphabet.iter().find(|c| !c.is_ascii_lowercase()) {
        return Err(err(line, format!("`{c}` is not a letter a-z")));
    }
    alphabet.sort_unstable();
    let distinct = alphabet.len();
    alphabet.dedup();
    if alphabet.len() != distinct {
        return Err(err(line, "repeated letter in the alphabet".into()));
    }
    let (line, args) = header("delta")?;
    if !args.is_empty() {
        return Err(err(line, "`delta` takes no arguments".into()));
    }
    let k = alphabet.len();
    let sink = states;
    let mut delta: Vec<Option<usize>> = vec![None; states * k];
    for (line, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        let [from, letter, to] = parts.as_slice() else {
            return Err(err(line, "usage: <state> <letter> <state>".into()));
        };
        let (p, q) = (num(line, from)?, num(line, to)?);
        if p >= states || q >= states {
            return Err(err(line, "state out of range".into()));
        }
        let mut cs = letter.chars();
        let (Some(a), None) = (cs.next(), cs.next()) else {
            return Err(err(line, format!("`{letter}` is not a single letter")));
        };
        let c = alphabet
            .binary_search(&a)
            .map_err(|_| err(line, format!("letter `{a}` not in the alphabet")))?;
        if delta[p * k + c].replace(q).is_some() {
            return Err(err(line, format!("second transition from {p} on `{a}`")));
        }
    }
    let complete = delta.iter().all(Option::is_some);
    let total = if complete { states } else { states + 1 };
    accepting.truncate(total);
    let mut rows: Vec<Vec<usize>> = (0..states)
        .map(|p| (0..k).map(|c| delta[p * k + c].unwrap_or(sink)).collect())
        .collect();
    if !complete {
        rows.push(vec![sink; k]);
    }
    Dfa::new(&alphabet, initial, accepting, rows)
}

/// Thompson automaton: state 0 is initial, state 1 is final.
struct Nfa {
    eps: Vec<Vec<usize>>,
    moves: Vec<Vec<(char, usize)>>,
}

impl Nfa {
    fn state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.moves.push(Vec::new());
        self.eps.len() - 1
    }

    /// Adds a fragment for `r` between fresh states and returns its ends.
    fn build(&mut self, r: &Regex) -> (usize, usize) {
        let s = self.state();
        let t = self.state();
        match r {
            Regex::Empty => {}
            Regex::Epsilon => self.eps[s].push(t),
            Regex::Literal(a) => self.moves[s].push((*a, t)),
            Regex::Union(l, r) => {
                for part in [l, r] {
                    let (ps, pt) = self.build(part);
                    self.eps[s].push(ps);
                    self.eps[pt].push(t);
                }
            }
            Regex::Concat(l, r) => {
                let (ls, lt) = self.build(l);
                let (rs, rt) = self.build(r);
                self.eps[s].push(ls);
                self.eps[lt].push(rs);
                self.eps[rt].push(t);
            }
            Regex::Star(b) => {
                let (bs, bt) = self.build(b);
                self.eps[s].extend([bs, t]);
                self.eps[bt].extend([bs, t]);
            }
        }
        (s, t)
    }

    fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &r in &self.eps[q] {
                if set.insert(r) {
                    stack.push(r);
                }
            }
        }
    }
}

/// Complete DFA for `r` over its own letters plus `extra`.
pub fn regex_to_dfa(r: &Regex, extra: &[char], limits: &Limits) -> Result<Dfa> {
    let mut nfa = Nfa {
        eps: Vec::new(),
        moves: Vec::new(),
    };
    let (start, finish) = nfa.build(r);
    let mut alphabet: Vec<char> = r
        .letters()
        .into_iter()
        .chain(extra.iter().copied())
        .collect();
    alphabet.sort_unstable();
    alphabet.dedup();

    let mut first = BTreeSet::from([start]);
    nfa.closure(&mut first);
    let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    index.insert(first.clone(), 0);
    let mut subsets = vec![first];
    let mut delta = Vec::new();
    let mut head = 0;
    while head < subsets.len() {
        for &a in &alphabet {
            let mut next: BTreeSet<usize> = subsets[head]
                .iter()
                .flat_map(|&q| {
                    nfa.moves[q]
                        .iter()
                        .filter(|(b, _)| *b == a)
                        .map(|&(_, t)| t)
                })
                .collect();
            nfa.closure(&mut next);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if subsets.len() >= limits.state_cap {
                        return Err(Error::StateCapExceeded {
                            cap: limits.state_cap,
                        });
                    }
                    index.insert(next.clone(), subsets.len());
                    subsets.push(next);
                    subsets.len() - 1
                }
            };
            delta.push(id);
        }
        head += 1;
    }
    // the empty subset, if reached, is already the sink
    Ok(Dfa {
        alphabet,
        initial: 0,
        accepting: subsets.iter().map(|s| s.contains(&finish)).collect(),
        delta,
    })
}

/// Syntactic monoid of a regular language with its recognizing morphism.
#[derive(Debug, Clone)]
pub struct SyntacticMorphism {
    pub morphism: Morphism,
    /// Elements whose preimage lies in the language.
    pub accepting: BTreeSet<ElementId>,
    pub alphabet: Vec<char>,
    /// The minimal automaton the monoid was computed from.
    pub minimal: Dfa,
}

impl SyntacticMorphism {
    pub fn accepts(&self, word: &str) -> Result<bool> {
        Ok(self.accepting.contains(&self.morphism.eval(word)?))
    }
}

/// Transition monoid of the minimal automaton of `d`.
pub fn syntactic_monoid(d: &Dfa, limits: &Limits) -> Result<SyntacticMorphism> {
    let minimal = d.minimize();
    let (letters, gens): (Vec<char>, Vec<Transformation>) =
        minimal.letter_transformations().into_iter().unzip();
    let morphism = transition_monoid(minimal.states(), &gens, &letters, limits.size_cap)?;
    // rebuild each element's transformation to read off acceptance from the initial state
    let monoid = &morphism.monoid;
    let mut images = vec![None; monoid.size()];
    images[monoid.identity().index()] = Some(minimal.initial());
    let mut queue = VecDeque::from([monoid.identity()]);
    while let Some(x) = queue.pop_front() {
        let q = images[x.index()].expect("visited");
        for &a in &letters {
            let y = monoid.mul(x, morphism.letter(a)?);
            if images[y.index()].is_none() {
                images[y.index()] = Some(minimal.next(q, a)?);
                queue.push_back(y);
            }
        }
    }
    let accepting = monoid
        .elements()
        .filter(|x| images[x.index()].is_some_and(|q| minimal.is_accepting(q)))
        .collect();
    Ok(SyntacticMorphism {
        morphism,
        accepting,
        alphabet: letters,
        minimal,
    })
}

pub fn morphism_accepts(phi: &SyntacticMorphism, word: &str) -> Result<bool> {
    phi.accepts(word)
}
