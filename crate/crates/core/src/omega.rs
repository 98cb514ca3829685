//! Omega-terms, identities between them, and brute-force satisfaction checks.
//!
//! Terms are trees with reference-counted children, so the recursively
//! defined identity families share their subterms instead of expanding
//! exponentially. Before scanning assignments an identity is compiled into a
//! straight-line program over the distinct subterms; each step of the
//! mixed-radix enumeration only recomputes nodes that depend on a variable
//! that changed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::monoid::{ElementId, Monoid};

pub type Term = Arc<OmegaTerm>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OmegaTerm {
    One,
    Var(String),
    Concat(Term, Term),
    OmegaPow(Term),
}

impl OmegaTerm {
    pub fn one() -> Term {
        Arc::new(OmegaTerm::One)
    }

    pub fn var(name: &str) -> Term {
        assert!(!name.is_empty(), "variable names are nonempty");
        Arc::new(OmegaTerm::Var(name.to_string()))
    }

    pub fn concat(left: Term, right: Term) -> Term {
        Arc::new(OmegaTerm::Concat(left, right))
    }

    pub fn omega(body: Term) -> Term {
        Arc::new(OmegaTerm::OmegaPow(body))
    }

    /// Left-nested product of `factors`, skipping `1`s; empty gives `1`.
    pub fn product<I: IntoIterator<Item = Term>>(factors: I) -> Term {
        factors
            .into_iter()
            .filter(|t| !matches!(**t, OmegaTerm::One))
            .reduce(OmegaTerm::concat)
            .unwrap_or_else(OmegaTerm::one)
    }

    /// Factors of the maximal concatenation rooted here, left to right.
    pub fn factors(self: &Term) -> Vec<Term> {
        let mut out = Vec::new();
        fn walk(t: &Term, out: &mut Vec<Term>) {
            match &**t {
                OmegaTerm::Concat(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                _ => out.push(t.clone()),
            }
        }
        walk(self, &mut out);
        out
    }

    /// Variables in order of first occurrence.
    pub fn variables(self: &Term) -> Vec<String> {
        let mut out = Vec::new();
        let mut seen = std::collections::HashSet::new();
        collect_vars(self, &mut out, &mut seen);
        out
    }
}

fn collect_vars(
    t: &Term,
    out: &mut Vec<String>,
    seen: &mut std::collections::HashSet<*const OmegaTerm>,
) {
    if !seen.insert(Arc::as_ptr(t)) {
        return;
    }
    match &**t {
        OmegaTerm::One => {}
        OmegaTerm::Var(v) => {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        OmegaTerm::Concat(l, r) => {
            collect_vars(l, out, seen);
            collect_vars(r, out, seen);
        }
        OmegaTerm::OmegaPow(b) => collect_vars(b, out, seen),
    }
}

/// Structural equality of terms modulo re-association of products.
pub fn same_up_to_association(a: &Term, b: &Term) -> bool {
    let fa = a.factors();
    let fb = b.factors();
    fa.len() == fb.len()
        && fa.iter().zip(&fb).all(|(x, y)| match (&**x, &**y) {
            (OmegaTerm::One, OmegaTerm::One) => true,
            (OmegaTerm::Var(p), OmegaTerm::Var(q)) => p == q,
            (OmegaTerm::OmegaPow(p), OmegaTerm::OmegaPow(q)) => same_up_to_association(p, q),
            _ => false,
        })
}

/// Reverses every product and renames variables through `rename`
/// (names absent from the map are kept).
pub fn mirror(t: &Term, rename: &HashMap<String, String>) -> Term {
    fn go(
        t: &Term,
        rename: &HashMap<String, String>,
        memo: &mut HashMap<*const OmegaTerm, Term>,
    ) -> Term {
        if let Some(done) = memo.get(&Arc::as_ptr(t)) {
            return done.clone();
        }
        let out = match &**t {
            OmegaTerm::One => t.clone(),
            OmegaTerm::Var(v) => match rename.get(v) {
                Some(w) => OmegaTerm::var(w),
                None => t.clone(),
            },
            OmegaTerm::Concat(l, r) => OmegaTerm::concat(go(r, rename, memo), go(l, rename, memo)),
            OmegaTerm::OmegaPow(b) => OmegaTerm::omega(go(b, rename, memo)),
        };
        memo.insert(Arc::as_ptr(t), out.clone());
        out
    }
    go(t, rename, &mut HashMap::new())
}

struct TermDisplay<'a>(&'a Term);

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.0.factors().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match &**factor {
                OmegaTerm::One => f.write_str("1")?,
                OmegaTerm::Var(v) => f.write_str(v)?,
                OmegaTerm::OmegaPow(body) => write!(f, "({})^w", TermDisplay(body))?,
                OmegaTerm::Concat(..) => unreachable!("factors are never products"),
            }
        }
        Ok(())
    }
}

/// Renders a term in the ASCII grammar, products flattened.
pub fn render_term(t: &Term) -> String {
    TermDisplay(t).to_string()
}

/// An identity `lhs = rhs` with an ordered variable list.
#[derive(Debug, Clone)]
pub struct IdentityOfTerms {
    pub lhs: Term,
    pub rhs: Term,
    variables: Vec<String>,
}

impl IdentityOfTerms {
    /// Variables are ordered by first occurrence in `lhs`, then `rhs`.
    pub fn new(lhs: Term, rhs: Term) -> Self {
        let mut variables = lhs.variables();
        for v in rhs.variables() {
            if !variables.contains(&v) {
                variables.push(v);
            }
        }
        IdentityOfTerms {
            lhs,
            rhs,
            variables,
        }
    }

    /// Uses an explicit variable order, which must cover both sides.
    pub fn with_variables(lhs: Term, rhs: Term, variables: Vec<String>) -> Result<Self> {
        for v in lhs.variables().into_iter().chain(rhs.variables()) {
            if !variables.contains(&v) {
                return Err(Error::UnboundVariable(v));
            }
        }
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(Error::InvalidArgument(format!(
                    "variable `{v}` listed twice"
                )));
            }
        }
        Ok(IdentityOfTerms {
            lhs,
            rhs,
            variables,
        })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn render(&self) -> String {
        format!("{} = {}", render_term(&self.lhs), render_term(&self.rhs))
    }
}

impl fmt::Display for IdentityOfTerms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A variable assignment, in the identity's variable order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment(pub Vec<(String, ElementId)>);

impl Assignment {
    pub fn get(&self, name: &str) -> Option<ElementId> {
        self.0.iter().find(|(v, _)| v == name).map(|&(_, x)| x)
    }

    pub fn to_map(&self) -> HashMap<String, ElementId> {
        self.0.iter().cloned().collect()
    }

    /// `z=1,x1=2,...` using the monoid's element labels.
    pub fn render(&self, monoid: &Monoid) -> String {
        self.0
            .iter()
            .map(|(v, x)| format!("{v}={}", monoid.label(*x)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// First failing assignment in mixed-radix order, with both sides' values.
    Fails {
        assignment: Assignment,
        lhs: ElementId,
        rhs: ElementId,
    },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Op {
    One,
    Var(usize),
    Mul(usize, usize),
    Omega(usize),
}

/// Straight-line program over the distinct subterms of an identity.
struct Program {
    ops: Vec<Op>,
    lhs: usize,
    rhs: usize,
    vars: usize,
    /// `dirty[p]`: nodes to recompute, in order, when variable `p` (and every
    /// later one) changes.
    dirty: Vec<Vec<usize>>,
}

impl Program {
    fn compile(lhs: &Term, rhs: &Term, variables: &[String]) -> Result<Program> {
        let mut ops: Vec<Op> = Vec::new();
        let mut interned: HashMap<Op, usize> = HashMap::new();
        let mut by_ptr: HashMap<*const OmegaTerm, usize> = HashMap::new();
        let position: HashMap<&str, usize> = variables
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();

        fn lower(
            t: &Term,
            ops: &mut Vec<Op>,
            interned: &mut HashMap<Op, usize>,
            by_ptr: &mut HashMap<*const OmegaTerm, usize>,
            position: &HashMap<&str, usize>,
        ) -> Result<usize> {
            if let Some(&id) = by_ptr.get(&Arc::as_ptr(t)) {
                return Ok(id);
            }
            let op = match &**t {
                OmegaTerm::One => Op::One,
                OmegaTerm::Var(v) => Op::Var(
                    *position
                        .get(v.as_str())
                        .ok_or_else(|| Error::UnboundVariable(v.clone()))?,
                ),
                OmegaTerm::Concat(l, r) => {
                    let l = lower(l, ops, interned, by_ptr, position)?;
                    let r = lower(r, ops, interned, by_ptr, position)?;
                    Op::Mul(l, r)
                }
                OmegaTerm::OmegaPow(b) => Op::Omega(lower(b, ops, interned, by_ptr, position)?),
            };
            let id = *interned.entry(op).or_insert_with(|| {
                ops.push(op);
                ops.len() - 1
            });
            by_ptr.insert(Arc::as_ptr(t), id);
            Ok(id)
        }

        let lhs = lower(lhs, &mut ops, &mut interned, &mut by_ptr, &position)?;
        let rhs = lower(rhs, &mut ops, &mut interned, &mut by_ptr, &position)?;

        // latest variable position each node depends on
        let mut latest: Vec<Option<usize>> = Vec::with_capacity(ops.len());
        for op in &ops {
            let l = match *op {
                Op::One => None,
                Op::Var(i) => Some(i),
                Op::Mul(a, b) => latest[a].max(latest[b]),
                Op::Omega(a) => latest[a],
            };
            latest.push(l);
        }
        let vars = variables.len();
        let dirty = (0..vars.max(1))
            .map(|p| {
                (0..ops.len())
                    .filter(|&i| p == 0 || latest[i].is_some_and(|l| l >= p))
                    .collect()
            })
            .collect();
        Ok(Program {
            ops,
            lhs,
            rhs,
            vars,
            dirty,
        })
    }

    #[inline]
    fn run(
        &self,
        monoid: &Monoid,
        omega: &[usize],
        digits: &[usize],
        values: &mut [usize],
        from: usize,
    ) {
        for &i in &self.dirty[from] {
            values[i] = match self.ops[i] {
                Op::One => monoid.identity().0,
                Op::Var(v) => digits[v],
                Op::Mul(a, b) => monoid.raw_mul(values[a], values[b]),
                Op::Omega(a) => omega[values[a]],
            };
        }
    }

    /// Scans assignments whose leading digits equal `prefix`; returns the
    /// first failure in lexicographic order.
    fn scan(&self, monoid: &Monoid, prefix: &[usize]) -> Option<(Vec<usize>, usize, usize)> {
        let n = monoid.size();
        let omega = monoid.omega_table();
        let mut digits = vec![0usize; self.vars];
        digits[..prefix.len()].copy_from_slice(prefix);
        let mut values = vec![0usize; self.ops.len()];
        let mut from = 0;
        loop {
            self.run(monoid, omega, &digits, &mut values, from);
            if values[self.lhs] != values[self.rhs] {
                return Some((digits, values[self.lhs], values[self.rhs]));
            }
            // odometer over the free positions
            let mut p = self.vars;
            loop {
                if p == prefix.len() {
                    return None;
                }
                p -= 1;
                digits[p] += 1;
                if digits[p] < n {
                    break;
                }
                digits[p] = 0;
            }
            from = p;
        }
    }
}

/// Value of `t` under `assignment`.
pub fn eval_term(
    monoid: &Monoid,
    t: &Term,
    assignment: &HashMap<String, ElementId>,
) -> Result<ElementId> {
    let variables: Vec<String> = t.variables();
    let program = Program::compile(t, t, &variables)?;
    let digits = variables
        .iter()
        .map(|v| {
            let x = assignment
                .get(v)
                .ok_or_else(|| Error::UnboundVariable(v.clone()))?;
            monoid.element(x.0).map(|x| x.0)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut values = vec![0; program.ops.len()];
    program.run(monoid, monoid.omega_table(), &digits, &mut values, 0);
    Ok(ElementId(values[program.lhs]))
}

/// Value of `t` where every omega power is the fixed power `x^exponent`.
///
/// With `exponent` a multiple of every element's idempotent power this agrees
/// with [`eval_term`]; it exists to cross-check the per-element evaluation.
pub fn eval_term_with_exponent(
    monoid: &Monoid,
    t: &Term,
    assignment: &HashMap<String, ElementId>,
    exponent: usize,
) -> Result<ElementId> {
    Ok(match &**t {
        OmegaTerm::One => monoid.identity(),
        OmegaTerm::Var(v) => *assignment
            .get(v)
            .ok_or_else(|| Error::UnboundVariable(v.clone()))?,
        OmegaTerm::Concat(l, r) => monoid.mul(
            eval_term_with_exponent(monoid, l, assignment, exponent)?,
            eval_term_with_exponent(monoid, r, assignment, exponent)?,
        ),
        OmegaTerm::OmegaPow(b) => monoid.pow(
            eval_term_with_exponent(monoid, b, assignment, exponent)?,
            exponent,
        ),
    })
}

/// Number of assignments a satisfaction check would enumerate.
pub fn search_space(monoid: &Monoid, identity: &IdentityOfTerms) -> u128 {
    (monoid.size() as u128).saturating_pow(identity.variables.len() as u32)
}

/// Checks `lhs = rhs` under every assignment, returning the first
/// counterexample in mixed-radix order (first variable most significant).
pub fn satisfies_identity(
    monoid: &Monoid,
    identity: &IdentityOfTerms,
    limits: &Limits,
) -> Result<Verdict> {
    let required = search_space(monoid, identity);
    if required > limits.search_cap as u128 {
        return Err(Error::SearchSpaceExceeded {
            required,
            cap: limits.search_cap,
        });
    }
    let program = Program::compile(&identity.lhs, &identity.rhs, &identity.variables)?;
    let found = if limits.jobs > 1 && program.vars > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(limits.jobs)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
        pool.install(|| {
            (0..monoid.size())
                .into_par_iter()
                .find_map_first(|first| program.scan(monoid, &[first]))
        })
    } else {
        program.scan(monoid, &[])
    };
    Ok(match found {
        None => Verdict::Holds,
        Some((digits, lhs, rhs)) => Verdict::Fails {
            assignment: Assignment(
                identity
                    .variables
                    .iter()
                    .cloned()
                    .zip(digits.into_iter().map(ElementId))
                    .collect(),
            ),
            lhs: ElementId(lhs),
            rhs: ElementId(rhs),
        },
    })
}

fn v(name: &str) -> Term {
    OmegaTerm::var(name)
}

fn named(prefix: &str, i: usize) -> String {
    format!("{prefix}{i}")
}

/// `(x y)^w x (x y)^w = (x y)^w`
pub fn da_identity() -> IdentityOfTerms {
    let xy = OmegaTerm::omega(OmegaTerm::product([v("x"), v("y")]));
    IdentityOfTerms::new(OmegaTerm::product([xy.clone(), v("x"), xy.clone()]), xy)
}

/// `(z x)^w z = (z x)^w`, the R-trivial monoids.
pub fn r2_identity() -> IdentityOfTerms {
    let zx = OmegaTerm::omega(OmegaTerm::product([v("z"), v("x")]));
    IdentityOfTerms::new(OmegaTerm::product([zx.clone(), v("z")]), zx)
}

/// `z (y z)^w = (y z)^w`, the L-trivial monoids.
pub fn l2_identity() -> IdentityOfTerms {
    let yz = OmegaTerm::omega(OmegaTerm::product([v("y"), v("z")]));
    IdentityOfTerms::with_variables(
        OmegaTerm::product([v("z"), yz.clone()]),
        yz,
        vec!["z".into(), "y".into()],
    )
    .expect("variables cover both sides")
}

/// `x x = x`
pub fn band_identity() -> IdentityOfTerms {
    IdentityOfTerms::new(OmegaTerm::product([v("x"), v("x")]), v("x"))
}

/// `x y = y x`
pub fn commutativity_identity() -> IdentityOfTerms {
    IdentityOfTerms::new(
        OmegaTerm::product([v("x"), v("y")]),
        OmegaTerm::product([v("y"), v("x")]),
    )
}

/// The `e_i`, `f_i` terms: `e_1 = f_1 = 1`,
/// `e_{i+1} = (e_i ⋯ e_1 z f_1 ⋯ f_i x_i)^w`, `f_{i+1} = (y_i e_i ⋯ e_1 z f_1 ⋯ f_i)^w`.
///
/// `middle[i]` is the shared product `e_i ⋯ e_1 z f_1 ⋯ f_i` (index 0 is `z`).
struct Ladder {
    e: Vec<Term>,
    f: Vec<Term>,
    middle: Vec<Term>,
}

impl Ladder {
    /// Builds `e_1..e_top` and `f_1..f_top` (vectors are indexed from 1).
    fn build(top: usize) -> Ladder {
        let z = v("z");
        let mut e = vec![OmegaTerm::one(), OmegaTerm::one()];
        let mut f = vec![OmegaTerm::one(), OmegaTerm::one()];
        // middle[i] = e_i ⋯ e_1 z f_1 ⋯ f_i, with e_1 = f_1 = 1 so middle[1] = z
        let mut middle = vec![z.clone(), z];
        for i in 1..top {
            let m = middle[i].clone();
            e.push(OmegaTerm::omega(OmegaTerm::product([
                m.clone(),
                v(&named("x", i)),
            ])));
            f.push(OmegaTerm::omega(OmegaTerm::product([
                v(&named("y", i)),
                m.clone(),
            ])));
            middle.push(OmegaTerm::product([e[i + 1].clone(), m, f[i + 1].clone()]));
        }
        Ladder { e, f, middle }
    }

    /// `e_top ⋯ e_1 [z] f_1 ⋯ f_right`, built on the shared middle products.
    fn side(&self, left: usize, right: usize, with_z: bool) -> Term {
        let core = left.min(right);
        let mut factors: Vec<Term> = (core + 1..=left).rev().map(|i| self.e[i].clone()).collect();
        if with_z {
            factors.push(self.middle[core].clone());
        } else {
            factors.extend((1..=core).rev().map(|i| self.e[i].clone()));
            factors.extend((1..=core).map(|i| self.f[i].clone()));
        }
        factors.extend((core + 1..=right).map(|i| self.f[i].clone()));
        OmegaTerm::product(factors)
    }
}

fn ladder_identity(left: usize, right: usize, x_count: usize, y_count: usize) -> IdentityOfTerms {
    let ladder = Ladder::build(left.max(right));
    let mut variables = vec!["z".to_string()];
    variables.extend((1..=x_count).map(|i| named("x", i)));
    variables.extend((1..=y_count).map(|i| named("y", i)));
    IdentityOfTerms::with_variables(
        ladder.side(left, right, true),
        ladder.side(left, right, false),
        variables,
    )
    .expect("ladder variables cover both sides")
}

fn check_level(m: usize) {
    assert!(m >= 2, "hierarchy levels start at 2, got {m}");
}

/// `e_m ⋯ e_1 z f_1 ⋯ f_m = e_m ⋯ e_1 f_1 ⋯ f_m`, over `z, x_1.., y_1..`.
pub fn w_identity(m: usize) -> IdentityOfTerms {
    check_level(m);
    ladder_identity(m, m, m - 1, m - 1)
}

/// `e_m ⋯ e_1 z f_1 ⋯ f_{m-1} = e_m ⋯ e_1 f_1 ⋯ f_{m-1}`.
pub fn rm_identity(m: usize) -> IdentityOfTerms {
    check_level(m);
    ladder_identity(m, m - 1, m - 1, m - 2)
}

/// `e_{m-1} ⋯ e_1 z f_1 ⋯ f_m = e_{m-1} ⋯ e_1 f_1 ⋯ f_m`.
pub fn lm_identity(m: usize) -> IdentityOfTerms {
    check_level(m);
    ladder_identity(m - 1, m, m - 2, m - 1)
}

/// Parses `term = term` in the ASCII omega-term grammar.
pub fn parse_identity(text: &str) -> Result<IdentityOfTerms> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let lhs = p.term()?;
    p.skip_ws();
    if !p.eat(b'=') {
        return Err(Error::syntax(p.pos, "`=`"));
    }
    let rhs = p.term()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(Error::syntax(p.pos, "end of input"));
    }
    Ok(IdentityOfTerms::new(lhs, rhs))
}

/// Parses a single term.
pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let t = p.term()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(Error::syntax(p.pos, "end of input"));
    }
    Ok(t)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut factors = Vec::new();
        while let Some(c) = self.peek() {
            if c == b'1' || c == b'(' || c.is_ascii_alphabetic() {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        factors
            .into_iter()
            .reduce(OmegaTerm::concat)
            .ok_or_else(|| Error::syntax(self.pos, "a factor: `1`, a variable or `(`"))
    }

    fn factor(&mut self) -> Result<Term> {
        match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                Ok(OmegaTerm::one())
            }
            Some(b'(') => {
                self.pos += 1;
                let body = self.term()?;
                if !self.eat(b')') {
                    return Err(Error::syntax(self.pos, "`)`"));
                }
                // `^w` directly after the parenthesis
                if self.src.get(self.pos) == Some(&b'^') {
                    self.pos += 1;
                    if self.src.get(self.pos) == Some(&b'w') {
                        self.pos += 1;
                    } else if self.src[self.pos..].starts_with("ω".as_bytes()) {
                        self.pos += "ω".len();
                    } else {
                        return Err(Error::syntax(self.pos, "`w` after `^`"));
                    }
                    Ok(OmegaTerm::omega(body))
                } else {
                    Ok(body)
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .src
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_alphanumeric())
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(OmegaTerm::var(name))
            }
            _ => Err(Error::syntax(self.pos, "a factor")),
        }
    }
}

/// Lookup of identity families by their CLI name.
pub fn family_identities(name: &str) -> Result<Vec<IdentityOfTerms>> {
    let level = |s: &str| -> Result<usize> {
        s.parse::<usize>()
            .ok()
            .filter(|&m| m >= 2)
            .ok_or_else(|| Error::InvalidArgument(format!("level `{s}` must be an integer >= 2")))
    };
    Ok(match name.split_once(':') {
        Some(("W", m)) => vec![w_identity(level(m)?)],
        Some(("R", m)) => vec![rm_identity(level(m)?)],
        Some(("L", m)) => vec![lm_identity(level(m)?)],
        _ => match name {
            "DA" => vec![da_identity()],
            "R" => vec![r2_identity()],
            "L" => vec![l2_identity()],
            "J" => vec![r2_identity(), l2_identity()],
            "B" => vec![band_identity()],
            "J1" => vec![commutativity_identity(), band_identity()],
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown identity family `{name}`"
                )))
            }
        },
    })
}

/// Assignment of named elements, for call sites that spell one out.
pub fn assignment<const N: usize>(pairs: [(&str, ElementId); N]) -> HashMap<String, ElementId> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Sorted map from variable name to value, used in reports.
pub fn assignment_map(a: &Assignment) -> BTreeMap<String, ElementId> {
    a.0.iter().cloned().collect()
}
