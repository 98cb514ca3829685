//! Finite monoids given by multiplication tables.
//!
//! Elements are dense indices `0..size`; the identity may sit at any index.
//! Green's relations R and L are read off cached right/left ideals, which are
//! computed on first use and never change afterwards.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// An element of some [`Monoid`], by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub usize);

impl ElementId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Square bit matrix, one row per element.
#[derive(Debug, Clone)]
struct BitRows {
    words: usize,
    data: Vec<u64>,
}

impl BitRows {
    fn new(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BitRows {
            words,
            data: vec![0; rows * words],
        }
    }

    fn set(&mut self, row: usize, col: usize) {
        self.data[row * self.words + col / 64] |= 1 << (col % 64);
    }

    fn get(&self, row: usize, col: usize) -> bool {
        self.data[row * self.words + col / 64] & (1 << (col % 64)) != 0
    }

    fn row(&self, row: usize) -> &[u64] {
        &self.data[row * self.words..(row + 1) * self.words]
    }
}

#[derive(Debug, Clone)]
struct Green {
    right: BitRows,
    left: BitRows,
    r_class: Vec<usize>,
    l_class: Vec<usize>,
}

/// A finite monoid.
#[derive(Clone)]
pub struct Monoid {
    size: usize,
    identity: usize,
    table: Vec<usize>,
    labels: Option<Vec<String>>,
    green: OnceLock<Green>,
    omega: OnceLock<Vec<usize>>,
}

impl fmt::Debug for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Monoid")
            .field("size", &self.size)
            .field("identity", &self.identity)
            .field("labels", &self.labels)
            .finish_non_exhaustive()
    }
}

impl PartialEq for Monoid {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.identity == other.identity && self.table == other.table
    }
}

impl Eq for Monoid {}

impl Monoid {
    /// Validates a multiplication table: shape, index range, identity laws and
    /// a full associativity scan. Row `x` lists `x*0 .. x*(n-1)`.
    pub fn new(
        table: Vec<Vec<usize>>,
        identity: usize,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let size = table.len();
        if size == 0 {
            return Err(Error::InvalidArgument(
                "a monoid needs at least one element".into(),
            ));
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != size {
                return Err(Error::NotSquare {
                    row,
                    len: entries.len(),
                    size,
                });
            }
            if let Some(&value) = entries.iter().find(|&&v| v >= size) {
                return Err(Error::IndexOutOfRange { value, size });
            }
        }
        if identity >= size {
            return Err(Error::IndexOutOfRange {
                value: identity,
                size,
            });
        }
        if let Some(labels) = &labels {
            if labels.len() != size {
                return Err(Error::InvalidArgument(format!(
                    "{} labels for {} elements",
                    labels.len(),
                    size
                )));
            }
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let monoid = Monoid::from_parts(size, identity, flat, labels);
        for x in 0..size {
            if monoid.raw_mul(identity, x) != x || monoid.raw_mul(x, identity) != x {
                return Err(Error::BadIdentity {
                    identity,
                    witness: x,
                });
            }
        }
        monoid.check_associativity()?;
        Ok(monoid)
    }

    /// Builds a monoid from a flat row-major table that is associative and
    /// unital by construction (compositions, quotients, products).
    pub(crate) fn from_parts(
        size: usize,
        identity: usize,
        table: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Self {
        debug_assert_eq!(table.len(), size * size);
        Monoid {
            size,
            identity,
            table,
            labels,
            green: OnceLock::new(),
            omega: OnceLock::new(),
        }
    }

    /// The one-element monoid.
    pub fn trivial() -> Self {
        Monoid::from_parts(1, 0, vec![0], None)
    }

    /// Scans every triple and reports the first one violating associativity.
    pub fn check_associativity(&self) -> Result<()> {
        let n = self.size;
        for x in 0..n {
            for y in 0..n {
                let xy = self.raw_mul(x, y);
                for z in 0..n {
                    if self.raw_mul(xy, z) != self.raw_mul(x, self.raw_mul(y, z)) {
                        return Err(Error::NonAssociative { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> ElementId {
        ElementId(self.identity)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.size).map(ElementId)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {} elements",
                labels.len(),
                self.size
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Display name of an element: its label when present, else its index.
    pub fn label(&self, x: ElementId) -> String {
        match &self.labels {
            Some(labels) => labels[x.0].clone(),
            None => x.0.to_string(),
        }
    }

    /// Validates that `x` belongs to this monoid.
    pub fn element(&self, index: usize) -> Result<ElementId> {
        if index < self.size {
            Ok(ElementId(index))
        } else {
            Err(Error::IndexOutOfRange {
                value: index,
                size: self.size,
            })
        }
    }

    #[inline]
    pub(crate) fn raw_mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    #[inline]
    pub fn mul(&self, x: ElementId, y: ElementId) -> ElementId {
        ElementId(self.raw_mul(x.0, y.0))
    }

    /// Product of a sequence of elements; the empty product is the identity.
    pub fn product<I: IntoIterator<Item = ElementId>>(&self, factors: I) -> ElementId {
        factors
            .into_iter()
            .fold(self.identity(), |acc, x| self.mul(acc, x))
    }

    /// `x^k` for `k >= 0`.
    pub fn pow(&self, x: ElementId, k: usize) -> ElementId {
        (0..k).fold(self.identity(), |acc, _| self.mul(acc, x))
    }

    pub(crate) fn omega_table(&self) -> &[usize] {
        self.omega.get_or_init(|| {
            (0..self.size)
                .map(|x| {
                    let mut p = x;
                    loop {
                        let pp = self.raw_mul(p, p);
                        if pp == p {
                            break p;
                        }
                        p = self.raw_mul(p, x);
                    }
                })
                .collect()
        })
    }

    /// The unique idempotent among the positive powers of `x`.
    pub fn omega_power(&self, x: ElementId) -> ElementId {
        ElementId(self.omega_table()[x.0])
    }

    pub fn is_idempotent(&self, x: ElementId) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<ElementId> {
        self.elements().filter(|&e| self.is_idempotent(e)).collect()
    }

    /// `(index, period)` of `x`: the least `i >= 1`, `p >= 1` with `x^(i+p) = x^i`.
    pub fn index_and_period(&self, x: ElementId) -> (usize, usize) {
        let mut seen = vec![0usize; self.size];
        let mut p = x.0;
        let mut k = 1;
        loop {
            if seen[p] != 0 {
                return (seen[p], k - seen[p]);
            }
            seen[p] = k;
            p = self.raw_mul(p, x.0);
            k += 1;
        }
    }

    /// Least `n >= 1` such that `x^n` is idempotent for every element `x`.
    pub fn global_exponent(&self) -> usize {
        let mut lcm = 1usize;
        let mut index = 1usize;
        for x in self.elements() {
            let (i, p) = self.index_and_period(x);
            lcm = lcm / gcd(lcm, p) * p;
            index = index.max(i);
        }
        index.div_ceil(lcm) * lcm
    }

    pub fn is_aperiodic(&self) -> bool {
        self.elements().all(|x| {
            let e = self.omega_power(x);
            self.mul(e, x) == e
        })
    }

    fn green(&self) -> &Green {
        self.green.get_or_init(|| {
            let n = self.size;
            let mut right = BitRows::new(n, n);
            let mut left = BitRows::new(n, n);
            for y in 0..n {
                for z in 0..n {
                    right.set(y, self.raw_mul(y, z));
                    left.set(y, self.raw_mul(z, y));
                }
            }
            let classes = |ideals: &BitRows| -> Vec<usize> {
                let mut class = vec![usize::MAX; n];
                for x in 0..n {
                    if class[x] != usize::MAX {
                        continue;
                    }
                    for y in x..n {
                        if class[y] == usize::MAX && ideals.row(x) == ideals.row(y) {
                            class[y] = x;
                        }
                    }
                }
                class
            };
            let r_class = classes(&right);
            let l_class = classes(&left);
            Green {
                right,
                left,
                r_class,
                l_class,
            }
        })
    }

    /// `x <=_R y`, i.e. `xM ⊆ yM`.
    pub fn leq_r(&self, x: ElementId, y: ElementId) -> bool {
        self.green().right.get(y.0, x.0)
    }

    /// `x <=_L y`, i.e. `Mx ⊆ My`.
    pub fn leq_l(&self, x: ElementId, y: ElementId) -> bool {
        self.green().left.get(y.0, x.0)
    }

    pub fn r_related(&self, x: ElementId, y: ElementId) -> bool {
        let g = self.green();
        g.r_class[x.0] == g.r_class[y.0]
    }

    pub fn l_related(&self, x: ElementId, y: ElementId) -> bool {
        let g = self.green();
        g.l_class[x.0] == g.l_class[y.0]
    }

    /// Representative (least index) of the R-class of `x`.
    pub fn r_class(&self, x: ElementId) -> ElementId {
        ElementId(self.green().r_class[x.0])
    }

    pub fn l_class(&self, x: ElementId) -> ElementId {
        ElementId(self.green().l_class[x.0])
    }

    pub fn right_ideal(&self, x: ElementId) -> BTreeSet<ElementId> {
        self.elements().filter(|&y| self.leq_r(y, x)).collect()
    }

    pub fn left_ideal(&self, x: ElementId) -> BTreeSet<ElementId> {
        self.elements().filter(|&y| self.leq_l(y, x)).collect()
    }

    pub fn is_r_trivial(&self) -> bool {
        self.green()
            .r_class
            .iter()
            .enumerate()
            .all(|(x, &c)| x == c)
    }

    pub fn is_l_trivial(&self) -> bool {
        self.green()
            .l_class
            .iter()
            .enumerate()
            .all(|(x, &c)| x == c)
    }

    /// `x ~K y` iff for every idempotent `e`: `ex R e` or `ey R e` implies `ex = ey`.
    pub fn sim_k(&self) -> Result<Congruence> {
        let idempotents = self.idempotents();
        let signature = |x: ElementId| -> Vec<Option<ElementId>> {
            idempotents
                .iter()
                .map(|&e| {
                    let ex = self.mul(e, x);
                    self.r_related(ex, e).then_some(ex)
                })
                .collect()
        };
        Congruence::from_keys(self, signature)
    }

    /// Left-right dual of [`Monoid::sim_k`].
    pub fn sim_d(&self) -> Result<Congruence> {
        let idempotents = self.idempotents();
        let signature = |x: ElementId| -> Vec<Option<ElementId>> {
            idempotents
                .iter()
                .map(|&e| {
                    let xe = self.mul(x, e);
                    self.l_related(xe, e).then_some(xe)
                })
                .collect()
        };
        Congruence::from_keys(self, signature)
    }

    /// Quotient monoid together with the projection onto it.
    pub fn quotient(&self, congruence: &Congruence) -> Result<(Monoid, Vec<ElementId>)> {
        if congruence.class_of.len() != self.size {
            return Err(Error::InvalidArgument(format!(
                "congruence on {} elements applied to a monoid of size {}",
                congruence.class_of.len(),
                self.size
            )));
        }
        congruence.check_compatible(self)?;
        let k = congruence.class_count;
        let mut reps = vec![usize::MAX; k];
        for (x, &c) in congruence.class_of.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = x;
            }
        }
        let mut table = Vec::with_capacity(k * k);
        for &rx in &reps {
            for &ry in &reps {
                table.push(congruence.class_of[self.raw_mul(rx, ry)]);
            }
        }
        let identity = congruence.class_of[self.identity];
        let projection = congruence.class_of.iter().map(|&c| ElementId(c)).collect();
        Ok((Monoid::from_parts(k, identity, table, None), projection))
    }

    /// Componentwise product; element `(x, y)` has index `x * |other| + y`.
    pub fn direct_product(&self, other: &Monoid, cap: usize) -> Result<Monoid> {
        let n = self.size;
        let m = other.size;
        let size = n
            .checked_mul(m)
            .filter(|&s| s <= cap)
            .ok_or(Error::SizeCapExceeded { cap })?;
        let mut table = Vec::with_capacity(size * size);
        for x1 in 0..n {
            for y1 in 0..m {
                for x2 in 0..n {
                    for y2 in 0..m {
                        table.push(self.raw_mul(x1, x2) * m + other.raw_mul(y1, y2));
                    }
                }
            }
        }
        let labels = match (&self.labels, &other.labels) {
            (None, None) => None,
            _ => Some(
                (0..n)
                    .flat_map(|x| {
                        (0..m).map(move |y| {
                            format!(
                                "({},{})",
                                self.label(ElementId(x)),
                                other.label(ElementId(y))
                            )
                        })
                    })
                    .collect(),
            ),
        };
        Ok(Monoid::from_parts(
            size,
            self.identity * m + other.identity,
            table,
            labels,
        ))
    }

    /// Parses the `.mon` text format (see the crate README).
    pub fn parse_mon(text: &str) -> Result<MonFile> {
        parse_mon(text)
    }

    /// Renders into the `.mon` text format.
    pub fn to_mon(&self, generators: &BTreeMap<char, ElementId>) -> String {
        let mut out = format!("size {}\nidentity {}\ntable\n", self.size, self.identity);
        for x in 0..self.size {
            let row: Vec<String> = (0..self.size)
                .map(|y| self.raw_mul(x, y).to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        if let Some(labels) = &self.labels {
            for (i, l) in labels.iter().enumerate() {
                out.push_str(&format!("label {i} {l}\n"));
            }
        }
        for (a, x) in generators {
            out.push_str(&format!("letter {a} {x}\n"));
        }
        out
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// An equivalence on the elements of a monoid compatible with multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    class_of: Vec<usize>,
    class_count: usize,
}

impl Congruence {
    /// Validates `class_of` as a congruence on `monoid`. Class labels are
    /// renumbered by first occurrence.
    pub fn new(monoid: &Monoid, class_of: &[usize]) -> Result<Self> {
        if class_of.len() != monoid.size() {
            return Err(Error::InvalidArgument(format!(
                "{} class labels for {} elements",
                class_of.len(),
                monoid.size()
            )));
        }
        Congruence::from_keys(monoid, |x| class_of[x.0])
    }

    fn from_keys<K, F>(monoid: &Monoid, key: F) -> Result<Self>
    where
        K: std::hash::Hash + Eq,
        F: Fn(ElementId) -> K,
    {
        let mut ids: HashMap<K, usize> = HashMap::new();
        let class_of: Vec<usize> = monoid
            .elements()
            .map(|x| {
                let next = ids.len();
                *ids.entry(key(x)).or_insert(next)
            })
            .collect();
        let congruence = Congruence {
            class_count: ids.len(),
            class_of,
        };
        congruence.check_compatible(monoid)?;
        Ok(congruence)
    }

    pub fn identity(size: usize) -> Self {
        Congruence {
            class_of: (0..size).collect(),
            class_count: size,
        }
    }

    pub fn universal(size: usize) -> Self {
        Congruence {
            class_of: vec![0; size],
            class_count: 1,
        }
    }

    pub fn class_of(&self, x: ElementId) -> usize {
        self.class_of[x.0]
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn is_identity(&self) -> bool {
        self.class_count == self.class_of.len()
    }

    /// Classes as sorted element lists, ordered by least member.
    pub fn classes(&self) -> Vec<Vec<ElementId>> {
        let mut classes = vec![Vec::new(); self.class_count];
        for (x, &c) in self.class_of.iter().enumerate() {
            classes[c].push(ElementId(x));
        }
        classes
    }

    /// Checks `x ≡ x' ∧ y ≡ y' ⇒ xy ≡ x'y'` over all pairs.
    pub fn check_compatible(&self, monoid: &Monoid) -> Result<()> {
        let k = self.class_count;
        let mut seen = vec![usize::MAX; k * k];
        for x in 0..monoid.size() {
            for y in 0..monoid.size() {
                let slot = &mut seen[self.class_of[x] * k + self.class_of[y]];
                let c = self.class_of[monoid.raw_mul(x, y)];
                if *slot == usize::MAX {
                    *slot = c;
                } else if *slot != c {
                    return Err(Error::Incompatible(format!(
                        "classes of {x} and {y} multiply into two different classes"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A total map on `0..domain_size`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transformation {
    map: Vec<usize>,
}

impl Transformation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        if let Some(&value) = map.iter().find(|&&p| p >= n) {
            return Err(Error::IndexOutOfRange { value, size: n });
        }
        Ok(Transformation { map })
    }

    pub fn identity(n: usize) -> Self {
        Transformation {
            map: (0..n).collect(),
        }
    }

    pub fn domain_size(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.map[point]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// `self` followed by `next`: the point `p` goes to `next(self(p))`.
    pub fn then(&self, next: &Transformation) -> Transformation {
        Transformation {
            map: self.map.iter().map(|&p| next.map[p]).collect(),
        }
    }
}

/// A monoid with a letter-to-element assignment, i.e. a homomorphism from
/// free words.
#[derive(Debug, Clone)]
pub struct Morphism {
    pub monoid: Monoid,
    pub images: BTreeMap<char, ElementId>,
}

impl Morphism {
    pub fn letter(&self, a: char) -> Result<ElementId> {
        self.images.get(&a).copied().ok_or(Error::UnknownLetter(a))
    }

    /// Image of a word.
    pub fn eval(&self, word: &str) -> Result<ElementId> {
        word.chars().try_fold(self.monoid.identity(), |acc, a| {
            Ok(self.monoid.mul(acc, self.letter(a)?))
        })
    }

    pub fn alphabet(&self) -> Vec<char> {
        self.images.keys().copied().collect()
    }
}

/// Closes `generators` under composition with the identity adjoined.
///
/// Element 0 is the identity; the rest appear in breadth-first order of
/// shortest generating words. The product `x*y` is "apply `x`, then `y`".
pub fn transition_monoid(
    n_points: usize,
    generators: &[Transformation],
    letters: &[char],
    cap: usize,
) -> Result<Morphism> {
    if generators.len() != letters.len() {
        return Err(Error::InvalidArgument(format!(
            "{} generators but {} letters",
            generators.len(),
            letters.len()
        )));
    }
    if let Some(g) = generators.iter().find(|g| g.domain_size() != n_points) {
        return Err(Error::InvalidArgument(format!(
            "generator on {} points, expected {n_points}",
            g.domain_size()
        )));
    }
    let k = generators.len();
    let mut elements = vec![Transformation::identity(n_points)];
    let mut index: HashMap<Transformation, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    // parent[y] = (x, g) with y = x * gen_g; right[x * k + g] = x * gen_g
    let mut parent: Vec<(usize, usize)> = vec![(0, usize::MAX)];
    let mut right: Vec<usize> = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        for (g, gen) in generators.iter().enumerate() {
            let next = elements[head].then(gen);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = elements.len();
                    if id >= cap {
                        return Err(Error::SizeCapExceeded { cap });
                    }
                    index.insert(next.clone(), id);
                    elements.push(next);
                    parent.push((head, g));
                    id
                }
            };
            right.push(id);
        }
        head += 1;
    }
    let n = elements.len();
    let mut table = vec![0usize; n * n];
    for x in 0..n {
        table[x * n] = x;
        for y in 1..n {
            let (p, g) = parent[y];
            table[x * n + y] = right[table[x * n + p] * k + g];
        }
    }
    let images = letters
        .iter()
        .enumerate()
        .map(|(g, &a)| (a, ElementId(right[g])))
        .collect();
    // shortest generating word, read off the breadth-first tree
    let mut labels = vec![String::from("1")];
    for y in 1..n {
        let (p, g) = parent[y];
        let prefix = if p == 0 {
            String::new()
        } else {
            labels[p].clone()
        };
        labels.push(format!("{prefix}{}", letters[g]));
    }
    Ok(Morphism {
        monoid: Monoid::from_parts(n, 0, table, Some(labels)),
        images,
    })
}

/// Set of letters occurring in a word.
pub fn content(word: &str) -> BTreeSet<char> {
    word.chars().collect()
}

/// Parsed `.mon` file: the monoid plus any labeled generators.
#[derive(Debug, Clone)]
pub struct MonFile {
    pub monoid: Monoid,
    pub generators: BTreeMap<char, ElementId>,
}

impl MonFile {
    pub fn morphism(&self) -> Option<Morphism> {
        (!self.generators.is_empty()).then(|| Morphism {
            monoid: self.monoid.clone(),
            images: self.generators.clone(),
        })
    }
}

fn parse_mon(text: &str) -> Result<MonFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let format_err = |line: usize, message: &str| Error::Format {
        line,
        message: message.to_string(),
    };
    let mut expect_keyword = |key: &str| -> Result<(usize, Vec<&str>)> {
        let (line, l) = lines
            .next()
            .ok_or_else(|| format_err(0, &format!("missing `{key}`")))?;
        let mut words = l.split_whitespace();
        if words.next() != Some(key) {
            return Err(format_err(line, &format!("expected `{key}`")));
        }
        Ok((line, words.collect()))
    };
    let parse_num = |line: usize, s: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| format_err(line, &format!("`{s}` is not a non-negative integer")))
    };
    let (line, args) = expect_keyword("size")?;
    let size = match args.as_slice() {
        [n] => parse_num(line, n)?,
        _ => return Err(format_err(line, "usage: size <n>")),
    };
    let (line, args) = expect_keyword("identity")?;
    let identity = match args.as_slice() {
        [i] => parse_num(line, i)?,
        _ => return Err(format_err(line, "usage: identity <i>")),
    };
    let (line, args) = expect_keyword("table")?;
    if !args.is_empty() {
        return Err(format_err(line, "`table` takes no arguments"));
    }
    let mut table = Vec::with_capacity(size);
    let mut last_line = line;
    for _ in 0..size {
        let (line, l) = lines
            .next()
            .ok_or_else(|| format_err(last_line, "table has too few rows"))?;
        last_line = line;
        let row = l
            .split_whitespace()
            .map(|s| parse_num(line, s))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != size {
            return Err(format_err(
                line,
                &format!("row has {} entries, expected {size}", row.len()),
            ));
        }
        table.push(row);
    }
    let mut labels: Option<Vec<String>> = None;
    let mut generators = BTreeMap::new();
    for (line, l) in lines {
        let words: Vec<&str> = l.split_whitespace().collect();
        match words.as_slice() {
            ["letter", a, x] => {
                let mut chars = a.chars();
                let letter = match (chars.next(), chars.next()) {
                    (Some(c), None) if c.is_ascii_lowercase() => c,
                    _ => return Err(format_err(line, "letters are single characters a-z")),
                };
                let x = parse_num(line, x)?;
                if x >= size {
                    return Err(format_err(line, &format!("element {x} out of range")));
                }
                generators.insert(letter, ElementId(x));
            }
            ["label", i, rest @ ..] if !rest.is_empty() => {
                let i = parse_num(line, i)?;
                if i >= size {
                    return Err(format_err(line, &format!("element {i} out of range")));
                }
                let labels =
                    labels.get_or_insert_with(|| (0..size).map(|x| x.to_string()).collect());
                labels[i] = rest.join(" ");
            }
            _ => {
                return Err(format_err(
                    line,
                    "expected `letter <a> <element>` or `label <element> <text>`",
                ))
            }
        }
    }
    let monoid = Monoid::new(table, identity, labels)?;
    Ok(MonFile { monoid, generators })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u_monoid() -> Monoid {
        Monoid::new(vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 1, 2]], 0, None).unwrap()
    }

    fn left_zero() -> Monoid {
        Monoid::new(vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]], 0, None).unwrap()
    }

    fn cyclic(n: usize) -> Monoid {
        let table = (0..n)
            .map(|x| (0..n).map(|y| (x + y) % n).collect())
            .collect();
        Monoid::new(table, 0, None).unwrap()
    }

    #[test]
    fn construction_examples() {
        let t = Monoid::new(vec![vec![0]], 0, None).unwrap();
        assert_eq!(t.size(), 1);
        assert_eq!(u_monoid().size(), 3);
        assert_eq!(cyclic(2).size(), 2);
    }

    #[test]
    fn construction_errors() {
        let bad_identity = Monoid::new(vec![vec![0, 1], vec![1, 1]], 1, None);
        assert!(matches!(
            bad_identity,
            Err(Error::BadIdentity { identity: 1, .. })
        ));
        let out_of_range = Monoid::new(vec![vec![0, 2], vec![1, 0]], 0, None);
        assert!(matches!(
            out_of_range,
            Err(Error::IndexOutOfRange { value: 2, size: 2 })
        ));
        // (1*1)*2 = 2*2 = 1 but 1*(1*2) = 1*1 = 2
        let table = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 1]];
        assert!(matches!(
            Monoid::new(table, 0, None),
            Err(Error::NonAssociative { .. })
        ));
        let ragged = Monoid::new(vec![vec![0, 1], vec![1]], 0, None);
        assert!(matches!(ragged, Err(Error::NotSquare { row: 1, .. })));
    }

    #[test]
    fn multiplication() {
        let u = u_monoid();
        let (a, b) = (ElementId(1), ElementId(2));
        assert_eq!(u.mul(u.identity(), a), a);
        assert_eq!(u.mul(a, b), b);
        let z2 = cyclic(2);
        assert_eq!(z2.mul(ElementId(1), ElementId(1)), ElementId(0));
    }

    #[test]
    fn omega_and_idempotents() {
        let u = u_monoid();
        assert_eq!(u.omega_power(ElementId(1)), ElementId(1));
        let z3 = cyclic(3);
        assert_eq!(z3.omega_power(ElementId(1)), z3.identity());
        assert_eq!(z3.idempotents(), vec![ElementId(0)]);
        assert_eq!(
            u.idempotents(),
            vec![ElementId(0), ElementId(1), ElementId(2)]
        );
        assert_eq!(Monoid::trivial().idempotents(), vec![ElementId(0)]);
        // {1, 0} with 0 absorbing
        let with_zero = Monoid::new(vec![vec![0, 1], vec![1, 1]], 0, None).unwrap();
        assert_eq!(with_zero.omega_power(ElementId(1)), ElementId(1));
    }

    #[test]
    fn global_exponent_and_period() {
        assert_eq!(cyclic(3).global_exponent(), 3);
        assert_eq!(u_monoid().global_exponent(), 1);
        let z6 = cyclic(6);
        assert_eq!(z6.index_and_period(ElementId(2)), (1, 3));
        assert_eq!(z6.global_exponent(), 6);
        // transformation x -> [1,2,2] has index 2 and period 1
        let m = transition_monoid(
            3,
            &[Transformation::new(vec![1, 2, 2]).unwrap()],
            &['a'],
            100,
        )
        .unwrap();
        let a = m.letter('a').unwrap();
        assert_eq!(m.monoid.index_and_period(a), (2, 1));
        assert_eq!(m.monoid.global_exponent(), 2);
    }

    #[test]
    fn green_relations() {
        let u = u_monoid();
        let (a, b) = (ElementId(1), ElementId(2));
        assert!(u.r_related(a, a));
        assert!(u.r_related(a, b));
        assert!(!u.l_related(a, b));
        assert_eq!(u.right_ideal(a), [a, b].into());
        assert_eq!(u.left_ideal(a), [a].into());
        for x in u.elements() {
            assert!(u.leq_r(x, u.identity()));
        }
        assert!(u.is_l_trivial());
        assert!(!u.is_r_trivial());
    }

    #[test]
    fn aperiodicity() {
        assert!(u_monoid().is_aperiodic());
        assert!(!cyclic(2).is_aperiodic());
    }

    #[test]
    fn sim_k_and_sim_d() {
        assert_eq!(Monoid::trivial().sim_k().unwrap().class_count(), 1);
        assert_eq!(Monoid::trivial().sim_d().unwrap().class_count(), 1);
        let u = u_monoid();
        assert!(u.sim_k().unwrap().is_identity());
        let d = u.sim_d().unwrap();
        assert_eq!(
            d.classes(),
            vec![vec![ElementId(0)], vec![ElementId(1), ElementId(2)]]
        );
        let lz = left_zero();
        let k = lz.sim_k().unwrap();
        assert_eq!(
            k.classes(),
            vec![vec![ElementId(0)], vec![ElementId(1), ElementId(2)]]
        );
        assert!(lz.sim_d().unwrap().is_identity());
    }

    #[test]
    fn quotients() {
        let u = u_monoid();
        let (q, proj) = u.quotient(&Congruence::identity(3)).unwrap();
        assert_eq!(q.size(), 3);
        assert_eq!(proj.len(), 3);
        let (q, _) = u.quotient(&Congruence::universal(3)).unwrap();
        assert_eq!(q.size(), 1);
        let lz = left_zero();
        let (q, proj) = lz.quotient(&lz.sim_k().unwrap()).unwrap();
        assert_eq!(q.size(), 2);
        let s = proj[1];
        assert_eq!(proj[2], s);
        assert_ne!(s, q.identity());
        assert_eq!(q.mul(s, s), s);
        let bad = Congruence::new(&cyclic(3), &[0, 1, 1]);
        assert!(matches!(bad, Err(Error::Incompatible(_))));
    }

    #[test]
    fn direct_products() {
        let u = u_monoid();
        let p = u.direct_product(&Monoid::trivial(), 100).unwrap();
        assert_eq!(p.size(), 3);
        let uu = u.direct_product(&u, 100).unwrap();
        assert_eq!(uu.size(), 9);
        uu.check_associativity().unwrap();
        let z2 = cyclic(2);
        let klein = z2.direct_product(&z2, 100).unwrap();
        assert_eq!(klein.size(), 4);
        for x in klein.elements() {
            assert_eq!(klein.mul(x, x), klein.identity());
        }
        assert!(matches!(
            u.direct_product(&u, 8),
            Err(Error::SizeCapExceeded { cap: 8 })
        ));
    }

    #[test]
    fn transition_monoids() {
        let m = transition_monoid(3, &[], &[], 100).unwrap();
        assert_eq!(m.monoid.size(), 1);
        let m = transition_monoid(3, &[Transformation::identity(3)], &['a'], 100).unwrap();
        assert_eq!(m.monoid.size(), 1);
        assert_eq!(m.letter('a').unwrap(), m.monoid.identity());

        let a = Transformation::new(vec![1, 2, 2]).unwrap();
        let b = Transformation::new(vec![0, 0, 2]).unwrap();
        let m = transition_monoid(3, &[a.clone(), b.clone()], &['a', 'b'], 100).unwrap();
        // brute-force closure: compose words until no new maps appear
        let mut all = BTreeSet::from([Transformation::identity(3)]);
        loop {
            let next: BTreeSet<Vec<usize>> = all
                .iter()
                .flat_map(|t| [t.then(&a), t.then(&b)])
                .chain(all.iter().cloned())
                .map(|t| t.map)
                .collect();
            if next.len() == all.len() {
                break;
            }
            all = next
                .into_iter()
                .map(|m| Transformation { map: m })
                .collect();
        }
        assert_eq!(m.monoid.size(), all.len());
        m.monoid.check_associativity().unwrap();
        assert!(matches!(
            transition_monoid(3, &[a, b], &['a', 'b'], 2),
            Err(Error::SizeCapExceeded { cap: 2 })
        ));
    }

    #[test]
    fn content_of_words() {
        assert!(content("").is_empty());
        assert_eq!(content("bca"), ['a', 'b', 'c'].into());
        assert_eq!(content("aaa"), ['a'].into());
    }

    #[test]
    fn mon_format() {
        let text = "# U\nsize 3\nidentity 0\ntable\n0 1 2\n1 1 2\n2 1 2\nletter a 1\nletter b 2\n";
        let parsed = Monoid::parse_mon(text).unwrap();
        assert_eq!(parsed.monoid, u_monoid());
        assert_eq!(parsed.generators[&'b'], ElementId(2));
        let again = Monoid::parse_mon(&parsed.monoid.to_mon(&parsed.generators)).unwrap();
        assert_eq!(again.monoid, parsed.monoid);
        assert_eq!(again.generators, parsed.generators);

        let err = Monoid::parse_mon("size 2\nidentity 0\ntable\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Format { line: 4, .. }));
        let err = Monoid::parse_mon("size 2\nidentity 0\ntable\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Format { line: 5, .. }));
        let labeled = Monoid::parse_mon("size 1\nidentity 0\ntable\n0\nlabel 0 one\n").unwrap();
        assert_eq!(labeled.monoid.label(ElementId(0)), "one");
    }
}
