#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tw_hierarchy::itl::{Formula, F};
use tw_hierarchy::lang::Regex;
use tw_hierarchy::{transition_monoid, Morphism, Transformation};

/// All words over `alphabet` of length at most `len`, shortest first.
pub fn words_up_to(alphabet: &[char], len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &a in alphabet {
                let mut x = w.clone();
                x.push(a);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn random_generator(rng: &mut ChaCha8Rng, n: usize) -> Transformation {
    let map: Vec<usize> = match rng.gen_range(0..10) {
        // arbitrary
        0..=2 => (0..n).map(|_| rng.gen_range(0..n)).collect(),
        // extensive and order preserving
        3..=4 => {
            let mut v: Vec<usize> = (0..n).map(|i| rng.gen_range(i..n)).collect();
            for i in 1..n {
                v[i] = v[i].max(v[i - 1]);
            }
            v
        }
        // idempotent: retract onto a random image
        5..=6 => {
            let mut image: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            if image.is_empty() {
                image.push(rng.gen_range(0..n));
            }
            (0..n)
                .map(|i| {
                    if image.contains(&i) {
                        i
                    } else {
                        *image.choose(rng).unwrap()
                    }
                })
                .collect()
        }
        // partial, with the last point as a sink
        7..=8 => (0..n)
            .map(|i| {
                if i + 1 == n || rng.gen_bool(0.4) {
                    n - 1
                } else {
                    rng.gen_range(0..n)
                }
            })
            .collect(),
        _ => {
            let mut v: Vec<usize> = (0..n).collect();
            v.shuffle(rng);
            v
        }
    };
    Transformation::new(map).unwrap()
}

/// Generator acting independently on two blocks of points.
fn split_generator(rng: &mut ChaCha8Rng, left: usize, right: usize) -> Transformation {
    let a = random_generator(rng, left);
    let b = random_generator(rng, right);
    let map = (0..left)
        .map(|i| a.apply(i))
        .chain((0..right).map(|i| left + b.apply(i)))
        .collect();
    Transformation::new(map).unwrap()
}

/// Random transition monoids on at most 5 points with at most 3 generators
/// and between 3 and `max_size` elements.
pub fn corpus(seed: u64, count: usize, max_size: usize) -> Vec<Morphism> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let points = [2, 3, 3, 4, 4, 4, 5, 5, 5, 5][rng.gen_range(0..10)];
        let k = [1, 2, 2, 2, 3, 3][rng.gen_range(0..6)];
        let gens: Vec<Transformation> = if points >= 4 && rng.gen_bool(0.3) {
            let left = rng.gen_range(2..=points - 2);
            (0..k)
                .map(|_| split_generator(&mut rng, left, points - left))
                .collect()
        } else {
            (0..k).map(|_| random_generator(&mut rng, points)).collect()
        };
        let letters: Vec<char> = ['a', 'b', 'c'][..k].to_vec();
        if let Ok(m) = transition_monoid(points, &gens, &letters, max_size) {
            if m.monoid.size() >= 3 {
                out.push(m);
            }
        }
    }
    out
}

/// Random formula with at most `max_size` nodes.
pub fn random_formula(rng: &mut ChaCha8Rng, alphabet: &[char], max_size: usize) -> F {
    if max_size <= 2 || rng.gen_bool(0.15) {
        return match (max_size >= 2 && rng.gen_bool(0.3), rng.gen_bool(0.5)) {
            (true, t) => Formula::not(if t { Formula::t() } else { Formula::f() }),
            (false, true) => Formula::t(),
            (false, false) => Formula::f(),
        };
    }
    match rng.gen_range(0..6) {
        0 => Formula::not(random_formula(rng, alphabet, max_size - 1)),
        k => {
            let left = rng.gen_range(1..=max_size - 2);
            let p = random_formula(rng, alphabet, left);
            let q = random_formula(rng, alphabet, max_size - 1 - p.size());
            let a = *alphabet.choose(rng).unwrap();
            match k {
                1 => Formula::and(p, q),
                2 => Formula::or(p, q),
                3 | 4 => Formula::first(p, a, q),
                _ => Formula::last(p, a, q),
            }
        }
    }
}

/// Random regex over `alphabet` of bounded depth.
pub fn random_regex(rng: &mut ChaCha8Rng, alphabet: &[char], depth: usize) -> Regex {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..10) {
            0 => Regex::Epsilon,
            1 => Regex::Empty,
            _ => Regex::lit(*alphabet.choose(rng).unwrap()),
        };
    }
    match rng.gen_range(0..3) {
        0 => Regex::union(
            random_regex(rng, alphabet, depth - 1),
            random_regex(rng, alphabet, depth - 1),
        ),
        1 => Regex::concat(
            random_regex(rng, alphabet, depth - 1),
            random_regex(rng, alphabet, depth - 1),
        ),
        _ => Regex::star(random_regex(rng, alphabet, depth - 1)),
    }
}

/// Backtracking matcher straight from the regex semantics.
pub fn naive_match(r: &Regex, word: &[char]) -> bool {
    ends(r, word, 0).contains(&word.len())
}

/// Every end position of a match of `r` starting at `start`.
fn ends(r: &Regex, w: &[char], start: usize) -> Vec<usize> {
    let mut out = match r {
        Regex::Empty => vec![],
        Regex::Epsilon => vec![start],
        Regex::Literal(a) => {
            if w.get(start) == Some(a) {
                vec![start + 1]
            } else {
                vec![]
            }
        }
        Regex::Union(p, q) => {
            let mut v = ends(p, w, start);
            v.extend(ends(q, w, start));
            v
        }
        Regex::Concat(p, q) => ends(p, w, start)
            .into_iter()
            .flat_map(|mid| ends(q, w, mid))
            .collect(),
        Regex::Star(p) => {
            let mut seen = vec![start];
            let mut frontier = vec![start];
            while let Some(s) = frontier.pop() {
                for e in ends(p, w, s) {
                    if !seen.contains(&e) {
                        seen.push(e);
                        frontier.push(e);
                    }
                }
            }
            seen
        }
    };
    out.sort_unstable();
    out.dedup();
    out
}

/// Transition monoids of up to three random maps on up to `points` points,
/// kept to at most 60 elements.
pub fn morphisms(points: usize) -> impl proptest::strategy::Strategy<Value = Morphism> {
    use proptest::prelude::*;
    (1..=points)
        .prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(0..n, n), 1..=3))
        .prop_filter_map("more than 60 elements", |maps| {
            let n = maps[0].len();
            let gens: Vec<Transformation> = maps
                .into_iter()
                .map(|m| Transformation::new(m).unwrap())
                .collect();
            let letters: Vec<char> = ['a', 'b', 'c'][..gens.len()].to_vec();
            transition_monoid(n, &gens, &letters, 60).ok()
        })
}

/// Multiplication table with rows and columns exchanged.
pub fn opposite(m: &tw_hierarchy::Monoid) -> tw_hierarchy::Monoid {
    let table = m
        .elements()
        .map(|x| m.elements().map(|y| m.mul(y, x).index()).collect())
        .collect();
    tw_hierarchy::Monoid::new(table, m.identity().index(), None).unwrap()
}
