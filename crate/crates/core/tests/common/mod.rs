//! Test-only oracles: straight-from-the-definition predicates, naive
//! enumeration, seeded random tables, and a small DPLL solver.
#![allow(dead_code)]

use e2pm::{CayleyTable, Element};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every size-`n` table with absorber rows `0` and `1`, in lexicographic
/// order of the remaining cells (row-major).
pub fn all_tables(n: usize) -> impl Iterator<Item = CayleyTable> {
    let free = (n - 2) * n;
    let total = (n as u64).pow(free as u32);
    (0..total).map(move |mut code| {
        let mut cells = vec![0usize; n * n];
        for j in 0..n {
            cells[n + j] = 1;
        }
        for k in (0..free).rev() {
            cells[2 * n + k] = (code % n as u64) as usize;
            code /= n as u64;
        }
        CayleyTable::new(n, cells).unwrap()
    })
}

fn core(n: usize) -> std::ops::Range<Element> {
    2..n
}

fn absorbing(v: Element) -> bool {
    v < 2
}

pub fn is_e2pm(t: &CayleyTable) -> bool {
    let n = t.order();
    let absorber_rows = (0..n).all(|x| t.op(0, x) == 0 && t.op(1, x) == 1);
    let no_extra = core(n).all(|e| (0..n).any(|x| t.op(e, x) != e));
    let extensional = (0..n).all(|a| (a + 1..n).all(|b| (0..n).any(|x| t.op(a, x) != t.op(b, x))));
    absorber_rows && no_extra && extensional
}

pub fn retraction_pairs(t: &CayleyTable, mutual: bool) -> Vec<(Element, Element)> {
    let n = t.order();
    let mut out = Vec::new();
    for s in core(n) {
        for r in core(n) {
            let left = core(n).all(|x| t.op(r, t.op(s, x)) == x);
            let right = !mutual || core(n).all(|x| t.op(s, t.op(r, x)) == x);
            if left && right && t.op(r, 0) == 0 {
                out.push((s, r));
            }
        }
    }
    out
}

pub fn r_mutual(t: &CayleyTable) -> bool {
    !retraction_pairs(t, true).is_empty()
}

pub fn r_onesided(t: &CayleyTable) -> bool {
    !retraction_pairs(t, false).is_empty()
}

pub fn strict_classifier(t: &CayleyTable, e: Element) -> bool {
    (0..t.order()).all(|x| absorbing(t.op(e, x)))
}

pub fn d_strict(t: &CayleyTable) -> bool {
    let n = t.order();
    let is_c = |y: Element| core(n).all(|x| absorbing(t.op(y, x)));
    let is_n = |y: Element| core(n).all(|x| !absorbing(t.op(y, x)));
    core(n).any(|tau| strict_classifier(t, tau)) && core(n).all(|y| is_c(y) || is_n(y)) && core(n).any(is_n)
}

pub fn icp_triples(t: &CayleyTable) -> Vec<(Element, Element, Element)> {
    let n = t.order();
    let mut out = Vec::new();
    for a in core(n) {
        for b in core(n) {
            for c in core(n) {
                if a == b || b == c || a == c {
                    continue;
                }
                let preserving = core(n).all(|x| !absorbing(t.op(b, x)));
                let factors = core(n).all(|x| t.op(a, x) == t.op(c, t.op(b, x)));
                let mut image: Vec<Element> = core(n).map(|x| t.op(a, x)).collect();
                image.sort_unstable();
                image.dedup();
                if preserving && factors && image.len() >= 2 {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

pub fn h(t: &CayleyTable) -> bool {
    !icp_triples(t).is_empty()
}

pub fn associative(t: &CayleyTable) -> bool {
    let n = t.order();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t.op(t.op(a, b), c) == t.op(a, t.op(b, c)))))
}

/// Uniformly random permutation fixing `0` and `1`.
pub fn random_core_perm(n: usize, rng: &mut ChaCha8Rng) -> Vec<Element> {
    let mut images: Vec<Element> = (2..n).collect();
    images.shuffle(rng);
    [0, 1].into_iter().chain(images).collect()
}

/// `count` seeded permutations fixing `z1` and `z2`.
pub fn sample_perms(n: usize, z1: Element, z2: Element, count: usize, seed: u64) -> Vec<Vec<Element>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let core: Vec<Element> = (0..n).filter(|&e| e != z1 && e != z2).collect();
    (0..count)
        .map(|_| {
            let mut images = core.clone();
            images.shuffle(&mut rng);
            let mut perm: Vec<Element> = (0..n).collect();
            for (&c, &i) in core.iter().zip(&images) {
                perm[c] = i;
            }
            perm
        })
        .collect()
}

/// A random valid E2PM of size `n` (absorbers `0`, `1`). When `plant` is
/// set, some triple `a = c ∘ b` on the core with `b` core-preserving is
/// built in.
pub fn random_e2pm(n: usize, plant: bool, rng: &mut ChaCha8Rng) -> CayleyTable {
    loop {
        let mut cells = vec![0usize; n * n];
        for j in 0..n {
            cells[n + j] = 1;
        }
        for i in 2..n {
            for j in 0..n {
                cells[i * n + j] = rng.gen_range(0..n);
            }
        }
        if plant && n >= 5 {
            let mut pick: Vec<Element> = (2..n).collect();
            pick.shuffle(rng);
            let (a, b, c) = (pick[0], pick[1], pick[2]);
            for x in 2..n {
                cells[b * n + x] = rng.gen_range(2..n);
            }
            for x in 2..n {
                let bx = cells[b * n + x];
                cells[a * n + x] = cells[c * n + bx];
            }
        }
        let t = CayleyTable::new(n, cells).unwrap();
        if is_e2pm(&t) {
            return t;
        }
    }
}

/// Minimal DPLL with unit propagation over occurrence lists.
pub struct Dpll<'a> {
    vars: usize,
    clauses: &'a [Vec<i32>],
    occurs: Vec<Vec<usize>>,
}

fn slot(l: i32) -> usize {
    (l.unsigned_abs() as usize) * 2 + usize::from(l < 0)
}

impl<'a> Dpll<'a> {
    pub fn new(vars: usize, clauses: &'a [Vec<i32>]) -> Self {
        let mut occurs = vec![Vec::new(); (vars + 1) * 2];
        for (ci, c) in clauses.iter().enumerate() {
            for &l in c {
                occurs[slot(l)].push(ci);
            }
        }
        Dpll { vars, clauses, occurs }
    }

    /// A satisfying assignment (index = variable) extending `assumptions`.
    pub fn solve(&self, assumptions: &[i32]) -> Option<Vec<bool>> {
        let mut value: Vec<i8> = vec![0; self.vars + 1];
        let mut trail = Vec::new();
        let mut pending: Vec<i32> = assumptions.to_vec();
        for c in self.clauses {
            if c.is_empty() {
                return None;
            }
            if c.len() == 1 {
                pending.push(c[0]);
            }
        }
        if !self.propagate(&mut value, &mut trail, pending) {
            return None;
        }
        if self.search(&mut value, &mut trail) {
            Some(value.iter().map(|&v| v > 0).collect())
        } else {
            None
        }
    }

    fn lit_value(value: &[i8], l: i32) -> i8 {
        let v = value[l.unsigned_abs() as usize];
        if l > 0 {
            v
        } else {
            -v
        }
    }

    fn propagate(&self, value: &mut [i8], trail: &mut Vec<i32>, mut queue: Vec<i32>) -> bool {
        while let Some(l) = queue.pop() {
            match Self::lit_value(value, l) {
                1 => continue,
                -1 => return false,
                _ => {}
            }
            value[l.unsigned_abs() as usize] = if l > 0 { 1 } else { -1 };
            trail.push(l);
            for &ci in &self.occurs[slot(-l)] {
                let mut unassigned = None;
                let mut free = 0;
                let mut sat = false;
                for &m in &self.clauses[ci] {
                    match Self::lit_value(value, m) {
                        1 => {
                            sat = true;
                            break;
                        }
                        0 => {
                            free += 1;
                            unassigned = Some(m);
                        }
                        _ => {}
                    }
                }
                if sat {
                    continue;
                }
                match free {
                    0 => return false,
                    1 => queue.push(unassigned.unwrap()),
                    _ => {}
                }
            }
        }
        true
    }

    fn search(&self, value: &mut Vec<i8>, trail: &mut Vec<i32>) -> bool {
        let Some(var) = (1..=self.vars).find(|&v| value[v] == 0) else {
            return true;
        };
        for lit in [var as i32, -(var as i32)] {
            let mark = trail.len();
            if self.propagate(value, trail, vec![lit]) && self.search(value, trail) {
                return true;
            }
            for l in trail.drain(mark..) {
                value[l.unsigned_abs() as usize] = 0;
            }
        }
        false
    }
}

/// A required-predicate list paired with its naive oracle.
pub type Family = (&'static [e2pm::search::Predicate], fn(&CayleyTable) -> bool);

/// The four n = 4 families checked against exhaustive enumeration.
pub fn n4_families() -> [Family; 4] {
    use e2pm::search::Predicate::*;
    [
        (&[E2PM], is_e2pm),
        (&[E2PM, D], |t| is_e2pm(t) && d_strict(t)),
        (&[E2PM, H], |t| is_e2pm(t) && h(t)),
        (&[E2PM, RMutual], |t| is_e2pm(t) && r_mutual(t)),
    ]
}
