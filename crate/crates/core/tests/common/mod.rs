//! Shared corpus and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use continuity::lattice::{Elem, FiniteLattice};
use continuity::quantale::{FiniteQuantale, Quantale};
use continuity::space::ContinuitySpace;
use continuity::topology::{FiniteTopology, PointSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_2026;

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

pub fn named_lattices() -> Vec<(String, FiniteLattice)> {
    let mut out: Vec<(String, FiniteLattice)> =
        (1..=6).map(|k| (format!("chain{k}"), FiniteLattice::chain(k))).collect();
    out.push(("M3".into(), FiniteLattice::diamond()));
    out.push(("N5".into(), FiniteLattice::pentagon()));
    out.push(("B3".into(), FiniteLattice::boolean(3)));
    out
}

/// The lattice of an intersection-closed family of subsets of a small ground set.
pub fn moore_lattice(family: &BTreeSet<u8>) -> FiniteLattice {
    let elems: Vec<u8> = family.iter().copied().collect();
    let names = elems.iter().map(|s| format!("s{s:02x}")).collect();
    let leq = elems.iter().map(|&a| elems.iter().map(|&b| a & b == a).collect()).collect();
    FiniteLattice::from_table(names, leq).expect("Moore families are lattices")
}

/// Random lattices with 2 to 8 elements, from intersection-closed families.
pub fn random_lattices(count: usize, stream: u64) -> Vec<FiniteLattice> {
    let mut r = rng(stream);
    let mut out = Vec::new();
    while out.len() < count {
        let ground: u32 = r.gen_range(2..=4);
        let full = ((1u32 << ground) - 1) as u8;
        let mut family = BTreeSet::from([full]);
        for _ in 0..r.gen_range(1..=6) {
            family.insert(r.gen_range(0..=full));
        }
        loop {
            let items: Vec<u8> = family.iter().copied().collect();
            let before = family.len();
            for &a in &items {
                for &b in &items {
                    family.insert(a & b);
                }
            }
            if family.len() == before {
                break;
            }
        }
        if (2..=8).contains(&family.len()) {
            out.push(moore_lattice(&family));
        }
    }
    out
}

pub fn lattice_corpus() -> Vec<(String, FiniteLattice)> {
    let mut out = named_lattices();
    for (i, l) in random_lattices(24, 1).into_iter().enumerate() {
        out.push((format!("random{i}"), l));
    }
    out
}

/// `y ≻ x` by its definition: every nonempty `S` with `⋀S ≤ x` meets `↓y`.
pub fn brute_well_above(l: &FiniteLattice, y: Elem, x: Elem) -> bool {
    let n = l.len();
    (1u32..(1 << n)).all(|mask| {
        let s: Vec<Elem> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        !l.leq(l.meet(s.iter().copied()), x) || s.iter().any(|&e| l.leq(e, y))
    })
}

/// Complete distributivity by its definition: every `x` is the meet of `{y : y ≻ x}`.
pub fn brute_completely_distributive(l: &FiniteLattice) -> bool {
    l.elements().all(|x| {
        let above: Vec<Elem> = l.elements().filter(|&y| brute_well_above(l, y, x)).collect();
        l.meet(above) == x
    })
}

pub fn quantale_corpus() -> Vec<(String, FiniteQuantale)> {
    let mut out: Vec<(String, FiniteQuantale)> =
        (1..=3).map(|k| (format!("trunc{k}"), FiniteQuantale::truncated_chain(k))).collect();
    out.push(("max3".into(), FiniteQuantale::with_join(FiniteLattice::chain(3))));
    out.push(("max4".into(), FiniteQuantale::with_join(FiniteLattice::chain(4))));
    // Maximum, raised by one step when both summands are nonzero.
    let bump = FiniteQuantale::from_fn(FiniteLattice::chain(4), |a, b| {
        if a == 0 || b == 0 {
            a.max(b)
        } else {
            (a.max(b) + 1).min(3)
        }
    })
    .expect("a table on the chain");
    out.push(("bump4".into(), bump));
    out
}

/// Closes a table under `D(x, z) ≤ D(x, y) + D(y, z)` by lowering entries, with a zero diagonal.
pub fn close_table<Q: Quantale>(q: &Q, mut t: Vec<Vec<Q::Elem>>) -> Vec<Vec<Q::Elem>> {
    let n = t.len();
    for (x, row) in t.iter_mut().enumerate() {
        row[x] = q.bottom();
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let m = q.meet(&t[x][z], &q.plus(&t[x][y], &t[y][z]));
                    if m != t[x][z] {
                        t[x][z] = m;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return t;
        }
    }
}

pub fn random_table(q: &FiniteQuantale, n: usize, symmetric: bool, r: &mut ChaCha8Rng) -> Vec<Vec<Elem>> {
    let k = q.len();
    let mut t = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            if symmetric && y < x {
                t[x][y] = t[y][x];
            } else {
                t[x][y] = r.gen_range(0..k);
            }
        }
    }
    close_table(q, t)
}

pub fn random_space(q: &FiniteQuantale, n: usize, symmetric: bool, r: &mut ChaCha8Rng) -> ContinuitySpace<FiniteQuantale> {
    let t = random_table(q, n, symmetric, r);
    ContinuitySpace::new(q.clone(), names(n), t).expect("closed tables satisfy the triangle inequality")
}

/// Random spaces on 1 to `max_points` points over every corpus quantale.
pub fn space_corpus(max_points: usize, per_shape: usize, stream: u64) -> Vec<(String, ContinuitySpace<FiniteQuantale>)> {
    let mut r = rng(stream);
    let mut out = Vec::new();
    for (qn, q) in quantale_corpus() {
        for n in 1..=max_points {
            for i in 0..per_shape {
                let symmetric = i % 2 == 1;
                out.push((format!("{qn}/{n}/{i}"), random_space(&q, n, symmetric, &mut r)));
            }
        }
    }
    out
}

/// Every topology on `n` points, built from preorders (specialisation orders).
pub fn topologies_from_preorders(n: usize) -> Vec<FiniteTopology> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut nb: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                nb[a] = nb[a].with(b);
            }
        }
        let t = FiniteTopology::from_neighbourhoods(names(n), &nb).expect("small");
        let key: Vec<u64> = t.opens().iter().map(|u| u.0).collect();
        if seen.insert(key) {
            out.push(t);
        }
    }
    out
}

pub fn sample<T: Clone>(items: &[T], k: usize, stream: u64) -> Vec<T> {
    let mut r = rng(stream);
    items.choose_multiple(&mut r, k.min(items.len())).cloned().collect()
}

/// Points reachable from `a` along walks whose steps `u → v` satisfy `step(u, v)`.
pub fn reach(n: usize, a: usize, step: impl Fn(usize, usize) -> bool) -> PointSet {
    let mut seen = PointSet::singleton(a);
    let mut frontier = vec![a];
    while let Some(u) = frontier.pop() {
        for v in 0..n {
            if !seen.contains(v) && step(u, v) {
                seen = seen.with(v);
                frontier.push(v);
            }
        }
    }
    seen
}

/// A closed table from raw entries, reduced modulo the quantale size.
pub fn space_from_raw(q: &FiniteQuantale, n: usize, raw: &[usize], symmetric: bool) -> ContinuitySpace<FiniteQuantale> {
    let k = q.len();
    let mut t = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            t[x][y] = if symmetric && y < x { t[y][x] } else { raw[(x * n + y) % raw.len()] % k };
        }
    }
    ContinuitySpace::new(q.clone(), names(n), close_table(q, t)).expect("closed tables satisfy the triangle inequality")
}

/// The Moore closure of a family of subsets of `0..2^ground`, with the full set added.
pub fn moore_from_raw(ground: u32, raw: &[u8]) -> FiniteLattice {
    let full = ((1u32 << ground) - 1) as u8;
    let mut family: BTreeSet<u8> = raw.iter().map(|s| s & full).collect();
    family.insert(full);
    loop {
        let items: Vec<u8> = family.iter().copied().collect();
        let before = family.len();
        for &a in &items {
            for &b in &items {
                family.insert(a & b);
            }
        }
        if family.len() == before {
            return moore_lattice(&family);
        }
    }
}
