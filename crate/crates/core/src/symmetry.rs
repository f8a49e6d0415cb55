//! The dual distance and three ways of making a distance symmetric.

use crate::quantale::Quantale;
use crate::space::{ContinuitySpace, SpaceError};

/// `d*(x, y) = d(y, x)`.
pub fn dual<Q: Quantale>(space: &ContinuitySpace<Q>) -> ContinuitySpace<Q> {
    space.dual()
}

/// `d(x, y) ∨ d(y, x)`.
pub fn sym_join<Q: Quantale>(space: &ContinuitySpace<Q>) -> Result<ContinuitySpace<Q>, SpaceError> {
    let q = space.quantale();
    space.with_table(space.names().to_vec(), |x, y| q.join(space.d(x, y), space.d(y, x)))
}

/// `d(x, y) + d(y, x)`.
pub fn sym_plus<Q: Quantale>(space: &ContinuitySpace<Q>) -> Result<ContinuitySpace<Q>, SpaceError> {
    let q = space.quantale();
    space.with_table(space.names().to_vec(), |x, y| q.plus(space.d(x, y), space.d(y, x)))
}

/// The meet, over walks, of the sums of edge weights `d(u, v) ∧ d(v, u)`.
///
/// Computed by relaxing `D(x, z) ← D(x, z) ∧ (D(x, y) + D(y, z))` until
/// nothing changes.
pub fn sym_path<Q: Quantale>(space: &ContinuitySpace<Q>) -> Result<ContinuitySpace<Q>, SpaceError> {
    let q = space.quantale();
    let n = space.len();
    let mut table: Vec<Vec<Q::Elem>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| if x == y { q.bottom() } else { q.meet(space.d(x, y), space.d(y, x)) })
                .collect()
        })
        .collect();
    loop {
        let mut changed = false;
        for y in 0..n {
            for x in 0..n {
                for z in 0..n {
                    let via = q.plus(&table[x][y], &table[y][z]);
                    let relaxed = q.meet(&table[x][z], &via);
                    if relaxed != table[x][z] {
                        table[x][z] = relaxed;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    ContinuitySpace::new(q.clone(), space.names().to_vec(), table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::FiniteQuantale;
    use crate::topology::FiniteTopology;

    fn sierpinski() -> ContinuitySpace<FiniteQuantale> {
        let q = FiniteQuantale::truncated_chain(1);
        ContinuitySpace::new(q, vec!["x".into(), "y".into()], vec![vec![0, 1], vec![0, 0]]).unwrap()
    }

    #[test]
    fn symmetrizations_of_sierpinski() {
        let s = sierpinski();
        assert!(sym_join(&s).unwrap().generate_topology().same_opens(&FiniteTopology::discrete(2)));
        assert!(sym_plus(&s).unwrap().generate_topology().same_opens(&FiniteTopology::discrete(2)));
        let p = sym_path(&s).unwrap();
        assert!(p.distances().iter().all(|&e| e == 0));
        assert!(p.generate_topology().same_opens(&FiniteTopology::indiscrete(2)));
    }

    #[test]
    fn dual_generates_the_other_sierpinski() {
        let t = dual(&sierpinski()).generate_topology();
        assert_eq!(t.opens()[1].0, 0b10);
    }
}
