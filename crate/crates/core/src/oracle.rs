//! Ground truth on finite topologies, computed from open-set families by
//! the textbook definitions. Nothing here looks at distances.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::topology::{FiniteTopology, Partition, PointSet, TopologyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration is limited to {1} points, got {0}")]
    TooLarge(usize, usize),
    #[error("no factors given")]
    NoFactors,
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

fn smallest_open_containing(opens: &[PointSet], s: PointSet, full: PointSet) -> PointSet {
    opens
        .iter()
        .filter(|u| s.is_subset(**u))
        .fold(full, |acc, &u| acc.intersection(u))
}

/// Every topology on `n <= 4` points, by filtering all families of subsets.
pub fn enumerate_topologies(n: usize) -> Result<Vec<FiniteTopology>, OracleError> {
    const LIMIT: usize = 4;
    if n > LIMIT {
        return Err(OracleError::TooLarge(n, LIMIT));
    }
    let full = PointSet::full(n);
    // Families always contain ∅ and X, so range over the proper nonempty subsets.
    let middle: Vec<PointSet> = PointSet::all(n).filter(|&s| !s.is_empty() && s != full).collect();
    let names = crate::topology::default_names(n);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << middle.len()) {
        let mut family = vec![PointSet::EMPTY, full];
        family.extend((0..middle.len()).filter(|i| mask & (1 << i) != 0).map(|i| middle[i]));
        let set: BTreeSet<PointSet> = family.iter().copied().collect();
        let closed = family.iter().all(|&u| {
            family
                .iter()
                .all(|&v| set.contains(&u.union(v)) && set.contains(&u.intersection(v)))
        });
        if closed {
            out.push(FiniteTopology::from_opens(names.clone(), &family)?);
        }
    }
    Ok(out)
}

/// Names of product points, `(a,b,..)`, in lexicographic order with the first factor most significant.
pub fn product_names(factors: &[&[String]]) -> Vec<String> {
    let mut out = vec![Vec::<&str>::new()];
    for names in factors {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                names.iter().map(move |n| {
                    let mut p = prefix.clone();
                    p.push(n.as_str());
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(|p| format!("({})", p.join(","))).collect()
}

/// Coordinates of product point `idx`, first factor most significant.
pub fn product_coords(sizes: &[usize], mut idx: usize) -> Vec<usize> {
    let mut coords = vec![0; sizes.len()];
    for i in (0..sizes.len()).rev() {
        coords[i] = idx % sizes[i];
        idx /= sizes[i];
    }
    coords
}

/// Names of summand points, `i:name`.
pub fn sum_names(summands: &[&[String]]) -> Vec<String> {
    summands
        .iter()
        .enumerate()
        .flat_map(|(i, names)| names.iter().map(move |n| format!("{i}:{n}")))
        .collect()
}

/// The product topology, generated by the open boxes `U₁ × .. × U_k`.
pub fn product_topology(factors: &[FiniteTopology]) -> Result<FiniteTopology, OracleError> {
    if factors.is_empty() {
        return Err(OracleError::NoFactors);
    }
    let sizes: Vec<usize> = factors.iter().map(|t| t.len()).collect();
    let total: usize = sizes.iter().product();
    let names = product_names(&factors.iter().map(|t| t.names()).collect::<Vec<_>>());
    let open_lists: Vec<Vec<PointSet>> = factors.iter().map(|t| t.opens()).collect();
    let mut boxes = BTreeSet::new();
    let mut choice = vec![0usize; factors.len()];
    loop {
        let b = PointSet::from_points((0..total).filter(|&p| {
            product_coords(&sizes, p)
                .iter()
                .enumerate()
                .all(|(i, &c)| open_lists[i][choice[i]].contains(c))
        }));
        boxes.insert(b);
        let mut i = 0;
        while i < choice.len() {
            choice[i] += 1;
            if choice[i] < open_lists[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            break;
        }
    }
    let boxes: Vec<PointSet> = boxes.into_iter().collect();
    Ok(FiniteTopology::generated_by(names, &boxes)?)
}

/// The disjoint union, whose opens are unions of opens of the summands.
pub fn sum_topology(summands: &[FiniteTopology]) -> Result<FiniteTopology, OracleError> {
    if summands.is_empty() {
        return Err(OracleError::NoFactors);
    }
    let names = sum_names(&summands.iter().map(|t| t.names()).collect::<Vec<_>>());
    let mut subbase = Vec::new();
    let mut offset = 0;
    for t in summands {
        subbase.extend(t.opens().into_iter().map(|u| PointSet(u.0 << offset)));
        offset += t.len();
    }
    Ok(FiniteTopology::generated_by(names, &subbase)?)
}

/// Opens are the sets of classes whose union is open.
pub fn quotient_topology(t: &FiniteTopology, eq: &Partition) -> Result<FiniteTopology, OracleError> {
    let names = eq.class_names(t.names());
    let opens: Vec<PointSet> = t
        .opens()
        .into_iter()
        .filter(|u| u.iter().all(|x| eq.classes()[eq.class_of(x)].is_subset(*u)))
        .map(|u| PointSet::from_points(u.iter().map(|x| eq.class_of(x))))
        .collect();
    Ok(FiniteTopology::from_opens(names, &opens)?)
}

/// Opens are traces `U ∩ Y`, reindexed onto `Y` in ascending order.
pub fn subspace_topology(t: &FiniteTopology, y: PointSet) -> Result<FiniteTopology, OracleError> {
    let keep: Vec<usize> = y.iter().collect();
    let names = keep.iter().map(|&i| t.names()[i].clone()).collect();
    let opens: Vec<PointSet> = t
        .opens()
        .into_iter()
        .map(|u| PointSet::from_points((0..keep.len()).filter(|&j| u.contains(keep[j]))))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    Ok(FiniteTopology::from_opens(names, &opens)?)
}

/// Topology whose opens are all unions of finite intersections of opens of either.
pub fn join_topology(a: &FiniteTopology, b: &FiniteTopology) -> Result<FiniteTopology, OracleError> {
    let mut subbase = a.opens();
    subbase.extend(b.opens());
    Ok(FiniteTopology::generated_by(a.names().to_vec(), &subbase)?)
}

/// Topology of the sets open in both.
pub fn meet_topology(a: &FiniteTopology, b: &FiniteTopology) -> Result<FiniteTopology, OracleError> {
    let bo: BTreeSet<PointSet> = b.opens().into_iter().collect();
    let common: Vec<PointSet> = a.opens().into_iter().filter(|u| bo.contains(u)).collect();
    Ok(FiniteTopology::from_opens(a.names().to_vec(), &common)?)
}

/// Distinct points are told apart by some open set.
pub fn is_t0(t: &FiniteTopology) -> bool {
    let opens = t.opens();
    (0..t.len()).all(|x| {
        (0..x).all(|y| opens.iter().any(|u| u.contains(x) != u.contains(y)))
    })
}

/// Each point has an open set avoiding any other given point.
pub fn is_t1(t: &FiniteTopology) -> bool {
    let opens = t.opens();
    (0..t.len()).all(|x| {
        (0..t.len()).all(|y| x == y || opens.iter().any(|u| u.contains(x) && !u.contains(y)))
    })
}

/// Points and closed sets missing them have disjoint open neighbourhoods.
pub fn is_regular(t: &FiniteTopology) -> bool {
    let opens = t.opens();
    let full = t.full();
    let closed: Vec<PointSet> = opens.iter().map(|u| full.minus(*u)).collect();
    closed.iter().all(|&c| {
        let around_c = smallest_open_containing(&opens, c, full);
        (0..t.len()).filter(|&x| !c.contains(x)).all(|x| {
            let around_x = smallest_open_containing(&opens, PointSet::singleton(x), full);
            around_x.intersection(around_c).is_empty()
        })
    })
}

/// No open set other than `∅` and the carrier is also closed.
pub fn is_connected(t: &FiniteTopology) -> bool {
    let opens = t.opens();
    let full = t.full();
    let set: BTreeSet<PointSet> = opens.iter().copied().collect();
    opens
        .iter()
        .all(|&u| u.is_empty() || u == full || !set.contains(&full.minus(u)))
}

/// Preimages of open sets are open.
pub fn is_continuous(f: &[usize], src: &FiniteTopology, dst: &FiniteTopology) -> bool {
    let src_opens: BTreeSet<PointSet> = src.opens().into_iter().collect();
    dst.opens().into_iter().all(|v| {
        let pre = PointSet::from_points((0..src.len()).filter(|&x| v.contains(f[x])));
        src_opens.contains(&pre)
    })
}
