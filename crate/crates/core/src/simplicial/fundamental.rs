//! Fundamental cycles of closed, connected, orientable complexes.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use thiserror::Error;

use super::complex::{SimplicialChain, SimplicialComplex};

#[derive(Debug, Error)]
pub enum ManifoldError {
    #[error("fundamental cycles need dimension at least 1")]
    DimensionZero,
    #[error("face {face:?} lies in {count} top simplices instead of two")]
    NotClosed { face: Vec<usize>, count: usize },
    #[error("the complex is not connected through shared faces")]
    NotConnected,
    #[error("orientations cannot be made consistent: the complex is non-orientable")]
    NotOrientable,
    #[error("the provided orientation signs do not have zero boundary")]
    BadOrientation,
}

/// The fundamental cycle: every top simplex once, signed so the boundary
/// cancels.
///
/// The complex must be closed (every codimension-one face in exactly two
/// top simplices), connected, and orientable. When the complex carries
/// orientation signs they are used and checked; otherwise signs are
/// propagated outward from the first top simplex, which makes the returned
/// representative deterministic.
pub fn fundamental_cycle(complex: &SimplicialComplex) -> Result<SimplicialChain, ManifoldError> {
    let d = complex.dimension();
    if d == 0 {
        return Err(ManifoldError::DimensionZero);
    }
    let tops = complex.simplices(d);

    // face tuple -> the tops it bounds, with the face's sign in that
    // top's boundary.
    let mut incidence: HashMap<Vec<usize>, Vec<(usize, i64)>> = HashMap::new();
    for (t, top) in tops.iter().enumerate() {
        for drop in 0..top.len() {
            let mut face = top.clone();
            face.remove(drop);
            let sign = if drop % 2 == 0 { 1 } else { -1 };
            incidence.entry(face).or_default().push((t, sign));
        }
    }
    for face in complex.simplices(d - 1) {
        let count = incidence.get(face).map(|v| v.len()).unwrap_or(0);
        if count != 2 {
            return Err(ManifoldError::NotClosed {
                face: face.clone(),
                count,
            });
        }
    }

    // Walk the dual graph from the first top simplex, forcing each shared
    // face to cancel; report reachability and consistency failures.
    let mut sign: Vec<Option<i64>> = vec![None; tops.len()];
    sign[0] = Some(1);
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        let st = sign[t].expect("queued tops are signed");
        let top = &tops[t];
        for drop in 0..top.len() {
            let mut face = top.clone();
            face.remove(drop);
            let pair = &incidence[&face];
            let (&(_, ct), &(u, cu)) = if pair[0].0 == t {
                (&pair[0], &pair[1])
            } else {
                (&pair[1], &pair[0])
            };
            let forced = -st * ct * cu;
            match sign[u] {
                None => {
                    sign[u] = Some(forced);
                    queue.push_back(u);
                }
                Some(su) if su != forced => return Err(ManifoldError::NotOrientable),
                Some(_) => {}
            }
        }
    }
    if sign.iter().any(|s| s.is_none()) {
        return Err(ManifoldError::NotConnected);
    }

    let chosen: Vec<i64> = match complex.orientations() {
        Some(given) => given.to_vec(),
        None => sign.into_iter().map(|s| s.unwrap()).collect(),
    };
    let z = SimplicialChain::new(
        d,
        chosen
            .iter()
            .enumerate()
            .map(|(t, &s)| (t, BigInt::from(s))),
    );
    if !z.is_cycle(complex) {
        // Propagated signs always cancel; only supplied ones can fail here.
        return Err(ManifoldError::BadOrientation);
    }
    Ok(z)
}
