//! Combinatorial singular simplices, witnesses, and their verification.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::complex::{SimplicialChain, SimplicialComplex};
use super::fundamental::{fundamental_cycle, ManifoldError};
use super::fixtures::standard_simplex;
use super::subdivision::{subdivide_vertex_map, Tower};

/// A simplicial map from the `r`-fold subdivided standard simplex to the
/// `s`-fold subdivided target, recorded as its vertex images in barycenter-id
/// order. Collapsing maps are allowed: a simplex may land on a lower-
/// dimensional simplex.
///
/// The derived ordering — depth pair first, then the vertex images
/// lexicographically — is the canonical alphabet order used everywhere a
/// deterministic choice is needed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CombinatorialSimplex {
    pub r: usize,
    pub s: usize,
    pub vertex_map: Vec<usize>,
}

/// One signed term of a witness chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessTerm {
    pub coefficient: i64,
    #[serde(flatten)]
    pub simplex: CombinatorialSimplex,
}

/// Data recomputed during verification, stored for transparency; it is
/// never trusted on re-verification.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificates {
    /// Distinct boundary faces that cancelled in the cycle check.
    pub cancelled_faces: usize,
    /// Subdivision depth of the target where the class was compared.
    pub comparison_depth: usize,
}

/// A certified upper bound: a cycle of combinatorial simplices with
/// `l1`-norm at most `n` representing `m` times the fundamental class, so
/// the represented bound is `n / m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub m: u64,
    pub n: u64,
    pub chain: Vec<WitnessTerm>,
    #[serde(default)]
    pub certificates: Certificates,
}

impl Witness {
    pub fn norm(&self) -> u64 {
        self.chain
            .iter()
            .map(|t| t.coefficient.unsigned_abs())
            .sum()
    }

    /// Glue two witnesses: multiplicities and norm budgets add, shared
    /// simplices merge. The result witnesses the sum of the classes, which
    /// is why certified bounds are subadditive.
    pub fn concat(&self, other: &Witness) -> Witness {
        let mut merged: HashMap<CombinatorialSimplex, i64> = HashMap::new();
        for term in self.chain.iter().chain(&other.chain) {
            *merged.entry(term.simplex.clone()).or_insert(0) += term.coefficient;
        }
        let mut chain: Vec<WitnessTerm> = merged
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(simplex, coefficient)| WitnessTerm {
                coefficient,
                simplex,
            })
            .collect();
        chain.sort_by(|a, b| a.simplex.cmp(&b.simplex));
        Witness {
            m: self.m + other.m,
            n: self.n + other.n,
            chain,
            certificates: Certificates::default(),
        }
    }
}

#[derive(Debug, Error)]
pub enum WitnessRejection {
    #[error("target complex: {0}")]
    Target(#[from] ManifoldError),
    #[error("witness multiplicity m must be positive")]
    ZeroMultiplicity,
    #[error("term {0} has a zero coefficient")]
    ZeroCoefficient(usize),
    #[error("term {0} is not a simplicial map at its depths")]
    NotSimplicial(usize),
    #[error("the chain is not a cycle: {residue} boundary faces fail to cancel")]
    NotACycle { residue: usize },
    #[error("the cycle does not represent {m} times the fundamental class")]
    WrongClass { m: u64 },
    #[error("the chain has norm {norm}, above the declared bound {allowed}")]
    NormExceeded { norm: u64, allowed: u64 },
}

/// Shared geometry for certification: the target and domain subdivision
/// towers, subdivided face inclusions, and the pushed fundamental data.
pub struct CertificationContext {
    dimension: usize,
    target: Tower,
    domain: Tower,
    face_domain: Option<Tower>,
    /// [r][i] = vertex map of the i-th face inclusion at domain depth r.
    face_maps: Vec<Vec<Vec<usize>>>,
    /// [r] = the subdivided fundamental chain of the standard simplex.
    fundamental_domain: Vec<SimplicialChain>,
    /// [s] = the subdivided fundamental cycle of the target.
    z_pushed: Vec<SimplicialChain>,
}

impl CertificationContext {
    pub fn new(target: &SimplicialComplex) -> Result<Self, ManifoldError> {
        let z = fundamental_cycle(target)?;
        let d = target.dimension();
        let domain = Tower::new(standard_simplex(d));
        let face_domain = if d >= 1 {
            Some(Tower::new(standard_simplex(d - 1)))
        } else {
            None
        };
        // Depth-zero face inclusions: drop one vertex of 0..=d.
        let base_faces: Vec<Vec<usize>> = (0..=d)
            .map(|skip| (0..=d).filter(|&v| v != skip).collect())
            .collect();
        let top = SimplicialChain::new(d, [(0usize, BigInt::from(1))]);
        Ok(CertificationContext {
            dimension: d,
            target: Tower::new(target.clone()),
            domain,
            face_domain,
            face_maps: vec![base_faces],
            fundamental_domain: vec![top],
            z_pushed: vec![z],
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn ensure_depths(&mut self, r_max: usize, s_max: usize) {
        self.domain.ensure_depth(r_max);
        self.target.ensure_depth(s_max);
        if let Some(fd) = &mut self.face_domain {
            fd.ensure_depth(r_max);
        }
        while self.fundamental_domain.len() <= r_max {
            let r = self.fundamental_domain.len();
            let next = self
                .domain
                .step(r - 1)
                .push_chain(&self.fundamental_domain[r - 1]);
            self.fundamental_domain.push(next);
        }
        while self.face_maps.len() <= r_max {
            let r = self.face_maps.len();
            let fd = self.face_domain.as_ref().expect("faces exist in dim >= 1");
            let lifted: Vec<Vec<usize>> = self.face_maps[r - 1]
                .iter()
                .map(|f| {
                    subdivide_vertex_map(
                        f,
                        fd.complex(r - 1),
                        fd.step(r - 1),
                        self.domain.complex(r - 1),
                        self.domain.step(r - 1),
                    )
                })
                .collect();
            self.face_maps.push(lifted);
        }
        while self.z_pushed.len() <= s_max {
            let s = self.z_pushed.len();
            let next = self.target.step(s - 1).push_chain(&self.z_pushed[s - 1]);
            self.z_pushed.push(next);
        }
    }

    pub fn domain_complex(&self, r: usize) -> &SimplicialComplex {
        self.domain.complex(r)
    }

    pub fn target_complex(&self, s: usize) -> &SimplicialComplex {
        self.target.complex(s)
    }

    /// The fundamental cycle of the target pushed to depth `s`.
    pub fn fundamental_at(&self, s: usize) -> &SimplicialChain {
        &self.z_pushed[s]
    }

    /// The fundamental chain of the standard simplex subdivided `r` times.
    pub fn domain_fundamental_at(&self, r: usize) -> &SimplicialChain {
        &self.fundamental_domain[r]
    }

    /// Whether every simplex of the subdivided domain lands on a simplex
    /// (of any dimension) of the subdivided target.
    pub fn is_simplicial(&self, cs: &CombinatorialSimplex) -> bool {
        let dom = self.domain_complex(cs.r);
        let tgt = self.target_complex(cs.s);
        if cs.vertex_map.len() != dom.simplex_count(0) {
            return false;
        }
        if cs
            .vertex_map
            .iter()
            .any(|&v| tgt.simplex_index(0, &[v]).is_none())
        {
            return false;
        }
        // Top cells suffice: subsets of their images cover all faces.
        for top in dom.simplices(self.dimension) {
            let mut image: Vec<usize> = top.iter().map(|&v| cs.vertex_map[v]).collect();
            image.sort_unstable();
            image.dedup();
            if tgt.simplex_index(image.len() - 1, &image).is_none() {
                return false;
            }
        }
        true
    }

    /// The pushforward of the subdivided fundamental chain of the domain:
    /// signed images of its top cells, with collapsing cells dropped.
    pub fn push(&self, cs: &CombinatorialSimplex) -> SimplicialChain {
        let d = self.dimension;
        let dom = self.domain_complex(cs.r);
        let tgt = self.target_complex(cs.s);
        let mut out = SimplicialChain::zero(d);
        for (idx, coeff) in self.fundamental_domain[cs.r].iter() {
            let top = &dom.simplices(d)[idx];
            let image: Vec<usize> = top.iter().map(|&v| cs.vertex_map[v]).collect();
            let mut sorted = image.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != image.len() {
                continue;
            }
            let mut inversions = 0;
            for a in 0..image.len() {
                for b in a + 1..image.len() {
                    if image[a] > image[b] {
                        inversions += 1;
                    }
                }
            }
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            let j = tgt
                .simplex_index(d, &sorted)
                .expect("push of a simplicial map lands in the target");
            out.add_coefficient(j, coeff * BigInt::from(sign));
        }
        out
    }

    /// Pushforward promoted to target depth `s_to >= cs.s`.
    pub fn push_promoted(&self, cs: &CombinatorialSimplex, s_to: usize) -> SimplicialChain {
        self.target.push_chain(&self.push(cs), cs.s, s_to)
    }

    /// The `i`-th boundary face: restriction along the subdivided face
    /// inclusion. Same depths, one dimension down.
    pub fn face(&self, cs: &CombinatorialSimplex, i: usize) -> CombinatorialSimplex {
        let fm = &self.face_maps[cs.r][i];
        CombinatorialSimplex {
            r: cs.r,
            s: cs.s,
            vertex_map: fm.iter().map(|&v| cs.vertex_map[v]).collect(),
        }
    }

    /// Algebraic cancellation of all boundary faces. Returns the number of
    /// distinct faces seen if the boundary vanishes, the number left over
    /// otherwise.
    pub fn cycle_residue(&self, chain: &[(i64, CombinatorialSimplex)]) -> Result<usize, usize> {
        let mut acc: HashMap<CombinatorialSimplex, i64> = HashMap::new();
        let mut seen = 0usize;
        for (c, cs) in chain {
            for i in 0..=self.dimension {
                let face = self.face(cs, i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let entry = acc.entry(face).or_insert_with(|| {
                    seen += 1;
                    0
                });
                *entry += c * sign;
            }
        }
        let residue = acc.values().filter(|v| **v != 0).count();
        if residue == 0 {
            Ok(seen)
        } else {
            Err(residue)
        }
    }

    /// Whether the chain's pushforward is homologous to `m` times the
    /// fundamental cycle, compared at the deepest target depth present.
    /// Returns the comparison depth on success.
    pub fn class_matches(
        &self,
        chain: &[(i64, CombinatorialSimplex)],
        m: u64,
    ) -> Result<usize, ()> {
        let d = self.dimension;
        let s_star = chain.iter().map(|(_, cs)| cs.s).max().unwrap_or(0);
        let tgt = self.target_complex(s_star);
        let mut total = SimplicialChain::zero(d);
        for (c, cs) in chain {
            total.add_assign_scaled(&self.push_promoted(cs, s_star), &BigInt::from(*c));
        }
        total.add_assign_scaled(&self.fundamental_at(s_star), &-BigInt::from(m));
        // Solve "difference = a boundary" integrally; in the top dimension
        // the boundary lattice is trivial and this degenerates to equality.
        let boundary = tgt.boundary_matrix(d + 1);
        let smith = super::snf::smith(&boundary);
        match smith.solve(&total.to_dense(tgt.simplex_count(d))) {
            Some(_) => Ok(s_star),
            None => Err(()),
        }
    }

    /// Full verification of a witness against this context's target.
    pub fn verify(&mut self, witness: &Witness) -> Result<Certificates, WitnessRejection> {
        if witness.m == 0 {
            return Err(WitnessRejection::ZeroMultiplicity);
        }
        let r_max = witness.chain.iter().map(|t| t.simplex.r).max().unwrap_or(0);
        let s_max = witness.chain.iter().map(|t| t.simplex.s).max().unwrap_or(0);
        self.ensure_depths(r_max, s_max);

        for (i, term) in witness.chain.iter().enumerate() {
            if term.coefficient == 0 {
                return Err(WitnessRejection::ZeroCoefficient(i));
            }
            if !self.is_simplicial(&term.simplex) {
                return Err(WitnessRejection::NotSimplicial(i));
            }
        }
        let pairs: Vec<(i64, CombinatorialSimplex)> = witness
            .chain
            .iter()
            .map(|t| (t.coefficient, t.simplex.clone()))
            .collect();
        let cancelled = self
            .cycle_residue(&pairs)
            .map_err(|residue| WitnessRejection::NotACycle { residue })?;
        let depth = self
            .class_matches(&pairs, witness.m)
            .map_err(|()| WitnessRejection::WrongClass { m: witness.m })?;
        let norm = witness.norm();
        if norm > witness.n {
            return Err(WitnessRejection::NormExceeded {
                norm,
                allowed: witness.n,
            });
        }
        Ok(Certificates {
            cancelled_faces: cancelled,
            comparison_depth: depth,
        })
    }
}

/// Independent re-verification: rebuilds every subdivision, face map, and
/// fundamental cycle from the target complex alone, trusting nothing cached
/// by whoever produced the witness.
pub fn verify_witness(
    target: &SimplicialComplex,
    witness: &Witness,
) -> Result<Certificates, WitnessRejection> {
    let mut ctx = CertificationContext::new(target)?;
    ctx.verify(witness)
}
