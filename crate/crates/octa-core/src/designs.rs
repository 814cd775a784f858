//! Recognition of (t, k, l)-designs on the face complex: a family of k-faces
//! covering every t-face the same number of times.
//!
//! Two recognizers are provided and cross-checked: brute-force counting over
//! all t-faces (the ground-truth oracle) and the spectral criterion, which
//! reads the answer off the vanishing pattern of the spectral components of
//! the family's indicator vector.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::face::{enumerate_faces, Face};
use crate::linalg::{rat, BasisId, FaceVector, Rat};
use crate::spectral::{max_nu_index, project_nu, project_sigma};

/// A set of distinct k-faces on n coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockFamily {
    n: usize,
    k: usize,
    blocks: Vec<Face>,
}

impl BlockFamily {
    /// Validates that every block is a k-face on the given coordinates and
    /// that no block repeats; multisets are rejected.
    pub fn new(n: usize, k: usize, blocks: Vec<Face>) -> Result<Self> {
        if k > n {
            return Err(Error::OutOfRange(format!("grade {k} exceeds {n}")));
        }
        for b in &blocks {
            if b.dim() != k || b.max_coordinate() > n {
                return Err(Error::NotAFace(format!(
                    "{b} is not a {k}-face on {n} coordinates"
                )));
            }
        }
        let mut sorted = blocks.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::OutOfRange("repeated block".into()));
        }
        Ok(BlockFamily { n, k, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Face] {
        &self.blocks
    }

    /// The sum of the blocks as a module element.
    pub fn indicator_vector(&self) -> FaceVector {
        FaceVector::from_entries(
            BasisId::faces(self.n, self.k as i64),
            self.blocks.iter().map(|b| (b.clone(), Rat::one())),
        )
        .expect("validated blocks")
    }
}

/// Brute-force design recognition: counts, for every t-face, the blocks
/// containing it. Returns the common count, or `None` when the counts differ.
pub fn design_index_counting(family: &BlockFamily, t: usize) -> Result<Option<u64>> {
    if t > family.k {
        return Err(Error::OutOfRange(format!(
            "t={t} exceeds the block grade {}",
            family.k
        )));
    }
    let mut common: Option<u64> = None;
    for x in enumerate_faces(family.n, t as i64) {
        let count = family
            .blocks
            .iter()
            .filter(|b| x.is_subface_of(b))
            .count() as u64;
        match common {
            None => common = Some(count),
            Some(c) if c != count => return Ok(None),
            _ => {}
        }
    }
    Ok(common)
}

/// Result of the spectral design recognizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralDesignReport {
    pub is_design: bool,
    pub ell: Option<u64>,
    /// Components `(j, i)` in the tested range that failed to vanish.
    pub violating_components: Vec<(usize, usize)>,
    /// Set when the vanishing pattern held but the recovered index was not a
    /// nonnegative integer; indicates an internal inconsistency.
    pub consistency_alarm: bool,
}

/// Spectral design recognition: the family is a (t, k, l)-design exactly when
/// every component `(j, i) != (0, 0)` with `j <= t`, `i <= min(t - j, n - k)`
/// vanishes; the index l is then recovered from the leading component.
pub fn design_index_spectral(family: &BlockFamily, t: usize) -> Result<SpectralDesignReport> {
    let (n, k) = (family.n, family.k);
    if t > k {
        return Err(Error::OutOfRange(format!("t={t} exceeds the block grade {k}")));
    }
    let f = family.indicator_vector();
    let mut violating = Vec::new();
    for j in 0..=t {
        let fj = project_sigma(&f, j)?;
        let bound = (t - j).min(n - k);
        for i in 0..=bound {
            if (j, i) == (0, 0) {
                continue;
            }
            debug_assert!(i <= max_nu_index(n, k, j));
            if !project_nu(&fj, j, i)?.is_zero() {
                violating.push((j, i));
            }
        }
    }
    if !violating.is_empty() {
        return Ok(SpectralDesignReport {
            is_design: false,
            ell: None,
            violating_components: violating,
            consistency_alarm: false,
        });
    }
    // l / (2^{k-t} C(n-t, k-t)) equals |B| / |L_k| by the leading component.
    let ell = rat(family.len() as i64) * rat((binomial(n - t, k - t) as i64) << (k - t))
        / rat(BasisId::faces(n, k as i64).size() as i64);
    if ell.denom().is_one() && !ell.numer().is_negative() {
        Ok(SpectralDesignReport {
            is_design: true,
            ell: Some(big_to_u64(ell.numer())),
            violating_components: Vec::new(),
            consistency_alarm: false,
        })
    } else {
        Ok(SpectralDesignReport {
            is_design: false,
            ell: None,
            violating_components: Vec::new(),
            consistency_alarm: true,
        })
    }
}

fn big_to_u64(v: &BigInt) -> u64 {
    use num_traits::ToPrimitive;
    v.to_u64().expect("design index fits u64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn face(elems: &[i32]) -> Face {
        Face::new(elems.iter().copied()).unwrap()
    }

    fn family(n: usize, k: usize, blocks: &[&[i32]]) -> BlockFamily {
        BlockFamily::new(n, k, blocks.iter().map(|b| face(b)).collect()).unwrap()
    }

    #[test]
    fn three_disjoint_edges_cover_every_vertex_once() {
        let b = family(3, 2, &[&[1, 2], &[-1, 3], &[-2, -3]]);
        assert_eq!(design_index_counting(&b, 1).unwrap(), Some(1));
        let report = design_index_spectral(&b, 1).unwrap();
        assert!(report.is_design);
        assert_eq!(report.ell, Some(1));
        assert!(report.violating_components.is_empty());
    }

    #[test]
    fn an_antipodal_facet_pair_covers_every_vertex_once() {
        for n in 2..=5usize {
            let top: Vec<i32> = (1..=n as i32).collect();
            let x = Face::new(top).unwrap();
            let b = BlockFamily::new(n, n, vec![x.clone(), x.opposite()]).unwrap();
            assert_eq!(design_index_counting(&b, 1).unwrap(), Some(1), "n={n}");
            let report = design_index_spectral(&b, 1).unwrap();
            assert!(report.is_design);
            assert_eq!(report.ell, Some(1));
        }
    }

    #[test]
    fn the_full_grade_is_a_design_for_every_t() {
        let n = 4;
        let k = 2usize;
        let all = BlockFamily::new(n, k, enumerate_faces(n, k as i64)).unwrap();
        for t in 0..=k {
            let expect = (binomial(n - t, k - t) as u64) << (k - t);
            assert_eq!(design_index_counting(&all, t).unwrap(), Some(expect));
            let report = design_index_spectral(&all, t).unwrap();
            assert_eq!(report.ell, Some(expect));
        }
    }

    #[test]
    fn a_single_face_is_not_a_design() {
        let b = family(3, 2, &[&[1, 2]]);
        assert_eq!(design_index_counting(&b, 1).unwrap(), None);
        let report = design_index_spectral(&b, 1).unwrap();
        assert!(!report.is_design);
        assert!(report.ell.is_none());
        assert!(!report.violating_components.is_empty());
        assert!(!report.consistency_alarm);
    }

    #[test]
    fn empty_family_and_t_zero_edge_cases() {
        let b = BlockFamily::new(3, 2, Vec::new()).unwrap();
        assert_eq!(design_index_counting(&b, 1).unwrap(), Some(0));
        assert_eq!(design_index_spectral(&b, 1).unwrap().ell, Some(0));

        // Every family is a (0, k, |B|)-design.
        let b = family(3, 2, &[&[1, 2], &[1, -3]]);
        assert_eq!(design_index_counting(&b, 0).unwrap(), Some(2));
        assert_eq!(design_index_spectral(&b, 0).unwrap().ell, Some(2));
    }

    #[test]
    fn family_validation() {
        assert!(BlockFamily::new(3, 2, vec![face(&[1, 2]), face(&[1, 2])]).is_err());
        assert!(BlockFamily::new(3, 2, vec![face(&[1])]).is_err());
        assert!(BlockFamily::new(3, 2, vec![face(&[1, 4])]).is_err());
        let b = family(3, 2, &[&[1, 2]]);
        assert!(design_index_counting(&b, 3).is_err());
        assert!(design_index_spectral(&b, 3).is_err());
    }

    #[test]
    fn recognizers_agree_on_seeded_random_families() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let n = 4;
        for _ in 0..60 {
            let k = rng.random_range(1..=n);
            let faces = enumerate_faces(n, k as i64);
            let size = rng.random_range(0..=faces.len().min(8));
            let picks = rand::seq::index::sample(&mut rng, faces.len(), size);
            let blocks: Vec<Face> = picks.iter().map(|i| faces[i].clone()).collect();
            let fam = BlockFamily::new(n, k, blocks).unwrap();
            for t in 1..=k {
                let counted = design_index_counting(&fam, t).unwrap();
                let spectral = design_index_spectral(&fam, t).unwrap();
                assert_eq!(counted, spectral.ell, "k={k} t={t}");
                assert_eq!(counted.is_some(), spectral.is_design);
                assert!(!spectral.consistency_alarm);
                // Double counting of containment pairs pins the index.
                if let Some(ell) = counted {
                    let t_faces = (binomial(n, t) << t) as u64;
                    assert_eq!(
                        t_faces * ell,
                        fam.len() as u64 * binomial(k, t) as u64,
                        "k={k} t={t}"
                    );
                }
            }
        }
    }
}
