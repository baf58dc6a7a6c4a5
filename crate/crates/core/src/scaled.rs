//! The scaled root system: each positive Cartan root β stretched to N_β·β,
//! its simple members, the reflections attached to Cartan roots, exact
//! coroot pairings, and the classical root-system axioms as runtime checks.

use crate::cartan_roots::RootDatum;
use crate::error::{Error, Result};
use crate::groupoid::{GroupoidAtlas, Witness};
use crate::matrix::{span_rank, RootVec, SquareMat};
use std::collections::BTreeSet;

/// The positive half of the scaled system. The full system is
/// positive ∪ −positive; zero is never a member.
#[derive(Clone, Debug)]
pub struct ScaledRootSystem {
    positive: Vec<RootVec>,
    ambient_rank: usize,
    span_rank: usize,
}

impl ScaledRootSystem {
    pub fn positive(&self) -> &[RootVec] {
        &self.positive
    }

    pub fn is_empty(&self) -> bool {
        self.positive.is_empty()
    }

    pub fn len(&self) -> usize {
        self.positive.len()
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Dimension of the rational span of the system.
    pub fn span_rank(&self) -> usize {
        self.span_rank
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.positive.iter().any(|p| p == v)
    }
}

/// Scale every positive Cartan root by its N_β. The scaling map must be
/// injective; a collision would collapse two distinct roots into one
/// member and is reported as an internal inconsistency.
pub fn scaled_system(data: &[RootDatum]) -> Result<ScaledRootSystem> {
    let ambient_rank = data.first().map_or(0, |d| d.beta.len());
    let mut positive: Vec<RootVec> = Vec::new();
    let mut seen = BTreeSet::new();
    for d in data.iter().filter(|d| d.is_cartan) {
        let n = i64::try_from(d.n_beta).map_err(|_| {
            Error::InternalInconsistency(format!("N_β = {} does not fit a scaling factor", d.n_beta))
        })?;
        let scaled: RootVec = d
            .beta
            .iter()
            .map(|&x| {
                x.checked_mul(n).ok_or_else(|| {
                    Error::InternalInconsistency("overflow while scaling a root".into())
                })
            })
            .collect::<Result<_>>()?;
        if !seen.insert(scaled.clone()) {
            return Err(Error::InternalInconsistency(format!(
                "two cartan roots scale to the same vector {:?}",
                scaled
            )));
        }
        positive.push(scaled);
    }
    positive.sort();
    let span_rank = span_rank(&positive);
    Ok(ScaledRootSystem { positive, ambient_rank, span_rank })
}

/// The simple members: elements of the positive half not expressible as a
/// sum of two (not necessarily distinct) members of the positive half.
/// Returned in lexicographic order of coordinates; the classification is
/// invariant under renumbering.
pub fn simple_scaled(omega: &ScaledRootSystem) -> Vec<RootVec> {
    let set: BTreeSet<&RootVec> = omega.positive.iter().collect();
    omega
        .positive
        .iter()
        .filter(|v| {
            !omega.positive.iter().any(|a| {
                let rest: RootVec = v.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                set.contains(&rest)
            })
        })
        .cloned()
        .collect()
}

/// The reflection attached to a Cartan root, built from its witness: walk
/// the prefix, reflect at the witness vertex, walk back. Every factor is an
/// involution taken at the object recorded in the path, so the composite is
/// a single reflection in the start object's basis.
pub fn scaled_reflection(atlas: &GroupoidAtlas, witness: Witness<'_>) -> Result<SquareMat> {
    let theta = atlas.theta();
    let mut forward = SquareMat::identity(theta);
    for (step, &letter) in witness.prefix().iter().enumerate() {
        forward = forward.mul(atlas.object(witness.objects()[step]).reflection(letter));
    }
    let mut s = forward.mul(atlas.object(witness.object()).reflection(witness.vertex()));
    for (step, &letter) in witness.prefix().iter().enumerate().rev() {
        s = s.mul(atlas.object(witness.objects()[step]).reflection(letter));
    }
    if !s.mul(&s).is_identity() {
        return Err(Error::InternalInconsistency(
            "conjugated reflection is not an involution".into(),
        ));
    }
    Ok(s)
}

/// The unique integer b with γ − s(γ) = b·β̲, for s the reflection of β̲.
/// A non-integral ratio falsifies the root-system axioms for this input
/// and is reported, never rounded.
pub fn coroot_pairing(s: &SquareMat, beta_scaled: &[i64], gamma: &[i64]) -> Result<i64> {
    let image = s.apply(gamma);
    let diff: RootVec = gamma.iter().zip(image.iter()).map(|(a, b)| a - b).collect();
    let mut b: Option<i64> = None;
    for (d, &c) in diff.iter().zip(beta_scaled.iter()) {
        match (c, *d) {
            (0, 0) => {}
            (0, _) => {
                return Err(Error::NotIntegral(format!(
                    "γ − s(γ) = {:?} is not a multiple of {:?}",
                    diff, beta_scaled
                )))
            }
            (c, d) => {
                if d % c != 0 {
                    return Err(Error::NotIntegral(format!(
                        "γ − s(γ) = {:?} is not an integer multiple of {:?}",
                        diff, beta_scaled
                    )));
                }
                let q = d / c;
                if let Some(prev) = b {
                    if prev != q {
                        return Err(Error::NotIntegral(format!(
                            "γ − s(γ) = {:?} is not proportional to {:?}",
                            diff, beta_scaled
                        )));
                    }
                } else {
                    b = Some(q);
                }
            }
        }
    }
    Ok(b.unwrap_or(0))
}

/// Axioms of a finite root system, checked on the computed data. The first
/// failure per axiom is kept as a witness string.
#[derive(Clone, Debug, serde::Serialize)]
pub struct AxiomReport {
    pub nonzero: bool,
    pub spans: bool,
    pub stable: bool,
    pub integral: bool,
    pub witness: Option<String>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.nonzero && self.spans && self.stable && self.integral
    }
}

/// Check: no zero member; the simple members span the same space as the
/// whole system; every reflection permutes the full system; every pairing
/// is integral. `reflections` pairs each scaled positive root with its
/// reflection.
pub fn verify_axioms(
    omega: &ScaledRootSystem,
    reflections: &[(RootVec, SquareMat)],
) -> AxiomReport {
    let mut witness = None;
    let nonzero = !omega.positive.iter().any(|v| v.iter().all(|&x| x == 0));
    if !nonzero {
        witness.get_or_insert_with(|| "zero vector is a member".to_string());
    }

    let pi = simple_scaled(omega);
    let spans = span_rank(&pi) == omega.span_rank;
    if !spans {
        witness.get_or_insert_with(|| "simple members do not span the system".to_string());
    }

    let mut stable = true;
    'outer: for (beta, s) in reflections {
        for v in &omega.positive {
            let img = s.apply(v);
            let neg: RootVec = img.iter().map(|x| -x).collect();
            if !omega.contains(&img) && !omega.contains(&neg) {
                stable = false;
                witness.get_or_insert_with(|| {
                    format!("reflection of {:?} maps {:?} outside the system", beta, v)
                });
                break 'outer;
            }
        }
    }

    let mut integral = true;
    'outer2: for (beta, s) in reflections {
        for v in &omega.positive {
            if let Err(e) = coroot_pairing(s, beta, v) {
                integral = false;
                witness.get_or_insert_with(|| e.to_string());
                break 'outer2;
            }
        }
    }

    AxiomReport { nonzero, spans, stable, integral, witness }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braiding::parse;
    use crate::braiding::test_support::cartan_a2_sym;
    use crate::cartan_roots::root_data;
    use crate::groupoid::{explore, longest_word, positive_roots, PositiveRoots};

    fn pipeline(
        q: &crate::braiding::BraidingMatrix,
    ) -> (GroupoidAtlas, PositiveRoots, Vec<RootDatum>) {
        let atlas = explore(q, 100_000).unwrap();
        let w = longest_word(&atlas, 0, None, 10_000).unwrap();
        let pr = positive_roots(&atlas, &w).unwrap();
        let data = root_data(&atlas, &pr).unwrap();
        (atlas, pr, data)
    }

    #[test]
    fn a2_scaled_system_and_simples() {
        let (_, _, data) = pipeline(&cartan_a2_sym());
        let omega = scaled_system(&data).unwrap();
        assert_eq!(
            omega.positive(),
            &[vec![0, 3], vec![3, 0], vec![3, 3]]
        );
        assert_eq!(omega.span_rank(), 2);
        assert_eq!(simple_scaled(&omega), vec![vec![0, 3], vec![3, 0]]);
    }

    #[test]
    fn singleton_system_is_its_own_simple_set() {
        let q = parse("diagram\ntheta 2\nv 1 1/2\nv 2 1/3\ne 1 2 2/3\n").unwrap().matrix;
        let (_, _, data) = pipeline(&q);
        let omega = scaled_system(&data).unwrap();
        assert_eq!(omega.positive(), &[vec![0, 3]]);
        assert_eq!(simple_scaled(&omega), vec![vec![0, 3]]);
        assert_eq!(omega.span_rank(), 1);
    }

    #[test]
    fn empty_cartan_set_gives_empty_system() {
        let omega = scaled_system(&[]).unwrap();
        assert!(omega.is_empty());
        assert_eq!(omega.span_rank(), 0);
        assert!(simple_scaled(&omega).is_empty());
    }

    #[test]
    fn scaling_collision_is_a_hard_error() {
        let data = vec![
            RootDatum { beta: vec![1, 0], n_beta: 6, is_cartan: true, index: 0 },
            RootDatum { beta: vec![2, 0], n_beta: 3, is_cartan: true, index: 1 },
        ];
        assert!(matches!(
            scaled_system(&data),
            Err(Error::InternalInconsistency(_))
        ));
    }

    #[test]
    fn a2_nonsimple_reflection_swaps_the_simples() {
        let q = cartan_a2_sym();
        let (atlas, pr, data) = pipeline(&q);
        // the middle root of the word (1,2,1) is α_1+α_2
        let middle = data.iter().find(|d| d.beta == vec![1, 1]).unwrap();
        let s = scaled_reflection(&atlas, pr.witness(middle.index)).unwrap();
        assert_eq!(s.apply(&[3, 3]), vec![-3, -3]);
        assert_eq!(s.apply(&[3, 0]), vec![0, -3]);
        assert_eq!(s.apply(&[0, 3]), vec![-3, 0]);
        assert_eq!(s.det(), -1);
        assert_eq!(coroot_pairing(&s, &[3, 3], &[3, 0]).unwrap(), 1);
        assert_eq!(coroot_pairing(&s, &[3, 3], &[3, 3]).unwrap(), 2);
    }

    #[test]
    fn simple_cartan_vertex_reflection_is_the_plain_reflection() {
        let q = cartan_a2_sym();
        let (atlas, pr, data) = pipeline(&q);
        let first = data.iter().find(|d| d.beta == vec![1, 0]).unwrap();
        let s = scaled_reflection(&atlas, pr.witness(first.index)).unwrap();
        assert_eq!(&s, atlas.object(0).reflection(0));
    }

    #[test]
    fn pairing_rejects_non_multiples() {
        let q = cartan_a2_sym();
        let (atlas, pr, data) = pipeline(&q);
        let middle = data.iter().find(|d| d.beta == vec![1, 1]).unwrap();
        let s = scaled_reflection(&atlas, pr.witness(middle.index)).unwrap();
        // wrong β̲ for this reflection: the difference is β̲/2
        assert!(matches!(
            coroot_pairing(&s, &[6, 6], &[3, 0]),
            Err(Error::NotIntegral(_))
        ));
    }

    #[test]
    fn orthogonal_pairing_is_zero() {
        let s = SquareMat::identity(2);
        assert_eq!(coroot_pairing(&s, &[3, 0], &[0, 3]).unwrap(), 0);
    }

    fn all_reflections(
        atlas: &GroupoidAtlas,
        pr: &PositiveRoots,
        data: &[RootDatum],
    ) -> Vec<(RootVec, SquareMat)> {
        data.iter()
            .filter(|d| d.is_cartan)
            .map(|d| {
                let scaled: RootVec =
                    d.beta.iter().map(|&x| x * d.n_beta as i64).collect();
                let s = scaled_reflection(atlas, pr.witness(d.index)).unwrap();
                (scaled, s)
            })
            .collect()
    }

    #[test]
    fn a2_axioms_all_pass() {
        let q = cartan_a2_sym();
        let (atlas, pr, data) = pipeline(&q);
        let omega = scaled_system(&data).unwrap();
        let refls = all_reflections(&atlas, &pr, &data);
        let report = verify_axioms(&omega, &refls);
        assert!(report.all_pass(), "{:?}", report);
    }

    #[test]
    fn corrupted_system_fails_stability_with_witness() {
        let q = cartan_a2_sym();
        let (atlas, pr, data) = pipeline(&q);
        let mut omega = scaled_system(&data).unwrap();
        let refls = all_reflections(&atlas, &pr, &data);
        omega.positive[2] = vec![3, 4];
        let report = verify_axioms(&omega, &refls);
        assert!(!report.stable);
        assert!(report.witness.is_some());
    }
}
