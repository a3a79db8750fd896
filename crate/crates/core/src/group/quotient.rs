//! Quotient groups realized as faithful coset actions.

use crate::error::{Error, Result};
use crate::perm::{Permutation, Point};

use super::store::ScanSpace;
use super::Group;

/// The action of G on the right cosets of a normal subgroup N, together
/// with the element map g ↦ image. The image group is faithful on
/// [G : N] points and isomorphic to G/N.
pub struct QuotientAction {
    pub group: Group,
    pub kernel_order: u64,
    parent: Group,
    coset_reps: Vec<u32>,
    coset_of: Vec<u32>,
}

impl QuotientAction {
    pub(crate) fn build(g: &Group, n: &Group) -> Result<QuotientAction> {
        if !n.is_subgroup_of(g) {
            return Err(Error::NotASubgroup(
                "quotient needs a subgroup of the ambient group".into(),
            ));
        }
        if !n.is_normal_in(g) {
            return Err(Error::NotNormal);
        }
        let store = g.store()?;
        let mut space = ScanSpace::new(store);
        let n_indices: Vec<u32> = n
            .elements()?
            .iter()
            .map(|p| store.idx(p).expect("subgroup elements are members"))
            .collect();

        let total = store.len();
        let mut coset_of = vec![u32::MAX; total];
        let mut coset_reps = Vec::new();
        for e in 0..total as u32 {
            if coset_of[e as usize] != u32::MAX {
                continue;
            }
            // walking in ascending order makes e the canonical (least) rep
            let id = coset_reps.len() as u32;
            coset_reps.push(e);
            for &ni in &n_indices {
                let m = store.mul(ni, e, &mut space);
                coset_of[m as usize] = id;
            }
        }
        let cosets = coset_reps.len() as u64;
        assert_eq!(cosets * n.order(), g.order(), "cosets partition the group");

        let mut images = Vec::new();
        for gen in g.generators() {
            let gi = store.idx(gen).expect("generators are members");
            images.push(action_image(
                &coset_reps,
                &coset_of,
                store,
                &mut space,
                gi,
            ));
        }
        let quotient = Group::from_generators(images, g.caps())?;
        assert_eq!(
            quotient.order(),
            cosets,
            "coset action of a normal subgroup is faithful on the quotient"
        );
        Ok(QuotientAction {
            group: quotient,
            kernel_order: n.order(),
            parent: g.clone(),
            coset_reps,
            coset_of,
        })
    }

    /// Image of a parent element under the quotient map.
    pub fn image(&self, g: &Permutation) -> Result<Permutation> {
        let store = self.parent.store()?;
        let gi = store.idx(g).ok_or(Error::NotAMember)?;
        let mut space = ScanSpace::new(store);
        Ok(action_image(
            &self.coset_reps,
            &self.coset_of,
            store,
            &mut space,
            gi,
        ))
    }
}

fn action_image(
    coset_reps: &[u32],
    coset_of: &[u32],
    store: &super::store::Store,
    space: &mut ScanSpace,
    g: u32,
) -> Permutation {
    let images: Vec<Point> = coset_reps
        .iter()
        .map(|&rep| coset_of[store.mul(rep, g, space) as usize])
        .collect();
    Permutation::from_images_unchecked(images)
}

impl Group {
    /// Faithful permutation action on the cosets of a verified normal
    /// subgroup; isomorphic to G/N.
    pub fn quotient_action(&self, n: &Group) -> Result<QuotientAction> {
        QuotientAction::build(self, n)
    }
}
