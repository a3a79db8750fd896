//! Direct products and power wreath products on disjoint point sets.

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::perm::{Permutation, Point};

use super::Group;

/// A × B acting on the disjoint union of the two point sets. The factors
/// are kept as embedded subgroups of the product.
pub struct DirectProduct {
    pub group: Group,
    pub factors: Vec<Group>,
}

/// L ≀ top: k copies of L on k blocks, with `top` permuting the blocks.
pub struct WreathProduct {
    pub group: Group,
    /// The base subgroup L^k.
    pub base: Group,
    /// The k embedded copies of L inside the base.
    pub base_factors: Vec<Group>,
    /// Images of the top group's generators inside the wreath product.
    pub top_embedded: Vec<Permutation>,
    pub copies: usize,
    pub block_degree: usize,
}

/// Re-embeds a permutation into a larger degree at the given offset.
fn embed(p: &Permutation, total: usize, offset: usize) -> Permutation {
    let mut images: Vec<Point> = (0..total as Point).collect();
    for (i, &v) in p.images().iter().enumerate() {
        images[i + offset] = v + offset as Point;
    }
    Permutation::from_images_unchecked(images)
}

/// Block permutation: block b goes to block top(b), pointwise.
fn block_perm(top: &Permutation, block: usize, total: usize) -> Permutation {
    let mut images: Vec<Point> = vec![0; total];
    for b in 0..top.degree() {
        let tb = top.image(b as Point) as usize;
        for j in 0..block {
            images[b * block + j] = (tb * block + j) as Point;
        }
    }
    Permutation::from_images_unchecked(images)
}

pub fn direct_product(a: &Group, b: &Group, caps: &Caps) -> Result<DirectProduct> {
    let order = a.order() as u128 * b.order() as u128;
    if order > caps.max_order as u128 {
        return Err(Error::GroupTooLarge {
            order,
            cap: caps.max_order,
        });
    }
    let total = a.degree() + b.degree();
    let left: Vec<Permutation> = a.generators().iter().map(|g| embed(g, total, 0)).collect();
    let right: Vec<Permutation> = b
        .generators()
        .iter()
        .map(|g| embed(g, total, a.degree()))
        .collect();
    let mut gens = left.clone();
    gens.extend(right.clone());
    let group = Group::from_generators(gens, caps)?;
    assert_eq!(group.order() as u128, order, "product order multiplies");
    let factors = vec![
        Group::from_generators(left, caps)?,
        Group::from_generators(right, caps)?,
    ];
    Ok(DirectProduct { group, factors })
}

/// L^k with `top` (a group of degree k) permuting the k blocks.
pub fn power_wreath(l: &Group, k: usize, top: &Group, caps: &Caps) -> Result<WreathProduct> {
    if k == 0 {
        return Err(Error::InvalidArgument("wreath power must be positive".into()));
    }
    if top.degree() != k {
        return Err(Error::InvalidArgument(format!(
            "top group has degree {}, expected {}",
            top.degree(),
            k
        )));
    }
    let mut order: u128 = top.order() as u128;
    for _ in 0..k {
        order = order.saturating_mul(l.order() as u128);
        if order > caps.max_order as u128 {
            return Err(Error::GroupTooLarge {
                order,
                cap: caps.max_order,
            });
        }
    }
    let block = l.degree();
    let total = k * block;
    let mut base_gens = Vec::new();
    let mut base_factors = Vec::new();
    for b in 0..k {
        let copy: Vec<Permutation> = l
            .generators()
            .iter()
            .map(|g| embed(g, total, b * block))
            .collect();
        base_gens.extend(copy.clone());
        base_factors.push(Group::from_generators(copy, caps)?);
    }
    let top_embedded: Vec<Permutation> = top
        .generators()
        .iter()
        .map(|t| block_perm(t, block, total))
        .collect();
    let base = Group::from_generators(base_gens.clone(), caps)?;
    let mut gens = base_gens;
    gens.extend(top_embedded.clone());
    let group = Group::from_generators(gens, caps)?;
    assert_eq!(
        group.order() as u128,
        order,
        "wreath order is |L|^k · |top|"
    );
    Ok(WreathProduct {
        group,
        base,
        base_factors,
        top_embedded,
        copies: k,
        block_degree: block,
    })
}

impl WreathProduct {
    /// The block permutation induced by an element of the wreath product.
    pub fn top_part(&self, g: &Permutation) -> Result<Permutation> {
        if g.degree() != self.group.degree() {
            return Err(Error::DegreeMismatch {
                left: g.degree(),
                right: self.group.degree(),
            });
        }
        let block = self.block_degree;
        let mut images = Vec::with_capacity(self.copies);
        for b in 0..self.copies {
            let target = g.image((b * block) as Point) as usize / block;
            images.push(target as Point);
        }
        let sigma = Permutation::from_images(images).map_err(|_| {
            Error::InvalidArgument("element does not permute the blocks".into())
        })?;
        // verify the element is block-respecting, not just on block heads
        for b in 0..self.copies {
            let tb = sigma.image(b as Point) as usize;
            for j in 0..block {
                let img = g.image((b * block + j) as Point) as usize;
                if img / block != tb {
                    return Err(Error::InvalidArgument(
                        "element does not permute the blocks".into(),
                    ));
                }
            }
        }
        Ok(sigma)
    }

    /// The base component of `g` restricted to one block, as a
    /// permutation of the block (degree = block_degree). `g` must map
    /// block `b` to block σ(b).
    pub fn component(&self, g: &Permutation, b: usize, sigma: &Permutation) -> Permutation {
        let block = self.block_degree;
        let tb = sigma.image(b as Point) as usize;
        let images: Vec<Point> = (0..block)
            .map(|j| g.image((b * block + j) as Point) - (tb * block) as Point)
            .collect();
        Permutation::from_images_unchecked(images)
    }
}
