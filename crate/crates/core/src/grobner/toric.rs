use super::{buchberger_with, BuchbergerOptions, GrobnerError, IdealBasis};
use crate::poly::{same_ambient, Polynomial, TermOrder};

/// Kernel of the monomial map sending the i-th variable of `order`'s
/// variable set to `images[i]` (polynomials in a separate parameter ring,
/// e.g. `k[s, t]`).
///
/// Computed by elimination: a Gröbner basis of `<x_i - image_i>` in the
/// joint ring under a block order (parameters first, graded revlex inside the
/// block, then `order` on the target variables) intersected with the target
/// ring. The result is a Gröbner basis for `order`.
pub fn toric_kernel(images: &[Polynomial], order: &TermOrder) -> Result<IdealBasis, GrobnerError> {
    toric_kernel_with(images, order, BuchbergerOptions::default())
}

pub fn toric_kernel_with(
    images: &[Polynomial],
    order: &TermOrder,
    opts: BuchbergerOptions,
) -> Result<IdealBasis, GrobnerError> {
    let target = order.ambient().clone();
    if images.len() != target.len() {
        return Err(GrobnerError::InvalidInput(format!(
            "{} images for {} variables",
            images.len(),
            target.len()
        )));
    }
    let params = match images.first() {
        Some(p) => p.ambient().clone(),
        None => return Ok(IdealBasis::new_groebner(Vec::new(), order.clone())),
    };
    for (i, img) in images.iter().enumerate() {
        if !same_ambient(img.ambient(), &params) {
            return Err(crate::poly::PolyError::AmbientMismatch.into());
        }
        if img.num_terms() != 1 {
            return Err(GrobnerError::InvalidInput(format!(
                "image of {} is not a monomial: {img}",
                target.name(i)
            )));
        }
    }

    let k = params.len();
    let n = target.len();
    let joint = params.concat(&target)?;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut block = vec![0i64; k + n];
    block[..k].iter_mut().for_each(|w| *w = 1);
    rows.push(block);
    // revlex inside the parameter block
    for p in (1..k).rev() {
        let mut r = vec![0i64; k + n];
        r[p] = -1;
        rows.push(r);
    }
    for r in order.rows() {
        let mut row = vec![0i64; k];
        row.extend_from_slice(r);
        rows.push(row);
    }
    let precedence: Vec<usize> = (0..k)
        .chain(order.precedence().iter().map(|&v| v + k))
        .collect();
    let elim = TermOrder::new(joint.clone(), rows, order.tie_break(), precedence)?;

    let param_map: Vec<usize> = (0..k).collect();
    let target_map: Vec<usize> = (k..k + n).collect();
    let mut gens = Vec::with_capacity(n);
    for (i, img) in images.iter().enumerate() {
        let x = Polynomial::var(joint.clone(), k + i);
        gens.push(&x - &img.embed(joint.clone(), &param_map)?);
    }
    let gb = buchberger_with(&IdealBasis::new(gens, elim)?, opts)?;

    let mut kernel: Vec<Polynomial> = gb
        .gens()
        .iter()
        .filter_map(|g| g.restrict(target.clone(), &target_map))
        .collect();
    kernel.sort_by(|a, b| {
        order.cmp(
            a.leading_monomial(order).expect("nonzero"),
            b.leading_monomial(order).expect("nonzero"),
        )
    });
    Ok(IdealBasis::new_groebner(kernel, order.clone()))
}
