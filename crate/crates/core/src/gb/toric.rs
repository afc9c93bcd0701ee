//! Kernels of monomial maps by elimination.

use super::buchberger::{binomial, buchberger, sort_basis};
use super::monomial::{Binomial, Monomial};
use super::order::TermOrder;
use crate::error::Result;

/// A monomial map on one ring: variable `k` goes to `image`. Unmapped
/// variables are fixed.
#[derive(Debug, Clone)]
pub struct MonomialMap {
    pub images: Vec<(usize, Monomial)>,
}

impl MonomialMap {
    /// Pushes every mapped variable to its image.
    pub fn multidegree(&self, m: &Monomial) -> Monomial {
        let mut out = m.exponents().to_vec();
        for (k, _) in &self.images {
            out[*k] = 0;
        }
        let mut out = Monomial::from_exponents(out);
        for (k, image) in &self.images {
            for _ in 0..m.exponent(*k) {
                out = out.mul(image);
            }
        }
        out
    }

    pub fn same_multidegree(&self, b: &Binomial) -> bool {
        self.multidegree(&b.lead) == self.multidegree(&b.trail)
    }
}

/// Reduced Gröbner basis under `order` of the kernel of `map`, where the
/// kernel lives in the variables outside `eliminate`. Computed from the
/// graph ideal `(v - image(v))` under an order that puts `eliminate` first.
pub fn toric_kernel(map: &MonomialMap, eliminate: &[usize], order: &TermOrder, degree_cap: u32) -> Result<Vec<Binomial>> {
    let elim = order.elimination(eliminate);
    let nvars = order.nvars();
    let gens: Vec<Binomial> = map
        .images
        .iter()
        .filter_map(|(k, image)| {
            let mut v = vec![0u8; nvars];
            v[*k] = 1;
            binomial(Monomial::from_exponents(v), image.clone(), &elim)
        })
        .collect();
    let gb = buchberger(&gens, &elim, degree_cap)?;
    let free = |m: &Monomial| eliminate.iter().all(|&k| m.exponent(k) == 0);
    let mut kernel: Vec<Binomial> = gb
        .elements
        .into_iter()
        .filter(|b| free(&b.lead) && free(&b.trail))
        .map(|b| binomial(b.lead, b.trail, order).expect("basis elements are nonzero"))
        .collect();
    sort_basis(&mut kernel, order);
    Ok(kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gb::monomial::{Ring, Variable};

    #[test]
    fn twisted_cubic_kernel() {
        // a, b, c, d, s, t
        let r = Ring::new(
            ["a", "b", "c", "d", "s", "t"].iter().enumerate().map(|(k, n)| (Variable::Z(k), n.to_string())).collect(),
        );
        let map = MonomialMap {
            images: vec![
                (0, r.monomial(&[4, 4, 4])),
                (1, r.monomial(&[4, 4, 5])),
                (2, r.monomial(&[4, 5, 5])),
                (3, r.monomial(&[5, 5, 5])),
            ],
        };
        let o = TermOrder::rank_revlex(6, vec![0, 1, 2, 3]);
        let k = toric_kernel(&map, &[4, 5], &o, 12).unwrap();
        assert_eq!(k.len(), 3);
        assert!(k.iter().all(|b| map.same_multidegree(b)));
    }

    #[test]
    fn independent_images_have_zero_kernel() {
        let r = Ring::new(
            ["a", "b", "s", "t"].iter().enumerate().map(|(k, n)| (Variable::Z(k), n.to_string())).collect(),
        );
        let map = MonomialMap { images: vec![(0, r.monomial(&[2, 3])), (1, r.monomial(&[2, 2]))] };
        let k = toric_kernel(&map, &[2, 3], &TermOrder::rank_lex(4, vec![1, 0]), 12).unwrap();
        assert!(k.is_empty());
    }
}
