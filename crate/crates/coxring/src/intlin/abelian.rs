use num_integer::Integer;
use num_traits::{One, Zero};

use super::{smith_normal_form, IMat, Int};

/// A finitely generated abelian group `Z^free_rank ⊕ ⊕_k Z/(f_k)` together
/// with the images of the original generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianPresentation {
    pub free_rank: usize,
    /// Non-trivial invariant factors, each `> 1` and dividing the next.
    pub invariant_factors: Vec<Int>,
    /// One row per original generator; the first `free_rank` columns are the
    /// free coordinates, the remaining ones are reduced mod the matching
    /// invariant factor.
    pub generator_images: Vec<Vec<Int>>,
}

impl AbelianPresentation {
    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

/// The quotient `Z^dim / rowspace(relations)`.
pub fn cokernel(relations: &[Vec<Int>], dim: usize) -> AbelianPresentation {
    for row in relations {
        assert_eq!(row.len(), dim, "relation row of wrong length");
    }
    let m = IMat::from_rows(relations);
    let m = if relations.is_empty() {
        IMat::zeros(0, dim)
    } else {
        m
    };
    let snf = smith_normal_form(&m);

    // With L*M*R = D, the change of basis u = R^T x identifies the quotient
    // with ⊕ Z/d_i ⊕ Z^{dim - min(r,c)}.
    let mut factor_at = vec![Int::zero(); dim];
    for (i, d) in snf.diag.iter().enumerate() {
        factor_at[i] = d.clone();
    }
    let free_idx: Vec<usize> = (0..dim).filter(|&i| factor_at[i].is_zero()).collect();
    let torsion_idx: Vec<usize> = (0..dim).filter(|&i| factor_at[i] > Int::one()).collect();

    let mut generator_images = Vec::with_capacity(dim);
    for j in 0..dim {
        // u = R^T e_j is row j of R
        let u = snf.right.row(j);
        let mut img: Vec<Int> = free_idx.iter().map(|&i| u[i].clone()).collect();
        for &i in &torsion_idx {
            img.push(u[i].mod_floor(&factor_at[i]));
        }
        generator_images.push(img);
    }

    AbelianPresentation {
        free_rank: free_idx.len(),
        invariant_factors: torsion_idx.iter().map(|&i| factor_at[i].clone()).collect(),
        generator_images,
    }
}
