//! Equivariant and ordinary divisor class groups of spherical varieties,
//! presented by generators and relations and reduced by Smith normal form.
//!
//! Generators are ordered as `[X_1] ... [X_n], [D_1] ..., chi_1 ... chi_c`
//! (boundary divisors, colors, central characters). For each basis element
//! `lambda_k` of the weight group there is one relation
//! `sum_i v_i(lambda_k) [X_i] + sum_D rho(v_D)(lambda_k) [D] - lambda_k|_C = 0`,
//! the central block entering with a minus sign so the relation row reads as
//! a single left-hand side.

use crate::datum::{ClassDatum, SphericalDatum};
use crate::intlin::{cokernel, AbelianPresentation, IMat, Int};

/// A computed class group with the matrix that was reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroupResult {
    pub presentation: AbelianPresentation,
    pub relation_matrix: IMat,
}

impl ClassGroupResult {
    /// Number of generators of the presentation.
    pub fn generator_count(&self) -> usize {
        self.presentation.generator_images.len()
    }
}

fn relation_rows(cd: &ClassDatum, with_central: bool) -> Vec<Vec<Int>> {
    let d = cd.lattice_rank;
    let n = cd.boundary_valuations.len();
    let nd = cd.color_valuations.len();
    let c = if with_central { cd.central_rank() } else { 0 };
    let mut rows = Vec::with_capacity(d);
    for k in 0..d {
        let mut row = Vec::with_capacity(n + nd + c);
        for v in &cd.boundary_valuations {
            row.push(v[k].clone());
        }
        for rho in &cd.color_valuations {
            row.push(rho[k].clone());
        }
        if with_central {
            for j in 0..c {
                row.push(-cd.central_restriction[k][j].clone());
            }
        }
        rows.push(row);
    }
    rows
}

/// The equivariant divisor class group: cokernel of the relation matrix in
/// `Z^{n + |D| + c}`.
pub fn class_group_equivariant(cd: &ClassDatum) -> ClassGroupResult {
    let rows = relation_rows(cd, true);
    let dim = cd.boundary_valuations.len() + cd.color_valuations.len() + cd.central_rank();
    let relation_matrix = if rows.is_empty() {
        IMat::zeros(0, dim)
    } else {
        IMat::from_rows(&rows)
    };
    ClassGroupResult {
        presentation: cokernel(&rows, dim),
        relation_matrix,
    }
}

/// The ordinary divisor class group: the same presentation with the central
/// block dropped.
pub fn class_group_plain(cd: &ClassDatum) -> ClassGroupResult {
    let rows = relation_rows(cd, false);
    let dim = cd.boundary_valuations.len() + cd.color_valuations.len();
    let relation_matrix = if rows.is_empty() {
        IMat::zeros(0, dim)
    } else {
        IMat::from_rows(&rows)
    };
    ClassGroupResult {
        presentation: cokernel(&rows, dim),
        relation_matrix,
    }
}

/// The wonderful-case lattice data of a spherical datum: the weight group is
/// the span of the spherical roots, boundary valuations are `v_i(gamma_j) =
/// -delta_ij`, color valuations are the pairing rows, and there is no
/// central torus.
pub fn export_class_datum(d: &SphericalDatum) -> ClassDatum {
    let r = d.rank;
    let boundary_valuations: Vec<Vec<Int>> = (0..r)
        .map(|i| {
            let mut v = vec![Int::from(0); r];
            v[i] = Int::from(-1);
            v
        })
        .collect();
    let color_valuations: Vec<Vec<Int>> =
        d.colors.iter().map(|c| c.pairing.clone()).collect();
    ClassDatum {
        lattice_rank: r,
        boundary_valuations,
        color_valuations,
        central_restriction: vec![vec![]; r],
    }
}

/// Lattice data of the toric surface `P1 x P1` under its own torus: four
/// boundary valuations `±e1, ±e2`, no colors, and the identity central
/// restriction on the two-dimensional character lattice.
pub fn toric_p1xp1_class_datum() -> ClassDatum {
    ClassDatum {
        lattice_rank: 2,
        boundary_valuations: vec![
            vec![Int::from(1), Int::from(0)],
            vec![Int::from(-1), Int::from(0)],
            vec![Int::from(0), Int::from(1)],
            vec![Int::from(0), Int::from(-1)],
        ],
        color_valuations: vec![],
        central_restriction: vec![
            vec![Int::from(1), Int::from(0)],
            vec![Int::from(0), Int::from(1)],
        ],
    }
}

/// Lattice data of the standard embedding of the group `SO_{2n}` (type
/// `D_n`, `n >= 3`).
///
/// The weight group is taken to be the span of the spherical roots (the
/// simple roots of `D_n`), with the simple-root basis. On that basis the
/// color valuations are the simple coroots, i.e. the columns of the Cartan
/// matrix, and the boundary valuations are the divisorial valuations of the
/// standard embedding: the negatives of the fundamental coweights, made
/// primitive on the dual of the full character lattice of `SO_{2n}`, which
/// doubles the two spin coweights. The resulting class group is free of
/// rank `n` plus one invariant factor `2`.
pub fn so_even_standard_class_datum(n: usize) -> ClassDatum {
    assert!(n >= 3, "type D_n needs rank at least 3");
    let rs = crate::rootsys::build_root_system(&format!("D{n}"))
        .expect("D_n is admissible for n >= 3");
    let boundary_valuations: Vec<Vec<Int>> = (0..n)
        .map(|i| {
            // spin nodes are the last two in the Bourbaki ordering
            let m = if i >= n - 2 { 2 } else { 1 };
            let mut v = vec![Int::from(0); n];
            v[i] = Int::from(-m);
            v
        })
        .collect();
    let color_valuations: Vec<Vec<Int>> = (0..n).map(|j| rs.cartan().col(j)).collect();
    ClassDatum {
        lattice_rank: n,
        boundary_valuations,
        color_valuations,
        central_restriction: vec![vec![]; n],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::group_compactification;
    use crate::intlin::int;

    #[test]
    fn toric_p1xp1_equivariant_group_is_free_of_rank_four() {
        let cd = toric_p1xp1_class_datum();
        let got = class_group_equivariant(&cd);
        assert_eq!(got.presentation.free_rank, 4);
        assert!(got.presentation.is_free());
    }

    #[test]
    fn toric_p1xp1_plain_group_is_free_of_rank_two() {
        // hand check: cokernel of [[1,-1,0,0],[0,0,1,-1]] in Z^4
        let cd = toric_p1xp1_class_datum();
        let got = class_group_plain(&cd);
        assert_eq!(got.presentation.free_rank, 2);
        assert!(got.presentation.is_free());
    }

    #[test]
    fn wonderful_export_gives_the_picard_lattice() {
        for spec in ["A1", "B2", "A1xA1xA2", "G2", "C3"] {
            let d = group_compactification(spec).unwrap();
            let cd = export_class_datum(&d);
            let plain = class_group_plain(&cd);
            assert_eq!(plain.presentation.free_rank, d.color_count(), "{spec}");
            assert!(plain.presentation.is_free(), "{spec}");
            // no central torus: both computations agree
            let equi = class_group_equivariant(&cd);
            assert_eq!(equi.presentation, plain.presentation, "{spec}");
        }
    }

    #[test]
    fn export_examples() {
        let a1 = export_class_datum(&group_compactification("A1").unwrap());
        assert_eq!(a1.boundary_valuations, vec![vec![int(-1)]]);
        assert_eq!(a1.color_valuations, vec![vec![int(2)]]);

        let b2 = export_class_datum(&group_compactification("B2").unwrap());
        assert_eq!(
            b2.boundary_valuations,
            vec![vec![int(-1), int(0)], vec![int(0), int(-1)]]
        );
        assert_eq!(
            b2.color_valuations,
            vec![vec![int(2), int(-1)], vec![int(-2), int(2)]]
        );
    }

    #[test]
    fn so8_class_group_has_torsion_two() {
        let cd = so_even_standard_class_datum(4);
        let got = class_group_equivariant(&cd);
        assert_eq!(got.presentation.free_rank, 4);
        assert_eq!(got.presentation.invariant_factors, vec![int(2)]);
        assert_eq!(got.relation_matrix.rows(), 4);
        assert_eq!(got.relation_matrix.cols(), 8);
    }

    #[test]
    fn so_standard_torsion_is_order_two_for_small_ranks() {
        for n in [3, 5] {
            let got = class_group_equivariant(&so_even_standard_class_datum(n));
            assert_eq!(got.presentation.free_rank, n, "D{n}");
            assert_eq!(got.presentation.invariant_factors, vec![int(2)], "D{n}");
        }
    }

    #[test]
    fn no_relations_is_free_on_the_generators() {
        let cd = ClassDatum {
            lattice_rank: 0,
            boundary_valuations: vec![vec![]],
            color_valuations: vec![],
            central_restriction: vec![],
        };
        let got = class_group_plain(&cd);
        assert_eq!(got.presentation.free_rank, 1);
    }

    #[test]
    fn rank_identity_holds() {
        for cd in [
            toric_p1xp1_class_datum(),
            so_even_standard_class_datum(4),
            export_class_datum(&group_compactification("B3").unwrap()),
        ] {
            let got = class_group_equivariant(&cd);
            let gens = got.generator_count();
            assert_eq!(
                got.presentation.free_rank,
                gens - got.relation_matrix.rank()
            );
        }
    }

    #[test]
    fn permuting_generator_blocks_preserves_factors() {
        let cd = so_even_standard_class_datum(4);
        let base = class_group_equivariant(&cd);
        let mut swapped = cd.clone();
        swapped.boundary_valuations.reverse();
        swapped.color_valuations.reverse();
        let got = class_group_equivariant(&swapped);
        assert_eq!(
            got.presentation.invariant_factors,
            base.presentation.invariant_factors
        );
        assert_eq!(got.presentation.free_rank, base.presentation.free_rank);
    }

    #[test]
    fn unimodular_basis_change_preserves_the_group() {
        // lambda' = U lambda for a unimodular U transforms all valuation
        // vectors and the central block by U on the left
        let cd = toric_p1xp1_class_datum();
        let u = IMat::from_i64_rows(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(u.det(), int(1));
        let transform = |v: &Vec<Int>| -> Vec<Int> {
            (0..2)
                .map(|k| (0..2).map(|j| &u[(k, j)] * &v[j]).sum())
                .collect()
        };
        let changed = ClassDatum {
            lattice_rank: 2,
            boundary_valuations: cd.boundary_valuations.iter().map(transform).collect(),
            color_valuations: vec![],
            central_restriction: {
                // rows are basis weights: new row k = sum_j u[k][j] * old row j
                (0..2)
                    .map(|k| {
                        (0..2)
                            .map(|c| {
                                (0..2)
                                    .map(|j| &u[(k, j)] * &cd.central_restriction[j][c])
                                    .sum()
                            })
                            .collect()
                    })
                    .collect()
            },
        };
        let a = class_group_equivariant(&cd);
        let b = class_group_equivariant(&changed);
        assert_eq!(a.presentation.free_rank, b.presentation.free_rank);
        assert_eq!(
            a.presentation.invariant_factors,
            b.presentation.invariant_factors
        );
    }
}
