//! The spherical-datum data model: spherical roots, colors with their
//! weights, and the integer pairing coupling them.
//!
//! A [`SphericalDatum`] is the combinatorial invariant of a wonderful
//! variety. The stored pieces satisfy, for every spherical root `gamma_i`,
//! the weight identity `sum_D <D, gamma_i> omega_D = gamma_i`, and the unit
//! functional `e_i` lies in the cone spanned by the color pairing rows (the
//! functional-coordinate form of the valuation-cone inclusion). [`validate`]
//! checks all of this and reports each check separately.
//!
//! Sign conventions used throughout the crate: `rho(v_D)(gamma_i) =
//! <D, gamma_i>` and `v_i(gamma_j) = -delta_ij`, the unique choice under
//! which the boundary-class relation, the group-compactification coroot
//! picture, and the identity pullback matrix hold simultaneously.

mod json;

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use num_traits::Zero;
use thiserror::Error;

use crate::intlin::{ConeZ, IMat, Int, Rat};
use crate::rootsys::{build_root_system, RootSystem, RootSystemError, Weight};

pub use json::DatumError;

/// How section-module dimensions are reported.
///
/// Group compactifications store `Squared`: their section modules are
/// endomorphism modules, so each simple summand contributes the square of
/// its Weyl dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimMode {
    Simple,
    Squared,
}

impl DimMode {
    pub fn as_str(self) -> &'static str {
        match self {
            DimMode::Simple => "simple",
            DimMode::Squared => "squared",
        }
    }
}

/// A color: a B-stable, non-G-stable prime divisor, recorded through its
/// section weight and its pairing against the spherical roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Color {
    pub name: String,
    /// Weight of the canonical section, in fundamental-weight coordinates.
    pub omega: Weight,
    /// `(<D, gamma_1>, ..., <D, gamma_r>)`.
    pub pairing: Vec<Int>,
}

/// Lattice data for class-group computations on a general spherical variety:
/// boundary and color valuations on a basis of the weight group, plus the
/// restriction of that basis to the central torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDatum {
    pub lattice_rank: usize,
    /// One vector per boundary divisor, each of length `lattice_rank`.
    pub boundary_valuations: Vec<Vec<Int>>,
    /// One vector per color, each of length `lattice_rank`.
    pub color_valuations: Vec<Vec<Int>>,
    /// `lattice_rank` rows; row `k` is the central restriction of the k-th
    /// basis weight. The number of columns is the central torus rank.
    pub central_restriction: Vec<Vec<Int>>,
}

impl ClassDatum {
    pub fn central_rank(&self) -> usize {
        self.central_restriction.first().map_or(0, Vec::len)
    }
}

/// The combinatorial invariant of a wonderful variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalDatum {
    pub name: String,
    pub ambient: RootSystem,
    /// Number of spherical roots, equivalently of boundary divisors.
    pub rank: usize,
    pub spherical_roots: Vec<Weight>,
    pub colors: Vec<Color>,
    pub module_dim_mode: DimMode,
    pub boundary_names: Vec<String>,
    pub class_datum: Option<ClassDatum>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructError {
    #[error("expected {expected} {what}, got {got}")]
    Count {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("{which}: expected a vector of length {expected}, got {got}")]
    VectorLength {
        which: String,
        expected: usize,
        got: usize,
    },
}

impl SphericalDatum {
    /// Structural constructor: checks all lengths, not the semantic
    /// invariants (those live in [`SphericalDatum::validate`]).
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: String,
        ambient: RootSystem,
        rank: usize,
        spherical_roots: Vec<Weight>,
        colors: Vec<Color>,
        module_dim_mode: DimMode,
        boundary_names: Vec<String>,
        class_datum: Option<ClassDatum>,
    ) -> Result<Self, StructError> {
        if spherical_roots.len() != rank {
            return Err(StructError::Count {
                what: "spherical roots",
                expected: rank,
                got: spherical_roots.len(),
            });
        }
        if boundary_names.len() != rank {
            return Err(StructError::Count {
                what: "boundary names",
                expected: rank,
                got: boundary_names.len(),
            });
        }
        for (i, g) in spherical_roots.iter().enumerate() {
            if g.len() != ambient.rank() {
                return Err(StructError::VectorLength {
                    which: format!("spherical root {}", i + 1),
                    expected: ambient.rank(),
                    got: g.len(),
                });
            }
        }
        for c in &colors {
            if c.omega.len() != ambient.rank() {
                return Err(StructError::VectorLength {
                    which: format!("omega of color {:?}", c.name),
                    expected: ambient.rank(),
                    got: c.omega.len(),
                });
            }
            if c.pairing.len() != rank {
                return Err(StructError::VectorLength {
                    which: format!("pairing of color {:?}", c.name),
                    expected: rank,
                    got: c.pairing.len(),
                });
            }
        }
        if let Some(cd) = &class_datum {
            check_class_datum(cd)?;
        }
        Ok(SphericalDatum {
            name,
            ambient,
            rank,
            spherical_roots,
            colors,
            module_dim_mode,
            boundary_names,
            class_datum,
        })
    }

    pub fn color_count(&self) -> usize {
        self.colors.len()
    }

    /// `<D, gamma_i>` for color index `d`.
    pub fn pairing(&self, d: usize, i: usize) -> &Int {
        &self.colors[d].pairing[i]
    }

    /// Semantic validation; failures are report entries, never errors.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();

        // weight identity: sum_D <D, gamma_i> omega_D = gamma_i
        for i in 0..self.rank {
            let mut acc = Weight::zero(self.ambient.rank());
            for c in &self.colors {
                acc = acc.add(&c.omega.scale(&c.pairing[i]));
            }
            let ok = acc == self.spherical_roots[i];
            checks.push(Check {
                name: format!("weight identity for {}", self.boundary_names[i]),
                passed: ok,
                detail: if ok {
                    String::new()
                } else {
                    format!("sum is {acc}, expected {}", self.spherical_roots[i])
                },
            });
        }

        // spherical roots linearly independent over the rationals
        let m = IMat::from_rows(
            &self
                .spherical_roots
                .iter()
                .map(|g| g.0.clone())
                .collect::<Vec<_>>(),
        );
        let independent = self.rank == 0 || m.rank() == self.rank;
        checks.push(Check {
            name: "spherical roots linearly independent".into(),
            passed: independent,
            detail: if independent {
                String::new()
            } else {
                format!("rank {} < {}", m.rank(), self.rank)
            },
        });

        // every color weight dominant
        for c in &self.colors {
            let ok = self.ambient.is_dominant(&c.omega).unwrap_or(false);
            checks.push(Check {
                name: format!("omega of {} dominant", c.name),
                passed: ok,
                detail: if ok { String::new() } else { c.omega.to_string() },
            });
        }

        // valuation-cone inclusion: e_i in Cone(pairing rows)
        let rows: Vec<Vec<Int>> = self
            .colors
            .iter()
            .filter(|c| !c.pairing.iter().all(Zero::is_zero))
            .map(|c| c.pairing.clone())
            .collect();
        for i in 0..self.rank {
            let mut e = vec![Int::zero(); self.rank];
            e[i] = Int::from(1);
            let ok = match ConeZ::new(self.rank, rows.clone()) {
                Ok(cone) => cone.contains(&e).unwrap_or(false),
                Err(_) => false,
            };
            checks.push(Check {
                name: format!(
                    "negative boundary valuation of {} inside the color cone",
                    self.boundary_names[i]
                ),
                passed: ok,
                detail: String::new(),
            });
        }

        ValidationReport { checks }
    }

    /// Load a datum from its JSON file format.
    pub fn load(path: impl AsRef<Path>) -> Result<SphericalDatum, DatumError> {
        json::load(path.as_ref())
    }

    /// Write the datum in canonical JSON form; `load(save(d)) == d`.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), DatumError> {
        json::save(self, path.as_ref())
    }

    pub fn to_json_string(&self) -> String {
        json::to_canonical_string(self)
    }

    pub fn from_json_str(text: &str) -> Result<SphericalDatum, DatumError> {
        json::from_str(text)
    }

    /// Indices of ambient Dynkin nodes that form their own `A1` factor.
    pub fn isolated_nodes(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let c = self.ambient.cartan();
        for i in 0..self.ambient.rank() {
            let isolated =
                (0..self.ambient.rank()).all(|j| j == i || c[(i, j)].is_zero());
            if isolated {
                out.insert(i);
            }
        }
        out
    }
}

fn check_class_datum(cd: &ClassDatum) -> Result<(), StructError> {
    let d = cd.lattice_rank;
    for (k, v) in cd.boundary_valuations.iter().enumerate() {
        if v.len() != d {
            return Err(StructError::VectorLength {
                which: format!("boundary valuation {}", k + 1),
                expected: d,
                got: v.len(),
            });
        }
    }
    for (k, v) in cd.color_valuations.iter().enumerate() {
        if v.len() != d {
            return Err(StructError::VectorLength {
                which: format!("color valuation {}", k + 1),
                expected: d,
                got: v.len(),
            });
        }
    }
    if cd.central_restriction.len() != d {
        return Err(StructError::Count {
            what: "central restriction rows",
            expected: d,
            got: cd.central_restriction.len(),
        });
    }
    let c = cd.central_rank();
    for (k, row) in cd.central_restriction.iter().enumerate() {
        if row.len() != c {
            return Err(StructError::VectorLength {
                which: format!("central restriction row {}", k + 1),
                expected: c,
                got: row.len(),
            });
        }
    }
    Ok(())
}

/// One validation check with its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// The outcome of [`SphericalDatum::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {}{}",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                if c.detail.is_empty() {
                    String::new()
                } else {
                    format!(": {}", c.detail)
                }
            )?;
        }
        Ok(())
    }
}

/// The wonderful compactification of the adjoint group of the given type.
///
/// Spherical roots are the simple roots; there is one color per Dynkin node
/// with `omega_{D_j}` the j-th fundamental weight, and the pairing matrix is
/// the Cartan matrix of the dual root system. Section modules are
/// endomorphism modules, so `module_dim_mode` is `squared`.
pub fn group_compactification(spec: &str) -> Result<SphericalDatum, RootSystemError> {
    let ambient = build_root_system(spec)?;
    let r = ambient.rank();
    let spherical_roots: Vec<Weight> = (0..r)
        .map(|i| ambient.simple_root_weight_coords(i).expect("index in range"))
        .collect();
    let colors: Vec<Color> = (0..r)
        .map(|j| {
            let mut omega = Weight::zero(r);
            omega.0[j] = Int::from(1);
            Color {
                name: format!("D{}", j + 1),
                omega,
                pairing: ambient.cartan().col(j),
            }
        })
        .collect();
    let boundary_names = (1..=r).map(|i| format!("X{i}")).collect();
    let name = format!("group({})", ambient.spec());
    Ok(SphericalDatum::new(
        name,
        ambient,
        r,
        spherical_roots,
        colors,
        DimMode::Squared,
        boundary_names,
        None,
    )
    .expect("builder output is structurally well-formed"))
}

/// Convenience: rational matrix of all color pairing rows.
pub(crate) fn pairing_rows_rational(d: &SphericalDatum) -> Vec<Vec<Rat>> {
    d.colors
        .iter()
        .map(|c| c.pairing.iter().map(|x| Rat::from(x.clone())).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::{int, int_vec};

    #[test]
    fn a1_group_datum() {
        let d = group_compactification("A1").unwrap();
        assert_eq!(d.rank, 1);
        assert_eq!(d.color_count(), 1);
        assert_eq!(d.colors[0].pairing, int_vec(&[2]));
        assert_eq!(d.spherical_roots[0], Weight::from_i64(&[2]));
        assert_eq!(d.module_dim_mode, DimMode::Squared);
        assert!(d.validate().passed());
    }

    #[test]
    fn b2_group_datum_matches_the_dual_cartan_bookkeeping() {
        let d = group_compactification("B2").unwrap();
        assert_eq!(d.colors[0].omega, Weight::from_i64(&[1, 0]));
        assert_eq!(d.colors[0].pairing, int_vec(&[2, -1]));
        assert_eq!(d.colors[1].omega, Weight::from_i64(&[0, 1]));
        assert_eq!(d.colors[1].pairing, int_vec(&[-2, 2]));
        assert!(d.validate().passed());
    }

    #[test]
    fn product_datum_is_block_diagonal() {
        let d = group_compactification("A1xA1").unwrap();
        assert_eq!(d.color_count(), 2);
        assert_eq!(d.colors[0].pairing, int_vec(&[2, 0]));
        assert_eq!(d.colors[1].pairing, int_vec(&[0, 2]));
        assert!(d.validate().passed());
    }

    #[test]
    fn validate_passes_on_builders_up_to_rank_six() {
        let specs = [
            "A1", "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "B5", "B6", "C2", "C3",
            "C4", "C5", "C6", "D3", "D4", "D5", "D6", "E6", "F4", "G2", "A1xA1xA2", "B2xG2",
            "A2xC3",
        ];
        for spec in specs {
            let d = group_compactification(spec).unwrap();
            let report = d.validate();
            assert!(report.passed(), "{spec}: {report}");
        }
    }

    #[test]
    fn scaled_pairing_row_breaks_the_weight_identity() {
        let mut d = group_compactification("A2").unwrap();
        d.colors[0].pairing = d.colors[0].pairing.iter().map(|x| x * int(2)).collect();
        let report = d.validate();
        assert!(!report.passed());
        assert!(report
            .failures()
            .iter()
            .any(|c| c.name.contains("weight identity")));
    }

    #[test]
    fn duplicated_spherical_root_breaks_independence() {
        let mut d = group_compactification("A2").unwrap();
        d.spherical_roots[1] = d.spherical_roots[0].clone();
        // keep the weight identity intact by duplicating the pairing too
        for c in d.colors.iter_mut() {
            c.pairing[1] = c.pairing[0].clone();
        }
        let report = d.validate();
        assert!(!report.passed());
        assert!(report
            .failures()
            .iter()
            .any(|c| c.name.contains("independent")));
    }

    #[test]
    fn isolated_nodes_are_the_a1_factors() {
        let d = group_compactification("A1xA1xA2").unwrap();
        assert_eq!(d.isolated_nodes(), BTreeSet::from([0, 1]));
        let g = group_compactification("G2").unwrap();
        assert!(g.isolated_nodes().is_empty());
    }

    #[test]
    fn weight_identity_survives_color_permutation() {
        let mut d = group_compactification("B3").unwrap();
        d.colors.reverse();
        assert!(d.validate().passed());
    }

    #[test]
    fn structural_errors() {
        let ambient = build_root_system("A2").unwrap();
        let err = SphericalDatum::new(
            "broken".into(),
            ambient,
            2,
            vec![Weight::from_i64(&[2, -1])],
            vec![],
            DimMode::Simple,
            vec!["X1".into(), "X2".into()],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, StructError::Count { .. }));
    }
}
