//! Exact root-system and weight-lattice infrastructure for the irreducible
//! types A–G and their products.
//!
//! Weights are always stored in fundamental-weight coordinates, concatenated
//! over the factors. The Cartan convention is `cartan[i][j] = <alpha_i,
//! alpha_j^vee>`: rows are indexed by simple roots, columns by coroots, so
//! row `i` is the simple root `alpha_i` written in the fundamental-weight
//! basis. Positive roots are generated by reflection closure from the simple
//! roots and validated against the classical counts.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::intlin::{solve_exact, IMat, Int, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("cannot parse type descriptor {0:?}")]
    BadDescriptor(String),
    #[error("type {letter}{rank} is not admissible")]
    BadRank { letter: char, rank: usize },
    #[error("expected a weight of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("weight {0} is not dominant")]
    NonDominant(String),
    #[error("root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
}

/// One of the simple Lie types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SimpleType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl SimpleType {
    pub fn letter(self) -> char {
        match self {
            SimpleType::A => 'A',
            SimpleType::B => 'B',
            SimpleType::C => 'C',
            SimpleType::D => 'D',
            SimpleType::E => 'E',
            SimpleType::F => 'F',
            SimpleType::G => 'G',
        }
    }

    fn admissible(self, rank: usize) -> bool {
        match self {
            SimpleType::A => rank >= 1,
            SimpleType::B | SimpleType::C => rank >= 2,
            SimpleType::D => rank >= 3,
            SimpleType::E => (6..=8).contains(&rank),
            SimpleType::F => rank == 4,
            SimpleType::G => rank == 2,
        }
    }

    fn positive_root_count(self, rank: usize) -> usize {
        match self {
            SimpleType::A => rank * (rank + 1) / 2,
            SimpleType::B | SimpleType::C => rank * rank,
            SimpleType::D => rank * (rank - 1),
            SimpleType::E => match rank {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            SimpleType::F => 24,
            SimpleType::G => 6,
        }
    }
}

/// An irreducible factor of the ambient group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub letter: SimpleType,
    pub rank: usize,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter.letter(), self.rank)
    }
}

/// An integer weight in fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<Int>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![Int::zero(); rank])
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, k: &Int) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Cartan data, positive roots, and the fundamental-weight coordinate frame
/// for a product of irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    factors: Vec<Factor>,
    cartan: IMat,
    /// Positive roots in simple-root coordinates.
    positive_roots: Vec<Vec<Int>>,
    rank: usize,
    /// Symmetrizer: positive integers with `d_i * cartan[i][j] = d_j * cartan[j][i]`.
    symmetrizer: Vec<Int>,
    /// Start index of each factor's node block.
    offsets: Vec<usize>,
    spec: String,
}

/// Build a root system from a descriptor such as `"A3"` or `"B2xG2"`
/// (factors joined by `x`, case-insensitive).
pub fn build_root_system(spec: &str) -> Result<RootSystem, RootSystemError> {
    RootSystem::parse(spec)
}

impl RootSystem {
    pub fn parse(spec: &str) -> Result<RootSystem, RootSystemError> {
        let mut factors = Vec::new();
        for part in spec.split(['x', 'X']) {
            let part = part.trim();
            if part.is_empty() {
                return Err(RootSystemError::BadDescriptor(spec.to_string()));
            }
            let letter = match part.chars().next().unwrap().to_ascii_uppercase() {
                'A' => SimpleType::A,
                'B' => SimpleType::B,
                'C' => SimpleType::C,
                'D' => SimpleType::D,
                'E' => SimpleType::E,
                'F' => SimpleType::F,
                'G' => SimpleType::G,
                _ => return Err(RootSystemError::BadDescriptor(part.to_string())),
            };
            let rank: usize = part[1..]
                .parse()
                .map_err(|_| RootSystemError::BadDescriptor(part.to_string()))?;
            if !letter.admissible(rank) {
                return Err(RootSystemError::BadRank {
                    letter: letter.letter(),
                    rank,
                });
            }
            factors.push(Factor { letter, rank });
        }
        Ok(RootSystem::from_factors(factors))
    }

    fn from_factors(factors: Vec<Factor>) -> RootSystem {
        let rank: usize = factors.iter().map(|f| f.rank).sum();
        let mut cartan = IMat::zeros(rank, rank);
        let mut offsets = Vec::with_capacity(factors.len());
        let mut base = 0;
        for f in &factors {
            offsets.push(base);
            let block = cartan_block(f.letter, f.rank);
            for i in 0..f.rank {
                for j in 0..f.rank {
                    cartan[(base + i, base + j)] = Int::from(block[i][j]);
                }
            }
            base += f.rank;
        }
        let positive_roots = positive_roots_by_closure(&cartan, rank);
        let expected: usize = factors
            .iter()
            .map(|f| f.letter.positive_root_count(f.rank))
            .sum();
        debug_assert_eq!(positive_roots.len(), expected, "closure miscounted");
        let symmetrizer = symmetrizer(&cartan, &factors, &offsets);
        let spec = factors
            .iter()
            .map(Factor::to_string)
            .collect::<Vec<_>>()
            .join("x");
        RootSystem {
            factors,
            cartan,
            positive_roots,
            rank,
            symmetrizer,
            offsets,
            spec,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn factor_offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Normalized descriptor, e.g. `"B2xG2"`.
    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn cartan(&self) -> &IMat {
        &self.cartan
    }

    /// Cartan matrix of the dual root system: the transpose.
    pub fn dual_cartan(&self) -> IMat {
        self.cartan.transpose()
    }

    /// Positive roots in simple-root coordinates.
    pub fn positive_roots(&self) -> &[Vec<Int>] {
        &self.positive_roots
    }

    pub fn is_dominant(&self, w: &Weight) -> Result<bool, RootSystemError> {
        self.check_len(w)?;
        Ok(w.0.iter().all(|c| !c.is_negative()))
    }

    /// Row `i` of the Cartan matrix: the simple root `alpha_i` in
    /// fundamental-weight coordinates.
    pub fn simple_root_weight_coords(&self, i: usize) -> Result<Weight, RootSystemError> {
        if i >= self.rank {
            return Err(RootSystemError::IndexOutOfRange {
                index: i,
                rank: self.rank,
            });
        }
        Ok(Weight(self.cartan.row(i)))
    }

    /// Dimension of the simple module with highest weight `w`, by the Weyl
    /// dimension formula evaluated in exact rational arithmetic.
    pub fn weyl_dim(&self, w: &Weight) -> Result<Int, RootSystemError> {
        self.check_len(w)?;
        if !self.is_dominant(w)? {
            return Err(RootSystemError::NonDominant(w.to_string()));
        }
        // For alpha = sum m_i alpha_i the coroot pairing satisfies
        // <lam, alpha^vee> = sum_i m_i d_i lam_i / h_alpha, and h_alpha cancels
        // in the quotient <lam+rho, alpha^vee> / <rho, alpha^vee>.
        let mut product = Rat::one();
        for m in &self.positive_roots {
            let mut num = Int::zero();
            let mut den = Int::zero();
            for i in 0..self.rank {
                if m[i].is_zero() {
                    continue;
                }
                let md = &m[i] * &self.symmetrizer[i];
                num += &md * (&w.0[i] + Int::one());
                den += md;
            }
            product *= Rat::new(num, den);
        }
        debug_assert!(product.is_integer());
        Ok(product.to_integer())
    }

    /// The unique rational solution of `cartan^T x = w`, returned exactly
    /// when it is a non-negative integer vector. Absence is a value, not an
    /// error: it means `w` is not a non-negative integral combination of
    /// simple roots.
    pub fn decompose_in_simple_roots(&self, w: &Weight) -> Option<Vec<Int>> {
        assert_eq!(w.len(), self.rank, "weight length mismatch");
        let x = solve_exact(&self.cartan.transpose(), &w.0)?;
        let mut out = Vec::with_capacity(self.rank);
        for c in x {
            if !c.is_integer() || c.is_negative() {
                return None;
            }
            out.push(c.to_integer());
        }
        Some(out)
    }

    /// The permutation `sigma` with `V(lambda)^* = V(sigma(lambda))`,
    /// induced by `-w_0`; computed from the longest Weyl element.
    pub fn diagram_involution(&self) -> Vec<usize> {
        // descent walk: drive rho to the antidominant chamber, recording the
        // reflections; their composite is w_0
        let mut seq = Vec::new();
        let mut lam: Vec<Int> = vec![Int::one(); self.rank];
        loop {
            let Some(i) = (0..self.rank).find(|&i| lam[i].is_positive()) else {
                break;
            };
            lam = self.reflect(&lam, i);
            seq.push(i);
        }
        // image of each simple root under w_0, matched against -alpha_j
        let rows: Vec<Vec<Int>> = (0..self.rank).map(|i| self.cartan.row(i)).collect();
        let mut sigma = vec![0usize; self.rank];
        for i in 0..self.rank {
            let mut v = rows[i].clone();
            for &s in &seq {
                v = self.reflect(&v, s);
            }
            let neg: Vec<Int> = v.iter().map(|c| -c.clone()).collect();
            let j = rows
                .iter()
                .position(|r| *r == neg)
                .expect("w_0 must send a simple root to the negative of one");
            sigma[i] = j;
        }
        sigma
    }

    /// Simple reflection `s_i` acting on fundamental-weight coordinates.
    fn reflect(&self, lam: &[Int], i: usize) -> Vec<Int> {
        let mut out = lam.to_vec();
        for j in 0..self.rank {
            let d = &lam[i] * &self.cartan[(i, j)];
            out[j] -= d;
        }
        out
    }

    fn check_len(&self, w: &Weight) -> Result<(), RootSystemError> {
        if w.len() != self.rank {
            return Err(RootSystemError::DimensionMismatch {
                expected: self.rank,
                got: w.len(),
            });
        }
        Ok(())
    }
}

fn cartan_block(letter: SimpleType, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let edge = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match letter {
        SimpleType::A => {
            for i in 0..n.saturating_sub(1) {
                edge(&mut a, i, i + 1);
            }
        }
        SimpleType::B => {
            for i in 0..n - 1 {
                edge(&mut a, i, i + 1);
            }
            a[n - 2][n - 1] = -2; // <alpha_{n-1}, alpha_n^vee> with alpha_n short
        }
        SimpleType::C => {
            for i in 0..n - 1 {
                edge(&mut a, i, i + 1);
            }
            a[n - 1][n - 2] = -2;
        }
        SimpleType::D => {
            for i in 0..n - 2 {
                edge(&mut a, i, i + 1);
            }
            edge(&mut a, n - 3, n - 1);
        }
        SimpleType::E => {
            // chain 1-3-4-5-..., with node 2 attached to node 4 (1-based)
            edge(&mut a, 0, 2);
            for i in 2..n - 1 {
                edge(&mut a, i, i + 1);
            }
            edge(&mut a, 1, 3);
        }
        SimpleType::F => {
            edge(&mut a, 0, 1);
            edge(&mut a, 1, 2);
            edge(&mut a, 2, 3);
            a[1][2] = -2;
        }
        SimpleType::G => {
            a[0][1] = -1;
            a[1][0] = -3;
        }
    }
    a
}

fn positive_roots_by_closure(cartan: &IMat, rank: usize) -> Vec<Vec<Int>> {
    let mut roots: BTreeSet<Vec<Int>> = (0..rank)
        .map(|i| {
            let mut e = vec![Int::zero(); rank];
            e[i] = Int::one();
            e
        })
        .collect();
    loop {
        let mut fresh = Vec::new();
        for m in &roots {
            // pairing <alpha, alpha_j^vee> = sum_i m_i cartan[i][j]
            for j in 0..rank {
                let p: Int = (0..rank).map(|i| &m[i] * &cartan[(i, j)]).sum();
                let mut im = m.clone();
                im[j] -= p;
                if im.iter().all(|c| !c.is_negative())
                    && im.iter().any(|c| c.is_positive())
                    && !roots.contains(&im)
                {
                    fresh.push(im);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        roots.extend(fresh);
    }
    roots.into_iter().collect()
}

fn symmetrizer(cartan: &IMat, factors: &[Factor], offsets: &[usize]) -> Vec<Int> {
    let rank: usize = factors.iter().map(|f| f.rank).sum();
    let mut d = vec![Rat::zero(); rank];
    for (f, &base) in factors.iter().zip(offsets) {
        d[base] = Rat::one();
        // propagate along the (connected) diagram
        let mut todo = vec![base];
        while let Some(i) = todo.pop() {
            for j in base..base + f.rank {
                if j != i && !cartan[(i, j)].is_zero() && d[j].is_zero() {
                    // half-norms satisfy a_ij d_j = a_ji d_i
                    d[j] = &d[i] * Rat::new(cartan[(j, i)].clone(), cartan[(i, j)].clone());
                    todo.push(j);
                }
            }
        }
        // clear denominators within the factor
        let mut denom_lcm = Int::one();
        for j in base..base + f.rank {
            denom_lcm = num_integer::lcm(denom_lcm, d[j].denom().clone());
        }
        let mut nums = Vec::new();
        for j in base..base + f.rank {
            let v = &d[j] * Rat::from(denom_lcm.clone());
            nums.push(v.to_integer());
        }
        let g = nums
            .iter()
            .fold(Int::zero(), |acc, x| num_integer::gcd(acc, x.abs()));
        for (j, v) in nums.into_iter().enumerate() {
            d[base + j] = Rat::from(v / &g);
        }
    }
    d.into_iter().map(|r| r.to_integer()).collect()
}
