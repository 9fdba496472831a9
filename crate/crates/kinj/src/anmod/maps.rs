//! Degreewise maps between columns of injectives, stored as coefficient
//! matrices rather than raw k-linear maps.
//!
//! A column is a finite multiset of indecomposable injectives, recorded as
//! a multiplicity vector over the strands 1..=n. A map between two columns
//! decomposes along the only morphisms the algebra admits: identity
//! components I_j -> I_j and socle-killing components d_j: I_j -> I_{j-1}.
//! `BlockMap` stores one coefficient matrix per strand for each kind.
//! Composition uses d o d = 0, which holds in the algebra for every n, so
//! the formulas below are uniform (for n = 1 both components act on the
//! single strand).

use crate::exactlin::{Field, Matrix, Scalar};

/// A map between two columns of injectives.
///
/// `id_part[j-1]` has shape tgt_mult[j] x src_mult[j] and holds the
/// coefficients of identity maps on strand j. `d_part[j-1]` has shape
/// tgt_mult[prev j] x src_mult[j] and holds the coefficients of
/// d_j: I_j -> I_{prev j}.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockMap {
    pub id_part: Vec<Matrix>,
    pub d_part: Vec<Matrix>,
}

fn prev(n: usize, j: usize) -> usize {
    if j == 1 {
        n
    } else {
        j - 1
    }
}

impl BlockMap {
    pub fn zero(field: Field, src_mult: &[usize], tgt_mult: &[usize]) -> BlockMap {
        let n = src_mult.len();
        assert_eq!(n, tgt_mult.len(), "columns over the same algebra");
        assert!(n >= 1);
        let id_part = (1..=n)
            .map(|j| Matrix::zeros(field, tgt_mult[j - 1], src_mult[j - 1]))
            .collect();
        let d_part = (1..=n)
            .map(|j| Matrix::zeros(field, tgt_mult[prev(n, j) - 1], src_mult[j - 1]))
            .collect();
        BlockMap { id_part, d_part }
    }

    pub fn identity(field: Field, mult: &[usize]) -> BlockMap {
        let mut m = BlockMap::zero(field, mult, mult);
        for (j, &dim) in mult.iter().enumerate() {
            m.id_part[j] = Matrix::identity(field, dim);
        }
        m
    }

    /// The canonical strand-shift map: no identity components, and the
    /// d-component of every strand is an identity matrix. The target column
    /// is the source column pushed one step along the strands, which is how
    /// periodic tails continue a boundary column.
    pub fn strand_shift_identity(field: Field, src_mult: &[usize]) -> BlockMap {
        let n = src_mult.len();
        let mut tgt = vec![0usize; n];
        for j in 1..=n {
            tgt[prev(n, j) - 1] = src_mult[j - 1];
        }
        let mut m = BlockMap::zero(field, src_mult, &tgt);
        for j in 1..=n {
            m.d_part[j - 1] = Matrix::identity(field, src_mult[j - 1]);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.id_part.len()
    }

    pub fn field(&self) -> Field {
        self.id_part[0].field()
    }

    pub fn src_mult(&self) -> Vec<usize> {
        self.id_part.iter().map(|m| m.cols).collect()
    }

    pub fn tgt_mult(&self) -> Vec<usize> {
        self.id_part.iter().map(|m| m.rows).collect()
    }

    /// Shape and field coherence between the two parts.
    pub fn shapes_consistent(&self) -> bool {
        let n = self.n();
        if self.d_part.len() != n {
            return false;
        }
        let field = self.field();
        for j in 1..=n {
            let idm = &self.id_part[j - 1];
            let dm = &self.d_part[j - 1];
            if idm.field() != field || dm.field() != field {
                return false;
            }
            if dm.cols != idm.cols || dm.rows != self.id_part[prev(n, j) - 1].rows {
                return false;
            }
        }
        true
    }

    /// self o rhs, using that d o d vanishes in the algebra.
    pub fn compose(&self, rhs: &BlockMap) -> BlockMap {
        let n = self.n();
        assert_eq!(n, rhs.n());
        let mut id_part = Vec::with_capacity(n);
        let mut d_part = Vec::with_capacity(n);
        for j in 1..=n {
            let pj = prev(n, j);
            id_part.push(self.id_part[j - 1].mul(&rhs.id_part[j - 1]).expect("shape"));
            let a = self.d_part[j - 1].mul(&rhs.id_part[j - 1]).expect("shape");
            let b = self.id_part[pj - 1].mul(&rhs.d_part[j - 1]).expect("shape");
            d_part.push(a.add(&b).expect("shape"));
        }
        BlockMap { id_part, d_part }
    }

    pub fn add(&self, rhs: &BlockMap) -> BlockMap {
        let id_part = self
            .id_part
            .iter()
            .zip(&rhs.id_part)
            .map(|(a, b)| a.add(b).expect("shape"))
            .collect();
        let d_part = self
            .d_part
            .iter()
            .zip(&rhs.d_part)
            .map(|(a, b)| a.add(b).expect("shape"))
            .collect();
        BlockMap { id_part, d_part }
    }

    pub fn sub(&self, rhs: &BlockMap) -> BlockMap {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> BlockMap {
        BlockMap {
            id_part: self.id_part.iter().map(Matrix::neg).collect(),
            d_part: self.d_part.iter().map(Matrix::neg).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> BlockMap {
        BlockMap {
            id_part: self.id_part.iter().map(|m| m.scale(s)).collect(),
            d_part: self.d_part.iter().map(|m| m.scale(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.id_part.iter().all(Matrix::is_zero) && self.d_part.iter().all(Matrix::is_zero)
    }

    /// No identity components at all: every coefficient factors through a
    /// socle-killing map. Differentials of this shape admit no contractible
    /// direct summand across their two columns.
    pub fn is_radical(&self) -> bool {
        self.id_part.iter().all(Matrix::is_zero)
    }

    /// Block-diagonal sum on both source and target columns.
    pub fn direct_sum(&self, rhs: &BlockMap) -> BlockMap {
        let n = self.n();
        assert_eq!(n, rhs.n());
        let field = self.field();
        let glue = |a: &Matrix, b: &Matrix| -> Matrix {
            let top = a.hstack(&Matrix::zeros(field, a.rows, b.cols)).expect("shape");
            let bottom = Matrix::zeros(field, b.rows, a.cols).hstack(b).expect("shape");
            top.vstack(&bottom).expect("shape")
        };
        BlockMap {
            id_part: self
                .id_part
                .iter()
                .zip(&rhs.id_part)
                .map(|(a, b)| glue(a, b))
                .collect(),
            d_part: self
                .d_part
                .iter()
                .zip(&rhs.d_part)
                .map(|(a, b)| glue(a, b))
                .collect(),
        }
    }
}

/// A degree-homogeneous family of column maps f^i: X^i -> Y^{i + degree},
/// stored over a finite window of degrees. Components outside the window
/// are zero by convention; callers widen windows before arithmetic that
/// needs them.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap {
    pub degree: i64,
    pub lo: i64,
    pub comps: Vec<BlockMap>,
}

impl GradedMap {
    pub fn new(degree: i64, lo: i64, comps: Vec<BlockMap>) -> GradedMap {
        GradedMap { degree, lo, comps }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.comps.len() as i64 - 1
    }

    pub fn component_at(&self, i: i64) -> Option<&BlockMap> {
        if i < self.lo || i > self.hi() {
            None
        } else {
            Some(&self.comps[(i - self.lo) as usize])
        }
    }

    pub fn component_at_mut(&mut self, i: i64) -> Option<&mut BlockMap> {
        if i < self.lo || i > self.hi() {
            None
        } else {
            Some(&mut self.comps[(i - self.lo) as usize])
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(BlockMap::is_zero)
    }

    /// Strict componentwise sum; windows and degrees must already agree.
    pub fn add(&self, rhs: &GradedMap) -> GradedMap {
        assert_eq!(self.degree, rhs.degree);
        assert_eq!(self.lo, rhs.lo);
        assert_eq!(self.comps.len(), rhs.comps.len());
        GradedMap {
            degree: self.degree,
            lo: self.lo,
            comps: self
                .comps
                .iter()
                .zip(&rhs.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> GradedMap {
        GradedMap {
            degree: self.degree,
            lo: self.lo,
            comps: self.comps.iter().map(BlockMap::neg).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> GradedMap {
        GradedMap {
            degree: self.degree,
            lo: self.lo,
            comps: self.comps.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// self o rhs over rhs's window; self must cover every degree the
    /// composite needs.
    pub fn compose(&self, rhs: &GradedMap) -> GradedMap {
        let comps = (0..rhs.comps.len())
            .map(|t| {
                let i = rhs.lo + t as i64;
                let mid = i + rhs.degree;
                let left = self
                    .component_at(mid)
                    .expect("left factor must cover the composite window");
                left.compose(&rhs.comps[t])
            })
            .collect();
        GradedMap {
            degree: self.degree + rhs.degree,
            lo: rhs.lo,
            comps,
        }
    }
}
