//! Complexes of injectives over a finite window, with tail conventions
//! that make two-sided infinite objects finite data.
//!
//! A complex stores multiplicity columns for the degrees lo..=hi and the
//! differentials between consecutive stored columns. Outside the window
//! each side is governed by a `Tail`: `Zero` means the complex vanishes
//! there, `Periodic` means the boundary column continues forever along the
//! strands, every copy of I_j flowing to a copy of I_{j-1} with identity
//! coefficient. The periodic model is what makes the doubly infinite
//! exact complex, and its one-sided truncations, representable.
//!
//! d o d = 0 forces the stored boundary differential next to a periodic
//! tail to have no identity components; `new` checks that junction
//! condition along with shapes and the square of the differential.

use super::algebra::{AnAlgebra, AnError};
use super::maps::BlockMap;
use crate::exactlin::{Field, Matrix};
use crate::rep::{matrix_from_json, matrix_to_json};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tail {
    Zero,
    Periodic,
}

impl Tail {
    fn as_str(self) -> &'static str {
        match self {
            Tail::Zero => "zero",
            Tail::Periodic => "periodic",
        }
    }

    fn parse(s: &str) -> Option<Tail> {
        match s {
            "zero" => Some(Tail::Zero),
            "periodic" => Some(Tail::Periodic),
            _ => None,
        }
    }
}

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum ComplexError {
    #[error("a complex needs at least one stored column")]
    EmptyWindow,
    #[error("complexes live over different algebras (n = {0} and n = {1})")]
    AlgebraMismatch(usize, usize),
    #[error("complexes live over different fields")]
    FieldMismatch,
    #[error("{0}")]
    BadShape(String),
    #[error("differential does not square to zero out of degree {0}")]
    DifferentialSquare(i64),
    #[error("boundary differential on the {0} periodic side has identity components")]
    PeriodicJunction(&'static str),
    #[error("bad complex JSON: {0}")]
    BadJson(String),
    #[error(transparent)]
    Algebra(#[from] AnError),
}

/// A complex of injectives over A_n. `mult[t][j-1]` counts the copies of
/// I_j in degree lo + t; `diff[t]` maps column lo + t to column lo + t + 1.
#[derive(Clone, Debug, PartialEq)]
pub struct InjComplex {
    pub algebra: Arc<AnAlgebra>,
    pub field: Field,
    pub lo: i64,
    pub mult: Vec<Vec<usize>>,
    pub diff: Vec<BlockMap>,
    pub below: Tail,
    pub above: Tail,
}

impl InjComplex {
    pub fn new(
        algebra: Arc<AnAlgebra>,
        field: Field,
        lo: i64,
        mult: Vec<Vec<usize>>,
        diff: Vec<BlockMap>,
        below: Tail,
        above: Tail,
    ) -> Result<InjComplex, ComplexError> {
        let c = InjComplex {
            algebra,
            field,
            lo,
            mult,
            diff,
            below,
            above,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), ComplexError> {
        let n = self.algebra.n();
        if self.mult.is_empty() {
            return Err(ComplexError::EmptyWindow);
        }
        for (t, col) in self.mult.iter().enumerate() {
            if col.len() != n {
                return Err(ComplexError::BadShape(format!(
                    "column at degree {} lists {} strands, algebra has {n}",
                    self.lo + t as i64,
                    col.len()
                )));
            }
        }
        if self.diff.len() + 1 != self.mult.len() {
            return Err(ComplexError::BadShape(format!(
                "{} columns need {} differentials, got {}",
                self.mult.len(),
                self.mult.len() - 1,
                self.diff.len()
            )));
        }
        for (t, b) in self.diff.iter().enumerate() {
            let deg = self.lo + t as i64;
            if b.n() != n || !b.shapes_consistent() || b.field() != self.field {
                return Err(ComplexError::BadShape(format!(
                    "differential out of degree {deg} is malformed"
                )));
            }
            if b.src_mult() != self.mult[t] || b.tgt_mult() != self.mult[t + 1] {
                return Err(ComplexError::BadShape(format!(
                    "differential out of degree {deg} does not match its columns"
                )));
            }
        }
        for t in 0..self.diff.len().saturating_sub(1) {
            if !self.diff[t + 1].compose(&self.diff[t]).is_zero() {
                return Err(ComplexError::DifferentialSquare(self.lo + t as i64));
            }
        }
        if self.below == Tail::Periodic {
            if let Some(first) = self.diff.first() {
                if !first.is_radical() {
                    return Err(ComplexError::PeriodicJunction("lower"));
                }
            }
        }
        if self.above == Tail::Periodic {
            if let Some(last) = self.diff.last() {
                if !last.is_radical() {
                    return Err(ComplexError::PeriodicJunction("upper"));
                }
            }
        }
        Ok(())
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.mult.len() as i64 - 1
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi())
    }

    pub fn n(&self) -> usize {
        self.algebra.n()
    }

    /// Multiplicity column at any degree, tails included.
    pub fn mult_at(&self, i: i64) -> Vec<usize> {
        let n = self.n();
        if i < self.lo {
            return match self.below {
                Tail::Zero => vec![0; n],
                Tail::Periodic => {
                    let t = self.lo - i;
                    (1..=n)
                        .map(|k| self.mult[0][self.algebra.shift_index(k, -t) - 1])
                        .collect()
                }
            };
        }
        if i > self.hi() {
            return match self.above {
                Tail::Zero => vec![0; n],
                Tail::Periodic => {
                    let t = i - self.hi();
                    let last = self.mult.last().unwrap();
                    (1..=n)
                        .map(|k| last[self.algebra.shift_index(k, t) - 1])
                        .collect()
                }
            };
        }
        self.mult[(i - self.lo) as usize].clone()
    }

    /// Differential out of any degree, tails included. Tail differentials
    /// are the canonical strand shifts (or zero maps beyond a zero tail).
    pub fn diff_at(&self, i: i64) -> BlockMap {
        if i >= self.lo && i < self.hi() {
            return self.diff[(i - self.lo) as usize].clone();
        }
        let side = if i < self.lo { self.below } else { self.above };
        match side {
            Tail::Zero => BlockMap::zero(self.field, &self.mult_at(i), &self.mult_at(i + 1)),
            Tail::Periodic => BlockMap::strand_shift_identity(self.field, &self.mult_at(i)),
        }
    }

    /// Total number of injective copies in a column.
    pub fn column_size(&self, i: i64) -> usize {
        self.mult_at(i).iter().sum()
    }

    pub fn is_zero_window(&self) -> bool {
        self.mult.iter().all(|col| col.iter().all(|&m| m == 0))
    }

    /// Materialize tail columns so the stored window covers [new_lo, new_hi].
    /// The tails keep their kind; this never changes the complex itself.
    pub fn extend_window(&self, new_lo: i64, new_hi: i64) -> InjComplex {
        assert!(new_lo <= self.lo && new_hi >= self.hi(), "window may only grow");
        let mult: Vec<Vec<usize>> = (new_lo..=new_hi).map(|i| self.mult_at(i)).collect();
        let diff: Vec<BlockMap> = (new_lo..new_hi).map(|i| self.diff_at(i)).collect();
        InjComplex::new(
            self.algebra.clone(),
            self.field,
            new_lo,
            mult,
            diff,
            self.below,
            self.above,
        )
        .expect("materializing tails preserves validity")
    }

    /// The shift X[r]: content of degree i moves to degree i - r. This is a
    /// pure relabelling; the convention here attaches no signs, so [r] is
    /// strictly a window translation.
    pub fn shift(&self, r: i64) -> InjComplex {
        let mut c = self.clone();
        c.lo -= r;
        c
    }

    /// Brutal truncation keeping degrees >= l.
    pub fn truncate_below(&self, l: i64) -> InjComplex {
        let (lo, hi) = self.window();
        if l <= lo {
            return match self.below {
                Tail::Zero => self.clone(),
                Tail::Periodic => {
                    let mut c = self.extend_window(l, hi);
                    c.below = Tail::Zero;
                    c
                }
            };
        }
        if l <= hi {
            let cut = (l - lo) as usize;
            let mut c = self.clone();
            c.lo = l;
            c.mult.drain(..cut);
            c.diff.drain(..cut);
            c.below = Tail::Zero;
            return c;
        }
        match self.above {
            Tail::Zero => zero_complex(self.algebra.clone(), self.field, l, l),
            Tail::Periodic => {
                let ext = self.extend_window(lo, l);
                let mut c = ext;
                let cut = (l - c.lo) as usize;
                c.lo = l;
                c.mult.drain(..cut);
                c.diff.drain(..cut);
                c.below = Tail::Zero;
                c
            }
        }
    }

    /// Brutal truncation keeping degrees <= m.
    pub fn truncate_above(&self, m: i64) -> InjComplex {
        let (lo, hi) = self.window();
        if m >= hi {
            return match self.above {
                Tail::Zero => self.clone(),
                Tail::Periodic => {
                    let mut c = self.extend_window(lo, m);
                    c.above = Tail::Zero;
                    c
                }
            };
        }
        if m >= lo {
            let keep = (m - lo + 1) as usize;
            let mut c = self.clone();
            c.mult.truncate(keep);
            c.diff.truncate(keep - 1);
            c.above = Tail::Zero;
            return c;
        }
        match self.below {
            Tail::Zero => zero_complex(self.algebra.clone(), self.field, m, m),
            Tail::Periodic => {
                let ext = self.extend_window(m, hi);
                let mut c = ext;
                c.mult.truncate(1);
                c.diff.clear();
                c.above = Tail::Zero;
                c
            }
        }
    }

    /// Degreewise direct sum. When the two lower (or upper) tails disagree
    /// in kind, the common window is padded one extra degree on that side so
    /// that the boundary column consists of tail data only; the periodic
    /// kind then describes the sum's tail correctly, because the zero-tailed
    /// summand contributes nothing there.
    pub fn direct_sum(&self, other: &InjComplex) -> Result<InjComplex, ComplexError> {
        if self.n() != other.n() {
            return Err(ComplexError::AlgebraMismatch(self.n(), other.n()));
        }
        if self.field != other.field {
            return Err(ComplexError::FieldMismatch);
        }
        let combine = |a: Tail, b: Tail| -> (Tail, bool) {
            match (a, b) {
                (Tail::Zero, Tail::Zero) => (Tail::Zero, false),
                (Tail::Periodic, Tail::Periodic) => (Tail::Periodic, false),
                _ => (Tail::Periodic, true),
            }
        };
        let (below, pad_lo) = combine(self.below, other.below);
        let (above, pad_hi) = combine(self.above, other.above);
        let lo = self.lo.min(other.lo) - i64::from(pad_lo);
        let hi = self.hi().max(other.hi()) + i64::from(pad_hi);
        let x = self.extend_window(lo, hi);
        let y = other.extend_window(lo, hi);
        let mult: Vec<Vec<usize>> = x
            .mult
            .iter()
            .zip(&y.mult)
            .map(|(a, b)| a.iter().zip(b).map(|(u, v)| u + v).collect())
            .collect();
        let diff: Vec<BlockMap> = x
            .diff
            .iter()
            .zip(&y.diff)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        InjComplex::new(self.algebra.clone(), self.field, lo, mult, diff, below, above)
    }

    /// k-dimension of the underlying module at a vertex in one degree:
    /// socles of I_v plus tops of I_{v+1}.
    pub fn vertex_dim(&self, i: i64, v: usize) -> usize {
        let m = self.mult_at(i);
        m[v - 1] + m[self.algebra.next(v) - 1]
    }

    /// The action of the differential out of degree i on the vertex-v part
    /// of the underlying modules, in the basis (socles of I_v, tops of
    /// I_{v+1}).
    fn vertex_differential(&self, i: i64, v: usize) -> Matrix {
        let b = self.diff_at(i);
        let vn = self.algebra.next(v);
        let tl = &b.id_part[v - 1];
        let tr = &b.d_part[vn - 1];
        let br = &b.id_part[vn - 1];
        let bl = Matrix::zeros(self.field, br.rows, tl.cols);
        let top = tl.hstack(tr).expect("shape");
        let bottom = bl.hstack(br).expect("shape");
        top.vstack(&bottom).expect("shape")
    }

    /// Cohomology dimension at one degree, split by vertex. Tails make this
    /// total: every degree of every complex has well-defined cohomology.
    pub fn cohomology_by_vertex(&self, i: i64) -> Vec<usize> {
        (1..=self.n())
            .map(|v| {
                let d_out = self.vertex_differential(i, v);
                let d_in = self.vertex_differential(i - 1, v);
                (d_out.cols - d_out.rank()) - d_in.rank()
            })
            .collect()
    }

    pub fn cohomology_dim(&self, i: i64) -> usize {
        self.cohomology_by_vertex(i).iter().sum()
    }

    pub fn cohomology_dims(&self, from: i64, to: i64) -> Vec<usize> {
        (from..=to).map(|i| self.cohomology_dim(i)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut mult = serde_json::Map::new();
        for (t, col) in self.mult.iter().enumerate() {
            mult.insert(
                (self.lo + t as i64).to_string(),
                serde_json::Value::Array(
                    col.iter().map(|&m| serde_json::Value::from(m)).collect(),
                ),
            );
        }
        let mut diff = serde_json::Map::new();
        for (t, b) in self.diff.iter().enumerate() {
            let mut entry = serde_json::Map::new();
            entry.insert(
                "id".into(),
                serde_json::Value::Array(b.id_part.iter().map(matrix_to_json).collect()),
            );
            entry.insert(
                "d".into(),
                serde_json::Value::Array(b.d_part.iter().map(matrix_to_json).collect()),
            );
            diff.insert(
                (self.lo + t as i64).to_string(),
                serde_json::Value::Object(entry),
            );
        }
        serde_json::json!({
            "n": self.n(),
            "window": [self.lo, self.hi()],
            "mult": mult,
            "diff": diff,
            "tails": [self.below.as_str(), self.above.as_str()],
        })
    }

    pub fn from_json(field: Field, v: &serde_json::Value) -> Result<InjComplex, ComplexError> {
        let obj = v
            .as_object()
            .ok_or_else(|| ComplexError::BadJson("complex must be a JSON object".into()))?;
        let n = obj
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| ComplexError::BadJson("missing or bad \"n\"".into()))?
            as usize;
        let algebra = Arc::new(AnAlgebra::new(n)?);
        let window = obj
            .get("window")
            .and_then(|x| x.as_array())
            .ok_or_else(|| ComplexError::BadJson("missing or bad \"window\"".into()))?;
        if window.len() != 2 {
            return Err(ComplexError::BadJson("\"window\" must be [lo, hi]".into()));
        }
        let lo = window[0]
            .as_i64()
            .ok_or_else(|| ComplexError::BadJson("window bounds must be integers".into()))?;
        let hi = window[1]
            .as_i64()
            .ok_or_else(|| ComplexError::BadJson("window bounds must be integers".into()))?;
        if hi < lo {
            return Err(ComplexError::BadJson("window must satisfy lo <= hi".into()));
        }
        let len = (hi - lo + 1) as usize;
        let mut mult = vec![vec![0usize; n]; len];
        if let Some(mobj) = obj.get("mult") {
            let mobj = mobj
                .as_object()
                .ok_or_else(|| ComplexError::BadJson("\"mult\" must be an object".into()))?;
            for (key, col) in mobj {
                let deg: i64 = key
                    .parse()
                    .map_err(|_| ComplexError::BadJson(format!("bad degree key {key:?}")))?;
                if deg < lo || deg > hi {
                    return Err(ComplexError::BadJson(format!(
                        "degree {deg} lies outside the window [{lo}, {hi}]"
                    )));
                }
                let arr = col.as_array().ok_or_else(|| {
                    ComplexError::BadJson(format!("mult at {deg} must be an array"))
                })?;
                if arr.len() != n {
                    return Err(ComplexError::BadJson(format!(
                        "mult at {deg} must list {n} strands"
                    )));
                }
                for (j, entry) in arr.iter().enumerate() {
                    mult[(deg - lo) as usize][j] = entry.as_u64().ok_or_else(|| {
                        ComplexError::BadJson(format!("mult at {deg} must hold counts"))
                    })? as usize;
                }
            }
        }
        let mut diff: Vec<BlockMap> = (0..len.saturating_sub(1))
            .map(|t| BlockMap::zero(field, &mult[t], &mult[t + 1]))
            .collect();
        if let Some(dobj) = obj.get("diff") {
            let dobj = dobj
                .as_object()
                .ok_or_else(|| ComplexError::BadJson("\"diff\" must be an object".into()))?;
            for (key, val) in dobj {
                let deg: i64 = key
                    .parse()
                    .map_err(|_| ComplexError::BadJson(format!("bad degree key {key:?}")))?;
                if deg < lo || deg >= hi {
                    return Err(ComplexError::BadJson(format!(
                        "no differential out of degree {deg} in window [{lo}, {hi}]"
                    )));
                }
                let t = (deg - lo) as usize;
                let entry = val.as_object().ok_or_else(|| {
                    ComplexError::BadJson(format!("diff at {deg} must be an object"))
                })?;
                let prev = |j: usize| if j == 1 { n } else { j - 1 };
                if let Some(ids) = entry.get("id") {
                    let arr = ids.as_array().ok_or_else(|| {
                        ComplexError::BadJson(format!("diff {deg} \"id\" must be an array"))
                    })?;
                    if arr.len() != n {
                        return Err(ComplexError::BadJson(format!(
                            "diff {deg} \"id\" must list {n} matrices"
                        )));
                    }
                    for j in 1..=n {
                        diff[t].id_part[j - 1] =
                            matrix_from_json(&field, mult[t + 1][j - 1], mult[t][j - 1], &arr[j - 1])
                                .map_err(|e| ComplexError::BadJson(e.to_string()))?;
                    }
                }
                if let Some(ds) = entry.get("d") {
                    let arr = ds.as_array().ok_or_else(|| {
                        ComplexError::BadJson(format!("diff {deg} \"d\" must be an array"))
                    })?;
                    if arr.len() != n {
                        return Err(ComplexError::BadJson(format!(
                            "diff {deg} \"d\" must list {n} matrices"
                        )));
                    }
                    for j in 1..=n {
                        diff[t].d_part[j - 1] = matrix_from_json(
                            &field,
                            mult[t + 1][prev(j) - 1],
                            mult[t][j - 1],
                            &arr[j - 1],
                        )
                        .map_err(|e| ComplexError::BadJson(e.to_string()))?;
                    }
                }
            }
        }
        let tails = obj
            .get("tails")
            .and_then(|x| x.as_array())
            .ok_or_else(|| ComplexError::BadJson("missing or bad \"tails\"".into()))?;
        if tails.len() != 2 {
            return Err(ComplexError::BadJson(
                "\"tails\" must name the lower and upper tail".into(),
            ));
        }
        let tail = |v: &serde_json::Value| -> Result<Tail, ComplexError> {
            v.as_str()
                .and_then(Tail::parse)
                .ok_or_else(|| ComplexError::BadJson("tails must be \"zero\" or \"periodic\"".into()))
        };
        InjComplex::new(
            algebra,
            field,
            lo,
            mult,
            diff,
            tail(&tails[0])?,
            tail(&tails[1])?,
        )
    }
}

/// The doubly infinite exact complex: I_1 in degree 0, continued forever in
/// both directions along the strands.
pub fn periodic_complex(algebra: Arc<AnAlgebra>, field: Field) -> InjComplex {
    let n = algebra.n();
    let mut col = vec![0usize; n];
    col[0] = 1;
    InjComplex::new(
        algebra,
        field,
        0,
        vec![col],
        vec![],
        Tail::Periodic,
        Tail::Periodic,
    )
    .expect("the periodic seed is valid")
}

/// The zero complex, stored over the given window.
pub fn zero_complex(algebra: Arc<AnAlgebra>, field: Field, lo: i64, hi: i64) -> InjComplex {
    assert!(lo <= hi);
    let n = algebra.n();
    let len = (hi - lo + 1) as usize;
    let mult = vec![vec![0usize; n]; len];
    let diff = (0..len - 1)
        .map(|_| BlockMap::zero(field, &vec![0; n], &vec![0; n]))
        .collect();
    InjComplex::new(algebra, field, lo, mult, diff, Tail::Zero, Tail::Zero)
        .expect("the zero complex is valid")
}

/// A single injective I_j placed in one degree, zero elsewhere.
pub fn stalk(algebra: Arc<AnAlgebra>, field: Field, j: usize, degree: i64) -> InjComplex {
    let n = algebra.n();
    assert!((1..=n).contains(&j));
    let mut col = vec![0usize; n];
    col[j - 1] = 1;
    InjComplex::new(
        algebra,
        field,
        degree,
        vec![col],
        vec![],
        Tail::Zero,
        Tail::Zero,
    )
    .expect("a stalk is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(n: usize) -> Arc<AnAlgebra> {
        Arc::new(AnAlgebra::new(n).unwrap())
    }

    fn f() -> Field {
        Field::Rational
    }

    #[test]
    fn periodic_tail_walks_the_strands() {
        let p = periodic_complex(alg(3), f());
        // degree i carries the injective with index 1 - i cyclically
        assert_eq!(p.mult_at(0), vec![1, 0, 0]);
        assert_eq!(p.mult_at(1), vec![0, 0, 1]);
        assert_eq!(p.mult_at(2), vec![0, 1, 0]);
        assert_eq!(p.mult_at(3), vec![1, 0, 0]);
        assert_eq!(p.mult_at(-1), vec![0, 1, 0]);
        assert_eq!(p.mult_at(-2), vec![0, 0, 1]);
        assert_eq!(p.mult_at(-3), vec![1, 0, 0]);
    }

    #[test]
    fn extending_the_periodic_complex_stays_valid() {
        for n in [1usize, 2, 3, 4] {
            let p = periodic_complex(alg(n), f());
            let e = p.extend_window(-7, 7);
            assert!(e.validate().is_ok());
            assert_eq!(e.mult_at(9), p.mult_at(9));
            for i in -7..7 {
                assert!(e.diff_at(i).is_radical());
            }
        }
    }

    #[test]
    fn periodic_complex_is_exact_everywhere() {
        for n in [1usize, 2, 3] {
            let p = periodic_complex(alg(n), f());
            assert_eq!(p.cohomology_dims(-4, 4), vec![0; 9]);
        }
    }

    #[test]
    fn stalk_cohomology_is_the_whole_injective() {
        let s = stalk(alg(2), f(), 1, 0);
        assert_eq!(s.cohomology_dim(0), 2);
        assert_eq!(s.cohomology_dims(-2, 2), vec![0, 0, 2, 0, 0]);
        // split by vertex: socle at 1, top at 2
        assert_eq!(s.cohomology_by_vertex(0), vec![1, 1]);
    }

    #[test]
    fn two_term_socle_killing_complex_for_n_one() {
        let a = alg(1);
        let mut d = BlockMap::zero(f(), &[1], &[1]);
        d.d_part[0] = Matrix::from_i64_rows(f(), &[vec![1]]);
        let c = InjComplex::new(
            a,
            f(),
            0,
            vec![vec![1], vec![1]],
            vec![d],
            Tail::Zero,
            Tail::Zero,
        )
        .unwrap();
        assert_eq!(c.cohomology_dims(-1, 2), vec![0, 1, 1, 0]);
    }

    #[test]
    fn junction_condition_rejects_identity_next_to_a_periodic_tail() {
        let a = alg(2);
        let d = BlockMap::identity(f(), &[1, 0]);
        let err = InjComplex::new(
            a,
            f(),
            0,
            vec![vec![1, 0], vec![1, 0]],
            vec![d],
            Tail::Periodic,
            Tail::Zero,
        )
        .unwrap_err();
        assert_eq!(err, ComplexError::PeriodicJunction("lower"));
    }

    #[test]
    fn differential_square_is_checked() {
        let a = alg(1);
        let d0 = BlockMap::identity(f(), &[1]);
        let d1 = BlockMap::identity(f(), &[1]);
        let err = InjComplex::new(
            a,
            f(),
            0,
            vec![vec![1], vec![1], vec![1]],
            vec![d0, d1],
            Tail::Zero,
            Tail::Zero,
        )
        .unwrap_err();
        assert_eq!(err, ComplexError::DifferentialSquare(0));
    }

    #[test]
    fn shift_relabels_degrees_without_signs() {
        let p = periodic_complex(alg(3), f());
        let q = p.shift(2);
        assert_eq!(q.window(), (-2, -2));
        assert_eq!(q.mult_at(-2), p.mult_at(0));
        assert_eq!(q.mult_at(0), p.mult_at(2));
        assert_eq!(q.cohomology_dims(-3, 3), vec![0; 7]);
    }

    #[test]
    fn truncations_of_the_periodic_complex() {
        let p = periodic_complex(alg(2), f());
        let upper = p.truncate_below(0);
        assert_eq!(upper.window(), (0, 0));
        assert_eq!(upper.below, Tail::Zero);
        assert_eq!(upper.above, Tail::Periodic);
        // one-sided: kernel of the first map survives in degree 0
        assert_eq!(upper.cohomology_dims(-1, 3), vec![0, 1, 0, 0, 0]);

        let lower = p.truncate_above(0);
        assert_eq!(lower.window(), (0, 0));
        assert_eq!(lower.below, Tail::Periodic);
        assert_eq!(lower.above, Tail::Zero);
        // cokernel of the last map survives in degree 0
        assert_eq!(lower.cohomology_dims(-3, 1), vec![0, 0, 0, 1, 0]);

        let cut = p.extend_window(-3, 3).truncate_below(-1).truncate_above(1);
        assert_eq!(cut.window(), (-1, 1));
        assert_eq!(cut.below, Tail::Zero);
        assert_eq!(cut.above, Tail::Zero);
        assert_eq!(cut.cohomology_dim(-1), 1);
        assert_eq!(cut.cohomology_dim(0), 0);
        assert_eq!(cut.cohomology_dim(1), 1);
    }

    #[test]
    fn truncating_past_a_zero_tail_gives_the_zero_complex() {
        let s = stalk(alg(2), f(), 1, 0);
        let z = s.truncate_below(5);
        assert!(z.is_zero_window());
        assert_eq!(z.cohomology_dims(4, 6), vec![0, 0, 0]);
    }

    #[test]
    fn direct_sum_pads_mixed_tails() {
        let a = alg(2);
        let s = stalk(a.clone(), f(), 2, 0);
        let half = periodic_complex(a, f()).truncate_below(0);
        let sum = s.direct_sum(&half).unwrap();
        assert_eq!(sum.below, Tail::Zero);
        assert_eq!(sum.above, Tail::Periodic);
        // padded one degree above the stalk so the top column is pure tail
        assert_eq!(sum.window(), (0, 1));
        for i in -2..4 {
            assert_eq!(
                sum.cohomology_dim(i),
                s.cohomology_dim(i) + half.cohomology_dim(i),
                "additivity at degree {i}"
            );
        }
    }

    #[test]
    fn json_round_trip() {
        let a = alg(2);
        let s = stalk(a.clone(), f(), 2, -1);
        let half = periodic_complex(a, f()).truncate_above(2);
        let sum = s.direct_sum(&half).unwrap();
        let json = sum.to_json();
        let back = InjComplex::from_json(f(), &json).unwrap();
        assert_eq!(back.window(), sum.window());
        assert_eq!(back.mult, sum.mult);
        assert_eq!(back.diff, sum.diff);
        assert_eq!(back.below, sum.below);
        assert_eq!(back.above, sum.above);
    }

    #[test]
    fn from_json_accepts_sparse_input() {
        let v: serde_json::Value = serde_json::json!({
            "n": 1,
            "window": [0, 1],
            "mult": {"0": [1], "1": [1]},
            "diff": {"0": {"d": [[[1]]]}},
            "tails": ["zero", "zero"],
        });
        let c = InjComplex::from_json(f(), &v).unwrap();
        assert_eq!(c.cohomology_dim(0), 1);
        assert_eq!(c.cohomology_dim(1), 1);
    }
}
