//! Quiver representations over an exact field.
//!
//! A representation assigns a finite-dimensional space to each vertex and a
//! matrix to each arrow, with all monomial relations composing to zero.
//! Besides validation this module provides the radical subrepresentation,
//! the separation functors relating radical-square-zero representations to
//! representations of the separated quiver, and (in [`intervals`]) the
//! decomposition of path-shaped representations into interval modules.

pub mod intervals;

use crate::exactlin::{Field, Matrix, Scalar};
use crate::quiver::{BoundQuiver, VertexId};
use std::sync::Arc;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("relation {0} does not compose to zero")]
    RelationViolated(String),
    #[error("representation does not have radical square zero")]
    RadicalSquareNotZero,
    #[error("representation lives over the wrong quiver: {0}")]
    QuiverMismatch(String),
    #[error("quiver is not path-shaped: {0}")]
    NotPathShaped(String),
    #[error("bad representation json: {0}")]
    BadJson(String),
}

/// A representation of a bound quiver: `maps[a]` has shape
/// `dims[tgt(a)] x dims[src(a)]` and acts on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    pub quiver: Arc<BoundQuiver>,
    pub field: Field,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl Rep {
    pub fn new(
        quiver: Arc<BoundQuiver>,
        field: Field,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Rep, RepError> {
        if dims.len() != quiver.vertices.len() || maps.len() != quiver.arrows.len() {
            return Err(RepError::Shape(format!(
                "expected {} vertex dims and {} arrow maps, got {} and {}",
                quiver.vertices.len(),
                quiver.arrows.len(),
                dims.len(),
                maps.len()
            )));
        }
        for (a, arrow) in quiver.arrows.iter().enumerate() {
            let s = quiver.vertex_index(arrow.src).unwrap();
            let t = quiver.vertex_index(arrow.tgt).unwrap();
            let m = &maps[a];
            if m.rows != dims[t] || m.cols != dims[s] {
                return Err(RepError::Shape(format!(
                    "map for arrow {} should be {}x{}, got {}x{}",
                    arrow.id, dims[t], dims[s], m.rows, m.cols
                )));
            }
            if m.field() != field {
                return Err(RepError::Shape(format!(
                    "map for arrow {} is over the wrong field",
                    arrow.id
                )));
            }
        }
        let rep = Rep {
            quiver,
            field,
            dims,
            maps,
        };
        for &(first, second) in &rep.quiver.relations {
            let composite = rep.maps[second]
                .mul(&rep.maps[first])
                .expect("relation endpoints were validated");
            if !composite.is_zero() {
                return Err(RepError::RelationViolated(format!(
                    "{} then {}",
                    rep.quiver.arrows[first].id, rep.quiver.arrows[second].id
                )));
            }
        }
        Ok(rep)
    }

    pub fn zero(quiver: Arc<BoundQuiver>, field: Field) -> Rep {
        let dims = vec![0; quiver.vertices.len()];
        let maps = quiver
            .arrows
            .iter()
            .map(|_| Matrix::zeros(field, 0, 0))
            .collect();
        Rep {
            quiver,
            field,
            dims,
            maps,
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dim_at(&self, v: VertexId) -> Option<usize> {
        self.quiver.vertex_index(v).map(|i| self.dims[i])
    }

    pub fn map_for(&self, arrow_id: &str) -> Option<&Matrix> {
        self.quiver.arrow_index(arrow_id).map(|a| &self.maps[a])
    }

    /// Blockwise direct sum of two representations of the same quiver.
    pub fn direct_sum(&self, other: &Rep) -> Result<Rep, RepError> {
        if self.quiver != other.quiver {
            return Err(RepError::QuiverMismatch(
                "direct sum needs a common quiver".into(),
            ));
        }
        if self.field != other.field {
            return Err(RepError::Shape("direct sum needs a common field".into()));
        }
        let dims: Vec<usize> = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a + b)
            .collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, arrow) in self.quiver.arrows.iter().enumerate() {
            let s = self.quiver.vertex_index(arrow.src).unwrap();
            let t = self.quiver.vertex_index(arrow.tgt).unwrap();
            let mut m = Matrix::zeros(self.field, dims[t], dims[s]);
            for i in 0..self.dims[t] {
                for j in 0..self.dims[s] {
                    m.set(i, j, self.maps[a].get(i, j).clone());
                }
            }
            for i in 0..other.dims[t] {
                for j in 0..other.dims[s] {
                    m.set(self.dims[t] + i, self.dims[s] + j, other.maps[a].get(i, j).clone());
                }
            }
            maps.push(m);
        }
        Rep::new(self.quiver.clone(), self.field, dims, maps)
    }

    /// The radical subrepresentation: at each vertex the sum of the images
    /// of all incoming arrow maps. Returns the radical together with the
    /// inclusion matrix at each vertex (columns = a basis of the radical in
    /// the ambient coordinates).
    pub fn radical(&self) -> (Rep, Vec<Matrix>) {
        let nv = self.quiver.vertices.len();
        let mut inclusions = Vec::with_capacity(nv);
        for (v, &vid) in self.quiver.vertices.iter().enumerate() {
            let mut stacked = Matrix::zeros(self.field, self.dims[v], 0);
            for a in self.quiver.arrows_into(vid) {
                stacked = stacked.hstack(&self.maps[a]).expect("row counts agree");
            }
            let pivots = stacked.column_space_pivots();
            inclusions.push(stacked.submatrix(&(0..self.dims[v]).collect::<Vec<_>>(), &pivots));
        }
        let dims: Vec<usize> = inclusions.iter().map(|b| b.cols).collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, arrow) in self.quiver.arrows.iter().enumerate() {
            let s = self.quiver.vertex_index(arrow.src).unwrap();
            let t = self.quiver.vertex_index(arrow.tgt).unwrap();
            // The arrow map sends the radical into the radical, so the
            // restriction is solvable in the target's radical basis.
            let restricted = self.maps[a].mul(&inclusions[s]).expect("shapes agree");
            let m = inclusions[t]
                .solve(&restricted)
                .expect("arrow images lie in the radical");
            debug_assert_eq!(m.rows, dims[t]);
            maps.push(m);
        }
        let rad = Rep {
            quiver: self.quiver.clone(),
            field: self.field,
            dims,
            maps,
        };
        (rad, inclusions)
    }

    /// True when the radical of the radical vanishes.
    pub fn radical_square_zero(&self) -> bool {
        let (rad, _) = self.radical();
        let (rad2, _) = rad.radical();
        rad2.total_dim() == 0
    }

    /// Splitting data for the radical at every vertex: the inclusion B, a
    /// complement basis C (unit vectors), and the projections P (onto the
    /// quotient, in the complement coordinates) and R (onto the radical, in
    /// the B coordinates), so that [P; R] is inverse to [C | B].
    pub fn radical_splitting(&self) -> Vec<RadicalSplitting> {
        let (_, inclusions) = self.radical();
        let mut out = Vec::with_capacity(inclusions.len());
        for (v, b) in inclusions.iter().enumerate() {
            let d = self.dims[v];
            // complete B to a basis by unit vectors at non-pivot rows of
            // a column echelon pass over [B | I]
            let full = b
                .hstack(&Matrix::identity(self.field, d))
                .expect("row counts agree");
            let pivots = full.column_space_pivots();
            debug_assert!(pivots.len() == d && pivots.iter().take(b.cols).copied().eq(0..b.cols));
            let unit_cols: Vec<usize> = pivots.iter().skip(b.cols).map(|&c| c - b.cols).collect();
            let all_rows: Vec<usize> = (0..d).collect();
            let c = Matrix::identity(self.field, d).submatrix(&all_rows, &unit_cols);
            let f = c.hstack(b).expect("row counts agree");
            let finv = f.inverse().expect("basis completion is invertible");
            let p = finv.submatrix(&(0..c.cols).collect::<Vec<_>>(), &all_rows);
            let r = finv.submatrix(&(c.cols..d).collect::<Vec<_>>(), &all_rows);
            out.push(RadicalSplitting {
                inclusion: b.clone(),
                complement: c,
                quotient_proj: p,
                radical_proj: r,
            });
        }
        out
    }

    /// The separation of a radical-square-zero representation: vertex v
    /// carries the radical quotient, its primed twin carries the radical,
    /// and each arrow acts by the induced map quotient -> radical.
    pub fn separate(&self) -> Result<Rep, RepError> {
        if !self.radical_square_zero() {
            return Err(RepError::RadicalSquareNotZero);
        }
        let split = self.radical_splitting();
        let sq = Arc::new(crate::quiver::separated_quiver(&self.quiver));
        let nv = self.quiver.vertices.len();
        let mut dims = vec![0usize; 2 * nv];
        for v in 0..nv {
            dims[v] = split[v].quotient_proj.rows;
            dims[nv + v] = split[v].inclusion.cols;
        }
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, arrow) in self.quiver.arrows.iter().enumerate() {
            let s = self.quiver.vertex_index(arrow.src).unwrap();
            let t = self.quiver.vertex_index(arrow.tgt).unwrap();
            // induced map (M/JM)_s -> (JM)_t: lift along the complement,
            // apply the arrow, read off radical coordinates
            let m = split[t]
                .radical_proj
                .mul(&self.maps[a])
                .and_then(|x| x.mul(&split[s].complement))
                .expect("shapes agree");
            maps.push(m);
        }
        Rep::new(sq, self.field, dims, maps)
    }

    /// True when the radical fills the whole space at every sink vertex.
    pub fn is_separated(&self) -> bool {
        let (rad, _) = self.radical();
        self.quiver.vertices.iter().enumerate().all(|(v, &vid)| {
            let is_sink = self.quiver.arrows_out_of(vid).is_empty();
            !is_sink || rad.dims[v] == self.dims[v]
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut dims = serde_json::Map::new();
        for (v, &vid) in self.quiver.vertices.iter().enumerate() {
            dims.insert(vid.to_string(), serde_json::json!(self.dims[v]));
        }
        let mut maps = serde_json::Map::new();
        for (a, arrow) in self.quiver.arrows.iter().enumerate() {
            maps.insert(arrow.id.clone(), matrix_to_json(&self.maps[a]));
        }
        serde_json::json!({ "dims": dims, "maps": maps })
    }

    /// Parse `{"dims": {vertex: n}, "maps": {arrowId: [[..]]}}` over a known
    /// quiver. Omitted maps default to zero; omitted dims default to 0.
    pub fn from_json(
        quiver: Arc<BoundQuiver>,
        field: Field,
        value: &serde_json::Value,
    ) -> Result<Rep, RepError> {
        let obj = value
            .as_object()
            .ok_or_else(|| RepError::BadJson("expected object".into()))?;
        let mut dims = vec![0usize; quiver.vertices.len()];
        if let Some(d) = obj.get("dims") {
            let d = d
                .as_object()
                .ok_or_else(|| RepError::BadJson("dims must be an object".into()))?;
            for (key, val) in d {
                let vid = parse_vertex(key)
                    .ok_or_else(|| RepError::BadJson(format!("bad vertex key {key}")))?;
                let v = quiver
                    .vertex_index(vid)
                    .ok_or_else(|| RepError::BadJson(format!("unknown vertex {key}")))?;
                dims[v] = val
                    .as_u64()
                    .ok_or_else(|| RepError::BadJson(format!("dims[{key}] must be a nonnegative integer")))?
                    as usize;
            }
        }
        let mut maps = Vec::with_capacity(quiver.arrows.len());
        for arrow in &quiver.arrows {
            let s = quiver.vertex_index(arrow.src).unwrap();
            let t = quiver.vertex_index(arrow.tgt).unwrap();
            maps.push(Matrix::zeros(field, dims[t], dims[s]));
        }
        if let Some(m) = obj.get("maps") {
            let m = m
                .as_object()
                .ok_or_else(|| RepError::BadJson("maps must be an object".into()))?;
            for (key, val) in m {
                let a = quiver
                    .arrow_index(key)
                    .ok_or_else(|| RepError::BadJson(format!("unknown arrow {key}")))?;
                let arrow = &quiver.arrows[a];
                let s = quiver.vertex_index(arrow.src).unwrap();
                let t = quiver.vertex_index(arrow.tgt).unwrap();
                maps[a] = matrix_from_json(&field, dims[t], dims[s], val)
                    .map_err(|e| RepError::BadJson(format!("maps[{key}]: {e}")))?;
            }
        }
        Rep::new(quiver, field, dims, maps)
    }
}

/// Complement and projection data for the radical at one vertex.
#[derive(Clone, Debug)]
pub struct RadicalSplitting {
    pub inclusion: Matrix,
    pub complement: Matrix,
    pub quotient_proj: Matrix,
    pub radical_proj: Matrix,
}

/// Inverse to separation: a representation of the separated quiver of `q`
/// becomes a radical-square-zero representation of `q` with vertex spaces
/// Y_v + Y_v' and strictly lower-triangular arrow blocks.
pub fn unseparate(q: &BoundQuiver, y: &Rep) -> Result<Rep, RepError> {
    let expected = crate::quiver::separated_quiver(q);
    if *y.quiver != expected {
        return Err(RepError::QuiverMismatch(
            "input must live over the separated quiver".into(),
        ));
    }
    let nv = q.vertices.len();
    let dims: Vec<usize> = (0..nv).map(|v| y.dims[v] + y.dims[nv + v]).collect();
    let mut maps = Vec::with_capacity(q.arrows.len());
    for (a, arrow) in q.arrows.iter().enumerate() {
        let s = q.vertex_index(arrow.src).unwrap();
        let t = q.vertex_index(arrow.tgt).unwrap();
        let mut m = Matrix::zeros(y.field, dims[t], dims[s]);
        // block [[0, 0], [Y_a, 0]]: unprimed source coordinates feed the
        // primed part of the target
        for i in 0..y.dims[nv + t] {
            for j in 0..y.dims[s] {
                m.set(y.dims[t] + i, j, y.maps[a].get(i, j).clone());
            }
        }
        maps.push(m);
    }
    Rep::new(
        Arc::new(q.clone()),
        y.field,
        dims,
        maps,
    )
}

pub(crate) fn matrix_to_json(m: &Matrix) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = (0..m.rows)
        .map(|i| {
            serde_json::Value::Array((0..m.cols).map(|j| m.get(i, j).to_json()).collect())
        })
        .collect();
    serde_json::Value::Array(rows)
}

pub(crate) fn matrix_from_json(
    field: &Field,
    rows: usize,
    cols: usize,
    value: &serde_json::Value,
) -> Result<Matrix, RepError> {
    let arr = value
        .as_array()
        .ok_or_else(|| RepError::BadJson("matrix must be an array of rows".into()))?;
    if arr.len() != rows {
        return Err(RepError::BadJson(format!(
            "expected {rows} rows, got {}",
            arr.len()
        )));
    }
    let mut m = Matrix::zeros(*field, rows, cols);
    for (i, r) in arr.iter().enumerate() {
        let r = r
            .as_array()
            .ok_or_else(|| RepError::BadJson("matrix rows must be arrays".into()))?;
        if r.len() != cols {
            return Err(RepError::BadJson(format!(
                "expected {cols} columns, got {}",
                r.len()
            )));
        }
        for (j, e) in r.iter().enumerate() {
            m.set(
                i,
                j,
                field
                    .scalar_from_json(e)
                    .map_err(|e| RepError::BadJson(e.to_string()))?,
            );
        }
    }
    Ok(m)
}

/// Parse a vertex written the way `VertexId` displays: `3`, `(0,2)`, with an
/// optional trailing prime.
pub fn parse_vertex(s: &str) -> Option<VertexId> {
    let (body, primed) = match s.strip_suffix('\'') {
        Some(b) => (b, true),
        None => (s, false),
    };
    let base = if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
        let (x, y) = inner.split_once(',')?;
        VertexId::Pair(x.trim().parse().ok()?, y.trim().parse().ok()?)
    } else {
        VertexId::Plain(body.trim().parse().ok()?)
    };
    Some(if primed { base.primed() } else { base })
}

/// Basis of the space of representation homomorphisms x -> y, each element
/// given as one matrix per vertex, found by solving the arrow commutation
/// system.
pub fn hom_basis(x: &Rep, y: &Rep) -> Result<Vec<Vec<Matrix>>, RepError> {
    if x.quiver != y.quiver {
        return Err(RepError::QuiverMismatch(
            "hom spaces need a common quiver".into(),
        ));
    }
    if x.field != y.field {
        return Err(RepError::Shape("hom spaces need a common field".into()));
    }
    let field = x.field;
    let nv = x.quiver.vertices.len();
    let mut offsets = vec![0usize; nv + 1];
    for v in 0..nv {
        offsets[v + 1] = offsets[v] + y.dims[v] * x.dims[v];
    }
    let unknowns = offsets[nv];
    let entry_index = |v: usize, r: usize, c: usize, xd: usize| offsets[v] + r * xd + c;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (a, arrow) in x.quiver.arrows.iter().enumerate() {
        let s = x.quiver.vertex_index(arrow.src).unwrap();
        let t = x.quiver.vertex_index(arrow.tgt).unwrap();
        // f_t * X_a - Y_a * f_s = 0, one equation per (target row, source col)
        for i in 0..y.dims[t] {
            for j in 0..x.dims[s] {
                let mut row = vec![field.zero(); unknowns];
                for k in 0..x.dims[t] {
                    let idx = entry_index(t, i, k, x.dims[t]);
                    row[idx] = row[idx].add(x.maps[a].get(k, j));
                }
                for k in 0..y.dims[s] {
                    let idx = entry_index(s, k, j, x.dims[s]);
                    row[idx] = row[idx].sub(y.maps[a].get(i, k));
                }
                rows.push(row);
            }
        }
    }
    let system = if rows.is_empty() {
        Matrix::zeros(field, 0, unknowns)
    } else {
        Matrix::from_rows(field, rows).expect("rows have equal length")
    };
    let kernel = system.kernel_basis();
    let mut out = Vec::with_capacity(kernel.len());
    for k in &kernel {
        let mut mats = Vec::with_capacity(nv);
        for v in 0..nv {
            let mut m = Matrix::zeros(field, y.dims[v], x.dims[v]);
            for r in 0..y.dims[v] {
                for c in 0..x.dims[v] {
                    m.set(r, c, k.get(entry_index(v, r, c, x.dims[v]), 0).clone());
                }
            }
            mats.push(m);
        }
        out.push(mats);
    }
    Ok(out)
}

/// Isomorphism check by explicit matrices: phi_v X_a = Y_a phi_v blockwise
/// with every phi_v invertible. `phi` is indexed by vertex position.
pub fn is_rep_iso(x: &Rep, y: &Rep, phi: &[Matrix]) -> bool {
    if x.quiver != y.quiver || x.field != y.field || phi.len() != x.quiver.vertices.len() {
        return false;
    }
    for (v, p) in phi.iter().enumerate() {
        if p.rows != y.dims[v] || p.cols != x.dims[v] || p.rows != p.cols {
            return false;
        }
        if p.inverse().is_none() {
            return false;
        }
    }
    for (a, arrow) in x.quiver.arrows.iter().enumerate() {
        let s = x.quiver.vertex_index(arrow.src).unwrap();
        let t = x.quiver.vertex_index(arrow.tgt).unwrap();
        let lhs = phi[t].mul(&x.maps[a]).expect("shapes agree");
        let rhs = y.maps[a].mul(&phi[s]).expect("shapes agree");
        if lhs != rhs {
            return false;
        }
    }
    true
}
