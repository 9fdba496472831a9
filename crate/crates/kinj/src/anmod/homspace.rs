//! Morphism spaces in the homotopy category, computed on growing windows.
//!
//! Everything here treats a pair of complexes through finite windows. Chain
//! maps on a window [wlo, whi] are solutions of the commutation equations
//! between consecutive stored or tail differentials; null-homotopic maps
//! are the boundaries d_Y h + h d_X of homotopies h whose components run
//! over [wlo, whi + 1]. The extra degree on the homotopy side matters: a
//! homotopy component just outside the window still contributes to a
//! boundary inside it, and without it the computation overcounts Hom for
//! complexes with infinite tails (the identity-like classes of the doubly
//! infinite exact complex die only through such homotopies).
//!
//! `hom_k_dim` grows the window by one period n on each side per round and
//! reports the dimension once two consecutive rounds agree, together with
//! the window width that confirmed it.

use super::complex::{ComplexError, InjComplex};
use super::maps::{BlockMap, GradedMap};
use crate::exactlin::Matrix;

/// Window width cutoff used by callers that do not pick their own.
pub const DEFAULT_MAX_WINDOW: i64 = 64;

/// Result of the stabilizing Hom computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomKOutcome {
    /// Two consecutive window rounds agreed; `stable_at` is the width of
    /// the confirming window.
    Stable { dim: usize, stable_at: i64 },
    /// The window limit was reached first; the last computed dimension and
    /// window width are reported as evidence, not as an answer.
    Unstable { dim_at_cutoff: usize, window_width: i64 },
}

impl HomKOutcome {
    pub fn to_json(&self) -> serde_json::Value {
        match *self {
            HomKOutcome::Stable { dim, stable_at } => {
                serde_json::json!({ "dim": dim, "stableAt": stable_at })
            }
            HomKOutcome::Unstable {
                dim_at_cutoff,
                window_width,
            } => serde_json::json!({
                "unstable": true,
                "dimAtCutoff": dim_at_cutoff,
                "windowWidth": window_width,
            }),
        }
    }

    /// The stabilized dimension, when there is one.
    pub fn stable_dim(&self) -> Option<usize> {
        match *self {
            HomKOutcome::Stable { dim, .. } => Some(dim),
            HomKOutcome::Unstable { .. } => None,
        }
    }
}

/// Flat coordinates for the blocks of a graded map between two complexes.
struct Layout {
    lo: i64,
    src: Vec<Vec<usize>>,
    tgt: Vec<Vec<usize>>,
    id_off: Vec<Vec<usize>>,
    d_off: Vec<Vec<usize>>,
    total: usize,
}

fn prev(n: usize, j: usize) -> usize {
    if j == 1 {
        n
    } else {
        j - 1
    }
}

impl Layout {
    fn build(x: &InjComplex, y: &InjComplex, degree: i64, wlo: i64, whi: i64) -> Layout {
        let n = x.n();
        let len = (whi - wlo + 1) as usize;
        let mut src = Vec::with_capacity(len);
        let mut tgt = Vec::with_capacity(len);
        let mut id_off = Vec::with_capacity(len);
        let mut d_off = Vec::with_capacity(len);
        let mut total = 0usize;
        for t in 0..len {
            let i = wlo + t as i64;
            let s = x.mult_at(i);
            let g = y.mult_at(i + degree);
            let mut io = vec![0usize; n];
            let mut dofs = vec![0usize; n];
            for j in 1..=n {
                io[j - 1] = total;
                total += g[j - 1] * s[j - 1];
            }
            for j in 1..=n {
                dofs[j - 1] = total;
                total += g[prev(n, j) - 1] * s[j - 1];
            }
            src.push(s);
            tgt.push(g);
            id_off.push(io);
            d_off.push(dofs);
        }
        Layout {
            lo: wlo,
            src,
            tgt,
            id_off,
            d_off,
            total,
        }
    }

    fn len(&self) -> usize {
        self.src.len()
    }

    fn id_slot(&self, t: usize, j: usize, r: usize, c: usize) -> usize {
        self.id_off[t][j - 1] + r * self.src[t][j - 1] + c
    }

    fn d_slot(&self, t: usize, j: usize, r: usize, c: usize) -> usize {
        self.d_off[t][j - 1] + r * self.src[t][j - 1] + c
    }

    /// Rebuild a graded map from one flat column vector.
    fn unpack(&self, degree: i64, col: &Matrix) -> GradedMap {
        let n = self.src[0].len();
        let field = col.field();
        let comps = (0..self.len())
            .map(|t| {
                let mut b = BlockMap::zero(field, &self.src[t], &self.tgt[t]);
                for j in 1..=n {
                    for r in 0..self.tgt[t][j - 1] {
                        for c in 0..self.src[t][j - 1] {
                            b.id_part[j - 1].set(r, c, col.get(self.id_slot(t, j, r, c), 0).clone());
                        }
                    }
                    for r in 0..self.tgt[t][prev(n, j) - 1] {
                        for c in 0..self.src[t][j - 1] {
                            b.d_part[j - 1].set(r, c, col.get(self.d_slot(t, j, r, c), 0).clone());
                        }
                    }
                }
                b
            })
            .collect();
        GradedMap::new(degree, self.lo, comps)
    }
}

fn accumulate(m: &mut Matrix, r: usize, c: usize, v: crate::exactlin::Scalar) {
    let cur = m.get(r, c).add(&v);
    m.set(r, c, cur);
}

/// The linear system whose kernel is the space of chain maps on the window.
fn chain_constraints(x: &InjComplex, y: &InjComplex, wlo: i64, whi: i64) -> (Matrix, Layout) {
    let n = x.n();
    let field = x.field;
    let lay = Layout::build(x, y, 0, wlo, whi);
    let mut nrows = 0usize;
    for t in 0..lay.len() - 1 {
        for j in 1..=n {
            nrows += lay.tgt[t + 1][j - 1] * lay.src[t][j - 1];
            nrows += lay.tgt[t + 1][prev(n, j) - 1] * lay.src[t][j - 1];
        }
    }
    let mut m = Matrix::zeros(field, nrows, lay.total);
    let mut row = 0usize;
    for t in 0..lay.len() - 1 {
        let i = wlo + t as i64;
        let dx = x.diff_at(i);
        let dy = y.diff_at(i);
        for j in 1..=n {
            let pj = prev(n, j);
            // identity block of f^{i+1} dx - dy f^i
            for r in 0..lay.tgt[t + 1][j - 1] {
                for c in 0..lay.src[t][j - 1] {
                    for mm in 0..lay.src[t + 1][j - 1] {
                        accumulate(
                            &mut m,
                            row,
                            lay.id_slot(t + 1, j, r, mm),
                            dx.id_part[j - 1].get(mm, c).clone(),
                        );
                    }
                    for mm in 0..lay.tgt[t][j - 1] {
                        accumulate(
                            &mut m,
                            row,
                            lay.id_slot(t, j, mm, c),
                            dy.id_part[j - 1].get(r, mm).neg(),
                        );
                    }
                    row += 1;
                }
            }
            // socle-killing block of f^{i+1} dx - dy f^i
            for r in 0..lay.tgt[t + 1][pj - 1] {
                for c in 0..lay.src[t][j - 1] {
                    for mm in 0..lay.src[t + 1][j - 1] {
                        accumulate(
                            &mut m,
                            row,
                            lay.d_slot(t + 1, j, r, mm),
                            dx.id_part[j - 1].get(mm, c).clone(),
                        );
                    }
                    for mm in 0..lay.src[t + 1][pj - 1] {
                        accumulate(
                            &mut m,
                            row,
                            lay.id_slot(t + 1, pj, r, mm),
                            dx.d_part[j - 1].get(mm, c).clone(),
                        );
                    }
                    for mm in 0..lay.tgt[t][j - 1] {
                        accumulate(
                            &mut m,
                            row,
                            lay.id_slot(t, j, mm, c),
                            dy.d_part[j - 1].get(r, mm).neg(),
                        );
                    }
                    for mm in 0..lay.tgt[t][pj - 1] {
                        accumulate(
                            &mut m,
                            row,
                            lay.d_slot(t, j, mm, c),
                            dy.id_part[pj - 1].get(r, mm).neg(),
                        );
                    }
                    row += 1;
                }
            }
        }
    }
    debug_assert_eq!(row, nrows);
    (m, lay)
}

/// The operator sending a homotopy (components over [wlo, whi + 1]) to its
/// boundary d_Y h + h d_X, written from homotopy coordinates to chain map
/// coordinates over [wlo, whi].
fn boundary_operator(x: &InjComplex, y: &InjComplex, wlo: i64, whi: i64) -> (Matrix, Layout, Layout) {
    let n = x.n();
    let field = x.field;
    let flay = Layout::build(x, y, 0, wlo, whi);
    let hlay = Layout::build(x, y, -1, wlo, whi + 1);
    let mut m = Matrix::zeros(field, flay.total, hlay.total);
    for t in 0..flay.len() {
        let k = wlo + t as i64;
        let dy_in = y.diff_at(k - 1);
        let dx_out = x.diff_at(k);
        let th = t;
        let th1 = t + 1;
        for j in 1..=n {
            let pj = prev(n, j);
            for r in 0..flay.tgt[t][j - 1] {
                for c in 0..flay.src[t][j - 1] {
                    let row = flay.id_slot(t, j, r, c);
                    for mm in 0..hlay.tgt[th][j - 1] {
                        accumulate(
                            &mut m,
                            row,
                            hlay.id_slot(th, j, mm, c),
                            dy_in.id_part[j - 1].get(r, mm).clone(),
                        );
                    }
                    for mm in 0..hlay.src[th1][j - 1] {
                        accumulate(
                            &mut m,
                            row,
                            hlay.id_slot(th1, j, r, mm),
                            dx_out.id_part[j - 1].get(mm, c).clone(),
                        );
                    }
                }
            }
            for r in 0..flay.tgt[t][pj - 1] {
                for c in 0..flay.src[t][j - 1] {
                    let row = flay.d_slot(t, j, r, c);
                    for mm in 0..hlay.tgt[th][j - 1] {
                        accumulate(
                            &mut m,
                            row,
                            hlay.id_slot(th, j, mm, c),
                            dy_in.d_part[j - 1].get(r, mm).clone(),
                        );
                    }
                    for mm in 0..hlay.tgt[th][pj - 1] {
                        accumulate(
                            &mut m,
                            row,
                            hlay.d_slot(th, j, mm, c),
                            dy_in.id_part[pj - 1].get(r, mm).clone(),
                        );
                    }
                    for mm in 0..hlay.src[th1][j - 1] {
                        accumulate(
                            &mut m,
                            row,
                            hlay.d_slot(th1, j, r, mm),
                            dx_out.id_part[j - 1].get(mm, c).clone(),
                        );
                    }
                    for mm in 0..hlay.src[th1][pj - 1] {
                        accumulate(
                            &mut m,
                            row,
                            hlay.id_slot(th1, pj, r, mm),
                            dx_out.d_part[j - 1].get(mm, c).clone(),
                        );
                    }
                }
            }
        }
    }
    (m, flay, hlay)
}

fn check_pair(x: &InjComplex, y: &InjComplex) {
    assert_eq!(x.n(), y.n(), "complexes must share the algebra");
    assert_eq!(x.field, y.field, "complexes must share the field");
}

/// Basis of the chain maps x -> y whose components live on [wlo, whi],
/// commuting with the (tail-aware) differentials inside the window.
pub fn chain_map_basis(x: &InjComplex, y: &InjComplex, wlo: i64, whi: i64) -> Vec<GradedMap> {
    check_pair(x, y);
    assert!(wlo <= whi);
    let (m, lay) = chain_constraints(x, y, wlo, whi);
    m.kernel_basis()
        .iter()
        .map(|col| lay.unpack(0, col))
        .collect()
}

/// Basis of the null-homotopic chain maps on the window: the image of
/// h |-> d_Y h + h d_X over homotopies with components on [wlo, whi + 1].
pub fn null_homotopic_basis(x: &InjComplex, y: &InjComplex, wlo: i64, whi: i64) -> Vec<GradedMap> {
    check_pair(x, y);
    assert!(wlo <= whi);
    let (op, flay, _) = boundary_operator(x, y, wlo, whi);
    op.column_space_pivots()
        .into_iter()
        .map(|p| {
            let mut col = Matrix::zeros(op.field(), op.rows, 1);
            for (r, v) in op.column(p).into_iter().enumerate() {
                col.set(r, 0, v);
            }
            flay.unpack(0, &col)
        })
        .collect()
}

/// Hom dimension on one window: chain maps modulo boundaries.
pub fn window_hom_dim(x: &InjComplex, y: &InjComplex, wlo: i64, whi: i64) -> usize {
    check_pair(x, y);
    assert!(wlo <= whi);
    let (cm, lay) = chain_constraints(x, y, wlo, whi);
    let chain_dim = lay.total - cm.rank();
    let (op, _, _) = boundary_operator(x, y, wlo, whi);
    chain_dim - op.rank()
}

/// The boundary d_Y h + h d_X of a degree -1 map, materialized over
/// [wlo, whi]; components of h outside its stored window count as zero.
pub fn homotopy_boundary(
    x: &InjComplex,
    y: &InjComplex,
    h: &GradedMap,
    wlo: i64,
    whi: i64,
) -> GradedMap {
    check_pair(x, y);
    assert_eq!(h.degree, -1);
    let field = x.field;
    let comp_or_zero = |k: i64| -> BlockMap {
        h.component_at(k)
            .cloned()
            .unwrap_or_else(|| BlockMap::zero(field, &x.mult_at(k), &y.mult_at(k - 1)))
    };
    let comps = (wlo..=whi)
        .map(|k| {
            let a = y.diff_at(k - 1).compose(&comp_or_zero(k));
            let b = comp_or_zero(k + 1).compose(&x.diff_at(k));
            a.add(&b)
        })
        .collect();
    GradedMap::new(0, wlo, comps)
}

/// Does f commute with the differentials at every degree interior to its
/// stored window? (The window edges are unconstrained: f is a chain map of
/// the window truncations.)
pub fn is_chain_map(x: &InjComplex, y: &InjComplex, f: &GradedMap) -> bool {
    check_pair(x, y);
    assert_eq!(f.degree, 0);
    for k in f.lo..f.hi() {
        let lhs = y.diff_at(k).compose(f.component_at(k).unwrap());
        let rhs = f.component_at(k + 1).unwrap().compose(&x.diff_at(k));
        if lhs.sub(&rhs).is_zero() {
            continue;
        }
        return false;
    }
    true
}

/// Hom dimension in the homotopy category, by stabilization over windows
/// that grow by one period n per round on each side of the common hull.
pub fn hom_k_dim(
    x: &InjComplex,
    y: &InjComplex,
    max_window: i64,
) -> Result<HomKOutcome, ComplexError> {
    if x.n() != y.n() {
        return Err(ComplexError::AlgebraMismatch(x.n(), y.n()));
    }
    if x.field != y.field {
        return Err(ComplexError::FieldMismatch);
    }
    let hull_lo = x.lo.min(y.lo);
    let hull_hi = x.hi().max(y.hi());
    let period = x.n() as i64;
    let mut prev_round: Option<(usize, i64)> = None;
    for t in 1.. {
        let wlo = hull_lo - t * period;
        let whi = hull_hi + t * period;
        let width = whi - wlo;
        if width > max_window {
            if let Some((dim, w)) = prev_round {
                return Ok(HomKOutcome::Unstable {
                    dim_at_cutoff: dim,
                    window_width: w,
                });
            }
        }
        let dim = window_hom_dim(x, y, wlo, whi);
        if let Some((p, _)) = prev_round {
            if p == dim {
                return Ok(HomKOutcome::Stable {
                    dim,
                    stable_at: width,
                });
            }
        }
        prev_round = Some((dim, width));
    }
    unreachable!()
}
