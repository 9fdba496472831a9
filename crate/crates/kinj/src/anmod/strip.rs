//! Removing contractible direct summands from a complex, with a certified
//! homotopy equivalence as the receipt.
//!
//! A contractible summand shows up as an invertible coefficient inside a
//! differential: an identity component I_j -> I_j whose id-coefficient is
//! nonzero (for n = 1 the d-coefficient rides along and e = a id + b d is
//! still invertible when a != 0). One elimination step splits that rank-one
//! piece off by the usual Gaussian lemma for complexes: if the differential
//! out of degree t is [[e, f], [g, h]] with e invertible, the complex is
//! homotopy equivalent to the one with e's row and column removed and
//! h - g e^{-1} f in their place. The projection, inclusion, and homotopy
//! of that equivalence are small explicit block maps, and iterating them
//! composes into a witness for the whole strip.
//!
//! Periodic tails need no special casing: the junction condition already
//! forbids identity components in the boundary differential next to a
//! periodic tail, so no pivot is ever chosen there and the boundary columns
//! keep the exact multiplicities the tails continue.

use super::complex::InjComplex;
use super::maps::{BlockMap, GradedMap};
use crate::exactlin::{Field, Matrix};

/// A stripped complex together with the homotopy equivalence data relating
/// it to the input: `onto` and `into` are degree-0 chain maps with
/// onto o into = id on the stripped complex and
/// id - into o onto = d H + H d on the original.
#[derive(Clone, Debug)]
pub struct StripResult {
    pub complex: InjComplex,
    pub onto: GradedMap,
    pub into: GradedMap,
    pub homotopy: GradedMap,
    pub original: InjComplex,
}

/// (size - 1) x size matrix dropping one coordinate.
fn deletion(field: Field, size: usize, remove: usize) -> Matrix {
    let mut m = Matrix::zeros(field, size - 1, size);
    for i in 0..size - 1 {
        let col = if i < remove { i } else { i + 1 };
        m.set(i, col, field.one());
    }
    m
}

/// size x (size - 1) matrix embedding with a zero row at one coordinate.
fn inclusion(field: Field, size: usize, at: usize) -> Matrix {
    deletion(field, size, at).transpose()
}

fn kept_index(i: usize, removed: usize) -> usize {
    if i < removed {
        i
    } else {
        i - 1
    }
}

struct Pivot {
    t: usize,
    j: usize,
    r: usize,
    c: usize,
}

fn find_pivot(c: &InjComplex) -> Option<Pivot> {
    for (t, b) in c.diff.iter().enumerate() {
        for j in 1..=c.n() {
            let m = &b.id_part[j - 1];
            for r in 0..m.rows {
                for col in 0..m.cols {
                    if !m.get(r, col).is_zero() {
                        return Some(Pivot { t, j, r, c: col });
                    }
                }
            }
        }
    }
    None
}

pub fn strip_contractibles(x: &InjComplex) -> StripResult {
    let field = x.field;
    let n = x.n();
    let (lo, hi) = x.window();
    let mut cur = x.clone();
    let mut onto = GradedMap::new(
        0,
        lo,
        x.mult.iter().map(|m| BlockMap::identity(field, m)).collect(),
    );
    let mut into = onto.clone();
    let mut homotopy = GradedMap::new(
        -1,
        lo + 1,
        (1..x.mult.len())
            .map(|t| BlockMap::zero(field, &x.mult[t], &x.mult[t - 1]))
            .collect(),
    );

    while let Some(p) = find_pivot(&cur) {
        let Pivot { t, j, r, c } = p;
        let pj = if j == 1 { n } else { j - 1 };
        let nj = if j == n { 1 } else { j + 1 };
        let a = cur.diff[t].id_part[j - 1].get(r, c).clone();
        let b = if n == 1 {
            cur.diff[t].d_part[0].get(r, c).clone()
        } else {
            field.zero()
        };
        let ai = a.inv().expect("pivot is nonzero");
        // e^{-1} = ai id + e_inv_d d, inverting e = a id + b d
        let e_inv_d = b.mul(&ai).mul(&ai).neg();

        let src0 = cur.mult[t].clone();
        let src1 = cur.mult[t + 1].clone();
        let mut kept0 = src0.clone();
        kept0[j - 1] -= 1;
        let mut kept1 = src1.clone();
        kept1[j - 1] -= 1;

        // projection X^t -> S: forget the pivot source coordinate
        let mut p_t = BlockMap::zero(field, &src0, &kept0);
        for s in 1..=n {
            p_t.id_part[s - 1] = if s == j {
                deletion(field, src0[j - 1], c)
            } else {
                Matrix::identity(field, src0[s - 1])
            };
        }

        // inclusion T -> X^{t+1}: embed past the pivot target coordinate
        let mut i_t1 = BlockMap::zero(field, &kept1, &src1);
        for s in 1..=n {
            i_t1.id_part[s - 1] = if s == j {
                inclusion(field, src1[j - 1], r)
            } else {
                Matrix::identity(field, src1[s - 1])
            };
        }

        // projection X^{t+1} -> T: forget the pivot target, and reroute what
        // it carried through -g e^{-1} into the kept coordinates
        let mut p_t1 = BlockMap::zero(field, &src1, &kept1);
        for s in 1..=n {
            p_t1.id_part[s - 1] = if s == j {
                deletion(field, src1[j - 1], r)
            } else {
                Matrix::identity(field, src1[s - 1])
            };
        }
        let idb = &cur.diff[t].id_part[j - 1];
        let db = &cur.diff[t].d_part[j - 1];
        for u in 0..src1[j - 1] {
            if u == r {
                continue;
            }
            let coeff = idb.get(u, c).mul(&ai).neg();
            p_t1.id_part[j - 1].set(kept_index(u, r), r, coeff);
        }
        for v in 0..src1[pj - 1] {
            if pj == j && v == r {
                continue;
            }
            let mut coeff = db.get(v, c).mul(&ai);
            if n == 1 {
                coeff = coeff.add(&idb.get(v, c).mul(&e_inv_d));
            }
            let row = if pj == j { kept_index(v, r) } else { v };
            p_t1.d_part[j - 1].set(row, r, coeff.neg());
        }

        // inclusion S -> X^t: embed past the pivot source, and feed the
        // pivot coordinate -e^{-1} f of what the kept coordinates emit
        let mut i_t = BlockMap::zero(field, &kept0, &src0);
        for s in 1..=n {
            i_t.id_part[s - 1] = if s == j {
                inclusion(field, src0[j - 1], c)
            } else {
                Matrix::identity(field, src0[s - 1])
            };
        }
        for s in 0..src0[j - 1] {
            if s == c {
                continue;
            }
            let coeff = idb.get(r, s).mul(&ai).neg();
            i_t.id_part[j - 1].set(c, kept_index(s, c), coeff);
        }
        let db_next = &cur.diff[t].d_part[nj - 1];
        for s in 0..src0[nj - 1] {
            if nj == j && s == c {
                continue;
            }
            let mut coeff = db_next.get(r, s).mul(&ai);
            if n == 1 {
                coeff = coeff.add(&idb.get(r, s).mul(&e_inv_d));
            }
            let col = if nj == j { kept_index(s, c) } else { s };
            i_t.d_part[nj - 1].set(c, col, coeff.neg());
        }

        // contracting homotopy of the removed summand: e^{-1} back along
        // the pivot
        let mut h_step = BlockMap::zero(field, &src1, &src0);
        h_step.id_part[j - 1].set(c, r, ai.clone());
        if n == 1 {
            h_step.d_part[0].set(c, r, e_inv_d.clone());
        }

        // accumulate the witness; the homotopy update must see the
        // pre-step projection and inclusion
        let deg_t = lo + t as i64;
        let h_upd = into
            .component_at(deg_t)
            .unwrap()
            .compose(&h_step)
            .compose(onto.component_at(deg_t + 1).unwrap());
        let hc = homotopy.component_at_mut(deg_t + 1).unwrap();
        *hc = hc.add(&h_upd);

        let pc = onto.component_at_mut(deg_t).unwrap();
        *pc = p_t.compose(pc);
        let pc1 = onto.component_at_mut(deg_t + 1).unwrap();
        *pc1 = p_t1.compose(pc1);
        let ic = into.component_at_mut(deg_t).unwrap();
        *ic = ic.compose(&i_t);
        let ic1 = into.component_at_mut(deg_t + 1).unwrap();
        *ic1 = ic1.compose(&i_t1);

        // the complex shrinks: Schur complement in the middle, plain row
        // and column excisions next door
        if t > 0 {
            cur.diff[t - 1] = p_t.compose(&cur.diff[t - 1]);
        }
        cur.diff[t] = p_t1.compose(&cur.diff[t]).compose(&i_t);
        if t + 1 < cur.diff.len() {
            cur.diff[t + 1] = cur.diff[t + 1].compose(&i_t1);
        }
        cur.mult[t][j - 1] -= 1;
        cur.mult[t + 1][j - 1] -= 1;
        debug_assert!(cur.validate().is_ok());
    }

    debug_assert!(hi == cur.hi());
    StripResult {
        complex: cur,
        onto,
        into,
        homotopy,
        original: x.clone(),
    }
}

impl StripResult {
    /// Check every identity the strip promises, by plain matrix arithmetic:
    /// validity and radicality of the stripped complex, chain-map equations
    /// for both directions, onto o into = id, and the homotopy equation
    /// id - into o onto = dH + Hd on the original.
    pub fn verify(&self) -> bool {
        let x = &self.original;
        let y = &self.complex;
        let field = x.field;
        if y.validate().is_err() || x.window() != y.window() {
            return false;
        }
        if !y.diff.iter().all(BlockMap::is_radical) {
            return false;
        }
        let (lo, hi) = x.window();
        for k in lo..hi {
            let p_next = self.onto.component_at(k + 1).unwrap();
            let p_here = self.onto.component_at(k).unwrap();
            if !y
                .diff_at(k)
                .compose(p_here)
                .sub(&p_next.compose(&x.diff_at(k)))
                .is_zero()
            {
                return false;
            }
            let i_next = self.into.component_at(k + 1).unwrap();
            let i_here = self.into.component_at(k).unwrap();
            if !x
                .diff_at(k)
                .compose(i_here)
                .sub(&i_next.compose(&y.diff_at(k)))
                .is_zero()
            {
                return false;
            }
        }
        for k in lo..=hi {
            let p = self.onto.component_at(k).unwrap();
            let i = self.into.component_at(k).unwrap();
            let ident_y = BlockMap::identity(field, &y.mult_at(k));
            if !p.compose(i).sub(&ident_y).is_zero() {
                return false;
            }
            let h_here = self
                .homotopy
                .component_at(k)
                .cloned()
                .unwrap_or_else(|| BlockMap::zero(field, &x.mult_at(k), &x.mult_at(k - 1)));
            let h_next = self
                .homotopy
                .component_at(k + 1)
                .cloned()
                .unwrap_or_else(|| BlockMap::zero(field, &x.mult_at(k + 1), &x.mult_at(k)));
            let boundary = x
                .diff_at(k - 1)
                .compose(&h_here)
                .add(&h_next.compose(&x.diff_at(k)));
            let ident_x = BlockMap::identity(field, &x.mult_at(k));
            if !ident_x.sub(&i.compose(p)).sub(&boundary).is_zero() {
                return false;
            }
        }
        true
    }
}
