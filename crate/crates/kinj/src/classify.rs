//! Classification of windowed complexes of injectives into canonical
//! indecomposable labels.
//!
//! Every object of the homotopy category decomposes into shifted one-or-two
//! sided truncations of the doubly infinite exact complex. The algorithm is
//! the proof read as a pipeline: strip contractible summands, cut the
//! remaining radical complex into its strand representations (one linear
//! quiver rep per residue class), decompose each strand into interval
//! modules, and name each interval by the degrees it spans plus the
//! injective index at its anchor degree. Tail flags decide infinite ends;
//! window contents alone never do.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::anmod::algebra::AnAlgebra;
use crate::anmod::complex::{zero_complex, ComplexError, InjComplex, Tail};
use crate::anmod::maps::BlockMap;
use crate::anmod::strip::{strip_contractibles, StripResult};
use crate::exactlin::Field;
use crate::quiver::{Arrow, BoundQuiver, VertexId};
use crate::rep::intervals::{decompose_intervals, Interval, IntervalDecomposition};
use crate::rep::{Rep, RepError};

#[derive(thiserror::Error, Clone, Debug, PartialEq)]
pub enum ClassifyError {
    #[error("bad label: {0}")]
    BadLabel(String),
    #[error("bad window: {0}")]
    BadWindow(String),
    #[error("differential has identity components; strip contractibles first")]
    NotRadical,
    #[error("cohomology targets must be non-negative")]
    NegativeTarget,
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Canonical name of an indecomposable: the degree interval it occupies
/// (`None` start = unbounded below, `None` end = unbounded above) and the
/// index of the injective sitting at the start degree, read at degree 0
/// instead when the support is unbounded below. Raw truncation data
/// (l, m, r) and (l+nk, m+nk, r+nk) normalize to the same label.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CanonLabel {
    pub start: Option<i64>,
    pub end: Option<i64>,
    pub anchor: usize,
}

impl CanonLabel {
    pub fn new(
        start: Option<i64>,
        end: Option<i64>,
        anchor: usize,
        n: usize,
    ) -> Result<CanonLabel, ClassifyError> {
        if anchor == 0 || anchor > n {
            return Err(ClassifyError::BadLabel(format!(
                "anchor {anchor} is not an injective index for n = {n}"
            )));
        }
        if let (Some(l), Some(m)) = (start, end) {
            if l > m {
                return Err(ClassifyError::BadLabel(format!(
                    "start {l} exceeds end {m}"
                )));
            }
        }
        Ok(CanonLabel { start, end, anchor })
    }

    /// Normalize raw truncation data (l, m, r): truncate the doubly infinite
    /// complex to degrees [l, m], then shift by r. `None` keeps the
    /// corresponding side infinite.
    pub fn from_raw(
        n: usize,
        l: Option<i64>,
        m: Option<i64>,
        r: i64,
    ) -> Result<CanonLabel, ClassifyError> {
        let anchor_src = l.unwrap_or(r);
        let anchor = ((-anchor_src).rem_euclid(n as i64)) as usize + 1;
        CanonLabel::new(l.map(|v| v - r), m.map(|v| v - r), anchor, n)
    }

    pub fn bounded(&self) -> bool {
        self.start.is_some() && self.end.is_some()
    }

    fn sort_key(&self) -> (u8, i64, u8, i64, usize) {
        let (sa, sv) = match self.start {
            None => (0, 0),
            Some(v) => (1, v),
        };
        let (ea, ev) = match self.end {
            Some(v) => (0, v),
            None => (1, 0),
        };
        (sa, sv, ea, ev, self.anchor)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let side = |v: Option<i64>, inf: &str| match v {
            Some(x) => serde_json::Value::from(x),
            None => serde_json::Value::from(inf),
        };
        serde_json::json!({
            "start": side(self.start, "-inf"),
            "end": side(self.end, "+inf"),
            "anchor": self.anchor,
        })
    }

    pub fn from_json(v: &serde_json::Value, n: usize) -> Result<CanonLabel, ClassifyError> {
        let obj = v
            .as_object()
            .ok_or_else(|| ClassifyError::BadLabel("label must be a JSON object".into()))?;
        let side = |key: &str, infs: &[&str]| -> Result<Option<i64>, ClassifyError> {
            match obj.get(key) {
                Some(serde_json::Value::Number(x)) => x
                    .as_i64()
                    .map(Some)
                    .ok_or_else(|| ClassifyError::BadLabel(format!("{key} must be an integer"))),
                Some(serde_json::Value::String(s)) if infs.contains(&s.as_str()) => Ok(None),
                _ => Err(ClassifyError::BadLabel(format!(
                    "{key} must be an integer or \"{}\"",
                    infs[0]
                ))),
            }
        };
        let start = side("start", &["-inf"])?;
        let end = side("end", &["+inf", "inf"])?;
        let anchor = obj
            .get("anchor")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| ClassifyError::BadLabel("missing or bad \"anchor\"".into()))?;
        CanonLabel::new(start, end, anchor as usize, n)
    }

    /// Parse the compact `start:end:anchor` form, e.g. `0:1:1` or
    /// `-inf:+inf:2`.
    pub fn parse(s: &str, n: usize) -> Result<CanonLabel, ClassifyError> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(ClassifyError::BadLabel(format!(
                "expected start:end:anchor, got {s:?}"
            )));
        }
        let start = match parts[0] {
            "-inf" => None,
            t => Some(t.parse().map_err(|_| {
                ClassifyError::BadLabel(format!("bad start degree {t:?}"))
            })?),
        };
        let end = match parts[1] {
            "+inf" | "inf" => None,
            t => Some(t.parse().map_err(|_| {
                ClassifyError::BadLabel(format!("bad end degree {t:?}"))
            })?),
        };
        let anchor = parts[2]
            .parse()
            .map_err(|_| ClassifyError::BadLabel(format!("bad anchor {:?}", parts[2])))?;
        CanonLabel::new(start, end, anchor, n)
    }
}

impl Ord for CanonLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for CanonLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CanonLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.start {
            Some(v) => write!(f, "{v}")?,
            None => write!(f, "-inf")?,
        }
        match self.end {
            Some(v) => write!(f, ":{v}")?,
            None => write!(f, ":+inf")?,
        }
        write!(f, ":{}", self.anchor)
    }
}

pub type LabelMultiset = BTreeMap<CanonLabel, usize>;

pub fn labels_to_json(labels: &LabelMultiset) -> serde_json::Value {
    let arr: Vec<serde_json::Value> = labels
        .iter()
        .map(|(label, &mult)| {
            let mut v = label.to_json();
            v.as_object_mut()
                .unwrap()
                .insert("mult".into(), mult.into());
            v
        })
        .collect();
    serde_json::json!({ "labels": arr })
}

/// Residue class of a column: the strand through injective j at degree i.
fn residue(n: usize, i: i64, j: usize) -> usize {
    (i + j as i64).rem_euclid(n as i64) as usize
}

/// Injective index of strand c at degree i; inverse of [`residue`] in j.
fn strand_injective(n: usize, c: usize, i: i64) -> usize {
    (c as i64 - i - 1).rem_euclid(n as i64) as usize + 1
}

fn strand_quiver(lo: i64, hi: i64) -> Arc<BoundQuiver> {
    let vertices: Vec<VertexId> = (lo..=hi).map(VertexId::Plain).collect();
    let arrows: Vec<Arrow> = (lo..hi)
        .map(|i| Arrow {
            id: format!("f{i}"),
            src: VertexId::Plain(i),
            tgt: VertexId::Plain(i + 1),
        })
        .collect();
    Arc::new(BoundQuiver::new(vertices, arrows, vec![]).expect("line quivers are valid"))
}

/// Cut a radical complex into its strand representations, one rep of the
/// window's linear quiver per residue class c: vertex i carries the
/// multiplicity of injective j with (i + j) = c mod n, and the arrows are
/// the d-coefficient blocks. Concatenating the strands recovers the complex.
pub fn strands(x: &InjComplex) -> Result<Vec<Rep>, ClassifyError> {
    if !x.diff.iter().all(BlockMap::is_radical) {
        return Err(ClassifyError::NotRadical);
    }
    let n = x.n();
    let (lo, hi) = x.window();
    let quiver = strand_quiver(lo, hi);
    (0..n)
        .map(|c| {
            let dims: Vec<usize> = (lo..=hi)
                .map(|i| x.mult_at(i)[strand_injective(n, c, i) - 1])
                .collect();
            let maps = (lo..hi)
                .map(|i| {
                    let j = strand_injective(n, c, i);
                    x.diff[(i - lo) as usize].d_part[j - 1].clone()
                })
                .collect();
            Rep::new(quiver.clone(), x.field, dims, maps).map_err(ClassifyError::from)
        })
        .collect()
}

/// Full classification receipt: the label multiset plus everything needed
/// to re-check it by matrix arithmetic alone.
#[derive(Clone, Debug)]
pub struct ClassifyWitness {
    pub labels: LabelMultiset,
    pub strip: StripResult,
    pub strands: Vec<Rep>,
    pub decompositions: Vec<IntervalDecomposition>,
}

fn intervals_to_labels(
    n: usize,
    below: Tail,
    above: Tail,
    c: usize,
    intervals: &[Interval],
    out: &mut LabelMultiset,
) {
    for iv in intervals {
        let infinite_left = iv.clipped_left && below == Tail::Periodic;
        let infinite_right = iv.clipped_right && above == Tail::Periodic;
        let start = if infinite_left { None } else { Some(iv.a) };
        let end = if infinite_right { None } else { Some(iv.b) };
        let anchor = strand_injective(n, c, start.unwrap_or(0));
        let label = CanonLabel { start, end, anchor };
        *out.entry(label).or_insert(0) += iv.mult;
    }
}

pub fn classify_with_witness(x: &InjComplex) -> Result<ClassifyWitness, ClassifyError> {
    let strip = strip_contractibles(x);
    let y = &strip.complex;
    let reps = strands(y)?;
    let mut labels = LabelMultiset::new();
    let mut decompositions = Vec::with_capacity(reps.len());
    for (c, rep) in reps.iter().enumerate() {
        let dec = decompose_intervals(rep)?;
        let intervals = dec
            .labeled_intervals()
            .expect("strand windows are consecutive integer runs");
        intervals_to_labels(y.n(), y.below, y.above, c, &intervals, &mut labels);
        decompositions.push(dec);
    }
    Ok(ClassifyWitness {
        labels,
        strands: reps,
        decompositions,
        strip,
    })
}

pub fn classify_complex(x: &InjComplex) -> Result<LabelMultiset, ClassifyError> {
    classify_with_witness(x).map(|w| w.labels)
}

impl ClassifyWitness {
    /// Re-check the whole pipeline: the strip is a homotopy equivalence onto
    /// a radical complex, the strands are its verbatim d-blocks, each strand
    /// decomposition is a genuine isomorphism onto interval modules, and the
    /// stated labels are the intervals' names.
    pub fn verify(&self) -> bool {
        if !self.strip.verify() {
            return false;
        }
        let y = &self.strip.complex;
        match strands(y) {
            Ok(reps) if reps == self.strands => {}
            _ => return false,
        }
        if self.decompositions.len() != self.strands.len() {
            return false;
        }
        let mut labels = LabelMultiset::new();
        for (c, (rep, dec)) in self.strands.iter().zip(&self.decompositions).enumerate() {
            if !dec.verify(rep) {
                return false;
            }
            let intervals = match dec.labeled_intervals() {
                Some(iv) => iv,
                None => return false,
            };
            intervals_to_labels(y.n(), y.below, y.above, c, &intervals, &mut labels);
        }
        labels == self.labels
    }
}

/// Build the windowed complex a label names. Infinite ends are clipped at
/// the window and flagged periodic; finite ends materialize fully, widening
/// the window if they fall outside it. A label whose support misses the
/// window entirely realizes as the zero complex on that window.
pub fn realize_label(
    algebra: Arc<AnAlgebra>,
    field: Field,
    label: &CanonLabel,
    window: (i64, i64),
) -> Result<InjComplex, ClassifyError> {
    let n = algebra.n();
    let label = CanonLabel::new(label.start, label.end, label.anchor, n)?;
    let (wlo, whi) = window;
    if wlo > whi {
        return Err(ClassifyError::BadWindow(format!(
            "window [{wlo}, {whi}] is empty"
        )));
    }
    let misses = label.start.is_some_and(|l| l > whi) || label.end.is_some_and(|m| m < wlo);
    if misses {
        return Ok(zero_complex(algebra, field, wlo, whi));
    }
    let rlo = label.start.map_or(wlo, |l| l.min(wlo));
    let rhi = label.end.map_or(whi, |m| m.max(whi));
    let c = residue(n, label.start.unwrap_or(0), label.anchor);
    let occupied = |i: i64| {
        label.start.is_none_or(|l| i >= l) && label.end.is_none_or(|m| i <= m)
    };
    let mut mult = vec![vec![0usize; n]; (rhi - rlo + 1) as usize];
    for (t, col) in mult.iter_mut().enumerate() {
        let i = rlo + t as i64;
        if occupied(i) {
            col[strand_injective(n, c, i) - 1] = 1;
        }
    }
    let diff = (rlo..rhi)
        .map(|i| {
            let t = (i - rlo) as usize;
            let mut b = BlockMap::zero(field, &mult[t], &mult[t + 1]);
            if occupied(i) && occupied(i + 1) {
                let j = strand_injective(n, c, i);
                b.d_part[j - 1].set(0, 0, field.one());
            }
            b
        })
        .collect();
    let below = if label.start.is_none() {
        Tail::Periodic
    } else {
        Tail::Zero
    };
    let above = if label.end.is_none() {
        Tail::Periodic
    } else {
        Tail::Zero
    };
    InjComplex::new(algebra, field, rlo, mult, diff, below, above).map_err(ClassifyError::from)
}

/// The label of `realize(label).shift(r)`: degrees translate by -r, and a
/// label anchored at degree 0 (unbounded below) rotates its anchor the way
/// the periodic complex does.
pub fn shift_label(n: usize, label: &CanonLabel, r: i64) -> CanonLabel {
    let anchor = if label.start.is_some() {
        label.anchor
    } else {
        (label.anchor as i64 - 1 - r).rem_euclid(n as i64) as usize + 1
    };
    CanonLabel {
        start: label.start.map(|v| v - r),
        end: label.end.map(|v| v - r),
        anchor,
    }
}

/// Raw truncation data (l, m, r); `None` sides are infinite.
pub type RawTriple = (Option<i64>, Option<i64>, i64);

/// Whether two raw truncations name the same object, i.e. differ by the
/// simultaneous shift (l, m, r) -> (l + nk, m + nk, r + nk).
pub fn labels_equivalent(n: usize, a: RawTriple, b: RawTriple) -> Result<bool, ClassifyError> {
    let la = CanonLabel::from_raw(n, a.0, a.1, a.2)?;
    let lb = CanonLabel::from_raw(n, b.0, b.1, b.2)?;
    Ok(la == lb)
}

/// Push a complex down along the covering of the one-vertex quiver: every
/// injective becomes the big injective over A_1, identity coefficients stay
/// on the identity, d coefficients move to the loop action, and the strand
/// blocks pack block-diagonally.
pub fn pushdown(x: &InjComplex) -> InjComplex {
    let n = x.n();
    let a1 = Arc::new(AnAlgebra::new(1).expect("n = 1 is valid"));
    let field = x.field;
    let mult: Vec<Vec<usize>> = x
        .mult
        .iter()
        .map(|col| vec![col.iter().sum()])
        .collect();
    let offsets = |col: &[usize]| -> Vec<usize> {
        let mut off = vec![0usize; col.len()];
        for j in 1..col.len() {
            off[j] = off[j - 1] + col[j - 1];
        }
        off
    };
    let diff: Vec<BlockMap> = x
        .diff
        .iter()
        .enumerate()
        .map(|(t, b)| {
            let src_off = offsets(&x.mult[t]);
            let tgt_off = offsets(&x.mult[t + 1]);
            let mut out = BlockMap::zero(field, &mult[t], &mult[t + 1]);
            for j in 1..=n {
                let pj = if j == 1 { n } else { j - 1 };
                let idb = &b.id_part[j - 1];
                for r in 0..idb.rows {
                    for cc in 0..idb.cols {
                        let v = idb.get(r, cc);
                        if !v.is_zero() {
                            out.id_part[0].set(tgt_off[j - 1] + r, src_off[j - 1] + cc, v.clone());
                        }
                    }
                }
                let db = &b.d_part[j - 1];
                for r in 0..db.rows {
                    for cc in 0..db.cols {
                        let v = db.get(r, cc);
                        if !v.is_zero() {
                            out.d_part[0].set(tgt_off[pj - 1] + r, src_off[j - 1] + cc, v.clone());
                        }
                    }
                }
            }
            out
        })
        .collect();
    InjComplex::new(a1, field, x.lo, mult, diff, x.below, x.above)
        .expect("pushdown preserves validity")
}

/// All bounded labels over the given degree range whose realization has the
/// requested cohomology dimensions (and none outside the range, which is
/// automatic for labels inside it). `from` is the degree of the first
/// target entry.
pub fn count_indecomposables_with_hdim(
    algebra: &Arc<AnAlgebra>,
    field: Field,
    from: i64,
    targets: &[i64],
) -> Result<Vec<CanonLabel>, ClassifyError> {
    if targets.iter().any(|&d| d < 0) {
        return Err(ClassifyError::NegativeTarget);
    }
    if targets.is_empty() {
        return Err(ClassifyError::BadWindow(
            "the target vector must cover at least one degree".into(),
        ));
    }
    let to = from + targets.len() as i64 - 1;
    let n = algebra.n();
    let want: Vec<usize> = targets.iter().map(|&d| d as usize).collect();
    let mut out = Vec::new();
    for l in from..=to {
        for m in l..=to {
            for anchor in 1..=n {
                let label = CanonLabel {
                    start: Some(l),
                    end: Some(m),
                    anchor,
                };
                let x = realize_label(algebra.clone(), field, &label, (from, to))?;
                if x.cohomology_dims(from, to) == want {
                    out.push(label);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anmod::complex::{periodic_complex, stalk};
    use crate::exactlin::Matrix;

    fn alg(n: usize) -> Arc<AnAlgebra> {
        Arc::new(AnAlgebra::new(n).unwrap())
    }

    fn f() -> Field {
        Field::Rational
    }

    fn lab(start: Option<i64>, end: Option<i64>, anchor: usize) -> CanonLabel {
        CanonLabel { start, end, anchor }
    }

    fn singleton(l: CanonLabel) -> LabelMultiset {
        let mut m = LabelMultiset::new();
        m.insert(l, 1);
        m
    }

    #[test]
    fn two_term_socle_killer_classifies_as_one_interval() {
        let x = realize_label(alg(1), f(), &lab(Some(0), Some(1), 1), (0, 1)).unwrap();
        assert_eq!(
            x.diff[0].d_part[0],
            Matrix::from_i64_rows(f(), &[vec![1]])
        );
        let got = classify_complex(&x).unwrap();
        assert_eq!(got, singleton(lab(Some(0), Some(1), 1)));
    }

    #[test]
    fn contractible_two_term_complex_classifies_empty() {
        let a = alg(1);
        let mut d = BlockMap::zero(f(), &[1], &[1]);
        d.id_part[0] = Matrix::from_i64_rows(f(), &[vec![1]]);
        let x = InjComplex::new(
            a,
            f(),
            0,
            vec![vec![1], vec![1]],
            vec![d],
            Tail::Zero,
            Tail::Zero,
        )
        .unwrap();
        assert!(classify_complex(&x).unwrap().is_empty());
    }

    #[test]
    fn strand_bookkeeping_routes_injectives_by_residue() {
        // I_1 at degree 0 mapping by d to I_2 at degree 1: everything lives
        // on the residue class 0 + 1 = 1 mod 2
        let x = realize_label(alg(2), f(), &lab(Some(0), Some(1), 1), (0, 1)).unwrap();
        assert_eq!(x.mult, vec![vec![1, 0], vec![0, 1]]);
        let reps = strands(&x).unwrap();
        assert_eq!(reps[0].dims, vec![0, 0]);
        assert_eq!(reps[1].dims, vec![1, 1]);
        assert!(reps[1].maps[0].is_identity());
    }

    #[test]
    fn strands_reject_non_radical_differentials() {
        let a = alg(1);
        let mut d = BlockMap::zero(f(), &[1], &[1]);
        d.id_part[0] = Matrix::from_i64_rows(f(), &[vec![1]]);
        let x = InjComplex::new(
            a,
            f(),
            0,
            vec![vec![1], vec![1]],
            vec![d],
            Tail::Zero,
            Tail::Zero,
        )
        .unwrap();
        assert_eq!(strands(&x), Err(ClassifyError::NotRadical));
    }

    #[test]
    fn truncation_below_keeps_an_infinite_upper_end() {
        let x = periodic_complex(alg(2), f())
            .truncate_below(0)
            .extend_window(0, 3);
        let got = classify_complex(&x).unwrap();
        assert_eq!(got, singleton(lab(Some(0), None, 1)));
    }

    #[test]
    fn doubly_infinite_complex_anchors_at_degree_zero() {
        let p = periodic_complex(alg(3), f()).extend_window(-2, 4);
        assert_eq!(
            classify_complex(&p).unwrap(),
            singleton(lab(None, None, 1))
        );
        // shifting relabels degrees and rotates the anchor
        assert_eq!(
            classify_complex(&p.shift(1)).unwrap(),
            singleton(lab(None, None, 3))
        );
    }

    #[test]
    fn classification_is_additive_on_direct_sums() {
        let a = alg(2);
        let x = realize_label(a.clone(), f(), &lab(Some(0), Some(2), 1), (0, 2)).unwrap();
        let y = realize_label(a.clone(), f(), &lab(Some(1), Some(1), 2), (0, 2)).unwrap();
        let sum = x.direct_sum(&y).unwrap().direct_sum(&y).unwrap();
        let got = classify_complex(&sum).unwrap();
        let mut want = LabelMultiset::new();
        want.insert(lab(Some(0), Some(2), 1), 1);
        want.insert(lab(Some(1), Some(1), 2), 2);
        assert_eq!(got, want);
    }

    #[test]
    fn realize_roundtrip_over_a_label_grid() {
        for n in 1..=3 {
            let a = alg(n);
            let mut labels = vec![
                lab(None, None, 1),
                lab(None, Some(1), 1),
                lab(Some(-1), None, 1),
                lab(Some(-1), Some(2), 1),
                lab(Some(0), Some(0), 1),
            ];
            if n > 1 {
                labels.push(lab(None, None, 2));
                labels.push(lab(Some(0), Some(3), 2));
                labels.push(lab(Some(1), Some(1), n));
            }
            for label in labels {
                let x = realize_label(a.clone(), f(), &label, (-1, 2)).unwrap();
                let got = classify_complex(&x).unwrap();
                assert_eq!(got, singleton(label), "n = {n}, label {label}");
            }
        }
    }

    #[test]
    fn shift_label_matches_shifting_the_realization() {
        for n in 1..=3usize {
            let a = alg(n);
            let labels = [
                lab(Some(0), Some(2), 1),
                lab(None, Some(1), n),
                lab(Some(-1), None, 1),
                lab(None, None, 1),
            ];
            for label in labels {
                for r in [-2i64, -1, 1, 3] {
                    let x = realize_label(a.clone(), f(), &label, (-1, 2)).unwrap();
                    assert_eq!(
                        classify_complex(&x.shift(r)).unwrap(),
                        singleton(shift_label(n, &label, r)),
                        "n = {n}, label {label}, r = {r}"
                    );
                }
            }
        }
    }

    #[test]
    fn realization_misses_window_gives_zero_complex() {
        let x = realize_label(alg(2), f(), &lab(Some(4), Some(5), 1), (0, 1)).unwrap();
        assert!(x.is_zero_window());
        assert_eq!(x.window(), (0, 1));
        let y = realize_label(alg(2), f(), &lab(None, Some(-3), 1), (0, 1)).unwrap();
        assert!(y.is_zero_window());
    }

    #[test]
    fn finite_endpoints_widen_the_window() {
        let x = realize_label(alg(1), f(), &lab(Some(-2), Some(4), 1), (0, 1)).unwrap();
        assert_eq!(x.window(), (-2, 4));
        assert_eq!(
            classify_complex(&x).unwrap(),
            singleton(lab(Some(-2), Some(4), 1))
        );
    }

    #[test]
    fn label_equivalence_is_shift_by_multiples_of_n() {
        let t = |l: i64, m: i64, r: i64| (Some(l), Some(m), r);
        assert!(labels_equivalent(2, t(0, 3, 0), t(2, 5, 2)).unwrap());
        assert!(!labels_equivalent(2, t(0, 3, 0), t(1, 4, 1)).unwrap());
        assert!(labels_equivalent(2, t(0, 3, 0), t(0, 3, 0)).unwrap());
        assert!(labels_equivalent(3, (None, Some(2), 1), (None, Some(5), 4)).unwrap());
        assert!(!labels_equivalent(3, (None, Some(2), 1), (None, Some(4), 3)).unwrap());
    }

    #[test]
    fn raw_triples_normalize_against_realizations() {
        // (l, m, r) realizes as the truncation to [l, m] shifted by r; its
        // classification must be the normalized label
        for n in 1..=3usize {
            let a = alg(n);
            for (l, m, r) in [(0i64, 2i64, 0i64), (1, 4, 1), (-2, 0, -1), (0, 0, 2)] {
                let label = CanonLabel::from_raw(n, Some(l), Some(m), r).unwrap();
                let x = periodic_complex(a.clone(), f())
                    .extend_window(l.min(-1) - 1, m.max(1) + 1)
                    .truncate_below(l)
                    .truncate_above(m)
                    .shift(r);
                assert_eq!(
                    classify_complex(&x).unwrap(),
                    singleton(label),
                    "n = {n}, raw ({l}, {m}, {r})"
                );
            }
        }
    }

    #[test]
    fn pushdown_forgets_the_vertex_grading() {
        let x = realize_label(alg(2), f(), &lab(Some(0), Some(1), 1), (0, 1)).unwrap();
        let down = pushdown(&x);
        assert_eq!(down.n(), 1);
        assert_eq!(down.mult, vec![vec![1], vec![1]]);
        assert_eq!(
            classify_complex(&down).unwrap(),
            singleton(lab(Some(0), Some(1), 1))
        );
    }

    #[test]
    fn pushdown_commutes_with_classification() {
        let a = alg(3);
        let x = realize_label(a.clone(), f(), &lab(Some(0), Some(4), 2), (0, 4)).unwrap();
        let y = realize_label(a.clone(), f(), &lab(None, Some(2), 3), (0, 4)).unwrap();
        let s = stalk(a, f(), 1, 3);
        let total = x.direct_sum(&y).unwrap().direct_sum(&s).unwrap();
        let down = pushdown(&total);
        let mut want = LabelMultiset::new();
        for (label, mult) in classify_complex(&total).unwrap() {
            *want
                .entry(CanonLabel {
                    anchor: 1,
                    ..label
                })
                .or_insert(0) += mult;
        }
        assert_eq!(classify_complex(&down).unwrap(), want);
    }

    #[test]
    fn pushdown_of_zero_is_zero() {
        let z = zero_complex(alg(3), f(), 0, 2);
        let down = pushdown(&z);
        assert!(down.is_zero_window());
        assert_eq!(down.n(), 1);
    }

    #[test]
    fn hdim_census_finds_the_expected_labels() {
        let labels = count_indecomposables_with_hdim(&alg(1), f(), 0, &[1, 1]).unwrap();
        assert_eq!(labels, vec![lab(Some(0), Some(1), 1)]);

        let labels = count_indecomposables_with_hdim(&alg(2), f(), 0, &[1, 1]).unwrap();
        assert_eq!(
            labels,
            vec![lab(Some(0), Some(1), 1), lab(Some(0), Some(1), 2)]
        );

        let stalks = count_indecomposables_with_hdim(&alg(2), f(), 0, &[2]).unwrap();
        assert_eq!(
            stalks,
            vec![lab(Some(0), Some(0), 1), lab(Some(0), Some(0), 2)]
        );

        assert!(count_indecomposables_with_hdim(&alg(1), f(), 0, &[0])
            .unwrap()
            .is_empty());
        assert_eq!(
            count_indecomposables_with_hdim(&alg(1), f(), 0, &[-1]),
            Err(ClassifyError::NegativeTarget)
        );
    }

    #[test]
    fn witness_checks_a_complex_with_contractible_noise() {
        let a = alg(2);
        let x = realize_label(a.clone(), f(), &lab(Some(0), Some(2), 1), (0, 2)).unwrap();
        // add a contractible pair I_2 -> I_2 across degrees 1..2
        let mut d = BlockMap::zero(f(), &[0, 1], &[0, 1]);
        d.id_part[1] = Matrix::from_i64_rows(f(), &[vec![1]]);
        let noise = InjComplex::new(
            a,
            f(),
            1,
            vec![vec![0, 1], vec![0, 1]],
            vec![d],
            Tail::Zero,
            Tail::Zero,
        )
        .unwrap();
        let total = x.direct_sum(&noise).unwrap();
        let w = classify_with_witness(&total).unwrap();
        assert!(w.verify());
        assert_eq!(w.labels, singleton(lab(Some(0), Some(2), 1)));
    }

    #[test]
    fn label_parsing_and_display_round_trip() {
        for text in ["0:1:1", "-inf:+inf:2", "-3:4:3", "-inf:0:1", "2:+inf:3"] {
            let label = CanonLabel::parse(text, 3).unwrap();
            assert_eq!(label.to_string(), text);
            let back = CanonLabel::from_json(&label.to_json(), 3).unwrap();
            assert_eq!(back, label);
        }
        assert!(CanonLabel::parse("1:0:1", 3).is_err());
        assert!(CanonLabel::parse("0:1:4", 3).is_err());
        assert!(CanonLabel::parse("0:1", 3).is_err());
        assert!(CanonLabel::parse("+inf:0:1", 3).is_err());
    }

    #[test]
    fn label_json_spells_infinities() {
        let v = lab(None, Some(2), 1).to_json();
        assert_eq!(v["start"], serde_json::json!("-inf"));
        assert_eq!(v["end"], serde_json::json!(2));
        let m = singleton(lab(None, None, 1));
        let json = labels_to_json(&m);
        assert_eq!(json["labels"][0]["mult"], serde_json::json!(1));
        assert_eq!(json["labels"][0]["end"], serde_json::json!("+inf"));
    }
}
