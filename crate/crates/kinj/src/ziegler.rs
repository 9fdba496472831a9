//! Ziegler-spectrum computations over the label space: stabilized Hom
//! tables, endofiniteness certificates, open-set membership, and the
//! open-cover-without-finite-subcover demonstration.
//!
//! Points of the spectrum are canonical labels; the functor category never
//! appears. Membership in the basic open set attached to a bounded label C
//! reduces to Hom_K(C, M) != 0, and the same hom computation drives the
//! covering family generated by the bounded-below labels, whose members are
//! endofinite and hence pure-injective.

use std::sync::Arc;

use crate::anmod::algebra::AnAlgebra;
use crate::anmod::complex::{ComplexError, InjComplex};
use crate::anmod::homspace::{hom_k_dim, window_hom_dim, HomKOutcome};
use crate::classify::{realize_label, CanonLabel, ClassifyError};
use crate::exactlin::Field;

#[derive(thiserror::Error, Clone, Debug, PartialEq)]
pub enum ZieglerError {
    #[error("hom dimension for ({x}, {y}) did not stabilize within window width {width}")]
    Unstable {
        x: CanonLabel,
        y: CanonLabel,
        width: i64,
    },
    #[error("endofiniteness probes must be bounded, got {0}")]
    UnboundedProbe(CanonLabel),
    #[error("cover generators must be bounded below and unbounded above, got {0}")]
    BadGenerator(CanonLabel),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A window that intersects the label's support, for realizations whose
/// exact extent does not matter (hom computations regrow their own windows).
pub fn base_window(label: &CanonLabel) -> (i64, i64) {
    match (label.start, label.end) {
        (Some(l), Some(m)) => (l, m),
        (Some(l), None) => (l, l + 1),
        (None, Some(m)) => (m - 1, m),
        (None, None) => (0, 1),
    }
}

fn realize_base(
    algebra: &Arc<AnAlgebra>,
    field: Field,
    label: &CanonLabel,
) -> Result<InjComplex, ZieglerError> {
    Ok(realize_label(
        algebra.clone(),
        field,
        label,
        base_window(label),
    )?)
}

/// All bounded labels (l, m, anchor) with lo <= l <= m <= hi, in sorted
/// order. The standard probe pool and point pool for the reports below.
pub fn bounded_label_grid(n: usize, lo: i64, hi: i64) -> Vec<CanonLabel> {
    let mut out = Vec::new();
    for l in lo..=hi {
        for m in l..=hi {
            for anchor in 1..=n {
                out.push(CanonLabel {
                    start: Some(l),
                    end: Some(m),
                    anchor,
                });
            }
        }
    }
    out
}

/// Pairwise stabilized hom dimensions between realized labels. Entry (i, j)
/// is Hom_K of the i-th label's realization into the j-th's, carrying its
/// confirming window width or an explicit unstable marker.
#[derive(Clone, Debug)]
pub struct HomTable {
    pub labels: Vec<CanonLabel>,
    pub entries: Vec<Vec<HomKOutcome>>,
}

impl HomTable {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "labels": self.labels.iter().map(CanonLabel::to_json).collect::<Vec<_>>(),
            "entries": self
                .entries
                .iter()
                .map(|row| row.iter().map(HomKOutcome::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

pub fn hom_table(
    algebra: &Arc<AnAlgebra>,
    field: Field,
    labels: &[CanonLabel],
    max_window: i64,
) -> Result<HomTable, ZieglerError> {
    let reals: Vec<InjComplex> = labels
        .iter()
        .map(|l| realize_base(algebra, field, l))
        .collect::<Result<_, _>>()?;
    let mut entries = Vec::with_capacity(reals.len());
    for x in &reals {
        let mut row = Vec::with_capacity(reals.len());
        for y in &reals {
            row.push(hom_k_dim(x, y, max_window)?);
        }
        entries.push(row);
    }
    Ok(HomTable {
        labels: labels.to_vec(),
        entries,
    })
}

/// Whether the realization of `m` lies in the basic open set attached to
/// `c`: stabilized Hom_K(c, m) nonzero. The Ziegler-open reading requires a
/// bounded (compact) c; for the bounded-below generators of the covering
/// family the same hom criterion applies, so no boundedness is enforced.
pub fn open_set_membership(
    algebra: &Arc<AnAlgebra>,
    field: Field,
    c: &CanonLabel,
    m: &CanonLabel,
    max_window: i64,
) -> Result<bool, ZieglerError> {
    let x = realize_base(algebra, field, c)?;
    let y = realize_base(algebra, field, m)?;
    match hom_k_dim(&x, &y, max_window)? {
        HomKOutcome::Stable { dim, .. } => Ok(dim > 0),
        HomKOutcome::Unstable { window_width, .. } => Err(ZieglerError::Unstable {
            x: *c,
            y: *m,
            width: window_width,
        }),
    }
}

/// Hom dimensions from one probe into the candidate across a growth
/// schedule of windows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub probe: CanonLabel,
    /// (window extension, dimension) per schedule step.
    pub dims: Vec<(i64, usize)>,
    pub stabilized: bool,
    pub dim: Option<usize>,
}

/// Desk-scale endofiniteness evidence: every bounded probe sees a finite,
/// window-stable hom space into the candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndofiniteCertificate {
    pub label: CanonLabel,
    pub probes: Vec<ProbeReport>,
    pub endofinite: bool,
}

impl EndofiniteCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "label": self.label.to_json(),
            "endofinite": self.endofinite,
            "probes": self
                .probes
                .iter()
                .map(|p| {
                    serde_json::json!({
                        "probe": p.probe.to_json(),
                        "dims": &p.dims,
                        "stabilized": p.stabilized,
                        "dim": p.dim,
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}

/// Compute hom dimensions from each bounded probe into the label's
/// realization over the growth schedule of window extensions, certifying
/// stabilization when the last two steps agree. A schedule shorter than two
/// steps certifies nothing.
pub fn endofinite_certificate(
    algebra: &Arc<AnAlgebra>,
    field: Field,
    label: &CanonLabel,
    probes: &[CanonLabel],
    schedule: &[i64],
) -> Result<EndofiniteCertificate, ZieglerError> {
    let target = realize_base(algebra, field, label)?;
    let mut reports = Vec::with_capacity(probes.len());
    for probe in probes {
        if !probe.bounded() {
            return Err(ZieglerError::UnboundedProbe(*probe));
        }
        let source = realize_base(algebra, field, probe)?;
        let lo = source.window().0.min(target.window().0);
        let hi = source.window().1.max(target.window().1);
        let dims: Vec<(i64, usize)> = schedule
            .iter()
            .map(|&s| (s, window_hom_dim(&source, &target, lo - s, hi + s)))
            .collect();
        let stabilized = dims.len() >= 2 && dims[dims.len() - 1].1 == dims[dims.len() - 2].1;
        reports.push(ProbeReport {
            probe: *probe,
            dim: stabilized.then(|| dims[dims.len() - 1].1),
            dims,
            stabilized,
        });
    }
    Ok(EndofiniteCertificate {
        label: *label,
        endofinite: reports.iter().all(|r| r.stabilized),
        probes: reports,
    })
}

/// One no-finite-subcover exhibit: a point outside every open generated by
/// the listed subfamily.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfamilyEscape {
    pub subfamily: Vec<CanonLabel>,
    pub point: CanonLabel,
    pub verified: bool,
}

/// Coverage report for a family of bounded-below generators against a
/// finite point pool: the full membership matrix, which pool points are
/// covered, and an escape exhibit per demonstrated subfamily.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub opens: Vec<CanonLabel>,
    pub pool: Vec<CanonLabel>,
    /// membership[p][o] = pool point p lies in the open generated by o.
    pub membership: Vec<Vec<bool>>,
    pub fully_covered: bool,
    pub uncovered: Vec<CanonLabel>,
    pub escapes: Vec<SubfamilyEscape>,
}

impl CoverReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "opens": self.opens.iter().map(CanonLabel::to_json).collect::<Vec<_>>(),
            "pool": self.pool.iter().map(CanonLabel::to_json).collect::<Vec<_>>(),
            "membership": &self.membership,
            "fullyCovered": self.fully_covered,
            "uncovered": self.uncovered.iter().map(CanonLabel::to_json).collect::<Vec<_>>(),
            "escapes": self
                .escapes
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "subfamily": e.subfamily.iter().map(CanonLabel::to_json).collect::<Vec<_>>(),
                        "point": e.point.to_json(),
                        "verified": e.verified,
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}

/// A bounded point strictly left of every generator in the subfamily; such
/// a point meets none of their opens, so no finite subfamily covers.
fn escape_point(subfamily: &[CanonLabel]) -> CanonLabel {
    let g_min = subfamily
        .iter()
        .map(|o| o.start.expect("generators are bounded below"))
        .min()
        .unwrap_or(0);
    CanonLabel {
        start: Some(g_min - 2),
        end: Some(g_min - 1),
        anchor: 1,
    }
}

pub fn cover_analysis(
    algebra: &Arc<AnAlgebra>,
    field: Field,
    opens: &[CanonLabel],
    pool: &[CanonLabel],
    max_window: i64,
) -> Result<CoverReport, ZieglerError> {
    for o in opens {
        if o.start.is_none() || o.end.is_some() {
            return Err(ZieglerError::BadGenerator(*o));
        }
    }
    let mut membership = Vec::with_capacity(pool.len());
    for p in pool {
        let mut row = Vec::with_capacity(opens.len());
        for o in opens {
            row.push(open_set_membership(algebra, field, o, p, max_window)?);
        }
        membership.push(row);
    }
    let uncovered: Vec<CanonLabel> = pool
        .iter()
        .zip(&membership)
        .filter(|(_, row)| !row.iter().any(|&b| b))
        .map(|(p, _)| *p)
        .collect();

    // demonstrate escapes for the empty family, each singleton, and the
    // whole family
    let mut subfamilies: Vec<Vec<CanonLabel>> = vec![Vec::new()];
    subfamilies.extend(opens.iter().map(|o| vec![*o]));
    if opens.len() > 1 {
        subfamilies.push(opens.to_vec());
    }
    let mut escapes = Vec::with_capacity(subfamilies.len());
    for subfamily in subfamilies {
        let point = escape_point(&subfamily);
        let mut verified = true;
        for o in &subfamily {
            if open_set_membership(algebra, field, o, &point, max_window)? {
                verified = false;
            }
        }
        escapes.push(SubfamilyEscape {
            subfamily,
            point,
            verified,
        });
    }
    Ok(CoverReport {
        opens: opens.to_vec(),
        pool: pool.to_vec(),
        membership,
        fully_covered: uncovered.is_empty(),
        uncovered,
        escapes,
    })
}
