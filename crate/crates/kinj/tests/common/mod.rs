//! Shared helpers for the integration suites: a brute-force decomposition
//! oracle, exhaustive representation enumeration over F_2, independent
//! realizations of raw interval triples, and an explicit K-isomorphism
//! witness assembled from classification receipts.

use std::sync::Arc;

use kinj::anmod::{periodic_complex, AnAlgebra, BlockMap, GradedMap, InjComplex};
use kinj::classify::{classify_with_witness, realize_label, CanonLabel, ClassifyWitness};
use kinj::exactlin::{Field, Matrix};
use kinj::quiver::BoundQuiver;
use kinj::rep::intervals::IntervalDecomposition;
use kinj::rep::{hom_basis, Rep};

pub fn f2() -> Field {
    Field::fp(2).expect("2 is prime")
}

/// Injective index living on strand `c` in cohomological degree `i`.
pub fn strand_inj(n: usize, c: usize, i: i64) -> usize {
    (c as i64 - i - 1).rem_euclid(n as i64) as usize + 1
}

// ---------------------------------------------------------------------------
// brute-force decomposition oracle

/// Dimension vectors of the indecomposable summands, found by exhaustive
/// idempotent search in the endomorphism algebra. Exponential in
/// dim End, so callers keep total dimension small.
pub fn brute_force_summand_dim_vectors(rep: &Rep) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    collect_summands(rep, &mut out);
    out.sort();
    out
}

fn collect_summands(rep: &Rep, out: &mut Vec<Vec<usize>>) {
    assert!(rep.field == f2(), "the oracle walks End(M) in Gray-code order, which needs characteristic 2");
    if rep.total_dim() == 0 {
        return;
    }
    let basis = hom_basis(rep, rep).expect("endomorphism system is solvable");
    let k = basis.len();
    assert!(
        k <= 22,
        "endomorphism algebra of dimension {k} is too large for the oracle"
    );
    // Walk every element of End(M) over F_2; consecutive Gray codes differ
    // in one basis element, so each step is a single toggle.
    let mut e: Vec<Matrix> = rep
        .dims
        .iter()
        .map(|&d| Matrix::zeros(rep.field, d, d))
        .collect();
    let mut prev = 0u64;
    for step in 1u64..(1u64 << k) {
        let gray = step ^ (step >> 1);
        let i = (gray ^ prev).trailing_zeros() as usize;
        prev = gray;
        for (v, m) in basis[i].iter().enumerate() {
            e[v] = e[v].add(m).expect("shape");
        }
        if is_identity_endo(rep, &e) || !is_idempotent(&e) {
            continue;
        }
        let complement: Vec<Matrix> = e
            .iter()
            .enumerate()
            .map(|(v, ev)| Matrix::identity(rep.field, rep.dims[v]).sub(ev).expect("shape"))
            .collect();
        collect_summands(&image_subrep(rep, &e), out);
        collect_summands(&image_subrep(rep, &complement), out);
        return;
    }
    out.push(rep.dims.clone());
}

fn is_idempotent(e: &[Matrix]) -> bool {
    e.iter().all(|m| m.mul(m).expect("square") == *m)
}

fn is_identity_endo(rep: &Rep, e: &[Matrix]) -> bool {
    e.iter()
        .enumerate()
        .all(|(v, m)| *m == Matrix::identity(rep.field, rep.dims[v]))
}

/// The image of an idempotent endomorphism as a representation, with its
/// arrow maps rewritten in the image basis.
fn image_subrep(rep: &Rep, e: &[Matrix]) -> Rep {
    let field = rep.field;
    let mut bases = Vec::with_capacity(e.len());
    let mut dims = Vec::with_capacity(e.len());
    for (v, ev) in e.iter().enumerate() {
        let pivots = ev.column_space_pivots();
        let mut b = Matrix::zeros(field, rep.dims[v], pivots.len());
        for (j, &c) in pivots.iter().enumerate() {
            for r in 0..rep.dims[v] {
                b.set(r, j, ev.get(r, c).clone());
            }
        }
        dims.push(pivots.len());
        bases.push(b);
    }
    let maps: Vec<Matrix> = rep
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let s = rep.quiver.vertex_index(arrow.src).unwrap();
            let t = rep.quiver.vertex_index(arrow.tgt).unwrap();
            let rhs = rep.maps[a].mul(&bases[s]).expect("shape");
            bases[t]
                .solve(&rhs)
                .expect("arrow maps preserve the image of a chain idempotent")
        })
        .collect();
    Rep::new(rep.quiver.clone(), field, dims, maps)
        .expect("the image of an idempotent is a subrepresentation")
}

/// Dimension vectors of the interval summands claimed by a decomposition,
/// expanded to one entry per copy and sorted.
pub fn interval_dim_vectors(dec: &IntervalDecomposition, nv: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for iv in &dec.intervals {
        let comp = &dec.layout.components[iv.component];
        let mut v = vec![0usize; nv];
        for p in iv.a..=iv.b {
            v[comp.vertices[p as usize]] = 1;
        }
        for _ in 0..iv.mult {
            out.push(v.clone());
        }
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// exhaustive enumeration over F_2

pub fn all_matrices_f2(rows: usize, cols: usize) -> Vec<Matrix> {
    let field = f2();
    let bits = rows * cols;
    assert!(bits <= 16, "matrix space of 2^{bits} elements is too large");
    (0u32..(1u32 << bits))
        .map(|code| {
            let mut m = Matrix::zeros(field, rows, cols);
            for b in 0..bits {
                if code >> b & 1 == 1 {
                    m.set(b / cols.max(1), b % cols.max(1), field.one());
                }
            }
            m
        })
        .collect()
}

/// Every representation of the quiver over F_2 with vertex dimensions at
/// most `max_dim`, filtered first by dimension vector and then by a full
/// predicate. Relation-violating map choices are dropped silently.
pub fn enumerate_reps_f2(
    quiver: &Arc<BoundQuiver>,
    max_dim: usize,
    dims_ok: &dyn Fn(&[usize]) -> bool,
    keep: &dyn Fn(&Rep) -> bool,
) -> Vec<Rep> {
    let field = f2();
    let nv = quiver.vertices.len();
    let mut out = Vec::new();
    let mut dims = vec![0usize; nv];
    'dims: loop {
        if dims_ok(&dims) {
            let choices: Vec<Vec<Matrix>> = quiver
                .arrows
                .iter()
                .map(|a| {
                    let s = quiver.vertex_index(a.src).unwrap();
                    let t = quiver.vertex_index(a.tgt).unwrap();
                    all_matrices_f2(dims[t], dims[s])
                })
                .collect();
            let mut pick = vec![0usize; choices.len()];
            loop {
                let maps: Vec<Matrix> = pick
                    .iter()
                    .zip(&choices)
                    .map(|(&i, c)| c[i].clone())
                    .collect();
                if let Ok(rep) = Rep::new(quiver.clone(), field, dims.clone(), maps) {
                    if keep(&rep) {
                        out.push(rep);
                    }
                }
                let mut k = 0;
                while k < pick.len() {
                    pick[k] += 1;
                    if pick[k] < choices[k].len() {
                        break;
                    }
                    pick[k] = 0;
                    k += 1;
                }
                if k == pick.len() {
                    break;
                }
            }
        }
        let mut k = 0;
        while k < nv {
            dims[k] += 1;
            if dims[k] <= max_dim {
                continue 'dims;
            }
            dims[k] = 0;
            k += 1;
        }
        break;
    }
    out
}

// ---------------------------------------------------------------------------
// raw interval triples, realized without label arithmetic

/// Truncate the doubly-infinite exact complex to `[l, m]` and shift by `r`,
/// entirely through complex operations.
pub fn realize_raw_triple(
    algebra: &Arc<AnAlgebra>,
    field: Field,
    l: Option<i64>,
    m: Option<i64>,
    r: i64,
) -> InjComplex {
    let p = periodic_complex(algebra.clone(), field);
    let t = match l {
        Some(l) => p.truncate_below(l),
        None => p,
    };
    let t = match m {
        Some(m) => t.truncate_above(m),
        None => t,
    };
    t.shift(r)
}

/// Ten fixed probe objects: stalks and two-term intervals anchored at 1,
/// based at degrees -2..=2, realized over the given algebra.
pub fn fixed_probes(algebra: &Arc<AnAlgebra>, field: Field) -> Vec<InjComplex> {
    let mut out = Vec::new();
    for d in -2..=2i64 {
        for len in 0..=1i64 {
            let label = CanonLabel::new(Some(d), Some(d + len), 1, algebra.n())
                .expect("anchor 1 is always an injective index");
            out.push(
                realize_label(algebra.clone(), field, &label, (d, d + len))
                    .expect("bounded labels realize on their own window"),
            );
        }
    }
    out
}

// ---------------------------------------------------------------------------
// explicit K-isomorphism witnesses

/// Mutual chain maps between two complexes with equal classifications,
/// together with the receipts proving both composites are the identity up
/// to the stripping homotopies.
pub struct KIsoWitness {
    pub xe: InjComplex,
    pub ye: InjComplex,
    pub f: GradedMap,
    pub g: GradedMap,
    pub wx: ClassifyWitness,
    pub wy: ClassifyWitness,
}

/// Build the witness: strip both complexes, identify their strands with the
/// shared canonical interval sum, and transport the stripped isomorphism
/// through the homotopy equivalences. Fails when the classifications differ.
pub fn build_k_iso_witness(x: &InjComplex, y: &InjComplex) -> Result<KIsoWitness, String> {
    let (xlo, xhi) = x.window();
    let (ylo, yhi) = y.window();
    let (ulo, uhi) = (xlo.min(ylo), xhi.max(yhi));
    let xe = x.extend_window(ulo, uhi);
    let ye = y.extend_window(ulo, uhi);
    let wx = classify_with_witness(&xe).map_err(|e| e.to_string())?;
    let wy = classify_with_witness(&ye).map_err(|e| e.to_string())?;
    if wx.labels != wy.labels {
        return Err("label multisets differ".into());
    }
    let n = xe.n();
    let field = xe.field;
    let mut fwd: Vec<Vec<Matrix>> = Vec::with_capacity(n);
    let mut bwd: Vec<Vec<Matrix>> = Vec::with_capacity(n);
    for c in 0..n {
        let dx = &wx.decompositions[c];
        let dy = &wy.decompositions[c];
        if dx.intervals != dy.intervals {
            return Err(format!("strand {c} interval lists differ"));
        }
        let mut f_c = Vec::with_capacity(dx.iso.len());
        let mut b_c = Vec::with_capacity(dx.iso.len());
        for v in 0..dx.iso.len() {
            let xi = dx.iso[v].inverse().ok_or("singular decomposition iso")?;
            let yi = dy.iso[v].inverse().ok_or("singular decomposition iso")?;
            f_c.push(yi.mul(&dx.iso[v]).map_err(|e| e.to_string())?);
            b_c.push(xi.mul(&dy.iso[v]).map_err(|e| e.to_string())?);
        }
        fwd.push(f_c);
        bwd.push(b_c);
    }
    let assemble = |per_strand: &[Vec<Matrix>], src: &InjComplex, tgt: &InjComplex| {
        let comps: Vec<BlockMap> = (ulo..=uhi)
            .map(|i| {
                let mut b = BlockMap::zero(field, &src.mult_at(i), &tgt.mult_at(i));
                for (c, mats) in per_strand.iter().enumerate() {
                    let j = strand_inj(n, c, i);
                    b.id_part[j - 1] = mats[(i - ulo) as usize].clone();
                }
                b
            })
            .collect();
        GradedMap::new(0, ulo, comps)
    };
    let phi = assemble(&fwd, &wx.strip.complex, &wy.strip.complex);
    let phi_inv = assemble(&bwd, &wy.strip.complex, &wx.strip.complex);
    let f = wy.strip.into.compose(&phi).compose(&wx.strip.onto);
    let g = wx.strip.into.compose(&phi_inv).compose(&wy.strip.onto);
    Ok(KIsoWitness {
        xe,
        ye,
        f,
        g,
        wx,
        wy,
    })
}

fn graded_eq(a: &GradedMap, b: &GradedMap) -> bool {
    a.degree == b.degree && a.lo == b.lo && a.comps == b.comps
}

/// Re-check the witness from scratch: both classification receipts hold,
/// `f` and `g` are chain maps, and both composites equal the strip
/// projectors, which the receipts certify homotopic to the identity.
pub fn verify_k_iso_witness(w: &KIsoWitness) -> bool {
    if !w.wx.verify() || !w.wy.verify() {
        return false;
    }
    let (ulo, uhi) = w.xe.window();
    for i in ulo..uhi {
        let (f0, f1) = match (w.f.component_at(i), w.f.component_at(i + 1)) {
            (Some(a), Some(b)) => (a, b),
            _ => return false,
        };
        if f1.compose(&w.xe.diff_at(i)) != w.ye.diff_at(i).compose(f0) {
            return false;
        }
        let (g0, g1) = match (w.g.component_at(i), w.g.component_at(i + 1)) {
            (Some(a), Some(b)) => (a, b),
            _ => return false,
        };
        if g1.compose(&w.ye.diff_at(i)) != w.xe.diff_at(i).compose(g0) {
            return false;
        }
    }
    graded_eq(
        &w.g.compose(&w.f),
        &w.wx.strip.into.compose(&w.wx.strip.onto),
    ) && graded_eq(
        &w.f.compose(&w.g),
        &w.wy.strip.into.compose(&w.wy.strip.onto),
    )
}
