//! Seeded random generators for complexes and path representations.
//!
//! Random valid complexes are cheap to make: once every differential entry
//! has zero identity coefficient, d squared vanishes identically (radical
//! times radical is zero), so radical complexes can be sampled entrywise
//! with no repair step. Contractible summands are then injected explicitly,
//! and a degreewise base change with invertible identity blocks smears them
//! across the other columns without moving the isomorphism class.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::anmod::algebra::AnAlgebra;
use crate::anmod::complex::{InjComplex, Tail};
use crate::anmod::maps::BlockMap;
use crate::exactlin::{Field, Matrix, Scalar};
use crate::quiver::{Arrow, BoundQuiver, VertexId};
use crate::rep::Rep;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_scalar(rng: &mut impl Rng, field: Field) -> Scalar {
    field.from_i64(rng.gen_range(-2..=2))
}

fn random_nonzero_scalar(rng: &mut impl Rng, field: Field) -> Scalar {
    loop {
        let s = random_scalar(rng, field);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn random_matrix(rng: &mut impl Rng, field: Field, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, random_scalar(rng, field));
        }
    }
    m
}

pub fn random_invertible(rng: &mut impl Rng, field: Field, size: usize) -> Matrix {
    if size == 0 {
        return Matrix::zeros(field, 0, 0);
    }
    loop {
        let m = random_matrix(rng, field, size, size);
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// Envelope for one random complex.
#[derive(Clone, Debug)]
pub struct ComplexShape {
    pub n: usize,
    pub lo: i64,
    pub columns: usize,
    pub max_mult: usize,
    pub below: Tail,
    pub above: Tail,
    pub contractible_pairs: usize,
    pub conjugate: bool,
}

pub fn random_shape(
    rng: &mut impl Rng,
    max_n: usize,
    max_columns: usize,
    max_mult: usize,
) -> ComplexShape {
    let tail = |rng: &mut dyn rand::RngCore| {
        if rng.gen_bool(0.4) {
            Tail::Periodic
        } else {
            Tail::Zero
        }
    };
    ComplexShape {
        n: rng.gen_range(1..=max_n),
        lo: rng.gen_range(-3..=3),
        columns: rng.gen_range(1..=max_columns),
        max_mult,
        below: tail(rng),
        above: tail(rng),
        contractible_pairs: rng.gen_range(0..=2),
        conjugate: true,
    }
}

/// A complex whose differentials carry only d coefficients, sampled
/// entrywise; valid by construction.
#[allow(clippy::too_many_arguments)]
pub fn random_radical_complex(
    rng: &mut impl Rng,
    algebra: &Arc<AnAlgebra>,
    field: Field,
    lo: i64,
    columns: usize,
    max_mult: usize,
    below: Tail,
    above: Tail,
) -> InjComplex {
    let n = algebra.n();
    let mult: Vec<Vec<usize>> = (0..columns)
        .map(|_| (0..n).map(|_| rng.gen_range(0..=max_mult)).collect())
        .collect();
    let diff: Vec<BlockMap> = (0..columns.saturating_sub(1))
        .map(|t| {
            let mut b = BlockMap::zero(field, &mult[t], &mult[t + 1]);
            for j in 1..=n {
                let pj = if j == 1 { n } else { j - 1 };
                b.d_part[j - 1] = random_matrix(rng, field, mult[t + 1][pj - 1], mult[t][j - 1]);
            }
            b
        })
        .collect();
    InjComplex::new(algebra.clone(), field, lo, mult, diff, below, above)
        .expect("radical complexes are valid by construction")
}

/// Direct-sums a two-term contractible complex (an invertible map from one
/// injective to itself) into a random interior position.
pub fn inject_contractible_pair(rng: &mut impl Rng, x: &InjComplex) -> InjComplex {
    let (lo, hi) = x.window();
    if lo == hi {
        return x.clone();
    }
    let n = x.n();
    let field = x.field;
    let t = rng.gen_range(lo..hi);
    let j = rng.gen_range(1..=n);
    let mut col = vec![0usize; n];
    col[j - 1] = 1;
    let mut d = BlockMap::zero(field, &col, &col);
    d.id_part[j - 1].set(0, 0, random_nonzero_scalar(rng, field));
    if n == 1 {
        d.d_part[0].set(0, 0, random_scalar(rng, field));
    }
    let pair = InjComplex::new(
        x.algebra.clone(),
        field,
        t,
        vec![col.clone(), col],
        vec![d],
        Tail::Zero,
        Tail::Zero,
    )
    .expect("a two-term isomorphism complex is valid");
    x.direct_sum(&pair).expect("summands share algebra and field")
}

/// A degreewise automorphism: invertible identity blocks, arbitrary
/// d blocks.
pub fn random_block_automorphism(rng: &mut impl Rng, field: Field, mult: &[usize]) -> BlockMap {
    let n = mult.len();
    let mut g = BlockMap::zero(field, mult, mult);
    for j in 1..=n {
        let pj = if j == 1 { n } else { j - 1 };
        g.id_part[j - 1] = random_invertible(rng, field, mult[j - 1]);
        g.d_part[j - 1] = random_matrix(rng, field, mult[pj - 1], mult[j - 1]);
    }
    g
}

/// Inverse of a degreewise automorphism: identity blocks invert, and the
/// d block solves D_prev M + N D^{-1} = 0.
pub fn invert_block_automorphism(g: &BlockMap) -> BlockMap {
    let n = g.n();
    let field = g.field();
    let mult = g.src_mult();
    let mut h = BlockMap::zero(field, &mult, &mult);
    for j in 1..=n {
        h.id_part[j - 1] = g.id_part[j - 1]
            .inverse()
            .expect("automorphism identity blocks are invertible");
    }
    for j in 1..=n {
        let pj = if j == 1 { n } else { j - 1 };
        let m = h.id_part[pj - 1]
            .mul(&g.d_part[j - 1])
            .and_then(|x| x.mul(&h.id_part[j - 1]))
            .expect("automorphism blocks have matching shapes");
        h.d_part[j - 1] = m.neg();
    }
    h
}

/// Conjugate every differential by a fresh random degreewise automorphism.
/// The result is isomorphic to the input, with identity coefficients
/// smeared across the columns.
pub fn conjugate_random(rng: &mut impl Rng, x: &InjComplex) -> InjComplex {
    let (lo, hi) = x.window();
    let gs: Vec<BlockMap> = (lo..=hi)
        .map(|i| random_block_automorphism(rng, x.field, &x.mult_at(i)))
        .collect();
    let hs: Vec<BlockMap> = gs.iter().map(invert_block_automorphism).collect();
    let diff = (0..x.diff.len())
        .map(|t| gs[t + 1].compose(&x.diff[t]).compose(&hs[t]))
        .collect();
    InjComplex::new(
        x.algebra.clone(),
        x.field,
        lo,
        x.mult.clone(),
        diff,
        x.below,
        x.above,
    )
    .expect("conjugation preserves validity")
}

pub fn random_complex(rng: &mut impl Rng, field: Field, shape: &ComplexShape) -> InjComplex {
    let algebra = Arc::new(AnAlgebra::new(shape.n).expect("shapes have n >= 1"));
    let mut x = random_radical_complex(
        rng,
        &algebra,
        field,
        shape.lo,
        shape.columns,
        shape.max_mult,
        shape.below,
        shape.above,
    );
    for _ in 0..shape.contractible_pairs {
        x = inject_contractible_pair(rng, &x);
    }
    if shape.conjugate {
        x = conjugate_random(rng, &x);
    }
    x
}

/// Line quiver on vertices lo..=hi with one arrow per gap; `fwd[k]` points
/// the k-th arrow toward the larger vertex. Arrow ids are `f{i}` / `b{i}`.
pub fn line_quiver(lo: i64, hi: i64, fwd: &[bool]) -> Arc<BoundQuiver> {
    assert_eq!((hi - lo).max(0) as usize, fwd.len());
    let vertices: Vec<VertexId> = (lo..=hi).map(VertexId::Plain).collect();
    let arrows: Vec<Arrow> = fwd
        .iter()
        .enumerate()
        .map(|(k, &f)| {
            let i = lo + k as i64;
            if f {
                Arrow {
                    id: format!("f{i}"),
                    src: VertexId::Plain(i),
                    tgt: VertexId::Plain(i + 1),
                }
            } else {
                Arrow {
                    id: format!("b{i}"),
                    src: VertexId::Plain(i + 1),
                    tgt: VertexId::Plain(i),
                }
            }
        })
        .collect();
    Arc::new(BoundQuiver::new(vertices, arrows, vec![]).expect("line quivers are valid"))
}

/// A representation of a random-orientation line quiver with random maps.
pub fn random_path_rep(
    rng: &mut impl Rng,
    field: Field,
    max_len: usize,
    max_dim: usize,
) -> Rep {
    let len = rng.gen_range(1..=max_len.max(1));
    let lo = rng.gen_range(-2..=2);
    let hi = lo + len as i64 - 1;
    let fwd: Vec<bool> = (1..len).map(|_| rng.gen_bool(0.5)).collect();
    let quiver = line_quiver(lo, hi, &fwd);
    let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_dim)).collect();
    let maps: Vec<Matrix> = quiver
        .arrows
        .iter()
        .map(|a| {
            let s = quiver.vertex_index(a.src).unwrap();
            let t = quiver.vertex_index(a.tgt).unwrap();
            random_matrix(rng, field, dims[t], dims[s])
        })
        .collect();
    Rep::new(quiver, field, dims, maps).expect("sampled shapes line up")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify_complex;
    use crate::rep::intervals::decompose_intervals;

    fn f() -> Field {
        Field::Rational
    }

    #[test]
    fn same_seed_same_complex() {
        let sample = |seed: u64| {
            let mut rng = rng_from_seed(seed);
            let shape = random_shape(&mut rng, 4, 6, 3);
            random_complex(&mut rng, f(), &shape)
        };
        assert_eq!(sample(7), sample(7));
        assert_ne!(sample(7), sample(8));
    }

    #[test]
    fn random_complexes_are_valid_and_within_bounds() {
        let mut rng = rng_from_seed(1);
        for _ in 0..40 {
            let shape = random_shape(&mut rng, 4, 6, 3);
            let x = random_complex(&mut rng, f(), &shape);
            assert!(x.validate().is_ok());
            assert!(x.n() <= 4);
            // each injected pair pads at most one column per mixed-tail side
            assert!(x.mult.len() <= shape.columns + 2 * shape.contractible_pairs);
        }
    }

    #[test]
    fn automorphisms_invert_on_both_sides() {
        let mut rng = rng_from_seed(3);
        for n in 1..=3usize {
            let mult: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
            let g = random_block_automorphism(&mut rng, f(), &mult);
            let h = invert_block_automorphism(&g);
            let ident = BlockMap::identity(f(), &mult);
            assert_eq!(g.compose(&h), ident);
            assert_eq!(h.compose(&g), ident);
        }
    }

    #[test]
    fn conjugation_and_noise_leave_the_classification_alone() {
        let mut rng = rng_from_seed(11);
        for _ in 0..25 {
            let shape = random_shape(&mut rng, 3, 5, 2);
            let algebra = Arc::new(AnAlgebra::new(shape.n).unwrap());
            let base = random_radical_complex(
                &mut rng,
                &algebra,
                f(),
                shape.lo,
                shape.columns,
                shape.max_mult,
                shape.below,
                shape.above,
            );
            let want = classify_complex(&base).unwrap();
            let noisy = inject_contractible_pair(&mut rng, &base);
            assert_eq!(classify_complex(&noisy).unwrap(), want);
            let twisted = conjugate_random(&mut rng, &noisy);
            assert_eq!(classify_complex(&twisted).unwrap(), want);
        }
    }

    #[test]
    fn random_path_reps_decompose() {
        let mut rng = rng_from_seed(5);
        for _ in 0..30 {
            let rep = random_path_rep(&mut rng, f(), 8, 4);
            let dec = decompose_intervals(&rep).unwrap();
            assert!(dec.verify(&rep));
        }
    }

    #[test]
    fn generation_works_over_prime_fields() {
        let mut rng = rng_from_seed(9);
        let field = Field::fp(5).unwrap();
        for _ in 0..10 {
            let shape = random_shape(&mut rng, 3, 5, 2);
            let x = random_complex(&mut rng, field, &shape);
            assert!(x.validate().is_ok());
            classify_complex(&x).unwrap();
        }
    }
}
