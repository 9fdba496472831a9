//! Bound quivers: cycles with square-zero relations, cycles with a tail,
//! separated quivers, and repetitive windows.
//!
//! Relations are always monomial: a relation is a composable length-2 path
//! stored as a pair of arrow indices in traversal order (first arrow walked,
//! then the second). Commutativity relations are never stored; the repetitive
//! construction only materializes its bar quotient, where both mixed products
//! vanish.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Vertex name. Plain integers for cycles and tails, pairs for repetitive
/// windows (copy index, cycle vertex), primed variants for separated quivers.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VertexId {
    Plain(i64),
    Pair(i64, i64),
    PlainPrimed(i64),
    PairPrimed(i64, i64),
}

impl VertexId {
    /// The primed twin used by separated quivers.
    pub fn primed(self) -> VertexId {
        match self {
            VertexId::Plain(v) => VertexId::PlainPrimed(v),
            VertexId::Pair(a, b) => VertexId::PairPrimed(a, b),
            other => other,
        }
    }

    pub fn is_primed(self) -> bool {
        matches!(self, VertexId::PlainPrimed(_) | VertexId::PairPrimed(_, _))
    }

    pub fn unprimed(self) -> VertexId {
        match self {
            VertexId::PlainPrimed(v) => VertexId::Plain(v),
            VertexId::PairPrimed(a, b) => VertexId::Pair(a, b),
            other => other,
        }
    }

    pub fn to_json(self) -> serde_json::Value {
        match self {
            VertexId::Plain(v) => serde_json::json!(v),
            VertexId::Pair(a, b) => serde_json::json!([a, b]),
            VertexId::PlainPrimed(v) => serde_json::json!({ "primed": v }),
            VertexId::PairPrimed(a, b) => serde_json::json!({ "primed": [a, b] }),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<VertexId, QuiverError> {
        let bad = || QuiverError::BadJson(format!("bad vertex id {v}"));
        match v {
            serde_json::Value::Number(n) => Ok(VertexId::Plain(n.as_i64().ok_or_else(bad)?)),
            serde_json::Value::Array(a) if a.len() == 2 => {
                let x = a[0].as_i64().ok_or_else(bad)?;
                let y = a[1].as_i64().ok_or_else(bad)?;
                Ok(VertexId::Pair(x, y))
            }
            serde_json::Value::Object(o) if o.len() == 1 => {
                let inner = o.get("primed").ok_or_else(bad)?;
                Ok(VertexId::from_json(inner)?.primed())
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Plain(v) => write!(f, "{v}"),
            VertexId::Pair(a, b) => write!(f, "({a},{b})"),
            VertexId::PlainPrimed(v) => write!(f, "{v}'"),
            VertexId::PairPrimed(a, b) => write!(f, "({a},{b})'"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Arrow {
    pub id: String,
    pub src: VertexId,
    pub tgt: VertexId,
}

/// A finite quiver with monomial length-2 relations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundQuiver {
    pub vertices: Vec<VertexId>,
    pub arrows: Vec<Arrow>,
    /// Each relation is a composable pair of arrow indices, in traversal
    /// order: `tgt(arrows[rel.0]) == src(arrows[rel.1])`.
    pub relations: Vec<(usize, usize)>,
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(String),
    #[error("duplicate arrow id {0}")]
    DuplicateArrow(String),
    #[error("arrow {0} references missing vertex")]
    DanglingArrow(String),
    #[error("relation ({0}, {1}) is not a composable path")]
    BadRelation(String, String),
    #[error("parameters outside the admissible range: {0}")]
    BadParameters(String),
    #[error("expected a cycle quiver, got {0}")]
    NotACycle(String),
    #[error("bad quiver json: {0}")]
    BadJson(String),
}

impl BoundQuiver {
    pub fn new(
        vertices: Vec<VertexId>,
        arrows: Vec<Arrow>,
        relations: Vec<(usize, usize)>,
    ) -> Result<BoundQuiver, QuiverError> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(*v) {
                return Err(QuiverError::DuplicateVertex(v.to_string()));
            }
        }
        let mut ids = BTreeSet::new();
        for a in &arrows {
            if !ids.insert(a.id.clone()) {
                return Err(QuiverError::DuplicateArrow(a.id.clone()));
            }
            if !seen.contains(&a.src) || !seen.contains(&a.tgt) {
                return Err(QuiverError::DanglingArrow(a.id.clone()));
            }
        }
        for &(first, second) in &relations {
            if first >= arrows.len()
                || second >= arrows.len()
                || arrows[first].tgt != arrows[second].src
            {
                let name = |i: usize| {
                    arrows
                        .get(i)
                        .map(|a| a.id.clone())
                        .unwrap_or_else(|| format!("#{i}"))
                };
                return Err(QuiverError::BadRelation(name(first), name(second)));
            }
        }
        Ok(BoundQuiver {
            vertices,
            arrows,
            relations,
        })
    }

    pub fn vertex_index(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|w| *w == v)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn arrows_into(&self, v: VertexId) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&i| self.arrows[i].tgt == v)
            .collect()
    }

    pub fn arrows_out_of(&self, v: VertexId) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&i| self.arrows[i].src == v)
            .collect()
    }

    /// All composable length-2 paths (pairs of arrow indices).
    pub fn length_two_paths(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, a) in self.arrows.iter().enumerate() {
            for (j, b) in self.arrows.iter().enumerate() {
                if a.tgt == b.src {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// True when every composable length-2 path is a relation, i.e. the path
    /// algebra modulo the relations has square-zero radical.
    pub fn radical_square_zero(&self) -> bool {
        let rel: BTreeSet<(usize, usize)> = self.relations.iter().copied().collect();
        self.length_two_paths().iter().all(|p| rel.contains(p))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
            "arrows": self
                .arrows
                .iter()
                .map(|a| serde_json::json!([a.id, a.src.to_json(), a.tgt.to_json()]))
                .collect::<Vec<_>>(),
            "relations": self
                .relations
                .iter()
                .map(|&(x, y)| serde_json::json!([self.arrows[x].id, self.arrows[y].id]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<BoundQuiver, QuiverError> {
        let bad = |msg: &str| QuiverError::BadJson(msg.to_string());
        let obj = v.as_object().ok_or_else(|| bad("expected object"))?;
        let vertices = obj
            .get("vertices")
            .and_then(|x| x.as_array())
            .ok_or_else(|| bad("missing vertices"))?
            .iter()
            .map(VertexId::from_json)
            .collect::<Result<Vec<_>, _>>()?;
        let mut arrows = Vec::new();
        for a in obj
            .get("arrows")
            .and_then(|x| x.as_array())
            .ok_or_else(|| bad("missing arrows"))?
        {
            let t = a.as_array().filter(|t| t.len() == 3).ok_or_else(|| {
                bad("arrow entries must be [id, src, tgt]")
            })?;
            arrows.push(Arrow {
                id: t[0]
                    .as_str()
                    .ok_or_else(|| bad("arrow id must be a string"))?
                    .to_string(),
                src: VertexId::from_json(&t[1])?,
                tgt: VertexId::from_json(&t[2])?,
            });
        }
        let mut relations = Vec::new();
        for r in obj
            .get("relations")
            .and_then(|x| x.as_array())
            .ok_or_else(|| bad("missing relations"))?
        {
            let t = r
                .as_array()
                .filter(|t| t.len() == 2)
                .ok_or_else(|| bad("relations must be arrow id pairs"))?;
            let find = |v: &serde_json::Value| -> Result<usize, QuiverError> {
                let id = v.as_str().ok_or_else(|| bad("relation arrow id"))?;
                arrows
                    .iter()
                    .position(|a| a.id == id)
                    .ok_or_else(|| QuiverError::BadJson(format!("unknown arrow {id} in relation")))
            };
            relations.push((find(&t[0])?, find(&t[1])?));
        }
        BoundQuiver::new(vertices, arrows, relations)
    }
}

/// Cyclic quiver on vertices `1..=n` with arrows `a<j>: j -> j+1` (indices
/// mod n) and all length-2 paths as relations.
pub fn cycle_quiver(n: usize) -> Result<BoundQuiver, QuiverError> {
    if n == 0 {
        return Err(QuiverError::BadParameters("cycle needs n >= 1".into()));
    }
    let n = n as i64;
    let vertices: Vec<VertexId> = (1..=n).map(VertexId::Plain).collect();
    let arrows: Vec<Arrow> = (1..=n)
        .map(|j| Arrow {
            id: format!("a{j}"),
            src: VertexId::Plain(j),
            tgt: VertexId::Plain(if j == n { 1 } else { j + 1 }),
        })
        .collect();
    // path a_j then a_{j+1}
    let relations: Vec<(usize, usize)> = (0..n as usize)
        .map(|j| (j, (j + 1) % n as usize))
        .collect();
    BoundQuiver::new(vertices, arrows, relations)
}

/// The quivers behind the L(r, n, m) family: an n-cycle on vertices
/// `0..n-1`, a tail `-m..-1` feeding vertex 0, and r consecutive length-2
/// relations walking backwards around the cycle from vertex 0.
///
/// Requires n >= r >= 1 and m >= 0. With r = n and m = 0 the result is the
/// full square-zero cycle (up to the 0-based labels).
pub fn lrnm_quiver(r: usize, n: usize, m: usize) -> Result<BoundQuiver, QuiverError> {
    if !(1 <= r && r <= n) {
        return Err(QuiverError::BadParameters(format!(
            "need n >= r >= 1, got r={r}, n={n}"
        )));
    }
    let ni = n as i64;
    let mi = m as i64;
    let vertices: Vec<VertexId> = (-mi..ni).map(VertexId::Plain).collect();
    let mut arrows = Vec::new();
    for i in -mi..ni {
        let next = if i == ni - 1 { 0 } else { i + 1 };
        arrows.push(Arrow {
            id: format!("a{i}"),
            src: VertexId::Plain(i),
            tgt: VertexId::Plain(next),
        });
    }
    let idx = |i: i64| (i + mi) as usize; // arrows are pushed in order -m..n-1
    let mut relations = Vec::new();
    for k in 0..r as i64 {
        // path a_{n-1-k} then a_{(n-k) mod n}
        let first = (ni - 1 - k).rem_euclid(ni);
        let second = (ni - k).rem_euclid(ni);
        relations.push((idx(first), idx(second)));
    }
    BoundQuiver::new(vertices, arrows, relations)
}

/// Separated quiver: every vertex v splits into a source copy v and a sink
/// copy v', and each arrow l -> m becomes l -> m'. No relations survive.
pub fn separated_quiver(q: &BoundQuiver) -> BoundQuiver {
    let mut vertices = Vec::with_capacity(q.vertices.len() * 2);
    for &v in &q.vertices {
        vertices.push(v);
    }
    for &v in &q.vertices {
        vertices.push(v.primed());
    }
    let arrows = q
        .arrows
        .iter()
        .map(|a| Arrow {
            id: a.id.clone(),
            src: a.src,
            tgt: a.tgt.primed(),
        })
        .collect();
    BoundQuiver::new(vertices, arrows, Vec::new()).expect("separation preserves well-formedness")
}

/// A finite window `lo..=hi` of the repetitive quiver of a square-zero cycle.
///
/// Vertices are (copy, cycle vertex) pairs. Each copy carries the cycle
/// arrows `a<j>@<c>`; the connecting arrows `b<j>@<c>` run from (c, j) to
/// (c+1, j-1), following the Nakayama shift of the cycle algebra. With
/// `bar_quotient` set, every length-2 path is a relation; otherwise only the
/// doubled arrows of one kind (aa and bb paths) are killed.
pub fn repetitive_window(
    q: &BoundQuiver,
    lo: i64,
    hi: i64,
    bar_quotient: bool,
) -> Result<BoundQuiver, QuiverError> {
    let n = cycle_size(q)?;
    if lo > hi {
        return Err(QuiverError::BadParameters(format!(
            "empty window {lo}..{hi}"
        )));
    }
    let ni = n as i64;
    let dec = |j: i64| if j == 1 { ni } else { j - 1 };
    let inc = |j: i64| if j == ni { 1 } else { j + 1 };
    let mut vertices = Vec::new();
    let mut arrows = Vec::new();
    for c in lo..=hi {
        for j in 1..=ni {
            vertices.push(VertexId::Pair(c, j));
        }
    }
    for c in lo..=hi {
        for j in 1..=ni {
            arrows.push(Arrow {
                id: format!("a{j}@{c}"),
                src: VertexId::Pair(c, j),
                tgt: VertexId::Pair(c, inc(j)),
            });
        }
        if c < hi {
            for j in 1..=ni {
                arrows.push(Arrow {
                    id: format!("b{j}@{c}"),
                    src: VertexId::Pair(c, j),
                    tgt: VertexId::Pair(c + 1, dec(j)),
                });
            }
        }
    }
    let quiver = BoundQuiver::new(vertices, arrows, Vec::new())?;
    let mut relations = Vec::new();
    for (i, j) in quiver.length_two_paths() {
        let kind = |id: &str| id.as_bytes()[0];
        let same_kind = kind(&quiver.arrows[i].id) == kind(&quiver.arrows[j].id);
        if bar_quotient || same_kind {
            relations.push((i, j));
        }
    }
    BoundQuiver::new(quiver.vertices, quiver.arrows, relations)
}

/// Recognizes a square-zero cycle produced by `cycle_quiver` (structurally:
/// n plain vertices in one oriented cycle) and returns n.
fn cycle_size(q: &BoundQuiver) -> Result<usize, QuiverError> {
    let n = q.vertices.len();
    if n == 0 || q.arrows.len() != n {
        return Err(QuiverError::NotACycle(format!(
            "{} vertices, {} arrows",
            n,
            q.arrows.len()
        )));
    }
    for j in 1..=n as i64 {
        let v = VertexId::Plain(j);
        if q.vertex_index(v).is_none() {
            return Err(QuiverError::NotACycle(format!("missing vertex {j}")));
        }
        let next = if j == n as i64 { 1 } else { j + 1 };
        let ok = q
            .arrows
            .iter()
            .any(|a| a.src == v && a.tgt == VertexId::Plain(next));
        if !ok {
            return Err(QuiverError::NotACycle(format!("missing arrow {j} -> {next}")));
        }
    }
    Ok(n)
}

// serde plumbing via the json forms above
impl Serialize for BoundQuiver {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BoundQuiver {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(deserializer)?;
        BoundQuiver::from_json(&v).map_err(serde::de::Error::custom)
    }
}
