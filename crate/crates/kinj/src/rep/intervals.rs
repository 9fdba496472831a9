//! Interval decomposition of representations of path-shaped quivers.
//!
//! A path-shaped quiver is a disjoint union of finite paths with arbitrary
//! arrow orientations. Every representation decomposes into thin interval
//! modules; this module computes the interval multiset together with an
//! explicit change of basis realizing the decomposition.
//!
//! The algorithm sweeps each path once. Basis vectors are tracked as
//! "chains": a chain is born at a position (at the left end of the path, as
//! a completion of a non-surjective forward arrow, or as a kernel vector of
//! a backward arrow) and dies when its vector can no longer be continued.
//! Basis changes are restricted to adding a chain into another one when the
//! edit extends to a chain-preserving automorphism of everything swept so
//! far; the admissible edits are exactly the pairs allowed by a total order
//! on birth data, which keeps the greedy elimination canonical.

use super::{Rep, RepError};
use crate::exactlin::{Matrix, Scalar};
use crate::quiver::BoundQuiver;

/// One path component: vertex positions in walk order and the connecting
/// arrows. `edges[k]` joins `vertices[k]` to `vertices[k+1]`; the flag is
/// true when the arrow points forward along the walk.
#[derive(Clone, Debug)]
pub struct PathComponent {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, bool)>,
}

#[derive(Clone, Debug)]
pub struct PathLayout {
    pub components: Vec<PathComponent>,
}

/// Detect a disjoint union of paths and fix a canonical walk direction for
/// each component (starting from the endpoint with the smaller vertex id).
pub fn path_layout(q: &BoundQuiver) -> Result<PathLayout, RepError> {
    let nv = q.vertices.len();
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv]; // (arrow, other vertex)
    for (a, arrow) in q.arrows.iter().enumerate() {
        let s = q.vertex_index(arrow.src).unwrap();
        let t = q.vertex_index(arrow.tgt).unwrap();
        if s == t {
            return Err(RepError::NotPathShaped(format!(
                "arrow {} is a loop",
                arrow.id
            )));
        }
        incident[s].push((a, t));
        incident[t].push((a, s));
    }
    for (v, inc) in incident.iter().enumerate() {
        if inc.len() > 2 {
            return Err(RepError::NotPathShaped(format!(
                "vertex {} meets {} arrows",
                q.vertices[v],
                inc.len()
            )));
        }
    }
    let mut seen = vec![false; nv];
    let mut components = Vec::new();
    for v0 in 0..nv {
        if seen[v0] {
            continue;
        }
        // collect the connected component
        let mut stack = vec![v0];
        let mut comp = Vec::new();
        seen[v0] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &(_, w) in &incident[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        let edge_count: usize = comp.iter().map(|&v| incident[v].len()).sum::<usize>() / 2;
        if edge_count != comp.len() - 1 {
            return Err(RepError::NotPathShaped(
                "component contains a cycle".into(),
            ));
        }
        // endpoints have at most one incident arrow
        let mut endpoints: Vec<usize> = comp
            .iter()
            .copied()
            .filter(|&v| incident[v].len() <= 1)
            .collect();
        endpoints.sort_by_key(|&v| q.vertices[v]);
        let start = endpoints[0];
        // walk the path
        let mut vertices = vec![start];
        let mut edges = Vec::new();
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = incident[cur].iter().find(|&&(_, w)| w != prev);
            match next {
                None => break,
                Some(&(a, w)) => {
                    let fwd = q.vertex_index(q.arrows[a].src).unwrap() == cur;
                    edges.push((a, fwd));
                    vertices.push(w);
                    prev = cur;
                    cur = w;
                }
            }
        }
        debug_assert_eq!(vertices.len(), comp.len());
        components.push(PathComponent { vertices, edges });
    }
    Ok(PathLayout { components })
}

/// An interval summand in component-local positions, with multiplicity.
/// `clipped_*` marks ends that touch the component boundary, where only
/// window stabilization can distinguish a genuine end from a truncation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Interval {
    pub component: usize,
    pub a: i64,
    pub b: i64,
    pub clipped_left: bool,
    pub clipped_right: bool,
    pub mult: usize,
}

impl Interval {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "a": self.a,
            "b": self.b,
            "mult": self.mult,
            "clipped": self.clipped_left || self.clipped_right,
        })
    }
}

/// Full decomposition result: the interval multiset, the canonical direct
/// sum of interval modules over the same quiver, and an isomorphism onto it
/// (one invertible matrix per vertex, rows indexed by the summand basis).
#[derive(Clone, Debug)]
pub struct IntervalDecomposition {
    pub layout: PathLayout,
    pub intervals: Vec<Interval>,
    pub summands: Rep,
    pub iso: Vec<Matrix>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum BirthType {
    Bwd,
    Initial,
    Fwd,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct ChainKey(u8, i64);

#[derive(Clone, Debug)]
struct Chain {
    birth: usize,
    ty: BirthType,
    death: Option<usize>,
}

impl Chain {
    fn key(&self) -> ChainKey {
        match self.ty {
            BirthType::Bwd => ChainKey(0, -(self.birth as i64)),
            BirthType::Initial => ChainKey(1, 0),
            BirthType::Fwd => ChainKey(2, self.birth as i64),
        }
    }
}

/// Sweep state for one component.
struct Sweep<'a> {
    rep: &'a Rep,
    comp: &'a PathComponent,
    /// basis matrix per processed position: columns are the current chain
    /// vectors in the original coordinates of that vertex space
    bases: Vec<Matrix>,
    /// owner chain of each basis column, per position
    labels: Vec<Vec<usize>>,
    chains: Vec<Chain>,
}

impl<'a> Sweep<'a> {
    fn dim(&self, pos: usize) -> usize {
        self.rep.dims[self.comp.vertices[pos]]
    }

    fn new_chain(&mut self, birth: usize, ty: BirthType) -> usize {
        self.chains.push(Chain {
            birth,
            ty,
            death: None,
        });
        self.chains.len() - 1
    }

    fn slot_of(&self, chain: usize, pos: usize) -> usize {
        self.labels[pos]
            .iter()
            .position(|&c| c == chain)
            .expect("chain is alive at this position")
    }

    /// The basis edit `t += mu * s`, applied retroactively at every position
    /// both chains share. Admissible only when key(s) <= key(t).
    fn retro_add(&mut self, s: usize, t: usize, mu: &Scalar, upto: usize) {
        debug_assert!(self.chains[s].key() <= self.chains[t].key());
        let from = self.chains[s].birth.max(self.chains[t].birth);
        for p in from..=upto {
            let cs = self.slot_of(s, p);
            let ct = self.slot_of(t, p);
            let b = &mut self.bases[p];
            for r in 0..b.rows {
                let v = b.get(r, ct).add(&mu.mul(b.get(r, cs)));
                b.set(r, ct, v);
            }
        }
    }

    /// Chains alive at the last processed position, in admissible-edit order
    /// (ties broken by discovery index).
    fn alive_in_key_order(&self, pos: usize) -> Vec<usize> {
        let mut alive = self.labels[pos].clone();
        alive.sort_by_key(|&c| (self.chains[c].key(), c));
        alive
    }

    fn forward_step(&mut self, k: usize, arrow: usize) {
        let f = &self.rep.maps[arrow];
        let m = f.mul(&self.bases[k]).expect("shapes agree");
        let field = self.rep.field;
        let target_dim = self.dim(k + 1);
        // reduce chain images in key order against already-placed pivots
        let mut pivots: Vec<(usize, usize, Vec<Scalar>)> = Vec::new(); // (row, chain, column)
        for s in self.alive_in_key_order(k) {
            let mut col = m.column(self.slot_of(s, k));
            for (prow, pchain, pcol) in &pivots {
                if col[*prow].is_zero() {
                    continue;
                }
                let c = col[*prow].div(&pcol[*prow]).expect("pivot entry is nonzero");
                for r in 0..target_dim {
                    col[r] = col[r].sub(&c.mul(&pcol[r]));
                }
                self.retro_add(*pchain, s, &c.neg(), k);
            }
            match col.iter().position(|x| !x.is_zero()) {
                None => self.chains[s].death = Some(k),
                Some(prow) => pivots.push((prow, s, col)),
            }
        }
        // new basis: surviving image columns, then unit completions
        let mut basis = Matrix::zeros(field, target_dim, 0);
        let mut labels = Vec::new();
        for (_, chain, col) in &pivots {
            let mut col_m = Matrix::zeros(field, target_dim, 1);
            for (r, x) in col.iter().enumerate() {
                col_m.set(r, 0, x.clone());
            }
            basis = basis.hstack(&col_m).expect("row counts agree");
            labels.push(*chain);
        }
        let pivot_rows: Vec<usize> = pivots.iter().map(|p| p.0).collect();
        for r in 0..target_dim {
            if !pivot_rows.contains(&r) {
                let mut e = Matrix::zeros(field, target_dim, 1);
                e.set(r, 0, field.one());
                basis = basis.hstack(&e).expect("row counts agree");
                let c = self.new_chain(k + 1, BirthType::Fwd);
                labels.push(c);
            }
        }
        self.bases.push(basis);
        self.labels.push(labels);
    }

    fn backward_step(&mut self, k: usize, arrow: usize) {
        let g = &self.rep.maps[arrow];
        let field = self.rep.field;
        let source_dim = self.dim(k + 1);
        let inv = self.bases[k].inverse().expect("basis is invertible");
        // chain coordinates of the backward map; rows = slots at position k
        let mut m = inv.mul(g).expect("shapes agree");
        let mut c = Matrix::identity(field, source_dim);
        let key_at = |sw: &Self, slot: usize| {
            let chain = sw.labels[k][slot];
            (sw.chains[chain].key(), slot)
        };
        let col_sub = |m: &mut Matrix, c: &mut Matrix, j: usize, j2: usize, coef: &Scalar| {
            for r in 0..m.rows {
                let v = m.get(r, j).sub(&coef.mul(m.get(r, j2)));
                m.set(r, j, v);
            }
            for r in 0..c.rows {
                let v = c.get(r, j).sub(&coef.mul(c.get(r, j2)));
                c.set(r, j, v);
            }
        };
        // bidirectional column echelon with "low" = admissibly latest row
        let mut finalized: Vec<(usize, usize)> = Vec::new(); // (column, low row)
        let mut births = Vec::new();
        for j in 0..source_dim {
            for &(j2, low2) in &finalized {
                if m.get(low2, j).is_zero() {
                    continue;
                }
                let coef = m.get(low2, j).div(m.get(low2, j2)).expect("low is nonzero");
                col_sub(&mut m, &mut c, j, j2, &coef);
            }
            let mut low = None;
            for r in 0..m.rows {
                if !m.get(r, j).is_zero() {
                    low = match low {
                        None => Some(r),
                        Some(r0) if key_at(self, r) > key_at(self, r0) => Some(r),
                        keep => keep,
                    };
                }
            }
            match low {
                None => births.push(j),
                Some(low) => {
                    for &(j2, _) in &finalized {
                        if m.get(low, j2).is_zero() {
                            continue;
                        }
                        let coef = m.get(low, j2).div(m.get(low, j)).expect("low is nonzero");
                        col_sub(&mut m, &mut c, j2, j, &coef);
                    }
                    finalized.push((j, low));
                }
            }
        }
        // clear the remaining entries of each finalized column by chain
        // edits at position k; other finalized columns are zero in the low
        // rows, so only the column being cleared changes
        for &(j, low) in &finalized {
            let low_chain = self.labels[k][low];
            for s in 0..m.rows {
                if s == low || m.get(s, j).is_zero() {
                    continue;
                }
                let mu = m.get(s, j).div(m.get(low, j)).expect("low is nonzero");
                let s_chain = self.labels[k][s];
                // row edit: row_s -= mu * row_low, realized by t += mu*s
                for col in 0..m.cols {
                    let v = m.get(s, col).sub(&mu.mul(m.get(low, col)));
                    m.set(s, col, v);
                }
                self.retro_add(s_chain, low_chain, &mu, k);
            }
            // normalize so the continuation has coefficient exactly 1
            let pivot = m.get(low, j).clone();
            if !pivot.is_one() {
                let inv_pivot = pivot.inv().expect("low entry is nonzero");
                for r in 0..m.rows {
                    let v = inv_pivot.mul(m.get(r, j));
                    m.set(r, j, v);
                }
                for r in 0..c.rows {
                    let v = inv_pivot.mul(c.get(r, j));
                    c.set(r, j, v);
                }
            }
        }
        // deaths: chains at k whose slot is not continued by any low
        let lows: Vec<usize> = finalized.iter().map(|f| f.1).collect();
        for slot in 0..self.labels[k].len() {
            if !lows.contains(&slot) {
                let chain = self.labels[k][slot];
                self.chains[chain].death = Some(k);
            }
        }
        // labels at k+1 follow the column order of the new basis
        let mut labels = vec![usize::MAX; source_dim];
        for &(j, low) in &finalized {
            labels[j] = self.labels[k][low];
        }
        for j in births {
            let chain = self.new_chain(k + 1, BirthType::Bwd);
            labels[j] = chain;
        }
        debug_assert!(labels.iter().all(|&c| c != usize::MAX));
        self.bases.push(c);
        self.labels.push(labels);
    }

    fn run(&mut self) {
        let d0 = self.dim(0);
        self.bases
            .push(Matrix::identity(self.rep.field, d0));
        let mut labels0 = Vec::with_capacity(d0);
        for _ in 0..d0 {
            let c = self.new_chain(0, BirthType::Initial);
            labels0.push(c);
        }
        self.labels.push(labels0);
        for k in 0..self.comp.edges.len() {
            let (arrow, fwd) = self.comp.edges[k];
            if fwd {
                self.forward_step(k, arrow);
            } else {
                self.backward_step(k, arrow);
            }
        }
    }
}

/// Decompose a representation of a path-shaped quiver into intervals, with
/// an explicit isomorphism onto the canonical direct sum.
pub fn decompose_intervals(rep: &Rep) -> Result<IntervalDecomposition, RepError> {
    let layout = path_layout(&rep.quiver)?;
    let field = rep.field;
    let nv = rep.quiver.vertices.len();

    // run the sweep per component and collect interval instances
    struct Instance {
        component: usize,
        a: usize,
        b: usize,
        chain: usize,
    }
    let mut instances: Vec<Instance> = Vec::new();
    let mut chain_coords: Vec<Option<Matrix>> = vec![None; nv]; // original -> slot coords
    let mut slot_owner_instance: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (ci, comp) in layout.components.iter().enumerate() {
        let mut sweep = Sweep {
            rep,
            comp,
            bases: Vec::new(),
            labels: Vec::new(),
            chains: Vec::new(),
        };
        sweep.run();
        let last = comp.vertices.len() - 1;
        let first_instance = instances.len();
        for (chain_id, chain) in sweep.chains.iter().enumerate() {
            instances.push(Instance {
                component: ci,
                a: chain.birth,
                b: chain.death.unwrap_or(last),
                chain: chain_id,
            });
        }
        for (p, &v) in comp.vertices.iter().enumerate() {
            chain_coords[v] = Some(
                sweep.bases[p]
                    .inverse()
                    .expect("sweep bases are invertible"),
            );
            slot_owner_instance[v] = sweep.labels[p]
                .iter()
                .map(|&chain| {
                    (first_instance..instances.len())
                        .find(|&i| instances[i].chain == chain && instances[i].component == ci)
                        .expect("every chain owns an instance")
                })
                .collect();
        }
    }

    // canonical order of instances: by component, then interval, then
    // discovery; this fixes the basis order of the direct sum
    let mut order: Vec<usize> = (0..instances.len()).collect();
    order.sort_by_key(|&i| {
        let inst = &instances[i];
        (inst.component, inst.a, inst.b, i)
    });
    let rank_of_instance = {
        let mut rank = vec![0usize; instances.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        rank
    };

    // dims and per-vertex canonical row order of the direct sum
    let mut sum_dims = vec![0usize; nv];
    let mut rows_at_vertex: Vec<Vec<usize>> = vec![Vec::new(); nv]; // instance ids in row order
    for (ci, comp) in layout.components.iter().enumerate() {
        for (p, &v) in comp.vertices.iter().enumerate() {
            let mut here: Vec<usize> = (0..instances.len())
                .filter(|&i| {
                    instances[i].component == ci && instances[i].a <= p && p <= instances[i].b
                })
                .collect();
            here.sort_by_key(|&i| rank_of_instance[i]);
            sum_dims[v] = here.len();
            rows_at_vertex[v] = here;
        }
    }

    // the canonical summand representation: partial identities everywhere
    let mut sum_maps = Vec::with_capacity(rep.quiver.arrows.len());
    for arrow in &rep.quiver.arrows {
        let s = rep.quiver.vertex_index(arrow.src).unwrap();
        let t = rep.quiver.vertex_index(arrow.tgt).unwrap();
        let mut mmat = Matrix::zeros(field, sum_dims[t], sum_dims[s]);
        for (col, &i) in rows_at_vertex[s].iter().enumerate() {
            if let Some(row) = rows_at_vertex[t].iter().position(|&j| j == i) {
                mmat.set(row, col, field.one());
            }
        }
        sum_maps.push(mmat);
    }
    let summands = Rep::new(rep.quiver.clone(), field, sum_dims, sum_maps)
        .expect("interval sums satisfy the relations the input satisfies");

    // assemble the isomorphism: row r of iso[v] is the chain coordinate of
    // the instance occupying row r
    let mut iso = Vec::with_capacity(nv);
    for v in 0..nv {
        let coords = chain_coords[v].as_ref().expect("vertex lies on a path");
        let mut phi = Matrix::zeros(field, summands.dims[v], rep.dims[v]);
        for (r, &i) in rows_at_vertex[v].iter().enumerate() {
            let slot = slot_owner_instance[v]
                .iter()
                .position(|&j| j == i)
                .expect("instance occupies a slot");
            for ccol in 0..rep.dims[v] {
                phi.set(r, ccol, coords.get(slot, ccol).clone());
            }
        }
        iso.push(phi);
    }
    debug_assert!(super::is_rep_iso(rep, &summands, &iso));

    // collapse instances into the interval multiset
    let mut intervals: Vec<Interval> = Vec::new();
    for &i in &order {
        let inst = &instances[i];
        let len = layout.components[inst.component].vertices.len();
        let entry = Interval {
            component: inst.component,
            a: inst.a as i64,
            b: inst.b as i64,
            clipped_left: inst.a == 0,
            clipped_right: inst.b == len - 1,
            mult: 1,
        };
        match intervals.last_mut() {
            Some(prev)
                if prev.component == entry.component
                    && prev.a == entry.a
                    && prev.b == entry.b =>
            {
                prev.mult += 1;
            }
            _ => intervals.push(entry),
        }
    }

    Ok(IntervalDecomposition {
        layout,
        intervals,
        summands,
        iso,
    })
}

impl IntervalDecomposition {
    /// Re-check everything the construction promises: the isomorphism is a
    /// genuine rep isomorphism onto the canonical interval sum, and the
    /// interval dimension vectors add up to the input's.
    pub fn verify(&self, original: &Rep) -> bool {
        if !super::is_rep_iso(original, &self.summands, &self.iso) {
            return false;
        }
        let mut dim_check = vec![0usize; original.quiver.vertices.len()];
        for iv in &self.intervals {
            let comp = &self.layout.components[iv.component];
            for p in iv.a..=iv.b {
                dim_check[comp.vertices[p as usize]] += iv.mult;
            }
        }
        dim_check == original.dims
    }

    /// Intervals relabeled by plain integer vertex names, available when
    /// every component is a run of consecutive integers in walk order (the
    /// usual shape for decomposition windows).
    pub fn labeled_intervals(&self) -> Option<Vec<Interval>> {
        let mut out = Vec::new();
        for iv in &self.intervals {
            let comp = &self.layout.components[iv.component];
            let start = self.vertex_label(comp, 0)?;
            for (p, _) in comp.vertices.iter().enumerate() {
                if self.vertex_label(comp, p) != Some(start + p as i64) {
                    return None;
                }
            }
            out.push(Interval {
                a: start + iv.a,
                b: start + iv.b,
                ..*iv
            });
        }
        Some(out)
    }

    fn vertex_label(&self, comp: &PathComponent, p: usize) -> Option<i64> {
        match self.summands.quiver.vertices[comp.vertices[p]] {
            crate::quiver::VertexId::Plain(x) => Some(x),
            _ => None,
        }
    }
}
