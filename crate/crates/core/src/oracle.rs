//! Brute-force ground truth.
//!
//! [`enumerate_subreps`] lists coordinate subrepresentations of any
//! basis-aligned representation by searching over per-vertex basis subsets.
//! It knows nothing about chains or tail lengths. [`end_space_dim`] solves
//! the commutation constraints of a quiver morphism space exactly.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rep::CoordRep;

/// Per-vertex sorted subsets of basis positions (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoordinateSubrep {
    pub parts: Vec<Vec<usize>>,
}

impl CoordinateSubrep {
    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }
}

/// Maximum number of candidate subsets a search may examine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(20_000_000)
    }
}

struct Search<'a> {
    rep: &'a CoordRep,
    target: &'a [usize],
    order: Vec<usize>,
    chosen: Vec<Option<Vec<bool>>>,
    parts: Vec<Vec<usize>>,
    examined: u64,
    budget: u64,
    found: Vec<CoordinateSubrep>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> Result<()> {
        if depth == self.order.len() {
            self.found.push(CoordinateSubrep {
                parts: self.parts.clone(),
            });
            return Ok(());
        }
        let v = self.order[depth];
        let dim = self.rep.dims()[v];
        let want = self.target[v];

        let mut required = vec![false; dim];
        let mut allowed = vec![true; dim];
        for a in self.rep.arrows() {
            if a.source == a.target {
                continue;
            }
            if a.target == v && self.chosen[a.source].is_some() {
                for &x in &self.parts[a.source] {
                    if let Some(y) = a.map[x] {
                        required[y] = true;
                    }
                }
            }
            if a.source == v {
                if let Some(member) = &self.chosen[a.target] {
                    for (x, img) in a.map.iter().enumerate() {
                        if img.is_some_and(|y| !member[y]) {
                            allowed[x] = false;
                        }
                    }
                }
            }
        }
        if required.iter().zip(&allowed).any(|(&r, &a)| r && !a) {
            return Ok(());
        }
        let fixed: Vec<usize> = (0..dim).filter(|&x| required[x]).collect();
        if fixed.len() > want {
            return Ok(());
        }
        let free: Vec<usize> = (0..dim).filter(|&x| allowed[x] && !required[x]).collect();
        for extra in free.into_iter().combinations(want - fixed.len()) {
            self.examined += 1;
            if self.examined > self.budget {
                return Err(Error::BudgetExceeded { budget: self.budget });
            }
            let mut part: Vec<usize> = fixed.iter().copied().chain(extra).collect();
            part.sort_unstable();
            let mut member = vec![false; dim];
            for &x in &part {
                member[x] = true;
            }
            let loops_ok = self
                .rep
                .arrows()
                .iter()
                .filter(|a| a.source == v && a.target == v)
                .all(|a| part.iter().all(|&x| a.map[x].is_none_or(|y| member[y])));
            if !loops_ok {
                continue;
            }
            self.parts[v] = part;
            self.chosen[v] = Some(member);
            self.run(depth + 1)?;
            self.chosen[v] = None;
            self.parts[v].clear();
        }
        Ok(())
    }
}

/// Vertices ordered so that each one is as constrained as possible by the
/// ones already placed.
fn search_order(rep: &CoordRep) -> Vec<usize> {
    let nv = rep.vertex_count();
    let mut placed = vec![false; nv];
    let mut order = Vec::with_capacity(nv);
    for _ in 0..nv {
        let next = (0..nv)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = rep
                    .arrows()
                    .iter()
                    .filter(|a| {
                        (a.source == v && a.target != v && placed[a.target])
                            || (a.target == v && a.source != v && placed[a.source])
                    })
                    .count();
                (links, std::cmp::Reverse(rep.dims()[v]), std::cmp::Reverse(v))
            })
            .expect("an unplaced vertex remains");
        placed[next] = true;
        order.push(next);
    }
    order
}

/// All coordinate subrepresentations of `rep` with the given dimension vector,
/// sorted.
pub fn enumerate_subreps(rep: &CoordRep, target: &[usize], budget: Budget) -> Result<Vec<CoordinateSubrep>> {
    assert_eq!(target.len(), rep.vertex_count(), "dimension vector arity");
    if target.iter().zip(rep.dims()).any(|(t, d)| t > d) {
        return Ok(Vec::new());
    }
    let nv = rep.vertex_count();
    let mut search = Search {
        rep,
        target,
        order: search_order(rep),
        chosen: vec![None; nv],
        parts: vec![Vec::new(); nv],
        examined: 0,
        budget: budget.0,
        found: Vec::new(),
    };
    search.run(0)?;
    let mut found = search.found;
    found.sort();
    Ok(found)
}

/// `dim Hom(a, b)` for two representations of the same quiver.
pub fn end_space_dim(a: &CoordRep, b: &CoordRep) -> usize {
    assert_eq!(a.vertex_count(), b.vertex_count(), "different quivers");
    assert_eq!(a.arrows().len(), b.arrows().len(), "different quivers");
    let mut offset = Vec::with_capacity(a.vertex_count());
    let mut unknowns = 0;
    for v in 0..a.vertex_count() {
        offset.push(unknowns);
        unknowns += a.dims()[v] * b.dims()[v];
    }
    // X_v[p][c] for p < dim b_v, c < dim a_v.
    let var = |v: usize, p: usize, c: usize| offset[v] + p * a.dims()[v] + c;

    let mut rows = Vec::new();
    for (arr_a, arr_b) in a.arrows().iter().zip(b.arrows()) {
        assert_eq!(
            (arr_a.source, arr_a.target),
            (arr_b.source, arr_b.target),
            "different quivers"
        );
        let (s, t) = (arr_a.source, arr_a.target);
        let mut preimage = vec![Vec::new(); b.dims()[t]];
        for (x, y) in arr_b.map.iter().enumerate() {
            if let Some(y) = y {
                preimage[*y].push(x);
            }
        }
        // (B_a X_s)[p][c] = (X_t A_a)[p][c]
        for (p, pre) in preimage.iter().enumerate() {
            for c in 0..a.dims()[s] {
                let mut row: Vec<(usize, i64)> = pre.iter().map(|&x| (var(s, x, c), 1)).collect();
                if let Some(y) = arr_a.map[c] {
                    row.push((var(t, p, y), -1));
                }
                rows.push(row);
            }
        }
    }
    linalg::nullity(unknowns, rows)
}
