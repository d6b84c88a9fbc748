//! Torus fixed points of `X_S(k, n, ω)`.
//!
//! A fixed point is a coordinate subrepresentation of the ambient. It is
//! recorded either as a juggling pattern (the index sets `J_i` at every
//! vertex) or as a tail-length vector `ℓ` (the subrepresentation is the union
//! of the last `ℓ_j` entries of each chain `j`). The two models are in
//! bijection.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ambient::{chains, Chain, ParahoricData};
use crate::error::{Error, Result};

/// `J_i ⊆ [ωn]` for every vertex `i`, each sorted. Orders lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JugglingPattern(pub Vec<Vec<usize>>);

impl JugglingPattern {
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.0
    }

    /// Vertex-wise dominance `self ≥ other`: the sorted entries of `self` are
    /// pointwise at most those of `other`.
    pub fn dominates(&self, other: &JugglingPattern) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(a, b)| a.iter().zip(b).all(|(x, y)| x <= y))
    }
}

/// Tail lengths indexed by chain label: `self.0[j - 1]` is `ℓ_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LVector(pub Vec<usize>);

impl LVector {
    pub fn get(&self, label: usize) -> usize {
        self.0[label - 1]
    }
}

/// Sorted multiset of `(end vertex, tail length)` over the nonzero tails.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StratumKey(pub Vec<(usize, usize)>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPoint {
    pub pattern: JugglingPattern,
    pub lvector: LVector,
    pub energy: usize,
}

/// An instance together with its chains and all of its fixed points, sorted by
/// pattern.
#[derive(Debug, Clone)]
pub struct Grassmannian {
    data: ParahoricData,
    chains: Vec<Chain>,
    points: Vec<FixedPoint>,
}

impl Grassmannian {
    pub fn new(data: &ParahoricData) -> Result<Self> {
        let chains = chains(data)?;
        let mut points: Vec<FixedPoint> = lvector_candidates(data, &chains)
            .into_iter()
            .map(|l| {
                let pattern = pattern_of(data, &chains, &l);
                let energy = energy(data, &pattern);
                FixedPoint {
                    pattern,
                    lvector: l,
                    energy,
                }
            })
            .collect();
        points.sort_by(|a, b| a.pattern.cmp(&b.pattern));
        Ok(Self {
            data: data.clone(),
            chains,
            points,
        })
    }

    pub fn data(&self) -> &ParahoricData {
        &self.data
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn points(&self) -> &[FixedPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, pattern: &JugglingPattern) -> Option<usize> {
        self.points.binary_search_by(|p| p.pattern.cmp(pattern)).ok()
    }

    pub fn index_of_lvector(&self, l: &LVector) -> Option<usize> {
        self.points.iter().position(|p| &p.lvector == l)
    }

    pub fn stratum_key(&self, l: &LVector) -> StratumKey {
        key_of(&self.chains, l)
    }

    pub fn pattern_of(&self, l: &LVector) -> JugglingPattern {
        pattern_of(&self.data, &self.chains, l)
    }
}

/// Tail-length vectors meeting the dimension condition, by backtracking over
/// chains. A full chain visits every vertex exactly `ω` times, which bounds
/// what the remaining chains can still contribute.
fn lvector_candidates(p: &ParahoricData, chains: &[Chain]) -> Vec<LVector> {
    let (n, r, len, kw, omega) = (p.n(), p.r(), p.chain_len(), p.kw(), p.omega());
    // counts[c][l][v]: entries of the length-l tail of chain c at vertex v
    let counts: Vec<Vec<Vec<usize>>> = chains
        .iter()
        .map(|c| {
            let mut rows = vec![vec![0; r]];
            for l in 1..=len {
                let mut row = rows[l - 1].clone();
                row[c.entries[len - l].vertex] += 1;
                rows.push(row);
            }
            rows
        })
        .collect();

    fn rec(
        c: usize,
        kw: usize,
        omega: usize,
        counts: &[Vec<Vec<usize>>],
        filled: &mut Vec<usize>,
        current: &mut Vec<usize>,
        out: &mut Vec<LVector>,
    ) {
        if c == counts.len() {
            if filled.iter().all(|&f| f == kw) {
                out.push(LVector(current.clone()));
            }
            return;
        }
        let remaining_after = counts.len() - c - 1;
        for (l, add) in counts[c].iter().enumerate() {
            let ok = filled
                .iter()
                .zip(add)
                .all(|(&f, &a)| f + a <= kw && kw - (f + a) <= omega * remaining_after);
            if !ok {
                continue;
            }
            for (f, a) in filled.iter_mut().zip(add) {
                *f += a;
            }
            current.push(l);
            rec(c + 1, kw, omega, counts, filled, current, out);
            current.pop();
            for (f, a) in filled.iter_mut().zip(add) {
                *f -= a;
            }
        }
    }

    let mut out = Vec::new();
    rec(
        0,
        kw,
        omega,
        &counts,
        &mut vec![0; r],
        &mut Vec::with_capacity(n),
        &mut out,
    );
    out
}

fn pattern_of(p: &ParahoricData, chains: &[Chain], l: &LVector) -> JugglingPattern {
    let mut parts = vec![Vec::with_capacity(p.kw()); p.r()];
    for (c, &len) in chains.iter().zip(&l.0) {
        for b in c.tail(len) {
            parts[b.vertex].push(b.index);
        }
    }
    for part in &mut parts {
        part.sort_unstable();
    }
    JugglingPattern(parts)
}

fn key_of(chains: &[Chain], l: &LVector) -> StratumKey {
    let mut key: Vec<(usize, usize)> = chains
        .iter()
        .zip(&l.0)
        .filter(|&(_, &len)| len > 0)
        .map(|(c, &len)| (c.end_vertex(), len))
        .collect();
    key.sort_unstable();
    StratumKey(key)
}

fn check_shape(p: &ParahoricData, j: &JugglingPattern) -> Result<()> {
    if j.0.len() != p.r() {
        return Err(Error::MalformedPattern(format!(
            "expected {} index sets, got {}",
            p.r(),
            j.0.len()
        )));
    }
    for (i, part) in j.0.iter().enumerate() {
        if part.len() != p.kw() {
            return Err(Error::MalformedPattern(format!(
                "set at vertex {} has {} elements, expected {}",
                i + 1,
                part.len(),
                p.kw()
            )));
        }
        if part.iter().any(|&x| x == 0 || x > p.m()) {
            return Err(Error::MalformedPattern(format!(
                "set at vertex {} leaves [1, {}]",
                i + 1,
                p.m()
            )));
        }
        if part.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::MalformedPattern(format!(
                "set at vertex {} is not strictly increasing",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Whether `τ_{q_i}(J_i ∩ [1, ωn − q_i]) ⊆ J_{i+1}` at every arrow. Malformed
/// input (wrong arity or cardinality, out-of-range or unsorted entries) is an
/// error.
pub fn validate_pattern(p: &ParahoricData, j: &JugglingPattern) -> Result<bool> {
    check_shape(p, j)?;
    let r = p.r();
    Ok((0..r).all(|i| {
        let next = &j.0[(i + 1) % r];
        j.0[i]
            .iter()
            .map(|x| x + p.gap(i))
            .filter(|&y| y <= p.m())
            .all(|y| next.binary_search(&y).is_ok())
    }))
}

/// All fixed points as juggling patterns, sorted.
pub fn all_patterns(p: &ParahoricData) -> Result<Vec<JugglingPattern>> {
    Ok(Grassmannian::new(p)?.points.into_iter().map(|fp| fp.pattern).collect())
}

/// `e(J) = Σ_i Σ_{j ∈ J_i \ τ_{q_{i−1}} J_{i−1}} #([j+1, ωn] \ J_i)`.
pub fn energy(p: &ParahoricData, j: &JugglingPattern) -> usize {
    let (r, m) = (p.r(), p.m());
    let mut e = 0;
    for i in 0..r {
        let prev = &j.0[(i + r - 1) % r];
        let q = p.gap(i + r - 1);
        let part = &j.0[i];
        for (pos, &x) in part.iter().enumerate() {
            let inherited = x > q && prev.binary_search(&(x - q)).is_ok();
            if !inherited {
                // entries of J_i above x are exactly part[pos + 1..]
                e += (m - x) - (part.len() - pos - 1);
            }
        }
    }
    e
}

pub fn to_lvector(p: &ParahoricData, j: &JugglingPattern) -> Result<LVector> {
    to_lvector_with(p, &chains(p)?, j)
}

fn to_lvector_with(p: &ParahoricData, chains: &[Chain], j: &JugglingPattern) -> Result<LVector> {
    if !validate_pattern(p, j)? {
        return Err(Error::MalformedPattern("shift condition fails at some arrow".into()));
    }
    let len = p.chain_len();
    let mut l = Vec::with_capacity(chains.len());
    for c in chains {
        let inside: Vec<bool> = c
            .entries
            .iter()
            .map(|b| j.0[b.vertex].binary_search(&b.index).is_ok())
            .collect();
        let count = inside.iter().filter(|&&x| x).count();
        if inside[..len - count].iter().any(|&x| x) {
            return Err(Error::Inconsistent(format!(
                "pattern meets chain {} outside a tail",
                c.label
            )));
        }
        l.push(count);
    }
    Ok(LVector(l))
}

pub fn from_lvector(p: &ParahoricData, l: &LVector) -> Result<JugglingPattern> {
    let chains = chains(p)?;
    check_lvector(p, &chains, l)?;
    Ok(pattern_of(p, &chains, l))
}

fn check_lvector(p: &ParahoricData, chains: &[Chain], l: &LVector) -> Result<()> {
    if l.0.len() != p.n() {
        return Err(Error::InvalidLVector(format!(
            "expected {} entries, got {}",
            p.n(),
            l.0.len()
        )));
    }
    if let Some(&bad) = l.0.iter().find(|&&x| x > p.chain_len()) {
        return Err(Error::InvalidLVector(format!(
            "tail length {bad} exceeds {}",
            p.chain_len()
        )));
    }
    let mut counts = vec![0; p.r()];
    for (c, &len) in chains.iter().zip(&l.0) {
        for b in c.tail(len) {
            counts[b.vertex] += 1;
        }
    }
    if counts.iter().any(|&x| x != p.kw()) {
        return Err(Error::InvalidLVector(format!(
            "vertex dimensions {counts:?} differ from {}",
            p.kw()
        )));
    }
    Ok(())
}

pub fn stratum_key(p: &ParahoricData, j: &JugglingPattern) -> Result<StratumKey> {
    let chains = chains(p)?;
    let l = to_lvector_with(p, &chains, j)?;
    Ok(key_of(&chains, &l))
}

/// Fixed points grouped by stratum key, keys ascending, patterns sorted.
pub fn strata_partition(p: &ParahoricData) -> Result<Vec<(StratumKey, Vec<JugglingPattern>)>> {
    let g = Grassmannian::new(p)?;
    let mut groups: BTreeMap<StratumKey, Vec<JugglingPattern>> = BTreeMap::new();
    for fp in &g.points {
        groups
            .entry(key_of(&g.chains, &fp.lvector))
            .or_default()
            .push(fp.pattern.clone());
    }
    Ok(groups.into_iter().collect())
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(size: usize) -> Self {
        Self {
            parent: (0..size).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            cur = std::mem::replace(&mut self.parent[cur], root);
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Free coordinates of the attracting cell: the coefficients `μ^{(i)}_{j,ℓ}`
/// with `j ∈ J_i` and `ℓ ∈ [j+1, ωn] \ J_i`, glued along
/// `μ^{(i+1)}_{j+q_i, ℓ+q_i} = μ^{(i)}_{j,ℓ}`.
pub fn cell_parameter_count(p: &ParahoricData, j: &JugglingPattern) -> usize {
    let (r, m) = (p.r(), p.m());
    let mut member = vec![vec![false; m + 1]; r];
    for (i, part) in j.0.iter().enumerate() {
        for &x in part {
            member[i][x] = true;
        }
    }
    let mut ids: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for (i, part) in j.0.iter().enumerate() {
        for &a in part {
            for (b, &inside) in member[i].iter().enumerate().skip(a + 1) {
                if !inside {
                    let next = ids.len();
                    ids.insert((i, a, b), next);
                }
            }
        }
    }
    let mut uf = UnionFind::new(ids.len());
    let mut classes = ids.len();
    for (&(i, a, b), &id) in &ids {
        let q = p.gap(i);
        let target = ((i + 1) % r, a + q, b + q);
        if let Some(&other) = ids.get(&target) {
            if uf.union(id, other) {
                classes -= 1;
            }
        }
    }
    classes
}

/// The vertex `max{i : s_i ≤ j < s_{i+1}}` (cyclically) in the printed form.
pub fn printed_floor_vertex(p: &ParahoricData, label: usize) -> usize {
    let s = p.s();
    match s.iter().rposition(|&x| x <= label) {
        Some(i) => i,
        None => p.r() - 1,
    }
}

/// Labels whose chain ends at a vertex other than [`printed_floor_vertex`], as
/// `(label, printed vertex, end vertex)`.
pub fn floor_vertex_mismatches(p: &ParahoricData) -> Result<Vec<(usize, usize, usize)>> {
    Ok(chains(p)?
        .iter()
        .filter_map(|c| {
            let printed = printed_floor_vertex(p, c.label);
            (printed != c.end_vertex()).then_some((c.label, printed, c.end_vertex()))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::make_parahoric;

    fn jp(parts: &[&[usize]]) -> JugglingPattern {
        JugglingPattern(parts.iter().map(|p| p.to_vec()).collect())
    }

    #[test]
    fn validation() {
        let p = make_parahoric(2, 1, 1, &[1, 2]).unwrap();
        assert_eq!(validate_pattern(&p, &jp(&[&[1], &[2]])), Ok(true));
        assert_eq!(validate_pattern(&p, &jp(&[&[1], &[1]])), Ok(false));
        assert!(matches!(
            validate_pattern(&p, &jp(&[&[1]])),
            Err(Error::MalformedPattern(_))
        ));
        assert!(matches!(
            validate_pattern(&p, &jp(&[&[1, 2], &[2]])),
            Err(Error::MalformedPattern(_))
        ));
        assert!(matches!(
            validate_pattern(&p, &jp(&[&[3], &[2]])),
            Err(Error::MalformedPattern(_))
        ));
        let p = make_parahoric(3, 0, 1, &[1, 2]).unwrap();
        assert_eq!(validate_pattern(&p, &jp(&[&[], &[]])), Ok(true));
    }

    #[test]
    fn worked_enumerations() {
        let p = make_parahoric(2, 1, 1, &[1]).unwrap();
        assert_eq!(all_patterns(&p).unwrap(), vec![jp(&[&[1]]), jp(&[&[2]])]);
        let p = make_parahoric(2, 1, 1, &[1, 2]).unwrap();
        assert_eq!(
            all_patterns(&p).unwrap(),
            vec![jp(&[&[1], &[2]]), jp(&[&[2], &[1]]), jp(&[&[2], &[2]])]
        );
        let p = make_parahoric(2, 1, 2, &[1]).unwrap();
        assert_eq!(
            all_patterns(&p).unwrap(),
            vec![jp(&[&[1, 3]]), jp(&[&[2, 4]]), jp(&[&[3, 4]])]
        );
    }

    #[test]
    fn worked_energies() {
        let p = make_parahoric(2, 1, 1, &[1, 2]).unwrap();
        assert_eq!(energy(&p, &jp(&[&[1], &[2]])), 1);
        assert_eq!(energy(&p, &jp(&[&[2], &[2]])), 0);
        let p = make_parahoric(2, 1, 2, &[1]).unwrap();
        assert_eq!(energy(&p, &jp(&[&[1, 3]])), 2);
        assert_eq!(energy(&p, &jp(&[&[2, 4]])), 1);
        assert_eq!(energy(&p, &jp(&[&[3, 4]])), 0);
    }

    #[test]
    fn lvector_conversions() {
        let p = make_parahoric(2, 1, 2, &[1]).unwrap();
        for (l, j) in [
            (vec![2, 0], jp(&[&[1, 3]])),
            (vec![0, 2], jp(&[&[2, 4]])),
            (vec![1, 1], jp(&[&[3, 4]])),
        ] {
            assert_eq!(from_lvector(&p, &LVector(l.clone())).unwrap(), j);
            assert_eq!(to_lvector(&p, &j).unwrap(), LVector(l));
        }
        let p = make_parahoric(2, 1, 1, &[1, 2]).unwrap();
        assert_eq!(from_lvector(&p, &LVector(vec![1, 1])).unwrap(), jp(&[&[2], &[2]]));
        assert!(matches!(
            from_lvector(&p, &LVector(vec![2, 2])),
            Err(Error::InvalidLVector(_))
        ));
        assert!(matches!(
            from_lvector(&p, &LVector(vec![3, 0])),
            Err(Error::InvalidLVector(_))
        ));
    }

    #[test]
    fn strata() {
        let p = make_parahoric(2, 1, 1, &[1]).unwrap();
        let parts = strata_partition(&p).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0, StratumKey(vec![(0, 1)]));
        assert_eq!(parts[0].1.len(), 2);

        let p = make_parahoric(2, 1, 1, &[1, 2]).unwrap();
        assert_eq!(stratum_key(&p, &jp(&[&[1], &[2]])).unwrap(), StratumKey(vec![(1, 2)]));
        assert_eq!(stratum_key(&p, &jp(&[&[2], &[1]])).unwrap(), StratumKey(vec![(0, 2)]));
        assert_eq!(
            stratum_key(&p, &jp(&[&[2], &[2]])).unwrap(),
            StratumKey(vec![(0, 1), (1, 1)])
        );
        assert_eq!(strata_partition(&p).unwrap().len(), 3);

        let p = make_parahoric(3, 0, 2, &[2, 3]).unwrap();
        let parts = strata_partition(&p).unwrap();
        assert_eq!(parts, vec![(StratumKey(vec![]), vec![jp(&[&[], &[]])])]);
    }

    #[test]
    fn worked_cell_counts() {
        let p = make_parahoric(2, 1, 1, &[1, 2]).unwrap();
        assert_eq!(cell_parameter_count(&p, &jp(&[&[1], &[2]])), 1);
        assert_eq!(cell_parameter_count(&p, &jp(&[&[2], &[2]])), 0);
        let p = make_parahoric(2, 1, 2, &[1]).unwrap();
        assert_eq!(cell_parameter_count(&p, &jp(&[&[1, 3]])), 2);
    }

    #[test]
    fn floor_map_differs_only_on_s() {
        let p = make_parahoric(5, 2, 1, &[2, 4]).unwrap();
        let bad = floor_vertex_mismatches(&p).unwrap();
        let labels: Vec<usize> = bad.iter().map(|b| b.0).collect();
        assert_eq!(labels, vec![2, 4]);
    }

    #[test]
    fn dominance() {
        assert!(jp(&[&[1], &[2]]).dominates(&jp(&[&[2], &[2]])));
        assert!(!jp(&[&[2], &[2]]).dominates(&jp(&[&[1], &[2]])));
        assert!(jp(&[&[1, 3]]).dominates(&jp(&[&[1, 3]])));
    }
}
