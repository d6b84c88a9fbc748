//! Poincaré polynomials, irreducible components and automorphism dimensions.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::ambient::{build_ambient, ParahoricData};
use crate::error::{Error, Result};
use crate::fixedpoints::{Grassmannian, JugglingPattern, LVector};
use crate::oracle::end_space_dim;
use crate::poly::IntPolynomial;
use crate::projections::project_pattern;

/// `Σ_J q^{e(J)}`.
pub fn poincare(p: &ParahoricData) -> Result<IntPolynomial> {
    Ok(poincare_of(&Grassmannian::new(p)?))
}

pub fn poincare_of(g: &Grassmannian) -> IntPolynomial {
    IntPolynomial::from_exponents(g.points().iter().map(|fp| fp.energy))
}

/// `Σ_{J′ ≤ J} q^{e(J′)}`.
pub fn poincare_closure(p: &ParahoricData, j: &JugglingPattern) -> Result<IntPolynomial> {
    let g = Grassmannian::new(p)?;
    closure_poincare_of(&g, j)
}

fn closure_poincare_of(g: &Grassmannian, j: &JugglingPattern) -> Result<IntPolynomial> {
    if g.index_of(j).is_none() {
        crate::fixedpoints::validate_pattern(g.data(), j)?;
        return Err(Error::MalformedPattern("not a fixed point of this instance".into()));
    }
    Ok(IntPolynomial::from_exponents(
        g.points()
            .iter()
            .filter(|fp| j.dominates(&fp.pattern))
            .map(|fp| fp.energy),
    ))
}

/// A `k`-subset of `[n]`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComponentIndex(pub Vec<usize>);

/// An irreducible component: its index, the fixed point of its dense cell and
/// the fixed points of its closure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub index: ComponentIndex,
    pub top: JugglingPattern,
    pub closure: Vec<JugglingPattern>,
}

/// `i ∈ I, i ∉ S ⇒ i + 1 ∈ I` (cyclically), and `|I| = k`.
pub fn is_component_index(p: &ParahoricData, index: &ComponentIndex) -> bool {
    let n = p.n();
    let set = &index.0;
    set.len() == p.k()
        && set.windows(2).all(|w| w[0] < w[1])
        && set.iter().all(|&i| (1..=n).contains(&i))
        && set
            .iter()
            .filter(|&&i| p.vertex_of(i).is_none())
            .all(|&i| set.contains(&(i % n + 1)))
}

pub fn irr_indices(p: &ParahoricData) -> Vec<ComponentIndex> {
    (1..=p.n())
        .combinations(p.k())
        .map(ComponentIndex)
        .filter(|i| is_component_index(p, i))
        .collect()
}

/// Top pattern of `I` in the model with `S = [n]`: the full chains labelled by
/// the elements of `I`.
fn full_top_pattern(p: &ParahoricData, index: &ComponentIndex) -> Result<JugglingPattern> {
    let full = p.full();
    let g = Grassmannian::new(&full)?;
    let mut l = vec![0; p.n()];
    for &i in &index.0 {
        l[i - 1] = full.chain_len();
    }
    Ok(g.pattern_of(&LVector(l)))
}

/// Top pattern of the component `I`, projected from the `S = [n]` model.
pub fn top_pattern(p: &ParahoricData, index: &ComponentIndex) -> Result<JugglingPattern> {
    if !is_component_index(p, index) {
        return Err(Error::NotAComponent(index.0.clone()));
    }
    let full = p.full();
    project_pattern(&full, p, &full_top_pattern(p, index)?)
}

pub fn irr_components(p: &ParahoricData) -> Result<Vec<Component>> {
    let g = Grassmannian::new(p)?;
    components_of(&g)
}

pub fn components_of(g: &Grassmannian) -> Result<Vec<Component>> {
    let p = g.data();
    irr_indices(p)
        .into_iter()
        .map(|index| {
            let top = top_pattern(p, &index)?;
            let closure = g
                .points()
                .iter()
                .filter(|fp| top.dominates(&fp.pattern))
                .map(|fp| fp.pattern.clone())
                .collect();
            Ok(Component { index, top, closure })
        })
        .collect()
}

/// Removing vertex `vertex` from the full model keeps the dimension of the
/// top cell with pattern `j`: `1 ∉ J_i`, or both `1` and `ωn` lie in `J_i`.
pub fn preserves_top_dimension(j: &JugglingPattern, vertex: usize, m: usize) -> bool {
    let part = &j.0[vertex];
    part.first() != Some(&1) || part.last() == Some(&m)
}

/// Component indices obtained by keeping the top cells of the full model
/// whose dimension survives removal of every vertex outside `S`.
pub fn indices_by_dimension_preservation(p: &ParahoricData) -> Result<Vec<ComponentIndex>> {
    let removed: Vec<usize> = (1..=p.n()).filter(|&s| p.vertex_of(s).is_none()).collect();
    let mut out = Vec::new();
    for subset in (1..=p.n()).combinations(p.k()) {
        let index = ComponentIndex(subset);
        let top = full_top_pattern(p, &index)?;
        if removed.iter().all(|&s| preserves_top_dimension(&top, s - 1, p.m())) {
            out.push(index);
        }
    }
    Ok(out)
}

/// `(max energy, number of patterns attaining it)`, checked against
/// `ωk(n − k)` and the component count. Also checks that the patterns of
/// maximal energy are exactly the top patterns.
pub fn dimension_check(p: &ParahoricData) -> Result<(usize, usize)> {
    let g = Grassmannian::new(p)?;
    dimension_check_of(&g)
}

pub fn dimension_check_of(g: &Grassmannian) -> Result<(usize, usize)> {
    let p = g.data();
    let dim = g.points().iter().map(|fp| fp.energy).max().unwrap_or(0);
    let top: Vec<&JugglingPattern> = g
        .points()
        .iter()
        .filter(|fp| fp.energy == dim)
        .map(|fp| &fp.pattern)
        .collect();
    if dim != p.expected_dim() {
        return Err(Error::Verification(format!(
            "dimension {dim} differs from {}",
            p.expected_dim()
        )));
    }
    let mut expected: Vec<JugglingPattern> = irr_indices(p)
        .iter()
        .map(|i| top_pattern(p, i))
        .collect::<Result<_>>()?;
    expected.sort();
    if top.len() != expected.len() || top.iter().zip(&expected).any(|(a, b)| *a != b) {
        return Err(Error::Verification(format!(
            "{} top-dimensional cells but {} component indices",
            top.len(),
            expected.len()
        )));
    }
    Ok((dim, top.len()))
}

/// `Σ_{i=1}^{r} Σ_{j=1}^{ωr} q_i q_{i−j+1}` with indices mod `r`.
pub fn aut_dim_formula(p: &ParahoricData) -> usize {
    let r = p.r();
    (0..r)
        .map(|i| {
            (1..=p.chain_len())
                .map(|j| p.gap(i) * p.gap((i + r * j + 1 - j) % r))
                .sum::<usize>()
        })
        .sum()
}

/// `dim End(U_{ωn,S})` by exact linear algebra.
pub fn aut_dim_oracle(p: &ParahoricData) -> usize {
    let amb = build_ambient(p).to_coord_rep();
    end_space_dim(&amb, &amb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::make_parahoric;
    use crate::poly::gaussian_binomial;

    fn ci(v: &[usize]) -> ComponentIndex {
        ComponentIndex(v.to_vec())
    }

    #[test]
    fn worked_poincare() {
        let p = make_parahoric(2, 1, 1, &[1]).unwrap();
        assert_eq!(poincare(&p).unwrap().to_string(), "q + 1");
        assert_eq!(poincare(&p).unwrap(), gaussian_binomial(2, 1));
        let p = make_parahoric(2, 1, 1, &[1, 2]).unwrap();
        assert_eq!(poincare(&p).unwrap().to_string(), "2q + 1");
        let p = make_parahoric(2, 1, 2, &[1]).unwrap();
        assert_eq!(poincare(&p).unwrap().to_string(), "q^2 + q + 1");
    }

    #[test]
    fn worked_closures() {
        let p = make_parahoric(2, 1, 1, &[1, 2]).unwrap();
        let j = JugglingPattern(vec![vec![1], vec![2]]);
        assert_eq!(poincare_closure(&p, &j).unwrap().to_string(), "q + 1");
        let low = JugglingPattern(vec![vec![2], vec![2]]);
        assert_eq!(poincare_closure(&p, &low).unwrap().to_string(), "1");
        let p = make_parahoric(2, 1, 2, &[1]).unwrap();
        let j = JugglingPattern(vec![vec![1, 3]]);
        assert_eq!(poincare_closure(&p, &j).unwrap().to_string(), "q^2 + q + 1");
    }

    #[test]
    fn worked_components() {
        let p = make_parahoric(2, 1, 1, &[1]).unwrap();
        assert_eq!(irr_indices(&p), vec![ci(&[1])]);
        let p = make_parahoric(2, 1, 1, &[1, 2]).unwrap();
        assert_eq!(irr_indices(&p), vec![ci(&[1]), ci(&[2])]);
        let comps = irr_components(&p).unwrap();
        assert_eq!(comps[0].top, JugglingPattern(vec![vec![1], vec![2]]));
        assert_eq!(comps[1].top, JugglingPattern(vec![vec![2], vec![1]]));
        assert_eq!(comps[0].closure.len(), 2);
        let p = make_parahoric(4, 4, 1, &[2]).unwrap();
        assert_eq!(irr_indices(&p), vec![ci(&[1, 2, 3, 4])]);
        assert_eq!(
            top_pattern(&make_parahoric(2, 1, 1, &[1]).unwrap(), &ci(&[2])),
            Err(Error::NotAComponent(vec![2]))
        );
    }

    #[test]
    fn worked_dimension_checks() {
        let p = make_parahoric(2, 1, 1, &[1, 2]).unwrap();
        assert_eq!(dimension_check(&p).unwrap(), (1, 2));
        let p = make_parahoric(2, 1, 2, &[1]).unwrap();
        assert_eq!(dimension_check(&p).unwrap(), (2, 1));
        let p = make_parahoric(3, 0, 1, &[2]).unwrap();
        assert_eq!(dimension_check(&p).unwrap(), (0, 1));
    }

    #[test]
    fn dimension_preservation_matches_irr() {
        for n in 1..=4 {
            for k in 0..=n {
                for size in 1..=n {
                    for s in (1..=n).combinations(size) {
                        let p = make_parahoric(n, k, 1, &s).unwrap();
                        assert_eq!(indices_by_dimension_preservation(&p).unwrap(), irr_indices(&p));
                    }
                }
            }
        }
    }

    #[test]
    fn worked_aut_dims() {
        let p = make_parahoric(2, 1, 1, &[1]).unwrap();
        assert_eq!((aut_dim_formula(&p), aut_dim_oracle(&p)), (4, 4));
        let p = make_parahoric(3, 1, 1, &[1, 3]).unwrap();
        assert_eq!(aut_dim_formula(&p), 9);
        assert_eq!(aut_dim_oracle(&p), 9);
        let p = make_parahoric(2, 1, 1, &[1, 2]).unwrap();
        assert_eq!(aut_dim_oracle(&p), 4);
    }
}
