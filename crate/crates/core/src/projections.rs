//! Parahoric projections `X_S → X_{S′}` for `S′ ⊆ S` on fixed points, and a
//! section built by the greedy lift.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::ambient::ParahoricData;
use crate::error::{Error, Result};
use crate::fixedpoints::{all_patterns, validate_pattern, JugglingPattern};

fn check_pair(over_s: &ParahoricData, over_sub: &ParahoricData) -> Result<Vec<usize>> {
    if (over_s.n(), over_s.k(), over_s.omega()) != (over_sub.n(), over_sub.k(), over_sub.omega()) {
        return Err(Error::IncompatibleInstances);
    }
    over_sub
        .s()
        .iter()
        .map(|&x| over_s.vertex_of(x))
        .collect::<Option<Vec<usize>>>()
        .ok_or_else(|| Error::NotSubset {
            sub: over_sub.s().to_vec(),
            sup: over_s.s().to_vec(),
        })
}

fn require_valid(p: &ParahoricData, j: &JugglingPattern) -> Result<()> {
    if validate_pattern(p, j)? {
        Ok(())
    } else {
        Err(Error::MalformedPattern("shift condition fails at some arrow".into()))
    }
}

/// Forgets the subspaces at the vertices of `S \ S′`.
pub fn project_pattern(
    over_s: &ParahoricData,
    over_sub: &ParahoricData,
    j: &JugglingPattern,
) -> Result<JugglingPattern> {
    let keep = check_pair(over_s, over_sub)?;
    require_valid(over_s, j)?;
    Ok(JugglingPattern(keep.into_iter().map(|v| j.0[v].clone()).collect()))
}

/// A preimage of `j` under the projection from `S` to `S′`.
///
/// The vertices of `S` missing from `S′` are filled gap by gap, each from the
/// nearest known vertex before it (`left`) and the next vertex of `S′`
/// (`right`): seed with the image of `J_left`, then repeatedly add the largest
/// missing index whose image reaches `J_right` or is killed before it.
pub fn lift_pattern(over_sub: &ParahoricData, over_s: &ParahoricData, j: &JugglingPattern) -> Result<JugglingPattern> {
    check_pair(over_s, over_sub)?;
    require_valid(over_sub, j)?;
    let (n, m, kw) = (over_s.n(), over_s.m(), over_s.kw());
    let sub = over_sub.s();

    let mut known: Vec<Option<BTreeSet<usize>>> = vec![None; n + 1];
    for (&s, part) in sub.iter().zip(&j.0) {
        known[s] = Some(part.iter().copied().collect());
    }
    for (t, &start) in sub.iter().enumerate() {
        let right = sub[(t + 1) % sub.len()];
        // distance from `start` to `right`, which is n when S′ has one element
        let span = (right + n - start - 1) % n + 1;
        let mut inside: Vec<usize> = over_s
            .s()
            .iter()
            .copied()
            .filter(|&s| {
                let off = (s + n - start) % n;
                off > 0 && off < span
            })
            .collect();
        inside.sort_by_key(|&s| (s + n - start) % n);

        let mut left = start;
        for s0 in inside {
            let a = (s0 + n - left) % n;
            let d = match (right + n - s0) % n {
                0 => n,
                d => d,
            };
            let from_left = known[left].as_ref().expect("left vertex is filled");
            let from_right = known[right].as_ref().expect("right vertex is in S'");
            let mut part: BTreeSet<usize> = from_left.iter().map(|x| x + a).filter(|&y| y <= m).collect();
            let pool: BTreeSet<usize> = from_right
                .iter()
                .filter(|&&x| x > d)
                .map(|x| x - d)
                .chain(m.saturating_sub(d) + 1..=m)
                .collect();
            while part.len() < kw {
                let next = pool
                    .iter()
                    .rev()
                    .find(|x| !part.contains(x))
                    .copied()
                    .ok_or_else(|| Error::Inconsistent(format!("lift pool exhausted at vertex {s0}")))?;
                part.insert(next);
            }
            if part.len() != kw {
                return Err(Error::Inconsistent(format!(
                    "lift seed at vertex {s0} is larger than {kw}"
                )));
            }
            known[s0] = Some(part);
            left = s0;
        }
    }
    let lifted = JugglingPattern(
        over_s
            .s()
            .iter()
            .map(|&s| known[s].take().expect("every vertex filled").into_iter().collect())
            .collect(),
    );
    if !validate_pattern(over_s, &lifted)? {
        return Err(Error::Inconsistent(format!("lift of {:?} is not a fixed point", j.0)));
    }
    Ok(lifted)
}

/// Whether the projection maps the fixed points over `S` onto those over `S′`.
pub fn image_check(over_s: &ParahoricData, over_sub: &ParahoricData) -> Result<bool> {
    let image: BTreeSet<JugglingPattern> = all_patterns(over_s)?
        .iter()
        .map(|j| project_pattern(over_s, over_sub, j))
        .collect::<Result<_>>()?;
    let target: BTreeSet<JugglingPattern> = all_patterns(over_sub)?.into_iter().collect();
    Ok(image == target)
}

/// Orderings of `t` that the commutation check compares: all of them when
/// `|T| ≤ 3`, otherwise the rotations and their reverses.
pub fn orderings(t: &[usize]) -> Vec<Vec<usize>> {
    if t.len() <= 3 {
        return t.iter().copied().permutations(t.len()).collect();
    }
    let mut out = Vec::new();
    for shift in 0..t.len() {
        let mut rot: Vec<usize> = t[shift..].iter().chain(&t[..shift]).copied().collect();
        out.push(rot.clone());
        rot.reverse();
        out.push(rot);
    }
    out
}

/// Whether removing the vertices of `t` from the full instance one at a time
/// gives the same map on fixed points for every compared ordering.
pub fn commutation_check(full: &ParahoricData, t: &[usize]) -> Result<bool> {
    if !full.is_full() {
        return Err(Error::NotSubset {
            sub: (1..=full.n()).collect(),
            sup: full.s().to_vec(),
        });
    }
    let patterns = all_patterns(full)?;
    let mut reference: Option<Vec<JugglingPattern>> = None;
    for order in orderings(t) {
        let mut current = full.clone();
        let mut images = patterns.clone();
        for &vertex in &order {
            let rest: Vec<usize> = current.s().iter().copied().filter(|&s| s != vertex).collect();
            let next = current.with_s(&rest)?;
            images = images
                .iter()
                .map(|j| project_pattern(&current, &next, j))
                .collect::<Result<_>>()?;
            current = next;
        }
        match &reference {
            None => reference = Some(images),
            Some(r) if *r != images => return Ok(false),
            Some(_) => {}
        }
    }
    Ok(true)
}
