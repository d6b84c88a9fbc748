//! The invariant grid behind `parahoric verify` and the acceptance suite.
//!
//! Every section walks a family of instances, checks its invariants and tallies
//! the results per named check. Instances are processed in parallel but merged
//! in a fixed order, so reports are byte-identical across runs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use itertools::Itertools;
use parahoric::ambient::{build_ambient, chains, indec_dim_vector, make_parahoric};
use parahoric::desing::{build_hat_ambient, hat_aut_dim_oracle, hat_fixed_points, project_hat, restrict, tangent_dim};
use parahoric::fixedpoints::{
    cell_parameter_count, floor_vertex_mismatches, from_lvector, to_lvector, validate_pattern, Grassmannian,
};
use parahoric::geometry::{
    aut_dim_formula, aut_dim_oracle, components_of, dimension_check_of, indices_by_dimension_preservation, irr_indices,
    poincare_of,
};
use parahoric::momentgraph::{dominance_order, graph_of, printed_delta, reachability_order};
use parahoric::oracle::enumerate_subreps;
use parahoric::poly::gaussian_binomial;
use parahoric::projections::{commutation_check, image_check, lift_pattern, project_pattern};
use parahoric::{Budget, CoordinateSubrep, DimVector, Error, JugglingPattern, ParahoricData};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

const MAX_MESSAGES: usize = 3;

/// Outcome of one named check over a family of instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    /// Informational counters that do not affect the verdict.
    pub notes: BTreeMap<String, u64>,
    /// First few failures, each naming the instance.
    pub failures: Vec<String>,
}

impl CheckResult {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            passed: 0,
            failed: 0,
            skipped: 0,
            notes: BTreeMap::new(),
            failures: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    fn absorb(&mut self, other: CheckResult) {
        self.passed += other.passed;
        self.failed += other.failed;
        self.skipped += other.skipped;
        for (k, v) in other.notes {
            *self.notes.entry(k).or_default() += v;
        }
        for f in other.failures {
            if self.failures.len() < MAX_MESSAGES {
                self.failures.push(f);
            }
        }
    }
}

/// Check results in first-seen order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    fn entry(&mut self, name: &str) -> &mut CheckResult {
        match self.checks.iter().position(|c| c.name == name) {
            Some(i) => &mut self.checks[i],
            None => {
                self.checks.push(CheckResult::new(name));
                self.checks.last_mut().expect("just pushed")
            }
        }
    }

    fn pass(&mut self, name: &str) {
        self.entry(name).passed += 1;
    }

    fn skip(&mut self, name: &str) {
        self.entry(name).skipped += 1;
    }

    fn fail(&mut self, name: &str, message: String) {
        let e = self.entry(name);
        e.failed += 1;
        if e.failures.len() < MAX_MESSAGES {
            e.failures.push(message);
        }
    }

    fn check(&mut self, name: &str, holds: bool, message: impl FnOnce() -> String) {
        if holds {
            self.pass(name);
        } else {
            self.fail(name, message());
        }
    }

    fn note(&mut self, name: &str, key: &str, count: u64) {
        *self.entry(name).notes.entry(key.to_string()).or_default() += count;
    }

    pub fn merge(&mut self, other: Report) {
        for c in other.checks {
            let name = c.name.clone();
            self.entry(&name).absorb(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::ok)
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.checks.iter().find_map(|c| c.failures.first().map(String::as_str))
    }

    pub fn render(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let verdict = if c.ok() { "PASS" } else { "FAIL" };
            let _ = write!(
                out,
                "[{verdict}] {:width$}  passed={} failed={} skipped={}",
                c.name, c.passed, c.failed, c.skipped
            );
            for (k, v) in &c.notes {
                let _ = write!(out, " {k}={v}");
            }
            out.push('\n');
            for f in &c.failures {
                let _ = writeln!(out, "       {f}");
            }
        }
        let total = self.checks.len();
        let bad = self.checks.iter().filter(|c| !c.ok()).count();
        let _ = writeln!(out, "{} of {total} checks passed", total - bad);
        out
    }
}

/// Reproducible command-line form of an instance.
pub fn describe(p: &ParahoricData) -> String {
    format!(
        "--n {} --k {} --omega {} --s {}",
        p.n(),
        p.k(),
        p.omega(),
        p.s().iter().join(",")
    )
}

/// Nonempty subsets of `[n]`, by size then lexicographically.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (1..=n).flat_map(|size| (1..=n).combinations(size)).collect()
}

/// Every instance with `n ≤ max_n`, `ω ≤ max_omega`, `0 ≤ k ≤ n` and nonempty `S`.
pub fn grid(max_n: usize, max_omega: usize) -> Vec<ParahoricData> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for omega in 1..=max_omega {
            for k in 0..=n {
                for s in subsets(n) {
                    out.push(make_parahoric(n, k, omega, &s).expect("grid instance is valid"));
                }
            }
        }
    }
    out
}

fn in_parallel<T: Sync>(items: &[T], f: impl Fn(&T) -> Report + Sync + Send) -> Report {
    let parts: Vec<Report> = items.par_iter().map(f).collect();
    let mut out = Report::default();
    for part in parts {
        out.merge(part);
    }
    out
}

fn internal(report: &mut Report, p: &ParahoricData, err: Error) {
    report.fail("internal errors", format!("{}: {err}", describe(p)));
}

/// `[n choose k]_q` against the loop-quiver instances `(k, n, 1, {1})`.
pub fn gaussian_section(pairs: &[(usize, usize)]) -> Report {
    in_parallel(pairs, |&(k, n)| {
        let mut report = Report::default();
        let p = make_parahoric(n, k, 1, &[1]).expect("valid loop instance");
        match Grassmannian::new(&p) {
            Ok(g) => {
                let poly = poincare_of(&g);
                report.check(
                    "geometry: loop quiver gives Gaussian binomial",
                    poly == gaussian_binomial(n, k),
                    || format!("{}: poincare {poly}", describe(&p)),
                );
            }
            Err(e) => internal(&mut report, &p, e),
        }
        report
    })
}

fn chain_checks(p: &ParahoricData, report: &mut Report) -> parahoric::Result<()> {
    let cs = chains(p)?;
    let mut seen = BTreeSet::new();
    let mut labels_ok = true;
    for c in &cs {
        for b in &c.entries {
            labels_ok &= p.torus_label(b.vertex, b.index) == c.label;
            seen.insert(*b);
        }
    }
    report.check(
        "core: chains partition the basis with constant labels",
        labels_ok && seen.len() == p.r() * p.m(),
        || describe(p),
    );
    let mut total = DimVector::zero(p.r());
    for c in &cs {
        total = &total + &indec_dim_vector(p, c.end_vertex(), p.chain_len())?;
    }
    report.check(
        "core: indecomposables add up to the ambient",
        total == DimVector::constant(p.r(), p.m()),
        || describe(p),
    );
    let amb = build_ambient(p);
    let nilpotent = cs
        .iter()
        .flat_map(|c| c.entries.iter())
        .all(|&b| amb.compose(b, p.chain_len()).is_none());
    report.check("core: ambient is nilpotent", nilpotent, || describe(p));
    let mismatches = floor_vertex_mismatches(p)?.len() as u64;
    report.note(
        "fixedpoints: printed floor map vs chain end vertex",
        "mismatched_labels",
        mismatches,
    );
    report.pass("fixedpoints: printed floor map vs chain end vertex");
    Ok(())
}

fn instance_checks(p: &ParahoricData, report: &mut Report) -> parahoric::Result<()> {
    chain_checks(p, report)?;
    let g = Grassmannian::new(p)?;

    let mut models_ok = true;
    let mut cells_ok = true;
    for fp in g.points() {
        models_ok &= validate_pattern(p, &fp.pattern)?
            && to_lvector(p, &fp.pattern)? == fp.lvector
            && from_lvector(p, &fp.lvector)? == fp.pattern;
        cells_ok &= cell_parameter_count(p, &fp.pattern) == fp.energy;
    }
    report.check("fixedpoints: patterns and l-vectors correspond", models_ok, || {
        describe(p)
    });
    report.check("fixedpoints: cell parameter count equals energy", cells_ok, || {
        describe(p)
    });

    let poly = poincare_of(&g);
    report.check(
        "geometry: poincare(1) equals number of fixed points",
        poly.eval_at_one() == g.len() as u64,
        || format!("{}: {} vs {}", describe(p), poly.eval_at_one(), g.len()),
    );
    report.check(
        "geometry: degree equals omega k (n - k)",
        poly.degree() == Some(p.expected_dim()),
        || format!("{}: {poly}", describe(p)),
    );
    let irr = irr_indices(p);
    report.check(
        "geometry: leading coefficient equals |Irr|",
        poly.leading_coefficient() == irr.len() as u64,
        || format!("{}: {poly} with {} components", describe(p), irr.len()),
    );
    match dimension_check_of(&g) {
        Ok(_) => report.pass("geometry: top cells are the component tops"),
        Err(e) => report.fail(
            "geometry: top cells are the component tops",
            format!("{}: {e}", describe(p)),
        ),
    }
    report.check(
        "geometry: dimension-preserving removals give Irr",
        indices_by_dimension_preservation(p)? == irr,
        || describe(p),
    );
    let comps = components_of(&g)?;
    let maximal = comps.iter().all(|c| {
        g.points()
            .iter()
            .all(|fp| fp.pattern == c.top || !fp.pattern.dominates(&c.top))
    });
    report.check("geometry: component tops are maximal", maximal, || describe(p));

    let graph = graph_of(&g)?;
    let energies: Vec<usize> = g.points().iter().map(|fp| fp.energy).collect();
    report.check(
        "momentgraph: out-degree equals energy",
        graph.out_degrees() == energies,
        || describe(p),
    );
    let patterns: Vec<JugglingPattern> = g.points().iter().map(|fp| fp.pattern.clone()).collect();
    let reach = reachability_order(&graph)?;
    let dom = dominance_order(&patterns);
    report.check("momentgraph: reachability equals dominance", reach == dom, || {
        let diff = reach.differences(&dom, 1);
        format!("{}: first difference at {:?}", describe(p), diff.first())
    });
    let labels_ok = graph.edges.iter().all(|e| {
        e.character.is_root_shaped()
            && e.character.delta == e.offset
            && e.offset > 0
            && e.character.diagonal_pairing() != 0
    });
    report.check(
        "momentgraph: edge labels are roots plus positive delta",
        labels_ok,
        || describe(p),
    );
    let disagree = graph
        .edges
        .iter()
        .filter(|e| printed_delta(&graph.vertices[e.source].lvector, &e.mv) != e.offset)
        .count() as u64;
    if p.is_full() {
        report.check(
            "momentgraph: delta equals l_i - l_j - q when S = [n]",
            disagree == 0,
            || format!("{}: {disagree} edges disagree", describe(p)),
        );
    } else {
        report.note(
            "momentgraph: printed delta for general S",
            "edges",
            graph.edges.len() as u64,
        );
        report.note("momentgraph: printed delta for general S", "disagreeing", disagree);
        report.pass("momentgraph: printed delta for general S");
    }
    Ok(())
}

/// Per-instance invariants of the core, fixedpoints, momentgraph and geometry
/// modules.
pub fn instance_section(instances: &[ParahoricData]) -> Report {
    in_parallel(instances, |p| {
        let mut report = Report::default();
        if let Err(e) = instance_checks(p, &mut report) {
            internal(&mut report, p, e);
        }
        report
    })
}

fn as_pattern(c: CoordinateSubrep) -> JugglingPattern {
    JugglingPattern(
        c.parts
            .into_iter()
            .map(|part| part.into_iter().map(|x| x + 1).collect())
            .collect(),
    )
}

/// Fixed points against brute-force coordinate subrepresentations.
pub fn oracle_section(instances: &[ParahoricData], budget: Budget) -> Report {
    const NAME: &str = "oracle: fixed points equal coordinate subrepresentations";
    in_parallel(instances, |p| {
        let mut report = Report::default();
        let amb = build_ambient(p).to_coord_rep();
        match enumerate_subreps(&amb, &vec![p.kw(); p.r()], budget) {
            Ok(found) => {
                let brute: Vec<JugglingPattern> = found.into_iter().map(as_pattern).sorted().collect();
                match parahoric::fixedpoints::all_patterns(p) {
                    Ok(fast) => report.check(NAME, brute == fast, || {
                        format!("{}: {} vs {} patterns", describe(p), brute.len(), fast.len())
                    }),
                    Err(e) => internal(&mut report, p, e),
                }
            }
            Err(Error::BudgetExceeded { .. }) => report.skip(NAME),
            Err(e) => internal(&mut report, p, e),
        }
        report
    })
}

/// Automorphism dimension formula against the endomorphism oracle.
pub fn aut_section(instances: &[ParahoricData]) -> Report {
    in_parallel(instances, |p| {
        let mut report = Report::default();
        let formula = aut_dim_formula(p);
        let oracle = aut_dim_oracle(p);
        report.check(
            "geometry: automorphism formula equals oracle",
            formula == oracle,
            || format!("{}: formula {formula}, oracle {oracle}", describe(p)),
        );
        if p.is_full() {
            let expected = p.omega() * p.n() * p.n();
            report.check(
                "geometry: automorphism dimension is omega n^2 when S = [n]",
                oracle == expected,
                || format!("{}: {oracle}", describe(p)),
            );
        }
        report
    })
}

fn projection_checks(n: usize, k: usize, omega: usize, report: &mut Report) -> parahoric::Result<()> {
    let mut cache: BTreeMap<Vec<usize>, Grassmannian> = BTreeMap::new();
    for s in subsets(n) {
        let p = make_parahoric(n, k, omega, &s)?;
        cache.insert(s, Grassmannian::new(&p)?);
    }
    for (s, big) in &cache {
        for (sub, small) in &cache {
            if !sub.iter().all(|x| s.contains(x)) {
                continue;
            }
            let (pb, ps) = (big.data(), small.data());
            let label = || format!("{} --s-prime {}", describe(pb), sub.iter().join(","));
            let mut monotone = true;
            for fp in big.points() {
                let down = project_pattern(pb, ps, &fp.pattern)?;
                monotone &= small.index_of(&down).is_some_and(|i| {
                    small.points()[i].energy <= fp.energy
                        && cell_parameter_count(ps, &down) <= cell_parameter_count(pb, &fp.pattern)
                });
            }
            report.check(
                "projections: image of the fixed points is onto",
                image_check(pb, ps)?,
                label,
            );
            report.check(
                "projections: energy and cell parameters do not increase",
                monotone,
                label,
            );
            let mut section = true;
            for fp in small.points() {
                let up = lift_pattern(ps, pb, &fp.pattern)?;
                section &= big.index_of(&up).is_some() && project_pattern(pb, ps, &up)? == fp.pattern;
            }
            report.check("projections: project after lift is the identity", section, label);
        }
    }
    let full = make_parahoric(n, k, omega, &(1..=n).collect::<Vec<_>>())?;
    for size in 1..=3.min(n.saturating_sub(1)) {
        for t in (1..=n).combinations(size) {
            report.check(
                "projections: removal order does not matter",
                commutation_check(&full, &t)?,
                || format!("{} removing {t:?}", describe(&full)),
            );
        }
    }
    Ok(())
}

/// Projection surjectivity, lift sections, monotonicity and commutation for
/// every nested pair of subsets.
pub fn projection_section(max_n: usize, max_omega: usize) -> Report {
    let triples: Vec<(usize, usize, usize)> = (1..=max_n)
        .flat_map(|n| (1..=max_omega).flat_map(move |w| (0..=n).map(move |k| (n, k, w))))
        .collect();
    in_parallel(&triples, |&(n, k, w)| {
        let mut report = Report::default();
        if let Err(e) = projection_checks(n, k, w, &mut report) {
            let p = make_parahoric(n, k, w, &[1]).expect("valid");
            internal(&mut report, &p, e);
        }
        report
    })
}

fn desing_checks(p: &ParahoricData, budget: Budget, report: &mut Report) -> parahoric::Result<()> {
    let hat = build_hat_ambient(p)?;
    let aut = aut_dim_oracle(p);
    let hat_aut = hat_aut_dim_oracle(&hat);
    report.check("desing: automorphism dimensions agree", aut == hat_aut, || {
        format!("{}: base {aut}, extended {hat_aut}", describe(p))
    });
    let g = Grassmannian::new(p)?;
    for comp in components_of(&g)? {
        let label = || format!("{} --component {}", describe(p), comp.index.0.iter().join(","));
        let pts = match hat_fixed_points(&hat, &comp.index, budget) {
            Ok(pts) => pts,
            Err(Error::BudgetExceeded { .. }) => {
                report.skip("desing: tangent dimension at hat fixed points");
                continue;
            }
            Err(e) => return Err(e),
        };
        let smooth = pts.iter().all(|v| tangent_dim(hat.rep(), v) == p.expected_dim());
        report.check("desing: tangent dimension at hat fixed points", smooth, label);
        let images: BTreeSet<JugglingPattern> = pts.iter().map(|v| restrict(&hat, v)).collect();
        let closure: BTreeSet<JugglingPattern> = comp.closure.iter().cloned().collect();
        report.check(
            "desing: restrictions are the closure fixed points",
            images == closure,
            label,
        );
        let dominated = images.iter().all(|j| comp.top.dominates(j));
        report.check("desing: restrictions lie below the top pattern", dominated, label);

        for sub in subsets(p.n()) {
            if !sub.iter().all(|x| p.s().contains(x)) {
                continue;
            }
            let ps = p.with_s(&sub)?;
            let small = build_hat_ambient(&ps)?;
            let mut square = true;
            let mut projected = BTreeSet::new();
            for v in &pts {
                let w = project_hat(&hat, &small, v)?;
                square &= small.rep().is_closed(&w.parts)
                    && restrict(&small, &w) == project_pattern(p, &ps, &restrict(&hat, v))?;
                projected.insert(w);
            }
            let sub_label = || format!("{} --s-prime {}", label(), sub.iter().join(","));
            report.check("desing: restriction commutes with projection", square, sub_label);
            if irr_indices(&ps).contains(&comp.index) {
                match hat_fixed_points(&small, &comp.index, budget) {
                    Ok(target) => {
                        let target: BTreeSet<CoordinateSubrep> = target.into_iter().collect();
                        report.check(
                            "desing: projection is onto hat fixed points",
                            projected == target,
                            sub_label,
                        );
                    }
                    Err(Error::BudgetExceeded { .. }) => report.skip("desing: projection is onto hat fixed points"),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(())
}

/// Desingularization checks on the given instances.
pub fn desing_section(instances: &[ParahoricData], budget: Budget) -> Report {
    in_parallel(instances, |p| {
        let mut report = Report::default();
        if let Err(e) = desing_checks(p, budget, &mut report) {
            internal(&mut report, p, e);
        }
        report
    })
}

/// The full grid used by `parahoric verify`.
pub fn full_report(max_n: usize, max_omega: usize, budget: Budget) -> Report {
    let instances = grid(max_n, max_omega);
    let mut report = Report::default();
    let pairs: Vec<(usize, usize)> = (1..=max_n).flat_map(|n| (0..=n).map(move |k| (k, n))).collect();
    report.merge(gaussian_section(&pairs));
    report.merge(instance_section(&instances));
    let small: Vec<ParahoricData> = instances.iter().filter(|p| p.n() <= 4).cloned().collect();
    report.merge(oracle_section(&small, budget));
    let aut: Vec<ParahoricData> = instances.iter().filter(|p| p.k() == 1).cloned().collect();
    report.merge(aut_section(&aut));
    report.merge(projection_section(max_n, max_omega));
    let tiny: Vec<ParahoricData> = instances.iter().filter(|p| p.n() <= 3).cloned().collect();
    report.merge(desing_section(&tiny, budget));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_passes() {
        let report = full_report(3, 1, Budget::default());
        assert!(report.passed(), "{}", report.render());
        assert_eq!(report.render(), full_report(3, 1, Budget::default()).render());
    }

    #[test]
    fn failures_are_reported_with_instance() {
        let mut r = Report::default();
        let p = make_parahoric(3, 1, 2, &[3, 1]).unwrap();
        r.check("x", false, || describe(&p));
        r.check("x", true, String::new);
        assert!(!r.passed());
        assert_eq!(r.first_failure(), Some("--n 3 --k 1 --omega 2 --s 1,3"));
        assert!(r.render().starts_with("[FAIL] x  passed=1 failed=1 skipped=0"));
    }
}
