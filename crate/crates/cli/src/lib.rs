//! The `parahoric` command line.

pub mod docs;
pub mod render;
pub mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use parahoric::ambient::make_parahoric;
use parahoric::desing::{
    build_hat_ambient, hat_aut_dim_oracle, hat_dim_vector, hat_fixed_points, restrict, tangent_dim,
};
use parahoric::fixedpoints::{validate_pattern, Grassmannian};
use parahoric::geometry::{
    aut_dim_formula, aut_dim_oracle, components_of, dimension_check_of, is_component_index, poincare_of,
};
use parahoric::momentgraph::graph_of;
use parahoric::projections::{image_check, lift_pattern, project_pattern};
use parahoric::{Budget, ComponentIndex, Error, IntPolynomial, JugglingPattern, ParahoricData};

use crate::docs::*;
use crate::render::{format_pattern, parse_list, parse_pattern, table, to_dot};

#[derive(Debug, Parser)]
#[command(
    name = "parahoric",
    version,
    about = "Fixed points, cells and moment graphs of cyclic quiver Grassmannians"
)]
pub struct Cli {
    /// Worker threads for grid checks (defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub omega: usize,
    /// Comma-separated subset of [n]; all of [n] when omitted.
    #[arg(long, value_delimiter = ',')]
    pub s: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

impl InstanceArgs {
    fn data(&self) -> Result<ParahoricData, CliError> {
        let s = self.s.clone().unwrap_or_else(|| (1..=self.n).collect());
        Ok(make_parahoric(self.n, self.k, self.omega, &s)?)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the torus fixed points with energies, l-vectors and strata.
    Enumerate(InstanceArgs),
    /// Print the Poincaré polynomial.
    Poincare(InstanceArgs),
    /// Emit the moment graph.
    MomentGraph(InstanceArgs),
    /// List the irreducible components.
    Components(InstanceArgs),
    /// Project fixed points from S to a subset S'.
    Project {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_delimiter = ',')]
        s_prime: Vec<usize>,
        /// Pattern over S such as "1,3;2,4" (vertex sets separated by ';').
        #[arg(long)]
        pattern: Option<String>,
    },
    /// Lift fixed points from a subset S' back to S.
    Lift {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_delimiter = ',')]
        s_prime: Vec<usize>,
        /// Pattern over S'.
        #[arg(long)]
        pattern: Option<String>,
    },
    /// Dimension of the automorphism group of the ambient.
    Autdim {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Also solve the endomorphism system and compare.
        #[arg(long)]
        verify: bool,
    },
    /// Fixed points of the desingularizations of the components.
    Desing {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Comma-separated component index; all components when omitted.
        #[arg(long)]
        component: Option<String>,
        /// Maximum number of candidate subsets the search may examine.
        #[arg(long, default_value_t = Budget::default().0)]
        budget: u64,
    },
    /// Check every invariant on a grid of instances.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        max_omega: usize,
        #[arg(long, default_value_t = Budget::default().0)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

/// A failure with its process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

impl CliError {
    fn validation(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_VERIFICATION,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::Inconsistent(_) | Error::Verification(_) => EXIT_VERIFICATION,
            _ => EXIT_VALIDATION,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Output of a successful command, and for `verify` whether every check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub failed: Option<String>,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Self { text, failed: None }
    }
}

fn json<T: serde::Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn no_dot(format: Format) -> Result<(), CliError> {
    if format == Format::Dot {
        Err(CliError::validation("--format dot is only available for moment-graph"))
    } else {
        Ok(())
    }
}

fn checked_pattern(p: &ParahoricData, text: &str) -> Result<JugglingPattern, CliError> {
    let j = parse_pattern(text).map_err(CliError::validation)?;
    if !validate_pattern(p, &j)? {
        return Err(CliError::validation(format!(
            "{} is not a fixed point: the shift condition fails",
            format_pattern(&j)
        )));
    }
    Ok(j)
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Enumerate(a) => enumerate(a).map(Output::from),
        Command::Poincare(a) => poincare(a).map(Output::from),
        Command::MomentGraph(a) => moment_graph(a).map(Output::from),
        Command::Components(a) => components(a).map(Output::from),
        Command::Project {
            instance,
            s_prime,
            pattern,
        } => project(instance, s_prime, pattern.as_deref()).map(Output::from),
        Command::Lift {
            instance,
            s_prime,
            pattern,
        } => lift(instance, s_prime, pattern.as_deref()).map(Output::from),
        Command::Autdim { instance, verify } => autdim(instance, *verify).map(Output::from),
        Command::Desing {
            instance,
            component,
            budget,
        } => desing(instance, component.as_deref(), Budget(*budget)).map(Output::from),
        Command::Verify {
            max_n,
            max_omega,
            budget,
            format,
        } => verify_grid(*max_n, *max_omega, Budget(*budget), *format),
    }
}

fn enumerate(a: &InstanceArgs) -> Result<String, CliError> {
    no_dot(a.format)?;
    let p = a.data()?;
    let g = Grassmannian::new(&p)?;
    let docs: Vec<PatternDoc> = g
        .points()
        .iter()
        .map(|fp| PatternDoc {
            pattern: fp.pattern.0.clone(),
            lvector: lvector_doc(&fp.lvector),
            energy: fp.energy,
            stratum: stratum_doc(&g.stratum_key(&fp.lvector)),
        })
        .collect();
    if a.format == Format::Json {
        return Ok(json(&EnumerateDoc {
            instance: InstanceDoc::from(&p),
            patterns: docs,
        }));
    }
    let rows = g
        .points()
        .iter()
        .zip(&docs)
        .map(|(fp, d)| {
            vec![
                format_pattern(&fp.pattern),
                format!("({})", fp.lvector.0.iter().join(",")),
                fp.energy.to_string(),
                d.stratum.iter().map(|(v, len)| format!("U{v}({len})")).join(" + "),
            ]
        })
        .collect();
    Ok(table(&["pattern", "l-vector", "energy", "stratum"], rows))
}

fn poincare(a: &InstanceArgs) -> Result<String, CliError> {
    no_dot(a.format)?;
    let p = a.data()?;
    let poly = poincare_of(&Grassmannian::new(&p)?);
    if a.format == Format::Json {
        return Ok(json(&PoincareDoc {
            instance: InstanceDoc::from(&p),
            poincare: poly.to_string(),
            coefficients: poly.coeffs().to_vec(),
        }));
    }
    Ok(format!("{poly}\n"))
}

fn moment_graph(a: &InstanceArgs) -> Result<String, CliError> {
    let p = a.data()?;
    let graph = graph_of(&Grassmannian::new(&p)?)?;
    match a.format {
        Format::Json => Ok(json(&MomentGraphDoc {
            instance: InstanceDoc::from(&p),
            graph: GraphDoc::from(&graph),
        })),
        Format::Dot => Ok(to_dot(&graph)),
        Format::Table => {
            let rows = graph
                .edges
                .iter()
                .map(|e| {
                    vec![
                        format_pattern(&graph.vertices[e.source].pattern),
                        format_pattern(&graph.vertices[e.target].pattern),
                        format!("({},{},{})", e.mv.donor, e.mv.recipient, e.mv.amount),
                        e.character.to_string(),
                    ]
                })
                .collect();
            Ok(format!(
                "{} vertices, {} edges\n{}",
                graph.vertices.len(),
                graph.edges.len(),
                table(&["source", "target", "move", "label"], rows)
            ))
        }
    }
}

fn components(a: &InstanceArgs) -> Result<String, CliError> {
    no_dot(a.format)?;
    let p = a.data()?;
    let g = Grassmannian::new(&p)?;
    let (dimension, _) = dimension_check_of(&g)?;
    let comps: Vec<ComponentDoc> = components_of(&g)?
        .into_iter()
        .map(|c| ComponentDoc {
            poincare: IntPolynomial::from_exponents(
                c.closure
                    .iter()
                    .map(|j| g.points()[g.index_of(j).expect("closure is made of fixed points")].energy),
            )
            .to_string(),
            index: c.index.0,
            top: c.top.0,
            closure_size: c.closure.len(),
        })
        .collect();
    if a.format == Format::Json {
        return Ok(json(&ComponentsDoc {
            instance: InstanceDoc::from(&p),
            dimension,
            components: comps,
        }));
    }
    let rows = comps
        .iter()
        .map(|c| {
            vec![
                format!("{{{}}}", c.index.iter().join(",")),
                format_pattern(&JugglingPattern(c.top.clone())),
                c.closure_size.to_string(),
                c.poincare.clone(),
            ]
        })
        .collect();
    Ok(format!(
        "dimension {dimension}, {} components\n{}",
        comps.len(),
        table(&["index", "top", "fixed points", "poincare"], rows)
    ))
}

fn map_output(
    a: &InstanceArgs,
    p: &ParahoricData,
    s_prime: &[usize],
    entries: Vec<MapEntryDoc>,
    onto: Option<bool>,
) -> String {
    if a.format == Format::Json {
        return json(&ProjectionDoc {
            instance: InstanceDoc::from(p),
            s_prime: s_prime.to_vec(),
            patterns: entries,
            onto,
        });
    }
    let rows = entries
        .iter()
        .map(|e| {
            vec![
                format_pattern(&JugglingPattern(e.from.clone())),
                format_pattern(&JugglingPattern(e.to.clone())),
            ]
        })
        .collect();
    let mut out = table(&["from", "to"], rows);
    if let Some(onto) = onto {
        out.push_str(if onto { "onto: yes\n" } else { "onto: no\n" });
    }
    out
}

fn sorted_subset(p: &ParahoricData, s_prime: &[usize]) -> Result<(ParahoricData, Vec<usize>), CliError> {
    let small = p.with_s(s_prime)?;
    Ok((small.clone(), small.s().to_vec()))
}

fn project(a: &InstanceArgs, s_prime: &[usize], pattern: Option<&str>) -> Result<String, CliError> {
    no_dot(a.format)?;
    let p = a.data()?;
    let (small, sub) = sorted_subset(&p, s_prime)?;
    let (sources, onto) = match pattern {
        Some(text) => (vec![checked_pattern(&p, text)?], None),
        None => (
            Grassmannian::new(&p)?
                .points()
                .iter()
                .map(|fp| fp.pattern.clone())
                .collect(),
            Some(image_check(&p, &small)?),
        ),
    };
    let entries = sources
        .into_iter()
        .map(|j| {
            let to = project_pattern(&p, &small, &j)?;
            Ok(MapEntryDoc { from: j.0, to: to.0 })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(map_output(a, &p, &sub, entries, onto))
}

fn lift(a: &InstanceArgs, s_prime: &[usize], pattern: Option<&str>) -> Result<String, CliError> {
    no_dot(a.format)?;
    let p = a.data()?;
    let (small, sub) = sorted_subset(&p, s_prime)?;
    let sources = match pattern {
        Some(text) => vec![checked_pattern(&small, text)?],
        None => Grassmannian::new(&small)?
            .points()
            .iter()
            .map(|fp| fp.pattern.clone())
            .collect(),
    };
    let entries = sources
        .into_iter()
        .map(|j| {
            let to = lift_pattern(&small, &p, &j)?;
            Ok(MapEntryDoc { from: j.0, to: to.0 })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(map_output(a, &p, &sub, entries, None))
}

fn autdim(a: &InstanceArgs, verify: bool) -> Result<String, CliError> {
    no_dot(a.format)?;
    let p = a.data()?;
    let formula = aut_dim_formula(&p);
    let oracle = verify.then(|| aut_dim_oracle(&p));
    let text = if a.format == Format::Json {
        json(&AutDimDoc {
            instance: InstanceDoc::from(&p),
            formula,
            oracle,
        })
    } else {
        match oracle {
            None => format!("formula {formula}\n"),
            Some(o) if o == formula => format!("formula {formula}, oracle {o}, OK\n"),
            Some(o) => format!("formula {formula}, oracle {o}, MISMATCH\n"),
        }
    };
    match oracle {
        Some(o) if o != formula => Err(CliError::verification(text.trim_end())),
        _ => Ok(text),
    }
}

fn desing(a: &InstanceArgs, component: Option<&str>, budget: Budget) -> Result<String, CliError> {
    no_dot(a.format)?;
    let p = a.data()?;
    let hat = build_hat_ambient(&p)?;
    let g = Grassmannian::new(&p)?;
    let selected: Vec<ComponentIndex> = match component {
        Some(text) => {
            let mut index = parse_list(text).map_err(CliError::validation)?;
            index.sort_unstable();
            let index = ComponentIndex(index);
            if !is_component_index(&p, &index) {
                return Err(Error::NotAComponent(index.0).into());
            }
            vec![index]
        }
        None => components_of(&g)?.into_iter().map(|c| c.index).collect(),
    };
    let quiver = hat.quiver();
    let mut comps = Vec::new();
    for index in selected {
        let dims = hat_dim_vector(&hat, &index)?;
        let mut points: Vec<HatPointDoc> = hat_fixed_points(&hat, &index, budget)?
            .iter()
            .map(|v| HatPointDoc {
                restriction: restrict(&hat, v).0,
                tangent_dim: tangent_dim(hat.rep(), v),
            })
            .collect();
        points.sort_by(|x, y| x.restriction.cmp(&y.restriction));
        comps.push(HatComponentDoc {
            index: index.0,
            dim_vector: dims
                .0
                .iter()
                .enumerate()
                .map(|(id, &dim)| {
                    let (i, j) = quiver.coords(id);
                    HatEntryDoc { i: i + 1, j, dim }
                })
                .collect(),
            fixed_points: points,
        });
    }
    let doc = DesingDoc {
        instance: InstanceDoc::from(&p),
        aut_dim: hat_aut_dim_oracle(&hat),
        components: comps,
    };
    if a.format == Format::Json {
        return Ok(json(&doc));
    }
    let mut out = format!("extended ambient automorphism dimension {}\n", doc.aut_dim);
    for c in &doc.components {
        out.push_str(&format!(
            "component {{{}}}: dimension vector {}\n",
            c.index.iter().join(","),
            c.dim_vector
                .iter()
                .map(|e| format!("({},{})={}", e.i, e.j, e.dim))
                .join(" ")
        ));
        let rows = c
            .fixed_points
            .iter()
            .map(|fp| {
                vec![
                    format_pattern(&JugglingPattern(fp.restriction.clone())),
                    fp.tangent_dim.to_string(),
                ]
            })
            .collect();
        out.push_str(&table(&["restriction", "tangent dim"], rows));
    }
    Ok(out)
}

fn verify_grid(max_n: usize, max_omega: usize, budget: Budget, format: Format) -> Result<Output, CliError> {
    no_dot(format)?;
    if max_n == 0 || max_omega == 0 {
        return Err(CliError::validation("--max-n and --max-omega must be at least 1"));
    }
    let report = verify::full_report(max_n, max_omega, budget);
    let text = match format {
        Format::Json => json(&report),
        _ => report.render(),
    };
    let failed = (!report.passed()).then(|| report.first_failure().unwrap_or("a check failed").to_string());
    Ok(Output { text, failed })
}
