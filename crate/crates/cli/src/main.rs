//! Command-line surface: exact expansion quantities, certified
//! decompositions, and quasi-isometry checks over edge-list documents, with
//! bit-exact deterministic output.

mod document;

use std::fmt;
use std::io::Read;

use clap::{Args, Parser, Subcommand};

use folner_core::cheeger::{
    cheeger, enumerate_folner, find_small_folner, folner_ratio, heuristic_cheeger,
    higher_order_cheeger,
};
use folner_core::decompose::{decompose, verify_decomposition, DecompositionResult};
use folner_core::families::{generate, GeneratorSpec};
use folner_core::qi::{
    beta_bound, density_bound_check, fiber_bound_check, parse_map, preimage_small_check, verify_qi,
    PreimageOutcome, QiInstance,
};
use folner_core::structure::{
    dichotomy_report, maximal_folner, structure_decompose, StructureOutcome,
};
use folner_core::{Error as CoreError, Graph, Ratio, VertexSet};

use document::*;

#[derive(Parser)]
#[command(
    name = "folner",
    version,
    about = "Exact edge-expansion toolkit: Cheeger constants, Følner sets, certified expander decompositions, quasi-isometry checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct CommonArgs {
    /// Graph edge-list file, or '-' for standard input
    #[arg(long)]
    input: String,
    /// Refuse exact enumeration on graphs with more vertices than this
    #[arg(long = "exact-cap", default_value_t = 24)]
    exact_cap: usize,
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    output: OutputFormat,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact Cheeger constant and realizer, or a seeded heuristic upper bound
    Cheeger {
        #[command(flatten)]
        common: CommonArgs,
        /// Run the randomized local search instead of exact enumeration
        #[arg(long)]
        heuristic: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        iterations: u64,
    },
    /// Find an alpha-small epsilon-Følner set, or enumerate all of them
    Folner {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        epsilon: String,
        /// Smallness bound for the search (required unless --enumerate)
        #[arg(long, conflicts_with = "enumerate")]
        alpha: Option<String>,
        /// List every epsilon-Følner set in canonical order
        #[arg(long)]
        enumerate: bool,
    },
    /// Recursive certified expander decomposition, or a Følner witness
    Decompose {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        alpha: String,
    },
    /// Re-check a decomposition document from scratch
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        alpha: String,
        /// Result document produced by `decompose`
        #[arg(long)]
        result: String,
    },
    /// Inclusion-maximal epsilon-Følner set
    MaximalFolner {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        epsilon: String,
    },
    /// Structure decomposition around an alpha-small maximal Følner set
    Structure {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        alpha: String,
    },
    /// Best Følner fractions and certified expander parts over a graph family
    Dichotomy {
        /// Graph edge-list files (repeat the flag per graph)
        #[arg(long = "input", required = true)]
        inputs: Vec<String>,
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        alpha: String,
        #[arg(long = "exact-cap", default_value_t = 24)]
        exact_cap: usize,
        #[arg(long, value_enum, default_value = "json")]
        output: OutputFormat,
    },
    /// Higher-order Cheeger constant over m disjoint subsets
    Rho {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        m: usize,
        /// Bound on the nominal (m+1)^n assignment space
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
    },
    /// Verify a quasi-isometry and its constant bounds
    Qi {
        /// Domain graph edge-list file, or '-' for standard input
        #[arg(long)]
        input: String,
        /// Codomain graph edge-list file
        #[arg(long)]
        codomain: String,
        /// Vertex map file: one "x y" line per domain vertex
        #[arg(long)]
        map: String,
        #[arg(long = "L")]
        l: String,
        #[arg(long = "A")]
        a: String,
        /// Enables the beta bound (and the preimage check with --set)
        #[arg(long)]
        alpha: Option<String>,
        /// Comma-separated codomain vertices for the preimage check
        #[arg(long, requires = "alpha")]
        set: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        output: OutputFormat,
    },
    /// Generate a corpus family graph as an edge-list document
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Vertex count (cycle, path, complete, random-regular)
        #[arg(long)]
        n: Option<usize>,
        /// Left side size (complete-bipartite)
        #[arg(long)]
        left: Option<usize>,
        /// Right side size (complete-bipartite)
        #[arg(long)]
        right: Option<usize>,
        /// Clique size (barbell, lollipop)
        #[arg(long)]
        m: Option<usize>,
        /// Pendant path length (lollipop)
        #[arg(long)]
        p: Option<usize>,
        /// Dimension (hypercube)
        #[arg(long)]
        dim: Option<usize>,
        /// Degree (random-regular)
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Family {
    Cycle,
    Path,
    Complete,
    CompleteBipartite,
    Barbell,
    Lollipop,
    Hypercube,
    RandomRegular,
}

/// Errors carry their exit code: usage problems exit 1, I/O and
/// cap/budget/data problems exit 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Runtime(msg) => f.write_str(msg),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        match err {
            CoreError::Parameter(_) => CliError::Usage(err.to_string()),
            _ => CliError::Runtime(err.to_string()),
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

fn read_source(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Runtime(format!("failed to read standard input: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Runtime(format!("failed to read {path}: {e}")))
    }
}

fn load_graph(path: &str) -> Result<Graph, CliError> {
    Ok(Graph::parse(&read_source(path)?)?)
}

fn emit<P: serde::Serialize>(doc: &ResultDocument<P>, format: OutputFormat) {
    print!("{}", doc.render(format));
}

fn run(cli: Cli) -> Result<(), CliError> {
    let command = command_echo();
    match cli.command {
        Cmd::Cheeger {
            common,
            heuristic,
            seed,
            iterations,
        } => {
            let graph = load_graph(&common.input)?;
            let result = if heuristic {
                heuristic_cheeger(&graph, seed, iterations)?
            } else {
                cheeger(&graph, common.exact_cap)?
            };
            emit(
                &ResultDocument {
                    command,
                    input_digest: graph_digest(&graph),
                    status: "ok".into(),
                    payload: CheegerPayload {
                        value: result.value.to_string(),
                        realizer: result.realizer.map(|s| s.members().to_vec()),
                        exact: result.exact,
                    },
                },
                common.output,
            );
        }
        Cmd::Folner {
            common,
            epsilon,
            alpha,
            enumerate,
        } => {
            let graph = load_graph(&common.input)?;
            let eps = Ratio::parse(&epsilon)?;
            let digest = graph_digest(&graph);
            if enumerate {
                let sets = enumerate_folner(&graph, &eps, common.exact_cap)?;
                emit(
                    &ResultDocument {
                        command,
                        input_digest: digest,
                        status: "ok".into(),
                        payload: FolnerEnumeratePayload {
                            count: sets.len(),
                            sets: sets.iter().map(|s| s.members().to_vec()).collect(),
                        },
                    },
                    common.output,
                );
            } else {
                let alpha = alpha.ok_or_else(|| {
                    CliError::Usage("either --alpha or --enumerate is required".into())
                })?;
                let alpha = Ratio::parse(&alpha)?;
                match find_small_folner(&graph, &eps, &alpha, common.exact_cap)? {
                    Some(set) => {
                        let ratio = folner_ratio(&graph, &set)?;
                        emit(
                            &ResultDocument {
                                command,
                                input_digest: digest,
                                status: "found".into(),
                                payload: FolnerFoundPayload {
                                    set: set.members().to_vec(),
                                    ratio: ratio.to_string(),
                                },
                            },
                            common.output,
                        );
                    }
                    None => emit(
                        &ResultDocument {
                            command,
                            input_digest: digest,
                            status: "none".into(),
                            payload: EmptyPayload {},
                        },
                        common.output,
                    ),
                }
            }
        }
        Cmd::Decompose {
            common,
            epsilon,
            alpha,
        } => {
            let graph = load_graph(&common.input)?;
            let eps = Ratio::parse(&epsilon)?;
            let alpha = Ratio::parse(&alpha)?;
            let digest = graph_digest(&graph);
            match decompose(&graph, &eps, &alpha, common.exact_cap)? {
                DecompositionResult::Decomposed { parts, k, delta } => emit(
                    &ResultDocument {
                        command,
                        input_digest: digest,
                        status: "decomposed".into(),
                        payload: DecomposedPayload {
                            k,
                            delta: delta.to_string(),
                            parts: parts.iter().map(part_to_dto).collect(),
                        },
                    },
                    common.output,
                ),
                DecompositionResult::Witness { witness, ratio } => emit(
                    &ResultDocument {
                        command,
                        input_digest: digest,
                        status: "witness".into(),
                        payload: WitnessPayload {
                            witness: witness.members().to_vec(),
                            ratio: ratio.to_string(),
                        },
                    },
                    common.output,
                ),
            }
        }
        Cmd::Verify {
            common,
            epsilon,
            alpha,
            result,
        } => {
            let graph = load_graph(&common.input)?;
            let eps = Ratio::parse(&epsilon)?;
            let alpha = Ratio::parse(&alpha)?;
            let digest = graph_digest(&graph);
            let text = read_source(&result)?;
            let doc: ResultDocumentIn = serde_json::from_str(&text)
                .map_err(|e| CliError::Runtime(format!("failed to parse result document: {e}")))?;
            let mut extra = Vec::new();
            if let Some(recorded) = &doc.input_digest {
                extra.push(CheckDto {
                    label: "input-digest".into(),
                    passed: recorded == &digest,
                    detail: format!("document digest {recorded}, graph digest {digest}"),
                });
            }
            let parsed = decomposition_from_document(&doc, graph.vertex_count())?;
            let report = verify_decomposition(&graph, &eps, &alpha, &parsed, common.exact_cap)?;
            let payload = verify_report_to_payload(&report, extra);
            let status = if payload.ok { "pass" } else { "fail" };
            emit(
                &ResultDocument {
                    command,
                    input_digest: digest,
                    status: status.into(),
                    payload,
                },
                common.output,
            );
        }
        Cmd::MaximalFolner { common, epsilon } => {
            let graph = load_graph(&common.input)?;
            let eps = Ratio::parse(&epsilon)?;
            let digest = graph_digest(&graph);
            match maximal_folner(&graph, &eps, common.exact_cap)? {
                Some(set) => {
                    let ratio = folner_ratio(&graph, &set)?;
                    emit(
                        &ResultDocument {
                            command,
                            input_digest: digest,
                            status: "found".into(),
                            payload: FolnerFoundPayload {
                                set: set.members().to_vec(),
                                ratio: ratio.to_string(),
                            },
                        },
                        common.output,
                    );
                }
                None => emit(
                    &ResultDocument {
                        command,
                        input_digest: digest,
                        status: "none".into(),
                        payload: EmptyPayload {},
                    },
                    common.output,
                ),
            }
        }
        Cmd::Structure {
            common,
            epsilon,
            alpha,
        } => {
            let graph = load_graph(&common.input)?;
            let eps = Ratio::parse(&epsilon)?;
            let alpha = Ratio::parse(&alpha)?;
            let digest = graph_digest(&graph);
            match structure_decompose(&graph, &eps, &alpha, common.exact_cap)? {
                StructureOutcome::Decomposed(result) => emit(
                    &ResultDocument {
                        command,
                        input_digest: digest,
                        status: "decomposed".into(),
                        payload: StructurePayload {
                            folner: result.folner.members().to_vec(),
                            folner_ratio: result.folner_ratio.to_string(),
                            alpha: result.alpha.to_string(),
                            derived_alpha: result.derived_alpha.to_string(),
                            k: result.k,
                            delta: result.delta.to_string(),
                            parts: result.parts.iter().map(part_to_dto).collect(),
                        },
                    },
                    common.output,
                ),
                StructureOutcome::NoFolnerSet => emit(
                    &ResultDocument {
                        command,
                        input_digest: digest,
                        status: "no-folner-set".into(),
                        payload: EmptyPayload {},
                    },
                    common.output,
                ),
                StructureOutcome::FolnerNotAlphaSmall { folner } => emit(
                    &ResultDocument {
                        command,
                        input_digest: digest,
                        status: "folner-not-alpha-small".into(),
                        payload: StructureRefusedPayload {
                            size: folner.len(),
                            folner: folner.members().to_vec(),
                        },
                    },
                    common.output,
                ),
            }
        }
        Cmd::Dichotomy {
            inputs,
            epsilon,
            alpha,
            exact_cap,
            output,
        } => {
            let eps = Ratio::parse(&epsilon)?;
            let alpha = Ratio::parse(&alpha)?;
            let mut graphs = Vec::new();
            for path in &inputs {
                graphs.push((path.clone(), load_graph(path)?));
            }
            let edge_lists: Vec<String> = graphs.iter().map(|(_, g)| g.to_edge_list()).collect();
            let digest = sha256_hex(&edge_lists.iter().map(String::as_str).collect::<Vec<_>>());
            let entries = dichotomy_report(&graphs, &eps, &alpha, exact_cap)?;
            emit(
                &ResultDocument {
                    command,
                    input_digest: digest,
                    status: "ok".into(),
                    payload: DichotomyPayload {
                        epsilon: eps.to_string(),
                        alpha: alpha.to_string(),
                        entries: entries
                            .iter()
                            .zip(&graphs)
                            .map(|(entry, (_, g))| DichotomyEntryDto {
                                graph: entry.id.clone(),
                                input_digest: graph_digest(g),
                                best_folner_fraction: entry
                                    .best_folner_fraction
                                    .as_ref()
                                    .map(Ratio::to_string),
                                expander_part: entry.expander_part.as_ref().map(part_to_dto),
                            })
                            .collect(),
                    },
                },
                output,
            );
        }
        Cmd::Rho { common, m, budget } => {
            let graph = load_graph(&common.input)?;
            let digest = graph_digest(&graph);
            let result = higher_order_cheeger(&graph, m, budget)?;
            let status = if result.value.is_finite() {
                "ok"
            } else {
                "infinite"
            };
            emit(
                &ResultDocument {
                    command,
                    input_digest: digest,
                    status: status.into(),
                    payload: RhoPayload {
                        m: result.m,
                        value: result.value.to_string(),
                        witness: result
                            .witness
                            .map(|parts| parts.iter().map(|s| s.members().to_vec()).collect()),
                    },
                },
                common.output,
            );
        }
        Cmd::Qi {
            input,
            codomain,
            map,
            l,
            a,
            alpha,
            set,
            output,
        } => {
            let domain_graph = load_graph(&input)?;
            let codomain_graph = load_graph(&codomain)?;
            let map_text = read_source(&map)?;
            let vertex_map = parse_map(
                &map_text,
                domain_graph.vertex_count(),
                codomain_graph.vertex_count(),
            )?;
            let l = Ratio::parse(&l)?;
            let a = Ratio::parse(&a)?;
            let normalized_map: String = vertex_map
                .iter()
                .enumerate()
                .map(|(x, y)| format!("{x} {y}\n"))
                .collect();
            let digest = sha256_hex(&[
                &domain_graph.to_edge_list(),
                &codomain_graph.to_edge_list(),
                &normalized_map,
            ]);
            let instance = QiInstance::new(domain_graph, codomain_graph, vertex_map, l, a)?;
            let report = verify_qi(&instance)?;

            let mut payload = QiPayload {
                qi_verified: report.ok,
                degree_bound: instance.degree_bound(),
                violations: report.violations.iter().map(violation_to_dto).collect(),
                fiber: None,
                density: None,
                beta: None,
                preimage: None,
            };
            if report.ok {
                let fiber = fiber_bound_check(&instance)?;
                payload.fiber = Some(FiberDto {
                    holds: fiber.holds,
                    max_fiber: fiber.max_fiber,
                    bound: fiber.bound.to_string(),
                });
                let density = density_bound_check(&instance)?;
                payload.density = Some(DensityDto {
                    holds: density.holds,
                    codomain_size: density.codomain_size,
                    image_size: density.image_size,
                    domain_size: density.domain_size,
                    factor: density.factor.to_string(),
                });
                if let Some(alpha) = &alpha {
                    let alpha = Ratio::parse(alpha)?;
                    let beta =
                        beta_bound(instance.degree_bound(), instance.l(), instance.a(), &alpha)?;
                    payload.beta = Some(BetaDto {
                        value: beta.value.to_string(),
                        degree_le_one: beta.degree_le_one,
                    });
                    if let Some(set) = &set {
                        let members = parse_vertex_list(set)?;
                        let b = VertexSet::new(instance.codomain().vertex_count(), members)?;
                        let outcome = preimage_small_check(&instance, &b, &alpha)?;
                        payload.preimage = Some(match outcome {
                            PreimageOutcome::Holds { preimage_size } => PreimageDto {
                                status: "holds".into(),
                                beta: beta.value.to_string(),
                                preimage_size: Some(preimage_size),
                                nonempty_beta_small_exists: None,
                            },
                            PreimageOutcome::Vacuous {
                                nonempty_beta_small_exists,
                            } => PreimageDto {
                                status: "vacuously-true".into(),
                                beta: beta.value.to_string(),
                                preimage_size: Some(0),
                                nonempty_beta_small_exists: Some(nonempty_beta_small_exists),
                            },
                            PreimageOutcome::Violated { preimage_size } => PreimageDto {
                                status: "violated".into(),
                                beta: beta.value.to_string(),
                                preimage_size: Some(preimage_size),
                                nonempty_beta_small_exists: None,
                            },
                        });
                    }
                }
            }
            let status = if report.ok {
                "qi-verified"
            } else {
                "qi-violated"
            };
            emit(
                &ResultDocument {
                    command,
                    input_digest: digest,
                    status: status.into(),
                    payload,
                },
                output,
            );
        }
        Cmd::Gen {
            family,
            n,
            left,
            right,
            m,
            p,
            dim,
            d,
            seed,
        } => {
            let spec = build_spec(family, n, left, right, m, p, dim, d, seed)?;
            let graph = generate(&spec)?;
            // Raw edge-list output so it pipes straight back into --input.
            print!("{}", graph.to_edge_list());
        }
    }
    Ok(())
}

fn parse_vertex_list(text: &str) -> Result<Vec<u32>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u32>()
                .map_err(|e| CliError::Usage(format!("invalid vertex {tok:?} in --set: {e}")))
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn build_spec(
    family: Family,
    n: Option<usize>,
    left: Option<usize>,
    right: Option<usize>,
    m: Option<usize>,
    p: Option<usize>,
    dim: Option<usize>,
    d: Option<usize>,
    seed: u64,
) -> Result<GeneratorSpec, CliError> {
    let need = |value: Option<usize>, flag: &str| {
        value.ok_or_else(|| CliError::Usage(format!("this family requires {flag}")))
    };
    Ok(match family {
        Family::Cycle => GeneratorSpec::Cycle { n: need(n, "--n")? },
        Family::Path => GeneratorSpec::Path { n: need(n, "--n")? },
        Family::Complete => GeneratorSpec::Complete { n: need(n, "--n")? },
        Family::CompleteBipartite => GeneratorSpec::CompleteBipartite {
            left: need(left, "--left")?,
            right: need(right, "--right")?,
        },
        Family::Barbell => GeneratorSpec::Barbell {
            clique: need(m, "--m")?,
        },
        Family::Lollipop => GeneratorSpec::Lollipop {
            clique: need(m, "--m")?,
            tail: need(p, "--p")?,
        },
        Family::Hypercube => GeneratorSpec::Hypercube {
            dim: need(dim, "--dim")?,
        },
        Family::RandomRegular => GeneratorSpec::RandomRegular {
            n: need(n, "--n")?,
            degree: need(d, "--d")?,
            seed,
        },
    })
}
