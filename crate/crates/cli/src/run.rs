use std::fmt::Write as _;
use std::io::BufReader;
use std::path::PathBuf;

use netspectra::analysis::{
    analyze, centrality_csv, composite_csv, dot_export, ranking_order, reach_curve_csv, spectrum_json,
    topology_comparison_experiment, vulnerability_csv, AnalysisOptions, MeasureRanking, Provenance, Section,
    SCHEMA_VERSION,
};
use netspectra::centrality::{
    all_centralities, betweenness_centrality_normalized, closeness_centrality_normalized,
    degree_centrality_normalized, Measure, Normalization, PowerIterationOptions,
};
use netspectra::diffusion::{simulate_diffusion, DiffusionMode, DiffusionOptions, DiffusionSource};
use netspectra::format::{format_significant, to_json_string};
use netspectra::generators::{GeneratorSpec, Model};
use netspectra::io::{edge_list_string, read_edge_list};
use netspectra::spectral::{spectrum, MatrixKind, SpectralGapReport, SpectrumBlock};
use netspectra::{Error, Graph};
use serde::Serialize;
use serde_json::json;

use crate::cli::{
    Cli, Command, CommandName, DiffusionArgs, EigenArgs, Format, GraphArgs, ModeArg, ModelKind, ModelParams,
};
use crate::config::{PartialModel, RunConfig};
use crate::error::CliError;
use crate::output::{emit, Artifact, Kind};

const DEFAULT_N: usize = 100;
const DEFAULT_P: f64 = 0.05;
const DEFAULT_M: usize = 2;
const DEFAULT_K: usize = 4;
const DEFAULT_BETA: f64 = 0.1;

struct Context {
    seed: u64,
    out: Option<PathBuf>,
    format: Format,
    config: RunConfig,
    config_path: Option<String>,
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let name = match (&cli.command, config.command) {
        (Some(c), Some(k)) if c.name() != k => {
            return Err(CliError::Usage(format!(
                "command `{}` conflicts with `{}` in the config",
                c.name().as_str(),
                k.as_str()
            )))
        }
        (Some(c), _) => c.name(),
        (None, Some(k)) => k,
        (None, None) => {
            return Err(CliError::Usage(
                "no command given (see `netspectra --help`)".into(),
            ))
        }
    };
    let ctx = Context {
        seed: cli.seed.or(config.seed).unwrap_or(0),
        out: cli.out.clone().or_else(|| config.out.clone()),
        format: cli.format.or(config.format).unwrap_or(Format::All),
        config_path: cli.config.as_ref().map(|p| p.display().to_string()),
        config,
    };

    let c = cli.command.as_ref();
    let artifacts = match name {
        CommandName::Generate => {
            let args = match c {
                Some(Command::Generate(a)) => Some(a),
                _ => None,
            };
            cmd_generate(&ctx, args.and_then(|a| a.model), args.map(|a| &a.params))?
        }
        CommandName::Analyze => {
            let a = match c {
                Some(Command::Analyze(a)) => Some(a),
                _ => None,
            };
            cmd_analyze(
                &ctx,
                a.map(|a| &a.graph),
                a.map(|a| &a.diffusion),
                a.map(|a| &a.eigen),
                a.is_some_and(|a| a.full_diffusion_signal),
            )?
        }
        CommandName::Diffuse => {
            let a = match c {
                Some(Command::Diffuse(a)) => Some(a),
                _ => None,
            };
            cmd_diffuse(&ctx, a.map(|a| &a.graph), a.map(|a| &a.diffusion))?
        }
        CommandName::Spectrum => {
            let a = match c {
                Some(Command::Spectrum(a)) => Some(a),
                _ => None,
            };
            cmd_spectrum(&ctx, a)?
        }
        CommandName::Centrality => {
            let a = match c {
                Some(Command::Centrality(a)) => Some(a),
                _ => None,
            };
            cmd_centrality(
                &ctx,
                a.map(|a| &a.graph),
                a.map(|a| &a.eigen),
                a.is_some_and(|a| a.normalized),
            )?
        }
        CommandName::Compare => {
            let seeds = match c {
                Some(Command::Compare(a)) => a.seeds,
                _ => None,
            };
            cmd_compare(&ctx, seeds)?
        }
    };
    emit(name, &artifacts, ctx.format, ctx.out.as_deref())
}

// ---------------------------------------------------------------------------
// graph sources

enum Source {
    File(String),
    Generator(GeneratorSpec),
}

/// Where a graph came from, for commands without diffusion settings.
#[derive(Debug, Serialize)]
struct SourceProvenance {
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    generator: Option<GeneratorSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<String>,
}

impl SourceProvenance {
    fn comment_line(&self) -> String {
        match (&self.generator, &self.input) {
            (Some(spec), _) => spec.describe(),
            (None, Some(path)) => format!("input={path} seed={}", self.seed),
            (None, None) => format!("seed={}", self.seed),
        }
    }
}

struct Loaded {
    graph: Graph,
    generator: Option<GeneratorSpec>,
    input: Option<String>,
}

impl Loaded {
    fn source_provenance(&self, seed: u64) -> SourceProvenance {
        SourceProvenance {
            seed,
            generator: self.generator,
            input: self.input.clone(),
        }
    }
}

fn any_param(p: &ModelParams) -> bool {
    p.n.is_some() || p.p.is_some() || p.m.is_some() || p.k.is_some() || p.beta.is_some()
}

/// Builds a model from explicit parameters, falling back to `fallback` and
/// then to the defaults. Parameters foreign to the model are rejected.
fn build_model(kind: ModelKind, given: &ModelParams, fallback: Option<&ModelParams>) -> Result<Model, CliError> {
    let foreign: &[(&str, bool)] = match kind {
        ModelKind::Er => &[("--m", given.m.is_some()), ("--k", given.k.is_some()), ("--beta", given.beta.is_some())],
        ModelKind::Ba => &[("--p", given.p.is_some()), ("--k", given.k.is_some()), ("--beta", given.beta.is_some())],
        ModelKind::Ws => &[("--p", given.p.is_some()), ("--m", given.m.is_some())],
    };
    if let Some((flag, _)) = foreign.iter().find(|(_, set)| *set) {
        return Err(CliError::Usage(format!(
            "{flag} does not apply to model {}",
            format!("{kind:?}").to_lowercase()
        )));
    }
    let empty = ModelParams::default();
    let f = fallback.unwrap_or(&empty);
    let n = given.n.or(f.n).unwrap_or(DEFAULT_N);
    let model = match kind {
        ModelKind::Er => Model::Er {
            n,
            p: given.p.or(f.p).unwrap_or(DEFAULT_P),
        },
        ModelKind::Ba => Model::Ba {
            n,
            m: given.m.or(f.m).unwrap_or(DEFAULT_M),
        },
        ModelKind::Ws => Model::Ws {
            n,
            k: given.k.or(f.k).unwrap_or(DEFAULT_K),
            beta: given.beta.or(f.beta).unwrap_or(DEFAULT_BETA),
        },
    };
    model.validate()?;
    Ok(model)
}

fn config_params(cfg: &Option<PartialModel>, kind: ModelKind) -> Option<&ModelParams> {
    cfg.as_ref().filter(|g| g.kind == kind).map(|g| &g.params)
}

fn resolve_source(ctx: &Context, args: Option<&GraphArgs>) -> Result<Source, CliError> {
    let empty = ModelParams::default();
    let params = args.map_or(&empty, |a| &a.params);
    let cfg = &ctx.config;
    if let Some(input) = args.and_then(|a| a.input.clone()) {
        if any_param(params) {
            return Err(CliError::Usage("model parameters require --model".into()));
        }
        return Ok(Source::File(input));
    }
    let kind = args.and_then(|a| a.model).or(cfg.generator.as_ref().map(|g| g.kind));
    match kind {
        Some(kind) => {
            let model = build_model(kind, params, config_params(&cfg.generator, kind))?;
            Ok(Source::Generator(GeneratorSpec::new(model, ctx.seed)))
        }
        None if any_param(params) => Err(CliError::Usage("model parameters require --model".into())),
        None => match &cfg.input {
            Some(path) => Ok(Source::File(path.clone())),
            None => Err(CliError::Usage(
                "no graph given: pass an edge-list path, '-' for stdin, or --model er|ba|ws".into(),
            )),
        },
    }
}

fn load(ctx: &Context, args: Option<&GraphArgs>) -> Result<Loaded, CliError> {
    match resolve_source(ctx, args)? {
        Source::Generator(spec) => Ok(Loaded {
            graph: spec.generate()?,
            generator: Some(spec),
            input: None,
        }),
        Source::File(path) => {
            let parsed = if path == "-" {
                read_edge_list(std::io::stdin().lock())
            } else {
                let file = std::fs::File::open(&path).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
                read_edge_list(BufReader::new(file))
            };
            let graph = parsed.map_err(|source| CliError::Input {
                path: if path == "-" { "<stdin>".into() } else { path.clone() },
                source,
            })?;
            Ok(Loaded {
                graph,
                generator: None,
                input: Some(path),
            })
        }
    }
}

// ---------------------------------------------------------------------------
// option resolution

fn diffusion_settings(ctx: &Context, args: Option<&DiffusionArgs>) -> Result<(usize, DiffusionOptions), CliError> {
    let cfg = &ctx.config.diffusion;
    let source = args.and_then(|a| a.diffusion_source).or(cfg.source).unwrap_or(0);
    let mode = match args.and_then(|a| a.mode) {
        Some(ModeArg::RawAdjacency) => DiffusionMode::RawAdjacency,
        Some(ModeArg::RowStochastic) => DiffusionMode::RowStochastic,
        None => cfg.mode.unwrap_or(DiffusionMode::RawAdjacency),
    };
    let defaults = DiffusionOptions::default();
    let reach_eps = args.and_then(|a| a.reach_eps).or(cfg.reach_eps).unwrap_or(defaults.reach_eps);
    if !(reach_eps > 0.0 && reach_eps.is_finite()) {
        return Err(CliError::Usage(format!("reach epsilon must be positive (got {reach_eps})")));
    }
    Ok((
        source,
        DiffusionOptions {
            mode,
            steps: args.and_then(|a| a.steps).or(cfg.steps),
            reach_eps,
        },
    ))
}

fn eigen_settings(ctx: &Context, args: Option<&EigenArgs>) -> Result<PowerIterationOptions, CliError> {
    let defaults = AnalysisOptions::default().eigen;
    let cfg = &ctx.config.eigen;
    let tol = args.and_then(|a| a.eigen_tol).or(cfg.tol).unwrap_or(defaults.tol);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Usage(format!("eigen tolerance must be positive (got {tol})")));
    }
    Ok(PowerIterationOptions {
        tol,
        max_iter: args.and_then(|a| a.eigen_max_iter).or(cfg.max_iter).unwrap_or(defaults.max_iter),
    })
}

fn json<T: Serialize>(value: &T) -> String {
    to_json_string(value).expect("report values serialize")
}

fn range_summaries(adjacency: &str, laplacian: &str) {
    eprintln!("{adjacency}");
    eprintln!("{laplacian}");
}

// ---------------------------------------------------------------------------
// commands

fn cmd_generate(ctx: &Context, model: Option<ModelKind>, params: Option<&ModelParams>) -> Result<Vec<Artifact>, CliError> {
    let cfg = &ctx.config.generator;
    let kind = model
        .or(cfg.as_ref().map(|g| g.kind))
        .ok_or_else(|| CliError::Usage("generate needs a model: er, ba or ws".into()))?;
    let empty = ModelParams::default();
    let model = build_model(kind, params.unwrap_or(&empty), config_params(cfg, kind))?;
    let spec = GeneratorSpec::new(model, ctx.seed);
    let g = spec.generate()?;
    let provenance = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "generate",
        "generator": spec,
        "nodes": g.node_count(),
        "edges": g.edge_count(),
        "graph_hash": g.content_hash(),
    });
    eprintln!("{model}: {} nodes, {} edges", g.node_count(), g.edge_count());
    Ok(vec![
        Artifact::new("graph.edges", Kind::EdgeList, edge_list_string(&g, &[spec.describe()])),
        Artifact::new("provenance.json", Kind::Json, json(&provenance)),
    ])
}

fn cmd_analyze(
    ctx: &Context,
    graph: Option<&GraphArgs>,
    diffusion: Option<&DiffusionArgs>,
    eigen: Option<&EigenArgs>,
    full_signal: bool,
) -> Result<Vec<Artifact>, CliError> {
    let loaded = load(ctx, graph)?;
    let (diffusion_source, diffusion) = diffusion_settings(ctx, diffusion)?;
    let opts = AnalysisOptions {
        diffusion_source,
        diffusion,
        eigen: eigen_settings(ctx, eigen)?,
        force_diffusion_signal: full_signal || ctx.config.full_diffusion_signal.unwrap_or(false),
        ..AnalysisOptions::default()
    };
    let provenance = Provenance::new(ctx.seed, loaded.generator, loaded.input.clone(), &opts);
    let comments = [provenance.comment_line()];
    let report = analyze(&loaded.graph, &opts, provenance)?;

    range_summaries(&report.spectra.adjacency.range_summary, &report.spectra.laplacian.range_summary);
    eprintln!("critical nodes: {:?}", report.integrated.critical_nodes);

    Ok(vec![
        Artifact::new("report.json", Kind::Json, report.to_json()),
        Artifact::new("spectrum.json", Kind::Json, spectrum_json(&report)),
        Artifact::new("centrality.csv", Kind::Csv, centrality_csv(&report, &comments)),
        Artifact::new("reach_curve.csv", Kind::Csv, reach_curve_csv(&report.diffusion.reach_curve, &comments)),
        Artifact::new("vulnerability.csv", Kind::Csv, vulnerability_csv(&report, &comments)),
        Artifact::new("composite.csv", Kind::Csv, composite_csv(&report, &comments)),
        Artifact::new("graph.dot", Kind::Dot, dot_export(&report, &loaded.graph.edge_list(), &comments)),
    ])
}

fn cmd_diffuse(ctx: &Context, graph: Option<&GraphArgs>, diffusion: Option<&DiffusionArgs>) -> Result<Vec<Artifact>, CliError> {
    let loaded = load(ctx, graph)?;
    let (source, opts) = diffusion_settings(ctx, diffusion)?;
    let analysis_opts = AnalysisOptions {
        diffusion_source: source,
        diffusion: opts,
        ..AnalysisOptions::default()
    };
    let provenance = Provenance::new(ctx.seed, loaded.generator, loaded.input.clone(), &analysis_opts);
    let comments = [provenance.comment_line()];
    let trace = simulate_diffusion(&loaded.graph, DiffusionSource::Node(source), opts)?;

    let last = trace.final_state();
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "provenance": provenance,
        "source": source,
        "mode": trace.mode,
        "steps": trace.states.len() - 1,
        "reach_curve": trace.reach_curve,
        "first_reach_times": trace.first_reach_times(),
        "steps_to_full_reach": trace.steps_to_reach(1.0),
        "final_state": { "t": last.t, "log_scale": last.log_scale, "direction": last.direction },
    });
    if let Some(t) = trace.steps_to_reach(1.0) {
        eprintln!("all nodes reached after {t} steps");
    } else {
        eprintln!("reached {:.3} of nodes", trace.reach_curve.last().copied().unwrap_or(0.0));
    }

    // x(t) = exp(log_scale) * direction
    let mut states = String::new();
    for c in &comments {
        let _ = writeln!(states, "# {c}");
    }
    states.push_str("t,log_scale");
    for i in 0..loaded.graph.node_count() {
        let _ = write!(states, ",x{i}");
    }
    states.push('\n');
    for s in &trace.states {
        let _ = write!(states, "{},{}", s.t, format_significant(s.log_scale, 12));
        for x in &s.direction {
            let _ = write!(states, ",{}", format_significant(*x, 12));
        }
        states.push('\n');
    }

    Ok(vec![
        Artifact::new("diffusion.json", Kind::Json, json(&doc)),
        Artifact::new("reach_curve.csv", Kind::Csv, reach_curve_csv(&trace.reach_curve, &comments)),
        Artifact::new("states.csv", Kind::Csv, states),
    ])
}

fn cmd_spectrum(ctx: &Context, graph: Option<&GraphArgs>) -> Result<Vec<Artifact>, CliError> {
    let loaded = load(ctx, graph)?;
    let provenance = loaded.source_provenance(ctx.seed);
    let g = &loaded.graph;
    let adjacency = spectrum(g, MatrixKind::Adjacency)?;
    let laplacian = spectrum(g, MatrixKind::Laplacian)?;
    let gap = if g.edge_count() == 0 {
        Section::Degenerate("spectral gap needs at least one edge".into())
    } else {
        match SpectralGapReport::from_laplacian(&laplacian) {
            Ok(r) => Section::Ok(r),
            Err(e @ Error::DegenerateSpectrum(_)) => Section::Degenerate(e.to_string()),
            Err(e) => return Err(e.into()),
        }
    };
    let adjacency = SpectrumBlock::from(&adjacency);
    let laplacian = SpectrumBlock::from(&laplacian);
    range_summaries(&adjacency.range_summary, &laplacian.range_summary);

    let mut csv = format!("# {}\nmatrix,index,eigenvalue\n", provenance.comment_line());
    for block in [&adjacency, &laplacian] {
        for (i, x) in block.eigenvalues.iter().enumerate() {
            let _ = writeln!(csv, "{},{i},{}", kind_label(block.kind), format_significant(*x, 12));
        }
    }
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "provenance": provenance,
        "adjacency": adjacency,
        "laplacian": laplacian,
        "gap": gap,
    });
    Ok(vec![
        Artifact::new("spectrum.json", Kind::Json, json(&doc)),
        Artifact::new("eigenvalues.csv", Kind::Csv, csv),
    ])
}

fn kind_label(kind: MatrixKind) -> &'static str {
    match kind {
        MatrixKind::Adjacency => "adjacency",
        MatrixKind::Laplacian => "laplacian",
    }
}

fn cmd_centrality(
    ctx: &Context,
    graph: Option<&GraphArgs>,
    eigen: Option<&EigenArgs>,
    normalized: bool,
) -> Result<Vec<Artifact>, CliError> {
    let loaded = load(ctx, graph)?;
    let normalized = normalized || ctx.config.normalized.unwrap_or(false);
    let provenance = loaded.source_provenance(ctx.seed);
    let g = &loaded.graph;
    let bundle = all_centralities(g, eigen_settings(ctx, eigen)?);
    let (degree, closeness, betweenness) = if normalized {
        (
            degree_centrality_normalized(g),
            closeness_centrality_normalized(g),
            betweenness_centrality_normalized(g),
        )
    } else {
        (bundle.degree.clone(), bundle.closeness.clone(), bundle.betweenness.clone())
    };
    let eigenvector = match bundle.eigenvector {
        Ok(s) => Section::Ok(s),
        Err(e @ Error::DegenerateSpectrum(_)) => Section::Degenerate(e.to_string()),
        Err(e) => return Err(e.into()),
    };

    let mut rankings: Vec<MeasureRanking> = [
        (Measure::Degree, &degree),
        (Measure::Closeness, &closeness),
        (Measure::Betweenness, &betweenness),
    ]
    .into_iter()
    .map(|(measure, s)| MeasureRanking {
        measure,
        order: ranking_order(&s.scores),
    })
    .collect();
    if let Section::Ok(e) = &eigenvector {
        rankings.push(MeasureRanking {
            measure: Measure::Eigenvector,
            order: ranking_order(&e.scores),
        });
    }

    let mut csv = format!(
        "# {} normalization={}\nnode,degree,closeness,betweenness,eigenvector\n",
        provenance.comment_line(),
        if normalized { "normalized" } else { "raw" }
    );
    let eig = eigenvector.ok().map(|e| &e.scores);
    for i in 0..g.node_count() {
        let _ = writeln!(
            csv,
            "{i},{},{},{},{}",
            format_significant(degree.scores[i], 12),
            format_significant(closeness.scores[i], 12),
            format_significant(betweenness.scores[i], 12),
            eig.map_or(String::new(), |e| format_significant(e[i], 12)),
        );
    }
    for r in &rankings {
        eprintln!("top {}: {:?}", r.measure.name(), &r.order[..r.order.len().min(5)]);
    }
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "provenance": provenance,
        "normalization": if normalized { Normalization::Normalized } else { Normalization::Raw },
        "degree": degree.scores,
        "closeness": closeness.scores,
        "betweenness": betweenness.scores,
        "eigenvector": eigenvector,
        "rankings": rankings,
    });
    Ok(vec![
        Artifact::new("centrality.json", Kind::Json, json(&doc)),
        Artifact::new("centrality.csv", Kind::Csv, csv),
    ])
}

fn cmd_compare(ctx: &Context, seeds_flag: Option<usize>) -> Result<Vec<Artifact>, CliError> {
    let Some(path) = ctx.config_path.clone() else {
        return Err(CliError::Usage("compare needs --config listing the generator specs".into()));
    };
    let schema = |message: String| CliError::Config {
        path: path.clone(),
        message,
    };
    let specs = ctx
        .config
        .specs
        .as_ref()
        .ok_or_else(|| schema("missing key `specs` (a list of at least 2 generator objects)".into()))?;
    if specs.len() < 2 {
        return Err(schema(format!(
            "key `specs` needs at least 2 generator specs (got {})",
            specs.len()
        )));
    }
    let seeds = seeds_flag
        .or(ctx.config.seeds)
        .ok_or_else(|| schema("missing key `seeds` (instances per spec)".into()))?;
    if seeds == 0 {
        return Err(schema("key `seeds` must be at least 1".into()));
    }
    let resolved = specs
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let model = build_model(s.model.kind, &s.model.params, None).map_err(|e| match e {
                CliError::Core(inner) => schema(format!("key `specs[{i}]`: {inner}")),
                other => other,
            })?;
            Ok(GeneratorSpec::new(model, s.seed.unwrap_or(ctx.seed)))
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let table = topology_comparison_experiment(&resolved, seeds)?;
    let mut comments = vec![format!("seeds={seeds} (instance i uses seed + i)")];
    comments.extend(resolved.iter().map(GeneratorSpec::describe));
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "seeds": seeds,
        "specs": resolved,
        "rows": table.rows,
    });
    let mut markdown = String::new();
    for c in &comments {
        let _ = writeln!(markdown, "<!-- {c} -->");
    }
    markdown.push_str(&table.to_markdown());
    Ok(vec![
        Artifact::new("comparison.md", Kind::Markdown, markdown),
        Artifact::new("comparison.csv", Kind::Csv, table.to_csv(&comments)),
        Artifact::new("comparison.json", Kind::Json, json(&doc)),
    ])
}
