use std::fmt::Write as _;
use std::path::Path;

use minorforge::coloring::{seven_color_or_minor_with, DichotomyMode, DichotomyOptions, Unresolved};
use minorforge::extremal::{random_edge_trials, Glue};
use minorforge::lemmas::{matching_triangle_square_graphs, verify_configurations};
use minorforge::{
    all_graphs, build_cockade, canonical_labeling, random_extremal_test, to_graph6, verify_cockade_tightness,
    verify_corollary_k84, verify_embedding, verify_family_counts, verify_h8_lemma, verify_jorgensen, verify_k64_lemma,
    verify_proof_gadgets, CockadeRecipe, Coloring, Dichotomy, Graph, GraphFilter, JorgensenSpec, MinorEmbedding,
    MinorOutcome, PatternSpec, SearchError, SearchOptions, VerificationReport, WORD_LIMIT,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::cache::Cache;
use crate::input::{read_graph, read_pattern};
use crate::{
    CliError, ColorArgs, CockadeArgs, Command, EnumerateArgs, ExtremalArgs, MinorArgs, Output, RunArgs, Target,
    VerifyArgs,
};

struct Ctx {
    opts: SearchOptions,
    seed: u64,
    cache: Option<Cache>,
}

pub fn run(run: &RunArgs, command: &Command) -> Result<Output, CliError> {
    let cache = match &run.cache_dir {
        Some(dir) => Some(
            Cache::new(dir).map_err(|e| CliError::Usage(format!("cache directory {}: {e}", dir.display())))?,
        ),
        None => None,
    };
    let ctx = Ctx { opts: SearchOptions { node_budget: run.node_budget }, seed: run.seed, cache };
    match command {
        Command::Verify(a) => verify(a, &ctx),
        Command::Minor(a) => minor(a, &ctx),
        Command::Color(a) => color(a, &ctx),
        Command::Enumerate(a) => enumerate(a),
        Command::Cockade(a) => cockade(a),
        Command::Extremal(a) => extremal(a, &ctx),
    }
}

fn search_error(e: SearchError) -> CliError {
    CliError::Usage(e.to_string())
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("object literal"),
    }
}

fn report_code(r: &VerificationReport) -> u8 {
    if !r.counterexamples.is_empty() {
        1
    } else if r.budget_exhausted > 0 {
        3
    } else {
        0
    }
}

fn report_text(name: &str, r: &VerificationReport) -> String {
    let mut s = format!(
        "{name}: {} (checked {}, counterexamples {}, budget exhausted {})\n",
        if r.passed() { "PASS" } else { "FAIL" },
        r.universe_size,
        r.counterexamples.len(),
        r.budget_exhausted
    );
    for (k, v) in &r.details {
        let _ = writeln!(s, "  {k} = {v}");
    }
    for c in &r.counterexamples {
        let _ = writeln!(s, "  counterexample {}: {}", to_graph6(&c.graph), c.note);
    }
    s
}

fn report_output(name: &str, report: VerificationReport, extra: Map<String, Value>) -> Output {
    let code = report_code(&report);
    let text = report_text(name, &report);
    let mut body = object(json!({
        "target": name,
        "passed": code == 0,
        "report": report,
    }));
    body.extend(extra);
    Output { body, text, code }
}

fn read_recipe(copies: usize, schedule: Option<&Path>) -> Result<CockadeRecipe, CliError> {
    let Some(path) = schedule else {
        if copies == 0 {
            return Err(CliError::Usage("--copies must be at least 1".into()));
        }
        return Ok(CockadeRecipe::chain(copies));
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("--schedule {}: {e}", path.display())))?;
    let schedule: Vec<Glue> = serde_json::from_str(&text).map_err(|e| {
        CliError::Usage(format!("--schedule {}: line {} column {}: {e}", path.display(), e.line(), e.column()))
    })?;
    Ok(CockadeRecipe { copies, schedule })
}

fn verify(a: &VerifyArgs, ctx: &Ctx) -> Result<Output, CliError> {
    let name = match a.target {
        Target::LemmaH8 => "lemma-h8",
        Target::LemmaK64 => "lemma-k64",
        Target::FamilyCounts => "family-counts",
        Target::Configs => "configs",
        Target::CorollaryK84 => "corollary-k84",
        Target::Gadgets => "gadgets",
        Target::Jorgensen => "jorgensen",
        Target::Cockade => "cockade",
        Target::Extremal => "extremal",
    };
    let report = match a.target {
        Target::LemmaH8 => verify_h8_lemma(),
        Target::LemmaK64 => verify_k64_lemma(),
        Target::FamilyCounts => verify_family_counts(),
        Target::Configs => verify_configurations(),
        Target::CorollaryK84 => return corollary(a.graph.as_deref()),
        Target::Gadgets => verify_proof_gadgets(),
        Target::Jorgensen => {
            if a.exhaustive_max_n > 10 || a.sample_orders.iter().any(|&n| !(8..=WORD_LIMIT).contains(&n)) {
                return Err(CliError::Usage("jorgensen: exhaustive orders stop at 10, sampled orders lie in 8..=64".into()));
            }
            let spec = JorgensenSpec {
                exhaustive_max_n: a.exhaustive_max_n,
                samples: a.samples,
                sample_orders: a.sample_orders.clone(),
                seed: ctx.seed,
            };
            verify_jorgensen(&spec)
        }
        Target::Cockade => {
            let recipe = read_recipe(a.copies, a.schedule.as_deref())?;
            if recipe.vertex_count() > WORD_LIMIT {
                return Err(CliError::Usage(format!("a cockade with {} copies exceeds 64 vertices", recipe.copies)));
            }
            verify_cockade_tightness(&recipe, &ctx.opts)
        }
        Target::Extremal => random_extremal_test(a.n, a.trials, ctx.seed, &ctx.opts),
    }
    .map_err(search_error)?;
    Ok(report_output(name, report, Map::new()))
}

fn corollary(graph: Option<&str>) -> Result<Output, CliError> {
    let started = std::time::Instant::now();
    let hbars = match graph {
        Some(g) => vec![read_graph(g, "--graph")?],
        None => matching_triangle_square_graphs(8).map_err(search_error)?,
    };
    let mut report = VerificationReport::new("corollary-k84", 0);
    for h in &hbars {
        report.universe_size += 1;
        if !verify_corollary_k84(h).map_err(search_error)? {
            report.fail(h.clone(), "complement is not a subgraph of every K8 minus 4 edges");
        }
    }
    report.detail("complements", hbars.iter().map(to_graph6).collect::<Vec<_>>());
    Ok(report_output("corollary-k84", report.finish(started), Map::new()))
}

/// `g` relabelled canonically, with `order[i]` the original vertex at
/// canonical position `i`.
fn canonical(g: &Graph) -> (Graph, Vec<usize>) {
    let lab = canonical_labeling(g, &vec![0; g.n()]);
    (g.permute(&lab.positions()), lab.order)
}

fn relabel_embedding(e: &MinorEmbedding, order: &[usize]) -> MinorEmbedding {
    let branch_sets = e
        .branch_sets
        .iter()
        .map(|b| {
            let mut b: Vec<usize> = b.iter().map(|&v| order[v]).collect();
            b.sort_unstable();
            b
        })
        .collect();
    MinorEmbedding { branch_sets, missing_pairs: e.missing_pairs.clone() }
}

/// Answers are computed on the canonical copy so that cached and fresh
/// answers agree exactly.
fn cached<T, F, V>(ctx: &Ctx, c: &Graph, query: &str, valid: V, compute: F) -> Result<T, CliError>
where
    T: Serialize + for<'de> Deserialize<'de>,
    F: FnOnce() -> Result<(T, bool), CliError>,
    V: Fn(&T) -> bool,
{
    if let Some(hit) = ctx.cache.as_ref().and_then(|cache| cache.get::<T>(c, query)).filter(|a| valid(a)) {
        return Ok(hit);
    }
    let (answer, keep) = compute()?;
    if keep {
        if let Some(cache) = &ctx.cache {
            cache.put(c, query, &answer);
        }
    }
    Ok(answer)
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
enum MinorAnswer {
    Found { embedding: MinorEmbedding },
    None,
    Unknown,
}

fn minor(a: &MinorArgs, ctx: &Ctx) -> Result<Output, CliError> {
    let g = read_graph(&a.graph, "--graph")?;
    let (pattern, label) = read_pattern(&a.pattern)?;
    if g.n() > WORD_LIMIT {
        return Err(CliError::Usage(format!("--graph: {} vertices exceeds the search limit of {WORD_LIMIT}", g.n())));
    }
    let (c, order) = canonical(&g);
    let query = format!("minor {label} nodes={}", ctx.opts.node_budget);
    let valid = |ans: &MinorAnswer| match ans {
        MinorAnswer::Found { embedding } => verify_embedding(&c, &pattern, embedding),
        MinorAnswer::None => true,
        MinorAnswer::Unknown => false,
    };
    let answer = cached(ctx, &c, &query, valid, || {
        let (outcome, _) = minorforge::find_minor_with(&c, &pattern, &ctx.opts).map_err(search_error)?;
        Ok(match outcome {
            MinorOutcome::Found(embedding) => (MinorAnswer::Found { embedding }, true),
            MinorOutcome::Absent => (MinorAnswer::None, true),
            MinorOutcome::Unknown => (MinorAnswer::Unknown, false),
        })
    })?;
    let mut body = object(json!({ "graph": to_graph6(&g), "pattern": label }));
    let (text, code) = match &answer {
        MinorAnswer::Found { embedding } => {
            let e = relabel_embedding(embedding, &order);
            debug_assert!(verify_embedding(&g, &pattern, &e));
            body.insert("result".into(), json!("found"));
            let text = serde_json::to_string(&e).expect("serialisable") + "\n";
            body.insert("embedding".into(), json!(e));
            (text, 0)
        }
        MinorAnswer::None => {
            body.insert("result".into(), json!("none"));
            ("none\n".to_string(), 1)
        }
        MinorAnswer::Unknown => {
            body.insert("result".into(), json!("unknown"));
            ("unknown\n".to_string(), 3)
        }
    };
    Ok(Output { body, text, code })
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
enum ColorAnswer {
    Colored { colors: Coloring },
    Minor { embedding: MinorEmbedding },
    Unresolved { reason: Unresolved },
}

fn color(a: &ColorArgs, ctx: &Ctx) -> Result<Output, CliError> {
    let g = read_graph(&a.graph, "--graph")?;
    if g.n() > WORD_LIMIT {
        return Err(CliError::Usage(format!("--graph: {} vertices exceeds the search limit of {WORD_LIMIT}", g.n())));
    }
    let opts = DichotomyOptions {
        mode: if a.certify { DichotomyMode::Exact } else { DichotomyMode::Auto },
        node_budget: ctx.opts.node_budget,
        color_budget: a.color_budget,
        ..Default::default()
    };
    if a.certify && g.n() > opts.exact_limit {
        return Err(CliError::Budget(format!(
            "--certify: {} vertices exceeds the exact limit of {}",
            g.n(),
            opts.exact_limit
        )));
    }
    let (c, order) = canonical(&g);
    let query = format!("color mode={:?} nodes={} colors={}", opts.mode, opts.node_budget, opts.color_budget);
    let pattern = PatternSpec::Family { t: 8, s: 4 };
    let valid = |ans: &ColorAnswer| match ans {
        ColorAnswer::Colored { colors } => colors.colors().len() == c.n() && colors.is_proper(&c) && colors.palette_size() <= 7,
        ColorAnswer::Minor { embedding } => verify_embedding(&c, &pattern, embedding),
        ColorAnswer::Unresolved { .. } => false,
    };
    let answer = cached(ctx, &c, &query, valid, || {
        Ok(match seven_color_or_minor_with(&c, &opts).map_err(search_error)? {
            Dichotomy::Colored(colors) => (ColorAnswer::Colored { colors }, true),
            Dichotomy::Minor(embedding) => (ColorAnswer::Minor { embedding }, true),
            Dichotomy::Unresolved(reason) => (ColorAnswer::Unresolved { reason }, false),
        })
    })?;
    let mut body = object(json!({ "graph": to_graph6(&g), "certify": a.certify }));
    let (text, code) = match &answer {
        ColorAnswer::Colored { colors } => {
            let pos: Vec<usize> = {
                let mut p = vec![0; order.len()];
                for (i, &v) in order.iter().enumerate() {
                    p[v] = i;
                }
                p
            };
            let back = Coloring::new((0..g.n()).map(|v| colors.color(pos[v])).collect()).normalized();
            debug_assert!(back.is_proper(&g));
            body.insert("result".into(), json!("colored"));
            body.insert("palette".into(), json!(back.palette_size()));
            let text = format!("colored {}\n", serde_json::to_string(&back).expect("serialisable"));
            body.insert("colors".into(), json!(back));
            (text, 0)
        }
        ColorAnswer::Minor { embedding } => {
            let e = relabel_embedding(embedding, &order);
            body.insert("result".into(), json!("minor"));
            let text = format!("minor {}\n", serde_json::to_string(&e).expect("serialisable"));
            body.insert("embedding".into(), json!(e));
            (text, 0)
        }
        ColorAnswer::Unresolved { reason } => {
            body.insert("result".into(), json!("unresolved"));
            body.insert("reason".into(), json!(reason));
            let code = if *reason == Unresolved::NoMinorFound { 1 } else { 3 };
            (format!("unresolved {reason:?}\n"), code)
        }
    };
    Ok(Output { body, text, code })
}

fn enumerate(a: &EnumerateArgs) -> Result<Output, CliError> {
    let forbidden_subgraphs = a.forbid.iter().map(|f| read_graph(f, "--forbid")).collect::<Result<Vec<_>, _>>()?;
    let filter = GraphFilter {
        min_degree: a.min_degree,
        max_degree: a.max_degree,
        exact_edges: a.edges,
        alpha_at_most: a.alpha_at_most,
        min_connectivity: a.min_connectivity,
        forbidden_subgraphs,
    };
    let graphs = all_graphs(a.n, &filter).map_err(search_error)?;
    let lines: Vec<String> = graphs.iter().map(to_graph6).collect();
    let mut body = object(json!({ "n": a.n, "filter": filter, "count": lines.len() }));
    let text = if a.count {
        format!("{}\n", lines.len())
    } else {
        lines.iter().map(|l| format!("{l}\n")).collect()
    };
    if !a.count {
        body.insert("graphs".into(), json!(lines));
    }
    Ok(Output { body, text, code: 0 })
}

fn cockade(a: &CockadeArgs) -> Result<Output, CliError> {
    let recipe = read_recipe(a.copies, a.schedule.as_deref())?;
    let g = build_cockade(&recipe).map_err(|e| CliError::Usage(e.to_string()))?;
    let text = format!("{g}\n");
    let body = object(json!({
        "copies": recipe.copies,
        "n": g.n(),
        "edges": g.edge_count(),
        "graph6": to_graph6(&g),
        "recipe": recipe,
    }));
    Ok(Output { body, text, code: 0 })
}

fn extremal(a: &ExtremalArgs, ctx: &Ctx) -> Result<Output, CliError> {
    let report = match a.edges {
        Some(m) => random_edge_trials(a.n, m, a.trials, ctx.seed, &ctx.opts),
        None => random_extremal_test(a.n, a.trials, ctx.seed, &ctx.opts),
    }
    .map_err(search_error)?;
    let failures = report.counterexamples.len();
    Ok(report_output("extremal", report, object(json!({ "failures": failures }))))
}
