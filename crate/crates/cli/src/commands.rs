use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use netdisrupt::baselines::{run_baseline, BaselineStrategy};
use netdisrupt::experiment::{
    combined_pareto, comparison_report, explicit_record, read_results, selection_histogram,
    sweep as run_sweep, union_of_extremes, write_results, ResultStore, Strategy, SweepContext,
    SweepResult, EXPLICIT_LIST,
};
use netdisrupt::graph::io::{is_canonical, load_any, load_graph, read_edge_list, write_graph};
use netdisrupt::graph::{CentralityConfig, WeightedGraph};
use netdisrupt::moga::{run_nsga2, run_wsga, write_history};
use netdisrupt::objectives::Evaluator;
use netdisrupt::spatial::SpatialLayout;
use netdisrupt::{Error, Result};

use crate::args::{
    parse_budgets, split_list, stem, Algo, BaselineArgs, IngestArgs, LayoutArgs, LayoutSource,
    OptimizeArgs, ParetoArgs, ReportArgs, SweepArgs,
};
use crate::output::Outputs;

pub fn ingest(a: IngestArgs) -> Result<()> {
    let path = &a.graph.dataset;
    let g = if is_canonical(path)? {
        load_graph(path)?
    } else {
        let ing = read_edge_list(path, a.graph.format)?;
        if ing.merged_duplicates > 0 || ing.dropped_self_loops > 0 {
            eprintln!(
                "note: merged {} duplicate edges, dropped {} self-loops",
                ing.merged_duplicates, ing.dropped_self_loops
            );
        }
        ing.graph
    };
    println!(
        "{}: {} nodes, {} edges",
        a.graph.dataset_name(),
        g.node_count(),
        g.edge_count()
    );
    if let Some(dir) = &a.out {
        let mut out = Outputs::create(dir)?;
        out.write_with("graph.csv", |w| write_graph(&g, w))?;
        out.snapshot("ingest", None, &a)?;
        out.commit();
    }
    Ok(())
}

pub fn layout(a: LayoutArgs) -> Result<()> {
    let g = a.graph.load()?;
    let seed = a.seed.resolve();
    let source = LayoutSource {
        layout: None,
        bbox: a.bbox.clone(),
        hqs: a.hqs,
    };
    let layout = source.generate(&g, seed)?;
    let mut out = Outputs::create(&a.out.out)?;
    out.write_with("layout.csv", |w| layout.write(w))?;
    out.snapshot("layout", Some(seed), &a)?;
    out.commit();
    Ok(())
}

fn write_layout_if_generated(out: &mut Outputs, layout: &SpatialLayout, generated: bool, name: &str) -> Result<()> {
    if generated {
        out.write_with(name, |w| layout.write(w))?;
    }
    Ok(())
}

/// Appends records whose fingerprint the store does not hold yet.
fn store_records(out: &mut Outputs, records: &[SweepResult]) -> Result<()> {
    let mut store = ResultStore::open(out.path("results.csv"))?;
    let fresh: Vec<SweepResult> = records
        .iter()
        .filter(|r| !store.records().iter().any(|s| s.fingerprint == r.fingerprint))
        .cloned()
        .collect();
    store.append(&fresh)
}

fn read_labels(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(text
        .split([',', '\n', '\r'])
        .map(str::trim)
        .filter(|t| !t.is_empty() && !t.starts_with('#'))
        .map(str::to_string)
        .collect())
}

pub fn baseline(a: BaselineArgs) -> Result<()> {
    let g = a.graph.load()?;
    let seed = a.seed.resolve_if(a.layout.layout.is_none());
    let (layout, generated) = a.layout.resolve(&g, seed)?;
    let mut ctx = SweepContext::new(a.graph.dataset_name(), &g, &layout);
    ctx.centrality = CentralityConfig {
        ci_radius: a.ci_radius,
        ..CentralityConfig::default()
    };
    ctx.master_seed = seed;

    let mut out = Outputs::create(&a.out.out)?;
    write_layout_if_generated(&mut out, &layout, generated, "layout.csv")?;
    let record = if a.strategy == EXPLICIT_LIST {
        let file = a
            .removal
            .as_ref()
            .ok_or_else(|| Error::Config("explicit-list needs --removal FILE".into()))?;
        explicit_record(&ctx, &read_labels(file)?)?
    } else {
        let strategy: BaselineStrategy = a.strategy.parse()?;
        let budget = a
            .budget
            .ok_or_else(|| Error::Config("--budget is required for centrality baselines".into()))?;
        let eval = Evaluator::new(&g, &layout)?;
        let run = run_baseline(&eval, strategy, budget, &ctx.centrality)?;
        out.write_with("trace.csv", |w| {
            let mut c = csv::Writer::from_writer(w);
            c.write_record(["step", "node", "rho", "D"])?;
            for s in &run.trace {
                c.write_record([
                    s.step.to_string(),
                    g.label(s.node),
                    s.rho.to_string(),
                    s.d.to_string(),
                ])?;
            }
            c.flush().map_err(|e| Error::io("trace.csv", e))
        })?;
        let obj = eval.evaluate(&run.set)?;
        let s = Strategy::Baseline(strategy);
        ctx.record(&s.label(), budget, 0, run.set.nodes(), &obj, ctx.fingerprint(&s, budget, 0)?)
    };
    println!(
        "{} on {} at budget {}: rho {:.6}, D {:.6}",
        record.strategy, record.dataset, record.budget, record.rho, record.d
    );
    store_records(&mut out, std::slice::from_ref(&record))?;
    out.snapshot("baseline", Some(seed), &a)?;
    out.commit();
    Ok(())
}

pub fn optimize(a: OptimizeArgs) -> Result<()> {
    let g = a.graph.load()?;
    let seed = a.seed.resolve();
    let cfg = a.ga.config(seed)?;
    let (layout, generated) = a.layout.resolve(&g, seed)?;
    let mut ctx = SweepContext::new(a.graph.dataset_name(), &g, &layout);
    ctx.ga = cfg.clone();
    ctx.master_seed = seed;
    let eval = Evaluator::new(&g, &layout)?;

    let mut out = Outputs::create(&a.out.out)?;
    write_layout_if_generated(&mut out, &layout, generated, "layout.csv")?;
    let (strategy, genes, obj, history) = match a.algo {
        Algo::Wsga => {
            let res = run_wsga(&eval, a.budget, &cfg)?;
            (Strategy::Wsga, res.best.genes().to_vec(), res.objectives, res.history)
        }
        Algo::Nsga2 => {
            let res = run_nsga2(&eval, a.budget, &cfg)?;
            out.write_with("front.csv", |w| {
                let mut c = csv::Writer::from_writer(w);
                c.write_record(["f_rho", "f_spatial", "rho", "D", "raw_mean_distance", "crowding", "removal_set"])?;
                for m in &res.front.members {
                    let labels: Vec<String> = m.genome.sorted().iter().map(|&v| g.label(v)).collect();
                    c.write_record([
                        m.objectives.f_rho.to_string(),
                        m.objectives.f_spatial.to_string(),
                        m.objectives.rho.to_string(),
                        m.objectives.d.to_string(),
                        m.objectives.raw_mean_distance.to_string(),
                        m.crowding.to_string(),
                        labels.join(";"),
                    ])?;
                }
                c.flush().map_err(|e| Error::io("front.csv", e))
            })?;
            let rep = res
                .front
                .representative(&cfg.weights)
                .ok_or_else(|| Error::Invariant("empty final front".into()))?
                .clone();
            (Strategy::Nsga2, rep.genome.genes().to_vec(), rep.objectives, res.history)
        }
    };
    out.write_with("history.csv", |w| write_history(&history, w))?;
    let record = ctx.record(
        &strategy.label(),
        a.budget,
        seed,
        &genes,
        &obj,
        ctx.fingerprint(&strategy, a.budget, seed)?,
    );
    println!(
        "{} on {} at budget {}: rho {:.6}, D {:.6}",
        record.strategy, record.dataset, record.budget, record.rho, record.d
    );
    store_records(&mut out, std::slice::from_ref(&record))?;
    out.snapshot("optimize", Some(seed), &json!({ "options": &a, "ga": &cfg }))?;
    out.commit();
    Ok(())
}

pub fn sweep(a: SweepArgs) -> Result<()> {
    let seed = a.seed.resolve();
    let cfg = a.ga.config(seed)?;
    let strategies: Vec<Strategy> = split_list(&a.strategies)
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_>>()?;
    if strategies.is_empty() {
        return Err(Error::Config("no strategies given".into()));
    }
    let budgets = parse_budgets(&a.budgets)?;
    if !a.layout.is_empty() && a.layout.len() != a.dataset.len() {
        return Err(Error::Config(format!(
            "{} layouts given for {} datasets",
            a.layout.len(),
            a.dataset.len()
        )));
    }
    let names: Vec<String> = a.dataset.iter().map(|p| stem(p)).collect();
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(Error::Config(format!("dataset name '{n}' appears twice")));
        }
    }
    let graphs: Vec<WeightedGraph> = a
        .dataset
        .iter()
        .map(|p| load_any(p, a.format))
        .collect::<Result<_>>()?;

    let mut out = Outputs::create(&a.out.out)?;
    let mut layouts = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let source = LayoutSource {
            layout: a.layout.get(i).cloned(),
            bbox: a.bbox.clone(),
            hqs: a.hqs,
        };
        let (l, generated) = source.resolve(g, seed)?;
        write_layout_if_generated(&mut out, &l, generated, &format!("layout-{}.csv", names[i]))?;
        layouts.push(l);
    }

    let mut store = ResultStore::open(out.path("results.csv"))?;
    for ((g, layout), name) in graphs.iter().zip(&layouts).zip(&names) {
        let mut ctx = SweepContext::new(name.clone(), g, layout);
        ctx.ga = cfg.clone();
        ctx.master_seed = seed;
        ctx.replicates = a.replicates;
        ctx.centrality.ci_radius = a.ci_radius;
        for s in &strategies {
            let recs = run_sweep(&ctx, std::slice::from_ref(s), &budgets, store.records())?;
            eprintln!("{name}: {s}: {} new records", recs.len());
            store.append(&recs)?;
        }
    }
    out.snapshot("sweep", Some(seed), &json!({ "options": &a, "ga": &cfg }))?;
    out.commit();
    Ok(())
}

fn load_results(paths: &[PathBuf]) -> Result<Vec<SweepResult>> {
    let mut all = Vec::new();
    for p in paths {
        let file = if p.is_dir() { p.join("results.csv") } else { p.clone() };
        if !file.exists() {
            return Err(Error::NoResults(file.display().to_string()));
        }
        let f = fs::File::open(&file).map_err(|e| Error::io(&file, e))?;
        all.extend(read_results(f, &file)?);
    }
    Ok(all)
}

#[derive(Serialize)]
struct HistogramSummary {
    strategy: String,
    runs: usize,
    total_budget: usize,
    conserved: bool,
    top: Vec<(String, usize)>,
    bottom: Vec<(String, usize)>,
}

pub fn pareto(a: ParetoArgs) -> Result<()> {
    let mut records = load_results(&a.results)?;
    if let Some(list) = &a.strategies {
        let keep = split_list(list);
        records.retain(|r| keep.contains(&r.strategy));
    }
    if records.is_empty() {
        return Err(Error::NoResults("no records in the given results".into()));
    }
    let mut by_dataset: BTreeMap<String, Vec<SweepResult>> = BTreeMap::new();
    for r in &records {
        by_dataset.entry(r.dataset.clone()).or_default().push(r.clone());
    }
    let front: Vec<SweepResult> = by_dataset.values().flat_map(|rs| combined_pareto(rs)).collect();

    let mut out = Outputs::create(&a.out.out)?;
    out.write_with("pareto.csv", |w| write_results(&front, w))?;
    out.write_json("pareto.json", &front)?;
    println!("{} non-dominated records out of {}", front.len(), records.len());

    if let Some(path) = &a.dataset {
        let g = load_any(path, a.format)?;
        let name = a.name.clone().unwrap_or_else(|| stem(path));
        let rs = by_dataset
            .get(&name)
            .ok_or_else(|| Error::NoResults(format!("no records for dataset '{name}'")))?;
        let mut by_strategy: BTreeMap<String, Vec<SweepResult>> = BTreeMap::new();
        for r in rs {
            by_strategy.entry(r.strategy.clone()).or_default().push(r.clone());
        }
        let mut hists = Vec::new();
        for (s, recs) in &by_strategy {
            let h = selection_histogram(&g, recs)?;
            if !h.is_conserved() {
                return Err(Error::Invariant(format!("histogram for {s} does not add up")));
            }
            out.write_with(&format!("histogram-{name}-{s}.csv"), |w| h.write_csv(w))?;
            hists.push(h);
        }
        let (top, bottom) = union_of_extremes(&hists, a.top);
        let summaries: Vec<HistogramSummary> = hists
            .iter()
            .map(|h| HistogramSummary {
                strategy: h.strategy.clone(),
                runs: h.runs,
                total_budget: h.total_budget,
                conserved: h.is_conserved(),
                top: h.top(a.top),
                bottom: h.bottom(a.top),
            })
            .collect();
        out.write_json(
            &format!("histograms-{name}.json"),
            &json!({ "dataset": name, "k": a.top, "histograms": summaries, "union_top": top, "union_bottom": bottom }),
        )?;
    }
    out.snapshot("pareto", None, &a)?;
    out.commit();
    Ok(())
}

pub fn report(a: ReportArgs) -> Result<()> {
    let records = load_results(&a.results)?;
    if records.is_empty() {
        return Err(Error::NoResults("no records in the given results".into()));
    }
    let strategies = match &a.strategies {
        Some(list) => split_list(list),
        None => {
            let mut s = vec![
                "wsga".to_string(),
                "nsga2".to_string(),
                BaselineStrategy::reference().label(),
            ];
            if records.iter().any(|r| r.strategy == EXPLICIT_LIST && r.budget == a.budget) {
                s.push(EXPLICIT_LIST.to_string());
            }
            s
        }
    };
    let rep = comparison_report(&records, a.budget, &strategies)?;
    print!("{}", rep.render());
    let mut out = Outputs::create(&a.out.out)?;
    out.write_with("report.csv", |w| rep.write_csv(w))?;
    out.write_json("report.json", &rep)?;
    out.snapshot("report", None, &a)?;
    out.commit();
    Ok(())
}
