use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::SweepResult;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

fn dominated_by(a: &SweepResult, b: &SweepResult) -> bool {
    // fewer removals, lower rho and lower D are all better
    let no_worse = b.budget <= a.budget && b.rho <= a.rho && b.d <= a.d;
    let better = b.budget < a.budget || b.rho < a.rho || b.d < a.d;
    no_worse && better
}

/// Records not dominated on (budget, rho, D), all minimized, in input
/// order. Records with identical criteria are all kept.
pub fn combined_pareto(results: &[SweepResult]) -> Vec<SweepResult> {
    let mut order: Vec<usize> = (0..results.len()).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (&results[a], &results[b]);
        x.budget
            .cmp(&y.budget)
            .then(x.rho.total_cmp(&y.rho))
            .then(x.d.total_cmp(&y.d))
    });
    // after sorting, only earlier records can dominate later ones
    let mut kept: Vec<usize> = Vec::new();
    for &i in &order {
        if !kept.iter().any(|&k| dominated_by(&results[i], &results[k])) {
            kept.push(i);
        }
    }
    kept.sort_unstable();
    kept.into_iter().map(|i| results[i].clone()).collect()
}

/// How often each node appears in one strategy's best solutions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyHistogram {
    pub dataset: String,
    pub strategy: String,
    pub runs: usize,
    /// Total removal slots over all runs, the sum of the budgets.
    pub total_budget: usize,
    /// Node label and count, in node id order, zero counts included.
    pub counts: Vec<(String, usize)>,
}

impl FrequencyHistogram {
    pub fn total(&self) -> usize {
        self.counts.iter().map(|c| c.1).sum()
    }

    /// Each selected node counts once per run it appears in, so the counts
    /// add up to the summed budgets.
    pub fn is_conserved(&self) -> bool {
        self.total() == self.total_budget
    }

    fn ranked(&self, most: bool) -> Vec<(String, usize)> {
        let mut v: Vec<(usize, &(String, usize))> = self.counts.iter().enumerate().collect();
        v.sort_by(|a, b| {
            let by_count = if most { b.1 .1.cmp(&a.1 .1) } else { a.1 .1.cmp(&b.1 .1) };
            by_count.then(a.0.cmp(&b.0))
        });
        v.into_iter().map(|(_, c)| c.clone()).collect()
    }

    /// `k` most selected nodes, ties by node id.
    pub fn top(&self, k: usize) -> Vec<(String, usize)> {
        self.ranked(true).into_iter().take(k).collect()
    }

    /// `k` least selected nodes, ties by node id.
    pub fn bottom(&self, k: usize) -> Vec<(String, usize)> {
        self.ranked(false).into_iter().take(k).collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["node", "count"])?;
        for (label, c) in &self.counts {
            w.write_record([label.as_str(), &c.to_string()])?;
        }
        w.flush().map_err(|e| Error::io("<histogram>", e))?;
        Ok(())
    }
}

/// Counts node appearances over records sharing one dataset and strategy.
pub fn selection_histogram(g: &WeightedGraph, results: &[SweepResult]) -> Result<FrequencyHistogram> {
    let first = results
        .first()
        .ok_or_else(|| Error::Config("no results to build a histogram from".into()))?;
    if let Some(r) = results
        .iter()
        .find(|r| r.dataset != first.dataset || r.strategy != first.strategy)
    {
        return Err(Error::Config(format!(
            "histogram mixes ({}, {}) with ({}, {})",
            first.dataset, first.strategy, r.dataset, r.strategy
        )));
    }
    let mut counts = vec![0usize; g.id_bound()];
    for r in results {
        for label in &r.removal_set {
            let v = g.node_by_label(label).ok_or_else(|| {
                Error::InvalidRemoval(format!("result names unknown node '{label}'"))
            })?;
            counts[v.0] += 1;
        }
    }
    Ok(FrequencyHistogram {
        dataset: first.dataset.clone(),
        strategy: first.strategy.clone(),
        runs: results.len(),
        total_budget: results.iter().map(|r| r.budget).sum(),
        counts: g.nodes().map(|v| (g.label(v), counts[v.0])).collect(),
    })
}

/// Union of the top-`k` and, separately, bottom-`k` node labels across
/// several histograms.
pub fn union_of_extremes(hists: &[FrequencyHistogram], k: usize) -> (BTreeSet<String>, BTreeSet<String>) {
    let mut top = BTreeSet::new();
    let mut bottom = BTreeSet::new();
    for h in hists {
        top.extend(h.top(k).into_iter().map(|c| c.0));
        bottom.extend(h.bottom(k).into_iter().map(|c| c.0));
    }
    (top, bottom)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetMetrics {
    pub dataset: String,
    pub rho: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub raw_mean_distance: f64,
    /// Records averaged for this dataset (GA replicates).
    pub records: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub strategy: String,
    pub rho: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub raw_mean_distance: f64,
    pub per_dataset: Vec<DatasetMetrics>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub budget: usize,
    pub datasets: Vec<String>,
    /// True when the headline numbers average more than one dataset.
    pub averaged: bool,
    pub rows: Vec<ReportRow>,
}

impl ComparisonReport {
    pub fn row(&self, strategy: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.strategy == strategy)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["strategy", "dataset", "budget", "rho", "D", "raw_mean_distance"])?;
        let scope = if self.averaged { "mean" } else { self.datasets[0].as_str() };
        for r in &self.rows {
            w.write_record([
                r.strategy.as_str(),
                scope,
                &self.budget.to_string(),
                &r.rho.to_string(),
                &r.d.to_string(),
                &r.raw_mean_distance.to_string(),
            ])?;
            if self.averaged {
                for m in &r.per_dataset {
                    w.write_record([
                        r.strategy.as_str(),
                        m.dataset.as_str(),
                        &self.budget.to_string(),
                        &m.rho.to_string(),
                        &m.d.to_string(),
                        &m.raw_mean_distance.to_string(),
                    ])?;
                }
            }
        }
        w.flush().map_err(|e| Error::io("<report>", e))?;
        Ok(())
    }

    /// Human-readable table.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let scope = if self.averaged {
            format!("mean over {}", self.datasets.join(", "))
        } else {
            format!("single dataset {} (not averaged)", self.datasets[0])
        };
        s.push_str(&format!("budget {} - {scope}\n", self.budget));
        s.push_str(&format!("{:<36} {:>10} {:>10} {:>14}\n", "strategy", "rho", "D", "raw distance"));
        for r in &self.rows {
            s.push_str(&format!(
                "{:<36} {:>10.4} {:>10.4} {:>14.3}\n",
                r.strategy, r.rho, r.d, r.raw_mean_distance
            ));
        }
        s
    }
}

/// Per-strategy rho and D at one budget. Replicates within a dataset are
/// averaged first, then datasets are averaged with equal weight.
pub fn comparison_report(
    results: &[SweepResult],
    budget: usize,
    strategies: &[String],
) -> Result<ComparisonReport> {
    let datasets: Vec<String> = results
        .iter()
        .map(|r| r.dataset.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if datasets.is_empty() || strategies.is_empty() {
        return Err(Error::IncompleteReport(vec!["no results or no strategies".into()]));
    }
    let mut cells: BTreeMap<(&str, &str), Vec<&SweepResult>> = BTreeMap::new();
    for r in results.iter().filter(|r| r.budget == budget) {
        cells.entry((&r.strategy, &r.dataset)).or_default().push(r);
    }
    let mut gaps = Vec::new();
    let mut rows = Vec::new();
    for s in strategies {
        let mut per_dataset = Vec::new();
        for ds in &datasets {
            match cells.get(&(s.as_str(), ds.as_str())) {
                None => gaps.push(format!("{s} on {ds} at budget {budget}")),
                Some(rs) => {
                    let k = rs.len() as f64;
                    per_dataset.push(DatasetMetrics {
                        dataset: ds.clone(),
                        rho: rs.iter().map(|r| r.rho).sum::<f64>() / k,
                        d: rs.iter().map(|r| r.d).sum::<f64>() / k,
                        raw_mean_distance: rs.iter().map(|r| r.raw_mean_distance).sum::<f64>() / k,
                        records: rs.len(),
                    });
                }
            }
        }
        if per_dataset.len() == datasets.len() {
            let k = per_dataset.len() as f64;
            rows.push(ReportRow {
                strategy: s.clone(),
                rho: per_dataset.iter().map(|m| m.rho).sum::<f64>() / k,
                d: per_dataset.iter().map(|m| m.d).sum::<f64>() / k,
                raw_mean_distance: per_dataset.iter().map(|m| m.raw_mean_distance).sum::<f64>() / k,
                per_dataset,
            });
        }
    }
    if !gaps.is_empty() {
        return Err(Error::IncompleteReport(gaps));
    }
    Ok(ComparisonReport {
        budget,
        averaged: datasets.len() > 1,
        datasets,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;
    use proptest::prelude::*;

    fn rec(ds: &str, strategy: &str, budget: usize, rho: f64, d: f64) -> SweepResult {
        SweepResult {
            dataset: ds.into(),
            strategy: strategy.into(),
            budget,
            seed: 0,
            rho,
            d,
            raw_mean_distance: d * 100.0,
            removal_set: Vec::new(),
            fingerprint: String::new(),
        }
    }

    #[test]
    fn pareto_examples() {
        let a = rec("m", "wsga", 5, 0.5, 0.3);
        assert_eq!(combined_pareto(std::slice::from_ref(&a)), vec![a.clone()]);
        let b = rec("m", "nsga2", 5, 0.6, 0.4);
        assert_eq!(combined_pareto(&[b, a.clone()]), vec![a.clone()]);
        let twin = rec("m", "nsga2", 5, 0.5, 0.3);
        assert_eq!(combined_pareto(&[a.clone(), twin.clone()]).len(), 2);
    }

    fn records() -> impl Strategy<Value = Vec<SweepResult>> {
        prop::collection::vec((1usize..8, 0u8..6, 0u8..6), 1..200).prop_map(|v| {
            v.into_iter()
                .enumerate()
                .map(|(i, (b, r, d))| {
                    rec("m", if i % 2 == 0 { "wsga" } else { "nsga2" }, b, r as f64 / 5.0, d as f64 / 5.0)
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn pareto_matches_pairwise_oracle(rs in records()) {
            let oracle: Vec<SweepResult> = rs
                .iter()
                .filter(|a| !rs.iter().any(|b| dominated_by(a, b)))
                .cloned()
                .collect();
            let got = combined_pareto(&rs);
            prop_assert_eq!(&got, &oracle);
            for a in &got {
                for b in &got {
                    prop_assert!(!dominated_by(a, b));
                }
            }
        }
    }

    #[test]
    fn histogram_counts_and_extremes() {
        let g = generators::path(5);
        let mk = |b: usize, nodes: &[&str]| SweepResult {
            removal_set: nodes.iter().map(|s| s.to_string()).collect(),
            ..rec("p", "wsga", b, 0.0, 0.0)
        };
        let rs = vec![mk(1, &["2"]), mk(2, &["2", "3"]), mk(3, &["1", "2", "3"])];
        let h = selection_histogram(&g, &rs).unwrap();
        assert_eq!(h.counts[2], ("2".to_string(), 3));
        assert_eq!(h.counts[0].1, 0);
        assert!(h.is_conserved());
        assert_eq!(h.total(), 6);
        assert_eq!(h.top(2), vec![("2".into(), 3), ("3".into(), 2)]);
        assert_eq!(h.bottom(2), vec![("0".into(), 0), ("4".into(), 0)]);
        let (top, bottom) = union_of_extremes(&[h.clone(), h], 1);
        assert_eq!(top.len(), 1);
        assert_eq!(bottom.len(), 1);
        let mixed = vec![mk(1, &["2"]), SweepResult { strategy: "nsga2".into(), ..mk(1, &["2"]) }];
        assert!(selection_histogram(&g, &mixed).is_err());
    }

    #[test]
    fn report_averages_datasets() {
        let rs = vec![
            rec("meeting", "wsga", 41, 0.05, 0.2),
            rec("phone", "wsga", 41, 0.07, 0.4),
            rec("meeting", "base", 41, 0.03, 0.5),
            rec("phone", "base", 41, 0.05, 0.7),
            rec("meeting", "wsga", 40, 0.9, 0.9),
        ];
        let rep = comparison_report(&rs, 41, &["wsga".into(), "base".into()]).unwrap();
        assert!(rep.averaged);
        assert!((rep.row("wsga").unwrap().rho - 0.06).abs() < 1e-12);
        assert!((rep.row("base").unwrap().d - 0.6).abs() < 1e-12);
        let mut buf = Vec::new();
        rep.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 1 + 2 * 3);
        assert!(rep.render().contains("mean over meeting, phone"));
    }

    #[test]
    fn report_single_dataset_and_gaps() {
        let rs = vec![rec("meeting", "wsga", 41, 0.05, 0.2), rec("meeting", "wsga", 41, 0.07, 0.2)];
        let rep = comparison_report(&rs, 41, &["wsga".into()]).unwrap();
        assert!(!rep.averaged);
        assert!((rep.rows[0].rho - 0.06).abs() < 1e-12);
        assert!(rep.render().contains("not averaged"));
        match comparison_report(&rs, 41, &["wsga".into(), "nsga2".into()]) {
            Err(Error::IncompleteReport(gaps)) => assert_eq!(gaps, vec!["nsga2 on meeting at budget 41"]),
            other => panic!("{other:?}"),
        }
    }
}
