use std::fmt::Write;

use super::run::{Metric, MetricsReport};
use super::welch::welch_t_test;

/// Per-comparison level after a Bonferroni correction over the matrix of
/// comparisons. A difference counts as significant when `p < SIGNIFICANCE_LEVEL`.
pub const SIGNIFICANCE_LEVEL: f64 = 0.001;

impl Comparison {
    pub fn is_significant(&self) -> bool {
        self.p_value.is_some_and(|p| p < SIGNIFICANCE_LEVEL)
    }
}

/// One cell of the pairwise significance matrix. `p_value` is `None` when a
/// side has fewer than two samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub config_a: String,
    pub config_b: String,
    pub metric: Metric,
    pub p_value: Option<f64>,
}

/// Welch tests for every ordered pair of reports (self-pairs included) on
/// every metric.
pub fn pairwise_significance(reports: &[MetricsReport]) -> Vec<Comparison> {
    let mut out = Vec::new();
    for a in reports {
        for b in reports {
            for m in Metric::ALL {
                let p_value = welch_t_test(&a.metric(m).samples, &b.metric(m).samples)
                    .ok()
                    .map(|r| r.p_value);
                out.push(Comparison {
                    config_a: a.name.clone(),
                    config_b: b.name.clone(),
                    metric: m,
                    p_value,
                });
            }
        }
    }
    out
}

/// `config<TAB>precision<TAB>recall<TAB>ndcg<TAB>ebn<TAB>diversity`, header
/// first, six decimals.
pub fn format_report(reports: &[MetricsReport]) -> String {
    let mut out = String::from("config");
    for m in Metric::ALL {
        write!(out, "\t{}", m.label()).unwrap();
    }
    out.push('\n');
    for r in reports {
        out.push_str(&r.name);
        for m in Metric::ALL {
            write!(out, "\t{:.6}", r.metric(m).mean).unwrap();
        }
        out.push('\n');
    }
    out
}

/// `config_a<TAB>config_b<TAB>metric<TAB>p_value`, header first.
pub fn format_significance(rows: &[Comparison]) -> String {
    let mut out = String::from("config_a\tconfig_b\tmetric\tp_value\n");
    for c in rows {
        let p = match c.p_value {
            Some(p) => format!("{p:.6e}"),
            None => "NA".to_string(),
        };
        writeln!(
            out,
            "{}\t{}\t{}\t{}",
            c.config_a,
            c.config_b,
            c.metric.label(),
            p
        )
        .unwrap();
    }
    out
}
