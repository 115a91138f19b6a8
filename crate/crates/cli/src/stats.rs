//! Per-instance reduction statistics records, as rendered into the stats
//! and benchmark JSON outputs.

use dskern_core::reduction::{ReductionResult, RuleCounts, RuleKind};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct RuleCountRecord {
    pub r1: u64,
    pub r2_1_1: u64,
    pub r2_1_2: u64,
    pub r2_1_3: u64,
    pub r2_2: u64,
    pub w1: u64,
    pub w2: u64,
    pub w3: u64,
}

impl From<&RuleCounts> for RuleCountRecord {
    fn from(c: &RuleCounts) -> Self {
        RuleCountRecord {
            r1: c.get(RuleKind::R1),
            r2_1_1: c.get(RuleKind::R2Case11),
            r2_1_2: c.get(RuleKind::R2Case12),
            r2_1_3: c.get(RuleKind::R2Case13),
            r2_2: c.get(RuleKind::R2Case2),
            w1: c.get(RuleKind::W1),
            w2: c.get(RuleKind::W2),
            w3: c.get(RuleKind::W3),
        }
    }
}

/// One reduced instance. Removal percentages count input-origin vertices
/// and edges only, so gadget additions can neither push them over 100 nor
/// below 0. `gamma` (and with it `pct_ds_fixed`) is present only when the
/// kernel was small enough for the exact oracle.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct BenchRecord {
    pub instance_id: String,
    pub n_before: usize,
    pub m_before: usize,
    pub n_after: usize,
    pub m_after: usize,
    pub forced_count: usize,
    pub rule_counts: RuleCountRecord,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,
    pub pct_vertices_removed: f64,
    pub pct_edges_removed: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pct_ds_fixed: Option<f64>,
}

fn pct(removed: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        100.0 * removed as f64 / total as f64
    }
}

impl BenchRecord {
    pub fn from_reduction(
        instance_id: impl Into<String>,
        res: &ReductionResult,
        gamma: Option<usize>,
    ) -> Self {
        let s = &res.stats;
        let forced_count = res.forced.len();
        let pct_ds_fixed = gamma
            .filter(|&g| g > 0)
            .map(|g| 100.0 * forced_count as f64 / g as f64);
        BenchRecord {
            instance_id: instance_id.into(),
            n_before: s.n_before,
            m_before: s.m_before,
            n_after: s.n_after,
            m_after: s.m_after,
            forced_count,
            rule_counts: RuleCountRecord::from(&s.rule_counts),
            elapsed_ms: s.elapsed.as_secs_f64() * 1e3,
            gamma,
            pct_vertices_removed: pct(s.n_before - s.n_after_original, s.n_before),
            pct_edges_removed: pct(s.m_before - s.m_after_original, s.m_before),
            pct_ds_fixed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dskern_core::graph::{Color, Graph, Origin};
    use dskern_core::reduction::{reduce, Mode};

    #[test]
    fn star_record_counts_original_removals() {
        let mut g = Graph::new();
        let c = g.add_vertex(Color::Black, Origin::Original);
        for _ in 0..3 {
            let l = g.add_vertex(Color::Black, Origin::Original);
            g.add_edge(c, l).unwrap();
        }
        let res = reduce(g, Mode::gadget());
        let rec = BenchRecord::from_reduction("star", &res, Some(1));
        assert_eq!(rec.n_before, 4);
        assert_eq!(rec.n_after, 2);
        // Three leaves gone, the center stays: 75% of originals removed
        // even though a gadget was added.
        assert!((rec.pct_vertices_removed - 75.0).abs() < 1e-9);
        assert!((rec.pct_edges_removed - 100.0).abs() < 1e-9);
        assert_eq!(rec.rule_counts.r1, 1);
        assert_eq!(rec.pct_ds_fixed, Some(0.0));
        let json = serde_json::to_value(&rec).unwrap();
        assert_eq!(json["instance_id"], "star");
        assert_eq!(json["rule_counts"]["r1"], 1);
    }

    #[test]
    fn percentages_stay_in_range() {
        let g = Graph::new();
        let res = reduce(g, Mode::gadget());
        let rec = BenchRecord::from_reduction("empty", &res, None);
        assert_eq!(rec.pct_vertices_removed, 0.0);
        assert_eq!(rec.pct_edges_removed, 0.0);
        assert_eq!(rec.pct_ds_fixed, None);
        let json = serde_json::to_string(&rec).unwrap();
        assert!(!json.contains("pct_ds_fixed"));
        assert!(!json.contains("\"gamma\""));
    }
}
