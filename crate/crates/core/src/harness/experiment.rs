//! Treewidth against grid minors on generated arrangements, as CSV rows.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{gen, trial_seed, ExperimentConfig, Instance};
use crate::error::{Error, Result};
use crate::geometry::Arrangement;
use crate::gridminor::{bg_exact_small, bg_lower};
use crate::intersect::{
    arrangement_chain, check_bundle, contact_points, model_fat_convex, model_rho_convex, planarize, theorem1_bound,
    BgCertificate, RhoOptions,
};
use crate::treewidth::{treewidth_exact, treewidth_lower, treewidth_upper};

/// Version tag written in the first column of every row.
pub const RATIO_SCHEMA: &str = "ratio-v1";

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RatioRecord {
    pub schema: String,
    /// Trial index, or `summary`.
    pub instance: String,
    pub family: String,
    pub seed: Option<u64>,
    pub vertices: Option<usize>,
    pub edges: Option<usize>,
    pub xi: Option<usize>,
    pub tw_lower: Option<usize>,
    pub tw_upper: Option<usize>,
    pub tw_exact: Option<usize>,
    pub bg_lower: Option<usize>,
    pub bg_exact: Option<usize>,
    pub r_prime: Option<i64>,
    pub r_double: Option<i64>,
    /// `r'' <= bg`, only when both sides are exact.
    pub chain_pass: Option<bool>,
    /// `tw / (max(xi, 1) bg)`, only when both sides are exact.
    pub ratio: Option<f64>,
    pub planarization_ok: Option<bool>,
    pub rho: Option<usize>,
    pub delta: Option<usize>,
    pub crossing_bound: Option<usize>,
    pub crossing_ok: Option<bool>,
    /// Summary row only.
    pub pass_rate: Option<f64>,
    pub error: Option<String>,
}

fn arrangement_of(instance: &Instance, seed: u64, record: &mut RatioRecord) -> Result<Arrangement> {
    match instance {
        Instance::Segments { arrangement } | Instance::Polysegments { arrangement } => Ok(arrangement.clone()),
        Instance::RhoConvex { rho, bodies } => {
            let contacts = contact_points(bodies, seed)?;
            let model = model_rho_convex(bodies, &contacts, RhoOptions::new(*rho))?;
            record.rho = Some(*rho);
            record.delta = Some(model.delta);
            record.crossing_bound = Some(model.crossing_bound);
            record.crossing_ok = Some(model.within_crossing_bound());
            Ok(model.arrangement)
        }
        Instance::FatConvex { h, bodies, .. } => {
            let contacts = contact_points(bodies, seed)?;
            let model = model_fat_convex(bodies, &contacts, *h)?;
            record.delta = Some(model.delta);
            Ok(model.arrangement)
        }
        Instance::TriangulatedGrid { .. } => Err(Error::invalid("ratio experiments need an arrangement family")),
    }
}

fn run_trial(config: &ExperimentConfig, i: usize) -> RatioRecord {
    let seed = trial_seed(config.seed, i);
    let mut record = RatioRecord {
        schema: RATIO_SCHEMA.into(),
        instance: i.to_string(),
        family: serde_json::to_value(config.family)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default(),
        seed: Some(seed),
        ..RatioRecord::default()
    };
    let limits = &config.limits;
    let run = |record: &mut RatioRecord| -> Result<()> {
        let instance = gen(config, i)?;
        let arr = arrangement_of(&instance, seed, record)?;
        let bundle = planarize(&arr)?;
        record.planarization_ok = Some(check_bundle(&bundle, &arr)?.passed());
        let gb = &bundle.gb;
        record.vertices = Some(gb.vertex_count());
        record.edges = Some(gb.edge_count());
        record.xi = Some(bundle.xi);
        record.tw_lower = Some(treewidth_lower(gb));
        record.tw_upper = Some(treewidth_upper(gb).0);
        if gb.vertex_count() <= limits.tw_exact {
            record.tw_exact = Some(treewidth_exact(gb, limits.tw_exact)?.0);
        }
        if gb.vertex_count() <= limits.bg_exact {
            record.bg_exact = Some(bg_exact_small(gb, limits.bg_exact)?);
            record.bg_lower = record.bg_exact;
        } else {
            let k_max = (gb.vertex_count() as f64).sqrt() as usize;
            record.bg_lower = Some(bg_lower(gb, k_max, limits, seed)?.k);
        }
        let chain = arrangement_chain(record.tw_exact.or(record.tw_lower).unwrap_or(0), bundle.xi);
        record.r_prime = Some(chain.r_prime);
        record.r_double = Some(chain.r_double);
        if let (Some(tw), Some(bg)) = (record.tw_exact, record.bg_exact) {
            let report = theorem1_bound(&bundle, BgCertificate::Exact(bg), limits)?;
            record.chain_pass = Some(report.holds);
            if bg > 0 {
                record.ratio = Some(tw as f64 / (bundle.xi.max(1) * bg) as f64);
            }
        }
        Ok(())
    };
    if let Err(e) = run(&mut record) {
        record.error = Some(e.to_string());
    }
    record
}

/// One row per trial in trial order, then a summary row with the largest
/// certified ratio and the share of certified rows whose chain holds.
pub fn experiment_ratio(config: &ExperimentConfig) -> Result<Vec<RatioRecord>> {
    if config.family == super::Family::TriangulatedGrid {
        return Err(Error::invalid("ratio experiments need an arrangement family"));
    }
    let mut rows: Vec<RatioRecord> = (0..config.trials)
        .into_par_iter()
        .map(|i| run_trial(config, i))
        .collect();
    let certified: Vec<bool> = rows.iter().filter_map(|r| r.chain_pass).collect();
    let summary = RatioRecord {
        schema: RATIO_SCHEMA.into(),
        instance: "summary".into(),
        family: rows.first().map(|r| r.family.clone()).unwrap_or_default(),
        ratio: rows.iter().filter_map(|r| r.ratio).reduce(f64::max),
        chain_pass: Some(certified.iter().all(|&p| p)),
        pass_rate: (!certified.is_empty())
            .then(|| certified.iter().filter(|&&p| p).count() as f64 / certified.len() as f64),
        ..RatioRecord::default()
    };
    rows.push(summary);
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[RatioRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::invalid(format!("csv: {e}")))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Family;

    #[test]
    fn small_segment_runs() {
        let config = ExperimentConfig {
            n: 5,
            xi: Some(2),
            trials: 6,
            seed: 9,
            ..ExperimentConfig::default()
        };
        let rows = experiment_ratio(&config).unwrap();
        assert_eq!(rows.len(), 7);
        for r in &rows[..6] {
            assert_eq!(r.error, None);
            assert_eq!(r.planarization_ok, Some(true));
            assert!(r.tw_lower <= r.tw_upper);
            assert_eq!(r.chain_pass, Some(true));
        }
        assert_eq!(rows[6].pass_rate, Some(1.0));
        let mut a = Vec::new();
        write_csv(&rows, &mut a).unwrap();
        let mut b = Vec::new();
        write_csv(&experiment_ratio(&config).unwrap(), &mut b).unwrap();
        assert_eq!(a, b);
        assert!(String::from_utf8(a).unwrap().starts_with("schema,instance,family"));
    }

    #[test]
    fn crossing_free_rows_are_forests() {
        let config = ExperimentConfig {
            n: 4,
            xi: Some(0),
            trials: 3,
            ..ExperimentConfig::default()
        };
        for r in &experiment_ratio(&config).unwrap()[..3] {
            assert!(r.tw_exact.unwrap() <= 1);
            assert!(r.bg_exact.unwrap() <= 1);
        }
        let grid = ExperimentConfig {
            family: Family::TriangulatedGrid,
            ..config
        };
        assert!(experiment_ratio(&grid).is_err());
    }
}
