//! Runs the classification checks over every ring built from a small block
//! catalog.

use std::collections::BTreeMap;
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::classify::{classify_report, ClassificationReport, Entry};
use crate::error::{Error, Result};
use crate::graph::IntersectionGraph;
use crate::rings::{is_prime, is_prime_power, BlockSpec, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Largest vertex count, i.e. nontrivial ideal count, to include.
    pub max_vertices: usize,
    /// Largest number of blocks in a spec.
    pub block_budget: usize,
    pub q_values: Vec<u32>,
    /// Chain blocks `chain(q, k)` are generated for `2 <= k <= chain_k_max`.
    pub chain_k_max: u32,
    pub vs_params: Vec<(u32, u32)>,
    /// Worker threads; 0 uses the global pool.
    pub parallel: usize,
    /// Keep every per-spec report in the output.
    pub include_reports: bool,
    pub caps: Caps,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_vertices: 14,
            block_budget: 4,
            q_values: vec![2, 3, 4, 5],
            chain_k_max: 4,
            vs_params: vec![(2, 2), (3, 2)],
            parallel: 0,
            include_reports: false,
            caps: Caps::default(),
        }
    }
}

impl SweepConfig {
    fn validate(&self) -> Result<()> {
        if let Some(q) = self.q_values.iter().find(|&&q| !is_prime_power(q as u64)) {
            return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
        }
        if let Some((q, d)) = self
            .vs_params
            .iter()
            .find(|(q, d)| !is_prime(*q as u64) || *d < 2)
        {
            return Err(Error::InvalidParameter(format!(
                "vs({q},{d}) needs a prime q and d >= 2"
            )));
        }
        Ok(())
    }

    /// The distinct blocks available, in block order.
    pub fn catalog(&self) -> Vec<BlockSpec> {
        let mut blocks = Vec::new();
        for &q in &self.q_values {
            blocks.push(BlockSpec::Field { q });
            for k in 2..=self.chain_k_max {
                blocks.push(BlockSpec::Chain { q, k });
            }
        }
        for &(q, d) in &self.vs_params {
            blocks.push(BlockSpec::VsLocal { q, d });
        }
        blocks.sort();
        blocks.dedup();
        blocks
    }
}

/// Every block multiset within the budget whose graph has at most
/// `max_vertices` vertices, each listed once in nondecreasing block order.
pub fn enumerate_specs(config: &SweepConfig) -> Result<Vec<RingSpec>> {
    config.validate()?;
    let catalog = config.catalog();
    let limit = config.max_vertices as u128 + 2;
    let mut out = Vec::new();
    let mut stack: Vec<BlockSpec> = Vec::new();

    fn grow(
        catalog: &[BlockSpec],
        from: usize,
        count: u128,
        limit: u128,
        budget: usize,
        stack: &mut Vec<BlockSpec>,
        out: &mut Vec<RingSpec>,
    ) {
        for (i, &b) in catalog.iter().enumerate().skip(from) {
            let c = count.saturating_mul(b.ideal_count());
            if c > limit {
                continue;
            }
            stack.push(b);
            out.push(RingSpec::from_blocks(stack.clone()));
            if stack.len() < budget {
                grow(catalog, i, c, limit, budget, stack, out);
            }
            stack.pop();
        }
    }
    if config.block_budget > 0 {
        grow(
            &catalog,
            0,
            1,
            limit,
            config.block_budget,
            &mut stack,
            &mut out,
        );
    }
    out.sort_by(|a, b| a.blocks.cmp(&b.blocks));
    Ok(out)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub agree: usize,
    pub disagree: usize,
    pub exempt: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Discrepancy {
    pub spec: String,
    pub entry: Entry,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecFailure {
    pub spec: String,
    pub error: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
    pub config: SweepConfig,
    pub spec_count: usize,
    pub tallies: BTreeMap<String, Tally>,
    pub discrepancies: Vec<Discrepancy>,
    pub failures: Vec<SpecFailure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reports: Option<Vec<ClassificationReport>>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn disagreement_count(&self) -> usize {
        self.tallies.values().map(|t| t.disagree).sum()
    }

    /// Discrepancy specs, in sweep order.
    pub fn discrepancy_specs(&self) -> Vec<&str> {
        let mut specs: Vec<&str> = self.discrepancies.iter().map(|d| d.spec.as_str()).collect();
        specs.dedup();
        specs
    }

    pub fn summary(&self) -> String {
        let mut s = format!("{} specs\n", self.spec_count);
        for (name, t) in &self.tallies {
            s += &format!(
                "{name:<26} agree {:>4}  disagree {:>3}  exempt {:>3}  skipped {:>3}\n",
                t.agree, t.disagree, t.exempt, t.skipped
            );
        }
        for d in &self.discrepancies {
            s += &format!(
                "discrepancy: {} {} predicted {} observed {}",
                d.spec, d.entry.name, d.entry.predicted, d.entry.observed
            );
            if let Some(n) = &d.entry.note {
                s += &format!(" ({n})");
            }
            s.push('\n');
        }
        for f in &self.failures {
            s += &format!("failed: {} {}\n", f.spec, f.error);
        }
        s
    }
}

fn run_one(spec: &RingSpec, caps: &Caps) -> Result<ClassificationReport> {
    classify_report(&IntersectionGraph::build(spec, caps)?, caps)
}

/// Classifies every enumerated spec. Results are aggregated in spec order
/// whatever the thread count.
pub fn run_sweep(config: &SweepConfig, timestamp: bool) -> Result<SweepReport> {
    let start = Instant::now();
    let specs = enumerate_specs(config)?;
    let caps = config.caps;
    let work = || -> Vec<Result<ClassificationReport>> {
        specs.par_iter().map(|s| run_one(s, &caps)).collect()
    };
    let results = if config.parallel > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.parallel)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(work)
    } else {
        work()
    };

    let mut tallies: BTreeMap<String, Tally> = BTreeMap::new();
    let mut discrepancies = Vec::new();
    let mut failures = Vec::new();
    let mut reports = Vec::new();
    for (spec, result) in specs.iter().zip(results) {
        let report = match result {
            Ok(r) => r,
            Err(e) => {
                failures.push(SpecFailure {
                    spec: spec.to_string(),
                    error: e.to_string(),
                });
                continue;
            }
        };
        for e in &report.entries {
            let t = tallies.entry(e.name.clone()).or_default();
            if e.skipped {
                t.skipped += 1;
            } else if e.exempt {
                t.exempt += 1;
            } else if e.agree {
                t.agree += 1;
            } else {
                t.disagree += 1;
                discrepancies.push(Discrepancy {
                    spec: report.spec.clone(),
                    entry: e.clone(),
                });
            }
        }
        if config.include_reports {
            reports.push(report);
        }
    }

    let generated_at = timestamp.then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    Ok(SweepReport {
        generated_at,
        config: config.clone(),
        spec_count: specs.len(),
        tallies,
        discrepancies,
        failures,
        reports: config.include_reports.then_some(reports),
        elapsed: start.elapsed(),
    })
}
