//! Zero counts and type tables over a worker pool.

use std::ops::Range;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use slopecount_core::graphs::{wheel_count, Wheel};
use slopecount_core::pointcount::{
    check_budget, count_range, count_range_graph_shortcut, merge_tables, partition_ranges,
    tabulate_range, CountMethod, P4Scanner, TypeTable, DEFAULT_BUDGET,
};
use slopecount_core::{EdgeWeighting, IdealSpec, ZeroTester};

use crate::Error;

/// Sample size for checking the graph shortcut against the polynomials.
pub const CROSS_CHECK_SAMPLES: usize = 100_000;

#[derive(Clone, Debug)]
pub struct CountOptions {
    pub threads: usize,
    /// Largest point count enumerated without complaint.
    pub budget: u128,
    /// `None` picks the graph shortcut for `J` over `F_2` from `n = 7` on.
    pub method: Option<CountMethod>,
    pub cross_check_samples: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            threads: crate::default_threads(),
            budget: DEFAULT_BUDGET,
            method: None,
            cross_check_samples: CROSS_CHECK_SAMPLES,
        }
    }
}

impl CountOptions {
    pub fn with_threads(threads: usize) -> Self {
        CountOptions {
            threads,
            ..Self::default()
        }
    }
}

/// One row of a type table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeRow {
    #[serde(rename = "type")]
    pub partition: String,
    pub zeros: u64,
    pub non_zeros: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub n: usize,
    pub q: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<IdealSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wheel: Option<String>,
    #[serde(rename = "zeros")]
    pub zero_count: u64,
    #[serde(rename = "total")]
    pub total_points: u64,
    pub elapsed_ms: u64,
    pub method: CountMethod,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_type: Option<Vec<TypeRow>>,
}

fn budget_points(n: usize, q: u8, budget: u128, wheels: u128) -> Result<u64, Error> {
    let points = check_budget(n, q as u32, budget).map_err(|e| match e {
        slopecount_core::Error::Budget { points, limit } => Error::Budget {
            points,
            limit,
            wheel_evaluations: points.saturating_mul(wheels),
        },
        other => Error::Core(other),
    })?;
    u64::try_from(points).map_err(|_| Error::Core(slopecount_core::Error::Overflow))
}

fn pool(threads: usize) -> Result<rayon::ThreadPool, Error> {
    Ok(rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()?)
}

/// Runs `f` on every range of `0..total` and returns the results in range
/// order, independent of scheduling.
fn map_ranges<T, F>(threads: usize, total: u64, f: F) -> Result<Vec<T>, Error>
where
    T: Send,
    F: Fn(Range<u128>) -> T + Send + Sync,
{
    let ranges = partition_ranges(total as u128);
    Ok(pool(threads)?.install(|| ranges.into_par_iter().map(f).collect()))
}

/// Number of points of `F_q^{C(n,2)}` where every generator of the ideal
/// vanishes.
pub fn count_zeros(
    n: usize,
    q: u8,
    ideal: IdealSpec,
    opts: &CountOptions,
) -> Result<CountReport, Error> {
    let start = Instant::now();
    let wheels = wheel_count(n, ideal) as u128;
    let total = budget_points(n, q, opts.budget, wheels.max(1))?;
    let tester = ZeroTester::new(n, q as u32, ideal)?;
    let method = opts
        .method
        .unwrap_or(if q == 2 && ideal == IdealSpec::J && n >= 7 {
            CountMethod::GraphShortcut
        } else {
            CountMethod::Polynomial
        });
    let zeros: u64 = match method {
        CountMethod::Polynomial => map_ranges(opts.threads, total, |r| count_range(&tester, r))?
            .into_iter()
            .sum(),
        CountMethod::GraphShortcut => {
            if q != 2 || ideal != IdealSpec::J {
                return Err(Error::ShortcutUnsupported { q, ideal });
            }
            let scanner = P4Scanner::new(n);
            cross_check(n, total, &tester, &scanner, opts.cross_check_samples)?;
            map_ranges(opts.threads, total, |r| {
                count_range_graph_shortcut(&scanner, r)
            })?
            .into_iter()
            .sum()
        }
    };
    Ok(CountReport {
        n,
        q,
        ideal: Some(ideal),
        wheel: None,
        zero_count: zeros,
        total_points: total,
        elapsed_ms: start.elapsed().as_millis() as u64,
        method,
        per_type: None,
    })
}

/// Compares the shortcut with polynomial evaluation on random points.
fn cross_check(
    n: usize,
    total: u64,
    tester: &ZeroTester,
    scanner: &P4Scanner,
    samples: usize,
) -> Result<(), Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x51_0e_c0_de ^ n as u64);
    for _ in 0..samples {
        let code = rng.gen_range(0..total) as u128;
        let a = EdgeWeighting::from_code(n, 2, code)?;
        if tester.is_zero_values(a.values()) == scanner.has_p4(code) {
            return Err(Error::CrossCheck {
                point: a.to_string(),
            });
        }
    }
    Ok(())
}

/// Zeros and non-zeros of the single polynomial `tau_W`, by point type.
pub fn tabulate_by_type(
    n: usize,
    q: u8,
    wheel: &Wheel,
    opts: &CountOptions,
) -> Result<CountReport, Error> {
    let start = Instant::now();
    let total = budget_points(n, q, opts.budget, 1)?;
    let tables = map_ranges(opts.threads, total, |r| tabulate_range(n, q, wheel, r))?;
    let mut table = TypeTable::new();
    for t in tables {
        merge_tables(&mut table, t?);
    }
    let rows: Vec<TypeRow> = table
        .into_iter()
        .map(|(t, (zeros, non_zeros))| TypeRow {
            partition: t.to_string(),
            zeros,
            non_zeros,
        })
        .collect();
    Ok(CountReport {
        n,
        q,
        ideal: None,
        wheel: Some(wheel.to_string()),
        zero_count: rows.iter().map(|r| r.zeros).sum(),
        total_points: total,
        elapsed_ms: start.elapsed().as_millis() as u64,
        method: CountMethod::Polynomial,
        per_type: Some(rows),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let opts = CountOptions::with_threads(2);
        let got: Vec<u64> = (1..=5)
            .map(|n| count_zeros(n, 2, IdealSpec::J, &opts).unwrap().zero_count)
            .collect();
        assert_eq!(got, [1, 2, 8, 52, 472]);
    }

    #[test]
    fn forced_shortcut_matches_polynomial() {
        for n in 4..=6 {
            let poly = count_zeros(n, 2, IdealSpec::J, &CountOptions::with_threads(2)).unwrap();
            let opts = CountOptions {
                method: Some(CountMethod::GraphShortcut),
                cross_check_samples: 1000,
                ..CountOptions::with_threads(2)
            };
            let fast = count_zeros(n, 2, IdealSpec::J, &opts).unwrap();
            assert_eq!(poly.zero_count, fast.zero_count);
            assert_eq!(fast.method, CountMethod::GraphShortcut);
        }
    }

    #[test]
    fn shortcut_needs_binary_j() {
        let opts = CountOptions {
            method: Some(CountMethod::GraphShortcut),
            ..CountOptions::with_threads(1)
        };
        for (q, ideal) in [(3, IdealSpec::J), (2, IdealSpec::I)] {
            assert!(matches!(
                count_zeros(4, q, ideal, &opts),
                Err(Error::ShortcutUnsupported { .. })
            ));
        }
    }

    #[test]
    fn budget_refusal_carries_estimate() {
        let opts = CountOptions {
            budget: 1000,
            ..CountOptions::with_threads(1)
        };
        match count_zeros(5, 2, IdealSpec::I, &opts) {
            Err(Error::Budget {
                points,
                limit,
                wheel_evaluations,
            }) => {
                assert_eq!((points, limit), (1024, 1000));
                assert_eq!(
                    wheel_evaluations,
                    1024 * wheel_count(5, IdealSpec::I) as u128
                );
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn table_totals() {
        let w = Wheel::new(1, &[2, 3, 4]).unwrap();
        let r = tabulate_by_type(4, 3, &w, &CountOptions::with_threads(3)).unwrap();
        let rows = r.per_type.unwrap();
        assert_eq!(rows.iter().map(|r| r.zeros + r.non_zeros).sum::<u64>(), 729);
        assert_eq!(rows[0].partition, "(6)");
        assert_eq!((rows[0].zeros, rows[0].non_zeros), (3, 0));
    }
}
