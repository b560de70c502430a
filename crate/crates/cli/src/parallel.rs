//! Multi-threaded driver for a [`CountPlan`].
//!
//! The outer loop is cut into fixed chunks that workers claim from a shared
//! counter. Each worker keeps a private tally; tallies are summed at the end,
//! so the result does not depend on the thread count or the claim order.

use std::io::Write;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use equicount_core::{CountError, CountPlan, CountRecord, Tally};

/// Iterations between progress lines on stderr.
pub const PROGRESS_INTERVAL: u64 = 10_000_000;

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "EQUICOUNT_THREADS";

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub threads: usize,
    pub progress: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            threads: default_threads(),
            progress: false,
        }
    }
}

/// `EQUICOUNT_THREADS` if set and positive, else the available parallelism.
pub fn default_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub record: CountRecord,
    pub tally: Tally,
    pub elapsed: Duration,
}

fn chunk_size(outer: u64, threads: usize) -> u64 {
    // Enough chunks per worker to even out very uneven seeds.
    (outer / (threads as u64 * 64)).max(1)
}

/// Sums the tallies of the whole outer loop using `threads` workers.
pub fn tally_parallel(plan: &CountPlan, opts: RunOptions) -> Tally {
    let outer = plan.outer_len();
    let threads = opts.threads.max(1);
    let chunk = chunk_size(outer, threads);
    let next = AtomicU64::new(0);
    let seen = AtomicU64::new(0);
    let reported = Mutex::new(0u64);
    let start = Instant::now();

    let worker = || {
        let mut local = Tally::default();
        loop {
            let lo = next.fetch_add(chunk, Ordering::Relaxed);
            if lo >= outer {
                break;
            }
            let t = plan.count_range(lo..(lo + chunk).min(outer));
            local += t;
            if opts.progress {
                let total = seen.fetch_add(t.iterations, Ordering::Relaxed) + t.iterations;
                let mut last = reported.lock().unwrap();
                if total / PROGRESS_INTERVAL > *last / PROGRESS_INTERVAL {
                    *last = total;
                    let done = (lo + chunk).min(outer);
                    let _ = writeln!(
                        std::io::stderr(),
                        "progress: {total} iterations, outer {done}/{outer}, {:.1}s",
                        start.elapsed().as_secs_f64()
                    );
                }
            }
        }
        local
    };

    if threads == 1 {
        return worker();
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads).map(|_| s.spawn(worker)).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .fold(Tally::default(), |a, b| a + b)
    })
}

pub fn run_parallel(plan: &CountPlan, opts: RunOptions) -> Result<RunOutcome, CountError> {
    let start = Instant::now();
    let tally = tally_parallel(plan, opts);
    let record = plan.finish(tally.fixed)?;
    Ok(RunOutcome {
        record,
        tally,
        elapsed: start.elapsed(),
    })
}
