use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use lattice_speedup_core::optimizer::{LocalSolution, MinimizeConfig, OptProblem, OptSolution, Warm};
use lattice_speedup_core::Result;

/// Multi-start solve of one `(D, K)` cell with the starts spread over
/// `threads` workers. Local results are re-ordered by start index before
/// selection, so the outcome is the same for every thread count.
pub fn solve_cell(d: usize, k: usize, config: &MinimizeConfig, warm: Warm<'_>, threads: usize) -> Result<OptSolution> {
    let problem = OptProblem::new(d, k)?;
    let starts = problem.starts(config, warm);
    let threads = threads.clamp(1, starts.len().max(1));
    let mut locals: Vec<LocalSolution> = if threads == 1 {
        starts.iter().map(|s| problem.solve_from(s, config)).collect()
    } else {
        let next = AtomicUsize::new(0);
        let done = Mutex::new(Vec::with_capacity(starts.len()));
        thread::scope(|scope| {
            for _ in 0..threads {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(s) = starts.get(i) else { break };
                    let local = problem.solve_from(s, config);
                    done.lock().expect("worker panicked").push(local);
                });
            }
        });
        done.into_inner().expect("worker panicked")
    };
    locals.sort_by_key(|l| l.start);
    problem.select(locals)
}

/// `[K-1][D-1]` grid for `D in 1..=d_max`, `K in 1..=k_max`, warm-chained
/// along both axes.
pub fn solve_grid(d_max: usize, k_max: usize, config: &MinimizeConfig, threads: usize) -> Result<Vec<Vec<OptSolution>>> {
    let mut out: Vec<Vec<OptSolution>> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut row: Vec<OptSolution> = Vec::with_capacity(d_max);
        for d in 1..=d_max {
            let warm = Warm { prev_digit: row.last(), prev_level: out.last().map(|r| &r[d - 1]) };
            row.push(solve_cell(d, k, config, warm, threads)?);
        }
        out.push(row);
    }
    Ok(out)
}
