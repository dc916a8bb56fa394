//! Exhaustive scans over basis-index tuples.
//!
//! Axioms are multilinear, so checking them on all basis tuples decides them
//! on the whole space. Scans report the lexicographically first failing
//! tuple. All inputs are immutable, which lets a scan be partitioned across
//! worker threads by index range; partial results merge by taking the
//! smallest linear index.

use std::sync::atomic::{AtomicUsize, Ordering};

static WORKERS: AtomicUsize = AtomicUsize::new(1);

/// Sets the number of worker threads scans may use (at least 1).
pub fn set_worker_count(n: usize) {
    WORKERS.store(n.max(1), Ordering::Relaxed);
}

pub fn worker_count() -> usize {
    WORKERS.load(Ordering::Relaxed)
}

fn decode(mut linear: usize, dims: &[usize], out: &mut [usize]) {
    for i in (0..dims.len()).rev() {
        out[i] = linear % dims[i];
        linear /= dims[i];
    }
}

/// Runs `f` on every index tuple of the given shape and returns the result
/// at the lexicographically first tuple where `f` yields `Some`.
pub fn first_failure<T, F>(dims: &[usize], f: F) -> Option<T>
where
    T: Send,
    F: Fn(&[usize]) -> Option<T> + Sync,
{
    let total: usize = dims.iter().product();
    if total == 0 {
        return None;
    }
    let workers = worker_count().min(total);
    if workers == 1 {
        let mut tuple = vec![0usize; dims.len()];
        for linear in 0..total {
            decode(linear, dims, &mut tuple);
            if let Some(t) = f(&tuple) {
                return Some(t);
            }
        }
        return None;
    }

    // Best linear index found so far, shared so workers can stop early.
    let best = AtomicUsize::new(usize::MAX);
    let chunk = total.div_ceil(workers);
    let mut results: Vec<Option<(usize, T)>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..workers {
            let lo = w * chunk;
            let hi = ((w + 1) * chunk).min(total);
            let fref = &f;
            let bref = &best;
            handles.push(scope.spawn(move || {
                let mut tuple = vec![0usize; dims.len()];
                for linear in lo..hi {
                    if bref.load(Ordering::Relaxed) < linear {
                        return None;
                    }
                    decode(linear, dims, &mut tuple);
                    if let Some(t) = fref(&tuple) {
                        bref.fetch_min(linear, Ordering::Relaxed);
                        return Some((linear, t));
                    }
                }
                None
            }));
        }
        for h in handles {
            results.push(h.join().expect("scan worker panicked"));
        }
    });
    results
        .into_iter()
        .flatten()
        .min_by_key(|(linear, _)| *linear)
        .map(|(_, t)| t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_lexicographically_first() {
        let hit = first_failure(&[3, 3, 3], |t| {
            if t.iter().sum::<usize>() >= 4 {
                Some(t.to_vec())
            } else {
                None
            }
        });
        assert_eq!(hit, Some(vec![0, 2, 2]));
    }

    #[test]
    fn parallel_matches_serial() {
        let serial = first_failure(&[5, 5, 5], |t| (t[0] * 2 + t[1] == 7).then(|| t.to_vec()));
        set_worker_count(3);
        let parallel = first_failure(&[5, 5, 5], |t| (t[0] * 2 + t[1] == 7).then(|| t.to_vec()));
        set_worker_count(1);
        assert_eq!(serial, parallel);
        assert_eq!(serial, Some(vec![2, 3, 0]));
    }

    #[test]
    fn empty_shape_yields_nothing() {
        assert_eq!(first_failure(&[0, 4], |_| Some(())), None);
    }
}
