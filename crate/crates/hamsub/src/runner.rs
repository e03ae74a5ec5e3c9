//! Deterministic worker pool: contiguous chunks, results stitched back in
//! input order, so output is byte-identical for any thread count.

/// Maps `worker` over `items` using up to `threads` scoped threads,
/// preserving order.
pub fn run_sharded<T, R, F>(items: &[T], threads: usize, worker: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let threads = threads.max(1).min(items.len().max(1));
    if threads == 1 {
        return items.iter().map(&worker).collect();
    }
    let chunk = items.len().div_ceil(threads);
    let mut out: Vec<Vec<R>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for piece in items.chunks(chunk) {
            let worker = &worker;
            handles.push(scope.spawn(move || piece.iter().map(worker).collect::<Vec<R>>()));
        }
        for h in handles {
            out.push(h.join().expect("worker panicked"));
        }
    });
    out.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved_across_thread_counts() {
        let items: Vec<u64> = (0..1000).collect();
        let one = run_sharded(&items, 1, |x| x * x);
        for t in [2, 3, 7, 16] {
            assert_eq!(run_sharded(&items, t, |x| x * x), one);
        }
    }
}
