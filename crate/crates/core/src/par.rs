//! Data-parallel helpers with a sequential fallback.
//!
//! Everything funnels through order-preserving map-collects, so results are
//! bitwise identical whether the `parallel` feature (rayon) is enabled or
//! not, and independent of the worker count: reductions always happen in
//! index order on the collected values.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map a slice in parallel (when enabled), preserving order.
pub fn map_slice<T: Sync, U: Send, F: Fn(&T) -> U + Sync + Send>(items: &[T], f: F) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Map an index range in parallel (when enabled), preserving order.
pub fn map_range<U: Send, F: Fn(usize) -> U + Sync + Send>(len: usize, f: F) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

/// Run `f` inside a rayon pool with `threads` workers; with the sequential
/// build (or `threads` = None) it just runs `f`. Output does not depend on
/// the thread count.
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        match threads {
            Some(t) if t > 0 => rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .expect("rayon pool")
                .install(f),
            _ => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        f()
    }
}

/// Fixed-order sequential map; the benchmark baseline.
pub fn map_range_seq<U, F: Fn(usize) -> U>(len: usize, f: F) -> Vec<U> {
    (0..len).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_exactly() {
        let data: Vec<f64> = (0..1000).map(|i| (i as f64).sin()).collect();
        let par = map_slice(&data, |x| x.exp().ln_1p());
        let seq: Vec<f64> = data.iter().map(|x| x.exp().ln_1p()).collect();
        assert_eq!(par, seq);

        let a = map_range(257, |i| (i as f64).sqrt());
        let b = map_range_seq(257, |i| (i as f64).sqrt());
        assert_eq!(a, b);

        let inside = with_threads(Some(1), || map_range(64, |i| i * i));
        assert_eq!(inside, map_range_seq(64, |i| i * i));
    }
}
