//! Sequential/parallel execution switch.
//!
//! With the `parallel` feature (on by default) the data-parallel sweeps in
//! this crate run on rayon's global pool. Every helper here returns results
//! in input order, so outputs never depend on the execution mode.

/// How a data-parallel sweep is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    /// Falls back to sequential execution when built without `parallel`.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub(crate) fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            _ => items.into_iter().map(f).collect(),
        }
    }

    /// First `Some` in input order.
    pub(crate) fn find_first<T, R, F>(self, items: &[T], f: F) -> Option<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items
                    .par_iter()
                    .map(f)
                    .find_first(Option::is_some)
                    .flatten()
            }
            _ => items.iter().find_map(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let items: Vec<u32> = (0..1000).collect();
        let seq = Exec::Sequential.map(items.clone(), |x| x * x);
        let par = Exec::Parallel.map(items.clone(), |x| x * x);
        assert_eq!(seq, par);
        let pick = |x: &u32| (x % 97 == 96).then_some(*x);
        assert_eq!(Exec::Sequential.find_first(&items, pick), Some(96));
        assert_eq!(Exec::Parallel.find_first(&items, pick), Some(96));
    }
}
