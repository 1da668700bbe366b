//! Iteration shims so kernels are written once and run either on rayon or
//! on plain iterators, depending on the `parallel` feature.

#[cfg(feature = "parallel")]
pub(crate) use rayon::prelude::{IntoParallelIterator, ParallelIterator, ParallelSliceMut};

#[cfg(not(feature = "parallel"))]
pub(crate) use self::fallback::*;

#[cfg(not(feature = "parallel"))]
mod fallback {
    pub(crate) use std::iter::Iterator as ParallelIterator;

    pub(crate) trait IntoParallelIterator {
        type Item;
        type Iter: Iterator<Item = Self::Item>;
        fn into_par_iter(self) -> Self::Iter;
    }

    impl<I: IntoIterator> IntoParallelIterator for I {
        type Item = I::Item;
        type Iter = I::IntoIter;
        fn into_par_iter(self) -> Self::Iter {
            self.into_iter()
        }
    }

    pub(crate) trait ParallelIteratorExt: Iterator + Sized {
        fn flat_map_iter<U, F>(self, f: F) -> std::iter::FlatMap<Self, U, F>
        where
            U: IntoIterator,
            F: FnMut(Self::Item) -> U,
        {
            self.flat_map(f)
        }
    }

    impl<I: Iterator> ParallelIteratorExt for I {}

    pub(crate) trait ParallelSliceMut<T> {
        fn par_sort_unstable_by<F>(&mut self, compare: F)
        where
            F: Fn(&T, &T) -> std::cmp::Ordering;
    }

    impl<T> ParallelSliceMut<T> for [T] {
        fn par_sort_unstable_by<F>(&mut self, compare: F)
        where
            F: Fn(&T, &T) -> std::cmp::Ordering,
        {
            self.sort_unstable_by(compare)
        }
    }
}

/// Name of the active execution backend, for reports and benches.
pub fn backend() -> &'static str {
    if cfg!(feature = "parallel") {
        "rayon"
    } else {
        "sequential"
    }
}
