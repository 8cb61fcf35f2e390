//! Exhaustive search split across threads by the value of `π(1)`.

use blockqap::oracle::{Optimum, Oracle};
use blockqap::{QapInstance, Result};
use rayon::prelude::*;

/// Same result as [`blockqap::oracle::brute_force_optimum`], including the
/// tie-break, whatever the thread count.
pub fn parallel_optimum(inst: &QapInstance, max_n: usize) -> Result<Optimum> {
    let oracle = Oracle::new(inst, max_n)?;
    Ok((0..oracle.n())
        .into_par_iter()
        .map(|first| oracle.search_with_first(first))
        .reduce_with(Optimum::merge)
        .expect("n ≥ 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use blockqap::classes::Expand;
    use blockqap::gen::{gen_anti_monge, gen_multicut};
    use blockqap::oracle::{brute_force_optimum, DEFAULT_MAX_N};

    #[test]
    fn agrees_with_sequential_search() {
        for seed in 0..5 {
            let a = gen_anti_monge(7, 3, seed).unwrap();
            let b = gen_multicut(7, 3, seed).unwrap().expand().unwrap();
            let inst = QapInstance::new(a, b).unwrap();
            assert_eq!(
                parallel_optimum(&inst, DEFAULT_MAX_N).unwrap(),
                brute_force_optimum(&inst, DEFAULT_MAX_N).unwrap()
            );
        }
    }
}
