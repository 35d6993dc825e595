//! Parallel drivers. Work is split across bidegree blocks (or tilde ground
//! sets) and merged in a fixed order, so results do not depend on the
//! number of threads.

use rayon::prelude::*;

use real_hurwitz_core::cutjoin::OperatorKind;
use real_hurwitz_core::evolution::{assemble_disconnected, evolve_block_with};
use real_hurwitz_core::nonsep::{tilde_hurwitz_upto, TildeGraph, TildePoly, TildeType};
use real_hurwitz_core::series::USeries;
use real_hurwitz_core::{Bidegree, RamificationType};

use crate::CliError;

/// Runs `f` on a dedicated pool with `threads` workers.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} threads: {e}")))?;
    Ok(pool.install(f))
}

pub fn disconnected(kind: OperatorKind, max_degree: u32, max_m: usize) -> Result<USeries<RamificationType>, CliError> {
    let blocks = Bidegree::up_to_total(max_degree)
        .into_par_iter()
        .map(|b| evolve_block_with(kind, b, max_m))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(assemble_disconnected(blocks, max_degree, max_m))
}

pub fn series(max_degree: u32, max_m: usize, connected: bool) -> Result<USeries<RamificationType>, CliError> {
    let h = disconnected(OperatorKind::WPlus, max_degree, max_m)?;
    if connected {
        Ok(h.log(max_m, max_degree)?)
    } else {
        Ok(h)
    }
}

pub fn tilde_series(max_n: u32, max_m: usize, connected: bool) -> Result<USeries<TildeType>, CliError> {
    let per_n: Vec<_> = (0..=max_n as usize)
        .into_par_iter()
        .map(|n| tilde_hurwitz_upto(&TildeGraph::new(n), max_m))
        .collect();
    let mut coeffs = vec![TildePoly::zero(); max_m + 1];
    for counts in per_n {
        for (m, c) in counts.into_iter().enumerate() {
            for (mu, v) in c {
                coeffs[m].add_term(mu, v);
            }
        }
    }
    let h = USeries::new(coeffs, false, max_n);
    if connected {
        Ok(h.log(max_m, max_n)?)
    } else {
        Ok(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use real_hurwitz_core::evolution::{connected_series, disconnected_series};
    use real_hurwitz_core::nonsep::tilde_connected_series;

    #[test]
    fn parallel_matches_sequential() {
        let par = with_threads(4, || disconnected(OperatorKind::WPlus, 5, 5)).unwrap().unwrap();
        assert_eq!(par, disconnected_series(5, 5).unwrap());
        let par = with_threads(3, || series(4, 4, true)).unwrap().unwrap();
        assert_eq!(par, connected_series(4, 4).unwrap());
        let par = with_threads(2, || tilde_series(4, 4, true)).unwrap().unwrap();
        assert_eq!(par, tilde_connected_series(4, 4).unwrap());
    }
}
