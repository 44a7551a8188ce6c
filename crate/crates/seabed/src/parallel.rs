//! Multi-threaded drivers whose output equals the sequential core functions.

use rayon::prelude::*;
use rayon::ThreadPool;

use seabed_core::pentagrid::{dual_tile, intersections, is_regular, NotRegular, PentagridParams, Regularity};
use seabed_core::substitution::{SubstituteError, SubstitutionRule};
use seabed_core::tiles::ShapeTile;
use seabed_core::{Patch, PlacedTile};

/// A pool of `threads` workers; `None` lets rayon choose.
pub fn pool(threads: Option<usize>) -> ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n);
    }
    b.build().expect("thread pool")
}

/// Same result as `substitute_once`.
pub fn substitute_once(p: &Patch, r: &SubstitutionRule, pool: &ThreadPool) -> Result<Patch, SubstituteError> {
    let parts: Result<Vec<Vec<PlacedTile>>, _> =
        pool.install(|| p.tiles.par_iter().map(|t| r.children(t)).collect());
    let mut tiles: Vec<PlacedTile> = parts?.into_iter().flatten().collect();
    pool.install(|| tiles.par_sort_unstable());
    tiles.dedup();
    Ok(Patch::new(tiles))
}

/// Upper bound on the tile count after `n` steps from `p`.
pub fn predicted_patch_count(p: &Patch, r: &SubstitutionRule, n: u32) -> u128 {
    let m = r.matrix();
    let mut v = p.counts().map(|c| c as u128);
    for _ in 0..n {
        v = m.apply(&v);
    }
    v.iter().fold(0u128, |a, x| a.saturating_add(*x))
}

/// `n` steps from an arbitrary patch, refused up front when the predicted
/// count exceeds `budget`.
pub fn substitute_n(
    p: &Patch,
    r: &SubstitutionRule,
    n: u32,
    budget: u64,
    pool: &ThreadPool,
) -> Result<Patch, SubstituteError> {
    let predicted = predicted_patch_count(p, r, n);
    if predicted > budget as u128 {
        return Err(SubstituteError::Budget { predicted, budget });
    }
    let mut q = p.normalized();
    for _ in 0..n {
        q = substitute_once(&q, r, pool)?;
    }
    Ok(q)
}

/// Same result as `pentagrid::generate`.
pub fn generate(params: &PentagridParams, pool: &ThreadPool) -> Result<Vec<ShapeTile>, NotRegular> {
    if let Regularity::Singular { point, families } = is_regular(params) {
        return Err(NotRegular { point, families });
    }
    let xs = intersections(params);
    let mut out: Vec<ShapeTile> = pool.install(|| xs.par_iter().map(|x| dual_tile(params, x)).collect());
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use seabed_core::builtin;
    use seabed_core::pentagrid::{self, penrose_offsets};
    use seabed_core::substitution::{self as core_sub, DEFAULT_BUDGET};
    use seabed_core::ProtoId;

    #[test]
    fn matches_sequential_substitution() {
        let r = builtin::rule().unwrap();
        let pl = pool(Some(3));
        for id in ProtoId::ALL {
            let seq = core_sub::substitute_n(&r, id, 2, DEFAULT_BUDGET).unwrap();
            let start = Patch::new(vec![PlacedTile::new(id, 0, false, Default::default())]);
            assert_eq!(substitute_n(&start, &r, 2, DEFAULT_BUDGET, &pl).unwrap(), seq);
        }
    }

    #[test]
    fn budget_is_checked_first() {
        let r = builtin::rule().unwrap();
        let start = Patch::new(vec![PlacedTile::new(ProtoId::ThickI, 0, false, Default::default())]);
        let err = substitute_n(&start, &r, 9, 1000, &pool(Some(1))).unwrap_err();
        assert!(matches!(err, SubstituteError::Budget { budget: 1000, .. }));
    }

    #[test]
    fn matches_sequential_pentagrid() {
        let params = penrose_offsets(11, 12.0);
        assert_eq!(generate(&params, &pool(Some(4))).unwrap(), pentagrid::generate(&params).unwrap());
    }
}
