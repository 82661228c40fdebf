use std::collections::BTreeSet;

use torusknot::diagram::{projection_key, CombinatorialMap};
use torusknot::enumerate::{enum_shadows, prime_projections, shadows_of_maps};

/// Every fixed-point-free involution on `m` points.
fn involutions(m: usize) -> Vec<Vec<usize>> {
    fn go(pair: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(first) = pair.iter().position(|&p| p == usize::MAX) else {
            out.push(pair.clone());
            return;
        };
        for j in first + 1..pair.len() {
            if pair[j] == usize::MAX {
                pair[first] = j;
                pair[j] = first;
                go(pair, out);
                pair[first] = usize::MAX;
                pair[j] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; m], &mut out);
    out
}

fn keys(shadows: impl IntoIterator<Item = torusknot::TorusProjection>) -> BTreeSet<String> {
    shadows.into_iter().map(|p| projection_key(&p, true)).collect()
}

#[test]
fn strand_generation_matches_brute_force() {
    for n in 1..=3 {
        let maps = involutions(4 * n).into_iter().filter_map(|p| CombinatorialMap::new(p).ok());
        let brute = keys(shadows_of_maps(maps));
        let fast = keys(enum_shadows(n));
        assert_eq!(brute, fast, "n = {n}");
    }
}

#[test]
fn involution_counts() {
    assert_eq!(involutions(4).len(), 3);
    assert_eq!(involutions(8).len(), 105);
}

#[test]
fn small_prime_projection_counts() {
    let per_n = |n: usize| prime_projections(3).iter().filter(|p| p.projection.crossings() == n).count();
    assert_eq!([per_n(0), per_n(1), per_n(2), per_n(3)], [1, 1, 3, 7]);
}
