//! Transitivity of finite spaces: does the group of distance-preserving,
//! measure-preserving permutations act transitively on the points?
//!
//! Backtracking search with distance-profile pruning. No special-casing of
//! known families: correctness on adversarial inputs matters more than speed
//! at the desk scales this is meant for (up to roughly 60 points).

use crate::rational::Q;
use crate::space::Space;

/// Sorted multiset of `(distance index, other point's weight)` seen from one
/// point, plus the point's own weight. Equal profiles are necessary for one
/// point to be mapped onto another.
fn profile(space: &Space, i: usize) -> (Q, Vec<(u32, Q)>) {
    let mut seen: Vec<(u32, Q)> = (0..space.len())
        .filter(|&j| j != i)
        .map(|j| (space.dist_index(i, j), space.weight(j).clone()))
        .collect();
    seen.sort();
    (space.weight(i).clone(), seen)
}

/// True iff for every ordered pair `(x, y)` some isometry fixing the measure
/// maps `x` to `y`. Since such isometries form a group, it suffices to map a
/// fixed base point onto every other point.
pub fn is_transitive(space: &Space) -> bool {
    let n = space.len();
    if n <= 1 {
        return true;
    }
    let profiles: Vec<_> = (0..n).map(|i| profile(space, i)).collect();
    let base = 0usize;
    if profiles.iter().any(|p| p != &profiles[base]) {
        return false;
    }
    for target in 1..n {
        if !automorphism_exists(space, &profiles, base, target) {
            return false;
        }
    }
    true
}

fn automorphism_exists(
    space: &Space,
    profiles: &[(Q, Vec<(u32, Q)>)],
    from: usize,
    to: usize,
) -> bool {
    let n = space.len();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    image[from] = to;
    used[to] = true;
    // assign remaining points in a fixed order, skipping `from`
    let order: Vec<usize> = (0..n).filter(|&p| p != from).collect();
    extend(space, profiles, &order, 0, &mut image, &mut used)
}

fn extend(
    space: &Space,
    profiles: &[(Q, Vec<(u32, Q)>)],
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let p = order[depth];
    for q in 0..space.len() {
        if used[q] || profiles[p] != profiles[q] || space.weight(p) != space.weight(q) {
            continue;
        }
        if !compatible(space, image, p, q) {
            continue;
        }
        image[p] = q;
        used[q] = true;
        if extend(space, profiles, order, depth + 1, image, used) {
            return true;
        }
        image[p] = usize::MAX;
        used[q] = false;
    }
    false
}

#[allow(clippy::needless_range_loop)]
fn compatible(space: &Space, image: &[usize], p: usize, q: usize) -> bool {
    for a in 0..space.len() {
        let b = image[a];
        if b != usize::MAX && space.dist_index(p, a) != space.dist_index(q, b) {
            return false;
        }
    }
    true
}
