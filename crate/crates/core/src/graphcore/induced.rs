//! Induced-subgraph search for small patterns.

use super::graph::Graph;
use super::vertex_set::VertexSet;

/// Does `map` (pattern vertex -> host vertex) embed `h` into `g` as an
/// induced subgraph?
pub fn verify_induced_copy(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    if map.len() != h.n() {
        return false;
    }
    let mut seen = VertexSet::empty(g.n());
    for &x in map {
        if x >= g.n() || !seen.insert(x) {
            return false;
        }
    }
    (0..h.n()).all(|u| (u + 1..h.n()).all(|v| h.has_edge(u, v) == g.has_edge(map[u], map[v])))
}

/// Pattern vertices in search order: repeatedly take the unplaced vertex
/// with most pattern neighbours already placed, ties by degree then id.
/// Early adjacency keeps candidate sets small.
fn search_order(h: &Graph) -> Vec<usize> {
    let k = h.n();
    let mut placed = vec![false; k];
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let next = (0..k)
            .filter(|&u| !placed[u])
            .max_by_key(|&u| {
                let back = h.neighbors(u).iter().filter(|&&w| placed[w as usize]).count();
                (back, h.degree(u), std::cmp::Reverse(u))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }
    order
}

/// An induced copy of `h` in `g`, as the map pattern vertex -> host vertex,
/// or `None` if `g` is `h`-free. Deterministic: the first copy in the
/// search order with host candidates tried by increasing id.
pub fn find_induced_copy(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let k = h.n();
    if k == 0 {
        return Some(Vec::new());
    }
    if k > g.n() {
        return None;
    }
    let order = search_order(h);
    let mut image = vec![usize::MAX; k];
    let mut used = VertexSet::empty(g.n());
    if extend(g, h, &order, 0, &mut image, &mut used) {
        debug_assert!(verify_induced_copy(g, h, &image));
        Some(image)
    } else {
        None
    }
}

fn extend(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: &mut VertexSet,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    let mut cand: Option<VertexSet> = None;
    // Intersect with neighbourhoods of placed pattern-neighbours first.
    for &w in &order[..depth] {
        if h.has_edge(u, w) {
            let nb = g.neighbourhood(image[w]);
            match cand.as_mut() {
                Some(c) => c.intersect_with(&nb),
                None => cand = Some(nb),
            }
        }
    }
    let mut cand = cand.unwrap_or_else(|| VertexSet::full(g.n()));
    for &w in &order[..depth] {
        if !h.has_edge(u, w) {
            cand.difference_with(&g.neighbourhood(image[w]));
        }
    }
    cand.difference_with(used);
    for x in cand.iter() {
        image[u] = x;
        used.insert(x);
        if extend(g, h, order, depth + 1, image, used) {
            return true;
        }
        used.remove(x);
    }
    image[u] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::graphcore::Combinations;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Brute force over all ordered |h|-tuples of distinct vertices.
    fn has_copy_brute(g: &Graph, h: &Graph) -> bool {
        fn perms(items: &[usize], k: usize, cur: &mut Vec<usize>, out: &mut dyn FnMut(&[usize]) -> bool) -> bool {
            if cur.len() == k {
                return out(cur);
            }
            for &x in items {
                if !cur.contains(&x) {
                    cur.push(x);
                    if perms(items, k, cur, out) {
                        return true;
                    }
                    cur.pop();
                }
            }
            false
        }
        Combinations::new(g.n(), h.n()).any(|subset| {
            perms(&subset, h.n(), &mut Vec::new(), &mut |m| verify_induced_copy(g, h, m))
        })
    }

    #[test]
    fn spec_style_examples() {
        let c5 = generators::cycle(5);
        assert!(find_induced_copy(&c5, &Graph::complete(3)).is_none());
        let m = find_induced_copy(&c5, &generators::path(3)).unwrap();
        assert!(verify_induced_copy(&c5, &generators::path(3), &m));
        assert!(find_induced_copy(&Graph::complete(4), &Graph::complete(3)).is_some());
        // C4 contains no induced P4 but C5 does.
        assert!(find_induced_copy(&generators::cycle(4), &generators::path(4)).is_none());
        assert!(find_induced_copy(&c5, &generators::path(4)).is_some());
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let patterns = ["K3", "P3", "P4", "C4", "paw"].map(|n| generators::preset(n).unwrap());
        for n in 0..=9 {
            for p in [0.2, 0.5, 0.8] {
                let g = generators::gnp(n, p, &mut rng);
                for h in &patterns {
                    let found = find_induced_copy(&g, h);
                    if let Some(m) = &found {
                        assert!(verify_induced_copy(&g, h, m));
                    }
                    assert_eq!(found.is_some(), has_copy_brute(&g, h), "n={n} p={p}");
                }
            }
        }
    }

    #[test]
    fn verifier_rejects_bad_maps() {
        let g = generators::cycle(5);
        let h = generators::path(3);
        assert!(!verify_induced_copy(&g, &h, &[0, 1, 1]));
        assert!(!verify_induced_copy(&g, &h, &[0, 1, 7]));
        assert!(!verify_induced_copy(&g, &h, &[0, 1]));
        assert!(!verify_induced_copy(&g, &h, &[0, 1, 3]));
        assert!(verify_induced_copy(&g, &h, &[0, 1, 2]));
    }
}
