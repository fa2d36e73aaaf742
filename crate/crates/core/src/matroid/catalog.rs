//! Built-in matroid families used by tests and the command line.

use std::collections::BTreeSet;

use super::{ElementSet, Matroid, MatroidError, MAX_ELEMENTS};

/// `U_{r,n}`: every `r`-subset is a basis.
pub fn uniform(r: usize, n: usize) -> Matroid {
    assert!(r <= n && n <= MAX_ELEMENTS);
    let bases = ElementSet::full(n).subsets().filter(|s| s.len() == r).collect();
    Matroid::from_trusted(n, bases)
}

/// The free matroid on `n` elements (no circuits).
pub fn free(n: usize) -> Matroid {
    uniform(n, n)
}

/// Cycle matroid of a multigraph; edge `i` is element `i`. Self-loops become loops.
pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Matroid, MatroidError> {
    let n = edges.len();
    if n > MAX_ELEMENTS {
        return Err(MatroidError::TooLarge(n));
    }
    if let Some(&(a, b)) = edges.iter().find(|(a, b)| *a >= vertices || *b >= vertices) {
        return Err(MatroidError::ElementOutOfRange { element: a.max(b), n: vertices });
    }
    let forest = |s: ElementSet| -> bool {
        let mut parent: Vec<usize> = (0..vertices).collect();
        let find = |p: &mut Vec<usize>, mut x: usize| {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        };
        for e in s.iter() {
            let (a, b) = edges[e];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    };
    let forests: Vec<ElementSet> = ElementSet::full(n).subsets().filter(|&s| forest(s)).collect();
    let r = forests.iter().map(|s| s.len()).max().unwrap_or(0);
    Ok(Matroid::from_trusted(n, forests.into_iter().filter(|s| s.len() == r).collect()))
}

/// Lines of the Fano plane on `{0..6}`: translates of `{0, 1, 3}` mod 7.
fn fano_lines() -> Vec<ElementSet> {
    (0..7).map(|i| [i, (i + 1) % 7, (i + 3) % 7].into_iter().collect()).collect()
}

/// The Fano matroid `F_7`.
pub fn fano() -> Matroid {
    let lines = fano_lines();
    let bases = ElementSet::full(7).subsets().filter(|s| s.len() == 3 && !lines.contains(s)).collect();
    Matroid::from_trusted(7, bases)
}

/// The non-Fano matroid `F_7^-`: the line `{2, 3, 5}` relaxed to a basis.
pub fn non_fano() -> Matroid {
    let relaxed: ElementSet = [2, 3, 5].into_iter().collect();
    let lines: Vec<ElementSet> = fano_lines().into_iter().filter(|l| *l != relaxed).collect();
    let bases = ElementSet::full(7).subsets().filter(|s| s.len() == 3 && !lines.contains(s)).collect();
    Matroid::from_trusted(7, bases)
}

/// Connected simple graphs on exactly `vertices` vertices, one per isomorphism
/// class, as edge lists.
pub fn connected_graphs(vertices: usize) -> Vec<Vec<(usize, usize)>> {
    assert!(vertices <= 6);
    let pairs: Vec<(usize, usize)> = (0..vertices).flat_map(|a| (a + 1..vertices).map(move |b| (a, b))).collect();
    let perms = permutations(vertices);
    let mut seen: BTreeSet<u32> = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &e)| e).collect();
        if !is_connected(vertices, &edges) {
            continue;
        }
        let canonical = perms
            .iter()
            .map(|p| {
                edges.iter().fold(0u32, |acc, &(a, b)| {
                    let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
                    acc | (1 << pairs.iter().position(|&q| q == (x, y)).unwrap())
                })
            })
            .min()
            .unwrap();
        if seen.insert(canonical) {
            out.push(edges);
        }
    }
    out
}

/// Named matroids with all of their single-element deletions and
/// contractions: `U_{r,n}` for `1 ≤ r ≤ n ≤ 7`, cycle matroids of connected
/// simple graphs on up to 5 vertices, `F_7` and `F_7^-`. Minors on zero
/// elements are dropped and repeated basis families kept once.
pub fn small_matroid_suite() -> Vec<(String, Matroid)> {
    let mut named: Vec<(String, Matroid)> = Vec::new();
    for n in 1..=7 {
        for r in 1..=n {
            named.push((format!("U({r},{n})"), uniform(r, n)));
        }
    }
    for v in 2..=5 {
        for (i, edges) in connected_graphs(v).into_iter().enumerate() {
            named.push((format!("graph{v}.{i}"), graphic(v, &edges).expect("simple graph")));
        }
    }
    named.push(("F7".into(), fano()));
    named.push(("F7-".into(), non_fano()));
    let mut seen: BTreeSet<(usize, Vec<ElementSet>)> = BTreeSet::new();
    let mut out = Vec::new();
    let mut keep = |name: String, m: Matroid, out: &mut Vec<(String, Matroid)>| {
        if m.n() > 0 && seen.insert((m.n(), m.bases().to_vec())) {
            out.push((name, m));
        }
    };
    for (name, m) in named {
        keep(name.clone(), m.clone(), &mut out);
        for e in 0..m.n() {
            keep(format!("{name}\\{e}"), m.delete(e).expect("element in range").matroid, &mut out);
            keep(format!("{name}/{e}"), m.contract(e).expect("element in range").matroid, &mut out);
        }
    }
    out
}

fn is_connected(vertices: usize, edges: &[(usize, usize)]) -> bool {
    if vertices == 0 {
        return true;
    }
    let mut reached = vec![false; vertices];
    reached[0] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for &(a, b) in edges {
            if reached[a] != reached[b] {
                reached[a] = true;
                reached[b] = true;
                changed = true;
            }
        }
    }
    reached.iter().all(|&r| r)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_graph_counts() {
        // OEIS A001349
        let counts: Vec<usize> = (1..=5).map(|v| connected_graphs(v).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
    }

    #[test]
    fn fano_family() {
        let f = fano();
        assert_eq!((f.rank(), f.bases().len()), (3, 28));
        assert_eq!(non_fano().bases().len(), 29);
        assert!(Matroid::from_bases(7, &non_fano().to_json().bases).is_ok());
        assert_eq!(f.beta_invariant(), 3);
    }

    #[test]
    fn graphic_with_self_loop() {
        let m = graphic(2, &[(0, 1), (1, 1)]).unwrap();
        assert_eq!(m.loops(), vec![1]);
    }
}
