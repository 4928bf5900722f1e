//! Independent oracles shared by the integration tests. None of these go
//! through the code paths they are used to check: they work on `Perm` values
//! and plain collections rather than the group tables and indexed spaces.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::path::PathBuf;

use prep::{FiniteGroup, InducedSelfMap, Perm, SubstitutionRule};

pub fn rules_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("rules")
}

pub fn rule_file(name: &str) -> PathBuf {
    rules_dir().join(name)
}

pub fn tm() -> SubstitutionRule {
    SubstitutionRule::from_names(&["a", "b"], &[&["a", "b"], &["b", "a"]]).unwrap()
}

pub fn pd() -> SubstitutionRule {
    SubstitutionRule::from_names(&["a", "b"], &[&["b", "b"], &["a", "b"]]).unwrap()
}

pub fn doubling() -> SubstitutionRule {
    SubstitutionRule::from_names(&["a"], &[&["a", "a"]]).unwrap()
}

pub fn fibonacci() -> SubstitutionRule {
    SubstitutionRule::from_names(&["a", "b"], &[&["a", "b"], &["a"]]).unwrap()
}

pub fn split() -> SubstitutionRule {
    SubstitutionRule::from_names(&["a", "b"], &[&["a", "a"], &["b", "b"]]).unwrap()
}

/// Applies the map `|X|` times to the whole domain and collects the image.
pub fn naive_eventual_image(map: &InducedSelfMap) -> Vec<usize> {
    let n = map.len();
    let mut pts: Vec<usize> = (0..n).collect();
    for _ in 0..n {
        for p in pts.iter_mut() {
            *p = map.apply(*p);
        }
    }
    let set: BTreeSet<usize> = pts.into_iter().collect();
    set.into_iter().collect()
}

/// Breadth-first closure of `gens` under composition, as a set of perms.
pub fn closure_oracle(degree: usize, gens: &[Perm]) -> HashSet<Perm> {
    let mut seen = HashSet::from([Perm::identity(degree)]);
    let mut queue = VecDeque::from([Perm::identity(degree)]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            for y in [x.then(g), g.then(&x)] {
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    seen
}

fn conj_perm(g: &Perm, h: &Perm) -> Perm {
    h.inverse().then(g).then(h)
}

/// Orbits of `G^k` under simultaneous conjugation, computed on perms.
/// Each orbit is returned as its set of tuples of perm images; the list is
/// sorted so it can be compared with the library's canonical order.
pub fn orbit_partition_oracle(group: &FiniteGroup, k: usize) -> Vec<BTreeSet<Vec<Vec<usize>>>> {
    let elements: Vec<Perm> = group.elements().to_vec();
    let mut tuples: Vec<Vec<Perm>> = vec![Vec::new()];
    for _ in 0..k {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                elements.iter().map(move |g| {
                    let mut t = t.clone();
                    t.push(g.clone());
                    t
                })
            })
            .collect();
    }
    let key = |t: &[Perm]| -> Vec<Vec<usize>> { t.iter().map(|p| p.images().to_vec()).collect() };
    let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
    let mut orbits = Vec::new();
    for t in &tuples {
        if seen.contains(&key(t)) {
            continue;
        }
        let orbit: BTreeSet<Vec<Vec<usize>>> = elements
            .iter()
            .map(|h| key(&t.iter().map(|g| conj_perm(g, h)).collect::<Vec<_>>()))
            .collect();
        seen.extend(orbit.iter().cloned());
        orbits.push(orbit);
    }
    orbits.sort_by(|a, b| a.iter().next().cmp(&b.iter().next()));
    orbits
}

/// Graph data for the gauge oracle: vertex count and (source, target) per edge.
pub struct OracleGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Approximant graph built directly from length-2 factors of the iterated
/// substitution, without the library's union-find or factor closure.
pub fn oracle_graph(rule: &SubstitutionRule) -> OracleGraph {
    let d = rule.size();
    let mut pairs = BTreeSet::new();
    for x in 0..d {
        let mut w = vec![x];
        for _ in 0..12 {
            if w.len() > 4096 {
                break;
            }
            w = rule.apply(&w);
            for p in w.windows(2) {
                pairs.insert((p[0], p[1]));
            }
        }
    }
    // ends: 2x = left of x, 2x + 1 = right of x; merge by repeated relabeling
    let mut class: Vec<usize> = (0..2 * d).collect();
    loop {
        let mut changed = false;
        for &(x, y) in &pairs {
            let (a, b) = (class[2 * x + 1], class[2 * y]);
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                for c in class.iter_mut() {
                    if *c == hi {
                        *c = lo;
                    }
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut names = BTreeMap::new();
    for &c in &class {
        let next = names.len();
        names.entry(c).or_insert(next);
    }
    OracleGraph {
        vertices: names.len(),
        edges: (0..d)
            .map(|x| (names[&class[2 * x]], names[&class[2 * x + 1]]))
            .collect(),
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Sizes of the direct limits computed on edge labelings `G^E` modulo vertex
/// gauge transformations `ℓ(e) ↦ g(s(e))⁻¹ ℓ(e) g(t(e))`. Flat bundles on a
/// connected graph up to gauge are `Hom(π₁, G)/G`; fixing the gauge at the
/// basepoint gives `Hom(π₁, G)`. The substitution acts by pulling labelings
/// back along edge paths, so no spanning tree or free presentation is used.
///
/// Returns `(variety size, limit size)`. With `based = Some((v, path))` the
/// gauge is fixed at vertex `v`; when the graph map moves `v`, `path` (edge,
/// forward) steps from `v` to its image transport the based holonomy back, so
/// the class of `ℓ` maps to loops `γ·f(c)·γ⁻¹`.
pub fn gauge_oracle(
    rule: &SubstitutionRule,
    group: &FiniteGroup,
    based: Option<(usize, &[(usize, bool)])>,
) -> (usize, usize) {
    let graph = oracle_graph(rule);
    let n = group.order();
    let m = graph.edges.len();
    let total = n.pow(m as u32);
    let elements = group.elements();
    let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mul = |a: usize, b: usize| index[&elements[a].then(&elements[b])];
    let inv = |a: usize| index[&elements[a].inverse()];
    let decode = |mut i: usize| {
        let mut l = vec![0; m];
        for slot in l.iter_mut().rev() {
            *slot = i % n;
            i /= n;
        }
        l
    };
    let encode = |l: &[usize]| l.iter().fold(0, |acc, &g| acc * n + g);

    let mut dsu = Dsu((0..total).collect());
    let gens: Vec<usize> = group.generators().to_vec();
    for i in 0..total {
        let l = decode(i);
        for v in 0..graph.vertices {
            if based.is_some_and(|(base, _)| base == v) {
                continue;
            }
            for &s in &gens {
                let t: Vec<usize> = graph
                    .edges
                    .iter()
                    .zip(&l)
                    .map(|(&(src, tgt), &g)| {
                        let left = if src == v { inv(s) } else { 0 };
                        let right = if tgt == v { s } else { 0 };
                        mul(mul(left, g), right)
                    })
                    .collect();
                dsu.union(i, encode(&t));
            }
        }
    }
    let roots: BTreeSet<usize> = (0..total).map(|i| dsu.find(i)).collect();

    if let Some((base, path)) = based {
        let image_of_base = graph
            .edges
            .iter()
            .enumerate()
            .find_map(|(x, &(s, t))| {
                let img = rule.image(x);
                if s == base {
                    Some(graph.edges[img[0]].0)
                } else if t == base {
                    Some(graph.edges[img[img.len() - 1]].1)
                } else {
                    None
                }
            })
            .expect("every vertex has an edge");
        let mut at = base;
        for &(e, forward) in path {
            let (s, t) = graph.edges[e];
            let (from, to) = if forward { (s, t) } else { (t, s) };
            assert_eq!(from, at, "transport path is not connected");
            at = to;
        }
        assert_eq!(
            at, image_of_base,
            "transport path does not reach the image of the basepoint"
        );
    }
    let pull = |i: usize| {
        let l = decode(i);
        let mut out: Vec<usize> = (0..m)
            .map(|e| rule.image(e).iter().fold(0, |acc, &x| mul(acc, l[x])))
            .collect();
        if let Some((base, path)) = based {
            // gauge by H⁻¹ at the base, where H is the holonomy of ℓ along the path
            let h = path.iter().fold(0, |acc, &(e, forward)| {
                mul(acc, if forward { l[e] } else { inv(l[e]) })
            });
            let h_inv = inv(h);
            for (e, &(src, tgt)) in graph.edges.iter().enumerate() {
                let left = if src == base { h } else { 0 };
                let right = if tgt == base { h_inv } else { 0 };
                out[e] = mul(mul(left, out[e]), right);
            }
        }
        encode(&out)
    };
    let mut current: BTreeSet<usize> = roots.clone();
    for _ in 0..=roots.len() {
        current = current.iter().map(|&r| dsu.find(pull(r))).collect();
    }
    (roots.len(), current.len())
}
