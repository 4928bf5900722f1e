//! Substitution rules on a finite alphabet and their Anderson–Putnam graphs.
//!
//! A one-dimensional substitution tiling has one tile type per letter. Its
//! approximant is a graph with one edge per tile type, where the right end of
//! `x` is glued to the left end of `y` whenever `xy` occurs in the language.
//! Collaring replaces each letter by its legal three-letter context before
//! building the graph. The substitution maps every edge to the edge path of
//! its image, and that graph map induces an endomorphism of the free
//! fundamental group, which is what the representation-variety code iterates.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{PrepError, Result};
use crate::free_word::{reduce, FreeHomomorphism, Letter, Word};

/// A substitution with non-empty positive images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionRule {
    alphabet: Vec<String>,
    images: Vec<Vec<usize>>,
}

impl SubstitutionRule {
    pub fn new(alphabet: Vec<String>, images: Vec<Vec<usize>>) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(PrepError::invalid("alphabet is empty"));
        }
        if images.len() != alphabet.len() {
            return Err(PrepError::invalid(format!(
                "{} letters but {} images",
                alphabet.len(),
                images.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for name in &alphabet {
            if !seen.insert(name) {
                return Err(PrepError::invalid(format!("letter {name:?} is repeated")));
            }
        }
        for (x, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(PrepError::invalid(format!(
                    "image of {:?} is empty",
                    alphabet[x]
                )));
            }
            if let Some(&bad) = img.iter().find(|&&y| y >= alphabet.len()) {
                return Err(PrepError::invalid(format!(
                    "image of {:?} uses letter index {bad}, outside the alphabet",
                    alphabet[x]
                )));
            }
        }
        Ok(SubstitutionRule { alphabet, images })
    }

    /// Builds a rule from letter names, e.g. `from_names(&["a", "b"], &[&["a", "b"], &["b", "a"]])`.
    pub fn from_names(alphabet: &[&str], images: &[&[&str]]) -> Result<Self> {
        let index: HashMap<&str, usize> =
            alphabet.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let images = images
            .iter()
            .map(|img| {
                img.iter()
                    .map(|n| {
                        index
                            .get(n)
                            .copied()
                            .ok_or_else(|| PrepError::invalid(format!("unknown letter {n:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet.iter().map(|s| s.to_string()).collect(), images)
    }

    /// Parses the line format:
    ///
    /// ```text
    /// letters: a b
    /// a -> a b   # comment
    /// b -> b a
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let parsed = parse_rule_lines(text, false)?;
        let images = parsed
            .images
            .into_iter()
            .map(|img| img.into_iter().map(|l| l.generator).collect())
            .collect();
        Self::new(parsed.alphabet, images).map_err(|e| PrepError::ParseLine {
            line: parsed.header_line,
            message: e.to_string(),
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn images(&self) -> &[Vec<usize>] {
        &self.images
    }

    pub fn image(&self, letter: usize) -> &[usize] {
        &self.images[letter]
    }

    pub fn apply(&self, word: &[usize]) -> Vec<usize> {
        word.iter()
            .flat_map(|&x| self.images[x].iter().copied())
            .collect()
    }

    /// The substitution read letter for letter as an endomorphism of `F_d`.
    pub fn as_endomorphism(&self) -> FreeHomomorphism {
        let d = self.size();
        let images = self
            .images
            .iter()
            .map(|img| Word::positive(img, d).expect("letters are in range"))
            .collect();
        FreeHomomorphism::new(d, d, images).expect("ranks agree")
    }

    pub fn display_word(&self, word: &[usize]) -> String {
        word.iter()
            .map(|&x| self.alphabet[x].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for SubstitutionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "letters: {}", self.alphabet.join(" "))?;
        for (x, img) in self.images.iter().enumerate() {
            writeln!(f, "{} -> {}", self.alphabet[x], self.display_word(img))?;
        }
        Ok(())
    }
}

pub(crate) struct ParsedRules {
    pub alphabet: Vec<String>,
    pub images: Vec<Vec<Letter>>,
    pub header_line: usize,
}

/// Shared parser for substitution files and endomorphism files. With
/// `allow_inverse`, `name^-1` denotes an inverse letter and empty images are
/// allowed.
pub(crate) fn parse_rule_lines(text: &str, allow_inverse: bool) -> Result<ParsedRules> {
    let err = |line: usize, message: String| PrepError::ParseLine { line, message };
    let mut alphabet: Option<(Vec<String>, usize)> = None;
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut images: Vec<Option<(Vec<Letter>, usize)>> = Vec::new();

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if alphabet.is_none() {
            let rest = line
                .strip_prefix("letters:")
                .ok_or_else(|| err(line_no, "expected \"letters: <name> …\"".into()))?;
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if names.is_empty() {
                return Err(err(line_no, "no letters declared".into()));
            }
            for (i, name) in names.iter().enumerate() {
                if name.contains("->") || name.ends_with("^-1") {
                    return Err(err(line_no, format!("invalid letter name {name:?}")));
                }
                if index.insert(name.clone(), i).is_some() {
                    return Err(err(line_no, format!("letter {name:?} declared twice")));
                }
            }
            images = vec![None; names.len()];
            alphabet = Some((names, line_no));
            continue;
        }

        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| err(line_no, "expected \"<name> -> <name> …\"".into()))?;
        let lhs = lhs.trim();
        let &x = index
            .get(lhs)
            .ok_or_else(|| err(line_no, format!("unknown letter {lhs:?}")))?;
        if let Some((_, first)) = &images[x] {
            return Err(err(
                line_no,
                format!("duplicate image for {lhs:?} (first given on line {first})"),
            ));
        }
        let mut word = Vec::new();
        for tok in rhs.split_whitespace() {
            let (name, inverse) = match tok.strip_suffix("^-1") {
                Some(base) if allow_inverse => (base, true),
                Some(_) => {
                    return Err(err(
                        line_no,
                        format!("inverse letter {tok:?} not allowed here"),
                    ))
                }
                None => (tok, false),
            };
            let &g = index
                .get(name)
                .ok_or_else(|| err(line_no, format!("unknown letter {name:?}")))?;
            word.push(Letter {
                generator: g,
                inverse,
            });
        }
        if word.is_empty() && !allow_inverse {
            return Err(err(line_no, format!("image of {lhs:?} is empty")));
        }
        images[x] = Some((word, line_no));
    }

    let (alphabet, header_line) =
        alphabet.ok_or_else(|| err(1, "missing \"letters:\" line".into()))?;
    let images = images
        .into_iter()
        .enumerate()
        .map(|(x, img)| {
            img.map(|(w, _)| w)
                .ok_or_else(|| err(header_line, format!("no image given for {:?}", alphabet[x])))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ParsedRules {
        alphabet,
        images,
        header_line,
    })
}

/// Parses an endomorphism file: same grammar as a rule file, but `name^-1`
/// is allowed and images may be empty (the identity).
pub fn parse_endomorphism(text: &str) -> Result<(Vec<String>, FreeHomomorphism)> {
    let parsed = parse_rule_lines(text, true)?;
    let rank = parsed.alphabet.len();
    let images = parsed
        .images
        .into_iter()
        .map(|w| reduce(w, rank))
        .collect::<Result<Vec<_>>>()?;
    Ok((parsed.alphabet, FreeHomomorphism::new(rank, rank, images)?))
}

/// `entries[i][j]` counts occurrences of letter `i` in the image of letter `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionMatrix {
    pub entries: Vec<Vec<u64>>,
}

impl SubstitutionMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn column_sum(&self, j: usize) -> u64 {
        self.entries.iter().map(|row| row[j]).sum()
    }
}

pub fn substitution_matrix(rule: &SubstitutionRule) -> SubstitutionMatrix {
    let d = rule.size();
    let mut entries = vec![vec![0u64; d]; d];
    for (j, img) in rule.images().iter().enumerate() {
        for &i in img {
            entries[i][j] += 1;
        }
    }
    SubstitutionMatrix { entries }
}

/// Outcome of the primitivity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Primitivity {
    /// Least `n` with `Mⁿ` entrywise positive, if any.
    pub exponent: Option<usize>,
}

impl Primitivity {
    pub fn is_primitive(&self) -> bool {
        self.exponent.is_some()
    }
}

/// Checks powers up to Wielandt's bound `d² − 2d + 2`.
pub fn is_primitive(rule: &SubstitutionRule) -> Primitivity {
    let d = rule.size();
    let m = substitution_matrix(rule);
    let pattern: Vec<Vec<bool>> = m
        .entries
        .iter()
        .map(|row| row.iter().map(|&x| x > 0).collect())
        .collect();
    let bound = d * d + 2 - 2 * d;
    let mut power = pattern.clone();
    for n in 1..=bound {
        if power.iter().all(|row| row.iter().all(|&x| x)) {
            return Primitivity { exponent: Some(n) };
        }
        power = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (0..d).any(|k| power[i][k] && pattern[k][j]))
                    .collect()
            })
            .collect();
    }
    Primitivity { exponent: None }
}

/// Factors of length `len` of the language `{ factors of σⁿ(x) }`.
///
/// Closes the set of factors of length at most `len` under "apply σ and take
/// factors", starting from the single letters. Every factor of σⁿ⁺¹(x) of
/// length at most `len` lies inside σ(w) for some factor `w` of σⁿ(x) that is
/// no longer, so the closure is exactly the language.
pub fn allowed_factors(rule: &SubstitutionRule, len: usize) -> BTreeSet<Vec<usize>> {
    if len == 0 {
        return BTreeSet::from([Vec::new()]);
    }
    let mut known: BTreeSet<Vec<usize>> = (0..rule.size()).map(|x| vec![x]).collect();
    let mut queue: VecDeque<Vec<usize>> = known.iter().cloned().collect();
    while let Some(w) = queue.pop_front() {
        let image = rule.apply(&w);
        for start in 0..image.len() {
            for end in start + 1..=(start + len).min(image.len()) {
                let f = &image[start..end];
                if !known.contains(f) {
                    known.insert(f.to_vec());
                    queue.push_back(f.to_vec());
                }
            }
        }
    }
    known.into_iter().filter(|w| w.len() == len).collect()
}

/// A rule on collared letters, with the context each collared letter stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollaredRule {
    pub rule: SubstitutionRule,
    /// `(left neighbour, letter, right neighbour)` in the original alphabet.
    pub contexts: Vec<[usize; 3]>,
}

/// Collared letters are the legal three-letter factors `pxs`. The image of
/// `pxs` reads off σ(x) inside σ(p)σ(x)σ(s), one collared letter per letter.
pub fn collar_substitution(rule: &SubstitutionRule) -> Result<CollaredRule> {
    if !is_primitive(rule).is_primitive() {
        return Err(PrepError::Unsupported(
            "collaring requires a primitive substitution".into(),
        ));
    }
    let contexts: Vec<[usize; 3]> = allowed_factors(rule, 3)
        .into_iter()
        .map(|w| [w[0], w[1], w[2]])
        .collect();
    if contexts.is_empty() {
        return Err(PrepError::Unsupported(
            "the language has no factors of length 3, so there is nothing to collar".into(),
        ));
    }
    let index: HashMap<[usize; 3], usize> =
        contexts.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let names = rule.alphabet();
    let alphabet = contexts
        .iter()
        .map(|&[p, x, s]| format!("{}.{}.{}", names[p], names[x], names[s]))
        .collect();

    let mut images = Vec::with_capacity(contexts.len());
    for &[p, x, s] in &contexts {
        let mut ctx = vec![*rule.image(p).last().expect("non-empty image")];
        ctx.extend_from_slice(rule.image(x));
        ctx.push(rule.image(s)[0]);
        let img = ctx
            .windows(3)
            .map(|w| {
                let key = [w[0], w[1], w[2]];
                index.get(&key).copied().ok_or_else(|| {
                    PrepError::Construction(format!(
                        "collared image of {} produced an illegal context",
                        rule.display_word(&[p, x, s])
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        images.push(img);
    }
    Ok(CollaredRule {
        rule: SubstitutionRule::new(alphabet, images)?,
        contexts,
    })
}

/// Rule whose letters are the edges of the approximant at this collar level.
pub fn effective_rule(rule: &SubstitutionRule, collar_level: u8) -> Result<SubstitutionRule> {
    match collar_level {
        0 => Ok(rule.clone()),
        1 => Ok(collar_substitution(rule)?.rule),
        n => Err(PrepError::invalid(format!(
            "collar level {n} is not supported (use 0 or 1)"
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApEdge {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// An approximant graph: one edge per (collared) letter, oriented left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApGraph {
    pub vertex_count: usize,
    pub edges: Vec<ApEdge>,
    pub basepoint: usize,
}

impl ApGraph {
    pub fn new(vertex_count: usize, edges: Vec<ApEdge>, basepoint: usize) -> Result<Self> {
        if basepoint >= vertex_count {
            return Err(PrepError::invalid("basepoint is not a vertex"));
        }
        if let Some(e) = edges
            .iter()
            .find(|e| e.source >= vertex_count || e.target >= vertex_count)
        {
            return Err(PrepError::invalid(format!(
                "edge {} has an endpoint outside 0..{vertex_count}",
                e.label
            )));
        }
        Ok(ApGraph {
            vertex_count,
            edges,
            basepoint,
        })
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in &self.edges {
            uf.union(e.source, e.target);
        }
        let root = uf.find(0);
        (0..self.vertex_count).all(|v| uf.find(v) == root)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn left_end(x: usize) -> usize {
    2 * x
}

fn right_end(x: usize) -> usize {
    2 * x + 1
}

/// Glues letter ends along the legal two-letter factors of `rule`. Vertices
/// are numbered by first appearance among the ends `left(0), right(0),
/// left(1), …`, so the basepoint (the left end of the first letter) is 0.
fn graph_of(rule: &SubstitutionRule) -> Result<ApGraph> {
    let d = rule.size();
    let mut uf = UnionFind::new(2 * d);
    for f in allowed_factors(rule, 2) {
        uf.union(right_end(f[0]), left_end(f[1]));
    }
    let mut vertex_of_root: HashMap<usize, usize> = HashMap::new();
    let mut vertex = vec![0; 2 * d];
    for (end, slot) in vertex.iter_mut().enumerate() {
        let root = uf.find(end);
        let next = vertex_of_root.len();
        *slot = *vertex_of_root.entry(root).or_insert(next);
    }
    let edges = (0..d)
        .map(|x| ApEdge {
            source: vertex[left_end(x)],
            target: vertex[right_end(x)],
            label: rule.alphabet()[x].clone(),
        })
        .collect();
    let graph = ApGraph::new(vertex_of_root.len(), edges, vertex[left_end(0)])?;
    if !graph.is_connected() {
        return Err(PrepError::Construction(format!(
            "approximant graph is disconnected ({} vertices); the rule is not primitive",
            graph.vertex_count
        )));
    }
    Ok(graph)
}

pub fn build_ap_graph(rule: &SubstitutionRule, collar_level: u8) -> Result<ApGraph> {
    graph_of(&effective_rule(rule, collar_level)?)
}

/// One step along an edge, forwards (source to target) or backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub edge: usize,
    pub forward: bool,
}

impl Step {
    pub fn reversed(self) -> Step {
        Step {
            forward: !self.forward,
            ..self
        }
    }

    pub fn start(self, g: &ApGraph) -> usize {
        let e = &g.edges[self.edge];
        if self.forward {
            e.source
        } else {
            e.target
        }
    }

    pub fn end(self, g: &ApGraph) -> usize {
        let e = &g.edges[self.edge];
        if self.forward {
            e.target
        } else {
            e.source
        }
    }
}

/// Free presentation of `π₁(graph, basepoint)` from a breadth-first spanning tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi1Presentation {
    pub rank: usize,
    pub basepoint: usize,
    /// Tree edges, ascending.
    pub spanning_tree: Vec<usize>,
    /// Non-tree edges, ascending; generator `i` is the loop through `generators[i]`.
    pub generators: Vec<usize>,
    pub loop_word_of_edge: Vec<Word>,
    /// For each vertex, the tree step that reaches it and the vertex it leaves from.
    parent: Vec<Option<(Step, usize)>>,
}

impl Pi1Presentation {
    /// Tree path from the basepoint to `v`.
    pub fn tree_path(&self, mut v: usize) -> Vec<Step> {
        let mut path = Vec::new();
        while let Some((step, from)) = self.parent[v] {
            path.push(step);
            v = from;
        }
        path.reverse();
        path
    }

    /// Word of an edge path in the generators; tree edges contribute nothing.
    pub fn word_of_path(&self, path: &[Step]) -> Word {
        let letters = path.iter().flat_map(|s| {
            let w = &self.loop_word_of_edge[s.edge];
            if s.forward {
                w.letters().to_vec()
            } else {
                w.inverse().letters().to_vec()
            }
        });
        reduce(letters, self.rank).expect("generators are in range")
    }

    /// Generator names taken from the edge labels.
    pub fn generator_names(&self, graph: &ApGraph) -> Vec<String> {
        self.generators
            .iter()
            .map(|&e| graph.edges[e].label.clone())
            .collect()
    }
}

pub fn fundamental_group(graph: &ApGraph) -> Result<Pi1Presentation> {
    let n = graph.vertex_count;
    let mut incident: Vec<Vec<Step>> = vec![Vec::new(); n];
    for (i, e) in graph.edges.iter().enumerate() {
        if e.source == e.target {
            continue;
        }
        incident[e.source].push(Step {
            edge: i,
            forward: true,
        });
        incident[e.target].push(Step {
            edge: i,
            forward: false,
        });
    }

    let mut parent: Vec<Option<(Step, usize)>> = vec![None; n];
    let mut visited = vec![false; n];
    let mut in_tree = vec![false; graph.edges.len()];
    visited[graph.basepoint] = true;
    let mut queue = VecDeque::from([graph.basepoint]);
    while let Some(v) = queue.pop_front() {
        for &step in &incident[v] {
            let w = step.end(graph);
            if !visited[w] {
                visited[w] = true;
                parent[w] = Some((step, v));
                in_tree[step.edge] = true;
                queue.push_back(w);
            }
        }
    }
    if visited.iter().any(|&seen| !seen) {
        return Err(PrepError::Construction(
            "graph is disconnected, so it has no single fundamental group".into(),
        ));
    }

    let spanning_tree: Vec<usize> = (0..graph.edges.len()).filter(|&e| in_tree[e]).collect();
    let generators: Vec<usize> = (0..graph.edges.len()).filter(|&e| !in_tree[e]).collect();
    let rank = generators.len();
    debug_assert_eq!(rank + n, graph.edges.len() + 1);
    let mut loop_word_of_edge = vec![Word::identity(rank); graph.edges.len()];
    for (g, &e) in generators.iter().enumerate() {
        loop_word_of_edge[e] = Word::generator(g, rank)?;
    }
    Ok(Pi1Presentation {
        rank,
        basepoint: graph.basepoint,
        spanning_tree,
        generators,
        loop_word_of_edge,
        parent,
    })
}

/// The approximant at one collar level together with the endomorphism of its
/// fundamental group induced by the substitution.
#[derive(Clone, Debug)]
pub struct Approximant {
    pub collar_level: u8,
    /// Rule on the edge labels (the collared rule when `collar_level` is 1).
    pub rule: SubstitutionRule,
    pub graph: ApGraph,
    pub pi1: Pi1Presentation,
    pub endomorphism: FreeHomomorphism,
}

impl Approximant {
    pub fn build(rule: &SubstitutionRule, collar_level: u8) -> Result<Self> {
        Self::build_at(rule, collar_level, None)
    }

    /// Like `build`, with π₁ based at `basepoint` instead of vertex 0.
    pub fn build_at(
        rule: &SubstitutionRule,
        collar_level: u8,
        basepoint: Option<usize>,
    ) -> Result<Self> {
        let rule = effective_rule(rule, collar_level)?;
        let mut graph = graph_of(&rule)?;
        if let Some(v) = basepoint {
            if v >= graph.vertex_count {
                return Err(PrepError::invalid(format!(
                    "basepoint {v} is not a vertex (the graph has {})",
                    graph.vertex_count
                )));
            }
            graph.basepoint = v;
        }
        let pi1 = fundamental_group(&graph)?;
        let endomorphism = endomorphism_of_graph_map(&rule, &graph, &pi1)?;
        Ok(Approximant {
            collar_level,
            rule,
            graph,
            pi1,
            endomorphism,
        })
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.pi1.generator_names(&self.graph)
    }

    /// Image of each vertex under the graph map.
    pub fn vertex_map(&self) -> Vec<usize> {
        let mut map = vec![0; self.graph.vertex_count];
        for (x, edge) in self.graph.edges.iter().enumerate() {
            let img = self.rule.image(x);
            map[edge.source] = self.graph.edges[img[0]].source;
            map[edge.target] = self.graph.edges[img[img.len() - 1]].target;
        }
        map
    }

    pub fn basepoint_image(&self) -> usize {
        self.vertex_map()[self.graph.basepoint]
    }

    /// Tree path from the basepoint to its image; the based endomorphism
    /// conjugates image loops back along it. Empty when the basepoint is fixed.
    pub fn transport(&self) -> Vec<Step> {
        self.pi1.tree_path(self.basepoint_image())
    }
}

/// Image of an edge path under the substitution's graph map.
fn image_path(rule: &SubstitutionRule, path: &[Step]) -> Vec<Step> {
    let mut out = Vec::new();
    for &s in path {
        let img = rule.image(s.edge);
        if s.forward {
            out.extend(img.iter().map(|&e| Step {
                edge: e,
                forward: true,
            }));
        } else {
            out.extend(img.iter().rev().map(|&e| Step {
                edge: e,
                forward: false,
            }));
        }
    }
    out
}

fn check_path(graph: &ApGraph, path: &[Step]) -> Result<()> {
    for pair in path.windows(2) {
        if pair[0].end(graph) != pair[1].start(graph) {
            return Err(PrepError::Construction(format!(
                "substituted edge path breaks between {} and {}",
                graph.edges[pair[0].edge].label, graph.edges[pair[1].edge].label
            )));
        }
    }
    Ok(())
}

/// Sends the loop of each generator through the graph map and reads the
/// result back in the generators. The image loop is based at the image of the
/// basepoint; conjugating back along the tree path to the basepoint adds only
/// tree edges, so it does not change the word.
fn endomorphism_of_graph_map(
    rule: &SubstitutionRule,
    graph: &ApGraph,
    pi1: &Pi1Presentation,
) -> Result<FreeHomomorphism> {
    for (x, img) in rule.images().iter().enumerate() {
        let path: Vec<Step> = img
            .iter()
            .map(|&e| Step {
                edge: e,
                forward: true,
            })
            .collect();
        check_path(graph, &path).map_err(|e| {
            PrepError::Construction(format!("image of {}: {e}", rule.alphabet()[x]))
        })?;
    }
    let mut images = Vec::with_capacity(pi1.rank);
    for &e in &pi1.generators {
        let edge = &graph.edges[e];
        let mut path = pi1.tree_path(edge.source);
        path.push(Step {
            edge: e,
            forward: true,
        });
        path.extend(
            pi1.tree_path(edge.target)
                .into_iter()
                .rev()
                .map(Step::reversed),
        );
        let image = image_path(rule, &path);
        check_path(graph, &image)?;
        if let (Some(first), Some(last)) = (image.first(), image.last()) {
            if first.start(graph) != last.end(graph) {
                return Err(PrepError::Construction(format!(
                    "image of the loop through {} is not closed",
                    edge.label
                )));
            }
        }
        images.push(pi1.word_of_path(&image));
    }
    FreeHomomorphism::new(pi1.rank, pi1.rank, images)
}

pub fn induced_pi1_endomorphism(
    rule: &SubstitutionRule,
    collar_level: u8,
) -> Result<FreeHomomorphism> {
    Ok(Approximant::build(rule, collar_level)?.endomorphism)
}
