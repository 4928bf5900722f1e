//! Finite groups as permutation groups with dense multiplication tables.
//!
//! Elements are stored in canonical order: the identity first, then the
//! remaining permutations sorted lexicographically by their image arrays.
//! Every group operation after construction is a table lookup on element
//! indices.
//!
//! Products are read left to right: `g·h` applies `g` to the points first and
//! then `h`. Word evaluation elsewhere in the crate relies on this.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{PrepError, Result};

/// Element indices are stored as `u16` inside the tables.
pub const HARD_MAX_ORDER: usize = 1 << 16;

/// Cap on `order × degree` while closing generators.
pub const MAX_PERM_ENTRIES: usize = 10_000_000;

/// A permutation of `{0, …, degree-1}`, stored by its images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        if images.is_empty() {
            return Err(PrepError::invalid("a permutation needs degree at least 1"));
        }
        let mut seen = vec![false; images.len()];
        for &p in &images {
            if p >= images.len() || seen[p] {
                return Err(PrepError::invalid(format!(
                    "{images:?} is not a bijection on 0..{}",
                    images.len()
                )));
            }
            seen[p] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles on 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree == 0 {
            return Err(PrepError::invalid("a permutation needs degree at least 1"));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(PrepError::invalid(format!(
                        "point {} is outside 1..={degree}",
                        p + 1
                    )));
                }
                if used[p] {
                    return Err(PrepError::invalid(format!(
                        "point {} appears twice in disjoint cycles",
                        p + 1
                    )));
                }
                used[p] = true;
                images[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&p| other.images[p]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p] = i;
        }
        Perm { images }
    }

    /// Non-trivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }

    /// Disjoint-cycle notation on 1-based points, `()` for the identity.
    pub fn cycle_notation(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
                format!("({})", pts.join(" "))
            })
            .collect()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

/// Size caps applied while building groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupLimits {
    pub max_order: usize,
    pub max_symmetric_degree: usize,
}

impl Default for GroupLimits {
    fn default() -> Self {
        GroupLimits {
            max_order: 10_080,
            max_symmetric_degree: 8,
        }
    }
}

impl GroupLimits {
    fn order_cap(&self) -> usize {
        self.max_order.min(HARD_MAX_ORDER)
    }

    fn check_order(&self, requested: usize) -> Result<()> {
        let cap = self.order_cap();
        if requested > cap {
            return Err(PrepError::SizeLimit {
                what: "group order",
                requested: requested as u128,
                cap: cap as u128,
            });
        }
        Ok(())
    }

    pub fn symmetric(&self, n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(PrepError::invalid(
                "symmetric group degree must be positive",
            ));
        }
        if n > self.max_symmetric_degree {
            return Err(PrepError::SizeLimit {
                what: "symmetric group degree",
                requested: n as u128,
                cap: self.max_symmetric_degree as u128,
            });
        }
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[vec![0, 1]])?);
        }
        if n >= 3 {
            gens.push(Perm::from_cycles(n, &[(0..n).collect()])?);
        }
        self.from_generators(n, &gens)
    }

    pub fn cyclic(&self, n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(PrepError::invalid("cyclic group order must be positive"));
        }
        self.check_order(n)?;
        let gens = if n == 1 {
            Vec::new()
        } else {
            vec![Perm::from_cycles(n, &[(0..n).collect()])?]
        };
        self.from_generators(n, &gens)
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(&self, n: usize) -> Result<FiniteGroup> {
        if n > 0 {
            self.check_order(n.saturating_mul(2))?;
        }
        match n {
            0 => Err(PrepError::invalid("dihedral parameter must be positive")),
            // D1 and D2 have no faithful action on n points.
            1 => self.from_generators(2, &[Perm::from_cycles(2, &[vec![0, 1]])?]),
            2 => self.from_generators(
                4,
                &[
                    Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]])?,
                    Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]])?,
                ],
            ),
            _ => {
                let rotation = Perm::from_cycles(n, &[(0..n).collect()])?;
                let reflection = Perm::new((0..n).map(|i| n - 1 - i).collect())?;
                self.from_generators(n, &[rotation, reflection])
            }
        }
    }

    /// Closes `gens` under composition and builds the canonical tables.
    pub fn from_generators(&self, degree: usize, gens: &[Perm]) -> Result<FiniteGroup> {
        if degree == 0 {
            return Err(PrepError::invalid("degree must be positive"));
        }
        for (i, g) in gens.iter().enumerate() {
            if g.degree() != degree {
                return Err(PrepError::invalid(format!(
                    "generator {} has degree {}, expected {degree}",
                    i + 1,
                    g.degree()
                )));
            }
        }
        let cap = self.order_cap();
        let mut gen_perms: Vec<Perm> = Vec::new();
        for g in gens {
            if !g.is_identity() && !gen_perms.contains(g) {
                gen_perms.push(g.clone());
            }
        }

        // Breadth-first closure under right multiplication by generators.
        // Indices here are in discovery order.
        let mut found: Vec<Perm> = vec![Perm::identity(degree)];
        let mut index: HashMap<Perm, usize> = HashMap::new();
        index.insert(found[0].clone(), 0);
        let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
        let mut right_cayley: Vec<usize> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (s, g) in gen_perms.iter().enumerate() {
                let y = found[x].then(g);
                let yi = match index.get(&y) {
                    Some(&yi) => yi,
                    None => {
                        let yi = found.len();
                        if yi + 1 > cap {
                            return Err(PrepError::SizeLimit {
                                what: "group order",
                                requested: (yi + 1) as u128,
                                cap: cap as u128,
                            });
                        }
                        if (yi + 1) * degree > MAX_PERM_ENTRIES {
                            return Err(PrepError::SizeLimit {
                                what: "stored permutation entries",
                                requested: ((yi + 1) * degree) as u128,
                                cap: MAX_PERM_ENTRIES as u128,
                            });
                        }
                        index.insert(y.clone(), yi);
                        found.push(y);
                        parent.push((x, s));
                        queue.push_back(yi);
                        yi
                    }
                };
                // rows are filled in pop order, which is discovery order
                debug_assert_eq!(right_cayley.len(), x * gen_perms.len() + s);
                right_cayley.push(yi);
            }
        }

        let order = found.len();
        let ngens = gen_perms.len();
        let mut sorted: Vec<usize> = (0..order).collect();
        sorted.sort_by(|&a, &b| found[a].images.cmp(&found[b].images));
        let mut canon = vec![0usize; order];
        for (new, &old) in sorted.iter().enumerate() {
            canon[old] = new;
        }
        debug_assert_eq!(canon[0], 0);

        // mul[g][h] = mul[g][parent(h)] · gen(h), filled in discovery order of h.
        let mut mul = vec![0u16; order * order];
        for g in 0..order {
            mul[canon[g] * order] = canon[g] as u16;
        }
        for h_old in 1..order {
            let (p_old, s) = parent[h_old];
            let h = canon[h_old];
            let p = canon[p_old];
            for g in 0..order {
                let gp_new = mul[g * order + p] as usize;
                let gp_old = sorted[gp_new];
                let prod_old = right_cayley[gp_old * ngens + s];
                mul[g * order + h] = canon[prod_old] as u16;
            }
        }

        let elements: Vec<Perm> = sorted.iter().map(|&old| found[old].clone()).collect();
        let inv: Vec<u16> = elements
            .iter()
            .map(|p| canon[index[&p.inverse()]] as u16)
            .collect();
        let generators = gen_perms.iter().map(|g| canon[index[g]]).collect();
        let labels: Vec<String> = elements.iter().map(Perm::cycle_notation).collect();
        let label_index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let perm_index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();

        Ok(FiniteGroup {
            degree,
            elements,
            mul,
            inv,
            generators,
            labels,
            label_index,
            perm_index,
        })
    }
}

pub fn symmetric_group(n: usize) -> Result<FiniteGroup> {
    GroupLimits::default().symmetric(n)
}

pub fn cyclic_group(n: usize) -> Result<FiniteGroup> {
    GroupLimits::default().cyclic(n)
}

pub fn dihedral_group(n: usize) -> Result<FiniteGroup> {
    GroupLimits::default().dihedral(n)
}

pub fn group_from_generators(degree: usize, gens: &[Perm]) -> Result<FiniteGroup> {
    GroupLimits::default().from_generators(degree, gens)
}

/// A finite permutation group with canonical element order and dense tables.
///
/// Immutable once built, so it can be shared freely between threads.
#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Perm>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    generators: Vec<usize>,
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    perm_index: HashMap<Perm, usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl FiniteGroup {
    pub const IDENTITY: usize = 0;

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, g: usize) -> &Perm {
        &self.elements[g]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// `g·h`: apply `g`, then `h`.
    #[inline]
    pub fn multiply(&self, g: usize, h: usize) -> usize {
        self.mul[g * self.order() + h] as usize
    }

    #[inline]
    pub fn inverse(&self, g: usize) -> usize {
        self.inv[g] as usize
    }

    /// `h⁻¹·g·h`.
    #[inline]
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.multiply(self.multiply(self.inverse(h), g), h)
    }

    pub fn pow(&self, g: usize, mut e: u64) -> usize {
        let mut base = g;
        let mut acc = Self::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(acc, base);
            }
            base = self.multiply(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().all(|&a| {
            gens.iter()
                .all(|&b| self.multiply(a, b) == self.multiply(b, a))
        })
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn index_of_perm(&self, p: &Perm) -> Option<usize> {
        self.perm_index.get(p).copied()
    }

    /// Replaces the element labels. Labels must be unique and one per element.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order() {
            return Err(PrepError::invalid(format!(
                "expected {} labels, got {}",
                self.order(),
                labels.len()
            )));
        }
        let mut label_index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if label_index.insert(l.clone(), i).is_some() {
                return Err(PrepError::invalid(format!("duplicate label {l:?}")));
            }
        }
        self.labels = labels;
        self.label_index = label_index;
        Ok(self)
    }

    /// Labels S₃ by normal forms `a^i b^j`, with `a = (1 2 3)` and `b = (1 2)`:
    /// `1, a, a2, b, ab, a2b`.
    pub fn with_s3_letter_labels(self) -> Result<Self> {
        if self.degree != 3 || self.order() != 6 {
            return Err(PrepError::invalid(
                "letter labels are defined only for the symmetric group on 3 points",
            ));
        }
        let a = self.perm_index[&Perm::from_cycles(3, &[vec![0, 1, 2]])?];
        let b = self.perm_index[&Perm::from_cycles(3, &[vec![0, 1]])?];
        let mut labels = vec![String::new(); 6];
        for i in 0..3u64 {
            for j in 0..2u64 {
                let g = self.multiply(self.pow(a, i), self.pow(b, j));
                let apart = match i {
                    0 => "",
                    1 => "a",
                    _ => "a2",
                };
                let bpart = if j == 1 { "b" } else { "" };
                let label = format!("{apart}{bpart}");
                labels[g] = if label.is_empty() { "1".into() } else { label };
            }
        }
        self.with_labels(labels)
    }
}
