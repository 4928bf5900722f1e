//! Homomorphisms from free groups into a finite group, their conjugacy
//! classes, and the self-maps induced by free-group endomorphisms.
//!
//! Since `F_k` is free, `Hom(F_k, G)` is just `G^k`: a homomorphism is the
//! tuple of generator images. Tuples are indexed lexicographically (first
//! entry most significant), so point `i` is `i` written in base `|G|`.
//!
//! The direct limit of a finite set along a fixed self-map `h` is the eventual
//! image `⋂ hⁿ(X)`, on which `h` is a bijection. That is what
//! [`eventual_image`] computes, for both the point map (based variety) and the
//! class map (variety modulo simultaneous conjugation).

use rayon::prelude::*;

use crate::error::{PrepError, Result};
use crate::free_word::{evaluate, FreeHomomorphism};
use crate::perm_group::FiniteGroup;

/// Default cap on `|G|^k`.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Generator images of a homomorphism `F_k → G`, as element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomPoint(pub Vec<usize>);

impl HomPoint {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Simultaneous conjugation by `h`.
    pub fn conjugate(&self, group: &FiniteGroup, h: usize) -> HomPoint {
        HomPoint(self.0.iter().map(|&g| group.conjugate(g, h)).collect())
    }

    pub fn labels<'g>(&self, group: &'g FiniteGroup) -> Vec<&'g str> {
        self.0.iter().map(|&g| group.label(g)).collect()
    }
}

/// The indexed set `Hom(F_k, G) = G^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomSpace {
    order: usize,
    rank: usize,
    len: usize,
}

impl HomSpace {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn decode_into(&self, mut index: usize, out: &mut [usize]) {
        for slot in out[..self.rank].iter_mut().rev() {
            *slot = index % self.order;
            index /= self.order;
        }
    }

    pub fn point(&self, index: usize) -> HomPoint {
        let mut t = vec![0; self.rank];
        self.decode_into(index, &mut t);
        HomPoint(t)
    }

    pub fn index_of(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &g| acc * self.order + g)
    }

    pub fn iter(&self) -> impl Iterator<Item = HomPoint> + '_ {
        (0..self.len).map(move |i| self.point(i))
    }
}

/// All `|G|^k` homomorphisms `F_k → G`, refusing anything above `budget`.
pub fn enumerate_homs(group: &FiniteGroup, rank: usize, budget: u64) -> Result<HomSpace> {
    let order = group.order();
    let count = (order as u128)
        .checked_pow(rank as u32)
        .unwrap_or(u128::MAX);
    let cap = (budget as u128).min(u32::MAX as u128);
    if count > cap {
        return Err(PrepError::SizeLimit {
            what: "number of homomorphisms |G|^k",
            requested: count,
            cap,
        });
    }
    Ok(HomSpace {
        order,
        rank,
        len: count as usize,
    })
}

/// A simultaneous-conjugation orbit, named by its lexicographically least tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConjClass {
    pub canonical: HomPoint,
    pub orbit_size: usize,
}

/// The orbits of `G^k` under simultaneous conjugation.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    classes: Vec<ConjClass>,
    class_of: Vec<u32>,
}

impl ClassPartition {
    /// Classes sorted by canonical tuple.
    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class index of a point index.
    pub fn class_of(&self, point: usize) -> usize {
        self.class_of[point] as usize
    }
}

const UNASSIGNED: u32 = u32::MAX;

pub fn conjugacy_classes(space: &HomSpace, group: &FiniteGroup) -> ClassPartition {
    let mut class_of = vec![UNASSIGNED; space.len()];
    let mut classes = Vec::new();
    let mut tuple = vec![0; space.rank()];
    let mut conj = vec![0; space.rank()];
    // Scanning in index order means the first unvisited point of an orbit is
    // its lexicographic minimum, and classes come out sorted.
    for start in 0..space.len() {
        if class_of[start] != UNASSIGNED {
            continue;
        }
        let id = classes.len() as u32;
        space.decode_into(start, &mut tuple);
        let mut size = 0;
        for h in 0..group.order() {
            for (c, &g) in conj.iter_mut().zip(&tuple) {
                *c = group.conjugate(g, h);
            }
            let j = space.index_of(&conj);
            if class_of[j] == UNASSIGNED {
                class_of[j] = id;
                size += 1;
            }
        }
        classes.push(ConjClass {
            canonical: HomPoint(tuple.clone()),
            orbit_size: size,
        });
    }
    ClassPartition { classes, class_of }
}

/// A total self-map of `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSelfMap {
    image_of: Vec<u32>,
}

impl InducedSelfMap {
    pub fn new(image_of: Vec<usize>) -> Result<Self> {
        let n = image_of.len();
        if let Some(&bad) = image_of.iter().find(|&&j| j >= n) {
            return Err(PrepError::invalid(format!(
                "self-map sends a point to {bad}, outside 0..{n}"
            )));
        }
        Ok(InducedSelfMap {
            image_of: image_of.into_iter().map(|j| j as u32).collect(),
        })
    }

    pub fn identity(len: usize) -> Self {
        InducedSelfMap {
            image_of: (0..len as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image_of.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image_of[i] as usize
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &InducedSelfMap) -> InducedSelfMap {
        InducedSelfMap {
            image_of: self
                .image_of
                .iter()
                .map(|&j| next.image_of[j as usize])
                .collect(),
        }
    }
}

fn check_endomorphism(sigma: &FreeHomomorphism, rank: usize) -> Result<()> {
    if sigma.source_rank() != rank || sigma.target_rank() != rank {
        return Err(PrepError::invalid(format!(
            "endomorphism maps rank {} to rank {}, but the points have rank {rank}",
            sigma.source_rank(),
            sigma.target_rank()
        )));
    }
    Ok(())
}

/// Precomposition with `sigma`: `t ↦ (t(σ(x₀)), …, t(σ(x_{k-1})))`.
pub fn induced_point_map(
    sigma: &FreeHomomorphism,
    group: &FiniteGroup,
    space: &HomSpace,
) -> Result<InducedSelfMap> {
    check_endomorphism(sigma, space.rank())?;
    let rank = space.rank();
    let image_of = (0..space.len())
        .into_par_iter()
        .with_min_len(1024)
        .map_init(
            || (vec![0; rank], vec![0; rank]),
            |(tuple, image), i| {
                space.decode_into(i, tuple);
                for (slot, w) in image.iter_mut().zip(sigma.images()) {
                    *slot = evaluate(w, group, tuple);
                }
                space.index_of(image) as u32
            },
        )
        .collect();
    Ok(InducedSelfMap { image_of })
}

/// The point map pushed down to conjugacy classes.
pub fn induced_class_map(
    sigma: &FreeHomomorphism,
    group: &FiniteGroup,
    space: &HomSpace,
    partition: &ClassPartition,
) -> Result<InducedSelfMap> {
    check_endomorphism(sigma, space.rank())?;
    let image_of = partition
        .classes()
        .par_iter()
        .map(|c| {
            let image: Vec<usize> = sigma
                .images()
                .iter()
                .map(|w| evaluate(w, group, c.canonical.as_slice()))
                .collect();
            partition.class_of(space.index_of(&image)) as u32
        })
        .collect();
    Ok(InducedSelfMap { image_of })
}

/// The eventual image of a self-map together with its restricted permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectLimitResult {
    /// Domain indices in the eventual image, ascending.
    pub members: Vec<usize>,
    /// `restricted_map[i]` is the position in `members` of the image of `members[i]`.
    pub restricted_map: Vec<usize>,
    /// Least `N` with `h^N(X) = h^(N+1)(X)`.
    pub steps_to_stabilize: usize,
    pub transient_count: usize,
}

impl DirectLimitResult {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }
}

pub fn eventual_image(map: &InducedSelfMap) -> DirectLimitResult {
    let n = map.len();
    let mut current = vec![true; n];
    let mut size = n;
    let mut steps = 0;
    loop {
        let mut next = vec![false; n];
        let mut next_size = 0;
        for (i, _) in current.iter().enumerate().filter(|(_, &c)| c) {
            let j = map.apply(i);
            if !next[j] {
                next[j] = true;
                next_size += 1;
            }
        }
        // images are nested, so equal sizes mean equal sets
        if next_size == size {
            break;
        }
        current = next;
        size = next_size;
        steps += 1;
    }

    let members: Vec<usize> = (0..n).filter(|&i| current[i]).collect();
    let mut position = vec![usize::MAX; n];
    for (p, &m) in members.iter().enumerate() {
        position[m] = p;
    }
    let restricted_map = members.iter().map(|&m| position[map.apply(m)]).collect();
    DirectLimitResult {
        transient_count: n - members.len(),
        members,
        restricted_map,
        steps_to_stabilize: steps,
    }
}

/// Direct limit of `Hom(F_k, G)` along precomposition with `sigma`.
#[derive(Clone, Debug)]
pub struct BasedLimit {
    pub space: HomSpace,
    pub map: InducedSelfMap,
    pub limit: DirectLimitResult,
}

impl BasedLimit {
    pub fn member_points(&self) -> Vec<HomPoint> {
        self.limit
            .members
            .iter()
            .map(|&i| self.space.point(i))
            .collect()
    }
}

pub fn based_limit(
    sigma: &FreeHomomorphism,
    group: &FiniteGroup,
    budget: u64,
) -> Result<BasedLimit> {
    let space = enumerate_homs(group, sigma.source_rank(), budget)?;
    let map = induced_point_map(sigma, group, &space)?;
    let limit = eventual_image(&map);
    Ok(BasedLimit { space, map, limit })
}

/// Direct limit of `Hom(F_k, G)/G` along precomposition with `sigma`.
#[derive(Clone, Debug)]
pub struct ClassLimit {
    pub space: HomSpace,
    pub partition: ClassPartition,
    pub map: InducedSelfMap,
    pub limit: DirectLimitResult,
}

impl ClassLimit {
    pub fn member_classes(&self) -> Vec<&ConjClass> {
        self.limit
            .members
            .iter()
            .map(|&i| &self.partition.classes()[i])
            .collect()
    }
}

pub fn class_limit(
    sigma: &FreeHomomorphism,
    group: &FiniteGroup,
    budget: u64,
) -> Result<ClassLimit> {
    let space = enumerate_homs(group, sigma.source_rank(), budget)?;
    let partition = conjugacy_classes(&space, group);
    let map = induced_class_map(sigma, group, &space, &partition)?;
    let limit = eventual_image(&map);
    Ok(ClassLimit {
        space,
        partition,
        map,
        limit,
    })
}
