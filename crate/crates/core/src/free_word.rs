//! Reduced words in free groups of finite rank and homomorphisms between them.

use std::fmt;

use crate::error::{PrepError, Result};
use crate::perm_group::FiniteGroup;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn pos(generator: usize) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub const fn neg(generator: usize) -> Self {
        Letter {
            generator,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// A freely reduced word in the free group of the given rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
    rank: usize,
}

/// Pushes `l` onto a reduced stack, cancelling against the top if possible.
fn push_reduced(stack: &mut Vec<Letter>, l: Letter) {
    match stack.last() {
        Some(&top) if top.cancels(l) => {
            stack.pop();
        }
        _ => stack.push(l),
    }
}

/// Freely reduces a raw letter sequence.
pub fn reduce(letters: impl IntoIterator<Item = Letter>, rank: usize) -> Result<Word> {
    let mut stack = Vec::new();
    for l in letters {
        if l.generator >= rank {
            return Err(PrepError::invalid(format!(
                "generator {} is out of range for rank {rank}",
                l.generator
            )));
        }
        push_reduced(&mut stack, l);
    }
    Ok(Word {
        letters: stack,
        rank,
    })
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word {
            letters: Vec::new(),
            rank,
        }
    }

    pub fn generator(generator: usize, rank: usize) -> Result<Self> {
        reduce([Letter::pos(generator)], rank)
    }

    /// A positive word, e.g. the image of a letter under a substitution.
    pub fn positive(generators: &[usize], rank: usize) -> Result<Self> {
        reduce(generators.iter().map(|&g| Letter::pos(g)), rank)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Product `self · other`, reducing only at the seam.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.rank != other.rank {
            return Err(PrepError::invalid(format!(
                "cannot multiply words of rank {} and {}",
                self.rank, other.rank
            )));
        }
        let mut letters = self.letters.clone();
        let mut rest = other.letters.as_slice();
        while let (Some(&last), Some(&first)) = (letters.last(), rest.first()) {
            if !last.cancels(first) {
                break;
            }
            letters.pop();
            rest = &rest[1..];
        }
        letters.extend_from_slice(rest);
        Ok(Word {
            letters,
            rank: self.rank,
        })
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
            rank: self.rank,
        }
    }

    /// Exponent sum of each generator.
    pub fn abelianization(&self) -> Vec<i64> {
        let mut counts = vec![0i64; self.rank];
        for l in &self.letters {
            counts[l.generator] += if l.inverse { -1 } else { 1 };
        }
        counts
    }

    /// Space-separated generator names, with `^-1` marking inverse letters.
    pub fn display_with<S: AsRef<str>>(&self, names: &[S]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|l| {
                let name = names[l.generator].as_ref();
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.rank).map(|i| format!("x{i}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

/// Evaluates `w` at the generator images `tuple`, multiplying left to right.
///
/// Panics if `tuple` is shorter than the word's rank requires.
pub fn evaluate(w: &Word, group: &FiniteGroup, tuple: &[usize]) -> usize {
    w.letters.iter().fold(FiniteGroup::IDENTITY, |acc, l| {
        let g = tuple[l.generator];
        let g = if l.inverse { group.inverse(g) } else { g };
        group.multiply(acc, g)
    })
}

/// A homomorphism `F_source → F_target`, given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeHomomorphism {
    source_rank: usize,
    target_rank: usize,
    images: Vec<Word>,
}

impl FreeHomomorphism {
    pub fn new(source_rank: usize, target_rank: usize, images: Vec<Word>) -> Result<Self> {
        if images.len() != source_rank {
            return Err(PrepError::invalid(format!(
                "expected {source_rank} generator images, got {}",
                images.len()
            )));
        }
        if let Some(w) = images.iter().find(|w| w.rank != target_rank) {
            return Err(PrepError::invalid(format!(
                "image word has rank {}, expected {target_rank}",
                w.rank
            )));
        }
        Ok(FreeHomomorphism {
            source_rank,
            target_rank,
            images,
        })
    }

    pub fn identity(rank: usize) -> Self {
        FreeHomomorphism {
            source_rank: rank,
            target_rank: rank,
            images: (0..rank)
                .map(|i| Word {
                    letters: vec![Letter::pos(i)],
                    rank,
                })
                .collect(),
        }
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &Word {
        &self.images[generator]
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source_rank == self.target_rank
    }

    /// Image of a word of the source rank.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.rank != self.source_rank {
            return Err(PrepError::invalid(format!(
                "word of rank {} given to a map from rank {}",
                w.rank, self.source_rank
            )));
        }
        let mut stack = Vec::new();
        for l in &w.letters {
            let img = &self.images[l.generator].letters;
            if l.inverse {
                for m in img.iter().rev() {
                    push_reduced(&mut stack, m.inverted());
                }
            } else {
                for &m in img {
                    push_reduced(&mut stack, m);
                }
            }
        }
        Ok(Word {
            letters: stack,
            rank: self.target_rank,
        })
    }
}

/// `outer ∘ inner`: generator `i` goes to `outer(inner(i))`.
pub fn compose(inner: &FreeHomomorphism, outer: &FreeHomomorphism) -> Result<FreeHomomorphism> {
    if inner.target_rank != outer.source_rank {
        return Err(PrepError::invalid(format!(
            "cannot compose a map into rank {} with a map from rank {}",
            inner.target_rank, outer.source_rank
        )));
    }
    let images = inner
        .images
        .iter()
        .map(|w| outer.apply(w))
        .collect::<Result<Vec<_>>>()?;
    Ok(FreeHomomorphism {
        source_rank: inner.source_rank,
        target_rank: outer.target_rank,
        images,
    })
}
