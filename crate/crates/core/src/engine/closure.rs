use alloc::sync::Arc;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::space::{Element, MatrixSpace, Packed};

const NO_PARENT: u32 = u32::MAX;

/// A finite matrix group held as an explicit element list.
///
/// Groups built by closure record, for every element, the BFS parent and the letter
/// that reached it, so each element has a shortest word in the generators and their
/// inverses (ties broken towards the lexicographically smallest word).
#[derive(Debug, Clone)]
pub struct GroupSnapshot {
    space: Arc<MatrixSpace>,
    elements: Vec<Packed>,
    index: HashMap<Packed, u32>,
    parent: Vec<(u32, u32)>,
    generators: Vec<Element>,
    truncated: bool,
    tracked: bool,
}

impl GroupSnapshot {
    /// `{I}` with no generators.
    pub fn trivial(space: &Arc<MatrixSpace>) -> Self {
        let id = space.identity();
        let mut index = HashMap::new();
        index.insert(id.clone(), 0);
        GroupSnapshot {
            space: space.clone(),
            elements: alloc::vec![id],
            index,
            parent: alloc::vec![(NO_PARENT, NO_PARENT)],
            generators: Vec::new(),
            truncated: false,
            tracked: true,
        }
    }

    /// Breadth-first closure of `generators`; stops with `truncated()` set once more than
    /// `cap` elements are found.
    pub fn generate(space: &Arc<MatrixSpace>, generators: Vec<Element>, cap: usize) -> Self {
        let mut g = Self::trivial(space);
        g.extend(generators, cap);
        g
    }

    /// An explicitly enumerated group; `generators` must generate exactly `elements`.
    pub(crate) fn enumerated(space: &Arc<MatrixSpace>, elements: Vec<Packed>, generators: Vec<Element>) -> Self {
        let index = elements.iter().enumerate().map(|(k, m)| (m.clone(), k as u32)).collect();
        let parent = alloc::vec![(NO_PARENT, NO_PARENT); elements.len()];
        GroupSnapshot {
            space: space.clone(),
            elements,
            index,
            parent,
            generators,
            truncated: false,
            tracked: false,
        }
    }

    /// Adds generators and continues the closure.
    pub fn extend(&mut self, new: Vec<Element>, cap: usize) {
        let first_new = self.generators.len();
        self.generators.extend(new);
        let letters: Vec<Packed> = self
            .generators
            .iter()
            .flat_map(|g| [g.m.clone(), g.inv.clone()])
            .collect();
        // old elements are already closed under the old letters
        let mut frontier: Vec<u32> = (0..self.elements.len() as u32).collect();
        let mut offset = 2 * first_new;
        while !frontier.is_empty() {
            let products = self.expand(&frontier, &letters, offset);
            let mut next = Vec::new();
            for (&src, per_letter) in frontier.iter().zip(products) {
                for (k, m) in per_letter.into_iter().enumerate() {
                    if self.index.contains_key(&m) {
                        continue;
                    }
                    if self.elements.len() >= cap {
                        self.truncated = true;
                        return;
                    }
                    let id = self.elements.len() as u32;
                    self.index.insert(m.clone(), id);
                    self.elements.push(m);
                    self.parent.push(if self.tracked { (src, (offset + k) as u32) } else { (NO_PARENT, NO_PARENT) });
                    next.push(id);
                }
            }
            frontier = next;
            offset = 0;
        }
    }

    #[cfg(feature = "parallel")]
    fn expand(&self, frontier: &[u32], letters: &[Packed], from: usize) -> Vec<Vec<Packed>> {
        use rayon::prelude::*;
        frontier
            .par_iter()
            .map(|&e| {
                let x = &self.elements[e as usize];
                letters[from..].iter().map(|l| self.space.mul(x, l)).collect()
            })
            .collect()
    }

    #[cfg(not(feature = "parallel"))]
    fn expand(&self, frontier: &[u32], letters: &[Packed], from: usize) -> Vec<Vec<Packed>> {
        frontier
            .iter()
            .map(|&e| {
                let x = &self.elements[e as usize];
                letters[from..].iter().map(|l| self.space.mul(x, l)).collect()
            })
            .collect()
    }

    pub fn space(&self) -> &Arc<MatrixSpace> {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Packed] {
        &self.elements
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn contains(&self, m: &[u16]) -> bool {
        self.index.contains_key(m)
    }

    pub fn position(&self, m: &[u16]) -> Option<usize> {
        self.index.get(m).map(|&k| k as usize)
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// Word for `m` as `(generator index, inverse)` letters; `None` for enumerated groups.
    pub fn word(&self, m: &[u16]) -> Option<Vec<(usize, bool)>> {
        if !self.tracked {
            return None;
        }
        let mut k = *self.index.get(m)?;
        let mut out = Vec::new();
        while self.parent[k as usize].0 != NO_PARENT {
            let (p, l) = self.parent[k as usize];
            out.push(((l / 2) as usize, l % 2 == 1));
            k = p;
        }
        out.reverse();
        Some(out)
    }
}
