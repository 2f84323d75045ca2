//! Breadth-first closure of a finite group under a generating set.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::hash::Hash;

/// Elements reached from the identity by right-multiplying generators, in
/// breadth-first order, together with the spanning tree that reached them.
#[derive(Debug, Clone)]
pub struct CayleyTree<T> {
    pub elements: Vec<T>,
    /// `parent[i] = Some((j, g))` means `elements[i] = elements[j] · gens[g]`.
    pub parent: Vec<Option<(usize, usize)>>,
    index: HashMap<T, usize>,
}

impl<T: Clone + Eq + Hash> CayleyTree<T> {
    pub fn build<F>(identity: T, gens: &[T], mul: F) -> Self
    where
        F: Fn(&T, &T) -> T,
    {
        let mut elements = vec![identity.clone()];
        let mut parent = vec![None];
        let mut index = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (g, gen) in gens.iter().enumerate() {
                let next = mul(&elements[i], gen);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                    parent.push(Some((i, g)));
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        Self {
            elements,
            parent,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Generator indices spelling `elements[i]` from the identity.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((j, g)) = self.parent[i] {
            w.push(g);
            i = j;
        }
        w.reverse();
        w
    }

    /// Extends generator images along the spanning tree: the image of
    /// `elements[i]` is the product of the images of its word. Entries come
    /// out in the same order as `elements`.
    pub fn extend<U, F>(&self, identity: U, gen_images: &[U], mul: F) -> Vec<U>
    where
        U: Clone,
        F: Fn(&U, &U) -> U,
    {
        let mut out: Vec<U> = Vec::with_capacity(self.len());
        for p in &self.parent {
            let v = match p {
                None => identity.clone(),
                Some((j, g)) => mul(&out[*j], &gen_images[*g]),
            };
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_closure() {
        let t = CayleyTree::build(0u32, &[1], |a, b| (a + b) % 7);
        assert_eq!(t.len(), 7);
        assert_eq!(t.word(3), vec![0, 0, 0]);
        assert_eq!(t.index_of(&5), Some(5));
    }

    #[test]
    fn extension_follows_words() {
        // Z_6 generated by 1, mapped to Z_3 by x ↦ x mod 3
        let t = CayleyTree::build(0u32, &[1], |a, b| (a + b) % 6);
        let img = t.extend(0u32, &[1], |a, b| (a + b) % 3);
        for (x, y) in t.elements.iter().zip(&img) {
            assert_eq!(x % 3, *y);
        }
    }
}
