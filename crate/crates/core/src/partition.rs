//! Equivalence relations on `{0,..,m-1}`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("partitions live on ground sets of different sizes ({0} and {1})")]
pub struct GroundMismatch(pub usize, pub usize);

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        DisjointSets {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// A partition stored as the least member of each element's block.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    rep: Vec<usize>,
}

impl Partition {
    /// Every element in its own block.
    pub fn discrete(m: usize) -> Self {
        Partition { rep: (0..m).collect() }
    }

    /// A single block.
    pub fn indiscrete(m: usize) -> Self {
        Partition { rep: vec![0; m] }
    }

    /// Groups indices with equal keys.
    pub fn kernel<T: PartialEq>(keys: &[T]) -> Self {
        let rep = (0..keys.len())
            .map(|j| (0..=j).find(|&i| keys[i] == keys[j]).unwrap_or(j))
            .collect();
        Partition { rep }
    }

    pub fn from_sets(mut sets: DisjointSets) -> Self {
        let len = sets.len();
        let mut least = vec![usize::MAX; len];
        for j in 0..len {
            let root = sets.find(j);
            least[root] = least[root].min(j);
        }
        let rep = (0..len).map(|j| least[sets.find(j)]).collect();
        Partition { rep }
    }

    pub fn ground_size(&self) -> usize {
        self.rep.len()
    }

    pub fn representative(&self, j: usize) -> usize {
        self.rep[j]
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.rep[a] == self.rep[b]
    }

    pub fn block_count(&self) -> usize {
        self.rep.iter().enumerate().filter(|&(j, &r)| j == r).count()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.rep.len()];
        for (j, &r) in self.rep.iter().enumerate() {
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(j);
        }
        out
    }

    /// `self` is contained in `other` as a relation.
    pub fn refines(&self, other: &Partition) -> bool {
        self.rep.len() == other.rep.len() && (0..self.rep.len()).all(|j| other.related(j, self.rep[j]))
    }

    /// Least upper bound in the partition lattice.
    pub fn join(&self, other: &Partition) -> Result<Partition, GroundMismatch> {
        if self.rep.len() != other.rep.len() {
            return Err(GroundMismatch(self.rep.len(), other.rep.len()));
        }
        let mut sets = DisjointSets::new(self.rep.len());
        for j in 0..self.rep.len() {
            sets.union(j, self.rep[j]);
            sets.union(j, other.rep[j]);
        }
        Ok(Partition::from_sets(sets))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (b, block) in self.blocks().iter().enumerate() {
            if b > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (i, j) in block.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", j + 1)?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}
