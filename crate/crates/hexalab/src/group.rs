//! Finite groups used by the Cayley-graph, Patterson and interval-table
//! builders: products of cyclic groups and small symmetric groups.
//!
//! Elements are plain `usize` indices; cyclic products use mixed-radix
//! encoding and symmetric groups use lexicographic (Lehmer) ranking.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("cyclic factors must all be at least 1")]
    EmptyFactor,
    #[error("symmetric groups are supported up to S(6), requested S({0})")]
    SymmetricTooLarge(u32),
    #[error("element {0} out of range for a group of order {1}")]
    ElementOutOfRange(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Group {
    /// `Z/n1 x ... x Z/nk`, elements encoded most significant factor first.
    CyclicProduct(Vec<u32>),
    /// `S(n)` for `n <= 6`, elements ranked lexicographically.
    Symmetric(u32),
}

impl Group {
    pub fn cyclic(n: u32) -> Self {
        Group::CyclicProduct(vec![n])
    }

    pub fn cyclic_product(factors: Vec<u32>) -> Result<Self, GroupError> {
        if factors.is_empty() || factors.contains(&0) {
            return Err(GroupError::EmptyFactor);
        }
        Ok(Group::CyclicProduct(factors))
    }

    pub fn symmetric(n: u32) -> Result<Self, GroupError> {
        if n == 0 || n > 6 {
            return Err(GroupError::SymmetricTooLarge(n));
        }
        Ok(Group::Symmetric(n))
    }

    pub fn order(&self) -> usize {
        match self {
            Group::CyclicProduct(f) => f.iter().map(|&n| n as usize).product(),
            Group::Symmetric(n) => (1..=*n as usize).product(),
        }
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            Group::CyclicProduct(factors) => {
                let xa = decode(factors, a);
                let xb = decode(factors, b);
                let sum: Vec<u32> = xa
                    .iter()
                    .zip(&xb)
                    .zip(factors)
                    .map(|((&u, &v), &n)| (u + v) % n)
                    .collect();
                encode(factors, &sum)
            }
            Group::Symmetric(n) => {
                let pa = unrank(*n, a);
                let pb = unrank(*n, b);
                // composition: (a * b)(i) = a(b(i))
                let composed: Vec<u8> = (0..*n as usize).map(|i| pa[pb[i] as usize]).collect();
                rank(&composed)
            }
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        match self {
            Group::CyclicProduct(factors) => {
                let xa = decode(factors, a);
                let neg: Vec<u32> = xa
                    .iter()
                    .zip(factors)
                    .map(|(&u, &n)| (n - u) % n)
                    .collect();
                encode(factors, &neg)
            }
            Group::Symmetric(n) => {
                let pa = unrank(*n, a);
                let mut inv = vec![0u8; *n as usize];
                for (i, &v) in pa.iter().enumerate() {
                    inv[v as usize] = i as u8;
                }
                rank(&inv)
            }
        }
    }

    pub fn label(&self, a: usize) -> String {
        match self {
            Group::CyclicProduct(factors) => decode(factors, a)
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(","),
            Group::Symmetric(n) => unrank(*n, a)
                .iter()
                .map(|v| v.to_string())
                .collect::<String>(),
        }
    }

    /// Element index for a coordinate tuple of a cyclic product.
    pub fn element_from_coords(&self, coords: &[i64]) -> Result<usize, GroupError> {
        match self {
            Group::CyclicProduct(factors) => {
                if coords.len() != factors.len() {
                    return Err(GroupError::ElementOutOfRange(coords.len(), factors.len()));
                }
                let reduced: Vec<u32> = coords
                    .iter()
                    .zip(factors)
                    .map(|(&c, &n)| c.rem_euclid(n as i64) as u32)
                    .collect();
                Ok(encode(factors, &reduced))
            }
            Group::Symmetric(_) => Err(GroupError::ElementOutOfRange(0, self.order())),
        }
    }

    /// All transpositions of a symmetric group, as element indices.
    pub fn transpositions(&self) -> Vec<usize> {
        match self {
            Group::Symmetric(n) => {
                let n = *n as usize;
                let mut out = Vec::new();
                for i in 0..n {
                    for j in (i + 1)..n {
                        let mut perm: Vec<u8> = (0..n as u8).collect();
                        perm.swap(i, j);
                        out.push(rank(&perm));
                    }
                }
                out
            }
            Group::CyclicProduct(_) => Vec::new(),
        }
    }
}

fn decode(factors: &[u32], mut index: usize) -> Vec<u32> {
    let mut coords = vec![0u32; factors.len()];
    for (slot, &n) in coords.iter_mut().zip(factors).rev() {
        *slot = (index % n as usize) as u32;
        index /= n as usize;
    }
    coords
}

fn encode(factors: &[u32], coords: &[u32]) -> usize {
    let mut index = 0usize;
    for (&c, &n) in coords.iter().zip(factors) {
        index = index * n as usize + c as usize;
    }
    index
}

/// Lexicographic rank of a permutation via its Lehmer code.
fn rank(perm: &[u8]) -> usize {
    let n = perm.len();
    let mut rank = 0usize;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&v| v < perm[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

fn unrank(n: u32, mut index: usize) -> Vec<u8> {
    let n = n as usize;
    let mut digits = vec![0usize; n];
    for i in (0..n).rev() {
        digits[i] = index % (n - i);
        index /= n - i;
    }
    let mut pool: Vec<u8> = (0..n as u8).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}
