//! Root data and finite Weyl groups.
//!
//! A [`RootDatum`] is a Cartan matrix together with its type label and rank.
//! Weights live in the fundamental-weight basis: a weight is a `Vec<i32>` of
//! coordinates, the simple root `alpha_i` has coordinates equal to the i-th
//! column of the Cartan matrix, and the simple reflection acts by
//! `s_i(lambda) = lambda - lambda_i * alpha_i`.
//!
//! A [`WeylGroup`] enumerates the full group once, breadth-first, deduplicating
//! elements by their integer action matrix. Every element is identified by a
//! [`WeylElem`] index into the enumeration; indices are assigned in a canonical
//! order (by length, then lexicographically by the minimal reduced word), so
//! iteration over elements is deterministic. The group also precomputes
//! multiplication by generators, inverses, minimal reduced words, the Demazure
//! (star) product, and Bruhat order.
//!
//! Generator indices are 1-based everywhere in the public interface, matching
//! the usual notation `s_1, ..., s_n`.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// Default ceiling on the group order during enumeration.
///
/// The largest supported standard group is B4/C4 with 384 elements; the
/// ceiling leaves headroom for raw Cartan matrices of comparable size.
pub const DEFAULT_GROUP_CEILING: usize = 1152;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootDataError {
    #[error("unknown root system type `{0}`")]
    UnknownType(String),
    #[error("rank {rank} is out of range for type {label}")]
    RankOutOfRange { label: TypeLabel, rank: usize },
    #[error("generator index {index} is out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("Weyl group enumeration exceeded the ceiling of {ceiling} elements")]
    GroupTooLarge { ceiling: usize },
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
}

/// Label of a standard finite type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    G,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeLabel::A => "A",
            TypeLabel::B => "B",
            TypeLabel::C => "C",
            TypeLabel::D => "D",
            TypeLabel::G => "G",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for TypeLabel {
    type Err = RootDataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(TypeLabel::A),
            "B" | "b" => Ok(TypeLabel::B),
            "C" | "c" => Ok(TypeLabel::C),
            "D" | "d" => Ok(TypeLabel::D),
            "G" | "g" => Ok(TypeLabel::G),
            other => Err(RootDataError::UnknownType(other.to_string())),
        }
    }
}

/// A Cartan matrix with its type label and rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDatum", into = "RawDatum")]
pub struct RootDatum {
    label: TypeLabel,
    rank: usize,
    cartan: Vec<Vec<i32>>,
}

/// Serialization shape: `{"type":"A","rank":2,"cartan":[[2,-1],[-1,2]]}`.
#[derive(Serialize, Deserialize)]
struct RawDatum {
    #[serde(rename = "type")]
    label: TypeLabel,
    rank: usize,
    cartan: Vec<Vec<i32>>,
}

impl TryFrom<RawDatum> for RootDatum {
    type Error = RootDataError;

    fn try_from(raw: RawDatum) -> Result<Self, Self::Error> {
        if raw.rank != raw.cartan.len() {
            return Err(RootDataError::InvalidCartan(format!(
                "rank {} does not match matrix size {}",
                raw.rank,
                raw.cartan.len()
            )));
        }
        RootDatum::from_cartan(raw.label, raw.cartan)
    }
}

impl From<RootDatum> for RawDatum {
    fn from(d: RootDatum) -> Self {
        RawDatum { label: d.label, rank: d.rank, cartan: d.cartan }
    }
}

impl RootDatum {
    /// Standard datum of the given type and rank.
    ///
    /// Supported ranks: A 1..=4, B 2..=4, C 2..=4, D 3..=4, G exactly 2.
    pub fn standard(label: TypeLabel, rank: usize) -> Result<Self, RootDataError> {
        let ok = match label {
            TypeLabel::A => (1..=4).contains(&rank),
            TypeLabel::B | TypeLabel::C => (2..=4).contains(&rank),
            TypeLabel::D => (3..=4).contains(&rank),
            TypeLabel::G => rank == 2,
        };
        if !ok {
            return Err(RootDataError::RankOutOfRange { label, rank });
        }
        let mut c = vec![vec![0i32; rank]; rank];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let chain = |c: &mut Vec<Vec<i32>>, upto: usize| {
            for i in 0..upto {
                c[i][i + 1] = -1;
                c[i + 1][i] = -1;
            }
        };
        match label {
            TypeLabel::A => chain(&mut c, rank - 1),
            TypeLabel::B => {
                chain(&mut c, rank - 1);
                c[rank - 1][rank - 2] = -2;
            }
            TypeLabel::C => {
                chain(&mut c, rank - 1);
                c[rank - 2][rank - 1] = -2;
            }
            TypeLabel::D => {
                chain(&mut c, rank - 2);
                c[rank - 3][rank - 1] = -1;
                c[rank - 1][rank - 3] = -1;
            }
            TypeLabel::G => {
                c[0][1] = -1;
                c[1][0] = -3;
            }
        }
        Ok(RootDatum { label, rank, cartan: c })
    }

    /// Datum from a raw Cartan matrix, for extensions beyond the standard
    /// table. Checks the generalized Cartan conditions and symmetrizability of
    /// zero patterns; finiteness is only enforced later, when enumeration hits
    /// the group ceiling.
    pub fn from_cartan(label: TypeLabel, cartan: Vec<Vec<i32>>) -> Result<Self, RootDataError> {
        let rank = cartan.len();
        if rank == 0 {
            return Err(RootDataError::InvalidCartan("empty matrix".into()));
        }
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != rank {
                return Err(RootDataError::InvalidCartan("matrix is not square".into()));
            }
            if row[i] != 2 {
                return Err(RootDataError::InvalidCartan(format!(
                    "diagonal entry ({i},{i}) is {} instead of 2",
                    row[i]
                )));
            }
            for (j, &e) in row.iter().enumerate() {
                if i != j {
                    if e > 0 {
                        return Err(RootDataError::InvalidCartan(format!(
                            "off-diagonal entry ({i},{j}) is positive"
                        )));
                    }
                    if (e == 0) != (cartan[j][i] == 0) {
                        return Err(RootDataError::InvalidCartan(format!(
                            "entries ({i},{j}) and ({j},{i}) disagree about being zero"
                        )));
                    }
                }
            }
        }
        Ok(RootDatum { label, rank, cartan })
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Coordinates of the simple root `alpha_i` (1-based `i`) in the
    /// fundamental-weight basis: the i-th column of the Cartan matrix.
    pub fn simple_root(&self, i: usize) -> Result<Vec<i32>, RootDataError> {
        self.check_index(i)?;
        Ok((0..self.rank).map(|k| self.cartan[k][i - 1]).collect())
    }

    /// The half-sum-of-positive-roots analogue: all fundamental coordinates 1.
    pub fn rho(&self) -> Vec<i32> {
        vec![1; self.rank]
    }

    /// Simple reflection `s_i(lambda) = lambda - lambda_i * alpha_i`.
    pub fn reflect(&self, i: usize, weight: &[i32]) -> Result<Vec<i32>, RootDataError> {
        self.check_index(i)?;
        assert_eq!(weight.len(), self.rank, "weight has wrong rank");
        let coeff = weight[i - 1];
        Ok((0..self.rank)
            .map(|k| weight[k] - coeff * self.cartan[k][i - 1])
            .collect())
    }

    fn check_index(&self, i: usize) -> Result<(), RootDataError> {
        if i == 0 || i > self.rank {
            return Err(RootDataError::IndexOutOfRange { index: i, rank: self.rank });
        }
        Ok(())
    }

    /// Short name like `A2` used in cache paths and reports.
    pub fn name(&self) -> String {
        format!("{}{}", self.label, self.rank)
    }
}

/// Index of a Weyl group element within its group's canonical enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElem(pub u32);

impl WeylElem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A fully enumerated finite Weyl group.
pub struct WeylGroup {
    datum: RootDatum,
    /// Row-major `rank x rank` action matrices in the fundamental basis.
    matrices: Vec<Vec<i32>>,
    lengths: Vec<u32>,
    /// Lexicographically minimal reduced words, 1-based letters.
    words: Vec<Vec<usize>>,
    /// `right[w][i0]` is the index of `w * s_{i0+1}`.
    right: Vec<Vec<u32>>,
    /// `left[w][i0]` is the index of `s_{i0+1} * w`.
    left: Vec<Vec<u32>>,
    inverses: Vec<u32>,
    /// `bruhat[w]` is a bitset over element indices `u` with `u <= w`.
    bruhat: Vec<Vec<u64>>,
    w0: WeylElem,
}

impl fmt::Debug for WeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeylGroup")
            .field("datum", &self.datum.name())
            .field("size", &self.size())
            .finish()
    }
}

impl WeylGroup {
    pub fn new(datum: RootDatum) -> Result<Self, RootDataError> {
        Self::with_ceiling(datum, DEFAULT_GROUP_CEILING)
    }

    pub fn with_ceiling(datum: RootDatum, ceiling: usize) -> Result<Self, RootDataError> {
        let rank = datum.rank();
        let gen_matrices: Vec<Vec<i32>> = (1..=rank)
            .map(|i| {
                let mut m = identity_matrix(rank);
                // Column i-1 of s_i is e_i - alpha_i.
                for k in 0..rank {
                    m[k * rank + (i - 1)] -= datum.cartan()[k][i - 1];
                }
                m
            })
            .collect();

        // Breadth-first enumeration from the identity, deduplicating by matrix.
        let mut matrices = vec![identity_matrix(rank)];
        let mut by_matrix: HashMap<Vec<i32>, u32> = HashMap::new();
        by_matrix.insert(matrices[0].clone(), 0);
        let mut lengths = vec![0u32];
        let mut right: Vec<Vec<u32>> = Vec::new();
        let mut frontier = vec![0u32];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &w in &frontier {
                let mut row = vec![0u32; rank];
                for (i0, gen) in gen_matrices.iter().enumerate() {
                    let product = mat_mul(rank, &matrices[w as usize], gen);
                    let idx = match by_matrix.get(&product) {
                        Some(&idx) => idx,
                        None => {
                            let idx = matrices.len() as u32;
                            if matrices.len() >= ceiling {
                                return Err(RootDataError::GroupTooLarge { ceiling });
                            }
                            by_matrix.insert(product.clone(), idx);
                            matrices.push(product);
                            lengths.push(lengths[w as usize] + 1);
                            next.push(idx);
                            idx
                        }
                    };
                    row[i0] = idx;
                }
                if right.len() <= w as usize {
                    right.resize(w as usize + 1, Vec::new());
                }
                right[w as usize] = row;
            }
            frontier = next;
        }
        let size = matrices.len();
        // The BFS loop above fills `right` rows as it drains each frontier, so
        // rows for the last layer still need computing.
        for w in 0..size {
            if right[w].is_empty() {
                let mut row = vec![0u32; rank];
                for (i0, gen) in gen_matrices.iter().enumerate() {
                    let product = mat_mul(rank, &matrices[w], gen);
                    row[i0] = by_matrix[&product];
                }
                right[w] = row;
            }
        }

        let left: Vec<Vec<u32>> = (0..size)
            .map(|w| {
                (0..rank)
                    .map(|i0| by_matrix[&mat_mul(rank, &gen_matrices[i0], &matrices[w])])
                    .collect()
            })
            .collect();

        // Minimal reduced word, built by repeatedly stripping the smallest
        // left descent; elements are processed by increasing length so each
        // recursion target is already done.
        let mut order: Vec<u32> = (0..size as u32).collect();
        order.sort_by_key(|&w| lengths[w as usize]);
        let mut words: Vec<Vec<usize>> = vec![Vec::new(); size];
        for &w in &order {
            let w = w as usize;
            if lengths[w] == 0 {
                continue;
            }
            let i0 = (0..rank)
                .find(|&i0| lengths[left[w][i0] as usize] < lengths[w])
                .expect("non-identity element has a left descent");
            let mut word = vec![i0 + 1];
            word.extend_from_slice(&words[left[w][i0] as usize]);
            words[w] = word;
        }

        // Re-index canonically: by length, then by minimal word.
        let mut order: Vec<u32> = (0..size as u32).collect();
        order.sort_by(|&a, &b| {
            let (a, b) = (a as usize, b as usize);
            lengths[a].cmp(&lengths[b]).then_with(|| words[a].cmp(&words[b]))
        });
        let mut new_of_old = vec![0u32; size];
        for (new, &old) in order.iter().enumerate() {
            new_of_old[old as usize] = new as u32;
        }
        let permute = |v: Vec<u32>| -> Vec<u32> { v.into_iter().map(|x| new_of_old[x as usize]).collect() };
        let matrices: Vec<Vec<i32>> = order.iter().map(|&o| matrices[o as usize].clone()).collect();
        let lengths: Vec<u32> = order.iter().map(|&o| lengths[o as usize]).collect();
        let words: Vec<Vec<usize>> = order.iter().map(|&o| words[o as usize].clone()).collect();
        let right: Vec<Vec<u32>> = order.iter().map(|&o| permute(right[o as usize].clone())).collect();
        let left: Vec<Vec<u32>> = order.iter().map(|&o| permute(left[o as usize].clone())).collect();

        // Inverses: fold the reversed word of each element.
        let inverses: Vec<u32> = (0..size)
            .map(|w| {
                let mut acc = 0u32;
                for &i in words[w].iter().rev() {
                    acc = right[acc as usize][i - 1];
                }
                acc
            })
            .collect();

        let max_len = *lengths.iter().max().expect("nonempty group");
        let longest: Vec<usize> = (0..size).filter(|&w| lengths[w] == max_len).collect();
        assert_eq!(longest.len(), 1, "finite Weyl group has a unique longest element");
        let w0 = WeylElem(longest[0] as u32);

        // Bruhat order by star-subword closure along each element's word.
        let blocks = size.div_ceil(64);
        let mut bruhat: Vec<Vec<u64>> = vec![vec![0u64; blocks]; size];
        let mut group = WeylGroup {
            datum,
            matrices,
            lengths,
            words,
            right,
            left,
            inverses,
            bruhat: Vec::new(),
            w0,
        };
        for w in 0..size {
            let word = group.words[w].clone();
            let mut closure: Vec<u32> = vec![0];
            let mut member = vec![false; size];
            member[0] = true;
            for &i in &word {
                for k in 0..closure.len() {
                    let p = closure[k];
                    let q = group.star_right(WeylElem(p), i).0;
                    if !member[q as usize] {
                        member[q as usize] = true;
                        closure.push(q);
                    }
                }
            }
            for u in closure {
                bruhat[w][(u / 64) as usize] |= 1u64 << (u % 64);
            }
        }
        group.bruhat = bruhat;
        Ok(group)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn size(&self) -> usize {
        self.matrices.len()
    }

    pub fn identity(&self) -> WeylElem {
        WeylElem(0)
    }

    pub fn w0(&self) -> WeylElem {
        self.w0
    }

    /// All elements in canonical order (length, then minimal word).
    pub fn elements(&self) -> impl Iterator<Item = WeylElem> + '_ {
        (0..self.size() as u32).map(WeylElem)
    }

    pub fn length(&self, w: WeylElem) -> usize {
        self.lengths[w.index()] as usize
    }

    /// Lexicographically minimal reduced word (1-based letters).
    pub fn word(&self, w: WeylElem) -> &[usize] {
        &self.words[w.index()]
    }

    /// Row-major action matrix of `w` in the fundamental-weight basis.
    pub fn matrix(&self, w: WeylElem) -> &[i32] {
        &self.matrices[w.index()]
    }

    /// Apply `w` to a weight.
    pub fn act(&self, w: WeylElem, weight: &[i32]) -> Vec<i32> {
        let rank = self.rank();
        assert_eq!(weight.len(), rank, "weight has wrong rank");
        let m = self.matrix(w);
        (0..rank)
            .map(|k| (0..rank).map(|j| m[k * rank + j] * weight[j]).sum())
            .collect()
    }

    /// `w * s_i` for a 1-based generator index.
    pub fn right_mul(&self, w: WeylElem, i: usize) -> WeylElem {
        WeylElem(self.right[w.index()][i - 1])
    }

    /// `s_i * w` for a 1-based generator index.
    pub fn left_mul(&self, i: usize, w: WeylElem) -> WeylElem {
        WeylElem(self.left[w.index()][i - 1])
    }

    pub fn inverse(&self, w: WeylElem) -> WeylElem {
        WeylElem(self.inverses[w.index()])
    }

    /// Group product `u * v`.
    pub fn product(&self, u: WeylElem, v: WeylElem) -> WeylElem {
        let mut acc = u;
        for &i in self.word(v) {
            acc = self.right_mul(acc, i);
        }
        acc
    }

    /// Fold a word (1-based letters, not necessarily reduced) into an element.
    pub fn elem_from_word(&self, word: &[usize]) -> Result<WeylElem, RootDataError> {
        let mut acc = self.identity();
        for &i in word {
            if i == 0 || i > self.rank() {
                return Err(RootDataError::IndexOutOfRange { index: i, rank: self.rank() });
            }
            acc = self.right_mul(acc, i);
        }
        Ok(acc)
    }

    /// Does the word multiply out with length equal to its letter count?
    pub fn is_reduced(&self, word: &[usize]) -> bool {
        match self.elem_from_word(word) {
            Ok(w) => self.length(w) == word.len(),
            Err(_) => false,
        }
    }

    /// One step of the Demazure product: `w * s_i` if that is longer, else `w`.
    pub fn star_right(&self, w: WeylElem, i: usize) -> WeylElem {
        let ws = self.right_mul(w, i);
        if self.length(ws) > self.length(w) {
            ws
        } else {
            w
        }
    }

    /// The Demazure (star) product, folding a reduced word of `v` onto `u`.
    pub fn demazure_product(&self, u: WeylElem, v: WeylElem) -> WeylElem {
        let mut acc = u;
        for &i in self.word(v) {
            acc = self.star_right(acc, i);
        }
        acc
    }

    /// Demazure product of an arbitrary word.
    pub fn demazure_product_word(&self, word: &[usize]) -> Result<WeylElem, RootDataError> {
        let mut acc = self.identity();
        for &i in word {
            if i == 0 || i > self.rank() {
                return Err(RootDataError::IndexOutOfRange { index: i, rank: self.rank() });
            }
            acc = self.star_right(acc, i);
        }
        Ok(acc)
    }

    /// Bruhat order `u <= w`.
    pub fn bruhat_leq(&self, u: WeylElem, w: WeylElem) -> bool {
        let u = u.0;
        self.bruhat[w.index()][(u / 64) as usize] >> (u % 64) & 1 == 1
    }

    /// Elements `u <= w`, in canonical order.
    pub fn bruhat_lower(&self, w: WeylElem) -> Vec<WeylElem> {
        self.elements().filter(|&u| self.bruhat_leq(u, w)).collect()
    }

    /// Elements `v >= w`, in canonical order.
    pub fn bruhat_upper(&self, w: WeylElem) -> Vec<WeylElem> {
        self.elements().filter(|&v| self.bruhat_leq(w, v)).collect()
    }

    /// All pairs `(u, v)` with `u * v = w` under the Demazure product,
    /// ordered by canonical index of `u`, then of `v`.
    pub fn star_factorizations(&self, w: WeylElem) -> Vec<(WeylElem, WeylElem)> {
        let mut out = Vec::new();
        for u in self.elements() {
            for v in self.elements() {
                if self.demazure_product(u, v) == w {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// 1-based generator indices `i` with `l(w s_i) < l(w)`.
    pub fn right_descents(&self, w: WeylElem) -> Vec<usize> {
        (1..=self.rank())
            .filter(|&i| self.length(self.right_mul(w, i)) < self.length(w))
            .collect()
    }

    /// Every reduced word of `w`, in lexicographic order.
    pub fn reduced_words(&self, w: WeylElem) -> Vec<Vec<usize>> {
        if self.length(w) == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in 1..=self.rank() {
            let sw = self.left_mul(i, w);
            if self.length(sw) < self.length(w) {
                for mut tail in self.reduced_words(sw) {
                    tail.insert(0, i);
                    out.push(tail);
                }
            }
        }
        out
    }

    /// Format an element as its minimal word, e.g. `s1 s2 s1`, or `e`.
    pub fn describe(&self, w: WeylElem) -> String {
        let word = self.word(w);
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" ")
        }
    }
}

fn identity_matrix(rank: usize) -> Vec<i32> {
    let mut m = vec![0i32; rank * rank];
    for k in 0..rank {
        m[k * rank + k] = 1;
    }
    m
}

fn mat_mul(rank: usize, a: &[i32], b: &[i32]) -> Vec<i32> {
    let mut out = vec![0i32; rank * rank];
    for i in 0..rank {
        for k in 0..rank {
            let aik = a[i * rank + k];
            if aik == 0 {
                continue;
            }
            for j in 0..rank {
                out[i * rank + j] += aik * b[k * rank + j];
            }
        }
    }
    out
}
