//! The normalized reduced cone `P_k`: its `k + 1` vertices, the `2^k` open
//! faces, face classification of reduced vectors, interior sampling, and
//! the representability test.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Signed;
use rand::Rng;

use crate::cremona::{self, reduce_form};
use crate::error::{Error, Result};
use crate::lattice::{check_k, rat, rat_int, Rational, SymplecticVector};
use crate::roots::simple_roots;

/// An open face of `P_k`, named by the set of simple roots with positive
/// area. The face is the interior of the hull of the monotone vertex `M`
/// and the vertices `G_i` for `i` in the positive set; letters run
/// `G_1 = O`, `G_2 = A`, `G_3 = B`, ...
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceLabel {
    k: usize,
    positive: BTreeSet<usize>,
}

impl FaceLabel {
    pub fn new(k: usize, positive: BTreeSet<usize>) -> Result<Self> {
        check_k(k, 3, 8)?;
        if let Some(&bad) = positive.iter().find(|&&i| i < 1 || i > k) {
            return Err(Error::BadFaceLabel(format!("index {bad} outside 1..={k}")));
        }
        Ok(FaceLabel { k, positive })
    }

    pub fn from_indices(k: usize, indices: &[usize]) -> Result<Self> {
        FaceLabel::new(k, indices.iter().copied().collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn positive_set(&self) -> &BTreeSet<usize> {
        &self.positive
    }

    pub fn dimension(&self) -> usize {
        self.positive.len()
    }

    pub fn is_monotone(&self) -> bool {
        self.positive.is_empty()
    }

    pub fn contains_letter(&self, letter: char) -> bool {
        self.positive.iter().any(|&i| vertex_letter(i) == letter)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "label": self.to_string(),
            "positive_set": self.positive.iter().collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for FaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M")?;
        for &i in &self.positive {
            write!(f, "{}", vertex_letter(i))?;
        }
        Ok(())
    }
}

pub fn vertex_letter(i: usize) -> char {
    if i == 1 {
        'O'
    } else {
        char::from(b'A' + i as u8 - 2)
    }
}

/// All `2^k` face labels, ordered by dimension then lexicographically.
pub fn all_labels(k: usize) -> Result<Vec<FaceLabel>> {
    check_k(k, 3, 8)?;
    let mut out = Vec::with_capacity(1 << k);
    for p in 0..=k {
        let mut stack: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..p {
            let mut next = Vec::new();
            for prefix in stack {
                let lo = prefix.last().map_or(1, |&x| x + 1);
                for i in lo..=k {
                    let mut v = prefix.clone();
                    v.push(i);
                    next.push(v);
                }
            }
            stack = next;
        }
        for set in stack {
            out.push(FaceLabel::from_indices(k, &set)?);
        }
    }
    Ok(out)
}

/// The monotone vertex `M_k = (1 | 1/3, ..., 1/3)`.
pub fn monotone_vertex(k: usize) -> Result<SymplecticVector> {
    check_k(k, 3, 8)?;
    SymplecticVector::monotone(k)
}

/// Vertex `G_i`: the origin for `i = 1`, `(1, 0, ...)` for `i = 2`,
/// `(1/2, 1/2, 0, ...)` for `i = 3`, and `i - 1` thirds for `i >= 4`.
pub fn g_vertex(k: usize, i: usize) -> Result<SymplecticVector> {
    check_k(k, 3, 8)?;
    if i < 1 || i > k {
        return Err(Error::BadFaceLabel(format!("no vertex G_{i} for k = {k}")));
    }
    let mut c = vec![rat_int(0); k];
    match i {
        1 => {}
        2 => c[0] = rat_int(1),
        3 => {
            c[0] = rat(1, 2);
            c[1] = rat(1, 2);
        }
        _ => {
            for slot in c.iter_mut().take(i - 1) {
                *slot = rat(1, 3);
            }
        }
    }
    SymplecticVector::new(rat_int(1), c)
}

/// The `k + 1` vertices `[M, G_1, ..., G_k]` of `P_k`.
pub fn vertices(k: usize) -> Result<Vec<SymplecticVector>> {
    let mut out = vec![monotone_vertex(k)?];
    for i in 1..=k {
        out.push(g_vertex(k, i)?);
    }
    Ok(out)
}

/// The open face containing a strictly reduced vector: the set of simple
/// roots with positive area (the rest pair to exactly zero).
pub fn classify_face(w: &SymplecticVector) -> Result<FaceLabel> {
    let k = w.k();
    check_k(k, 3, 8)?;
    if let Some(violation) = cremona::reduced_violation(w) {
        return Err(Error::NotReduced(violation));
    }
    let mut positive = BTreeSet::new();
    for (idx, l) in simple_roots(k)?.iter().enumerate() {
        let area = w.area(l)?;
        if area.is_positive() {
            positive.insert(idx + 1);
        } else if area.is_negative() {
            return Err(Error::Internal(format!(
                "reduced vector {w} pairs negatively with a simple root"
            )));
        }
    }
    FaceLabel::new(k, positive)
}

/// A deterministic interior point of the face: the centroid of its
/// vertex set.
pub fn sample_face(label: &FaceLabel) -> Result<SymplecticVector> {
    weighted_point(label, &vec![rat_int(1); label.dimension() + 1])
}

/// A random interior point, as a random positive rational convex
/// combination of the face's vertices.
pub fn sample_face_with_rng<R: Rng + ?Sized>(
    label: &FaceLabel,
    rng: &mut R,
) -> Result<SymplecticVector> {
    let weights: Vec<Rational> = (0..=label.dimension())
        .map(|_| rat_int(rng.gen_range(1..=9)))
        .collect();
    weighted_point(label, &weights)
}

fn weighted_point(label: &FaceLabel, weights: &[Rational]) -> Result<SymplecticVector> {
    let k = label.k();
    let mut verts = vec![monotone_vertex(k)?];
    for &i in label.positive_set() {
        verts.push(g_vertex(k, i)?);
    }
    debug_assert_eq!(verts.len(), weights.len());
    let total: Rational = weights.iter().sum();
    let mut c = vec![rat_int(0); k];
    for (v, wt) in verts.iter().zip(weights) {
        for (acc, ci) in c.iter_mut().zip(v.c()) {
            *acc += ci * wt;
        }
    }
    Ok(SymplecticVector::new(total, c)?.normalized())
}

/// Whether the class of `w` is realized by a symplectic form: reduce, then
/// require strict reducedness, with the extra `nu > c_1 + c_2` condition
/// when `k <= 2`.
pub fn is_representable(w: &SymplecticVector) -> bool {
    if !w.square().is_positive() {
        return false;
    }
    let Ok(trace) = reduce_form(w) else {
        return false;
    };
    let out = trace.output;
    if !cremona::is_reduced_form(&out) {
        return false;
    }
    if out.k() == 2 {
        return *out.nu() > &out.c()[0] + &out.c()[1];
    }
    true
}
