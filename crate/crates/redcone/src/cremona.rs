//! Reflections and the Cremona reduction of positive-square classes, plus
//! the reduced / packing / balanced predicates on symplectic vectors and
//! the explicit balanced-to-packing transform.

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::lattice::{format_rational, rat_int, HomologyClass, Rational, SymplecticVector};

/// One lattice move realized by an orientation-preserving diffeomorphism:
/// a permutation of the `E_i`, a sign flip `E_i -> -E_i`, or the reflection
/// in `H - E_i - E_j - E_l`. Indices are 1-based names of the `E_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// `perm[pos]` is the old index whose entry lands at `pos` (1-based).
    Perm(Vec<usize>),
    Flip(usize),
    Cremona(usize, usize, usize),
}

impl Move {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Move::Perm(p) => serde_json::json!({ "perm": p }),
            Move::Flip(i) => serde_json::json!({ "flip": i }),
            Move::Cremona(i, j, l) => serde_json::json!({ "cremona": [i, j, l] }),
        }
    }
}

impl std::fmt::Display for Move {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Move::Perm(p) => {
                let parts: Vec<String> = p.iter().map(|i| i.to_string()).collect();
                write!(f, "perm({})", parts.join(","))
            }
            Move::Flip(i) => write!(f, "flip(E{i})"),
            Move::Cremona(i, j, l) => write!(f, "cremona({i},{j},{l})"),
        }
    }
}

fn check_perm(p: &[usize], k: usize) -> Result<()> {
    let mut seen = vec![false; k];
    if p.len() != k {
        return Err(Error::BadLength { want: k, got: p.len() });
    }
    for &i in p {
        if i < 1 || i > k || seen[i - 1] {
            return Err(Error::Parse(format!("bad permutation {p:?}")));
        }
        seen[i - 1] = true;
    }
    Ok(())
}

fn cremona_root(k: usize, i: usize, j: usize, l: usize) -> Result<HomologyClass> {
    if i == j || j == l || i == l || i < 1 || j < 1 || l < 1 || i > k || j > k || l > k {
        return Err(Error::Parse(format!("bad Cremona triple ({i},{j},{l})")));
    }
    let mut b = vec![0i64; k];
    b[i - 1] = 1;
    b[j - 1] = 1;
    b[l - 1] = 1;
    HomologyClass::from_parts(1, &b)
}

/// Reflection `s_r(A) = A + <A, r> r` in a root `r`.
pub fn reflect(class: &HomologyClass, root: &HomologyClass) -> Result<HomologyClass> {
    if root.square() != -2 || root.k_pairing() != 0 {
        return Err(Error::NotARoot(root.to_string()));
    }
    let d = class.pairing(root)?;
    class.add(&root.scaled(d))
}

/// The induced action on area vectors: `omega'(X) = omega(s_r X)`.
pub fn reflect_form(w: &SymplecticVector, root: &HomologyClass) -> Result<SymplecticVector> {
    if root.square() != -2 || root.k_pairing() != 0 {
        return Err(Error::NotARoot(root.to_string()));
    }
    let k = w.k();
    if k != root.k() {
        return Err(Error::DimensionMismatch(k, root.k()));
    }
    let t = w.area(root)?;
    let h = HomologyClass::h(k)?;
    let nu = w.nu() + &t * rat_int(h.pairing(root)?);
    let mut c = Vec::with_capacity(k);
    for i in 1..=k {
        let ei = HomologyClass::e(k, i)?;
        c.push(&w.c()[i - 1] + &t * rat_int(ei.pairing(root)?));
    }
    SymplecticVector::new(nu, c)
}

pub fn apply_move(class: &HomologyClass, mv: &Move) -> Result<HomologyClass> {
    let k = class.k();
    match mv {
        Move::Perm(p) => {
            check_perm(p, k)?;
            let b: Vec<i64> = p.iter().map(|&i| class.b()[i - 1]).collect();
            HomologyClass::from_parts(class.a(), &b)
        }
        Move::Flip(i) => {
            if *i < 1 || *i > k {
                return Err(Error::BadLength { want: k, got: *i });
            }
            let mut b = class.b().to_vec();
            b[i - 1] = -b[i - 1];
            HomologyClass::from_parts(class.a(), &b)
        }
        Move::Cremona(i, j, l) => reflect(class, &cremona_root(k, *i, *j, *l)?),
    }
}

pub fn apply_move_form(w: &SymplecticVector, mv: &Move) -> Result<SymplecticVector> {
    let k = w.k();
    match mv {
        Move::Perm(p) => {
            check_perm(p, k)?;
            let c: Vec<Rational> = p.iter().map(|&i| w.c()[i - 1].clone()).collect();
            SymplecticVector::new(w.nu().clone(), c)
        }
        Move::Flip(i) => {
            if *i < 1 || *i > k {
                return Err(Error::BadLength { want: k, got: *i });
            }
            let mut c = w.c().to_vec();
            c[i - 1] = -c[i - 1].clone();
            SymplecticVector::new(w.nu().clone(), c)
        }
        Move::Cremona(i, j, l) => reflect_form(w, &cremona_root(k, *i, *j, *l)?),
    }
}

/// A replayable record of one reduction run. `input` is the class after
/// sign normalization (`a > 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub input: HomologyClass,
    pub moves: Vec<Move>,
    pub output: HomologyClass,
}

impl ReductionTrace {
    pub fn replay(&self) -> Result<HomologyClass> {
        let mut cur = self.input.clone();
        for mv in &self.moves {
            cur = apply_move(&cur, mv)?;
        }
        Ok(cur)
    }

    pub fn is_identity(&self) -> bool {
        self.moves.is_empty()
    }

    /// Image of the canonical class under the recorded move sequence.
    /// Permutations and Cremona reflections fix `K`; each flip of `E_i`
    /// moves it.
    pub fn transported_canonical(&self) -> Result<HomologyClass> {
        let mut cur = HomologyClass::canonical(self.input.k())?;
        for mv in &self.moves {
            cur = apply_move(&cur, mv)?;
        }
        Ok(cur)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "input": self.input.to_json(),
            "moves": self.moves.iter().map(Move::to_json).collect::<Vec<_>>(),
            "output": self.output.to_json(),
        })
    }
}

/// Like [`ReductionTrace`] but over symplectic vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormReductionTrace {
    pub input: SymplecticVector,
    pub moves: Vec<Move>,
    pub output: SymplecticVector,
}

impl FormReductionTrace {
    pub fn replay(&self) -> Result<SymplecticVector> {
        let mut cur = self.input.clone();
        for mv in &self.moves {
            cur = apply_move_form(&cur, mv)?;
        }
        Ok(cur)
    }

    pub fn is_identity(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "input": self.input.to_json(),
            "moves": self.moves.iter().map(Move::to_json).collect::<Vec<_>>(),
            "output": self.output.to_json(),
        })
    }
}

fn sort_perm_desc<T: Ord>(vals: &[T]) -> Option<Vec<usize>> {
    if vals.windows(2).all(|w| w[0] >= w[1]) {
        return None;
    }
    let mut idx: Vec<usize> = (1..=vals.len()).collect();
    idx.sort_by(|&a, &b| vals[b - 1].cmp(&vals[a - 1]));
    Some(idx)
}

/// Cremona reduction of a positive-square class. Uses only permutations,
/// sign flips on the `E_i`, and the reflection in `H - E_1 - E_2 - E_3`
/// applied to the three largest entries.
///
/// Termination: the reflection replaces `a` by `2a - (b_1 + b_2 + b_3)`,
/// strictly smaller since it is applied only when `a < b_1 + b_2 + b_3`;
/// it stays positive because `a^2 > b_1^2 + b_2^2 + b_3^2` gives
/// `b_1 + b_2 + b_3 < sqrt(3) a < 2a`. A strictly decreasing sequence of
/// positive integers stops.
pub fn reduce(class: &HomologyClass) -> Result<ReductionTrace> {
    let sq = class.square();
    if sq <= 0 {
        return Err(Error::NotPositiveSquare(sq));
    }
    let input = if class.a() < 0 { class.neg() } else { class.clone() };
    if input.a() == 0 {
        return Err(Error::DegenerateClass);
    }
    let k = input.k();
    let mut cur = input.clone();
    let mut moves = Vec::new();
    loop {
        for i in 1..=k {
            if cur.b()[i - 1] < 0 {
                let mv = Move::Flip(i);
                cur = apply_move(&cur, &mv)?;
                moves.push(mv);
            }
        }
        if let Some(p) = sort_perm_desc(cur.b()) {
            let mv = Move::Perm(p);
            cur = apply_move(&cur, &mv)?;
            moves.push(mv);
        }
        let b = cur.b();
        if k >= 3 && cur.a() < b[0] + b[1] + b[2] {
            let mv = Move::Cremona(1, 2, 3);
            cur = apply_move(&cur, &mv)?;
            moves.push(mv);
        } else {
            break;
        }
    }
    Ok(ReductionTrace {
        input,
        moves,
        output: cur,
    })
}

/// Same loop over exact rational area vectors. All moves are integral
/// linear maps, so every entry stays in `(1/D) Z` for the fixed common
/// denominator `D` of the input and the decreasing-`nu` argument still
/// terminates.
pub fn reduce_form(w: &SymplecticVector) -> Result<FormReductionTrace> {
    if !w.square().is_positive() {
        return Err(Error::FormNotPositiveSquare);
    }
    let k = w.k();
    let mut cur = w.clone();
    let mut moves = Vec::new();
    loop {
        for i in 1..=k {
            if cur.c()[i - 1].is_negative() {
                let mv = Move::Flip(i);
                cur = apply_move_form(&cur, &mv)?;
                moves.push(mv);
            }
        }
        if let Some(p) = sort_perm_desc(cur.c()) {
            let mv = Move::Perm(p);
            cur = apply_move_form(&cur, &mv)?;
            moves.push(mv);
        }
        if k >= 3 && *cur.nu() < cur.lambda() {
            let mv = Move::Cremona(1, 2, 3);
            cur = apply_move_form(&cur, &mv)?;
            moves.push(mv);
        } else {
            break;
        }
    }
    Ok(FormReductionTrace {
        input: w.clone(),
        moves,
        output: cur,
    })
}

/// First inequality of the strict reduced condition violated by `w`, if any:
/// `nu > c_1 >= ... >= c_k > 0` and `nu >= c_i + c_j + c_l` for all triples.
pub fn reduced_violation(w: &SymplecticVector) -> Option<String> {
    let k = w.k();
    let c = w.c();
    if w.nu() <= &c[0] {
        return Some(format!(
            "requires nu > c1, got {} <= {}",
            format_rational(w.nu()),
            format_rational(&c[0])
        ));
    }
    for i in 0..k - 1 {
        if c[i] < c[i + 1] {
            return Some(format!(
                "requires c{} >= c{}, got {} < {}",
                i + 1,
                i + 2,
                format_rational(&c[i]),
                format_rational(&c[i + 1])
            ));
        }
    }
    if !c[k - 1].is_positive() {
        return Some(format!(
            "requires c{k} > 0, got {}",
            format_rational(&c[k - 1])
        ));
    }
    if k >= 3 {
        let lambda = w.lambda();
        if *w.nu() < lambda {
            return Some(format!(
                "requires nu >= c1+c2+c3, got {} < {}",
                format_rational(w.nu()),
                format_rational(&lambda)
            ));
        }
    }
    None
}

/// Strict reduced test on a symplectic vector.
pub fn is_reduced_form(w: &SymplecticVector) -> bool {
    reduced_violation(w).is_none()
}

/// Boundary-relaxed reduced test on an integral class: entries sorted,
/// non-negative, `a >= b_1` and `a >= b_1 + b_2 + b_3`.
pub fn is_reduced_class(class: &HomologyClass) -> bool {
    let a = class.a();
    let b = class.b();
    let k = class.k();
    a > 0
        && b.windows(2).all(|w| w[0] >= w[1])
        && b[k - 1] >= 0
        && a >= b[0]
        && (k < 3 || a >= b[0] + b[1] + b[2])
}

/// Both strict packing inequalities: `c_i < nu/2` and `sum c_i < 2 nu`.
pub fn is_packing_form(w: &SymplecticVector) -> Result<bool> {
    if w.k() != 5 {
        return Err(Error::KOutOfRange(w.k(), 5, 5));
    }
    let half = w.nu() / rat_int(2);
    let sum: BigRational = w.c().iter().sum();
    Ok(w.c().iter().all(|ci| *ci < half) && sum < w.nu() * rat_int(2))
}

/// Whether some `c_i < c_{i+1} + c_{i+2}`, `i = 1..3`, holds. Requires a
/// reduced vector with `k = 5`; every non-balanced form lies in the open
/// top stratum.
pub fn is_balanced(w: &SymplecticVector) -> Result<bool> {
    if w.k() != 5 {
        return Err(Error::KOutOfRange(w.k(), 5, 5));
    }
    if let Some(violation) = reduced_violation(w) {
        return Err(Error::NotReduced(violation));
    }
    Ok(balanced_index(w).is_some())
}

fn balanced_index(w: &SymplecticVector) -> Option<usize> {
    let c = w.c();
    (1..=3).find(|&i| c[i - 1] < &c[i] + &c[i + 1])
}

/// Applies the Cremona reflection in `H - E_i - E_{i+1} - E_{i+2}` at the
/// smallest balanced index; the image is a packing form after `nu = 1`
/// normalization.
pub fn balanced_to_packing(w: &SymplecticVector) -> Result<(SymplecticVector, Move)> {
    match is_balanced(w)? {
        true => balanced_to_packing_at(w, balanced_index(w).expect("balanced")),
        false => Err(Error::NotBalanced),
    }
}

/// Same transform at a caller-chosen balanced index `i` in `1..=3`.
pub fn balanced_to_packing_at(w: &SymplecticVector, i: usize) -> Result<(SymplecticVector, Move)> {
    if w.k() != 5 {
        return Err(Error::KOutOfRange(w.k(), 5, 5));
    }
    if let Some(violation) = reduced_violation(w) {
        return Err(Error::NotReduced(violation));
    }
    if !(1..=3).contains(&i) || w.c()[i - 1] >= &w.c()[i] + &w.c()[i + 1] {
        return Err(Error::NotBalanced);
    }
    let mv = Move::Cremona(i, i + 1, i + 2);
    let image = apply_move_form(w, &mv)?;
    Ok((image, mv))
}

/// `nu = 1` rescaling helper for display of packing images.
pub fn normalized(w: &SymplecticVector) -> SymplecticVector {
    if w.nu().is_one() {
        w.clone()
    } else {
        w.normalized()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;

    fn class(a: i64, b: &[i64]) -> HomologyClass {
        HomologyClass::from_parts(a, b).unwrap()
    }

    fn l1(k: usize) -> HomologyClass {
        let mut b = vec![0; k];
        b[0] = 1;
        b[1] = 1;
        b[2] = 1;
        HomologyClass::from_parts(1, &b).unwrap()
    }

    #[test]
    fn reflect_matrix_rows() {
        let r = l1(5);
        let h = HomologyClass::h(5).unwrap();
        assert_eq!(reflect(&h, &r).unwrap(), class(2, &[1, 1, 1, 0, 0]));
        let e1 = HomologyClass::e(5, 1).unwrap();
        assert_eq!(reflect(&e1, &r).unwrap(), class(1, &[0, 1, 1, 0, 0]));
        let e4 = HomologyClass::e(5, 4).unwrap();
        assert_eq!(reflect(&e4, &r).unwrap(), e4);
    }

    #[test]
    fn reflect_rejects_non_roots() {
        let h = HomologyClass::h(5).unwrap();
        let e1 = HomologyClass::e(5, 1).unwrap();
        assert!(matches!(reflect(&h, &e1), Err(Error::NotARoot(_))));
    }

    #[test]
    fn reduce_rejects_non_positive_square() {
        assert_eq!(
            reduce(&class(2, &[1, 1, 1, 1, 1])),
            Err(Error::NotPositiveSquare(-1))
        );
        assert_eq!(
            reduce(&class(3, &[2, 2, 2, 0, 0])),
            Err(Error::NotPositiveSquare(-3))
        );
    }

    #[test]
    fn reduce_fixed_point_is_identity_trace() {
        let t = reduce(&class(3, &[1, 1, 1, 1, 1])).unwrap();
        assert!(t.is_identity());
        assert_eq!(t.output, class(3, &[1, 1, 1, 1, 1]));
    }

    #[test]
    fn reduce_example() {
        let t = reduce(&class(4, &[2, 2, 2, 1, 1])).unwrap();
        assert!(is_reduced_class(&t.output));
        assert_eq!(t.output.square(), 2);
        assert_eq!(t.replay().unwrap(), t.output);
        assert_eq!(t.output, class(2, &[1, 1, 0, 0, 0]));
    }

    #[test]
    fn reduce_normalizes_sign() {
        let t = reduce(&class(-4, &[-2, -2, -2, -1, -1])).unwrap();
        assert_eq!(t.input, class(4, &[2, 2, 2, 1, 1]));
        assert_eq!(t.output, class(2, &[1, 1, 0, 0, 0]));
    }

    #[test]
    fn reduce_flip_case_keeps_square_and_transported_k() {
        // this orbit needs a sign flip on the way down
        let input = class(6, &[4, 4, 1, 0, 0]);
        let t = reduce(&input).unwrap();
        assert!(is_reduced_class(&t.output));
        assert_eq!(t.output.square(), input.square());
        assert_eq!(t.replay().unwrap(), t.output);
        assert!(t.moves.iter().any(|m| matches!(m, Move::Flip(_))));
        let k_img = t.transported_canonical().unwrap();
        assert_eq!(
            t.output.pairing(&k_img).unwrap(),
            input.k_pairing(),
            "pairing against the transported canonical class"
        );
    }

    #[test]
    fn is_reduced_examples() {
        assert!(is_reduced_form(&SymplecticVector::monotone(5).unwrap()));
        let w = SymplecticVector::from_i64((1, 1), &[(1, 2), (1, 2), (1, 2), (0, 1), (0, 1)])
            .unwrap();
        assert!(!is_reduced_form(&w)); // zero entries
        let w = SymplecticVector::from_i64((1, 1), &[(2, 5), (2, 5), (2, 5), (1, 5), (1, 5)])
            .unwrap();
        assert!(!is_reduced_form(&w)); // lambda = 6/5 > 1
        assert!(reduced_violation(&w).unwrap().contains("c1+c2+c3"));
    }

    #[test]
    fn reduce_form_reaches_reduced() {
        let w = SymplecticVector::from_i64((1, 1), &[(2, 5), (2, 5), (2, 5), (1, 5), (1, 5)])
            .unwrap();
        let t = reduce_form(&w).unwrap();
        assert!(is_reduced_form(&t.output));
        assert_eq!(t.replay().unwrap(), t.output);
        assert_eq!(t.output.square(), w.square());
    }

    #[test]
    fn packing_examples() {
        let mono = SymplecticVector::monotone(5).unwrap();
        assert!(is_packing_form(&mono).unwrap());
        let w = SymplecticVector::from_i64((1, 1), &[(1, 2), (1, 4), (1, 4), (1, 4), (1, 4)])
            .unwrap();
        assert!(!is_packing_form(&w).unwrap()); // c_1 = nu/2 is not strict
        let w = SymplecticVector::from_i64((1, 1), &[(2, 5); 5]).unwrap();
        assert!(!is_packing_form(&w).unwrap()); // sum = 2 nu is not strict
    }

    #[test]
    fn balanced_examples() {
        let mono = SymplecticVector::monotone(5).unwrap();
        assert!(is_balanced(&mono).unwrap());
        let w = SymplecticVector::from_i64(
            (1, 1),
            &[(1, 2), (1, 5), (1, 5), (1, 25), (1, 25)],
        )
        .unwrap();
        assert!(is_balanced(&w).unwrap()); // i = 2 works
        let w = SymplecticVector::from_i64(
            (1, 1),
            &[(3, 5), (1, 5), (1, 5), (1, 10), (1, 10)],
        )
        .unwrap();
        assert!(is_balanced(&w).unwrap());
        // a generic stratum point that fails all three inequalities
        let w = SymplecticVector::from_i64(
            (1, 1),
            &[(1, 2), (1, 5), (1, 10), (1, 20), (1, 40)],
        )
        .unwrap();
        assert!(!is_balanced(&w).unwrap());
        assert_eq!(balanced_to_packing(&w), Err(Error::NotBalanced));
    }

    #[test]
    fn balanced_to_packing_monotone() {
        let mono = SymplecticVector::monotone(5).unwrap();
        let (img, mv) = balanced_to_packing(&mono).unwrap();
        assert!(matches!(mv, Move::Cremona(1, 2, 3)));
        assert!(is_packing_form(&normalized(&img)).unwrap());
        // the spelled-out i = 3 variant
        let (img, mv) = balanced_to_packing_at(&mono, 3).unwrap();
        assert!(matches!(mv, Move::Cremona(3, 4, 5)));
        assert!(is_packing_form(&normalized(&img)).unwrap());
    }

    #[test]
    fn balanced_to_packing_ma_representative() {
        let w = SymplecticVector::from_i64((1, 1), &[(2, 3), (1, 6), (1, 6), (1, 6), (1, 6)])
            .unwrap();
        let (img, _) = balanced_to_packing(&w).unwrap();
        let img = normalized(&img);
        assert!(is_packing_form(&img).unwrap());
    }

    #[test]
    fn form_reflection_matches_class_reflection() {
        let w = SymplecticVector::from_i64((1, 1), &[(1, 2), (1, 3), (1, 4), (1, 5), (1, 6)])
            .unwrap();
        let r = l1(5);
        let img = reflect_form(&w, &r).unwrap();
        // areas transform contravariantly: omega'(A) = omega(s_r A)
        for class in [
            HomologyClass::h(5).unwrap(),
            HomologyClass::e(5, 1).unwrap(),
            HomologyClass::from_parts(2, &[1, 1, 1, 1, 1]).unwrap(),
        ] {
            assert_eq!(
                img.area(&class).unwrap(),
                w.area(&reflect(&class, &r).unwrap()).unwrap()
            );
        }
        // nu' = 2 nu - c_1 - c_2 - c_3
        assert_eq!(img.nu(), &(rat_int(2) - rat(1, 2) - rat(1, 3) - rat(1, 4)));
    }
}
