//! Enumeration of the root system `R_k` (square `-2`, orthogonal to `K`),
//! the exceptional classes (square `-1`, `K`-pairing `-1`), simple roots,
//! positive roots, and the classification of negative-square sphere classes.

use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::Zero;

use crate::cremona;
use crate::error::{Error, Result};
use crate::lattice::{check_k, BFClass, HomologyClass, Rational, SymplecticVector};

// enumerations are pure and small; cache them per k
static ROOTS: [OnceLock<Vec<HomologyClass>>; 9] = [const { OnceLock::new() }; 9];
static POSITIVE: [OnceLock<Vec<HomologyClass>>; 9] = [const { OnceLock::new() }; 9];
static EXCEPTIONAL: [OnceLock<Vec<HomologyClass>>; 9] = [const { OnceLock::new() }; 9];

/// Roots of `X_k` together with the canonical simple system
/// `l_1 = H - E_1 - E_2 - E_3`, `l_i = E_{i-1} - E_i` for `i >= 2`.
#[derive(Debug, Clone)]
pub struct RootDatum {
    k: usize,
    roots: Vec<HomologyClass>,
    simple: Vec<HomologyClass>,
}

impl RootDatum {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn roots(&self) -> &[HomologyClass] {
        &self.roots
    }

    pub fn simple(&self) -> &[HomologyClass] {
        &self.simple
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// `l_1, ..., l_k` for `3 <= k <= 8`.
pub fn simple_roots(k: usize) -> Result<Vec<HomologyClass>> {
    check_k(k, 3, 8)?;
    let mut out = Vec::with_capacity(k);
    let mut b = vec![0i64; k];
    b[0] = 1;
    b[1] = 1;
    b[2] = 1;
    out.push(HomologyClass::from_parts(1, &b)?);
    for i in 2..=k {
        let mut b = vec![0i64; k];
        b[i - 2] = -1;
        b[i - 1] = 1;
        out.push(HomologyClass::from_parts(0, &b)?);
    }
    Ok(out)
}

fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    while r * r > n {
        r -= 1;
    }
    r
}

/// All integer vectors of length `slots` with the given sum and sum of
/// squares, entries bounded by `|b_i| <= isqrt(sq)`.
fn enumerate_b(slots: usize, sum: i64, sq: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if sq < 0 {
        return;
    }
    if slots == 0 {
        if sum == 0 && sq == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let m = slots as i64;
    // Cauchy-Schwarz: remaining squares must cover sum^2 / slots
    if sum * sum > sq * m {
        return;
    }
    let bmax = isqrt(sq);
    for v in -bmax..=bmax {
        cur.push(v);
        enumerate_b(slots - 1, sum - v, sq - v * v, cur, out);
        cur.pop();
    }
}

fn enumerate_with_invariants(k: usize, square: i64, k_pairing: i64) -> Vec<HomologyClass> {
    // For A = aH - sum b_i E_i: <A,A> = a^2 - sum b_i^2 and <A,K> = -3a + sum b_i,
    // so sum b_i = 3a + k_pairing and sum b_i^2 = a^2 - square. Cauchy-Schwarz
    // bounds |a|: (3a + k_pairing)^2 <= k (a^2 - square).
    let mut out = Vec::new();
    for a in -16i64..=16 {
        let sum = 3 * a + k_pairing;
        let sq = a * a - square;
        if sq < 0 || sum * sum > (k as i64) * sq {
            continue;
        }
        let mut cur = Vec::with_capacity(k);
        let mut bs = Vec::new();
        enumerate_b(k, sum, sq, &mut cur, &mut bs);
        for b in bs {
            out.push(HomologyClass::from_parts(a, &b).expect("valid class"));
        }
    }
    out.sort();
    out
}

/// The full root system `R_k` for `3 <= k <= 8`.
pub fn enumerate_roots(k: usize) -> Result<RootDatum> {
    check_k(k, 3, 8)?;
    let roots = ROOTS[k]
        .get_or_init(|| enumerate_with_invariants(k, -2, 0))
        .clone();
    Ok(RootDatum {
        k,
        roots,
        simple: simple_roots(k)?,
    })
}

/// All exceptional classes (`A.A = -1`, `A.K = -1`) for `1 <= k <= 8`.
pub fn enumerate_exceptional(k: usize) -> Result<Vec<HomologyClass>> {
    check_k(k, 1, 8)?;
    Ok(EXCEPTIONAL[k]
        .get_or_init(|| enumerate_with_invariants(k, -1, -1))
        .clone())
}

/// Solves `A = sum_i x_i l_i` exactly; errors unless `A` is a root of `R_k`.
pub fn root_coordinates(class: &HomologyClass) -> Result<Vec<i64>> {
    let k = class.k();
    if class.square() != -2 || class.k_pairing() != 0 {
        return Err(Error::NotARoot(class.to_string()));
    }
    let simple = simple_roots(k)?;
    // Pair both sides with each l_j: C x = rhs with C_ij = <l_i, l_j>.
    let mut c: Vec<Vec<Rational>> = vec![vec![Rational::zero(); k]; k];
    let mut rhs: Vec<Rational> = Vec::with_capacity(k);
    for j in 0..k {
        for (i, row) in c.iter_mut().enumerate() {
            row[j] = Rational::from_integer(simple[i].pairing(&simple[j])?.into());
        }
        rhs.push(Rational::from_integer(class.pairing(&simple[j])?.into()));
    }
    let x = solve_exact(&mut c, &mut rhs)
        .ok_or_else(|| Error::Internal("simple roots are degenerate".into()))?;
    let mut coords = Vec::with_capacity(k);
    for xi in &x {
        if !xi.is_integer() {
            return Err(Error::NotARoot(class.to_string()));
        }
        let v: i64 = xi
            .to_integer()
            .try_into()
            .map_err(|_| Error::Internal("coordinate overflow".into()))?;
        coords.push(v);
    }
    // reconstruct and compare, which also certifies A lies in the span
    let mut rebuilt = HomologyClass::from_parts(0, &vec![0; k])?;
    for (xi, li) in coords.iter().zip(&simple) {
        rebuilt = rebuilt.add(&li.scaled(*xi))?;
    }
    if &rebuilt != class {
        return Err(Error::NotARoot(class.to_string()));
    }
    Ok(coords)
}

/// Gaussian elimination over exact rationals; consumes its inputs.
fn solve_exact(m: &mut [Vec<Rational>], rhs: &mut [Rational]) -> Option<Vec<Rational>> {
    let n = rhs.len();
    for t in 0..n {
        let pivot = (t..n).find(|&i| !m[i][t].is_zero())?;
        m.swap(t, pivot);
        rhs.swap(t, pivot);
        for i in 0..n {
            if i == t || m[i][t].is_zero() {
                continue;
            }
            let f = &m[i][t] / &m[t][t];
            for j in t..n {
                let s = &f * &m[t][j];
                m[i][j] -= s;
            }
            let s = &f * &rhs[t];
            rhs[i] -= s;
        }
    }
    Some(
        (0..n)
            .map(|i| &rhs[i] / &m[i][i])
            .collect::<Vec<Rational>>(),
    )
}

/// The canonical positive half of `R_k`: roots whose simple-root
/// coordinates are all non-negative.
pub fn positive_roots(k: usize) -> Result<Vec<HomologyClass>> {
    check_k(k, 3, 8)?;
    if let Some(cached) = POSITIVE[k].get() {
        return Ok(cached.clone());
    }
    let computed = compute_positive_roots(k)?;
    Ok(POSITIVE[k].get_or_init(|| computed).clone())
}

fn compute_positive_roots(k: usize) -> Result<Vec<HomologyClass>> {
    let datum = enumerate_roots(k)?;
    let mut out = Vec::with_capacity(datum.len() / 2);
    for root in datum.roots() {
        let coords = root_coordinates(root)
            .map_err(|_| Error::Internal(format!("root {root} outside simple-root span")))?;
        let nonneg = coords.iter().all(|&x| x >= 0);
        let nonpos = coords.iter().all(|&x| x <= 0);
        if !nonneg && !nonpos {
            return Err(Error::Internal(format!("root {root} has mixed signs")));
        }
        if nonneg {
            out.push(root.clone());
        }
    }
    if out.len() * 2 != datum.len() {
        return Err(Error::Internal("positive roots are not half the system".into()));
    }
    Ok(out)
}

/// Shapes of negative-square sphere classes in the `B, F, E'` basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SphereFamily {
    /// `B - k F - sum r_i E'_i` with `k >= -1`, `r_i` in `{0, 1}`.
    BMinusKF { k: i64, r: Vec<i64> },
    /// `F - sum r_i E'_i` with `r_i` in `{0, 1}`.
    FMinus { r: Vec<i64> },
    /// `E'_j - sum_{i > j} r_i E'_i` with `r_i` in `{0, 1}`.
    Exceptional { j: usize, r: Vec<i64> },
    NotListed,
}

/// Matches a negative-square class, given in the `B, F, E'` basis, against
/// the listed sphere families.
pub fn classify_negative_sphere_class_bf(class: &BFClass) -> Result<SphereFamily> {
    let sq = class.square();
    if sq >= 0 {
        return Err(Error::NotNegativeSquare(sq));
    }
    let zero_one = |r: &[i64]| r.iter().all(|&x| x == 0 || x == 1);
    if class.p == 1 && -class.q >= -1 && zero_one(&class.r) {
        return Ok(SphereFamily::BMinusKF {
            k: -class.q,
            r: class.r.clone(),
        });
    }
    if class.p == 0 && class.q == 1 && zero_one(&class.r) {
        return Ok(SphereFamily::FMinus { r: class.r.clone() });
    }
    if class.p == 0 && class.q == 0 {
        if let Some(j) = class.r.iter().position(|&x| x == -1) {
            let before_zero = class.r[..j].iter().all(|&x| x == 0);
            if before_zero && zero_one(&class.r[j + 1..]) {
                return Ok(SphereFamily::Exceptional {
                    j: j + 1,
                    r: class.r.clone(),
                });
            }
        }
    }
    Ok(SphereFamily::NotListed)
}

/// Same classification for a class given in the `H, E` basis; the class is
/// converted first.
pub fn classify_negative_sphere_class(class: &HomologyClass) -> Result<SphereFamily> {
    let sq = class.square();
    if sq >= 0 {
        return Err(Error::NotNegativeSquare(sq));
    }
    classify_negative_sphere_class_bf(&class.to_bf_basis())
}

/// For a reduced form, `E_k` has the smallest area among all exceptional
/// classes; returns it after checking minimality against the full
/// enumeration.
pub fn min_area_exceptional(w: &SymplecticVector) -> Result<HomologyClass> {
    if let Some(violation) = cremona::reduced_violation(w) {
        return Err(Error::NotReduced(violation));
    }
    let k = w.k();
    let ek = HomologyClass::e(k, k)?;
    let ek_area = w.area(&ek)?;
    let min: BigRational = enumerate_exceptional(k)?
        .iter()
        .map(|e| w.area(e).expect("same k"))
        .min()
        .expect("non-empty");
    if min != ek_area {
        return Err(Error::Internal(format!(
            "E_{k} does not attain the minimal exceptional area for {w}"
        )));
    }
    Ok(ek)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;

    #[test]
    fn root_cardinalities_match_table() {
        let expect = [(3, 8), (4, 20), (5, 40), (6, 72), (7, 126), (8, 240)];
        for (k, n) in expect {
            assert_eq!(enumerate_roots(k).unwrap().len(), n, "k = {k}");
        }
        assert!(enumerate_roots(2).is_err());
        assert!(enumerate_roots(9).is_err());
    }

    #[test]
    fn roots_have_defining_invariants_and_negation() {
        let datum = enumerate_roots(5).unwrap();
        for r in datum.roots() {
            assert_eq!(r.square(), -2);
            assert_eq!(r.k_pairing(), 0);
            assert!(datum.roots().contains(&r.neg()));
        }
    }

    #[test]
    fn exceptional_counts() {
        assert_eq!(enumerate_exceptional(1).unwrap().len(), 1);
        let exc2 = enumerate_exceptional(2).unwrap();
        assert_eq!(exc2.len(), 3);
        assert!(exc2.contains(&HomologyClass::e(2, 1).unwrap()));
        assert!(exc2.contains(&HomologyClass::e(2, 2).unwrap()));
        assert!(exc2.contains(&HomologyClass::from_parts(1, &[1, 1]).unwrap()));

        let exc5 = enumerate_exceptional(5).unwrap();
        assert_eq!(exc5.len(), 16);
        let by_a = |a: i64| exc5.iter().filter(|e| e.a() == a).count();
        assert_eq!(by_a(0), 5); // E_i
        assert_eq!(by_a(1), 10); // H - E_i - E_j
        assert_eq!(by_a(2), 1); // 2H - E_1 - ... - E_5
        for e in &exc5 {
            assert_eq!(e.square(), -1);
            assert_eq!(e.k_pairing(), -1);
        }
    }

    #[test]
    fn simple_roots_are_roots() {
        for k in 3..=8 {
            let datum = enumerate_roots(k).unwrap();
            for l in datum.simple() {
                assert!(datum.roots().contains(l));
            }
        }
    }

    #[test]
    fn positive_roots_count_and_examples() {
        let pos = positive_roots(5).unwrap();
        assert_eq!(pos.len(), 20);
        // l_2 + l_3 = E_1 - E_3 is positive
        let e1_minus_e3 = HomologyClass::from_parts(0, &[-1, 0, 1, 0, 0]).unwrap();
        assert!(pos.contains(&e1_minus_e3));
        // -l_1 is not
        let neg_l1 = HomologyClass::from_parts(-1, &[-1, -1, -1, 0, 0]).unwrap();
        assert!(!pos.contains(&neg_l1));
        assert_eq!(root_coordinates(&e1_minus_e3).unwrap(), vec![0, 1, 1, 0, 0]);
    }

    #[test]
    fn positive_and_negative_halves_partition() {
        for k in 3..=5 {
            let datum = enumerate_roots(k).unwrap();
            let pos = positive_roots(k).unwrap();
            let mut all: Vec<HomologyClass> = pos.iter().map(|r| r.neg()).collect();
            all.extend(pos.iter().cloned());
            all.sort();
            assert_eq!(all, datum.roots());
        }
    }

    #[test]
    fn coordinates_of_first_simple_root() {
        let l1 = simple_roots(5).unwrap()[0].clone();
        assert_eq!(root_coordinates(&l1).unwrap(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn coordinates_reject_non_roots() {
        // 2H - E_1 - ... - E_4 - 2E_5 has square -4
        let a = HomologyClass::from_parts(2, &[1, 1, 1, 1, 2]).unwrap();
        assert!(matches!(root_coordinates(&a), Err(Error::NotARoot(_))));
    }

    #[test]
    fn coordinates_invert_on_every_root() {
        for k in [3, 5] {
            let datum = enumerate_roots(k).unwrap();
            let simple = datum.simple().to_vec();
            let mut seen = std::collections::HashSet::new();
            for root in datum.roots() {
                let coords = root_coordinates(root).unwrap();
                assert!(seen.insert(coords.clone()), "coordinates collide");
                let mut rebuilt = HomologyClass::from_parts(0, &vec![0; k]).unwrap();
                for (x, l) in coords.iter().zip(&simple) {
                    rebuilt = rebuilt.add(&l.scaled(*x)).unwrap();
                }
                assert_eq!(&rebuilt, root);
            }
        }
    }

    #[test]
    fn sphere_classification_examples() {
        // E'_1 - E'_2 in the BF basis is in the exceptional chain family
        let e = BFClass {
            p: 0,
            q: 0,
            r: vec![-1, 1, 0, 0],
        };
        assert_eq!(
            classify_negative_sphere_class_bf(&e).unwrap(),
            SphereFamily::Exceptional {
                j: 1,
                r: vec![-1, 1, 0, 0]
            }
        );
        // B - F
        let bf = BFClass {
            p: 1,
            q: -1,
            r: vec![0, 0, 0, 0],
        };
        assert_eq!(
            classify_negative_sphere_class_bf(&bf).unwrap(),
            SphereFamily::BMinusKF {
                k: 1,
                r: vec![0, 0, 0, 0]
            }
        );
        // a = 3 class: base change has p outside {0, 1}
        let a = HomologyClass::from_parts(3, &[1, 1, 1, 2, 2]).unwrap();
        assert_eq!(a.square(), -2);
        assert_eq!(
            classify_negative_sphere_class(&a).unwrap(),
            SphereFamily::NotListed
        );
        // positive square is rejected
        let h = HomologyClass::h(5).unwrap();
        assert!(matches!(
            classify_negative_sphere_class(&h),
            Err(Error::NotNegativeSquare(1))
        ));
    }

    #[test]
    fn min_area_examples() {
        let mono = SymplecticVector::monotone(5).unwrap();
        let e5 = HomologyClass::e(5, 5).unwrap();
        assert_eq!(min_area_exceptional(&mono).unwrap(), e5);
        assert_eq!(mono.area(&e5).unwrap(), rat(1, 3));

        let w = SymplecticVector::from_i64((1, 1), &[(1, 2), (1, 4), (1, 4), (1, 4), (1, 4)])
            .unwrap();
        assert_eq!(min_area_exceptional(&w).unwrap(), e5);
        assert_eq!(w.area(&e5).unwrap(), rat(1, 4));

        let w = SymplecticVector::from_i64(
            (1, 1),
            &[(2, 5), (3, 10), (3, 10), (1, 5), (1, 10)],
        )
        .unwrap();
        assert_eq!(min_area_exceptional(&w).unwrap(), e5);
        assert_eq!(w.area(&e5).unwrap(), rat(1, 10));
    }

    #[test]
    fn min_area_requires_reduced() {
        let w = SymplecticVector::from_i64((1, 1), &[(1, 4), (1, 2), (1, 4), (1, 4), (1, 4)])
            .unwrap();
        assert!(matches!(
            min_area_exceptional(&w),
            Err(Error::NotReduced(_))
        ));
    }
}
