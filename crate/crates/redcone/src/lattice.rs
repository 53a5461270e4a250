//! The homology lattice of a rational 4-manifold `X_k = CP^2 # k(-CP^2)`.
//!
//! Classes are stored in the standard basis `H, E_1, ..., E_k` with the
//! diagonal intersection form `H.H = 1`, `E_i.E_i = -1`. A second basis
//! `B, F, E'_1, ..., E'_{k-1}` views the same lattice as a blow-up of
//! `S^2 x S^2`; conversions both ways are provided, exactly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub const K_MIN: usize = 1;
pub const K_MAX: usize = 8;

pub(crate) fn check_k(k: usize, lo: usize, hi: usize) -> Result<()> {
    if k < lo || k > hi {
        return Err(Error::KOutOfRange(k, lo, hi));
    }
    Ok(())
}

/// Exact rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational from an integer.
pub fn rat_int(num: i64) -> Rational {
    Rational::from(BigInt::from(num))
}

/// Renders a rational as `p/q`, or just `p` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or a plain integer string.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let den = BigInt::from_str(den).map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

/// An integral second-homology class `a H - sum_i b_i E_i`, stored as
/// `(a; b_1, ..., b_k)`. With this sign convention the exceptional classes
/// have non-negative `b` entries, e.g. `H - E_1 - E_2` is `(1; 1, 1, 0, ...)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomologyClass {
    k: usize,
    coeffs: Vec<i64>,
}

impl HomologyClass {
    /// Builds a class from `[a, b_1, ..., b_k]`.
    pub fn new(k: usize, coeffs: Vec<i64>) -> Result<Self> {
        check_k(k, K_MIN, K_MAX)?;
        if coeffs.len() != k + 1 {
            return Err(Error::BadLength {
                want: k + 1,
                got: coeffs.len(),
            });
        }
        Ok(HomologyClass { k, coeffs })
    }

    pub fn from_parts(a: i64, b: &[i64]) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(b.len() + 1);
        coeffs.push(a);
        coeffs.extend_from_slice(b);
        HomologyClass::new(b.len(), coeffs)
    }

    /// The line class `H`.
    pub fn h(k: usize) -> Result<Self> {
        HomologyClass::new(k, {
            let mut v = vec![0; k + 1];
            v[0] = 1;
            v
        })
    }

    /// The exceptional divisor class `E_i`, `1 <= i <= k`.
    pub fn e(k: usize, i: usize) -> Result<Self> {
        check_k(k, K_MIN, K_MAX)?;
        if i < 1 || i > k {
            return Err(Error::BadLength { want: k, got: i });
        }
        let mut v = vec![0; k + 1];
        v[i] = -1;
        HomologyClass::new(k, v)
    }

    /// The canonical class `-3H + sum_i E_i` of a reduced form.
    pub fn canonical(k: usize) -> Result<Self> {
        check_k(k, K_MIN, K_MAX)?;
        let mut v = vec![-1; k + 1];
        v[0] = -3;
        HomologyClass::new(k, v)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Coefficient of `H`.
    pub fn a(&self) -> i64 {
        self.coeffs[0]
    }

    /// Coefficients `b_1..b_k` (the class subtracts `b_i E_i`).
    pub fn b(&self) -> &[i64] {
        &self.coeffs[1..]
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Intersection pairing `a a' - sum_i b_i b'_i`.
    pub fn pairing(&self, other: &HomologyClass) -> Result<i64> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch(self.k, other.k));
        }
        let mut acc = self.coeffs[0] * other.coeffs[0];
        for i in 1..=self.k {
            acc -= self.coeffs[i] * other.coeffs[i];
        }
        Ok(acc)
    }

    pub fn square(&self) -> i64 {
        self.pairing(self).expect("same k")
    }

    /// Pairing with the canonical class, `-3a + sum_i b_i`.
    pub fn k_pairing(&self) -> i64 {
        -3 * self.coeffs[0] + self.coeffs[1..].iter().sum::<i64>()
    }

    pub fn neg(&self) -> HomologyClass {
        HomologyClass {
            k: self.k,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &HomologyClass) -> Result<HomologyClass> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch(self.k, other.k));
        }
        Ok(HomologyClass {
            k: self.k,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        })
    }

    pub fn scaled(&self, m: i64) -> HomologyClass {
        HomologyClass {
            k: self.k,
            coeffs: self.coeffs.iter().map(|c| m * c).collect(),
        }
    }

    /// Integral base change into the `B, F, E'` basis; needs `k >= 1`.
    pub fn to_bf_basis(&self) -> BFClass {
        let a = self.a();
        let b = self.b();
        let b1 = b[0];
        let b2 = if self.k >= 2 { b[1] } else { 0 };
        let mut r = Vec::with_capacity(self.k.saturating_sub(1));
        if self.k >= 2 {
            r.push(a - b1 - b2);
            r.extend(b.iter().skip(2).copied());
        }
        BFClass {
            p: a - b1,
            q: a - b2,
            r,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|&c| serde_json::Value::from(c))
                .collect(),
        )
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.coeffs[0])?;
        let parts: Vec<String> = self.coeffs[1..].iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for HomologyClass {
    type Err = Error;

    /// Parses `a;b1,...,bk`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, rest) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected `a;b1,...,bk`, got `{s}`")))?;
        let a: i64 = a
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer `{a}`")))?;
        let b: Vec<i64> = rest
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad integer `{t}`")))
            })
            .collect::<Result<_>>()?;
        HomologyClass::from_parts(a, &b)
    }
}

/// The same class written in the `B, F, E'_1, ..., E'_{k-1}` basis as
/// `p B + q F - sum_i r_i E'_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BFClass {
    pub p: i64,
    pub q: i64,
    pub r: Vec<i64>,
}

impl BFClass {
    /// Blow-up count of the `CP^2` picture this converts back to.
    pub fn k(&self) -> usize {
        self.r.len() + 1
    }

    /// Intersection square: `B.B = F.F = 0`, `B.F = 1`, `E'_i.E'_i = -1`.
    pub fn square(&self) -> i64 {
        2 * self.p * self.q - self.r.iter().map(|r| r * r).sum::<i64>()
    }

    /// Inverse of [`HomologyClass::to_bf_basis`].
    pub fn to_h_basis(&self) -> Result<HomologyClass> {
        let k = self.k();
        check_k(k, K_MIN, K_MAX)?;
        let r1 = if k >= 2 { self.r[0] } else { 0 };
        let a = self.p + self.q - r1;
        let mut b = Vec::with_capacity(k);
        b.push(self.q - r1);
        if k >= 2 {
            b.push(self.p - r1);
            b.extend(self.r.iter().skip(1).copied());
        }
        HomologyClass::from_parts(a, &b)
    }
}

/// The cohomology datum of a symplectic form, `(nu | c_1, ..., c_k)`:
/// exact rational areas of `H` and of each `E_i`. `nu > 0` always.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticVector {
    nu: Rational,
    c: Vec<Rational>,
}

impl SymplecticVector {
    pub fn new(nu: Rational, c: Vec<Rational>) -> Result<Self> {
        check_k(c.len(), K_MIN, K_MAX)?;
        if !nu.is_positive() {
            return Err(Error::NonPositiveNu);
        }
        Ok(SymplecticVector { nu, c })
    }

    pub fn from_i64(nu: (i64, i64), c: &[(i64, i64)]) -> Result<Self> {
        SymplecticVector::new(rat(nu.0, nu.1), c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    /// The monotone vector `(1 | 1/3, ..., 1/3)`.
    pub fn monotone(k: usize) -> Result<Self> {
        SymplecticVector::new(rat_int(1), vec![rat(1, 3); k])
    }

    pub fn k(&self) -> usize {
        self.c.len()
    }

    pub fn nu(&self) -> &Rational {
        &self.nu
    }

    pub fn c(&self) -> &[Rational] {
        &self.c
    }

    /// `omega(A) = nu a - sum_i c_i b_i`.
    pub fn area(&self, class: &HomologyClass) -> Result<Rational> {
        if self.k() != class.k() {
            return Err(Error::DimensionMismatch(self.k(), class.k()));
        }
        let mut acc = &self.nu * BigInt::from(class.a());
        for (ci, bi) in self.c.iter().zip(class.b()) {
            acc -= ci * BigInt::from(*bi);
        }
        Ok(acc)
    }

    /// `c_1 + c_2 + c_3` as stored (meaningful once sorted), `k >= 3`.
    pub fn lambda(&self) -> Rational {
        self.c.iter().take(3).sum()
    }

    /// Square of the dual class, `nu^2 - sum c_i^2`.
    pub fn square(&self) -> Rational {
        &self.nu * &self.nu - self.c.iter().map(|c| c * c).sum::<Rational>()
    }

    /// Rescales so that `nu = 1`.
    pub fn normalized(&self) -> SymplecticVector {
        SymplecticVector {
            nu: Rational::one(),
            c: self.c.iter().map(|c| c / &self.nu).collect(),
        }
    }

    /// Area-data base change into `(mu | f; a_1, ..., a_{k-1})`, un-rescaled:
    /// `mu = nu - c_2`, `f = nu - c_1`, `a_1 = nu - c_1 - c_2`, `a_i = c_{i+1}`.
    pub fn to_bf_basis(&self) -> BFVector {
        let k = self.k();
        let c1 = &self.c[0];
        let c2 = if k >= 2 {
            self.c[1].clone()
        } else {
            Rational::zero()
        };
        let mut a = Vec::with_capacity(k.saturating_sub(1));
        if k >= 2 {
            a.push(&self.nu - c1 - &c2);
            a.extend(self.c.iter().skip(2).cloned());
        }
        BFVector {
            mu: &self.nu - &c2,
            f: &self.nu - c1,
            a,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut entries = vec![serde_json::Value::from(format_rational(&self.nu))];
        entries.extend(
            self.c
                .iter()
                .map(|c| serde_json::Value::from(format_rational(c))),
        );
        serde_json::Value::Array(entries)
    }
}

impl fmt::Display for SymplecticVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().map(format_rational).collect();
        write!(f, "{}|{}", format_rational(&self.nu), parts.join(","))
    }
}

impl FromStr for SymplecticVector {
    type Err = Error;

    /// Parses `nu|c1,...,ck` with rational entries.
    fn from_str(s: &str) -> Result<Self> {
        let (nu, rest) = s
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("expected `nu|c1,...,ck`, got `{s}`")))?;
        let nu = parse_rational(nu)?;
        let c: Vec<Rational> = rest.split(',').map(parse_rational).collect::<Result<_>>()?;
        SymplecticVector::new(nu, c)
    }
}

/// Area data in the `B, F, E'` basis: `(mu | f; a_1, ..., a_{k-1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFVector {
    pub mu: Rational,
    pub f: Rational,
    pub a: Vec<Rational>,
}

impl BFVector {
    pub fn k(&self) -> usize {
        self.a.len() + 1
    }

    /// Inverse of [`SymplecticVector::to_bf_basis`].
    pub fn to_h_basis(&self) -> Result<SymplecticVector> {
        let k = self.k();
        check_k(k, K_MIN, K_MAX)?;
        let a1 = if k >= 2 {
            self.a[0].clone()
        } else {
            Rational::zero()
        };
        let nu = &self.mu + &self.f - &a1;
        let mut c = Vec::with_capacity(k);
        c.push(&self.mu - &a1);
        if k >= 2 {
            c.push(&self.f - &a1);
            c.extend(self.a.iter().skip(1).cloned());
        }
        SymplecticVector::new(nu, c)
    }

    /// Rescales so that the `F`-area is 1, the normalized shape
    /// `mu = (nu - c_2)/(nu - c_1)`, `a_1 = (nu - c_1 - c_2)/(nu - c_1)`,
    /// `a_i = c_{i+1}/(nu - c_1)`. Undefined on the wall `nu = c_1`.
    pub fn normalized(&self) -> Result<BFVector> {
        if self.f.is_zero() {
            return Err(Error::OnWall);
        }
        Ok(BFVector {
            mu: &self.mu / &self.f,
            f: Rational::one(),
            a: self.a.iter().map(|x| x / &self.f).collect(),
        })
    }
}
