//! Finite fields and two-level field towers.
//!
//! The supported tower is `F_p -> F_q = F_p[w]/(g(w)) -> K = F_q[x]/(f(x))`;
//! deeper towers are rejected. Fields are defined by user-supplied moduli (no
//! canonical polynomial table is assumed), elements are dense coefficient
//! vectors over the base, and every operation is exact and deterministic.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::UniPoly;

/// Largest supported field order (`p^r <= 2^20`).
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// A finite field, either `F_p` or an extension of another [`Field`].
///
/// Cloning is cheap (shared representation). Equality is structural, so two
/// independently constructed copies of `F_9 = F_3[w]/(w^2+1)` compare equal.
#[derive(Clone)]
pub struct Field(Arc<FieldRepr>);

struct FieldRepr {
    kind: FieldKind,
    /// Characteristic.
    p: u64,
    /// Number of elements.
    order: u64,
    /// Extension steps above the prime field (0 for `F_p`).
    depth: usize,
}

enum FieldKind {
    Prime,
    Ext { base: Field, modulus: UniPoly },
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_FIELD_ORDER {
            return Err(Error::Unsupported(format!("field order {p} too large")));
        }
        Ok(Field(Arc::new(FieldRepr {
            kind: FieldKind::Prime,
            p,
            order: p,
            depth: 0,
        })))
    }

    /// The extension `base[var]/(modulus)`. The modulus must be monic and
    /// irreducible over its coefficient field; towers deeper than two
    /// extension steps above the prime field are rejected.
    pub fn extension(modulus: UniPoly) -> Result<Field> {
        let base = modulus.field().clone();
        let deg = match modulus.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::Unsupported("modulus must be nonconstant".into())),
        };
        if !modulus.leading().map_or(false, |c| c.is_one()) {
            return Err(Error::NotMonic(format!("{modulus}")));
        }
        if !modulus.is_irreducible() {
            return Err(Error::NotIrreducible(format!("{modulus}")));
        }
        if base.0.depth >= 2 {
            return Err(Error::Unsupported("tower depth limited to two".into()));
        }
        let order = base
            .order()
            .checked_pow(deg as u32)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or_else(|| Error::Unsupported("field order too large".into()))?;
        Ok(Field(Arc::new(FieldRepr {
            kind: FieldKind::Ext {
                base: base.clone(),
                modulus,
            },
            p: base.0.p,
            order,
            depth: base.0.depth + 1,
        })))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Degree over the immediate base field (1 for a prime field).
    pub fn degree(&self) -> usize {
        match &self.0.kind {
            FieldKind::Prime => 1,
            FieldKind::Ext { modulus, .. } => modulus.degree().unwrap(),
        }
    }

    /// Degree over the prime field.
    pub fn total_degree(&self) -> usize {
        match &self.0.kind {
            FieldKind::Prime => 1,
            FieldKind::Ext { base, modulus } => base.total_degree() * modulus.degree().unwrap(),
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self.0.kind, FieldKind::Prime)
    }

    pub fn base(&self) -> Option<&Field> {
        match &self.0.kind {
            FieldKind::Prime => None,
            FieldKind::Ext { base, .. } => Some(base),
        }
    }

    pub fn modulus(&self) -> Option<&UniPoly> {
        match &self.0.kind {
            FieldKind::Prime => None,
            FieldKind::Ext { modulus, .. } => Some(modulus),
        }
    }

    /// Variable letter the field was presented with (`w` in `F_3[w]/(w^2+1)`).
    pub fn var(&self) -> Option<char> {
        self.modulus().map(|m| m.var())
    }

    pub fn zero(&self) -> Elem {
        match &self.0.kind {
            FieldKind::Prime => Elem {
                field: self.clone(),
                data: ElemData::Prime(0),
            },
            FieldKind::Ext { base, .. } => Elem {
                field: self.clone(),
                data: ElemData::Ext(vec![base.zero(); self.degree()]),
            },
        }
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    /// The integer `v` reduced into the prime subfield and embedded here.
    pub fn from_int(&self, v: u64) -> Elem {
        match &self.0.kind {
            FieldKind::Prime => Elem {
                field: self.clone(),
                data: ElemData::Prime(v % self.0.p),
            },
            FieldKind::Ext { base, .. } => self.embed(&base.from_int(v)),
        }
    }

    /// Embed an element of the immediate base field.
    pub fn embed(&self, e: &Elem) -> Elem {
        let base = self.base().expect("embed into a prime field");
        assert!(e.field == *base, "embed: element not from the base field");
        let mut coeffs = vec![base.zero(); self.degree()];
        coeffs[0] = e.clone();
        Elem {
            field: self.clone(),
            data: ElemData::Ext(coeffs),
        }
    }

    /// The residue class of the adjoined variable (a root of the modulus).
    pub fn modulus_root(&self) -> Option<Elem> {
        match &self.0.kind {
            FieldKind::Prime => None,
            FieldKind::Ext { base, .. } => {
                let d = self.degree();
                let mut coeffs = vec![base.zero(); d];
                if d == 1 {
                    // x ≡ -modulus[0]
                    coeffs[0] = self.modulus().unwrap().coeff(0).neg();
                } else {
                    coeffs[1] = base.one();
                }
                Some(Elem {
                    field: self.clone(),
                    data: ElemData::Ext(coeffs),
                })
            }
        }
    }

    /// Element with the given index in the fixed enumeration order
    /// (mixed-radix over base-field indices, lowest coefficient first).
    pub fn elem_from_index(&self, idx: u64) -> Elem {
        debug_assert!(idx < self.order());
        match &self.0.kind {
            FieldKind::Prime => Elem {
                field: self.clone(),
                data: ElemData::Prime(idx),
            },
            FieldKind::Ext { base, .. } => {
                let b = base.order();
                let mut rest = idx;
                let coeffs = (0..self.degree())
                    .map(|_| {
                        let c = base.elem_from_index(rest % b);
                        rest /= b;
                        c
                    })
                    .collect();
                Elem {
                    field: self.clone(),
                    data: ElemData::Ext(coeffs),
                }
            }
        }
    }

    /// Inverse of [`Field::elem_from_index`].
    pub fn index_of(&self, e: &Elem) -> u64 {
        assert!(e.field == *self, "index_of: mixed fields");
        e.index()
    }

    /// All field elements in enumeration order.
    pub fn elems(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order()).map(move |i| self.elem_from_index(i))
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.p != other.0.p || self.0.order != other.0.order || self.0.depth != other.0.depth
        {
            return false;
        }
        match (&self.0.kind, &other.0.kind) {
            (FieldKind::Prime, FieldKind::Prime) => true,
            (
                FieldKind::Ext { base: b1, modulus: m1 },
                FieldKind::Ext { base: b2, modulus: m2 },
            ) => b1 == b2 && m1 == m2,
            _ => false,
        }
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            FieldKind::Prime => write!(f, "GF({})", self.0.p),
            FieldKind::Ext { .. } => {
                write!(f, "GF({}; {})", self.0.order, self.modulus().unwrap())
            }
        }
    }
}

/// An element of a [`Field`], stored as a dense coefficient vector over the
/// base field (always exactly `degree` entries for extensions).
#[derive(Clone, PartialEq, Eq)]
pub struct Elem {
    field: Field,
    data: ElemData,
}

#[derive(Clone, PartialEq, Eq)]
enum ElemData {
    Prime(u64),
    Ext(Vec<Elem>),
}

fn assert_same_field(a: &Elem, b: &Elem) {
    assert!(a.field == b.field, "mixed fields in element arithmetic");
}

impl Elem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            ElemData::Prime(v) => *v == 0,
            ElemData::Ext(cs) => cs.iter().all(Elem::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.data {
            ElemData::Prime(v) => *v == 1,
            ElemData::Ext(cs) => cs[0].is_one() && cs[1..].iter().all(Elem::is_zero),
        }
    }

    /// Residue for prime-field elements.
    pub fn as_prime(&self) -> Option<u64> {
        match &self.data {
            ElemData::Prime(v) => Some(*v),
            ElemData::Ext(_) => None,
        }
    }

    /// Coefficients over the base field (extensions only).
    pub fn coeffs(&self) -> Option<&[Elem]> {
        match &self.data {
            ElemData::Prime(_) => None,
            ElemData::Ext(cs) => Some(cs),
        }
    }

    /// Position in the fixed enumeration order.
    pub fn index(&self) -> u64 {
        match &self.data {
            ElemData::Prime(v) => *v,
            ElemData::Ext(cs) => {
                let b = self.field.base().unwrap().order();
                cs.iter().rev().fold(0, |acc, c| acc * b + c.index())
            }
        }
    }

    pub fn add(&self, other: &Elem) -> Elem {
        assert_same_field(self, other);
        let data = match (&self.data, &other.data) {
            (ElemData::Prime(a), ElemData::Prime(b)) => {
                ElemData::Prime((a + b) % self.field.0.p)
            }
            (ElemData::Ext(a), ElemData::Ext(b)) => {
                ElemData::Ext(a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
            }
            _ => unreachable!(),
        };
        Elem {
            field: self.field.clone(),
            data,
        }
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Elem {
        let data = match &self.data {
            ElemData::Prime(a) => ElemData::Prime((self.field.0.p - a) % self.field.0.p),
            ElemData::Ext(cs) => ElemData::Ext(cs.iter().map(Elem::neg).collect()),
        };
        Elem {
            field: self.field.clone(),
            data,
        }
    }

    pub fn mul(&self, other: &Elem) -> Elem {
        assert_same_field(self, other);
        let data = match (&self.data, &other.data) {
            (ElemData::Prime(a), ElemData::Prime(b)) => {
                ElemData::Prime((a * b) % self.field.0.p)
            }
            (ElemData::Ext(a), ElemData::Ext(b)) => {
                let base = self.field.base().unwrap();
                let d = self.field.degree();
                let mut prod = vec![base.zero(); 2 * d - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if !y.is_zero() {
                            prod[i + j] = prod[i + j].add(&x.mul(y));
                        }
                    }
                }
                // reduce by the monic modulus
                let modulus = self.field.modulus().unwrap();
                for k in (d..prod.len()).rev() {
                    if prod[k].is_zero() {
                        continue;
                    }
                    let c = prod[k].clone();
                    prod[k] = base.zero();
                    for t in 0..d {
                        let mc = modulus.coeff(t);
                        if !mc.is_zero() {
                            prod[k - d + t] = prod[k - d + t].sub(&c.mul(&mc));
                        }
                    }
                }
                prod.truncate(d);
                ElemData::Ext(prod)
            }
            _ => unreachable!(),
        };
        Elem {
            field: self.field.clone(),
            data,
        }
    }

    pub fn inv(&self) -> Result<Elem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.data {
            ElemData::Prime(_) => {
                // Fermat: a^(p-2)
                Ok(self.pow(self.field.0.p as u128 - 2))
            }
            ElemData::Ext(_) => {
                let modulus = self.field.modulus().unwrap();
                let poly = self.to_base_poly();
                let (g, u, _) = poly.extended_gcd(modulus);
                debug_assert_eq!(g.degree(), Some(0));
                let scale = g.coeff(0).inv()?;
                let inv_poly = u.mul_scalar(&scale);
                Ok(Elem::from_base_poly(&self.field, &inv_poly))
            }
        }
    }

    pub fn pow(&self, mut e: u128) -> Elem {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Unique `d0` with `d0^(p^s) = self`, obtained by inverting the
    /// Frobenius `x -> x^p` (which has order `r` over a field of `p^r`
    /// elements) the appropriate number of times.
    pub fn frobenius_root(&self, s: u32) -> Result<Elem> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let p = self.field.characteristic();
        let r = self.field.total_degree() as u32;
        let e = (r - (s % r)) % r;
        let mut out = self.clone();
        for _ in 0..e {
            out = out.pow(p as u128);
        }
        let mut chk = out.clone();
        for _ in 0..s {
            chk = chk.pow(p as u128);
        }
        assert!(chk == *self, "frobenius_root postcondition failed");
        Ok(out)
    }

    /// Extension element as a polynomial over the base field.
    pub(crate) fn to_base_poly(&self) -> UniPoly {
        match &self.data {
            ElemData::Prime(_) => panic!("to_base_poly on a prime-field element"),
            ElemData::Ext(cs) => UniPoly::from_coeffs(
                self.field.base().unwrap(),
                self.field.var().unwrap(),
                cs.to_vec(),
            ),
        }
    }

    /// Build an extension element from a base-field polynomial of degree
    /// less than the extension degree.
    pub(crate) fn from_base_poly(field: &Field, p: &UniPoly) -> Elem {
        let d = field.degree();
        let base = field.base().unwrap();
        assert!(p.degree().map_or(true, |dd| dd < d), "degree overflow");
        let coeffs = (0..d).map(|i| p.coeff(i)).collect();
        let _ = base;
        Elem {
            field: field.clone(),
            data: ElemData::Ext(coeffs),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.data {
            ElemData::Prime(v) => write!(f, "{v}"),
            ElemData::Ext(_) => write!(f, "{}", self.to_base_poly()),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::ops::Add for &Elem {
    type Output = Elem;
    fn add(self, rhs: &Elem) -> Elem {
        Elem::add(self, rhs)
    }
}

impl std::ops::Sub for &Elem {
    type Output = Elem;
    fn sub(self, rhs: &Elem) -> Elem {
        Elem::sub(self, rhs)
    }
}

impl std::ops::Mul for &Elem {
    type Output = Elem;
    fn mul(self, rhs: &Elem) -> Elem {
        Elem::mul(self, rhs)
    }
}

impl std::ops::Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::UniPoly;

    fn f4() -> Field {
        let f2 = Field::prime(2).unwrap();
        // z^2 + z + 1
        let m = UniPoly::from_coeffs(&f2, 'z', vec![f2.one(), f2.one(), f2.one()]);
        Field::extension(m).unwrap()
    }

    fn f9() -> Field {
        let f3 = Field::prime(3).unwrap();
        // w^2 + 1
        let m = UniPoly::from_coeffs(&f3, 'w', vec![f3.one(), f3.zero(), f3.one()]);
        Field::extension(m).unwrap()
    }

    #[test]
    fn prime_field_inverse() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.from_int(2).inv().unwrap(), f5.from_int(3));
        assert!(f5.zero().inv().is_err());
    }

    #[test]
    fn f9_square_of_generator_is_minus_one() {
        let f = f9();
        let w = f.modulus_root().unwrap();
        assert_eq!(w.mul(&w), f.one().neg());
    }

    #[test]
    fn f4_modulus_relation() {
        let f = f4();
        let z = f.modulus_root().unwrap();
        let z1 = z.add(&f.one());
        assert!(z.mul(&z1).is_one());
    }

    #[test]
    fn rejects_bad_constructions() {
        assert!(Field::prime(6).is_err());
        let f5 = Field::prime(5).unwrap();
        // x^2 + 1 = (x+2)(x+3) over F_5 is reducible
        let m = UniPoly::from_coeffs(&f5, 'w', vec![f5.one(), f5.zero(), f5.one()]);
        assert!(Field::extension(m).is_err());
    }

    #[test]
    fn inverses_exhaustive_small_fields() {
        for field in [Field::prime(2).unwrap(), Field::prime(7).unwrap(), f4(), f9()] {
            for a in field.elems().skip(1) {
                assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn frobenius_identity_exhaustive() {
        // (a^p)^(p^(r-1)) = a for every element of fields of size <= 81
        for field in [f4(), f9()] {
            let p = field.characteristic() as u128;
            let r = field.total_degree() as u32;
            for a in field.elems() {
                let mut b = a.pow(p);
                for _ in 0..r - 1 {
                    b = b.pow(p);
                }
                assert_eq!(b, a);
            }
        }
    }

    #[test]
    fn frobenius_root_examples() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(f2.one().frobenius_root(2).unwrap(), f2.one());

        let f = f9();
        let w = f.modulus_root().unwrap();
        let d0 = w.frobenius_root(1).unwrap();
        assert_eq!(d0, w.pow(3));
        assert_eq!(d0.pow(3), w);
        // exhaustive uniqueness of the cube root in F_9
        let mut count = 0;
        for a in f.elems() {
            if a.pow(3) == w {
                count += 1;
                assert_eq!(a, d0);
            }
        }
        assert_eq!(count, 1);
    }

    #[test]
    fn frobenius_root_exhaustive_small_fields() {
        for field in [Field::prime(5).unwrap(), f4(), f9()] {
            let p = field.characteristic() as u128;
            for s in 0..4u32 {
                for a in field.elems().skip(1) {
                    let root = a.frobenius_root(s).unwrap();
                    let mut chk = root;
                    for _ in 0..s {
                        chk = chk.pow(p);
                    }
                    assert_eq!(chk, a);
                }
            }
        }
    }

    #[test]
    fn enumeration_round_trips() {
        let f = f9();
        for i in 0..f.order() {
            assert_eq!(f.elem_from_index(i).index(), i);
        }
    }
}
