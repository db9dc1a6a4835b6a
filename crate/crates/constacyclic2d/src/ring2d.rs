//! The ambient quotient ring `S = F_q[x,y] / <x^n - λ, y^m - δ>` and its
//! dual-side twin `T` (λ and δ replaced by their inverses).
//!
//! An element is an `m x n` coefficient array, entry `(j, i)` holding the
//! coefficient of `x^i y^j`. The x-direction is always the one coprime to
//! the characteristic: if the caller's `n` is not coprime but `m` is, the
//! constructor transposes the two directions and records it so output can be
//! presented in the original orientation.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg;
use crate::poly::UniPoly;

pub type Ambient = Arc<AmbientSpec>;

pub struct AmbientSpec {
    field: Field,
    n: usize,
    m: usize,
    lambda: Elem,
    delta: Elem,
    m_prime: usize,
    s: u32,
    /// Canonical factors of `x^n - λ` (monic irreducible, sorted).
    factors: Vec<UniPoly>,
    /// `K_j = F_q[x]/(f_j)`.
    towers: Vec<Field>,
    transposed: bool,
}

impl AmbientSpec {
    /// Ambient ring for the given area and shift constants. Exactly one of
    /// the two directions may be divisible by the characteristic; if it is
    /// the x-direction, the roles are swapped internally.
    pub fn new(field: &Field, n: usize, lambda: &Elem, m: usize, delta: &Elem) -> Result<Ambient> {
        if n == 0 || m == 0 {
            return Err(Error::Unsupported("area must be positive".into()));
        }
        if lambda.is_zero() || delta.is_zero() {
            return Err(Error::ZeroInput);
        }
        if lambda.field() != field || delta.field() != field {
            return Err(Error::MixedFields);
        }
        let p = field.characteristic() as usize;
        if n % p != 0 {
            Self::new_internal(field, n, lambda, m, delta, false)
        } else if m % p != 0 {
            Self::new_internal(field, m, delta, n, lambda, true)
        } else {
            Err(Error::Unsupported(format!(
                "both directions ({n} and {m}) divisible by the characteristic {p}"
            )))
        }
    }

    fn new_internal(
        field: &Field,
        n: usize,
        lambda: &Elem,
        m: usize,
        delta: &Elem,
        transposed: bool,
    ) -> Result<Ambient> {
        let p = field.characteristic();
        let mut m_prime = m;
        let mut s = 0u32;
        while m_prime % p as usize == 0 {
            m_prime /= p as usize;
            s += 1;
        }
        let x_modulus = UniPoly::power_minus(field, 'x', n, lambda);
        let fact = x_modulus.factor()?;
        debug_assert!(fact.unit.is_one());
        debug_assert!(fact.factors.iter().all(|(_, e)| *e == 1));
        let factors: Vec<UniPoly> = fact.factors.into_iter().map(|(f, _)| f).collect();
        let towers = factors
            .iter()
            .map(|f| Field::extension(f.clone()))
            .collect::<Result<Vec<_>>>()?;
        debug_assert_eq!(factors.iter().map(|f| f.degree().unwrap()).sum::<usize>(), n);
        Ok(Arc::new(AmbientSpec {
            field: field.clone(),
            n,
            m,
            lambda: lambda.clone(),
            delta: delta.clone(),
            m_prime,
            s,
            factors,
            towers,
            transposed,
        }))
    }

    /// The dual-side ring `T` with λ and δ inverted, in the same orientation.
    pub fn dual(&self) -> Ambient {
        Self::new_internal(
            &self.field,
            self.n,
            &self.lambda.inv().expect("lambda is a unit"),
            self.m,
            &self.delta.inv().expect("delta is a unit"),
            self.transposed,
        )
        .expect("dual ambient construction")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn lambda(&self) -> &Elem {
        &self.lambda
    }

    pub fn delta(&self) -> &Elem {
        &self.delta
    }

    /// `m = m' p^s` with `gcd(m', p) = 1`.
    pub fn m_prime(&self) -> usize {
        self.m_prime
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Code length `n * m`.
    pub fn len(&self) -> usize {
        self.n * self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of irreducible factors of `x^n - λ`.
    pub fn eta(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[UniPoly] {
        &self.factors
    }

    pub fn factor(&self, j: usize) -> &UniPoly {
        &self.factors[j]
    }

    /// `K_j = F_q[x]/(f_j)`.
    pub fn tower(&self, j: usize) -> &Field {
        &self.towers[j]
    }

    pub fn towers(&self) -> &[Field] {
        &self.towers
    }

    /// `deg f_j`.
    pub fn factor_degree(&self, j: usize) -> usize {
        self.factors[j].degree().unwrap()
    }

    /// `y^m - δ` as a polynomial over `K_j`.
    pub fn y_modulus(&self, j: usize) -> UniPoly {
        let k = &self.towers[j];
        UniPoly::power_minus(k, 'y', self.m, &k.embed(&self.delta))
    }

    /// True when the constructor swapped the two directions.
    pub fn is_transposed(&self) -> bool {
        self.transposed
    }

    /// `(n, m)` in the caller's original orientation.
    pub fn user_nm(&self) -> (usize, usize) {
        if self.transposed {
            (self.m, self.n)
        } else {
            (self.n, self.m)
        }
    }

    /// `(λ, δ)` in the caller's original orientation.
    pub fn user_lambda_delta(&self) -> (Elem, Elem) {
        if self.transposed {
            (self.delta.clone(), self.lambda.clone())
        } else {
            (self.lambda.clone(), self.delta.clone())
        }
    }
}

impl PartialEq for AmbientSpec {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.n == other.n
            && self.m == other.m
            && self.lambda == other.lambda
            && self.delta == other.delta
    }
}

impl Eq for AmbientSpec {}

impl fmt::Display for AmbientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[x,y]/<x^{} - ({}), y^{} - ({})>",
            self.field, self.n, self.lambda, self.m, self.delta
        )
    }
}

impl fmt::Debug for AmbientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn assert_same_ambient(a: &RingElement2D, b: &RingElement2D) {
    assert!(
        *a.ambient == *b.ambient,
        "mixed ambient rings in element arithmetic"
    );
}

/// An element of the ambient ring as a dense `m x n` coefficient array.
#[derive(Clone)]
pub struct RingElement2D {
    ambient: Ambient,
    /// Row-major, index `j * n + i` for the coefficient of `x^i y^j`.
    coeffs: Vec<Elem>,
}

impl RingElement2D {
    pub fn zero(ambient: &Ambient) -> Self {
        RingElement2D {
            ambient: ambient.clone(),
            coeffs: vec![ambient.field().zero(); ambient.len()],
        }
    }

    pub fn one(ambient: &Ambient) -> Self {
        let mut e = Self::zero(ambient);
        e.coeffs[0] = ambient.field().one();
        e
    }

    /// `c * x^i y^j` with exponents already in range.
    pub fn monomial(ambient: &Ambient, i: usize, j: usize, c: &Elem) -> Self {
        assert!(i < ambient.n() && j < ambient.m(), "monomial out of range");
        let mut e = Self::zero(ambient);
        e.coeffs[j * ambient.n() + i] = c.clone();
        e
    }

    /// `c * x^i y^j` for arbitrary exponents, reduced via `x^n = λ`, `y^m = δ`.
    pub fn wrapped_monomial(ambient: &Ambient, i: usize, j: usize, c: &Elem) -> Self {
        let (n, m) = (ambient.n(), ambient.m());
        let mut coeff = c.clone();
        for _ in 0..i / n {
            coeff = coeff.mul(ambient.lambda());
        }
        for _ in 0..j / m {
            coeff = coeff.mul(ambient.delta());
        }
        Self::monomial(ambient, i % n, j % m, &coeff)
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn get(&self, j: usize, i: usize) -> &Elem {
        &self.coeffs[j * self.ambient.n() + i]
    }

    pub fn set(&mut self, j: usize, i: usize, c: Elem) {
        self.coeffs[j * self.ambient.n() + i] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Elem::is_zero)
    }

    /// Hamming weight of the coefficient array.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_same_ambient(self, other);
        RingElement2D {
            ambient: self.ambient.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_same_ambient(self, other);
        RingElement2D {
            ambient: self.ambient.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        RingElement2D {
            ambient: self.ambient.clone(),
            coeffs: self.coeffs.iter().map(Elem::neg).collect(),
        }
    }

    pub fn scale(&self, c: &Elem) -> Self {
        RingElement2D {
            ambient: self.ambient.clone(),
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Ring product, reducing by `x^n = λ` and `y^m = δ`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_same_ambient(self, other);
        let amb = &self.ambient;
        let (n, m) = (amb.n(), amb.m());
        let mut out = Self::zero(amb);
        for j1 in 0..m {
            for i1 in 0..n {
                let a = self.get(j1, i1);
                if a.is_zero() {
                    continue;
                }
                for j2 in 0..m {
                    for i2 in 0..n {
                        let b = other.get(j2, i2);
                        if b.is_zero() {
                            continue;
                        }
                        let mut c = a.mul(b);
                        let (mut i, mut j) = (i1 + i2, j1 + j2);
                        if i >= n {
                            i -= n;
                            c = c.mul(amb.lambda());
                        }
                        if j >= m {
                            j -= m;
                            c = c.mul(amb.delta());
                        }
                        let cur = out.get(j, i).add(&c);
                        out.set(j, i, cur);
                    }
                }
            }
        }
        out
    }

    /// The constacyclic shift `Θ^{j,i}` (multiplication by `x^i y^j`).
    pub fn shift(&self, j: usize, i: usize) -> Self {
        let amb = &self.ambient;
        let mut out = Self::zero(amb);
        for j0 in 0..amb.m() {
            for i0 in 0..amb.n() {
                let c = self.get(j0, i0);
                if c.is_zero() {
                    continue;
                }
                let term = Self::wrapped_monomial(amb, i0 + i, j0 + j, c);
                out = out.add(&term);
            }
        }
        out
    }

    /// Embed a polynomial in x (reduced by `x^n = λ`).
    pub fn from_x_poly(ambient: &Ambient, p: &UniPoly) -> Self {
        assert!(p.field() == ambient.field() && p.var() == 'x');
        let mut out = Self::zero(ambient);
        for (i, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&Self::wrapped_monomial(ambient, i, 0, c));
            }
        }
        out
    }

    /// Embed a polynomial in y with plain `F_q` coefficients.
    pub fn from_y_poly(ambient: &Ambient, p: &UniPoly) -> Self {
        assert!(p.field() == ambient.field() && p.var() == 'y');
        let mut out = Self::zero(ambient);
        for (j, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&Self::wrapped_monomial(ambient, 0, j, c));
            }
        }
        out
    }

    /// Lift a polynomial over `K_j` into the ambient ring by writing each
    /// coefficient as an x-polynomial of degree below `deg f_j`.
    pub fn lift_tower_poly(ambient: &Ambient, j: usize, g: &UniPoly) -> Self {
        assert!(g.field() == ambient.tower(j), "lift from the wrong tower");
        let mut out = Self::zero(ambient);
        for (l, c) in g.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, a) in c.coeffs().expect("tower element").iter().enumerate() {
                if !a.is_zero() {
                    out = out.add(&Self::wrapped_monomial(ambient, i, l, a));
                }
            }
        }
        out
    }

    /// Projection into `S_j = K_j[y]/(y^m - δ)`: reduce x-coefficients
    /// modulo `f_j`.
    pub fn psi(&self, j: usize) -> Result<UniPoly> {
        let amb = &self.ambient;
        if j >= amb.eta() {
            return Err(Error::BadIndex);
        }
        let k = amb.tower(j);
        let f_j = amb.factor(j);
        let d = f_j.degree().unwrap();
        let mut coeffs = Vec::with_capacity(amb.m());
        for row in 0..amb.m() {
            let x_poly = UniPoly::from_coeffs(
                amb.field(),
                'x',
                (0..amb.n()).map(|i| self.get(row, i).clone()).collect(),
            );
            let r = x_poly.rem(f_j).expect("factor is nonzero");
            let elem_coeffs: Vec<Elem> = (0..d).map(|i| r.coeff(i)).collect();
            coeffs.push(elem_from_tower_coeffs(k, elem_coeffs));
        }
        Ok(UniPoly::from_coeffs(k, 'y', coeffs))
    }

    /// Degree-padded reversal `a ↦ x^{n-1} y^{m-1} a(1/x, 1/y)`, considered
    /// as an element of the opposite ring (S and T swap).
    pub fn circledast(&self) -> Self {
        let amb = &self.ambient;
        let target = amb.dual();
        let (n, m) = (amb.n(), amb.m());
        let mut out = Self::zero(&target);
        for j in 0..m {
            for i in 0..n {
                out.set(m - 1 - j, n - 1 - i, self.get(j, i).clone());
            }
        }
        out
    }

    /// Flattened codeword: y-degree blocks of n x-coefficients each.
    pub fn flatten(&self) -> Vec<Elem> {
        self.coeffs.clone()
    }

    /// Rebuild from a flattened vector.
    pub fn from_flat(ambient: &Ambient, coeffs: Vec<Elem>) -> Self {
        assert_eq!(coeffs.len(), ambient.len());
        RingElement2D {
            ambient: ambient.clone(),
            coeffs,
        }
    }
}

impl PartialEq for RingElement2D {
    fn eq(&self, other: &Self) -> bool {
        *self.ambient == *other.ambient && self.coeffs == other.coeffs
    }
}

impl Eq for RingElement2D {}

impl fmt::Debug for RingElement2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::textio::ring_element_string(self))
    }
}

/// Unique preimage of per-factor components under the CRT splitting: the
/// element whose `psi_j` image is `components[j]` for every `j`.
pub fn crt_inverse(ambient: &Ambient, components: &[UniPoly]) -> Result<RingElement2D> {
    if components.len() != ambient.eta() {
        return Err(Error::BadIndex);
    }
    let mut out = RingElement2D::zero(ambient);
    for (j, comp) in components.iter().enumerate() {
        if comp.degree().map_or(false, |d| d >= ambient.m()) {
            return Err(Error::DegreeOverflow);
        }
        if comp.field() != ambient.tower(j) {
            return Err(Error::MixedFields);
        }
        if comp.is_zero() {
            continue;
        }
        // e_j = M_j * (M_j^{-1} mod f_j) is 1 in slot j and 0 elsewhere
        let mut m_j = UniPoly::one(ambient.field(), 'x');
        for (i, f) in ambient.factors().iter().enumerate() {
            if i != j {
                m_j = m_j.mul(f);
            }
        }
        let k = ambient.tower(j);
        let m_j_in_k = x_poly_to_tower(k, &m_j);
        let u = m_j_in_k.inv().expect("CRT cofactor is a unit");
        let u_poly = tower_elem_to_x_poly(ambient.field(), &u);
        let e_j = RingElement2D::from_x_poly(ambient, &m_j.mul(&u_poly));
        let lifted = RingElement2D::lift_tower_poly(ambient, j, comp);
        out = out.add(&lifted.mul(&e_j));
    }
    debug_assert!((0..ambient.eta()).all(|j| {
        let img = out.psi(j).unwrap();
        let want = components[j].clone();
        img == want
    }));
    Ok(out)
}

/// Reduce an x-polynomial over `F_q` into the tower field `K_j`.
pub(crate) fn x_poly_to_tower(k: &Field, p: &UniPoly) -> Elem {
    let f_j = k.modulus().unwrap();
    let r = p.rem(f_j).expect("tower modulus is nonzero");
    let d = k.degree();
    let coeffs: Vec<Elem> = (0..d).map(|i| r.coeff(i)).collect();
    elem_from_tower_coeffs(k, coeffs)
}

/// Write a tower element as an x-polynomial over `F_q`.
pub(crate) fn tower_elem_to_x_poly(field: &Field, e: &Elem) -> UniPoly {
    UniPoly::from_coeffs(field, 'x', e.coeffs().expect("tower element").to_vec())
}

fn elem_from_tower_coeffs(k: &Field, coeffs: Vec<Elem>) -> Elem {
    let poly = UniPoly::from_coeffs(k.base().unwrap(), k.var().unwrap(), coeffs);
    crate::gf::Elem::from_base_poly(k, &poly)
}

/// An ideal presented as a canonical row-reduced basis of the underlying
/// `F_q`-subspace. Used both as a cross-check oracle for the canonical
/// generator machinery and as the workhorse of the prior-work checks.
#[derive(Clone, PartialEq, Eq)]
pub struct IdealSpan {
    ambient: Ambient,
    basis: Vec<Vec<Elem>>,
}

impl fmt::Debug for IdealSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdealSpan(dim {} of {})", self.dim(), self.ambient.len())
    }
}

impl IdealSpan {
    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn contains_vec(&self, v: &[Elem]) -> bool {
        linalg::in_span(&self.basis, v)
    }

    pub fn contains(&self, e: &RingElement2D) -> bool {
        assert!(**e.ambient() == *self.ambient, "mixed ambient rings");
        self.contains_vec(&e.flatten())
    }

    /// Dedup / ordering key: element indices of the reduced basis.
    pub fn key(&self) -> Vec<Vec<u64>> {
        self.basis
            .iter()
            .map(|row| row.iter().map(Elem::index).collect())
            .collect()
    }
}

/// Smallest x,y-stable subspace containing the generators: saturate by
/// multiplying by x and y until closure, then row-reduce to canonical form.
pub fn ideal_span(ambient: &Ambient, generators: &[RingElement2D]) -> IdealSpan {
    let mut pivots: Vec<(usize, Vec<Elem>)> = Vec::new();
    let mut queue: std::collections::VecDeque<RingElement2D> = generators
        .iter()
        .inspect(|g| assert!(**g.ambient() == **ambient, "mixed ambient rings"))
        .cloned()
        .collect();
    while let Some(g) = queue.pop_front() {
        let row = g.flatten();
        if insert_reduced(&mut pivots, row) {
            queue.push_back(g.shift(0, 1));
            queue.push_back(g.shift(1, 0));
        }
    }
    let basis = linalg::rref(pivots.into_iter().map(|(_, r)| r).collect());
    IdealSpan {
        ambient: ambient.clone(),
        basis,
    }
}

fn insert_reduced(pivots: &mut Vec<(usize, Vec<Elem>)>, mut row: Vec<Elem>) -> bool {
    for (piv, b) in pivots.iter() {
        let c = row[*piv].clone();
        if !c.is_zero() {
            for (dst, src) in row.iter_mut().zip(b.iter()) {
                *dst = dst.sub(&c.mul(src));
            }
        }
    }
    if let Some(piv) = row.iter().position(|c| !c.is_zero()) {
        let inv = row[piv].inv().expect("pivot is a unit");
        for c in row.iter_mut() {
            *c = c.mul(&inv);
        }
        let pos = pivots.partition_point(|(p, _)| *p < piv);
        pivots.insert(pos, (piv, row));
        true
    } else {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    /// The `F_2, n = m = 3, λ = δ = 1` ambient used throughout the worked
    /// examples.
    pub(crate) fn cyclic_3x3() -> Ambient {
        let f = f2();
        AmbientSpec::new(&f, 3, &f.one(), 3, &f.one()).unwrap()
    }

    fn parse(amb: &Ambient, s: &str) -> RingElement2D {
        textio::parse_ring_element(amb, s).unwrap()
    }

    #[test]
    fn spec_normalization_and_factors() {
        let amb = cyclic_3x3();
        assert_eq!(amb.eta(), 2);
        assert_eq!(format!("{}", amb.factor(0)), "x+1");
        assert_eq!(format!("{}", amb.factor(1)), "x^2+x+1");
        assert_eq!((amb.m_prime(), amb.s()), (3, 0));
        assert!(!amb.is_transposed());
    }

    #[test]
    fn transposes_when_x_side_is_repeated_root() {
        let f = f2();
        let amb = AmbientSpec::new(&f, 2, &f.one(), 3, &f.one()).unwrap();
        assert!(amb.is_transposed());
        assert_eq!((amb.n(), amb.m()), (3, 2));
        assert_eq!(amb.user_nm(), (2, 3));
        assert!(AmbientSpec::new(&f, 2, &f.one(), 4, &f.one()).is_err());
    }

    #[test]
    fn defining_relations() {
        let amb = cyclic_3x3();
        let x = parse(&amb, "x");
        let xn1 = parse(&amb, "x^2");
        // x^(n-1) * x = λ = 1
        assert_eq!(xn1.mul(&x), RingElement2D::one(&amb));
        // (y^2+y+1)(y+1) = y^3 + 1 = δ + 1 = 0 over F_2
        let a = parse(&amb, "y^2+y+1");
        let b = parse(&amb, "y+1");
        assert!(a.mul(&b).is_zero());
    }

    #[test]
    fn product_matches_generator_matrix_row() {
        let amb = cyclic_3x3();
        let a = parse(&amb, "(y+x)*(x+1)");
        let shifted = a.shift(0, 1);
        let flat: Vec<u64> = shifted.flatten().iter().map(Elem::index).collect();
        assert_eq!(flat, vec![1, 0, 1, 0, 1, 1, 0, 0, 0]);
    }

    #[test]
    fn flatten_layout() {
        let amb = cyclic_3x3();
        let a = parse(&amb, "(y+x)*(x+1)");
        let flat: Vec<u64> = a.flatten().iter().map(Elem::index).collect();
        assert_eq!(flat, vec![0, 1, 1, 1, 1, 0, 0, 0, 0]);
        assert!(RingElement2D::zero(&amb).is_zero());
        let top = RingElement2D::monomial(&amb, 2, 2, &amb.field().one());
        let flat: Vec<u64> = top.flatten().iter().map(Elem::index).collect();
        assert_eq!(flat, vec![0, 0, 0, 0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn psi_worked_examples() {
        let amb = cyclic_3x3();
        let h1 = parse(&amb, "y^2*x^2+y^2*x+x+1");
        let h2 = parse(&amb, "y^2*x+y*x+x");
        assert!(h1.psi(0).unwrap().is_zero());
        let k2 = amb.tower(1);
        let x = k2.modulus_root().unwrap();
        let expect = UniPoly::from_coeffs(k2, 'y', vec![x.clone(), x.clone(), x.clone()]);
        // ψ_2(h_2) = x*y^2 + x*y + x, the unit x times (y+x)(y+x+1)
        assert_eq!(h2.psi(1).unwrap(), expect);
        let ypx = UniPoly::from_coeffs(k2, 'y', vec![x.clone(), k2.one()]);
        let ypx1 = UniPoly::from_coeffs(k2, 'y', vec![x.add(&k2.one()), k2.one()]);
        assert_eq!(ypx.mul(&ypx1), expect.monic());
        // anything multiplied by f_j dies under ψ_j
        let f1 = RingElement2D::from_x_poly(&amb, amb.factor(0));
        assert!(h2.mul(&f1).psi(0).unwrap().is_zero());
    }

    #[test]
    fn crt_round_trip() {
        let amb = cyclic_3x3();
        let zeros: Vec<UniPoly> = (0..amb.eta())
            .map(|j| UniPoly::zero(amb.tower(j), 'y'))
            .collect();
        assert!(crt_inverse(&amb, &zeros).unwrap().is_zero());

        for idx in [3u64, 17, 101, 250, 444] {
            let mut e = RingElement2D::zero(&amb);
            let mut v = idx;
            for j in 0..3 {
                for i in 0..3 {
                    e.set(j, i, amb.field().elem_from_index(v % 2));
                    v /= 2;
                }
            }
            let comps: Vec<UniPoly> = (0..amb.eta()).map(|j| e.psi(j).unwrap()).collect();
            assert_eq!(crt_inverse(&amb, &comps).unwrap(), e);
        }
    }

    #[test]
    fn psi_is_a_ring_homomorphism() {
        let amb = cyclic_3x3();
        let a = parse(&amb, "y^2*x+y+1");
        let b = parse(&amb, "x^2+y^2+x");
        for j in 0..amb.eta() {
            assert_eq!(
                a.mul(&b).psi(j).unwrap(),
                a.psi(j)
                    .unwrap()
                    .mul(&b.psi(j).unwrap())
                    .rem(&amb.y_modulus(j))
                    .unwrap()
            );
            assert_eq!(
                a.add(&b).psi(j).unwrap(),
                a.psi(j).unwrap().add(&b.psi(j).unwrap())
            );
        }
    }

    #[test]
    fn circledast_examples() {
        let amb = cyclic_3x3();
        let one = RingElement2D::one(&amb);
        let rev = one.circledast();
        let top: Vec<u64> = rev.flatten().iter().map(Elem::index).collect();
        assert_eq!(top, vec![0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let a = parse(&amb, "(y+x)*(x+1)");
        assert_eq!(a.circledast().circledast(), a);
        assert!(RingElement2D::zero(&amb).circledast().is_zero());
    }

    #[test]
    fn ideal_span_examples() {
        let amb = cyclic_3x3();
        let whole = ideal_span(&amb, &[RingElement2D::one(&amb)]);
        assert_eq!(whole.dim(), 9);

        let h1 = parse(&amb, "y^2*x^2+y^2*x+x+1");
        let h2 = parse(&amb, "y^2*x+y*x+x");
        let h3 = parse(&amb, "y^2*x^2+y^2+y*x^2+y+x^2+1");
        let span = ideal_span(&amb, &[h1, h2, h3]);
        assert_eq!(span.dim(), 5);
    }

    #[test]
    fn ideal_span_used_by_priorcheck() {
        // <x^s - 1, y + 2> over F_5 with s = 1, 2^k-side m = 4 gives dim 3
        let f5 = Field::prime(5).unwrap();
        let amb = AmbientSpec::new(&f5, 1, &f5.one(), 4, &f5.one()).unwrap();
        let gen = textio::parse_ring_element(&amb, "y+2").unwrap();
        let span = ideal_span(&amb, &[gen]);
        assert_eq!(span.dim(), 3);
    }

    #[test]
    fn principal_span_dimension_matches_divisor_structure() {
        let amb = cyclic_3x3();
        for idx in [5u64, 21, 73, 200, 311, 505] {
            let mut e = RingElement2D::zero(&amb);
            let mut v = idx;
            for j in 0..3 {
                for i in 0..3 {
                    e.set(j, i, amb.field().elem_from_index(v % 2));
                    v /= 2;
                }
            }
            let span = ideal_span(&amb, std::slice::from_ref(&e));
            let mut expected = amb.len();
            for j in 0..amb.eta() {
                let g = e.psi(j).unwrap().gcd(&amb.y_modulus(j));
                expected -= amb.factor_degree(j) * g.degree().unwrap_or(0);
            }
            if e.is_zero() {
                assert_eq!(span.dim(), 0);
            } else {
                assert_eq!(span.dim(), expected);
            }
        }
    }
}
