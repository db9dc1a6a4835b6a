//! Exact row reduction over any [`Field`], used for ideal spans, rank
//! arguments and dual-space computations.

use crate::gf::{Elem, Field};

/// Reduced row echelon form; zero rows are dropped and rows are ordered by
/// pivot column, so the output is a canonical basis of the row span.
pub fn rref(rows: Vec<Vec<Elem>>) -> Vec<Vec<Elem>> {
    let mut basis: Vec<(usize, Vec<Elem>)> = Vec::new();
    for row in rows {
        if let Some((piv, normalized)) = reduce_against(row, &basis) {
            let pos = basis.partition_point(|(p, _)| *p < piv);
            basis.insert(pos, (piv, normalized));
        }
    }
    // back-substitution to full reduced form
    for i in (0..basis.len()).rev() {
        let (piv, row) = basis[i].clone();
        for j in 0..i {
            let c = basis[j].1[piv].clone();
            if !c.is_zero() {
                for (dst, src) in basis[j].1.iter_mut().zip(row.iter()) {
                    *dst = dst.sub(&c.mul(src));
                }
            }
        }
    }
    basis.into_iter().map(|(_, r)| r).collect()
}

/// Reduce a row against pivot rows; returns the pivot column and the
/// pivot-normalized remainder, or `None` if the row lies in the span.
fn reduce_against(mut row: Vec<Elem>, basis: &[(usize, Vec<Elem>)]) -> Option<(usize, Vec<Elem>)> {
    for (piv, b) in basis {
        let c = row[*piv].clone();
        if !c.is_zero() {
            for (dst, src) in row.iter_mut().zip(b.iter()) {
                *dst = dst.sub(&c.mul(src));
            }
        }
    }
    let piv = row.iter().position(|c| !c.is_zero())?;
    let inv = row[piv].inv().expect("pivot is a unit");
    for c in row.iter_mut() {
        *c = c.mul(&inv);
    }
    Some((piv, row))
}

pub fn rank(rows: &[Vec<Elem>]) -> usize {
    rref(rows.to_vec()).len()
}

/// Membership of `v` in the row span of an RREF basis.
pub fn in_span(basis: &[Vec<Elem>], v: &[Elem]) -> bool {
    let mut row = v.to_vec();
    for b in basis {
        let piv = b.iter().position(|c| !c.is_zero()).expect("basis row");
        let c = row[piv].clone();
        if !c.is_zero() {
            for (dst, src) in row.iter_mut().zip(b.iter()) {
                *dst = dst.sub(&c.mul(src));
            }
        }
    }
    row.iter().all(Elem::is_zero)
}

/// Two row sets span the same subspace.
pub fn spans_equal(a: &[Vec<Elem>], b: &[Vec<Elem>]) -> bool {
    rref(a.to_vec()) == rref(b.to_vec())
}

/// Euclidean inner product.
pub fn dot(u: &[Elem], v: &[Elem]) -> Elem {
    assert_eq!(u.len(), v.len());
    let mut acc = u[0].field().zero();
    for (a, b) in u.iter().zip(v) {
        acc = acc.add(&a.mul(b));
    }
    acc
}

/// All pairwise inner products of the rows vanish.
pub fn gram_is_zero(rows: &[Vec<Elem>]) -> bool {
    rows.iter()
        .enumerate()
        .all(|(i, u)| rows[i..].iter().all(|v| dot(u, v).is_zero()))
}

/// Product `A * B^T` is the zero matrix.
pub fn product_with_transpose_is_zero(a: &[Vec<Elem>], b: &[Vec<Elem>]) -> bool {
    a.iter().all(|u| b.iter().all(|v| dot(u, v).is_zero()))
}

/// Canonical basis of the null space `{v : M v = 0}` of the matrix with the
/// given rows, inside a space of the given width.
pub fn null_space(field: &Field, rows: &[Vec<Elem>], width: usize) -> Vec<Vec<Elem>> {
    let reduced = rref(rows.to_vec());
    let pivots: Vec<usize> = reduced
        .iter()
        .map(|r| r.iter().position(|c| !c.is_zero()).unwrap())
        .collect();
    let mut basis = Vec::new();
    for free in (0..width).filter(|i| !pivots.contains(i)) {
        let mut v = vec![field.zero(); width];
        v[free] = field.one();
        for (r, p) in reduced.iter().zip(&pivots) {
            v[*p] = r[free].neg();
        }
        basis.push(v);
    }
    rref(basis)
}
