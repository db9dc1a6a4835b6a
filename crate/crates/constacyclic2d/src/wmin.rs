//! Exact minimum Hamming distance by full message enumeration.
//!
//! Messages are walked in reflected mixed-radix Gray order, so each step
//! changes a single message digit by one position in the field enumeration
//! and the current codeword is updated by one scaled row addition. Field
//! arithmetic is lowered to small index tables first.

use crate::code2d::GeneratorMatrix;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg;

/// Enumeration budget. `allows(q, k)` requires `q^k <= 2^max_dimension` and
/// `q^k <= max_enumerations`; the defaults admit dimension 22 over `F_2`
/// and proportionally less over larger fields.
#[derive(Clone, Debug)]
pub struct DistanceBudget {
    pub max_dimension: u32,
    pub max_enumerations: u128,
}

impl Default for DistanceBudget {
    fn default() -> Self {
        DistanceBudget {
            max_dimension: 22,
            max_enumerations: 1 << 22,
        }
    }
}

impl DistanceBudget {
    pub fn with_enumerations(max_enumerations: u128) -> Self {
        DistanceBudget {
            max_dimension: 127,
            max_enumerations,
        }
    }

    pub fn allows(&self, q: u64, k: u32) -> bool {
        self.enumeration_count(q, k)
            .map_or(false, |c| c <= self.max_enumerations)
    }

    fn enumeration_count(&self, q: u64, k: u32) -> Option<u128> {
        let cap = 1u128.checked_shl(self.max_dimension.min(127))?;
        let mut acc: u128 = 1;
        for _ in 0..k {
            acc = acc.checked_mul(q as u128)?;
            if acc > cap || acc > self.max_enumerations {
                return None;
            }
        }
        Some(acc)
    }
}

/// Index-table arithmetic for a small field.
struct SmallField {
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
}

impl SmallField {
    fn build(field: &Field) -> Result<SmallField> {
        let q = field.order() as usize;
        if q > 1024 {
            return Err(Error::Unsupported(format!(
                "distance oracle limited to field order <= 1024, got {q}"
            )));
        }
        let elems: Vec<Elem> = field.elems().collect();
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for (a, ea) in elems.iter().enumerate() {
            for (b, eb) in elems.iter().enumerate() {
                add[a * q + b] = ea.add(eb).index() as u16;
                mul[a * q + b] = ea.mul(eb).index() as u16;
            }
        }
        let neg = elems.iter().map(|e| e.neg().index() as u16).collect();
        Ok(SmallField { q, add, mul, neg })
    }

    #[inline]
    fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }
}

/// Exact minimum weight of the row span, over all nonzero messages.
pub fn min_distance(g: &GeneratorMatrix, budget: &DistanceBudget) -> Result<u32> {
    min_distance_rows(g.ambient().field(), g.rows(), budget)
}

/// Same, for a bare row set over the given field.
pub fn min_distance_rows(
    field: &Field,
    rows: &[Vec<Elem>],
    budget: &DistanceBudget,
) -> Result<u32> {
    let basis = linalg::rref(rows.to_vec());
    let k = basis.len();
    if k == 0 {
        return Err(Error::EmptyCode);
    }
    let q = field.order();
    if !budget.allows(q, k as u32) {
        let needed = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        return Err(Error::BudgetExceeded {
            needed,
            budget: budget.max_enumerations.min(
                1u128
                    .checked_shl(budget.max_dimension.min(127))
                    .unwrap_or(u128::MAX),
            ),
        });
    }
    let sf = SmallField::build(field)?;
    let q = q as usize;
    let width = basis[0].len();
    let irows: Vec<Vec<u16>> = basis
        .iter()
        .map(|r| r.iter().map(|c| c.index() as u16).collect())
        .collect();
    let supports: Vec<Vec<usize>> = irows
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();

    // reflected mixed-radix Gray walk (Knuth 7.2.1.1, Algorithm H)
    let mut digits = vec![0usize; k];
    let mut focus: Vec<usize> = (0..=k).collect();
    let mut dir = vec![1i64; k];
    let mut codeword = vec![0u16; width];
    let mut weight: u32 = 0;
    let mut best = u32::MAX;
    loop {
        let j = focus[0];
        focus[0] = 0;
        if j == k {
            break;
        }
        let old = digits[j];
        let new = (old as i64 + dir[j]) as usize;
        digits[j] = new;
        if new == 0 || new == q - 1 {
            dir[j] = -dir[j];
            focus[j] = focus[j + 1];
            focus[j + 1] = j + 1;
        }
        // delta = elem[new] - elem[old]; codeword += delta * row_j.
        // The walk starts at the zero message and never revisits it, so
        // every post-step state is a nonzero message.
        let delta = sf.add(new as u16, sf.neg(old as u16));
        for &i in &supports[j] {
            let cell = &mut codeword[i];
            let was_zero = *cell == 0;
            *cell = sf.add(*cell, sf.mul(delta, irows[j][i]));
            match (was_zero, *cell == 0) {
                (true, false) => weight += 1,
                (false, true) => weight -= 1,
                _ => {}
            }
        }
        if weight < best {
            best = weight;
        }
    }
    Ok(best)
}

/// Column-dependency cross-oracle: true iff every `(d-1)`-subset of columns
/// of `h` is linearly independent and some `d`-subset is dependent.
pub fn verify_dependency_structure(
    h: &GeneratorMatrix,
    d: u32,
    budget: &DistanceBudget,
) -> Result<bool> {
    let cols: Vec<Vec<Elem>> = (0..h.width())
        .map(|i| h.rows().iter().map(|r| r[i].clone()).collect())
        .collect();
    let ncols = cols.len();
    let d = d as usize;
    if d == 0 || d > ncols {
        return Ok(false);
    }
    let work = binomial(ncols, d - 1)
        .and_then(|a| binomial(ncols, d).map(|b| a + b))
        .unwrap_or(u128::MAX);
    if work > budget.max_enumerations {
        return Err(Error::BudgetExceeded {
            needed: work,
            budget: budget.max_enumerations,
        });
    }
    let all_small_independent = subsets(ncols, d - 1)
        .all(|subset| rank_of(&cols, &subset) == d - 1);
    if !all_small_independent {
        return Ok(false);
    }
    let some_dependent = subsets(ncols, d).any(|subset| rank_of(&cols, &subset) < d);
    Ok(some_dependent)
}

fn rank_of(cols: &[Vec<Elem>], subset: &[usize]) -> usize {
    let rows: Vec<Vec<Elem>> = subset.iter().map(|&i| cols[i].clone()).collect();
    linalg::rank(&rows)
}

fn binomial(n: usize, k: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128;
    }
    Some(acc)
}

fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut state: Option<Vec<usize>> = if k <= n {
        Some((0..k).collect())
    } else {
        None
    };
    std::iter::from_fn(move || {
        let current = state.clone()?;
        // advance
        let mut next = current.clone();
        let mut i = k;
        loop {
            if i == 0 {
                state = None;
                break;
            }
            i -= 1;
            if next[i] < n - (k - i) {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                state = Some(next);
                break;
            }
        }
        Some(current)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code2d::Code2D;
    use crate::gf::Field;
    use crate::ring2d::{Ambient, AmbientSpec, RingElement2D};
    use crate::textio;

    fn cyclic_3x3() -> Ambient {
        let f = Field::prime(2).unwrap();
        AmbientSpec::new(&f, 3, &f.one(), 3, &f.one()).unwrap()
    }

    fn example_code(amb: &Ambient) -> Code2D {
        let gens = textio::parse_generators(
            amb,
            "y^2*x^2+y^2*x+x+1,y^2*x+y*x+x,y^2*x^2+y^2+y*x^2+y+x^2+1",
        )
        .unwrap();
        Code2D::canonicalize(amb, &gens).unwrap()
    }

    #[test]
    fn worked_example_distance() {
        let amb = cyclic_3x3();
        let c = example_code(&amb);
        let d = min_distance(&c.generator_matrix(), &DistanceBudget::default()).unwrap();
        assert_eq!(d, 3);
    }

    #[test]
    fn repetition_and_unit_codes() {
        let amb = cyclic_3x3();
        let all_ones = textio::parse_ring_element(
            &amb,
            "(1+x+x^2)*(1+y+y^2)",
        )
        .unwrap();
        let rep = Code2D::canonicalize(&amb, &[all_ones]).unwrap();
        assert_eq!(rep.dimension(), 1);
        assert_eq!(
            min_distance(&rep.generator_matrix(), &DistanceBudget::default()).unwrap(),
            9
        );

        let unit = Code2D::unit_code(&amb);
        assert_eq!(
            min_distance(&unit.generator_matrix(), &DistanceBudget::default()).unwrap(),
            1
        );

        let zero = Code2D::zero_code(&amb);
        assert_eq!(
            min_distance(&zero.generator_matrix(), &DistanceBudget::default()),
            Err(Error::EmptyCode)
        );
    }

    #[test]
    fn budget_refusal() {
        let amb = cyclic_3x3();
        let unit = Code2D::unit_code(&amb);
        let tight = DistanceBudget {
            max_dimension: 3,
            max_enumerations: 8,
        };
        assert!(matches!(
            min_distance(&unit.generator_matrix(), &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn gray_walk_matches_naive_enumeration_over_f9() {
        let f9 = textio::parse_field("GF(9; w^2+1)").unwrap();
        let minus1 = f9.one().neg();
        let amb = AmbientSpec::new(&f9, 2, &f9.one(), 2, &minus1).unwrap();
        let k1 = amb.tower(0);
        let w = f9.modulus_root().unwrap();
        let g1 = crate::poly::UniPoly::from_coeffs(k1, 'y', vec![k1.embed(&w), k1.one()]);
        let k2 = amb.tower(1);
        let g2 = crate::poly::UniPoly::from_coeffs(k2, 'y', vec![k2.embed(&w), k2.one()]);
        let c = Code2D::from_divisors(&amb, vec![g1, g2]).unwrap();
        let gm = c.generator_matrix();
        let fast = min_distance(&gm, &DistanceBudget::default()).unwrap();
        // naive: all 81 - 1 combinations of two basis rows
        let rows = gm.rows();
        let mut best = usize::MAX;
        for a in f9.elems() {
            for b in f9.elems() {
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                let w = (0..4)
                    .filter(|&i| !rows[0][i].mul(&a).add(&rows[1][i].mul(&b)).is_zero())
                    .count();
                best = best.min(w);
            }
        }
        assert_eq!(fast as usize, best);
    }

    #[test]
    fn dependency_oracle_on_worked_example() {
        let amb = cyclic_3x3();
        let c = example_code(&amb);
        let h = c.parity_check_matrix();
        assert!(verify_dependency_structure(&h, 3, &DistanceBudget::default()).unwrap());
        assert!(!verify_dependency_structure(&h, 2, &DistanceBudget::default()).unwrap());
        assert!(!verify_dependency_structure(&h, 4, &DistanceBudget::default()).unwrap());
    }

    #[test]
    fn identity_parity_check_means_distance_one() {
        // parity check of the unit ideal is empty; use the zero code instead:
        // its parity check has identity-like rank nm, and d = 1 fails the
        // (d-1)-clause only when some single column is zero. With no zero
        // column, d=1 requires a dependent 1-subset, i.e. a zero column.
        let amb = cyclic_3x3();
        let unit = Code2D::unit_code(&amb);
        let h = unit.generator_matrix(); // identity-rank rows, no zero column
        assert!(!verify_dependency_structure(&h, 1, &DistanceBudget::default()).unwrap());

        // a matrix with an actual zero column: parity check of the whole
        // space padded with a zero coordinate is artificial; instead check a
        // rank argument directly on the worked example's G with d=1.
        let c = example_code(&amb);
        assert!(!verify_dependency_structure(&c.generator_matrix(), 1, &DistanceBudget::default())
            .unwrap());
    }

    #[test]
    fn distance_invariant_under_shifts_and_row_ops() {
        let amb = cyclic_3x3();
        let c = example_code(&amb);
        let gm = c.generator_matrix();
        let d0 = min_distance(&gm, &DistanceBudget::default()).unwrap();
        // shift every basis row by the same monomial: weights are preserved
        for (dy, dx) in [(1, 0), (0, 1), (2, 2)] {
            let rows: Vec<Vec<crate::gf::Elem>> = gm
                .rows()
                .iter()
                .map(|r| {
                    RingElement2D::from_flat(&amb, r.clone())
                        .shift(dy, dx)
                        .flatten()
                })
                .collect();
            let d = min_distance_rows(amb.field(), &rows, &DistanceBudget::default()).unwrap();
            assert_eq!(d, d0);
        }
    }
}
