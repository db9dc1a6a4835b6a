//! Canonical form of (λ,δ)-constacyclic 2D codes.
//!
//! Through the CRT splitting of the ambient ring, every code is determined
//! by one monic divisor `g_j | y^m - δ` per factor of `x^n - λ`; the tuple
//! `(g_1, ..., g_η)` is unique and is the canonical form stored here. The
//! zero component is stored literally as `g_j = y^m - δ`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::linalg;
use crate::poly::UniPoly;
use crate::ring2d::{Ambient, RingElement2D};

#[derive(Clone)]
pub struct Code2D {
    ambient: Ambient,
    /// Canonical generators, one monic divisor of `y^m - δ` per factor.
    gens: Vec<UniPoly>,
}

impl Code2D {
    /// Canonical form of the ideal generated by the given elements: for each
    /// factor slot, the monic gcd of all projections with `y^m - δ`. The
    /// empty generator list yields the zero code.
    pub fn canonicalize(ambient: &Ambient, generators: &[RingElement2D]) -> Result<Code2D> {
        for g in generators {
            if **g.ambient() != **ambient {
                return Err(Error::MixedAmbient);
            }
        }
        let mut gens = Vec::with_capacity(ambient.eta());
        for j in 0..ambient.eta() {
            let mut g = ambient.y_modulus(j);
            for h in generators {
                g = g.gcd(&h.psi(j).expect("factor index in range"));
            }
            gens.push(g);
        }
        Ok(Code2D {
            ambient: ambient.clone(),
            gens,
        })
    }

    /// Build directly from per-slot divisors of `y^m - δ` (validated).
    pub fn from_divisors(ambient: &Ambient, gens: Vec<UniPoly>) -> Result<Code2D> {
        if gens.len() != ambient.eta() {
            return Err(Error::BadIndex);
        }
        for (j, g) in gens.iter().enumerate() {
            if g.field() != ambient.tower(j) {
                return Err(Error::MixedFields);
            }
            if !g.leading().map_or(false, Elem::is_one) {
                return Err(Error::NotMonic(format!("{g}")));
            }
            let rem = ambient.y_modulus(j).rem(g)?;
            if !rem.is_zero() {
                return Err(Error::Internal(format!(
                    "slot {j} generator does not divide y^m - delta"
                )));
            }
        }
        Ok(Code2D {
            ambient: ambient.clone(),
            gens,
        })
    }

    /// The zero code (every component `y^m - δ`).
    pub fn zero_code(ambient: &Ambient) -> Code2D {
        let gens = (0..ambient.eta()).map(|j| ambient.y_modulus(j)).collect();
        Code2D {
            ambient: ambient.clone(),
            gens,
        }
    }

    /// The unit ideal (every component 1).
    pub fn unit_code(ambient: &Ambient) -> Code2D {
        let gens = (0..ambient.eta())
            .map(|j| UniPoly::one(ambient.tower(j), 'y'))
            .collect();
        Code2D {
            ambient: ambient.clone(),
            gens,
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn gens(&self) -> &[UniPoly] {
        &self.gens
    }

    pub fn gen_poly(&self, j: usize) -> &UniPoly {
        &self.gens[j]
    }

    /// `t_j = deg_y g_j`.
    pub fn t(&self, j: usize) -> usize {
        self.gens[j].degree().unwrap()
    }

    pub fn is_zero_code(&self) -> bool {
        (0..self.ambient.eta()).all(|j| self.t(j) == self.ambient.m())
    }

    pub fn is_unit_code(&self) -> bool {
        self.gens.iter().all(UniPoly::is_one)
    }

    /// `dim C = nm - Σ d_j t_j`.
    pub fn dimension(&self) -> usize {
        let amb = &self.ambient;
        amb.len()
            - (0..amb.eta())
                .map(|j| amb.factor_degree(j) * self.t(j))
                .sum::<usize>()
    }

    /// The defining generators `g_j(x,y) * Π_{i≠j} f_i(x)` as ring elements.
    pub fn generator_rings(&self) -> Vec<RingElement2D> {
        (0..self.ambient.eta())
            .map(|j| self.slot_ring_generator(j))
            .collect()
    }

    fn slot_ring_generator(&self, j: usize) -> RingElement2D {
        let amb = &self.ambient;
        let mut cof = UniPoly::one(amb.field(), 'x');
        for (i, f) in amb.factors().iter().enumerate() {
            if i != j {
                cof = cof.mul(f);
            }
        }
        let lifted = RingElement2D::lift_tower_poly(amb, j, &self.gens[j]);
        lifted.mul(&RingElement2D::from_x_poly(amb, &cof))
    }

    /// Basis rows `x^r y^l g_j Π_{i≠j} f_i` ordered by `j`, then `l`, then
    /// `r`; slots with the zero component contribute no rows.
    pub fn generator_matrix(&self) -> GeneratorMatrix {
        let amb = &self.ambient;
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for j in 0..amb.eta() {
            let base = self.slot_ring_generator(j);
            for l in 0..amb.m() - self.t(j) {
                for r in 0..amb.factor_degree(j) {
                    rows.push(base.shift(l, r).flatten());
                    labels.push((j, l, r));
                }
            }
        }
        GeneratorMatrix {
            ambient: amb.clone(),
            rows,
            labels,
        }
    }

    /// Membership: `g_j | ψ_j(a)` for every slot.
    pub fn contains(&self, a: &RingElement2D) -> bool {
        assert!(
            **a.ambient() == *self.ambient,
            "membership check across ambient rings"
        );
        (0..self.ambient.eta()).all(|j| {
            let img = a.psi(j).expect("factor index in range");
            img.rem(&self.gens[j]).expect("generator nonzero").is_zero()
        })
    }

    /// One element generating the whole ideal: `Σ_j g_j Π_{i≠j} f_i`.
    pub fn single_generator(&self) -> RingElement2D {
        let mut acc = RingElement2D::zero(&self.ambient);
        for g in self.generator_rings() {
            acc = acc.add(&g);
        }
        acc
    }

    /// Canonical dedup/sort key.
    pub fn key(&self) -> Vec<Vec<u64>> {
        self.gens
            .iter()
            .map(|g| g.coeffs().iter().map(Elem::index).collect())
            .collect()
    }
}

impl PartialEq for Code2D {
    fn eq(&self, other: &Self) -> bool {
        *self.ambient == *other.ambient && self.gens == other.gens
    }
}

impl Eq for Code2D {}

impl std::fmt::Debug for Code2D {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<<")?;
        for (j, g) in self.gens.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({})*prod(f_i, i != {j})", crate::textio::tower_poly_string(g))?;
        }
        write!(f, ">>")
    }
}

/// A spanning row set of flattened codewords with `(j, l, r)` labels.
#[derive(Clone)]
pub struct GeneratorMatrix {
    ambient: Ambient,
    rows: Vec<Vec<Elem>>,
    labels: Vec<(usize, usize, usize)>,
}

impl GeneratorMatrix {
    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn labels(&self) -> &[(usize, usize, usize)] {
        &self.labels
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.ambient.len()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.rows)
    }

    /// Rows as integer index matrices (handy for golden tests).
    pub fn to_indices(&self) -> Vec<Vec<u64>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(Elem::index).collect())
            .collect()
    }
}

/// Number of (λ,δ)-constacyclic codes of the ambient: the product over the
/// slots of the divisor counts of `y^m - δ` over `K_j`.
pub fn count_codes(ambient: &Ambient) -> u128 {
    (0..ambient.eta())
        .map(|j| {
            ambient
                .y_modulus(j)
                .factor()
                .expect("y^m - delta is nonzero")
                .divisor_count()
        })
        .product()
}

/// Every code of the ambient in canonical order, refusing above the budget.
pub fn all_codes(ambient: &Ambient, budget: u128) -> Result<Vec<Code2D>> {
    let total = count_codes(ambient);
    if total > budget {
        return Err(Error::BudgetExceeded {
            needed: total,
            budget,
        });
    }
    let per_slot: Vec<Vec<UniPoly>> = (0..ambient.eta())
        .map(|j| {
            ambient
                .y_modulus(j)
                .factor()
                .expect("nonzero")
                .monic_divisors()
        })
        .collect();
    let mut out = Vec::with_capacity(total as usize);
    let mut idx = vec![0usize; ambient.eta()];
    loop {
        let gens: Vec<UniPoly> = idx
            .iter()
            .enumerate()
            .map(|(j, &k)| per_slot[j][k].clone())
            .collect();
        out.push(Code2D::from_divisors(ambient, gens).expect("divisors are valid"));
        let mut j = 0;
        loop {
            if j == idx.len() {
                return Ok(out);
            }
            idx[j] += 1;
            if idx[j] < per_slot[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Uniform random code: independent exponent choices in the divisor lattice.
pub fn sample_code<R: Rng>(ambient: &Ambient, rng: &mut R) -> Code2D {
    let gens = (0..ambient.eta())
        .map(|j| {
            let fact = ambient.y_modulus(j).factor().expect("nonzero");
            let mut g = UniPoly::one(ambient.tower(j), 'y');
            for (h, mult) in &fact.factors {
                let e = rng.gen_range(0..=*mult);
                g = g.mul(&h.pow(e));
            }
            g
        })
        .collect();
    Code2D {
        ambient: ambient.clone(),
        gens,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::ring2d::{ideal_span, AmbientSpec};
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
    fn canonical_form_of_worked_example() {
        let amb = cyclic_3x3();
        let c = example_code(&amb);
        assert_eq!(textio::tower_poly_string(c.gen_poly(0)), "y^2+y+1");
        assert_eq!(textio::tower_poly_string(c.gen_poly(1)), "y+x");
        assert_eq!(c.dimension(), 5);
    }

    #[test]
    fn unit_and_zero_codes() {
        let amb = cyclic_3x3();
        let unit = Code2D::canonicalize(&amb, &[RingElement2D::one(&amb)]).unwrap();
        assert!(unit.is_unit_code());
        assert_eq!(unit.dimension(), 9);
        let zero = Code2D::canonicalize(&amb, &[RingElement2D::zero(&amb)]).unwrap();
        assert!(zero.is_zero_code());
        assert_eq!(zero.dimension(), 0);
        assert_eq!(Code2D::canonicalize(&amb, &[]).unwrap(), zero);
        assert!(zero.generator_matrix().rows().is_empty());
        assert!(zero.single_generator().is_zero());
    }

    #[test]
    fn generator_matrix_is_bit_exact() {
        let amb = cyclic_3x3();
        let c = example_code(&amb);
        let gm = c.generator_matrix();
        assert_eq!(
            gm.to_indices(),
            vec![
                vec![1, 1, 1, 1, 1, 1, 1, 1, 1],
                vec![0, 1, 1, 1, 1, 0, 0, 0, 0],
                vec![1, 0, 1, 0, 1, 1, 0, 0, 0],
                vec![0, 0, 0, 0, 1, 1, 1, 1, 0],
                vec![0, 0, 0, 1, 0, 1, 0, 1, 1],
            ]
        );
        assert_eq!(
            gm.labels(),
            &[(0, 0, 0), (1, 0, 0), (1, 0, 1), (1, 1, 0), (1, 1, 1)]
        );
        assert_eq!(gm.rank(), 5);
    }

    #[test]
    fn unit_ideal_matrix_has_full_rank() {
        let amb = cyclic_3x3();
        let unit = Code2D::unit_code(&amb);
        let gm = unit.generator_matrix();
        assert_eq!(gm.row_count(), 9);
        assert_eq!(gm.rank(), 9);
    }

    #[test]
    fn membership() {
        let amb = cyclic_3x3();
        let c = example_code(&amb);
        let gens = textio::parse_generators(
            &amb,
            "y^2*x^2+y^2*x+x+1,y^2*x+y*x+x,y^2*x^2+y^2+y*x^2+y+x^2+1",
        )
        .unwrap();
        for g in &gens {
            assert!(c.contains(g));
        }
        assert!(!c.contains(&RingElement2D::one(&amb)));
        assert!(c.contains(&RingElement2D::zero(&amb)));
    }

    #[test]
    fn single_generator_regenerates_the_code() {
        let amb = cyclic_3x3();
        let c = example_code(&amb);
        let g = c.single_generator();
        let again = Code2D::canonicalize(&amb, std::slice::from_ref(&g)).unwrap();
        assert_eq!(again, c);

        let unit = Code2D::unit_code(&amb);
        let g = unit.single_generator();
        let again = Code2D::canonicalize(&amb, std::slice::from_ref(&g)).unwrap();
        assert!(again.is_unit_code());
    }

    #[test]
    fn code_counts() {
        let amb = cyclic_3x3();
        assert_eq!(count_codes(&amb), 32);

        let f = Field::prime(2).unwrap();
        let tiny = AmbientSpec::new(&f, 1, &f.one(), 1, &f.one()).unwrap();
        assert_eq!(count_codes(&tiny), 2);

        let big = AmbientSpec::new(&f, 3, &f.one(), 12, &f.one()).unwrap();
        assert_eq!(count_codes(&big), 3125);
    }

    #[test]
    fn canonicalize_is_idempotent_and_matches_span() {
        let amb = cyclic_3x3();
        let c = example_code(&amb);
        let gm = c.generator_matrix();
        let rows: Vec<RingElement2D> = gm
            .rows()
            .iter()
            .map(|r| RingElement2D::from_flat(&amb, r.clone()))
            .collect();
        let again = Code2D::canonicalize(&amb, &rows).unwrap();
        assert_eq!(again, c);

        let original = textio::parse_generators(
            &amb,
            "y^2*x^2+y^2*x+x+1,y^2*x+y*x+x,y^2*x^2+y^2+y*x^2+y+x^2+1",
        )
        .unwrap();
        let s1 = ideal_span(&amb, &original);
        let s2 = ideal_span(&amb, &rows);
        assert_eq!(s1, s2);
        assert_eq!(s1.dim(), c.dimension());
    }

    #[test]
    fn all_codes_enumeration() {
        let amb = cyclic_3x3();
        let codes = all_codes(&amb, 1 << 10).unwrap();
        assert_eq!(codes.len(), 32);
        let mut keys: Vec<_> = codes.iter().map(Code2D::key).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 32);
        assert!(all_codes(&amb, 10).is_err());
    }
}
