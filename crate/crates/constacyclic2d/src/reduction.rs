//! Reduction of a repeated-root code (s > 0) to the family of simple-root
//! codes obtained by thresholding factor multiplicities.
//!
//! Writing `y^m - δ = (y^{m'} - δ0)^{p^s}` with `δ0^{p^s} = δ`, every slot
//! generator factors as `g_j = Π h_jl^{α_jl}` over the factors of
//! `y^{m'} - δ0`. For each threshold `t` the code `C̄_t` keeps the factors
//! with `α_jl > t`; lifting `c̄ = (y^{m'} - δ0)^t v̄^{p^s}` maps nonzero
//! words of `C̄_t` back into the parent, which bounds the parent's minimum
//! distance by `P_t d_min(C̄_t)` where `P_t` is the weight of the plain
//! polynomial `(y^{m'} - δ0)^t`. Some threshold in the distinguished set
//! `T` achieves equality, and that reduced code has rate and relative
//! distance at least as good as the parent's.

use num_rational::Ratio;

use crate::code2d::Code2D;
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::poly::UniPoly;
use crate::ring2d::{Ambient, AmbientSpec, RingElement2D};
use crate::wmin::{min_distance, DistanceBudget};

pub struct ReductionProfile {
    parent: Code2D,
    delta0: Elem,
    simple_ambient: Ambient,
    /// Factors `h_jl` of `y^{m'} - δ0` over `K_j`, canonical order.
    factors_y: Vec<Vec<UniPoly>>,
    /// Exponents `α_jl` of the parent's slot generators.
    exponents: Vec<Vec<u32>>,
    /// `C̄_t` for `t = 0 .. p^s - 1`.
    codes: Vec<Code2D>,
    /// `P_t = weight((y^{m'} - δ0)^t)`.
    weights: Vec<u64>,
    /// The set `T`, ascending. Always contains `p^s - 1`.
    tee: Vec<u32>,
}

impl ReductionProfile {
    /// Decompose the code's slot generators over the simple-root modulus and
    /// build every thresholded code. With `s = 0` the profile degenerates to
    /// the single code `C̄_0 = C`.
    pub fn build(parent: &Code2D) -> ReductionProfile {
        let amb = parent.ambient();
        let p = amb.field().characteristic() as u32;
        let s = amb.s();
        let ps = p.pow(s);
        let delta0 = amb
            .delta()
            .frobenius_root(s)
            .expect("delta is a unit");
        let simple_ambient = AmbientSpec::new(
            amb.field(),
            amb.n(),
            amb.lambda(),
            amb.m_prime(),
            &delta0,
        )
        .expect("simple-root ambient");

        let mut factors_y = Vec::with_capacity(amb.eta());
        let mut exponents = Vec::with_capacity(amb.eta());
        for j in 0..amb.eta() {
            let k = amb.tower(j);
            let modulus = UniPoly::power_minus(k, 'y', amb.m_prime(), &k.embed(&delta0));
            let fact = modulus.factor().expect("nonzero modulus");
            debug_assert!(fact.factors.iter().all(|(_, e)| *e == 1));
            let hs: Vec<UniPoly> = fact.factors.into_iter().map(|(h, _)| h).collect();
            let mut alphas = Vec::with_capacity(hs.len());
            let mut rest = parent.gen_poly(j).clone();
            for h in &hs {
                let mut e = 0u32;
                loop {
                    let (q, r) = rest.divmod(h).expect("factor nonzero");
                    if r.is_zero() {
                        rest = q;
                        e += 1;
                    } else {
                        break;
                    }
                }
                alphas.push(e);
            }
            assert!(
                rest.is_one(),
                "slot generator does not factor over the simple-root modulus"
            );
            assert!(alphas.iter().all(|&e| e <= ps));
            factors_y.push(hs);
            exponents.push(alphas);
        }

        let codes: Vec<Code2D> = (0..ps)
            .map(|t| {
                let gens: Vec<UniPoly> = (0..amb.eta())
                    .map(|j| {
                        let mut g = UniPoly::one(simple_ambient.tower(j), 'y');
                        for (h, &e) in factors_y[j].iter().zip(&exponents[j]) {
                            if e > t {
                                // same tower structurally, re-anchor the coefficients
                                let h = reanchor(h, simple_ambient.tower(j));
                                g = g.mul(&h);
                            }
                        }
                        g
                    })
                    .collect();
                Code2D::from_divisors(&simple_ambient, gens).expect("thresholded divisors")
            })
            .collect();

        // nesting: thresholding by a larger t keeps fewer factors
        debug_assert!((1..codes.len()).all(|t| {
            (0..amb.eta()).all(|j| codes[t - 1].gen_poly(j).rem(codes[t].gen_poly(j)).unwrap().is_zero())
        }));

        let base = UniPoly::power_minus(amb.field(), 'y', amb.m_prime(), &delta0);
        let weights: Vec<u64> = (0..ps)
            .map(|t| base.pow(t).hamming_weight() as u64)
            .collect();
        let tee: Vec<u32> = (0..ps)
            .filter(|&t| (t + 1..ps).all(|t2| weights[t as usize] < weights[t2 as usize]))
            .collect();
        debug_assert!(tee.contains(&(ps - 1)));

        ReductionProfile {
            parent: parent.clone(),
            delta0,
            simple_ambient,
            factors_y,
            exponents,
            codes,
            weights,
            tee,
        }
    }

    pub fn parent(&self) -> &Code2D {
        &self.parent
    }

    pub fn delta0(&self) -> &Elem {
        &self.delta0
    }

    pub fn simple_ambient(&self) -> &Ambient {
        &self.simple_ambient
    }

    pub fn factor_count(&self) -> u32 {
        self.codes.len() as u32
    }

    pub fn factors_y(&self) -> &[Vec<UniPoly>] {
        &self.factors_y
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    /// `C̄_t`.
    pub fn reduced_code(&self, t: u32) -> &Code2D {
        &self.codes[t as usize]
    }

    pub fn reduced_codes(&self) -> &[Code2D] {
        &self.codes
    }

    /// `P_t`.
    pub fn weight_factor(&self, t: u32) -> u64 {
        self.weights[t as usize]
    }

    pub fn tee(&self) -> &[u32] {
        &self.tee
    }

    /// `t̄ = min { t' in T : t' >= t }`.
    pub fn t_bar(&self, t: u32) -> u32 {
        *self
            .tee
            .iter()
            .find(|&&t2| t2 >= t)
            .expect("T contains p^s - 1")
    }

    /// Lift a nonzero word of `C̄_t` into the parent:
    /// `(y^{m'} - δ0)^t * v̄^{p^s}` reduced in the parent ring. The result is
    /// a nonzero parent codeword of weight at most `P_t * w(v̄)`.
    pub fn lift_codeword(&self, t: u32, vbar: &RingElement2D) -> Result<RingElement2D> {
        if vbar.is_zero() {
            return Err(Error::ZeroInput);
        }
        if !self.reduced_code(t).contains(vbar) {
            return Err(Error::NotInCbar);
        }
        let amb = self.parent.ambient();
        let p = amb.field().characteristic() as u32;
        let ps = p.pow(amb.s());
        // v̄^{p^s} by the characteristic-p power rule: coefficients to the
        // p^s, monomial exponents multiplied by p^s and wrapped.
        let mut power = RingElement2D::zero(amb);
        for j in 0..self.simple_ambient.m() {
            for i in 0..self.simple_ambient.n() {
                let c = vbar.get(j, i);
                if !c.is_zero() {
                    let term = RingElement2D::wrapped_monomial(
                        amb,
                        i * ps as usize,
                        j * ps as usize,
                        &c.pow(ps as u128),
                    );
                    power = power.add(&term);
                }
            }
        }
        let base = UniPoly::power_minus(amb.field(), 'y', amb.m_prime(), &self.delta0);
        let lifted = power.mul(&RingElement2D::from_y_poly(amb, &base.pow(t)));
        assert!(!lifted.is_zero(), "lift of a nonzero word vanished");
        assert!(self.parent.contains(&lifted), "lift left the parent code");
        assert!(
            lifted.weight() as u64 <= self.weight_factor(t) * vbar.weight() as u64,
            "lift exceeded the weight bound"
        );
        Ok(lifted)
    }

    /// Verify `d_min(C) <= P_t d_min(C̄_t)` for every t and locate a
    /// threshold in `T` achieving equality.
    pub fn distance_identity_check(&self, budget: &DistanceBudget) -> Result<DistanceIdentity> {
        let parent_d = min_distance(&self.parent.generator_matrix(), budget)?;
        let mut per_t = Vec::with_capacity(self.codes.len());
        for code in &self.codes {
            if code.is_zero_code() {
                per_t.push(None);
            } else {
                per_t.push(Some(min_distance(&code.generator_matrix(), budget)?));
            }
        }
        let all_bounds_hold = per_t
            .iter()
            .enumerate()
            .all(|(t, d)| d.map_or(true, |d| parent_d as u64 <= self.weights[t] * d as u64));
        let t_bar_star = self.tee.iter().copied().find(|&t| {
            per_t[t as usize]
                .map_or(false, |d| parent_d as u64 == self.weights[t as usize] * d as u64)
        });
        Ok(DistanceIdentity {
            parent_distance: parent_d,
            reduced_distances: per_t,
            all_bounds_hold,
            t_bar_star,
        })
    }

    /// Pick the equality threshold and return the corresponding simple-root
    /// code, verifying that its rate and relative minimum distance are at
    /// least the parent's. Falls back to scanning all of `T` and errors out
    /// if no threshold verifies.
    pub fn hat_construction(&self, budget: &DistanceBudget) -> Result<HatConstruction> {
        let identity = self.distance_identity_check(budget)?;
        let parent_d = identity.parent_distance;
        let parent_len = self.parent.ambient().len();
        let parent_rate = Ratio::new(self.parent.dimension() as u64, parent_len as u64);
        let parent_rdist = Ratio::new(parent_d as u64, parent_len as u64);
        let mut candidates: Vec<u32> = Vec::new();
        candidates.extend(identity.t_bar_star);
        candidates.extend(self.tee.iter().copied());
        for t in candidates {
            let code = self.reduced_code(t);
            if code.is_zero_code() {
                continue;
            }
            let len = self.simple_ambient.len() as u64;
            let rate = Ratio::new(code.dimension() as u64, len);
            let d = identity.reduced_distances[t as usize].expect("nonzero code");
            let rdist = Ratio::new(d as u64, len);
            if rate >= parent_rate && rdist >= parent_rdist {
                return Ok(HatConstruction {
                    t,
                    code: code.clone(),
                    parent_rate,
                    rate,
                    parent_relative_distance: parent_rdist,
                    relative_distance: rdist,
                });
            }
        }
        Err(Error::Internal(
            "no thresholded code dominates the parent's rate and relative distance".into(),
        ))
    }
}

/// Exact rate decomposition: `r = dim/(nm)`, per-slot `r_j = (m - t_j)/m`,
/// with the identity `r = (1/n) Σ r_j d_j` holding in rational arithmetic.
pub fn rate_decomposition(code: &Code2D) -> (Ratio<u64>, Vec<Ratio<u64>>) {
    let amb = code.ambient();
    let r = Ratio::new(code.dimension() as u64, amb.len() as u64);
    let per_slot: Vec<Ratio<u64>> = (0..amb.eta())
        .map(|j| Ratio::new((amb.m() - code.t(j)) as u64, amb.m() as u64))
        .collect();
    let recombined = per_slot
        .iter()
        .enumerate()
        .map(|(j, rj)| rj * Ratio::new(amb.factor_degree(j) as u64, amb.n() as u64))
        .sum::<Ratio<u64>>();
    debug_assert_eq!(r, recombined);
    (r, per_slot)
}

#[derive(Debug, Clone)]
pub struct DistanceIdentity {
    pub parent_distance: u32,
    /// `d_min(C̄_t)` per threshold; `None` for zero codes (vacuous bound).
    pub reduced_distances: Vec<Option<u32>>,
    pub all_bounds_hold: bool,
    /// First `t` in `T` with `d_min(C) = P_t d_min(C̄_t)`.
    pub t_bar_star: Option<u32>,
}

pub struct HatConstruction {
    pub t: u32,
    pub code: Code2D,
    pub parent_rate: Ratio<u64>,
    pub rate: Ratio<u64>,
    pub parent_relative_distance: Ratio<u64>,
    pub relative_distance: Ratio<u64>,
}

/// Rebuild a polynomial on a structurally equal field instance.
fn reanchor(p: &UniPoly, field: &crate::gf::Field) -> UniPoly {
    debug_assert!(p.field() == field);
    UniPoly::from_coeffs(field, p.var(), p.coeffs().to_vec())
}

/// Write a parent codeword as `(y^{m'} - δ0)^t * v` with the base factor not
/// dividing `v`; returns `(t, v)`. The zero codeword returns `t = p^s` and
/// `v = 0`.
pub fn factor_out_base(
    profile: &ReductionProfile,
    c: &RingElement2D,
) -> (u32, RingElement2D) {
    let amb = profile.parent().ambient();
    assert!(**c.ambient() == **amb);
    if c.is_zero() {
        return (profile.factor_count(), c.clone());
    }
    let t = base_multiplicity(profile, c);
    let mut v = c.clone();
    for _ in 0..t {
        v = try_divide_by_base(amb, &v, profile.delta0())
            .expect("multiplicity certified exact division");
    }
    (t, v)
}

/// Substitute `y^{m'} -> δ0`: the image of a parent-ring element in the
/// simple-root ring.
pub fn project_simple(profile: &ReductionProfile, e: &RingElement2D) -> RingElement2D {
    let amb = profile.parent().ambient();
    assert!(**e.ambient() == **amb);
    let simple = profile.simple_ambient();
    let mprime = amb.m_prime();
    let mut out = RingElement2D::zero(simple);
    for j in 0..amb.m() {
        for i in 0..amb.n() {
            let c = e.get(j, i);
            if c.is_zero() {
                continue;
            }
            let mut scaled = c.clone();
            for _ in 0..j / mprime {
                scaled = scaled.mul(profile.delta0());
            }
            let cur = out.get(j % mprime, i).add(&scaled);
            out.set(j % mprime, i, cur);
        }
    }
    out
}

/// Largest `t` with `(y^{m'} - δ0)^t` dividing the codeword, treating it as
/// a y-polynomial with x-polynomial coefficients reduced mod `x^n - λ`.
pub fn base_multiplicity(profile: &ReductionProfile, c: &RingElement2D) -> u32 {
    let amb = profile.parent.ambient();
    assert!(**c.ambient() == **amb);
    if c.is_zero() {
        return profile.factor_count();
    }
    let mut t = 0u32;
    let mut current = c.clone();
    while t < profile.factor_count() {
        match try_divide_by_base(amb, &current, &profile.delta0) {
            Some(q) => {
                current = q;
                t += 1;
            }
            None => break,
        }
    }
    t
}

/// Long division of the y-polynomial (coefficients in `F_q[x]`, reduced mod
/// `x^n - λ`) by `y^{m'} - δ0`; `None` when the remainder is nonzero.
fn try_divide_by_base(
    amb: &Ambient,
    c: &RingElement2D,
    delta0: &Elem,
) -> Option<RingElement2D> {
    let m = amb.m();
    let mprime = amb.m_prime();
    let mut rows: Vec<Vec<Elem>> = (0..m)
        .map(|j| (0..amb.n()).map(|i| c.get(j, i).clone()).collect())
        .collect();
    let mut out = RingElement2D::zero(amb);
    for j in (mprime..m).rev() {
        let lead: Vec<Elem> = rows[j].clone();
        if lead.iter().all(Elem::is_zero) {
            continue;
        }
        for (i, v) in lead.iter().enumerate() {
            out.set(j - mprime, i, v.clone());
            rows[j][i] = rows[j][i].sub(v);
            rows[j - mprime][i] = rows[j - mprime][i].add(&v.mul(delta0));
        }
    }
    if rows.iter().all(|r| r.iter().all(Elem::is_zero)) {
        Some(out)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::textio;

    /// Ambient and code of the repeated-root worked example:
    /// F_2, n = 3, m = 12, C = <<(y^2+y+1)(x^2+x+1), (y+1)(y+x)^3(x+1)>>.
    fn repeated_root_example() -> (Ambient, Code2D) {
        let f2 = Field::prime(2).unwrap();
        let amb = AmbientSpec::new(&f2, 3, &f2.one(), 12, &f2.one()).unwrap();
        let g1 = textio::parse_ring_element(&amb, "(y^2+y+1)*(x^2+x+1)").unwrap();
        let g2 = textio::parse_ring_element(&amb, "(y+1)*(y+x)^3*(x+1)").unwrap();
        let c = Code2D::canonicalize(&amb, &[g1, g2]).unwrap();
        (amb, c)
    }

    #[test]
    fn profile_of_worked_example() {
        let (amb, c) = repeated_root_example();
        assert_eq!((amb.m_prime(), amb.s()), (3, 2));
        let profile = ReductionProfile::build(&c);
        assert_eq!(profile.factor_count(), 4);
        assert!(profile.delta0().is_one());

        let tower_strings = |code: &Code2D| -> Vec<String> {
            code.gens().iter().map(textio::tower_poly_string).collect()
        };
        assert_eq!(
            tower_strings(profile.reduced_code(0)),
            vec!["y^2+y+1", "y^2+x*y+y+x"] // (y+1)(y+x) expanded
        );
        assert_eq!(tower_strings(profile.reduced_code(1)), vec!["1", "y+x"]);
        assert_eq!(tower_strings(profile.reduced_code(2)), vec!["1", "y+x"]);
        assert_eq!(tower_strings(profile.reduced_code(3)), vec!["1", "1"]);
        assert!(profile.reduced_code(3).is_unit_code());

        assert_eq!(profile.weights, vec![1, 2, 2, 4]);
        assert_eq!(profile.tee(), &[0, 2, 3]);
        assert_eq!(profile.t_bar(1), 2);
        assert_eq!(profile.t_bar(0), 0);
        assert_eq!(profile.t_bar(3), 3);
    }

    #[test]
    fn trivial_profile_when_simple_root() {
        let f2 = Field::prime(2).unwrap();
        let amb = AmbientSpec::new(&f2, 3, &f2.one(), 3, &f2.one()).unwrap();
        let gens = textio::parse_generators(&amb, "y^2*x+y*x+x").unwrap();
        let c = Code2D::canonicalize(&amb, &gens).unwrap();
        let profile = ReductionProfile::build(&c);
        assert_eq!(profile.factor_count(), 1);
        assert_eq!(profile.tee(), &[0]);
        assert_eq!(profile.weight_factor(0), 1);
        assert_eq!(profile.reduced_code(0), &c);

        let identity = profile
            .distance_identity_check(&DistanceBudget::default())
            .unwrap();
        assert_eq!(identity.t_bar_star, Some(0));

        let hat = profile.hat_construction(&DistanceBudget::default()).unwrap();
        assert_eq!(hat.rate, hat.parent_rate);
        assert_eq!(hat.relative_distance, hat.parent_relative_distance);
    }

    #[test]
    fn lift_examples() {
        let (amb, c) = repeated_root_example();
        let profile = ReductionProfile::build(&c);
        // t = 3, v̄ = 1 in C̄_3 = <1>: lift is (y^3+1)^3 = y^9+y^6+y^3+1
        let one_bar = RingElement2D::one(profile.simple_ambient());
        let lifted = profile.lift_codeword(3, &one_bar).unwrap();
        assert_eq!(lifted.weight(), 4);
        assert_eq!(
            textio::ring_element_string(&lifted),
            "y^9+y^6+y^3+1"
        );
        assert!(c.contains(&lifted));

        let _ = amb;
        let zero = RingElement2D::zero(profile.simple_ambient());
        assert_eq!(profile.lift_codeword(3, &zero), Err(Error::ZeroInput));
        let outside = RingElement2D::one(profile.simple_ambient());
        assert_eq!(profile.lift_codeword(0, &outside), Err(Error::NotInCbar));
    }

    #[test]
    fn base_multiplicity_extraction() {
        let (amb, c) = repeated_root_example();
        let profile = ReductionProfile::build(&c);
        // (y^3+1)^2 * (x+1) has multiplicity exactly 2
        let e = textio::parse_ring_element(&amb, "(y^3+1)^2*(x+1)").unwrap();
        assert_eq!(base_multiplicity(&profile, &e), 2);
        let e = textio::parse_ring_element(&amb, "x+1").unwrap();
        assert_eq!(base_multiplicity(&profile, &e), 0);
    }
}
