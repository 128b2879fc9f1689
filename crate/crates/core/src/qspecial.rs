//! Exact q-special functions: terminating basic hypergeometric series,
//! the little q-Jacobi ₂φ₁ shape, and Askey-Wilson polynomials.
//!
//! A series
//! `ᵣ₊₁φᵣ(a₁,…,a_{r+1}; b₁,…,b_r; base, z) = Σ_m ∏(a_i;base)_m / [(base;base)_m ∏(b_i;base)_m] z^m`
//! is admitted only when it terminates structurally (some numerator
//! parameter equals `base^(−n)`) or an explicit term cap is supplied.

use crate::scalars::{qpochhammer, Field, FieldElement, PochLen};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QSpecialError {
    #[error("series does not terminate structurally and no cap was given")]
    NonTerminating,
    #[error("parameter degeneracy: denominator factor vanishes at term {0}")]
    ParameterDegeneracy(u32),
    #[error("parity/range violation for (m, r, s) = ({0}, {1}, {2})")]
    ParityRange(i64, i64, i64),
}

/// Parameter block of a basic hypergeometric series.
#[derive(Clone, Debug)]
pub struct HypergeometricSpec {
    pub num_params: Vec<FieldElement>,
    pub den_params: Vec<FieldElement>,
    pub base: FieldElement,
    /// Defensive cap for series without structural termination.
    pub cap: Option<u32>,
}

const TERMINATION_SEARCH_LIMIT: u32 = 256;

impl HypergeometricSpec {
    pub fn new(
        num_params: Vec<FieldElement>,
        den_params: Vec<FieldElement>,
        base: FieldElement,
    ) -> Self {
        HypergeometricSpec { num_params, den_params, base, cap: None }
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = Some(cap);
        self
    }

    /// Smallest n with some numerator parameter equal to `base^(−n)`
    /// (checked structurally term by term).
    pub fn termination_order(&self) -> Option<u32> {
        let mut best: Option<u32> = None;
        for a in &self.num_params {
            let mut p = a.clone();
            for n in 0..=TERMINATION_SEARCH_LIMIT {
                if p.is_one() {
                    best = Some(best.map_or(n, |b| b.min(n)));
                    break;
                }
                p = p.mul(&self.base);
            }
        }
        best
    }

    /// Number of (possibly) nonzero terms minus one.
    pub fn order(&self) -> Result<u32, QSpecialError> {
        match (self.termination_order(), self.cap) {
            (Some(n), Some(cap)) => Ok(n.min(cap)),
            (Some(n), None) => Ok(n),
            (None, Some(cap)) => Ok(cap),
            (None, None) => Err(QSpecialError::NonTerminating),
        }
    }

    /// Coefficient of z^m for m = 0..=order. The term ratio is applied
    /// incrementally so fractions stay reduced throughout.
    pub fn coefficients(&self) -> Result<Vec<FieldElement>, QSpecialError> {
        let field = self.base.field().clone();
        let order = self.order()?;
        let mut out = Vec::with_capacity(order as usize + 1);
        let mut coeff = field.one();
        // running parameter values a_i·base^m
        let mut nvals: Vec<FieldElement> = self.num_params.clone();
        let mut dvals: Vec<FieldElement> = self.den_params.clone();
        let mut qval = self.base.clone();
        out.push(coeff.clone());
        for m in 1..=order {
            let mut num = field.one();
            for v in &nvals {
                num = num.mul(&field.one().sub(v));
            }
            let mut den = field.one().sub(&qval);
            for v in &dvals {
                den = den.mul(&field.one().sub(v));
            }
            if den.is_zero() {
                if num.is_zero() {
                    for _ in m..=order {
                        out.push(field.zero());
                    }
                    return Ok(out);
                }
                return Err(QSpecialError::ParameterDegeneracy(m));
            }
            coeff = coeff.mul(&num).div(&den);
            out.push(coeff.clone());
            for v in nvals.iter_mut() {
                *v = v.mul(&self.base);
            }
            for v in dvals.iter_mut() {
                *v = v.mul(&self.base);
            }
            qval = qval.mul(&self.base);
        }
        Ok(out)
    }
}

/// Exact sum of the series at a scalar argument.
pub fn phi_series(spec: &HypergeometricSpec, z: &FieldElement) -> Result<FieldElement, QSpecialError> {
    let field = z.field().clone();
    let coeffs = spec.coefficients()?;
    let mut acc = field.zero();
    let mut zp = field.one();
    for c in coeffs {
        acc = acc.add(&c.mul(&zp));
        zp = zp.mul(z);
    }
    Ok(acc)
}

/// The little q-Jacobi shape for the matrix coefficient `t^m_{rs}`:
/// `₂φ₁(q^{−r−m}, q^{m−r+2}; q^{s−r+2}; q², ·)` with the argument slot left
/// symbolic. Requires r, s, m of equal parity with −m ≤ r ≤ s ≤ −r ≤ m.
pub fn little_q_jacobi_shape(
    field: &Field,
    m: i64,
    r: i64,
    s: i64,
) -> Result<HypergeometricSpec, QSpecialError> {
    let parity_ok = (m - r) % 2 == 0 && (m - s) % 2 == 0;
    let range_ok = -m <= r && r <= s && s <= -r && -r <= m;
    if !parity_ok || !range_ok {
        return Err(QSpecialError::ParityRange(m, r, s));
    }
    Ok(HypergeometricSpec::new(
        vec![field.q_pow(-r - m), field.q_pow(m - r + 2)],
        vec![field.q_pow(s - r + 2)],
        field.q_pow(2),
    ))
}

/// Askey-Wilson polynomial of degree n in `x = z + z^{-1}`:
/// `p_n(z+z^{-1}; a,b,c,d; base) = ₄φ₃(base^{−n}, abcd·base^{n−1}, az, az^{-1}; ab, ac, ad; base, base)`.
///
/// The z-dependent Pochhammer pair re-expands through
/// `(az;base)_j (az^{-1};base)_j = ∏_{i<j} (1 − a·base^i·x + a²·base^{2i})`,
/// which is what makes evaluation at a central algebra element possible.
#[derive(Clone, Debug)]
pub struct AskeyWilsonPoly {
    pub n: u32,
    /// Coefficients in x, ascending degree.
    pub coeffs: Vec<FieldElement>,
}

impl AskeyWilsonPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let field = x.field().clone();
        let mut acc = field.zero();
        let mut xp = field.one();
        for c in &self.coeffs {
            acc = acc.add(&c.mul(&xp));
            xp = xp.mul(x);
        }
        acc
    }
}

pub fn askey_wilson(
    n: u32,
    a: &FieldElement,
    b: &FieldElement,
    c: &FieldElement,
    d: &FieldElement,
    base: &FieldElement,
) -> Result<AskeyWilsonPoly, QSpecialError> {
    let field = a.field().clone();
    let one = field.one();
    let abcd = a.mul(b).mul(c).mul(d);
    let mut coeffs = vec![field.zero(); n as usize + 1];
    // scalar parameter parts: (base^{−n}; base)_j, (abcd·base^{n−1}; base)_j
    // over (base;base)_j (ab;base)_j (ac;base)_j (ad;base)_j, times base^j
    let mut scal = field.one();
    let mut p1 = base.pow(-(n as i64));
    let mut p2 = abcd.mul(&base.pow(n as i64 - 1));
    let mut d1 = a.mul(b);
    let mut d2 = a.mul(c);
    let mut d3 = a.mul(d);
    let mut dq = base.clone();
    // x-polynomial part ∏_{i<j}(1 − a·base^i·x + a²·base^{2i}), ascending in x
    let mut xpoly = vec![field.one()];
    let mut basepow = field.one();
    for j in 0..=n {
        if j > 0 {
            let numfac = one.sub(&p1).mul(&one.sub(&p2)).mul(base);
            let denfac = one
                .sub(&dq)
                .mul(&one.sub(&d1))
                .mul(&one.sub(&d2))
                .mul(&one.sub(&d3));
            if denfac.is_zero() {
                return Err(QSpecialError::ParameterDegeneracy(j));
            }
            scal = scal.mul(&numfac).div(&denfac);
            p1 = p1.mul(base);
            p2 = p2.mul(base);
            d1 = d1.mul(base);
            d2 = d2.mul(base);
            d3 = d3.mul(base);
            dq = dq.mul(base);
            // multiply xpoly by (1 − a·base^{j−1}·x + a²·base^{2(j−1)})
            let c0 = field.one();
            let c1 = a.mul(&basepow).neg();
            let c2 = a.mul(a).mul(&basepow).mul(&basepow);
            let mut next = vec![field.zero(); xpoly.len() + 1];
            for (i, v) in xpoly.iter().enumerate() {
                next[i] = next[i].add(&v.mul(&c0));
                next[i + 1] = next[i + 1].add(&v.mul(&c1));
            }
            for (i, v) in xpoly.iter().enumerate() {
                next[i] = next[i].add(&v.mul(&c2));
            }
            xpoly = next;
            basepow = basepow.mul(base);
        }
        if scal.is_zero() {
            continue;
        }
        for (i, v) in xpoly.iter().enumerate() {
            coeffs[i] = coeffs[i].add(&v.mul(&scal));
        }
    }
    Ok(AskeyWilsonPoly { n, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Assignment;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn field() -> Field {
        Field::new(&["λ", "μ"])
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn terminating_2phi1_at_order_one() {
        let f = field();
        let lam = f.var("λ").unwrap();
        let b = f.qvar(lam); // generic parameter
        let c = f.q_pow(3);
        let spec = HypergeometricSpec::new(
            vec![f.q_pow(-1), b.clone()],
            vec![c.clone()],
            f.q(),
        );
        assert_eq!(spec.termination_order(), Some(1));
        let z = f.qvar(f.var("μ").unwrap());
        let got = phi_series(&spec, &z).unwrap();
        let one = f.one();
        let expect = one.add(
            &one.sub(&f.q_pow(-1))
                .mul(&one.sub(&b))
                .div(&one.sub(&f.q()).mul(&one.sub(&c)))
                .mul(&z),
        );
        assert_eq!(got, expect);
    }

    #[test]
    fn numerator_one_truncates_immediately() {
        let f = field();
        let spec = HypergeometricSpec::new(
            vec![f.one(), f.q_pow(5)],
            vec![f.q_pow(2)],
            f.q(),
        );
        assert_eq!(spec.termination_order(), Some(0));
        let z = f.qvar(f.var("λ").unwrap());
        assert_eq!(phi_series(&spec, &z).unwrap(), f.one());
    }

    #[test]
    fn brute_force_summation_oracle() {
        // independent oracle: build each term from scalars::qpochhammer
        let f = field();
        let lam = f.var("λ").unwrap();
        let a1 = f.q_pow(-4); // (q²)^(−2): terminates at m = 2
        let a2 = f.qvar(lam);
        let c1 = f.q_pow(6);
        let base = f.q_pow(2);
        let z = f.q_pow(1).mul(&f.qvar_pow(lam, -1));
        let spec = HypergeometricSpec::new(
            vec![a1.clone(), a2.clone()],
            vec![c1.clone()],
            base.clone(),
        );
        let got = phi_series(&spec, &z).unwrap();
        let mut expect = f.zero();
        for m in 0..=2u32 {
            let num = qpochhammer(&a1, &base, PochLen::Finite(m))
                .unwrap()
                .mul(&qpochhammer(&a2, &base, PochLen::Finite(m)).unwrap());
            let den = qpochhammer(&base, &base, PochLen::Finite(m))
                .unwrap()
                .mul(&qpochhammer(&c1, &base, PochLen::Finite(m)).unwrap());
            expect = expect.add(&num.div(&den).mul(&z.pow(m as i64)));
        }
        assert_eq!(got, expect);
    }

    #[test]
    fn little_q_jacobi_parameters() {
        let f = field();
        let spec = little_q_jacobi_shape(&f, 2, 0, 0).unwrap();
        assert_eq!(spec.num_params[0], f.q_pow(-2));
        assert_eq!(spec.num_params[1], f.q_pow(4));
        assert_eq!(spec.den_params[0], f.q_pow(2));
        assert_eq!(spec.base, f.q_pow(2));
        // first parameter q^0 = 1 collapses these to the constant term
        let s1 = little_q_jacobi_shape(&f, 1, -1, 1).unwrap();
        assert_eq!(s1.termination_order(), Some(0));
        let s2 = little_q_jacobi_shape(&f, 2, -2, 0).unwrap();
        assert_eq!(s2.termination_order(), Some(0));
        // parity / range violations
        assert!(little_q_jacobi_shape(&f, 2, 1, 1).is_err());
        assert!(little_q_jacobi_shape(&f, 2, 0, 2).is_err());
    }

    #[test]
    fn askey_wilson_p0_and_p1() {
        let f = field();
        let lam = f.var("λ").unwrap();
        let mu = f.var("μ").unwrap();
        let (a, b) = (f.qvar(lam), f.qvar(mu));
        let (c, d) = (f.q_pow(1), f.q_pow(3));
        let p0 = askey_wilson(0, &a, &b, &c, &d, &f.q()).unwrap();
        assert_eq!(p0.coeffs.len(), 1);
        assert!(p0.coeffs[0].is_one());
        let p1 = askey_wilson(1, &a, &b, &c, &d, &f.q()).unwrap();
        // p₁ = 1 − (1−abcd)(1 − a·x + a²)/[(1−ab)(1−ac)(1−ad)]
        let one = f.one();
        let abcd = a.mul(&b).mul(&c).mul(&d);
        let factor = one
            .sub(&abcd)
            .div(&one.sub(&a.mul(&b)).mul(&one.sub(&a.mul(&c))).mul(&one.sub(&a.mul(&d))));
        let expect0 = one.sub(&factor.mul(&one.add(&a.mul(&a))));
        let expect1 = factor.mul(&a);
        assert_eq!(p1.coeffs[0], expect0);
        assert_eq!(p1.coeffs[1], expect1);
        assert_eq!(p1.degree(), 1);
    }

    #[test]
    fn askey_wilson_matches_phi43_at_numeric_z() {
        // oracle: the ₄φ₃ summed directly with numeric az, az^{-1} parameters
        // must agree with the x-polynomial at x = z + z^{-1}
        let f = Field::new(&["z"]);
        let zv = f.var("z").unwrap();
        let z = f.qvar(zv);
        let (a, b, c, d) = (f.q_pow(1), f.q_pow(2), f.rational(1, 3), f.int(5));
        let base = f.q();
        let n = 3u32;
        let p = askey_wilson(n, &a, &b, &c, &d, &base).unwrap();
        let x = z.add(&z.inv());
        let lhs = p.eval(&x);
        let spec = HypergeometricSpec::new(
            vec![
                base.pow(-(n as i64)),
                a.mul(&b).mul(&c).mul(&d).mul(&base.pow(n as i64 - 1)),
                a.mul(&z),
                a.mul(&z.inv()),
            ],
            vec![a.mul(&b), a.mul(&c), a.mul(&d)],
            base.clone(),
        )
        .with_cap(n);
        let rhs = phi_series(&spec, &base).unwrap();
        assert_eq!(lhs, rhs);
        // z ↔ z^{-1} symmetry at a sample point
        let at = Assignment { q_half: rat(2, 1), dyn_vals: vec![rat(3, 5)] };
        let at_inv = Assignment { q_half: rat(2, 1), dyn_vals: vec![rat(5, 3)] };
        assert_eq!(lhs.evaluate(&at).unwrap(), lhs.evaluate(&at_inv).unwrap());
    }

    #[test]
    fn askey_wilson_degree_is_n() {
        let f = field();
        let (a, b, c, d) = (f.q_pow(1), f.q_pow(2), f.rational(2, 7), f.int(3));
        for n in 0..=4u32 {
            let p = askey_wilson(n, &a, &b, &c, &d, &f.q()).unwrap();
            assert_eq!(p.degree(), n as usize);
        }
    }
}
