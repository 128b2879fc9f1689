//! Sparse multivariate polynomials over the integers.
//!
//! Variable 0 is always the base generator standing for `q^(1/2)`; the
//! remaining slots are the registered dynamical generators (`q^λ`, ...).
//! Terms are kept sorted in ascending graded-lexicographic order with no
//! zero coefficients, so the representation is canonical.
//!
//! Exponents are allowed to go negative transiently (substitutions such as
//! `q^λ ↦ q^α q^λ` multiply by negative powers of the base generator); the
//! fraction layer clears them before a polynomial is ever stored.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::BTreeMap;

pub type Exps = SmallVec<[i32; 6]>;

/// Graded-lexicographic comparison of exponent vectors.
pub fn cmp_exps(a: &Exps, b: &Exps) -> Ordering {
    let da: i64 = a.iter().map(|&e| e as i64).sum();
    let db: i64 = b.iter().map(|&e| e as i64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    pub nvars: usize,
    /// Ascending graded-lex, nonzero coefficients only.
    pub terms: Vec<(Exps, BigInt)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        let exps: Exps = std::iter::repeat(0).take(nvars).collect();
        Poly { nvars, terms: vec![(exps, c)] }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn monomial(nvars: usize, exps: Exps, c: BigInt) -> Self {
        debug_assert_eq!(exps.len(), nvars);
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(exps, c)] }
    }

    pub fn from_map(nvars: usize, map: BTreeMap<Exps, BigInt>) -> Self {
        let mut terms: Vec<(Exps, BigInt)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|(a, _), (b, _)| cmp_exps(a, b));
        Poly { nvars, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms[0].1.is_one()
            && self.terms[0].0.iter().all(|&e| e == 0)
    }

    /// Some(c) when the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 if self.terms[0].0.iter().all(|&e| e == 0) => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> &(Exps, BigInt) {
        self.terms.last().expect("leading term of zero polynomial")
    }

    pub fn degree_in(&self, var: usize) -> i32 {
        self.terms.iter().map(|(e, _)| e[var]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, var: usize) -> i32 {
        self.terms.iter().map(|(e, _)| e[var]).min().unwrap_or(0)
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&v| self.terms.iter().any(|(e, _)| e[v] != 0))
            .collect()
    }

    pub fn map_coeffs(&self, f: impl Fn(&BigInt) -> BigInt) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Poly { nvars: self.nvars, terms }
    }

    pub fn neg(&self) -> Poly {
        self.map_coeffs(|c| -c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out: Vec<(Exps, BigInt)> =
            Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match cmp_exps(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        // Monomial fast paths keep the common scaling case cheap.
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        let mut acc: BTreeMap<MonoKey, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = ea.clone();
                for (x, y) in e.iter_mut().zip(eb.iter()) {
                    *x += *y;
                }
                let c = ca * cb;
                match acc.entry(MonoKey(e)) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += c;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                }
            }
        }
        let terms = acc.into_iter().map(|(k, c)| (k.0, c)).collect();
        Poly { nvars: self.nvars, terms }
    }

    pub fn mul_term(&self, exps: &Exps, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, k)| {
                let mut ne = e.clone();
                for (x, y) in ne.iter_mut().zip(exps.iter()) {
                    *x += *y;
                }
                (ne, k * c)
            })
            .collect();
        Poly { nvars: self.nvars, terms }
    }

    pub fn mul_int(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        self.map_coeffs(|k| k * c)
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Positive gcd of all integer coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_int_exact(&self, c: &BigInt) -> Poly {
        debug_assert!(!c.is_zero());
        self.map_coeffs(|k| {
            let (q, r) = k.div_rem(c);
            debug_assert!(r.is_zero());
            q
        })
    }

    /// Exact division, `None` when `d` does not divide `self` over ℤ.
    pub fn divexact(&self, d: &Poly) -> Option<Poly> {
        debug_assert!(!d.is_zero());
        if self.is_zero() {
            return Some(Poly::zero(self.nvars));
        }
        if let Some(c) = d.as_constant() {
            let mut out = Vec::with_capacity(self.terms.len());
            for (e, k) in &self.terms {
                let (q, r) = k.div_rem(&c);
                if !r.is_zero() {
                    return None;
                }
                out.push((e.clone(), q));
            }
            return Some(Poly { nvars: self.nvars, terms: out });
        }
        let mut rem = self.clone();
        let mut quot: Vec<(Exps, BigInt)> = Vec::new();
        let (dle, dlc) = d.leading();
        while !rem.is_zero() {
            let (rle, rlc) = rem.leading();
            let mut qe: Exps = rle.clone();
            let mut ok = true;
            for (x, y) in qe.iter_mut().zip(dle.iter()) {
                *x -= *y;
                if *x < 0 {
                    ok = false;
                }
            }
            if !ok {
                return None;
            }
            let (qc, r) = rlc.div_rem(dlc);
            if r.is_zero() {
                rem = rem.sub(&d.mul_term(&qe, &qc));
                quot.push((qe, qc));
            } else {
                return None;
            }
        }
        quot.sort_by(|(a, _), (b, _)| cmp_exps(a, b));
        Some(Poly { nvars: self.nvars, terms: quot })
    }

    /// Move exponents of `from` onto `to` (identifying the two generators).
    pub fn merge_vars(&self, from: usize, to: usize) -> Poly {
        let mut acc: BTreeMap<Exps, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[to] += ne[from];
            ne[from] = 0;
            *acc.entry(ne).or_insert_with(BigInt::zero) += c;
        }
        Poly::from_map(self.nvars, acc)
    }

    /// Exchange two generators.
    pub fn swap_vars(&self, a: usize, b: usize) -> Poly {
        let mut terms: Vec<(Exps, BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne.swap(a, b);
                (ne, c.clone())
            })
            .collect();
        terms.sort_by(|(x, _), (y, _)| cmp_exps(x, y));
        Poly { nvars: self.nvars, terms }
    }

    /// Substitute `var ↦ s^k · var` where `s` is the base generator.
    /// May produce negative base exponents; the caller rebalances.
    pub fn shift_var(&self, var: usize, k: i32) -> Poly {
        let mut terms: Vec<(Exps, BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne[0] += k * ne[var];
                (ne, c.clone())
            })
            .collect();
        terms.sort_by(|(x, _), (y, _)| cmp_exps(x, y));
        Poly { nvars: self.nvars, terms }
    }

    /// Multiply every term by `s^k` (used to clear negative base exponents).
    pub fn shift_base(&self, k: i32) -> Poly {
        if k == 0 {
            return self.clone();
        }
        let mut terms: Vec<(Exps, BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne[0] += k;
                (ne, c.clone())
            })
            .collect();
        terms.sort_by(|(x, _), (y, _)| cmp_exps(x, y));
        Poly { nvars: self.nvars, terms }
    }

    pub fn eval(&self, vals: &[BigRational]) -> BigRational {
        debug_assert_eq!(vals.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from(c.clone());
            for (v, &exp) in vals.iter().zip(e.iter()) {
                if exp != 0 {
                    t *= pow_rational(v, exp);
                }
            }
            acc += t;
        }
        acc
    }

    /// Widen the exponent vectors to a larger registry (new variables at the end).
    pub fn extend_nvars(&self, nvars: usize) -> Poly {
        debug_assert!(nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = e.clone();
                while ne.len() < nvars {
                    ne.push(0);
                }
                (ne, c.clone())
            })
            .collect();
        Poly { nvars, terms }
    }
}

fn pow_rational(v: &BigRational, exp: i32) -> BigRational {
    let p = v.pow(exp.unsigned_abs() as i32);
    if exp < 0 {
        p.recip()
    } else {
        p
    }
}

/// BTreeMap key ordered by graded lex.
#[derive(PartialEq, Eq)]
struct MonoKey(Exps);

impl Ord for MonoKey {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_exps(&self.0, &other.0)
    }
}

impl PartialOrd for MonoKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    /// Sign of the leading coefficient (+1, -1; 0 for the zero polynomial).
    pub fn leading_sign(&self) -> i32 {
        match self.terms.last() {
            None => 0,
            Some((_, c)) => {
                if c.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallvec::smallvec;

    fn p(terms: &[(&[i32], i64)]) -> Poly {
        let nvars = terms[0].0.len();
        let mut acc = Poly::zero(nvars);
        for (e, c) in terms {
            let exps: Exps = e.iter().copied().collect();
            acc = acc.add(&Poly::monomial(nvars, exps, BigInt::from(*c)));
        }
        acc
    }

    #[test]
    fn mul_and_divexact_roundtrip() {
        let a = p(&[(&[0, 0], 1), (&[1, 0], -2), (&[0, 3], 5)]);
        let b = p(&[(&[2, 1], 3), (&[0, 0], 7)]);
        let prod = a.mul(&b);
        assert_eq!(prod.divexact(&b).unwrap(), a);
        assert_eq!(prod.divexact(&a).unwrap(), b);
    }

    #[test]
    fn divexact_detects_failure() {
        let a = p(&[(&[1, 0], 1), (&[0, 0], 1)]);
        let b = p(&[(&[1, 0], 1), (&[0, 0], -1)]);
        assert!(a.divexact(&b).is_none());
    }

    #[test]
    fn shift_var_multiplies_base_power() {
        // q^λ ↦ s^2 q^λ on the polynomial q^λ + 1
        let a = p(&[(&[0, 1], 1), (&[0, 0], 1)]);
        let shifted = a.shift_var(1, 2);
        let expect = p(&[(&[2, 1], 1), (&[0, 0], 1)]);
        assert_eq!(shifted, expect);
    }

    #[test]
    fn merge_vars_collapses() {
        let a = p(&[(&[0, 1, 0], 1), (&[0, 0, 1], -1)]);
        let merged = a.merge_vars(2, 1);
        assert!(merged.is_zero());
    }

    #[test]
    fn eval_simple() {
        let a = p(&[(&[2, 0], 1), (&[0, 1], 3)]);
        let vals = vec![
            BigRational::new(BigInt::from(2), BigInt::from(1)),
            BigRational::new(BigInt::from(1), BigInt::from(2)),
        ];
        let got = a.eval(&vals);
        assert_eq!(got, BigRational::new(BigInt::from(11), BigInt::from(2)));
    }

    #[test]
    fn ordering_is_graded_lex() {
        let lo: Exps = smallvec![1, 0];
        let hi: Exps = smallvec![0, 2];
        assert_eq!(cmp_exps(&lo, &hi), Ordering::Less);
    }
}
