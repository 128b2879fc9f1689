//! The Hopf algebra U_q(sl2) in PBW normal form.
//!
//! Generators `k^{±1}`, `e`, `f` with relations `ke = q ek`, `kf = q^{-1} fk`
//! and `ef − fe = (k² − k^{-2})/(q − q^{-1})`. Every element is a finite
//! linear combination of the PBW monomials `f^a k^b e^c`; products are
//! rewritten to this order. The comultiplication is
//! `Δ(e) = k⊗e + e⊗k^{-1}`, `Δ(f) = k⊗f + f⊗k^{-1}`, `Δ(k) = k⊗k`,
//! with counit `ε(k^{±1}) = 1`, `ε(e) = ε(f) = 0` and antipode
//! `S(e) = −q^{-1}e`, `S(f) = −qf`, `S(k^{±1}) = k^{∓1}`.

use crate::scalars::{Field, FieldElement};
use std::collections::BTreeMap;
use std::fmt;

/// The PBW monomial `f^a k^b e^c`. This triple *is* the normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UMonomial {
    pub f_deg: u32,
    pub k_exp: i32,
    pub e_deg: u32,
}

impl UMonomial {
    pub fn new(f_deg: u32, k_exp: i32, e_deg: u32) -> Self {
        UMonomial { f_deg, k_exp, e_deg }
    }

    pub fn one() -> Self {
        UMonomial::new(0, 0, 0)
    }

    pub fn is_one(&self) -> bool {
        self.f_deg == 0 && self.k_exp == 0 && self.e_deg == 0
    }

    /// ad(T)-weight; always even.
    pub fn ad_weight(&self) -> i64 {
        2 * (self.e_deg as i64 - self.f_deg as i64)
    }

    pub fn total_degree(&self) -> u32 {
        self.f_deg + self.k_exp.unsigned_abs() + self.e_deg
    }
}

impl fmt::Display for UMonomial {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(w, "f^{} k^{} e^{}", self.f_deg, self.k_exp, self.e_deg)
    }
}

/// An element of U_q(sl2): finite map from PBW monomials to coefficients,
/// with no zero coefficients stored.
#[derive(Clone, PartialEq)]
pub struct UElement {
    field: Field,
    terms: BTreeMap<UMonomial, FieldElement>,
}

impl UElement {
    pub fn zero(field: &Field) -> Self {
        UElement { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn one(field: &Field) -> Self {
        Self::monomial(field, UMonomial::one(), field.one())
    }

    pub fn monomial(field: &Field, m: UMonomial, c: FieldElement) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        UElement { field: field.clone(), terms }
    }

    pub fn gen_e(field: &Field) -> Self {
        Self::monomial(field, UMonomial::new(0, 0, 1), field.one())
    }

    pub fn gen_f(field: &Field) -> Self {
        Self::monomial(field, UMonomial::new(1, 0, 0), field.one())
    }

    pub fn gen_k(field: &Field, exp: i32) -> Self {
        Self::monomial(field, UMonomial::new(0, exp, 0), field.one())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UMonomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &UMonomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn insert(&mut self, m: UMonomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &UElement) -> UElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &UElement) -> UElement {
        self.add(&other.scale(&self.field.int(-1)))
    }

    pub fn scale(&self, c: &FieldElement) -> UElement {
        if c.is_zero() {
            return UElement::zero(&self.field);
        }
        let terms = self.terms.iter().map(|(m, k)| (*m, k.mul(c))).collect();
        UElement { field: self.field.clone(), terms }
    }

    /// Map over coefficients (shifts, variable renames and the like).
    pub fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> UElement {
        let mut out = UElement::zero(&self.field);
        for (m, c) in &self.terms {
            out.insert(*m, f(c));
        }
        out
    }

    /// Weight-space decomposition by ad-weight.
    pub fn weight_components(&self) -> BTreeMap<i64, UElement> {
        let mut out: BTreeMap<i64, UElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.ad_weight())
                .or_insert_with(|| UElement::zero(&self.field))
                .insert(*m, c.clone());
        }
        out
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("({})*{}", c.to_text(), m))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for UElement {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(w, "{}", self.to_text())
    }
}

// ---------------------------------------------------------------------------
// PBW rewriting
// ---------------------------------------------------------------------------

/// Right-multiply a single normal-form monomial by `e`.
fn mono_mul_e(m: UMonomial, c: &FieldElement, out: &mut UElement) {
    out.insert(UMonomial::new(m.f_deg, m.k_exp, m.e_deg + 1), c.clone());
}

/// Right-multiply by `k^{sign}` (sign = ±1): `e^c k = q^{−c} k e^c`.
fn mono_mul_k(field: &Field, m: UMonomial, c: &FieldElement, sign: i32, out: &mut UElement) {
    let tw = field.q_pow(-(sign as i64) * m.e_deg as i64);
    out.insert(
        UMonomial::new(m.f_deg, m.k_exp + sign, m.e_deg),
        c.mul(&tw),
    );
}

/// Right-multiply by `f`, using
/// `e^C f = f e^C + (k² Σ_{j<C} q^{−2j} − k^{−2} Σ_{j<C} q^{2j})/(q − q^{-1}) e^{C−1}`.
fn mono_mul_f(field: &Field, m: UMonomial, c: &FieldElement, out: &mut UElement) {
    // k^b f = q^{−b} f k^b
    let lead = c.mul(&field.q_pow(-(m.k_exp as i64)));
    out.insert(UMonomial::new(m.f_deg + 1, m.k_exp, m.e_deg), lead);
    if m.e_deg == 0 {
        return;
    }
    let qden = &field.q() - &field.q_pow(-1);
    let mut sum_lo = field.zero();
    let mut sum_hi = field.zero();
    for j in 0..m.e_deg as i64 {
        sum_lo = sum_lo.add(&field.q_pow(-2 * j));
        sum_hi = sum_hi.add(&field.q_pow(2 * j));
    }
    let plus = c.mul(&sum_lo.div(&qden));
    let minus = c.mul(&sum_hi.div(&qden)).neg();
    out.insert(UMonomial::new(m.f_deg, m.k_exp + 2, m.e_deg - 1), plus);
    out.insert(UMonomial::new(m.f_deg, m.k_exp - 2, m.e_deg - 1), minus);
}

/// Normal form of the product of two PBW monomials.
pub fn mono_mul(field: &Field, a: UMonomial, b: UMonomial) -> UElement {
    let mut acc = UElement::monomial(field, a, field.one());
    for _ in 0..b.f_deg {
        let mut next = UElement::zero(field);
        for (m, c) in &acc.terms {
            mono_mul_f(field, *m, c, &mut next);
        }
        acc = next;
    }
    if b.k_exp != 0 {
        let sign = if b.k_exp > 0 { 1 } else { -1 };
        for _ in 0..b.k_exp.unsigned_abs() {
            let mut next = UElement::zero(field);
            for (m, c) in &acc.terms {
                mono_mul_k(field, *m, c, sign, &mut next);
            }
            acc = next;
        }
    }
    for _ in 0..b.e_deg {
        let mut next = UElement::zero(field);
        for (m, c) in &acc.terms {
            mono_mul_e(*m, c, &mut next);
        }
        acc = next;
    }
    acc
}

/// Product in PBW normal form.
pub fn u_multiply(x: &UElement, y: &UElement) -> UElement {
    let field = x.field();
    let mut out = UElement::zero(field);
    for (mx, cx) in &x.terms {
        for (my, cy) in &y.terms {
            let prod = mono_mul(field, *mx, *my).scale(&cx.mul(cy));
            out = out.add(&prod);
        }
    }
    out
}

/// Counit: kills `e` and `f`, sends `k^{±1} ↦ 1`.
pub fn counit(x: &UElement) -> FieldElement {
    let mut acc = x.field().zero();
    for (m, c) in &x.terms {
        if m.f_deg == 0 && m.e_deg == 0 {
            acc = acc.add(c);
        }
    }
    acc
}

/// Antipode: the antihomomorphism with `S(e) = −q^{-1}e`, `S(f) = −qf`,
/// `S(k) = k^{-1}`. On a PBW monomial
/// `S(f^a k^b e^c) = (−1)^{a+c} q^{a−c} · e^c k^{−b} f^a` (then rewritten).
pub fn antipode(x: &UElement) -> UElement {
    let field = x.field();
    let mut out = UElement::zero(field);
    for (m, c) in &x.terms {
        let sign = if (m.f_deg + m.e_deg) % 2 == 0 { 1 } else { -1 };
        let scalar = field
            .q_pow(m.f_deg as i64 - m.e_deg as i64)
            .mul(&field.int(sign));
        let ec = UMonomial::new(0, 0, m.e_deg);
        let kb = UMonomial::new(0, -m.k_exp, 0);
        let fa = UMonomial::new(m.f_deg, 0, 0);
        let prod = u_multiply(
            &u_multiply(
                &UElement::monomial(field, ec, field.one()),
                &UElement::monomial(field, kb, field.one()),
            ),
            &UElement::monomial(field, fa, field.one()),
        );
        out = out.add(&prod.scale(&c.mul(&scalar)));
    }
    out
}

/// The bilinear antiinvolution `‡`: fixes `k^{±1}`, swaps `e ↔ f`.
/// On a PBW monomial `‡(f^a k^b e^c) = f^c k^b e^a` directly.
pub fn ddagger(x: &UElement) -> UElement {
    let field = x.field();
    let mut out = UElement::zero(field);
    for (m, c) in &x.terms {
        out.insert(UMonomial::new(m.e_deg, m.k_exp, m.f_deg), c.clone());
    }
    out
}

// ---------------------------------------------------------------------------
// Tensor powers and leg calculus
// ---------------------------------------------------------------------------

/// An element of U^{⊗n} in leg-wise normal form.
#[derive(Clone, PartialEq)]
pub struct UTensor {
    field: Field,
    legs: usize,
    terms: BTreeMap<Vec<UMonomial>, FieldElement>,
}

impl UTensor {
    pub fn zero(field: &Field, legs: usize) -> Self {
        UTensor { field: field.clone(), legs, terms: BTreeMap::new() }
    }

    pub fn one(field: &Field, legs: usize) -> Self {
        let mut t = Self::zero(field, legs);
        t.insert(vec![UMonomial::one(); legs], field.one());
        t
    }

    pub fn from_element(x: &UElement) -> Self {
        let mut t = Self::zero(x.field(), 1);
        for (m, c) in &x.terms {
            t.insert(vec![*m], c.clone());
        }
        t
    }

    /// Pure tensor of elements, one per leg.
    pub fn pure(parts: &[UElement]) -> Self {
        assert!(!parts.is_empty());
        let field = parts[0].field().clone();
        let mut t = UTensor::one(&field, 0);
        for p in parts {
            let mut next = UTensor::zero(&field, t.legs + 1);
            for (legs, c) in &t.terms {
                for (m, cm) in &p.terms {
                    let mut nl = legs.clone();
                    nl.push(*m);
                    next.insert(nl, c.mul(cm));
                }
            }
            t = next;
        }
        t
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<UMonomial>, &FieldElement)> {
        self.terms.iter()
    }

    fn insert(&mut self, legs: Vec<UMonomial>, c: FieldElement) {
        debug_assert_eq!(legs.len(), self.legs);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(legs) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &UTensor) -> UTensor {
        assert_eq!(self.legs, other.legs);
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.insert(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &UTensor) -> UTensor {
        self.add(&other.scale(&self.field.int(-1)))
    }

    pub fn scale(&self, c: &FieldElement) -> UTensor {
        if c.is_zero() {
            return UTensor::zero(&self.field, self.legs);
        }
        let terms = self.terms.iter().map(|(l, k)| (l.clone(), k.mul(c))).collect();
        UTensor { field: self.field.clone(), legs: self.legs, terms }
    }

    /// Leg-wise product, each leg rewritten to normal form.
    pub fn mul(&self, other: &UTensor) -> UTensor {
        assert_eq!(self.legs, other.legs);
        let mut out = UTensor::zero(&self.field, self.legs);
        for (la, ca) in &self.terms {
            for (lb, cb) in &other.terms {
                // Per-leg normal forms, then cartesian expansion.
                let legs: Vec<UElement> = la
                    .iter()
                    .zip(lb.iter())
                    .map(|(a, b)| mono_mul(&self.field, *a, *b))
                    .collect();
                let expanded = UTensor::pure(&legs).scale(&ca.mul(cb));
                out = out.add(&expanded);
            }
        }
        out
    }

    /// The paper's `u_{i_1…i_k}` embedding: leg `j` of `self` goes to
    /// position `positions[j]` of an `n`-leg tensor, identity elsewhere.
    pub fn leg_embed(&self, positions: &[usize], n: usize) -> UTensor {
        assert_eq!(positions.len(), self.legs);
        let mut seen = vec![false; n];
        for &p in positions {
            assert!(p >= 1 && p <= n, "leg position out of range");
            assert!(!seen[p - 1], "leg position clash");
            seen[p - 1] = true;
        }
        let mut out = UTensor::zero(&self.field, n);
        for (legs, c) in &self.terms {
            let mut nl = vec![UMonomial::one(); n];
            for (j, &p) in positions.iter().enumerate() {
                nl[p - 1] = legs[j];
            }
            out.insert(nl, c.clone());
        }
        out
    }

    /// Apply Δ on leg `j` (1-based), producing an (n+1)-leg tensor.
    pub fn delta_leg(&self, j: usize) -> UTensor {
        assert!(j >= 1 && j <= self.legs);
        let mut out = UTensor::zero(&self.field, self.legs + 1);
        for (legs, c) in &self.terms {
            let d = coproduct_monomial(&self.field, legs[j - 1]);
            for (dl, dc) in &d.terms {
                let mut nl = Vec::with_capacity(self.legs + 1);
                nl.extend_from_slice(&legs[..j - 1]);
                nl.push(dl[0]);
                nl.push(dl[1]);
                nl.extend_from_slice(&legs[j..]);
                out.insert(nl, c.mul(dc));
            }
        }
        out
    }

    /// Apply ε on leg `j`, producing an (n−1)-leg tensor.
    pub fn counit_leg(&self, j: usize) -> UTensor {
        assert!(j >= 1 && j <= self.legs);
        let mut out = UTensor::zero(&self.field, self.legs - 1);
        for (legs, c) in &self.terms {
            let m = legs[j - 1];
            if m.f_deg != 0 || m.e_deg != 0 {
                continue;
            }
            let mut nl = legs.clone();
            nl.remove(j - 1);
            out.insert(nl, c.clone());
        }
        out
    }

    /// Apply S on leg `j`.
    pub fn antipode_leg(&self, j: usize) -> UTensor {
        assert!(j >= 1 && j <= self.legs);
        let mut out = UTensor::zero(&self.field, self.legs);
        for (legs, c) in &self.terms {
            let s = antipode(&UElement::monomial(
                &self.field,
                legs[j - 1],
                self.field.one(),
            ));
            for (m, cm) in &s.terms {
                let mut nl = legs.clone();
                nl[j - 1] = *m;
                out.insert(nl, c.mul(cm));
            }
        }
        out
    }

    /// Multiply all legs together (the map `m^{(n-1)}: U^{⊗n} → U`).
    pub fn multiply_out(&self) -> UElement {
        let mut out = UElement::zero(&self.field);
        for (legs, c) in &self.terms {
            let mut acc = UElement::one(&self.field);
            for m in legs {
                acc = u_multiply(&acc, &UElement::monomial(&self.field, *m, self.field.one()));
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// True when every term has total T-weight zero (equivalently, the
    /// element commutes with Δ^{(n−1)}(t) for all t in T).
    pub fn is_zero_t_weight(&self) -> bool {
        self.terms
            .keys()
            .all(|legs| legs.iter().map(|m| m.ad_weight()).sum::<i64>() == 0)
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(legs, c)| {
                let lt = legs.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ⊗ ");
                format!("({})*[{}]", c.to_text(), lt)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for UTensor {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(w, "{}", self.to_text())
    }
}

/// Δ of a PBW monomial: `Δ(f)^a Δ(k)^b Δ(e)^c` in leg-wise normal form.
pub fn coproduct_monomial(field: &Field, m: UMonomial) -> UTensor {
    let one = field.one();
    let dk = |exp: i32| {
        let mut t = UTensor::zero(field, 2);
        t.insert(
            vec![UMonomial::new(0, exp, 0), UMonomial::new(0, exp, 0)],
            one.clone(),
        );
        t
    };
    let de = {
        let mut t = UTensor::zero(field, 2);
        t.insert(vec![UMonomial::new(0, 1, 0), UMonomial::new(0, 0, 1)], one.clone());
        t.insert(vec![UMonomial::new(0, 0, 1), UMonomial::new(0, -1, 0)], one.clone());
        t
    };
    let df = {
        let mut t = UTensor::zero(field, 2);
        t.insert(vec![UMonomial::new(0, 1, 0), UMonomial::new(1, 0, 0)], one.clone());
        t.insert(vec![UMonomial::new(1, 0, 0), UMonomial::new(0, -1, 0)], one.clone());
        t
    };
    let mut acc = UTensor::one(field, 2);
    for _ in 0..m.f_deg {
        acc = acc.mul(&df);
    }
    if m.k_exp != 0 {
        acc = acc.mul(&dk(m.k_exp));
    }
    for _ in 0..m.e_deg {
        acc = acc.mul(&de);
    }
    acc
}

/// Coproduct of a general element.
pub fn coproduct(x: &UElement) -> UTensor {
    let field = x.field();
    let mut out = UTensor::zero(field, 2);
    for (m, c) in x.terms() {
        out = out.add(&coproduct_monomial(field, *m).scale(c));
    }
    out
}

/// Iterated comultiplication Δ^{(n−1)}: U → U^{⊗n}, via Δ_1 ∘ Δ^{(n−2)}.
pub fn iterated_coproduct(x: &UElement, n: usize) -> UTensor {
    assert!(n >= 1);
    let mut acc = UTensor::from_element(x);
    while acc.legs() < n {
        acc = acc.delta_leg(1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field() -> Field {
        Field::new(&[])
    }

    #[test]
    fn ef_commutator() {
        let f = field();
        let prod = u_multiply(&UElement::gen_e(&f), &UElement::gen_f(&f));
        let qden = &f.q() - &f.q_pow(-1);
        assert_eq!(prod.coeff(&UMonomial::new(1, 0, 1)), f.one());
        assert_eq!(prod.coeff(&UMonomial::new(0, 2, 0)), f.one().div(&qden));
        assert_eq!(prod.coeff(&UMonomial::new(0, -2, 0)), f.one().div(&qden).neg());
        assert_eq!(prod.terms().count(), 3);
    }

    #[test]
    fn ke_is_q_ek() {
        let f = field();
        // k·e is already in PBW order; the relation shows as e·k = q^{-1}·(k·e).
        let ke = u_multiply(&UElement::gen_k(&f, 1), &UElement::gen_e(&f));
        let ek = u_multiply(&UElement::gen_e(&f), &UElement::gen_k(&f, 1));
        assert_eq!(ke.coeff(&UMonomial::new(0, 1, 1)), f.one());
        assert_eq!(ke.terms().count(), 1);
        assert_eq!(ke, ek.scale(&f.q()));
        // kf = q^{-1} fk likewise
        let kf = u_multiply(&UElement::gen_k(&f, 1), &UElement::gen_f(&f));
        let fk = u_multiply(&UElement::gen_f(&f), &UElement::gen_k(&f, 1));
        assert_eq!(kf, fk.scale(&f.q_pow(-1)));
    }

    #[test]
    fn k_times_k_inverse() {
        let f = field();
        let prod = u_multiply(&UElement::gen_k(&f, 1), &UElement::gen_k(&f, -1));
        assert_eq!(prod, UElement::one(&f));
    }

    #[test]
    fn coproduct_of_generators() {
        let f = field();
        let de = coproduct(&UElement::gen_e(&f));
        let expect = {
            let mut t = UTensor::zero(&f, 2);
            t.insert(vec![UMonomial::new(0, 1, 0), UMonomial::new(0, 0, 1)], f.one());
            t.insert(vec![UMonomial::new(0, 0, 1), UMonomial::new(0, -1, 0)], f.one());
            t
        };
        assert_eq!(de, expect);
        let dk = coproduct(&UElement::gen_k(&f, 1));
        assert_eq!(dk.terms().count(), 1);
    }

    #[test]
    fn coproduct_is_algebra_map_on_ef() {
        let f = field();
        let ef = u_multiply(&UElement::gen_e(&f), &UElement::gen_f(&f));
        let lhs = coproduct(&ef);
        let rhs = coproduct(&UElement::gen_e(&f)).mul(&coproduct(&UElement::gen_f(&f)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn counit_and_antipode_values() {
        let f = field();
        assert_eq!(counit(&UElement::gen_k(&f, 2)), f.one());
        assert_eq!(counit(&UElement::gen_e(&f)), f.zero());
        let se = antipode(&UElement::gen_e(&f));
        assert_eq!(se, UElement::gen_e(&f).scale(&f.q_pow(-1).neg()));
        // S(fe) = S(e)S(f) = ef in normal form
        let fe = u_multiply(&UElement::gen_f(&f), &UElement::gen_e(&f));
        let ef = u_multiply(&UElement::gen_e(&f), &UElement::gen_f(&f));
        assert_eq!(antipode(&fe), ef);
    }

    #[test]
    fn ddagger_examples() {
        let f = field();
        assert_eq!(ddagger(&UElement::gen_e(&f)), UElement::gen_f(&f));
        let ef = u_multiply(&UElement::gen_e(&f), &UElement::gen_f(&f));
        // ‡(ef) = ‡(f)‡(e) = e·f again, i.e. the same normal form
        assert_eq!(ddagger(&ef), ef);
        assert_eq!(ddagger(&UElement::gen_k(&f, 2)), UElement::gen_k(&f, 2));
    }

    #[test]
    fn leg_embedding_31() {
        let f = field();
        let ef = UTensor::pure(&[UElement::gen_e(&f), UElement::gen_f(&f)]);
        let emb = ef.leg_embed(&[3, 1], 3);
        let expect = UTensor::pure(&[
            UElement::gen_f(&f),
            UElement::one(&f),
            UElement::gen_e(&f),
        ]);
        assert_eq!(emb, expect);
        // identity embedding
        assert_eq!(ef.leg_embed(&[1, 2], 2), ef);
        // single leg
        let k1 = UTensor::from_element(&UElement::gen_k(&f, 1)).leg_embed(&[1], 2);
        let expect2 = UTensor::pure(&[UElement::gen_k(&f, 1), UElement::one(&f)]);
        assert_eq!(k1, expect2);
    }

    #[test]
    fn iterated_coproduct_grouplike() {
        let f = field();
        let d3 = iterated_coproduct(&UElement::gen_k(&f, 1), 3);
        let expect = UTensor::pure(&[
            UElement::gen_k(&f, 1),
            UElement::gen_k(&f, 1),
            UElement::gen_k(&f, 1),
        ]);
        assert_eq!(d3, expect);
    }

    #[test]
    fn counit_leg_kills_e() {
        let f = field();
        let t = UTensor::pure(&[UElement::gen_k(&f, 1), UElement::gen_e(&f)]);
        assert!(t.counit_leg(2).is_zero());
        let t2 = UTensor::pure(&[UElement::gen_k(&f, 1), UElement::gen_k(&f, -1)]);
        assert_eq!(t2.counit_leg(2), UTensor::from_element(&UElement::gen_k(&f, 1)));
    }

    fn arb_mono() -> impl Strategy<Value = UMonomial> {
        (0u32..3, -2i32..3, 0u32..3).prop_map(|(a, b, c)| UMonomial::new(a, b, c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn multiplication_is_associative(a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            let f = field();
            let (ea, eb, ec) = (
                UElement::monomial(&f, a, f.one()),
                UElement::monomial(&f, b, f.one()),
                UElement::monomial(&f, c, f.one()),
            );
            let lhs = u_multiply(&u_multiply(&ea, &eb), &ec);
            let rhs = u_multiply(&ea, &u_multiply(&eb, &ec));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn coproduct_is_algebra_map(a in arb_mono(), b in arb_mono()) {
            let f = field();
            let (ea, eb) = (
                UElement::monomial(&f, a, f.one()),
                UElement::monomial(&f, b, f.one()),
            );
            let lhs = coproduct(&u_multiply(&ea, &eb));
            let rhs = coproduct(&ea).mul(&coproduct(&eb));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ddagger_is_antiinvolution(a in arb_mono(), b in arb_mono()) {
            let f = field();
            let (ea, eb) = (
                UElement::monomial(&f, a, f.one()),
                UElement::monomial(&f, b, f.one()),
            );
            prop_assert_eq!(ddagger(&ddagger(&ea)), ea.clone());
            let lhs = ddagger(&u_multiply(&ea, &eb));
            let rhs = u_multiply(&ddagger(&eb), &ddagger(&ea));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ad_weight_additive(a in arb_mono(), b in arb_mono()) {
            let f = field();
            let prod = u_multiply(
                &UElement::monomial(&f, a, f.one()),
                &UElement::monomial(&f, b, f.one()),
            );
            let w = a.ad_weight() + b.ad_weight();
            for (m, _) in prod.terms() {
                prop_assert_eq!(m.ad_weight(), w);
            }
        }
    }
}
