//! The quantized function algebra A_q[SL(2)].
//!
//! Generators α, β, γ, δ (the matrix coefficients of V₁) with relations
//! `αβ = qβα`, `αγ = qγα`, `βδ = qδβ`, `γδ = qδγ`, `βγ = γβ`,
//! `αδ − δα = (q − q^{-1})βγ` and the determinant relation
//! `δα − q^{-1}βγ = 1`. The PBW basis consists of the monomials
//! `α^i β^j γ^l` (i ≥ 0) and `δ^i β^j γ^l` (i > 0); mixed α,δ powers are
//! eliminated through the determinant relation.
//!
//! The Hopf pairing with U_q(sl2) is fixed by `⟨u, t¹_{rs}⟩ = act(u, V₁)_{rs}`
//! in the rational gauge and extended by duality; the left and right regular
//! actions `u·a = Σ ⟨u, a₍₂₎⟩ a₍₁₎`, `a·u = Σ ⟨u, a₍₁₎⟩ a₍₂₎` are computed by
//! structural recursion on PBW monomials rather than by materializing Δ_A of
//! large monomials.

use crate::reps::{act, make_rep, Rep};
use crate::scalars::{Field, FieldElement};
use crate::uq::{self, UElement};
use std::collections::BTreeMap;
use std::fmt;

/// PBW monomial of A: `ad > 0` is `α^{ad} β^b γ^g`, `ad < 0` is
/// `δ^{−ad} β^b γ^g`, `ad = 0` is `β^b γ^g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AMonomial {
    pub ad: i32,
    pub beta: u32,
    pub gamma: u32,
}

impl AMonomial {
    pub fn new(ad: i32, beta: u32, gamma: u32) -> Self {
        AMonomial { ad, beta, gamma }
    }

    pub fn one() -> Self {
        AMonomial::new(0, 0, 0)
    }

    pub fn is_one(&self) -> bool {
        self.ad == 0 && self.beta == 0 && self.gamma == 0
    }

    /// Bigrade (left, right): `α^i β^j γ^l ∈ A[i+j−l, i−j+l]` and
    /// `δ^d β^j γ^l ∈ A[−d+j−l, −d−j+l]`; both slots have equal parity.
    pub fn bigrade(&self) -> (i64, i64) {
        let (i, j, l) = (self.ad as i64, self.beta as i64, self.gamma as i64);
        (i + j - l, i - j + l)
    }

    /// Total degree in the generators; a degree-d monomial lies in
    /// ⊕_{m≤d} W(m), which bounds the locally nilpotent e,f action.
    pub fn total_degree(&self) -> u32 {
        self.ad.unsigned_abs() + self.beta + self.gamma
    }

    fn gen_sequence(&self) -> Vec<AGen> {
        let mut seq = Vec::new();
        if self.ad > 0 {
            seq.extend(std::iter::repeat(AGen::Alpha).take(self.ad as usize));
        } else {
            seq.extend(std::iter::repeat(AGen::Delta).take((-self.ad) as usize));
        }
        seq.extend(std::iter::repeat(AGen::Beta).take(self.beta as usize));
        seq.extend(std::iter::repeat(AGen::Gamma).take(self.gamma as usize));
        seq
    }
}

impl fmt::Display for AMonomial {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(w, "1");
        }
        let mut parts = Vec::new();
        if self.ad > 0 {
            parts.push(format!("α^{}", self.ad));
        } else if self.ad < 0 {
            parts.push(format!("δ^{}", -self.ad));
        }
        if self.beta > 0 {
            parts.push(format!("β^{}", self.beta));
        }
        if self.gamma > 0 {
            parts.push(format!("γ^{}", self.gamma));
        }
        write!(w, "{}", parts.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AGen {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

/// Element of A (or of A_K when the coefficients carry dynamical variables).
#[derive(Clone, PartialEq)]
pub struct AElement {
    field: Field,
    terms: BTreeMap<AMonomial, FieldElement>,
}

impl AElement {
    pub fn zero(field: &Field) -> Self {
        AElement { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn one(field: &Field) -> Self {
        Self::monomial(field, AMonomial::one(), field.one())
    }

    pub fn monomial(field: &Field, m: AMonomial, c: FieldElement) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        AElement { field: field.clone(), terms }
    }

    pub fn gen(field: &Field, g: AGen) -> Self {
        let m = match g {
            AGen::Alpha => AMonomial::new(1, 0, 0),
            AGen::Beta => AMonomial::new(0, 1, 0),
            AGen::Gamma => AMonomial::new(0, 0, 1),
            AGen::Delta => AMonomial::new(-1, 0, 0),
        };
        Self::monomial(field, m, field.one())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AMonomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &AMonomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn insert(&mut self, m: AMonomial, c: FieldElement) {
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

    pub fn add(&self, other: &AElement) -> AElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AElement) -> AElement {
        self.add(&other.scale(&self.field.int(-1)))
    }

    pub fn scale(&self, c: &FieldElement) -> AElement {
        if c.is_zero() {
            return AElement::zero(&self.field);
        }
        let terms = self.terms.iter().map(|(m, k)| (*m, k.mul(c))).collect();
        AElement { field: self.field.clone(), terms }
    }

    pub fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> AElement {
        let mut out = AElement::zero(&self.field);
        for (m, c) in &self.terms {
            out.insert(*m, f(c));
        }
        out
    }

    /// Partition of terms by bigrade.
    pub fn bigrade(&self) -> BTreeMap<(i64, i64), AElement> {
        let mut out: BTreeMap<(i64, i64), AElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.bigrade())
                .or_insert_with(|| AElement::zero(&self.field))
                .insert(*m, c.clone());
        }
        out
    }

    /// Peter-Weyl support bound: e^{N+1} and f^{N+1} kill this element.
    pub fn degree_bound(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
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

impl fmt::Debug for AElement {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(w, "{}", self.to_text())
    }
}

// ---------------------------------------------------------------------------
// Normal-form multiplication
// ---------------------------------------------------------------------------

/// Right-multiply a PBW monomial by a generator.
fn mono_mul_gen(field: &Field, m: AMonomial, c: &FieldElement, g: AGen, out: &mut AElement) {
    let (j, l) = (m.beta as i64, m.gamma as i64);
    match g {
        AGen::Beta => out.insert(AMonomial::new(m.ad, m.beta + 1, m.gamma), c.clone()),
        AGen::Gamma => out.insert(AMonomial::new(m.ad, m.beta, m.gamma + 1), c.clone()),
        AGen::Alpha => {
            let tw = c.mul(&field.q_pow(-j - l));
            if m.ad >= 0 {
                out.insert(AMonomial::new(m.ad + 1, m.beta, m.gamma), tw);
            } else {
                // δ^d β^j γ^l α = q^{−j−l} δ^{d−1}(δα) β^j γ^l
                //              = q^{−j−l} δ^{d−1}(1 + q^{-1}βγ) β^j γ^l
                out.insert(AMonomial::new(m.ad + 1, m.beta, m.gamma), tw.clone());
                out.insert(
                    AMonomial::new(m.ad + 1, m.beta + 1, m.gamma + 1),
                    tw.mul(&field.q_pow(-1)),
                );
            }
        }
        AGen::Delta => {
            let tw = c.mul(&field.q_pow(j + l));
            if m.ad <= 0 {
                out.insert(AMonomial::new(m.ad - 1, m.beta, m.gamma), tw);
            } else {
                // α^i β^j γ^l δ = q^{j+l} α^{i−1}(αδ) β^j γ^l
                //              = q^{j+l} α^{i−1}(1 + qβγ) β^j γ^l
                out.insert(AMonomial::new(m.ad - 1, m.beta, m.gamma), tw.clone());
                out.insert(
                    AMonomial::new(m.ad - 1, m.beta + 1, m.gamma + 1),
                    tw.mul(&field.q()),
                );
            }
        }
    }
}

fn mul_by_gen(x: &AElement, g: AGen) -> AElement {
    let field = x.field();
    let mut out = AElement::zero(field);
    for (m, c) in &x.terms {
        mono_mul_gen(field, *m, c, g, &mut out);
    }
    out
}

/// Product in PBW normal form.
pub fn a_multiply(x: &AElement, y: &AElement) -> AElement {
    let field = x.field();
    let mut out = AElement::zero(field);
    for (my, cy) in &y.terms {
        let mut acc = x.scale(cy);
        for g in my.gen_sequence() {
            acc = mul_by_gen(&acc, g);
        }
        out = out.add(&acc);
    }
    out
}

// ---------------------------------------------------------------------------
// Hopf structure of A (derived from duality with U)
// ---------------------------------------------------------------------------

/// Two-leg tensor over K (plain ⊗, not the restricted one).
#[derive(Clone, PartialEq)]
pub struct ATensor {
    field: Field,
    terms: BTreeMap<(AMonomial, AMonomial), FieldElement>,
}

impl ATensor {
    pub fn zero(field: &Field) -> Self {
        ATensor { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn pure(a: &AElement, b: &AElement) -> Self {
        let mut out = Self::zero(a.field());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.insert((*ma, *mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(AMonomial, AMonomial), &FieldElement)> {
        self.terms.iter()
    }

    pub fn insert(&mut self, m: (AMonomial, AMonomial), c: FieldElement) {
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

    pub fn add(&self, other: &ATensor) -> ATensor {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ATensor) -> ATensor {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(*m, c.neg());
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> ATensor {
        let mut out = Self::zero(&self.field);
        for (m, k) in &self.terms {
            out.insert(*m, k.mul(c));
        }
        out
    }

    /// Leg-wise product.
    pub fn mul(&self, other: &ATensor) -> ATensor {
        let field = &self.field;
        let mut out = Self::zero(field);
        for ((a1, a2), ca) in &self.terms {
            for ((b1, b2), cb) in &other.terms {
                let p1 = a_multiply(
                    &AElement::monomial(field, *a1, field.one()),
                    &AElement::monomial(field, *b1, field.one()),
                );
                let p2 = a_multiply(
                    &AElement::monomial(field, *a2, field.one()),
                    &AElement::monomial(field, *b2, field.one()),
                );
                let c = ca.mul(cb);
                for (m1, c1) in &p1.terms {
                    for (m2, c2) in &p2.terms {
                        out.insert((*m1, *m2), c.mul(c1).mul(c2));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for ATensor {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self
            .terms
            .iter()
            .map(|((a, b), c)| format!("({})*[{} ⊗ {}]", c.to_text(), a, b))
            .collect::<Vec<_>>()
            .join(" + ");
        write!(w, "{}", if body.is_empty() { "0".into() } else { body })
    }
}

/// Context carrying the field and the V₁ matrices that drive the pairing.
pub struct ACtx {
    pub field: Field,
    v1: Rep,
}

impl ACtx {
    pub fn new(field: &Field) -> ACtx {
        ACtx { field: field.clone(), v1: make_rep(field, 1) }
    }

    /// Generator pairing values ⟨u, ·⟩ from the V₁ matrix of u.
    fn v1_matrix(&self, u: &UElement) -> crate::reps::Matrix {
        act(u, &self.v1)
    }

    /// Hopf pairing ⟨u, a⟩ = ε_A(u·a).
    pub fn pairing(&self, u: &UElement, a: &AElement) -> FieldElement {
        counit_a(&self.left_action(u, a))
    }

    /// Left regular action `u·a = Σ ⟨u, a₍₂₎⟩ a₍₁₎`.
    pub fn left_action(&self, u: &UElement, a: &AElement) -> AElement {
        let mut out = AElement::zero(&self.field);
        for (ma, ca) in &a.terms {
            let seq = ma.gen_sequence();
            out = out.add(&self.left_action_seq(u, &seq).scale(ca));
        }
        out
    }

    fn left_action_seq(&self, u: &UElement, seq: &[AGen]) -> AElement {
        if seq.is_empty() {
            return AElement::monomial(&self.field, AMonomial::one(), uq::counit(u));
        }
        let g = seq[0];
        let rest = &seq[1..];
        // Δ(u) = Σ u₁ ⊗ u₂; u·(g·rest) = Σ (u₁·g)(u₂·rest)
        let du = uq::coproduct(u);
        // group by the second leg to recurse once per distinct monomial
        let mut by_u2: BTreeMap<uq::UMonomial, AElement> = BTreeMap::new();
        for (legs, c) in du.terms() {
            let u1 = UElement::monomial(&self.field, legs[0], c.clone());
            let acted = self.left_gen_action(&u1, g);
            match by_u2.entry(legs[1]) {
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let s = o.get().add(&acted);
                    *o.get_mut() = s;
                }
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(acted);
                }
            }
        }
        let mut out = AElement::zero(&self.field);
        for (u2, left) in by_u2 {
            if left.is_zero() {
                continue;
            }
            let tail = self.left_action_seq(
                &UElement::monomial(&self.field, u2, self.field.one()),
                rest,
            );
            out = out.add(&a_multiply(&left, &tail));
        }
        out
    }

    /// `u·g` for a generator g, from the pairing table.
    fn left_gen_action(&self, u: &UElement, g: AGen) -> AElement {
        let m = self.v1_matrix(u);
        let field = &self.field;
        let mut out = AElement::zero(field);
        match g {
            // u·α = ⟨u,α⟩α + ⟨u,γ⟩β
            AGen::Alpha => {
                out.insert(AMonomial::new(1, 0, 0), m.get(0, 0).clone());
                out.insert(AMonomial::new(0, 1, 0), m.get(1, 0).clone());
            }
            // u·β = ⟨u,β⟩α + ⟨u,δ⟩β
            AGen::Beta => {
                out.insert(AMonomial::new(1, 0, 0), m.get(0, 1).clone());
                out.insert(AMonomial::new(0, 1, 0), m.get(1, 1).clone());
            }
            // u·γ = ⟨u,α⟩γ + ⟨u,γ⟩δ
            AGen::Gamma => {
                out.insert(AMonomial::new(0, 0, 1), m.get(0, 0).clone());
                out.insert(AMonomial::new(-1, 0, 0), m.get(1, 0).clone());
            }
            // u·δ = ⟨u,β⟩γ + ⟨u,δ⟩δ
            AGen::Delta => {
                out.insert(AMonomial::new(0, 0, 1), m.get(0, 1).clone());
                out.insert(AMonomial::new(-1, 0, 0), m.get(1, 1).clone());
            }
        }
        out
    }

    /// Right regular action `a·u = Σ ⟨u, a₍₁₎⟩ a₍₂₎`.
    pub fn right_action(&self, a: &AElement, u: &UElement) -> AElement {
        let mut out = AElement::zero(&self.field);
        for (ma, ca) in &a.terms {
            let seq = ma.gen_sequence();
            out = out.add(&self.right_action_seq(&seq, u).scale(ca));
        }
        out
    }

    fn right_action_seq(&self, seq: &[AGen], u: &UElement) -> AElement {
        if seq.is_empty() {
            return AElement::monomial(&self.field, AMonomial::one(), uq::counit(u));
        }
        let g = seq[0];
        let rest = &seq[1..];
        // (g·rest)·u = Σ (g·u₁)(rest·u₂)
        let du = uq::coproduct(u);
        let mut by_u2: BTreeMap<uq::UMonomial, AElement> = BTreeMap::new();
        for (legs, c) in du.terms() {
            let u1 = UElement::monomial(&self.field, legs[0], c.clone());
            let acted = self.right_gen_action(g, &u1);
            match by_u2.entry(legs[1]) {
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let s = o.get().add(&acted);
                    *o.get_mut() = s;
                }
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(acted);
                }
            }
        }
        let mut out = AElement::zero(&self.field);
        for (u2, left) in by_u2 {
            if left.is_zero() {
                continue;
            }
            let tail = self.right_action_seq(
                rest,
                &UElement::monomial(&self.field, u2, self.field.one()),
            );
            out = out.add(&a_multiply(&left, &tail));
        }
        out
    }

    /// `g·u` for a generator g.
    fn right_gen_action(&self, g: AGen, u: &UElement) -> AElement {
        let m = self.v1_matrix(u);
        let field = &self.field;
        let mut out = AElement::zero(field);
        match g {
            // α·u = ⟨u,α⟩α + ⟨u,β⟩γ
            AGen::Alpha => {
                out.insert(AMonomial::new(1, 0, 0), m.get(0, 0).clone());
                out.insert(AMonomial::new(0, 0, 1), m.get(0, 1).clone());
            }
            // β·u = ⟨u,α⟩β + ⟨u,β⟩δ
            AGen::Beta => {
                out.insert(AMonomial::new(0, 1, 0), m.get(0, 0).clone());
                out.insert(AMonomial::new(-1, 0, 0), m.get(0, 1).clone());
            }
            // γ·u = ⟨u,γ⟩α + ⟨u,δ⟩γ
            AGen::Gamma => {
                out.insert(AMonomial::new(1, 0, 0), m.get(1, 0).clone());
                out.insert(AMonomial::new(0, 0, 1), m.get(1, 1).clone());
            }
            // δ·u = ⟨u,γ⟩β + ⟨u,δ⟩δ
            AGen::Delta => {
                out.insert(AMonomial::new(0, 1, 0), m.get(1, 0).clone());
                out.insert(AMonomial::new(-1, 0, 0), m.get(1, 1).clone());
            }
        }
        out
    }
}

/// Coproduct: corepresentation formulas on generators, extended
/// multiplicatively. `Δ(α) = α⊗α + β⊗γ`, `Δ(β) = α⊗β + β⊗δ`,
/// `Δ(γ) = γ⊗α + δ⊗γ`, `Δ(δ) = γ⊗β + δ⊗δ`.
pub fn coproduct_a(a: &AElement) -> ATensor {
    let field = a.field();
    let gen_cop = |g: AGen| -> ATensor {
        let mut t = ATensor::zero(field);
        let (al, be, ga, de) = (
            AMonomial::new(1, 0, 0),
            AMonomial::new(0, 1, 0),
            AMonomial::new(0, 0, 1),
            AMonomial::new(-1, 0, 0),
        );
        match g {
            AGen::Alpha => {
                t.insert((al, al), field.one());
                t.insert((be, ga), field.one());
            }
            AGen::Beta => {
                t.insert((al, be), field.one());
                t.insert((be, de), field.one());
            }
            AGen::Gamma => {
                t.insert((ga, al), field.one());
                t.insert((de, ga), field.one());
            }
            AGen::Delta => {
                t.insert((ga, be), field.one());
                t.insert((de, de), field.one());
            }
        }
        t
    };
    let mut out = ATensor::zero(field);
    for (m, c) in a.terms() {
        let mut acc = {
            let mut t = ATensor::zero(field);
            t.insert((AMonomial::one(), AMonomial::one()), field.one());
            t
        };
        for g in m.gen_sequence() {
            acc = acc.mul(&gen_cop(g));
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// Counit: ε(α) = ε(δ) = 1, ε(β) = ε(γ) = 0.
pub fn counit_a(a: &AElement) -> FieldElement {
    let mut acc = a.field().zero();
    for (m, c) in a.terms() {
        if m.beta == 0 && m.gamma == 0 {
            acc = acc.add(c);
        }
    }
    acc
}

/// Antipode: S(α) = δ, S(δ) = α, S(β) = −q^{-1}β, S(γ) = −qγ, extended
/// anti-multiplicatively.
pub fn antipode_a(a: &AElement) -> AElement {
    let field = a.field();
    let mut out = AElement::zero(field);
    for (m, c) in a.terms() {
        let mut acc = AElement::one(field);
        for g in m.gen_sequence().into_iter().rev() {
            let img = match g {
                AGen::Alpha => AElement::gen(field, AGen::Delta),
                AGen::Delta => AElement::gen(field, AGen::Alpha),
                AGen::Beta => AElement::gen(field, AGen::Beta).scale(&field.q_pow(-1).neg()),
                AGen::Gamma => AElement::gen(field, AGen::Gamma).scale(&field.q().neg()),
            };
            acc = a_multiply(&acc, &img);
        }
        out = out.add(&acc.scale(c));
    }
    out
}

// ---------------------------------------------------------------------------
// Peter-Weyl matrix coefficients
// ---------------------------------------------------------------------------

/// The (m+1)² matrix coefficients t^m_{rs} in the rational gauge.
pub struct MatrixCoefficientTable {
    pub m: u32,
    entries: BTreeMap<(i64, i64), AElement>,
}

impl MatrixCoefficientTable {
    pub fn get(&self, r: i64, s: i64) -> &AElement {
        &self.entries[&(r, s)]
    }

    pub fn weights(&self) -> Vec<i64> {
        (0..=self.m as i64).map(|i| self.m as i64 - 2 * i).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(i64, i64), &AElement)> {
        self.entries.iter()
    }
}

/// Construct t^m_{rs} by realizing V_m inside V₁^{⊗m}: the highest-weight
/// vector w₁^{⊗m} is propagated down by the fused f-action normalized to the
/// rational gauge, and matrix coefficients of the tensor power are products
/// of the V₁ coefficients. Bigrade and nonvanishing are checked.
pub fn peter_weyl(field: &Field, m: u32) -> MatrixCoefficientTable {
    let mut entries = BTreeMap::new();
    if m == 0 {
        entries.insert((0, 0), AElement::one(field));
        return MatrixCoefficientTable { m, entries };
    }
    let v1 = make_rep(field, 1);
    let tr = crate::reps::TensorRep::new(vec![v1; m as usize]);
    let dim = tr.dim();
    let fm = crate::reps::act_fused(&UElement::gen_f(field), &tr);
    // weight vectors: W_m = w₁⊗…⊗w₁ at flattened index 0
    let mut vectors: Vec<Vec<FieldElement>> = Vec::with_capacity(m as usize + 1);
    let mut w = vec![field.zero(); dim];
    w[0] = field.one();
    vectors.push(w);
    for i in 0..m as usize {
        // f·W_r = [(m+r)/2]_q W_{r−2} with r = m − 2i
        let r = m as i64 - 2 * i as i64;
        let norm = field.q_int((m as i64 + r) / 2);
        let prev = &vectors[i];
        let mut next = vec![field.zero(); dim];
        for (col, pc) in prev.iter().enumerate() {
            if pc.is_zero() {
                continue;
            }
            for row in 0..dim {
                let a = fm.get(row, col);
                if !a.is_zero() {
                    next[row] = next[row].add(&a.mul(pc));
                }
            }
        }
        let ninv = norm.inv();
        for v in next.iter_mut() {
            *v = v.mul(&ninv);
        }
        vectors.push(next);
    }
    // norms (the product basis is orthonormal for the bilinear form)
    let norms: Vec<FieldElement> = vectors
        .iter()
        .map(|v| {
            let mut acc = field.zero();
            for c in v {
                acc = acc.add(&c.mul(c));
            }
            acc
        })
        .collect();
    // product-basis matrix coefficients: legwise generators
    let mono_of = |row: usize, col: usize| -> AElement {
        let ri = tr.split_index(row);
        let ci = tr.split_index(col);
        let mut acc = AElement::one(field);
        for leg in 0..m as usize {
            let g = match (ri[leg], ci[leg]) {
                (0, 0) => AGen::Alpha,
                (0, 1) => AGen::Beta,
                (1, 0) => AGen::Gamma,
                (1, 1) => AGen::Delta,
                _ => unreachable!(),
            };
            acc = a_multiply(&acc, &AElement::gen(field, g));
        }
        acc
    };
    for (ri, wr) in vectors.iter().enumerate() {
        for (si, ws) in vectors.iter().enumerate() {
            let r = m as i64 - 2 * ri as i64;
            let s = m as i64 - 2 * si as i64;
            let mut acc = AElement::zero(field);
            let scale = norms[ri].inv();
            for (i, ci) in wr.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                for (j, cj) in ws.iter().enumerate() {
                    if cj.is_zero() {
                        continue;
                    }
                    acc = acc.add(&mono_of(i, j).scale(&ci.mul(cj).mul(&scale)));
                }
            }
            assert!(!acc.is_zero(), "t^{m}_{r},{s} vanished");
            for (mono, _) in acc.terms() {
                assert_eq!(mono.bigrade(), (r, s), "bigrade breach in t^{m}_{r},{s}");
            }
            entries.insert((r, s), acc);
        }
    }
    MatrixCoefficientTable { m, entries }
}

/// Report of a shape check that solves for the paper's unspecified
/// nonzero constant and then verifies the identity.
#[derive(Debug)]
pub struct ShapeReport {
    pub pass: bool,
    pub constant: Option<FieldElement>,
    pub detail: String,
}

/// Verify `t^m_{rs} = c · δ^{(−r−s)/2} γ^{(s−r)/2} · ₂φ₁(...; q², −qβγ)`
/// for some nonzero scalar c (solved for, then checked). The Peter-Weyl
/// construction is independent of the hypergeometric route, so this is a
/// genuine cross-check.
pub fn little_q_jacobi_check(field: &Field, m: i64, r: i64, s: i64) -> ShapeReport {
    let spec = match crate::qspecial::little_q_jacobi_shape(field, m, r, s) {
        Ok(s) => s,
        Err(e) => {
            return ShapeReport { pass: false, constant: None, detail: e.to_string() }
        }
    };
    let table = peter_weyl(field, m as u32);
    let t = table.get(r, s);
    let coeffs = match spec.coefficients() {
        Ok(c) => c,
        Err(e) => {
            return ShapeReport { pass: false, constant: None, detail: e.to_string() }
        }
    };
    // δ^{(−r−s)/2} γ^{(s−r)/2} Σ_j c_j (−qβγ)^j
    let arg = AElement::monomial(field, AMonomial::new(0, 1, 1), field.q().neg());
    let mut series = AElement::zero(field);
    let mut argpow = AElement::one(field);
    for c in &coeffs {
        series = series.add(&argpow.scale(c));
        argpow = a_multiply(&argpow, &arg);
    }
    let dpow = AElement::monomial(
        field,
        AMonomial::new(-(((-r - s) / 2) as i32), 0, 0),
        field.one(),
    );
    let gpow = AElement::monomial(field, AMonomial::new(0, 0, ((s - r) / 2) as u32), field.one());
    let rhs = a_multiply(&a_multiply(&dpow, &gpow), &series);
    // solve the scalar from any shared monomial, then verify globally
    let probe = match rhs.terms().next() {
        Some((mono, c)) => Some((*mono, c.clone())),
        None => None,
    };
    let Some((mono, rc)) = probe else {
        return ShapeReport { pass: false, constant: None, detail: "empty shape".into() };
    };
    let tc = t.coeff(&mono);
    if tc.is_zero() {
        return ShapeReport {
            pass: false,
            constant: None,
            detail: "no scalar matches leading monomial".into(),
        };
    }
    let c = tc.div(&rc);
    let pass = !c.is_zero() && rhs.scale(&c) == *t;
    ShapeReport {
        pass,
        constant: Some(c.clone()),
        detail: if pass {
            format!("c = {}", c.to_text())
        } else {
            "shape mismatch".into()
        },
    }
}
