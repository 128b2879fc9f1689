//! The coefficient field: exact rational functions over ℚ in the base
//! generator `q^(1/2)` and the registered dynamical generators `q^λ`, `q^μ`, ...
//!
//! Elements are stored as coprime numerator/denominator pairs of integer
//! polynomials, denominator normalized to positive leading coefficient under
//! graded lex. Canonical forms are unique, so `==` decides mathematical
//! equality. The shift automorphisms `T_α` act by `q^v ↦ q^α q^v`.

mod gcd;
mod poly;

pub use poly::Exps;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use poly::Poly;
use smallvec::smallvec;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("singular element: zero denominator")]
    SingularElement,
    #[error("pole at sample point")]
    PoleAtSample,
    #[error("unregistered variable `{0}`")]
    UnregisteredVariable(String),
    #[error("infinite q-shifted factorial in exact scalar context")]
    InfinitePochhammer,
}

/// Ordered set of dynamical variable names. The base generator `q^(1/2)` is
/// always present and never shadowed.
#[derive(Debug, PartialEq, Eq)]
pub struct VariableRegistry {
    dyn_names: Vec<String>,
}

/// Handle to a registry; all elements carry one.
#[derive(Clone, Debug)]
pub struct Field(Arc<VariableRegistry>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Field {}

/// Index of a dynamical generator (1-based into the exponent vectors; slot 0
/// is the base generator).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub usize);

impl Field {
    pub fn new(dyn_vars: &[&str]) -> Field {
        let mut names: Vec<String> = Vec::new();
        for v in dyn_vars {
            assert!(
                !names.iter().any(|n| n == v),
                "duplicate dynamical variable `{v}`"
            );
            assert!(*v != "q" && *v != "q^(1/2)", "base generator is reserved");
            names.push((*v).to_string());
        }
        Field(Arc::new(VariableRegistry { dyn_names: names }))
    }

    pub fn nvars(&self) -> usize {
        1 + self.0.dyn_names.len()
    }

    pub fn dyn_count(&self) -> usize {
        self.0.dyn_names.len()
    }

    pub fn var(&self, name: &str) -> Result<Var, ScalarError> {
        self.0
            .dyn_names
            .iter()
            .position(|n| n == name)
            .map(|i| Var(i + 1))
            .ok_or_else(|| ScalarError::UnregisteredVariable(name.to_string()))
    }

    pub fn var_name(&self, v: Var) -> &str {
        &self.0.dyn_names[v.0 - 1]
    }

    pub fn same_as(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    fn elem(&self, num: Poly, den: Poly) -> FieldElement {
        FieldElement::make(self.clone(), num, den)
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(Poly::zero(self.nvars()), Poly::one(self.nvars()))
    }

    pub fn one(&self) -> FieldElement {
        self.int(1)
    }

    pub fn int(&self, c: i64) -> FieldElement {
        self.elem(
            Poly::constant(self.nvars(), BigInt::from(c)),
            Poly::one(self.nvars()),
        )
    }

    pub fn rational(&self, n: i64, d: i64) -> FieldElement {
        assert!(d != 0);
        self.elem(
            Poly::constant(self.nvars(), BigInt::from(n)),
            Poly::constant(self.nvars(), BigInt::from(d)),
        )
    }

    /// `q^(k/2)` for any integer `k` (negative powers become denominators).
    pub fn q_half_pow(&self, k: i64) -> FieldElement {
        self.mono(k, &[])
    }

    /// Integer power of q.
    pub fn q_pow(&self, k: i64) -> FieldElement {
        self.q_half_pow(2 * k)
    }

    pub fn q(&self) -> FieldElement {
        self.q_pow(1)
    }

    /// `q^(k·v)` for a dynamical variable.
    pub fn qvar_pow(&self, v: Var, k: i64) -> FieldElement {
        self.mono(0, &[(v, k)])
    }

    pub fn qvar(&self, v: Var) -> FieldElement {
        self.qvar_pow(v, 1)
    }

    /// Monomial `q^(s_half/2) · ∏ q^(k_i·v_i)`.
    pub fn mono(&self, s_half: i64, vars: &[(Var, i64)]) -> FieldElement {
        let n = self.nvars();
        let mut pos: Exps = smallvec![0; n];
        let mut neg: Exps = smallvec![0; n];
        let mut put = |idx: usize, k: i64| {
            let k = i32::try_from(k).expect("exponent out of range");
            if k >= 0 {
                pos[idx] += k;
            } else {
                neg[idx] -= k;
            }
        };
        put(0, s_half);
        for (v, k) in vars {
            put(v.0, *k);
        }
        self.elem(
            Poly::monomial(n, pos, BigInt::one()),
            Poly::monomial(n, neg, BigInt::one()),
        )
    }

    /// The symmetric q-integer `[n]_q = (q^(−n) − q^n)/(q^(−1) − q)`.
    pub fn q_int(&self, n: i64) -> FieldElement {
        let num = &self.q_pow(-n) - &self.q_pow(n);
        let den = &self.q_pow(-1) - &self.q();
        &num / &den
    }

    /// Registry extension: same variables plus extra ones appended.
    pub fn extend(&self, extra: &[&str]) -> Field {
        let mut names: Vec<&str> = self.0.dyn_names.iter().map(|s| s.as_str()).collect();
        names.extend_from_slice(extra);
        Field::new(&names)
    }
}

/// Exact rational function in canonical form.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    num: Arc<Poly>,
    den: Arc<Poly>,
}

impl FieldElement {
    fn make(field: Field, num: Poly, den: Poly) -> FieldElement {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = Self::reduce(num, den);
        FieldElement {
            field,
            num: Arc::new(num),
            den: Arc::new(den),
        }
    }

    fn reduce(mut num: Poly, mut den: Poly) -> (Poly, Poly) {
        let nvars = num.nvars;
        // Clear transient negative exponents by a common monomial factor.
        for v in 0..nvars {
            let mn = num.min_degree_in(v).min(den.min_degree_in(v));
            if mn < 0 {
                let mut e: Exps = smallvec![0; nvars];
                e[v] = -mn;
                let m = Poly::monomial(nvars, e, BigInt::one());
                num = num.mul(&m);
                den = den.mul(&m);
            }
        }
        if num.is_zero() {
            return (num, Poly::one(nvars));
        }
        if !den.is_one() {
            let g = gcd::poly_gcd(&num, &den);
            if !g.is_one() {
                num = num.divexact(&g).expect("gcd divides numerator");
                den = den.divexact(&g).expect("gcd divides denominator");
            }
        }
        if den.leading_sign() < 0 {
            num = num.neg();
            den = den.neg();
        }
        (num, den)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Normalization is idempotent by construction; re-normalizing is a no-op.
    pub fn normalize(&self) -> FieldElement {
        self.clone()
    }

    fn same_field(&self, other: &FieldElement) {
        assert!(
            self.field.same_as(&other.field),
            "field registry mismatch"
        );
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.same_field(other);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den || *self.den == *other.den {
            return FieldElement::make(
                self.field.clone(),
                self.num.add(&other.num),
                (*self.den).clone(),
            );
        }
        let g = gcd::poly_gcd(&self.den, &other.den);
        let da = self.den.divexact(&g).unwrap();
        let db = other.den.divexact(&g).unwrap();
        let num = self.num.mul(&db).add(&other.num.mul(&da));
        let den = self.den.mul(&db);
        FieldElement::make(self.field.clone(), num, den)
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            num: Arc::new(self.num.neg()),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.same_field(other);
        if self.is_zero() || other.is_zero() {
            return self.field.zero();
        }
        // Cross-reduce before multiplying to keep intermediates small.
        let g1 = gcd::poly_gcd(&self.num, &other.den);
        let g2 = gcd::poly_gcd(&other.num, &self.den);
        let n1 = self.num.divexact(&g1).unwrap();
        let d2 = other.den.divexact(&g1).unwrap();
        let n2 = other.num.divexact(&g2).unwrap();
        let d1 = self.den.divexact(&g2).unwrap();
        FieldElement::make(self.field.clone(), n1.mul(&n2), d1.mul(&d2))
    }

    pub fn div(&self, other: &FieldElement) -> FieldElement {
        assert!(!other.is_zero(), "division by zero field element");
        self.mul(&other.inv())
    }

    pub fn inv(&self) -> FieldElement {
        assert!(!self.is_zero(), "inverse of zero field element");
        FieldElement::make(
            self.field.clone(),
            (*self.den).clone(),
            (*self.num).clone(),
        )
    }

    pub fn pow(&self, k: i64) -> FieldElement {
        if k == 0 {
            return self.field.one();
        }
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut acc = self.field.one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// The shift automorphism `T_α` in the variable `var`:
    /// `q^var ↦ q^α · q^var`.
    pub fn shift(&self, var: Var, alpha: i64) -> FieldElement {
        if alpha == 0 {
            return self.clone();
        }
        let k = i32::try_from(2 * alpha).expect("shift out of range");
        FieldElement::make(
            self.field.clone(),
            self.num.shift_var(var.0, k),
            self.den.shift_var(var.0, k),
        )
    }

    /// Identify generator `from` with generator `to` (substitution
    /// `q^from ↦ q^to`), used for middle-variable contractions.
    pub fn merge_vars(&self, from: Var, to: Var) -> FieldElement {
        FieldElement::make(
            self.field.clone(),
            self.num.merge_vars(from.0, to.0),
            self.den.merge_vars(from.0, to.0),
        )
    }

    /// Exchange two dynamical generators (`q^a ↔ q^b`).
    pub fn swap_vars(&self, a: Var, b: Var) -> FieldElement {
        FieldElement::make(
            self.field.clone(),
            self.num.swap_vars(a.0, b.0),
            self.den.swap_vars(a.0, b.0),
        )
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.num.degree_in(v.0) != 0
            || self.den.degree_in(v.0) != 0
            || self.num.min_degree_in(v.0) != 0
            || self.den.min_degree_in(v.0) != 0
    }

    /// Promote to an extended registry (the target must contain this
    /// element's variables as a prefix).
    pub fn promote(&self, target: &Field) -> FieldElement {
        if self.field.same_as(target) {
            return self.clone();
        }
        assert!(
            target.0.dyn_names.len() >= self.field.0.dyn_names.len()
                && target.0.dyn_names[..self.field.0.dyn_names.len()]
                    == self.field.0.dyn_names[..],
            "target registry is not an extension"
        );
        FieldElement {
            field: target.clone(),
            num: Arc::new(self.num.extend_nvars(target.nvars())),
            den: Arc::new(self.den.extend_nvars(target.nvars())),
        }
    }

    /// Exact evaluation at a rational sample point.
    pub fn evaluate(&self, at: &Assignment) -> Result<BigRational, ScalarError> {
        let vals = at.vals(self.field.nvars());
        let d = self.den.eval(&vals);
        if d.is_zero() {
            return Err(ScalarError::PoleAtSample);
        }
        Ok(self.num.eval(&vals) / d)
    }

    pub fn to_text(&self) -> String {
        let num = poly_text(&self.num, &self.field);
        if self.den.is_one() {
            num
        } else {
            format!("({})/({})", num, poly_text(&self.den, &self.field))
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.num == other.num && self.den == other.den
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

macro_rules! impl_binop {
    ($trait:ident, $meth:ident) => {
        impl std::ops::$trait for &FieldElement {
            type Output = FieldElement;
            fn $meth(self, rhs: &FieldElement) -> FieldElement {
                FieldElement::$meth(self, rhs)
            }
        }
    };
}
impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);
impl_binop!(Div, div);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

/// Rational sample point: a value for `q^(1/2)` and one for each dynamical
/// generator.
#[derive(Clone, Debug)]
pub struct Assignment {
    pub q_half: BigRational,
    pub dyn_vals: Vec<BigRational>,
}

impl Assignment {
    fn vals(&self, nvars: usize) -> Vec<BigRational> {
        assert_eq!(nvars, 1 + self.dyn_vals.len(), "assignment does not cover all variables");
        let mut v = Vec::with_capacity(nvars);
        v.push(self.q_half.clone());
        v.extend(self.dyn_vals.iter().cloned());
        v
    }
}

/// Length specifier for q-shifted factorials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochLen {
    Finite(u32),
    Infinity,
}

/// The q-shifted factorial `(a; base)_n = ∏_{j<n} (1 − a·base^j)`.
///
/// The base is explicit so that both `(·;q)_m` and `(·;q²)_l` are available.
/// The infinity token is only legal inside series whose infinite parts
/// cancel; in exact scalar context it is an error.
pub fn qpochhammer(
    a: &FieldElement,
    base: &FieldElement,
    n: PochLen,
) -> Result<FieldElement, ScalarError> {
    let n = match n {
        PochLen::Finite(n) => n,
        PochLen::Infinity => return Err(ScalarError::InfinitePochhammer),
    };
    let field = a.field().clone();
    let mut acc = field.one();
    let mut apow = a.clone();
    for _ in 0..n {
        acc = acc.mul(&field.one().sub(&apow));
        apow = apow.mul(base);
    }
    Ok(acc)
}

fn poly_text(p: &Poly, field: &Field) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut parts: Vec<String> = Vec::new();
        if !mag.is_one() || e.iter().all(|&x| x == 0) {
            parts.push(mag.to_string());
        }
        if e[0] != 0 {
            parts.push(q_power_text(e[0]));
        }
        for (vi, &exp) in e.iter().enumerate().skip(1) {
            if exp != 0 {
                let name = field.var_name(Var(vi));
                if exp == 1 {
                    parts.push(format!("q^{}", name));
                } else {
                    parts.push(format!("q^({}{})", exp, name));
                }
            }
        }
        out.push_str(&parts.join("*"));
    }
    out
}

fn q_power_text(half_exp: i32) -> String {
    if half_exp % 2 == 0 {
        let k = half_exp / 2;
        if k == 1 {
            "q".to_string()
        } else {
            format!("q^{}", k)
        }
    } else {
        format!("q^({}/2)", half_exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> Field {
        Field::new(&["λ", "μ"])
    }

    #[test]
    fn polynomial_cancellation() {
        // (1 − t²)/(1 − t) → 1 + t with t = q^λ
        let f = f2();
        let t = f.qvar(f.var("λ").unwrap());
        let lhs = &(&f.one() - &t.pow(2)) / &(&f.one() - &t);
        let rhs = &f.one() + &t;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn base_generator_squares_to_q() {
        let f = f2();
        let s = f.q_half_pow(1);
        assert_eq!(s.mul(&s), f.q());
    }

    #[test]
    fn dynamical_cancellation() {
        let f = f2();
        let (l, m) = (f.var("λ").unwrap(), f.var("μ").unwrap());
        let lhs = &(&f.qvar(l) * &f.qvar(m)) / &f.qvar(m);
        assert_eq!(lhs, f.qvar(l));
    }

    #[test]
    fn shift_acts_on_named_variable_only() {
        let f = f2();
        let (l, m) = (f.var("λ").unwrap(), f.var("μ").unwrap());
        assert_eq!(f.qvar(l).shift(l, 2), &f.q_pow(2) * &f.qvar(l));
        assert_eq!(f.qvar(m).shift(l, 5), f.qvar(m));
        let g = &f.one() / &(&f.one() - &f.qvar_pow(l, -2));
        let shifted = g.shift(l, 1);
        let expect = &f.one() / &(&f.one() - &(&f.q_pow(-2) * &f.qvar_pow(l, -2)));
        assert_eq!(shifted, expect);
    }

    #[test]
    fn shift_composes_additively() {
        let f = f2();
        let l = f.var("λ").unwrap();
        let x = &(&f.one() + &f.qvar_pow(l, 3)) / &(&f.q() - &f.qvar(l));
        assert_eq!(x.shift(l, 2).shift(l, 3), x.shift(l, 5));
        assert_eq!(x.shift(l, 0), x);
        assert_eq!(x.shift(l, 4).shift(l, -4), x);
    }

    #[test]
    fn qpochhammer_basics() {
        let f = f2();
        let l = f.var("λ").unwrap();
        let a = f.qvar(l);
        assert_eq!(
            qpochhammer(&a, &f.q(), PochLen::Finite(0)).unwrap(),
            f.one()
        );
        let two = qpochhammer(&a, &f.q(), PochLen::Finite(2)).unwrap();
        let expect = (&f.one() - &a).mul(&(&f.one() - &(&a * &f.q())));
        assert_eq!(two, expect);
        assert_eq!(
            qpochhammer(&a, &f.q(), PochLen::Infinity),
            Err(ScalarError::InfinitePochhammer)
        );
        // (q^(−2λ); q²)_1 = 1 − q^(−2λ)
        let one = qpochhammer(&f.qvar_pow(l, -2), &f.q_pow(2), PochLen::Finite(1)).unwrap();
        assert_eq!(one, &f.one() - &f.qvar_pow(l, -2));
    }

    #[test]
    fn evaluate_rationals() {
        let f = f2();
        let l = f.var("λ").unwrap();
        let at = Assignment {
            q_half: BigRational::from(BigInt::from(2)),
            dyn_vals: vec![
                BigRational::from(BigInt::from(2)),
                BigRational::from(BigInt::from(3)),
            ],
        };
        // q + q^(−1) at q = 4 → 17/4
        let x = &f.q() + &f.q_pow(-1);
        assert_eq!(
            x.evaluate(&at).unwrap(),
            BigRational::new(BigInt::from(17), BigInt::from(4))
        );
        // 1/(1 − q^(−2λ)) at q = 4, q^λ = 2 → 4/3
        let y = &f.one() / &(&f.one() - &f.qvar_pow(l, -2));
        assert_eq!(
            y.evaluate(&at).unwrap(),
            BigRational::new(BigInt::from(4), BigInt::from(3))
        );
        // normalized (1 − t²)/(1 − t) evaluates fine at t = 1
        let t = f.qvar(l);
        let z = &(&f.one() - &t.pow(2)) / &(&f.one() - &t);
        let at1 = Assignment {
            q_half: BigRational::from(BigInt::from(2)),
            dyn_vals: vec![BigRational::from(BigInt::from(1)), BigRational::from(BigInt::from(3))],
        };
        assert_eq!(z.evaluate(&at1).unwrap(), BigRational::from(BigInt::from(2)));
        // but a genuine pole errors
        let w = &f.one() / &(&f.one() - &t);
        assert_eq!(w.evaluate(&at1), Err(ScalarError::PoleAtSample));
    }

    #[test]
    fn q_int_values() {
        let f = f2();
        assert_eq!(f.q_int(0), f.zero());
        assert_eq!(f.q_int(1), f.one());
        assert_eq!(f.q_int(2), &f.q() + &f.q_pow(-1));
    }

    #[test]
    fn merge_and_swap_vars() {
        let f = Field::new(&["λ", "ν"]);
        let (l, n) = (f.var("λ").unwrap(), f.var("ν").unwrap());
        let x = &f.qvar(n) - &f.qvar(l);
        assert!(x.merge_vars(n, l).is_zero());
        let y = &f.qvar_pow(l, 2) / &(&f.one() + &f.qvar(n));
        let expect = &f.qvar_pow(n, 2) / &(&f.one() + &f.qvar(l));
        assert_eq!(y.swap_vars(l, n), expect);
    }

    #[test]
    fn text_form_is_readable() {
        let f = f2();
        let l = f.var("λ").unwrap();
        let x = &(&f.one() - &f.qvar_pow(l, 2)) / &(&f.q_half_pow(3) + &f.int(2));
        assert_eq!(x.to_text(), "(-q^(2λ) + 1)/(q^(3/2) + 2)");
    }

    // Random sparse elements for the field-axiom property tests.
    fn arb_elem() -> impl Strategy<Value = FieldElement> {
        let term = (0i32..4, -3i32..4, -3i32..4, -4i64..5)
            .prop_map(|(s, a, b, c)| (s, a, b, c));
        proptest::collection::vec(term, 1..4).prop_map(|terms| {
            let f = f2();
            let l = f.var("λ").unwrap();
            let m = f.var("μ").unwrap();
            let mut acc = f.zero();
            for (s, a, b, c) in terms {
                let mono = f.mono(s as i64, &[(l, a as i64), (m, b as i64)]);
                acc = acc.add(&mono.mul(&f.int(c)));
            }
            acc
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
            let ab_c = a.add(&b).add(&c);
            let a_bc = a.add(&b.add(&c));
            prop_assert_eq!(&ab_c, &a_bc);
            let m1 = a.mul(&b).mul(&c);
            let m2 = a.mul(&b.mul(&c));
            prop_assert_eq!(&m1, &m2);
            let d1 = a.mul(&b.add(&c));
            let d2 = a.mul(&b).add(&a.mul(&c));
            prop_assert_eq!(&d1, &d2);
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.inv()), a.field().one());
            }
        }

        #[test]
        fn evaluate_is_multiplicative(a in arb_elem(), b in arb_elem()) {
            let at = Assignment {
                q_half: BigRational::new(BigInt::from(3), BigInt::from(2)),
                dyn_vals: vec![
                    BigRational::new(BigInt::from(5), BigInt::from(3)),
                    BigRational::new(BigInt::from(7), BigInt::from(4)),
                ],
            };
            if let (Ok(va), Ok(vb)) = (a.evaluate(&at), b.evaluate(&at)) {
                prop_assert_eq!(a.mul(&b).evaluate(&at).unwrap(), va * vb);
            }
        }
    }
}
