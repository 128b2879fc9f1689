//! Multivariate polynomial gcd over ℤ.
//!
//! Strategy: cheap structural fast paths, then a sound mod-p coprimality
//! certificate (the common case in fraction reduction), then the classical
//! primitive PRS with recursive content extraction. The mod-p probe is only
//! accepted when the leading coefficient of one input stays nonzero at the
//! evaluation point, which makes the degree-zero conclusion exact rather
//! than probabilistic: a true gcd of positive main-variable degree would
//! have to keep positive degree in the image.

use super::poly::{Exps, Poly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const PROBE_PRIME: u64 = (1u64 << 61) - 1;

/// Gcd with positive leading coefficient, including the integer content.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return positive(b.clone());
    }
    if b.is_zero() {
        return positive(a.clone());
    }
    let ca = a.content();
    let cb = b.content();
    let cg = ca.gcd(&cb);
    let pa = a.div_int_exact(&ca);
    let pb = b.div_int_exact(&cb);
    let g = primitive_gcd(&pa, &pb);
    positive(g.mul_int(&cg))
}

fn positive(p: Poly) -> Poly {
    if p.leading_sign() < 0 {
        p.neg()
    } else {
        p
    }
}

/// Gcd of two primitive polynomials, result primitive.
fn primitive_gcd(a: &Poly, b: &Poly) -> Poly {
    if a == b {
        return a.clone();
    }
    if a.is_one() || b.is_one() {
        return Poly::one(a.nvars);
    }
    if let (Some(_), Some(_)) = (a.as_constant(), b.as_constant()) {
        return Poly::one(a.nvars);
    }
    // Common monomial factor.
    let mono = monomial_gcd(a, b);
    let a1 = a.divexact(&mono_poly(a.nvars, &mono)).unwrap();
    let b1 = b.divexact(&mono_poly(b.nvars, &mono)).unwrap();
    let core = primitive_gcd_nonmono(&a1, &b1);
    core.mul_term(&mono, &BigInt::one())
}

fn monomial_gcd(a: &Poly, b: &Poly) -> Exps {
    let mut m: Exps = std::iter::repeat(i32::MAX).take(a.nvars).collect();
    for (e, _) in a.terms.iter().chain(b.terms.iter()) {
        for (x, y) in m.iter_mut().zip(e.iter()) {
            *x = (*x).min(*y);
        }
    }
    m
}

fn mono_poly(nvars: usize, e: &Exps) -> Poly {
    Poly::monomial(nvars, e.clone(), BigInt::one())
}

fn primitive_gcd_nonmono(a: &Poly, b: &Poly) -> Poly {
    let vars_a = a.support_vars();
    let vars_b = b.support_vars();
    let common: Vec<usize> = vars_a
        .iter()
        .copied()
        .filter(|v| vars_b.contains(v))
        .collect();
    if common.is_empty() {
        return Poly::one(a.nvars);
    }
    // The gcd only involves common variables, so a variable present in one
    // input alone can be projected out through the content.
    for &v in &vars_a {
        if !vars_b.contains(&v) {
            let ca = content_in(a, v);
            return primitive_gcd(&ca.div_int_exact(&ca.content()), b);
        }
    }
    for &v in &vars_b {
        if !vars_a.contains(&v) {
            let cb = content_in(b, v);
            return primitive_gcd(a, &cb.div_int_exact(&cb.content()));
        }
    }
    // One input dividing the other is frequent (full cancellation).
    if b.divexact(a).is_some() {
        return a.clone();
    }
    if a.divexact(b).is_some() {
        return b.clone();
    }
    if common.len() == 1 {
        if let Some(g) = univar_gcd_modular(a, b, common[0]) {
            return g;
        }
    }
    // Main variable: smallest maximal degree keeps the PRS short.
    let main = *common
        .iter()
        .min_by_key(|&&v| a.degree_in(v).max(b.degree_in(v)))
        .unwrap();
    if certified_coprime_in(a, b, main) {
        // The gcd is free of the main variable: it divides both contents.
        let ca = content_in(a, main);
        let cb = content_in(b, main);
        if ca.is_one() || cb.is_one() {
            return Poly::one(a.nvars);
        }
        return primitive_gcd(&ca, &cb);
    }
    prs_gcd(a, b, main)
}

// ---------------------------------------------------------------------------
// Modular univariate gcd (Brown): images mod word-size primes, CRT lift,
// verified by exact trial division, so the result is certain.
// ---------------------------------------------------------------------------

fn univar_gcd_modular(a: &Poly, b: &Poly, var: usize) -> Option<Poly> {
    let nvars = a.nvars;
    let (la, lb) = (a.leading().1.clone(), b.leading().1.clone());
    let lcg = la.gcd(&lb);
    let mut primes = PrimeGen::new();
    let mut crt_mod = BigInt::one();
    let mut crt_coeffs: Vec<BigInt> = Vec::new();
    let mut cand_deg = usize::MAX;
    let mut last_candidate: Option<Poly> = None;
    for _ in 0..64 {
        let p = primes.next_prime();
        let pb = BigInt::from(p);
        if (la.mod_floor(&pb)).is_zero() || (lb.mod_floor(&pb)).is_zero() {
            continue;
        }
        let fa = dense_mod(a, var, p);
        let fb = dense_mod(b, var, p);
        let mut g = euclid_mod(&fa, &fb, p);
        if g.len() == 1 {
            // Image of full degree forces the true gcd to be constant.
            return Some(Poly::one(nvars));
        }
        // normalize leading coefficient to lcg mod p
        let scale = mul_mod_p(mod_u64(&lcg, p), inv_mod_p(*g.last().unwrap(), p), p);
        for c in g.iter_mut() {
            *c = mul_mod_p(*c, scale, p);
        }
        let deg = g.len() - 1;
        if deg < cand_deg {
            cand_deg = deg;
            crt_mod = pb.clone();
            crt_coeffs = g.iter().map(|&c| BigInt::from(c)).collect();
        } else if deg > cand_deg {
            continue; // unlucky prime
        } else {
            // CRT combine
            let newmod = &crt_mod * &pb;
            for (acc, &img) in crt_coeffs.iter_mut().zip(g.iter()) {
                *acc = crt_pair(acc, &crt_mod, img, p);
            }
            crt_mod = newmod;
        }
        // symmetric lift, primitive part, verification
        let half = &crt_mod / BigInt::from(2);
        let lifted: Vec<BigInt> = crt_coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(&crt_mod);
                if r > half { r - &crt_mod } else { r }
            })
            .collect();
        let mut cand = Poly::zero(nvars);
        for (d, c) in lifted.iter().enumerate() {
            if !c.is_zero() {
                let mut e: Exps = std::iter::repeat(0).take(nvars).collect();
                e[var] = d as i32;
                cand = cand.add(&Poly::monomial(nvars, e, c.clone()));
            }
        }
        if cand.is_zero() {
            continue;
        }
        let cont = cand.content();
        let cand = cand.div_int_exact(&cont);
        if last_candidate.as_ref() == Some(&cand) {
            if a.divexact(&cand).is_some() && b.divexact(&cand).is_some() {
                return Some(positive(cand));
            }
        } else {
            last_candidate = Some(cand);
        }
    }
    None
}

fn dense_mod(a: &Poly, var: usize, p: u64) -> Vec<u64> {
    let deg = a.degree_in(var).max(0) as usize;
    let mut out = vec![0u64; deg + 1];
    let pb = BigInt::from(p);
    for (e, c) in &a.terms {
        let v = c.mod_floor(&pb).to_u64().unwrap();
        let d = e[var] as usize;
        out[d] = add_mod_p(out[d], v, p);
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

fn mod_u64(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn add_mod_p(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mul_mod_p(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod_p(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_p(acc, base, p);
        }
        base = mul_mod_p(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    pow_mod_p(a, p - 2, p)
}

fn euclid_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut f = a.to_vec();
    let mut g = b.to_vec();
    loop {
        if g.iter().all(|&c| c == 0) {
            return f;
        }
        let dg = g.len() - 1;
        let inv = inv_mod_p(g[dg], p);
        let mut r = f.clone();
        while r.len() >= g.len() && !r.iter().all(|&c| c == 0) {
            let dr = r.len() - 1;
            let qc = mul_mod_p(r[dr], inv, p);
            for i in 0..=dg {
                let s = mul_mod_p(qc, g[i], p);
                r[dr - dg + i] = (r[dr - dg + i] + p - s) % p;
            }
            while r.len() > 1 && *r.last().unwrap() == 0 {
                r.pop();
            }
            if r.iter().all(|&c| c == 0) {
                r = vec![0];
                break;
            }
        }
        f = g;
        g = r;
    }
}

/// Combine `x ≡ a (mod m)` with `x ≡ b (mod p)`.
fn crt_pair(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let am = a.mod_floor(m);
    let a_mod_p = mod_u64(&am, p);
    let m_mod_p = mod_u64(m, p);
    let diff = (b + p - a_mod_p) % p;
    let t = mul_mod_p(diff, inv_mod_p(m_mod_p, p), p);
    &am + m * BigInt::from(t)
}

/// Deterministic Miller-Rabin for u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &sp in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == sp {
            return true;
        }
        if n % sp == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_p(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod_p(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

struct PrimeGen {
    next: u64,
}

impl PrimeGen {
    fn new() -> Self {
        PrimeGen { next: (1 << 31) - 1 }
    }

    fn next_prime(&mut self) -> u64 {
        loop {
            let c = self.next;
            self.next -= 2;
            if is_prime_u64(c) {
                return c;
            }
        }
    }
}

/// Sound fast path: true iff we can *certify* deg_main(gcd) = 0.
fn certified_coprime_in(a: &Poly, b: &Poly, main: usize) -> bool {
    let mut seed = 0x9E37_79B9_7F4A_7C15u64;
    for _ in 0..3 {
        let mut point = vec![0u64; a.nvars];
        for (i, slot) in point.iter_mut().enumerate() {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407 + i as u64);
            *slot = 2 + seed % (PROBE_PRIME - 3);
        }
        let fa = eval_to_univar_mod(a, main, &point);
        let fb = eval_to_univar_mod(b, main, &point);
        let (Some(fa), Some(fb)) = (fa, fb) else { continue };
        let la_ok = fa.last().map_or(false, |&c| c != 0)
            && fa.len() == (a.degree_in(main) as usize + 1);
        if !la_ok {
            continue;
        }
        if fb.iter().all(|&c| c == 0) {
            continue;
        }
        let g = univar_gcd_mod(&fa, &fb);
        if g.len() == 1 {
            return true;
        }
        return false;
    }
    false
}

/// Dense coefficients in `main`, all other variables evaluated mod p.
fn eval_to_univar_mod(p: &Poly, main: usize, point: &[u64]) -> Option<Vec<u64>> {
    let deg = p.degree_in(main);
    if deg < 0 {
        return None;
    }
    let mut out = vec![0u64; deg as usize + 1];
    for (e, c) in &p.terms {
        let mut v = mod_of_bigint(c);
        for (var, &exp) in e.iter().enumerate() {
            if var == main || exp == 0 {
                continue;
            }
            if exp < 0 {
                return None;
            }
            v = mul_mod(v, pow_mod(point[var], exp as u64));
        }
        let d = e[main];
        if d < 0 {
            return None;
        }
        out[d as usize] = add_mod(out[d as usize], v);
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    Some(out)
}

fn mod_of_bigint(c: &BigInt) -> u64 {
    let p = BigInt::from(PROBE_PRIME);
    let mut r = c.mod_floor(&p);
    if r.is_negative() {
        r += &p;
    }
    r.to_u64().unwrap()
}

fn add_mod(a: u64, b: u64) -> u64 {
    ((a as u128 + b as u128) % PROBE_PRIME as u128) as u64
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PROBE_PRIME as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    base %= PROBE_PRIME;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, PROBE_PRIME - 2)
}

fn univar_gcd_mod(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut f = a.to_vec();
    let mut g = b.to_vec();
    trim(&mut f);
    trim(&mut g);
    while g.len() > 1 || (g.len() == 1 && g[0] != 0) {
        let r = rem_mod(&f, &g);
        f = g;
        g = r;
        trim(&mut f);
        trim(&mut g);
        if g.iter().all(|&c| c == 0) {
            break;
        }
    }
    f
}

fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn rem_mod(f: &[u64], g: &[u64]) -> Vec<u64> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    let inv = inv_mod(g[dg]);
    while r.len() >= g.len() && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let q = mul_mod(r[dr], inv);
        for i in 0..=dg {
            let idx = dr - dg + i;
            let s = mul_mod(q, g[i]);
            r[idx] = (r[idx] + PROBE_PRIME - s) % PROBE_PRIME;
        }
        trim(&mut r);
        if r.iter().all(|&c| c == 0) {
            return vec![0];
        }
        while r.len() > 1 && *r.last().unwrap() == 0 {
            r.pop();
        }
    }
    r
}

// ---------------------------------------------------------------------------
// Primitive PRS over R[x], R = ℤ[remaining variables]
// ---------------------------------------------------------------------------

/// Dense coefficient list in `main` (ascending), coefficients free of `main`.
fn to_univar(p: &Poly, main: usize) -> Vec<Poly> {
    let deg = p.degree_in(main).max(0) as usize;
    let mut out = vec![Poly::zero(p.nvars); deg + 1];
    for (e, c) in &p.terms {
        let d = e[main] as usize;
        let mut ne = e.clone();
        ne[main] = 0;
        out[d] = out[d].add(&Poly::monomial(p.nvars, ne, c.clone()));
    }
    out
}

fn from_univar(coeffs: &[Poly], main: usize, nvars: usize) -> Poly {
    let mut acc = Poly::zero(nvars);
    for (d, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut e: Exps = std::iter::repeat(0).take(nvars).collect();
        e[main] = d as i32;
        acc = acc.add(&c.mul_term(&e, &BigInt::one()));
    }
    acc
}

fn content_in(p: &Poly, main: usize) -> Poly {
    let coeffs = to_univar(p, main);
    let mut g = Poly::zero(p.nvars);
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c } else { poly_gcd(&g, &c) };
        if g.is_one() {
            break;
        }
    }
    g
}

fn univar_trim(v: &mut Vec<Poly>) {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
}

/// One full pseudo-remainder: lc(g)^k · f mod g.
fn pseudo_rem(f: &[Poly], g: &[Poly]) -> Vec<Poly> {
    let mut r = f.to_vec();
    univar_trim(&mut r);
    let dg = g.len() - 1;
    let lg = g[dg].clone();
    while r.len() > dg && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        // r <- lc(g)·r − lc(r)·x^(dr−dg)·g
        for c in r.iter_mut() {
            *c = c.mul(&lg);
        }
        for i in 0..=dg {
            r[dr - dg + i] = r[dr - dg + i].sub(&lr.mul(&g[i]));
        }
        univar_trim(&mut r);
        if r.iter().all(|c| c.is_zero()) {
            return vec![Poly::zero(lg.nvars)];
        }
    }
    r
}

fn prs_gcd(a: &Poly, b: &Poly, main: usize) -> Poly {
    let nvars = a.nvars;
    let ca = content_in(a, main);
    let cb = content_in(b, main);
    let cont = if ca.is_one() || cb.is_one() {
        Poly::one(nvars)
    } else {
        primitive_gcd(&ca, &cb)
    };
    let mut f = to_univar(&a.divexact(&ca).unwrap(), main);
    let mut g = to_univar(&b.divexact(&cb).unwrap(), main);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if g.iter().all(|c| c.is_zero()) {
            break;
        }
        if g.len() == 1 {
            // Nonzero constant in x: primitive parts are coprime in x.
            return cont;
        }
        let r = pseudo_rem(&f, &g);
        f = g;
        g = r;
        // Primitive part of the remainder over R.
        let gp = from_univar(&g, main, nvars);
        if gp.is_zero() {
            break;
        }
        let gc = content_in(&gp, main);
        let gcc = gp.divexact(&gc).unwrap();
        let gcontent = gcc.content();
        let prim = gcc.div_int_exact(&gcontent);
        g = to_univar(&prim, main);
    }
    let fp = from_univar(&f, main, nvars);
    let fc = fp.content();
    cont.mul(&fp.div_int_exact(&fc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallvec::smallvec;

    fn m(nvars: usize, e: &[i32], c: i64) -> Poly {
        let exps: Exps = e.iter().copied().collect();
        Poly::monomial(nvars, exps, BigInt::from(c))
    }

    fn binom(nvars: usize, var: usize, a: i64) -> Poly {
        // 1 + a·x_var
        let mut e: Exps = smallvec![0; nvars as usize];
        e[var] = 1;
        Poly::monomial(nvars, e, BigInt::from(a)).add(&Poly::one(nvars))
    }

    #[test]
    fn gcd_of_products() {
        let f1 = binom(3, 1, -1);
        let f2 = binom(3, 2, 3);
        let f3 = binom(3, 0, 7);
        let a = f1.mul(&f2);
        let b = f1.mul(&f3);
        let g = poly_gcd(&a, &b);
        assert_eq!(g, positive(f1));
    }

    #[test]
    fn coprime_gcd_is_one() {
        let a = binom(2, 0, 1);
        let b = binom(2, 1, 1);
        assert!(poly_gcd(&a, &b).is_one());
    }

    #[test]
    fn gcd_includes_integer_content() {
        let a = m(2, &[1, 0], 6);
        let b = m(2, &[0, 1], 4).mul_term(&smallvec![1, 0], &BigInt::one());
        let g = poly_gcd(&a, &b);
        // common factor 2·x0
        assert_eq!(g, m(2, &[1, 0], 2));
    }

    #[test]
    fn gcd_multivariate_mixed() {
        // (x0^2 - x1)·(x0 + x1 + 1) vs (x0^2 - x1)·(x0 - 5)
        let d = m(3, &[2, 0, 0], 1).add(&m(3, &[0, 1, 0], -1));
        let a = d.mul(&m(3, &[1, 0, 0], 1).add(&m(3, &[0, 1, 0], 1)).add(&Poly::one(3)));
        let b = d.mul(&m(3, &[1, 0, 0], 1).add(&Poly::constant(3, BigInt::from(-5))));
        assert_eq!(poly_gcd(&a, &b), positive(d));
    }
}
