//! Finite fields GF(p^k) for odd p.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! where `c_i` are the coordinates with respect to the power basis of the
//! field's modulus. Multiplication goes through discrete log tables, so the
//! field order is capped at 2^16.

mod factor;
mod poly;

use std::fmt;
use std::sync::Arc;

pub use factor::{is_irreducible, poly_factor};
pub use poly::Poly;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Encoded field element. Only meaningful together with its [`Field`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Image of a subfield inside an extension field.
#[derive(Debug)]
pub struct Embedding {
    pub base: Field,
    /// Image of the base field's power-basis generator.
    pub generator_image: Elem,
    table: Vec<Elem>,
}

#[derive(Debug)]
struct FieldData {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    base: Option<Embedding>,
}

/// A finite field GF(p^k), cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.k)
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u32) -> Result<()> {
    if p == 2 {
        return Err(Error::CharacteristicTwo);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

fn checked_order(p: u32, k: u32) -> Result<u32> {
    let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
    if q > MAX_FIELD_ORDER || k == 0 {
        return Err(Error::FieldTooLarge(q));
    }
    Ok(q as u32)
}

fn digits(mut code: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(code % p);
        code /= p;
    }
    out
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Multiplication of encoded elements by schoolbook polynomial product and
/// reduction; used only to bootstrap the log tables.
fn slow_mul(a: u32, b: u32, p: u32, modulus: &[u32]) -> u32 {
    let k = modulus.len() - 1;
    let da = digits(a, p, k as u32);
    let db = digits(b, p, k as u32);
    let mut prod = vec![0u64; 2 * k];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for deg in (k..2 * k).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &m) in modulus.iter().enumerate().take(k) {
            let idx = deg - k + i;
            prod[idx] = (prod[idx] + (p as u64 - c) * m as u64) % p as u64;
        }
    }
    let out: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
    encode(&out, p)
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Field> {
        Field::with_modulus(p, vec![0, 1])
    }

    /// GF(p^k) with the default modulus: the monic irreducible of degree k
    /// whose coefficient vector (c_{k-1}, ..., c_0) is lexicographically least.
    pub fn new(p: u32, k: u32) -> Result<Field> {
        check_prime(p)?;
        checked_order(p, k)?;
        let modulus = default_modulus(p, k)?;
        Field::build(p, modulus, None)
    }

    /// GF(p^k) with an explicit monic modulus (low to high, length k + 1).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Field> {
        check_prime(p)?;
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::ReducibleModulus);
        }
        let k = (modulus.len() - 1) as u32;
        checked_order(p, k)?;
        if k > 1 {
            let prime = Field::prime(p)?;
            let poly = Poly::new(&prime, modulus.iter().map(|&c| Elem(c)).collect());
            if !is_irreducible(&poly) {
                return Err(Error::ReducibleModulus);
            }
        }
        Field::build(p, modulus, None)
    }

    /// The extension of `base` of relative degree `degree`, realized as
    /// GF(p^m) over the prime field with the default modulus, together with
    /// an embedding of `base` found by root-finding its modulus.
    pub fn extension_of(base: &Field, degree: u32) -> Result<Field> {
        if degree == 1 {
            return Ok(base.clone());
        }
        let p = base.characteristic();
        let m = base.degree() * degree;
        checked_order(p, m)?;
        let modulus = default_modulus(p, m)?;
        let plain = Field::build(p, modulus.clone(), None)?;
        let base_modulus: Vec<Elem> = base.0.modulus.iter().map(|&c| Elem(c)).collect();
        let lifted = Poly::new(&plain, base_modulus);
        let root = (0..plain.order())
            .map(Elem)
            .find(|&x| lifted.eval(x).is_zero())
            .ok_or(Error::NoEmbedding)?;
        let mut table = Vec::with_capacity(base.order() as usize);
        for code in 0..base.order() {
            let cs = base.coeffs(Elem(code));
            let mut acc = Elem::ZERO;
            for &c in cs.iter().rev() {
                acc = plain.add(plain.mul(acc, root), Elem(c));
            }
            table.push(acc);
        }
        let embedding = Embedding { base: base.clone(), generator_image: root, table };
        Field::build(p, modulus, Some(embedding))
    }

    fn build(p: u32, modulus: Vec<u32>, base: Option<Embedding>) -> Result<Field> {
        let k = (modulus.len() - 1) as u32;
        let q = checked_order(p, k)?;
        let order = q - 1;
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; q as usize];
        // Smallest primitive element by code.
        let mut found = false;
        for g in 1..q {
            let mut x = 1u32;
            let mut ok = true;
            for i in 0..order {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp[i as usize] = x;
                x = if k == 1 { ((x as u64 * g as u64) % p as u64) as u32 } else { slow_mul(x, g, p, &modulus) };
            }
            if ok && x == 1 {
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::ReducibleModulus);
        }
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        Ok(Field(Arc::new(FieldData { p, k, q, modulus, exp, log, base })))
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.k
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients, low to high.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn base(&self) -> Option<&Embedding> {
        self.0.base.as_ref()
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The generator of the multiplicative group used for the log tables.
    pub fn primitive_element(&self) -> Elem {
        Elem(self.0.exp.get(1).copied().unwrap_or(1))
    }

    /// The power-basis generator x (for k = 1 this is 0).
    pub fn generator(&self) -> Elem {
        if self.0.k == 1 {
            Elem::ZERO
        } else {
            Elem(self.0.p)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(Elem)
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        digits(a.0, self.0.p, self.0.k)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.0.k as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::DimensionMismatch { expected: self.0.k as usize, got: coeffs.len() });
        }
        Ok(Elem(encode(coeffs, self.0.p)))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.0.q
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if self.0.k == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= p { s - p } else { s });
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            let d = (x % p + y % p) % p;
            out += d * place;
            place *= p;
            x /= p;
            y /= p;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        if self.0.k == 1 {
            return Elem(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            let d = (p - x % p) % p;
            out += d * place;
            place *= p;
            x /= p;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        if self.0.k == 1 {
            return Elem(((a.0 as u64 * b.0 as u64) % self.0.p as u64) as u32);
        }
        let n = self.0.q - 1;
        let e = self.0.log[a.0 as usize] + self.0.log[b.0 as usize];
        Elem(self.0.exp[(if e >= n { e - n } else { e }) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.0.q - 1;
        let l = self.0.log[a.0 as usize];
        Ok(Elem(self.0.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let n = (self.0.q - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64;
        Elem(self.0.exp[((l * (e % n)) % n) as usize])
    }

    /// Discrete log with respect to [`Field::primitive_element`].
    pub fn log(&self, a: Elem) -> Result<u32> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(self.0.log[a.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Elem) -> Result<u64> {
        let l = self.log(a)? as u64;
        let n = (self.0.q - 1) as u64;
        Ok(n / gcd(n, l))
    }

    /// `a` is a nonzero square iff a^{(q-1)/2} = 1.
    pub fn is_square(&self, a: Elem) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(self.pow(a, ((self.0.q - 1) / 2) as u64) == Elem::ONE)
    }

    /// A square root of a square element (the one with the smaller log).
    pub fn sqrt(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            return Some(Elem::ZERO);
        }
        let l = self.0.log[a.0 as usize];
        l.is_multiple_of(2).then(|| Elem(self.0.exp[(l / 2) as usize]))
    }

    /// Least non-square by code.
    pub fn least_nonsquare(&self) -> Elem {
        self.elements().skip(1).find(|&a| !self.is_square(a).unwrap()).expect("odd field has non-squares")
    }

    /// `a^(p^times)`.
    pub fn frobenius(&self, a: Elem, times: u32) -> Elem {
        let mut x = a;
        for _ in 0..times {
            x = self.pow(x, self.0.p as u64);
        }
        x
    }

    /// Maps an element of `sub` into `self`. Supports the prime subfield, the
    /// recorded base field, and the identity.
    pub fn embed(&self, sub: &Field, a: Elem) -> Result<Elem> {
        if sub == self {
            return Ok(a);
        }
        if sub.characteristic() != self.characteristic() {
            return Err(Error::NoEmbedding);
        }
        if sub.is_prime_field() {
            return Ok(a);
        }
        match &self.0.base {
            Some(e) if &e.base == sub => Ok(e.table[a.0 as usize]),
            _ => Err(Error::NoEmbedding),
        }
    }

    /// True when `sub` embeds into `self` via [`Field::embed`].
    pub fn has_subfield(&self, sub: &Field) -> bool {
        self.embed(sub, Elem::ZERO).is_ok()
    }

    /// Inverse of [`Field::embed`]: `None` if `a` is not in the image.
    pub fn restrict(&self, sub: &Field, a: Elem) -> Result<Option<Elem>> {
        if sub == self {
            return Ok(Some(a));
        }
        if !self.has_subfield(sub) {
            return Err(Error::NoEmbedding);
        }
        if sub.is_prime_field() {
            return Ok((a.0 < self.0.p).then_some(a));
        }
        let table = &self.0.base.as_ref().unwrap().table;
        Ok(table.iter().position(|&x| x == a).map(|i| Elem(i as u32)))
    }

    /// Human-readable rendering: a residue for prime-subfield elements,
    /// otherwise the coefficient tuple `(c0 c1 ...)`.
    pub fn render(&self, a: Elem) -> String {
        if a.0 < self.0.p {
            return a.0.to_string();
        }
        let cs: Vec<String> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
        format!("({})", cs.join(" "))
    }

    pub fn elem(&self, value: Elem) -> Result<FieldElem> {
        if !self.contains(value) {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElem { field: self.clone(), value })
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn default_modulus(p: u32, k: u32) -> Result<Vec<u32>> {
    if k == 1 {
        return Ok(vec![0, 1]);
    }
    let prime = Field::prime(p)?;
    let total = (p as u64).pow(k);
    // Counting in base p with the most significant digit first gives the
    // order on (c_{k-1}, ..., c_0).
    for idx in 0..total {
        let mut low_to_high = digits(idx as u32, p, k);
        low_to_high.push(1);
        let poly = Poly::new(&prime, low_to_high.iter().map(|&c| Elem(c)).collect());
        if is_irreducible(&poly) {
            return Ok(low_to_high);
        }
    }
    Err(Error::ReducibleModulus)
}

/// A field element bundled with its field, for checked arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElem {
    pub field: Field,
    pub value: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Pow(u64),
}

impl FieldElem {
    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    fn same(&self, other: &FieldElem) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn wrap(&self, value: Elem) -> FieldElem {
        FieldElem { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        Ok(self.wrap(self.field.div(self.value, other.value)?))
    }

    pub fn inv(&self) -> Result<FieldElem> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> FieldElem {
        self.wrap(self.field.pow(self.value, e))
    }

    pub fn is_square(&self) -> Result<bool> {
        self.field.is_square(self.value)
    }
}

/// Checked arithmetic entry point. `b` is ignored for unary operations.
pub fn ff_arith(a: &FieldElem, b: &FieldElem, op: ArithOp) -> Result<FieldElem> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b),
        ArithOp::Inv => a.inv(),
        ArithOp::Pow(e) => Ok(a.pow(e)),
    }
}

/// (p, k) with q = p^k, if q is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// The least extension of `f`'s field over which `f` splits into linear
/// factors. Returns the field itself when `f` already splits.
pub fn splitting_field(f: &Poly) -> Result<Field> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let degree = poly_factor(f)
        .iter()
        .fold(1u64, |acc, (g, _)| lcm(acc, g.degree().unwrap_or(0).max(1) as u64));
    Field::extension_of(f.field(), degree as u32)
}

/// The Galois orbit {a, a^|F|, a^{|F|^2}, ...} of `a` in `ext` over `base`.
pub fn frobenius_orbit(ext: &Field, a: Elem, base: &Field) -> Result<Vec<Elem>> {
    if !ext.has_subfield(base) || !ext.contains(a) {
        return Err(Error::FieldMismatch);
    }
    let qf = base.order() as u64;
    let mut orbit = vec![a];
    let mut x = ext.pow(a, qf);
    while x != a {
        orbit.push(x);
        x = ext.pow(x, qf);
    }
    Ok(orbit)
}
