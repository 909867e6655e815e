//! Log/antilog arithmetic in F_{p^t}.
//!
//! Elements are encoded as radix-`p` integers: digit `i` of the encoding is
//! the coefficient of `x^i` in the element's polynomial representative, so
//! `0` encodes the zero element and comparisons are cheap. A table maps
//! exponents of the fixed primitive element `alpha = x` to encodings and
//! back, which turns multiplication and inversion into index arithmetic.
//!
//! Tables are immutable after construction and safe to share across threads.

use std::sync::atomic::{AtomicU32, Ordering};

use crate::error::{Error, Result};

/// Orders beyond this would need multi-megabyte tables; the constructions in
/// this crate target small fields anyway.
pub const FIELD_ORDER_CAP: u64 = 1 << 20;

static NEXT_TABLE_ID: AtomicU32 = AtomicU32::new(0);

/// Field parameters: characteristic, extension degree, and the monic
/// degree-`t` modulus polynomial (coefficients low to high).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub t: u32,
    pub modulus: Vec<u64>,
}

/// An element of a specific [`FieldTable`]. Carries the table's id so that
/// cross-field arithmetic is rejected instead of silently miscomputed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    table: u32,
    rep: u32,
}

impl FieldElement {
    /// Radix-`p` integer encoding of the element.
    pub fn rep(self) -> u64 {
        self.rep as u64
    }
}

pub struct FieldTable {
    id: u32,
    spec: FieldSpec,
    order: u64,
    /// `antilog[i]` is the encoding of `alpha^i`; length `order - 1`.
    antilog: Vec<u32>,
    /// Inverse of `antilog` on nonzero encodings; `log[0]` is a sentinel.
    log: Vec<u32>,
}

impl FieldTable {
    /// Builds the tables for F_{p^t}. When `modulus` is omitted, the monic
    /// degree-`t` polynomial with the smallest radix-`p` coefficient encoding
    /// that makes `x` a generator is selected, so construction is fully
    /// deterministic.
    pub fn new(p: u64, t: u32, modulus: Option<&[u64]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if t == 0 {
            return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
        }
        let order = checked_pow(p, t)
            .filter(|&o| o <= FIELD_ORDER_CAP)
            .ok_or(Error::FieldTooLarge {
                order: checked_pow(p, t).unwrap_or(u64::MAX),
                cap: FIELD_ORDER_CAP,
            })?;
        let spec = match modulus {
            Some(coeffs) => {
                if coeffs.len() != t as usize + 1
                    || coeffs[t as usize] != 1
                    || coeffs.iter().any(|&c| c >= p)
                {
                    return Err(Error::BadModulus { expected: t });
                }
                FieldSpec {
                    p,
                    t,
                    modulus: coeffs.to_vec(),
                }
            }
            None => find_primitive_modulus(p, t, order)?,
        };
        let (antilog, log) =
            build_tables(&spec, order).ok_or(Error::NotPrimitive)?;
        Ok(FieldTable {
            id: NEXT_TABLE_ID.fetch_add(1, Ordering::Relaxed),
            spec,
            order,
            antilog,
            log,
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// p^t, counting the zero element.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// p^t - 1, the order of the multiplicative group.
    pub fn group_order(&self) -> u64 {
        self.order - 1
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { table: self.id, rep: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { table: self.id, rep: 1 }
    }

    /// The element with the given radix-`p` encoding.
    pub fn element(&self, rep: u64) -> Result<FieldElement> {
        if rep >= self.order {
            return Err(Error::ElementOutOfRange {
                rep,
                order: self.order,
            });
        }
        Ok(FieldElement {
            table: self.id,
            rep: rep as u32,
        })
    }

    /// `alpha^i`, with the exponent reduced mod the group order.
    pub fn alpha_pow(&self, i: u64) -> FieldElement {
        FieldElement {
            table: self.id,
            rep: self.antilog[(i % self.group_order()) as usize],
        }
    }

    /// Discrete log base `alpha`; zero has none.
    pub fn log(&self, a: FieldElement) -> Result<u64> {
        self.check(a)?;
        if a.rep == 0 {
            return Err(Error::LogOfZero);
        }
        Ok(self.log[a.rep as usize] as u64)
    }

    fn check(&self, a: FieldElement) -> Result<()> {
        if a.table != self.id {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        let p = self.spec.p;
        let (mut rep, mut x, mut y, mut scale) = (0u64, a.rep as u64, b.rep as u64, 1u64);
        while x != 0 || y != 0 {
            rep += (x % p + y % p) % p * scale;
            x /= p;
            y /= p;
            scale *= p;
        }
        Ok(FieldElement {
            table: self.id,
            rep: rep as u32,
        })
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        let p = self.spec.p;
        let (mut rep, mut x, mut scale) = (0u64, a.rep as u64, 1u64);
        while x != 0 {
            rep += (p - x % p) % p * scale;
            x /= p;
            scale *= p;
        }
        Ok(FieldElement {
            table: self.id,
            rep: rep as u32,
        })
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let nb = self.neg(b)?;
        self.add(a, nb)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        if a.rep == 0 || b.rep == 0 {
            return Ok(self.zero());
        }
        let n = self.group_order();
        let i = (self.log[a.rep as usize] as u64 + self.log[b.rep as usize] as u64) % n;
        Ok(FieldElement {
            table: self.id,
            rep: self.antilog[i as usize],
        })
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.rep == 0 {
            return Err(Error::ZeroInverse);
        }
        let n = self.group_order();
        let i = (n - self.log[a.rep as usize] as u64) % n;
        Ok(FieldElement {
            table: self.id,
            rep: self.antilog[i as usize],
        })
    }

    /// The `q` elements of the subfield of order `q = p^s` (with `s`
    /// dividing `t`): zero together with the powers of
    /// `alpha^((p^t-1)/(q-1))`, listed in exponent order.
    pub fn subfield_elements(&self, q: u64) -> Result<Vec<FieldElement>> {
        let valid = exact_log(q, self.spec.p).is_some_and(|s| s > 0 && self.spec.t % s == 0);
        if !valid {
            return Err(Error::NotSubfieldOrder {
                q,
                order: self.order,
            });
        }
        let step = self.group_order() / (q - 1);
        let mut out = vec![self.zero()];
        for j in 0..q - 1 {
            out.push(self.alpha_pow(j * step));
        }
        Ok(out)
    }
}

impl std::fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FieldTable(p={}, t={}, modulus={:?})",
            self.spec.p, self.spec.t, self.spec.modulus
        )
    }
}

/// Multiplies the element encoded by `rep` by `x`, reducing by the modulus.
fn mul_by_x(spec: &FieldSpec, rep: u64) -> u64 {
    // t <= 20 under the order cap, so a fixed scratch array suffices.
    let p = spec.p;
    let t = spec.t as usize;
    let mut digits = [0u64; 21];
    let mut x = rep;
    for d in digits.iter_mut().take(t) {
        *d = x % p;
        x /= p;
    }
    digits[..t + 1].rotate_right(1);
    let top = digits[t];
    if top != 0 {
        // x^t = -(c_{t-1} x^{t-1} + ... + c_0) for the monic modulus.
        for i in 0..t {
            digits[i] = (digits[i] + (p - top * spec.modulus[i] % p) % p) % p;
        }
    }
    digits[..t]
        .iter()
        .rev()
        .fold(0u64, |acc, &d| acc * p + d)
}

/// Walks x^0, x^1, ... modulo the given modulus. Succeeds iff the walk
/// visits `order - 1` distinct nonzero encodings and returns to 1, which
/// happens exactly when the modulus is primitive.
fn build_tables(spec: &FieldSpec, order: u64) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = (order - 1) as usize;
    let mut antilog = vec![0u32; n];
    let mut log = vec![u32::MAX; order as usize];
    let mut e = 1u64;
    for i in 0..n {
        if e == 0 || log[e as usize] != u32::MAX {
            return None;
        }
        antilog[i] = e as u32;
        log[e as usize] = i as u32;
        e = mul_by_x(spec, e);
    }
    (e == 1).then_some((antilog, log))
}

fn find_primitive_modulus(p: u64, t: u32, order: u64) -> Result<FieldSpec> {
    for low in 0..order {
        let mut modulus = Vec::with_capacity(t as usize + 1);
        let mut x = low;
        for _ in 0..t {
            modulus.push(x % p);
            x /= p;
        }
        modulus.push(1);
        let spec = FieldSpec { p, t, modulus };
        if build_tables(&spec, order).is_some() {
            return Ok(spec);
        }
    }
    Err(Error::NoPrimitivePolynomial { p, t })
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Returns `s` with `base^s == n`, if any.
fn exact_log(n: u64, base: u64) -> Option<u32> {
    let mut acc = 1u64;
    let mut s = 0;
    while acc < n {
        acc = acc.checked_mul(base)?;
        s += 1;
    }
    (acc == n).then_some(s)
}

/// Splits a prime power into `(p, s)` with `p^s == q`.
pub fn factor_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = q;
    for d in 2..=q {
        if d * d > q {
            break;
        }
        if q % d == 0 {
            p = d;
            break;
        }
    }
    let s = exact_log(q, p).ok_or(Error::NotPrimePower(q))?;
    Ok((p, s))
}
