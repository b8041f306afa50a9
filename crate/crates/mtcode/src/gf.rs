//! Exact arithmetic in GF(p^e) with the Frobenius automorphism, subfield
//! membership tests, and the relative trace map.
//!
//! Elements are stored in the polynomial basis over F_p modulo a designated
//! monic irreducible. A power table over a generator is built on demand and
//! backs the `g^k` text notation.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Polynomials over F_p as plain coefficient vectors, used only to validate
// the field modulus before any FieldElement exists.

fn pf_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pf_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    debug_assert_eq!(*b.last().unwrap(), 1, "divisor must be monic");
    let mut r: Vec<u64> = a.to_vec();
    pf_trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let idx = shift + j;
                let sub = (bj as u128 * lead as u128) % p as u128;
                r[idx] = ((r[idx] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
        r.pop();
        pf_trim(&mut r);
    }
    r
}

fn pf_is_irreducible(modulus: &[u64], p: u64, e: usize) -> bool {
    if e == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=e/2. Testing
    // reducible trial divisors as well is redundant but harmless.
    for d in 1..=e / 2 {
        let mut cand = vec![0u64; d + 1];
        cand[d] = 1;
        loop {
            if pf_rem(modulus, &cand, p).is_empty() {
                return false;
            }
            // odometer over the d low coefficients
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                cand[i] += 1;
                if cand[i] < p {
                    break;
                }
                cand[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    true
}

struct PowerTable {
    generator: Vec<u64>,
    powers: Vec<Vec<u64>>,
    log: HashMap<Vec<u64>, u64>,
}

/// An immutable description of GF(p^e): characteristic, extension degree,
/// defining modulus, and an optional designated generator for power notation.
#[derive(Debug)]
pub struct FieldSpec {
    p: u64,
    e: usize,
    modulus: Vec<u64>,
    generator: Option<Vec<u64>>,
    default_generator: OnceLock<Option<Vec<u64>>>,
    table: OnceLock<Option<PowerTable>>,
}

impl fmt::Debug for PowerTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerTable(g={:?}, {} powers)", self.generator, self.powers.len())
    }
}

impl PartialEq for FieldSpec {
    /// Arithmetic identity: same prime, degree, and modulus. Designated
    /// generators and cached tables do not participate.
    fn eq(&self, other: &Self) -> bool {
        self.compatible(other)
    }
}

impl Eq for FieldSpec {}

const MAX_FIELD_ORDER: u64 = 1 << 32;
const MAX_TABLE_ORDER: u64 = 1 << 16;

impl FieldSpec {
    /// Builds a field spec, checking that `p` is prime and `modulus` is a
    /// monic irreducible of degree `e` over F_p. Coefficients are ascending.
    pub fn new(
        p: u64,
        e: usize,
        modulus: Vec<u64>,
        generator: Option<Vec<u64>>,
    ) -> Result<Arc<FieldSpec>> {
        if !is_prime(p) {
            return Err(Error::InvalidFieldSpec(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidFieldSpec("extension degree must be >= 1".into()));
        }
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q
                .checked_mul(p)
                .filter(|&q| q <= MAX_FIELD_ORDER)
                .ok_or_else(|| Error::InvalidFieldSpec("field order exceeds 2^32".into()))?;
        }
        if modulus.len() != e + 1 {
            return Err(Error::InvalidFieldSpec(format!(
                "modulus must have degree {e} ({} coefficients)",
                e + 1
            )));
        }
        let modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        if modulus[e] != 1 {
            return Err(Error::InvalidFieldSpec("modulus must be monic".into()));
        }
        if !pf_is_irreducible(&modulus, p, e) {
            return Err(Error::InvalidFieldSpec("modulus is reducible".into()));
        }
        let generator = match generator {
            None => None,
            Some(g) => {
                let mut g: Vec<u64> = g.into_iter().map(|c| c % p).collect();
                g.resize(e, 0);
                Some(g)
            }
        };
        let spec = Arc::new(FieldSpec {
            p,
            e,
            modulus,
            generator,
            default_generator: OnceLock::new(),
            table: OnceLock::new(),
        });
        if let Some(g) = &spec.generator {
            let elem = FieldElement { coeffs: g.clone(), spec: spec.clone() };
            if elem.is_zero() || elem.multiplicative_order()? != spec.order() - 1 {
                return Err(Error::InvalidFieldSpec(
                    "designated generator is not primitive".into(),
                ));
            }
        }
        Ok(spec)
    }

    /// The prime field F_p, with `x` as the defining modulus.
    pub fn prime_field(p: u64) -> Result<Arc<FieldSpec>> {
        FieldSpec::new(p, 1, vec![0, 1], None)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> usize {
        self.e
    }

    /// The field order q = p^e.
    pub fn order(&self) -> u64 {
        let mut q = 1u64;
        for _ in 0..self.e {
            q *= self.p;
        }
        q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn has_designated_generator(&self) -> bool {
        self.generator.is_some()
    }

    /// Arithmetic compatibility: same prime, degree, and modulus. The
    /// designated generator does not affect arithmetic.
    pub fn compatible(&self, other: &FieldSpec) -> bool {
        std::ptr::eq(self, other)
            || (self.p == other.p && self.e == other.e && self.modulus == other.modulus)
    }

    pub fn check_subfield_index(&self, upsilon: usize) -> Result<()> {
        if upsilon == 0 || self.e % upsilon != 0 {
            return Err(Error::BadSubfieldIndex { upsilon, e: self.e });
        }
        Ok(())
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement { coeffs: vec![0; self.e], spec: self.clone() }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_u64(1)
    }

    /// The constant `c mod p` as a field element.
    pub fn from_u64(self: &Arc<Self>, c: u64) -> FieldElement {
        let mut coeffs = vec![0; self.e];
        coeffs[0] = c % self.p;
        FieldElement { coeffs, spec: self.clone() }
    }

    /// Builds an element from ascending coefficients over F_p; shorter lists
    /// are zero-padded.
    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.e {
            return Err(Error::Parse(format!(
                "coefficient list of length {} exceeds extension degree {}",
                coeffs.len(),
                self.e
            )));
        }
        let mut c: Vec<u64> = coeffs.iter().map(|&x| x % self.p).collect();
        c.resize(self.e, 0);
        Ok(FieldElement { coeffs: c, spec: self.clone() })
    }

    /// All q elements in lexicographic coefficient order (a0 most significant).
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FieldElement> {
        let spec = self.clone();
        let mut digits = vec![0u64; self.e];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = FieldElement { coeffs: digits.clone(), spec: spec.clone() };
            // increment with the last coefficient fastest
            let mut i = spec.e;
            loop {
                if i == 0 {
                    done = true;
                    break;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < spec.p {
                    break;
                }
                digits[i] = 0;
            }
            Some(out)
        })
    }

    /// The designated generator, or the smallest primitive element in
    /// lexicographic coefficient order when none was designated.
    pub fn generator(self: &Arc<Self>) -> Result<FieldElement> {
        if let Some(g) = &self.generator {
            return Ok(FieldElement { coeffs: g.clone(), spec: self.clone() });
        }
        let found = self.default_generator.get_or_init(|| {
            let target = self.order() - 1;
            self.elements()
                .find(|a| !a.is_zero() && a.multiplicative_order().ok() == Some(target))
                .map(|a| a.coeffs)
        });
        match found {
            Some(g) => Ok(FieldElement { coeffs: g.clone(), spec: self.clone() }),
            None => Err(Error::Internal("no primitive element found".into())),
        }
    }

    fn power_table(self: &Arc<Self>) -> Result<&PowerTable> {
        let built = self.table.get_or_init(|| {
            if self.order() > MAX_TABLE_ORDER {
                return None;
            }
            let g = self.generator().ok()?;
            let q = self.order();
            let mut powers = Vec::with_capacity((q - 1) as usize);
            let mut log = HashMap::new();
            let mut acc = self.one();
            for k in 0..q - 1 {
                powers.push(acc.coeffs.clone());
                log.insert(acc.coeffs.clone(), k);
                acc = &acc * &g;
            }
            Some(PowerTable { generator: g.coeffs, powers, log })
        });
        built
            .as_ref()
            .ok_or_else(|| Error::InvalidFieldSpec("field too large for a power table".into()))
    }

    /// Discrete log of a nonzero element with respect to the generator.
    pub fn log(self: &Arc<Self>, a: &FieldElement) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let table = self.power_table()?;
        table
            .log
            .get(&a.coeffs)
            .copied()
            .ok_or_else(|| Error::Internal("element missing from power table".into()))
    }

    /// The generator raised to `k`, via the table when available.
    pub fn generator_power(self: &Arc<Self>, k: u64) -> Result<FieldElement> {
        if self.order() <= MAX_TABLE_ORDER {
            let table = self.power_table()?;
            let idx = (k % (self.order() - 1)) as usize;
            return Ok(FieldElement { coeffs: table.powers[idx].clone(), spec: self.clone() });
        }
        Ok(self.generator()?.pow(k))
    }
}

/// An element of GF(p^e) in the polynomial basis of its [`FieldSpec`].
#[derive(Clone)]
pub struct FieldElement {
    coeffs: Vec<u64>,
    spec: Arc<FieldSpec>,
}

impl FieldElement {
    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn assert_compatible(&self, other: &FieldElement) {
        assert!(self.spec.compatible(&other.spec), "field spec mismatch");
    }

    pub fn try_add(&self, rhs: &FieldElement) -> Result<FieldElement> {
        if !self.spec.compatible(&rhs.spec) {
            return Err(Error::SpecMismatch);
        }
        Ok(self + rhs)
    }

    pub fn try_sub(&self, rhs: &FieldElement) -> Result<FieldElement> {
        if !self.spec.compatible(&rhs.spec) {
            return Err(Error::SpecMismatch);
        }
        Ok(self - rhs)
    }

    pub fn try_mul(&self, rhs: &FieldElement) -> Result<FieldElement> {
        if !self.spec.compatible(&rhs.spec) {
            return Err(Error::SpecMismatch);
        }
        Ok(self * rhs)
    }

    pub fn try_div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        if !self.spec.compatible(&rhs.spec) {
            return Err(Error::SpecMismatch);
        }
        Ok(self * &rhs.inv()?)
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.spec.order() - 2))
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.spec.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// `self^k` for a possibly negative exponent; errors when zero is raised
    /// to a negative power.
    pub fn pow_signed(&self, exp: i64) -> Result<FieldElement> {
        if exp >= 0 {
            Ok(self.pow(exp as u64))
        } else {
            Ok(self.inv()?.pow(exp.unsigned_abs()))
        }
    }

    /// sigma^mu with sigma the Frobenius a -> a^p; mu is reduced mod e.
    pub fn frobenius(&self, mu: usize) -> FieldElement {
        let mut out = self.clone();
        for _ in 0..(mu % self.spec.e) {
            out = out.pow(self.spec.p);
        }
        out
    }

    /// True iff the element lies in the subfield F_{p^upsilon}.
    pub fn in_subfield(&self, upsilon: usize) -> Result<bool> {
        self.spec.check_subfield_index(upsilon)?;
        Ok(self.frobenius(upsilon) == *self)
    }

    /// Relative trace onto F_{p^upsilon}: sum of sigma^{i*upsilon} orbits.
    pub fn trace_to_subfield(&self, upsilon: usize) -> Result<FieldElement> {
        self.spec.check_subfield_index(upsilon)?;
        let mut acc = self.clone();
        let mut cur = self.clone();
        for _ in 1..self.spec.e / upsilon {
            cur = cur.frobenius(upsilon);
            acc = &acc + &cur;
        }
        Ok(acc)
    }

    /// Order in the multiplicative group; errors on zero.
    pub fn multiplicative_order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut acc = self.clone();
        for k in 1..self.spec.order() {
            if acc.is_one() {
                return Ok(k);
            }
            acc = &acc * self;
        }
        Err(Error::Internal("multiplicative order not found".into()))
    }

    /// Parses the canonical element notations: `0`, a bare integer,
    /// `g^k` (generator power), or `[a0,a1,...]` coefficients.
    pub fn parse(text: &str, spec: &Arc<FieldSpec>) -> Result<FieldElement> {
        let s = text.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty field element".into()));
        }
        if s == "g" {
            return spec.generator();
        }
        if let Some(rest) = s.strip_prefix("g^") {
            let k: u64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad generator exponent: {rest:?}")))?;
            return spec.generator_power(k);
        }
        if let Some(inner) = s.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unterminated coefficient list: {s:?}")))?;
            let mut coeffs = Vec::new();
            if !inner.trim().is_empty() {
                for part in inner.split(',') {
                    let c: u64 = part
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient: {part:?}")))?;
                    coeffs.push(c);
                }
            }
            return spec.from_coeffs(&coeffs);
        }
        let c: u64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad field element: {s:?}")))?;
        Ok(spec.from_u64(c))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.spec.compatible(&other.spec) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    /// Canonical text: `0` for zero, `g^k` when the spec designates a
    /// generator (and a table is available), else `[a0,a1,...]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.spec.has_designated_generator() {
            if let Ok(k) = self.spec.log(self) {
                return write!(f, "g^{k}");
            }
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.assert_compatible(rhs);
        let p = self.spec.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FieldElement { coeffs, spec: self.spec.clone() }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.assert_compatible(rhs);
        let p = self.spec.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        FieldElement { coeffs, spec: self.spec.clone() }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.spec.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElement { coeffs, spec: self.spec.clone() }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.assert_compatible(rhs);
        let p = self.spec.p as u128;
        let e = self.spec.e;
        let mut buf = vec![0u128; 2 * e - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                buf[i + j] = (buf[i + j] + a as u128 * b as u128) % p;
            }
        }
        // reduce x^e = -(m_0 + m_1 x + ... + m_{e-1} x^{e-1})
        for i in (e..buf.len()).rev() {
            let c = buf[i];
            if c == 0 {
                continue;
            }
            buf[i] = 0;
            for j in 0..e {
                let m = self.spec.modulus[j] as u128;
                buf[i - e + j] = (buf[i - e + j] + (p - m) * c) % p;
            }
        }
        let coeffs = buf[..e].iter().map(|&c| c as u64).collect();
        FieldElement { coeffs, spec: self.spec.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf16() -> Arc<FieldSpec> {
        // theta^4 + theta + 1, with theta designated as generator
        FieldSpec::new(2, 4, vec![1, 1, 0, 0, 1], Some(vec![0, 1, 0, 0])).unwrap()
    }

    fn gf9() -> Arc<FieldSpec> {
        // x^2 + 1 over F_3
        FieldSpec::new(3, 2, vec![1, 0, 1], None).unwrap()
    }

    fn theta_pow(spec: &Arc<FieldSpec>, k: u64) -> FieldElement {
        // independent oracle: repeated multiplication by theta
        let theta = spec.from_coeffs(&[0, 1]).unwrap();
        let mut acc = spec.one();
        for _ in 0..k {
            acc = &acc * &theta;
        }
        acc
    }

    #[test]
    fn construction_rejects_bad_specs() {
        assert!(FieldSpec::new(4, 1, vec![0, 1], None).is_err());
        // x^2 + 1 = (x+1)^2 over F_2
        assert!(FieldSpec::new(2, 2, vec![1, 0, 1], None).is_err());
        assert!(FieldSpec::new(2, 2, vec![1, 1, 0], None).is_err());
        // theta^5 has order 3 in GF(16), not primitive
        let theta5 = theta_pow(&gf16(), 5);
        assert!(FieldSpec::new(2, 4, vec![1, 1, 0, 0, 1], Some(theta5.coeffs().to_vec())).is_err());
    }

    #[test]
    fn gf16_power_products() {
        let f = gf16();
        let theta = theta_pow(&f, 1);
        let theta9 = theta_pow(&f, 9);
        let theta10 = theta_pow(&f, 10);
        assert_eq!(&theta * &theta9, theta10);
        assert_eq!(theta10.coeffs(), &[1, 1, 1, 0]); // 1 + theta + theta^2
    }

    #[test]
    fn multiplicative_identity_and_inverses() {
        let f = gf16();
        for a in f.elements() {
            assert_eq!(&a * &f.one(), a);
        }
        let f9 = gf9();
        for a in f9.elements() {
            if a.is_zero() {
                assert!(a.inv().is_err());
            } else {
                assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for spec in [
            FieldSpec::prime_field(2).unwrap(),
            FieldSpec::prime_field(3).unwrap(),
            FieldSpec::new(2, 2, vec![1, 1, 1], None).unwrap(),
            gf16(),
        ] {
            let elems: Vec<_> = spec.elements().collect();
            for a in &elems {
                for b in &elems {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    for c in &elems {
                        assert_eq!(&(a + b) + c, a + &(b + c));
                        assert_eq!(&(a * b) * c, a * &(b * c));
                        assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                    }
                }
            }
        }
    }

    #[test]
    fn field_axioms_sampled_above_16() {
        for f in [
            FieldSpec::new(3, 4, vec![2, 1, 0, 0, 1], None).unwrap(),
            // x^2 + x + 1 over F_5 and x^2 + 1 over F_7
            FieldSpec::new(5, 2, vec![1, 1, 1], None).unwrap(),
            FieldSpec::new(7, 2, vec![1, 0, 1], None).unwrap(),
        ] {
            let elems: Vec<_> = f.elements().collect();
            let q = elems.len() as u64;
            let mut state = 0x2545f4914f6cdd1du64;
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            for _ in 0..10_000 {
                let a = &elems[(next() % q) as usize];
                let b = &elems[(next() % q) as usize];
                let c = &elems[(next() % q) as usize];
                assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                assert_eq!(&(a * b) * c, a * &(b * c));
                assert_eq!(&(a + b) - b, *a);
                if !a.is_zero() {
                    assert!((a * &a.inv().unwrap()).is_one());
                }
            }
        }
    }

    #[test]
    fn frobenius_definition_and_order() {
        let f = gf16();
        let theta = theta_pow(&f, 1);
        assert_eq!(theta.frobenius(1), theta_pow(&f, 2));
        for a in f.elements() {
            assert_eq!(a.frobenius(4), a);
        }
        // sigma(theta^9) = theta^18 = theta^3
        assert_eq!(theta_pow(&f, 9).frobenius(1), theta_pow(&f, 3));
    }

    #[test]
    fn frobenius_is_ring_homomorphism() {
        let f = gf9();
        let elems: Vec<_> = f.elements().collect();
        for a in &elems {
            for b in &elems {
                assert_eq!((a + b).frobenius(1), &a.frobenius(1) + &b.frobenius(1));
                assert_eq!((a * b).frobenius(1), &a.frobenius(1) * &b.frobenius(1));
            }
        }
    }

    #[test]
    fn subfield_membership() {
        let f = gf16();
        assert!(theta_pow(&f, 10).in_subfield(2).unwrap());
        assert!(theta_pow(&f, 5).in_subfield(2).unwrap());
        assert!(!theta_pow(&f, 1).in_subfield(2).unwrap());
        assert!(f.zero().in_subfield(1).unwrap());
        assert!(f.one().in_subfield(2).unwrap());
        assert!(f.one().in_subfield(4).unwrap());
        assert!(f.one().in_subfield(3).is_err());
        for a in f.elements() {
            assert_eq!(a.in_subfield(2).unwrap(), a.frobenius(2) == a);
        }
    }

    #[test]
    fn trace_onto_f4() {
        let f = gf16();
        // Tr: a -> a + a^4 maps onto F_4
        assert!(theta_pow(&f, 5).trace_to_subfield(2).unwrap().is_zero());
        assert!(f.zero().trace_to_subfield(2).unwrap().is_zero());
        for a in f.elements() {
            let t = a.trace_to_subfield(2).unwrap();
            assert_eq!(t, &a + &a.frobenius(2));
            assert!(t.in_subfield(2).unwrap());
        }
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(
                    (&a + &b).trace_to_subfield(2).unwrap(),
                    &a.trace_to_subfield(2).unwrap() + &b.trace_to_subfield(2).unwrap()
                );
            }
        }
    }

    #[test]
    fn trace_is_surjective_small_fields() {
        for (spec, upsilon) in [
            (gf16(), 2usize),
            (gf16(), 1),
            (FieldSpec::new(3, 4, vec![2, 1, 0, 0, 1], None).unwrap(), 2),
            (FieldSpec::new(2, 8, vec![1, 0, 1, 1, 1, 0, 0, 0, 1], None).unwrap(), 4),
        ] {
            let image: Vec<FieldElement> = spec
                .elements()
                .map(|a| a.trace_to_subfield(upsilon).unwrap())
                .collect();
            let subfield: Vec<FieldElement> = spec
                .elements()
                .filter(|a| a.in_subfield(upsilon).unwrap())
                .collect();
            for target in subfield {
                assert!(image.contains(&target));
            }
        }
    }

    #[test]
    fn element_text_round_trips() {
        let f = gf16();
        let theta10 = theta_pow(&f, 10);
        assert_eq!(theta10.to_string(), "g^10");
        assert_eq!(FieldElement::parse("g^10", &f).unwrap(), theta10);
        assert_eq!(FieldElement::parse("[1,1,1,0]", &f).unwrap(), theta10);
        assert_eq!(FieldElement::parse("0", &f).unwrap(), f.zero());
        assert_eq!(f.zero().to_string(), "0");

        let f3 = FieldSpec::prime_field(3).unwrap();
        let two = f3.from_u64(2);
        assert_eq!(two.to_string(), "[2]");
        assert_eq!(FieldElement::parse("2", &f3).unwrap(), two);
        assert_eq!(FieldElement::parse("[2]", &f3).unwrap(), two);
        assert!(FieldElement::parse("oops", &f3).is_err());
    }

    #[test]
    fn default_generator_is_smallest_primitive() {
        // F_4: the class of x is the lexicographically smallest primitive element
        let f4 = FieldSpec::new(2, 2, vec![1, 1, 1], None).unwrap();
        assert_eq!(f4.generator().unwrap().coeffs(), &[0, 1]);
        // F_5: 2 is the smallest primitive root
        let f5 = FieldSpec::prime_field(5).unwrap();
        assert_eq!(f5.generator().unwrap().coeffs(), &[2]);
    }

    #[test]
    fn mismatched_specs_error() {
        let a = gf16().one();
        let b = gf9().one();
        assert!(a.try_add(&b).is_err());
        assert!(a.try_mul(&b).is_err());
        assert!(a.try_div(&gf16().zero()).is_err());
    }

    #[test]
    fn specs_and_elements_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Arc<FieldSpec>>();
        assert_send_sync::<FieldElement>();
    }
}
