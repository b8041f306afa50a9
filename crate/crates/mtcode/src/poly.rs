//! Dense univariate and Laurent polynomials over GF(p^e).
//!
//! `Poly` keeps no trailing zero coefficients; the zero polynomial is the
//! empty list and reports degree `None`. `LaurentPoly` additionally carries
//! the exponent of its first coefficient, which may be negative, and is used
//! for the substitution x -> 1/x and the twisted quotient-ring reduction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
    spec: Arc<FieldSpec>,
}

impl Poly {
    pub fn new(spec: Arc<FieldSpec>, mut coeffs: Vec<FieldElement>) -> Poly {
        for c in &coeffs {
            assert!(c.spec().compatible(&spec), "field spec mismatch");
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, spec }
    }

    pub fn zero(spec: &Arc<FieldSpec>) -> Poly {
        Poly { coeffs: Vec::new(), spec: spec.clone() }
    }

    pub fn one(spec: &Arc<FieldSpec>) -> Poly {
        Poly::constant(spec.one())
    }

    pub fn constant(c: FieldElement) -> Poly {
        let spec = c.spec().clone();
        Poly::new(spec, vec![c])
    }

    /// c * x^k
    pub fn monomial(c: FieldElement, k: usize) -> Poly {
        let spec = c.spec().clone();
        let mut coeffs = vec![spec.zero(); k];
        coeffs.push(c);
        Poly::new(spec, coeffs)
    }

    /// x^m - lambda
    pub fn twist_modulus(m: usize, lambda: &FieldElement) -> Poly {
        let spec = lambda.spec().clone();
        let mut coeffs = vec![spec.zero(); m + 1];
        coeffs[0] = -lambda;
        coeffs[m] = spec.one();
        Poly::new(spec, coeffs)
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of x^i, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.spec.zero())
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        Poly::new(self.spec.clone(), self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by x^k.
    pub fn mul_xpow(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.spec.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs, spec: self.spec.clone() }
    }

    /// Quotient and remainder with `f = q*g + r` and `deg r < deg g`.
    pub fn divmod(&self, g: &Poly) -> Result<(Poly, Poly)> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dg = g.degree().unwrap();
        let lead_inv = g.leading_coeff().unwrap().inv()?;
        let mut r = self.coeffs.clone();
        let mut q = vec![self.spec.zero(); self.coeffs.len().saturating_sub(dg)];
        while r.len() > dg {
            let t = &r[r.len() - 1] * &lead_inv;
            let shift = r.len() - 1 - dg;
            if !t.is_zero() {
                for (j, gj) in g.coeffs.iter().enumerate() {
                    r[shift + j] = &r[shift + j] - &(gj * &t);
                }
                q[shift] = t;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Ok((Poly::new(self.spec.clone(), q), Poly::new(self.spec.clone(), r)))
    }

    pub fn rem(&self, g: &Poly) -> Result<Poly> {
        Ok(self.divmod(g)?.1)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn exact_div(&self, g: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(g)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Monic generator of the ideal <f, g>; `gcd(f, 0)` is `monic(f)`.
    pub fn gcd(&self, g: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = g.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lead) => self.scale(&lead.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn eval(&self, at: &FieldElement) -> FieldElement {
        let mut acc = self.spec.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    /// Coefficientwise sigma^mu.
    pub fn frobenius(&self, mu: usize) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.frobenius(mu)).collect(),
            spec: self.spec.clone(),
        }
    }

    /// Coefficientwise relative trace onto F_{p^upsilon}.
    pub fn trace_to_subfield(&self, upsilon: usize) -> Result<Poly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.trace_to_subfield(upsilon))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(self.spec.clone(), coeffs))
    }

    pub fn coeffs_in_subfield(&self, upsilon: usize) -> Result<bool> {
        for c in &self.coeffs {
            if !c.in_subfield(upsilon)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::new(0, self.coeffs.clone(), self.spec.clone())
    }

    /// The substitution x -> 1/x: the coefficient sequence reversed with the
    /// lowest exponent at -deg. An involution on nonzero input.
    pub fn subst_inverse(&self) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        let low = -(self.degree().unwrap_or(0) as i64);
        LaurentPoly::new(low, coeffs, self.spec.clone())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(&self.coeff(i) + &rhs.coeff(i));
        }
        Poly::new(self.spec.clone(), coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(&self.coeff(i) - &rhs.coeff(i));
        }
        Poly::new(self.spec.clone(), coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect(), spec: self.spec.clone() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.spec);
        }
        let mut coeffs = vec![self.spec.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::new(self.spec.clone(), coeffs)
    }
}

/// A Laurent polynomial: coefficients ascending from exponent `low`, which
/// may be negative. Canonical form has nonzero first and last coefficients;
/// zero is the empty list with `low = 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<FieldElement>,
    spec: Arc<FieldSpec>,
}

impl LaurentPoly {
    pub fn new(mut low: i64, mut coeffs: Vec<FieldElement>, spec: Arc<FieldSpec>) -> LaurentPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        while coeffs.first().is_some_and(|c| c.is_zero()) {
            coeffs.remove(0);
            low += 1;
        }
        if coeffs.is_empty() {
            low = 0;
        }
        LaurentPoly { low, coeffs, spec }
    }

    pub fn zero(spec: &Arc<FieldSpec>) -> LaurentPoly {
        LaurentPoly { low: 0, coeffs: Vec::new(), spec: spec.clone() }
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the first (lowest) coefficient.
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Exponent of the last (highest) coefficient; `None` for zero.
    pub fn high(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.low + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Uniform exponent shift: multiplication by x^k.
    pub fn shift_mul(&self, k: i64) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone(), spec: self.spec.clone() }
    }

    pub fn subst_inverse(&self) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        let low = match self.high() {
            None => 0,
            Some(h) => -h,
        };
        LaurentPoly::new(low, coeffs, self.spec.clone())
    }

    /// Canonical representative modulo x^m - 1/lambda: every exponent t is
    /// reduced to t mod m, a downward wrap by m multiplying the coefficient
    /// by lambda (equivalently x^m = 1/lambda). The result has degree < m.
    pub fn reduce_in_quotient(&self, m: usize, lambda: &FieldElement) -> Result<Poly> {
        if m == 0 {
            return Err(Error::Precondition("block length must be >= 1".into()));
        }
        if lambda.is_zero() {
            return Err(Error::ZeroShift);
        }
        let mut acc = vec![self.spec.zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = self.low + i as i64;
            let r = t.rem_euclid(m as i64);
            let wraps = (t - r) / m as i64; // x^t = (x^m)^wraps * x^r = lambda^{-wraps} x^r
            let factor = lambda.pow_signed(-wraps)?;
            acc[r as usize] = &acc[r as usize] + &(c * &factor);
        }
        Ok(Poly::new(self.spec.clone(), acc))
    }

    /// Converts to a plain polynomial; errors if any exponent is negative.
    pub fn to_poly(&self) -> Result<Poly> {
        if self.low < 0 {
            return Err(Error::Precondition("negative exponents present".into()));
        }
        let mut coeffs = vec![self.spec.zero(); self.low as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        Ok(Poly::new(self.spec.clone(), coeffs))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().unwrap().max(rhs.high().unwrap());
        let mut coeffs = vec![self.spec.zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let idx = (self.low + i as i64 - low) as usize;
            coeffs[idx] = &coeffs[idx] + c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            let idx = (rhs.low + i as i64 - low) as usize;
            coeffs[idx] = &coeffs[idx] + c;
        }
        LaurentPoly::new(low, coeffs, self.spec.clone())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero(&self.spec);
        }
        let mut coeffs = vec![self.spec.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        LaurentPoly::new(self.low + rhs.low, coeffs, self.spec.clone())
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, c: &FieldElement, exp: i64, first: bool) -> fmt::Result {
    if !first {
        write!(f, " + ")?;
    }
    match exp {
        0 => write!(f, "{c}"),
        1 => write!(f, "{c}*x"),
        _ => write!(f, "{c}*x^{exp}"),
    }
}

impl fmt::Display for Poly {
    /// Canonical text: ascending terms `c*x^k` joined by ` + `, zero terms
    /// omitted, `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            fmt_term(f, c, i as i64, first)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            fmt_term(f, c, self.low + i as i64, first)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Poly {
    /// Parses the polynomial text form: terms `coeff`, `coeff*x^k`, or `x^k`
    /// in any order, joined by `+` or `-`, with field-element coefficient
    /// notations. Exponents must be non-negative.
    pub fn parse(text: &str, spec: &Arc<FieldSpec>) -> Result<Poly> {
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negated = false;
        let mut prev_caret = false;
        for ch in text.chars() {
            match ch {
                '+' | '-' if !prev_caret => {
                    if !cur.trim().is_empty() {
                        terms.push((negated, cur.trim().to_string()));
                    } else if !terms.is_empty() || negated {
                        return Err(Error::Parse(format!("dangling sign in {text:?}")));
                    }
                    cur = String::new();
                    negated = ch == '-';
                }
                _ => {
                    if !ch.is_whitespace() {
                        prev_caret = ch == '^';
                    }
                    cur.push(ch);
                }
            }
        }
        if !cur.trim().is_empty() {
            terms.push((negated, cur.trim().to_string()));
        } else if negated {
            return Err(Error::Parse(format!("dangling sign in {text:?}")));
        }
        if terms.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut acc = Poly::zero(spec);
        for (neg, term) in terms {
            let parsed = parse_term(&term, spec)?;
            acc = if neg { &acc - &parsed } else { &acc + &parsed };
        }
        Ok(acc)
    }
}

fn parse_term(term: &str, spec: &Arc<FieldSpec>) -> Result<Poly> {
    let (coeff_text, x_text) = match term.find('x') {
        None => (term, None),
        Some(pos) => {
            // 'x' inside a bracketed coefficient list cannot occur; the only
            // 'x' belongs to the variable part
            let (c, x) = term.split_at(pos);
            (c, Some(x))
        }
    };
    let coeff_text = coeff_text.trim().trim_end_matches('*').trim();
    let coeff = if coeff_text.is_empty() {
        spec.one()
    } else {
        FieldElement::parse(coeff_text, spec)?
    };
    let exp: usize = match x_text {
        None => 0,
        Some(x) => {
            let rest = x.strip_prefix('x').unwrap().trim();
            if rest.is_empty() {
                1
            } else {
                let e = rest
                    .strip_prefix('^')
                    .ok_or_else(|| Error::Parse(format!("bad term: {term:?}")))?;
                e.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?
            }
        }
    };
    Ok(Poly::monomial(coeff, exp))
}
