use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::RingError;

/// Multivariate Laurent polynomial with arbitrary-precision integer
/// coefficients.
///
/// Canonical form: variables sorted by name, every listed variable occurs with
/// a nonzero exponent in some term, and no stored coefficient is zero. Equality
/// is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        LaurentPoly { vars: Vec::new(), terms }
    }

    /// The polynomial `name`.
    pub fn var(name: &str) -> Self {
        LaurentPoly::monomial(1, &[(name, 1)])
    }

    /// `coeff · Π name^exp`.
    pub fn monomial(coeff: impl Into<BigInt>, factors: &[(&str, i32)]) -> Self {
        let mut vars: Vec<String> = factors.iter().map(|(v, _)| v.to_string()).collect();
        vars.sort();
        vars.dedup();
        let mut exps = vec![0; vars.len()];
        for (v, e) in factors {
            let k = vars.iter().position(|x| x == v).unwrap();
            exps[k] += e;
        }
        let mut terms = BTreeMap::new();
        terms.insert(exps, coeff.into());
        LaurentPoly::normalized(vars, terms)
    }

    /// Univariate polynomial `Σ coeff · var^exp`.
    pub fn from_univariate(var: &str, terms: &[(i32, i64)]) -> Self {
        let mut map = BTreeMap::new();
        for &(e, c) in terms {
            *map.entry(vec![e]).or_insert_with(BigInt::zero) += c;
        }
        LaurentPoly::normalized(vec![var.to_string()], map)
    }

    /// Builds a polynomial from exponent vectors over `vars` (any order,
    /// duplicate terms are summed).
    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Vec<i32>, BigInt)>) -> Result<Self, RingError> {
        let mut sorted: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != vars.len() {
            return Err(RingError::Parse("duplicate variable name".into()));
        }
        let slot: Vec<usize> = vars.iter().map(|v| sorted.iter().position(|x| x == v).unwrap()).collect();
        let mut map: BTreeMap<Vec<i32>, BigInt> = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != vars.len() {
                return Err(RingError::DimensionMismatch("exponent vector length differs from variable count".into()));
            }
            let mut e = vec![0; sorted.len()];
            for (k, x) in exps.into_iter().enumerate() {
                e[slot[k]] = x;
            }
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        Ok(LaurentPoly::normalized(sorted, map))
    }

    fn normalized(vars: Vec<String>, mut terms: BTreeMap<Vec<i32>, BigInt>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let used: Vec<bool> = (0..vars.len()).map(|k| terms.keys().any(|e| e[k] != 0)).collect();
        if used.iter().all(|&u| u) {
            return LaurentPoly { vars, terms };
        }
        let keep: Vec<usize> = (0..vars.len()).filter(|&k| used[k]).collect();
        let vars = keep.iter().map(|&k| vars[k].clone()).collect();
        let terms = terms.into_iter().map(|(e, c)| (keep.iter().map(|&k| e[k]).collect(), c)).collect();
        LaurentPoly { vars, terms }
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    /// Terms in increasing lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.vars.is_empty() {
            return self.terms.values().next().cloned();
        }
        None
    }

    /// `±x^e`: the units of a Laurent polynomial ring over `Z`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().abs().is_one()
    }

    /// Coefficient of `Π var^exp` (variables not mentioned have exponent 0).
    pub fn coefficient(&self, factors: &[(&str, i32)]) -> BigInt {
        let mut e = vec![0; self.vars.len()];
        for (v, x) in factors {
            match self.vars.iter().position(|n| n == v) {
                Some(k) => e[k] += x,
                None if *x == 0 => {}
                None => return BigInt::zero(),
            }
        }
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Exponent vectors of `self` re-expressed over the superset `vars`.
    fn embed(&self, vars: &[String]) -> BTreeMap<Vec<i32>, BigInt> {
        let slot: Vec<usize> = self.vars.iter().map(|v| vars.iter().position(|x| x == v).unwrap()).collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut out = vec![0; vars.len()];
                for (k, &x) in e.iter().enumerate() {
                    out[slot[k]] = x;
                }
                (out, c.clone())
            })
            .collect()
    }

    fn union_vars(&self, other: &Self) -> Vec<String> {
        let mut vars = self.vars.clone();
        vars.extend(other.vars.iter().cloned());
        vars.sort();
        vars.dedup();
        vars
    }

    /// Both operands over a common variable list.
    #[allow(clippy::type_complexity)]
    fn unify(&self, other: &Self) -> (Vec<String>, BTreeMap<Vec<i32>, BigInt>, BTreeMap<Vec<i32>, BigInt>) {
        if self.vars == other.vars {
            return (self.vars.clone(), self.terms.clone(), other.terms.clone());
        }
        let vars = self.union_vars(other);
        let a = self.embed(&vars);
        let b = other.embed(&vars);
        (vars, a, b)
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let (vars, mut acc, rhs) = if self.vars == other.vars {
            (self.vars.clone(), self.terms.clone(), None)
        } else {
            let (v, a, b) = self.unify(other);
            (v, a, Some(b))
        };
        let rhs_ref = rhs.as_ref().unwrap_or(&other.terms);
        for (e, c) in rhs_ref {
            let slot = acc.entry(e.clone()).or_insert_with(BigInt::zero);
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        LaurentPoly::normalized(vars, acc)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let (vars, a, b);
        let (ta, tb) = if self.vars == other.vars {
            vars = self.vars.clone();
            (&self.terms, &other.terms)
        } else {
            let u = self.unify(other);
            vars = u.0;
            a = u.1;
            b = u.2;
            (&a, &b)
        };
        let mut acc: BTreeMap<Vec<i32>, BigInt> = BTreeMap::new();
        for (ea, ca) in ta {
            for (eb, cb) in tb {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        LaurentPoly::normalized(vars, acc)
    }

    /// `self^k`; negative powers are only defined for units.
    pub fn pow(&self, k: i64) -> Result<Self, RingError> {
        let base = if k < 0 {
            self.unit_inverse_poly().ok_or_else(|| RingError::NotDivisible(alloc::format!("1 / ({self})")))?
        } else {
            self.clone()
        };
        let mut result = LaurentPoly::one();
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(result)
    }

    fn unit_inverse_poly(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let mut terms = BTreeMap::new();
        terms.insert(e.iter().map(|x| -x).collect(), c.clone());
        Some(LaurentPoly { vars: self.vars.clone(), terms })
    }

    /// Applies the ring homomorphism `var ↦ image`, identity on the other
    /// variables. `image` must be a unit monomial so negative powers make sense.
    pub fn substitute(&self, var: &str, image: &LaurentPoly) -> Result<Self, RingError> {
        if !image.is_unit() {
            return Err(RingError::NonUnitImage(image.to_string()));
        }
        let Some(k) = self.vars.iter().position(|v| v == var) else {
            return Ok(self.clone());
        };
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            rest[k] = 0;
            let mut term = BTreeMap::new();
            term.insert(rest, c.clone());
            let others = LaurentPoly::normalized(self.vars.clone(), term);
            let img = image.pow(i64::from(e[k]))?;
            out = &out + &(&others * &img);
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Division from the lexicographically leading term; every quotient
    /// exponent must lie in the box fixed by the per-variable degree spans,
    /// which makes the loop finite. For one variable this is ordinary long
    /// division after clearing the lowest powers.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<Self, RingError> {
        let fail = || RingError::NotDivisible(alloc::format!("({self}) / ({divisor})"));
        if divisor.is_zero() {
            return Err(fail());
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let (vars, mut rem, div) = self.unify(divisor);
        let nv = vars.len();

        let span = |m: &BTreeMap<Vec<i32>, BigInt>, k: usize| {
            let lo = m.keys().map(|e| e[k]).min().unwrap();
            let hi = m.keys().map(|e| e[k]).max().unwrap();
            (lo, hi)
        };
        let mut lo = vec![0; nv];
        let mut hi = vec![0; nv];
        for k in 0..nv {
            let (alo, ahi) = span(&rem, k);
            let (blo, bhi) = span(&div, k);
            lo[k] = alo - blo;
            hi[k] = ahi - bhi;
            if lo[k] > hi[k] {
                return Err(fail());
            }
        }

        let (lead_e, lead_c) = div.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut quotient: BTreeMap<Vec<i32>, BigInt> = BTreeMap::new();
        while let Some((re, rc)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Vec<i32> = re.iter().zip(&lead_e).map(|(x, y)| x - y).collect();
            if (0..nv).any(|k| qe[k] < lo[k] || qe[k] > hi[k]) {
                return Err(fail());
            }
            let (qc, r) = rc.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(fail());
            }
            for (de, dc) in &div {
                let e: Vec<i32> = de.iter().zip(&qe).map(|(x, y)| x + y).collect();
                let slot = rem.entry(e.clone()).or_insert_with(BigInt::zero);
                *slot -= &qc * dc;
                if slot.is_zero() {
                    rem.remove(&e);
                }
            }
            quotient.insert(qe, qc);
        }
        Ok(LaurentPoly::normalized(vars, quotient))
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coefficient(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl super::Ring for LaurentPoly {
    const EXACT: bool = true;

    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn from_i64(v: i64) -> Self {
        LaurentPoly::constant(v)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add_impl(rhs, false)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.add_impl(rhs, true)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul_impl(rhs)
    }
    fn negated(&self) -> Self {
        LaurentPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
    fn magnitude(&self) -> f64 {
        self.max_abs_coefficient().to_f64().unwrap_or(f64::INFINITY)
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.exact_div(rhs).ok()
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.unit_inverse_poly()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:expr) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                $imp(self, rhs)
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                $imp(&self, &rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                $imp(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &LaurentPoly, b: &LaurentPoly| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &LaurentPoly, b: &LaurentPoly| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &LaurentPoly, b: &LaurentPoly| a.mul_impl(b));

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        super::Ring::negated(&self)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        super::Ring::negated(self)
    }
}

impl From<i64> for LaurentPoly {
    fn from(v: i64) -> Self {
        LaurentPoly::constant(v)
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms in increasing exponent order, e.g. `s^-2 - 1 + s^2` or
    /// `2*q^-1*t - 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let factors: Vec<String> = self
                .vars
                .iter()
                .zip(e)
                .filter(|(_, &x)| x != 0)
                .map(|(v, &x)| if x == 1 { v.clone() } else { alloc::format!("{v}^{x}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, RingError> {
        Parser { src: s, chars: s.as_bytes(), pos: 0 }.poly()
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self) -> RingError {
        RingError::Parse(self.src.to_string())
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn poly(&mut self) -> Result<LaurentPoly, RingError> {
        let mut acc = LaurentPoly::zero();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                None if !first => break,
                None => return Err(self.err()),
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(_) => return Err(self.err()),
            };
            first = false;
            let term = self.term()?;
            acc = if negative { &acc - &term } else { &acc + &term };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly, RingError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                // juxtaposition like `3t^2`
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt, RingError> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err());
        }
        BigInt::from_str(&self.src[start..self.pos]).map_err(|_| self.err())
    }

    fn exponent(&mut self) -> Result<i32, RingError> {
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        self.skip_ws();
        let v = self.integer()?.to_i32().ok_or_else(|| self.err())?;
        if paren {
            if self.peek() != Some(b')') {
                return Err(self.err());
            }
            self.pos += 1;
        }
        Ok(if negative { -v } else { v })
    }

    fn factor(&mut self) -> Result<LaurentPoly, RingError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(LaurentPoly::constant(self.integer()?)),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.poly_until_paren()?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                let e = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.exponent()?
                } else {
                    1
                };
                Ok(LaurentPoly::monomial(1, &[(name, e)]))
            }
            _ => Err(self.err()),
        }
    }

    fn poly_until_paren(&mut self) -> Result<LaurentPoly, RingError> {
        let mut depth = 1;
        let start = self.pos;
        while self.pos < self.chars.len() {
            match self.chars[self.pos] {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        let inner = &self.src[start..self.pos];
                        self.pos += 1;
                        return LaurentPoly::from_str(inner);
                    }
                }
                _ => {}
            }
            self.pos += 1;
        }
        Err(self.err())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn unit_pairs_and_sums() {
        assert_eq!(&p("t") * &p("t^-1"), LaurentPoly::one());
        assert_eq!(&p("1 - t") + &p("t"), LaurentPoly::one());
        // (s - s^-1)(s + s^-1) = s^2 - s^-2, expanded by hand
        assert_eq!(&p("s - s^-1") * &p("s + s^-1"), p("s^2 - s^-2"));
        assert!((&p("t") * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(p("s^2 - 1 + s^-2").to_string(), "s^-2 - 1 + s^2");
        assert_eq!(p("-s^2 + 3 - s^-2").to_string(), "-s^-2 + 3 - s^2");
        assert_eq!(p("s^-1 - s").to_string(), "s^-1 - s");
        assert_eq!(p("2*t^3 - 4").to_string(), "-4 + 2*t^3");
        assert_eq!(p("3t").to_string(), "3*t");
        assert_eq!(p("q*t^-1 + t*q^(-2)").to_string(), "q^-2*t + q*t^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("t - t").to_string(), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "t^", "t +", "* t", "t^x", "(t", "2 3"] {
            assert!(bad.parse::<LaurentPoly>().is_err(), "{bad}");
        }
    }

    #[test]
    fn variables_are_pruned() {
        let x = &p("t*s") * &p("t^-1");
        assert_eq!(x, p("s"));
        assert_eq!(x.variables(), &["s".to_string()]);
        assert_eq!(p("t - t + 5").as_constant(), Some(BigInt::from(5)));
    }

    #[test]
    fn substitution() {
        let g = p("s^2");
        assert_eq!(p("1 - t").substitute("t", &g).unwrap(), p("1 - s^2"));
        assert_eq!(p("5").substitute("t", &g).unwrap(), p("5"));
        assert_eq!(p("t^-1 + t").substitute("t", &g).unwrap(), p("s^-2 + s^2"));
        assert_eq!(p("t^-3").substitute("t", &p("-s")).unwrap(), p("-s^-3"));
        assert!(matches!(p("t").substitute("t", &p("s + 1")), Err(RingError::NonUnitImage(_))));
        assert!(matches!(p("t").substitute("t", &p("2*s")), Err(RingError::NonUnitImage(_))));
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("s^2 - s^-2").exact_div(&p("s - s^-1")).unwrap(), p("s + s^-1"));
        let q = p("3 - 7*s^4 + s^-1");
        assert_eq!(q.exact_div(&LaurentPoly::one()).unwrap(), q);
        // s + 1 = (s - 1) + 2 leaves remainder 2
        assert!(matches!(p("s + 1").exact_div(&p("s - 1")), Err(RingError::NotDivisible(_))));
        assert!(p("2*s").exact_div(&p("4")).is_err());
        assert!(p("s").exact_div(&LaurentPoly::zero()).is_err());
        let two_var = &p("q - t^2 + 3*q*t") * &p("q^-1 + t");
        assert_eq!(two_var.exact_div(&p("q^-1 + t")).unwrap(), p("q - t^2 + 3*q*t"));
        assert!(p("q + t").exact_div(&p("q - t")).is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(p("-t").pow(3).unwrap(), p("-t^3"));
        assert_eq!(p("-t").pow(-2).unwrap(), p("t^-2"));
        assert_eq!(p("1 + t").pow(0).unwrap(), LaurentPoly::one());
        assert!(p("1 + t").pow(-1).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly(vars: &'static [&'static str]) -> impl Strategy<Value = LaurentPoly> {
            proptest::collection::vec((proptest::collection::vec(-3i32..=3, vars.len()), -5i64..=5), 0..5).prop_map(
                move |ts| LaurentPoly::from_terms(vars, ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))).unwrap(),
            )
        }

        fn nonzero(vars: &'static [&'static str]) -> impl Strategy<Value = LaurentPoly> {
            poly(vars).prop_filter("nonzero", |p| !p.is_zero())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(500))]

            #[test]
            fn ring_axioms_one_var(a in poly(&["t"]), b in poly(&["t"]), c in poly(&["t"])) {
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert!((&a - &a).is_zero());
                prop_assert!((&a * &LaurentPoly::zero()).is_zero());
            }

            #[test]
            fn ring_axioms_two_vars(a in poly(&["q", "t"]), b in poly(&["q", "t"]), c in poly(&["q", "t"])) {
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            }

            #[test]
            fn division_inverts_multiplication(a in poly(&["q", "t"]), b in nonzero(&["q", "t"])) {
                prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
            }

            #[test]
            fn substitution_is_a_ring_hom(a in poly(&["s", "t"]), b in poly(&["s", "t"]), k in -3i32..=3, neg in any::<bool>()) {
                let img = LaurentPoly::monomial(if neg { -1 } else { 1 }, &[("s", k)]);
                let g = |x: &LaurentPoly| x.substitute("t", &img).unwrap();
                prop_assert_eq!(g(&(&a + &b)), &g(&a) + &g(&b));
                prop_assert_eq!(g(&(&a * &b)), &g(&a) * &g(&b));
            }

            #[test]
            fn print_parse_round_trip(a in poly(&["q", "t"])) {
                prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
            }
        }
    }
}
