//! Exact sparse multivariate polynomials with rational coefficients.
//!
//! Variables are named by identifiers (edge ids such as `a`, `e1`, `t3`).
//! Terms are kept in graded-lex order: total degree descending, then the
//! exponent vector (variables sorted by name) compared lexicographically,
//! larger first. That order is also the rendering order of
//! [`Polynomial::canonical_string`], so equal polynomials print identically.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("missing value for variable `{0}`")]
    MissingVariable(String),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// A product of variables with positive exponents, sorted by variable name.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Arc<str>, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(name: &str) -> Self {
        Self::from_pairs([(name, 1)])
    }

    pub fn from_pairs<'a, I: IntoIterator<Item = (&'a str, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<&str, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_default() += e;
        }
        Monomial {
            factors: map
                .into_iter()
                .filter(|&(_, e)| e > 0)
                .map(|(v, e)| (Arc::from(v), e))
                .collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.factors
            .iter()
            .find(|(v, _)| &**v == var)
            .map_or(0, |(_, e)| *e)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&str, u32)> {
        self.factors.iter().map(|(v, e)| (&**v, *e))
    }

    /// The monomial with `var` removed.
    pub fn without(&self, var: &str) -> Monomial {
        Monomial {
            factors: self.factors.iter().filter(|(v, _)| &**v != var).cloned().collect(),
        }
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        // Exponent vectors over the sorted union of variables; the first
        // differing coordinate decides, a larger exponent comes first.
        let (a, b) = (&self.factors, &other.factors);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Less,
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Equal => match eb.cmp(ea) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o,
                    },
                },
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sparse polynomial over the rationals in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn var(name: &str) -> Self {
        Self::term(Rational::one(), Monomial::var(name))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, var: &str) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).min().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Sorted list of variables occurring in the polynomial.
    pub fn variables(&self) -> Vec<String> {
        let mut vs: Vec<String> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().map(|(v, _)| v.to_string()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Coefficients of the powers of `var`, each a polynomial in the rest.
    pub fn coefficients_in(&self, var: &str) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exponent(var))
                .or_default()
                .add_term(m.without(var), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Replace each variable by a polynomial (variables not in `subs` stay).
    pub fn substitute(&self, subs: &HashMap<String, Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            let mut rest = Vec::new();
            for (v, e) in m.factors() {
                match subs.get(v) {
                    Some(p) => t = &t * &p.pow(e),
                    None => rest.push((v, e)),
                }
            }
            t = &t * &Polynomial::term(Rational::one(), Monomial::from_pairs(rest));
            out += &t;
        }
        out
    }

    pub fn evaluate(&self, assignment: &HashMap<String, Rational>) -> Result<Rational, PolyError> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors() {
                let x = assignment
                    .get(v)
                    .ok_or_else(|| PolyError::MissingVariable(v.to_string()))?;
                t *= pow_rat(x, e);
            }
            total += t;
        }
        Ok(total)
    }

    /// Evaluation where each variable maps to an integer; exact over `BigInt`
    /// provided all coefficients are integers.
    pub fn evaluate_integer(&self, assignment: &HashMap<&str, BigInt>) -> Option<BigInt> {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            let mut t = c.to_integer();
            for (v, e) in m.factors() {
                t *= num_traits::pow(assignment.get(v)?.clone(), e as usize);
            }
            total += t;
        }
        Some(total)
    }

    pub fn canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                s.push_str(&m.to_string());
            } else {
                s.push_str(&fmt_rational(&mag));
                s.push('*');
                s.push_str(&m.to_string());
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<Polynomial, PolyError> {
        Parser::new(text).parse()
    }
}

fn pow_rat(x: &Rational, e: u32) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.canonical_string())
    }
}

impl std::str::FromStr for Polynomial {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Polynomial::parse(s)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Polynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl MulAssign<&Polynomial> for Polynomial {
    fn mul_assign(&mut self, rhs: &Polynomial) {
        *self = &*self * rhs;
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        let mut acc = Polynomial::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl<'a> std::iter::Sum<&'a Polynomial> for Polynomial {
    fn sum<I: Iterator<Item = &'a Polynomial>>(iter: I) -> Self {
        let mut acc = Polynomial::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        let mut acc = Polynomial::one();
        for p in iter {
            acc *= &p;
        }
        acc
    }
}

/// Rank over the rationals of the coefficient matrix whose rows are `ps`.
pub fn linear_rank(ps: &[Polynomial]) -> usize {
    let mut cols: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for p in ps {
        for m in p.terms.keys() {
            let next = cols.len();
            cols.entry(m).or_insert(next);
        }
    }
    let rows: Vec<Vec<Rational>> = ps
        .iter()
        .map(|p| {
            let mut row = vec![Rational::zero(); cols.len()];
            for (m, c) in &p.terms {
                row[cols[m]] = c.clone();
            }
            row
        })
        .collect();
    matrix_rank(rows)
}

/// Gaussian elimination rank of a dense rational matrix.
pub fn matrix_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let pivot = rows[rank][col].clone();
        let prow: Vec<Rational> = rows[rank].iter().map(|x| x / &pivot).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&prow).skip(col) {
                    *x -= &f * p;
                }
            }
        }
        rows[rank] = prow;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            src,
        }
    }

    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Polynomial, PolyError> {
        let mut out = Polynomial::zero();
        let mut sign = Rational::one();
        match self.peek() {
            Some('-') | Some('−') => {
                sign = -sign;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            None => return Err(self.err("empty input")),
            _ => {}
        }
        loop {
            let t = self.term()?;
            out += &t.scale(&sign);
            match self.peek() {
                None => break,
                Some('+') => {
                    sign = Rational::one();
                    self.pos += 1;
                }
                Some('-') | Some('−') => {
                    sign = -Rational::one();
                    self.pos += 1;
                }
                Some(_) => return Err(self.err("expected `+` or `-`")),
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn number(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<BigInt>().map_err(|_| self.err("bad number"))
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let mut value = Rational::from_integer(n);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.number()?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    value /= Rational::from_integer(d);
                }
                Ok(Polynomial::constant(value))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let mut e = 1u32;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    e = self
                        .number()?
                        .to_u32()
                        .ok_or_else(|| self.err("exponent too large"))?;
                }
                Ok(Polynomial::term(
                    Rational::one(),
                    Monomial::from_pairs([(name.as_str(), e)]),
                ))
            }
            Some('(') => {
                self.pos += 1;
                let start = self.pos;
                let mut depth = 1;
                while self.pos < self.chars.len() && depth > 0 {
                    match self.chars[self.pos] {
                        '(' => depth += 1,
                        ')' => depth -= 1,
                        _ => {}
                    }
                    self.pos += 1;
                }
                if depth != 0 {
                    return Err(self.err("unbalanced parenthesis"));
                }
                let inner: String = self.chars[start..self.pos - 1].iter().collect();
                let p = Parser::new(&inner).parse()?;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    let e = self
                        .number()?
                        .to_u32()
                        .ok_or_else(|| self.err("exponent too large"))?;
                    return Ok(p.pow(e));
                }
                Ok(p)
            }
            _ => Err(self.err("expected a coefficient or variable")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s).unwrap()
    }

    #[test]
    fn ring_identities() {
        assert_eq!(&p("a+b") * &p("a-b"), p("a^2 - b^2"));
        assert_eq!(&p("a*c+b*d") * &Polynomial::one(), p("a*c+b*d"));
        assert_eq!(
            p("a*c+b*d").pow(2).canonical_string(),
            "a^2*c^2 + 2*a*b*c*d + b^2*d^2"
        );
    }

    #[test]
    fn evaluation() {
        let env = |xs: &[(&str, Rational)]| -> HashMap<String, Rational> {
            xs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
        };
        let one = env(&[("a", int(1)), ("b", int(1)), ("c", int(1)), ("d", int(1))]);
        assert_eq!(p("a*c+b*d").evaluate(&one).unwrap(), int(2));
        assert_eq!(
            p("a^3*c^3").evaluate(&env(&[("a", int(2)), ("c", rat(1, 2))])).unwrap(),
            int(1)
        );
        assert_eq!(
            p("b^2*d").evaluate(&env(&[("b", int(3)), ("d", int(2))])).unwrap(),
            int(18)
        );
        assert_eq!(
            p("b^2*d").evaluate(&env(&[("b", int(3))])),
            Err(PolyError::MissingVariable("d".into()))
        );
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(Polynomial::zero().canonical_string(), "0");
        assert_eq!(p("b*d + a*c").canonical_string(), "a*c + b*d");
        let f = p("3*(a^2*b*c^2*d + a*b^2*c*d^2) + a^3*c^3 + b^3*d^3");
        assert_eq!(
            f.canonical_string(),
            "a^3*c^3 + 3*a^2*b*c^2*d + 3*a*b^2*c*d^2 + b^3*d^3"
        );
        assert_eq!(p("-a + 1/2").canonical_string(), "-a + 1/2");
        assert_eq!(p("x - 2*y").canonical_string(), "x - 2*y");
        assert_eq!(p("  3 * a ^ 2 *b*c^2*d "), p("3*a^2*b*c^2*d"));
    }

    #[test]
    fn parse_roundtrip_unicode_minus() {
        assert_eq!(p("a − b"), p("a - b"));
        assert!(Polynomial::parse("a +").is_err());
        assert!(Polynomial::parse("1/0").is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(linear_rank(&[p("a+b"), p("a-b"), p("2*a")]), 2);
        assert_eq!(linear_rank(&[p("a"), p("b"), p("a+b")]), 2);
        assert_eq!(linear_rank(&[]), 0);
        assert_eq!(linear_rank(&[Polynomial::zero()]), 0);
    }

    #[test]
    fn coefficients_in_variable() {
        let f = p("t^2*a + t*b + c + t*a");
        let cs = f.coefficients_in("t");
        assert_eq!(cs[&0], p("c"));
        assert_eq!(cs[&1], p("a+b"));
        assert_eq!(cs[&2], p("a"));
    }
}
