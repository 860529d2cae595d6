use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Integer Laurent polynomial in `t` (homological) and `q`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i64, i64), i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub t: i64,
    pub q: i64,
    pub c: i64,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(t: i64, q: i64, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(t, q, c);
        p
    }

    /// `Σ c t^t q^q` over the given `(t, q, c)` triples.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64, i64)>) -> Self {
        let mut p = Self::zero();
        for (t, q, c) in terms {
            p.add_term(t, q, c);
        }
        p
    }

    pub fn add_term(&mut self, t: i64, q: i64, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry((t, q)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&(t, q));
        }
    }

    pub fn coeff(&self, t: i64, q: i64) -> i64 {
        self.terms.get(&(t, q)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in `(t, q)` order.
    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms.iter().map(|(&(t, q), &c)| Term { t, q, c })
    }

    /// Multiplies by `t^dt q^dq`.
    pub fn shift(&self, dt: i64, dq: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&(t, q), &c)| ((t + dt, q + dq), c)).collect() }
    }

    /// Keeps the terms satisfying `keep(t, q)`.
    pub fn filter(&self, keep: impl Fn(i64, i64) -> bool) -> Self {
        Self { terms: self.terms.iter().filter(|(&(t, q), _)| keep(t, q)).map(|(&k, &c)| (k, c)).collect() }
    }

    /// Substitutes `t = -1`, giving a polynomial in `q` (stored with `t = 0`).
    pub fn at_t_minus_one(&self) -> Self {
        Self::from_terms(self.terms().map(|m| (0, m.q, if m.t.rem_euclid(2) == 0 { m.c } else { -m.c })))
    }

    pub fn max_t(&self) -> Option<i64> {
        self.terms.keys().map(|&(t, _)| t).max()
    }

    pub fn min_t(&self) -> Option<i64> {
        self.terms.keys().map(|&(t, _)| t).min()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.terms().collect::<Vec<_>>()).expect("terms serialize")
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for m in rhs.terms() {
            out.add_term(m.t, m.q, m.c);
        }
        out
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2 { terms: self.terms.iter().map(|(&k, &c)| (k, -c)).collect() }
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for a in self.terms() {
            for b in rhs.terms() {
                out.add_term(a.t + b.t, a.q + b.q, a.c * b.c);
            }
        }
        out
    }
}

macro_rules! by_value {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly2 {
            type Output = LaurentPoly2;
            fn $f(self, rhs: LaurentPoly2) -> LaurentPoly2 {
                (&self).$f(&rhs)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, m) in self.terms().enumerate() {
            let (sign, abs) = if m.c < 0 { ("-", -m.c) } else { ("+", m.c) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mut parts = Vec::new();
            if abs != 1 || (m.t == 0 && m.q == 0) {
                parts.push(abs.to_string());
            }
            match m.t {
                0 => {}
                1 => parts.push("t".into()),
                t => parts.push(format!("t^{t}")),
            }
            match m.q {
                0 => {}
                1 => parts.push("q".into()),
                q => parts.push(format!("q^{q}")),
            }
            write!(f, "{}", parts.join(""))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly2({self})")
    }
}

impl Serialize for LaurentPoly2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(d)?;
        Ok(Self::from_terms(terms.into_iter().map(|m| (m.t, m.q, m.c))))
    }
}
