//! Exact arithmetic in quadratic extensions of the rationals.
//!
//! A [`Quadratic`] holds `rational + surd * sqrt(radicand)` with exact
//! rational coefficients. Probabilities like `(10 + sqrt(97))/24` stay exact
//! through sums, products and comparisons, so independence identities and
//! interiority conditions can be decided without floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar shared across the crate.
pub type Rational = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// An element of the quadratic field Q(sqrt(radicand)).
///
/// Invariants kept by every constructor:
/// - `surd == 0` implies `radicand == 0`,
/// - a nonzero `radicand` is square-free and greater than 1,
///
/// which makes the representation canonical: two values are equal iff their
/// fields are equal componentwise (`PartialEq` derives structurally).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadratic {
    rational: Rational,
    surd: Rational,
    radicand: u64,
}

/// Splits `n` as `square * free` with `free` square-free.
fn extract_square(n: u64) -> (u64, u64) {
    let mut free = n;
    let mut root = 1u64;
    let mut f = 2u64;
    while f * f <= free {
        while free % (f * f) == 0 {
            free /= f * f;
            root *= f;
        }
        f += 1;
    }
    (root, free)
}

impl Quadratic {
    /// Builds `rational + surd * sqrt(radicand)`, normalising the radicand.
    pub fn new(rational: Rational, surd: Rational, radicand: u64) -> Self {
        if surd.is_zero() || radicand == 0 {
            return Self {
                rational,
                surd: Rational::zero(),
                radicand: 0,
            };
        }
        let (root, free) = extract_square(radicand);
        let surd = surd * Rational::from(BigInt::from(root));
        if free == 1 {
            Self {
                rational: rational + surd,
                surd: Rational::zero(),
                radicand: 0,
            }
        } else {
            Self {
                rational,
                surd,
                radicand: free,
            }
        }
    }

    pub fn from_rational(rational: Rational) -> Self {
        Self {
            rational,
            surd: Rational::zero(),
            radicand: 0,
        }
    }

    pub fn from_integer(value: i64) -> Self {
        Self::from_rational(rat(value, 1))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn surd_part(&self) -> &Rational {
        &self.surd
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    /// Exact rational value, or `None` when a surd term is present.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.surd.is_zero() {
            Some(&self.rational)
        } else {
            None
        }
    }

    /// Exact sign: -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        if self.surd.is_zero() {
            return sign_of(&self.rational);
        }
        if self.rational.is_zero() {
            return sign_of(&self.surd);
        }
        let sr = sign_of(&self.rational);
        let ss = sign_of(&self.surd);
        if sr == ss {
            return sr;
        }
        // Opposite signs: compare rational^2 against surd^2 * d exactly.
        let lhs = &self.rational * &self.rational;
        let rhs = &self.surd * &self.surd * Rational::from(BigInt::from(self.radicand));
        match lhs.cmp(&rhs) {
            Ordering::Greater => sr,
            Ordering::Less => ss,
            Ordering::Equal => 0,
        }
    }

    /// Exact check for membership in the closed unit interval.
    pub fn in_unit_interval(&self) -> bool {
        self.signum() >= 0 && (Self::one() - self.clone()).signum() >= 0
    }

    pub fn to_f64(&self) -> f64 {
        let mut value = self.rational.to_f64().unwrap_or(f64::NAN);
        if !self.surd.is_zero() {
            value += self.surd.to_f64().unwrap_or(f64::NAN) * (self.radicand as f64).sqrt();
        }
        value
    }

    fn unified_radicand(&self, other: &Self) -> u64 {
        match (self.radicand, other.radicand) {
            (0, d) | (d, 0) => d,
            (a, b) if a == b => a,
            (a, b) => panic!("mixed quadratic fields: sqrt({a}) vs sqrt({b})"),
        }
    }

    /// Serialised probability form: `a/b`, optionally `+c/d*sqrt` / `-c/d*sqrt`
    /// with the radicand declared elsewhere.
    pub fn to_prob_string(&self) -> String {
        if self.surd.is_zero() {
            return format_rational(&self.rational);
        }
        let tail = if self.surd.is_negative() {
            format!("-{}*sqrt", format_rational(&-self.surd.clone()))
        } else {
            format!("+{}*sqrt", format_rational(&self.surd))
        };
        format!("{}{}", format_rational(&self.rational), tail)
    }
}

fn sign_of(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Add for Quadratic {
    type Output = Quadratic;
    fn add(self, rhs: Quadratic) -> Quadratic {
        let d = self.unified_radicand(&rhs);
        Quadratic::new(self.rational + rhs.rational, self.surd + rhs.surd, d)
    }
}

impl Sub for Quadratic {
    type Output = Quadratic;
    fn sub(self, rhs: Quadratic) -> Quadratic {
        self + (-rhs)
    }
}

impl Neg for Quadratic {
    type Output = Quadratic;
    fn neg(self) -> Quadratic {
        Quadratic {
            rational: -self.rational,
            surd: -self.surd,
            radicand: self.radicand,
        }
    }
}

impl Mul for Quadratic {
    type Output = Quadratic;
    fn mul(self, rhs: Quadratic) -> Quadratic {
        let d = self.unified_radicand(&rhs);
        let d_rat = Rational::from(BigInt::from(d));
        let rational = &self.rational * &rhs.rational + &self.surd * &rhs.surd * d_rat;
        let surd = &self.rational * &rhs.surd + &self.surd * &rhs.rational;
        Quadratic::new(rational, surd, d)
    }
}

impl PartialOrd for Quadratic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.radicand != 0 && other.radicand != 0 && self.radicand != other.radicand {
            return None;
        }
        Some(match (self.clone() - other.clone()).signum() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }
}

impl fmt::Display for Quadratic {
    /// Common-denominator form, e.g. `(10+√97)/24`, `1/8`, `√97/12`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            return write!(f, "{}", format_rational(&self.rational));
        }
        let denom = num::integer::lcm(
            self.rational.denom().clone(),
            self.surd.denom().clone(),
        );
        let x = self.rational.numer() * (&denom / self.rational.denom());
        let y = self.surd.numer() * (&denom / self.surd.denom());
        let surd_txt = if y.is_one() {
            format!("√{}", self.radicand)
        } else if (-y.clone()).is_one() {
            format!("-√{}", self.radicand)
        } else {
            format!("{}√{}", y, self.radicand)
        };
        let numer_txt = if x.is_zero() {
            surd_txt
        } else if y.is_negative() {
            format!("{}{}", x, surd_txt)
        } else {
            format!("{}+{}", x, surd_txt)
        };
        if denom.is_one() {
            write!(f, "{}", numer_txt)
        } else if x.is_zero() {
            write!(f, "{}/{}", numer_txt, denom)
        } else {
            write!(f, "({})/{}", numer_txt, denom)
        }
    }
}

/// Parses a probability string.
///
/// Accepted shapes: `3`, `1/8`, `0.125`, `10/24+1/24*sqrt`, `5/12-1/24*sqrt97`,
/// `sqrt97/24` is not accepted — the surd coefficient always precedes `sqrt`.
/// A bare `sqrt` takes the radicand from `declared`; `sqrtNN` must agree with
/// `declared` when both are present.
pub fn parse_prob(text: &str, declared: Option<u64>) -> Result<Quadratic> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty probability string".into()));
    }
    // Split into signed terms at top level.
    let mut terms: Vec<(i32, &str)> = Vec::new();
    let mut start = 0usize;
    let mut sign = 1i32;
    let bytes = text.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && i > start {
            terms.push((sign, &text[start..i]));
            sign = if c == '-' { -1 } else { 1 };
            start = i + 1;
        } else if (c == '+' || c == '-') && i == start {
            if c == '-' {
                sign = -sign;
            }
            start = i + 1;
        }
        i += 1;
    }
    terms.push((sign, &text[start..]));

    let mut out = Quadratic::zero();
    for (sign, term) in terms {
        let term = term.trim();
        let value = parse_term(term, declared)?;
        let signed = if sign < 0 { -value } else { value };
        out = out + signed;
    }
    Ok(out)
}

fn parse_term(term: &str, declared: Option<u64>) -> Result<Quadratic> {
    if let Some(pos) = term.find("sqrt") {
        let coef_text = term[..pos].trim().trim_end_matches('*').trim();
        let rad_text = term[pos + 4..].trim();
        let coef = if coef_text.is_empty() {
            Rational::one()
        } else {
            parse_rational(coef_text)?
        };
        let radicand = if rad_text.is_empty() {
            declared.ok_or_else(|| {
                Error::Parse(format!("`{term}` uses sqrt with no declared radicand"))
            })?
        } else {
            let given: u64 = rad_text
                .parse()
                .map_err(|_| Error::Parse(format!("bad radicand in `{term}`")))?;
            if let Some(d) = declared {
                if d != given {
                    return Err(Error::Parse(format!(
                        "radicand {given} conflicts with declared {d}"
                    )));
                }
            }
            given
        };
        Ok(Quadratic::new(Rational::zero(), coef, radicand))
    } else {
        Ok(Quadratic::from_rational(parse_rational(term)?))
    }
}

fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    if let Some((numer, denom)) = text.split_once('/') {
        let n: BigInt = numer
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator `{numer}`")))?;
        let d: BigInt = denom
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator `{denom}`")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{text}`")));
        }
        Ok(Rational::new(n, d))
    } else if let Some((whole, frac)) = text.split_once('.') {
        let whole = if whole.is_empty() { "0" } else { whole };
        let w: BigInt = whole
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal `{text}`")))?;
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal `{text}`")));
        }
        let digits: BigInt = frac.parse().unwrap();
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let negative = text.trim_start().starts_with('-');
        let frac_part = Rational::new(digits, scale);
        let whole_part = Rational::from(w);
        Ok(if negative {
            whole_part - frac_part
        } else {
            whole_part + frac_part
        })
    } else {
        let n: BigInt = text
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational `{text}`")))?;
        Ok(Rational::from(n))
    }
}
