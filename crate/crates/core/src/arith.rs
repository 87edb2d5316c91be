//! Exact scalar and vector helpers shared by every geometric routine.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision integer.
pub type Integer = BigInt;
/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;
/// A rational coordinate vector.
pub type QVector = Vec<Rational>;
/// An integer coordinate vector.
pub type ZVector = Vec<Integer>;

pub fn int(n: i64) -> Integer {
    Integer::from(n)
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(Integer::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub fn qvec(coords: &[i64]) -> QVector {
    coords.iter().map(|&c| rat(c)).collect()
}

pub fn zvec(coords: &[i64]) -> ZVector {
    coords.iter().map(|&c| int(c)).collect()
}

pub fn to_rational(v: &[Integer]) -> QVector {
    v.iter()
        .map(|c| Rational::from_integer(c.clone()))
        .collect()
}

pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|c| c.is_integer())
}

/// Converts an integral rational vector to integers. Returns `None` if any entry is fractional.
pub fn to_integer(v: &[Rational]) -> Option<ZVector> {
    v.iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}

pub fn dot_q(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_z(a: &[Integer], b: &[Integer]) -> Integer {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Integer::zero(), |acc, (x, y)| acc + x * y)
}

/// Pairing of an integer covector with a rational point.
pub fn dot_zq(a: &[Integer], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() {
            acc += y * x;
        }
    }
    acc
}

pub fn add_q(a: &[Rational], b: &[Rational]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_q(a: &[Rational], b: &[Rational]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_q(a: &[Rational], s: &Rational) -> QVector {
    a.iter().map(|x| x * s).collect()
}

pub fn gcd_all(v: &[Integer]) -> Integer {
    v.iter().fold(Integer::zero(), |g, x| g.gcd(x))
}

/// Divides by the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(v: ZVector) -> ZVector {
    let g = gcd_all(&v);
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

/// The primitive integer vector pointing in the same direction as `v`.
pub fn primitive_direction(v: &[Rational]) -> ZVector {
    let l = v.iter().fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: ZVector = v.iter().map(|x| (x * &l).to_integer()).collect();
    primitive(scaled)
}

/// Scales a rational row to an integer row with the same sign pattern.
pub fn clear_denominators(v: &[Rational]) -> ZVector {
    let l = v.iter().fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| (x * &l).to_integer()).collect()
}

pub fn is_zero_vector<T: Zero>(v: &[T]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// `p/q` for fractions, the bare integer otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn format_qvector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(","))
}

pub fn format_zvector(v: &[Integer]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn floor(x: &Rational) -> Integer {
    x.floor().to_integer()
}

pub fn ceil(x: &Rational) -> Integer {
    x.ceil().to_integer()
}

pub fn sign(x: &Integer) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Serde adapters writing integers and rationals as decimal strings (`"3"`, `"-1/2"`).
pub mod ser {
    use serde::ser::{SerializeSeq, Serializer};

    use super::{format_rational, Integer, Rational};

    pub fn zvector<S: Serializer>(v: &[Integer], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn zvectors<S: Serializer>(vs: &[Vec<Integer>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = vs
            .iter()
            .map(|v| v.iter().map(|x| x.to_string()).collect())
            .collect();
        s.collect_seq(rows)
    }

    pub fn qvector<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn rational_option<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&format_rational(x)),
            None => s.serialize_none(),
        }
    }
}
