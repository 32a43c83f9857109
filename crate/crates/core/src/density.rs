//! Exact comparison of `e / s^c` for a rational exponent `c = p/q`.
//!
//! Cross-powering gives `e1^q · s2^p` against `e2^q · s1^p`. That is done
//! directly while `q` is small. For huge `q` (the exponent `d+1 − ε^(2d)`
//! with tiny `ε`), equality is settled by prime factorization and the sign
//! by certified fixed-point logarithm bounds whose precision doubles until
//! the intervals separate.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// Largest exponent handled by direct powering.
const DIRECT_POWER_LIMIT: u32 = 4096;

fn factor(v: &BigUint) -> BTreeMap<BigUint, i64> {
    let mut out = BTreeMap::new();
    let mut v = v.clone();
    let mut f = BigUint::from(2u32);
    while &f * &f <= v {
        while (&v % &f).is_zero() {
            *out.entry(f.clone()).or_insert(0) += 1;
            v /= &f;
        }
        f += 1u32;
    }
    if v > BigUint::one() {
        *out.entry(v).or_insert(0) += 1;
    }
    out
}

/// `x^a == y^b` for positive rationals.
fn powers_equal(x: &Rational, a: &BigInt, y: &Rational, b: &BigInt) -> bool {
    let mut exps: BTreeMap<BigUint, (i64, i64)> = BTreeMap::new();
    let parts = [
        (x.numer(), 1, true),
        (x.denom(), -1, true),
        (y.numer(), 1, false),
        (y.denom(), -1, false),
    ];
    for (v, sign, first) in parts {
        for (prime, k) in factor(v.magnitude()) {
            let slot = exps.entry(prime).or_default();
            if first {
                slot.0 += sign * k;
            } else {
                slot.1 += sign * k;
            }
        }
    }
    exps.values()
        .all(|&(ex, ey)| (a * BigInt::from(ex) - b * BigInt::from(ey)).is_zero())
}

/// Fixed-point value `value / 2^prec` with absolute error at most `err / 2^prec`.
struct Approx {
    value: BigInt,
    err: BigInt,
}

/// `atanh(a/b)` for `|a/b| <= 1/3`.
fn atanh_fixed(a: &BigInt, b: &BigInt, prec: u32) -> Approx {
    let scale = BigInt::one() << prec;
    let negative = a.is_negative() != b.is_negative();
    let (a, b) = (a.abs(), b.abs());
    let a2 = &a * &a;
    let b2 = &b * &b;
    let mut num = a.clone();
    let mut den = b.clone();
    let mut sum = BigInt::zero();
    let mut terms = 0u64;
    let mut k = 0u64;
    loop {
        let term = (&num * &scale) / (&den * BigInt::from(2 * k + 1));
        terms += 1;
        if term.is_zero() {
            break;
        }
        sum += term;
        num *= &a2;
        den *= &b2;
        k += 1;
    }
    // One ulp of truncation per term plus a geometric tail below 9/8 ulp.
    let err = BigInt::from(terms + 2);
    Approx {
        value: if negative { -sum } else { sum },
        err,
    }
}

/// `ln(num/den)` for positive integers.
fn ln_fixed(num: &BigUint, den: &BigUint, prec: u32) -> Approx {
    let shift = num.bits() as i64 - den.bits() as i64;
    // y = num / (den · 2^shift) lies in (1/2, 2).
    let (yn, yd) = if shift >= 0 {
        (BigInt::from(num.clone()), BigInt::from(den.clone() << shift as u64))
    } else {
        (BigInt::from(num.clone() << (-shift) as u64), BigInt::from(den.clone()))
    };
    let z = atanh_fixed(&(&yn - &yd), &(&yn + &yd), prec);
    let ln2 = atanh_fixed(&BigInt::one(), &BigInt::from(3), prec);
    let k = BigInt::from(shift);
    Approx {
        value: z.value * 2 + &k * &ln2.value * 2,
        err: z.err * 2 + k.abs() * ln2.err * 2,
    }
}

/// Sign of `a·ln(x) − b·ln(y)`, known to be nonzero.
fn log_comparison(x: &Rational, a: &BigInt, y: &Rational, b: &BigInt) -> Ordering {
    let one = Rational::one();
    let lx = if a.is_zero() { Ordering::Equal } else { x.cmp(&one) };
    let ly = if b.is_zero() { Ordering::Equal } else { y.cmp(&one) };
    if lx != ly || lx == Ordering::Equal {
        return if lx == Ordering::Equal { ly.reverse() } else { lx };
    }
    let mut prec = (a.bits().max(b.bits()) + 64) as u32;
    loop {
        let u = ln_fixed(x.numer().magnitude(), x.denom().magnitude(), prec);
        let v = ln_fixed(y.numer().magnitude(), y.denom().magnitude(), prec);
        let center = a * &u.value - b * &v.value;
        let radius = a * &u.err + b * &v.err;
        if &center - &radius > BigInt::zero() {
            return Ordering::Greater;
        }
        if &center + &radius < BigInt::zero() {
            return Ordering::Less;
        }
        prec *= 2;
        assert!(prec < 1 << 24, "logarithm comparison failed to separate");
    }
}

/// Compares `x^a` with `y^b` exactly for positive rationals and
/// nonnegative integer exponents.
pub fn compare_log_powers(x: &Rational, a: &BigInt, y: &Rational, b: &BigInt) -> Ordering {
    assert!(x.is_positive() && y.is_positive(), "bases must be positive");
    assert!(!a.is_negative() && !b.is_negative(), "exponents must be nonnegative");
    if powers_equal(x, a, y, b) {
        return Ordering::Equal;
    }
    let small = |e: &BigInt| e.to_u32().is_some_and(|e| e <= DIRECT_POWER_LIMIT);
    if small(a) && small(b) {
        let left = Pow::pow(x, a.to_u32().unwrap());
        let right = Pow::pow(y, b.to_u32().unwrap());
        return left.cmp(&right);
    }
    log_comparison(x, a, y, b)
}

/// Compares `e1 / s1^c` with `e2 / s2^c` exactly. Sizes must be positive
/// and `c` nonnegative.
pub fn compare(e1: u64, s1: u64, e2: u64, s2: u64, exponent: &Rational) -> Ordering {
    assert!(s1 > 0 && s2 > 0, "sizes must be positive");
    match (e1 == 0, e2 == 0) {
        (true, true) => return Ordering::Equal,
        (true, false) => return Ordering::Less,
        (false, true) => return Ordering::Greater,
        _ => {}
    }
    if s1 == s2 {
        return e1.cmp(&e2);
    }
    // e1^q · s2^p against e2^q · s1^p, i.e. (e1/e2)^q against (s1/s2)^p.
    let ratio = |u: u64, v: u64| Rational::new(BigInt::from(u), BigInt::from(v));
    compare_log_powers(&ratio(e1, e2), exponent.denom(), &ratio(s1, s2), exponent.numer())
}

/// `ceil(eps · s)` for rational `eps`.
pub fn ceil_fraction(eps: &Rational, s: usize) -> usize {
    let v = eps * Rational::from_integer(BigInt::from(s));
    let (q, r) = v.numer().div_rem(v.denom());
    let q = if r.is_positive() { q + 1 } else { q };
    q.to_usize().unwrap_or(usize::MAX)
}
