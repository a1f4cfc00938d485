//! Rational octonions over the basis `1, i_0, ..., i_6`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::AlbertError;
use crate::exact::{format_rational, parse_rational, Rational};

/// `UNIT_PRODUCTS[s][t] = (sign, k)` with `i_s i_t = sign * i_k`, for `s != t`
/// (`k` is unused on the diagonal, where `i_s i_s = -1`).
const UNIT_PRODUCTS: [[(i8, u8); 7]; 7] = [
    [(-1, 0), (1, 3), (1, 6), (-1, 1), (1, 5), (-1, 4), (-1, 2)],
    [(-1, 3), (-1, 0), (1, 4), (1, 0), (-1, 2), (1, 6), (-1, 5)],
    [(-1, 6), (-1, 4), (-1, 0), (1, 5), (1, 1), (-1, 3), (1, 0)],
    [(1, 1), (-1, 0), (-1, 5), (-1, 0), (1, 6), (1, 2), (-1, 4)],
    [(-1, 5), (1, 2), (-1, 1), (-1, 6), (-1, 0), (1, 0), (1, 3)],
    [(1, 4), (-1, 6), (1, 3), (-1, 2), (-1, 0), (-1, 0), (1, 1)],
    [(1, 2), (1, 5), (-1, 0), (1, 4), (-1, 3), (-1, 1), (-1, 0)],
];

/// Product of basis units `u_a u_b` where `u_0 = 1`, `u_{s+1} = i_s`:
/// `(sign, index)`.
pub fn unit_product(a: usize, b: usize) -> (i8, usize) {
    match (a, b) {
        (0, b) => (1, b),
        (a, 0) => (1, a),
        (a, b) if a == b => (-1, 0),
        (a, b) => {
            let (s, k) = UNIT_PRODUCTS[a - 1][b - 1];
            (s, k as usize + 1)
        }
    }
}

/// Unit products derived from the rule that `(i_t, i_{t+1}, i_{t+3})`
/// multiply like the quaternion units `(i, j, k)`; used to audit the table.
pub fn unit_product_from_triples(a: usize, b: usize) -> (i8, usize) {
    if a == 0 || b == 0 || a == b {
        return unit_product(a, b);
    }
    let (s, t) = (a - 1, b - 1);
    for base in 0..7 {
        let triple = [base, (base + 1) % 7, (base + 3) % 7];
        for r in 0..3 {
            let (x, y, z) = (triple[r], triple[(r + 1) % 3], triple[(r + 2) % 3]);
            if (s, t) == (x, y) {
                return (1, z + 1);
            }
            if (s, t) == (y, x) {
                return (-1, z + 1);
            }
        }
    }
    unreachable!("every pair of distinct units lies in one triple")
}

/// An octonion `c_0 + sum_s c_{s+1} i_s`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Octonion {
    pub coords: [Rational; 8],
}

impl Octonion {
    pub fn zero() -> Self {
        Octonion {
            coords: core::array::from_fn(|_| Rational::zero()),
        }
    }

    pub fn real(r: Rational) -> Self {
        let mut o = Octonion::zero();
        o.coords[0] = r;
        o
    }

    /// The unit `u_k` (`u_0 = 1`, `u_{s+1} = i_s`).
    pub fn unit(k: usize) -> Self {
        let mut o = Octonion::zero();
        o.coords[k] = Rational::one();
        o
    }

    /// `i_s`.
    pub fn imaginary(s: usize) -> Self {
        Octonion::unit(s + 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Octonion {
            coords: core::array::from_fn(|k| &self.coords[k] * r),
        }
    }

    /// Parses expressions such as `-1-i1+4i2` or `5i0+4i6` or `0`.
    pub fn parse(text: &str) -> Result<Self, AlbertError> {
        let bad = || AlbertError::BadOctonion(String::from(text));
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let mut out = Octonion::zero();
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for k in 1..=bytes.len() {
            if k == bytes.len() || bytes[k] == b'+' || bytes[k] == b'-' {
                let term = &s[start..k];
                let (neg, body) = match term.as_bytes()[0] {
                    b'-' => (true, &term[1..]),
                    b'+' => (false, &term[1..]),
                    _ => (false, term),
                };
                terms.push((neg, body));
                start = k;
            }
        }
        for (neg, body) in terms {
            let (coef, unit) = match body.find('i') {
                Some(p) => {
                    let idx: usize = body[p + 1..].parse().map_err(|_| bad())?;
                    if idx > 6 {
                        return Err(bad());
                    }
                    let c = if p == 0 {
                        Rational::one()
                    } else {
                        parse_rational(&body[..p]).map_err(|_| bad())?
                    };
                    (c, idx + 1)
                }
                None => (parse_rational(body).map_err(|_| bad())?, 0),
            };
            out.coords[unit] += if neg { -coef } else { coef };
        }
        Ok(out)
    }
}

impl fmt::Debug for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let text = format_rational(c);
            if !first && !text.starts_with('-') {
                f.write_str("+")?;
            }
            first = false;
            match k {
                0 => f.write_str(&text)?,
                _ if c.is_one() => write!(f, "i{}", k - 1)?,
                _ if *c == -Rational::one() => write!(f, "-i{}", k - 1)?,
                _ => write!(f, "{text}i{}", k - 1)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for &Octonion {
    type Output = Octonion;
    fn add(self, o: &Octonion) -> Octonion {
        Octonion {
            coords: core::array::from_fn(|k| &self.coords[k] + &o.coords[k]),
        }
    }
}

impl Sub for &Octonion {
    type Output = Octonion;
    fn sub(self, o: &Octonion) -> Octonion {
        Octonion {
            coords: core::array::from_fn(|k| &self.coords[k] - &o.coords[k]),
        }
    }
}

impl Neg for &Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion {
            coords: core::array::from_fn(|k| -&self.coords[k]),
        }
    }
}

impl Mul for &Octonion {
    type Output = Octonion;
    fn mul(self, o: &Octonion) -> Octonion {
        oct_mul(self, o)
    }
}

/// Bilinear extension of the unit multiplication table.
pub fn oct_mul(x: &Octonion, y: &Octonion) -> Octonion {
    let mut out = Octonion::zero();
    for (a, ca) in x.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (b, cb) in y.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (s, k) = unit_product(a, b);
            let v = ca * cb;
            if s > 0 {
                out.coords[k] += v;
            } else {
                out.coords[k] -= v;
            }
        }
    }
    out
}

/// Fixes the real part and negates the imaginary parts.
pub fn oct_conj(x: &Octonion) -> Octonion {
    Octonion {
        coords: core::array::from_fn(|k| {
            if k == 0 {
                x.coords[0].clone()
            } else {
                -&x.coords[k]
            }
        }),
    }
}

/// `N(x) = x conj(x)`, which must be real.
pub fn oct_norm(x: &Octonion) -> Result<Rational, AlbertError> {
    let p = oct_mul(x, &oct_conj(x));
    if !p.is_real() {
        return Err(AlbertError::NonScalarNorm);
    }
    Ok(p.coords[0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn o(s: &str) -> Octonion {
        Octonion::parse(s).unwrap()
    }

    #[test]
    fn table_entries() {
        assert_eq!(&o("i0") * &o("i1"), o("i3"));
        assert_eq!(&o("i1") * &o("i0"), o("-i3"));
        let x = o("3-2i4+1/2i6");
        assert_eq!(&Octonion::real(int(1)) * &x, x);
    }

    #[test]
    fn table_matches_triple_rule() {
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(
                    unit_product(a, b),
                    unit_product_from_triples(a, b),
                    "({a}, {b})"
                );
            }
        }
    }

    #[test]
    fn norms() {
        assert_eq!(oct_norm(&o("i3")).unwrap(), int(1));
        assert_eq!(oct_norm(&o("1+i0")).unwrap(), int(2));
        let (x, y) = (o("1+i1"), o("i2-i5"));
        assert_eq!(oct_norm(&(&x * &y)).unwrap(), int(4));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(alloc::format!("{:?}", o("-1-i1+4i2+4i4")), "-1-i1+4i2+4i4");
        assert_eq!(alloc::format!("{:?}", o("0")), "0");
        assert!(Octonion::parse("i9").is_err());
        assert!(Octonion::parse("").is_err());
    }
}
