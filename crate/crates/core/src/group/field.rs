//! The three small fields GF(2), GF(3) and GF(4).
//!
//! Elements are `u8` values below the field order. GF(4) is `{0, 1, w, w+1}`
//! encoded as `0, 1, 2, 3` (bit 0 = constant term, bit 1 = coefficient of
//! `w`) with `w^2 = w + 1`.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    GF2,
    GF3,
    GF4,
}

impl Field {
    pub fn from_order(q: u32) -> Option<Field> {
        match q {
            2 => Some(Field::GF2),
            3 => Some(Field::GF3),
            4 => Some(Field::GF4),
            _ => None,
        }
    }

    pub fn order(self) -> u8 {
        match self {
            Field::GF2 => 2,
            Field::GF3 => 3,
            Field::GF4 => 4,
        }
    }

    pub fn characteristic(self) -> u8 {
        match self {
            Field::GF3 => 3,
            _ => 2,
        }
    }

    pub fn elements(self) -> core::ops::Range<u8> {
        0..self.order()
    }

    pub fn add(self, a: u8, b: u8) -> u8 {
        match self {
            Field::GF3 => (a + b) % 3,
            _ => a ^ b,
        }
    }

    pub fn neg(self, a: u8) -> u8 {
        match self {
            Field::GF3 => (3 - a) % 3,
            _ => a,
        }
    }

    pub fn sub(self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    pub fn mul(self, a: u8, b: u8) -> u8 {
        match self {
            Field::GF2 => a & b,
            Field::GF3 => (a * b) % 3,
            Field::GF4 => {
                let (a0, a1) = (a & 1, a >> 1);
                let (b0, b1) = (b & 1, b >> 1);
                let c0 = (a0 & b0) ^ (a1 & b1);
                let c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
                c0 | (c1 << 1)
            }
        }
    }

    pub fn inv(self, a: u8) -> Option<u8> {
        if a == 0 {
            return None;
        }
        self.elements().find(|&b| self.mul(a, b) == 1)
    }

    /// The involutory automorphism `x -> x^2` of GF(4); the identity on the
    /// prime fields.
    pub fn conj(self, a: u8) -> u8 {
        match self {
            Field::GF4 => self.mul(a, a),
            _ => a,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms() {
        for f in [Field::GF2, Field::GF3, Field::GF4] {
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn gf4_frobenius() {
        let f = Field::GF4;
        // w^2 = w + 1
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.conj(2), 3);
        assert_eq!(f.conj(3), 2);
        for a in f.elements() {
            assert_eq!(f.conj(f.conj(a)), a);
            for b in f.elements() {
                assert_eq!(f.conj(f.add(a, b)), f.add(f.conj(a), f.conj(b)));
                assert_eq!(f.conj(f.mul(a, b)), f.mul(f.conj(a), f.conj(b)));
            }
        }
    }
}
