//! Natural numbers large enough to hold codes of finite sequences.
//!
//! Sequence codes square at every step, so a code for a sequence of length
//! 32 has around 2^32 bits. `Nat` keeps values below 2^64 as machine words
//! and every larger value `pair(m, n)` as the tree `(m, n)`, which stays small.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

/// Cantor pairing `(m + n)(m + n + 1)/2 + m`, or `None` past `u64::MAX`.
pub fn pair_nat_checked(m: u64, n: u64) -> Option<u64> {
    let v = pair_u128(m as u128, n as u128)?;
    u64::try_from(v).ok()
}

/// Cantor pairing; panics past `u64::MAX`.
pub fn pair_nat(m: u64, n: u64) -> u64 {
    pair_nat_checked(m, n).expect("pair_nat overflow")
}

pub fn unpair_nat(k: u64) -> (u64, u64) {
    let (m, n) = unpair_u128(k as u128);
    (m as u64, n as u64)
}

fn pair_u128(m: u128, n: u128) -> Option<u128> {
    let s = m.checked_add(n)?;
    let t = if s % 2 == 0 {
        (s / 2).checked_mul(s.checked_add(1)?)?
    } else {
        s.checked_mul((s + 1) / 2)?
    };
    t.checked_add(m)
}

fn isqrt_u128(v: u128) -> u128 {
    if v < 2 {
        return v;
    }
    let mut x = (v as f64).sqrt() as u128;
    while x.checked_mul(x).map_or(true, |sq| sq > v) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).map_or(false, |sq| sq <= v) {
        x += 1;
    }
    x
}

fn unpair_u128(k: u128) -> (u128, u128) {
    // largest s with s(s+1)/2 <= k
    let s = (isqrt_u128(8 * k + 1) - 1) / 2;
    let m = k - s * (s + 1) / 2;
    (m, s - m)
}

fn one() -> BigUint {
    BigUint::from(1u8)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Nat {
    Small(u64),
    /// The value `pair(m, n)`; only used when that value is at least 2^64.
    Big(Arc<(Nat, Nat)>),
}

impl From<u64> for Nat {
    fn from(v: u64) -> Self {
        Nat::Small(v)
    }
}

impl Nat {
    pub fn small(&self) -> Option<u64> {
        match self {
            Nat::Small(v) => Some(*v),
            Nat::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Nat::Small(0))
    }

    pub fn pair(m: Nat, n: Nat) -> Nat {
        if let (Nat::Small(a), Nat::Small(b)) = (&m, &n) {
            let v = pair_u128(*a as u128, *b as u128).expect("u64 pair fits u128");
            if let Ok(v) = u64::try_from(v) {
                return Nat::Small(v);
            }
        }
        Nat::Big(Arc::new((m, n)))
    }

    pub fn unpair(&self) -> (Nat, Nat) {
        match self {
            Nat::Small(k) => {
                let (m, n) = unpair_nat(*k);
                (Nat::Small(m), Nat::Small(n))
            }
            Nat::Big(p) => (p.0.clone(), p.1.clone()),
        }
    }

    fn from_u128(v: u128) -> Nat {
        match u64::try_from(v) {
            Ok(s) => Nat::Small(s),
            Err(_) => {
                let (m, n) = unpair_u128(v);
                Nat::pair(Nat::Small(m as u64), Nat::Small(n as u64))
            }
        }
    }

    pub fn succ(&self) -> Nat {
        match self {
            Nat::Small(v) => Nat::from_u128(*v as u128 + 1),
            Nat::Big(p) => {
                let (m, n) = (&p.0, &p.1);
                match n.pred() {
                    None => Nat::pair(Nat::Small(0), m.succ()),
                    Some(n1) => Nat::pair(m.succ(), n1),
                }
            }
        }
    }

    pub fn pred(&self) -> Option<Nat> {
        match self {
            Nat::Small(0) => None,
            Nat::Small(v) => Some(Nat::Small(v - 1)),
            Nat::Big(p) => {
                let (m, n) = (&p.0, &p.1);
                Some(match m.pred() {
                    Some(m1) => Nat::pair(m1, n.succ()),
                    None => Nat::pair(n.pred().expect("big value"), Nat::Small(0)),
                })
            }
        }
    }

    /// Exact value, if it fits in `max_bits` bits.
    pub fn to_biguint(&self, max_bits: u64) -> Option<BigUint> {
        match self {
            Nat::Small(v) => Some(BigUint::from(*v)),
            Nat::Big(p) => {
                let m = p.0.to_biguint(max_bits)?;
                let n = p.1.to_biguint(max_bits)?;
                let s = &m + &n;
                if 2 * s.bits() > max_bits + 2 {
                    return None;
                }
                let v = (&s * (&s + one())) / BigUint::from(2u8) + m;
                (v.bits() <= max_bits).then_some(v)
            }
        }
    }

    pub fn from_biguint(v: &BigUint) -> Nat {
        if let Ok(s) = u64::try_from(v) {
            return Nat::Small(s);
        }
        let s = ((v * BigUint::from(8u8) + one()).sqrt() - one()) / BigUint::from(2u8);
        let m = v - (&s * (&s + one())) / BigUint::from(2u8);
        let n = &s - &m;
        Nat::pair(Nat::from_biguint(&m), Nat::from_biguint(&n))
    }

    /// `(self mod 2, self / 2)`, computed exactly when the value has at most
    /// `max_bits` bits.
    pub fn halve(&self, max_bits: u64) -> Option<(u64, Nat)> {
        match self {
            Nat::Small(v) => Some((v % 2, Nat::Small(v / 2))),
            Nat::Big(_) => {
                let v = self.to_biguint(max_bits)?;
                let bit = if v.bit(0) { 1 } else { 0 };
                Some((bit, Nat::from_biguint(&(v >> 1u32))))
            }
        }
    }

    /// `2 * self + bit`, computed exactly when the value has at most `max_bits` bits.
    pub fn double_plus(&self, bit: u64, max_bits: u64) -> Option<Nat> {
        match self {
            Nat::Small(v) => Some(Nat::from_u128(2 * (*v as u128) + bit as u128)),
            Nat::Big(_) => {
                let v = self.to_biguint(max_bits)?;
                let w = (v << 1u32) + BigUint::from(bit);
                Some(Nat::from_biguint(&w))
            }
        }
    }
}

impl fmt::Debug for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nat::Small(v) => write!(f, "{v}"),
            Nat::Big(p) => write!(f, "<{:?},{:?}>", p.0, p.1),
        }
    }
}

/// Code of a finite sequence: `code() = 0`, `code(s a) = pair(code s, a) + 1`.
pub fn seq_code(sigma: &[u64]) -> Nat {
    sigma
        .iter()
        .fold(Nat::Small(0), |c, &a| Nat::pair(c, Nat::Small(a)).succ())
}

/// Inverse of [`seq_code`]; `None` if some entry is not a machine word.
pub fn seq_decode(code: &Nat) -> Option<Vec<u64>> {
    let mut out = Vec::new();
    let mut c = code.clone();
    while let Some(p) = c.pred() {
        let (rest, a) = p.unpair();
        out.push(a.small()?);
        c = rest;
    }
    out.reverse();
    Some(out)
}
