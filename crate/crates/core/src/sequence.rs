//! The tower recurrence `S_1 = 2`, `S_n = 2^(S_{n-1} + 2)` that sizes the
//! host guaranteed to contain a monochromatic `G_k`, namely `G_N` with
//! `N = S_{2^(k+1)}`.
//!
//! `S_4` has 262147 bits and is computed exactly. `S_5` would need about
//! 2^262146 bits, so from index 5 on values are only described
//! symbolically by their index (the tower height).

use std::fmt;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest bit length [`s_sequence`] will materialize.
pub const BIT_LENGTH_GUARD: u64 = 1 << 24;

/// Exact arbitrary-precision natural number.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigNat(BigUint);

impl BigNat {
    pub fn from_u64(v: u64) -> Self {
        BigNat(BigUint::from(v))
    }

    pub fn pow2(exponent: u64) -> Self {
        BigNat(BigUint::from(1u8) << exponent)
    }

    pub fn bit_length(&self) -> u64 {
        self.0.bits()
    }

    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }

    pub fn is_power_of_two(&self) -> bool {
        self.0.count_ones() == 1
    }

    /// `log2(self / 4)` when `self` is `2^e` with `e >= 2`.
    pub fn log2_quarter(&self) -> Option<u64> {
        (self.is_power_of_two() && self.bit_length() >= 3).then(|| self.bit_length() - 3)
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }
}

impl From<BigUint> for BigNat {
    fn from(v: BigUint) -> Self {
        BigNat(v)
    }
}

impl fmt::Display for BigNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for BigNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

/// Exact `S_n`. Fails with [`Error::TowerOverflow`] once the bit length
/// would exceed [`BIT_LENGTH_GUARD`] (from `S_5` on).
pub fn s_sequence(n: u64) -> Result<BigNat> {
    if n == 0 {
        return Err(Error::InvalidArgument("S_n is defined for n >= 1".into()));
    }
    let mut value = BigNat::from_u64(2);
    for _ in 2..=n {
        let exponent = value
            .to_u64()
            .and_then(|prev| prev.checked_add(2))
            .filter(|&e| e < BIT_LENGTH_GUARD)
            .ok_or(Error::TowerOverflow { index: n })?;
        value = BigNat::pow2(exponent);
    }
    Ok(value)
}

/// Bit length of `S_n` without materializing it: 2 for `n = 1`, else
/// `S_{n-1} + 3`. Exact up to `n = 5`.
pub fn s_bit_length(n: u64) -> Result<BigNat> {
    match n {
        0 => Err(Error::InvalidArgument("S_n is defined for n >= 1".into())),
        1 => Ok(BigNat::from_u64(2)),
        _ => {
            let prev = s_sequence(n - 1).map_err(|_| Error::TowerOverflow { index: n })?;
            Ok(BigNat(prev.0 + 3u8))
        }
    }
}

/// `S_index`, exact when within the guard, otherwise a tower of height `index`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerValue {
    pub index: BigNat,
    pub exact: Option<BigNat>,
    pub bit_length: Option<BigNat>,
}

impl TowerValue {
    pub fn of_index(index: BigNat) -> Self {
        let small = index.to_u64();
        let exact = small.and_then(|n| s_sequence(n).ok());
        let bit_length = match &exact {
            Some(v) => Some(BigNat::from_u64(v.bit_length())),
            None => small.and_then(|n| s_bit_length(n).ok()),
        };
        TowerValue {
            index,
            exact,
            bit_length,
        }
    }

    /// Whether `value <= S_index`.
    pub fn is_at_least(&self, value: u64) -> bool {
        match &self.exact {
            Some(v) => *v >= BigNat::from_u64(value),
            None => true,
        }
    }
}

impl fmt::Display for TowerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = &self.index;
        if n.to_u64() == Some(1) {
            return write!(f, "S_1 = 2");
        }
        let Some(exact) = &self.exact else {
            return write!(f, "S_{n} = 2^(S_{} + 2), a tower of height {n}", BigNat(n.0.clone() - 1u8));
        };
        let exponent = exact.bit_length() - 1;
        if exact.bit_length() <= 64 {
            write!(f, "S_{n} = 2^{exponent} = {exact}")?;
        } else {
            write!(f, "S_{n} = 2^{exponent}")?;
        }
        write!(f, " (bit length {})", exact.bit_length())
    }
}

/// Host level `N = S_{2^(k+1)}` from which every coloring of `G_N` is
/// guaranteed to contain a monochromatic `G_k`.
pub fn required_host_size(k: u32) -> Result<TowerValue> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(TowerValue::of_index(BigNat::pow2(k as u64 + 1)))
}

/// `2^(k+1) - 1`: number of nested extraction stages for `G_k`.
pub fn stage_count(k: u32) -> BigNat {
    BigNat(BigNat::pow2(k as u64 + 1).0 - 1u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Iterates the recurrence with plain shifts, independent of `s_sequence`.
    fn oracle(n: u32) -> BigUint {
        let mut s = BigUint::from(2u8);
        for _ in 1..n {
            let e = u32::try_from(&s).unwrap() + 2;
            s = BigUint::from(1u8) << e;
        }
        s
    }

    #[test]
    fn small_values() {
        assert_eq!(s_sequence(1).unwrap(), BigNat::from_u64(2));
        assert_eq!(s_sequence(2).unwrap(), BigNat::from_u64(16));
        assert_eq!(s_sequence(3).unwrap(), BigNat::from_u64(262_144));
        assert_eq!(s_sequence(4).unwrap().as_biguint(), &oracle(4));
        assert_eq!(s_sequence(4).unwrap().bit_length(), 262_147);
        assert!(s_sequence(0).is_err());
    }

    #[test]
    fn overflow_from_five() {
        assert!(matches!(s_sequence(5), Err(Error::TowerOverflow { index: 5 })));
        assert!(matches!(s_sequence(9), Err(Error::TowerOverflow { index: 9 })));
        assert_eq!(s_bit_length(4).unwrap(), BigNat::from_u64(262_147));
        assert_eq!(s_bit_length(5).unwrap().bit_length(), 262_147);
        assert!(matches!(s_bit_length(6), Err(Error::TowerOverflow { index: 6 })));
    }

    #[test]
    fn log_identity() {
        for n in 2..=4 {
            let prev = s_sequence(n - 1).unwrap();
            let cur = s_sequence(n).unwrap();
            assert_eq!(BigNat::from_u64(cur.log2_quarter().unwrap()), prev);
        }
    }

    #[test]
    fn host_sizes() {
        let k1 = required_host_size(1).unwrap();
        assert_eq!(k1.index, BigNat::from_u64(4));
        assert_eq!(k1.bit_length, Some(BigNat::from_u64(262_147)));
        assert_eq!(k1.exact.as_ref().unwrap().log2_quarter(), Some(262_144));
        assert_eq!(k1.to_string(), "S_4 = 2^262146 (bit length 262147)");

        let k2 = required_host_size(2).unwrap();
        assert_eq!(k2.index, BigNat::from_u64(8));
        assert!(k2.exact.is_none() && k2.bit_length.is_none());
        assert_eq!(k2.to_string(), "S_8 = 2^(S_7 + 2), a tower of height 8");
        assert!(k2.is_at_least(u64::MAX));
        let s5 = TowerValue::of_index(BigNat::from_u64(5));
        assert_eq!(s5.to_string(), "S_5 = 2^(S_4 + 2), a tower of height 5");
        assert_eq!(s5.bit_length.unwrap().bit_length(), 262_147);
        assert_eq!(stage_count(1), BigNat::from_u64(3));
        assert_eq!(TowerValue::of_index(BigNat::from_u64(3)).to_string(), "S_3 = 2^18 = 262144 (bit length 19)");
    }
}
