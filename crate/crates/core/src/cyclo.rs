//! Exact arithmetic in the group of roots of unity.
//!
//! A root of unity is represented by its exponent: `UnityRoot { num, den }`
//! stands for exp(2πi·num/den) with `0 <= num < den` and
//! `gcd(num, den) = 1`. Multiplication adds exponents mod 1, powers multiply
//! the exponent, and the multiplicative order is just `den`. No floating
//! point, no cyclotomic-integer sums: every question this crate asks of a
//! root of unity reduces to exponent arithmetic. In particular the quantum
//! number test `(N)_v = 0` reduces to `v != 1 and v^N = 1`.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A root of unity, stored as a reduced exponent fraction in `[0, 1)`.
///
/// Exponents are arbitrary-precision: the bilinear form multiplies them by
/// products of root coordinates, and nothing here may ever overflow.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnityRoot {
    num: BigUint,
    den: BigUint,
}

impl UnityRoot {
    /// The multiplicative unit, exponent 0/1.
    pub fn one() -> Self {
        UnityRoot { num: BigUint::zero(), den: BigUint::one() }
    }

    /// exp(2πi·num/den) from a signed fraction; reduced and taken mod 1.
    /// `den` must be nonzero.
    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_big(&BigInt::from(num), &BigInt::from(den))
    }

    fn from_big(num: &BigInt, den: &BigInt) -> Self {
        debug_assert!(!den.is_zero());
        let (mut n, mut d) = (num.clone(), den.clone());
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        n = n.mod_floor(&d);
        let g = n.gcd(&d);
        UnityRoot {
            num: (n / &g).to_biguint().expect("nonnegative after mod_floor"),
            den: (d / g).to_biguint().expect("positive denominator"),
        }
    }

    /// Product: exponents add mod 1.
    pub fn times(&self, other: &UnityRoot) -> UnityRoot {
        let n = BigInt::from(self.num.clone()) * BigInt::from(other.den.clone())
            + BigInt::from(other.num.clone()) * BigInt::from(self.den.clone());
        let d = BigInt::from(self.den.clone()) * BigInt::from(other.den.clone());
        Self::from_big(&n, &d)
    }

    /// k-th power, k any integer: exponent times k mod 1.
    pub fn power(&self, k: i64) -> UnityRoot {
        self.power_big(&BigInt::from(k))
    }

    pub fn power_big(&self, k: &BigInt) -> UnityRoot {
        let n = BigInt::from(self.num.clone()) * k;
        let d = BigInt::from(self.den.clone());
        Self::from_big(&n, &d)
    }

    /// Multiplicative inverse: exponent negated mod 1.
    pub fn inverse(&self) -> UnityRoot {
        self.power(-1)
    }

    /// Multiplicative order. For the reduced exponent num/den this is den.
    pub fn order(&self) -> u64 {
        u64::try_from(&self.den).expect("order exceeds u64")
    }

    pub fn is_one(&self) -> bool {
        self.num.is_zero()
    }

    /// Exponent numerator of the reduced fraction (0 for the unit).
    pub fn exp_num(&self) -> &BigUint {
        &self.num
    }

    /// Parse "a/b" (exponent fraction, canonicalized) or the shorthand "1"
    /// for the multiplicative unit 0/1.
    pub fn parse(tok: &str) -> Result<UnityRoot> {
        if tok == "1" {
            return Ok(UnityRoot::one());
        }
        let (a, b) = tok
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("expected exponent `a/b` or `1`, got `{tok}`")))?;
        let num: i64 = a
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent numerator in `{tok}`")))?;
        let den: i64 = b
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent denominator in `{tok}`")))?;
        if den == 0 {
            return Err(Error::Parse(format!("zero denominator in `{tok}`")));
        }
        Ok(UnityRoot::from_frac(num, den))
    }
}

impl fmt::Display for UnityRoot {
    /// Canonical textual form: "a/b", with "1" for the unit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for UnityRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({self})")
    }
}

/// q(α, β) = prod_{i,j} q_ij^{a_i b_j} for a full matrix of roots of unity.
/// The integer products a_i·b_j are taken in wide arithmetic before they
/// touch the exponents, so coordinates of any size are safe.
pub fn bilinear_form(entries: &[Vec<UnityRoot>], a: &[i64], b: &[i64]) -> UnityRoot {
    let theta = entries.len();
    debug_assert_eq!(a.len(), theta);
    debug_assert_eq!(b.len(), theta);
    let mut acc = UnityRoot::one();
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj == 0 {
                continue;
            }
            let e = BigInt::from(i128::from(ai) * i128::from(bj));
            acc = acc.times(&entries[i][j].power_big(&e));
        }
    }
    acc
}
