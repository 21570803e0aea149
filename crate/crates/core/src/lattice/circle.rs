use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact model of a divisible subgroup of the nonzero complex numbers:
/// the pair `(a, b)` stands for `q^a · e^{2πib}` with `a ∈ ℚ` and `b ∈ ℚ/ℤ`.
///
/// `q` is formal. The group law is componentwise addition. The argument is
/// stored as its representative in `[0, 1)`, so derived equality and the
/// derived lexicographic order `(a, b)` are well defined on classes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactCircle {
    q_exponent: BigRational,
    argument: BigRational,
}

fn reduce_mod_one(b: BigRational) -> BigRational {
    let f = b.floor();
    b - f
}

impl ExactCircle {
    pub fn new(q_exponent: BigRational, argument: BigRational) -> Self {
        ExactCircle {
            q_exponent,
            argument: reduce_mod_one(argument),
        }
    }

    pub fn identity() -> Self {
        ExactCircle {
            q_exponent: BigRational::zero(),
            argument: BigRational::zero(),
        }
    }

    /// `q^{num/den}` with trivial argument.
    pub fn q_power(num: i64, den: i64) -> Self {
        Self::new(ratio(num, den), BigRational::zero())
    }

    /// `e^{2πi·num/den}`, a root of unity.
    pub fn root_of_unity(num: i64, den: i64) -> Self {
        Self::new(BigRational::zero(), ratio(num, den))
    }

    pub fn q_exponent(&self) -> &BigRational {
        &self.q_exponent
    }

    /// Representative of the argument in `[0, 1)`.
    pub fn argument(&self) -> &BigRational {
        &self.argument
    }

    pub fn is_identity(&self) -> bool {
        self.q_exponent.is_zero() && self.argument.is_zero()
    }

    /// `self^k` in multiplicative notation.
    pub fn pow(&self, k: &BigInt) -> Self {
        let k = BigRational::from_integer(k.clone());
        Self::new(&self.q_exponent * &k, &self.argument * &k)
    }

    /// Canonical `n`-th root: `(a/n, b/n)` with `b` taken in `[0, 1)`.
    /// Other `n`-th roots differ from this one by an `n`-th root of unity.
    pub fn nth_root(&self, n: &BigInt) -> Self {
        assert!(!n.is_zero(), "zeroth root");
        let n = BigRational::from_integer(n.clone());
        Self::new(&self.q_exponent / &n, &self.argument / &n)
    }

    /// Smallest `d ≥ 1` with `self^d = 1`, if the element has finite order.
    pub fn order(&self) -> Option<BigInt> {
        if !self.q_exponent.is_zero() {
            return None;
        }
        Some(self.argument.denom().clone())
    }
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl Add for &ExactCircle {
    type Output = ExactCircle;

    fn add(self, rhs: &ExactCircle) -> ExactCircle {
        ExactCircle::new(
            &self.q_exponent + &rhs.q_exponent,
            &self.argument + &rhs.argument,
        )
    }
}

impl Add for ExactCircle {
    type Output = ExactCircle;

    fn add(self, rhs: ExactCircle) -> ExactCircle {
        &self + &rhs
    }
}

impl Neg for &ExactCircle {
    type Output = ExactCircle;

    fn neg(self) -> ExactCircle {
        ExactCircle::new(-&self.q_exponent, -&self.argument)
    }
}

impl Sub for &ExactCircle {
    type Output = ExactCircle;

    fn sub(self, rhs: &ExactCircle) -> ExactCircle {
        self + &(-rhs)
    }
}

impl std::iter::Sum for ExactCircle {
    fn sum<I: Iterator<Item = ExactCircle>>(iter: I) -> Self {
        iter.fold(ExactCircle::identity(), |a, b| &a + &b)
    }
}

impl fmt::Display for ExactCircle {
    /// `(a, b)`, the same syntax the config parser accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            fmt_rational(&self.q_exponent),
            fmt_rational(&self.argument)
        )
    }
}

impl fmt::Debug for ExactCircle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactCircle{self}")
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
