use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CycNumber;
use crate::{arith, Rational};

/// Integer as a JSON number when it fits in i64, otherwise as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Num(i64),
    Str(String),
}

impl From<&BigInt> for JsonInt {
    fn from(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(x) => JsonInt::Num(x),
            None => JsonInt::Str(v.to_string()),
        }
    }
}

impl JsonInt {
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            JsonInt::Num(x) => Some(BigInt::from(*x)),
            JsonInt::Str(s) => s.parse().ok(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    n: u64,
    c: Vec<(JsonInt, JsonInt)>,
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let c = self
            .coeffs()
            .iter()
            .map(|q| (JsonInt::from(q.numer()), JsonInt::from(q.denom())))
            .collect();
        Wire { n: self.conductor(), c }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        if w.n == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        if w.n % 4 == 2 || w.c.len() as u64 != arith::totient(w.n) {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for a conductor-{} number",
                arith::totient(w.n),
                w.n
            )));
        }
        let mut terms = Vec::with_capacity(w.c.len());
        for (j, (a, b)) in w.c.iter().enumerate() {
            let a = a.to_bigint().ok_or_else(|| D::Error::custom("bad integer"))?;
            let b = b.to_bigint().ok_or_else(|| D::Error::custom("bad integer"))?;
            if b.sign() != num_bigint::Sign::Plus {
                return Err(D::Error::custom("denominator must be positive"));
            }
            terms.push((j as i64, Rational::new(a, b)));
        }
        Ok(CycNumber::canonicalize(w.n, &terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_format() {
        let s2 = CycNumber::embed_sqrt(2);
        let js = serde_json::to_string(&s2).unwrap();
        assert_eq!(js, r#"{"n":8,"c":[[0,1],[1,1],[0,1],[-1,1]]}"#);
        let back: CycNumber = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s2);
        let half = CycNumber::from_frac(1, 2);
        assert_eq!(serde_json::to_string(&half).unwrap(), r#"{"n":1,"c":[[1,2]]}"#);
    }

    #[test]
    fn big_integers_are_strings() {
        let big = CycNumber::from_integer(&(BigInt::from(i64::MAX) * 10));
        let js = serde_json::to_string(&big).unwrap();
        assert!(js.contains('"'));
        let back: CycNumber = serde_json::from_str(&js).unwrap();
        assert_eq!(back, big);
        assert_eq!(serde_json::to_string(&back).unwrap(), js);
    }

    #[test]
    fn rejects_wrong_length() {
        assert!(serde_json::from_str::<CycNumber>(r#"{"n":5,"c":[[1,1]]}"#).is_err());
    }
}
