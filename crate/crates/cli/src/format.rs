//! Exact rationals in JSON: written as `"p/q"` strings, read from strings or
//! integers. Floats are rejected.

use std::fmt;
use std::str::FromStr;

use circuit_descartes::Rational;
use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Q(pub Rational);

impl Q {
    pub fn into_inner(self) -> Rational {
        self.0
    }
}

impl From<Rational> for Q {
    fn from(r: Rational) -> Self {
        Q(r)
    }
}

impl From<&Rational> for Q {
    fn from(r: &Rational) -> Self {
        Q(r.clone())
    }
}

impl From<&BigInt> for Q {
    fn from(n: &BigInt) -> Self {
        Q(Rational::from_integer(n.clone()))
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Self {
        Q(Rational::from_integer(n.into()))
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Q {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() || t.contains(['.', 'e', 'E']) {
            return Err(format!(
                "invalid rational {s:?}, expected \"p/q\" or an integer"
            ));
        }
        Rational::from_str(t)
            .map(Q)
            .map_err(|e| format!("invalid rational {s:?}: {e}"))
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct QVisitor;

        impl Visitor<'_> for QVisitor {
            type Value = Q;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational \"p/q\" or an integer")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Q, E> {
                Ok(Q::from(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Q, E> {
                Ok(Q(Rational::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Q, E> {
                Err(E::custom(format!(
                    "floating point value {v} is not allowed, write \"p/q\""
                )))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
                v.parse().map_err(E::custom)
            }
        }

        d.deserialize_any(QVisitor)
    }
}

pub fn to_q(v: &[Rational]) -> Vec<Q> {
    v.iter().map(Q::from).collect()
}

pub fn from_q(v: &[Q]) -> Vec<Rational> {
    v.iter().map(|q| q.0.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let q: Q = serde_json::from_str("\"-6/4\"").unwrap();
        assert_eq!(q.to_string(), "-3/2");
        let q: Q = serde_json::from_str("7").unwrap();
        assert_eq!(serde_json::to_string(&q).unwrap(), "\"7\"");
        assert!(serde_json::from_str::<Q>("1.5").is_err());
        assert!(serde_json::from_str::<Q>("\"1/0\"").is_err());
        assert!(serde_json::from_str::<Q>("\"1e3\"").is_err());
    }
}
