//! JSON forms: an angle is `{"num": "<decimal>", "den": "<decimal>"}`, an arc
//! is `{"start": <angle>, "len": {"num", "den"}}` and an arc set is an array
//! of arcs in cyclic order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Angle, Arc, ArcSet};

#[derive(Serialize, Deserialize)]
struct Fraction {
    num: String,
    den: String,
}

impl Fraction {
    fn of(r: &BigRational) -> Self {
        Fraction {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }

    fn parse<E: serde::de::Error>(&self) -> Result<BigRational, E> {
        let num: BigInt = self.num.parse().map_err(E::custom)?;
        let den: BigInt = self.den.parse().map_err(E::custom)?;
        if den.is_zero() || den.is_negative() {
            return Err(E::custom("denominator must be positive"));
        }
        Ok(BigRational::new(num, den))
    }
}

/// Serializes a rational as a `{"num", "den"}` object.
pub fn serialize_rational<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    Fraction::of(r).serialize(s)
}

/// Serializes a rational as the string `"p/q"`.
pub fn serialize_ratio_string<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Fraction::of(self.value()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let f = Fraction::deserialize(d)?;
        let r = f.parse::<D::Error>()?;
        let t = Angle::from_ratio(r.clone());
        if t.value() != &r {
            return Err(D::Error::custom("angle outside [0, 1)"));
        }
        Ok(t)
    }
}

impl Serialize for Arc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Arc", 2)?;
        st.serialize_field("start", self.start())?;
        st.serialize_field("len", &Fraction::of(self.len()))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Arc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            start: Angle,
            len: Fraction,
        }
        let raw = Raw::deserialize(d)?;
        let len = raw.len.parse::<D::Error>()?;
        Arc::new(raw.start, len).map_err(D::Error::custom)
    }
}

impl Serialize for ArcSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.arcs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ArcSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let arcs = Vec::<Arc>::deserialize(d)?;
        Ok(ArcSet::from_arcs(arcs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::{ang, rat};

    #[test]
    fn angle_schema() {
        let v = serde_json::to_value(ang(7, 17)).unwrap();
        assert_eq!(v, serde_json::json!({"num": "7", "den": "17"}));
        let back: Angle = serde_json::from_value(v).unwrap();
        assert_eq!(back, ang(7, 17));
        let bad = serde_json::json!({"num": "3", "den": "2"});
        assert!(serde_json::from_value::<Angle>(bad).is_err());
    }

    #[test]
    fn arcset_schema() {
        let s = ArcSet::from_arcs([Arc::new(ang(1, 3), rat(1, 12)).unwrap()]);
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(
            v,
            serde_json::json!([{"start": {"num": "1", "den": "3"}, "len": {"num": "1", "den": "12"}}])
        );
        let back: ArcSet = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
    }
}
