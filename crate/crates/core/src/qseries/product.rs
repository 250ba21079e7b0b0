use std::fmt;

use serde::{Deserialize, Serialize};

use super::{QPoly, ZQPoly};
use crate::error::{Error, Result};

/// How a generator `x = z^[z] q^e` enters a product: `1/(1 - x)` (sign
/// `+1`, parts may repeat) or `(1 + x)` (sign `-1`, parts are distinct).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum FactorSign {
    Reciprocal,
    Distinct,
}

impl TryFrom<i64> for FactorSign {
    type Error = String;
    fn try_from(v: i64) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(FactorSign::Reciprocal),
            -1 => Ok(FactorSign::Distinct),
            other => Err(format!("sign must be +1 or -1, got {other}")),
        }
    }
}

impl From<FactorSign> for i64 {
    fn from(s: FactorSign) -> i64 {
        match s {
            FactorSign::Reciprocal => 1,
            FactorSign::Distinct => -1,
        }
    }
}

/// Number of levels `j` in a Pochhammer symbol `(x; q^M)_L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LengthRepr", into = "LengthRepr")]
pub enum Length {
    Finite(u64),
    Infinite,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum LengthRepr {
    Count(u64),
    Word(String),
}

impl TryFrom<LengthRepr> for Length {
    type Error = String;
    fn try_from(r: LengthRepr) -> std::result::Result<Self, String> {
        match r {
            LengthRepr::Count(n) => Ok(Length::Finite(n)),
            LengthRepr::Word(w) if w == "inf" => Ok(Length::Infinite),
            LengthRepr::Word(w) => Err(format!("length must be an integer or \"inf\", got {w:?}")),
        }
    }
}

impl From<Length> for LengthRepr {
    fn from(l: Length) -> Self {
        match l {
            Length::Finite(n) => LengthRepr::Count(n),
            Length::Infinite => LengthRepr::Word("inf".into()),
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => write!(f, "inf"),
        }
    }
}

/// A Pochhammer family `(z^[z] q^shift; q^M)_L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub shift: u64,
    pub z: bool,
    pub sign: FactorSign,
}

/// A single standalone factor with a fixed exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extra {
    pub exponent: u64,
    pub z: bool,
    pub sign: FactorSign,
}

/// One expanded generator of a product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Generator {
    pub exponent: u64,
    pub z: bool,
    pub sign: FactorSign,
}

/// Declarative description of a product of Pochhammer symbols sharing one
/// modulus, plus standalone extras.
///
/// JSON form:
///
/// ```json
/// {"modulus": 5, "length": "inf",
///  "factors": [{"shift": 1, "z": false, "sign": 1}],
///  "extras":  [{"exponent": 11, "z": true, "sign": -1}]}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSpec {
    pub modulus: u64,
    pub length: Length,
    pub factors: Vec<Factor>,
    #[serde(default)]
    pub extras: Vec<Extra>,
}

/// Result of [`ProductSpec::expand`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expansion {
    Q(QPoly),
    ZQ(ZQPoly),
}

impl ProductSpec {
    pub fn new(modulus: u64, length: Length) -> Self {
        ProductSpec {
            modulus,
            length,
            factors: Vec::new(),
            extras: Vec::new(),
        }
    }

    /// `1/(q^{s_1}, ..., q^{s_r}; q^M)_L`.
    pub fn reciprocal(modulus: u64, length: Length, shifts: &[u64]) -> Self {
        Self::uniform(modulus, length, shifts, false, FactorSign::Reciprocal)
    }

    /// `(-q^{s_1}, ..., -q^{s_r}; q^M)_L`.
    pub fn distinct(modulus: u64, length: Length, shifts: &[u64]) -> Self {
        Self::uniform(modulus, length, shifts, false, FactorSign::Distinct)
    }

    pub fn uniform(modulus: u64, length: Length, shifts: &[u64], z: bool, sign: FactorSign) -> Self {
        let mut spec = Self::new(modulus, length);
        spec.factors = shifts.iter().map(|&shift| Factor { shift, z, sign }).collect();
        spec
    }

    pub fn with_extra(mut self, exponent: u64, z: bool, sign: FactorSign) -> Self {
        self.extras.push(Extra { exponent, z, sign });
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.modulus == 0 {
            return Err(Error::InvalidSpec("modulus must be at least 1".into()));
        }
        if let Some(f) = self.factors.iter().find(|f| f.shift == 0) {
            return Err(Error::InvalidSpec(format!("factor shift must be positive: {f:?}")));
        }
        if let Some(x) = self.extras.iter().find(|x| x.exponent == 0) {
            return Err(Error::InvalidSpec(format!("extra exponent must be positive: {x:?}")));
        }
        Ok(())
    }

    pub fn is_bivariate(&self) -> bool {
        self.factors.iter().any(|f| f.z) || self.extras.iter().any(|x| x.z)
    }

    /// Every generator with exponent `<= trunc`, factors first (level by
    /// level within a factor), then extras.
    ///
    /// For `L = inf` a factor contributes `floor((trunc - shift) / M) + 1`
    /// levels; higher levels cannot reach degree `trunc`.
    pub fn generators(&self, trunc: u64) -> Vec<Generator> {
        let mut out = Vec::new();
        for f in &self.factors {
            if f.shift > trunc {
                continue;
            }
            let reachable = (trunc - f.shift) / self.modulus + 1;
            let levels = match self.length {
                Length::Finite(l) => l.min(reachable),
                Length::Infinite => reachable,
            };
            out.extend((0..levels).map(|j| Generator {
                exponent: f.shift + j * self.modulus,
                z: f.z,
                sign: f.sign,
            }));
        }
        out.extend(
            self.extras
                .iter()
                .filter(|x| x.exponent <= trunc)
                .map(|x| Generator {
                    exponent: x.exponent,
                    z: x.z,
                    sign: x.sign,
                }),
        );
        out
    }

    /// Exact expansion to `q^trunc`; bivariate iff some generator carries `z`.
    pub fn expand(&self, trunc: u64) -> Result<Expansion> {
        Ok(if self.is_bivariate() {
            Expansion::ZQ(self.expand_zq(trunc)?)
        } else {
            Expansion::Q(self.expand_q(trunc)?)
        })
    }

    /// Expansion with `z = 1`.
    pub fn expand_q(&self, trunc: u64) -> Result<QPoly> {
        self.validate()?;
        let mut p = QPoly::one(trunc);
        for g in self.generators(trunc) {
            match g.sign {
                FactorSign::Reciprocal => p.div_one_minus(g.exponent),
                FactorSign::Distinct => p.mul_one_plus(g.exponent),
            }
        }
        Ok(p)
    }

    pub fn expand_zq(&self, trunc: u64) -> Result<ZQPoly> {
        self.validate()?;
        let mut p = ZQPoly::one(trunc);
        for g in self.generators(trunc) {
            match g.sign {
                FactorSign::Reciprocal => p.div_one_minus(g.exponent, g.z),
                FactorSign::Distinct => p.mul_one_plus(g.exponent, g.z),
            }
        }
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("product specs always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ProductSpec =
            serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }
}

impl Expansion {
    /// `(m, n, value)` of the least negative coefficient; `m` is `None`
    /// for univariate series.
    pub fn first_negative(&self) -> Option<(Option<u64>, u64, num_bigint::BigInt)> {
        match self {
            Expansion::Q(p) => p.first_negative().map(|(n, v)| (None, n, v)),
            Expansion::ZQ(p) => p.first_negative().map(|(m, n, v)| (Some(m), n, v)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_product_is_one() {
        let spec = ProductSpec::reciprocal(5, Length::Finite(0), &[1, 4]);
        assert_eq!(spec.expand_q(6).unwrap(), QPoly::one(6));
        let bare = ProductSpec::new(3, Length::Infinite);
        assert_eq!(bare.expand(4).unwrap(), Expansion::Q(QPoly::one(4)));
    }

    #[test]
    fn infinite_length_is_cut_at_truncation() {
        let spec = ProductSpec::reciprocal(5, Length::Infinite, &[1, 4]);
        let exps: Vec<u64> = spec.generators(12).iter().map(|g| g.exponent).collect();
        assert_eq!(exps, vec![1, 6, 11, 4, 9]);
        assert_eq!(
            spec.expand_q(6).unwrap(),
            QPoly::from_i64s(&[1, 1, 1, 1, 2, 2, 3], 6)
        );
    }

    #[test]
    fn json_schema() {
        let text = r#"{"modulus":7,"length":"inf","factors":[{"shift":2,"z":true,"sign":1}],
                       "extras":[{"exponent":16,"z":false,"sign":-1}]}"#;
        let spec = ProductSpec::from_json(text).unwrap();
        assert_eq!(spec.length, Length::Infinite);
        assert_eq!(spec.extras[0].sign, FactorSign::Distinct);
        assert!(spec.is_bivariate());
        assert_eq!(ProductSpec::from_json(&spec.to_json()).unwrap(), spec);

        let no_extras = r#"{"modulus":6,"length":3,"factors":[]}"#;
        assert_eq!(
            ProductSpec::from_json(no_extras).unwrap(),
            ProductSpec::new(6, Length::Finite(3))
        );
    }

    #[test]
    fn rejects_malformed_specs() {
        for bad in [
            r#"{"modulus":0,"length":1,"factors":[]}"#,
            r#"{"modulus":5,"length":"forever","factors":[]}"#,
            r#"{"modulus":5,"length":1,"factors":[{"shift":1,"z":false,"sign":2}]}"#,
            r#"{"modulus":5,"length":1,"factors":[{"shift":0,"z":false,"sign":1}]}"#,
        ] {
            assert!(ProductSpec::from_json(bad).is_err(), "{bad}");
        }
    }
}
