//! Exact truncated power series and Pochhammer product expansion.

mod bivariate;
mod poly;
mod product;

pub use bivariate::ZQPoly;
pub use poly::QPoly;
pub use product::{Expansion, Extra, Factor, FactorSign, Generator, Length, ProductSpec};

use crate::error::{Error, Result};

/// Which Rogers-Ramanujan sum: `q^{n^2}` (1) or `q^{n^2+n}` (2) over
/// `(q;q)_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RrVariant {
    First,
    Second,
}

impl TryFrom<u8> for RrVariant {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(RrVariant::First),
            2 => Ok(RrVariant::Second),
            _ => Err(Error::ParamViolation(format!("variant must be 1 or 2, got {v}"))),
        }
    }
}

/// `sum_{n>=0} q^{n^2 (+n)} / (q;q)_n` truncated at `q^trunc`.
pub fn rr_sum_side(variant: RrVariant, trunc: u64) -> QPoly {
    let mut total = QPoly::zero(trunc);
    // 1/(q;q)_n, extended one factor per term
    let mut denom_inv = QPoly::one(trunc);
    for n in 0u64.. {
        let lead = match variant {
            RrVariant::First => n * n,
            RrVariant::Second => n * n + n,
        };
        if lead > trunc {
            break;
        }
        if n > 0 {
            denom_inv.div_one_minus(n);
        }
        total = &total + &denom_inv.shift_up(lead);
    }
    total
}

/// The two Rogers-Ramanujan product sides `1/(q^v, q^{5-v}; q^5)_inf`.
pub fn rr_product_side(variant: RrVariant) -> ProductSpec {
    let shifts: &[u64] = match variant {
        RrVariant::First => &[1, 4],
        RrVariant::Second => &[2, 3],
    };
    ProductSpec::reciprocal(5, Length::Infinite, shifts)
}
