use crate::error::{Error, Result};

/// Representations whose free-parameter counts can be compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParameterModel {
    /// Full conditional table over all causes (class 1).
    FullTable,
    /// The temporal chain: each stage `e_i` has parents `c_i` and `e_{i-1}`,
    /// plus one distribution for the initial effect.
    TemporalChain,
    /// Atemporal decomposition with a known shared combiner and no leak: only
    /// the non-distinguished transition rows are free.
    Atemporal,
    /// Linear-Gaussian interactions; not representable in a discrete engine.
    ContinuousLinear,
}

/// Free parameters needed by `model` for `causes` causes where every variable
/// has `states` states.
///
/// For binary variables this gives `2^n`, `4n + 1` and `n` for the full table,
/// temporal chain and atemporal forms. The general counts are
/// `k^n (k-1)`, `n k² (k-1) + (k-1)` and `n (k-1)²`.
pub fn parameter_count(model: ParameterModel, causes: usize, states: usize) -> Result<u128> {
    if causes == 0 || states < 2 {
        return Err(Error::InvalidDimensions);
    }
    let n = causes as u128;
    let k = states as u128;
    let free = k - 1;
    let count = match model {
        ParameterModel::FullTable => {
            let exp = u32::try_from(causes).map_err(|_| Error::Overflow)?;
            k.checked_pow(exp).and_then(|rows| rows.checked_mul(free))
        }
        ParameterModel::TemporalChain => k
            .checked_mul(k)
            .and_then(|v| v.checked_mul(free))
            .and_then(|v| v.checked_mul(n))
            .and_then(|v| v.checked_add(free)),
        ParameterModel::Atemporal => free.checked_mul(free).and_then(|v| v.checked_mul(n)),
        ParameterModel::ContinuousLinear => {
            return Err(Error::Unsupported("continuous linear-Gaussian interaction"))
        }
    };
    count.ok_or(Error::Overflow)
}
