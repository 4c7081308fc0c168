//! The four families of pairs `(G, H)` handled by the checker.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// A family of Gan-Gross-Prasad pairs, instantiated at a rank parameter `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    /// `PGL_n x PGL_{n+1}` over `Q`.
    PglQ,
    /// `PGL_n x PGL_{n+1}` over an imaginary quadratic field `E`.
    PglE,
    /// `SO_{2n} x SO_{2n+1}`, the split-rank-one unitary form at infinity.
    SoEven,
    /// `SO_{2n+1} x SO_{2n+2}`, the split-rank-one unitary form at infinity.
    SoOdd,
}

impl Case {
    pub const ALL: [Case; 4] = [Case::PglQ, Case::PglE, Case::SoEven, Case::SoOdd];

    pub fn name(self) -> &'static str {
        match self {
            Case::PglQ => "pgl-q",
            Case::PglE => "pgl-e",
            Case::SoEven => "so-even",
            Case::SoOdd => "so-odd",
        }
    }

    /// The exponent `m` with `L(1/2, rho) / L*(0, Ad) ~ (2 pi i)^m`.
    pub fn m(self, n: i64) -> i64 {
        match self {
            Case::PglQ | Case::PglE => n * (n + 1),
            Case::SoEven => 2 * n * n,
            Case::SoOdd => 2 * n * (n + 1),
        }
    }

    /// The central point of `L(s, M x N)` in motivic normalisation.
    pub fn central_point(self, n: i64) -> i64 {
        match self {
            Case::PglQ | Case::PglE => n,
            Case::SoEven => 2 * n - 1,
            Case::SoOdd => 2 * n,
        }
    }

    /// Whether the motives carry coefficients in the quadratic field `E`.
    pub fn over_e(self) -> bool {
        !matches!(self, Case::PglQ)
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Case::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| crate::Error::Parse(format!("unknown case `{s}`")))
    }
}
