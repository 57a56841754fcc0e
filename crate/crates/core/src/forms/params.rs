//! Construction parameters `(a, r, N, n, p, T)`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::integer::lcm_upto;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub a: u64,
    pub r: u64,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub n: u64,
    pub p: u8,
    #[serde(rename = "T")]
    pub big_t: u64,
}

impl Params {
    /// Admissible parameters: `a >= 2`, `1 <= r < a/(3N)`, `N | n`, `T | N`, `p in {0, 1}`.
    pub fn new(a: u64, r: u64, big_n: u64, n: u64, p: u8, big_t: u64) -> Result<Self> {
        let params = Params { a, r, big_n, n, p, big_t };
        params.check_shape()?;
        if 3 * big_n * r >= a {
            return Err(Error::InvalidParams("r < a/(3N)".into()));
        }
        params.check_degree()?;
        Ok(params)
    }

    /// Same as [`Params::new`] without `r < a/(3N)`; only `d_0 >= 2` is kept,
    /// which is what the construction itself needs.
    pub fn relaxed(a: u64, r: u64, big_n: u64, n: u64, p: u8, big_t: u64) -> Result<Self> {
        let params = Params { a, r, big_n, n, p, big_t };
        params.check_shape()?;
        params.check_degree()?;
        Ok(params)
    }

    /// `true` when `r < a/(3N)` holds.
    pub fn is_admissible(&self) -> bool {
        3 * self.big_n * self.r < self.a
    }

    fn check_shape(&self) -> Result<()> {
        let fail = |s: &str| Err(Error::InvalidParams(s.into()));
        if self.a < 2 {
            return fail("a \u{2265} 2");
        }
        if self.r < 1 {
            return fail("r \u{2265} 1");
        }
        if self.big_n < 1 {
            return fail("N \u{2265} 1");
        }
        if self.n < 1 {
            return fail("n \u{2265} 1");
        }
        if !self.n.is_multiple_of(self.big_n) {
            return fail("N | n");
        }
        if self.big_t < 1 || !self.big_n.is_multiple_of(self.big_t) {
            return fail("T | N");
        }
        if self.p > 1 {
            return fail("p \u{2208} {0, 1}");
        }
        Ok(())
    }

    fn check_degree(&self) -> Result<()> {
        if self.d0() < 2 {
            return Err(Error::InvalidParams(format!(
                "d_0 \u{2265} 2 (d_0 = {})",
                self.d0()
            )));
        }
        Ok(())
    }

    /// `n / N`.
    pub fn m(&self) -> u64 {
        self.n / self.big_n
    }

    /// `d_0 = (a+1)(n/N+1) - (2r+1)n - 1`, the order of vanishing of `F` at infinity.
    pub fn d0(&self) -> i64 {
        (self.a as i64 + 1) * (self.m() as i64 + 1) - (2 * self.r as i64 + 1) * self.n as i64 - 1
    }

    /// `q = a + N + 1`.
    pub fn q(&self) -> usize {
        (self.a + self.big_n + 1) as usize
    }

    /// `tau = a + 1 - aN`.
    pub fn tau(&self) -> i64 {
        self.a as i64 + 1 - (self.a * self.big_n) as i64
    }

    /// `delta_n = (N d_{n/N})^{a+1} N^{(a+1) n/N}`.
    pub fn delta(&self) -> BigInt {
        let nd = BigInt::from(self.big_n) * lcm_upto(self.m());
        let e = (self.a + 1) as u32;
        nd.pow(e) * BigInt::from(self.big_n).pow(e * self.m() as u32)
    }

    /// Number of derivative levels built: `min(d_0 - 1, cap)` with cap defaulting to `3(a+N)`.
    pub fn k_max(&self, cap: Option<usize>) -> usize {
        let cap = cap.unwrap_or(3 * (self.a + self.big_n) as usize);
        (self.d0() as usize - 1).min(cap)
    }

    /// Same parameters with another `n`.
    pub fn with_n(&self, n: u64) -> Result<Self> {
        if self.is_admissible() {
            Self::new(self.a, self.r, self.big_n, n, self.p, self.big_t)
        } else {
            Self::relaxed(self.a, self.r, self.big_n, n, self.p, self.big_t)
        }
    }

    pub fn with_p(&self, p: u8) -> Result<Self> {
        Self::relaxed(self.a, self.r, self.big_n, self.n, p, self.big_t)
    }

    /// Equation count minus unknown count of the Padé problem:
    /// `N((r+1)n+1) + N(d_0-1) + N((r+1)n+1) = (a+N+1)(n+1) - tau`.
    pub fn pade_balance(&self) -> (i64, i64) {
        let (a, r, nn, n) = (self.a as i64, self.r as i64, self.big_n as i64, self.n as i64);
        let lhs = 2 * nn * ((r + 1) * n + 1) + nn * (self.d0() - 1);
        let rhs = (a + nn + 1) * (n + 1) - self.tau();
        (lhs, rhs)
    }
}
