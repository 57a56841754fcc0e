//! The differential system `Y' = AY` and the transfer operator `(d/dz + A^T)^{k-1}`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::cyclo::{CycloField, CycloNumber};
use crate::exact::rational::Rational;
use crate::exact::LaurentPoly;
use crate::forms::FormFamily;

pub type CycloLaurent = LaurentPoly<CycloNumber>;

/// Shape of a nonzero entry of `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EntryRule {
    /// `-1/z`
    MinusInvZ,
    /// `1/z`
    InvZ,
    /// `1/(z (1 - omega^ell z))`
    InvZOneMinusOmega { ell: usize },
}

/// `q = a + N + 1`; entries are 1-based `(row, column, rule)`.
#[derive(Clone, Debug, Serialize)]
pub struct SystemMatrix {
    pub a: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub q: usize,
    pub entries: Vec<(usize, usize, EntryRule)>,
}

impl SystemMatrix {
    pub fn new(a: usize, big_n: usize) -> Self {
        let mut entries: Vec<_> = (2..=a).map(|i| (i, i - 1, EntryRule::MinusInvZ)).collect();
        entries.push((1, a + 1, EntryRule::InvZ));
        entries.extend((1..=big_n).map(|ell| (1, a + 1 + ell, EntryRule::InvZOneMinusOmega { ell })));
        SystemMatrix {
            a,
            big_n,
            q: a + big_n + 1,
            entries,
        }
    }
}

/// Where the local solutions carry their unit entry, 1-based.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionDescriptor {
    pub point: String,
    pub ell: usize,
    /// `(position, value)` of the constant entries.
    pub units: Vec<(usize, i64)>,
    /// `polylog`, `polylog_inverse` or `log_powers` in positions `1..=a`.
    pub head: &'static str,
}

pub fn solution_basis(a: usize, big_n: usize) -> Vec<SolutionDescriptor> {
    let mut out = Vec::new();
    for ell in 1..=big_n {
        out.push(SolutionDescriptor {
            point: "0".into(),
            ell,
            units: vec![(a + 1, 1), (a + 1 + ell, -1)],
            head: "polylog",
        });
        out.push(SolutionDescriptor {
            point: "infinity".into(),
            ell,
            units: vec![(a + 1 + ell, 1)],
            head: "polylog_inverse",
        });
        out.push(SolutionDescriptor {
            point: format!("omega^{ell}"),
            ell,
            units: Vec::new(),
            head: "log_powers",
        });
    }
    out
}

fn lift(p: &LaurentPoly<Rational>, field: &Arc<CycloField>) -> CycloLaurent {
    p.map(|c| CycloNumber::from_rational(field, c.clone()))
}

/// `p(omega^ell z)`.
fn rotate(p: &CycloLaurent, field: &Arc<CycloField>, ell: i64) -> CycloLaurent {
    p.substitute_scaled(|e| CycloNumber::omega_pow(field, ell * e))
}

/// `(P_1, ..., P_a, U_1 + V_1, V_1(omega z), ..., V_1(omega^N z))` over `Q(omega)`.
pub fn initial_vector(family: &FormFamily, field: &Arc<CycloField>) -> Vec<CycloLaurent> {
    let nn = family.params.big_n as i64;
    let mut v: Vec<CycloLaurent> = family.p[0].iter().map(|p| lift(p, field)).collect();
    v.push(lift(&family.u[0].add(&family.v[0]), field));
    let v1 = lift(&family.v[0], field);
    v.extend((1..=nn).map(|ell| rotate(&v1, field, ell)));
    v
}

/// One application of `d/dz + A^T`.
pub fn transfer_step(
    system: &SystemMatrix,
    v: &[CycloLaurent],
    field: &Arc<CycloField>,
    level: usize,
) -> Result<Vec<CycloLaurent>> {
    if v.len() != system.q {
        return Err(Error::Dimension(format!("vector of length {} for q = {}", v.len(), system.q)));
    }
    let mut out: Vec<CycloLaurent> = v.iter().map(LaurentPoly::derivative).collect();
    for &(row, col, rule) in &system.entries {
        // (A^T v)_col += A_{row,col} v_row
        let src = &v[row - 1];
        let term = match rule {
            EntryRule::MinusInvZ => src.shift(-1).neg(),
            EntryRule::InvZ => src.shift(-1),
            EntryRule::InvZOneMinusOmega { ell } => src
                .div_one_minus(&CycloNumber::omega_pow(field, ell as i64))
                .ok_or(Error::InexactDivision { k: level })?
                .shift(-1),
        };
        out[col - 1] = out[col - 1].add(&term);
    }
    Ok(out)
}

/// `(P_{k,1}, ..., P_{k,q})` for `k = 1..=k_max`.
pub fn transfer_operator_apply(
    system: &SystemMatrix,
    initial: Vec<CycloLaurent>,
    field: &Arc<CycloField>,
    k_max: usize,
) -> Result<Vec<Vec<CycloLaurent>>> {
    let mut levels = vec![initial];
    for k in 2..=k_max {
        let next = transfer_step(system, levels.last().expect("nonempty"), field, k)?;
        levels.push(next);
    }
    Ok(levels)
}

/// Compares the transfer operator with the recurrences on levels `1..=k_max`:
/// rows `1..a` with `P_{k,j}`, row `a+1` with `omega^{l(k-1)} (U_k + V_k)(omega^l z)` for
/// every `l`, and row `a+1+l` with `omega^{l(k-1)} V_k(omega^l z)`.
pub fn check_transfer(family: &FormFamily, k_max: usize) -> Result<bool> {
    let a = family.params.a as usize;
    let nn = family.params.big_n as usize;
    let k_max = k_max.min(family.levels());
    let field = CycloField::new(nn as u64);
    let system = SystemMatrix::new(a, nn);
    let levels = transfer_operator_apply(&system, initial_vector(family, &field), &field, k_max)?;
    for (idx, vec) in levels.iter().enumerate() {
        let k = idx + 1;
        if vec[..a].iter().zip(&family.p[idx]).any(|(x, p)| *x != lift(p, &field)) {
            return Ok(false);
        }
        let uv = lift(&family.u[idx].add(&family.v[idx]), &field);
        let vk = lift(&family.v[idx], &field);
        for ell in 1..=nn as i64 {
            let twist = CycloNumber::omega_pow(&field, ell * (k as i64 - 1));
            if vec[a] != rotate(&uv, &field, ell).scale(&twist) {
                return Ok(false);
            }
            if vec[a + ell as usize] != rotate(&vk, &field, ell).scale(&twist) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
