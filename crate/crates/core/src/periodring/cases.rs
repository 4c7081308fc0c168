//! Period invariants, lattice volumes and Deligne periods for the four
//! families, written in terms of the Hodge-de Rham invariants `Q_p`, `R_q`,
//! the determinants `delta`, `detA`, `detB`, and for orthogonal groups the
//! invariants `Delta` and `detXi` of the middle Hodge piece.

use super::{Embedding, PeriodScalar, Relation, RelationSet};
use crate::case::Case;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

const S: Option<Embedding> = Some(Embedding::Sigma);
const SB: Option<Embedding> = Some(Embedding::SigmaBar);

/// Sign of an eigenspace of complex conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Multiplies by `(-1)^k`.
    pub fn times_parity(self, k: i64) -> Self {
        if k.rem_euclid(2) == 1 {
            self.flip()
        } else {
            self
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// Which factor of `M x N` a volume refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Factor {
    M,
    N,
}

fn sym(name: &str, i: i64, emb: Option<Embedding>) -> PeriodScalar {
    PeriodScalar::sym(name, Some(i), emb)
}

fn named(name: &str, emb: Option<Embedding>) -> PeriodScalar {
    PeriodScalar::sym(name, None, emb)
}

fn rel(label: impl Into<String>, lhs: PeriodScalar, rhs: PeriodScalar) -> Relation {
    Relation { label: label.into(), value: lhs / rhs }
}

fn check_n(n: i64) -> Result<()> {
    if n < 1 {
        return Err(Error::Invalid(format!("rank parameter n = {n} must be positive")));
    }
    Ok(())
}

fn tpi(k: i64) -> PeriodScalar {
    PeriodScalar::two_pi_i().powi(k)
}

/// The symbol `delta(X)` for `X` one of `M`, `N`, `Mpsi`, `Npsi`.
pub fn delta(x: &str) -> PeriodScalar {
    named(&format!("delta_{x}"), None)
}

/// The symbol `c^{sign}(X)`.
pub fn c_sym(sign: Sign, x: &str) -> PeriodScalar {
    let s = match sign {
        Sign::Plus => "cplus",
        Sign::Minus => "cminus",
    };
    named(&format!("{s}_{x}"), None)
}

/// Relations among the invariants of `case` at rank `n`.
pub fn relations(case: Case, n: i64) -> Result<RelationSet> {
    check_n(n)?;
    let mut rels = Vec::new();
    match case {
        Case::PglQ => {
            let j = n - 1;
            for (name, w) in [("Q", j), ("R", j + 1)] {
                for p in 0..=w {
                    if p <= w - p {
                        rels.push(rel(
                            format!("{name}_{p} {name}_{} ~ 1", w - p),
                            sym(name, p, None) * sym(name, w - p, None),
                            PeriodScalar::one(),
                        ));
                    }
                }
            }
            for (x, name, w) in [("M", "Q", j), ("N", "R", j + 1)] {
                let prod: PeriodScalar = (0..=w).filter(|p| 2 * p < w).map(|p| sym(name, p, None)).product();
                rels.push(rel(
                    format!("delta({x}) ~ prod {name} c+ c-"),
                    delta(x),
                    prod * c_sym(Sign::Plus, x) * c_sym(Sign::Minus, x),
                ));
                for y in [x.to_string(), format!("{x}psi")] {
                    rels.push(rel(format!("delta({y})^2"), delta(&y).powi(2), tpi(-w * (w + 1))));
                }
            }
        }
        Case::PglE => {
            let j = n - 1;
            for (name, w) in [("Q", j), ("R", j + 1)] {
                for p in 0..=w {
                    rels.push(rel(
                        format!("{name}_{p}@sb {name}_{}@s ~ 1", w - p),
                        sym(name, p, SB) * sym(name, w - p, S),
                        PeriodScalar::one(),
                    ));
                }
            }
            for (det, lam, name, w) in [("detA", "lambda_M", "Q", j), ("detB", "lambda_N", "R", j + 1)] {
                let prod: PeriodScalar = (0..=w).map(|p| sym(name, p, S)).product();
                rels.push(rel(format!("conj({lam}) ~ {lam} prod {name}"), named(lam, SB), named(lam, S) * prod));
                rels.push(rel(format!("{lam} conj({lam}) ~ 1"), named(lam, S) * named(lam, SB), PeriodScalar::one()));
                rels.push(rel(
                    format!("{det} {lam} (2pi i)^{} ~ 1", w * (w + 1) / 2),
                    named(det, S) * named(lam, S) * tpi(w * (w + 1) / 2),
                    PeriodScalar::one(),
                ));
            }
        }
        Case::SoEven | Case::SoOdd => {
            let (wq, wr, a_exp) = match case {
                Case::SoEven => (2 * n - 2, 2 * n - 1, 2 * n * (2 * n - 2)),
                _ => (2 * n, 2 * n - 1, 2 * n * (2 * n + 2)),
            };
            for k in 0..wq / 2 {
                rels.push(rel(
                    format!("Q_{k} Q_{} ~ 1", wq - k),
                    sym("Q", k, None) * sym("Q", wq - k, None),
                    PeriodScalar::one(),
                ));
            }
            for k in 0..=wr / 2 {
                rels.push(rel(
                    format!("R_{k} R_{} ~ 1", wr - k),
                    sym("R", k, None) * sym("R", wr - k, None),
                    PeriodScalar::one(),
                ));
            }
            let d = || named("Delta", S);
            let xi = || named("detXi", S);
            rels.push(rel("Delta conj(Delta) ~ 1", d().abs_sq(), PeriodScalar::one()));
            rels.push(rel("detXi conj(detXi) ~ 1", xi().abs_sq(), PeriodScalar::one()));
            rels.push(rel("Delta detXi is real", d() * xi(), (d() * xi()).conj()));
            rels.push(rel(
                format!("detA^2 ~ Delta^-1 (2pi i)^-{a_exp}"),
                named("detA", S).powi(2),
                d().inv() * tpi(-a_exp),
            ));
            rels.push(rel(
                format!("detB^2 ~ (2pi i)^-{}", 2 * n * (2 * n - 1)),
                named("detB", S).powi(2),
                tpi(-2 * n * (2 * n - 1)),
            ));
        }
    }
    RelationSet::new(rels)
}

/// Volume of the Hodge lattice `L_M` or `L_N`.
pub fn vol_l(case: Case, n: i64, factor: Factor) -> Result<PeriodScalar> {
    check_n(n)?;
    let j = n - 1;
    Ok(match (case, factor) {
        (Case::PglQ, Factor::M) => (0..=j).map(|p| sym("Q", p, None).powi(p)).product(),
        (Case::PglQ, Factor::N) => (0..=j + 1).map(|p| sym("R", p, None).powi(p)).product(),
        (Case::PglE, Factor::M) => (0..=j).map(|p| sym("Q", p, S).abs_sq().powi(p)).product(),
        (Case::PglE, Factor::N) => (0..=j + 1).map(|p| sym("R", p, S).abs_sq().powi(p)).product(),
        (Case::SoEven, Factor::M) => {
            let q: PeriodScalar = (0..=n - 2).map(|k| sym("Q", k, None).powi(-(2 * n - 2 - 2 * k))).product();
            PeriodScalar::sqrt_d().powi(n * n - n) * q * (named("Delta", S) * named("detXi", S)).powi(n - 1)
        }
        (Case::SoOdd, Factor::M) => {
            let q: PeriodScalar = (0..=n - 1).map(|k| sym("Q", k, None).powi(-(2 * n - 2 * k))).product();
            PeriodScalar::sqrt_d().powi(n * n + n) * q * (named("Delta", S) * named("detXi", S)).powi(n)
        }
        (Case::SoEven | Case::SoOdd, Factor::N) => {
            let r: PeriodScalar = (0..n).map(|i| sym("R", i, None).powi(-(2 * n - 2 * i))).product();
            PeriodScalar::sqrt_d().powi(n * n) * r
        }
    })
}

/// Deligne period of `M x N` (of its restriction of scalars over `E`),
/// before the Tate twist to the central point. For `PGL_Q` the flag `psi`
/// twists the even-weight factor by a quadratic character of sign `-1`:
/// `M` when `n` is odd, `N` when `n` is even.
pub fn deligne_c(case: Case, n: i64, sign: Sign, psi: bool) -> Result<PeriodScalar> {
    check_n(n)?;
    if psi && case != Case::PglQ {
        return Err(Error::Invalid(format!("the psi twist is only defined for pgl-q, not {case}")));
    }
    let j = n - 1;
    Ok(match case {
        Case::PglQ => {
            let s = if psi { sign.flip() } else { sign };
            if j % 2 == 0 {
                let t = j / 2;
                let m = if psi { "Mpsi" } else { "M" };
                let q: PeriodScalar = (0..t).map(|p| sym("Q", p, None).powi(p - t)).product();
                let r: PeriodScalar = (0..=t).map(|p| sym("R", p, None).powi(p - t)).product();
                delta(m).powi(t + 1) * delta("N").powi(t) * q * r * c_sym(s, "N")
            } else {
                let t = (j - 1) / 2;
                let nn = if psi { "Npsi" } else { "N" };
                let q: PeriodScalar = (0..=t).map(|p| sym("Q", p, None).powi(p - t)).product();
                let r: PeriodScalar = (0..=t).map(|p| sym("R", p, None).powi(p - t - 1)).product();
                delta("M").powi(t + 1) * delta(nn).powi(t + 1) * q * r * c_sym(s, "M")
            }
        }
        Case::PglE => {
            let qr: PeriodScalar = (0..=j)
                .flat_map(|t| (0..=j - t).map(move |u| (t, u)))
                .map(|(t, u)| (sym("Q", t, S) * sym("R", u, S)).inv())
                .product();
            PeriodScalar::sqrt_minus_d().powi(-(j + 1) * (j + 2) / 2)
                * qr
                * named("detA", S).powi(j + 2)
                * named("detB", S).powi(j + 1)
        }
        Case::SoEven | Case::SoOdd => {
            let (d_exp, q, b_exp) = if case == Case::SoEven {
                let q: PeriodScalar = (0..=n - 2).map(|k| sym("Q", k, None).powi(-(2 * n - 2 - 2 * k))).product();
                (-2 * n * n, q, 2 * n)
            } else {
                let q: PeriodScalar = (0..=n - 1).map(|k| sym("Q", k, None).powi(-(2 * n - 2 * k))).product();
                (-2 * n * (n + 1), q, 2 * n + 2)
            };
            let r: PeriodScalar = (0..n).map(|i| sym("R", i, None).powi(-(2 * n - 2 * i))).product();
            PeriodScalar::sqrt_minus_d().powi(d_exp)
                * q
                * r
                * named("detXi", S).powi(-n)
                * named("detA", S).powi(2 * n)
                * named("detB", S).powi(b_exp)
        }
    })
}

/// The alternative shape of the `PGL_E` period with the `Q` and `R`
/// products collected by index.
pub fn deligne_c_pgl_e_collected(n: i64) -> PeriodScalar {
    let j = n - 1;
    let q: PeriodScalar = (0..=j).map(|t| sym("Q", t, S).powi(-(j + 1 - t))).product();
    let r: PeriodScalar = (0..=j).map(|t| sym("R", t, S).powi(-(j + 1 - t))).product();
    PeriodScalar::sqrt_minus_d().powi(-(j + 1) * (j + 2) / 2)
        * q
        * r
        * named("detA", S).powi(j + 2)
        * named("detB", S).powi(j + 1)
}

/// Deligne period of the motive twisted to its central critical point.
pub fn deligne_c_central(case: Case, n: i64, sign: Sign, psi: bool) -> Result<PeriodScalar> {
    check_n(n)?;
    let (k, d) = match case {
        Case::PglQ => (n, n * n * (n + 1) / 2),
        Case::PglE => (n, n * n * (n + 1)),
        Case::SoEven => (2 * n - 1, 4 * n * n * (2 * n - 1)),
        Case::SoOdd => (2 * n, 4 * n * n * (2 * n + 2)),
    };
    Ok(tpi(d) * deligne_c(case, n, sign.times_parity(k), psi)?)
}

/// The ratio `L(1/2)`-period over the product of the lattice volumes. For
/// `PGL_Q` this is the product of the ratios for the untwisted and the
/// `psi`-twisted pair, each with the period squared.
pub fn condensate(case: Case, n: i64, sign: Sign) -> Result<PeriodScalar> {
    let vol = vol_l(case, n, Factor::M)? * vol_l(case, n, Factor::N)?;
    Ok(match case {
        Case::PglQ => {
            let a = deligne_c_central(case, n, sign, false)?.powi(2) / vol.clone();
            let b = deligne_c_central(case, n, sign, true)?.powi(2) / vol;
            a * b
        }
        Case::PglE => deligne_c_central(case, n, sign, false)?.powi(2) / vol,
        Case::SoEven | Case::SoOdd => deligne_c_central(case, n, sign, false)? / vol,
    })
}

/// The factor beyond `(2 pi i)^m` that the condensate carries modulo `Q*`.
/// It is trivial modulo `sqrt(Q*)`.
pub fn condensate_companion(case: Case, n: i64) -> PeriodScalar {
    match case {
        Case::PglQ | Case::PglE => PeriodScalar::one(),
        Case::SoEven => PeriodScalar::sqrt_d().powi(n) * named("Delta", S) * named("detXi", S),
        Case::SoOdd => PeriodScalar::sqrt_d().powi(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periodring::Modulus;

    #[test]
    fn pgl_q_volume_example() {
        assert_eq!(vol_l(Case::PglQ, 2, Factor::M).unwrap(), sym("Q", 1, None));
        assert!(vol_l(Case::PglE, 1, Factor::M).unwrap().is_one());
    }

    #[test]
    fn middle_norm_is_trivial_for_even_weight() {
        let rels = relations(Case::PglE, 3).unwrap();
        assert!(rels.is_trivial(&sym("Q", 1, S).abs_sq(), Modulus::Q));
        assert!(!rels.is_trivial(&sym("Q", 0, S).abs_sq(), Modulus::Q));
    }

    #[test]
    fn conjugate_relation_is_derived() {
        for n in 1..=5 {
            let rels = relations(Case::PglE, n).unwrap();
            let j = n - 1;
            for p in 0..=j {
                let x = sym("Q", p, S).abs_sq() * sym("Q", j - p, S).abs_sq();
                assert!(rels.is_trivial(&x, Modulus::Q), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn so_even_n1_matches_displayed_residual() {
        let rels = relations(Case::SoEven, 1).unwrap();
        let ratio = condensate(Case::SoEven, 1, Sign::Plus).unwrap();
        let expected = tpi(2) * condensate_companion(Case::SoEven, 1);
        assert!(rels.equivalent(&ratio, &expected, Modulus::Q));
        assert!(rels.equivalent(&ratio, &tpi(2), Modulus::SqrtQ));
    }
}
