//! Exact checks on weak combinatorics of quartic-line arrangements and a
//! bounded enumerator for non-negative integer solutions of linear systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numberfield::{int, rat, Rational};
use crate::tangency::SingularityProfile;

/// Component data and singularity counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeakCombinatorics {
    pub k: u64,
    pub d: u64,
    pub n2: u64,
    pub n3: u64,
    pub n4: u64,
    pub t2: u64,
    pub t5: u64,
    pub d6: u64,
    pub t7: u64,
}

impl WeakCombinatorics {
    pub fn from_profile(k: u64, d: u64, p: &SingularityProfile) -> Self {
        WeakCombinatorics {
            k,
            d,
            n2: p.n2,
            n3: p.n3,
            n4: p.n4,
            t2: p.t2,
            t5: p.t5,
            d6: p.d6,
            t7: p.t7,
        }
    }

    /// Total degree `4k + d`.
    pub fn m(&self) -> u64 {
        4 * self.k + self.d
    }
}

fn q(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn binom2(n: u64) -> i128 {
    (n as i128) * (n as i128 - 1) / 2
}

/// Outcome of the pairwise intersection count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountCheck {
    pub lhs: i128,
    pub rhs: i128,
    /// `lhs - rhs`
    pub residual: i128,
}

impl CountCheck {
    pub fn holds(&self) -> bool {
        self.residual == 0
    }
}

/// `16 C(k,2) + 4kd + C(d,2) = n2 + 2t2 + 3n3 + 3t5 + 4d6 + 4t7 + 6n4`.
pub fn count_check(wc: &WeakCombinatorics) -> CountCheck {
    let lhs = 16 * binom2(wc.k) + 4 * (wc.k as i128) * (wc.d as i128) + binom2(wc.d);
    let rhs = [
        (1, wc.n2),
        (2, wc.t2),
        (3, wc.n3),
        (3, wc.t5),
        (4, wc.d6),
        (4, wc.t7),
        (6, wc.n4),
    ]
    .iter()
    .map(|&(c, n)| c * n as i128)
    .sum::<i128>();
    CountCheck {
        lhs,
        rhs,
        residual: lhs - rhs,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum HirzebruchOutcome {
    Evaluated {
        holds: bool,
        #[serde(serialize_with = "ser_rational")]
        lhs: Rational,
        #[serde(serialize_with = "ser_rational")]
        rhs: Rational,
        #[serde(serialize_with = "ser_rational")]
        slack: Rational,
    },
    HypothesisViolated {
        reason: String,
    },
}

impl HirzebruchOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, HirzebruchOutcome::Evaluated { holds: true, .. })
    }

    pub fn slack(&self) -> Option<&Rational> {
        match self {
            HirzebruchOutcome::Evaluated { slack, .. } => Some(slack),
            HirzebruchOutcome::HypothesisViolated { .. } => None,
        }
    }
}

fn ser_rational<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::numberfield::format_rational(x))
}

/// Right-hand side `d + 13/8 d6 + 5/2 t2 + 5 t5 + 29/4 t7`.
fn hirzebruch_rhs(wc: &WeakCombinatorics) -> Rational {
    q(wc.d) + rat(13, 8) * q(wc.d6) + rat(5, 2) * q(wc.t2) + int(5) * q(wc.t5) + rat(29, 4) * q(wc.t7)
}

/// `56k + n2 + 3/4 n3 >= d + 13/8 d6 + 5/2 t2 + 5 t5 + 29/4 t7`, for
/// `k >= 1`, `d >= 1`, `4k + d >= 6`.
pub fn hirzebruch_check(wc: &WeakCombinatorics) -> HirzebruchOutcome {
    let reason = if wc.k == 0 {
        Some("no quartic component (k = 0)")
    } else if wc.d == 0 {
        Some("no line component (d = 0)")
    } else if wc.m() < 6 {
        Some("total degree 4k + d below 6")
    } else {
        None
    };
    if let Some(r) = reason {
        return HirzebruchOutcome::HypothesisViolated { reason: r.into() };
    }
    let lhs = int(56) * q(wc.k) + q(wc.n2) + rat(3, 4) * q(wc.n3);
    let rhs = hirzebruch_rhs(wc);
    let slack = &lhs - &rhs;
    HirzebruchOutcome::Evaluated {
        holds: !slack.is_negative(),
        lhs,
        rhs,
        slack,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LangerBound {
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    /// `(5 m^2 - 6 m) / 4`
    #[serde(serialize_with = "ser_rational")]
    pub cap: Rational,
    pub feasible: bool,
}

/// `9/4 n2 + 45/8 t2 + 117/16 n3 + 35/4 t5 + 333/32 d6 + 189/16 t7 + 15 n4`
/// against `(5m^2 - 6m)/4`.
pub fn langer_lhs_bound(wc: &WeakCombinatorics) -> LangerBound {
    let value = rat(9, 4) * q(wc.n2)
        + rat(45, 8) * q(wc.t2)
        + rat(117, 16) * q(wc.n3)
        + rat(35, 4) * q(wc.t5)
        + rat(333, 32) * q(wc.d6)
        + rat(189, 16) * q(wc.t7)
        + int(15) * q(wc.n4);
    let m = q(wc.m());
    let cap = (int(5) * &m * &m - int(6) * &m) / int(4);
    LangerBound {
        feasible: value <= cap,
        value,
        cap,
    }
}

/// Upper bound for quadruple points of 28 bitangents with `h` hyperflexes.
///
/// With the quartic as the only other component, `t2 = 56 - 2h` and
/// `t7 = h`; the Hirzebruch inequality gives a lower bound for `n2 + n3`, and
/// `C(28,2) = n2 + 3 n3 + 6 n4` turns it into a bound for `n4`.
pub fn quadruple_bound(h: u32) -> Result<u64> {
    if h > 12 {
        return Err(Error::HyperflexRange(h));
    }
    let wc = WeakCombinatorics {
        k: 1,
        d: 28,
        t2: 56 - 2 * h as u64,
        t7: h as u64,
        ..Default::default()
    };
    // 56 + n2 + 3/4 n3 >= rhs, hence n2 + n3 >= rhs - 56
    let lower = (hirzebruch_rhs(&wc) - int(56)).ceil().to_integer();
    let pairs = BigInt::from(binom2(28) as i64);
    let n4 = (pairs - lower).div_floor(&BigInt::from(6));
    Ok(n4.to_u64().unwrap_or(0))
}

/// Linear equations over named non-negative integer unknowns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiophantineSystem {
    pub unknowns: Vec<String>,
    pub equations: Vec<Equation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equation {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
}

impl DiophantineSystem {
    pub fn new(unknowns: &[&str], equations: &[(&[i64], i64)]) -> Self {
        DiophantineSystem {
            unknowns: unknowns.iter().map(|s| s.to_string()).collect(),
            equations: equations
                .iter()
                .map(|(c, r)| Equation {
                    coeffs: c.to_vec(),
                    rhs: *r,
                })
                .collect(),
        }
    }

    /// Per-unknown upper bounds from equations whose coefficients are all
    /// non-negative: `x_j <= rhs / c_j` whenever `c_j > 0`.
    pub fn bounds(&self) -> Result<Vec<i64>> {
        let n = self.unknowns.len();
        for (k, e) in self.equations.iter().enumerate() {
            if e.coeffs.len() != n {
                return Err(Error::Parse(format!(
                    "equation {} has {} coefficients for {n} unknowns",
                    k + 1,
                    e.coeffs.len()
                )));
            }
        }
        let mut bounds = vec![None::<i64>; n];
        for e in &self.equations {
            if e.coeffs.iter().any(|&c| c < 0) {
                continue;
            }
            for (j, &c) in e.coeffs.iter().enumerate() {
                if c > 0 {
                    let b = if e.rhs < 0 { -1 } else { e.rhs / c };
                    bounds[j] = Some(bounds[j].map_or(b, |old: i64| old.min(b)));
                }
            }
        }
        bounds
            .into_iter()
            .enumerate()
            .map(|(j, b)| b.ok_or_else(|| Error::Unbounded(self.unknowns[j].clone())))
            .collect()
    }
}

/// All non-negative integer solutions, in lexicographic order.
pub fn enumerate_nonneg(sys: &DiophantineSystem) -> Result<Vec<Vec<i64>>> {
    let bounds = sys.bounds()?;
    let mut out = Vec::new();
    if bounds.iter().any(|&b| b < 0) {
        return Ok(out);
    }
    let n = bounds.len();
    let mut x = vec![0i64; n];
    // partial sums of each equation over the fixed prefix
    let mut partial = vec![0i64; sys.equations.len()];
    search(sys, &bounds, 0, &mut x, &mut partial, &mut out);
    Ok(out)
}

fn search(
    sys: &DiophantineSystem,
    bounds: &[i64],
    j: usize,
    x: &mut [i64],
    partial: &mut [i64],
    out: &mut Vec<Vec<i64>>,
) {
    if j == x.len() {
        if sys.equations.iter().zip(partial.iter()).all(|(e, &s)| s == e.rhs) {
            out.push(x.to_vec());
        }
        return;
    }
    for v in 0..=bounds[j] {
        // prune equations whose remaining coefficients are all non-negative
        let mut ok = true;
        for (e, s) in sys.equations.iter().zip(partial.iter()) {
            let cur = s + e.coeffs[j] * v;
            if e.coeffs[j..].iter().all(|&c| c >= 0) && cur > e.rhs {
                ok = false;
                break;
            }
        }
        if !ok {
            break;
        }
        for (e, s) in sys.equations.iter().zip(partial.iter_mut()) {
            *s += e.coeffs[j] * v;
        }
        x[j] = v;
        search(sys, bounds, j + 1, x, partial, out);
        for (e, s) in sys.equations.iter().zip(partial.iter_mut()) {
            *s -= e.coeffs[j] * v;
        }
    }
    x[j] = 0;
}

/// Counts forced on a free arrangement of one smooth quartic and two lines
/// whose singularities lie among A1, A3, D4, A5, D6, A7: the pairwise count
/// and the total Tjurina number required by freeness.
pub fn two_lines_system() -> DiophantineSystem {
    DiophantineSystem::new(
        &["n2", "t2", "n3", "t5", "d6", "t7"],
        &[(&[1, 2, 3, 3, 4, 4], 9), (&[1, 3, 4, 5, 6, 7], 19)],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> WeakCombinatorics {
        WeakCombinatorics {
            k: 1,
            d: 28,
            n2: 252,
            n4: 21,
            t2: 56,
            ..Default::default()
        }
    }

    #[test]
    fn klein_counts() {
        let c = count_check(&klein());
        assert_eq!((c.lhs, c.rhs, c.residual), (490, 490, 0));
        let h = hirzebruch_check(&klein());
        assert_eq!(h.slack(), Some(&int(140)));
        let l = langer_lhs_bound(&klein());
        assert_eq!((l.value.clone(), l.cap.clone(), l.feasible), (int(1197), int(1232), true));
    }

    #[test]
    fn quadruple_bounds() {
        assert_eq!(quadruple_bound(0).unwrap(), 44);
        assert_eq!(quadruple_bound(12).unwrap(), 39);
        assert!(quadruple_bound(13).is_err());
    }

    #[test]
    fn small_systems() {
        let s = DiophantineSystem::new(&["x", "y"], &[(&[1, 1], 2)]);
        assert_eq!(enumerate_nonneg(&s).unwrap(), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert!(enumerate_nonneg(&two_lines_system()).unwrap().is_empty());
        let unbounded = DiophantineSystem::new(&["x", "y"], &[(&[1, -1], 0)]);
        assert!(matches!(enumerate_nonneg(&unbounded), Err(Error::Unbounded(_))));
    }
}
