//! Decision procedures with machine-checkable certificates: trivial
//! centralizer, total ergodicity, weak mixing, and minimal self-joinings.
//!
//! For an eventually-periodic spec each property is decided exactly.
//! Trivial centralizer holds iff some window length `k` puts two distinct
//! spacer values into every window of `k` consecutive stages, which for a
//! prefix-plus-tail description reduces to the tail spacer multiset holding
//! two distinct values with `k = |prefix| + |tail|`. Total ergodicity fails
//! iff some `d > 1` and stage `N` satisfy `d | h_N + a_{n,i}` for all
//! `n >= N`; any such `d` must divide every difference of tail spacer
//! values, which collapses the divisor quantifier to the divisors of a
//! single gcd, and the stage quantifier is settled by running `h mod d`
//! until the (stage phase, residue) state cycles. Minimal self-joinings is
//! the conjunction of the two. Prefix-only specs yield Unknown verdicts that
//! carry the strongest one-sided evidence found.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::lattice::is_canonically_bounded;
use crate::params::{height_at, heights, ParamError, ParamSpec};
use crate::tower::{return_levels, TowerError};
use crate::words::stage_offsets;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("inapplicable: the centralizer is not known to be nontrivial")]
    Inapplicable,
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Param(#[from] ParamError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    True,
    False,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::True => "True",
            Status::False => "False",
            Status::Unknown => "Unknown",
        })
    }
}

/// A spacer parameter position `a_{stage, index}` with its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpacerPos {
    pub stage: usize,
    pub index: usize,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Two distinct spacer values inside one tail period; every window of
    /// `k` consecutive stages then contains such a pair.
    DistinctSpacers {
        k: usize,
        first: SpacerPos,
        second: SpacerPos,
    },
    /// All tail spacer values equal `value`.
    ConstantTail {
        value: u64,
    },
    /// Canonical boundedness: the distinct value pair and the window length.
    BoundedWindow {
        k: usize,
        values: (u64, u64),
    },
    /// Total ergodicity fails: `d` divides `h_N + a_{n,i}` for every
    /// `n >= N` and `0 < i < q_n`.
    DivisibilityFailure {
        d: BigUint,
        stage: usize,
    },
    /// Total ergodicity holds: every divisor `>= 2` of the spacer-difference
    /// gcd was excluded by the residue-cycle search.
    NoFailingDivisor {
        gcd: u64,
        divisors_checked: Vec<u64>,
    },
    /// Conjunction of the two sub-verdicts (minimal self-joinings).
    Conjunction {
        centralizer: Box<Verdict>,
        ergodicity: Box<Verdict>,
    },
    /// Evidence for Unknown: the longest all-equal spacer window seen.
    WindowEvidence {
        longest_all_equal: usize,
    },
    None,
}

/// How far a decision searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchHorizon {
    pub stages: usize,
}

/// Tri-state decision result with certificate, horizon and method.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Certificate,
    pub horizon: SearchHorizon,
    pub method: &'static str,
}

/// All tail spacer positions `(absolute stage, index, value)` over one
/// period.
fn tail_positions(spec: &ParamSpec) -> Option<Vec<SpacerPos>> {
    let tail = spec.tail()?;
    let start = spec.tail_start();
    let mut out = Vec::new();
    for (off, st) in tail.iter().enumerate() {
        for (i, &value) in st.spacers().iter().enumerate() {
            out.push(SpacerPos {
                stage: start + off,
                index: i + 1,
                value,
            });
        }
    }
    Some(out)
}

fn longest_all_equal_window(spec: &ParamSpec, horizon: usize) -> usize {
    let mut best = 0;
    let mut run = 0;
    let mut value = None;
    for n in 0..horizon {
        let st = spec.stage(n).expect("stage below horizon");
        let spacers = st.spacers();
        let uniform = spacers.iter().all(|&a| a == spacers[0]);
        if uniform {
            if value != Some(spacers[0]) {
                run = 0;
            }
            run += 1;
            value = Some(spacers[0]);
        } else {
            run = 0;
            value = None;
        }
        best = best.max(run);
    }
    best
}

fn unknown_window_verdict(spec: &ParamSpec) -> Verdict {
    let horizon = spec.tail_start();
    Verdict {
        status: Status::Unknown,
        certificate: Certificate::WindowEvidence {
            longest_all_equal: longest_all_equal_window(spec, horizon),
        },
        horizon: SearchHorizon { stages: horizon },
        method: "horizon-limited",
    }
}

/// Trivial centralizer iff some window length `k` puts distinct spacer
/// values into every window of `k` consecutive stages.
pub fn decide_trivial_centralizer(spec: &ParamSpec) -> Verdict {
    let positions = match tail_positions(spec) {
        Some(p) => p,
        None => return unknown_window_verdict(spec),
    };
    let k = spec.tail_start() + spec.tail().expect("tail present").len();
    let first = positions[0];
    match positions.iter().find(|p| p.value != first.value) {
        Some(&second) => Verdict {
            status: Status::True,
            certificate: Certificate::DistinctSpacers { k, first, second },
            horizon: SearchHorizon { stages: k },
            method: "window-criterion",
        },
        None => Verdict {
            status: Status::False,
            certificate: Certificate::ConstantTail { value: first.value },
            horizon: SearchHorizon { stages: k },
            method: "window-criterion",
        },
    }
}

/// Check a `DistinctSpacers` certificate independently: the two positions
/// really differ and every stage window of length `k` that fits under the
/// verification horizon contains two distinct spacer values.
pub fn verify_distinct_spacers(spec: &ParamSpec, cert: &Certificate) -> bool {
    let Certificate::DistinctSpacers { k, first, second } = cert else {
        return false;
    };
    let lookup = |p: &SpacerPos| spec.stage(p.stage).ok().map(|st| st.spacer(p.index));
    if lookup(first) != Some(first.value)
        || lookup(second) != Some(second.value)
        || first.value == second.value
    {
        return false;
    }
    let period = spec.tail().map_or(1, <[_]>::len);
    let scan = spec.tail_start() + 2 * period;
    (0..=scan).all(|n0| {
        let mut seen = HashSet::new();
        for n in n0..n0 + k {
            if let Ok(st) = spec.stage(n) {
                seen.extend(st.spacers().iter().copied());
            }
        }
        seen.len() >= 2
    })
}

/// Least stage `N0` such that every spacer value at stages `>= N0` is
/// congruent to `r` mod `d` (tail congruence is guaranteed by the caller).
fn stable_residue_start(spec: &ParamSpec, d: u64, r: u64) -> usize {
    let mut start = spec.tail_start();
    for n in (0..spec.tail_start()).rev() {
        let st = spec.stage(n).expect("prefix stage");
        if st.spacers().iter().all(|&a| a % d == r) {
            start = n;
        } else {
            break;
        }
    }
    start
}

/// For a divisor `d` of the tail-difference gcd, find the least `N` with
/// `d | h_N + a_{n,i}` for all `n >= N`, by running the
/// (stage phase, `h mod d`) state until it cycles.
fn failing_stage_for(spec: &ParamSpec, d: u64) -> (Option<usize>, usize) {
    let tail_values = spec.tail_spacer_values().expect("eventually periodic");
    let r = tail_values[0] % d;
    debug_assert!(tail_values.iter().all(|&v| v % d == r));
    let n_min = stable_residue_start(spec, d, r);
    let target = (d - r) % d;
    let prefix = spec.tail_start();
    let period = spec.tail().expect("tail present").len();
    let mut seen = HashSet::new();
    let mut h_mod = 1 % d;
    let mut n = 0usize;
    loop {
        let phase = if n < prefix {
            n
        } else {
            prefix + (n - prefix) % period
        };
        if n >= prefix && !seen.insert((phase, h_mod)) {
            return (None, n);
        }
        if n >= n_min && h_mod == target {
            return (Some(n), n);
        }
        let st = spec.stage(n).expect("eventually periodic");
        h_mod = (h_mod * (st.q() % d) + st.spacer_sum() % d) % d;
        n += 1;
    }
}

fn divisors_of(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut p = 1;
    while p * p <= n {
        if n.is_multiple_of(p) {
            divs.push(p);
            if p != n / p {
                divs.push(n / p);
            }
        }
        p += 1;
    }
    divs.sort_unstable();
    divs
}

/// Total ergodicity, decided exactly for eventually-periodic specs.
///
/// Constant tail value `a`: fails unconditionally with `d = h_N + a` at the
/// first stage `N >= 1` at or after the tail start. Otherwise a failing `d`
/// must divide the gcd `D` of all tail spacer differences, and each divisor
/// of `D` is settled by the residue-cycle search.
pub fn decide_total_ergodicity(spec: &ParamSpec) -> Verdict {
    let tail_values = match spec.tail_spacer_values() {
        Some(v) => v,
        None => {
            let mut verdict = unknown_window_verdict(spec);
            verdict.method = "horizon-limited-divisibility";
            return verdict;
        }
    };
    let lo = *tail_values.iter().min().expect("non-empty tail");
    let gcd = tail_values.iter().fold(0u64, |acc, &v| acc.gcd(&(v - lo)));
    if gcd == 0 {
        // Constant tail: d = h_N + a divides h_N + a_{n,i} for every later
        // stage, and h_N >= 2 once N >= 1.
        let n0 = spec.tail_start().max(1);
        let d = height_at(spec, n0).expect("eventually periodic") + lo;
        return Verdict {
            status: Status::False,
            certificate: Certificate::DivisibilityFailure { d, stage: n0 },
            horizon: SearchHorizon { stages: n0 + 1 },
            method: "constant-tail",
        };
    }
    let mut divisors_checked = Vec::new();
    let mut deepest = 0usize;
    for d in divisors_of(gcd) {
        if d < 2 {
            continue;
        }
        let (failing, searched) = failing_stage_for(spec, d);
        deepest = deepest.max(searched);
        if let Some(n0) = failing {
            return Verdict {
                status: Status::False,
                certificate: Certificate::DivisibilityFailure {
                    d: BigUint::from(d),
                    stage: n0,
                },
                horizon: SearchHorizon { stages: searched },
                method: "divisor-gcd-cycle",
            };
        }
        divisors_checked.push(d);
    }
    Verdict {
        status: Status::True,
        certificate: Certificate::NoFailingDivisor {
            gcd,
            divisors_checked,
        },
        horizon: SearchHorizon { stages: deepest },
        method: "divisor-gcd-cycle",
    }
}

/// Least `(n, i)` with `n0 <= n < horizon`, `0 < i < q_n`, and `d` not
/// dividing `h_{n0} + a_{n,i}`; `None` when no witness exists below the
/// horizon.
pub fn witness_condition_iii(
    spec: &ParamSpec,
    d: &BigUint,
    n0: usize,
    horizon: usize,
) -> Result<Option<(usize, usize)>, ParamError> {
    assert!(*d >= BigUint::from(2u32), "divisor must be at least 2");
    let h_mod = height_at(spec, n0)? % d;
    for n in n0..horizon {
        let st = spec.stage(n)?;
        for i in 1..st.q() as usize {
            if !((&h_mod + st.spacer(i)) % d).is_zero() {
                return Ok(Some((n, i)));
            }
        }
    }
    Ok(None)
}

/// Least `(n, l)` with `n0 <= n < horizon`, `l` a return level of `B_{n+1}`
/// into `B_n` (per `l_0 = 0, l_{j+1} = l_j + h_n + a_{n,j+1}`), and `d` not
/// dividing `l`.
pub fn witness_condition_iv(
    spec: &ParamSpec,
    d: &BigUint,
    n0: usize,
    horizon: usize,
) -> Result<Option<(usize, BigUint)>, ParamError> {
    assert!(*d >= BigUint::from(2u32), "divisor must be at least 2");
    let table = heights(spec, horizon)?;
    for n in n0..horizon {
        for l in stage_offsets(spec, n, table.get(n)) {
            if !(&l % d).is_zero() {
                return Ok(Some((n, l)));
            }
        }
    }
    Ok(None)
}

/// Some `k > 0` with `d` not dividing `k` and `k` a difference of two return
/// levels of `B_{n0}` inside a stage-`M` tower, `M <= horizon`. Sound
/// (`T^k` maps a positive-measure part of `B_{n0}` into itself) but only a
/// semi-decision: `None` means none found below the horizon.
pub fn witness_condition_ii(
    spec: &ParamSpec,
    d: &BigUint,
    n0: usize,
    horizon: usize,
    cap: usize,
) -> Result<Option<BigUint>, DecideError> {
    assert!(*d >= BigUint::from(2u32), "divisor must be at least 2");
    for m in n0 + 1..=horizon {
        let rl = return_levels(spec, n0, m, cap)?;
        let mut best: Option<BigUint> = None;
        for (idx, low) in rl.positions.iter().enumerate() {
            for high in &rl.positions[idx + 1..] {
                let k = high - low;
                if !(&k % d).is_zero() && best.as_ref().is_none_or(|b| k < *b) {
                    best = Some(k);
                }
            }
        }
        if best.is_some() {
            return Ok(best);
        }
    }
    Ok(None)
}

/// Verify a total-ergodicity failure certificate `(d, N)` independently:
/// condition (iii) must produce no witness up to a horizon covering the
/// preperiod plus one full period of the `h mod d` cycle.
pub fn verify_divisibility_failure(spec: &ParamSpec, cert: &Certificate) -> bool {
    let Certificate::DivisibilityFailure { d, stage } = cert else {
        return false;
    };
    let period = spec.tail().map_or(1, <[_]>::len);
    let d_len = d.to_usize().unwrap_or(64).min(1 << 16);
    let horizon = stage + spec.tail_start() + period * (d_len + 1) + 2;
    witness_condition_iii(spec, d, *stage, horizon) == Ok(None)
}

/// Minimal self-joinings: totally ergodic and trivial centralizer.
pub fn decide_msj(spec: &ParamSpec) -> Verdict {
    let centralizer = decide_trivial_centralizer(spec);
    let ergodicity = decide_total_ergodicity(spec);
    let status = match (centralizer.status, ergodicity.status) {
        (Status::True, Status::True) => Status::True,
        (Status::False, _) | (_, Status::False) => Status::False,
        _ => Status::Unknown,
    };
    let horizon = SearchHorizon {
        stages: centralizer.horizon.stages.max(ergodicity.horizon.stages),
    };
    Verdict {
        status,
        certificate: Certificate::Conjunction {
            centralizer: Box::new(centralizer),
            ergodicity: Box::new(ergodicity),
        },
        horizon,
        method: "ryzhikov-conjunction",
    }
}

/// Weak mixing. For a canonically bounded spec this coincides with total
/// ergodicity; otherwise only the necessary condition (weak mixing implies
/// total ergodicity) can refute it.
pub fn decide_weak_mixing(spec: &ParamSpec) -> Verdict {
    let bounded = is_canonically_bounded(spec);
    let ergodicity = decide_total_ergodicity(spec);
    match bounded.status {
        Status::True => Verdict {
            method: "corollary-equivalence",
            ..ergodicity
        },
        _ if ergodicity.status == Status::False => Verdict {
            status: Status::False,
            method: "necessary-condition",
            ..ergodicity
        },
        _ => Verdict {
            status: Status::Unknown,
            certificate: Certificate::None,
            horizon: ergodicity.horizon,
            method: "corollary-hypotheses-not-met",
        },
    }
}

/// For a constant-tail spec (nontrivial centralizer), the stages `n_k` and
/// powers `r_k = h_{n_k} + a` whose shifts converge weakly to the identity,
/// starting at the first stage `>= 1` at or after the tail start.
pub fn nontrivial_centralizer_certificate(
    spec: &ParamSpec,
    count: usize,
) -> Result<Vec<(usize, BigUint)>, DecideError> {
    let verdict = decide_trivial_centralizer(spec);
    let Certificate::ConstantTail { value } = verdict.certificate else {
        return Err(DecideError::Inapplicable);
    };
    let start = spec.tail_start().max(1);
    let table = heights(spec, start + count)?;
    Ok((start..start + count)
        .map(|n| (n, table.get(n) + value))
        .collect())
}
