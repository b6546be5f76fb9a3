//! Built-in parameter specs for well-known transformations.

use crate::params::{ParamSpec, StageSpec};

/// Chacon's transformation: `v_{n+1} = v_n v_n 1 v_n`, i.e. `q = 3`,
/// spacers `(0, 1)` at every stage.
pub fn chacon() -> ParamSpec {
    ParamSpec::new(
        vec![],
        Some(vec![StageSpec::new(3, vec![0, 1]).unwrap()]),
        Some("chacon".into()),
    )
    .unwrap()
}

/// The dyadic odometer: `q = 2`, no spacers.
pub fn odometer2() -> ParamSpec {
    ParamSpec::new(
        vec![],
        Some(vec![StageSpec::new(2, vec![0]).unwrap()]),
        Some("odometer2".into()),
    )
    .unwrap()
}

/// A constant spec: every stage cuts into `q` columns with all spacer runs
/// equal to `a`.
pub fn constant_spec(q: u64, a: u64) -> ParamSpec {
    ParamSpec::new(
        vec![],
        Some(vec![StageSpec::new(q, vec![a; (q - 1) as usize]).unwrap()]),
        None,
    )
    .unwrap()
}

/// `true` iff `t` is a triangular number `k(k+1)/2` for some `k >= 1`.
pub fn is_triangular(t: u64) -> bool {
    if t == 0 {
        return false;
    }
    let d = 8 * t + 1;
    let r = d.isqrt();
    r * r == d
}

/// The del Junco-Rudolph example as a generated prefix of `m` stages:
/// `q = 2` everywhere, with spacer 1 at stage `n` exactly when `n + 1` is
/// triangular (so `v_{n+1} = v_n 1 v_n` at those stages and `v_{n+1} = v_n v_n`
/// otherwise).
pub fn djr_prefix(m: usize) -> ParamSpec {
    let stages = (0..m)
        .map(|n| {
            let a = if is_triangular(n as u64 + 1) { 1 } else { 0 };
            StageSpec::new(2, vec![a]).unwrap()
        })
        .collect();
    ParamSpec::new(stages, None, Some(format!("djr{m}"))).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangular_numbers() {
        let tri: Vec<u64> = (1..30).filter(|&t| is_triangular(t)).collect();
        assert_eq!(tri, [1, 3, 6, 10, 15, 21, 28]);
    }

    #[test]
    fn djr_spacer_pattern() {
        let spec = djr_prefix(16);
        let spacers: Vec<u64> = (0..16).map(|n| spec.stage(n).unwrap().spacer(1)).collect();
        assert_eq!(spacers, [1, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0]);
    }
}
