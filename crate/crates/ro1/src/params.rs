//! Cutting and spacer parameters: stage specifications, tower heights, and the
//! scalar quantities derived from them.
//!
//! Stages are encoded as a finite prefix plus an optional non-empty repeating
//! tail. A spec with a tail defines a stage for every `n` and therefore has
//! bounded parameters; a prefix-only spec is "horizon-limited" and only
//! defines stages `0 .. prefix.len()`.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("stage has q={q} but {got} spacer values (expected {expected})")]
    SpacerCountMismatch { q: u64, expected: u64, got: usize },
    #[error("cut count q={q} is too small (q > 1 required)")]
    CutTooSmall { q: i64 },
    #[error("negative spacer value {value} at stage {stage}, index {index}")]
    NegativeSpacer {
        stage: usize,
        index: usize,
        value: i64,
    },
    #[error("repeating tail must be non-empty")]
    EmptyTail,
    #[error("stage {stage} is beyond the horizon of a prefix-only spec ({horizon} stages)")]
    BeyondHorizon { stage: usize, horizon: usize },
}

/// One stage of the construction: the cut count `q` and the `q - 1` spacer
/// run lengths inserted between consecutive blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StageSpec {
    q: u64,
    spacers: Vec<u64>,
}

impl StageSpec {
    pub fn new(q: u64, spacers: Vec<u64>) -> Result<Self, ParamError> {
        if q < 2 {
            return Err(ParamError::CutTooSmall { q: q as i64 });
        }
        if spacers.len() as u64 != q - 1 {
            return Err(ParamError::SpacerCountMismatch {
                q,
                expected: q - 1,
                got: spacers.len(),
            });
        }
        Ok(StageSpec { q, spacers })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Spacer values `a_1 ..= a_{q-1}` in order. `spacer(i)` below is 1-based
    /// to match the usual indexing `0 < i < q`.
    pub fn spacers(&self) -> &[u64] {
        &self.spacers
    }

    pub fn spacer(&self, i: usize) -> u64 {
        assert!(i >= 1 && (i as u64) < self.q, "spacer index out of range");
        self.spacers[i - 1]
    }

    pub fn spacer_sum(&self) -> u64 {
        self.spacers.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.spacers.iter().all(|&a| a == self.spacers[0])
    }
}

/// Unvalidated stage data as read from a parameter file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawStage {
    pub q: i64,
    pub spacers: Vec<i64>,
}

/// Unvalidated spec data as read from a parameter file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawSpec {
    pub prefix: Vec<RawStage>,
    pub tail: Option<Vec<RawStage>>,
    pub name: Option<String>,
}

/// A transformation description: prefix stages, then (optionally) the tail
/// cycled forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamSpec {
    prefix: Vec<StageSpec>,
    tail: Option<Vec<StageSpec>>,
    name: Option<String>,
}

impl ParamSpec {
    pub fn new(
        prefix: Vec<StageSpec>,
        tail: Option<Vec<StageSpec>>,
        name: Option<String>,
    ) -> Result<Self, ParamError> {
        if let Some(t) = &tail {
            if t.is_empty() {
                return Err(ParamError::EmptyTail);
            }
        }
        Ok(ParamSpec { prefix, tail, name })
    }

    pub fn prefix(&self) -> &[StageSpec] {
        &self.prefix
    }

    pub fn tail(&self) -> Option<&[StageSpec]> {
        self.tail.as_deref()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Stage index where the repeating tail begins (= prefix length).
    pub fn tail_start(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_eventually_periodic(&self) -> bool {
        self.tail.is_some()
    }

    /// Number of defined stages, or `None` when the spec has a tail and is
    /// total on the naturals.
    pub fn defined_stages(&self) -> Option<usize> {
        match self.tail {
            Some(_) => None,
            None => Some(self.prefix.len()),
        }
    }

    pub fn stage(&self, n: usize) -> Result<&StageSpec, ParamError> {
        if n < self.prefix.len() {
            return Ok(&self.prefix[n]);
        }
        match &self.tail {
            Some(t) => Ok(&t[(n - self.prefix.len()) % t.len()]),
            None => Err(ParamError::BeyondHorizon {
                stage: n,
                horizon: self.prefix.len(),
            }),
        }
    }

    /// All spacer values of one full tail period, in stage order.
    pub fn tail_spacer_values(&self) -> Option<Vec<u64>> {
        self.tail
            .as_ref()
            .map(|t| t.iter().flat_map(|s| s.spacers.iter().copied()).collect())
    }
}

/// Validate raw parameter data into a `ParamSpec`.
pub fn validate_spec(raw: &RawSpec) -> Result<ParamSpec, ParamError> {
    let check = |stages: &[RawStage], base: usize| -> Result<Vec<StageSpec>, ParamError> {
        stages
            .iter()
            .enumerate()
            .map(|(k, rs)| {
                if rs.q < 2 {
                    return Err(ParamError::CutTooSmall { q: rs.q });
                }
                let mut spacers = Vec::with_capacity(rs.spacers.len());
                for (i, &a) in rs.spacers.iter().enumerate() {
                    if a < 0 {
                        return Err(ParamError::NegativeSpacer {
                            stage: base + k,
                            index: i + 1,
                            value: a,
                        });
                    }
                    spacers.push(a as u64);
                }
                StageSpec::new(rs.q as u64, spacers)
            })
            .collect()
    };
    let prefix = check(&raw.prefix, 0)?;
    let tail = match &raw.tail {
        Some(t) if t.is_empty() => return Err(ParamError::EmptyTail),
        Some(t) => Some(check(t, raw.prefix.len())?),
        None => None,
    };
    ParamSpec::new(prefix, tail, raw.name.clone())
}

/// Convenience wrapper for [`ParamSpec::stage`].
pub fn stage_at(spec: &ParamSpec, n: usize) -> Result<&StageSpec, ParamError> {
    spec.stage(n)
}

/// Tower heights `h_0 ..= h_n`, satisfying `h_0 = 1` and
/// `h_{k+1} = q_k h_k + sum_i a_{k,i}` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightTable {
    heights: Vec<BigUint>,
}

impl HeightTable {
    pub fn as_slice(&self) -> &[BigUint] {
        &self.heights
    }

    pub fn get(&self, k: usize) -> &BigUint {
        &self.heights[k]
    }

    pub fn last(&self) -> &BigUint {
        self.heights.last().expect("height table is never empty")
    }

    pub fn len(&self) -> usize {
        self.heights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub fn heights(spec: &ParamSpec, n: usize) -> Result<HeightTable, ParamError> {
    let mut heights = Vec::with_capacity(n + 1);
    heights.push(BigUint::one());
    for k in 0..n {
        let stage = spec.stage(k)?;
        let h = heights.last().unwrap();
        heights.push(h * stage.q() + BigUint::from(stage.spacer_sum()));
    }
    Ok(HeightTable { heights })
}

/// `h_n` alone.
pub fn height_at(spec: &ParamSpec, n: usize) -> Result<BigUint, ParamError> {
    Ok(heights(spec, n)?.last().clone())
}

/// Default partial-sum depth for [`finiteness_margin`]. Heights at least
/// double per stage, so twenty stages push the tail below `2^-20` times the
/// spacer-total bound.
pub const FINITENESS_DEPTH: usize = 20;

/// Exact rational upper bound on the tail of the convergence series
/// `sum_{n >= N} (h_{n+1} - q_n h_n) / h_{n+1}`: the partial sum to `depth`
/// stages past `N` plus the geometric bound `S_max / h_{N+depth}`.
pub fn finiteness_margin(
    spec: &ParamSpec,
    n0: usize,
    depth: Option<usize>,
) -> Result<BigRational, ParamError> {
    if !spec.is_eventually_periodic() {
        return Err(ParamError::BeyondHorizon {
            stage: n0,
            horizon: spec.prefix.len(),
        });
    }
    let depth = depth.unwrap_or(FINITENESS_DEPTH);
    let table = heights(spec, n0 + depth)?;
    let mut sum = BigRational::zero();
    for n in n0..n0 + depth {
        let s = spec.stage(n)?.spacer_sum();
        if s != 0 {
            sum += BigRational::new(BigUint::from(s).into(), table.get(n + 1).clone().into());
        }
    }
    // Tail bound: heights at least double per stage, so
    // sum_{n >= N+depth} S_n / h_{n+1} <= S_max / h_{N+depth}.
    let s_max: u64 = spec
        .prefix
        .iter()
        .chain(spec.tail.as_deref().unwrap())
        .map(StageSpec::spacer_sum)
        .max()
        .unwrap_or(0);
    if s_max != 0 {
        sum += BigRational::new(
            BigUint::from(s_max).into(),
            table.get(n0 + depth).clone().into(),
        );
    }
    Ok(sum)
}

/// Exact maxima `(q_max, a_max)` of the cut counts and spacer values over
/// prefix and tail.
pub fn bounds(spec: &ParamSpec) -> Result<(u64, u64), ParamError> {
    let tail = spec.tail.as_deref().ok_or(ParamError::BeyondHorizon {
        stage: spec.prefix.len(),
        horizon: spec.prefix.len(),
    })?;
    let mut q_max = 0;
    let mut a_max = 0;
    for st in spec.prefix.iter().chain(tail) {
        q_max = q_max.max(st.q());
        a_max = a_max.max(st.spacers().iter().copied().max().unwrap_or(0));
    }
    Ok((q_max, a_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_traits::ToPrimitive;

    fn raw(q: i64, spacers: &[i64]) -> RawStage {
        RawStage {
            q,
            spacers: spacers.to_vec(),
        }
    }

    #[test]
    fn validate_accepts_chacon() {
        let spec = validate_spec(&RawSpec {
            prefix: vec![],
            tail: Some(vec![raw(3, &[0, 1])]),
            name: Some("chacon".into()),
        })
        .unwrap();
        assert!(spec.is_eventually_periodic());
        assert_eq!(spec.stage(0).unwrap().q(), 3);
        assert_eq!(spec.stage(7).unwrap().spacers(), &[0, 1]);
    }

    #[test]
    fn validate_rejects_spacer_count_mismatch() {
        let err = validate_spec(&RawSpec {
            prefix: vec![raw(2, &[0, 0])],
            ..Default::default()
        })
        .unwrap_err();
        assert!(matches!(err, ParamError::SpacerCountMismatch { q: 2, .. }));
    }

    #[test]
    fn validate_rejects_small_cut() {
        let err = validate_spec(&RawSpec {
            prefix: vec![raw(1, &[])],
            ..Default::default()
        })
        .unwrap_err();
        assert!(matches!(err, ParamError::CutTooSmall { q: 1 }));
    }

    #[test]
    fn validate_rejects_negative_spacer() {
        let err = validate_spec(&RawSpec {
            prefix: vec![raw(3, &[0, -2])],
            ..Default::default()
        })
        .unwrap_err();
        assert!(matches!(err, ParamError::NegativeSpacer { value: -2, .. }));
    }

    #[test]
    fn validate_rejects_empty_tail() {
        let err = validate_spec(&RawSpec {
            prefix: vec![raw(2, &[0])],
            tail: Some(vec![]),
            name: None,
        })
        .unwrap_err();
        assert_eq!(err, ParamError::EmptyTail);
    }

    #[test]
    fn stage_at_cycles_through_tail() {
        let odo = fixtures::odometer2();
        let st = stage_at(&odo, 7).unwrap();
        assert_eq!((st.q(), st.spacers()), (2, &[0u64][..]));

        let chacon = fixtures::chacon();
        let st = stage_at(&chacon, 0).unwrap();
        assert_eq!((st.q(), st.spacers()), (3, &[0u64, 1][..]));
    }

    #[test]
    fn stage_at_beyond_horizon() {
        let spec = ParamSpec::new(
            vec![
                StageSpec::new(2, vec![0]).unwrap(),
                StageSpec::new(2, vec![1]).unwrap(),
            ],
            None,
            None,
        )
        .unwrap();
        assert!(matches!(
            stage_at(&spec, 5),
            Err(ParamError::BeyondHorizon {
                stage: 5,
                horizon: 2
            })
        ));
    }

    #[test]
    fn heights_recurrence() {
        let chacon = fixtures::chacon();
        let t = heights(&chacon, 3).unwrap();
        let vals: Vec<u64> = t.as_slice().iter().map(|h| h.to_u64().unwrap()).collect();
        assert_eq!(vals, [1, 4, 13, 40]);

        let odo = fixtures::odometer2();
        let t = heights(&odo, 3).unwrap();
        let vals: Vec<u64> = t.as_slice().iter().map(|h| h.to_u64().unwrap()).collect();
        assert_eq!(vals, [1, 2, 4, 8]);

        let spec = fixtures::constant_spec(2, 3);
        let t = heights(&spec, 2).unwrap();
        let vals: Vec<u64> = t.as_slice().iter().map(|h| h.to_u64().unwrap()).collect();
        assert_eq!(vals, [1, 5, 13]);
    }

    #[test]
    fn heights_double_per_stage() {
        let spec = fixtures::djr_prefix(12);
        let t = heights(&spec, 12).unwrap();
        for k in 0..12 {
            assert!(t.get(k + 1) >= &(t.get(k) * 2u32));
        }
    }

    #[test]
    fn finiteness_margin_odometer_is_zero() {
        let odo = fixtures::odometer2();
        assert!(finiteness_margin(&odo, 0, None).unwrap().is_zero());
    }

    #[test]
    fn finiteness_margin_chacon_in_unit_interval() {
        let chacon = fixtures::chacon();
        let m = finiteness_margin(&chacon, 0, None).unwrap();
        assert!(m > BigRational::zero());
        assert!(m < BigRational::one());
    }

    #[test]
    fn finiteness_margin_decreases() {
        let chacon = fixtures::chacon();
        let mut prev = finiteness_margin(&chacon, 0, None).unwrap();
        for n0 in 1..6 {
            let next = finiteness_margin(&chacon, n0, None).unwrap();
            assert!(next < prev);
            prev = next;
        }
    }

    #[test]
    fn finiteness_margin_requires_tail() {
        let spec = fixtures::djr_prefix(4);
        assert!(finiteness_margin(&spec, 0, None).is_err());
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(bounds(&fixtures::chacon()).unwrap(), (3, 1));
        assert_eq!(bounds(&fixtures::odometer2()).unwrap(), (2, 0));
        let spec = ParamSpec::new(
            vec![StageSpec::new(4, vec![2, 0, 5]).unwrap()],
            Some(vec![StageSpec::new(2, vec![1]).unwrap()]),
            None,
        )
        .unwrap();
        assert_eq!(bounds(&spec).unwrap(), (4, 5));
    }
}
