//! Exact-rational model of the cutting-and-stacking construction: base
//! measures, tower masses, return levels, level classification, and the
//! shift-overlap defect bound.
//!
//! Only levels and bases are ever represented; no points of the interval.
//! For an eventually-periodic spec every measure is an exact rational,
//! obtained from `1 / lambda[B_0] = lim h_n / prod_{i<n} q_i`, whose
//! defining series telescopes to a finite sum plus a geometric tail over the
//! periodic part.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::params::{heights, ParamError, ParamSpec};
use crate::words::stage_offsets;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("stage {stage} has non-constant spacers")]
    SpacersNotConstant { stage: usize },
    #[error("level {level} is outside the stage-{stage} tower")]
    LevelOutOfRange { level: BigUint, stage: usize },
    #[error("enumeration cap exceeded: {required} entries required")]
    CapExceeded { required: BigUint },
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// An exact measure, or a certified interval `[0, upper]` when the spec is
/// horizon-limited and the tail of the defining series is unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Measure {
    Exact(BigRational),
    Bounded { upper: BigRational },
}

impl Measure {
    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Measure::Exact(v) => Some(v),
            Measure::Bounded { .. } => None,
        }
    }

    fn scale(&self, factor: &BigRational) -> Measure {
        match self {
            Measure::Exact(v) => Measure::Exact(v * factor),
            Measure::Bounded { upper } => Measure::Bounded {
                upper: upper * factor,
            },
        }
    }
}

fn big_rat(n: &BigUint, d: &BigUint) -> BigRational {
    BigRational::new(n.clone().into(), d.clone().into())
}

/// `lambda[B_0]` from the series `1/lambda[B_0] = 1 + sum_n S_n / Q_{n+1}`
/// with `S_n` the stage-`n` spacer total and `Q_n = prod_{i<n} q_i`.
fn base_measure_zero(spec: &ParamSpec) -> Result<Measure, TowerError> {
    let prefix_len = spec.tail_start();
    let mut inv = BigRational::one();
    let mut q_prod = BigUint::one(); // Q_{n+1} accumulator
    for n in 0..prefix_len {
        let st = spec.stage(n)?;
        q_prod *= st.q();
        if st.spacer_sum() != 0 {
            inv += big_rat(&BigUint::from(st.spacer_sum()), &q_prod);
        }
    }
    let tail = match spec.tail() {
        Some(t) => t,
        None => {
            // Future stages only add non-negative terms, so the partial sum
            // is a certified lower bound on 1/lambda[B_0].
            return Ok(Measure::Bounded { upper: inv.recip() });
        }
    };
    // One full tail period contributes sum_c S_{P+c}/Q_{P+c+1}; each further
    // period divides by R = prod of one period's q values.
    let mut period_sum = BigRational::zero();
    let mut r = BigUint::one();
    for st in tail {
        r *= st.q();
        if st.spacer_sum() != 0 {
            period_sum += big_rat(&BigUint::from(st.spacer_sum()), &(&q_prod * &r));
        }
    }
    if !period_sum.is_zero() {
        let geometric = big_rat(&r, &(&r - 1u32));
        inv += period_sum * geometric;
    }
    Ok(Measure::Exact(inv.recip()))
}

/// `lambda[B_N] = lambda[B_0] / prod_{i<N} q_i`.
pub fn base_measure(spec: &ParamSpec, n: usize) -> Result<Measure, TowerError> {
    if !spec.is_eventually_periodic() && n > spec.tail_start() {
        return Err(ParamError::BeyondHorizon {
            stage: n,
            horizon: spec.tail_start(),
        }
        .into());
    }
    let mut q_prod = BigUint::one();
    for i in 0..n {
        q_prod *= spec.stage(i)?.q();
    }
    let scale = BigRational::new(BigUint::one().into(), q_prod.into());
    Ok(base_measure_zero(spec)?.scale(&scale))
}

/// `h_N * lambda[B_N]`: the mass of the stage-`N` tower.
pub fn tower_mass(spec: &ParamSpec, n: usize) -> Result<Measure, TowerError> {
    let h = heights(spec, n)?.last().clone();
    let factor = BigRational::from(num_bigint::BigInt::from(h));
    Ok(base_measure(spec, n)?.scale(&factor))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerStats {
    pub stage: usize,
    pub height: BigUint,
    pub base_measure: Measure,
    pub tower_mass: Measure,
}

pub fn tower_stats(spec: &ParamSpec, n: usize) -> Result<TowerStats, TowerError> {
    Ok(TowerStats {
        stage: n,
        height: heights(spec, n)?.last().clone(),
        base_measure: base_measure(spec, n)?,
        tower_mass: tower_mass(spec, n)?,
    })
}

/// The levels `l` of the stage-`M` tower with `T^l(B_M) ⊆ B_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReturnLevels {
    pub target: usize,
    pub ambient: usize,
    pub positions: Vec<BigUint>,
}

/// Return levels of `B_M` into `B_N`, composed from the one-stage offsets
/// `l_0 = 0, l_{j+1} = l_j + h_k + a_{k,j+1}`.
pub fn return_levels(
    spec: &ParamSpec,
    n: usize,
    m: usize,
    cap: usize,
) -> Result<ReturnLevels, TowerError> {
    assert!(n <= m, "return_levels requires N <= M");
    let mut count = BigUint::one();
    for k in n..m {
        count *= spec.stage(k)?.q();
    }
    if count > BigUint::from(cap) {
        return Err(TowerError::CapExceeded { required: count });
    }
    let table = heights(spec, m)?;
    let mut positions = vec![BigUint::zero()];
    for k in n..m {
        let offsets = stage_offsets(spec, k, table.get(k));
        let mut next = Vec::with_capacity(offsets.len() * positions.len());
        for off in &offsets {
            for p in &positions {
                next.push(off + p);
            }
        }
        positions = next;
    }
    positions.sort();
    Ok(ReturnLevels {
        target: n,
        ambient: m,
        positions,
    })
}

/// Classification of one level of the stage-`M` tower against the stage-`N`
/// block structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelClass {
    /// Inside the `N`-block whose base sits at `return_level`:
    /// `l = return_level + offset` with `offset < h_N`.
    Block {
        return_level: BigUint,
        offset: BigUint,
    },
    /// A spacer level inserted at `stage`, between blocks `index` and
    /// `index + 1` (1-based spacer index), `depth` symbols into the run.
    Spacer {
        stage: usize,
        index: usize,
        depth: u64,
    },
}

/// Locate level `l` of the stage-`M` tower relative to stage `N`, by
/// recursive descent through the block structure.
pub fn level_decompose(
    spec: &ParamSpec,
    m: usize,
    l: &BigUint,
    n: usize,
) -> Result<LevelClass, TowerError> {
    assert!(n <= m, "level_decompose requires N <= M");
    let table = heights(spec, m)?;
    if l >= table.get(m) {
        return Err(TowerError::LevelOutOfRange {
            level: l.clone(),
            stage: m,
        });
    }
    let mut level = l.clone();
    let mut base = BigUint::zero();
    let mut stage = m;
    while stage > n {
        let k = stage - 1;
        let h_k = table.get(k);
        let offsets = stage_offsets(spec, k, h_k);
        let j = offsets
            .iter()
            .rposition(|off| *off <= level)
            .expect("offset 0 is always <= level");
        let within = &level - &offsets[j];
        if &within < h_k {
            base += &offsets[j];
            level = within;
            stage = k;
        } else {
            return Ok(LevelClass::Spacer {
                stage: k,
                index: j + 1,
                depth: (within - h_k)
                    .try_into()
                    .map(|d: u64| d + 1)
                    .expect("spacer depth fits in u64"),
            });
        }
    }
    Ok(LevelClass::Block {
        return_level: base,
        offset: level,
    })
}

/// The certified overlap and defect of the shift by `r = h_n + a` at a
/// constant-spacer stage `n`: all but the last block of the stage-`(n+1)`
/// tower shifts by `r` back into `B_N`, so the overlap is at least
/// `(q_n - 1)/q_n * lambda[B_N]` and the symmetric difference is at most
/// `2 lambda[B_N] / q_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftOverlap {
    pub r: BigUint,
    pub overlap_lower_bound: BigRational,
    pub defect_upper_bound: BigRational,
}

pub fn shift_overlap(spec: &ParamSpec, n: usize, stage: usize) -> Result<ShiftOverlap, TowerError> {
    assert!(n <= stage, "shift_overlap requires N <= n");
    if !spec.is_eventually_periodic() {
        return Err(ParamError::BeyondHorizon {
            stage,
            horizon: spec.tail_start(),
        }
        .into());
    }
    let st = spec.stage(stage)?;
    if !st.is_constant() {
        return Err(TowerError::SpacersNotConstant { stage });
    }
    let a = st.spacer(1);
    let r = heights(spec, stage)?.last() + a;
    let lambda = base_measure(spec, n)?
        .exact()
        .expect("eventually-periodic measures are exact")
        .clone();
    let q = BigRational::from_integer(st.q().into());
    let overlap_lower_bound = &lambda * (&q - BigRational::one()) / &q;
    let defect_upper_bound = &lambda * BigRational::from_integer(2.into()) / &q;
    // The q_n columns of B_N split it evenly: the overlap set C misses
    // exactly one column.
    assert_eq!(lambda, &overlap_lower_bound + &lambda / &q);
    Ok(ShiftOverlap {
        r,
        overlap_lower_bound,
        defect_upper_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::DEFAULT_CAP;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn base_measure_examples() {
        let chacon = fixtures::chacon();
        assert_eq!(base_measure(&chacon, 0).unwrap(), Measure::Exact(rat(2, 3)));
        assert_eq!(
            base_measure(&chacon, 2).unwrap(),
            Measure::Exact(rat(2, 27))
        );

        let odo = fixtures::odometer2();
        assert_eq!(base_measure(&odo, 3).unwrap(), Measure::Exact(rat(1, 8)));
    }

    #[test]
    fn base_measure_interval_for_prefix_only() {
        let spec = fixtures::djr_prefix(6);
        match base_measure(&spec, 0).unwrap() {
            Measure::Bounded { upper } => {
                assert!(upper < BigRational::one());
                assert!(upper > BigRational::zero());
            }
            Measure::Exact(_) => panic!("prefix-only measure must be an interval"),
        }
        assert!(base_measure(&spec, 7).is_err());
    }

    #[test]
    fn tower_mass_examples() {
        let chacon = fixtures::chacon();
        assert_eq!(tower_mass(&chacon, 1).unwrap(), Measure::Exact(rat(8, 9)));
        assert_eq!(tower_mass(&chacon, 0).unwrap(), Measure::Exact(rat(2, 3)));

        let odo = fixtures::odometer2();
        for n in 0..6 {
            assert_eq!(tower_mass(&odo, n).unwrap(), Measure::Exact(rat(1, 1)));
        }
    }

    #[test]
    fn tower_mass_increases_toward_one() {
        let chacon = fixtures::chacon();
        let mut prev = BigRational::zero();
        for n in 0..10 {
            let mass = tower_mass(&chacon, n).unwrap().exact().unwrap().clone();
            assert!(mass > prev);
            assert!(mass < BigRational::one());
            prev = mass;
        }
    }

    #[test]
    fn return_levels_examples() {
        let chacon = fixtures::chacon();
        let rl = return_levels(&chacon, 0, 1, DEFAULT_CAP).unwrap();
        assert_eq!(rl.positions, [0u32, 1, 3].map(BigUint::from));

        let rl = return_levels(&chacon, 1, 2, DEFAULT_CAP).unwrap();
        assert_eq!(rl.positions, [0u32, 4, 9].map(BigUint::from));

        let rl = return_levels(&chacon, 2, 2, DEFAULT_CAP).unwrap();
        assert_eq!(rl.positions, [BigUint::zero()]);
    }

    #[test]
    fn return_level_count() {
        let chacon = fixtures::chacon();
        for n in 0..3 {
            for m in n..5 {
                let rl = return_levels(&chacon, n, m, DEFAULT_CAP).unwrap();
                assert_eq!(rl.positions.len(), 3usize.pow((m - n) as u32));
                assert_eq!(rl.positions[0], BigUint::zero());
            }
        }
    }

    #[test]
    fn level_decompose_examples() {
        let chacon = fixtures::chacon();
        let spacer = level_decompose(&chacon, 2, &BigUint::from(8u32), 1).unwrap();
        assert_eq!(
            spacer,
            LevelClass::Spacer {
                stage: 1,
                index: 2,
                depth: 1
            }
        );

        let block = level_decompose(&chacon, 2, &BigUint::from(5u32), 1).unwrap();
        assert_eq!(
            block,
            LevelClass::Block {
                return_level: BigUint::from(4u32),
                offset: BigUint::one()
            }
        );

        let zero = level_decompose(&chacon, 3, &BigUint::zero(), 1).unwrap();
        assert_eq!(
            zero,
            LevelClass::Block {
                return_level: BigUint::zero(),
                offset: BigUint::zero()
            }
        );
    }

    #[test]
    fn level_decompose_agrees_with_return_levels() {
        let chacon = fixtures::chacon();
        let rl = return_levels(&chacon, 1, 3, DEFAULT_CAP).unwrap();
        for p in &rl.positions {
            assert_eq!(
                level_decompose(&chacon, 3, p, 1).unwrap(),
                LevelClass::Block {
                    return_level: p.clone(),
                    offset: BigUint::zero()
                }
            );
        }
    }

    #[test]
    fn shift_overlap_examples() {
        let odo = fixtures::odometer2();
        let so = shift_overlap(&odo, 0, 2).unwrap();
        assert_eq!(so.r, BigUint::from(4u32));
        assert_eq!(so.overlap_lower_bound, rat(1, 2));
        assert_eq!(so.defect_upper_bound, rat(1, 1));

        let spec = fixtures::constant_spec(4, 1);
        let so = shift_overlap(&spec, 0, 1).unwrap();
        // h_1 = 4 + 3 = 7, lambda[B_0] = 1/2.
        assert_eq!(so.r, BigUint::from(8u32));
        assert_eq!(so.overlap_lower_bound, rat(3, 8));
        assert_eq!(so.defect_upper_bound, rat(1, 4));

        let chacon = fixtures::chacon();
        assert!(matches!(
            shift_overlap(&chacon, 0, 2),
            Err(TowerError::SpacersNotConstant { stage: 2 })
        ));
    }

    #[test]
    fn measure_coherence() {
        let chacon = fixtures::chacon();
        for n in 0..4 {
            for m in n..6 {
                let bn = base_measure(&chacon, n).unwrap().exact().unwrap().clone();
                let bm = base_measure(&chacon, m).unwrap().exact().unwrap().clone();
                let mut q = BigRational::one();
                for i in n..m {
                    q *= BigRational::from_integer(chacon.stage(i).unwrap().q().into());
                }
                assert_eq!(bn, bm * q);
            }
        }
    }
}
