//! Finite words over `{0,1}`: generating-sequence expansion, the built-from
//! relations, deterministic greedy block parsing, and occurrence counting.
//!
//! The generating sequence of a spec is `v_0 = 0` and
//! `v_{n+1} = v_n 1^{a_{n,1}} v_n ... v_n 1^{a_{n,q_n-1}} v_n`. A word `u` is
//! *built from* `v` (written `v < u` here) when `u` is a concatenation of at
//! least two copies of `v` separated by runs of 1s, and *built simply from*
//! `v` when all those runs have equal length. Because the symbol after a
//! complete block is either a spacer 1 or the leading 0 of the next block,
//! a word has at most one decomposition over a fixed block, and the greedy
//! left-to-right parse finds it.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::params::{heights, ParamError, ParamSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("materialization cap exceeded: {required} symbols required")]
    CapExceeded { required: BigUint },
    #[error("pattern is not a generating-stage word of this spec")]
    NotAStageWord,
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// A finite word over `{0,1}` with its zero count cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    symbols: Vec<u8>,
    zeros: usize,
}

impl Word {
    pub fn from_symbols(symbols: Vec<u8>) -> Self {
        debug_assert!(symbols.iter().all(|&s| s <= 1));
        let zeros = symbols.iter().filter(|&&s| s == 0).count();
        Word { symbols, zeros }
    }

    /// Parse a word from its 0/1 string form (test and CLI convenience).
    pub fn parse_str(s: &str) -> Option<Self> {
        let mut symbols = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => symbols.push(0),
                '1' => symbols.push(1),
                _ => return None,
            }
        }
        Some(Word::from_symbols(symbols))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn zeros(&self) -> usize {
        self.zeros
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Membership in the family of words that start and end with 0.
    pub fn in_f(&self) -> bool {
        matches!(self.symbols.first(), Some(0)) && matches!(self.symbols.last(), Some(0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            write!(f, "{}", s)?;
        }
        Ok(())
    }
}

/// A generating-sequence word `v_n` held implicitly: its length and zero
/// count are computed from the recurrences without materializing it.
#[derive(Debug, Clone)]
pub struct WordHandle<'a> {
    spec: &'a ParamSpec,
    stage: usize,
    length: BigUint,
    zero_count: BigUint,
}

impl<'a> WordHandle<'a> {
    pub fn new(spec: &'a ParamSpec, stage: usize) -> Result<Self, ParamError> {
        let table = heights(spec, stage)?;
        let mut zero_count = BigUint::one();
        for k in 0..stage {
            zero_count *= spec.stage(k)?.q();
        }
        Ok(WordHandle {
            spec,
            stage,
            length: table.last().clone(),
            zero_count,
        })
    }

    pub fn spec(&self) -> &'a ParamSpec {
        self.spec
    }

    pub fn stage(&self) -> usize {
        self.stage
    }

    /// `|v_n| = h_n`.
    pub fn length(&self) -> &BigUint {
        &self.length
    }

    /// `Z(v_n) = prod_{k<n} q_k`.
    pub fn zero_count(&self) -> &BigUint {
        &self.zero_count
    }
}

/// Materialize the stage word `v_n` of `spec`, respecting `cap`.
pub(crate) fn materialize(
    spec: &ParamSpec,
    stage: usize,
    cap: usize,
) -> Result<Vec<u8>, WordError> {
    let table = heights(spec, stage)?;
    if table.last() > &BigUint::from(cap) {
        return Err(WordError::CapExceeded {
            required: table.last().clone(),
        });
    }
    let mut word = vec![0u8];
    for k in 0..stage {
        let st = spec.stage(k)?;
        let target = table.get(k + 1).to_usize().expect("under cap");
        let mut next = Vec::with_capacity(target);
        next.extend_from_slice(&word);
        for i in 1..st.q() as usize {
            next.resize(next.len() + st.spacer(i) as usize, 1);
            next.extend_from_slice(&word);
        }
        debug_assert_eq!(next.len(), target);
        word = next;
    }
    Ok(word)
}

/// Materialize `v_n`. Fails with the exact required length when `h_n > cap`.
pub fn expand(handle: &WordHandle, cap: usize) -> Result<Word, WordError> {
    let symbols = materialize(handle.spec, handle.stage, cap)?;
    let word = Word::from_symbols(symbols);
    debug_assert_eq!(BigUint::from(word.len()), *handle.length());
    debug_assert_eq!(BigUint::from(word.zeros()), *handle.zero_count());
    Ok(word)
}

/// The witness of `block < text`: `count >= 2` copies of `block` separated by
/// 1-runs of lengths `spacers`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub block: Word,
    pub count: u64,
    pub spacers: Vec<u64>,
    pub total_length: usize,
}

impl Decomposition {
    pub fn new(block: Word, count: u64, spacers: Vec<u64>) -> Self {
        assert!(count >= 2, "a decomposition has at least two blocks");
        assert_eq!(spacers.len() as u64, count - 1);
        let total_length =
            count as usize * block.len() + spacers.iter().map(|&a| a as usize).sum::<usize>();
        Decomposition {
            block,
            count,
            spacers,
            total_length,
        }
    }
}

/// Greedy deterministic block parse: match `block` at position 0, read the
/// 1-run after each block, and require the next 0 to begin another block.
/// Succeeds iff `text` is consumed exactly with at least two blocks; the
/// decomposition is unique when it exists. `None` means "not built from".
pub fn parse_blocks(text: &Word, block: &Word) -> Option<Decomposition> {
    let t = text.symbols();
    let b = block.symbols();
    if b.is_empty() || t.len() < 2 * b.len() {
        return None;
    }
    if &t[..b.len()] != b {
        return None;
    }
    let mut pos = b.len();
    let mut count = 1u64;
    let mut spacers = Vec::new();
    while pos < t.len() {
        let run_start = pos;
        while pos < t.len() && t[pos] == 1 {
            pos += 1;
        }
        if pos + b.len() > t.len() || &t[pos..pos + b.len()] != b {
            return None;
        }
        spacers.push((pos - run_start) as u64);
        pos += b.len();
        count += 1;
    }
    if count < 2 {
        return None;
    }
    Some(Decomposition::new(block.clone(), count, spacers))
}

/// Rebuild the unique word with the given block structure.
pub fn compose(d: &Decomposition) -> Word {
    let mut symbols = Vec::with_capacity(d.total_length);
    symbols.extend_from_slice(d.block.symbols());
    for &a in &d.spacers {
        symbols.resize(symbols.len() + a as usize, 1);
        symbols.extend_from_slice(d.block.symbols());
    }
    debug_assert_eq!(symbols.len(), d.total_length);
    Word::from_symbols(symbols)
}

/// `true` iff all spacer runs of the decomposition are equal ("built simply").
pub fn is_simple(d: &Decomposition) -> bool {
    d.spacers.iter().all(|&a| a == d.spacers[0])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordRelation {
    Equal,
    /// `u < v`: the right word is built from the left.
    Precedes,
    /// `v < u`: the left word is built from the right.
    Follows,
    Incomparable,
}

/// Compare two words of the family under the built-from order.
pub fn compare(u: &Word, v: &Word) -> WordRelation {
    if u == v {
        return WordRelation::Equal;
    }
    if u.len() < v.len() && parse_blocks(v, u).is_some() {
        return WordRelation::Precedes;
    }
    if v.len() < u.len() && parse_blocks(u, v).is_some() {
        return WordRelation::Follows;
    }
    WordRelation::Incomparable
}

fn scan_count(pattern: &[u8], text: &[u8]) -> u64 {
    if pattern.is_empty() || pattern.len() > text.len() {
        return 0;
    }
    text.windows(pattern.len())
        .filter(|w| *w == pattern)
        .count() as u64
}

/// Exact number of (possibly overlapping) occurrences of `pattern` in `v_n`,
/// computed without materializing `v_n` when the pattern is short.
///
/// A word of length `P <= h_k` cannot span two junctions of the stage-`k`
/// block structure, so per-stage counts combine as
/// `count_{k+1} = q_k count_k + sum_i J(a_{k,i})` where `J(a)` counts the
/// matches inside `suffix(v_k) 1^a prefix(v_k)` with fringes of length
/// `P - 1`; those fringes are stage-independent once `h_k >= P`.
pub fn count_occurrences(
    pattern: &Word,
    handle: &WordHandle,
    cap: usize,
) -> Result<BigUint, WordError> {
    let p = pattern.len();
    assert!(p >= 1, "pattern must be non-empty");
    if p > cap {
        return Err(WordError::CapExceeded {
            required: BigUint::from(p),
        });
    }
    if BigUint::from(p) > *handle.length() {
        return Ok(BigUint::zero());
    }
    let spec = handle.spec();
    let n = handle.stage();
    let table = heights(spec, n)?;
    let k0 = (0..=n)
        .find(|&k| table.get(k) >= &BigUint::from(p))
        .expect("h_n >= pattern length");
    // Scratch materialization of the first stage whose word is at least
    // pattern-sized; its length is bounded by a stage-growth multiple of P.
    let base = materialize(spec, k0, usize::MAX)?;
    let mut count = BigUint::from(scan_count(pattern.symbols(), &base));
    if k0 == n {
        return Ok(count);
    }
    let f = p - 1;
    let prefix = &base[..f];
    let suffix = &base[base.len() - f..];
    let mut junction_cache: HashMap<u64, u64> = HashMap::new();
    for k in k0..n {
        let st = spec.stage(k)?;
        let mut joint = BigUint::zero();
        for i in 1..st.q() as usize {
            let a = st.spacer(i);
            let j = *junction_cache.entry(a).or_insert_with(|| {
                let mut window = Vec::with_capacity(2 * f + a as usize);
                window.extend_from_slice(suffix);
                window.resize(window.len() + a as usize, 1);
                window.extend_from_slice(prefix);
                scan_count(pattern.symbols(), &window)
            });
            joint += j;
        }
        count = count * st.q() + joint;
    }
    Ok(count)
}

/// All start positions of `pattern` in the materialized `v_n`, sorted.
fn scan_positions(pattern: &[u8], text: &[u8]) -> Vec<usize> {
    if pattern.is_empty() || pattern.len() > text.len() {
        return Vec::new();
    }
    (0..=text.len() - pattern.len())
        .filter(|&i| &text[i..i + pattern.len()] == pattern)
        .collect()
}

/// Stage-`k` block offsets `l_0 = 0, l_{j+1} = l_j + h_k + a_{k,j+1}` of the
/// `q_k` copies of `v_k` inside `v_{k+1}`.
pub(crate) fn stage_offsets(spec: &ParamSpec, k: usize, h_k: &BigUint) -> Vec<BigUint> {
    let st = spec.stage(k).expect("stage checked by caller");
    let mut offsets = Vec::with_capacity(st.q() as usize);
    let mut l = BigUint::zero();
    offsets.push(l.clone());
    for j in 1..st.q() as usize {
        l = l + h_k + st.spacer(j);
        offsets.push(l.clone());
    }
    offsets
}

/// Start positions of `pattern` in `v_n`.
///
/// With `expected_only` the pattern must be a stage word `v_l` of the same
/// spec and the positions are the block starts of the unique parse of `v_n`
/// over `v_l`; the parse is done on the materialized word when it fits under
/// `cap` and through the offset recurrence otherwise. Without `expected_only`
/// all (overlapping) occurrences are reported and `v_n` must fit under `cap`.
pub fn occurrence_positions(
    pattern: &Word,
    handle: &WordHandle,
    expected_only: bool,
    cap: usize,
) -> Result<Vec<BigUint>, WordError> {
    let spec = handle.spec();
    let n = handle.stage();
    if !expected_only {
        let text = materialize(spec, n, cap)?;
        return Ok(scan_positions(pattern.symbols(), &text)
            .into_iter()
            .map(BigUint::from)
            .collect());
    }
    let table = heights(spec, n)?;
    let plen = BigUint::from(pattern.len());
    let l = (0..=n)
        .find(|&k| table.get(k) == &plen)
        .ok_or(WordError::NotAStageWord)?;
    let v_l = materialize(spec, l, cap)?;
    if v_l != pattern.symbols() {
        return Err(WordError::NotAStageWord);
    }
    if l == n {
        return Ok(vec![BigUint::zero()]);
    }
    if table.last() <= &BigUint::from(cap) {
        let text = Word::from_symbols(materialize(spec, n, cap)?);
        let d = parse_blocks(&text, pattern).expect("stage word parses over earlier stage word");
        let mut positions = Vec::with_capacity(d.count as usize);
        let mut pos = BigUint::zero();
        positions.push(pos.clone());
        for &a in &d.spacers {
            pos = pos + pattern.len() + a;
            positions.push(pos.clone());
        }
        return Ok(positions);
    }
    // Beyond the cap: compose the per-stage offsets instead.
    let mut expected = BigUint::one();
    for k in l..n {
        expected *= spec.stage(k)?.q();
    }
    if expected > BigUint::from(cap) {
        return Err(WordError::CapExceeded { required: expected });
    }
    let mut positions = vec![BigUint::zero()];
    for k in (l..n).rev() {
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
    Ok(positions)
}

/// `N(l, n)`: the number of expected occurrences of `v_l` in `v_n`, i.e.
/// `prod_{l <= m < n} q_m`.
pub fn expected_block_count(spec: &ParamSpec, l: usize, n: usize) -> Result<BigUint, ParamError> {
    assert!(l <= n, "expected_block_count requires l <= n");
    let mut count = BigUint::one();
    for m in l..n {
        count *= spec.stage(m)?.q();
    }
    Ok(count)
}

/// The lengths of the maximal 1-runs between consecutive 0s of `v_n`, in
/// order (`Z(v_n) - 1` entries). The gap list of `v_{k+1}` is the gap list of
/// `v_k` repeated `q_k` times with the stage spacers interleaved, so no
/// materialization is needed.
pub fn flatten_spacers(handle: &WordHandle, cap: usize) -> Result<Vec<u64>, WordError> {
    let gaps_len = handle.zero_count() - 1u32;
    if gaps_len > BigUint::from(cap) {
        return Err(WordError::CapExceeded { required: gaps_len });
    }
    let spec = handle.spec();
    let mut gaps: Vec<u64> = Vec::new();
    for k in 0..handle.stage() {
        let st = spec.stage(k)?;
        let block = std::mem::take(&mut gaps);
        gaps.extend_from_slice(&block);
        for i in 1..st.q() as usize {
            gaps.push(st.spacer(i));
            gaps.extend_from_slice(&block);
        }
    }
    Ok(gaps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::DEFAULT_CAP;

    fn w(s: &str) -> Word {
        Word::parse_str(s).unwrap()
    }

    #[test]
    fn expand_examples() {
        let chacon = fixtures::chacon();
        let v1 = expand(&WordHandle::new(&chacon, 1).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(v1.to_string(), "0010");
        let v2 = expand(&WordHandle::new(&chacon, 2).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(v2.to_string(), "0010001010010");

        let odo = fixtures::odometer2();
        let v3 = expand(&WordHandle::new(&odo, 3).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(v3.to_string(), "00000000");
    }

    #[test]
    fn expand_reports_required_length() {
        let chacon = fixtures::chacon();
        let h = WordHandle::new(&chacon, 2).unwrap();
        let err = expand(&h, 5).unwrap_err();
        assert_eq!(
            err,
            WordError::CapExceeded {
                required: BigUint::from(13u32)
            }
        );
    }

    #[test]
    fn parse_blocks_examples() {
        let d = parse_blocks(&w("001010010"), &w("0010")).unwrap();
        assert_eq!((d.count, d.spacers.as_slice()), (2, &[1u64][..]));

        let chacon = fixtures::chacon();
        let v2 = expand(&WordHandle::new(&chacon, 2).unwrap(), DEFAULT_CAP).unwrap();
        let d = parse_blocks(&v2, &w("0010")).unwrap();
        assert_eq!((d.count, d.spacers.as_slice()), (3, &[0u64, 1][..]));

        assert!(parse_blocks(&w("010010"), &w("00")).is_none());
    }

    #[test]
    fn compose_examples() {
        let d = Decomposition::new(w("0"), 2, vec![1]);
        assert_eq!(compose(&d).to_string(), "010");

        let chacon = fixtures::chacon();
        let v2 = expand(&WordHandle::new(&chacon, 2).unwrap(), DEFAULT_CAP).unwrap();
        let d = Decomposition::new(w("0010"), 3, vec![0, 1]);
        assert_eq!(compose(&d), v2);

        let d = Decomposition::new(w("0"), 3, vec![0, 0]);
        assert_eq!(compose(&d).to_string(), "000");
    }

    #[test]
    fn parse_compose_roundtrip() {
        let d = Decomposition::new(w("0010"), 3, vec![2, 0]);
        let text = compose(&d);
        assert_eq!(parse_blocks(&text, &d.block).unwrap(), d);
    }

    #[test]
    fn is_simple_examples() {
        assert!(is_simple(&Decomposition::new(w("0"), 4, vec![1, 1, 1])));
        assert!(!is_simple(&Decomposition::new(w("0"), 3, vec![0, 1])));
        assert!(is_simple(&Decomposition::new(w("0"), 2, vec![4])));
    }

    #[test]
    fn compare_examples() {
        let chacon = fixtures::chacon();
        let v2 = expand(&WordHandle::new(&chacon, 2).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(compare(&w("0010"), &v2), WordRelation::Precedes);
        assert_eq!(
            compare(&w("00100"), &w("00010")),
            WordRelation::Incomparable
        );
        assert_eq!(compare(&w("0"), &w("010")), WordRelation::Precedes);
        assert_eq!(compare(&v2, &v2.clone()), WordRelation::Equal);
        assert_eq!(compare(&v2, &w("0010")), WordRelation::Follows);
    }

    #[test]
    fn count_occurrences_examples() {
        let chacon = fixtures::chacon();
        let h2 = WordHandle::new(&chacon, 2).unwrap();
        assert_eq!(
            count_occurrences(&w("00"), &h2, DEFAULT_CAP).unwrap(),
            BigUint::from(4u32)
        );
        let h5 = WordHandle::new(&chacon, 5).unwrap();
        assert_eq!(
            count_occurrences(&w("0"), &h5, DEFAULT_CAP).unwrap(),
            h5.zero_count().clone()
        );
        let odo = fixtures::odometer2();
        let h4 = WordHandle::new(&odo, 4).unwrap();
        assert_eq!(
            count_occurrences(&w("1"), &h4, DEFAULT_CAP).unwrap(),
            BigUint::zero()
        );
    }

    #[test]
    fn count_matches_scan_on_materialized_words() {
        let chacon = fixtures::chacon();
        for n in 0..=5 {
            let h = WordHandle::new(&chacon, n).unwrap();
            let text = expand(&h, DEFAULT_CAP).unwrap();
            for pat in ["0", "1", "00", "010", "0010", "00100", "101"] {
                let pat = w(pat);
                let expected = scan_count(pat.symbols(), text.symbols());
                assert_eq!(
                    count_occurrences(&pat, &h, DEFAULT_CAP).unwrap(),
                    BigUint::from(expected),
                    "pattern {pat} in stage {n}"
                );
            }
        }
    }

    #[test]
    fn occurrence_positions_examples() {
        let chacon = fixtures::chacon();
        let h2 = WordHandle::new(&chacon, 2).unwrap();
        let pos = occurrence_positions(&w("0010"), &h2, true, DEFAULT_CAP).unwrap();
        assert_eq!(pos, [0u32, 4, 9].map(BigUint::from));

        let h1 = WordHandle::new(&chacon, 1).unwrap();
        let pos = occurrence_positions(&w("0"), &h1, true, DEFAULT_CAP).unwrap();
        assert_eq!(pos, [0u32, 1, 3].map(BigUint::from));

        let odo = fixtures::odometer2();
        let h2 = WordHandle::new(&odo, 2).unwrap();
        let pos = occurrence_positions(&w("00"), &h2, false, DEFAULT_CAP).unwrap();
        assert_eq!(pos, [0u32, 1, 2].map(BigUint::from));
    }

    #[test]
    fn occurrence_positions_rejects_foreign_pattern() {
        let chacon = fixtures::chacon();
        let h2 = WordHandle::new(&chacon, 2).unwrap();
        assert_eq!(
            occurrence_positions(&w("0100"), &h2, true, DEFAULT_CAP).unwrap_err(),
            WordError::NotAStageWord
        );
    }

    #[test]
    fn expected_positions_beyond_cap_use_recurrence() {
        let chacon = fixtures::chacon();
        let h3 = WordHandle::new(&chacon, 3).unwrap();
        let v1 = expand(&WordHandle::new(&chacon, 1).unwrap(), DEFAULT_CAP).unwrap();
        let scanned = occurrence_positions(&v1, &h3, true, DEFAULT_CAP).unwrap();
        // Cap below h_3 = 40 but above h_1 forces the offset recurrence.
        let recurred = occurrence_positions(&v1, &h3, true, 20).unwrap();
        assert_eq!(scanned, recurred);
    }

    #[test]
    fn expected_block_count_examples() {
        let chacon = fixtures::chacon();
        assert_eq!(
            expected_block_count(&chacon, 0, 2).unwrap(),
            BigUint::from(9u32)
        );
        assert_eq!(expected_block_count(&chacon, 3, 3).unwrap(), BigUint::one());
        let odo = fixtures::odometer2();
        assert_eq!(
            expected_block_count(&odo, 1, 4).unwrap(),
            BigUint::from(8u32)
        );
    }

    #[test]
    fn flatten_spacers_examples() {
        let chacon = fixtures::chacon();
        let h2 = WordHandle::new(&chacon, 2).unwrap();
        assert_eq!(
            flatten_spacers(&h2, DEFAULT_CAP).unwrap(),
            vec![0, 1, 0, 0, 1, 1, 0, 1]
        );

        let odo = fixtures::odometer2();
        let h4 = WordHandle::new(&odo, 4).unwrap();
        assert_eq!(flatten_spacers(&h4, DEFAULT_CAP).unwrap(), vec![0; 15]);

        let spec = fixtures::constant_spec(2, 1);
        let h1 = WordHandle::new(&spec, 1).unwrap();
        assert_eq!(flatten_spacers(&h1, DEFAULT_CAP).unwrap(), vec![1]);
    }

    #[test]
    fn flatten_spacers_matches_scan() {
        let chacon = fixtures::chacon();
        for n in 0..=4 {
            let h = WordHandle::new(&chacon, n).unwrap();
            let text = expand(&h, DEFAULT_CAP).unwrap();
            let mut gaps = Vec::new();
            let mut run = None;
            for &s in text.symbols() {
                match (s, run) {
                    (0, None) => run = Some(0u64),
                    (0, Some(r)) => {
                        gaps.push(r);
                        run = Some(0);
                    }
                    (1, Some(r)) => run = Some(r + 1),
                    (1, None) => unreachable!("stage words start with 0"),
                    _ => unreachable!(),
                }
            }
            assert_eq!(flatten_spacers(&h, DEFAULT_CAP).unwrap(), gaps);
        }
    }

    #[test]
    fn handle_length_and_zero_count_match_expansion() {
        let spec = fixtures::djr_prefix(8);
        for n in 0..=8 {
            let h = WordHandle::new(&spec, n).unwrap();
            let word = expand(&h, DEFAULT_CAP).unwrap();
            assert_eq!(BigUint::from(word.len()), *h.length());
            assert_eq!(BigUint::from(word.zeros()), *h.zero_count());
        }
    }
}
