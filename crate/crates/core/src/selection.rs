//! Selection probabilities and selection methods for picking the archive
//! member that guides each sampled variable.
//!
//! Probabilities come from one of two bases:
//! * `Weight`: a Gaussian of the rank, `w_j = exp(-(j-1)^2 / (2 q^2 k^2)) / (q k sqrt(2 pi))`,
//!   normalized to sum to one.
//! * `FitVal`: a decreasing transform of the raw objective values,
//!   `p_j ∝ f_max - f_j + (f_max - f_min) / k`, uniform when every fitness is equal.
//!
//! Three methods turn a probability vector into indices: roulette wheel (RWS),
//! stochastic universal sampling (SUS) and Bernoulli heterogeneous selection (BHS).
//!
//! Indices returned by this module are zero-based archive positions; index 0 is
//! rank 1 (the best member).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::archive::Archive;
use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// Default spread of the rank weights.
pub const DEFAULT_Q: f64 = 0.1;

/// Total Bernoulli tests before BHS gives up and returns the best rank.
pub const BHS_DRAW_BUDGET: usize = 1_000_000;

const SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelectionMethod {
    Rws,
    Sus,
    Bhs,
}

impl SelectionMethod {
    pub const ALL: [SelectionMethod; 3] = [
        SelectionMethod::Rws,
        SelectionMethod::Sus,
        SelectionMethod::Bhs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SelectionMethod::Rws => "rws",
            SelectionMethod::Sus => "sus",
            SelectionMethod::Bhs => "bhs",
        }
    }
}

impl fmt::Display for SelectionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SelectionMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rws" => Ok(SelectionMethod::Rws),
            "sus" => Ok(SelectionMethod::Sus),
            "bhs" => Ok(SelectionMethod::Bhs),
            other => Err(Error::Config(format!("unknown selection method '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbabilityBasis {
    Weight,
    FitVal,
}

impl ProbabilityBasis {
    pub const ALL: [ProbabilityBasis; 2] = [ProbabilityBasis::FitVal, ProbabilityBasis::Weight];

    pub fn name(self) -> &'static str {
        match self {
            ProbabilityBasis::Weight => "weight",
            ProbabilityBasis::FitVal => "fitval",
        }
    }
}

impl fmt::Display for ProbabilityBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProbabilityBasis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "weight" => Ok(ProbabilityBasis::Weight),
            "fitval" => Ok(ProbabilityBasis::FitVal),
            other => Err(Error::Config(format!(
                "unknown probability basis '{other}'"
            ))),
        }
    }
}

/// Selection method, probability basis and rank-weight spread `q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelectionSpec {
    pub method: SelectionMethod,
    pub basis: ProbabilityBasis,
    pub q: f64,
}

impl SelectionSpec {
    pub fn new(method: SelectionMethod, basis: ProbabilityBasis, q: f64) -> Result<Self> {
        let spec = Self { method, basis, q };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.q.is_finite() && self.q > 0.0) {
            return Err(Error::Config(format!("q={} must be > 0", self.q)));
        }
        Ok(())
    }

    /// Label such as `RWS(FitVal)`.
    pub fn label(&self) -> String {
        let basis = match self.basis {
            ProbabilityBasis::Weight => "Weight",
            ProbabilityBasis::FitVal => "FitVal",
        };
        format!("{}({basis})", self.method.name().to_ascii_uppercase())
    }
}

/// Selection probabilities over archive positions.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    p: Vec<f64>,
    cumulative: Vec<f64>,
    last_positive: usize,
}

impl ProbabilityVector {
    /// Validates that `p` is nonnegative and sums to one within 1e-12.
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::Argument("empty probability vector".into()));
        }
        if p.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Argument(format!(
                "probabilities must be finite and nonnegative: {p:?}"
            )));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::Argument(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        let mut acc = 0.0;
        let cumulative = p
            .iter()
            .map(|v| {
                acc += v;
                acc
            })
            .collect();
        let last_positive = p.iter().rposition(|v| *v > 0.0).unwrap_or(p.len() - 1);
        Ok(Self {
            p,
            cumulative,
            last_positive,
        })
    }

    fn normalized(raw: Vec<f64>) -> Result<Self> {
        let total: f64 = raw.iter().sum();
        if !(total.is_finite() && total > 0.0) {
            return Err(Error::Degenerate(format!(
                "cannot normalize vector with total {total}"
            )));
        }
        Self::new(raw.into_iter().map(|v| v / total).collect())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.p
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// Index whose cumulative segment contains `u` in `[0, 1)`.
    ///
    /// A `u` beyond the last cumulative value (rounding residue) maps to the
    /// last index with positive probability.
    pub fn segment(&self, u: f64) -> usize {
        let idx = self.cumulative.partition_point(|&c| c <= u);
        if idx >= self.p.len() {
            self.last_positive
        } else {
            idx
        }
    }
}

/// Gaussian-of-rank weights for ranks `1..=k`.
pub fn rank_weights(k: usize, q: f64) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::Config("rank weights need k >= 1".into()));
    }
    if !(q.is_finite() && q > 0.0) {
        return Err(Error::Config(format!("q={q} must be > 0")));
    }
    let qk = q * k as f64;
    let scale = 1.0 / (qk * (2.0 * PI).sqrt());
    Ok((0..k)
        .map(|r| {
            let r = r as f64;
            scale * (-(r * r) / (2.0 * qk * qk)).exp()
        })
        .collect())
}

/// Normalizes positive weights into probabilities.
pub fn probabilities_from_weights(weights: &[f64]) -> Result<ProbabilityVector> {
    if weights.is_empty() {
        return Err(Error::Argument("empty weight vector".into()));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::Argument(format!(
            "weights must be finite and nonnegative: {weights:?}"
        )));
    }
    if weights.iter().all(|w| *w == 0.0) {
        return Err(Error::Degenerate("all weights are zero".into()));
    }
    ProbabilityVector::normalized(weights.to_vec())
}

/// Probabilities from raw objective values; lower fitness gets higher probability.
pub fn probabilities_from_fitness(fitnesses: &[f64]) -> Result<ProbabilityVector> {
    if fitnesses.is_empty() {
        return Err(Error::Argument("empty fitness vector".into()));
    }
    if fitnesses.iter().any(|f| !f.is_finite()) {
        return Err(Error::Argument(format!(
            "fitness values must be finite: {fitnesses:?}"
        )));
    }
    let k = fitnesses.len();
    let (lo, hi) = fitnesses
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &f| {
            (lo.min(f), hi.max(f))
        });
    let spread = hi - lo;
    if spread == 0.0 {
        return ProbabilityVector::new(vec![1.0 / k as f64; k]);
    }
    if !spread.is_finite() {
        return Err(Error::Argument(format!(
            "fitness spread overflows: [{lo}, {hi}]"
        )));
    }
    // (f_max - f_j + delta) / spread with delta = spread / k
    let floor = 1.0 / k as f64;
    ProbabilityVector::normalized(
        fitnesses
            .iter()
            .map(|f| (hi - f) / spread + floor)
            .collect(),
    )
}

/// Roulette wheel: one uniform draw against the cumulative segments.
pub fn rws_select(p: &ProbabilityVector, rng: &mut RandomSource) -> usize {
    p.segment(rng.uniform())
}

/// Evenly spaced pointers `offset + i / count`, wrapped into `[0, 1)`.
pub fn sus_pointers(count: usize, offset: f64) -> Vec<f64> {
    let step = 1.0 / count as f64;
    (0..count)
        .map(|i| {
            let r = offset + i as f64 * step;
            if r >= 1.0 {
                r - 1.0
            } else {
                r
            }
        })
        .collect()
}

/// Stochastic universal sampling: `count` indices from one uniform offset in
/// `[0, 1/count)`, returned in pointer order.
pub fn sus_sequence(
    p: &ProbabilityVector,
    count: usize,
    rng: &mut RandomSource,
) -> Result<Vec<usize>> {
    if count == 0 {
        return Err(Error::Argument("SUS needs count >= 1".into()));
    }
    let offset = rng.uniform() / count as f64;
    Ok(sus_pointers(count, offset)
        .into_iter()
        .map(|r| p.segment(r))
        .collect())
}

/// Bernoulli heterogeneous selection: scan ranks in order, accepting `j` when a
/// fresh uniform draw falls below `p_j`. Full passes without acceptance restart
/// the scan; after [`BHS_DRAW_BUDGET`] draws the best rank is returned.
pub fn bhs_select(p: &ProbabilityVector, rng: &mut RandomSource) -> usize {
    let mut draws = 0;
    while draws < BHS_DRAW_BUDGET {
        for (j, &pj) in p.as_slice().iter().enumerate() {
            draws += 1;
            if rng.uniform() < pj {
                return j;
            }
            if draws >= BHS_DRAW_BUDGET {
                break;
            }
        }
    }
    0
}

/// Selection probabilities for `archive` under `spec`'s basis.
pub fn probabilities(spec: &SelectionSpec, archive: &Archive) -> Result<ProbabilityVector> {
    match spec.basis {
        ProbabilityBasis::Weight => {
            probabilities_from_weights(&rank_weights(archive.len(), spec.q)?)
        }
        ProbabilityBasis::FitVal => probabilities_from_fitness(&archive.fitnesses()),
    }
}

/// One-shot selection. SUS with a single pointer degenerates to one wheel spin.
pub fn select(spec: &SelectionSpec, archive: &Archive, rng: &mut RandomSource) -> Result<usize> {
    let p = probabilities(spec, archive)?;
    Ok(match spec.method {
        SelectionMethod::Rws => rws_select(&p, rng),
        SelectionMethod::Sus => sus_sequence(&p, 1, rng)?[0],
        SelectionMethod::Bhs => bhs_select(&p, rng),
    })
}

/// Per-iteration selection state for an ACO run.
///
/// Probabilities are fixed for the duration of one iteration because the
/// archive only changes at its end. For SUS, one sweep of `m * n` pointers is
/// drawn per iteration and dealt out with stride `m`, so every constructed
/// solution receives an evenly spaced sub-sweep of the wheel:
/// selection `(l, i)` takes pointer `i * m + l`.
#[derive(Debug, Clone)]
pub struct Selector {
    spec: SelectionSpec,
    probabilities: Option<ProbabilityVector>,
    queue: Vec<usize>,
    cursor: usize,
}

impl Selector {
    pub fn new(spec: SelectionSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Self {
            spec,
            probabilities: None,
            queue: Vec::new(),
            cursor: 0,
        })
    }

    pub fn spec(&self) -> &SelectionSpec {
        &self.spec
    }

    pub fn probabilities(&self) -> Option<&ProbabilityVector> {
        self.probabilities.as_ref()
    }

    /// Prepares the selections for an iteration constructing `members`
    /// solutions of `dimension` variables each.
    pub fn begin_iteration(
        &mut self,
        archive: &Archive,
        members: usize,
        dimension: usize,
        rng: &mut RandomSource,
    ) -> Result<()> {
        let reuse = self.spec.basis == ProbabilityBasis::Weight
            && self
                .probabilities
                .as_ref()
                .is_some_and(|p| p.len() == archive.len());
        if !reuse {
            self.probabilities = Some(probabilities(&self.spec, archive)?);
        }
        self.queue.clear();
        self.cursor = 0;
        if self.spec.method == SelectionMethod::Sus {
            let p = self
                .probabilities
                .as_ref()
                .expect("probabilities set above");
            let sweep = sus_sequence(p, members * dimension, rng)?;
            self.queue.reserve(sweep.len());
            for l in 0..members {
                for i in 0..dimension {
                    self.queue.push(sweep[i * members + l]);
                }
            }
        }
        Ok(())
    }

    /// Next archive index for the current iteration.
    pub fn next(&mut self, rng: &mut RandomSource) -> Result<usize> {
        let p = self
            .probabilities
            .as_ref()
            .ok_or_else(|| Error::Argument("selector used before begin_iteration".into()))?;
        Ok(match self.spec.method {
            SelectionMethod::Rws => rws_select(p, rng),
            SelectionMethod::Bhs => bhs_select(p, rng),
            SelectionMethod::Sus => {
                let j = *self.queue.get(self.cursor).ok_or_else(|| {
                    Error::Argument("SUS sweep exhausted for this iteration".into())
                })?;
                self.cursor += 1;
                j
            }
        })
    }
}

/// One selection made while constructing a new solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionRecord {
    pub iteration: usize,
    /// New-solution index within the iteration (0-based).
    pub l: usize,
    /// Variable index (0-based).
    pub i: usize,
    /// 1-based rank of the chosen archive member.
    pub selected_rank: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionTrace {
    pub records: Vec<SelectionRecord>,
}

impl SelectionTrace {
    pub fn push(&mut self, record: SelectionRecord) {
        self.records.push(record);
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn iteration(&self, iteration: usize) -> impl Iterator<Item = &SelectionRecord> {
        self.records
            .iter()
            .filter(move |r| r.iteration == iteration)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::archive::Solution;
    use proptest::prelude::*;

    // chi-square 0.999 quantile, 9 degrees of freedom
    const CHI2_999_DOF9: f64 = 27.877;

    fn pv(p: &[f64]) -> ProbabilityVector {
        ProbabilityVector::new(p.to_vec()).unwrap()
    }

    fn archive_of(fs: &[f64]) -> Archive {
        Archive::from_solutions(
            fs.iter()
                .map(|&f| Solution::from_parts(vec![f], f).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_weight_values() {
        let w = rank_weights(10, 0.1).unwrap();
        assert!((w[0] - 0.398942280).abs() < 1e-9, "{}", w[0]);
        assert!((w[1] / w[0] - (-0.5f64).exp()).abs() < 1e-12);
        assert!((w[1] / w[0] - 0.606531).abs() < 1e-6);
        assert!(w.windows(2).all(|p| p[0] > p[1]));
    }

    #[test]
    fn rank_weights_reject_bad_q() {
        assert!(matches!(rank_weights(5, 0.0), Err(Error::Config(_))));
        assert!(matches!(rank_weights(5, -1.0), Err(Error::Config(_))));
    }

    #[test]
    fn weights_normalize() {
        assert_eq!(
            probabilities_from_weights(&[1.0; 4]).unwrap().as_slice(),
            &[0.25; 4]
        );
        assert_eq!(
            probabilities_from_weights(&[3.0, 1.0]).unwrap().as_slice(),
            &[0.75, 0.25]
        );
        let p = probabilities_from_weights(&rank_weights(10, 0.1).unwrap()).unwrap();
        assert!((p.as_slice().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(matches!(
            probabilities_from_weights(&[0.0, 0.0]),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn fitness_probabilities() {
        let c = 4.2;
        let p = probabilities_from_fitness(&[c, c, c]).unwrap();
        assert!(p.as_slice().iter().all(|v| (v - 1.0 / 3.0).abs() < 1e-15));
        let p = probabilities_from_fitness(&[0.0, 10.0]).unwrap();
        assert_eq!(p.as_slice(), &[0.75, 0.25]);
        assert!(matches!(
            probabilities_from_fitness(&[0.0, f64::NAN]),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn rws_certain_event() {
        let p = pv(&[1.0, 0.0, 0.0]);
        let mut rng = RandomSource::new(1);
        assert!((0..1000).all(|_| rws_select(&p, &mut rng) == 0));
    }

    #[test]
    fn rws_fair_coin() {
        let p = pv(&[0.5, 0.5]);
        let mut rng = RandomSource::new(2);
        let n = 100_000;
        let ones = (0..n).filter(|_| rws_select(&p, &mut rng) == 0).count();
        let f = ones as f64 / n as f64;
        assert!((0.494..=0.506).contains(&f), "{f}");
    }

    #[test]
    fn rws_chi_square() {
        let p = probabilities_from_weights(&rank_weights(10, 0.1).unwrap()).unwrap();
        let mut rng = RandomSource::new(3);
        let n = 100_000;
        let mut counts = [0usize; 10];
        for _ in 0..n {
            counts[rws_select(&p, &mut rng)] += 1;
        }
        let chi2: f64 = counts
            .iter()
            .zip(p.as_slice())
            .filter(|(_, &pj)| pj * n as f64 > 0.0)
            .map(|(&c, &pj)| {
                let e = pj * n as f64;
                (c as f64 - e).powi(2) / e
            })
            .sum();
        assert!(chi2 < CHI2_999_DOF9, "{chi2}");
    }

    #[test]
    fn rws_residue_goes_to_last_positive() {
        let p = pv(&[0.5, 0.5, 0.0]);
        assert_eq!(p.segment(0.999_999_999_999_999_9), 1);
        assert_eq!(p.segment(1.0), 1);
    }

    // Brute force over a grid of pointer offsets instead of a random draw.
    #[test]
    fn sus_uniform_selects_each_once() {
        let p = pv(&[0.1; 10]);
        for t in 0..1000 {
            let offset = (t as f64 + 0.5) / 1000.0 * 0.1;
            let mut seen: Vec<usize> = sus_pointers(10, offset)
                .into_iter()
                .map(|r| p.segment(r))
                .collect();
            seen.sort_unstable();
            assert_eq!(seen, (0..10).collect::<Vec<_>>(), "offset {offset}");
        }
    }

    #[test]
    fn sus_certain_and_halves() {
        let mut rng = RandomSource::new(4);
        assert_eq!(
            sus_sequence(&pv(&[1.0, 0.0]), 4, &mut rng).unwrap(),
            vec![0; 4]
        );
        for _ in 0..100 {
            let mut s = sus_sequence(&pv(&[0.5, 0.5]), 2, &mut rng).unwrap();
            s.sort_unstable();
            assert_eq!(s, vec![0, 1]);
        }
        assert!(sus_sequence(&pv(&[1.0]), 0, &mut rng).is_err());
    }

    #[test]
    fn sus_pointer_spacing() {
        for count in [1, 2, 7, 10, 300] {
            let ptrs = sus_pointers(count, 0.3 / count as f64);
            for w in ptrs.windows(2) {
                assert!((w[1] - w[0] - 1.0 / count as f64).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sus_counts_within_one() {
        let p = probabilities_from_fitness(&[0.0, 1.0, 3.0, 7.0, 7.5, 20.0]).unwrap();
        let mut rng = RandomSource::new(5);
        for count in [6, 13, 100, 300] {
            let seq = sus_sequence(&p, count, &mut rng).unwrap();
            for (j, pj) in p.as_slice().iter().enumerate() {
                let c = seq.iter().filter(|&&x| x == j).count() as f64;
                assert!((c - count as f64 * pj).abs() <= 1.0 + 1e-9);
            }
        }
    }

    #[test]
    fn bhs_certain_events() {
        let mut rng = RandomSource::new(6);
        let mut p = vec![0.0; 10];
        p[0] = 1.0;
        let p = pv(&p);
        assert!((0..1000).all(|_| bhs_select(&p, &mut rng) == 0));
        let p = pv(&[0.0, 1.0]);
        assert!((0..1000).all(|_| bhs_select(&p, &mut rng) == 1));
    }

    #[test]
    fn bhs_concentrates_on_best() {
        let p = probabilities_from_weights(&rank_weights(10, 0.1).unwrap()).unwrap();
        let n = 100_000;
        let mut rng = RandomSource::new(8);
        let mut bhs = [0usize; 10];
        let mut rws = [0usize; 10];
        for _ in 0..n {
            bhs[bhs_select(&p, &mut rng)] += 1;
            rws[rws_select(&p, &mut rng)] += 1;
        }
        assert!(bhs[0] > bhs[1] && bhs[1] > bhs[2]);
        assert!(bhs[0] > rws[0]);
    }

    #[test]
    fn select_weight_basis_ignores_fitness() {
        let a = archive_of(&[1.0, 1.0, 1.0, 1.0]);
        let spec = SelectionSpec::new(SelectionMethod::Rws, ProbabilityBasis::Weight, 0.1).unwrap();
        let p = probabilities(&spec, &a).unwrap();
        assert!(p.as_slice().windows(2).all(|w| w[0] > w[1]));
        let mut rng = RandomSource::new(1);
        let mut counts = [0usize; 4];
        for _ in 0..10_000 {
            counts[select(&spec, &a, &mut rng).unwrap()] += 1;
        }
        assert!(counts[0] > counts[1]);
    }

    #[test]
    fn sus_selector_repeats_every_dimension_under_uniform_p() {
        let a = archive_of(&[5.0; 10]);
        let spec = SelectionSpec::new(SelectionMethod::Sus, ProbabilityBasis::FitVal, 0.1).unwrap();
        let mut sel = Selector::new(spec).unwrap();
        let mut rng = RandomSource::new(12);
        sel.begin_iteration(&a, 10, 30, &mut rng).unwrap();
        let seq: Vec<usize> = (0..300).map(|_| sel.next(&mut rng).unwrap()).collect();
        for t in 0..270 {
            assert_eq!(seq[t], seq[t + 30]);
        }
        // each new solution sweeps all ranks evenly: 3 picks per rank
        for j in 0..10 {
            assert_eq!(seq[..30].iter().filter(|&&x| x == j).count(), 3);
        }
        assert!(sel.next(&mut rng).is_err());
    }

    #[test]
    fn spec_rejects_nonpositive_q() {
        assert!(SelectionSpec::new(SelectionMethod::Rws, ProbabilityBasis::Weight, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn fitness_probabilities_valid(fs in prop::collection::vec(-1e6f64..1e6, 1..20)) {
            let p = probabilities_from_fitness(&fs).unwrap();
            let s = p.as_slice();
            prop_assert!(s.iter().all(|v| *v >= 0.0));
            prop_assert!((s.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
            let argmin = fs.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
            let argmax = s.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
            prop_assert_eq!(fs[argmin], fs[argmax]);
        }

        #[test]
        fn fitness_probabilities_permute(fs in prop::collection::vec(-1e3f64..1e3, 2..12), rot in 0usize..12) {
            let rot = rot % fs.len();
            let mut g = fs.clone();
            g.rotate_left(rot);
            let mut p = probabilities_from_fitness(&fs).unwrap().as_slice().to_vec();
            p.rotate_left(rot);
            let q = probabilities_from_fitness(&g).unwrap();
            for (a, b) in p.iter().zip(q.as_slice()) {
                prop_assert!((a - b).abs() < 1e-15);
            }
        }

        #[test]
        fn rank_weights_decreasing(k in 2usize..200, q in 0.01f64..5.0) {
            let w = rank_weights(k, q).unwrap();
            prop_assert!(w.windows(2).all(|p| p[0] > p[1] || p[1] == 0.0));
            let p = probabilities_from_weights(&w).unwrap();
            prop_assert!((p.as_slice().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn reseeded_selection_reproduces(seed in any::<u64>()) {
            let p = probabilities_from_fitness(&[0.0, 2.0, 3.0, 9.0]).unwrap();
            let run = |s| {
                let mut rng = RandomSource::new(s);
                (0..50).map(|_| (rws_select(&p, &mut rng), bhs_select(&p, &mut rng))).collect::<Vec<_>>()
            };
            prop_assert_eq!(run(seed), run(seed));
        }
    }
}
