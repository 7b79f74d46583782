//! Confidence regions for a scalar parameter of interest in the presence of
//! nuisance parameters: one acceptance set per proxy nuisance value, unioned.

use serde::Serialize;

use crate::alpha_prime::NullSpec;
use crate::distributions::Probability;
use crate::error::{Error, Result};
use crate::testing::modified_level;

/// A finite union of disjoint closed intervals on the extended real line.
///
/// Intervals are kept sorted by lower endpoint; overlapping or touching
/// intervals are merged. Endpoints are inclusive.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Region1D {
    intervals: Vec<(f64, f64)>,
}

impl Region1D {
    pub fn empty() -> Self {
        Region1D::default()
    }

    /// `[lo, hi]`, or the empty region when `lo > hi` or either end is NaN.
    pub fn interval(lo: f64, hi: f64) -> Self {
        if lo <= hi {
            Region1D {
                intervals: vec![(lo, hi)],
            }
        } else {
            Region1D::empty()
        }
    }

    pub fn whole_line() -> Self {
        Region1D::interval(f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: f64) -> bool {
        // First interval whose upper end reaches x.
        let idx = self.intervals.partition_point(|&(_, hi)| hi < x);
        self.intervals.get(idx).is_some_and(|&(lo, _)| lo <= x)
    }

    pub fn union(&self, other: &Region1D) -> Region1D {
        self.intervals
            .iter()
            .chain(other.intervals.iter())
            .copied()
            .collect()
    }

    /// Total length (may be infinite).
    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(lo, hi)| hi - lo).sum()
    }

    /// `(min, max)` over the whole region, if nonempty.
    pub fn hull(&self) -> Option<(f64, f64)> {
        Some((self.intervals.first()?.0, self.intervals.last()?.1))
    }

    fn canonicalize(mut raw: Vec<(f64, f64)>) -> Region1D {
        raw.retain(|(lo, hi)| lo <= hi);
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
        for (lo, hi) in raw {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        Region1D { intervals: merged }
    }
}

impl FromIterator<(f64, f64)> for Region1D {
    fn from_iter<I: IntoIterator<Item = (f64, f64)>>(iter: I) -> Self {
        Region1D::canonicalize(iter.into_iter().collect())
    }
}

impl FromIterator<Region1D> for Region1D {
    fn from_iter<I: IntoIterator<Item = Region1D>>(iter: I) -> Self {
        Region1D::canonicalize(iter.into_iter().flat_map(|r| r.intervals).collect())
    }
}

/// Builds `∪_j R_j`, where `R_j = solver(proxy_j, α′)` is the set of ψ not
/// rejected at level α′ when the nuisance parameter is fixed at `proxy_j`.
///
/// `spec` describes the joint null `{ψ = ψ0} × Φ`: `d1 = dψ + dφ`,
/// `d0 = dφ`, no boundary.
pub fn build_region<P, S>(solver: S, proxies: &[P], alpha: f64, spec: NullSpec) -> Result<Region1D>
where
    S: Fn(&P, Probability) -> Result<Region1D>,
{
    if proxies.is_empty() {
        return Err(Error::EmptyPoints);
    }
    let level = modified_level(alpha, spec)?;
    proxies.iter().map(|p| solver(p, level)).collect()
}

/// Converts a pointwise acceptance rule into a region by scanning `steps + 1`
/// equally spaced grid points on `[lo, hi]` and grouping consecutive accepted
/// points into intervals. Resolution is `(hi - lo) / steps`.
pub fn grid_region<A>(accept: A, lo: f64, hi: f64, steps: usize) -> Result<Region1D>
where
    A: Fn(f64) -> Result<bool>,
{
    if !(lo < hi) || steps == 0 {
        return Err(Error::domain("grid needs lo < hi and at least one step"));
    }
    let h = (hi - lo) / steps as f64;
    let mut runs = Vec::new();
    let mut start: Option<f64> = None;
    let mut prev = lo;
    for i in 0..=steps {
        let x = if i == steps { hi } else { lo + h * i as f64 };
        match (accept(x)?, start) {
            (true, None) => start = Some(x),
            (false, Some(s)) => {
                runs.push((s, prev));
                start = None;
            }
            _ => {}
        }
        prev = x;
    }
    if let Some(s) = start {
        runs.push((s, prev));
    }
    Ok(runs.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn disjoint_union_keeps_two_pieces() {
        let r = Region1D::interval(0.0, 1.0).union(&Region1D::interval(2.0, 3.0));
        assert_eq!(r.intervals(), &[(0.0, 1.0), (2.0, 3.0)]);
    }

    #[test]
    fn overlapping_union_merges() {
        let r = Region1D::interval(0.0, 1.5).union(&Region1D::interval(1.0, 3.0));
        assert_eq!(r.intervals(), &[(0.0, 3.0)]);
    }

    #[test]
    fn touching_intervals_merge() {
        let r = Region1D::interval(0.0, 1.0).union(&Region1D::interval(1.0, 2.0));
        assert_eq!(r.intervals(), &[(0.0, 2.0)]);
    }

    #[test]
    fn endpoints_are_inclusive() {
        let r = Region1D::interval(-1.0, 2.0);
        assert!(r.contains(-1.0) && r.contains(2.0));
        assert!(!r.contains(2.0 + 1e-12));
        assert!(!Region1D::empty().contains(0.0));
        assert!(Region1D::whole_line().contains(1e300));
    }

    #[test]
    fn reversed_interval_is_empty() {
        assert!(Region1D::interval(1.0, 0.0).is_empty());
        assert!(Region1D::interval(f64::NAN, 0.0).is_empty());
    }

    #[test]
    fn build_region_single_proxy_is_that_set() {
        let spec = NullSpec::no_boundary(2, 1).unwrap();
        let r = build_region(
            |c: &f64, _| Ok(Region1D::interval(c - 1.0, c + 1.0)),
            &[3.0],
            0.05,
            spec,
        )
        .unwrap();
        assert_eq!(r, Region1D::interval(2.0, 4.0));
        let none: [f64; 0] = [];
        assert!(build_region(|_: &f64, _| Ok(Region1D::empty()), &none, 0.05, spec).is_err());
    }

    #[test]
    fn build_region_passes_modified_level() {
        let spec = NullSpec::no_boundary(2, 1).unwrap();
        build_region(
            |_: &u8, level| {
                assert!((level.get() - 0.1465).abs() < 5e-4);
                Ok(Region1D::empty())
            },
            &[0],
            0.05,
            spec,
        )
        .unwrap();
    }

    #[test]
    fn grid_region_groups_runs() {
        let r = grid_region(
            |x| Ok(x.abs() <= 1.0 || (3.0..=4.0).contains(&x)),
            -5.0,
            5.0,
            1000,
        )
        .unwrap();
        assert_eq!(r.intervals().len(), 2);
        let (lo, hi) = r.intervals()[0];
        assert!((lo + 1.0).abs() < 1e-9 && (hi - 1.0).abs() < 1e-9);
    }

    fn arb_intervals() -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec(
            (-100.0f64..100.0, 0.0f64..10.0).prop_map(|(a, w)| (a, a + w)),
            0..50,
        )
    }

    proptest! {
        #[test]
        fn membership_matches_naive_loop(ivs in arb_intervals(), probes in prop::collection::vec(-120.0f64..120.0, 1..50)) {
            let r: Region1D = ivs.iter().copied().collect();
            for x in probes {
                let naive = ivs.iter().any(|&(lo, hi)| lo <= x && x <= hi);
                prop_assert_eq!(r.contains(x), naive);
            }
            for &(lo, hi) in &ivs {
                prop_assert!(r.contains(lo) && r.contains(hi));
            }
        }

        #[test]
        fn canonical_form_is_sorted_and_separated(ivs in arb_intervals()) {
            let r: Region1D = ivs.into_iter().collect();
            for w in r.intervals().windows(2) {
                prop_assert!(w[0].1 < w[1].0);
            }
            for &(lo, hi) in r.intervals() {
                prop_assert!(lo <= hi);
            }
        }

        #[test]
        fn union_is_commutative(a in arb_intervals(), b in arb_intervals()) {
            let ra: Region1D = a.into_iter().collect();
            let rb: Region1D = b.into_iter().collect();
            prop_assert_eq!(ra.union(&rb), rb.union(&ra));
        }
    }
}
