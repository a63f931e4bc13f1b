//! Channel geometry, CSIT feedback profiles and feedback-cost accounting.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Transmit antennas `m` and single-antenna users `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SystemConfig {
    m: usize,
    k: usize,
}

impl SystemConfig {
    pub fn new(m: usize, k: usize) -> Result<Self> {
        if m == 0 || k == 0 {
            return Err(Error::Domain(format!(
                "antenna and user counts must be positive (M={m}, K={k})"
            )));
        }
        Ok(SystemConfig { m, k })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `min{M, K}`, the full-CSIT sum DoF.
    pub fn min_mk(&self) -> usize {
        self.m.min(self.k)
    }

    /// `min{k, M}` for a 1-based user position `k`.
    pub fn streams_at(&self, position: usize) -> usize {
        position.min(self.m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeedbackMode {
    /// Generic current-CSIT quality exponents in `[0, 1]`.
    Quality,
    /// Binary exponents: perfect current CSIT or delayed CSIT in each slot.
    AlternatingPerfect,
    /// Delayed CSIT only; averages are delayed-feedback fractions.
    DelayedOnly,
}

/// Per-user CSIT quality exponents and their time averages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeedbackProfile {
    per_slot_exponents: Option<Vec<Vec<Rational>>>,
    averages: Vec<Rational>,
    mode: FeedbackMode,
}

impl FeedbackProfile {
    /// Profile given directly by its per-user averages.
    pub fn from_averages(averages: Vec<Rational>, mode: FeedbackMode) -> Result<Self> {
        for a in &averages {
            a.check_unit_interval()?;
        }
        Ok(FeedbackProfile {
            per_slot_exponents: None,
            averages,
            mode,
        })
    }

    /// Profile given by a `(user, slot)` exponent matrix.
    pub fn from_slots(rows: Vec<Vec<Rational>>, mode: FeedbackMode) -> Result<Self> {
        for row in &rows {
            for a in row {
                a.check_unit_interval()?;
                if mode == FeedbackMode::AlternatingPerfect && !(a.is_zero() || *a == Rational::one()) {
                    return Err(Error::Range {
                        value: a.to_string(),
                        range: "{0, 1} (alternating-perfect mode)".into(),
                    });
                }
            }
        }
        let averages = average_rows(&rows)?;
        Ok(FeedbackProfile {
            per_slot_exponents: Some(rows),
            averages,
            mode,
        })
    }

    pub fn averages(&self) -> &[Rational] {
        &self.averages
    }

    pub fn per_slot_exponents(&self) -> Option<&[Vec<Rational>]> {
        self.per_slot_exponents.as_deref()
    }

    pub fn mode(&self) -> FeedbackMode {
        self.mode
    }

    pub fn users(&self) -> usize {
        self.averages.len()
    }

    pub fn cost(&self) -> Result<FeedbackCost> {
        total_cost(&self.averages)
    }
}

/// Total feedback cost, `Σ_k averages[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeedbackCost {
    pub total: Rational,
}

/// A K-vector of per-user DoF values, each in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DoFPoint(Vec<Rational>);

impl DoFPoint {
    pub fn new(d: Vec<Rational>) -> Result<Self> {
        for x in &d {
            if x.is_negative() || *x > Rational::one() {
                return Err(Error::Range {
                    value: x.to_string(),
                    range: "[0, 1] (per-user DoF)".into(),
                });
            }
        }
        Ok(DoFPoint(d))
    }

    /// Skips the `d_k <= 1` cap so that region queries can classify points
    /// outside the box. Components must still be nonnegative.
    pub fn unchecked(d: Vec<Rational>) -> Result<Self> {
        if let Some(x) = d.iter().find(|x| x.is_negative()) {
            return Err(Error::Range {
                value: x.to_string(),
                range: "[0, inf) (per-user DoF)".into(),
            });
        }
        Ok(DoFPoint(d))
    }

    pub fn zeros(k: usize) -> Self {
        DoFPoint(vec![Rational::zero(); k])
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Parses `"1/3,2/3,1"` or `"0.25,3/4"` into exact rationals.
pub fn parse_rational_vector(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(str::parse).collect()
}

/// Like [`parse_rational_vector`] but every entry must lie in `[0, 1]`.
pub fn parse_unit_vector(text: &str) -> Result<Vec<Rational>> {
    let v = parse_rational_vector(text)?;
    for x in &v {
        x.check_unit_interval()?;
    }
    Ok(v)
}

fn average_rows(rows: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let n = rows.first().map_or(0, Vec::len);
    if n == 0 {
        return Err(Error::Domain("exponent matrix has no slots".into()));
    }
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::Dimension {
            expected: n,
            got: bad.len(),
        });
    }
    let slots = Rational::from(n);
    Ok(rows
        .iter()
        .map(|row| row.iter().sum::<Rational>() / &slots)
        .collect())
}

/// Per-user time averages of the slot exponents.
pub fn average_exponents(profile: &FeedbackProfile) -> Result<Vec<Rational>> {
    match profile.per_slot_exponents() {
        Some(rows) => average_rows(rows),
        None => Err(Error::Domain("profile has no per-slot exponents".into())),
    }
}

pub fn total_cost(averages: &[Rational]) -> Result<FeedbackCost> {
    for a in averages {
        a.check_unit_interval()?;
    }
    Ok(FeedbackCost {
        total: averages.iter().sum(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_rational_vector("1/3,2/3,1").unwrap(),
            vec![ratio(1, 3), ratio(2, 3), ratio(1, 1)]
        );
        assert_eq!(parse_rational_vector("0,0,0").unwrap(), ints(&[0, 0, 0]));
        assert_eq!(
            parse_rational_vector("0.25,3/4").unwrap(),
            vec![ratio(1, 4), ratio(3, 4)]
        );
    }

    #[test]
    fn parse_reports_offending_token() {
        match parse_rational_vector("1/3,abc,1") {
            Err(Error::Parse { token }) => assert_eq!(token, "abc"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_unit_vector("1/2,3/2"),
            Err(Error::Range { .. })
        ));
    }

    #[test]
    fn averages_of_rows() {
        let p = FeedbackProfile::from_slots(vec![ints(&[1, 0, 1])], FeedbackMode::AlternatingPerfect)
            .unwrap();
        assert_eq!(average_exponents(&p).unwrap(), vec![ratio(2, 3)]);

        let p = FeedbackProfile::from_slots(vec![vec![ratio(1, 2), ratio(1, 2)]], FeedbackMode::Quality)
            .unwrap();
        assert_eq!(p.averages(), &[ratio(1, 2)]);

        let p = FeedbackProfile::from_slots(
            vec![ints(&[1, 1, 1]), ints(&[0, 0, 0]), ints(&[1, 0, 0])],
            FeedbackMode::AlternatingPerfect,
        )
        .unwrap();
        assert_eq!(p.averages(), &[ratio(1, 1), ratio(0, 1), ratio(1, 3)]);
    }

    #[test]
    fn empty_slots_rejected() {
        assert!(FeedbackProfile::from_slots(vec![vec![]], FeedbackMode::Quality).is_err());
        let p = FeedbackProfile::from_averages(vec![ratio(1, 2)], FeedbackMode::Quality).unwrap();
        assert!(average_exponents(&p).is_err());
    }

    #[test]
    fn alternating_requires_binary() {
        let err = FeedbackProfile::from_slots(vec![vec![ratio(1, 2)]], FeedbackMode::AlternatingPerfect);
        assert!(matches!(err, Err(Error::Range { .. })));
    }

    #[test]
    fn total_cost_examples() {
        let t = total_cost(&[ratio(1, 3), ratio(2, 3), ratio(1, 1)]).unwrap();
        assert_eq!(t.total, ratio(2, 1));
        assert_eq!(total_cost(&ints(&[0, 0, 0, 0])).unwrap().total, Rational::zero());
        let t = total_cost(&[ratio(1, 6), ratio(1, 3), ratio(1, 2)]).unwrap();
        assert_eq!(t.total, Rational::one());
        assert!(matches!(total_cost(&[ratio(3, 2)]), Err(Error::Range { .. })));
    }

    #[test]
    fn system_config_rejects_zero() {
        assert!(SystemConfig::new(0, 3).is_err());
        assert!(SystemConfig::new(2, 0).is_err());
        assert_eq!(SystemConfig::new(2, 5).unwrap().min_mk(), 2);
    }
}
