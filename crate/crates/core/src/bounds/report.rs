//! Per-`n` bound reports and the proposition verdict table.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{
    barnette_simplicial_max, dimension_of, facets_of, lbt_lower, linial_luria_upper,
    lower_latin_ratio, new_upper, new_upper_terms, old_upper, render_decimal,
    render_integer_decimal,
};
use crate::enumerate::count_latin_squares;
use crate::error::{BoundsError, FormatError};

/// Reports include the exact Latin square count up to this order.
pub const LATIN_COUNT_MAX_N: usize = 5;

/// Comparison results for one `n`. `None` marks a comparison whose inputs are
/// undefined at that `n` (the lower-bound-theorem value needs `n >= 3`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    /// new upper bound < old upper bound
    pub new_below_old: bool,
    /// new upper bound < n^(3n^2)
    pub new_below_linial_luria: bool,
    /// lbt_lower equals 11 at n = 3 and (n-1)^3 + 2 from n = 4 on
    pub lbt_matches_closed_form: Option<bool>,
    /// lbt_lower > Latin ratio for n in {3, 4}, < for n >= 5
    pub lbt_vs_latin_ratio: Option<bool>,
    /// lbt_lower <= new upper bound
    pub lbt_below_new_upper: Option<bool>,
}

impl Verdicts {
    pub fn all_hold(&self) -> bool {
        self.new_below_old
            && self.new_below_linial_luria
            && [
                self.lbt_matches_closed_form,
                self.lbt_vs_latin_ratio,
                self.lbt_below_new_upper,
            ]
            .iter()
            .all(|v| v.unwrap_or(true))
    }
}

/// `a` against `num/den` by cross-multiplication (`den > 0`).
fn cmp_integer_rational(a: &BigUint, b: &BigRational) -> Ordering {
    (BigInt::from(a.clone()) * b.denom()).cmp(b.numer())
}

/// Expected sign of `lbt_lower - latin_ratio` at `n`.
pub fn expected_lbt_direction(n: usize) -> Option<Ordering> {
    match n {
        0..=2 => None,
        3 | 4 => Some(Ordering::Greater),
        _ => Some(Ordering::Less),
    }
}

/// One row of [`verify_propositions`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropositionRow {
    pub n: usize,
    pub new_upper: BigUint,
    pub old_upper: BigRational,
    pub linial_luria_upper: BigUint,
    pub lbt_lower: Option<usize>,
    pub lower_latin_ratio: BigRational,
    /// Observed sign of `lbt_lower - lower_latin_ratio`.
    pub lbt_direction: Option<Ordering>,
    pub verdicts: Verdicts,
}

fn proposition_row(n: usize) -> Result<PropositionRow, BoundsError> {
    let new_upper = new_upper(n)?;
    let old_upper = old_upper(n)?;
    let ll = linial_luria_upper(n)?;
    let lbt = if n >= 3 { Some(lbt_lower(n)?) } else { None };
    let ratio = lower_latin_ratio(n);

    let lbt_direction = lbt.map(|k| cmp_integer_rational(&BigUint::from(k), &ratio));
    let verdicts = Verdicts {
        new_below_old: cmp_integer_rational(&new_upper, &old_upper) == Ordering::Less,
        new_below_linial_luria: new_upper < ll,
        lbt_matches_closed_form: lbt.map(|k| {
            let expected = if n == 3 { 11 } else { dimension_of(n) + 2 };
            k == expected
        }),
        lbt_vs_latin_ratio: lbt_direction.map(|d| Some(d) == expected_lbt_direction(n)),
        lbt_below_new_upper: lbt.map(|k| BigUint::from(k) <= new_upper),
    };
    Ok(PropositionRow {
        n,
        new_upper,
        old_upper,
        linial_luria_upper: ll,
        lbt_lower: lbt,
        lower_latin_ratio: ratio,
        lbt_direction,
        verdicts,
    })
}

/// Checks every comparison claimed for the bounds over `n_min..=n_max`.
pub fn verify_propositions(n_min: usize, n_max: usize) -> Result<Vec<PropositionRow>, BoundsError> {
    if n_min < 2 || n_max < n_min {
        return Err(BoundsError::Domain {
            what: "verify_propositions",
            args: format!("n_min = {n_min}, n_max = {n_max}"),
            reason: "requires 2 <= n_min <= n_max",
        });
    }
    (n_min..=n_max).map(proposition_row).collect()
}

/// Every bound for one `n`, exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub lower_latin_ratio: BigRational,
    /// Exact count of Latin squares, computed for `n <= LATIN_COUNT_MAX_N`.
    pub latin_count: Option<BigUint>,
    /// Undefined at `n = 2`, where the dimension is 1.
    pub lbt_lower: Option<usize>,
    pub old_upper: BigRational,
    pub new_upper: BigUint,
    pub linial_luria_upper: BigUint,
    /// Undefined at `n = 2`.
    pub barnette_simplicial_max: Option<BigUint>,
    /// Number of vertices, when an enumeration was run.
    pub enumerated: Option<usize>,
    pub verdicts: Verdicts,
}

pub fn bound_report(n: usize) -> Result<BoundReport, BoundsError> {
    let row = proposition_row(n)?;
    let latin_count = (n <= LATIN_COUNT_MAX_N).then(|| BigUint::from(count_latin_squares(n)));
    let barnette = if n >= 3 {
        Some(barnette_simplicial_max(dimension_of(n), facets_of(n))?)
    } else {
        None
    };
    Ok(BoundReport {
        n,
        lower_latin_ratio: row.lower_latin_ratio,
        latin_count,
        lbt_lower: row.lbt_lower,
        old_upper: row.old_upper,
        new_upper: row.new_upper,
        linial_luria_upper: row.linial_luria_upper,
        barnette_simplicial_max: barnette,
        enumerated: None,
        verdicts: row.verdicts,
    })
}

impl BoundReport {
    /// `"2·C(50,37)"` when both binomials coincide, else `"C(a,b)+C(c,b)"`.
    pub fn new_upper_factored(&self) -> String {
        let ((a, c), b) = new_upper_terms(self.n);
        if a == c {
            format!("2·C({a},{b})")
        } else {
            format!("C({a},{b})+C({c},{b})")
        }
    }

    /// `"(1/27)·C(65,26)"`.
    pub fn old_upper_factored(&self) -> String {
        let f = facets_of(self.n);
        format!("(1/{f})·C({},{})", super::old_upper_top(self.n), f - 1)
    }

    /// `lower_latin_ratio <= latin_count`, when the count is known.
    pub fn latin_ratio_below_count(&self) -> Option<bool> {
        self.latin_count
            .as_ref()
            .map(|c| cmp_integer_rational(c, &self.lower_latin_ratio) != Ordering::Less)
    }

    pub fn to_document(&self) -> BoundReportDocument {
        let int = |v: &BigUint| ExactValue {
            exact: v.to_string(),
            approx: render_integer_decimal(v),
        };
        let rat = |v: &BigRational| ExactValue {
            exact: v.to_string(),
            approx: render_decimal(v),
        };
        BoundReportDocument {
            n: self.n,
            lower_latin_ratio: rat(&self.lower_latin_ratio),
            latin_count: self.latin_count.as_ref().map(int),
            lbt_lower: self.lbt_lower,
            old_upper: rat(&self.old_upper),
            old_upper_factored: self.old_upper_factored(),
            new_upper: int(&self.new_upper),
            new_upper_factored: self.new_upper_factored(),
            linial_luria_upper: int(&self.linial_luria_upper),
            barnette_simplicial_max: self.barnette_simplicial_max.as_ref().map(int),
            enumerated: self.enumerated,
            verdicts: self.verdicts.clone(),
        }
    }

    pub fn from_document(doc: &BoundReportDocument) -> Result<Self, FormatError> {
        fn int(path: &str, v: &ExactValue) -> Result<BigUint, FormatError> {
            v.exact.parse().map_err(|_| FormatError::Field {
                path: path.into(),
                message: format!("`{}` is not a nonnegative integer", v.exact),
            })
        }
        fn rat(path: &str, v: &ExactValue) -> Result<BigRational, FormatError> {
            v.exact.parse().map_err(|_| FormatError::Field {
                path: path.into(),
                message: format!("`{}` is not a rational", v.exact),
            })
        }
        Ok(Self {
            n: doc.n,
            lower_latin_ratio: rat("lower_latin_ratio", &doc.lower_latin_ratio)?,
            latin_count: doc
                .latin_count
                .as_ref()
                .map(|v| int("latin_count", v))
                .transpose()?,
            lbt_lower: doc.lbt_lower,
            old_upper: rat("old_upper", &doc.old_upper)?,
            new_upper: int("new_upper", &doc.new_upper)?,
            linial_luria_upper: int("linial_luria_upper", &doc.linial_luria_upper)?,
            barnette_simplicial_max: doc
                .barnette_simplicial_max
                .as_ref()
                .map(|v| int("barnette_simplicial_max", v))
                .transpose()?,
            enumerated: doc.enumerated,
            verdicts: doc.verdicts.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        Self::from_document(&serde_json::from_str(text)?)
    }
}

/// Exact value as an integer or `p/q` string plus a six-digit approximation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValue {
    pub exact: String,
    pub approx: String,
}

/// Serialized form of [`BoundReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReportDocument {
    pub n: usize,
    pub lower_latin_ratio: ExactValue,
    pub latin_count: Option<ExactValue>,
    pub lbt_lower: Option<usize>,
    pub old_upper: ExactValue,
    pub old_upper_factored: String,
    pub new_upper: ExactValue,
    pub new_upper_factored: String,
    pub linial_luria_upper: ExactValue,
    pub barnette_simplicial_max: Option<ExactValue>,
    pub enumerated: Option<usize>,
    pub verdicts: Verdicts,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_three() {
        let r = bound_report(3).unwrap();
        assert_eq!(r.lbt_lower, Some(11));
        assert_eq!(r.new_upper, BigUint::from(10395u32));
        assert_eq!(r.latin_count, Some(BigUint::from(12u32)));
        assert_eq!(r.barnette_simplicial_max, Some(BigUint::from(11u32)));
        assert_eq!(r.latin_ratio_below_count(), Some(true));
        assert_eq!(r.new_upper_factored(), "C(23,19)+C(22,19)");
        assert_eq!(r.old_upper_factored(), "(1/27)·C(65,26)");
        assert!(r.verdicts.all_hold());
    }

    #[test]
    fn report_two_has_undefined_lower_bounds() {
        let r = bound_report(2).unwrap();
        assert_eq!(r.lbt_lower, None);
        assert_eq!(r.barnette_simplicial_max, None);
        assert_eq!(r.verdicts.lbt_vs_latin_ratio, None);
        assert!(r.verdicts.all_hold());
        assert_eq!(r.new_upper_factored(), "2·C(7,7)");
    }

    #[test]
    fn factored_four() {
        let r = bound_report(4).unwrap();
        assert_eq!(r.new_upper_factored(), "2·C(50,37)");
        assert_eq!(r.old_upper_factored(), "(1/64)·C(138,63)");
    }

    #[test]
    fn json_round_trip() {
        let mut r = bound_report(3).unwrap();
        r.enumerated = Some(66);
        assert_eq!(BoundReport::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn directions_flip_at_five() {
        let rows = verify_propositions(3, 6).unwrap();
        let dirs: Vec<Option<Ordering>> = rows.iter().map(|r| r.lbt_direction).collect();
        assert_eq!(
            dirs,
            vec![
                Some(Ordering::Greater),
                Some(Ordering::Greater),
                Some(Ordering::Less),
                Some(Ordering::Less)
            ]
        );
    }

    #[test]
    fn verify_domain() {
        assert!(verify_propositions(1, 3).is_err());
        assert!(verify_propositions(5, 4).is_err());
    }
}
