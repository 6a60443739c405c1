//! Map-level positivity: build the positivity polynomial, confirm it with a
//! second construction, then decide its nonnegativity.

use crate::choi::{positivity_poly, HermMap, PositivityPolynomial, Route};
use crate::error::{Error, Result};
use crate::renegar::{decide_nonneg, DecideOptions, DecisionReport};

/// The construction used to confirm `route`.
pub fn partner_route(route: Route) -> Route {
    match route {
        Route::Kraus => Route::Choi,
        Route::Choi => Route::Kraus,
        Route::DoubleSum => Route::Kraus,
    }
}

/// `p_Φ` by `route`, checked against [`partner_route`].
pub fn checked_positivity_poly(phi: &HermMap, route: Route) -> Result<PositivityPolynomial> {
    let p = positivity_poly(phi, route)?;
    let other = partner_route(route);
    if positivity_poly(phi, other)? != p {
        return Err(Error::Internal(format!(
            "positivity polynomial differs between the {route} and {other} constructions"
        )));
    }
    Ok(p)
}

pub struct PositivityDecision {
    pub polynomial: PositivityPolynomial,
    pub report: DecisionReport,
}

/// Decides whether `phi` is a positive map.
pub fn decide_positivity(phi: &HermMap, route: Route, opts: &DecideOptions) -> Result<PositivityDecision> {
    let polynomial = checked_positivity_poly(phi, route)?;
    let report = decide_nonneg(polynomial.poly(), opts)?;
    Ok(PositivityDecision { polynomial, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::renegar::Verdict;
    use num_traits::Signed;

    #[test]
    fn negation_map_is_not_positive() {
        let d = decide_positivity(&HermMap::negation(1), Route::Kraus, &DecideOptions::default()).unwrap();
        assert_eq!(d.report.verdict, Verdict::No);
        let w = d.report.witness.unwrap();
        assert_eq!(w.len(), 4);
        assert!(d.polynomial.poly().eval(&w).unwrap().is_negative());
    }

    #[test]
    fn identity_map_is_capped() {
        let d = decide_positivity(&HermMap::identity(1), Route::Choi, &DecideOptions::default()).unwrap();
        assert_eq!(d.report.verdict, Verdict::UnknownCapped);
        assert!(d.report.work_log.cap_hit.is_some());
        assert!(!d.report.work_log.enumeration_complete);
    }
}
