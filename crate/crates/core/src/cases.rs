//! Canonical parameter instances for each classification case; used by the
//! acceptance suite and reachable from the CLI as `--case` presets.

use crate::coupling::{degenerate_case_params, CaseLabel, ExtendedT};
use crate::error::{Error, Result};
use crate::params::{make_params, HSParams};

/// A worked instance of a case: parameters plus the minimizer its trial
/// family perturbs.
pub fn canonical_instance(label: CaseLabel) -> Result<(HSParams, ExtendedT)> {
    match label {
        CaseLabel::I => Ok((
            make_params(3, 1.0, 2.0, 2.0, 1.0, 1.0, 1.0)?,
            ExtendedT::Finite(1.0),
        )),
        CaseLabel::II1 => {
            let (alpha, beta, kappa) = (1.4, 1.6, 1.0);
            let (lambda, mu, t0) = degenerate_case_params(3, 1.5, alpha, beta, kappa)?;
            Ok((
                make_params(3, 1.5, alpha, beta, lambda, mu, kappa)?,
                ExtendedT::Finite(t0),
            ))
        }
        CaseLabel::II2 => Ok((
            make_params(3, 1.0, 2.0, 2.0, 2.0, 1.0, 1.0)?,
            ExtendedT::Finite(0.0),
        )),
        CaseLabel::II3 => Ok((
            make_params(3, 1.0, 2.0, 2.0, 1.0, 2.0, 1.0)?,
            ExtendedT::Infinity,
        )),
        // needs p > 4, hence s < 1 at N = 3; the degenerate endpoint is 0
        CaseLabel::II4 => Ok((
            make_params(3, 0.5, 3.0, 2.0, 2.0, 2.0, 1.0)?,
            ExtendedT::Finite(0.0),
        )),
        CaseLabel::ConstantG => Ok((
            make_params(3, 1.0, 2.0, 2.0, 2.0, 2.0, 1.0)?,
            ExtendedT::Finite(1.0),
        )),
        CaseLabel::KappaNonpositive => Err(Error::domain(
            "case",
            "no canonical instance: any kappa <= 0 tuple qualifies",
        )),
    }
}

pub fn parse_case_label(s: &str) -> Option<CaseLabel> {
    Some(match s {
        "I" => CaseLabel::I,
        "II.1" => CaseLabel::II1,
        "II.2" => CaseLabel::II2,
        "II.3" => CaseLabel::II3,
        "II.4" => CaseLabel::II4,
        "CONSTANT_G" => CaseLabel::ConstantG,
        "KAPPA_NONPOSITIVE" => CaseLabel::KappaNonpositive,
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::classify;

    #[test]
    fn every_instance_classifies_to_its_label() {
        for label in [
            CaseLabel::I,
            CaseLabel::II1,
            CaseLabel::II2,
            CaseLabel::II3,
            CaseLabel::II4,
            CaseLabel::ConstantG,
        ] {
            let (params, _) = canonical_instance(label).unwrap();
            let c = classify(&params).unwrap();
            assert_eq!(c.case, label);
        }
        assert!(canonical_instance(CaseLabel::KappaNonpositive).is_err());
    }

    #[test]
    fn labels_parse_back() {
        for label in [CaseLabel::I, CaseLabel::II1, CaseLabel::II4, CaseLabel::ConstantG] {
            assert_eq!(parse_case_label(label.as_str()), Some(label));
        }
        assert_eq!(parse_case_label("II.9"), None);
    }
}
