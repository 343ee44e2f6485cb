//! Command implementations behind the `tfan` binary, exposed as library
//! functions so tests and tools can drive them on in-memory documents.

use crate::acover::{self, ACoverError};
use crate::divfan::DivisorialFan;
use crate::format::{self, ParseError};
use crate::report::{Finding, Report};

fn parse_fan_or_error(command: &str, text: &str) -> Result<DivisorialFan, Report> {
    format::parse_fan_document(text)
        .map_err(|e| Report::input_error(command, vec![e.to_finding()]))
}

fn closed(command: &str, fan: DivisorialFan, close: bool) -> Result<DivisorialFan, Report> {
    if !close {
        return Ok(fan);
    }
    fan.close_under_intersections().map_err(|e| {
        Report::input_error(
            command,
            vec![Finding::new("close-intersections", "fan", e.to_string())],
        )
    })
}

fn compatibility_findings(fan: &DivisorialFan) -> Vec<Finding> {
    let mut findings = fan.check_properness();
    findings.extend(fan.check_slice_rule());
    findings.extend(fan.check_degree_rule());
    if let Err(f) = fan.tail_fan() {
        findings.extend(f);
    }
    findings
}

/// Properness, slice rule, degree rule; exit 0 pass / 1 fail / 2 parse error.
pub fn cmd_validate(text: &str, close_intersections: bool) -> Report {
    let fan = match parse_fan_or_error("validate", text) {
        Ok(f) => f,
        Err(r) => return r,
    };
    let fan = match closed("validate", fan, close_intersections) {
        Ok(f) => f,
        Err(r) => return r,
    };
    Report::from_findings("validate", compatibility_findings(&fan))
}

/// Fan-level smoothness. Inputs failing the compatibility rules are input
/// errors, not smoothness failures.
pub fn cmd_smooth(text: &str, close_intersections: bool) -> Report {
    let fan = match parse_fan_or_error("smooth", text) {
        Ok(f) => f,
        Err(r) => return r,
    };
    let fan = match closed("smooth", fan, close_intersections) {
        Ok(f) => f,
        Err(r) => return r,
    };
    let pre = compatibility_findings(&fan);
    if !pre.is_empty() {
        return Report::input_error("smooth", pre);
    }
    Report::from_findings("smooth", fan.check_smoothness())
}

/// Builds the affine-space cover and emits its certificate.
pub fn cmd_acover(text: &str, close_intersections: bool) -> Report {
    let fan = match parse_fan_or_error("acover", text) {
        Ok(f) => f,
        Err(r) => return r,
    };
    let fan = match closed("acover", fan, close_intersections) {
        Ok(f) => f,
        Err(r) => return r,
    };
    match acover::build_acover(&fan) {
        Ok(cover) => {
            let certificate = format::cover_to_json(&cover);
            if cover.coverage_ok && cover.markings_ok {
                Report::pass("acover").with_certificate(certificate)
            } else {
                let findings = acover::verify_acover(&fan, &cover.charts);
                Report::from_findings("acover", findings).with_certificate(certificate)
            }
        }
        Err(ACoverError::Preconditions(findings)) => Report::input_error("acover", findings),
        Err(e) => Report::input_error(
            "acover",
            vec![Finding::new("acover", "construction", e.to_string())],
        ),
    }
}

/// Downgrades a complete toric fan to its divisorial fan document.
/// `project` selects the height coordinate (default: the last one).
pub fn cmd_downgrade(text: &str, project: Option<usize>) -> Result<String, Report> {
    let toric = format::parse_toric_document(text)
        .map_err(|e: ParseError| Report::input_error("downgrade", vec![e.to_finding()]))?;
    let toric = match project {
        None => toric,
        Some(coord) => {
            if coord >= toric.rank() {
                return Err(Report::input_error(
                    "downgrade",
                    vec![Finding::new(
                        "projection",
                        "--project",
                        format!(
                            "coordinate {coord} out of range for rank {}",
                            toric.rank()
                        ),
                    )],
                ));
            }
            toric.with_height_coordinate(coord)
        }
    };
    match toric.downgrade() {
        Ok(fan) => Ok(format::fan_to_string(&fan)),
        Err(e) => Err(Report::input_error(
            "downgrade",
            vec![Finding::new("completeness", "fan", e.to_string())],
        )),
    }
}

/// Re-validates an externally supplied cover against a fan.
pub fn cmd_verify_acover(fan_text: &str, charts_text: &str) -> Report {
    let fan = match parse_fan_or_error("verify-acover", fan_text) {
        Ok(f) => f,
        Err(r) => return r,
    };
    let (charts, mut findings) = match format::parse_charts_document(charts_text) {
        Ok(x) => x,
        Err(e) => return Report::input_error("verify-acover", vec![e.to_finding()]),
    };
    findings.extend(acover::verify_acover(&fan, &charts));
    Report::from_findings("verify-acover", findings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::toric_to_string;
    use crate::report::Status;
    use crate::toric;

    fn f1_fan_text() -> String {
        let fan = toric::hirzebruch_fan(1).downgrade().unwrap();
        crate::format::fan_to_string(&fan)
    }

    #[test]
    fn validate_passes_hirzebruch() {
        let report = cmd_validate(&f1_fan_text(), false);
        assert_eq!(report.status, Status::Pass);
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn validate_fails_trivial_divisor() {
        let text = r#"{
            "format": "tfan-fan", "version": 1, "rank": 1,
            "members": [{"tail": [[1]], "coefficients": {}}]
        }"#;
        let report = cmd_validate(text, false);
        assert_eq!(report.status, Status::Fail);
        assert_eq!(report.exit_code(), 1);
        assert!(report.findings.iter().any(|f| f.rule == "properness"));
    }

    #[test]
    fn validate_rejects_malformed_input() {
        let report = cmd_validate("{\"format\": \"tfan-fan\"", false);
        assert_eq!(report.status, Status::Error);
        assert_eq!(report.exit_code(), 2);
        let report = cmd_validate(
            r#"{"format": "tfan-fan", "version": 1, "rank": 1,
                "members": [{"tail": [[1]], "coefficients": {"0": {"vertices": "x"}}}]}"#,
            false,
        );
        assert_eq!(report.exit_code(), 2);
        assert_eq!(report.findings[0].rule, "parse");
    }

    #[test]
    fn smooth_command() {
        assert_eq!(cmd_smooth(&f1_fan_text(), false).status, Status::Pass);
        let singular = toric::fan_from_ray_cycle(&[&[1, 0], &[0, 1], &[-1, -2]])
            .downgrade()
            .unwrap();
        let report = cmd_smooth(&crate::format::fan_to_string(&singular), false);
        assert_eq!(report.status, Status::Fail);
        // Improper input is an input error for the smoothness question.
        let trivial = r#"{
            "format": "tfan-fan", "version": 1, "rank": 1,
            "members": [{"tail": [[1]], "coefficients": {}}]
        }"#;
        assert_eq!(cmd_smooth(trivial, false).status, Status::Error);
    }

    #[test]
    fn acover_command_round_trips_through_verify() {
        let report = cmd_acover(&f1_fan_text(), false);
        assert_eq!(report.status, Status::Pass);
        let charts_text = report.to_pretty_string();
        let verify = cmd_verify_acover(&f1_fan_text(), &charts_text);
        assert_eq!(verify.status, Status::Pass);
    }

    #[test]
    fn downgrade_command() {
        let toric_text = toric_to_string(&toric::hirzebruch_fan(1));
        let fan_text = cmd_downgrade(&toric_text, None).unwrap();
        assert_eq!(cmd_validate(&fan_text, false).status, Status::Pass);

        let incomplete = r#"{
            "format": "tfan-toric", "version": 1, "rank": 2,
            "maximal_cones": [[[1,0],[0,1]]]
        }"#;
        let err = cmd_downgrade(incomplete, None).unwrap_err();
        assert_eq!(err.status, Status::Error);
    }

    #[test]
    fn verify_detects_tampering() {
        let report = cmd_acover(&f1_fan_text(), false);
        let text = report.to_pretty_string();
        // Double one certificate ray in the serialized document.
        let tampered = text.replacen("[\n              -1,\n              1\n            ]", "[\n              -2,\n              2\n            ]", 1);
        assert_ne!(tampered, text);
        let verify = cmd_verify_acover(&f1_fan_text(), &tampered);
        assert_eq!(verify.status, Status::Fail);
    }
}
