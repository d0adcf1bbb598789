use serde::Serialize;

use super::{OutputFormat, PhaseRow};
use crate::fock::CheckRecord;
use crate::spm::SpectrumCurve;

/// Something [`render`] can write.
pub enum Artifact<'a> {
    Curves(&'a [SpectrumCurve]),
    Phases(&'a [PhaseRow]),
    Report(&'a [CheckRecord]),
}

/// Nine significant digits in scientific notation.
pub fn format_sig9(x: f64) -> String {
    format!("{x:.8e}")
}

fn round9(x: f64) -> f64 {
    format_sig9(x).parse().unwrap_or(x)
}

#[derive(Serialize)]
struct CurveRow<'a> {
    omega: f64,
    #[serde(rename = "S")]
    s: f64,
    #[serde(rename = "fourS")]
    four_s: f64,
    ratio: f64,
    phase_convention: &'a str,
}

#[derive(Serialize)]
struct PhaseJson {
    omega: f64,
    phi_opt: f64,
    #[serde(rename = "S_min")]
    s_min: f64,
    phi_oracle: f64,
    #[serde(rename = "S_oracle")]
    s_oracle: f64,
    ratio: f64,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data");
    s.push('\n');
    s
}

/// Renders with fixed column order and LF line endings.
pub fn render(artifact: &Artifact<'_>, format: OutputFormat) -> String {
    match (artifact, format) {
        (Artifact::Curves(curves), OutputFormat::Csv) => {
            let mut out = String::from("omega,S,fourS,ratio,phase_convention\n");
            for c in curves.iter() {
                for (&om, &s) in c.omegas.iter().zip(&c.values) {
                    out.push_str(&format!(
                        "{},{},{},{},{}\n",
                        format_sig9(om),
                        format_sig9(s),
                        format_sig9(4.0 * s),
                        format_sig9(c.ratio),
                        c.phase_convention.label()
                    ));
                }
            }
            out
        }
        (Artifact::Curves(curves), OutputFormat::Json) => {
            let rows: Vec<CurveRow<'_>> = curves
                .iter()
                .flat_map(|c| {
                    c.omegas
                        .iter()
                        .zip(&c.values)
                        .map(move |(&om, &s)| CurveRow {
                            omega: round9(om),
                            s: round9(s),
                            four_s: round9(4.0 * s),
                            ratio: round9(c.ratio),
                            phase_convention: c.phase_convention.label(),
                        })
                })
                .collect();
            json(&rows)
        }
        (Artifact::Phases(rows), OutputFormat::Csv) => {
            let mut out = String::from("omega,phi_opt,S_min,phi_oracle,S_oracle,ratio\n");
            for r in rows.iter() {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    format_sig9(r.omega),
                    format_sig9(r.phi_opt),
                    format_sig9(r.s_min),
                    format_sig9(r.phi_oracle),
                    format_sig9(r.s_oracle),
                    format_sig9(r.ratio)
                ));
            }
            out
        }
        (Artifact::Phases(rows), OutputFormat::Json) => {
            let rows: Vec<PhaseJson> = rows
                .iter()
                .map(|r| PhaseJson {
                    omega: round9(r.omega),
                    phi_opt: round9(r.phi_opt),
                    s_min: round9(r.s_min),
                    phi_oracle: round9(r.phi_oracle),
                    s_oracle: round9(r.s_oracle),
                    ratio: round9(r.ratio),
                })
                .collect();
            json(&rows)
        }
        (Artifact::Report(report), OutputFormat::Json) => {
            let rows: Vec<CheckRecord> = report
                .iter()
                .map(|r| CheckRecord {
                    deviation: round9(r.deviation),
                    contract: round9(r.contract),
                    ..r.clone()
                })
                .collect();
            json(&rows)
        }
        (Artifact::Report(report), OutputFormat::Csv) => {
            let mut out = String::from("check,deviation,contract,pass\n");
            for r in report.iter() {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    r.check,
                    format_sig9(r.deviation),
                    format_sig9(r.contract),
                    r.pass
                ));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spm::PhaseConvention;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(format_sig9(0.25), "2.50000000e-1");
        assert_eq!(format_sig9(0.013_932_022_500_210_3), "1.39320225e-2");
        assert_eq!(format_sig9(0.0), "0.00000000e0");
    }

    #[test]
    fn curve_csv_layout() {
        let c = SpectrumCurve {
            omegas: vec![0.0, 1.0],
            values: vec![0.25, 0.125],
            phase_convention: PhaseConvention::Fixed0,
            t_eval: 0.0,
            ratio: 3.0,
        };
        let text = render(
            &Artifact::Curves(std::slice::from_ref(&c)),
            OutputFormat::Csv,
        );
        assert_eq!(
            text,
            "omega,S,fourS,ratio,phase_convention\n\
             0.00000000e0,2.50000000e-1,1.00000000e0,3.00000000e0,fixed0\n\
             1.00000000e0,1.25000000e-1,5.00000000e-1,3.00000000e0,fixed0\n"
        );
        let j: serde_json::Value = serde_json::from_str(&render(
            &Artifact::Curves(std::slice::from_ref(&c)),
            OutputFormat::Json,
        ))
        .unwrap();
        assert_eq!(j[1]["S"], 0.125);
        assert_eq!(j[0]["phase_convention"], "fixed0");
    }

    #[test]
    fn report_json_schema() {
        let r = vec![CheckRecord::new("commutator", 1.234_567_891_23e-15, 1e-12)];
        let j: serde_json::Value =
            serde_json::from_str(&render(&Artifact::Report(&r), OutputFormat::Json)).unwrap();
        let obj = j[0].as_object().unwrap();
        let mut keys: Vec<&String> = obj.keys().collect();
        keys.sort();
        assert_eq!(keys, ["check", "contract", "deviation", "pass"]);
        assert_eq!(obj["deviation"], 1.23456789e-15);
        assert_eq!(obj["pass"], true);
    }
}
