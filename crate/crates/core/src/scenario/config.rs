use std::collections::BTreeMap;
use std::path::PathBuf;

use super::{fig1_defaults, EnvelopeKind, Mode, OutputFormat, Scenario};
use crate::error::{Error, Result};
use crate::spm::PhaseConvention;
use crate::xpm::FIG1_PSI0;

/// Recognised keys, in the order `--dump-config` writes them.
pub const KEYS: [&str; 20] = [
    "mode",
    "format",
    "out",
    "tau-r",
    "envelope",
    "tau-p",
    "t",
    "psi0",
    "gamma",
    "gamma-x",
    "ratio",
    "omega-min",
    "omega-max",
    "omega-count",
    "phase-convention",
    "bins",
    "cutoff",
    "bin-width",
    "alpha",
    "alpha-phase",
];

/// Raw `key = value` pairs; later sources override earlier ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    /// Parses the flat config text: one `key = value` per line, `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut s = Settings::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", no + 1)))?;
            let key = key.trim();
            if s.values.contains_key(key) {
                return Err(Error::Config(format!(
                    "line {}: duplicate key `{key}`",
                    no + 1
                )));
            }
            s.set(key, value.trim())
                .map_err(|e| Error::Config(format!("line {}: {e}", no + 1)))?;
        }
        Ok(s)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        if !KEYS.contains(&key) {
            return Err(Error::Config(format!("unknown key `{key}`")));
        }
        self.values.insert(key.to_string(), value.to_string());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn overlay(&mut self, other: &Settings) {
        for (k, v) in &other.values {
            self.values.insert(k.clone(), v.clone());
        }
    }

    fn float(&self, key: &str, default: f64) -> Result<f64> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| Error::Config(format!("`{key}` expects a number, got `{v}`"))),
        }
    }

    fn count(&self, key: &str, default: usize) -> Result<usize> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| {
                Error::Config(format!("`{key}` expects a non-negative integer, got `{v}`"))
            }),
        }
    }

    fn list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        self.get(key)
            .map(|v| {
                v.split(',')
                    .map(|x| {
                        x.trim().parse().map_err(|_| {
                            Error::Config(format!(
                                "`{key}` expects comma-separated numbers, got `{v}`"
                            ))
                        })
                    })
                    .collect()
            })
            .transpose()
    }

    /// Applies mode-dependent defaults and the figure preset, then validates.
    pub fn resolve(&self) -> Result<Scenario> {
        let d = Scenario::default();
        let mode_str = self.get("mode").ok_or_else(|| {
            Error::Config("no mode given (use a positional mode or --mode)".into())
        })?;
        let mode = Mode::parse(mode_str).ok_or_else(|| {
            Error::Config(format!(
                "unknown mode `{mode_str}` (expected spm-spectrum, xpm-spectrum, fig1, optimize-phase or verify-operators)"
            ))
        })?;
        let format = match self.get("format") {
            None if mode == Mode::VerifyOperators => OutputFormat::Json,
            None | Some("csv") => OutputFormat::Csv,
            Some("json") => OutputFormat::Json,
            Some(other) => {
                return Err(Error::Config(format!(
                    "unknown format `{other}` (csv or json)"
                )))
            }
        };
        let out = match self.get("out") {
            None | Some("-") => None,
            Some(p) => Some(PathBuf::from(p)),
        };
        let envelope = match self.get("envelope").unwrap_or("gaussian") {
            "gaussian" => EnvelopeKind::Gaussian,
            "sech" => EnvelopeKind::Sech,
            "rectangular" => EnvelopeKind::Rectangular,
            "cw" => EnvelopeKind::Cw,
            other => {
                return Err(Error::Config(format!(
                    "unknown envelope `{other}` (gaussian, sech, rectangular or cw)"
                )))
            }
        };
        let phase_convention = match self.get("phase-convention").unwrap_or("per-omega") {
            "per-omega" => PhaseConvention::PerOmega,
            "fixed0" => PhaseConvention::Fixed0,
            other => {
                return Err(Error::Config(format!(
                    "unknown phase convention `{other}` (per-omega or fixed0)"
                )))
            }
        };

        let gamma = self.float("gamma", d.gamma)?;
        let mut psi0 = self.float("psi0", d.psi0)?;
        let mut gamma_x = self.float("gamma-x", d.gamma_x)?;
        let ratios = match (self.list("ratio")?, mode) {
            (Some(r), _) => r,
            (None, Mode::Fig1) => fig1_defaults(),
            (None, _) => d.ratios.clone(),
        };

        let mut conflicts = Vec::new();
        if mode == Mode::Fig1 {
            // fixed preset: ψ₁(0) = 2, γ₁ = γ₂ = 2γ̃
            if self.get("psi0").is_some() && psi0 != FIG1_PSI0 {
                conflicts.push(format!("fig1 fixes psi0 = {FIG1_PSI0} (got {psi0})"));
            }
            if self.get("gamma-x").is_some() && gamma_x != gamma / 2.0 {
                conflicts.push(format!(
                    "fig1 fixes gamma-x = gamma/2 = {} (got {gamma_x})",
                    gamma / 2.0
                ));
            }
            psi0 = FIG1_PSI0;
            gamma_x = gamma / 2.0;
        }
        if mode == Mode::SpmSpectrum
            && self.get("ratio").is_some()
            && ratios.iter().any(|&r| r != 0.0)
        {
            conflicts.push("spm-spectrum has no pump; drop `ratio` or use xpm-spectrum".into());
        }
        if !conflicts.is_empty() {
            return Err(Error::Validation(conflicts));
        }

        let scenario = Scenario {
            mode,
            format,
            out,
            tau_r: self.float("tau-r", d.tau_r)?,
            envelope,
            tau_p: self.float("tau-p", d.tau_p)?,
            t: self.float("t", d.t)?,
            psi0,
            gamma,
            gamma_x,
            ratios,
            omega_min: self.float("omega-min", d.omega_min)?,
            omega_max: self.float("omega-max", d.omega_max)?,
            omega_count: self.count("omega-count", d.omega_count)?,
            phase_convention,
            bins: self.count("bins", d.bins)?,
            cutoff: self.count("cutoff", d.cutoff)?,
            bin_width: self.float("bin-width", d.bin_width)?,
            alpha: self.float("alpha", d.alpha)?,
            alpha_phase: self.float("alpha-phase", d.alpha_phase)?,
        };
        scenario.validate()?;
        Ok(scenario)
    }
}

impl Scenario {
    /// Config text that resolves back to this scenario.
    pub fn to_config_string(&self) -> String {
        let ratios: Vec<String> = self.ratios.iter().map(|r| r.to_string()).collect();
        let values: [String; 20] = [
            self.mode.name().into(),
            match self.format {
                OutputFormat::Csv => "csv".into(),
                OutputFormat::Json => "json".into(),
            },
            self.out
                .as_ref()
                .map_or("-".into(), |p| p.display().to_string()),
            self.tau_r.to_string(),
            self.envelope.name().into(),
            self.tau_p.to_string(),
            self.t.to_string(),
            self.psi0.to_string(),
            self.gamma.to_string(),
            self.gamma_x.to_string(),
            ratios.join(","),
            self.omega_min.to_string(),
            self.omega_max.to_string(),
            self.omega_count.to_string(),
            self.phase_convention.label().into(),
            self.bins.to_string(),
            self.cutoff.to_string(),
            self.bin_width.to_string(),
            self.alpha.to_string(),
            self.alpha_phase.to_string(),
        ];
        let mut out = String::from("# kerr-squeeze scenario\n");
        for (k, v) in KEYS.iter().zip(values) {
            out.push_str(&format!("{k} = {v}\n"));
        }
        out
    }
}
