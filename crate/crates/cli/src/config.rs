//! Run configuration: a TOML document with monopole data, the quadric
//! modulus, tolerances, sampling controls and the suite selection.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use selfdual::hyperbolic::HyperbolicPoint;
use selfdual::monopole::MonopoleConfig;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "configuration error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Suite {
    ConnectionIdentity,
    Curvature,
    Conformality,
    InvolutionGroup,
    TwistorClassification,
    ResolutionLift,
    EinsteinWeyl,
}

impl Suite {
    pub fn all() -> [Suite; 7] {
        [
            Suite::ConnectionIdentity,
            Suite::Curvature,
            Suite::Conformality,
            Suite::InvolutionGroup,
            Suite::TwistorClassification,
            Suite::ResolutionLift,
            Suite::EinsteinWeyl,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::ConnectionIdentity => "connection-identity",
            Suite::Curvature => "curvature",
            Suite::Conformality => "conformality",
            Suite::InvolutionGroup => "involution-group",
            Suite::TwistorClassification => "twistor-classification",
            Suite::ResolutionLift => "resolution-lift",
            Suite::EinsteinWeyl => "einstein-weyl",
        }
    }

    /// The statement each suite checks, in plain language.
    pub fn statement(&self) -> &'static str {
        match self {
            Suite::ConnectionIdentity => {
                "the explicit connection potential satisfies d(f dθ₃) = *dV; \
                 axis values, transition cocycle and rotation-lift fixed sets"
            }
            Suite::Curvature => {
                "scalar-flatness of the monopole metric and vanishing of one \
                 Weyl half; engine sanity on flat and round metrics; \
                 dual-number vs finite-difference cross-check"
            }
            Suite::Conformality => {
                "lifts of hyperbolic isometries pull the metric back to \
                 ((z∘Φ)/z)²·g; the extra involution for two monopole points \
                 is conformal and squares to the identity"
            }
            Suite::InvolutionGroup => {
                "composition tables: the involution lifts form a Klein \
                 four-group, extended to the order-8 dihedral group by the \
                 extra involution for two monopole points"
            }
            Suite::TwistorClassification => {
                "automorphisms of the quadric pair commuting with the real \
                 structure: span preservation holds exactly on the \
                 16 parameter components and fails off them"
            }
            Suite::ResolutionLift => {
                "divisor-cone permutations, the lifting census (8 of 16 \
                 components lift to the small resolutions), the boundary-order \
                 exclusion of the wrong resolutions, generator identities, \
                 and the dihedral quotient group"
            }
            Suite::EinsteinWeyl => {
                "plane-region admissibility matches the no-real-point search; \
                 parameter involutions and monopole images; the dual action \
                 and its angular shift; the semi-free circle-subgroup census"
            }
        }
    }

    /// Needs the quadric modulus λ.
    pub fn needs_lambda(&self) -> bool {
        matches!(
            self,
            Suite::TwistorClassification | Suite::ResolutionLift | Suite::EinsteinWeyl
        )
    }

    /// Needs a collinear monopole configuration.
    pub fn needs_toric(&self) -> bool {
        matches!(
            self,
            Suite::ConnectionIdentity
                | Suite::Curvature
                | Suite::Conformality
                | Suite::InvolutionGroup
        )
    }
}

impl FromStr for Suite {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::all()
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                ConfigError(format!(
                    "unknown suite '{s}' (expected one of: {})",
                    Suite::all().map(|s| s.name()).join(", ")
                ))
            })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    monopoles: RawMonopoles,
    #[serde(default)]
    twistor: Option<RawTwistor>,
    #[serde(default)]
    tolerances: RawTolerances,
    run: RawRun,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawMonopoles {
    #[serde(default)]
    heights: Option<Vec<f64>>,
    #[serde(default)]
    points: Option<Vec<[f64; 3]>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawTwistor {
    lambda: f64,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
struct RawTolerances {
    tau_geo: f64,
    tol_curv: f64,
    tol_conf: f64,
    tol_span: f64,
}

impl Default for RawTolerances {
    fn default() -> Self {
        RawTolerances {
            tau_geo: 1e-9,
            tol_curv: 1e-7,
            tol_conf: 1e-6,
            tol_span: 1e-9,
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawRun {
    seed: u64,
    #[serde(default = "default_samples")]
    samples: usize,
    #[serde(default)]
    suites: Option<Vec<String>>,
}

fn default_samples() -> usize {
    200
}

/// Validated run configuration.
#[derive(Clone, Debug)]
pub struct Config {
    pub monopoles: MonopoleConfig,
    pub lambda: Option<f64>,
    pub tau_geo: f64,
    pub tol_curv: f64,
    pub tol_conf: f64,
    pub tol_span: f64,
    pub seed: u64,
    pub samples: usize,
    pub suites: Vec<Suite>,
    /// Raw TOML echoed into the report.
    pub echo: toml::Value,
}

impl Config {
    pub fn from_toml_str(text: &str) -> Result<Config, ConfigError> {
        let raw: RawConfig =
            toml::from_str(text).map_err(|e| ConfigError(format!("TOML parse: {e}")))?;
        let echo: toml::Value =
            toml::from_str(text).map_err(|e| ConfigError(format!("TOML parse: {e}")))?;

        let monopoles = match (&raw.monopoles.heights, &raw.monopoles.points) {
            (Some(h), None) => selfdual::monopole::MonopoleConfig::toric(h)
                .map_err(|e| ConfigError(format!("monopoles.heights: {e}")))?,
            (None, Some(pts)) => {
                let points = pts
                    .iter()
                    .map(|&[x, y, z]| HyperbolicPoint::new(x, y, z))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| ConfigError(format!("monopoles.points: {e}")))?;
                MonopoleConfig::from_points(points)
                    .map_err(|e| ConfigError(format!("monopoles.points: {e}")))?
            }
            (Some(_), Some(_)) => {
                return Err(ConfigError(
                    "give either monopoles.heights or monopoles.points, not both".into(),
                ))
            }
            (None, None) => {
                return Err(ConfigError(
                    "missing monopole data (monopoles.heights or monopoles.points)".into(),
                ))
            }
        };

        let t = &raw.tolerances;
        for (name, v) in [
            ("tau_geo", t.tau_geo),
            ("tol_curv", t.tol_curv),
            ("tol_conf", t.tol_conf),
            ("tol_span", t.tol_span),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(ConfigError(format!("tolerances.{name} must be positive")));
            }
        }

        let suites = match &raw.run.suites {
            None => Suite::all().to_vec(),
            Some(names) => names
                .iter()
                .map(|s| s.parse())
                .collect::<Result<Vec<Suite>, _>>()?,
        };
        if suites.is_empty() {
            return Err(ConfigError("run.suites must not be empty".into()));
        }

        if suites.iter().any(Suite::needs_toric) && !monopoles.is_toric() {
            return Err(ConfigError(
                "the selected suites need a collinear configuration \
                 (monopoles.heights); general positions support only the \
                 twistor-side suites"
                    .into(),
            ));
        }

        let lambda = raw.twistor.as_ref().map(|t| t.lambda);
        if suites.iter().any(Suite::needs_lambda) {
            match lambda {
                None => {
                    return Err(ConfigError(
                        "twistor.lambda is required by the selected suites".into(),
                    ))
                }
                Some(l) if !(l > 1.5 && l < 2.0) => {
                    return Err(ConfigError(format!(
                        "twistor.lambda must satisfy 3/2 < λ < 2, got {l}"
                    )))
                }
                _ => {}
            }
        }

        Ok(Config {
            monopoles,
            lambda,
            tau_geo: t.tau_geo,
            tol_curv: t.tol_curv,
            tol_conf: t.tol_conf,
            tol_span: t.tol_span,
            seed: raw.run.seed,
            samples: raw.run.samples,
            suites,
            echo,
        })
    }

    pub fn from_path(path: &std::path::Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        Config::from_toml_str(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = r#"
[monopoles]
heights = [1.0, 2.0]
[twistor]
lambda = 1.75
[run]
seed = 42
"#;

    #[test]
    fn parses_and_defaults() {
        let cfg = Config::from_toml_str(GOOD).unwrap();
        assert_eq!(cfg.suites.len(), 7);
        assert_eq!(cfg.samples, 200);
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.tol_curv, 1e-7);
    }

    #[test]
    fn lambda_range_enforced_when_needed() {
        let bad = GOOD.replace("1.75", "2.5");
        assert!(Config::from_toml_str(&bad).is_err());
        // ... but only when a twistor-side suite is selected
        let ok = format!(
            "{}\n[run.extra]",
            bad.replace(
                "[run]\nseed = 42",
                "[run]\nseed = 42\nsuites = [\"curvature\"]"
            )
        );
        let ok = ok.replace("[run.extra]", "");
        assert!(Config::from_toml_str(&ok).is_ok());
    }

    #[test]
    fn seed_is_mandatory() {
        let no_seed = GOOD.replace("seed = 42", "");
        assert!(Config::from_toml_str(&no_seed).is_err());
    }

    #[test]
    fn bad_tolerance_rejected() {
        let bad = format!("{GOOD}\n[tolerances]\ntol_curv = -1.0\n");
        assert!(Config::from_toml_str(&bad).is_err());
    }

    #[test]
    fn unknown_suite_rejected() {
        let bad = GOOD.replace("seed = 42", "seed = 42\nsuites = [\"bogus\"]");
        assert!(Config::from_toml_str(&bad).is_err());
    }
}
