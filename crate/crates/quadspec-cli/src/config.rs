//! Plain-text configuration files and compact estimator specs.
//!
//! Config files are INI-like: `[section]` headers, `key = value` lines, `#`
//! comments. The `--estimator` flag accepts a compact one-liner instead,
//! e.g. `welch:l=512,m=32,overlap=0,taper=hamming` or
//! `multitaper:tapers=dpss,k=32,nw=16`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use quadspec::ensemble::{EstimatorSpec, ExperimentConfig, LagSpec, TaperFamily, TaperSpec};
use quadspec::signal::ArModel;

/// Parsed key-value sections of a config file.
#[derive(Debug, Default)]
pub struct FileConfig {
    sections: BTreeMap<String, BTreeMap<String, String>>,
}

impl FileConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut sections: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        let mut current = String::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if line.starts_with('[') {
                if !line.ends_with(']') {
                    bail!("line {}: malformed section header {line:?}", idx + 1);
                }
                current = line[1..line.len() - 1].trim().to_lowercase();
                sections.entry(current.clone()).or_default();
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("line {}: expected key = value, found {line:?}", idx + 1);
            };
            if current.is_empty() {
                bail!("line {}: key {key:?} outside any [section]", idx + 1);
            }
            sections
                .get_mut(&current)
                .expect("section exists")
                .insert(key.trim().to_lowercase(), value.trim().to_string());
        }
        Ok(FileConfig { sections })
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections.get(section)?.get(key).map(|s| s.as_str())
    }

    fn require(&self, section: &str, key: &str) -> Result<&str> {
        self.get(section, key)
            .ok_or_else(|| anyhow!("missing [{section}] {key}"))
    }

    fn parse_value<T: std::str::FromStr>(&self, section: &str, key: &str) -> Result<Option<T>> {
        match self.get(section, key) {
            None => Ok(None),
            Some(s) => s
                .parse()
                .map(Some)
                .map_err(|_| anyhow!("[{section}] {key}: cannot parse {s:?}")),
        }
    }
}

/// Build the AR/white-noise model from the `[process]` section.
pub fn model_from_config(cfg: &FileConfig) -> Result<ArModel<f64>> {
    let sigma: f64 = cfg.parse_value("process", "sigma")?.unwrap_or(1.0);
    let phi: Vec<f64> = match cfg.get("process", "ar") {
        None => Vec::new(),
        Some(s) => s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| anyhow!("[process] ar: cannot parse {tok:?}"))
            })
            .collect::<Result<_>>()?,
    };
    Ok(ArModel::new(phi, sigma)?)
}

/// Build the estimator from the `[estimator]` section.
pub fn estimator_from_config(cfg: &FileConfig) -> Result<EstimatorSpec<f64>> {
    let family = cfg.require("estimator", "family")?.to_lowercase();
    let taper = match cfg.get("estimator", "taper").unwrap_or("rect") {
        "rect" | "rectangular" => TaperSpec::Rectangular,
        "hamming" => TaperSpec::Hamming,
        other => bail!("unknown taper {other:?} (expected rect or hamming)"),
    };
    let spec = match family.as_str() {
        "periodogram" => EstimatorSpec::Periodogram { taper },
        "lag_window" | "lag-window" | "lagwindow" => {
            let window = cfg.require("estimator", "window")?.to_lowercase();
            let window = match window.as_str() {
                "daniell" | "modified_daniell" => LagSpec::ModifiedDaniell {
                    m: cfg
                        .parse_value("estimator", "m")?
                        .ok_or_else(|| anyhow!("modified Daniell needs [estimator] m"))?,
                },
                "bartlett" => LagSpec::Bartlett {
                    width: cfg
                        .parse_value("estimator", "width")?
                        .ok_or_else(|| anyhow!("bartlett needs [estimator] width"))?,
                },
                "flat_top" | "flattop" => LagSpec::FlatTop {
                    a: cfg
                        .parse_value("estimator", "a")?
                        .ok_or_else(|| anyhow!("flat_top needs [estimator] a"))?,
                    c: cfg.parse_value("estimator", "c")?.unwrap_or(2.0),
                },
                other => bail!("unknown lag window {other:?}"),
            };
            EstimatorSpec::LagWindow { window, taper }
        }
        "multitaper" => {
            let k = cfg
                .parse_value("estimator", "k")?
                .ok_or_else(|| anyhow!("multitaper needs [estimator] k"))?;
            let tapers = cfg.get("estimator", "tapers").unwrap_or("sine");
            let family = match tapers {
                "sine" | "sinusoidal" => TaperFamily::Sinusoidal,
                "dpss" | "slepian" => {
                    let nw: f64 = cfg
                        .parse_value("estimator", "nw")?
                        .ok_or_else(|| anyhow!("dpss needs [estimator] nw"))?;
                    if (k as f64) > 2.0 * nw {
                        eprintln!(
                            "warning: K = {k} exceeds 2 NW = {}; trailing Slepians \
                             concentrate poorly",
                            2.0 * nw
                        );
                    }
                    TaperFamily::Dpss { time_bandwidth: nw }
                }
                other => bail!("unknown taper family {other:?}"),
            };
            EstimatorSpec::Multitaper { family, k }
        }
        "welch" => EstimatorSpec::Welch {
            segment_len: cfg
                .parse_value("estimator", "segment")?
                .ok_or_else(|| anyhow!("welch needs [estimator] segment"))?,
            segment_count: cfg
                .parse_value("estimator", "segments")?
                .ok_or_else(|| anyhow!("welch needs [estimator] segments"))?,
            overlap: cfg.parse_value("estimator", "overlap")?.unwrap_or(0.0),
            taper,
        },
        other => bail!("unknown estimator family {other:?}"),
    };
    Ok(spec)
}

/// Parse the compact `--estimator` syntax.
pub fn estimator_from_compact(spec: &str) -> Result<EstimatorSpec<f64>> {
    let (family, rest) = match spec.split_once(':') {
        Some((f, r)) => (f.trim().to_lowercase(), r),
        None => (spec.trim().to_lowercase(), ""),
    };
    let mut kv = BTreeMap::new();
    for part in rest.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("expected key=value, found {part:?}"))?;
        kv.insert(k.trim().to_lowercase(), v.trim().to_string());
    }
    let mut text = format!("[estimator]\nfamily = {family}\n");
    for (k, v) in &kv {
        // compact aliases: l -> segment, m -> segments for welch
        let key = match (family.as_str(), k.as_str()) {
            ("welch", "l") => "segment",
            ("welch", "m") => "segments",
            _ => k.as_str(),
        };
        text.push_str(&format!("{key} = {v}\n"));
    }
    estimator_from_config(&FileConfig::parse(&text)?)
}

/// Assemble the full experiment configuration from a config file, applying
/// command-line overrides afterwards.
pub fn experiment_from_config(cfg: &FileConfig) -> Result<ExperimentConfig<f64>> {
    let model = model_from_config(cfg)?;
    let n: usize = cfg
        .parse_value("experiment", "n")?
        .ok_or_else(|| anyhow!("missing [experiment] n"))?;
    let estimator = estimator_from_config(cfg)?;
    let mut config = ExperimentConfig::new(model, n, estimator);
    if let Some(members) = cfg.parse_value("experiment", "ensemble")? {
        config.members = members;
    }
    if let Some(seed) = cfg.parse_value("experiment", "seed")? {
        config.seed = seed;
    }
    if let Some(burn_in) = cfg.parse_value("experiment", "burn_in")? {
        config.burn_in = Some(burn_in);
    }
    if let Some(p) = cfg.parse_value("debias", "p")? {
        config.basis_order = p;
    }
    if let Some(s) = cfg.parse_value("debias", "s")? {
        config.basis_count = Some(s);
    }
    if let Some(clip) = cfg.parse_value("debias", "clip_negative")? {
        config.clip_negative = clip;
    }
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sections_and_comments() {
        let cfg = FileConfig::parse(
            "# experiment\n[process]\nar = 0.5 -0.2\nsigma = 2.0\n\n[experiment]\nn = 64 # inline\n",
        )
        .unwrap();
        assert_eq!(cfg.get("process", "sigma"), Some("2.0"));
        assert_eq!(cfg.get("experiment", "n"), Some("64"));
        let model = model_from_config(&cfg).unwrap();
        assert_eq!(model.order(), 2);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(FileConfig::parse("[process\n").is_err());
        assert!(FileConfig::parse("key = 1\n").is_err());
        assert!(FileConfig::parse("[a]\njust a line\n").is_err());
    }

    #[test]
    fn compact_estimators_parse() {
        let spec = estimator_from_compact("welch:l=512,m=8,overlap=0,taper=rect").unwrap();
        match spec {
            EstimatorSpec::Welch {
                segment_len,
                segment_count,
                ..
            } => {
                assert_eq!(segment_len, 512);
                assert_eq!(segment_count, 8);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(estimator_from_compact("multitaper:tapers=sine,k=8").is_ok());
        assert!(estimator_from_compact("lag_window:window=daniell,m=16").is_ok());
        assert!(estimator_from_compact("periodogram:taper=hamming").is_ok());
        assert!(estimator_from_compact("nonsense").is_err());
    }
}
