//! Output conventions shared by every subcommand: the run manifest, the JSON
//! envelope and text-mode number formatting.

use std::collections::BTreeMap;

use serde::Serialize;
use ucoef::Complex64;

/// Version of the JSON layouts documented in the README.
pub const SCHEMA_VERSION: u32 = 1;
/// Significant digits in text mode.
pub const TEXT_DIGITS: usize = 12;

/// Identifies a run well enough to reproduce its output byte-for-byte.
/// Execution details that do not affect results (thread count, output path)
/// are left out.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: u64,
    pub tool_version: String,
}

impl RunManifest {
    pub fn new(command: &str, seed: u64) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    /// One-line JSON rendering used in text and CSV headers.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("manifest serializes")
    }

    pub fn text_header(&self) -> String {
        format!("# manifest: {}\n", self.to_json_line())
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    manifest: &'a RunManifest,
    #[serde(flatten)]
    payload: &'a T,
}

/// Pretty JSON with `schema_version` and `manifest` ahead of the payload fields.
pub fn json_document<T: Serialize>(manifest: &RunManifest, payload: &T) -> String {
    let doc = Envelope {
        schema_version: SCHEMA_VERSION,
        manifest,
        payload,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("payload serializes");
    s.push('\n');
    s
}

/// `x` rounded to [`TEXT_DIGITS`] significant digits, in plain decimal when
/// the magnitude allows and scientific notation otherwise.
pub fn sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (TEXT_DIGITS as i32 - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.prec$e}", prec = TEXT_DIGITS - 1)
    }
}

pub fn sig_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        sig(z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", sig(z.re), sig(-z.im))
    } else {
        format!("{}+{}i", sig(z.re), sig(z.im))
    }
}

/// `[re, im]` pairs for JSON.
pub fn complex_pairs(zs: &[Complex64]) -> Vec<[f64; 2]> {
    zs.iter().map(|z| [z.re, z.im]).collect()
}

/// Parses `1`, `-0.5`, `0.3+0.4i`, `2i`, `-i` and similar.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let s = s.trim();
    let bad = || format!("cannot parse '{s}' as a complex number");
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (body[..i].parse::<f64>().map_err(|_| bad())?, &body[i..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}
