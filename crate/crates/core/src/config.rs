//! TOML file formats.
//!
//! A DMC file declares the alphabets, the channel table and a list of
//! input laws (explicit tables and/or randomly drawn ones):
//!
//! ```toml
//! seed = 7
//!
//! [alphabets.x_p]
//! symbols = ["0", "1"]
//!
//! [alphabets.t_p1co]
//! symbols = ["0", "1", "phi"]
//! null = "phi"
//!
//! [channel]
//! table = [ ... ]        # rows (x_p, x_c, s), entries (y_p, y_c, v_c), v_c fastest
//!
//! [[laws]]
//! x_p_map = [ ... ]
//! x_c_map = [ ... ]
//! [laws.factors]
//! s = [0.5, 0.5]
//! t_p1co = [ ... ]
//!
//! [random]
//! alphas = [0.25, 0.5]
//! count = 8              # laws per alpha
//! ```
//!
//! A Gaussian file declares the channel, the sweep and the comparison
//! grids:
//!
//! ```toml
//! [channel]
//! p_p = 6.0
//! p_c = 6.0
//! g_pc = 4.0
//! h_pc = 0.55
//! h_cp = 0.55
//!
//! [sweep]
//! points = 8192
//! seed = 1
//! schedule = "random"
//!
//! [compare]
//! noncausal_points = 512
//! ```

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{CompareSpec, GaussianChannel, GaussianScheme, ScheduleMode};
use crate::probability::vars::S;
use crate::probability::{Alphabet, ChannelSpec, HalfDuplexLaw, CHANNEL_INPUTS, CHANNEL_OUTPUTS};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphabetConfig {
    pub symbols: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub null: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub erasure: Option<String>,
}

impl AlphabetConfig {
    pub fn build(&self) -> Result<Alphabet> {
        let mut a = Alphabet::new(&self.symbols)?;
        if let Some(n) = &self.null {
            a = a.with_null(n)?;
        }
        if let Some(e) = &self.erasure {
            a = a.with_erasure(e)?;
        }
        Ok(a)
    }

    pub fn from_alphabet(a: &Alphabet) -> Self {
        Self {
            symbols: a.symbols().to_vec(),
            null: a.null_symbol().map(str::to_string),
            erasure: a.erasure_symbol().map(str::to_string),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelConfig {
    pub table: Vec<f64>,
}

/// One input law: a flattened table per conditional (parents slowest,
/// child fastest) and the two encoder maps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LawConfig {
    pub x_p_map: Vec<usize>,
    pub x_c_map: Vec<usize>,
    pub factors: BTreeMap<String, Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomLaws {
    pub alphas: Vec<f64>,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DmcConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub alphabets: BTreeMap<String, AlphabetConfig>,
    pub channel: ChannelConfig,
    #[serde(default)]
    pub laws: Vec<LawConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub random: Option<RandomLaws>,
}

impl DmcConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// All declared alphabets; the state alphabet defaults to `{l, t}`.
    pub fn alphabets(&self) -> Result<BTreeMap<String, Alphabet>> {
        let mut out = BTreeMap::new();
        for (name, a) in &self.alphabets {
            out.insert(name.clone(), a.build()?);
        }
        out.entry(S.to_string()).or_insert_with(Alphabet::state);
        Ok(out)
    }

    pub fn channel(&self) -> Result<ChannelSpec> {
        let all = self.alphabets()?;
        let mut keep = BTreeMap::new();
        for name in CHANNEL_INPUTS.iter().chain(&CHANNEL_OUTPUTS) {
            let a = all
                .get(*name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            keep.insert(name.to_string(), a.clone());
        }
        ChannelSpec::new(keep, self.channel.table.clone())
    }

    /// The explicit laws, in file order.
    pub fn explicit_laws(&self) -> Result<Vec<HalfDuplexLaw>> {
        let alphabets = self.alphabets()?;
        self.laws
            .iter()
            .map(|l| {
                HalfDuplexLaw::from_tables(
                    alphabets.clone(),
                    &l.factors,
                    l.x_p_map.clone(),
                    l.x_c_map.clone(),
                )
            })
            .collect()
    }

    /// Random laws drawn with `seed`, alpha-major.
    pub fn random_laws(&self, seed: Option<u64>) -> Result<Vec<HalfDuplexLaw>> {
        let Some(spec) = &self.random else {
            return Ok(Vec::new());
        };
        let seed = seed
            .or(self.seed)
            .ok_or_else(|| Error::Config("random laws need a seed".into()))?;
        let alphabets = self.alphabets()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(spec.alphas.len() * spec.count);
        for &alpha in &spec.alphas {
            for _ in 0..spec.count {
                out.push(HalfDuplexLaw::random(alphabets.clone(), alpha, &mut rng)?);
            }
        }
        Ok(out)
    }
}

/// Sweep of the unrestricted Gaussian scheme.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub points: usize,
    pub seed: Option<u64>,
    pub schedule: ScheduleMode,
    pub listen_power_share: Option<f64>,
    /// Extra schemes evaluated after the sampled ones.
    pub schemes: Vec<GaussianScheme>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            points: 1 << 13,
            seed: None,
            schedule: ScheduleMode::Random,
            listen_power_share: None,
            schemes: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianConfig {
    pub channel: GaussianChannel,
    #[serde(default)]
    pub sweep: SweepConfig,
    #[serde(default)]
    pub compare: CompareSpec,
}

impl GaussianConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.channel.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }
}
