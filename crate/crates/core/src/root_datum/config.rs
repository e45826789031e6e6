use std::path::Path;

use serde::Deserialize;

use super::{Preset, RootDatum};
use crate::error::{Error, Result};

/// A group description read from a TOML key-value file.
///
/// Either `preset`, or a `cartan` matrix with a `lattice` choice
/// (`"simply-connected"` puts coordinates on simple coroots, `"adjoint"` on
/// fundamental coweights), or explicit `simple_roots` and `simple_coroots`
/// on a lattice of the given `rank`.
///
/// ```toml
/// name = "B2-adjoint"
/// cartan = [[2, -2], [-1, 2]]
/// lattice = "adjoint"
/// ```
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumConfig {
    pub name: Option<String>,
    pub preset: Option<String>,
    pub rank: Option<usize>,
    pub cartan: Option<Vec<Vec<i64>>>,
    pub lattice: Option<String>,
    pub simple_roots: Option<Vec<Vec<i64>>>,
    pub simple_coroots: Option<Vec<Vec<i64>>>,
    pub fundamental_coweights: Option<Vec<Vec<i64>>>,
    pub omega_generator: Option<Vec<i64>>,
}

impl DatumConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn build(&self) -> Result<RootDatum> {
        if let Some(p) = &self.preset {
            let explicit = self.cartan.is_some() || self.simple_roots.is_some() || self.simple_coroots.is_some();
            if explicit {
                return Err(Error::Config("'preset' cannot be combined with explicit root data".into()));
            }
            return RootDatum::preset(p.parse::<Preset>()?);
        }
        let name = self.name.clone().unwrap_or_else(|| "custom".to_string());
        match (&self.cartan, &self.simple_roots, &self.simple_coroots) {
            (Some(a), None, None) => {
                let l = a.len();
                if a.iter().any(|row| row.len() != l) {
                    return Err(Error::Config("Cartan matrix must be square".into()));
                }
                if let Some(r) = self.rank {
                    if r != l {
                        return Err(Error::Config(format!("rank {r} does not match Cartan size {l}")));
                    }
                }
                let unit = |i: usize| (0..l).map(|j| i64::from(i == j)).collect::<Vec<i64>>();
                match self.lattice.as_deref().unwrap_or("simply-connected") {
                    "simply-connected" | "sc" => RootDatum::from_simple_data(
                        &name,
                        l,
                        a.clone(),
                        (0..l).map(unit).collect(),
                        self.fundamental_coweights.clone(),
                        self.omega_generator.clone(),
                    ),
                    "adjoint" | "ad" => RootDatum::from_simple_data(
                        &name,
                        l,
                        (0..l).map(unit).collect(),
                        (0..l).map(|j| (0..l).map(|i| a[i][j]).collect()).collect(),
                        Some(self.fundamental_coweights.clone().unwrap_or_else(|| (0..l).map(unit).collect())),
                        self.omega_generator.clone(),
                    ),
                    other => Err(Error::Config(format!("unknown lattice '{other}'"))),
                }
            }
            (None, Some(roots), Some(coroots)) => {
                let rank = self
                    .rank
                    .ok_or_else(|| Error::Config("explicit root data requires 'rank'".into()))?;
                RootDatum::from_simple_data(
                    &name,
                    rank,
                    roots.clone(),
                    coroots.clone(),
                    self.fundamental_coweights.clone(),
                    self.omega_generator.clone(),
                )
            }
            _ => Err(Error::Config(
                "give 'preset', or 'cartan', or both 'simple_roots' and 'simple_coroots'".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_file() {
        let d = DatumConfig::from_toml("preset = \"GL3\"").unwrap().build().unwrap();
        assert_eq!(d.rank(), 3);
    }

    #[test]
    fn adjoint_b2() {
        let cfg = DatumConfig::from_toml("name = \"B2ad\"\ncartan = [[2, -2], [-1, 2]]\nlattice = \"adjoint\"").unwrap();
        let d = cfg.build().unwrap();
        assert_eq!(d.num_positive_roots(), 4);
        assert_eq!(d.weyl_order(), 8);
    }

    #[test]
    fn explicit_gl2() {
        let cfg = DatumConfig::from_toml(
            "rank = 2\nsimple_roots = [[1, -1]]\nsimple_coroots = [[1, -1]]\nfundamental_coweights = [[1, 0]]",
        )
        .unwrap();
        let d = cfg.build().unwrap();
        assert_eq!(d.rank(), 2);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(matches!(DatumConfig::from_toml("preset = \"GL2\"\ncolour = 3"), Err(Error::Config(_))));
    }

    #[test]
    fn invalid_cartan_reported() {
        let cfg = DatumConfig::from_toml("cartan = [[2, 1], [1, 2]]").unwrap();
        assert!(matches!(cfg.build(), Err(Error::InvalidDatum(_))));
    }
}
