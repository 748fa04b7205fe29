//! Physical parameters: key tables, the config file format and the
//! conversion into library setups.

use std::collections::BTreeMap;
use std::path::Path;

use vacshift::{DipoleModel, EllMax, PlateGeometry, PlateSetup, SphereSetup};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Plates,
    Sphere,
}

pub struct Key {
    pub name: &'static str,
    pub help: &'static str,
    pub default: Option<&'static str>,
}

const PLATE_KEYS: &[Key] = &[
    Key { name: "d-nm", help: "plate spacing d in nm", default: Some("100") },
    Key { name: "z0-frac", help: "dipole position z0/d", default: Some("0.5") },
    Key { name: "a0-nm", help: "dipole size a0 in nm", default: Some("0.1") },
    Key { name: "q-e", help: "charge in units of e", default: Some("1") },
    Key { name: "omega0-ev", help: "dipole energy hbar*omega0 in eV", default: Some("0.01") },
    Key { name: "z-ratio", help: "LC impedance Z/Z_vac", default: Some("50") },
    Key { name: "omegac-ev", help: "LC energy hbar*omega_c in eV [default: 10 hbar*omega0]", default: None },
];

const SPHERE_KEYS: &[Key] = &[
    Key { name: "r-nm", help: "sphere radius R in nm", default: Some("20") },
    Key { name: "z0-nm", help: "gap z0 between dipole and surface in nm", default: Some("0.5") },
    Key { name: "omegap-ev", help: "plasma energy hbar*omega_P in eV", default: Some("5") },
    Key { name: "a0-nm", help: "dipole size a0 in nm", default: Some("0.1") },
    Key { name: "q-e", help: "charge in units of e", default: Some("1") },
    Key { name: "omega0-ev", help: "dipole energy hbar*omega0 in eV", default: Some("2.5") },
    Key { name: "ell-max", help: "number of plasmon modes, or `inf`", default: Some("inf") },
];

/// Keys of the config file that are not physical parameters.
pub const OUTPUT_KEYS: &[&str] = &["format", "output"];

impl Model {
    pub fn keys(self) -> &'static [Key] {
        match self {
            Model::Plates => PLATE_KEYS,
            Model::Sphere => SPHERE_KEYS,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Model::Plates => "plates",
            Model::Sphere => "sphere",
        }
    }

    pub fn has_key(self, key: &str) -> bool {
        self.keys().iter().any(|k| k.name == key)
    }
}

/// Flat `key = value` assignments, `#` starts a comment.
pub fn parse_config(text: &str, origin: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::config(format!("{origin}:{}: expected `key = value`", i + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || v.is_empty() {
            return Err(CliError::config(format!("{origin}:{}: empty key or value", i + 1)));
        }
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(CliError::config(format!("{origin}:{}: duplicate key `{k}`", i + 1)));
        }
    }
    Ok(out)
}

pub fn read_config(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text, &path.display().to_string())
}

/// Resolved parameter set of one model.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    model: Model,
    values: BTreeMap<&'static str, String>,
}

impl Params {
    /// Applies defaults, then the config file, then command-line flags.
    /// Config keys that belong to neither the model nor the output section
    /// are rejected.
    pub fn resolve(
        model: Model,
        config: &BTreeMap<String, String>,
        flags: &BTreeMap<&'static str, String>,
    ) -> Result<Self, CliError> {
        for k in config.keys() {
            if !model.has_key(k) && !OUTPUT_KEYS.contains(&k.as_str()) {
                return Err(CliError::config(format!("unknown config key `{k}` for {}", model.name())));
            }
        }
        let mut values = BTreeMap::new();
        for key in model.keys() {
            let v = flags
                .get(key.name)
                .or_else(|| config.get(key.name))
                .map(String::as_str)
                .or(key.default);
            if let Some(v) = v {
                values.insert(key.name, v.to_string());
            }
        }
        let p = Params { model, values };
        p.validate()?;
        Ok(p)
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn with(&self, key: &'static str, value: String) -> Self {
        let mut p = self.clone();
        p.values.insert(key, value);
        p
    }

    fn validate(&self) -> Result<(), CliError> {
        for key in self.model.keys() {
            if let Some(v) = self.values.get(key.name) {
                if key.name == "ell-max" {
                    parse_ell_max(v)?;
                } else {
                    positive(key.name, v)?;
                }
            }
        }
        Ok(())
    }

    pub fn num(&self, key: &str) -> f64 {
        // validated on construction
        self.values.get(key).map(|v| v.parse().unwrap_or(f64::NAN)).unwrap_or(f64::NAN)
    }

    pub fn opt_num(&self, key: &str) -> Option<f64> {
        self.values.get(key).map(|_| self.num(key))
    }

    pub fn text(&self, key: &str) -> &str {
        self.values.get(key).map(String::as_str).unwrap_or("")
    }

    pub fn plate_setup(&self) -> vacshift::Result<PlateSetup> {
        let dipole = DipoleModel::new(self.num("q-e"), self.num("a0-nm"), self.num("omega0-ev"))?;
        let geometry = PlateGeometry::new(self.num("d-nm"), self.num("z0-frac"))?;
        PlateSetup::new(geometry, dipole, self.num("z-ratio"), self.opt_num("omegac-ev"))
    }

    /// Rejects parameter combinations the library refuses, for commands
    /// where a bad setup is a configuration mistake rather than a failed
    /// point.
    pub fn setup_check(&self) -> Result<(), CliError> {
        let r = match self.model {
            Model::Plates => self.plate_setup().map(|_| ()),
            Model::Sphere => self.sphere_setup().map(|_| ()),
        };
        r.map_err(|e| CliError::config(e.to_string()))
    }

    pub fn sphere_setup(&self) -> vacshift::Result<SphereSetup> {
        let dipole = DipoleModel::new(self.num("q-e"), self.num("a0-nm"), self.num("omega0-ev"))?;
        let ell_max = parse_ell_max(self.text("ell-max")).unwrap_or(EllMax::Infinite);
        SphereSetup::new(self.num("r-nm"), self.num("z0-nm"), self.num("omegap-ev"), dipole, ell_max)
    }
}

fn positive(key: &str, v: &str) -> Result<f64, CliError> {
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        _ => Err(CliError::config(format!("`{key}` must be a positive number, got `{v}`"))),
    }
}

pub fn parse_ell_max(v: &str) -> Result<EllMax, CliError> {
    if v == "inf" {
        return Ok(EllMax::Infinite);
    }
    match v.parse::<u32>() {
        Ok(n) if n > 0 => Ok(EllMax::Finite(n)),
        _ => Err(CliError::config(format!("`ell-max` must be a positive integer or `inf`, got `{v}`"))),
    }
}
