//! Flat `key=value` config files. Any long flag of the active subcommand can
//! be supplied; explicit flags win over file values. Unknown keys are
//! rejected rather than ignored.

use std::collections::HashMap;
use std::path::Path;

pub struct ConfigFile {
    values: HashMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path, known_keys: &[&str]) -> Result<ConfigFile, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let mut values = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!(
                    "{}:{}: expected key=value, got {line:?}",
                    path.display(),
                    lineno + 1
                ));
            };
            let key = key.trim().to_string();
            if !known_keys.contains(&key.as_str()) {
                return Err(format!(
                    "{}:{}: unknown key {key:?} (known: {})",
                    path.display(),
                    lineno + 1,
                    known_keys.join(", ")
                ));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(ConfigFile { values })
    }

    /// Fill `slot` from the file when the command line left it empty.
    pub fn fill<T: std::str::FromStr>(&self, slot: &mut Option<T>, key: &str) -> Result<(), String>
    where
        T::Err: std::fmt::Display,
    {
        if slot.is_none() {
            if let Some(raw) = self.values.get(key) {
                *slot = Some(
                    raw.parse()
                        .map_err(|e| format!("config key {key}: cannot parse {raw:?}: {e}"))?,
                );
            }
        }
        Ok(())
    }
}
