//! File writers. Every file carries the schema version, config hash and seed.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::Failure;

pub const SCHEMA: u32 = 1;

pub struct Writer {
    pub dir: PathBuf,
    pub command: String,
    pub hash: String,
    pub seed: u64,
    pub written: Vec<PathBuf>,
}

impl Writer {
    pub fn new(dir: &Path, command: &str, hash: String, seed: u64) -> Result<Self, Failure> {
        fs::create_dir_all(dir).map_err(|e| Failure::Runtime(format!("cannot create {}: {e}", dir.display())))?;
        Ok(Writer { dir: dir.to_path_buf(), command: command.into(), hash, seed, written: Vec::new() })
    }

    fn put(&mut self, name: &str, body: String) -> Result<(), Failure> {
        let path = self.dir.join(name);
        fs::write(&path, body).map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))?;
        self.written.push(path);
        Ok(())
    }

    /// `{"schema", "command", "config_hash", "seed", "data"}`.
    pub fn json<T: Serialize>(&mut self, name: &str, data: &T) -> Result<(), Failure> {
        let data = serde_json::to_value(data).map_err(|e| Failure::Runtime(e.to_string()))?;
        let doc = json!({
            "schema": SCHEMA,
            "command": self.command,
            "config_hash": self.hash,
            "seed": self.seed,
            "data": data,
        });
        let mut text = serde_json::to_string_pretty(&doc).map_err(|e| Failure::Runtime(e.to_string()))?;
        text.push('\n');
        self.put(name, text)
    }

    /// CSV with a comment header naming the provenance and the columns.
    pub fn csv(&mut self, name: &str, columns: &[&str], about: &str, rows: &[Vec<Value>]) -> Result<(), Failure> {
        let mut out = String::new();
        let _ = writeln!(out, "# maxmod-lab {} schema={} config_hash={} seed={}", self.command, SCHEMA, self.hash, self.seed);
        let _ = writeln!(out, "# {about}");
        out.push_str(&columns.join(","));
        out.push('\n');
        for row in rows {
            let cells: Vec<String> = row.iter().map(cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        self.put(name, out)
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
