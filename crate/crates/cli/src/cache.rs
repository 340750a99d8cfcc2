//! Opt-in result cache keyed by a content hash of the inputs.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const ENV_VAR: &str = "GALEFORGE_CACHE";

/// Everything a command produces on success.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub files: Vec<(PathBuf, String)>,
    pub code: u8,
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn from_env() -> Option<Self> {
        std::env::var_os(ENV_VAR)
            .filter(|v| !v.is_empty())
            .map(|dir| Self { dir: dir.into() })
    }

    /// Hash of the version, the normalized command line and the bytes of
    /// every input file, in order.
    pub fn key(version: &str, args: &[String], inputs: &[Vec<u8>]) -> String {
        let mut h = Sha256::new();
        let mut feed = |bytes: &[u8]| {
            h.update((bytes.len() as u64).to_le_bytes());
            h.update(bytes);
        };
        feed(version.as_bytes());
        for a in args {
            feed(a.as_bytes());
        }
        for i in inputs {
            feed(i);
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn load(&self, key: &str) -> Option<Output> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let v: Value = serde_json::from_str(&text).ok()?;
        let stdout = v.get("stdout")?.as_str()?.to_owned();
        let code = u8::try_from(v.get("code")?.as_u64()?).ok()?;
        let files = v
            .get("files")?
            .as_array()?
            .iter()
            .map(|f| {
                Some((
                    PathBuf::from(f.get("path")?.as_str()?),
                    f.get("content")?.as_str()?.to_owned(),
                ))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Output { stdout, files, code })
    }

    /// Atomic: written to a temporary file in the cache directory, then
    /// renamed into place.
    pub fn store(&self, key: &str, out: &Output) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let created = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or_default();
        let files: Vec<Value> = out
            .files
            .iter()
            .map(|(p, c)| json!({"path": p.to_string_lossy(), "content": c}))
            .collect();
        let entry = json!({
            "key": key,
            "created_at": created,
            "code": out.code,
            "stdout": out.stdout,
            "files": files,
        });
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}

/// Writes `content` to `path` through a temporary sibling file.
pub fn write_atomic(path: &Path, content: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(content.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
