use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Collects artifacts written to one output directory and their checksums.
pub struct ArtifactWriter {
    dir: PathBuf,
    checksums: BTreeMap<String, String>,
}

impl ArtifactWriter {
    pub fn create(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        Ok(Self { dir: dir.to_path_buf(), checksums: BTreeMap::new() })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Writes `name` via a temporary file and a rename, recording its hash.
    pub fn write(&mut self, name: &str, bytes: &[u8]) -> Result<(), CliError> {
        write_atomic(&self.dir.join(name), bytes)?;
        self.checksums.insert(name.to_owned(), hex::encode(Sha256::digest(bytes)));
        Ok(())
    }

    pub fn write_with<F>(&mut self, name: &str, fill: F) -> Result<(), CliError>
    where
        F: FnOnce(&mut Vec<u8>) -> std::io::Result<()>,
    {
        let mut buf = Vec::new();
        fill(&mut buf).map_err(|e| CliError::io(self.dir.join(name), e))?;
        self.write(name, &buf)
    }

    pub fn write_json<T: serde::Serialize>(&mut self, name: &str, value: &T) -> Result<(), CliError> {
        let mut text = serde_json::to_vec_pretty(value).expect("artifact serializes");
        text.push(b'\n');
        self.write(name, &text)
    }

    pub fn into_checksums(self) -> BTreeMap<String, String> {
        self.checksums
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let file_name = path.file_name().and_then(|n| n.to_str()).unwrap_or("artifact");
    let tmp = path.with_file_name(format!(".{file_name}.tmp"));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(CliError::io(path, e));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_and_hashes() {
        let dir = tempfile::tempdir().unwrap();
        let mut w = ArtifactWriter::create(&dir.path().join("nested")).unwrap();
        w.write("a.txt", b"abc").unwrap();
        assert_eq!(fs::read(dir.path().join("nested/a.txt")).unwrap(), b"abc");
        let sums = w.into_checksums();
        assert_eq!(sums["a.txt"], "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
        assert!(!dir.path().join("nested/.a.txt.tmp").exists());
    }
}
