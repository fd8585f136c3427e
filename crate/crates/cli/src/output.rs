use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use netdisrupt::{Error, Result};

/// Output directory of one invocation. Files created through it are
/// deleted again unless [`Outputs::commit`] is reached, so a failed run
/// leaves no partial results behind. Files that existed beforehand (an
/// append-only results store) are left alone.
pub struct Outputs {
    dir: PathBuf,
    made_dir: bool,
    created: Vec<PathBuf>,
    touched: Vec<PathBuf>,
    committed: bool,
}

impl Outputs {
    pub fn create(dir: &Path) -> Result<Self> {
        let made_dir = !dir.exists();
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        Ok(Self {
            dir: dir.to_path_buf(),
            made_dir,
            created: Vec::new(),
            touched: Vec::new(),
            committed: false,
        })
    }

    /// Path of an output file, tracked for cleanup and for the final echo.
    pub fn path(&mut self, name: &str) -> PathBuf {
        let p = self.dir.join(name);
        if !p.exists() && !self.created.contains(&p) {
            self.created.push(p.clone());
        }
        if !self.touched.contains(&p) {
            self.touched.push(p.clone());
        }
        p
    }

    pub fn write_with<F>(&mut self, name: &str, f: F) -> Result<PathBuf>
    where
        F: FnOnce(&mut BufWriter<File>) -> Result<()>,
    {
        let p = self.path(name);
        let file = File::create(&p).map_err(|e| Error::io(&p, e))?;
        let mut w = BufWriter::new(file);
        f(&mut w)?;
        w.flush().map_err(|e| Error::io(&p, e))?;
        Ok(p)
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<PathBuf> {
        self.write_with(name, |w| {
            serde_json::to_writer_pretty(&mut *w, value)?;
            w.write_all(b"\n").map_err(|e| Error::io(name, e))
        })
    }

    /// Writes the reproduction snapshot.
    pub fn snapshot<A: Serialize>(&mut self, command: &str, seed: Option<u64>, args: &A) -> Result<()> {
        let cfg = RunConfig {
            command,
            version: env!("CARGO_PKG_VERSION"),
            seed,
            args,
        };
        self.write_json("config.json", &cfg).map(|_| ())
    }

    /// Keeps the outputs and prints their paths.
    pub fn commit(mut self) {
        self.committed = true;
        for p in &self.touched {
            println!("wrote {}", p.display());
        }
    }
}

impl Drop for Outputs {
    fn drop(&mut self) {
        if !self.committed {
            for p in &self.created {
                if fs::remove_file(p).is_ok() {
                    log::warn!("removed partial output {}", p.display());
                }
            }
            if self.made_dir {
                // only succeeds when nothing else was put there
                let _ = fs::remove_dir(&self.dir);
            }
        }
    }
}

/// Everything needed to rerun a command, saved next to its outputs.
#[derive(Serialize)]
struct RunConfig<'a, A: Serialize> {
    command: &'a str,
    version: &'a str,
    seed: Option<u64>,
    args: &'a A,
}
