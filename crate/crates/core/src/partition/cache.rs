use std::fs;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use super::{p_table, PartitionError, PartitionTable};

/// Directory of `pB_{B}_{N}.txt` files. A file for a larger `N` serves any
/// smaller request by prefix; every file is certified when read.
#[derive(Debug, Clone)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, bound: u32, max_index: usize) -> PathBuf {
        self.dir.join(format!("pB_{bound}_{max_index}.txt"))
    }

    /// Cached files for `bound` as `(N, path)`, ascending in `N`.
    pub fn entries(&self, bound: u32) -> Vec<(usize, PathBuf)> {
        let prefix = format!("pB_{bound}_");
        let mut out: Vec<(usize, PathBuf)> = fs::read_dir(&self.dir)
            .into_iter()
            .flatten()
            .flatten()
            .filter_map(|e| {
                let name = e.file_name().into_string().ok()?;
                let n = name
                    .strip_prefix(&prefix)?
                    .strip_suffix(".txt")?
                    .parse()
                    .ok()?;
                Some((n, e.path()))
            })
            .collect();
        out.sort();
        out
    }

    /// Read the smallest cached table covering `max_index`, or build and
    /// store a new one. A cached file that fails certification is an error.
    pub fn load_or_build(
        &self,
        bound: u32,
        max_index: usize,
    ) -> Result<PartitionTable, PartitionError> {
        if let Some((_, path)) = self
            .entries(bound)
            .into_iter()
            .find(|(n, _)| *n >= max_index)
        {
            let table = PartitionTable::read_from(BufReader::new(fs::File::open(&path)?))?;
            if table.bound() != bound || table.max_index() < max_index {
                return Err(PartitionError::Parse {
                    line: 1,
                    msg: format!("{} does not match its file name", path.display()),
                });
            }
            return Ok(table.truncated(max_index));
        }
        let table = p_table(bound, max_index);
        self.store(&table)?;
        Ok(table)
    }

    pub fn store(&self, table: &PartitionTable) -> Result<PathBuf, PartitionError> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(table.bound(), table.max_index());
        let tmp = path.with_extension("tmp");
        table.write_to(BufWriter::new(fs::File::create(&tmp)?))?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }
}
