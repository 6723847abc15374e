//! On-disk class tables, one JSON-lines file per braid length.
//!
//! The first line is a header carrying the schema version and length; each
//! following line is one class. A file with a different schema version, a
//! different length, or any unreadable line is ignored and rewritten.

use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::render::{ClassTable, ClassView};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    schema_version: u32,
    length: usize,
    braid_count: usize,
}

pub struct ClassTableCache {
    dir: PathBuf,
}

impl ClassTableCache {
    pub fn new(dir: impl Into<PathBuf>) -> ClassTableCache {
        ClassTableCache { dir: dir.into() }
    }

    fn path(&self, length: usize) -> PathBuf {
        self.dir.join(format!("classes-len-{length}.jsonl"))
    }

    pub fn load(&self, length: usize) -> Option<ClassTable> {
        read_table(&self.path(length), length).ok().flatten()
    }

    pub fn store(&self, table: &ClassTable) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(table.length);
        let tmp = path.with_extension("jsonl.tmp");
        {
            let mut f = io::BufWriter::new(fs::File::create(&tmp)?);
            let header = Header {
                schema_version: SCHEMA_VERSION,
                length: table.length,
                braid_count: table.braid_count,
            };
            serde_json::to_writer(&mut f, &header)?;
            writeln!(f)?;
            for class in &table.classes {
                serde_json::to_writer(&mut f, class)?;
                writeln!(f)?;
            }
            f.flush()?;
        }
        fs::rename(tmp, path)
    }
}

fn read_table(path: &Path, length: usize) -> io::Result<Option<ClassTable>> {
    let file = match fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut lines = BufReader::new(file).lines();
    let Some(first) = lines.next().transpose()? else {
        return Ok(None);
    };
    let Ok(header) = serde_json::from_str::<Header>(&first) else {
        return Ok(None);
    };
    if header.schema_version != SCHEMA_VERSION || header.length != length {
        return Ok(None);
    }
    let mut classes = Vec::new();
    for line in lines {
        match serde_json::from_str::<ClassView>(&line?) {
            Ok(c) => classes.push(c),
            Err(_) => return Ok(None),
        }
    }
    let braid_count: usize = classes.iter().map(|c| c.size).sum();
    if braid_count != header.braid_count {
        return Ok(None);
    }
    Ok(Some(ClassTable {
        length,
        braid_count,
        class_count: classes.len(),
        classes,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use braid3::NormalForm;

    fn table() -> ClassTable {
        let a: NormalForm = "D^0:1".parse().unwrap();
        let b: NormalForm = "D^0:2".parse().unwrap();
        let view = |x: NormalForm| crate::render::CyclicClassView {
            representative: x,
            size: 1,
            members: vec![x],
        };
        ClassTable {
            length: 1,
            braid_count: 2,
            class_count: 1,
            classes: vec![ClassView {
                representative: a,
                size: 2,
                coincides: false,
                cyclic_classes: vec![view(a), view(b)],
            }],
        }
    }

    #[test]
    fn store_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ClassTableCache::new(dir.path());
        assert!(cache.load(1).is_none());
        cache.store(&table()).unwrap();
        assert_eq!(cache.load(1), Some(table()));
        assert!(cache.load(2).is_none());
    }

    #[test]
    fn stale_schema_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ClassTableCache::new(dir.path());
        cache.store(&table()).unwrap();
        let path = dir.path().join("classes-len-1.jsonl");
        let text = fs::read_to_string(&path).unwrap();
        fs::write(
            &path,
            text.replace("\"schema_version\":1", "\"schema_version\":0"),
        )
        .unwrap();
        assert!(cache.load(1).is_none());
        fs::write(&path, "garbage\n").unwrap();
        assert!(cache.load(1).is_none());
    }
}
