//! On-disk graph cache: one graph JSON file per canonical shapes string.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use krdeg::crystal::RectSeq;
use krdeg::deg::KRDegGraph;

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: &Path) -> Self {
        Cache { dir: dir.to_path_buf() }
    }

    pub fn path(&self, shapes: &RectSeq) -> PathBuf {
        self.dir.join(format!("{}.json", shapes.canonical()))
    }

    /// A cached graph for exactly these shapes, if one exists.
    pub fn load(&self, shapes: &RectSeq) -> anyhow::Result<Option<KRDegGraph>> {
        let path = self.path(shapes);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e).with_context(|| format!("reading {}", path.display())),
        };
        let g = KRDegGraph::from_json(&text).with_context(|| format!("cache file {} is corrupt", path.display()))?;
        if g.shapes() != shapes {
            anyhow::bail!("cache file {} holds {}", path.display(), g.shapes().canonical());
        }
        Ok(Some(g))
    }

    /// Writes through a temporary file so readers never see a partial graph.
    pub fn save(&self, g: &KRDegGraph) -> anyhow::Result<()> {
        fs::create_dir_all(&self.dir).with_context(|| format!("creating {}", self.dir.display()))?;
        let path = self.path(g.shapes());
        let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
        fs::write(&tmp, g.to_json()).with_context(|| format!("writing {}", tmp.display()))?;
        fs::rename(&tmp, &path).with_context(|| format!("renaming into {}", path.display()))?;
        Ok(())
    }
}
