#![allow(dead_code)]

pub mod boeing;
pub mod oracle;

use std::path::PathBuf;

use tlx_core::harness::Corpus;
use tlx_core::ResourceTables;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn corpus() -> Corpus {
    Corpus::from_path(&fixtures().join("manifest.tsv")).expect("fixture corpus")
}

pub fn tables() -> ResourceTables {
    ResourceTables::from_dir(&fixtures().join("resources")).expect("fixture resources")
}
