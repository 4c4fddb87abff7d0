//! Offline knowledge tables: redirects, interlanguage links and a predicate
//! role alignment matrix.
//!
//! All three are read from tab-separated snapshots:
//!
//! - `redirects.tsv`: `lang  from_uri  to_uri`
//! - `interlang.tsv`: `lang  uri  interlingual_id`
//! - `predmatrix.tsv`: `lang  predicate_sense  role_label  interlingual_role_id`
//!
//! Lines starting with `#` are comments.

use std::collections::HashMap;
use std::io::Read;
use std::path::{Path, PathBuf};

use percent_encoding::percent_decode_str;

use crate::error::ResourceError;

pub const REDIRECTS_FILE: &str = "redirects.tsv";
pub const INTERLANG_FILE: &str = "interlang.tsv";
pub const PREDMATRIX_FILE: &str = "predmatrix.tsv";

/// Percent-decodes a URI and replaces spaces with underscores.
pub fn normalize_uri(uri: &str) -> String {
    percent_decode_str(uri.trim()).decode_utf8_lossy().replace(' ', "_")
}

fn read_rows<R: Read>(reader: R, path: &Path, arity: usize) -> Result<Vec<(u64, Vec<String>)>, ResourceError> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(b'\t')
        .has_headers(false)
        .comment(Some(b'#'))
        .quoting(false)
        .flexible(true)
        .from_reader(reader);
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|source| ResourceError::Csv {
            path: path.to_path_buf(),
            source,
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() == 1 && record[0].trim().is_empty() {
            continue;
        }
        if record.len() != arity {
            return Err(ResourceError::Arity {
                path: path.to_path_buf(),
                line,
                expected: arity,
                found: record.len(),
            });
        }
        rows.push((line, record.iter().map(str::to_string).collect()));
    }
    Ok(rows)
}

fn open(path: &Path) -> Result<std::fs::File, ResourceError> {
    std::fs::File::open(path).map_err(|source| ResourceError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Redirect URI to its canonical target.
#[derive(Debug, Clone, Default)]
pub struct RedirectTable {
    canonical: HashMap<String, String>,
}

impl RedirectTable {
    /// Builds the table from `(lang, from, to)` rows, resolving chains and
    /// rejecting cycles.
    pub fn from_pairs<I, S>(pairs: I) -> Result<Self, ResourceError>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut direct = HashMap::new();
        for (from, to) in pairs {
            let (from, to) = (normalize_uri(from.as_ref()), normalize_uri(to.as_ref()));
            if from == to {
                continue;
            }
            if let Some(prev) = direct.insert(from.clone(), to.clone()) {
                if prev != to {
                    return Err(ResourceError::Conflict {
                        path: PathBuf::new(),
                        line: 0,
                        key: from,
                    });
                }
            }
        }
        let mut canonical = HashMap::with_capacity(direct.len());
        for start in direct.keys() {
            let mut path = vec![start.clone()];
            let mut current = start;
            while let Some(next) = direct.get(current) {
                if path.contains(next) {
                    path.push(next.clone());
                    return Err(ResourceError::RedirectCycle(path));
                }
                path.push(next.clone());
                current = next;
            }
            canonical.insert(start.clone(), current.clone());
        }
        Ok(Self { canonical })
    }

    pub fn load(path: &Path) -> Result<Self, ResourceError> {
        Self::read(open(path)?, path)
    }

    pub fn read<R: Read>(reader: R, path: &Path) -> Result<Self, ResourceError> {
        let rows = read_rows(reader, path, 3)?;
        Self::from_pairs(rows.into_iter().map(|(_, r)| (r[1].clone(), r[2].clone()))).map_err(|e| match e {
            ResourceError::Conflict { key, .. } => ResourceError::Conflict {
                path: path.to_path_buf(),
                line: 0,
                key,
            },
            other => other,
        })
    }

    /// Canonical form of `uri`; canonical URIs map to themselves.
    pub fn canonical(&self, uri: &str) -> String {
        let uri = normalize_uri(uri);
        self.canonical.get(&uri).cloned().unwrap_or(uri)
    }

    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canonical.is_empty()
    }
}

/// Canonical URI to a language-independent entity id.
#[derive(Debug, Clone, Default)]
pub struct InterlanguageLinkTable {
    ids: HashMap<String, String>,
}

impl InterlanguageLinkTable {
    pub fn from_pairs<I, S>(pairs: I) -> Result<Self, ResourceError>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut ids = HashMap::new();
        for (uri, id) in pairs {
            let uri = normalize_uri(uri.as_ref());
            let id = id.as_ref().to_string();
            if let Some(prev) = ids.insert(uri.clone(), id.clone()) {
                if prev != id {
                    return Err(ResourceError::Conflict {
                        path: PathBuf::new(),
                        line: 0,
                        key: uri,
                    });
                }
            }
        }
        Ok(Self { ids })
    }

    pub fn load(path: &Path) -> Result<Self, ResourceError> {
        Self::read(open(path)?, path)
    }

    pub fn read<R: Read>(reader: R, path: &Path) -> Result<Self, ResourceError> {
        let mut ids = HashMap::new();
        for (line, r) in read_rows(reader, path, 3)? {
            let uri = normalize_uri(&r[1]);
            if let Some(prev) = ids.insert(uri.clone(), r[2].clone()) {
                if prev != r[2] {
                    return Err(ResourceError::Conflict {
                        path: path.to_path_buf(),
                        line,
                        key: uri,
                    });
                }
            }
        }
        Ok(Self { ids })
    }

    pub fn get(&self, canonical_uri: &str) -> Option<&str> {
        self.ids.get(canonical_uri).map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// A `(language, predicate sense, role label)` lookup key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RoleKey<'a> {
    pub language: &'a str,
    pub sense: &'a str,
    pub role: &'a str,
}

impl<'a> RoleKey<'a> {
    pub fn new(language: &'a str, sense: &'a str, role: &'a str) -> Self {
        Self { language, sense, role }
    }
}

/// Role alignment projection of a predicate matrix: each key maps to an
/// interlingual role id. Lookups are exact.
#[derive(Debug, Clone, Default)]
pub struct PredicateRoleMatrix {
    roles: HashMap<(String, String, String), String>,
}

impl PredicateRoleMatrix {
    pub fn from_rows<I, S>(rows: I) -> Result<Self, ResourceError>
    where
        I: IntoIterator<Item = (S, S, S, S)>,
        S: AsRef<str>,
    {
        let mut roles = HashMap::new();
        for (lang, sense, role, id) in rows {
            let key = (
                lang.as_ref().to_string(),
                sense.as_ref().to_string(),
                role.as_ref().to_string(),
            );
            if roles.insert(key.clone(), id.as_ref().to_string()).is_some() {
                return Err(ResourceError::Conflict {
                    path: PathBuf::new(),
                    line: 0,
                    key: format!("{}/{}/{}", key.0, key.1, key.2),
                });
            }
        }
        Ok(Self { roles })
    }

    pub fn load(path: &Path) -> Result<Self, ResourceError> {
        Self::read(open(path)?, path)
    }

    pub fn read<R: Read>(reader: R, path: &Path) -> Result<Self, ResourceError> {
        let mut roles = HashMap::new();
        for (line, r) in read_rows(reader, path, 4)? {
            let key = (r[0].clone(), r[1].clone(), r[2].clone());
            if roles.insert(key, r[3].clone()).is_some() {
                return Err(ResourceError::Conflict {
                    path: path.to_path_buf(),
                    line,
                    key: format!("{}/{}/{}", r[0], r[1], r[2]),
                });
            }
        }
        Ok(Self { roles })
    }

    pub fn role_id(&self, key: RoleKey<'_>) -> Option<&str> {
        self.roles
            .get(&(key.language.to_string(), key.sense.to_string(), key.role.to_string()))
            .map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.roles.is_empty()
    }
}

/// The three tables together. Any of them may be empty.
#[derive(Debug, Clone, Default)]
pub struct ResourceTables {
    pub redirects: RedirectTable,
    pub interlang: InterlanguageLinkTable,
    pub predmatrix: PredicateRoleMatrix,
    /// Which tables were actually loaded from disk.
    pub loaded: LoadedTables,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadedTables {
    pub redirects: bool,
    pub interlang: bool,
    pub predmatrix: bool,
}

impl ResourceTables {
    pub fn load(
        redirects: Option<&Path>,
        interlang: Option<&Path>,
        predmatrix: Option<&Path>,
    ) -> Result<Self, ResourceError> {
        let mut tables = ResourceTables::default();
        if let Some(p) = redirects {
            tables.redirects = RedirectTable::load(p)?;
            tables.loaded.redirects = true;
        }
        if let Some(p) = interlang {
            tables.interlang = InterlanguageLinkTable::load(p)?;
            tables.loaded.interlang = true;
        }
        if let Some(p) = predmatrix {
            tables.predmatrix = PredicateRoleMatrix::load(p)?;
            tables.loaded.predmatrix = true;
        }
        Ok(tables)
    }

    /// Loads whichever of the three standard file names exist in `dir`.
    pub fn from_dir(dir: &Path) -> Result<Self, ResourceError> {
        let pick = |name: &str| {
            let p = dir.join(name);
            p.is_file().then_some(p)
        };
        Self::load(
            pick(REDIRECTS_FILE).as_deref(),
            pick(INTERLANG_FILE).as_deref(),
            pick(PREDMATRIX_FILE).as_deref(),
        )
    }
}

/// Follows redirects to the canonical URI, then the interlanguage link.
/// `None` when the canonical URI has no interlingual id.
pub fn resolve_entity(uri: &str, tables: &ResourceTables) -> Option<String> {
    let canonical = tables.redirects.canonical(uri);
    tables.interlang.get(&canonical).map(str::to_string)
}

/// Identity used to compare entity links: the interlingual id when one is
/// known, otherwise the canonical URI.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntityKey {
    Interlingual(String),
    Uri(String),
}

pub fn entity_key(uri: &str, tables: &ResourceTables) -> EntityKey {
    let canonical = tables.redirects.canonical(uri);
    match tables.interlang.get(&canonical) {
        Some(id) => EntityKey::Interlingual(id.to_string()),
        None => EntityKey::Uri(canonical),
    }
}

/// True iff both keys map to the same interlingual role id.
pub fn align_roles(a: RoleKey<'_>, b: RoleKey<'_>, matrix: &PredicateRoleMatrix) -> bool {
    match (matrix.role_id(a), matrix.role_id(b)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tables() -> ResourceTables {
        let redirects = "# lang\tfrom\tto\n\
            en\thttp://dbpedia.org/resource/Toyota_Motor_Corp\thttp://dbpedia.org/resource/Toyota\n\
            en\thttp://dbpedia.org/resource/Toyota%20Motor%20Company\thttp://dbpedia.org/resource/Toyota_Motor_Corp\n\
            en\thttp://dbpedia.org/resource/NYC\thttp://dbpedia.org/resource/New_York\n";
        let interlang = "en\thttp://dbpedia.org/resource/New_York\tQ60\n\
            es\thttp://es.dbpedia.org/resource/Nueva_York\tQ60\n\
            en\thttp://dbpedia.org/resource/Toyota\tQ53268\n";
        let matrix = "es\tvender.1\targ0\tsell-A0\n\
            en\tsell.01\tA0\tsell-A0\n\
            en\tsell.01\tA1\tsell-A1\n";
        let p = Path::new("mem");
        ResourceTables {
            redirects: RedirectTable::read(redirects.as_bytes(), p).unwrap(),
            interlang: InterlanguageLinkTable::read(interlang.as_bytes(), p).unwrap(),
            predmatrix: PredicateRoleMatrix::read(matrix.as_bytes(), p).unwrap(),
            loaded: LoadedTables {
                redirects: true,
                interlang: true,
                predmatrix: true,
            },
        }
    }

    #[test]
    fn new_york_resolves_across_languages() {
        let t = tables();
        let en = resolve_entity("http://dbpedia.org/resource/New_York", &t);
        let es = resolve_entity("http://es.dbpedia.org/resource/Nueva_York", &t);
        assert_eq!(en.as_deref(), Some("Q60"));
        assert_eq!(en, es);
        assert_eq!(
            resolve_entity("http://dbpedia.org/resource/NYC", &t).as_deref(),
            Some("Q60")
        );
    }

    #[test]
    fn unknown_uri_is_none() {
        assert_eq!(resolve_entity("http://dbpedia.org/resource/Atlantis", &tables()), None);
    }

    #[test]
    fn redirect_chains_reach_toyota() {
        let t = tables();
        let toyota = resolve_entity("http://dbpedia.org/resource/Toyota", &t);
        assert_eq!(
            resolve_entity("http://dbpedia.org/resource/Toyota_Motor_Corp", &t),
            toyota
        );
        // percent-encoded spaces normalize to underscores, two hops
        assert_eq!(
            resolve_entity("http://dbpedia.org/resource/Toyota Motor Company", &t),
            toyota
        );
    }

    #[test]
    fn canonical_is_idempotent() {
        let t = tables();
        for uri in [
            "http://dbpedia.org/resource/Toyota_Motor_Corp",
            "http://dbpedia.org/resource/Toyota",
            "http://dbpedia.org/resource/Unknown",
        ] {
            let c = t.redirects.canonical(uri);
            assert_eq!(t.redirects.canonical(&c), c);
            assert_eq!(resolve_entity(&c, &t), resolve_entity(uri, &t));
        }
    }

    #[test]
    fn redirect_cycle_rejected_at_load() {
        let text = "en\tA\tB\nen\tB\tC\nen\tC\tA\n";
        let err = RedirectTable::read(text.as_bytes(), Path::new("r.tsv")).unwrap_err();
        assert!(matches!(err, ResourceError::RedirectCycle(_)));
    }

    #[test]
    fn conflicting_interlang_rows_rejected() {
        let text = "en\tA\tQ1\nen\tA\tQ2\n";
        assert!(InterlanguageLinkTable::read(text.as_bytes(), Path::new("i.tsv")).is_err());
    }

    #[test]
    fn role_alignment() {
        let m = tables().predmatrix;
        let vender = RoleKey::new("es", "vender.1", "arg0");
        let sell_a0 = RoleKey::new("en", "sell.01", "A0");
        let sell_a1 = RoleKey::new("en", "sell.01", "A1");
        assert!(align_roles(vender, sell_a0, &m));
        assert!(align_roles(sell_a0, vender, &m));
        assert!(align_roles(sell_a0, sell_a0, &m));
        assert!(!align_roles(sell_a0, sell_a1, &m));
        assert!(!align_roles(RoleKey::new("en", "buy.01", "A0"), sell_a0, &m));
    }

    #[test]
    fn arity_is_checked() {
        let err = PredicateRoleMatrix::read("en\tsell.01\tA0\n".as_bytes(), Path::new("m.tsv")).unwrap_err();
        assert!(matches!(
            err,
            ResourceError::Arity {
                expected: 4,
                found: 3,
                ..
            }
        ));
    }

    #[test]
    fn duplicate_matrix_key_rejected() {
        let text = "en\tsell.01\tA0\tx\nen\tsell.01\tA0\ty\n";
        assert!(PredicateRoleMatrix::read(text.as_bytes(), Path::new("m.tsv")).is_err());
    }
}
