//! Seeded document subsets over a parallel two-language corpus.
//!
//! All sampling uses ChaCha8 seeded with `seed_from_u64(seed)` and the
//! Fisher–Yates shuffle of `rand` 0.8, drawing splits in order from one
//! generator, so subsets depend only on the corpus, the parameters and the
//! seed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::manifest::Corpus;
use crate::corpus::numeric_part;
use crate::error::HarnessError;

/// Document ids of one input set.
pub type DocSubset = BTreeSet<String>;

/// Translation pairs keyed by the numeric part of the document id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelPairs {
    pub languages: [String; 2],
    /// Sorted numeric ids.
    pub ids: Vec<String>,
}

impl ParallelPairs {
    pub fn from_corpus(corpus: &Corpus) -> Result<Self, HarnessError> {
        let langs = corpus.languages();
        let [a, b] = langs[..] else {
            return Err(HarnessError::Split(format!(
                "expected a corpus in two languages, found {}",
                if langs.is_empty() {
                    "none".to_string()
                } else {
                    langs.join(", ")
                }
            )));
        };
        let mut ids: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        for d in &corpus.docs {
            let num = numeric_part(&d.doc_id)
                .ok_or_else(|| HarnessError::Split(format!("document id `{}` has no numeric part", d.doc_id)))?;
            if !ids.entry(d.language.as_str()).or_default().insert(num) {
                return Err(HarnessError::Split(format!(
                    "two `{}` documents share number {num}",
                    d.language
                )));
            }
        }
        if ids[a] != ids[b] {
            return Err(HarnessError::Split(format!(
                "`{a}` and `{b}` documents are not parallel"
            )));
        }
        Ok(Self {
            languages: [a.to_string(), b.to_string()],
            ids: ids[a].iter().map(|s| s.to_string()).collect(),
        })
    }

    fn doc(&self, lang: usize, id: &str) -> String {
        format!("{}-{id}", self.languages[lang])
    }

    fn lang_index(&self, lang: &str) -> Result<usize, HarnessError> {
        self.languages
            .iter()
            .position(|l| l == lang)
            .ok_or_else(|| HarnessError::Split(format!("corpus has no `{lang}` documents")))
    }
}

/// `n` subsets, each holding half of the documents of each language and no
/// translation pair: the first language takes a random half of the pair
/// numbers, the second language the other half.
pub fn split_5050(pairs: &ParallelPairs, seed: u64, n: usize) -> Result<Vec<DocSubset>, HarnessError> {
    if n == 0 {
        return Err(HarnessError::Config("number of splits must be at least 1".into()));
    }
    let total = pairs.ids.len();
    if total == 0 || !total.is_multiple_of(2) {
        return Err(HarnessError::Split(format!(
            "50-50 splits need an even, non-zero number of parallel pairs, found {total}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n)
        .map(|_| {
            let mut ids = pairs.ids.clone();
            ids.shuffle(&mut rng);
            let (first, second) = ids.split_at(total / 2);
            first
                .iter()
                .map(|id| pairs.doc(0, id))
                .chain(second.iter().map(|id| pairs.doc(1, id)))
                .collect()
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepVariant {
    /// x% Spanish plus the complementary English documents, one corpus half
    /// in total, no translation pairs.
    Mix90,
    /// All English plus x% of the Spanish documents.
    AllEnPlusEs,
    /// All Spanish plus x% of the English documents.
    AllEsPlusEn,
}

impl SweepVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepVariant::Mix90 => "mix90",
            SweepVariant::AllEnPlusEs => "all-en-plus-es",
            SweepVariant::AllEsPlusEn => "all-es-plus-en",
        }
    }
}

impl fmt::Display for SweepVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "mix90" => Ok(SweepVariant::Mix90),
            "all-en-plus-es" => Ok(SweepVariant::AllEnPlusEs),
            "all-es-plus-en" => Ok(SweepVariant::AllEsPlusEn),
            other => Err(format!(
                "unknown sweep variant `{other}` (mix90|all-en-plus-es|all-es-plus-en)"
            )),
        }
    }
}

/// `floor(x% × n)`, at least 1 when `x > 0`.
pub fn percent_count(percent: u32, n: usize) -> usize {
    if percent == 0 {
        0
    } else {
        (percent as usize * n / 100).max(1)
    }
}

/// 5, 10, …, 95.
pub fn default_percentages() -> Vec<u32> {
    (1..=19).map(|k| k * 5).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepPoint {
    pub percent: u32,
    pub sets: Vec<DocSubset>,
}

/// Input sets for each percentage point of a sweep.
pub fn sweep_sets(
    pairs: &ParallelPairs,
    variant: SweepVariant,
    percentages: &[u32],
    sets_per_point: usize,
    seed: u64,
) -> Result<Vec<SweepPoint>, HarnessError> {
    if let Some(p) = percentages.iter().find(|p| **p > 100) {
        return Err(HarnessError::Config(format!("percentage {p} out of range")));
    }
    if sets_per_point == 0 {
        return Err(HarnessError::Config("sets per point must be at least 1".into()));
    }
    let en = pairs.lang_index("en")?;
    let es = pairs.lang_index("es")?;
    let n = pairs.ids.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut points = Vec::with_capacity(percentages.len());
    for &percent in percentages {
        let k = percent_count(percent, n);
        let sets = (0..sets_per_point)
            .map(|_| {
                let mut ids = pairs.ids.clone();
                ids.shuffle(&mut rng);
                let (picked, rest) = ids.split_at(k);
                let docs: Vec<String> = match variant {
                    SweepVariant::Mix90 => picked
                        .iter()
                        .map(|id| pairs.doc(es, id))
                        .chain(rest.iter().map(|id| pairs.doc(en, id)))
                        .collect(),
                    SweepVariant::AllEnPlusEs => pairs
                        .ids
                        .iter()
                        .map(|id| pairs.doc(en, id))
                        .chain(picked.iter().map(|id| pairs.doc(es, id)))
                        .collect(),
                    SweepVariant::AllEsPlusEn => pairs
                        .ids
                        .iter()
                        .map(|id| pairs.doc(es, id))
                        .chain(picked.iter().map(|id| pairs.doc(en, id)))
                        .collect(),
                };
                docs.into_iter().collect()
            })
            .collect();
        points.push(SweepPoint { percent, sets });
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(n: usize) -> ParallelPairs {
        ParallelPairs {
            languages: ["en".into(), "es".into()],
            ids: (1..=n).map(|i| format!("{:03}", i)).collect(),
        }
    }

    fn count(set: &DocSubset, lang: &str) -> usize {
        set.iter().filter(|d| d.starts_with(lang)).count()
    }

    #[test]
    fn halves_without_translation_pairs() {
        let splits = split_5050(&pairs(90), 1, 20).unwrap();
        for s in &splits {
            assert_eq!((count(s, "en-"), count(s, "es-")), (45, 45));
            let nums: BTreeSet<&str> = s.iter().map(|d| &d[3..]).collect();
            assert_eq!(nums.len(), 90);
        }
    }

    #[test]
    fn two_by_two_has_two_possible_subsets() {
        let s = split_5050(&pairs(2), 3, 1).unwrap();
        let valid: [DocSubset; 2] = [
            ["en-001".to_string(), "es-002".to_string()].into(),
            ["en-002".to_string(), "es-001".to_string()].into(),
        ];
        assert!(valid.contains(&s[0]));
    }

    #[test]
    fn odd_pair_count_rejected() {
        assert!(split_5050(&pairs(3), 1, 1).is_err());
    }

    #[test]
    fn seeded_and_reproducible() {
        assert_eq!(
            split_5050(&pairs(10), 9, 5).unwrap(),
            split_5050(&pairs(10), 9, 5).unwrap()
        );
        assert_ne!(
            split_5050(&pairs(10), 9, 5).unwrap(),
            split_5050(&pairs(10), 10, 5).unwrap()
        );
    }

    #[test]
    fn floor_rounding() {
        assert_eq!(percent_count(95, 90), 85);
        assert_eq!(percent_count(10, 90), 9);
        assert_eq!(percent_count(5, 4), 1);
        assert_eq!(percent_count(0, 90), 0);
    }

    #[test]
    fn sweep_sizes() {
        let pts = sweep_sets(&pairs(90), SweepVariant::AllEnPlusEs, &[95], 3, 1).unwrap();
        for s in &pts[0].sets {
            assert_eq!((count(s, "en-"), count(s, "es-")), (90, 85));
        }
        let pts = sweep_sets(&pairs(90), SweepVariant::Mix90, &[30], 3, 1).unwrap();
        for s in &pts[0].sets {
            assert_eq!((count(s, "en-"), count(s, "es-")), (63, 27));
            let nums: BTreeSet<&str> = s.iter().map(|d| &d[3..]).collect();
            assert_eq!(nums.len(), 90);
        }
        assert_eq!(default_percentages().len(), 19);
    }
}
