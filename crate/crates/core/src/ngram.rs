//! Per-rating n-gram tables and the class-exclusive / cross-class shared
//! lists derived from them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::tokenizer::Rating;

/// An ordered tuple of one to three stems.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NgramKey(Vec<String>);

impl NgramKey {
    pub fn new<I, S>(terms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        NgramKey(terms.into_iter().map(Into::into).collect())
    }

    pub fn terms(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Terms joined by single spaces.
    pub fn joined(&self) -> String {
        self.0.join(" ")
    }
}

impl fmt::Display for NgramKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.joined())
    }
}

fn check_gram_size(n: usize) -> Result<()> {
    if (1..=3).contains(&n) {
        Ok(())
    } else {
        Err(Error::Config(format!("gram size {n} outside 1..=3")))
    }
}

/// Sliding windows of width `n` over one review's terms.
pub fn extract_ngrams<S: AsRef<str>>(terms: &[S], n: usize) -> Vec<NgramKey> {
    if n == 0 || terms.len() < n {
        return Vec::new();
    }
    terms
        .windows(n)
        .map(|w| NgramKey::new(w.iter().map(|t| t.as_ref().to_string())))
        .collect()
}

/// Counts of every n-gram of one width, split by rating class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NgramTable {
    n: usize,
    classes: BTreeSet<Rating>,
    counts: BTreeMap<Rating, HashMap<NgramKey, u64>>,
}

impl NgramTable {
    pub fn new(n: usize, classes: BTreeSet<Rating>) -> Result<Self> {
        check_gram_size(n)?;
        Ok(NgramTable {
            n,
            classes,
            counts: BTreeMap::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &BTreeSet<Rating> {
        &self.classes
    }

    pub fn is_empty(&self) -> bool {
        self.counts.values().all(HashMap::is_empty)
    }

    pub fn accumulate(&mut self, class: Rating, keys: impl IntoIterator<Item = NgramKey>) -> Result<()> {
        if !self.classes.contains(&class) {
            return Err(Error::UnknownClass(class.value()));
        }
        let slot = self.counts.entry(class).or_default();
        for key in keys {
            if key.len() != self.n {
                return Err(Error::GramSizeMismatch {
                    left: self.n,
                    right: key.len(),
                });
            }
            *slot.entry(key).or_insert(0) += 1;
        }
        Ok(())
    }

    pub fn count(&self, class: Rating, key: &NgramKey) -> u64 {
        self.counts
            .get(&class)
            .and_then(|m| m.get(key))
            .copied()
            .unwrap_or(0)
    }

    pub fn class_counts(&self, class: Rating) -> Option<&HashMap<NgramKey, u64>> {
        self.counts.get(&class)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().flat_map(|m| m.values()).sum()
    }

    /// One class's entries, count descending then lexicographic.
    pub fn sorted(&self, class: Rating) -> Vec<(NgramKey, u64)> {
        let entries = self
            .counts
            .get(&class)
            .map(|m| m.iter().map(|(k, &c)| (k.clone(), c)).collect())
            .unwrap_or_default();
        order_entries(entries)
    }

    fn present_in(&self, class: Rating, key: &NgramKey) -> bool {
        self.counts.get(&class).is_some_and(|m| m.contains_key(key))
    }

    /// Pointwise sum; the class sets are united.
    pub fn merge(mut self, other: NgramTable) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::GramSizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        self.classes.extend(other.classes);
        for (class, map) in other.counts {
            let slot = self.counts.entry(class).or_default();
            for (key, c) in map {
                *slot.entry(key).or_insert(0) += c;
            }
        }
        Ok(self)
    }
}

pub fn merge_tables(a: NgramTable, b: NgramTable) -> Result<NgramTable> {
    a.merge(b)
}

fn order_entries(mut entries: Vec<(NgramKey, u64)>) -> Vec<(NgramKey, u64)> {
    let mut keyed: Vec<(String, NgramKey, u64)> =
        entries.drain(..).map(|(k, c)| (k.joined(), k, c)).collect();
    keyed.sort_by(|x, y| y.2.cmp(&x.2).then_with(|| x.0.cmp(&y.0)));
    keyed.into_iter().map(|(_, k, c)| (k, c)).collect()
}

/// Keys seen in `class` and in no other configured class.
pub fn exclusive_ngrams(table: &NgramTable, class: Rating) -> Vec<(NgramKey, u64)> {
    let Some(own) = table.counts.get(&class) else {
        return Vec::new();
    };
    let entries = own
        .iter()
        .filter(|(key, _)| {
            table
                .classes
                .iter()
                .filter(|&&c| c != class)
                .all(|&c| !table.present_in(c, key))
        })
        .map(|(k, &c)| (k.clone(), c))
        .collect();
    order_entries(entries)
}

/// Keys present in every class of `classes`, with their summed count.
pub fn shared_ngrams(table: &NgramTable, classes: &BTreeSet<Rating>) -> Result<Vec<(NgramKey, u64)>> {
    if classes.len() < 2 {
        return Err(Error::Config("shared n-grams need at least two classes".into()));
    }
    if let Some(c) = classes.iter().find(|c| !table.classes.contains(c)) {
        return Err(Error::UnknownClass(c.value()));
    }
    let mut iter = classes.iter();
    let first = *iter.next().expect("two or more classes");
    let rest: Vec<Rating> = iter.copied().collect();
    let entries = table
        .counts
        .get(&first)
        .map(|own| {
            own.iter()
                .filter(|(key, _)| rest.iter().all(|&c| table.present_in(c, key)))
                .map(|(key, &c)| {
                    let sum = c + rest.iter().map(|&r| table.count(r, key)).sum::<u64>();
                    (key.clone(), sum)
                })
                .collect()
        })
        .unwrap_or_default();
    Ok(order_entries(entries))
}

/// Exclusive lists for each class plus shared lists for chosen class sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinctiveLists {
    pub exclusive: BTreeMap<Rating, Vec<(NgramKey, u64)>>,
    pub shared: BTreeMap<Vec<Rating>, Vec<(NgramKey, u64)>>,
}

impl DistinctiveLists {
    pub fn compute(table: &NgramTable, shared_sets: &[BTreeSet<Rating>]) -> Result<Self> {
        let exclusive = table
            .classes
            .iter()
            .map(|&c| (c, exclusive_ngrams(table, c)))
            .collect();
        let mut shared = BTreeMap::new();
        for set in shared_sets {
            shared.insert(set.iter().copied().collect(), shared_ngrams(table, set)?);
        }
        Ok(DistinctiveLists { exclusive, shared })
    }

    /// Exclusive keys appear in exactly their own class; shared keys appear
    /// in every class of their set. Returns the first violation found.
    pub fn check(&self, table: &NgramTable) -> Result<()> {
        for (&class, list) in &self.exclusive {
            for (key, _) in list {
                let holders: Vec<Rating> = table
                    .classes
                    .iter()
                    .copied()
                    .filter(|&c| table.present_in(c, key))
                    .collect();
                if holders != [class] {
                    return Err(Error::Invariant(format!(
                        "exclusive key {key} of class {class} found in {holders:?}"
                    )));
                }
            }
        }
        for (set, list) in &self.shared {
            for (key, _) in list {
                if let Some(c) = set.iter().find(|&&c| !table.present_in(c, key)) {
                    return Err(Error::Invariant(format!("shared key {key} missing from class {c}")));
                }
            }
        }
        Ok(())
    }
}
