//! Value-frequency histograms and their JSON form.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::field::FieldSpec;

/// Largest integer a JSON consumer using doubles can hold exactly.
pub const MAX_SAFE_JSON_INT: u128 = 1 << 53;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumKind {
    Differential,
    Boomerang,
}

impl fmt::Display for SpectrumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectrumKind::Differential => "differential",
            SpectrumKind::Boomerang => "boomerang",
        })
    }
}

/// Map from a solution count `i` to the number of right-hand sides `b`
/// attaining it. Zero frequencies are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    kind: SpectrumKind,
    entries: BTreeMap<u128, u128>,
}

impl Spectrum {
    pub fn new(kind: SpectrumKind) -> Self {
        Spectrum { kind, entries: BTreeMap::new() }
    }

    pub fn from_entries<I: IntoIterator<Item = (u128, u128)>>(kind: SpectrumKind, entries: I) -> Self {
        let mut s = Spectrum::new(kind);
        for (value, freq) in entries {
            s.add(value, freq);
        }
        s
    }

    /// Histogram of a per-b count vector.
    pub fn from_counts<'a, I: IntoIterator<Item = &'a u64>>(kind: SpectrumKind, counts: I) -> Self {
        let mut s = Spectrum::new(kind);
        for &c in counts {
            s.add(c as u128, 1);
        }
        s
    }

    pub fn add(&mut self, value: u128, freq: u128) {
        if freq > 0 {
            *self.entries.entry(value).or_insert(0) += freq;
        }
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn entries(&self) -> &BTreeMap<u128, u128> {
        &self.entries
    }

    pub fn frequency(&self, value: u128) -> u128 {
        self.entries.get(&value).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.entries.values().sum()
    }

    pub fn weighted_total(&self) -> u128 {
        self.entries.iter().map(|(v, f)| v * f).sum()
    }

    pub fn max_value(&self) -> Option<u128> {
        self.entries.keys().next_back().copied()
    }

    /// Values whose frequency differs, as `(value, ours, theirs)`.
    pub fn diff(&self, other: &Spectrum) -> Vec<(u128, u128, u128)> {
        let mut keys: Vec<u128> = self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .filter_map(|k| {
                let (a, b) = (self.frequency(k), other.frequency(k));
                (a != b).then_some((k, a, b))
            })
            .collect()
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, c)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}:{c}")?;
        }
        write!(f, "}}")
    }
}

/// Maximum count with nonzero frequency; 0 for an empty spectrum.
pub fn differential_uniformity(s: &Spectrum) -> u128 {
    s.max_value().unwrap_or(0)
}

/// Differential: sum of frequencies and sum of value * frequency both equal
/// p^n. Boomerang: frequencies sum to p^n - 1.
pub fn verify_identities(s: &Spectrum, fs: &FieldSpec) -> bool {
    let q = fs.order() as u128;
    match s.kind {
        SpectrumKind::Differential => s.total() == q && s.weighted_total() == q,
        SpectrumKind::Boomerang => s.total() == q - 1,
    }
}

/// JSON number when it fits a double exactly, decimal string otherwise.
pub struct JsonCount(pub u128);

/// `serialize_with` adapter for [`JsonCount`].
pub fn serialize_count<S: Serializer>(value: &u128, serializer: S) -> Result<S::Ok, S::Error> {
    JsonCount(*value).serialize(serializer)
}

impl Serialize for JsonCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0 > MAX_SAFE_JSON_INT {
            serializer.serialize_str(&self.0.to_string())
        } else {
            serializer.serialize_u64(self.0 as u64)
        }
    }
}

pub(crate) struct JsonEntries<'a>(pub &'a BTreeMap<u128, u128>);

impl Serialize for JsonEntries<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (v, f) in self.0 {
            map.serialize_entry(&v.to_string(), &JsonCount(*f))?;
        }
        map.end()
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Spectrum", 2)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("entries", &JsonEntries(&self.entries))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CountRepr {
    Num(u64),
    Str(String),
}

impl CountRepr {
    fn value<E: de::Error>(self) -> Result<u128, E> {
        match self {
            CountRepr::Num(n) => Ok(n as u128),
            CountRepr::Str(s) => s.parse().map_err(|_| E::custom(format!("bad count {s:?}"))),
        }
    }
}

struct EntriesVisitor;

impl<'de> Visitor<'de> for EntriesVisitor {
    type Value = BTreeMap<u128, u128>;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a map from decimal counts to frequencies")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
        let mut out = BTreeMap::new();
        while let Some((k, v)) = access.next_entry::<String, CountRepr>()? {
            let key: u128 = k.parse().map_err(|_| de::Error::custom(format!("bad key {k:?}")))?;
            out.insert(key, v.value()?);
        }
        Ok(out)
    }
}

struct Entries(BTreeMap<u128, u128>);

impl<'de> Deserialize<'de> for Entries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_map(EntriesVisitor).map(Entries)
    }
}

impl<'de> Deserialize<'de> for Spectrum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            kind: SpectrumKind,
            entries: Entries,
        }
        let raw = Raw::deserialize(d)?;
        Ok(Spectrum::from_entries(raw.kind, raw.entries.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x24_over_f625() -> Spectrum {
        Spectrum::from_entries(SpectrumKind::Differential, [(0, 286), (1, 74), (2, 264), (23, 1)])
    }

    #[test]
    fn uniformity_is_max_key() {
        let s = Spectrum::from_entries(SpectrumKind::Differential, [(0, 8), (2, 8)]);
        assert_eq!(differential_uniformity(&s), 2);
        assert_eq!(differential_uniformity(&x24_over_f625()), 23);
        let s38 =
            Spectrum::from_entries(SpectrumKind::Differential, [(0, 10978), (1, 2), (2, 120), (4, 3540), (239, 1)]);
        assert_eq!(differential_uniformity(&s38), 239);
    }

    #[test]
    fn identities() {
        let f625 = FieldSpec::new(5, 4).unwrap();
        assert!(verify_identities(&x24_over_f625(), &f625));
        let flat = Spectrum::from_entries(SpectrumKind::Differential, [(0, 625)]);
        assert!(!verify_identities(&flat, &f625));
        let f6561 = FieldSpec::new(3, 8).unwrap();
        let bs = Spectrum::from_entries(SpectrumKind::Boomerang, [(0, 3440), (2, 3120)]);
        assert!(verify_identities(&bs, &f6561));
    }

    #[test]
    fn json_keys_sorted_numerically() {
        let s = Spectrum::from_entries(SpectrumKind::Boomerang, [(94, 48), (4, 552), (0, 1800), (10, 1)]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"kind":"boomerang","entries":{"0":1800,"4":552,"10":1,"94":48}}"#);
    }

    #[test]
    fn large_counts_become_strings() {
        let big = MAX_SAFE_JSON_INT + 1;
        let s = Spectrum::from_entries(SpectrumKind::Differential, [(1, big), (2, MAX_SAFE_JSON_INT)]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, format!(r#"{{"kind":"differential","entries":{{"1":"{big}","2":{MAX_SAFE_JSON_INT}}}}}"#));
        let back: Spectrum = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn zero_frequencies_dropped() {
        let s = Spectrum::from_entries(SpectrumKind::Differential, [(3, 0), (1, 2)]);
        assert_eq!(s.entries().len(), 1);
    }

    proptest! {
        #[test]
        fn json_round_trip(entries in proptest::collection::btree_map(0u128..1u128 << 70, 1u128..1u128 << 70, 0..12)) {
            let s = Spectrum::from_entries(SpectrumKind::Differential, entries);
            let back: Spectrum = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
            prop_assert_eq!(back, s);
        }
    }
}
