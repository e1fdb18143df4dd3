//! The Du Bois table: a (d−1)×(d+1) grid of vanishing states for the
//! invariants b^{p,q} = dim H^q(Ω̲^p) of an isolated singularity of
//! dimension d. Rows are indexed by q = 1..d−1, columns by p = 0..d.
//!
//! Every emitted table satisfies two zero patterns: entries with p+q > d
//! vanish, and the whole row vanishes for q ≥ d (the latter never intersects
//! the grid, which stops at q = d−1).

use serde::Serialize;

/// State of one table cell. `Value(0)` is normalised to `Zero` at
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryState {
    Zero,
    NonZero,
    Value(u64),
    Unknown,
}

/// One cell plus the name of the rule that decided it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingEntry {
    pub state: EntryState,
    pub rule: &'static str,
}

impl VanishingEntry {
    pub fn new(state: EntryState, rule: &'static str) -> Self {
        let state = match state {
            EntryState::Value(0) => EntryState::Zero,
            s => s,
        };
        VanishingEntry { state, rule }
    }

    pub fn zero(rule: &'static str) -> Self {
        VanishingEntry {
            state: EntryState::Zero,
            rule,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.state == EntryState::Zero
    }
}

impl Serialize for VanishingEntry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(None)?;
        match &self.state {
            EntryState::Zero => map.serialize_entry("state", "zero")?,
            EntryState::NonZero => map.serialize_entry("state", "nonzero")?,
            EntryState::Unknown => map.serialize_entry("state", "unknown")?,
            EntryState::Value(k) => {
                map.serialize_entry("state", "value")?;
                map.serialize_entry("value", k)?;
            }
        }
        map.serialize_entry("rule", self.rule)?;
        map.end()
    }
}

/// The (d−1)×(d+1) grid. `entries[q-1][p]` is the cell for b^{p,q}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DuBoisTable {
    pub d: u32,
    pub entries: Vec<Vec<VanishingEntry>>,
}

impl DuBoisTable {
    /// Empty table (used for smooth inputs and curves, where the grid has no
    /// rows).
    pub fn empty(d: u32) -> Self {
        DuBoisTable {
            d,
            entries: Vec::new(),
        }
    }

    /// Build a table by calling `cell(p, q)` on every grid position, then
    /// overriding with the forced zero patterns.
    pub fn build(d: u32, mut cell: impl FnMut(u32, u32) -> VanishingEntry) -> Self {
        let mut entries = Vec::new();
        if d >= 2 {
            for q in 1..d {
                let mut row = Vec::new();
                for p in 0..=d {
                    let e = if p + q > d {
                        VanishingEntry::zero("steenbrink-vanishing")
                    } else {
                        cell(p, q)
                    };
                    row.push(e);
                }
                entries.push(row);
            }
        }
        DuBoisTable { d, entries }
    }

    pub fn get(&self, p: u32, q: u32) -> Option<&VanishingEntry> {
        self.entries
            .get((q as usize).checked_sub(1)?)?
            .get(p as usize)
    }

    /// Check the forced zero patterns: p+q > d implies Zero; for surfaces
    /// only (0,1) and (1,1) may be nonzero.
    pub fn zero_pattern_ok(&self) -> bool {
        for (qi, row) in self.entries.iter().enumerate() {
            let q = qi as u32 + 1;
            for (p, e) in row.iter().enumerate() {
                let p = p as u32;
                if p + q > self.d && !e.is_zero() {
                    return false;
                }
                if self.d == 2 && !(p == 0 || p == 1) && !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}
