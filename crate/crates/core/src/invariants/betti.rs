use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

/// Graded Betti numbers `beta_{i,j}`: homological degree `i`, internal
/// degree `j`. Zero entries are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<BettiEntry>", into = "Vec<BettiEntry>")]
pub struct BettiTable {
    entries: BTreeMap<(u32, u32), u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: u32,
    pub j: u32,
    pub value: u64,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, i: u32, j: u32, value: u64) {
        if value == 0 {
            return;
        }
        *self.entries.entry((i, j)).or_insert(0) += value;
    }

    pub fn set(&mut self, i: u32, j: u32, value: u64) {
        if value == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), value);
        }
    }

    pub fn get(&self, i: u32, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries in increasing `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = BettiEntry> + '_ {
        self.entries
            .iter()
            .map(|(&(i, j), &value)| BettiEntry { i, j, value })
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest homological degree with a nonzero entry.
    pub fn pdim(&self) -> Option<u32> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// `beta_i = sum_j beta_{i,j}`.
    pub fn total(&self, i: u32) -> u64 {
        self.entries
            .range((i, 0)..=(i, u32::MAX))
            .map(|(_, v)| v)
            .sum()
    }

    /// Entries with `i <= max_i`.
    pub fn truncate(&self, max_i: u32) -> BettiTable {
        BettiTable {
            entries: self
                .entries
                .iter()
                .filter(|(&(i, _), _)| i <= max_i)
                .map(|(&k, &v)| (k, v))
                .collect(),
        }
    }

    /// Entries in the displayed window: columns `i <= max_i`, rows
    /// `j - i <= max_row`.
    pub fn window(&self, max_i: u32, max_row: u32) -> BettiTable {
        BettiTable {
            entries: self
                .entries
                .iter()
                .filter(|(&(i, j), _)| i <= max_i && j >= i && j - i <= max_row)
                .map(|(&k, &v)| (k, v))
                .collect(),
        }
    }

    /// Macaulay2 layout: column `i`, row `r` shows `beta_{i,i+r}`, with `.`
    /// for zero and a `total:` line on top.
    pub fn render(&self) -> String {
        let max_i = self.pdim().unwrap_or(0);
        let min_row = self
            .entries
            .keys()
            .map(|&(i, j)| j as i64 - i as i64)
            .min()
            .unwrap_or(0);
        let max_row = self
            .entries
            .keys()
            .map(|&(i, j)| j as i64 - i as i64)
            .max()
            .unwrap_or(0);
        self.render_rows(max_i, min_row, max_row, true)
    }

    /// The fixed grid `0..=max_i` by rows `0..=max_row`, without totals.
    pub fn render_window(&self, max_i: u32, max_row: u32) -> String {
        self.render_rows(max_i, 0, max_row as i64, false)
    }

    fn render_rows(&self, max_i: u32, min_row: i64, max_row: i64, totals: bool) -> String {
        let cols = max_i as usize + 1;
        let cell = |i: u32, r: i64| -> String {
            let j = i as i64 + r;
            if j < 0 {
                return ".".into();
            }
            match self.get(i, j as u32) {
                0 => ".".into(),
                v => v.to_string(),
            }
        };
        let mut lines: Vec<(String, Vec<String>)> = Vec::new();
        lines.push((String::new(), (0..cols).map(|i| i.to_string()).collect()));
        if totals {
            lines.push((
                "total:".into(),
                (0..cols as u32)
                    .map(|i| self.total(i).to_string())
                    .collect(),
            ));
        }
        for r in min_row..=max_row {
            lines.push((
                format!("{r}:"),
                (0..cols as u32).map(|i| cell(i, r)).collect(),
            ));
        }
        let label_w = lines.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..cols)
            .map(|c| lines.iter().map(|(_, row)| row[c].len()).max().unwrap_or(1))
            .collect();
        let mut out = String::new();
        for (label, row) in &lines {
            let _ = write!(out, "{label:>label_w$}");
            for (c, s) in row.iter().enumerate() {
                let w = widths[c];
                let _ = write!(out, " {s:>w$}");
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl From<Vec<BettiEntry>> for BettiTable {
    fn from(v: Vec<BettiEntry>) -> Self {
        let mut t = BettiTable::new();
        for e in v {
            t.add(e.i, e.j, e.value);
        }
        t
    }
}

impl From<BettiTable> for Vec<BettiEntry> {
    fn from(t: BettiTable) -> Self {
        t.entries().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn twisted_cubic() -> BettiTable {
        let mut t = BettiTable::new();
        t.add(0, 0, 1);
        t.add(1, 2, 3);
        t.add(2, 3, 2);
        t
    }

    #[test]
    fn render_layout() {
        let t = twisted_cubic();
        assert_eq!(
            t.render(),
            "       0 1 2\n\
             total: 1 3 2\n    \
             0: 1 . .\n    \
             1: . 3 2\n"
        );
    }

    #[test]
    fn totals_and_windows() {
        let t = twisted_cubic();
        assert_eq!(t.total(1), 3);
        assert_eq!(t.pdim(), Some(2));
        assert_eq!(t.window(1, 1).entries().count(), 2);
        assert_eq!(t.render_window(2, 0), "   0 1 2\n0: 1 . .\n");
    }

    #[test]
    fn zero_entries_are_not_stored() {
        let mut t = BettiTable::new();
        t.add(1, 1, 0);
        t.set(2, 2, 5);
        t.set(2, 2, 0);
        assert!(t.is_empty());
    }

    #[test]
    fn json_round_trip() {
        let t = twisted_cubic();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.starts_with("[{\"i\":0,\"j\":0,\"value\":1}"));
        let back: BettiTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}
