//! Durable sweep progress: which rank ranges are finished, how many
//! representatives they contained, and any counterexample ranks.
//!
//! The on-disk format is line-oriented text and is a compatibility
//! contract. A header `icosoku-sweep v1 total <total>` is followed by one
//! record per completed range:
//!
//! ```text
//! range <lo> <hi> processed <n> counterexamples <comma-list-or-none>
//! ```
//!
//! Ranges are half-open, kept sorted and disjoint, and adjacent ranges are
//! merged on insert. Saves go through a temporary file and an atomic rename
//! so a killed sweep never leaves a torn checkpoint.

use std::fs;
use std::io::Write;
use std::path::Path;
use thiserror::Error;

/// A completed half-open rank range: `processed` counts the C5
/// representatives decided inside it, `counterexamples` the ranks (if any)
/// that admitted no ADTS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeRecord {
    pub lo: u64,
    pub hi: u64,
    pub processed: u64,
    pub counterexamples: Vec<u64>,
}

#[derive(Debug, Error)]
pub enum CheckpointError {
    #[error("checkpoint io: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad checkpoint header: {0:?}")]
    BadHeader(String),
    #[error("checkpoint total is {found}, expected {expected}")]
    TotalMismatch { found: u64, expected: u64 },
    #[error("bad checkpoint record at line {0}")]
    BadRecord(usize),
    #[error("checkpoint ranges overlap")]
    Overlap,
}

const HEADER_PREFIX: &str = "icosoku-sweep v1 total ";

/// In-memory checkpoint state; all mutation goes through [`insert`].
///
/// [`insert`]: SweepCheckpoint::insert
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepCheckpoint {
    total: u64,
    records: Vec<RangeRecord>,
}

impl SweepCheckpoint {
    pub fn new(total: u64) -> SweepCheckpoint {
        SweepCheckpoint { total, records: Vec::new() }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn records(&self) -> &[RangeRecord] {
        &self.records
    }

    /// Parses the exact on-disk format.
    pub fn parse(text: &str) -> Result<SweepCheckpoint, CheckpointError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| CheckpointError::BadHeader(String::new()))?;
        let total = header
            .strip_prefix(HEADER_PREFIX)
            .and_then(|t| t.parse::<u64>().ok())
            .ok_or_else(|| CheckpointError::BadHeader(header.to_string()))?;
        let mut checkpoint = SweepCheckpoint::new(total);
        for (idx, line) in lines {
            if line.is_empty() {
                return Err(CheckpointError::BadRecord(idx + 1));
            }
            let record = parse_record(line).ok_or(CheckpointError::BadRecord(idx + 1))?;
            checkpoint.insert(record)?;
        }
        Ok(checkpoint)
    }

    /// Renders the exact on-disk format, trailing newline included.
    pub fn to_text(&self) -> String {
        let mut out = format!("{HEADER_PREFIX}{}\n", self.total);
        for r in &self.records {
            let list = if r.counterexamples.is_empty() {
                "none".to_string()
            } else {
                r.counterexamples
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            };
            out.push_str(&format!(
                "range {} {} processed {} counterexamples {}\n",
                r.lo, r.hi, r.processed, list
            ));
        }
        out
    }

    pub fn load(path: &Path) -> Result<SweepCheckpoint, CheckpointError> {
        Self::parse(&fs::read_to_string(path)?)
    }

    /// Loads `path` if it exists (its total must match), otherwise starts
    /// an empty checkpoint with `expected_total`.
    pub fn load_or_new(path: &Path, expected_total: u64) -> Result<SweepCheckpoint, CheckpointError> {
        if !path.exists() {
            return Ok(SweepCheckpoint::new(expected_total));
        }
        let checkpoint = Self::load(path)?;
        if checkpoint.total != expected_total {
            return Err(CheckpointError::TotalMismatch {
                found: checkpoint.total,
                expected: expected_total,
            });
        }
        Ok(checkpoint)
    }

    /// Atomic save: write a sibling temporary file, fsync, rename over.
    pub fn save(&self, path: &Path) -> Result<(), CheckpointError> {
        let mut tmp = path.as_os_str().to_os_string();
        tmp.push(".tmp");
        let tmp = std::path::PathBuf::from(tmp);
        {
            let mut file = fs::File::create(&tmp)?;
            file.write_all(self.to_text().as_bytes())?;
            file.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Adds a completed range, merging with adjacent ranges. Empty ranges
    /// are ignored; overlap with existing coverage is an error.
    pub fn insert(&mut self, mut record: RangeRecord) -> Result<(), CheckpointError> {
        if record.lo == record.hi {
            return Ok(());
        }
        if record.lo > record.hi || record.hi > self.total {
            return Err(CheckpointError::Overlap);
        }
        record.counterexamples.sort_unstable();
        let pos = self.records.partition_point(|r| r.lo < record.lo);
        if pos > 0 && self.records[pos - 1].hi > record.lo {
            return Err(CheckpointError::Overlap);
        }
        if pos < self.records.len() && record.hi > self.records[pos].lo {
            return Err(CheckpointError::Overlap);
        }

        let merges_prev = pos > 0 && self.records[pos - 1].hi == record.lo;
        let merges_next = pos < self.records.len() && record.hi == self.records[pos].lo;
        match (merges_prev, merges_next) {
            (true, true) => {
                let next = self.records.remove(pos);
                let prev = &mut self.records[pos - 1];
                prev.hi = next.hi;
                prev.processed += record.processed + next.processed;
                prev.counterexamples.extend(record.counterexamples);
                prev.counterexamples.extend(next.counterexamples);
                prev.counterexamples.sort_unstable();
            }
            (true, false) => {
                let prev = &mut self.records[pos - 1];
                prev.hi = record.hi;
                prev.processed += record.processed;
                prev.counterexamples.extend(record.counterexamples);
                prev.counterexamples.sort_unstable();
            }
            (false, true) => {
                let next = &mut self.records[pos];
                next.lo = record.lo;
                next.processed += record.processed;
                next.counterexamples.extend(record.counterexamples);
                next.counterexamples.sort_unstable();
            }
            (false, false) => self.records.insert(pos, record),
        }
        Ok(())
    }

    /// Uncovered sub-intervals of `lo..hi`, in order.
    pub fn gaps_in(&self, lo: u64, hi: u64) -> Vec<(u64, u64)> {
        let mut gaps = Vec::new();
        let mut cursor = lo;
        for r in &self.records {
            if r.hi <= lo {
                continue;
            }
            if r.lo >= hi {
                break;
            }
            if r.lo > cursor {
                gaps.push((cursor, r.lo.min(hi)));
            }
            cursor = cursor.max(r.hi);
            if cursor >= hi {
                break;
            }
        }
        if cursor < hi {
            gaps.push((cursor, hi));
        }
        gaps
    }

    pub fn is_covered(&self, lo: u64, hi: u64) -> bool {
        self.gaps_in(lo, hi).is_empty()
    }

    /// Representatives decided inside `lo..hi`. Ranges partially
    /// overlapping the query are recounted by enumeration.
    pub fn processed_in(&self, lo: u64, hi: u64) -> u64 {
        let mut processed = 0;
        for r in &self.records {
            if r.hi <= lo || r.lo >= hi {
                continue;
            }
            if lo <= r.lo && r.hi <= hi {
                processed += r.processed;
            } else {
                processed += super::rank::count_representatives_in(r.lo.max(lo), r.hi.min(hi));
            }
        }
        processed
    }

    /// Counterexample ranks recorded inside `lo..hi`, ascending.
    pub fn counterexamples_in(&self, lo: u64, hi: u64) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .records
            .iter()
            .flat_map(|r| r.counterexamples.iter().copied())
            .filter(|&r| lo <= r && r < hi)
            .collect();
        out.sort_unstable();
        out
    }
}

fn parse_record(line: &str) -> Option<RangeRecord> {
    let rest = line.strip_prefix("range ")?;
    let (lo, rest) = rest.split_once(' ')?;
    let (hi, rest) = rest.split_once(' ')?;
    let rest = rest.strip_prefix("processed ")?;
    let (processed, rest) = rest.split_once(' ')?;
    let list = rest.strip_prefix("counterexamples ")?;
    let lo = lo.parse().ok()?;
    let hi = hi.parse().ok()?;
    let processed: u64 = processed.parse().ok()?;
    let counterexamples = if list == "none" {
        Vec::new()
    } else {
        list.split(',')
            .map(|t| t.parse::<u64>().ok())
            .collect::<Option<Vec<u64>>>()?
    };
    if lo >= hi || processed > hi - lo {
        return None;
    }
    if counterexamples.iter().any(|&r| r < lo || r >= hi) {
        return None;
    }
    Some(RangeRecord { lo, hi, processed, counterexamples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::rank::ARRANGEMENT_COUNT;

    fn record(lo: u64, hi: u64, processed: u64, cx: &[u64]) -> RangeRecord {
        RangeRecord { lo, hi, processed, counterexamples: cx.to_vec() }
    }

    #[test]
    fn text_roundtrip_is_exact() {
        let mut c = SweepCheckpoint::new(ARRANGEMENT_COUNT);
        c.insert(record(0, 5_000, 5_000, &[])).unwrap();
        c.insert(record(7_000, 9_000, 412, &[8_101, 7_003])).unwrap();
        let text = c.to_text();
        assert_eq!(
            text,
            "icosoku-sweep v1 total 39916800\n\
             range 0 5000 processed 5000 counterexamples none\n\
             range 7000 9000 processed 412 counterexamples 7003,8101\n"
        );
        assert_eq!(SweepCheckpoint::parse(&text).unwrap(), c);
    }

    #[test]
    fn adjacent_ranges_merge() {
        let mut c = SweepCheckpoint::new(100);
        c.insert(record(0, 10, 2, &[3])).unwrap();
        c.insert(record(20, 30, 2, &[])).unwrap();
        c.insert(record(10, 20, 2, &[12])).unwrap();
        assert_eq!(c.records(), &[record(0, 30, 6, &[3, 12])]);
    }

    #[test]
    fn overlap_is_rejected() {
        let mut c = SweepCheckpoint::new(100);
        c.insert(record(0, 10, 10, &[])).unwrap();
        assert!(matches!(c.insert(record(5, 15, 10, &[])), Err(CheckpointError::Overlap)));
        assert!(matches!(c.insert(record(90, 101, 10, &[])), Err(CheckpointError::Overlap)));
    }

    #[test]
    fn empty_insert_is_a_noop() {
        let mut c = SweepCheckpoint::new(100);
        c.insert(record(5, 5, 0, &[])).unwrap();
        assert!(c.records().is_empty());
    }

    #[test]
    fn gaps_are_computed() {
        let mut c = SweepCheckpoint::new(100);
        c.insert(record(10, 20, 5, &[])).unwrap();
        c.insert(record(40, 50, 5, &[])).unwrap();
        assert_eq!(c.gaps_in(0, 100), vec![(0, 10), (20, 40), (50, 100)]);
        assert_eq!(c.gaps_in(12, 18), vec![]);
        assert_eq!(c.gaps_in(15, 45), vec![(20, 40)]);
        assert!(c.is_covered(10, 20));
        assert!(!c.is_covered(10, 21));
    }

    #[test]
    fn totals_and_counterexamples_are_queryable() {
        let mut c = SweepCheckpoint::new(ARRANGEMENT_COUNT);
        c.insert(record(0, 1_000, 1_000, &[17])).unwrap();
        c.insert(record(2_000, 3_000, 1_000, &[2_500, 2_017])).unwrap();
        assert_eq!(c.processed_in(0, 3_000), 2_000);
        // Partial overlap falls back to recounting; ranks below 10! are all
        // representatives, so the recount equals the interval length.
        assert_eq!(c.processed_in(500, 2_500), 1_000);
        assert_eq!(c.counterexamples_in(0, 3_000), vec![17, 2_017, 2_500]);
        assert_eq!(c.counterexamples_in(2_400, 3_000), vec![2_500]);
    }

    #[test]
    fn save_and_load_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sweep.checkpoint");
        let mut c = SweepCheckpoint::new(ARRANGEMENT_COUNT);
        c.insert(record(0, 64, 64, &[])).unwrap();
        c.save(&path).unwrap();
        assert_eq!(SweepCheckpoint::load(&path).unwrap(), c);
        assert_eq!(
            SweepCheckpoint::load_or_new(&path, ARRANGEMENT_COUNT).unwrap(),
            c
        );
        let missing = dir.path().join("fresh.checkpoint");
        assert_eq!(
            SweepCheckpoint::load_or_new(&missing, 42).unwrap(),
            SweepCheckpoint::new(42)
        );
    }

    #[test]
    fn mismatched_total_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sweep.checkpoint");
        SweepCheckpoint::new(999).save(&path).unwrap();
        assert!(matches!(
            SweepCheckpoint::load_or_new(&path, ARRANGEMENT_COUNT),
            Err(CheckpointError::TotalMismatch { found: 999, .. })
        ));
    }

    #[test]
    fn malformed_lines_are_rejected() {
        assert!(matches!(
            SweepCheckpoint::parse("nonsense\n"),
            Err(CheckpointError::BadHeader(_))
        ));
        let bad_records = [
            "range 5 5 processed 0 counterexamples none\n",
            "range 10 5 processed 0 counterexamples none\n",
            "range 0 5 processed 9 counterexamples none\n",
            "range 0 5 processed 5 counterexamples 7\n",
            "range 0 5 processed 5\n",
            "range 0 5 processed 5 counterexamples \n",
        ];
        for record in bad_records {
            let text = format!("icosoku-sweep v1 total 100\n{record}");
            assert!(
                matches!(SweepCheckpoint::parse(&text), Err(CheckpointError::BadRecord(2))),
                "accepted: {record:?}"
            );
        }
    }
}
