use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremTag {
    MultBound,
    RankN2D1,
    RankND1,
    RankND,
    RankN1D,
    CycleAlpha,
    BipartiteSym,
    Sandwich,
    KnShift,
    CycleMult2,
}

impl TheoremTag {
    pub const ALL: [TheoremTag; 10] = [
        TheoremTag::MultBound,
        TheoremTag::RankN2D1,
        TheoremTag::RankND1,
        TheoremTag::RankND,
        TheoremTag::RankN1D,
        TheoremTag::CycleAlpha,
        TheoremTag::BipartiteSym,
        TheoremTag::Sandwich,
        TheoremTag::KnShift,
        TheoremTag::CycleMult2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremTag::MultBound => "MULT_BOUND",
            TheoremTag::RankN2D1 => "RANK_N2_D1",
            TheoremTag::RankND1 => "RANK_N_D1",
            TheoremTag::RankND => "RANK_N_D",
            TheoremTag::RankN1D => "RANK_N1_D",
            TheoremTag::CycleAlpha => "CYCLE_ALPHA",
            TheoremTag::BipartiteSym => "BIPARTITE_SYM",
            TheoremTag::Sandwich => "SANDWICH",
            TheoremTag::KnShift => "KN_SHIFT",
            TheoremTag::CycleMult2 => "CYCLE_MULT2",
        }
    }
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for TheoremTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

fn ratio_as_string<S: Serializer>(r: &Option<Ratio<i64>>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

/// One checker outcome for one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub instance_id: String,
    pub theorem_tag: TheoremTag,
    pub alpha: Option<f64>,
    pub measured: f64,
    /// Exact bound the measurement is compared against.
    #[serde(serialize_with = "ratio_as_string")]
    pub bound: Option<Ratio<i64>>,
    /// Numerical tolerance, for rows that compare floats.
    pub tolerance: Option<f64>,
    /// Non-negative iff the inequality holds in the direction of the theorem.
    pub slack: Option<f64>,
    pub equality_case: Option<String>,
    pub pass: bool,
    /// Precondition that prevented the check, if any.
    pub skipped: Option<String>,
    pub note: Option<String>,
}

impl ReportRow {
    pub fn new(instance_id: &str, tag: TheoremTag, measured: f64) -> Self {
        ReportRow {
            instance_id: instance_id.to_string(),
            theorem_tag: tag,
            alpha: None,
            measured,
            bound: None,
            tolerance: None,
            slack: None,
            equality_case: None,
            pass: true,
            skipped: None,
            note: None,
        }
    }

    pub fn skip(instance_id: &str, tag: TheoremTag, reason: impl Into<String>) -> Self {
        ReportRow {
            skipped: Some(reason.into()),
            ..Self::new(instance_id, tag, f64::NAN)
        }
    }

    pub fn is_skip(&self) -> bool {
        self.skipped.is_some()
    }

    pub fn is_failure(&self) -> bool {
        !self.pass && self.skipped.is_none()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

/// Per-tag and overall tallies of a row list.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub total: Counts,
    pub by_tag: BTreeMap<&'static str, Counts>,
}

impl Summary {
    pub fn from_rows(instances: usize, rows: &[ReportRow]) -> Self {
        let mut s = Summary {
            instances,
            ..Default::default()
        };
        for row in rows {
            let c = s.by_tag.entry(row.theorem_tag.as_str()).or_default();
            for counts in [c, &mut s.total] {
                if row.is_skip() {
                    counts.skip += 1;
                } else if row.pass {
                    counts.pass += 1;
                } else {
                    counts.fail += 1;
                }
            }
        }
        s
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instances: {}", self.instances)?;
        for (tag, c) in &self.by_tag {
            writeln!(
                f,
                "{tag:<14} pass {:>5}  fail {:>3}  skip {:>4}",
                c.pass, c.fail, c.skip
            )?;
        }
        write!(
            f,
            "{:<14} pass {:>5}  fail {:>3}  skip {:>4}",
            "total", self.total.pass, self.total.fail, self.total.skip
        )
    }
}

/// Writes one JSON object per row.
pub fn write_jsonl<W: Write>(rows: &[ReportRow], mut out: W) -> std::io::Result<()> {
    for row in rows {
        serde_json::to_writer(&mut out, row)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
