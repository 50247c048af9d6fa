//! Report documents and their JSON and plain-text renderings.

use std::fmt::Write as _;

use cyclotorsion::cyclotomic::lcm;
use cyclotorsion::torsion::{BoundReport, DistributionTable, SubtorusWitness};
use cyclotorsion::TorsionPoint;
use serde::{Deserialize, Serialize};

/// `(ζ_n^x, ζ_n^y)`.
#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointJson {
    pub n: u64,
    pub x: u64,
    pub y: u64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct MemberBoundJson {
    pub label: String,
    pub bound: u64,
    pub excluded: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct BoundJson {
    pub members: Vec<MemberBoundJson>,
    /// `None` for infinitely many points.
    pub total: Option<u64>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct RowJson {
    pub label: String,
    pub points: Vec<PointJson>,
    pub nontorsion: usize,
}

/// `x^m·y^n = ζ_order^exponent`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct WitnessJson {
    pub m: i64,
    pub n: i64,
    pub order: u64,
    pub exponent: u64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq, Default)]
pub struct ReportDocument {
    pub case: Option<String>,
    pub conductor: Option<u64>,
    pub bound: Option<BoundJson>,
    pub points: Option<Vec<PointJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    pub distribution: Option<Vec<RowJson>>,
    pub notes: Vec<String>,
}

/// Least common order of a set of points; 1 when empty.
pub fn common_order<'a>(pts: impl IntoIterator<Item = &'a TorsionPoint>) -> u64 {
    pts.into_iter().map(|p| p.joint().0).fold(1, lcm)
}

pub fn point_json(p: &TorsionPoint, n: u64) -> PointJson {
    let (x, y) = p.exponents_at(n).expect("n is a common order");
    PointJson { n, x, y }
}

pub fn points_json(pts: &[TorsionPoint], n: u64) -> Vec<PointJson> {
    pts.iter().map(|p| point_json(p, n)).collect()
}

pub fn bound_json(b: &BoundReport) -> BoundJson {
    BoundJson {
        members: b
            .members
            .iter()
            .map(|m| MemberBoundJson {
                label: m.label.clone(),
                bound: m.bound,
                excluded: m.excluded.map(str::to_string),
            })
            .collect(),
        total: b.total,
    }
}

pub fn distribution_json(t: &DistributionTable, n: u64) -> Vec<RowJson> {
    t.rows
        .iter()
        .map(|r| RowJson {
            label: r.label.clone(),
            points: points_json(&r.points, n),
            nontorsion: r.nontorsion,
        })
        .collect()
}

pub fn witness_json(w: &SubtorusWitness) -> WitnessJson {
    WitnessJson {
        m: w.m,
        n: w.n,
        order: w.zeta.order(),
        exponent: w.zeta.exponent(),
    }
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Aligned plain-text rendering.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        if let Some(case) = &self.case {
            let _ = writeln!(out, "{:<11}{case}", "case");
        }
        if let Some(n) = self.conductor {
            let _ = writeln!(out, "{:<11}{n}", "conductor");
        }
        if let Some(b) = &self.bound {
            let total = b
                .total
                .map_or_else(|| "infinite".to_string(), |t| t.to_string());
            let _ = writeln!(out, "{:<11}{total}", "bound");
            if !b.members.is_empty() {
                let _ = writeln!(out, "  {:<7}{:>6}  note", "member", "bound");
                for m in &b.members {
                    let _ = writeln!(
                        out,
                        "  {:<7}{:>6}  {}",
                        m.label,
                        m.bound,
                        m.excluded.as_deref().unwrap_or("")
                    );
                }
            }
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(
                out,
                "{:<11}x^{}*y^{} = ζ{}^{} (infinite family)",
                "witness", w.m, w.n, w.order, w.exponent
            );
        }
        if let Some(pts) = &self.points {
            let _ = writeln!(out, "{:<11}{}", "points", pts.len());
            if !pts.is_empty() {
                let _ = writeln!(out, "  {:>5} {:>5} {:>5}", "n", "x", "y");
                for p in pts {
                    let _ = writeln!(out, "  {:>5} {:>5} {:>5}", p.n, p.x, p.y);
                }
            }
        }
        if let Some(rows) = &self.distribution {
            let _ = writeln!(out, "distribution");
            let _ = writeln!(
                out,
                "  {:<7}{:>6} {:>11}  points (x, y)",
                "member", "count", "non-torsion"
            );
            for r in rows {
                let list: Vec<String> = r
                    .points
                    .iter()
                    .map(|p| format!("({}, {})", p.x, p.y))
                    .collect();
                let n = r
                    .points
                    .first()
                    .map_or(String::new(), |p| format!(" at n = {}", p.n));
                let _ = writeln!(
                    out,
                    "  {:<7}{:>6} {:>11}  {}{}",
                    r.label,
                    r.points.len(),
                    r.nontorsion,
                    list.join(" "),
                    n
                );
            }
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        out
    }
}
