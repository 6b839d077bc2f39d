//! File formats: point sets as CSV/JSON, families as JSON or long-form CSV,
//! modulus profiles as CSV, and the report documents.
//!
//! All numbers are written in shortest round-trip decimal form, so identical
//! inputs produce byte-identical files.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function_space::{Family, Grid, SampledPath};
use crate::geometry::{PointSet, Vector};
use crate::moduli::ModulusProfile;
use crate::net_builder::NetCertificate;

// ---------------------------------------------------------------------------
// point sets
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct PointSetDoc {
    dim: usize,
    points: Vec<Vector>,
}

pub fn point_set_to_json(ps: &PointSet) -> String {
    serde_json::to_string(&PointSetDoc {
        dim: ps.dim,
        points: ps.points.clone(),
    })
    .expect("point set serialization cannot fail")
}

pub fn point_set_from_json(s: &str) -> Result<PointSet> {
    let doc: PointSetDoc = serde_json::from_str(s)?;
    PointSet::new(doc.dim, doc.points)
}

/// CSV: one row per point, N columns, no header.
pub fn point_set_to_csv(ps: &PointSet) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    for p in &ps.points {
        w.serialize(p)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

pub fn point_set_from_csv(s: &str) -> Result<PointSet> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(s.as_bytes());
    let mut points: Vec<Vector> = Vec::new();
    for record in r.deserialize() {
        let row: Vector = record?;
        points.push(row);
    }
    let dim = points.first().map(|p| p.len()).unwrap_or(0);
    if dim == 0 {
        return Err(Error::EmptyPointSet);
    }
    PointSet::new(dim, points)
}

/// Reads a point set, dispatching on the `.json` extension; anything else
/// is treated as CSV.
pub fn read_point_set(path: &Path) -> Result<PointSet> {
    let text = fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        point_set_from_json(&text)
    } else {
        point_set_from_csv(&text)
    }
}

// ---------------------------------------------------------------------------
// families
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct MemberDoc {
    id: String,
    values: Vec<Vector>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FamilyDoc {
    a: f64,
    b: f64,
    dim: usize,
    knots: Vec<f64>,
    members: Vec<MemberDoc>,
}

pub fn family_to_json(fam: &Family) -> String {
    let doc = FamilyDoc {
        a: fam.a(),
        b: fam.b(),
        dim: fam.dim(),
        knots: fam.grid().knots().to_vec(),
        members: fam
            .ids()
            .iter()
            .zip(fam.members())
            .map(|(id, m)| MemberDoc {
                id: id.clone(),
                values: m.values().to_vec(),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("family serialization cannot fail")
}

pub fn family_from_json(s: &str) -> Result<Family> {
    let doc: FamilyDoc = serde_json::from_str(s)?;
    let grid = Grid::new(doc.knots)?;
    if grid.a() != doc.a || grid.b() != doc.b {
        return Err(Error::InvalidGrid(format!(
            "declared interval [{}, {}] does not match knots [{}, {}]",
            doc.a,
            doc.b,
            grid.a(),
            grid.b()
        )));
    }
    Family::new(
        grid,
        doc.dim,
        doc.members.into_iter().map(|m| (m.id, m.values)).collect(),
    )
}

/// Long-form CSV: header `member_id,x,v1..vN`, one row per (member, knot).
pub fn family_to_csv(fam: &Family) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    let mut header = vec!["member_id".to_string(), "x".to_string()];
    header.extend((1..=fam.dim()).map(|i| format!("v{i}")));
    w.write_record(&header)?;
    for (id, m) in fam.ids().iter().zip(fam.members()) {
        for (&x, v) in fam.grid().knots().iter().zip(m.values()) {
            let mut row = vec![id.clone(), format_f64(x)];
            row.extend(v.iter().map(|&c| format_f64(c)));
            w.write_record(&row)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses long-form CSV. Members may list different knot sets; every member
/// is resampled onto the union grid by PL interpolation.
pub fn family_from_csv(s: &str) -> Result<Family> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(s.as_bytes());
    let dim = r.headers()?.len().saturating_sub(2);
    if dim == 0 {
        return Err(Error::Parse("expected header member_id,x,v1..vN".into()));
    }
    let mut order: Vec<String> = Vec::new();
    let mut rows: std::collections::HashMap<String, Vec<(f64, Vector)>> =
        std::collections::HashMap::new();
    for record in r.records() {
        let record = record?;
        if record.len() != dim + 2 {
            return Err(Error::Parse(format!(
                "row has {} fields, expected {}",
                record.len(),
                dim + 2
            )));
        }
        let id = record[0].to_string();
        let x: f64 = record[1]
            .parse()
            .map_err(|e| Error::Parse(format!("bad x {:?}: {e}", &record[1])))?;
        let v: Vector = (0..dim)
            .map(|i| {
                record[i + 2]
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad value {:?}: {e}", &record[i + 2])))
            })
            .collect::<Result<_>>()?;
        if !rows.contains_key(&id) {
            order.push(id.clone());
        }
        rows.entry(id).or_default().push((x, v));
    }
    if order.is_empty() {
        return Err(Error::Parse("no data rows".into()));
    }
    // per-member paths on their own grids
    let mut paths: Vec<(String, SampledPath)> = Vec::with_capacity(order.len());
    for id in order {
        let mut data = rows.remove(&id).unwrap();
        data.sort_by(|p, q| p.0.total_cmp(&q.0));
        let knots: Vec<f64> = data.iter().map(|(x, _)| *x).collect();
        let values: Vec<Vector> = data.into_iter().map(|(_, v)| v).collect();
        paths.push((id.clone(), SampledPath::from_knots(knots, dim, values)?));
    }
    // union grid, then exact-on-refinement resampling
    let mut union = paths[0].1.grid().clone();
    for (_, p) in &paths[1..] {
        union = Grid::union(&union, p.grid())?;
    }
    let union = std::sync::Arc::new(union);
    let ids = paths.iter().map(|(id, _)| id.clone()).collect();
    let members = paths
        .iter()
        .map(|(_, p)| p.resampled(&union))
        .collect::<Result<Vec<_>>>()?;
    Family::from_paths(ids, members)
}

pub fn read_family(path: &Path) -> Result<Family> {
    let text = fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e == "csv") {
        family_from_csv(&text)
    } else {
        family_from_json(&text)
    }
}

// ---------------------------------------------------------------------------
// profiles and reports
// ---------------------------------------------------------------------------

/// CSV with header `delta,omega`, one row per scale.
pub fn profile_to_csv(profile: &ModulusProfile) -> String {
    let mut out = String::from("delta,omega\n");
    for (&d, &o) in profile.deltas.iter().zip(&profile.omegas) {
        out.push_str(&format_f64(d));
        out.push(',');
        out.push_str(&format_f64(o));
        out.push('\n');
    }
    out
}

/// Net plus per-member construction certificates, one document.
#[derive(Serialize)]
pub struct NetBundle<'a> {
    pub net: FamilyJson<'a>,
    pub certificates: &'a [NetCertificate],
}

/// Family serialized inline (same schema as [`family_to_json`]).
pub struct FamilyJson<'a>(pub &'a Family);

impl Serialize for FamilyJson<'_> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = family_to_json(self.0);
        let value: serde_json::Value = serde_json::from_str(&raw).expect("own output is valid");
        value.serialize(serializer)
    }
}

pub fn net_bundle_to_json(net: &Family, certificates: &[NetCertificate]) -> String {
    serde_json::to_string(&NetBundle {
        net: FamilyJson(net),
        certificates,
    })
    .expect("net bundle serialization cannot fail")
}

/// Shortest round-trip decimal representation (17 significant digits max).
pub fn format_f64(v: f64) -> String {
    let mut buf = ryu_like(v);
    if buf == "-0" {
        buf = "0".into();
    }
    buf
}

fn ryu_like(v: f64) -> String {
    // Rust's Display for f64 is the shortest representation that round-trips.
    format!("{v}")
}
