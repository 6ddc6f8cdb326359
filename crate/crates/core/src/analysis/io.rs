//! Knot files, stats streams, trace export and OBJ geometry.
//!
//! A knot file is a sequence of records separated by blank lines. Each
//! record is optional `# key=value` header lines (keys `n`, `thickness`,
//! `seed`, `step`) followed by one `x y z` line per vertex. Coordinates are
//! written with 17 significant digits so they read back bit-identical.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::canonicalize::{CanonicalizationTrace, Move};
use crate::error::{Error, Result};
use crate::geom::Point3;
use crate::polygon::KnotPolygon;
use crate::thickness::thickness;

/// Largest header/recomputed thickness disagreement read without a warning.
const THICKNESS_MISMATCH: f64 = 1e-6;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RecordHeader {
    pub n: Option<usize>,
    pub thickness: Option<f64>,
    pub seed: Option<u64>,
    pub step: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnotRecord {
    pub header: RecordHeader,
    pub polygon: KnotPolygon,
    /// Non-fatal problems found while reading.
    pub warnings: Vec<String>,
}

impl KnotRecord {
    pub fn new(polygon: KnotPolygon) -> Self {
        Self {
            header: RecordHeader {
                n: Some(polygon.len()),
                ..RecordHeader::default()
            },
            polygon,
            warnings: Vec::new(),
        }
    }
}

pub fn write_records<W: Write>(mut w: W, records: &[KnotRecord]) -> Result<()> {
    for (idx, r) in records.iter().enumerate() {
        if idx > 0 {
            writeln!(w)?;
        }
        let h = &r.header;
        writeln!(w, "# n={}", r.polygon.len())?;
        if let Some(t) = h.thickness {
            writeln!(w, "# thickness={t:.16e}")?;
        }
        if let Some(s) = h.seed {
            writeln!(w, "# seed={s}")?;
        }
        if let Some(s) = h.step {
            writeln!(w, "# step={s}")?;
        }
        for v in r.polygon.vertices() {
            writeln!(w, "{:.16e} {:.16e} {:.16e}", v.x, v.y, v.z)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Writes polygons with `n` and `thickness` headers.
pub fn write_knots(path: impl AsRef<Path>, polygons: &[KnotPolygon]) -> Result<()> {
    let records: Vec<KnotRecord> = polygons
        .iter()
        .map(|k| {
            let mut r = KnotRecord::new(k.clone());
            r.header.thickness = Some(thickness(k));
            r
        })
        .collect();
    write_records(BufWriter::new(File::create(path)?), &records)
}

pub fn read_knots(path: impl AsRef<Path>) -> Result<Vec<KnotPolygon>> {
    let records = read_records(BufReader::new(File::open(path)?))?;
    Ok(records.into_iter().map(|r| r.polygon).collect())
}

pub fn parse_knots(text: &str) -> Result<Vec<KnotRecord>> {
    read_records(text.as_bytes())
}

pub fn read_records<R: BufRead>(r: R) -> Result<Vec<KnotRecord>> {
    let mut out = Vec::new();
    let mut header = RecordHeader::default();
    let mut verts: Vec<Point3> = Vec::new();
    let mut open = false;
    let mut start_line = 0;
    for (idx, line) in r.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let text = line.trim();
        if text.is_empty() {
            if open {
                out.push(finish(out.len(), start_line, std::mem::take(&mut header), std::mem::take(&mut verts))?);
                open = false;
            }
            continue;
        }
        if !open {
            open = true;
            start_line = lineno;
        }
        if let Some(rest) = text.strip_prefix('#') {
            parse_header(rest.trim(), lineno, &mut header)?;
            continue;
        }
        let nums: Vec<&str> = text.split_whitespace().collect();
        if nums.len() != 3 {
            return Err(parse_err(lineno, format!("expected 3 coordinates, found {}", nums.len())));
        }
        let mut c = [0.0; 3];
        for (slot, s) in c.iter_mut().zip(&nums) {
            *slot = s
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad number {s:?}")))?;
        }
        verts.push(Point3::new(c[0], c[1], c[2]));
    }
    if open {
        out.push(finish(out.len(), start_line, header, verts)?);
    }
    Ok(out)
}

fn parse_err(line: usize, message: String) -> Error {
    Error::Parse { line, message }
}

fn parse_header(text: &str, line: usize, h: &mut RecordHeader) -> Result<()> {
    let Some((key, value)) = text.split_once('=') else {
        // free-form comment
        return Ok(());
    };
    let (key, value) = (key.trim(), value.trim());
    let bad = || parse_err(line, format!("bad value for {key}: {value:?}"));
    match key {
        "n" => h.n = Some(value.parse().map_err(|_| bad())?),
        "thickness" => h.thickness = Some(value.parse().map_err(|_| bad())?),
        "seed" => h.seed = Some(value.parse().map_err(|_| bad())?),
        "step" => h.step = Some(value.parse().map_err(|_| bad())?),
        _ => {}
    }
    Ok(())
}

fn finish(index: usize, line: usize, header: RecordHeader, verts: Vec<Point3>) -> Result<KnotRecord> {
    if let Some(n) = header.n {
        if n != verts.len() {
            return Err(parse_err(
                line,
                format!("header says n={n} but record has {} vertices", verts.len()),
            ));
        }
    }
    let polygon = KnotPolygon::new(verts).map_err(|e| Error::Record {
        index,
        source: Box::new(e),
    })?;
    let mut warnings = Vec::new();
    if let Some(t) = header.thickness {
        let actual = thickness(&polygon);
        if (t - actual).abs() > THICKNESS_MISMATCH {
            let msg = format!("record {index}: header thickness {t} but recomputed {actual}");
            log::warn!("{msg}");
            warnings.push(msg);
        }
    }
    Ok(KnotRecord {
        header,
        polygon,
        warnings,
    })
}

/// One row of the sampler's stats stream.
#[derive(Debug, Clone, Serialize, serde::Deserialize, PartialEq)]
pub struct StatsRecord {
    pub step: u64,
    pub thickness: f64,
    pub minrad: f64,
    /// Empty when the polygon has no doubly critical pair.
    pub dcsd: Option<f64>,
    pub rg2: f64,
    pub accepted: bool,
    pub m: usize,
}

pub fn write_stats<W: Write>(w: W, rows: impl IntoIterator<Item = StatsRecord>) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    for r in rows {
        csv.serialize(r)?;
    }
    csv.flush()?;
    Ok(())
}

/// One row of an exported canonicalization trace.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TraceRecord {
    pub index: usize,
    pub stage: String,
    #[serde(rename = "move")]
    pub mv: String,
    pub thickness_before: f64,
    pub thickness_after: f64,
    pub mu: f64,
    pub incidence: usize,
    pub min_height_count: usize,
}

fn describe(mv: &Move) -> String {
    match mv {
        Move::Reflection(r) => format!("reflect {} {} {:.16e} {:?}", r.i, r.j, r.theta, r.arc_choice),
        Move::ArcRotation { i, j, phi } => format!("rotate-arc {i} {j} {phi:.16e}"),
        Move::Rigid { point, axis, angle } => format!(
            "rigid {:.16e} {:.16e} {:.16e} {:.16e} {:.16e} {:.16e} {angle:.16e}",
            point.x, point.y, point.z, axis.x, axis.y, axis.z
        ),
        Move::Translation(d) => format!("translate {:.16e} {:.16e} {:.16e}", d.x, d.y, d.z),
        Move::Hextuple { quad, theta } => format!(
            "hextuple {} {} {} {} {theta:.16e}",
            quad.v1, quad.w1, quad.v2, quad.w2
        ),
    }
}

pub fn write_trace<W: Write>(w: W, trace: &CanonicalizationTrace) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    for (index, e) in trace.entries.iter().enumerate() {
        csv.serialize(TraceRecord {
            index,
            stage: format!("{:?}", e.stage),
            mv: describe(&e.mv),
            thickness_before: e.thickness_before,
            thickness_after: e.thickness_after,
            mu: e.mu,
            incidence: e.incidence,
            min_height_count: e.min_height_count,
        })?;
    }
    csv.flush()?;
    Ok(())
}

/// Wavefront OBJ: one object per polygon, written as a closed polyline.
pub fn write_obj<W: Write>(mut w: W, polygons: &[KnotPolygon]) -> Result<()> {
    let mut base = 1;
    for (idx, k) in polygons.iter().enumerate() {
        writeln!(w, "o knot{idx}")?;
        for v in k.vertices() {
            writeln!(w, "v {:.16e} {:.16e} {:.16e}", v.x, v.y, v.z)?;
        }
        let ids: Vec<String> = (0..k.len()).chain([0]).map(|i| (base + i).to_string()).collect();
        writeln!(w, "l {}", ids.join(" "))?;
        base += k.len();
    }
    w.flush()?;
    Ok(())
}
