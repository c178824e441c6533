//! Text file formats: point clouds (CSV, ASCII PLY), polytopes (JSON plus a
//! PLY triangle mesh), reference paths and scene specs (TOML).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::convexify::FreePolytope;
use crate::corridor::ReferencePath;
use crate::error::{Error, Result};
use crate::geom::{HalfSpaceSystem, Point, PointCloud};
use crate::scenes::SceneSpec;

/// A cloud whose dimension is only known at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum DynCloud {
    Planar(PointCloud<2>),
    Spatial(PointCloud<3>),
}

impl DynCloud {
    pub fn dim(&self) -> usize {
        match self {
            DynCloud::Planar(_) => 2,
            DynCloud::Spatial(_) => 3,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            DynCloud::Planar(c) => c.len(),
            DynCloud::Spatial(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn from_rows(rows: Vec<Vec<f64>>, dim: usize) -> Result<Self> {
        match dim {
            2 => Ok(DynCloud::Planar(PointCloud::new(
                rows.iter()
                    .map(|r| Point::<2>::from_column_slice(r))
                    .collect(),
            )?)),
            3 => Ok(DynCloud::Spatial(PointCloud::new(
                rows.iter()
                    .map(|r| Point::<3>::from_column_slice(r))
                    .collect(),
            )?)),
            d => Err(Error::UnsupportedDimension(d)),
        }
    }
}

macro_rules! impl_try_from_dyn {
    ($d:literal, $variant:ident) => {
        impl TryFrom<DynCloud> for PointCloud<$d> {
            type Error = Error;

            fn try_from(cloud: DynCloud) -> Result<Self> {
                match cloud {
                    DynCloud::$variant(c) => Ok(c),
                    other => Err(Error::DimensionMismatch {
                        expected: $d,
                        found: other.dim(),
                    }),
                }
            }
        }
    };
}

impl_try_from_dyn!(2, Planar);
impl_try_from_dyn!(3, Spatial);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CloudFormat {
    Csv,
    Ply,
}

impl CloudFormat {
    /// Guesses the format from the file extension; anything but `.ply` is CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("ply") => CloudFormat::Ply,
            _ => CloudFormat::Csv,
        }
    }
}

pub fn read_cloud(path: &Path, format: Option<CloudFormat>) -> Result<DynCloud> {
    let text = fs::read(path)?;
    match format.unwrap_or_else(|| CloudFormat::from_path(path)) {
        CloudFormat::Ply => parse_ply(&text),
        CloudFormat::Csv => parse_csv(
            std::str::from_utf8(&text)
                .map_err(|e| Error::parse(0, format!("not UTF-8 text: {e}")))?,
        ),
    }
}

fn parse_number(field: &str, line: usize) -> Result<f64> {
    field
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::parse(line, format!("'{}' is not a number", field.trim())))
}

/// One point per line, `x,y` or `x,y,z`. A first line that does not parse
/// as numbers is taken as a header. Blank lines and `#` comments are skipped.
pub fn parse_csv(text: &str) -> Result<DynCloud> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut dim = None;
    let mut seen_data = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split(',').collect();
        let parsed: Result<Vec<f64>> = fields.iter().map(|f| parse_number(f, line)).collect();
        let row = match parsed {
            Ok(row) => row,
            Err(_) if !seen_data && fields.iter().all(|f| f.trim().parse::<f64>().is_err()) => {
                seen_data = true;
                continue;
            }
            Err(e) => return Err(e),
        };
        seen_data = true;
        match dim {
            None => {
                if row.len() != 2 && row.len() != 3 {
                    return Err(Error::parse(
                        line,
                        format!("expected 2 or 3 columns, found {}", row.len()),
                    ));
                }
                dim = Some(row.len());
            }
            Some(d) if d != row.len() => {
                return Err(Error::parse(
                    line,
                    format!("expected {d} columns, found {}", row.len()),
                ));
            }
            _ => {}
        }
        rows.push(row);
    }
    let dim = dim.ok_or_else(|| Error::parse(0, "no points in file"))?;
    DynCloud::from_rows(rows, dim)
}

/// ASCII PLY with a `vertex` element carrying `x`, `y` and optionally `z`.
/// Other vertex properties and later elements are ignored.
pub fn parse_ply(bytes: &[u8]) -> Result<DynCloud> {
    let header_end = bytes
        .windows(10)
        .position(|w| w == b"end_header")
        .ok_or_else(|| Error::parse(1, "missing end_header"))?;
    let header = std::str::from_utf8(&bytes[..header_end])
        .map_err(|_| Error::parse(1, "header is not text"))?;
    let mut lines = header.lines().enumerate();
    match lines.next() {
        Some((_, l)) if l.trim() == "ply" => {}
        _ => return Err(Error::parse(1, "not a PLY file")),
    }

    let mut vertex_count = None;
    let mut in_vertex = false;
    let mut vertex_first = false;
    let mut props: Vec<String> = Vec::new();
    for (i, l) in lines {
        let tokens: Vec<&str> = l.split_whitespace().collect();
        match tokens.as_slice() {
            ["format", "ascii", ..] => {}
            ["format", kind, ..] => {
                return Err(Error::parse(
                    i + 1,
                    format!("{kind} PLY is not supported; convert to ascii"),
                ));
            }
            ["element", name, count] => {
                in_vertex = *name == "vertex";
                if in_vertex {
                    vertex_first = vertex_count.is_none() && props.is_empty();
                    vertex_count = Some(
                        count
                            .parse::<usize>()
                            .map_err(|_| Error::parse(i + 1, "bad vertex count"))?,
                    );
                } else if vertex_count.is_none() {
                    return Err(Error::parse(i + 1, "the vertex element must come first"));
                }
            }
            ["property", "list", ..] if in_vertex => {
                return Err(Error::parse(
                    i + 1,
                    "list properties on vertices are not supported",
                ));
            }
            ["property", _, name] if in_vertex => props.push(name.to_string()),
            _ => {}
        }
    }
    let count = vertex_count.ok_or_else(|| Error::parse(1, "no vertex element"))?;
    if !vertex_first {
        return Err(Error::parse(1, "the vertex element must come first"));
    }
    let column = |name: &str| props.iter().position(|p| p == name);
    let (x, y) = match (column("x"), column("y")) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::parse(1, "vertex element lacks x/y properties")),
    };
    let z = column("z");
    let cols: Vec<usize> = [Some(x), Some(y), z].into_iter().flatten().collect();

    let body = std::str::from_utf8(&bytes[header_end + 10..])
        .map_err(|_| Error::parse(1, "body is not text"))?;
    let header_lines = header.lines().count() + 1;
    let mut rows = Vec::with_capacity(count);
    for (i, l) in body.lines().enumerate().skip(1) {
        if rows.len() == count {
            break;
        }
        let line = header_lines + i;
        if l.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.len() < props.len() {
            return Err(Error::parse(
                line,
                format!("expected {} values, found {}", props.len(), fields.len()),
            ));
        }
        rows.push(
            cols.iter()
                .map(|&c| parse_number(fields[c], line))
                .collect::<Result<Vec<f64>>>()?,
        );
    }
    if rows.len() != count {
        return Err(Error::parse(
            0,
            format!("header promises {count} vertices, found {}", rows.len()),
        ));
    }
    DynCloud::from_rows(rows, cols.len())
}

/// Writes `x,y[,z]` lines with a header.
pub fn write_cloud_csv<const D: usize>(cloud: &PointCloud<D>, path: &Path) -> Result<()> {
    let mut out = String::from(if D == 2 { "x,y\n" } else { "x,y,z\n" });
    for p in cloud.iter() {
        let fields: Vec<String> = p.iter().map(|c| c.to_string()).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// Serialized form of a [`FreePolytope`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolytopeDocument {
    pub dim: usize,
    /// Row-major constraint matrix.
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub vertices: Vec<Vec<f64>>,
    pub interior: Vec<f64>,
    pub volume: f64,
}

impl PolytopeDocument {
    pub fn from_polytope<const D: usize>(poly: &FreePolytope<D>) -> Self {
        Self {
            dim: D,
            a: poly
                .system
                .normals()
                .iter()
                .map(|n| n.as_slice().to_vec())
                .collect(),
            b: poly.system.offsets().to_vec(),
            vertices: poly
                .vertices
                .iter()
                .map(|v| v.as_slice().to_vec())
                .collect(),
            interior: poly.interior.as_slice().to_vec(),
            volume: poly.volume,
        }
    }

    pub fn to_polytope<const D: usize>(&self) -> Result<FreePolytope<D>> {
        if self.dim != D {
            return Err(Error::DimensionMismatch {
                expected: D,
                found: self.dim,
            });
        }
        let vec = |v: &[f64]| -> Result<Point<D>> {
            if v.len() != D {
                return Err(Error::DimensionMismatch {
                    expected: D,
                    found: v.len(),
                });
            }
            Ok(Point::<D>::from_column_slice(v))
        };
        if self.a.len() != self.b.len() {
            return Err(Error::parse(0, "A and b have different row counts"));
        }
        // Rows are stored already normalized; they are taken verbatim.
        let mut system = HalfSpaceSystem::default();
        for (row, &b) in self.a.iter().zip(&self.b) {
            system.push_raw(vec(row)?, b);
        }
        Ok(FreePolytope {
            system,
            vertices: self
                .vertices
                .iter()
                .map(|v| vec(v))
                .collect::<Result<_>>()?,
            interior: vec(&self.interior)?,
            volume: self.volume,
            stats: Default::default(),
        })
    }
}

/// The sidecar mesh written next to a polytope document.
pub fn mesh_path(path: &Path) -> PathBuf {
    path.with_extension("ply")
}

/// Writes the polytope as JSON and, in 3D, its boundary as an ASCII PLY
/// triangle mesh at [`mesh_path`].
pub fn write_polytope<const D: usize>(poly: &FreePolytope<D>, path: &Path) -> Result<()> {
    let doc = PolytopeDocument::from_polytope(poly);
    let text =
        serde_json::to_string_pretty(&doc).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    fs::write(path, text)?;
    if D == 3 {
        fs::write(mesh_path(path), boundary_mesh_ply(poly))?;
    }
    Ok(())
}

pub fn read_polytope<const D: usize>(path: &Path) -> Result<FreePolytope<D>> {
    let text = fs::read_to_string(path)?;
    let doc: PolytopeDocument = serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    doc.to_polytope()
}

/// Boundary triangles of a 3D polytope: each face polygon (the vertices on
/// one row's plane) is ordered by angle and fanned from its first corner.
pub fn boundary_triangles<const D: usize>(poly: &FreePolytope<D>) -> Vec<[usize; 3]> {
    if D != 3 {
        return Vec::new();
    }
    let tol = 1e3 * poly.tolerance();
    let mut tris = Vec::new();
    for (n, b) in poly.system.rows() {
        let mut face: Vec<usize> = (0..poly.vertices.len())
            .filter(|&i| (n.dot(&poly.vertices[i]) - b).abs() <= tol)
            .collect();
        if face.len() < 3 {
            continue;
        }
        let center = face.iter().map(|&i| poly.vertices[i]).sum::<Point<D>>() / face.len() as f64;
        let n3 = nalgebra::Vector3::new(n[0], n[1], n[2]);
        let seed = if n3.x.abs() < 0.9 {
            nalgebra::Vector3::x()
        } else {
            nalgebra::Vector3::y()
        };
        let u = n3.cross(&seed).normalize();
        let v = n3.cross(&u);
        let angle = |i: usize| {
            let d = poly.vertices[i] - center;
            let d = nalgebra::Vector3::new(d[0], d[1], d[2]);
            d.dot(&v).atan2(d.dot(&u))
        };
        face.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
        for k in 1..face.len() - 1 {
            tris.push([face[0], face[k], face[k + 1]]);
        }
    }
    tris
}

fn boundary_mesh_ply<const D: usize>(poly: &FreePolytope<D>) -> String {
    let tris = boundary_triangles(poly);
    let mut out = String::new();
    let _ = write!(
        out,
        "ply\nformat ascii 1.0\nelement vertex {}\nproperty double x\nproperty double y\nproperty double z\n\
         element face {}\nproperty list uchar int vertex_indices\nend_header\n",
        poly.vertices.len(),
        tris.len()
    );
    for v in &poly.vertices {
        let _ = writeln!(out, "{} {} {}", v[0], v[1], v[2]);
    }
    for t in &tris {
        let _ = writeln!(out, "3 {} {} {}", t[0], t[1], t[2]);
    }
    out
}

/// A path whose dimension is only known at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum DynPath {
    Planar(ReferencePath<2>),
    Spatial(ReferencePath<3>),
}

impl DynPath {
    pub fn dim(&self) -> usize {
        match self {
            DynPath::Planar(_) => 2,
            DynPath::Spatial(_) => 3,
        }
    }
}

/// One waypoint per line, `t x y [z]`, whitespace separated.
pub fn parse_path(text: &str) -> Result<DynPath> {
    let mut times = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let values = content
            .split_whitespace()
            .map(|f| parse_number(f, line))
            .collect::<Result<Vec<f64>>>()?;
        if values.len() != 3 && values.len() != 4 {
            return Err(Error::parse(
                line,
                format!("expected 't x y [z]', found {} fields", values.len()),
            ));
        }
        if let Some(first) = rows.first() {
            if first.len() != values.len() - 1 {
                return Err(Error::parse(line, "waypoints mix 2D and 3D"));
            }
        }
        times.push(values[0]);
        rows.push(values[1..].to_vec());
    }
    match rows.first().map(|r| r.len()) {
        Some(2) => Ok(DynPath::Planar(ReferencePath::new(
            rows.iter()
                .map(|r| Point::<2>::from_column_slice(r))
                .collect(),
            times,
        )?)),
        Some(3) => Ok(DynPath::Spatial(ReferencePath::new(
            rows.iter()
                .map(|r| Point::<3>::from_column_slice(r))
                .collect(),
            times,
        )?)),
        _ => Err(Error::parse(0, "no waypoints in file")),
    }
}

pub fn read_path(path: &Path) -> Result<DynPath> {
    parse_path(&fs::read_to_string(path)?)
}

pub fn write_path<const D: usize>(path: &ReferencePath<D>, file: &Path) -> Result<()> {
    let mut out = String::new();
    for (t, w) in path.times.iter().zip(&path.waypoints) {
        let coords: Vec<String> = w.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "{t} {}", coords.join(" "));
    }
    fs::write(file, out)?;
    Ok(())
}

/// A spec file holds one scene at top level, or several as `[[scene]]` tables.
pub fn parse_scene_specs(text: &str) -> Result<Vec<SceneSpec>> {
    #[derive(Deserialize)]
    struct Many {
        scene: Vec<SceneSpec>,
    }
    let value: toml::Table = toml::from_str(text).map_err(toml_error(text))?;
    if value.contains_key("scene") {
        let many: Many = toml::from_str(text).map_err(toml_error(text))?;
        Ok(many.scene)
    } else {
        Ok(vec![toml::from_str(text).map_err(toml_error(text))?])
    }
}

fn toml_error(text: &str) -> impl Fn(toml::de::Error) -> Error + '_ {
    move |e| {
        let line = e
            .span()
            .map(|s| text[..s.start.min(text.len())].lines().count().max(1))
            .unwrap_or(0);
        Error::Parse {
            line,
            message: e.message().to_string(),
        }
    }
}

pub fn read_scene_specs(path: &Path) -> Result<Vec<SceneSpec>> {
    parse_scene_specs(&fs::read_to_string(path)?)
}
