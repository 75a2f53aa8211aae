use super::{check_id, numbered_lines, parse_f64};
use crate::align::{AlignmentResult, Method, WarpPath};
use crate::error::{Error, Result};
use crate::eval::GroundTruthPath;
use std::collections::BTreeMap;
use std::io::{BufRead, Write};

/// An alignment as stored on disk.
#[derive(Clone, Debug, PartialEq)]
pub struct PathFile {
    pub video_a: String,
    pub video_b: String,
    pub n: usize,
    pub k: usize,
    pub method: Method,
    pub margin: Option<f64>,
    pub lambda: Option<f64>,
    pub total_cost: f64,
    pub path: WarpPath,
}

impl PathFile {
    pub fn from_result(video_a: &str, video_b: &str, result: &AlignmentResult) -> Self {
        let (n, k) = result.path.end();
        PathFile {
            video_a: video_a.to_string(),
            video_b: video_b.to_string(),
            n,
            k,
            method: result.method,
            margin: result.margin,
            lambda: result.lambda,
            total_cost: result.total_cost,
            path: result.path.clone(),
        }
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "none".to_string(), |v| v.to_string())
}

pub fn write_path<W: Write>(mut w: W, file: &PathFile) -> Result<()> {
    check_id(&file.video_a)?;
    check_id(&file.video_b)?;
    writeln!(w, "#vidalign-path")?;
    writeln!(w, "#video_a={}", file.video_a)?;
    writeln!(w, "#video_b={}", file.video_b)?;
    writeln!(w, "#n={}", file.n)?;
    writeln!(w, "#k={}", file.k)?;
    writeln!(w, "#method={}", file.method)?;
    writeln!(w, "#margin={}", opt(file.margin))?;
    writeln!(w, "#lambda={}", opt(file.lambda))?;
    writeln!(w, "#total_cost={}", file.total_cost)?;
    for (i, j) in file.path.steps() {
        writeln!(w, "({i}, {j})")?;
    }
    Ok(())
}

struct Parsed {
    header: BTreeMap<String, (usize, String)>,
    points: Vec<(usize, f64, f64)>,
    last_line: usize,
}

fn parse_text<R: BufRead>(r: R, magic: &str) -> Result<Parsed> {
    let mut lines = numbered_lines(r);
    match lines.next().transpose()? {
        Some((_, l)) if l == magic => {}
        Some((line, _)) => return Err(Error::schema(line, format!("expected {magic:?} header"))),
        None => return Err(Error::schema(1, "empty file")),
    }
    let mut parsed = Parsed {
        header: BTreeMap::new(),
        points: Vec::new(),
        last_line: 1,
    };
    for item in lines {
        let (line, text) = item?;
        parsed.last_line = line;
        if let Some(rest) = text.strip_prefix('#') {
            if !parsed.points.is_empty() {
                return Err(Error::schema(line, "header line after path data"));
            }
            let (key, value) = rest
                .split_once('=')
                .ok_or_else(|| Error::schema(line, "header lines are #key=value"))?;
            parsed
                .header
                .insert(key.to_string(), (line, value.to_string()));
            continue;
        }
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::schema(line, "expected \"(i, j)\""))?;
        let (x, y) = inner
            .split_once(',')
            .ok_or_else(|| Error::schema(line, "expected \"(i, j)\""))?;
        parsed
            .points
            .push((line, parse_f64(line, x)?, parse_f64(line, y)?));
    }
    Ok(parsed)
}

impl Parsed {
    fn get(&self, key: &str) -> Result<(usize, &str)> {
        self.header
            .get(key)
            .map(|(l, v)| (*l, v.as_str()))
            .ok_or_else(|| Error::schema(self.last_line, format!("missing #{key}= header")))
    }

    fn get_num<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let (line, v) = self.get(key)?;
        v.parse()
            .map_err(|_| Error::schema(line, format!("bad #{key} value {v:?}")))
    }

    fn get_opt(&self, key: &str) -> Result<Option<f64>> {
        let (line, v) = self.get(key)?;
        if v == "none" {
            return Ok(None);
        }
        match v.parse::<f64>() {
            Ok(x) if !x.is_nan() => Ok(Some(x)),
            _ => Err(Error::schema(line, format!("bad #{key} value {v:?}"))),
        }
    }
}

pub fn read_path<R: BufRead>(r: R) -> Result<PathFile> {
    let p = parse_text(r, "#vidalign-path")?;
    let n: usize = p.get_num("n")?;
    let k: usize = p.get_num("k")?;
    let mut steps = Vec::with_capacity(p.points.len());
    for &(line, i, j) in &p.points {
        if i.fract() != 0.0 || j.fract() != 0.0 || i < 1.0 || j < 1.0 {
            return Err(Error::schema(
                line,
                "path indices must be positive integers",
            ));
        }
        steps.push((i as usize, j as usize));
    }
    let path = WarpPath::new(steps, n, k).map_err(|e| Error::schema(p.last_line, e.to_string()))?;
    let (line, method) = p.get("method")?;
    Ok(PathFile {
        video_a: p.get("video_a")?.1.to_string(),
        video_b: p.get("video_b")?.1.to_string(),
        n,
        k,
        method: method
            .parse()
            .map_err(|e: Error| Error::schema(line, e.to_string()))?,
        margin: p.get_opt("margin")?,
        lambda: p.get_opt("lambda")?,
        total_cost: p.get_num("total_cost")?,
        path,
    })
}

pub fn write_ground_truth<W: Write>(
    mut w: W,
    video_a: &str,
    video_b: &str,
    gt: &GroundTruthPath,
) -> Result<()> {
    check_id(video_a)?;
    check_id(video_b)?;
    writeln!(w, "#vidalign-ground-truth")?;
    writeln!(w, "#video_a={video_a}")?;
    writeln!(w, "#video_b={video_b}")?;
    for (x, y) in gt.anchors() {
        writeln!(w, "({x}, {y})")?;
    }
    Ok(())
}

/// Returns `(video_a, video_b, ground truth)`.
pub fn read_ground_truth<R: BufRead>(r: R) -> Result<(String, String, GroundTruthPath)> {
    let p = parse_text(r, "#vidalign-ground-truth")?;
    let anchors = p.points.iter().map(|&(_, x, y)| (x, y)).collect();
    let gt =
        GroundTruthPath::new(anchors).map_err(|e| Error::schema(p.last_line, e.to_string()))?;
    Ok((
        p.get("video_a")?.1.to_string(),
        p.get("video_b")?.1.to_string(),
        gt,
    ))
}
