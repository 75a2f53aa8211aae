use super::numbered_lines;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::series::{GlobalFeatures, GLOBAL_WIDTH};
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GlobalRecord {
    frame: usize,
    features: Vec<f64>,
}

pub fn read_global<R: BufRead>(r: R) -> Result<GlobalFeatures> {
    let mut data = Vec::new();
    let mut frames = 0;
    for item in numbered_lines(r) {
        let (line, text) = item?;
        let rec: GlobalRecord =
            serde_json::from_str(&text).map_err(|e| Error::schema(line, e.to_string()))?;
        if rec.frame != frames + 1 {
            return Err(Error::schema(
                line,
                format!("expected frame {}, found {}", frames + 1, rec.frame),
            ));
        }
        if rec.features.len() != GLOBAL_WIDTH {
            return Err(Error::schema(
                line,
                format!("{} features, expected {GLOBAL_WIDTH}", rec.features.len()),
            ));
        }
        data.extend(rec.features);
        frames += 1;
    }
    GlobalFeatures::new(Matrix::from_vec(frames, GLOBAL_WIDTH, data).unwrap())
}

pub fn write_global<W: Write>(mut w: W, global: &GlobalFeatures) -> Result<()> {
    for (t, row) in global.values().iter_rows().enumerate() {
        let rec = GlobalRecord {
            frame: t + 1,
            features: row.to_vec(),
        };
        serde_json::to_writer(&mut w, &rec)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}
