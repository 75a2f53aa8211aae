use super::numbered_lines;
use crate::error::{Error, Result};
use crate::eval::PhaseAnnotation;
use std::io::{BufRead, Write};

/// Reads annotation records, validating each; duplicate ids are rejected.
pub fn read_annotations<R: BufRead>(r: R) -> Result<Vec<PhaseAnnotation>> {
    let mut out: Vec<PhaseAnnotation> = Vec::new();
    for item in numbered_lines(r) {
        let (line, text) = item?;
        let a: PhaseAnnotation =
            serde_json::from_str(&text).map_err(|e| Error::schema(line, e.to_string()))?;
        a.validate()
            .map_err(|e| Error::schema(line, e.to_string()))?;
        if out.iter().any(|o| o.video_id == a.video_id) {
            return Err(Error::schema(
                line,
                format!("duplicate videoId {:?}", a.video_id),
            ));
        }
        out.push(a);
    }
    Ok(out)
}

pub fn write_annotations<W: Write>(mut w: W, annotations: &[PhaseAnnotation]) -> Result<()> {
    for a in annotations {
        serde_json::to_writer(&mut w, a)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}
