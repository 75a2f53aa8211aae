use super::{check_id, numbered_lines, parse_f64};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::series::FeatureSeries;
use std::io::{BufRead, BufReader, Read, Write};

pub const SERIES_MAGIC: &[u8; 8] = b"VASERIE1";
const CSV_ID_PREFIX: &str = "#video_id,";

pub fn write_series_bin<W: Write>(mut w: W, series: &FeatureSeries) -> Result<()> {
    check_id(series.video_id())?;
    let id = series.video_id().as_bytes();
    w.write_all(SERIES_MAGIC)?;
    for v in [series.len(), series.dim(), id.len()] {
        w.write_all(&u32::try_from(v).map_err(|_| too_large(v))?.to_le_bytes())?;
    }
    w.write_all(id)?;
    for v in series.values().as_slice() {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

fn too_large(v: usize) -> Error {
    Error::InvalidParameter(format!("{v} does not fit the series header"))
}

pub fn read_series_bin<R: Read>(mut r: R) -> Result<FeatureSeries> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != SERIES_MAGIC {
        return Err(Error::schema(0, "not a binary series file"));
    }
    let mut word = [0u8; 4];
    let mut next_u32 = |r: &mut R| -> Result<usize> {
        r.read_exact(&mut word)?;
        Ok(u32::from_le_bytes(word) as usize)
    };
    let (rows, cols, id_len) = (next_u32(&mut r)?, next_u32(&mut r)?, next_u32(&mut r)?);
    let mut id = vec![0u8; id_len];
    r.read_exact(&mut id)?;
    let id = String::from_utf8(id).map_err(|_| Error::schema(0, "video id is not UTF-8"))?;
    let mut data = Vec::with_capacity(rows * cols);
    let mut buf = [0u8; 8];
    for _ in 0..rows * cols {
        r.read_exact(&mut buf)?;
        data.push(f64::from_le_bytes(buf));
    }
    if r.read(&mut buf)? != 0 {
        return Err(Error::schema(0, "trailing bytes after series data"));
    }
    FeatureSeries::new(id, Matrix::from_vec(rows, cols, data).unwrap())
}

/// First line `#video_id,<id>`, then one comma-separated row per frame.
pub fn write_series_csv<W: Write>(mut w: W, series: &FeatureSeries) -> Result<()> {
    check_id(series.video_id())?;
    writeln!(w, "{CSV_ID_PREFIX}{}", series.video_id())?;
    for row in series.values().iter_rows() {
        let mut first = true;
        for v in row {
            if !first {
                w.write_all(b",")?;
            }
            write!(w, "{v}")?;
            first = false;
        }
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_series_csv<R: BufRead>(r: R) -> Result<FeatureSeries> {
    let mut lines = numbered_lines(r);
    let id = match lines.next().transpose()? {
        Some((_, l)) if l.starts_with(CSV_ID_PREFIX) => l[CSV_ID_PREFIX.len()..].to_string(),
        Some((line, _)) => return Err(Error::schema(line, "missing #video_id header")),
        None => return Err(Error::schema(1, "empty series file")),
    };
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for item in lines {
        let (line, text) = item?;
        let row = text
            .split(',')
            .map(|f| parse_f64(line, f))
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::schema(
                    line,
                    format!("{} columns, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    let values = Matrix::from_rows(&rows).unwrap_or_else(|| Matrix::zeros(0, 0));
    FeatureSeries::new(id, values)
}

/// Reads either format, sniffing the binary magic.
pub fn read_series<R: Read>(r: R) -> Result<FeatureSeries> {
    let mut r = BufReader::new(r);
    let head = r.fill_buf()?;
    if head.starts_with(SERIES_MAGIC) {
        read_series_bin(r)
    } else {
        read_series_csv(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> FeatureSeries {
        let m = Matrix::from_rows(&[[0.1, -2.5e-300, 3.0], [1.0 / 3.0, -0.0, 7e21]]).unwrap();
        FeatureSeries::new("clip 01", m).unwrap()
    }

    #[test]
    fn binary_and_csv_round_trip() {
        let s = sample();
        let mut bin = Vec::new();
        write_series_bin(&mut bin, &s).unwrap();
        assert_eq!(&bin[..8], SERIES_MAGIC);
        assert_eq!(read_series(bin.as_slice()).unwrap(), s);

        let mut csv = Vec::new();
        write_series_csv(&mut csv, &s).unwrap();
        let back = read_series(csv.as_slice()).unwrap();
        assert_eq!(back, s);
        let mut again = Vec::new();
        write_series_csv(&mut again, &back).unwrap();
        assert_eq!(csv, again);
    }

    #[test]
    fn ragged_csv_rejected() {
        let text = "#video_id,v\n1,2\n3\n";
        assert!(matches!(
            read_series_csv(text.as_bytes()),
            Err(Error::Schema { line: 3, .. })
        ));
        assert!(read_series_csv("1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn truncated_binary_rejected() {
        let mut bin = Vec::new();
        write_series_bin(&mut bin, &sample()).unwrap();
        bin.pop();
        assert!(read_series_bin(bin.as_slice()).is_err());
    }
}
