use super::{numbered_lines, parse_f64};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use std::io::{BufRead, Read, Write};

const MASK_MAGIC: &[u8; 8] = b"VAMASK01";
const TEXT_MAGIC: &str = "#vidalign-mask";

/// 16-byte header (`VAMASK01`, height, width as u32 LE) then row-major f64 LE.
pub fn write_mask<W: Write>(mut w: W, values: &Matrix) -> Result<()> {
    w.write_all(MASK_MAGIC)?;
    w.write_all(&(values.rows() as u32).to_le_bytes())?;
    w.write_all(&(values.cols() as u32).to_le_bytes())?;
    for v in values.as_slice() {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_mask<R: Read>(mut r: R) -> Result<Matrix> {
    let mut header = [0u8; 16];
    r.read_exact(&mut header)?;
    if &header[..8] != MASK_MAGIC {
        return Err(Error::schema(0, "not a binary mask file"));
    }
    let h = u32::from_le_bytes(header[8..12].try_into().unwrap()) as usize;
    let w = u32::from_le_bytes(header[12..16].try_into().unwrap()) as usize;
    let mut data = Vec::with_capacity(h * w);
    let mut buf = [0u8; 8];
    for _ in 0..h * w {
        r.read_exact(&mut buf)?;
        data.push(f64::from_le_bytes(buf));
    }
    Ok(Matrix::from_vec(h, w, data).unwrap())
}

/// `#vidalign-mask H W` then one space-separated row per line.
pub fn write_mask_text<W: Write>(mut w: W, values: &Matrix) -> Result<()> {
    writeln!(w, "{TEXT_MAGIC} {} {}", values.rows(), values.cols())?;
    for row in values.iter_rows() {
        let cells: Vec<String> = row.iter().map(f64::to_string).collect();
        writeln!(w, "{}", cells.join(" "))?;
    }
    Ok(())
}

pub fn read_mask_text<R: BufRead>(r: R) -> Result<Matrix> {
    let mut lines = numbered_lines(r);
    let (line, head) = lines
        .next()
        .transpose()?
        .ok_or_else(|| Error::schema(1, "empty mask file"))?;
    let dims: Vec<&str> = head.split_whitespace().collect();
    let (h, w) = match dims.as_slice() {
        [magic, h, w] if *magic == TEXT_MAGIC => (
            h.parse::<usize>()
                .map_err(|_| Error::schema(line, "bad height"))?,
            w.parse::<usize>()
                .map_err(|_| Error::schema(line, "bad width"))?,
        ),
        _ => {
            return Err(Error::schema(
                line,
                format!("expected \"{TEXT_MAGIC} H W\""),
            ))
        }
    };
    let mut data = Vec::with_capacity(h * w);
    let mut rows = 0;
    for item in lines {
        let (line, text) = item?;
        let before = data.len();
        for cell in text.split_whitespace() {
            data.push(parse_f64(line, cell)?);
        }
        if data.len() - before != w {
            return Err(Error::schema(line, format!("expected {w} values")));
        }
        rows += 1;
    }
    if rows != h {
        return Err(Error::schema(
            line,
            format!("expected {h} rows, found {rows}"),
        ));
    }
    Ok(Matrix::from_vec(h, w, data).unwrap())
}
