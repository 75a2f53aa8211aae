use super::GroundTruthPath;
use crate::align::WarpPath;
use crate::error::{Error, Result};

/// Area enclosed between a predicted path and the ground truth, as a fraction
/// of the `(n - 1) x (k - 1)` table spanned by frame centers.
pub fn eae(predicted: &WarpPath, gt: &GroundTruthPath, n: usize, k: usize) -> Result<f64> {
    if n < 2 || k < 2 {
        return Err(Error::InvalidParameter(format!(
            "enclosed area needs at least two frames per video, got {n}x{k}"
        )));
    }
    predicted.validate(n, k)?;
    if gt.end() != (n as f64, k as f64) {
        return Err(Error::EndpointMismatch { n, k });
    }
    let pred: Vec<(f64, f64)> = predicted
        .steps()
        .iter()
        .map(|&(i, j)| (i as f64, j as f64))
        .collect();
    Ok(enclosed_area(&pred, gt.anchors()) / ((n - 1) as f64 * (k - 1) as f64))
}

/// Unsigned area between two monotone polylines sharing both endpoints.
///
/// Both polylines must strictly increase in `x + y` from vertex to vertex,
/// which holds for warp paths and ground-truth paths. In the rotated frame
/// `u = x + y`, `v = x - y` each polyline is a function `v(u)`, and the area is
/// half the integral of `|v_a(u) - v_b(u)|`. Where the polylines cross, the
/// lobes on either side add up instead of cancelling.
pub fn enclosed_area(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    let rot =
        |p: &[(f64, f64)]| -> Vec<(f64, f64)> { p.iter().map(|&(x, y)| (x + y, x - y)).collect() };
    let (a, b) = (rot(a), rot(b));
    let mut us: Vec<f64> = a.iter().chain(&b).map(|p| p.0).collect();
    us.sort_by(f64::total_cmp);
    us.dedup();

    let (mut ia, mut ib) = (0, 0);
    let mut gap = |u: f64| v_at(&a, &mut ia, u) - v_at(&b, &mut ib, u);
    let mut total = 0.0;
    let mut prev = (us[0], gap(us[0]));
    for &u in &us[1..] {
        let cur = (u, gap(u));
        let width = cur.0 - prev.0;
        let (g0, g1) = (prev.1, cur.1);
        total += if g0 * g1 >= 0.0 {
            width * (g0.abs() + g1.abs()) / 2.0
        } else {
            // sign change: two triangles meeting at the crossing
            width * (g0 * g0 + g1 * g1) / (2.0 * (g0.abs() + g1.abs()))
        };
        prev = cur;
    }
    total / 2.0
}

/// Linear interpolation of `v` at `u`, advancing `idx` monotonically.
/// Outside the polyline's range the nearest end value is used.
fn v_at(poly: &[(f64, f64)], idx: &mut usize, u: f64) -> f64 {
    while *idx + 1 < poly.len() && poly[*idx + 1].0 <= u {
        *idx += 1;
    }
    let (u0, v0) = poly[*idx];
    if *idx + 1 == poly.len() || u <= u0 {
        return v0;
    }
    let (u1, v1) = poly[*idx + 1];
    v0 + (v1 - v0) * (u - u0) / (u1 - u0)
}
