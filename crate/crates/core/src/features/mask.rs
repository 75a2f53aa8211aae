use super::SubjectBox;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use serde::{Deserialize, Serialize};

/// How pixel offsets from the box center enter the Gaussian.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MaskScale {
    /// Offsets divided by the half-width and half-height of the margin box,
    /// so the Gaussian spans the subject.
    #[default]
    Normalized,
    /// Raw pixel offsets. The mask collapses to a few pixels around the center.
    RawPixels,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaskConfig {
    /// Total growth of the box width and of its height, split evenly per side.
    pub margin_px: f64,
    /// Outside weight sits this far below the smallest boundary weight.
    pub outside_drop: f64,
    pub scale: MaskScale,
}

impl Default for MaskConfig {
    fn default() -> Self {
        MaskConfig {
            margin_px: 20.0,
            outside_drop: 0.2,
            scale: MaskScale::Normalized,
        }
    }
}

/// Inclusive pixel rectangle, columns `x0..=x1`, rows `y0..=y1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PixelRect {
    pub x0: usize,
    pub y0: usize,
    pub x1: usize,
    pub y1: usize,
}

impl PixelRect {
    pub fn contains(&self, x: usize, y: usize) -> bool {
        (self.x0..=self.x1).contains(&x) && (self.y0..=self.y1).contains(&y)
    }

    pub fn on_border(&self, x: usize, y: usize) -> bool {
        self.contains(x, y) && (x == self.x0 || x == self.x1 || y == self.y0 || y == self.y1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightMask {
    /// `height` rows by `width` columns; pixel `(x, y)` is at row `y`, column `x`.
    pub values: Matrix,
    /// Pixels of the margin box after clipping to the frame.
    pub mbox: PixelRect,
    /// Smallest Gaussian weight on the margin-box border.
    pub g_min: f64,
    /// Weight of every pixel outside the margin box.
    pub outside: f64,
}

impl WeightMask {
    pub fn width(&self) -> usize {
        self.values.cols()
    }

    pub fn height(&self) -> usize {
        self.values.rows()
    }

    pub fn weight_at(&self, x: usize, y: usize) -> f64 {
        self.values.get(y, x)
    }
}

/// Truncated 2D Gaussian weight mask for a `width` x `height` frame.
///
/// Pixel `(x, y)` sits at integer coordinates. Inside the margin box the
/// weight is `exp(-(x'^2 + y'^2) / 2)` with `(x', y')` the offset from the box
/// center (scaled per [`MaskScale`]); outside it is the border minimum less
/// `outside_drop`. Negative outside weights are kept as is.
pub fn gaussian_mask(
    width: usize,
    height: usize,
    bbox: &SubjectBox,
    config: &MaskConfig,
) -> Result<WeightMask> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidParameter(format!(
            "frame must be at least 1x1, got {width}x{height}"
        )));
    }
    if !bbox.is_valid() {
        return Err(Error::DegenerateBox {
            frame: 0,
            width: bbox.w,
            height: bbox.h,
        });
    }
    if config.margin_px.is_nan() || config.margin_px < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "margin must be non-negative, got {}",
            config.margin_px
        )));
    }
    let empty = || Error::EmptyIntersection { width, height };
    let (xmax, ymax) = ((width - 1) as f64, (height - 1) as f64);
    let overlaps = bbox.cx + bbox.w / 2.0 >= 0.0
        && bbox.cx - bbox.w / 2.0 <= xmax
        && bbox.cy + bbox.h / 2.0 >= 0.0
        && bbox.cy - bbox.h / 2.0 <= ymax;
    if !overlaps {
        return Err(empty());
    }

    let half_w = (bbox.w + config.margin_px) / 2.0;
    let half_h = (bbox.h + config.margin_px) / 2.0;
    let x0 = (bbox.cx - half_w).max(0.0).ceil();
    let x1 = (bbox.cx + half_w).min(xmax).floor();
    let y0 = (bbox.cy - half_h).max(0.0).ceil();
    let y1 = (bbox.cy + half_h).min(ymax).floor();
    if x0 > x1 || y0 > y1 {
        return Err(empty());
    }
    let mbox = PixelRect {
        x0: x0 as usize,
        y0: y0 as usize,
        x1: x1 as usize,
        y1: y1 as usize,
    };

    let (sx, sy) = match config.scale {
        MaskScale::Normalized => (half_w, half_h),
        MaskScale::RawPixels => (1.0, 1.0),
    };
    let gauss = |x: usize, y: usize| {
        let dx = (x as f64 - bbox.cx) / sx;
        let dy = (y as f64 - bbox.cy) / sy;
        (-(dx * dx + dy * dy) / 2.0).exp()
    };

    let mut g_min = f64::INFINITY;
    for x in mbox.x0..=mbox.x1 {
        g_min = g_min.min(gauss(x, mbox.y0)).min(gauss(x, mbox.y1));
    }
    for y in mbox.y0..=mbox.y1 {
        g_min = g_min.min(gauss(mbox.x0, y)).min(gauss(mbox.x1, y));
    }
    let outside = g_min - config.outside_drop;

    let values = Matrix::from_fn(height, width, |y, x| {
        if mbox.contains(x, y) {
            gauss(x, y)
        } else {
            outside
        }
    });
    Ok(WeightMask {
        values,
        mbox,
        g_min,
        outside,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn center_pixel_has_unit_weight() {
        let b = SubjectBox::new(50.0, 40.0, 20.0, 30.0);
        let m = gaussian_mask(100, 80, &b, &MaskConfig::default()).unwrap();
        assert_eq!(m.weight_at(50, 40), 1.0);
    }

    #[test]
    fn margin_box_corner_is_exp_minus_one() {
        // w + margin = 40, h + margin = 60: corners at integer pixels
        let b = SubjectBox::new(50.0, 40.0, 20.0, 40.0);
        let m = gaussian_mask(200, 200, &b, &MaskConfig::default()).unwrap();
        assert_eq!(
            m.mbox,
            PixelRect {
                x0: 30,
                y0: 10,
                x1: 70,
                y1: 70
            }
        );
        let corner = (-1.0f64).exp();
        assert!((m.g_min - corner).abs() < 1e-15);
        assert!((m.weight_at(30, 10) - 0.3679).abs() < 1e-4);
        assert!((m.outside - 0.1679).abs() < 1e-4);
        assert_eq!(m.weight_at(0, 0), m.g_min - 0.2);
        assert_eq!(m.weight_at(71, 40), m.outside);
    }

    #[test]
    fn margin_box_covering_frame_has_no_outside_pixels() {
        let b = SubjectBox::new(5.0, 5.0, 40.0, 40.0);
        let m = gaussian_mask(10, 10, &b, &MaskConfig::default()).unwrap();
        assert_eq!(
            m.mbox,
            PixelRect {
                x0: 0,
                y0: 0,
                x1: 9,
                y1: 9
            }
        );
        let min = m
            .values
            .as_slice()
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        assert_eq!(min, m.g_min);
    }

    #[test]
    fn disjoint_box_is_rejected() {
        let b = SubjectBox::new(-100.0, 5.0, 10.0, 10.0);
        assert!(matches!(
            gaussian_mask(10, 10, &b, &MaskConfig::default()),
            Err(Error::EmptyIntersection { .. })
        ));
    }

    #[test]
    fn raw_pixel_scale_collapses_quickly() {
        let b = SubjectBox::new(50.0, 50.0, 40.0, 40.0);
        let cfg = MaskConfig {
            scale: MaskScale::RawPixels,
            ..MaskConfig::default()
        };
        let m = gaussian_mask(100, 100, &b, &cfg).unwrap();
        assert!(m.weight_at(54, 50) < 1e-3);
        // the outside weight goes negative and is kept
        assert!(m.outside < 0.0);
        assert_eq!(m.weight_at(0, 0), m.outside);
    }
}
