//! `mask`: Gaussian weight mask for a subject box.

use crate::config::FileConfig;
use crate::support::{emit, input_err};
use anyhow::Result;
use std::path::PathBuf;
use vidalign::features::{gaussian_mask, MaskConfig, MaskScale, SubjectBox};

#[derive(Debug, clap::Args)]
pub struct Args {
    #[arg(long)]
    pub width: usize,
    #[arg(long)]
    pub height: usize,
    /// Subject box as `cx,cy,w,h` in pixels.
    #[arg(long = "box", value_name = "CX,CY,W,H")]
    pub bbox: String,
    #[arg(long)]
    pub out: PathBuf,
    /// Write the text encoding instead of binary.
    #[arg(long)]
    pub text: bool,
    /// Total growth of box width and height in pixels [default: 20].
    #[arg(long)]
    pub margin_px: Option<f64>,
    /// Drop below the border minimum for pixels outside the box [default: 0.2].
    #[arg(long)]
    pub outside_drop: Option<f64>,
    /// Use raw pixel offsets in the Gaussian.
    #[arg(long)]
    pub raw_pixels: bool,
}

fn parse_box(s: &str) -> Result<SubjectBox> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| input_err(format!("--box expects four numbers, got {s:?}")))?;
    match v[..] {
        [cx, cy, w, h] => Ok(SubjectBox::new(cx, cy, w, h)),
        _ => Err(input_err(format!("--box expects four numbers, got {s:?}"))),
    }
}

pub fn run(args: Args, cfg: &FileConfig) -> Result<()> {
    let d = MaskConfig::default();
    let mask_cfg = MaskConfig {
        margin_px: args.margin_px.or(cfg.mask.margin_px).unwrap_or(d.margin_px),
        outside_drop: args
            .outside_drop
            .or(cfg.mask.outside_drop)
            .unwrap_or(d.outside_drop),
        scale: if args.raw_pixels {
            MaskScale::RawPixels
        } else {
            cfg.mask.scale.unwrap_or(d.scale)
        },
    };
    let bbox = parse_box(&args.bbox)?;
    let mask = gaussian_mask(args.width, args.height, &bbox, &mask_cfg)?;
    emit(&args.out, |buf| {
        if args.text {
            vidalign::io::write_mask_text(buf, &mask.values)
        } else {
            vidalign::io::write_mask(buf, &mask.values)
        }
    })?;
    let r = mask.mbox;
    println!(
        "mbox x={}..={} y={}..={}\tg_min={}\toutside={}",
        r.x0, r.x1, r.y0, r.y1, mask.g_min, mask.outside
    );
    Ok(())
}
