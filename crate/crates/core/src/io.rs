//! File helpers: JSON documents, RGBA images, binary masks and 16-bit label
//! maps.

use std::fs;
use std::path::Path;

use image::{GrayImage, ImageBuffer, Luma, RgbaImage};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::raster::{BinaryMask, LabelMap};

pub fn ensure_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|e| Error::io(path, e))
}

/// Creates the directory holding `path`, if any.
pub fn ensure_parent(path: &Path) -> Result<()> {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => ensure_dir(p),
        _ => Ok(()),
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}

/// Pretty-printed with a trailing newline.
pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    ensure_parent(path)?;
    let mut text = serde_json::to_string_pretty(value).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    ensure_parent(path)?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn image_err(path: &Path) -> impl FnOnce(image::ImageError) -> Error + '_ {
    move |source| Error::Image {
        path: path.to_path_buf(),
        source,
    }
}

pub fn read_rgba(path: &Path) -> Result<RgbaImage> {
    Ok(image::open(path).map_err(image_err(path))?.to_rgba8())
}

pub fn write_rgba(path: &Path, img: &RgbaImage) -> Result<()> {
    img.save(path).map_err(image_err(path))
}

/// Grayscale PNG, 255 on set pixels.
pub fn write_mask(path: &Path, mask: &BinaryMask) -> Result<()> {
    let img = GrayImage::from_fn(mask.width(), mask.height(), |x, y| {
        Luma([if mask.get(x as i64, y as i64) { 255 } else { 0 }])
    });
    img.save(path).map_err(image_err(path))
}

/// Any non-zero luma counts as set.
pub fn read_mask(path: &Path) -> Result<BinaryMask> {
    let img = image::open(path).map_err(image_err(path))?.to_luma8();
    BinaryMask::from_fn(img.width(), img.height(), |x, y| img.get_pixel(x, y).0[0] > 0)
}

/// 16-bit PNG storing `label + 1`; 0 is background.
pub fn write_labels(path: &Path, labels: &LabelMap) -> Result<()> {
    let (w, h) = labels.dimensions();
    let mut data = Vec::with_capacity((w * h) as usize);
    for &l in labels.as_slice() {
        if l == LabelMap::BACKGROUND {
            data.push(0u16);
        } else if l < u16::MAX as u32 {
            data.push(l as u16 + 1);
        } else {
            return Err(Error::invalid(format!("label {l} does not fit a 16-bit label image")));
        }
    }
    let img: ImageBuffer<Luma<u16>, Vec<u16>> = ImageBuffer::from_raw(w, h, data).expect("sized buffer");
    img.save(path).map_err(image_err(path))
}

pub fn read_labels(path: &Path) -> Result<LabelMap> {
    let img = image::open(path).map_err(image_err(path))?.into_luma16();
    let labels = img
        .pixels()
        .map(|p| match p.0[0] {
            0 => LabelMap::BACKGROUND,
            v => v as u32 - 1,
        })
        .collect();
    LabelMap::from_vec(img.width(), img.height(), labels)
}
