//! Grayscale images, vectorization, and binary PGM (P5) I/O.
//!
//! Pixels live in `[0, 1]`, normalized from 8-bit by `/255`. Vectorization
//! stacks columns top-to-bottom, left-to-right, so it is invertible given
//! the image dimensions.

use nalgebra::DVector;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// A grayscale image with row-major pixels in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<f64>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidInput(format!(
                "image dimensions must be positive, got {width}x{height}"
            )));
        }
        if pixels.len() != width * height {
            return Err(Error::DimensionMismatch(format!(
                "{} pixels for a {width}x{height} image",
                pixels.len()
            )));
        }
        if pixels.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::InvalidInput(
                "pixel values must lie in [0, 1]".into(),
            ));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Row-major pixel data.
    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.pixels[row * self.width + col]
    }

    pub(crate) fn pixels_mut(&mut self) -> &mut [f64] {
        &mut self.pixels
    }
}

/// Stacks the image into a column vector, column-major: columns concatenated
/// top-to-bottom, left-to-right.
pub fn image_to_vector(img: &GrayImage) -> DVector<f64> {
    let (w, h) = (img.width(), img.height());
    let mut v = Vec::with_capacity(w * h);
    for col in 0..w {
        for row in 0..h {
            v.push(img.get(row, col));
        }
    }
    DVector::from_vec(v)
}

/// Inverse of [`image_to_vector`] given the original dimensions.
pub fn vector_to_image(v: &DVector<f64>, width: usize, height: usize) -> Result<GrayImage> {
    if v.len() != width * height {
        return Err(Error::DimensionMismatch(format!(
            "vector length {} for a {width}x{height} image",
            v.len()
        )));
    }
    let mut pixels = vec![0.0; width * height];
    for col in 0..width {
        for row in 0..height {
            pixels[row * width + col] = v[col * height + row];
        }
    }
    GrayImage::new(width, height, pixels)
}

struct PgmHeader {
    width: usize,
    height: usize,
    maxval: usize,
    data_offset: usize,
}

// Reads the P5 header: magic, then three decimal fields separated by
// whitespace or `#` comments, then a single whitespace byte before the data.
fn parse_pgm_header(bytes: &[u8]) -> Result<PgmHeader> {
    if bytes.len() < 2 {
        return Err(Error::MalformedImage("file too short for a header".into()));
    }
    match &bytes[..2] {
        b"P5" => {}
        b"P2" => {
            return Err(Error::UnsupportedFormat(
                "ASCII PGM (P2) is not supported; use binary P5".into(),
            ))
        }
        _ => {
            return Err(Error::UnsupportedFormat(format!(
                "not a PGM file (magic {:?})",
                String::from_utf8_lossy(&bytes[..2])
            )))
        }
    }

    let mut pos = 2;
    let mut fields = [0usize; 3];
    for field in fields.iter_mut() {
        // Skip whitespace and comment lines.
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while pos < bytes.len() && bytes[pos] != b'\n' {
                        pos += 1;
                    }
                }
                Some(_) => break,
                None => return Err(Error::MalformedImage("truncated header".into())),
            }
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if start == pos {
            return Err(Error::MalformedImage("expected a decimal header field".into()));
        }
        *field = std::str::from_utf8(&bytes[start..pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::MalformedImage("header field out of range".into()))?;
    }

    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => {
            return Err(Error::MalformedImage(
                "expected single whitespace byte before pixel data".into(),
            ))
        }
    }

    Ok(PgmHeader {
        width: fields[0],
        height: fields[1],
        maxval: fields[2],
        data_offset: pos,
    })
}

/// Loads a binary 8-bit PGM (P5). Pixel bytes are scaled to `[0, 1]` by
/// `/255`.
pub fn load_pgm(path: impl AsRef<Path>) -> Result<GrayImage> {
    let bytes = fs::read(path.as_ref())?;
    let header = parse_pgm_header(&bytes)?;
    if header.maxval == 0 || header.maxval > 255 {
        return Err(Error::UnsupportedFormat(format!(
            "only 8-bit PGM is supported (maxval {} found)",
            header.maxval
        )));
    }
    if header.width == 0 || header.height == 0 {
        return Err(Error::MalformedImage("zero image dimension".into()));
    }
    let expected = header.width * header.height;
    let data = &bytes[header.data_offset..];
    if data.len() < expected {
        return Err(Error::MalformedImage(format!(
            "expected {expected} pixel bytes, found {}",
            data.len()
        )));
    }
    let pixels = data[..expected].iter().map(|&b| b as f64 / 255.0).collect();
    GrayImage::new(header.width, header.height, pixels)
}

/// Writes a binary 8-bit PGM (P5) with maxval 255, quantizing pixels by
/// round-half-up. The exact inverse of [`load_pgm`] on quantized pixels.
pub fn save_pgm(img: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let mut out = Vec::with_capacity(32 + img.width() * img.height());
    out.extend_from_slice(format!("P5\n{} {}\n255\n", img.width(), img.height()).as_bytes());
    out.extend(img.pixels().iter().map(|&p| {
        let q = (p * 255.0 + 0.5).floor();
        q.clamp(0.0, 255.0) as u8
    }));
    fs::write(path.as_ref(), out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn new_validates() {
        assert!(GrayImage::new(0, 4, vec![]).is_err());
        assert!(GrayImage::new(2, 2, vec![0.0; 3]).is_err());
        assert!(GrayImage::new(2, 1, vec![0.5, 1.5]).is_err());
        assert!(GrayImage::new(2, 1, vec![0.5, -0.1]).is_err());
        assert!(GrayImage::new(2, 1, vec![0.5, 1.0]).is_ok());
    }

    #[test]
    fn vectorize_single_pixel() {
        let img = GrayImage::new(1, 1, vec![0.5]).unwrap();
        assert_eq!(image_to_vector(&img).as_slice(), &[0.5]);
    }

    #[test]
    fn vectorize_is_column_major() {
        // rows [[a,b],[c,d]] stacks as [a,c,b,d].
        let (a, b, c, d) = (0.1, 0.2, 0.3, 0.4);
        let img = GrayImage::new(2, 2, vec![a, b, c, d]).unwrap();
        assert_eq!(image_to_vector(&img).as_slice(), &[a, c, b, d]);
    }

    #[test]
    fn pgm_bytes_scale_by_255() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.pgm");
        std::fs::write(&path, {
            let mut v = b"P5\n2 2\n255\n".to_vec();
            v.extend_from_slice(&[0u8, 255, 128, 64]);
            v
        })
        .unwrap();
        let img = load_pgm(&path).unwrap();
        assert_eq!(img.pixels(), &[0.0, 1.0, 128.0 / 255.0, 64.0 / 255.0]);
    }

    #[test]
    fn pgm_rejects_ascii_and_16bit() {
        let dir = tempfile::tempdir().unwrap();
        let p2 = dir.path().join("ascii.pgm");
        std::fs::write(&p2, b"P2\n1 1\n255\n0\n").unwrap();
        assert!(matches!(load_pgm(&p2), Err(Error::UnsupportedFormat(_))));

        let deep = dir.path().join("deep.pgm");
        let mut v = b"P5\n1 1\n65535\n".to_vec();
        v.extend_from_slice(&[0, 0]);
        std::fs::write(&deep, v).unwrap();
        assert!(matches!(load_pgm(&deep), Err(Error::UnsupportedFormat(_))));

        let trunc = dir.path().join("trunc.pgm");
        std::fs::write(&trunc, b"P5\n4 4\n255\n\x01\x02").unwrap();
        assert!(matches!(load_pgm(&trunc), Err(Error::MalformedImage(_))));
    }

    #[test]
    fn pgm_header_comments_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.pgm");
        let mut v = b"P5\n# a comment\n2 1 # trailing\n255\n".to_vec();
        v.extend_from_slice(&[10, 20]);
        std::fs::write(&path, v).unwrap();
        let img = load_pgm(&path).unwrap();
        assert_eq!(img.width(), 2);
        assert_eq!(img.height(), 1);
    }

    proptest! {
        #[test]
        fn vectorize_round_trips(w in 1usize..9, h in 1usize..9, seed in 0u64..1000) {
            let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            let pixels: Vec<f64> = (0..w * h).map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (s >> 11) as f64 / (1u64 << 53) as f64
            }).collect();
            let img = GrayImage::new(w, h, pixels).unwrap();
            let back = vector_to_image(&image_to_vector(&img), w, h).unwrap();
            prop_assert_eq!(back, img);
        }

        #[test]
        fn pgm_save_load_round_trips_quantized(w in 1usize..6, h in 1usize..6, seed in 0u64..200) {
            let mut s = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(7);
            let pixels: Vec<f64> = (0..w * h).map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s >> 40) & 0xFF) as f64 / 255.0
            }).collect();
            let img = GrayImage::new(w, h, pixels).unwrap();
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("rt.pgm");
            save_pgm(&img, &path).unwrap();
            let back = load_pgm(&path).unwrap();
            // Pixels were already exact multiples of 1/255, so the round
            // trip is exact.
            prop_assert_eq!(back, img);
        }
    }
}
