use std::io::{Read, Write};

use crate::error::{Error, Result};

/// Row-major grid of intensities.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    height: usize,
    width: usize,
    data: Vec<f64>,
}

impl Image {
    pub fn new(height: usize, width: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != height * width {
            return Err(Error::DimensionMismatch {
                expected: height * width,
                got: data.len(),
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "image entries must be finite".into(),
            ));
        }
        Ok(Self {
            height,
            width,
            data,
        })
    }

    pub fn zeros(height: usize, width: usize) -> Self {
        Self::filled(height, width, 0.0)
    }

    pub fn filled(height: usize, width: usize, value: f64) -> Self {
        Self {
            height,
            width,
            data: vec![value; height * width],
        }
    }

    /// Builds an image from a function of `(row, col)`.
    pub fn from_fn(height: usize, width: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let data = (0..height * width)
            .map(|p| f(p / width, p % width))
            .collect();
        Self {
            height,
            width,
            data,
        }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.width + col]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    /// Same shape, new pixels. Entries may be nonfinite (diverged iterates).
    pub fn with_data(&self, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), self.data.len());
        Self {
            height: self.height,
            width: self.width,
            data,
        }
    }

    pub fn mean(&self) -> f64 {
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }

    /// Binary PGM (P5). Pixels are rounded and clamped to `0..=255`.
    pub fn write_pgm<W: Write>(&self, mut out: W) -> Result<()> {
        write!(out, "P5\n{} {}\n255\n", self.width, self.height)?;
        let bytes: Vec<u8> = self
            .data
            .iter()
            .map(|v| {
                if v.is_nan() {
                    0
                } else {
                    v.round().clamp(0.0, 255.0) as u8
                }
            })
            .collect();
        out.write_all(&bytes)?;
        Ok(())
    }

    /// Reads an 8-bit binary PGM (P5, maxval at most 255); intensities keep the 0..=maxval scale.
    pub fn read_pgm<R: Read>(mut input: R) -> Result<Self> {
        let mut buf = Vec::new();
        input.read_to_end(&mut buf)?;
        let mut pos = 0;
        let mut fields = [0usize; 3];
        let magic = next_token(&buf, &mut pos).ok_or_else(|| Error::Parse("empty PGM".into()))?;
        if magic != b"P5" {
            return Err(Error::Parse("not a binary PGM (expected P5)".into()));
        }
        for f in &mut fields {
            let tok = next_token(&buf, &mut pos)
                .ok_or_else(|| Error::Parse("truncated PGM header".into()))?;
            *f = std::str::from_utf8(tok)
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse("bad PGM header field".into()))?;
        }
        let [width, height, maxval] = fields;
        if maxval == 0 || maxval > 255 {
            return Err(Error::Parse(format!("unsupported maxval {maxval}")));
        }
        // exactly one whitespace byte separates the header from the raster
        pos += 1;
        let raster = buf
            .get(pos..pos + width * height)
            .ok_or_else(|| Error::Parse("truncated PGM raster".into()))?;
        Self::new(
            height,
            width,
            raster.iter().map(|&b| f64::from(b)).collect(),
        )
    }

    /// Lossless text grid: `H W` header, then `H` rows of `W` reals.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.height, self.width);
        for row in self.data.chunks(self.width) {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let mut dim = || -> Result<usize> {
            tokens
                .next()
                .ok_or_else(|| Error::Parse("missing grid header".into()))?
                .parse()
                .map_err(|e| Error::Parse(format!("grid header: {e}")))
        };
        let (h, w) = (dim()?, dim()?);
        let data = tokens
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("'{t}': {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(h, w, data)
    }
}

fn next_token<'a>(buf: &'a [u8], pos: &mut usize) -> Option<&'a [u8]> {
    loop {
        while *pos < buf.len() && buf[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < buf.len() && buf[*pos] == b'#' {
            while *pos < buf.len() && buf[*pos] != b'\n' {
                *pos += 1;
            }
            continue;
        }
        break;
    }
    let start = *pos;
    while *pos < buf.len() && !buf[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    (start < *pos).then(|| &buf[start..*pos])
}

/// Piecewise-constant test scene on the 0..=255 intensity scale: a dark
/// background with a bright rectangle, a disk, a thin bar and a checkered patch.
pub fn phantom(size: usize) -> Image {
    let s = size as f64;
    Image::from_fn(size, size, |r, c| {
        let (y, x) = ((r as f64 + 0.5) / s, (c as f64 + 0.5) / s);
        let mut v = 40.0;
        if (0.15..0.55).contains(&y) && (0.1..0.45).contains(&x) {
            v = 200.0;
        }
        if (y - 0.65).powi(2) + (x - 0.68).powi(2) < 0.22f64.powi(2) {
            v = 150.0;
        }
        if (0.08..0.14).contains(&y) && (0.55..0.92).contains(&x) {
            v = 240.0;
        }
        if (0.7..0.9).contains(&y) && (0.1..0.3).contains(&x) {
            let checker = ((y * 20.0) as usize + (x * 20.0) as usize).is_multiple_of(2);
            v = if checker { 100.0 } else { 10.0 };
        }
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pgm_round_trip() {
        let img = Image::from_fn(3, 5, |r, c| (r * 40 + c * 7) as f64);
        let mut bytes = Vec::new();
        img.write_pgm(&mut bytes).unwrap();
        assert!(bytes.starts_with(b"P5\n5 3\n255\n"));
        assert_eq!(Image::read_pgm(bytes.as_slice()).unwrap(), img);
    }

    #[test]
    fn pgm_with_comment_and_clamping() {
        let raw = b"P5\n# made by hand\n2 1\n255\n\x00\xff";
        let img = Image::read_pgm(&raw[..]).unwrap();
        assert_eq!(img.data(), &[0.0, 255.0]);
        let bright = Image::new(1, 2, vec![-5.0, 300.0]).unwrap();
        let mut out = Vec::new();
        bright.write_pgm(&mut out).unwrap();
        assert_eq!(&out[out.len() - 2..], &[0u8, 255u8]);
    }

    #[test]
    fn pgm_rejects_bad_input() {
        assert!(Image::read_pgm(&b"P2\n1 1\n255\n0"[..]).is_err());
        assert!(Image::read_pgm(&b"P5\n4 4\n255\n\x00"[..]).is_err());
        assert!(Image::read_pgm(&b"P5\n1 1\n65535\n\x00\x00"[..]).is_err());
    }

    #[test]
    fn text_round_trip_is_lossless() {
        let img = Image::from_fn(2, 3, |r, c| (r as f64 + 0.1) / (c as f64 + 3.0));
        assert_eq!(Image::from_text(&img.to_text()).unwrap(), img);
        assert!(Image::from_text("2 2\n1 2 3").is_err());
    }

    #[test]
    fn phantom_is_piecewise_constant() {
        let p = phantom(64);
        let mut levels: Vec<f64> = p.data().to_vec();
        levels.sort_by(f64::total_cmp);
        levels.dedup();
        assert!(levels.len() <= 6);
        assert!(levels.iter().all(|v| (0.0..=255.0).contains(v)));
    }
}
