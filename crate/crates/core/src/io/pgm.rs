//! Netpbm graymaps, ASCII (`P2`) and binary (`P5`). Physical values are
//! `offset + scale·pixel`; spacing, origin, scale and offset travel in a
//! sidecar `key = value` file next to the image.

use super::{Header, IoError};
use crate::lattice::{LatticePoint, WindowSpec};
use crate::measure::AtomicMeasure;
use crate::scalar::{Mode, Scalar};
use crate::signal::LatticeSignal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PgmImage {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    /// Row-major, top row first.
    pub pixels: Vec<u16>,
}

struct Tokens<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn skip_space(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                b if b.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn next(&mut self) -> Option<&'a str> {
        self.skip_space();
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.bytes[start..self.pos]).unwrap_or(""))
    }

    fn number(&mut self, what: &str) -> Result<usize, IoError> {
        let t = self.next().ok_or_else(|| IoError::Format(format!("PGM: missing {what}")))?;
        t.parse().map_err(|_| IoError::Format(format!("PGM: bad {what} {t:?}")))
    }
}

pub fn parse_pgm(bytes: &[u8]) -> Result<PgmImage, IoError> {
    let mut tokens = Tokens { bytes, pos: 0 };
    let magic = tokens.next().ok_or_else(|| IoError::Format("PGM: empty file".into()))?;
    let binary = match magic {
        "P2" => false,
        "P5" => true,
        other => return Err(IoError::Format(format!("PGM: unsupported magic {other:?}"))),
    };
    let width = tokens.number("width")?;
    let height = tokens.number("height")?;
    let maxval = tokens.number("maxval")?;
    if !(1..=65535).contains(&maxval) || width == 0 || height == 0 {
        return Err(IoError::Format(format!("PGM: bad header {width}x{height} maxval {maxval}")));
    }
    let count = width * height;
    let pixels: Vec<u16> = if binary {
        // Exactly one whitespace byte separates the header from the raster.
        let start = tokens.pos + 1;
        let wide = maxval > 255;
        let need = count * if wide { 2 } else { 1 };
        let raster = bytes.get(start..start + need).ok_or_else(|| IoError::Format("PGM: truncated raster".into()))?;
        if wide {
            raster.chunks_exact(2).map(|c| u16::from_be_bytes([c[0], c[1]])).collect()
        } else {
            raster.iter().map(|&b| b as u16).collect()
        }
    } else {
        (0..count).map(|_| tokens.number("pixel").map(|v| v as u16)).collect::<Result<_, _>>()?
    };
    if pixels.iter().any(|&p| p as usize > maxval) {
        return Err(IoError::Format("PGM: pixel above maxval".into()));
    }
    Ok(PgmImage { width, height, maxval: maxval as u16, pixels })
}

pub fn write_pgm(image: &PgmImage, binary: bool, header: &Header) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(if binary { b"P5\n" } else { b"P2\n" });
    out.extend_from_slice(header.as_comments().as_bytes());
    out.extend_from_slice(format!("{} {}\n{}\n", image.width, image.height, image.maxval).as_bytes());
    if binary {
        for &p in &image.pixels {
            if image.maxval > 255 {
                out.extend_from_slice(&p.to_be_bytes());
            } else {
                out.push(p as u8);
            }
        }
    } else {
        for row in image.pixels.chunks(image.width) {
            let line: Vec<String> = row.iter().map(u16::to_string).collect();
            out.extend_from_slice(line.join(" ").as_bytes());
            out.push(b'\n');
        }
    }
    out
}

/// Maps values to pixels. Integer values already inside `[0, maxval]` are
/// kept as they are (`scale = 1`, `offset = 0`); anything else is stretched
/// linearly onto `[0, maxval]`. Returns `(pixels, scale, offset)`.
pub fn quantize(values: &[f64], maxval: u16) -> (Vec<u16>, f64, f64) {
    let top = maxval as f64;
    if values.iter().all(|v| v.fract() == 0.0 && (0.0..=top).contains(v)) {
        return (values.iter().map(|&v| v as u16).collect(), 1.0, 0.0);
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let scale = if hi > lo { (hi - lo) / top } else { 1.0 };
    let pixels = values.iter().map(|v| ((v - lo) / scale).round().clamp(0.0, top) as u16).collect();
    (pixels, scale, lo)
}

/// Lattice signal on ℤ² from an image: row `r`, column `c` sits at
/// `(origin₀ + r, origin₁ + c)` with value `offset + scale·pixel`. The
/// sidecar may set `origin` (two integers), `scale` and `offset` (decimal or
/// `p/q`).
pub fn lattice_image(image: &PgmImage, sidecar: &Header, mode: Mode) -> Result<LatticeSignal, IoError> {
    let origin = match sidecar.get("origin") {
        Some(_) => sidecar.integers("origin")?,
        None => vec![0, 0],
    };
    if origin.len() != 2 {
        return Err(IoError::Format("`origin` needs two integers".into()));
    }
    let scalar = |key: &str, default: i64| -> Result<Scalar, IoError> {
        match sidecar.get(key) {
            Some(t) => Scalar::parse(t, mode).map_err(|e| IoError::Format(format!("`{key}`: {e}"))),
            None => Ok(Scalar::from_i64(default, mode)),
        }
    };
    let scale = scalar("scale", 1)?;
    let offset = scalar("offset", 0)?;
    let window = WindowSpec::new(vec![
        (origin[0], origin[0] + image.height as i64 - 1),
        (origin[1], origin[1] + image.width as i64 - 1),
    ])
    .expect("nonempty image");
    let atoms = image.pixels.iter().enumerate().map(|(k, &p)| {
        let (r, c) = ((k / image.width) as i64, (k % image.width) as i64);
        let value = &offset + &(&scale * &Scalar::from_i64(p as i64, mode));
        (LatticePoint::Two(origin[0] + r, origin[1] + c), value)
    });
    let values = AtomicMeasure::from_atoms(2, mode, atoms).map_err(|e| IoError::Format(e.to_string()))?;
    LatticeSignal::new(window, values).map_err(|e| IoError::Format(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn image(maxval: u16) -> PgmImage {
        PgmImage { width: 3, height: 2, maxval, pixels: vec![0, 1, 2, maxval, 7, 0] }
    }

    #[test]
    fn ascii_and_binary_round_trip() {
        let mut h = Header::new();
        h.set("mode", "exact");
        for maxval in [255, 65535] {
            let img = image(maxval);
            for binary in [false, true] {
                let bytes = write_pgm(&img, binary, &h);
                assert_eq!(parse_pgm(&bytes).unwrap(), img, "maxval {maxval} binary {binary}");
            }
        }
    }

    #[test]
    fn comments_in_header() {
        let img = parse_pgm(b"P2\n# c\n2 1 # trailing\n9\n3 9\n").unwrap();
        assert_eq!(img.pixels, vec![3, 9]);
        assert!(parse_pgm(b"P2\n2 1\n9\n3 10\n").is_err());
        assert!(parse_pgm(b"P3\n1 1\n1\n0\n").is_err());
        assert!(parse_pgm(b"P5\n2 2\n255\n\x01").is_err());
    }

    #[test]
    fn quantization() {
        let (p, s, o) = quantize(&[0.0, 3.0, 255.0], 255);
        assert_eq!((p, s, o), (vec![0, 3, 255], 1.0, 0.0));
        let (p, s, o) = quantize(&[-1.0, 0.0, 1.0], 255);
        assert_eq!(p, vec![0, 128, 255]);
        assert!((o + 1.0).abs() < 1e-15 && (s - 2.0 / 255.0).abs() < 1e-15);
    }

    #[test]
    fn lattice_from_image() {
        let img = PgmImage { width: 2, height: 2, maxval: 255, pixels: vec![0, 4, 0, 2] };
        let mut side = Header::new();
        side.set("origin", "-1 5").set("scale", "1/2");
        let s = lattice_image(&img, &side, Mode::Exact).unwrap();
        assert_eq!(s.window().bounds(), &[(-1, 0), (5, 6)]);
        assert_eq!(s.get(&LatticePoint::Two(-1, 6)), Scalar::from_i64(2, Mode::Exact));
        assert_eq!(s.get(&LatticePoint::Two(0, 6)), Scalar::from_i64(1, Mode::Exact));
    }
}
