//! Float grids as little-endian `f64` with a `key = value` descriptor.

use super::{Header, IoError};
use crate::gaussian::{GridGeometry, GridSignal};

/// Returns the raster bytes and the descriptor text.
pub fn write_raw(signal: &GridSignal, extra: &Header) -> (Vec<u8>, String) {
    let g = signal.geometry();
    let join = |v: &[f64]| v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(" ");
    let mut desc = extra.clone();
    desc.set("format", "f64le")
        .set("shape", g.shape().iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
        .set("spacing", join(g.spacing()))
        .set("origin", join(g.origin()));
    let bytes = signal.samples().iter().flat_map(|v| v.to_le_bytes()).collect();
    (bytes, desc.as_sidecar())
}

pub fn read_raw(bytes: &[u8], descriptor: &str) -> Result<GridSignal, IoError> {
    let desc = Header::parse_sidecar(descriptor)?;
    if desc.get("format") != Some("f64le") {
        return Err(IoError::Format("raw descriptor must say `format = f64le`".into()));
    }
    let shape: Vec<usize> = desc
        .integers("shape")?
        .into_iter()
        .map(|n| usize::try_from(n).map_err(|_| IoError::Format("negative shape".into())))
        .collect::<Result<_, _>>()?;
    let geometry = GridGeometry::new(shape, desc.floats("spacing")?, desc.floats("origin")?)
        .map_err(|e| IoError::Format(e.to_string()))?;
    if bytes.len() != 8 * geometry.len() {
        return Err(IoError::Format(format!(
            "raw file has {} bytes, descriptor needs {}",
            bytes.len(),
            8 * geometry.len()
        )));
    }
    let samples = bytes.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes"))).collect();
    GridSignal::new(geometry, samples).map_err(|e| IoError::Format(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_2d() {
        let g = GridGeometry::new(vec![2, 3], vec![0.1, 0.2], vec![-1.0, 0.3]).unwrap();
        let s = GridSignal::new(g, vec![1.0, -2.5, 1e-300, 0.0, 7.25, f64::MAX]).unwrap();
        let (bytes, desc) = write_raw(&s, &Header::new());
        assert_eq!(read_raw(&bytes, &desc).unwrap(), s);
        assert!(read_raw(&bytes[1..], &desc).is_err());
    }
}
