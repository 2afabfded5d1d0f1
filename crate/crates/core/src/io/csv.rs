use super::{content_lines, Header, IoError};
use crate::gaussian::{GridGeometry, GridSignal};
use crate::lattice::{LatticePoint, WindowSpec};
use crate::measure::AtomicMeasure;
use crate::scalar::{Mode, Scalar};
use crate::signal::LatticeSignal;

fn split_pair(n: usize, line: &str) -> Result<(&str, &str), IoError> {
    let (a, b) = line
        .split_once(',')
        .ok_or_else(|| IoError::at(n, format!("expected two comma-separated fields, got {line:?}")))?;
    if b.contains(',') {
        return Err(IoError::at(n, format!("expected two comma-separated fields, got {line:?}")));
    }
    Ok((a.trim(), b.trim()))
}

/// `index,value` rows; an optional `index,value` header row is skipped. The
/// window spans the smallest to largest listed index.
pub fn parse_lattice_csv(text: &str, mode: Mode) -> Result<LatticeSignal, IoError> {
    let mut atoms = Vec::new();
    let (mut lo, mut hi) = (i64::MAX, i64::MIN);
    for (n, line) in content_lines(text) {
        if line == "index,value" {
            continue;
        }
        let (i, v) = split_pair(n, line)?;
        let i: i64 = i.parse().map_err(|_| IoError::at(n, format!("bad index {i:?}")))?;
        let v = Scalar::parse(v, mode).map_err(|e| IoError::at(n, e.to_string()))?;
        lo = lo.min(i);
        hi = hi.max(i);
        atoms.push((LatticePoint::One(i), v));
    }
    if atoms.is_empty() {
        return Err(IoError::Format("signal has no samples".into()));
    }
    let values = AtomicMeasure::from_atoms(1, mode, atoms).map_err(|e| IoError::Format(e.to_string()))?;
    let window = WindowSpec::interval(lo, hi).expect("lo <= hi");
    LatticeSignal::new(window, values).map_err(|e| IoError::Format(e.to_string()))
}

/// Header comments, an `index,value` row and every sample of the window.
pub fn write_lattice_csv(signal: &LatticeSignal, header: &Header) -> Result<String, IoError> {
    if signal.dim() != 1 {
        return Err(IoError::Format("CSV signals are one-dimensional; use PGM for images".into()));
    }
    let mut out = header.as_comments();
    out.push_str("index,value\n");
    for p in signal.window().points() {
        out.push_str(&format!("{},{}\n", p, signal.get(&p)));
    }
    Ok(out)
}

/// `x,value` rows on a uniform grid; an optional `x,value` header row is
/// skipped.
pub fn parse_grid_csv(text: &str) -> Result<GridSignal, IoError> {
    let mut xs = Vec::new();
    let mut values = Vec::new();
    for (n, line) in content_lines(text) {
        if line == "x,value" {
            continue;
        }
        let (x, v) = split_pair(n, line)?;
        xs.push(x.parse::<f64>().map_err(|_| IoError::at(n, format!("bad coordinate {x:?}")))?);
        values.push(v.parse::<f64>().map_err(|_| IoError::at(n, format!("bad value {v:?}")))?);
    }
    if xs.len() < 2 {
        return Err(IoError::Format("grid needs at least 2 samples".into()));
    }
    let spacing = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
    for (k, x) in xs.iter().enumerate() {
        if (x - (xs[0] + k as f64 * spacing)).abs() > 1e-6 * spacing {
            return Err(IoError::Format(format!("sample {k} at x = {x} is off the uniform grid")));
        }
    }
    let geometry = GridGeometry::line(xs.len(), spacing, xs[0]).map_err(|e| IoError::Format(e.to_string()))?;
    GridSignal::new(geometry, values).map_err(|e| IoError::Format(e.to_string()))
}

/// Header comments, an `x,value` row and one row per sample.
pub fn write_grid_csv(signal: &GridSignal, header: &Header) -> Result<String, IoError> {
    if signal.dim() != 1 {
        return Err(IoError::Format("CSV grids are one-dimensional; use PGM or raw for 2-d".into()));
    }
    let mut out = header.as_comments();
    out.push_str("x,value\n");
    for (k, v) in signal.samples().iter().enumerate() {
        out.push_str(&format!("{:?},{:?}\n", signal.geometry().coord(0, k), v));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_round_trip() {
        let text = "# note\nindex,value\n-2,1\n-1,0\n0,3/2\n";
        let s = parse_lattice_csv(text, Mode::Exact).unwrap();
        assert_eq!(s.window().bounds(), &[(-2, 0)]);
        let out = write_lattice_csv(&s, &Header::new()).unwrap();
        assert_eq!(out, "index,value\n-2,1\n-1,0\n0,3/2\n");
        assert!(matches!(parse_lattice_csv("0,1\n1;2\n", Mode::Exact), Err(IoError::Parse { line: 2, .. })));
    }

    #[test]
    fn grid_round_trip() {
        let g = GridGeometry::line(4, 0.25, -0.5).unwrap();
        let s = GridSignal::new(g, vec![0.1, 0.2, -0.3, 4.0]).unwrap();
        let text = write_grid_csv(&s, &Header::new()).unwrap();
        assert_eq!(parse_grid_csv(&text).unwrap(), s);
        assert!(parse_grid_csv("0,1\n1,1\n3,1\n").is_err());
    }
}
