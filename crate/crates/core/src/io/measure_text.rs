use super::{content_lines, Header, IoError};
use crate::lattice::LatticePoint;
use crate::measure::AtomicMeasure;
use crate::scalar::{Mode, Scalar};

/// Parses `<i> <w>` (ℤ¹) or `<i> <j> <w>` (ℤ²) lines. The dimension is set by
/// the first atom; an empty file is the zero measure on ℤ¹.
pub fn parse_measure(text: &str, mode: Mode) -> Result<AtomicMeasure, IoError> {
    let mut dim = None;
    let mut atoms = Vec::new();
    for (n, line) in content_lines(text) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let d = *dim.get_or_insert(fields.len().saturating_sub(1));
        if !(1..=2).contains(&d) || fields.len() != d + 1 {
            return Err(IoError::at(n, format!("expected `<i> <w>` or `<i> <j> <w>`, got {line:?}")));
        }
        let coords = fields[..d]
            .iter()
            .map(|t| t.parse::<i64>().map_err(|_| IoError::at(n, format!("bad lattice index {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let weight = Scalar::parse(fields[d], mode).map_err(|e| IoError::at(n, e.to_string()))?;
        atoms.push((LatticePoint::from_coords(&coords).expect("one or two coordinates"), weight));
    }
    AtomicMeasure::from_atoms(dim.unwrap_or(1), mode, atoms).map_err(|e| IoError::Format(e.to_string()))
}

/// Header comments followed by one atom per line in lattice order.
pub fn write_measure(m: &AtomicMeasure, header: &Header) -> String {
    let mut out = header.as_comments();
    for (p, w) in m.atoms() {
        out.push_str(&format!("{p} {w}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_one_and_two_dimensional() {
        let m = parse_measure("# kernel\n-1 1/4\n0 0.5\n1 1/4\n", Mode::Exact).unwrap();
        assert_eq!(m.weight(&LatticePoint::One(0)), Scalar::ratio(1, 2, Mode::Exact));
        assert_eq!(m.len(), 3);
        let m = parse_measure("0 0 1\n1 -1 -2\n", Mode::Float).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.weight(&LatticePoint::Two(1, -1)), Scalar::float(-2.0));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_measure("0 1\n\n1 x\n", Mode::Exact).unwrap_err();
        assert_eq!(err, IoError::Parse { line: 3, message: err_message(&err) });
        assert!(err.to_string().starts_with("line 3:"));
        assert!(matches!(parse_measure("0 1\n0 0 1\n", Mode::Exact), Err(IoError::Parse { line: 2, .. })));
        assert!(matches!(parse_measure("a 1\n", Mode::Exact), Err(IoError::Parse { line: 1, .. })));
    }

    fn err_message(e: &IoError) -> String {
        match e {
            IoError::Parse { message, .. } => message.clone(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn write_round_trip() {
        let m = AtomicMeasure::from_integers_1d(Mode::Exact, &[(-1, 1), (0, 2), (3, -5)])
            .scale(&Scalar::ratio(1, 3, Mode::Exact))
            .unwrap();
        let mut h = Header::new();
        h.set("mode", "exact");
        let text = write_measure(&m, &h);
        assert_eq!(text, "# mode = exact\n-1 1/3\n0 2/3\n3 -5/3\n");
        assert_eq!(parse_measure(&text, Mode::Exact).unwrap(), m);
    }
}
