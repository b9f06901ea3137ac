use std::fs;
use std::path::Path;

use super::{ScenarioError, ScenarioResult};

/// Decimal scientific notation with 12 significant digits.
pub fn format_sig12(v: f64) -> String {
    if v == 0.0 {
        // folds −0 into 0
        "0.00000000000e0".to_string()
    } else {
        format!("{v:.11e}")
    }
}

/// Write a header row and rows of numbers.
pub fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> ScenarioResult<()> {
    let io = |e: csv::Error| {
        let source = match e.into_kind() {
            csv::ErrorKind::Io(e) => e,
            other => std::io::Error::other(format!("{other:?}")),
        };
        ScenarioError::io(path, source)
    };
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(header).map_err(io)?;
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        w.write_record(row.into_iter().map(format_sig12)).map_err(io)?;
    }
    w.flush().map_err(|e| ScenarioError::io(path, e))
}

pub(crate) fn write_text(path: &Path, text: &str) -> ScenarioResult<()> {
    fs::write(path, text).map_err(|e| ScenarioError::io(path, e))
}

pub(crate) fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> ScenarioResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    write_text(path, &text)
}

pub(crate) fn create_dir(path: &Path) -> ScenarioResult<()> {
    fs::create_dir_all(path).map_err(|e| ScenarioError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_sig12(1.0), "1.00000000000e0");
        assert_eq!(format_sig12(-0.0), format_sig12(0.0));
        assert_eq!(format_sig12(std::f64::consts::PI), "3.14159265359e0");
        assert_eq!(format_sig12(-1.5e-7), "-1.50000000000e-7");
    }

    #[test]
    fn csv_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.csv");
        write_csv(&path, &["x", "y"], vec![vec![1.0, 2.0], vec![0.5, -3.0]]).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("x,y"));
        let row: Vec<f64> = lines.next().unwrap().split(',').map(|s| s.parse().unwrap()).collect();
        assert_eq!(row, vec![1.0, 2.0]);
    }

    #[test]
    fn missing_directory_reports_path() {
        let err = write_csv(Path::new("/nonexistent-dir/x.csv"), &["a"], Vec::<Vec<f64>>::new()).unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/x.csv"));
    }
}
