//! Point sets: headerless CSV files and `grid:` descriptors.

use std::path::Path;

use crate::CliError;

/// Loads points for an `n`-variable spec from a CSV path or a grid
/// descriptor, in file order (grids row-major, first axis slowest).
pub fn load_points(source: &str, n: usize) -> Result<Vec<Vec<f64>>, CliError> {
    let points = match source.strip_prefix("grid:") {
        Some(desc) => {
            let points = parse_grid(desc).map_err(|e| CliError::input(format!("--points {source}: {e}")))?;
            let dim = points.first().map_or(0, Vec::len);
            if dim != n {
                return Err(CliError::input(format!(
                    "--points {source}: grid has {dim} axes but the spec has {n} variables"
                )));
            }
            points
        }
        None => read_csv(Path::new(source), n)?,
    };
    if points.is_empty() {
        return Err(CliError::input(format!("--points {source}: no points")));
    }
    Ok(points)
}

/// Expands `<lo>..<hi>x<lo>..<hi>...:<k>` into `k^axes` points with `k`
/// equally spaced samples per axis, endpoints included.
pub fn parse_grid(desc: &str) -> Result<Vec<Vec<f64>>, String> {
    let (axes, k) = desc
        .rsplit_once(':')
        .ok_or("expected grid:<lo>..<hi>[x<lo>..<hi>...]:<k>")?;
    let k: usize = k.parse().map_err(|_| format!("sample count '{k}' is not a positive integer"))?;
    if k == 0 {
        return Err("sample count must be at least 1".into());
    }
    let axes = axes
        .split('x')
        .enumerate()
        .map(|(a, axis)| {
            let (lo, hi) = axis
                .split_once("..")
                .ok_or_else(|| format!("axis {} '{axis}' is not <lo>..<hi>", a + 1))?;
            let bound = |s: &str| match s.trim().parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(format!("axis {}: '{s}' is not a finite number", a + 1)),
            };
            Ok(axis_samples(bound(lo)?, bound(hi)?, k))
        })
        .collect::<Result<Vec<_>, String>>()?;

    let mut points = vec![Vec::new()];
    for samples in &axes {
        points = points
            .into_iter()
            .flat_map(|p| {
                samples.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    Ok(points)
}

fn axis_samples(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    if k == 1 {
        return vec![lo];
    }
    let last = (k - 1) as f64;
    (0..k)
        .map(|i| if i == k - 1 { hi } else { lo + (hi - lo) * i as f64 / last })
        .collect()
}

fn read_csv(path: &Path, n: usize) -> Result<Vec<Vec<f64>>, CliError> {
    let shown = path.display();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::input(format!("points file {shown}: {e}")))?;
    let mut points = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::input(format!("points file {shown}: {e}")))?;
        let row = r + 1;
        if record.len() != n {
            return Err(CliError::input(format!(
                "points file {shown}, row {row}: {} values but the spec has {n} variables",
                record.len()
            )));
        }
        let point = record
            .iter()
            .enumerate()
            .map(|(c, field)| match field.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(CliError::input(format!(
                    "points file {shown}, row {row}, column {}: '{field}' is not a finite number",
                    c + 1
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        points.push(point);
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_row_major_with_inclusive_endpoints() {
        let points = parse_grid("0.5..2.0x0.5..2.0:5").unwrap();
        assert_eq!(points.len(), 25);
        assert_eq!(points[0], vec![0.5, 0.5]);
        assert_eq!(points[1], vec![0.5, 0.875]);
        assert_eq!(points[5], vec![0.875, 0.5]);
        assert_eq!(points[24], vec![2.0, 2.0]);
    }

    #[test]
    fn grid_edge_cases() {
        assert_eq!(parse_grid("1..3:1").unwrap(), vec![vec![1.0]]);
        assert_eq!(parse_grid("-1..1e0:3").unwrap(), vec![vec![-1.0], vec![0.0], vec![1.0]]);
        assert!(parse_grid("1..2:0").is_err());
        assert!(parse_grid("1..2").is_err());
        assert!(parse_grid("1-2:3").is_err());
        assert!(parse_grid("1..nan:3").is_err());
    }

    #[test]
    fn csv_rows_are_checked() {
        let dir = std::env::temp_dir().join(format!("prodgeom-points-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let good = dir.join("good.csv");
        std::fs::write(&good, "1, 2\n3e-1,4\n").unwrap();
        assert_eq!(
            load_points(good.to_str().unwrap(), 2).unwrap(),
            vec![vec![1.0, 2.0], vec![0.3, 4.0]]
        );
        let short = dir.join("short.csv");
        std::fs::write(&short, "1,2\n3\n").unwrap();
        let err = load_points(short.to_str().unwrap(), 2).unwrap_err();
        assert!(err.message.contains("row 2"), "{}", err.message);
        let bad = dir.join("bad.csv");
        std::fs::write(&bad, "1,x\n").unwrap();
        let err = load_points(bad.to_str().unwrap(), 2).unwrap_err();
        assert!(err.message.contains("row 1, column 2"), "{}", err.message);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
