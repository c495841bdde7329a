use super::{FieldError, Grid, GridFunction, GridKind};
use ndarray::Array2;
use std::io::{BufRead, BufWriter, Write};
use std::path::Path;
use std::sync::Arc;

/// Writes a grid function as CSV: header `axis_0,..,axis_{d-1},ch_0,..`,
/// one row per node in row-major node order, floats in shortest
/// round-trip decimal form.
pub fn write_grid_function_csv(f: &GridFunction, path: &Path) -> Result<(), FieldError> {
    let file = std::fs::File::create(path)?;
    let mut w = BufWriter::new(file);
    let dim = f.grid().dim();
    let ch = f.channels();
    let mut header = Vec::with_capacity(dim + ch);
    for a in 0..dim {
        header.push(format!("axis_{a}"));
    }
    for c in 0..ch {
        header.push(format!("ch_{c}"));
    }
    writeln!(w, "{}", header.join(","))?;
    for i in 0..f.grid().num_nodes() {
        let coord = f.grid().node_coord(i);
        let mut row = Vec::with_capacity(dim + ch);
        for x in coord {
            row.push(format!("{x}"));
        }
        for c in 0..ch {
            row.push(format!("{}", f.values()[[i, c]]));
        }
        writeln!(w, "{}", row.join(","))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a grid function written by [`write_grid_function_csv`], rebuilding
/// the tensor grid from the per-axis coordinates found in the file.
pub fn read_grid_function_csv(
    path: &Path,
    kind: GridKind,
) -> Result<GridFunction, FieldError> {
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| FieldError::Parse("empty file".into()))??;
    let cols: Vec<&str> = header.split(',').collect();
    let dim = cols.iter().filter(|c| c.starts_with("axis_")).count();
    let ch = cols.iter().filter(|c| c.starts_with("ch_")).count();
    if dim == 0 || ch == 0 || dim + ch != cols.len() {
        return Err(FieldError::Parse(format!("unrecognized header: {header}")));
    }
    let mut coords: Vec<Vec<f64>> = Vec::new();
    let mut vals: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != dim + ch {
            return Err(FieldError::Parse(format!(
                "line {}: expected {} fields, found {}",
                lineno + 2,
                dim + ch,
                fields.len()
            )));
        }
        let parse = |s: &str| -> Result<f64, FieldError> {
            s.trim()
                .parse::<f64>()
                .map_err(|e| FieldError::Parse(format!("line {}: {e}", lineno + 2)))
        };
        coords.push(fields[..dim].iter().map(|s| parse(s)).collect::<Result<_, _>>()?);
        vals.push(fields[dim..].iter().map(|s| parse(s)).collect::<Result<_, _>>()?);
    }
    // Recover per-axis node sets.
    let mut axes: Vec<Vec<f64>> = vec![Vec::new(); dim];
    for a in 0..dim {
        let mut nodes: Vec<f64> = coords.iter().map(|c| c[a]).collect();
        nodes.sort_by(|x, y| x.partial_cmp(y).unwrap());
        nodes.dedup_by(|x, y| (*x - *y).abs() < 1e-12 * (1.0 + x.abs()));
        axes[a] = nodes;
    }
    let expected: usize = axes.iter().map(|n| n.len()).product();
    if expected != coords.len() {
        return Err(FieldError::Parse(format!(
            "rows {} do not form a full tensor grid of {} nodes",
            coords.len(),
            expected
        )));
    }
    let grid = Grid::from_axes(axes, kind)?;
    let mut values = Array2::<f64>::zeros((grid.num_nodes(), ch));
    for (row, coord) in coords.iter().enumerate() {
        // locate the node index from the coordinates
        let mut flat = 0usize;
        let strides = grid.strides();
        for a in 0..dim {
            let nodes = grid.axis_nodes(a);
            let idx = nodes
                .iter()
                .position(|&n| (n - coord[a]).abs() < 1e-12 * (1.0 + n.abs()))
                .ok_or_else(|| FieldError::Parse(format!("row {row}: off-grid coordinate")))?;
            flat += idx * strides[a];
        }
        for c in 0..ch {
            values[[flat, c]] = vals[row][c];
        }
    }
    GridFunction::new(grid, values)
}

/// Re-export of Arc<Grid> constructor from axis sets, for CSV reconstruction.
pub(crate) fn _grid_from_axes(
    axes: Vec<Vec<f64>>,
    kind: GridKind,
) -> Result<Arc<Grid>, FieldError> {
    Grid::from_axes(axes, kind)
}
