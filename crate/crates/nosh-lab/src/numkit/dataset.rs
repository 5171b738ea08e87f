use std::collections::HashMap;

use super::NumError;

/// Column-oriented table of named `f64` columns.
///
/// Invariants, enforced at construction and preserved thereafter:
///
/// * at least one column, all columns the same length, at least one row;
/// * every value is finite (no NaN or infinities);
/// * column names are unique and non-empty.
///
/// Lookup by name is O(1); column data is stored contiguously so estimators
/// can borrow `&[f64]` slices without copying.
#[derive(Debug, Clone)]
pub struct Dataset {
    names: Vec<String>,
    columns: Vec<Vec<f64>>,
    index: HashMap<String, usize>,
    n_rows: usize,
}

impl Dataset {
    /// Builds a dataset from `(name, values)` pairs, validating all invariants.
    pub fn from_columns<I, S>(columns: I) -> Result<Self, NumError>
    where
        I: IntoIterator<Item = (S, Vec<f64>)>,
        S: Into<String>,
    {
        let mut names = Vec::new();
        let mut data = Vec::new();
        for (name, values) in columns {
            names.push(name.into());
            data.push(values);
        }
        if names.is_empty() {
            return Err(NumError::InvalidInput("dataset has no columns".into()));
        }

        let n_rows = data[0].len();
        if n_rows == 0 {
            return Err(NumError::InvalidInput("dataset has no rows".into()));
        }

        let mut index = HashMap::with_capacity(names.len());
        for (j, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(NumError::InvalidInput(format!(
                    "column {j} has an empty name"
                )));
            }
            if index.insert(name.clone(), j).is_some() {
                return Err(NumError::InvalidInput(format!(
                    "duplicate column name {name:?}"
                )));
            }
            if data[j].len() != n_rows {
                return Err(NumError::InvalidInput(format!(
                    "column {name:?} has {} rows, expected {n_rows}",
                    data[j].len()
                )));
            }
            if let Some(i) = data[j].iter().position(|v| !v.is_finite()) {
                return Err(NumError::InvalidInput(format!(
                    "column {name:?} contains a non-finite value at row {i}"
                )));
            }
        }

        Ok(Self {
            names,
            columns: data,
            index,
            n_rows,
        })
    }

    /// Number of rows (identical across all columns).
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    /// Number of columns.
    pub fn n_cols(&self) -> usize {
        self.names.len()
    }

    /// Column names, in insertion order.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    /// Whether a column with this name exists.
    pub fn has_column(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Borrows a column by name.
    pub fn column(&self, name: &str) -> Result<&[f64], NumError> {
        self.index
            .get(name)
            .map(|&j| self.columns[j].as_slice())
            .ok_or_else(|| NumError::UnknownColumn(name.to_owned()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_columns_accepts_well_formed_input() {
        let d = Dataset::from_columns(vec![
            ("x", vec![1.0, 2.0, 3.0]),
            ("y", vec![4.0, 5.0, 6.0]),
        ])
        .unwrap();
        assert_eq!(d.n_rows(), 3);
        assert_eq!(d.n_cols(), 2);
        assert_eq!(d.column("y").unwrap(), &[4.0, 5.0, 6.0]);
        assert!(d.has_column("x"));
        assert!(!d.has_column("z"));
        assert_eq!(d.names().collect::<Vec<_>>(), vec!["x", "y"]);
    }

    #[test]
    fn rejects_empty_and_ragged_input() {
        let no_cols: Vec<(&str, Vec<f64>)> = vec![];
        assert!(matches!(
            Dataset::from_columns(no_cols),
            Err(NumError::InvalidInput(_))
        ));
        assert!(matches!(
            Dataset::from_columns(vec![("x", vec![])]),
            Err(NumError::InvalidInput(_))
        ));
        assert!(matches!(
            Dataset::from_columns(vec![("x", vec![1.0]), ("y", vec![1.0, 2.0])]),
            Err(NumError::InvalidInput(_))
        ));
    }

    #[test]
    fn rejects_non_finite_values() {
        for bad in [f64::NAN, f64::INFINITY, f64::NEG_INFINITY] {
            let err = Dataset::from_columns(vec![("x", vec![0.0, bad])]).unwrap_err();
            assert!(matches!(err, NumError::InvalidInput(_)), "{err}");
        }
    }

    #[test]
    fn rejects_bad_names() {
        assert!(matches!(
            Dataset::from_columns(vec![("", vec![1.0])]),
            Err(NumError::InvalidInput(_))
        ));
        assert!(matches!(
            Dataset::from_columns(vec![("x", vec![1.0]), ("x", vec![2.0])]),
            Err(NumError::InvalidInput(_))
        ));
    }

    #[test]
    fn unknown_column_is_a_distinct_error() {
        let d = Dataset::from_columns(vec![("x", vec![1.0])]).unwrap();
        assert!(matches!(d.column("q"), Err(NumError::UnknownColumn(_))));
    }
}
