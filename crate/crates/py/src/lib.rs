use pyo3::prelude::*;

#[pymodule]
fn cweyl(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
