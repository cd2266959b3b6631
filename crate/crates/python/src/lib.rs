//! Python bindings: fields, quadratic spaces, matrix groups, monomial
//! certificates and the sweeps.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use orthomono::cli::{parse_group_file, render_certificate};
use orthomono::field::{Elem, Field};
use orthomono::form::QuadraticSpace;
use orthomono::group::{MatrixGroup, DEFAULT_BOUND};
use orthomono::linalg::Matrix;
use orthomono::monomial::{check_certificate, monomialize, MonomialCertificate};

pyo3::create_exception!(orthomono_py, OrthomonoError, PyValueError);
pyo3::create_exception!(orthomono_py, HypothesisError, OrthomonoError);

fn to_py(e: orthomono::Error) -> PyErr {
    match orthomono::cli::hypothesis_of(&e) {
        Some(h) => HypothesisError::new_err(h.reason().to_string()),
        None => OrthomonoError::new_err(e.to_string()),
    }
}

fn prime_field(p: u32) -> PyResult<Field> {
    Field::prime(p).map_err(to_py)
}

fn matrix_from(field: &Field, rows: Vec<Vec<i64>>) -> PyResult<Matrix> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(OrthomonoError::new_err("matrix must be square"));
    }
    let rows: Vec<Vec<Elem>> = rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect();
    Ok(Matrix::from_rows(field, &rows))
}

/// Prime-field elements as residues; extension elements as sum c_i p^i.
fn entry(field: &Field, x: Elem) -> i64 {
    field.coeffs(x).iter().rev().fold(0i64, |acc, &c| acc * field.characteristic() as i64 + c as i64)
}

fn matrix_to(m: &Matrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|&x| entry(m.field(), x)).collect()).collect()
}

/// GF(p^k) with the lexicographically least irreducible modulus.
#[pyclass(name = "Field", frozen)]
struct PyField {
    inner: Field,
}

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (p, k = 1))]
    fn new(p: u32, k: u32) -> PyResult<Self> {
        Ok(PyField { inner: Field::new(p, k).map_err(to_py)? })
    }

    #[getter]
    fn order(&self) -> u32 {
        self.inner.order()
    }

    #[getter]
    fn characteristic(&self) -> u32 {
        self.inner.characteristic()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    /// Modulus coefficients, low to high.
    fn modulus(&self) -> Vec<u32> {
        self.inner.modulus().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("Field(p={}, k={})", self.inner.characteristic(), self.inner.degree())
    }
}

/// A nondegenerate symmetric bilinear form over a prime field.
#[pyclass(name = "QuadraticSpace", frozen)]
struct PyQuadraticSpace {
    inner: QuadraticSpace,
}

#[pymethods]
impl PyQuadraticSpace {
    #[new]
    fn new(p: u32, gram: Vec<Vec<i64>>) -> PyResult<Self> {
        let f = prime_field(p)?;
        Ok(PyQuadraticSpace { inner: QuadraticSpace::new(matrix_from(&f, gram)?).map_err(to_py)? })
    }

    #[staticmethod]
    fn standard(p: u32, n: usize) -> PyResult<Self> {
        Ok(PyQuadraticSpace { inner: QuadraticSpace::standard(&prime_field(p)?, n).map_err(to_py)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn gram(&self) -> Vec<Vec<i64>> {
        matrix_to(self.inner.gram())
    }

    fn is_isometry(&self, g: Vec<Vec<i64>>) -> PyResult<bool> {
        self.inner.is_isometry(&matrix_from(self.inner.field(), g)?).map_err(to_py)
    }

    /// The full isometry group O(V, Q).
    fn isometry_group(&self) -> PyResult<PyMatrixGroup> {
        Ok(PyMatrixGroup { inner: self.inner.isometry_group().map_err(to_py)? })
    }
}

/// A finite matrix group given by generators.
#[pyclass(name = "MatrixGroup", frozen)]
struct PyMatrixGroup {
    inner: MatrixGroup,
}

#[pymethods]
impl PyMatrixGroup {
    #[new]
    #[pyo3(signature = (p, gens, bound = DEFAULT_BOUND))]
    fn new(p: u32, gens: Vec<Vec<Vec<i64>>>, bound: usize) -> PyResult<Self> {
        let f = prime_field(p)?;
        let dim = gens.first().map(|g| g.len()).ok_or_else(|| OrthomonoError::new_err("need at least one generator"))?;
        let gens = gens.into_iter().map(|g| matrix_from(&f, g)).collect::<PyResult<Vec<_>>>()?;
        Ok(PyMatrixGroup { inner: MatrixGroup::new(&f, dim, gens).map_err(to_py)?.with_bound(bound) })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn gens(&self) -> Vec<Vec<Vec<i64>>> {
        self.inner.gens().iter().map(matrix_to).collect()
    }

    fn order(&self) -> PyResult<usize> {
        self.inner.order().map_err(to_py)
    }

    fn is_solvable(&self) -> PyResult<bool> {
        self.inner.is_solvable().map_err(to_py)
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn is_irreducible(&self) -> PyResult<bool> {
        Ok(orthomono::modrep::is_irreducible(&self.inner).map_err(to_py)?.is_irreducible())
    }

    fn __repr__(&self) -> String {
        format!("MatrixGroup(dim={}, gens={})", self.inner.dim(), self.inner.gens().len())
    }
}

/// A basis in which every group element is a signed permutation.
#[pyclass(name = "Certificate", frozen)]
struct PyCertificate {
    inner: MonomialCertificate,
}

#[pymethods]
impl PyCertificate {
    /// Basis vectors as rows.
    fn basis(&self) -> Vec<Vec<i64>> {
        let f = self.inner.space.field();
        self.inner.basis.iter().map(|v| v.iter().map(|&x| entry(f, x)).collect()).collect()
    }

    #[getter]
    fn scalar(&self) -> i64 {
        entry(self.inner.space.field(), self.inner.scalar)
    }

    /// Per generator: 0-based line images and signs (+1 / -1).
    fn generator_images(&self) -> Vec<(Vec<usize>, Vec<i8>)> {
        self.inner.generator_images.iter().map(|s| (s.perm.clone(), s.signs.clone())).collect()
    }

    /// Checks every element of `group` against the certificate.
    fn verify(&self, group: &PyMatrixGroup) -> bool {
        check_certificate(&self.inner, &group.inner).ok
    }

    fn to_text(&self) -> String {
        render_certificate(&self.inner, true)
    }
}

/// Monomial certificate for a solvable irreducible isometry group.
#[pyfunction(name = "monomialize")]
fn py_monomialize(group: &PyMatrixGroup, space: &PyQuadraticSpace) -> PyResult<PyCertificate> {
    Ok(PyCertificate { inner: monomialize(&group.inner, &space.inner).map_err(to_py)? })
}

/// Parses a group file and returns its certificate document.
#[pyfunction]
fn analyze(text: &str) -> PyResult<String> {
    let file = parse_group_file(text).map_err(to_py)?;
    let space = file.space().map_err(to_py)?;
    let group = file.group(DEFAULT_BOUND).map_err(to_py)?;
    let cert = monomialize(&group, &space).map_err(to_py)?;
    Ok(render_certificate(&cert, check_certificate(&cert, &group).ok))
}

/// (irreducible classes, passed) over the solvable subgroups of O_n(q).
#[pyfunction]
#[pyo3(signature = (n, q, bound = DEFAULT_BOUND))]
fn theorem_sweep(n: usize, q: u32, bound: usize) -> PyResult<(usize, usize)> {
    let r = orthomono::monomial::theorem_sweep(n, q, bound).map_err(to_py)?;
    Ok((r.irreducible_classes(), r.passed()))
}

/// (order, maximal) per class of transitive solvable subgroups of S_n.
#[pyfunction]
fn transitive_solvable_subgroups(n: usize) -> PyResult<Vec<(usize, bool)>> {
    let classes = orthomono::wreath::transitive_solvable_subgroups(n, DEFAULT_BOUND).map_err(to_py)?;
    Ok(classes.iter().map(|c| (c.order, c.maximal)).collect())
}

#[pymodule]
fn orthomono_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyQuadraticSpace>()?;
    m.add_class::<PyMatrixGroup>()?;
    m.add_class::<PyCertificate>()?;
    m.add_function(wrap_pyfunction!(py_monomialize, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(transitive_solvable_subgroups, m)?)?;
    m.add("OrthomonoError", m.py().get_type::<OrthomonoError>())?;
    m.add("HypothesisError", m.py().get_type::<HypothesisError>())?;
    Ok(())
}
