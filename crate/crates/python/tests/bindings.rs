use pyo3::prelude::*;
use pyo3::types::PyDict;

#[test]
fn module_round_trip() {
    Python::initialize();
    Python::attach(|py| {
        let m = PyModule::new(py, "pylineal").unwrap();
        pylineal::pylineal(&m).unwrap();
        let locals = PyDict::new(py);
        locals.set_item("lin", &m).unwrap();
        let code = c"
t = lin.Term('1/2.(true + false)', prelude=True)
assert str(lin.infer(t).resugar()) == 'B'
assert lin.normalize(t).resugar() == '1/2.false + 1/2.true'
assert lin.check_barycentric(t)[0]
assert lin.run_suite('uniqueness', seed=3, cases=10)['failures'] == 0
";
        py.run(code, None, Some(&locals)).unwrap();
    });
}
