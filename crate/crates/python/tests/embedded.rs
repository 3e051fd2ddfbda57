use std::ffi::CString;

use pyo3::prelude::*;
use pytwistforms::pytwistforms;

#[test]
fn module_works_from_an_embedded_interpreter() {
    pyo3::append_to_inittab!(pytwistforms);
    Python::initialize();
    let script = CString::new(
        r#"
import json
import pytwistforms as tf
cfg = {"field": {"Qq": True}, "variables": ["x"], "endo": {"diagonal": ["q"]},
       "caps": {"var_degree": 4, "form_degree": 2}}
a = tf.Algebra(json.dumps(cfg))
assert a.d("x^3") == "(1 + q + q^2)*x^2*dx"
assert a.braid("dx (x) x", oracle=True) == "q*x (x) dx"
w = a.parse("x^2*dx")
assert w.d().I() + w.I().d() == w - w.alpha()
try:
    a.normalize("x +")
    raise AssertionError("parse error expected")
except tf.ParseError:
    pass
"#,
    )
    .unwrap();
    Python::attach(|py| py.run(&script, None, None)).unwrap();
}
