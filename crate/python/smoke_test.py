"""Smoke test for the pytwistforms extension module.

Build and install it with `pip install --no-build-isolation -e crates/python`
(needs maturin), then run `python python/smoke_test.py`.
"""

import json

import pytwistforms as tf

Q_LINE = json.dumps({
    "field": {"Qq": True},
    "variables": ["x"],
    "endo": {"diagonal": ["q"]},
    "caps": {"var_degree": 4, "form_degree": 2},
})


def main():
    a = tf.Algebra(Q_LINE)
    assert a.variables == ["x"]
    assert a.d("x^3") == "(1 + q + q^2)*x^2*dx"
    assert a.normalize("dx*x") == "q*x*dx"
    assert a.I("x^2*dx") == "(1 - q)*x^3"
    assert a.alpha("x*dx") == "q^2*x*dx"
    assert a.braid("dx (x) x") == a.braid("dx (x) x", oracle=True) == "q*x (x) dx"
    assert a.block_basis(2, 2) == []

    x, dx = a.parse("x"), a.parse("dx")
    assert str(dx * x) == "q*x*dx"
    w = x * dx
    lhs = w.d().I() + w.I().d()
    assert lhs == w - w.alpha()
    t = a.parse("x (x) dx")
    assert t.is_tensor and str(t.braid()) == "(1 - q)*x (x) dx + dx (x) x"

    reports = a.verify("all", 3, 2, arity=3)
    assert all(c["failures"] == 0 for r in reports for c in r["checks"]), reports
    flipped = a.verify("braiding", 2, 1, braiding="flip")
    assert any(c["failures"] > 0 for r in flipped for c in r["checks"])

    m = a.sigma_matrices(3, 1, 1)
    assert m["block"]["dimension"] == 3 and set(m["generators"]) == {"sigma_1", "sigma_2"}

    for bad, exc in [("x +", tf.ParseError), ("y", tf.ParseError), ("x^5", tf.CapExceeded)]:
        try:
            a.normalize(bad)
        except exc:
            pass
        else:
            raise AssertionError(f"{bad!r} should raise {exc.__name__}")
    print("pytwistforms smoke test passed")


if __name__ == "__main__":
    main()
