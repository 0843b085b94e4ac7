"""Smoke test for the facetcx extension module.

Build and install first:
    pip install --no-build-isolation -e crates/python
"""

import math

import facetcx
from facetcx import Complex


def main() -> None:
    ex_l = Complex.fixture("ex_l")
    ex_k = Complex.fixture("ex_k")
    assert (ex_l.dim, ex_l.eta) == (2, 4), ex_l

    chi_l, coloring = facetcx.chromatic_number(ex_l)
    assert chi_l == 3 and set(coloring) == set(ex_l.vertices)
    assert facetcx.chromatic_number(ex_k)[0] == 2

    assert facetcx.find_map(ex_l, ex_k) is None
    l1 = Complex.fixture("l1")
    m = facetcx.find_map(l1, ex_k)
    assert m is not None and set(m) == set(l1.vertices)

    c = facetcx.complexity(ex_l, ex_k)
    assert c["symbol"] == "C" and c["value"] == 2 and len(c["cover"]) == 2
    assert facetcx.complexity(ex_l, ex_k, injective=True)["value"] == 3

    g2 = Complex.gamma(2)
    lonely = Complex([["a"], ["b"], ["c"]])
    assert facetcx.complexity(lonely, g2, kind="strict", injective=True)["value"] == 2
    assert facetcx.complexity(Complex.gamma(3), g2)["value"] == 1
    assert math.isinf(facetcx.complexity(Complex.gamma(3), g2, kind="strict")["value"])

    b = facetcx.bounds(ex_l, ex_k)
    assert b["symbol"] == "C" and b["chromatic_lower"] <= 2 <= b["eta_upper"]

    g3 = Complex.parse(Complex.gamma(3).to_scx())
    assert g3 == Complex.gamma(3) and g3.metrics()["eta"] == 1

    report = facetcx.verify(seed=1, trials=20, properties=["triangle", "c-le-ic"])
    assert report["schema"] == 1
    assert all(s["failed"] == 0 for s in report["suites"]), report

    try:
        Complex.parse("f\n")
    except ValueError as e:
        assert "line 1" in str(e)
    else:
        raise AssertionError("empty facet accepted")

    print("facetcx smoke test ok")


if __name__ == "__main__":
    main()
