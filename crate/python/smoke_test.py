"""Smoke test for the mrbound extension module.

Build and install first:  pip install --no-build-isolation ./crates/py
Run:                      python python/smoke_test.py
"""

import json
from fractions import Fraction
from pathlib import Path

import mrbound

DATA = Path(__file__).resolve().parent.parent / "crates" / "core" / "tests" / "data"


def fib(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def main():
    k = mrbound.NumberField([-5, 0, 1])
    phi = k.element(["1/2", "1/2"])
    assert phi * phi == phi + 1
    assert phi.minimal_polynomial() == [-1, -1, 1]
    assert phi.norm() == Fraction(-1)
    assert phi.is_algebraic_integer()
    inv_sqrt5 = k.element([0, Fraction(1, 5)])
    assert inv_sqrt5.denominator() == 5
    h = phi.height()
    assert h.lo <= (1 + 5 ** 0.5) / 2 <= h.hi
    assert abs(float(phi.house()) - (1 + 5 ** 0.5) / 2) < 1e-12

    q = mrbound.NumberField([0, 1])
    assert q.element(["3/2"]).height().exact() == (Fraction(3), Fraction(3))
    assert q.element(["1/3"]).finite_part() == 3
    assert mrbound.mahler_measure([-3, 2]).exact() == (Fraction(3), Fraction(3))

    try:
        mrbound.NumberField([-4, 0, 1])
    except mrbound.MrboundError as e:
        assert "not irreducible" in str(e)
    else:
        raise AssertionError("reducible polynomial accepted")

    g = mrbound.MultiRecurrence.from_json((DATA / "fibonacci.json").read_text())
    assert len(g) == 2
    for n in range(51):
        assert g.eval([n]) == fib(n)

    rows, threshold = g.scan(1, "0.1", 40)
    assert threshold == 1
    assert all(r["min_ratio"].lo >= 1 for r in rows)
    assert g.scan_csv(1, "0.1", 20) == g.scan_csv(1, "0.1", 20)
    assert g.denominator_z() == 5
    assert g.norm_bound_check([10])["holds"]
    assert all(p is not None and p.lo > 0 for p in g.probe(1, "0.1", 10))

    d = mrbound.MultiRecurrence.from_json((DATA / "diagonal.json").read_text())
    assert d.eval([2, 1]) == -6
    assert d.bound_ratio([3, 3], 1, "0.1") == "vanishing"
    assert d.pointwise_vanishing_subsums([2, 2], 1) == [[1, 2]]
    report = d.lemma_check(1, samples=50, seed=7)
    assert report["violations"] == 0 and report["undecided"] == 0

    roundtrip = mrbound.MultiRecurrence.from_json(g.to_json())
    assert json.loads(roundtrip.to_json()) == json.loads(g.to_json())
    print("mrbound smoke test passed")


if __name__ == "__main__":
    main()
