"""Smoke test for the quiverbench_py extension.

Build and install first:  pip install --no-build-isolation -e crates/py
"""

import json
import sys
import tempfile

import quiverbench_py as qb


def main():
    lam = qb.Algebra.gallery("Lambda", 5, "gf5")
    h = qb.Algebra.gallery("H", 5, "gf5")
    assert lam.dimension == 2 * h.dimension, (lam.dimension, h.dimension)
    assert lam.vertex_count == 6

    e1 = qb.Representation.gallery(lam, 1)
    e1s = qb.Representation.gallery(lam, 1, star=True)
    assert e1.dim_vector() == e1s.dim_vector()
    assert e1.is_valid() and qb.is_brick(e1)
    assert qb.hom_dim(e1, e1s) >= 1 and qb.hom_dim(e1s, e1) >= 1
    assert e1s.top() == e1.socle()

    for v in range(1, 7):
        assert qb.hom_dim(lam.projective(v), e1) == e1.dim_vector()[v - 1]
        assert qb.tau(lam.projective(v)).is_zero()

    # τ E_2 ≅ E_1 over H
    he1, he2 = qb.Representation.gallery(h, 1), qb.Representation.gallery(h, 2)
    verdict = qb.are_isomorphic(qb.tau(he2), he1)
    assert verdict["verdict"] == "iso", verdict
    back = qb.tau_minus(qb.tau(he2))
    assert qb.are_isomorphic(back, he2)["verdict"] == "iso"

    report = qb.check_formula("i", lam.simple(3), e1, e1s)
    assert report["status"] == "evaluated" and report["sides"]["holds"], report
    bad = qb.check_formula("ii", lam.simple(3), e1, qb.Representation.gallery(lam, 2))
    assert bad["status"] == "hypothesis_fails", bad

    tube = qb.verify_tube(6, "gf2")
    assert tube["passed"] and tube["h"]["period"] == 4
    cycle = qb.verify_short_cycle(5, "q")
    assert cycle["passed"] and cycle["formula_failures"] == 0

    with tempfile.TemporaryDirectory() as d:
        paths = qb.export_gallery(4, "q", d)
        loaded = qb.Representation.load(next(p for p in paths if p.endswith("/e1.json")))
        assert loaded.dim_vector() == qb.Representation.gallery(qb.Algebra.gallery("Lambda", 4), 1).dim_vector()
    text = e1.to_json()
    assert json.loads(text)["dims"] == e1.dim_vector()

    print("smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
