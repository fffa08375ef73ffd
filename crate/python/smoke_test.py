"""Smoke test for the toric_kit Python module. Run after building it with
`pip install --no-build-isolation -e crates/py`."""

from fractions import Fraction

import toric_kit as tk


def main():
    tri = tk.Polytope([[0, 0], [1, 0], [0, 1]])
    assert tri.dim == 2
    assert tri.volume() == Fraction(1, 2)
    assert tri.normalized_volume() == 1
    assert tri.lattice_point_count() == 3
    assert tri.ehrhart() == [1, Fraction(3, 2), Fraction(1, 2)]
    assert len(tri.normal_fan()["maximal"]) == 3

    square = tk.Polytope([[0, 0], [1, 0], [0, 1], [1, 1]])
    assert (tri + square).volume() == Fraction(7, 2)
    assert tk.mixed_volume([tri, square]) == 1

    gb = tk.toric_ideal([[3, 0], [2, 1], [1, 2], [0, 3]])
    assert len(gb) == 3
    assert all("z(" in text for _, _, text in gb)

    assert tk.hilbert_function([[0], [2], [3]], 4) == [1, 3, 6, 9, 12]
    assert tk.hilbert_polynomial([[0], [2], [3]]) == [0, 3]

    cone = tk.Cone([[1, 2], [2, 1]])
    assert cone.dual().dim == 2
    assert len(cone.dual().hilbert_basis()) == 4

    assert tk.kushnirenko_bound([[0, 0], [1, 0], [0, 1], [1, 1]]) == 2
    vs, ps = ["x", "y"], ["x^2 + y^2 - 5", "x*y - 2"]
    assert tk.bernstein_bound(vs, ps) == 4
    sols = tk.solve2(vs, ps)
    assert len(sols) == 4
    for (x, y), mult in sols:
        assert mult == 1
        assert abs(x * y - 2) < 1e-8

    try:
        tk.Polytope([[0, 0], [0, 0]])
    except ValueError:
        pass
    else:
        raise AssertionError("duplicate points accepted")

    print("toric_kit smoke test passed")


if __name__ == "__main__":
    main()
