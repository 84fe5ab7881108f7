import itertools

import pytest

from jensengap.analysis import (
    classify_at_point,
    dd2,
    dd3,
    feasible_A_interval,
    third_windows,
)
from jensengap.domain import IntervalR, StructureError
from jensengap.funclib import FunctionModel, TabulatedFunction, catalog, tabulated_model

I11 = IntervalR(-1.0, 1.0)


class TestDd2:
    def test_square_gives_two(self):
        f = catalog("quadratic", 2)  # x^2
        assert dd2(f, -0.3, 0.1, 0.9) == pytest.approx(2.0, abs=1e-12)

    def test_cubic_matches_midpoint_curvature(self):
        assert dd2(catalog("cubic"), 0.0, 1.0, 2.0) == pytest.approx(6.0)

    def test_constant_gives_zero(self):
        const = FunctionModel("const", IntervalR(-5, 5), lambda x: 4.25)
        assert dd2(const, -1.0, 0.5, 2.0) == pytest.approx(0.0)

    def test_permutation_symmetry(self):
        f = catalog("exp")
        nodes = (-0.4, 0.15, 0.8)
        values = {dd2(f, *perm) for perm in itertools.permutations(nodes)}
        assert max(values) - min(values) <= 1e-9

    def test_coincident_nodes(self):
        with pytest.raises(StructureError):
            dd2(catalog("cubic"), 0.0, 0.0, 1.0)


class TestDd3:
    def test_cubic_leading_coefficient(self):
        assert dd3(catalog("cubic"), -0.7, 0.1, 0.4, 1.2) == pytest.approx(1.0)

    def test_low_degree_vanishes(self):
        assert dd3(catalog("quadratic", 2), -1.0, 0.0, 0.5, 1.0) == pytest.approx(0.0, abs=1e-12)

    def test_signed_square_nonnegative(self):
        assert dd3(catalog("signed_square"), -1.0, -0.5, 0.5, 1.0) >= 0.0

    def test_third_windows_sign(self):
        for name in ("cubic", "signed_square", "exp"):
            assert float(third_windows(catalog(name), -1.0, 1.0, 101).min()) >= -1e-9


class TestFeasibleInterval:
    def test_cubic_centered(self):
        n = 1000
        h = 1.0 / (n - 1)
        iv = feasible_A_interval(catalog("cubic"), 0.0, I11, n)
        assert iv.feasible and iv.contains(0.0)
        assert iv.hi - iv.lo <= 12 * h + 1e-9

    def test_signed_square(self):
        iv = feasible_A_interval(catalog("signed_square"), 0.0, I11, 1000)
        assert iv.lo == pytest.approx(-2.0, abs=1e-6)
        assert iv.hi == pytest.approx(2.0, abs=1e-6)

    def test_quadratic_pinches(self):
        iv = feasible_A_interval(catalog("quadratic", 3), 0.25, I11, 400)
        assert iv.lo == pytest.approx(3.0, abs=1e-9)
        assert iv.hi == pytest.approx(3.0, abs=1e-9)

    def test_point_must_be_interior(self):
        with pytest.raises(StructureError):
            feasible_A_interval(catalog("cubic"), -1.0, I11, 100)

    def test_monotone_refinement(self):
        for name, c in (("exp", 0.0), ("cubic", 0.2)):
            f = catalog(name, point=c)
            coarse = feasible_A_interval(f, c, I11, 250)
            fine = feasible_A_interval(f, c, I11, 500)
            assert fine.lo >= coarse.lo - 1e-9
            assert fine.hi <= coarse.hi + 1e-9


class TestClassify:
    def test_signed_square_is_convex_type(self):
        cls = classify_at_point(catalog("signed_square"), 0.0, I11, 1000)
        assert cls.kind == "K1c"
        assert cls.witness_A == pytest.approx(0.0, abs=1e-6)

    def test_quadratic_is_both(self):
        cls = classify_at_point(catalog("quadratic", 2), 0.5, I11, 400)
        assert cls.kind == "both"
        assert cls.witness_A == pytest.approx(2.0, abs=1e-6)

    def test_quartic_table_is_neither(self):
        nodes = tuple(-1.0 + i / 1000 for i in range(2001))
        tab = TabulatedFunction(nodes, tuple(x**4 for x in nodes))
        cls = classify_at_point(tabulated_model(tab), 0.0, I11, 301)
        assert cls.kind == "neither"
        assert not cls.k1_interval.feasible and not cls.k2_interval.feasible

    def test_negated_signed_square_is_concave_type(self):
        from jensengap.funclib import negate

        cls = classify_at_point(negate(catalog("signed_square")), 0.0, I11, 500)
        assert cls.kind == "K2c"
        assert cls.witness_A == pytest.approx(0.0, abs=1e-6)

    def test_declared_constant_lies_in_interval(self):
        for name, point in (("signed_square", 0.0), ("cubic", 0.0), ("exp", 0.0), ("cubic", 0.3)):
            f = catalog(name, point=point)
            cls = classify_at_point(f, point, I11, 1000)
            kc = f.known_class
            assert cls.k1_interval.contains(kc.A, tol=1e-6)
            assert cls.kind in ("K1c", "both")
