import math

import pytest

from jensengap.domain import IntervalR, StructureError
from jensengap.funclib import (
    DomainError,
    FunctionModel,
    TabulatedFunction,
    catalog,
    d2_one_sided,
    eval_fn,
    load_table,
    negate,
    parse_fn_spec,
    tabulated_model,
)


class TestEval:
    def test_cubic(self):
        assert eval_fn(catalog("cubic"), 2.0) == 8.0

    def test_signed_square(self):
        assert eval_fn(catalog("signed_square"), -3.0) == -9.0

    def test_quadratic(self):
        assert eval_fn(catalog("quadratic", 2), 3.0) == 9.0

    def test_out_of_domain(self):
        with pytest.raises(DomainError):
            eval_fn(catalog("exp"), 11.0)


class TestOneSidedSecondDerivative:
    def test_signed_square_at_kink(self):
        f = catalog("signed_square")
        assert d2_one_sided(f, 0.0, "minus") == -2.0
        assert d2_one_sided(f, 0.0, "plus") == 2.0

    def test_cubic_analytic(self):
        f = catalog("cubic")
        for c in (-0.7, 0.0, 1.3):
            assert d2_one_sided(f, c, "minus") == pytest.approx(6 * c)
            assert d2_one_sided(f, c, "plus") == pytest.approx(6 * c)

    def test_quadratic_constant(self):
        f = catalog("quadratic", 5)
        assert d2_one_sided(f, -2.0, "minus") == 5.0
        assert d2_one_sided(f, 3.0, "plus") == 5.0

    @pytest.mark.parametrize("x", [-0.5, 0.25, 1.0])
    def test_finite_difference_fallback_accuracy(self, x):
        # strip analytic mappings so the one-sided stencil is exercised
        exact = catalog("cubic")
        bare = FunctionModel("bare-cubic", exact.domain, exact.fn)
        h = 1e-4
        for side in ("minus", "plus"):
            fd = d2_one_sided(bare, x, side, h=h)
            assert abs(fd - 6 * x) <= 10.0 * h

    def test_stencil_needs_room(self):
        bare = FunctionModel("box", IntervalR(0.0, 1.0), lambda x: x * x)
        with pytest.raises(DomainError):
            d2_one_sided(bare, 0.0, "minus", h=0.1)

    def test_bad_side(self):
        with pytest.raises(ValueError):
            d2_one_sided(catalog("cubic"), 0.0, "down")


class TestCatalog:
    def test_signed_square_metadata(self):
        kc = catalog("signed_square").known_class
        assert (kc.c, kc.A, kc.kind) == (0.0, 0.0, "K1c")

    def test_cubic_metadata_tracks_point(self):
        kc = catalog("cubic", point=1.0).known_class
        assert (kc.c, kc.A, kc.kind) == (1.0, 6.0, "K1c")

    def test_quadratic_both_classes(self):
        kc = catalog("quadratic", 2).known_class
        assert kc.A == 2.0 and kc.kind == "both"

    def test_exp_metadata(self):
        kc = catalog("exp", point=0.5).known_class
        assert kc.A == pytest.approx(math.exp(0.5)) and kc.kind == "K1c"

    def test_unknown_name(self):
        with pytest.raises(StructureError):
            catalog("sigmoid")

    def test_quadratic_requires_param(self):
        with pytest.raises(StructureError):
            catalog("quadratic")

    @pytest.mark.parametrize("name", ["quadratic:2", "cubic", "signed_square", "exp"])
    def test_parse_fn_spec(self, name):
        assert parse_fn_spec(name).name

    def test_parse_rejects_stray_param(self):
        with pytest.raises(StructureError):
            parse_fn_spec("cubic:3")

    def test_declared_class_matches_curvature(self):
        # left of c the one-sided value stays at or below A, right of c at or above
        for f in (catalog("signed_square"), catalog("cubic"), catalog("exp"), catalog("quadratic", 2)):
            kc = f.known_class
            for step in range(-8, 9):
                x = kc.c + 0.25 * step
                if not f.domain.contains(x):
                    continue
                if x <= kc.c:
                    assert d2_one_sided(f, x, "minus") <= kc.A + 1e-9
                if x >= kc.c:
                    assert d2_one_sided(f, x, "plus") >= kc.A - 1e-9


class TestNegate:
    def test_values_and_curvature_flip(self):
        f = catalog("exp")
        g = negate(f)
        assert eval_fn(g, 1.0) == -math.e
        assert d2_one_sided(g, 0.3, "minus") == pytest.approx(-math.exp(0.3))

    def test_kind_swap(self):
        assert negate(catalog("signed_square")).known_class.kind == "K2c"
        assert negate(catalog("quadratic", 2)).known_class.A == -2.0


class TestTabulated:
    def test_load_table_with_comments(self, tmp_path):
        path = tmp_path / "nodes.txt"
        path.write_text("# node value\n0 0\n1 1   # one\n\n2 8\n3 27\n")
        tab = load_table(path)
        assert tab.nodes == (0.0, 1.0, 2.0, 3.0)
        assert tab.values == (0.0, 1.0, 8.0, 27.0)

    def test_nodes_must_increase(self):
        with pytest.raises(StructureError):
            TabulatedFunction((0.0, 0.0, 1.0), (1.0, 2.0, 3.0))

    def test_bad_line(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("0 0\n1\n")
        with pytest.raises(StructureError):
            load_table(path)

    def test_quadratic_reproduced_exactly(self):
        nodes = tuple(-2.0 + 0.5 * i for i in range(9))
        tab = TabulatedFunction(nodes, tuple(3 * x * x - x + 1 for x in nodes))
        f = tabulated_model(tab)
        for x in (-1.9, -0.3, 0.0, 0.26, 1.99):
            assert eval_fn(f, x) == pytest.approx(3 * x * x - x + 1, abs=1e-12)

    def test_interpolation_tracks_smooth_function(self):
        nodes = tuple(-1.0 + i / 200 for i in range(401))
        tab = TabulatedFunction(nodes, tuple(x**4 for x in nodes))
        f = tabulated_model(tab)
        for x in (-0.77, -0.2, 0.33, 0.95):
            assert eval_fn(f, x) == pytest.approx(x**4, abs=1e-6)

    def test_two_node_table_is_linear(self):
        f = tabulated_model(TabulatedFunction((0.0, 2.0), (1.0, 5.0)))
        assert eval_fn(f, 1.0) == pytest.approx(3.0)
