import pytest

from splitmark.geometry import TallySheet
from splitmark.metrics import complexity, metrics_for, special_effects, splittingness


def sheet(**kw):
    base = dict(sw=500, sh=400, thl=0, tvl=0, nh=0, nv=0, hh=0, hv=0, rt=0, sc=0)
    base.update(kw)
    return TallySheet(**base)


class TestSplittingness:
    def test_half(self):
        assert splittingness(sheet(rt=12, sc=3)) == 0.5

    def test_low_ratio(self):
        value = splittingness(sheet(rt=46, sc=17))
        assert abs(value - 12 / 46) < 1e-12

    def test_no_coincidences(self):
        assert splittingness(sheet(rt=5, sc=0)) == 1.0

    def test_undefined_without_tees(self):
        assert splittingness(sheet(rt=0, sc=0)) is None

    def test_bounds(self):
        for rt in range(1, 30):
            for sc in range(0, rt // 2 + 1):
                value = splittingness(sheet(rt=rt, sc=sc))
                assert 0.0 <= value <= 1.0
                assert (value == 1.0) == (sc == 0)
                assert (value == 0.0) == (rt == 2 * sc)

    def test_strictly_decreasing_in_sc(self):
        rt = 20
        values = [splittingness(sheet(rt=rt, sc=sc)) for sc in range(0, rt // 2 + 1)]
        assert all(a > b for a, b in zip(values, values[1:]))


class TestComplexity:
    def test_full_cross_is_one(self):
        assert complexity(sheet(thl=500, tvl=400)) == 1.0

    def test_no_lines(self):
        assert complexity(sheet()) == 0.0

    def test_ratio(self):
        assert complexity(sheet(thl=2000, tvl=1600)) == 4.0


class TestSpecialEffects:
    def test_zero(self):
        assert special_effects(sheet()) == 0

    def test_sum(self):
        assert special_effects(sheet(hh=1, hv=2)) == 3

    def test_one_sided(self):
        assert special_effects(sheet(hh=9)) == 9


def test_metrics_for_bundles_all():
    m = metrics_for(sheet(rt=12, sc=3, thl=500, tvl=400, hh=1))
    assert m.splittingness == 0.5
    assert m.complexity == 1.0
    assert m.special_effects == 1
