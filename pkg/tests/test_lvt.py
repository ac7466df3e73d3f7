import pytest
from hypothesis import given
from hypothesis import strategies as st

from dnumbers import (DNumber, LinguisticScale, LVTError, MassFunction, pair_split, pignistic,
                      TriangularFuzzyNumber, theta_split, transform, RATING_SCALE)

LABELS = RATING_SCALE.labels


def fs(*xs):
    return frozenset(xs)


class TestPairSplit:
    def test_worked_example(self):
        vp, p = pair_split("VP", "P", 0.8, RATING_SCALE)
        assert vp == pytest.approx(0.6) and p == pytest.approx(0.2)

    def test_equal_areas_split_evenly(self):
        assert pair_split("F", "MG", 0.5, RATING_SCALE) == pytest.approx((0.25, 0.25))

    def test_unequal_areas(self):
        assert pair_split("MG", "G", 1.0, RATING_SCALE) == pytest.approx((0.4286, 0.5714), abs=1e-4)

    def test_disjoint(self):
        with pytest.raises(LVTError, match="intersect"):
            pair_split("VP", "MP", 1.0, RATING_SCALE)

    def test_nested(self):
        # a scale can't hold nested terms, so build the pair by hand
        s = LinguisticScale.__new__(LinguisticScale)
        object.__setattr__(s, "terms", (("A", RATING_SCALE["F"]), ("B", TriangularFuzzyNumber(4, 5, 6))))
        object.__setattr__(s, "universe", (0, 10))
        with pytest.raises(LVTError, match="nested"):
            pair_split("A", "B", 1.0, s)


class TestThetaSplit:
    def test_inverse_area(self):
        out = theta_split(1.0, RATING_SCALE)
        inv = [2, 2 / 3, 1 / 2, 1 / 2, 1 / 2, 2 / 3, 2]
        for label, w in zip(LABELS, inv):
            assert out[label] == pytest.approx(w / sum(inv))
        assert out["VP"] == pytest.approx(0.2927, abs=1e-4)


class TestTransform:
    def test_worked_example(self):
        d = DNumber(LABELS, {fs("VP", "P"): 0.8, fs("P"): 0.2})
        out = transform(d, RATING_SCALE)
        assert out["VP"] == pytest.approx(0.6, abs=1e-9)
        assert out["P"] == pytest.approx(0.4, abs=1e-9)
        assert out.total() == pytest.approx(1.0)

    def test_vacuous(self):
        out = transform(DNumber.vacuous(LABELS), RATING_SCALE)
        assert out["VP"] == pytest.approx(0.2927, abs=1e-4)

    def test_printed_column(self, golden):
        from dnumbers.verify import _dnumber
        out = transform(_dnumber(golden["fused"]["A1"], LABELS), RATING_SCALE)
        for label, want in (("MG", 0.935062), ("G", 0.009252), ("VG", 0.000094)):
            assert out[label] == pytest.approx(want, abs=5e-4)

    def test_triples_rejected(self):
        with pytest.raises(LVTError, match="3 terms"):
            transform(DNumber(LABELS, {fs("F", "MG", "G"): 1.0}), RATING_SCALE)

    def test_domain_mismatch(self):
        with pytest.raises(LVTError, match="domain"):
            transform(DNumber.vacuous(("F", "MG")), RATING_SCALE)

    @given(st.lists(st.floats(0.0, 1.0), min_size=7 + 6 + 1, max_size=7 + 6 + 1))
    def test_conserves_mass(self, ws):
        total = sum(ws)
        if total == 0:
            return
        masses = {fs(x): w / total for x, w in zip(LABELS, ws[:7])}
        masses.update({fs(a, b): w / total for a, b, w in zip(LABELS, LABELS[1:], ws[7:13])})
        d = DNumber(LABELS, masses, ws[13] / total)
        out = transform(d, RATING_SCALE)
        assert out.total() == pytest.approx(1.0, abs=1e-9)
        assert all(w >= 0 for _, w in out.items())

    @given(st.integers(1, 5), st.lists(st.floats(0.01, 1), min_size=6, max_size=6))
    def test_matches_pignistic_on_disjoint_equal_terms(self, n, ws):
        labels = tuple(f"h{i}" for i in range(n))
        scale = LinguisticScale.from_pairs([(h, (2 * i, 2 * i + 0.5, 2 * i + 1)) for i, h in enumerate(labels)])
        weights = ws[:n] + [ws[5]]
        total = sum(weights)
        masses = {fs(h): w / total for h, w in zip(labels, weights)}
        masses[frozenset(labels)] = masses.get(frozenset(labels), 0) + weights[-1] / total
        m = MassFunction(labels, masses)
        out = transform(DNumber.from_mass_function(m), scale)
        bet = pignistic(m)
        for h in labels:
            assert out[h] == pytest.approx(bet[h], abs=1e-12)
