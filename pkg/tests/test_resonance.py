import json
import random
from itertools import combinations

import pytest

from resgrass.arrangement import Arrangement, fixture, from_matrix
from resgrass.errors import BudgetError, resolve_budget
from resgrass.exterior import ExtElement, boundary, os_ideal_part, wedge
from resgrass.grobner import PluckerRing, normal_form, plucker_ideal
from resgrass.resonance import (
    Plane,
    decomposables_in_I2_bruteforce,
    factor_decomposable,
    is_decomposable,
    os_points,
    r1_hilbert,
    span_forms,
)

P = 31991


def test_os_points_pattern():
    pts = os_points(fixture("A3"))
    assert len(pts) == 4
    first = pts[0]  # triple (0, 1, 2)
    pairs = list(combinations(range(6), 2))
    nonzero = {pairs[i]: c for i, c in enumerate(first.coords) if c}
    assert nonzero == {(1, 2): 1, (0, 2): P - 1, (0, 1): 1}


def test_os_points_hessian_count():
    assert len(os_points(fixture("Hessian"))) == 36


def test_plucker_quadrics_vanish_on_os_points():
    for name in ("A3", "Hessian"):
        arr = fixture(name)
        ring = PluckerRing(arr.n, P)
        quads = plucker_ideal(ring)
        for pt in os_points(arr):
            for q in quads:
                assert q.evaluate(pt.coords) == 0


def test_span_forms_single_point():
    ring = PluckerRing(3, 7)
    pts = os_points(from_matrix([[1, 0, 1], [0, 1, 1]], p=7), p=7)
    assert len(pts) == 1
    assert pts[0].coords == (1, 6, 1)
    forms = span_forms(pts, ring)
    assert [repr(f) for f in forms] == ["w_0_1 - w_1_2", "w_0_2 + w_1_2"]
    # same span as the pair {w01 + w02, w02 + w12}
    for combo in ((1, 1, 0), (0, 1, 1)):
        assert normal_form(ring.linear_form(combo), forms).is_zero()


def test_span_forms_counts():
    a3 = fixture("A3")
    ring = PluckerRing(6, P)
    assert len(span_forms(os_points(a3), ring)) == 11
    hess = fixture("Hessian")
    ring12 = PluckerRing(12, P)
    assert len(span_forms(os_points(hess), ring12)) == 39


def test_span_forms_empty_gives_all_variables():
    ring = PluckerRing(4, 7)
    forms = span_forms([], ring)
    assert [repr(f) for f in forms] == list(ring.names)


def test_r1_hilbert_braid():
    rep = r1_hilbert(fixture("A3"))
    assert rep.hilbert == "5*P_0"
    assert rep.n_os_points == 4
    assert rep.n_span_forms == 11
    assert rep.timings_ms["total"] < 1000.0


def test_r1_hilbert_pencil():
    # three concurrent lines: the whole of P(I_2) is one Grassmannian point
    rep = r1_hilbert(from_matrix([[1, 0, 1], [0, 1, 1]], name="pencil"))
    assert rep.hilbert == "1*P_0"


def test_r1_hilbert_generic_no_flats():
    arr = from_matrix([[1, 0, 0, 1], [0, 1, 0, 2], [0, 0, 1, 3]], name="generic4")
    rep = r1_hilbert(arr)
    assert rep.hilbert == "0"
    assert rep.n_os_points == 0
    assert rep.n_span_forms == 6
    assert rep.timings_ms["groebner"] == 0.0


def test_r1_hilbert_disjoint_triples():
    # k pairwise disjoint triple points give k reduced Grassmannian points
    flats9 = ((0, 1, 2), (3, 4, 5), (6, 7, 8))
    rep = r1_hilbert(Arrangement(9, flats9, None, "three-triples"))
    assert rep.hilbert == "3*P_0"
    flats6 = ((0, 1, 2), (3, 4, 5))
    rep = r1_hilbert(Arrangement(6, flats6, None, "two-triples"))
    assert rep.hilbert == "2*P_0"


def test_report_json_keys():
    rep = r1_hilbert(fixture("A3"))
    obj = json.loads(rep.to_json())
    for key in ("arrangement", "hilbert", "n_os_points", "n_span_forms", "timings_ms"):
        assert key in obj
    assert obj["hilbert"] == "5*P_0"
    assert set(obj["timings_ms"]) == {"span", "groebner", "hilbert", "total"}


def test_is_decomposable():
    rng = random.Random(13)
    for _ in range(20):
        x = ExtElement(P, 1, {(i,): rng.randrange(P) for i in range(6)})
        y = ExtElement(P, 1, {(i,): rng.randrange(P) for i in range(6)})
        assert is_decomposable(wedge(x, y))
    indep = ExtElement(P, 2, {(0, 1): 1, (2, 3): 1})
    assert not is_decomposable(indep)
    assert is_decomposable(boundary((1, 4, 5), P))


def test_factor_decomposable_roundtrip():
    rng = random.Random(14)
    for _ in range(20):
        x = ExtElement(P, 1, {(i,): rng.randrange(P) for i in range(6)})
        y = ExtElement(P, 1, {(i,): rng.randrange(P) for i in range(6)})
        u = wedge(x, y)
        if u.is_zero():
            continue
        a, b = factor_decomposable(u)
        assert wedge(a, b) == u
    with pytest.raises(ValueError):
        factor_decomposable(ExtElement(P, 2, {(0, 1): 1, (2, 3): 1}))


A3_PLANES_F5 = [
    ((0, 0, 1, 0, 0, 4), (0, 0, 0, 1, 0, 4)),  # triple (2,3,5)
    ((0, 1, 0, 0, 0, 4), (0, 0, 0, 0, 1, 4)),  # triple (1,4,5)
    ((1, 0, 0, 0, 4, 0), (0, 0, 0, 1, 4, 0)),  # triple (0,3,4)
    ((1, 0, 4, 0, 0, 0), (0, 1, 4, 0, 0, 0)),  # triple (0,1,2)
    ((1, 0, 4, 0, 4, 1), (0, 1, 4, 1, 4, 0)),  # essential component
]


def test_decomposables_in_I2_braid_over_f5():
    planes = decomposables_in_I2_bruteforce(fixture("A3"), 5)
    assert [pl.basis for pl in planes] == A3_PLANES_F5
    # pairwise disjoint as projective lines
    point_sets = [set(pl.points()) for pl in planes]
    assert all(len(s) == 6 for s in point_sets)
    for i in range(5):
        for j in range(i + 1, 5):
            assert not point_sets[i] & point_sets[j]
    # each plane's Plucker point really lies in P(I_2)
    sub = os_ideal_part(fixture("A3"), 2, 5)
    for pl in planes:
        assert sub.contains(pl.plucker_point().element())


def test_decomposables_budget():
    with pytest.raises(BudgetError):
        decomposables_in_I2_bruteforce(fixture("A3"), 5, budget=10)
    # dim I_2 = 27 for the Hessian: 2^27 - 1 candidates exceed the default
    with pytest.raises(BudgetError) as exc:
        decomposables_in_I2_bruteforce(fixture("Hessian"), 2)
    assert exc.value.candidates == 2**27 - 1


def test_budget_resolution(monkeypatch):
    assert resolve_budget(123) == 123
    monkeypatch.setenv("RESGRASS_BUDGET", "41")
    assert resolve_budget() == 41
    monkeypatch.delenv("RESGRASS_BUDGET")
    assert resolve_budget() == 10_000_000


def test_plane_from_pair_rejects_dependent():
    x = ExtElement(5, 1, {(0,): 1})
    with pytest.raises(ValueError):
        Plane.from_pair(x, x.scale(2), 4)
