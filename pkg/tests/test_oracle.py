import json
import random

import pytest

from resgrass.arrangement import Arrangement, fixture, from_matrix
from resgrass.errors import BudgetError, InputError
from resgrass.exterior import ExtElement
from resgrass.oracle import (
    AomotoComplex,
    aomoto_profile,
    check_prop21,
    enumerate_r1,
    is_resonant_1,
    is_resonant_k,
)

P = 31991


def pt(coeffs, p=P):
    return ExtElement(p, 1, {(i,): c % p for i, c in enumerate(coeffs) if c % p})


def random_nonresonant_point(rng, n, p=P):
    # sum of coordinates nonzero, the generic-exactness hypothesis
    while True:
        coeffs = [rng.randrange(p) for _ in range(n)]
        if sum(coeffs) % p:
            return pt(coeffs, p)


def test_profile_generic_point_exact():
    a3 = fixture("A3")
    prof = aomoto_profile(a3, pt([1] * 6), up_to=3)
    assert prof.dims == (0, 0, 0, 0)
    # OS Betti numbers of the braid arrangement: (1+t)(1+2t)(1+3t)
    assert prof.ambient_dims == (1, 6, 11, 6)


def test_profile_resonant_points():
    a3 = fixture("A3")
    local = pt([0, 1, 0, 0, -1, 0])  # on the component of the flat (1, 4, 5)
    assert aomoto_profile(a3, local, up_to=1).dims == (0, 1)
    essential = pt([1, -1, 0, -1, 0, 1])
    assert aomoto_profile(a3, essential, up_to=1).dims == (0, 1)


def test_profile_randomized_exactness():
    rng = random.Random(17)
    a3 = fixture("A3")
    cx = AomotoComplex(a3, P, up_to=2)
    for _ in range(100):
        assert cx.profile(random_nonresonant_point(rng, 6)).dims == (0, 0, 0)
    hess = fixture("Hessian")
    cx = AomotoComplex(hess, P, up_to=1)
    for _ in range(100):
        assert cx.profile(random_nonresonant_point(rng, 12)).dims == (0, 0)


def test_differentials_compose_to_zero():
    rng = random.Random(18)
    a3 = fixture("A3")
    cx = AomotoComplex(a3, P, up_to=3)
    for coeffs in ([1] * 6, [0, 1, 0, 0, -1, 0], [rng.randrange(P) for _ in range(6)]):
        mats = cx.differentials(pt(coeffs))
        for low, high in zip(mats, mats[1:]):
            assert not ((low @ high) % P).any()


def test_euler_identity():
    rng = random.Random(19)
    a3 = fixture("A3")
    for up_to in (1, 2, 3):
        cx = AomotoComplex(a3, P, up_to=up_to)
        for coeffs in ([1] * 6, [0, 1, 0, 0, -1, 0], [rng.randrange(P) for _ in range(6)]):
            prof = cx.profile(pt(coeffs))
            ambient = sum((-1) ** k * d for k, d in enumerate(prof.ambient_dims))
            assert prof.euler() == ambient - (-1) ** up_to * prof.last_rank


def test_profile_input_errors():
    a3 = fixture("A3")
    with pytest.raises(InputError):
        aomoto_profile(a3, ExtElement(P, 1, {}), up_to=1)
    with pytest.raises(InputError):
        aomoto_profile(a3, ExtElement(P, 2, {(0, 1): 1}), up_to=1)
    with pytest.raises(InputError):
        aomoto_profile(a3, pt([1] * 6), up_to=4)  # rank is 3
    flats_only = Arrangement(6, a3.flats, None, "A3-flats")
    assert aomoto_profile(flats_only, pt([1] * 6), up_to=1).dims == (0, 0)
    with pytest.raises(InputError):
        aomoto_profile(flats_only, pt([1] * 6), up_to=2)
    with pytest.raises(InputError):
        aomoto_profile(fixture("Hessian"), pt([1] * 12), up_to=2)


def test_is_resonant_1_examples():
    a3 = fixture("A3")
    assert not is_resonant_1(a3, pt([1, 0, 0, 0, 0, 0]))
    assert is_resonant_1(a3, pt([0, 1, 0, 0, -1, 0]))
    assert is_resonant_1(a3, pt([0, 1, -1, 1, -1, 0]))
    with pytest.raises(InputError):
        is_resonant_1(a3, ExtElement(P, 1, {}))


def test_enumerate_r1_braid_f5():
    a3 = fixture("A3")
    points = enumerate_r1(a3, 5)
    assert len(points) == 30
    assert points == sorted(points)
    assert all(next(c for c in p if c) == 1 for p in points)
    assert (0, 1, 0, 0, 4, 0) in points  # e1 - e4 normalized


def test_enumerate_r1_matches_rank_and_h1_exhaustively():
    a3 = fixture("A3")
    resonant = set(enumerate_r1(a3, 5))
    cx = AomotoComplex(a3, 5, up_to=1)
    seen = set()
    for lead in range(6):
        from itertools import product

        for tail in product(range(5), repeat=5 - lead):
            coords = (0,) * lead + (1,) + tail
            x = pt(coords, 5)
            by_rank = is_resonant_1(a3, x)
            by_h1 = cx.profile(x).dims[1] != 0
            assert by_rank == by_h1
            assert by_rank == (coords in resonant)
            seen.add(coords)
    assert len(seen) == (5**6 - 1) // 4


def test_enumerate_r1_pencil_and_boolean():
    pencil = Arrangement(3, ((0, 1, 2),), None, "pencil")
    assert enumerate_r1(pencil, 3) == [(0, 1, 2), (1, 0, 2), (1, 1, 1), (1, 2, 0)]
    boolean = from_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]], name="boolean", p=3)
    assert enumerate_r1(boolean, 3) == []


def test_enumerate_r1_validation():
    a3 = fixture("A3")
    with pytest.raises(InputError):
        enumerate_r1(a3, 4)
    with pytest.raises(BudgetError):
        enumerate_r1(a3, 5, budget=100)


def test_check_prop21_braid():
    a3 = fixture("A3")
    for q in (5, 7):
        rep = check_prop21(a3, q)
        assert rep.agree
        assert rep.n_planes == 5
        assert rep.n_resonant == 5 * (q + 1)
        assert rep.n_plane_points == rep.n_resonant
        assert rep.planes_pairwise_disjoint
        assert rep.missing == () and rep.extra == ()


def test_check_prop21_pencil_and_report_json():
    pencil = Arrangement(3, ((0, 1, 2),), None, "pencil")
    rep = check_prop21(pencil, 3)
    assert rep.agree and rep.n_planes == 1 and rep.n_resonant == 4
    obj = json.loads(rep.to_json())
    assert obj["agree"] is True
    assert obj["q"] == 3
    assert obj["missing"] == [] and obj["extra"] == []


def test_check_prop21_hessian_char2_budget():
    with pytest.raises(BudgetError):
        check_prop21(fixture("Hessian"), 2)


def test_is_resonant_k_braid():
    a3 = fixture("A3")
    gen = pt([1] * 6)
    res1 = is_resonant_k(a3, gen, 1)
    assert not res1 and not res1.witness and not res1.divergence
    local = is_resonant_k(a3, pt([0, 1, 0, 0, -1, 0]), 1)
    assert local and local.h == 1 and local.witness and not local.divergence
    # at k = 2 the open-locus condition is weaker than h^2 != 0: a witness
    # rho only avoids I_2 and ker(pt ^ .) separately, not their sum with
    # the image of d_1, so generic points diverge and the flag records it
    res2 = is_resonant_k(a3, gen, 2)
    assert not res2 and res2.h == 0 and res2.witness and res2.divergence
    with pytest.raises(InputError):
        is_resonant_k(a3, gen, 0)


def test_profile_json():
    prof = aomoto_profile(fixture("A3"), pt([1] * 6), up_to=1)
    obj = json.loads(prof.to_json())
    assert obj == {"dims": [0, 0], "ambient_dims": [1, 6], "last_rank": 5}
