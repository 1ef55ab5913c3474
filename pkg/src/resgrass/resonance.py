"""First resonance varieties via the Grassmannian of 2-planes.

Each dependent triple of hyperplanes contributes a distinguished point of
P(Lambda^2), the boundary of the triple.  The first resonance variety is cut
out of G(2, n) by the linear span of those points: the defining ideal is the
Plucker quadrics plus the linear forms vanishing on the span.  Its Hilbert
polynomial is the headline output; a brute-force decomposable search over a
small field gives the same locus point by point for cross-checking.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from itertools import combinations, product

from .arrangement import Arrangement, dependent_sets
from .errors import BudgetError, InputError, resolve_budget
from .exterior import ExtElement, os_ideal_part, wedge
from .field import DEFAULT_MODULUS, is_prime, kernel_basis, rref
from .grobner import PluckerRing, buchberger, plucker_ideal
from .hilbert import format_hp, hilbert_numerator, hilbert_polynomial, leading_ideal


@dataclass(frozen=True)
class PluckerPoint:
    """A point of P(Lambda^2 F_p^n) in pair coordinates, pairs in lex order."""

    n: int
    p: int
    coords: tuple[int, ...]

    def __post_init__(self):
        want = self.n * (self.n - 1) // 2
        if len(self.coords) != want:
            raise ValueError(f"expected {want} coordinates, got {len(self.coords)}")

    def normalized(self) -> "PluckerPoint":
        lead = next((c for c in self.coords if c % self.p), None)
        if lead is None:
            raise ValueError("zero vector is not a projective point")
        inv = pow(lead, self.p - 2, self.p)
        return PluckerPoint(self.n, self.p, tuple(c * inv % self.p for c in self.coords))

    def element(self) -> ExtElement:
        pairs = combinations(range(self.n), 2)
        return ExtElement(self.p, 2, {pr: c for pr, c in zip(pairs, self.coords)})


def os_points(arr: Arrangement, p: int = DEFAULT_MODULUS) -> list[PluckerPoint]:
    """One point per dependent triple: the (+1, -1, +1) boundary pattern."""
    index = {pr: k for k, pr in enumerate(combinations(range(arr.n), 2))}
    pts = []
    for a, b, c in dependent_sets(arr, 3, p):
        coords = [0] * len(index)
        coords[index[(b, c)]] = 1
        coords[index[(a, c)]] = p - 1
        coords[index[(a, b)]] = 1
        pts.append(PluckerPoint(arr.n, p, tuple(coords)))
    return pts


def span_forms(points, ring: PluckerRing):
    """Linear forms cutting out the projective span of the given points.

    With no points the span is empty and every coordinate must vanish, so all
    ring variables come back.
    """
    for pt in points:
        if pt.n != ring.n or pt.p != ring.p:
            raise ValueError("point does not match the ring")
    rows = [list(pt.coords) for pt in points]
    ker = kernel_basis(rows, ring.nvars, ring.p)
    return [ring.linear_form(v) for v in ker]


@dataclass(frozen=True)
class ResonanceReport:
    arrangement: str
    n: int
    p: int
    order: str
    hilbert: str
    n_os_points: int
    n_span_forms: int
    timings_ms: dict

    def to_json(self) -> str:
        return json.dumps(
            {
                "arrangement": self.arrangement,
                "n": self.n,
                "p": self.p,
                "order": self.order,
                "hilbert": self.hilbert,
                "n_os_points": self.n_os_points,
                "n_span_forms": self.n_span_forms,
                "timings_ms": self.timings_ms,
            }
        )


def r1_hilbert(arr: Arrangement, p: int = DEFAULT_MODULUS, order: str = "grevlex") -> ResonanceReport:
    """Hilbert polynomial of G(2, n) intersected with the span of the OS points."""
    t0 = time.perf_counter()
    pts = os_points(arr, p)
    ring = PluckerRing(arr.n, p, order)
    forms = span_forms(pts, ring)
    t1 = time.perf_counter()
    if pts:
        gens = plucker_ideal(ring) + forms
        gb = buchberger(gens, ring=ring)
        t2 = time.perf_counter()
        hp = hilbert_polynomial(hilbert_numerator(leading_ideal(gb)), ring.nvars)
        t3 = time.perf_counter()
        hilbert = format_hp(hp)
    else:
        # empty span: no resonance, and no reason to run Buchberger
        t2 = t3 = t1
        hilbert = "0"
    ms = lambda a, b: round((b - a) * 1000.0, 3)
    return ResonanceReport(
        arrangement=arr.name,
        n=arr.n,
        p=p,
        order=order,
        hilbert=hilbert,
        n_os_points=len(pts),
        n_span_forms=len(forms),
        timings_ms={
            "span": ms(t0, t1),
            "groebner": ms(t1, t2),
            "hilbert": ms(t2, t3),
            "total": ms(t0, t3),
        },
    )


def is_decomposable(u: ExtElement) -> bool:
    """Whether a grade-2 element is a wedge of two vectors.

    Tested by the three-term Plucker relations on the support, which is the
    u ^ u = 0 criterion in a form that also survives characteristic 2.
    """
    if u.grade != 2:
        raise ValueError("decomposability test expects grade 2")
    idx = sorted({i for key in u.terms for i in key})
    p = u.p
    get = u.terms.get
    for a, b, c, d in combinations(idx, 4):
        val = (
            get((a, b), 0) * get((c, d), 0)
            - get((a, c), 0) * get((b, d), 0)
            + get((a, d), 0) * get((b, c), 0)
        )
        if val % p:
            return False
    return True


def factor_decomposable(u: ExtElement):
    """Vectors (x, y) with x ^ y = u; ValueError when u is not decomposable.

    The factor plane is the kernel of v -> v ^ u, one linear condition per
    triple inside the support.
    """
    if u.grade != 2 or u.is_zero():
        raise ValueError("need a nonzero grade-2 element")
    p = u.p
    idx = sorted({i for key in u.terms for i in key})
    m = len(idx)
    get = u.terms.get
    rows = []
    for i, j, l in combinations(range(m), 3):
        row = [0] * m
        row[i] = get((idx[j], idx[l]), 0)
        row[j] = -get((idx[i], idx[l]), 0) % p
        row[l] = get((idx[i], idx[j]), 0)
        rows.append(row)
    ker = kernel_basis(rows, m, p)
    if len(ker) != 2:
        raise ValueError("element is not decomposable")
    x = ExtElement(p, 1, {(idx[i],): c for i, c in enumerate(ker[0])})
    y = ExtElement(p, 1, {(idx[i],): c for i, c in enumerate(ker[1])})
    w = wedge(x, y)
    key = next(iter(sorted(u.terms)))
    scale = u.terms[key] * pow(w.terms[key], p - 2, p)
    x = x.scale(scale)
    out = wedge(x, y)
    if out != u:
        raise ValueError("element is not decomposable")
    return x, y


@dataclass(frozen=True)
class Plane:
    """A projective line of 2-planes: reduced-echelon basis of a 2-dim subspace."""

    n: int
    p: int
    basis: tuple[tuple[int, ...], tuple[int, ...]]

    @classmethod
    def from_pair(cls, x: ExtElement, y: ExtElement, n: int) -> "Plane":
        p = x.p
        rows = []
        for v in (x, y):
            rows.append([v.terms.get((i,), 0) for i in range(n)])
        red, _ = rref(rows, n, p)
        if len(red) != 2:
            raise ValueError("vectors do not span a plane")
        return cls(n, p, (tuple(red[0]), tuple(red[1])))

    def points(self):
        """The q+1 projective points on the plane, first nonzero coordinate 1."""
        p = self.p
        r0, r1 = self.basis
        pts = [r1]  # already normalized by rref
        for t in range(p):
            v = tuple((a + t * b) % p for a, b in zip(r0, r1))
            pts.append(v)  # leading 1 of r0 survives: already normalized
        return pts

    def plucker_point(self) -> PluckerPoint:
        r0, r1 = self.basis
        coords = tuple(
            (r0[i] * r1[j] - r0[j] * r1[i]) % self.p
            for i, j in combinations(range(self.n), 2)
        )
        return PluckerPoint(self.n, self.p, coords).normalized()


def decomposables_in_I2_bruteforce(arr: Arrangement, q: int, budget: int | None = None):
    """All 2-planes whose Plucker point lies in P(I_2), by full F_q enumeration.

    Candidate count is (q^dim - 1)/(q - 1); anything over the budget raises
    BudgetError before any work happens.
    """
    if not is_prime(q):
        raise InputError(f"enumeration field size must be prime, got {q}")
    budget = resolve_budget(budget)
    sub = os_ideal_part(arr, 2, q)
    m = sub.dim()
    candidates = (q**m - 1) // (q - 1) if m else 0
    if candidates > budget:
        raise BudgetError(candidates, budget, "decomposable search in P(I_2)")
    basis = [sub.element_from_vec(row) for row in sub.rows]
    planes = []
    for lead in range(m):
        for tail in product(range(q), repeat=m - lead - 1):
            u = basis[lead]
            for c, b in zip(tail, basis[lead + 1:]):
                if c:
                    u = u + b.scale(c)
            if is_decomposable(u):
                x, y = factor_decomposable(u)
                planes.append(Plane.from_pair(x, y, arr.n))
    return sorted(planes, key=lambda pl: pl.basis)
