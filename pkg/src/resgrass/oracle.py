"""Aomoto-complex oracle for resonance checks.

Resonance is decided here straight from the definition: build the cochain
complex (A, a) with A^k = Lambda^k / I_k and differential "wedge with a",
then read cohomology dimensions off exact ranks.  No Groebner bases are
involved, so this module cross-validates the Grassmannian pipeline rather
than depending on it.  Exhaustive small-field enumeration closes the loop:
the resonant points found by rank tests must match the union of planes
found by the decomposable search in P(I_2).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, product
from math import comb

import numpy as np

from .arrangement import Arrangement
from .errors import BudgetError, InputError, resolve_budget
from .exterior import ExtElement, Subspace, os_ideal_part, wedge
from .field import DEFAULT_MODULUS, is_prime, rank as row_rank
from .resonance import decomposables_in_I2_bruteforce


def _check_point(pt: ExtElement):
    if pt.grade != 1:
        raise InputError(f"expected a grade-1 element, got grade {pt.grade}")
    if pt.is_zero():
        raise InputError("the zero vector is not a projective point")


def _np_reduce_rows(mat, sub: Subspace):
    """Reduce each row of mat modulo the subspace, vectorized."""
    out = np.asarray(mat, dtype=np.int64) % sub.p
    if sub.pivots:
        rref = np.asarray(sub.rows, dtype=np.int64)
        out = (out - out[:, sub.pivots] @ rref) % sub.p
    return out


def _matrix_rank(mat, p: int) -> int:
    rows, cols = mat.shape
    if rows == 0 or cols == 0:
        return 0
    return row_rank(mat.tolist(), cols, p)


@dataclass(frozen=True)
class CohomologyProfile:
    """Cohomology dimensions h^0..h^m of an Aomoto complex.

    last_rank is the rank of the final differential d_m, which is what the
    truncated Euler identity needs: sum (-1)^k h^k equals
    sum (-1)^k dim A^k - (-1)^m last_rank.
    """

    dims: tuple[int, ...]
    ambient_dims: tuple[int, ...]
    last_rank: int

    def euler(self) -> int:
        return sum((-1) ** k * h for k, h in enumerate(self.dims))

    def to_json(self) -> str:
        return json.dumps(
            {
                "dims": list(self.dims),
                "ambient_dims": list(self.ambient_dims),
                "last_rank": self.last_rank,
            }
        )


class AomotoComplex:
    """The complex (A, a) over F_p in coset coordinates, reusable across points.

    Grades 0..up_to are kept; the target grade up_to+1 is needed for the last
    differential.  Combinatorial arrangements know their dependencies only up
    to size 3, so up_to >= 2 requires a realization.
    """

    def __init__(self, arr: Arrangement, p: int = DEFAULT_MODULUS, up_to: int = 1):
        if up_to < 0:
            raise InputError("up_to must be nonnegative")
        if up_to >= 2:
            if arr.matrix is None:
                raise InputError(
                    "cohomology above grade 1 needs I_3 and deeper, which require "
                    "a realization matrix; this arrangement is flats-only"
                )
            ell = row_rank([list(row) for row in arr.matrix], arr.n, p)
            if up_to > ell:
                raise InputError(f"up_to={up_to} exceeds the arrangement rank {ell}")
        self.arr = arr
        self.p = p
        self.up_to = up_to
        self.parts = {k: os_ideal_part(arr, k, p) for k in range(1, up_to + 2)}
        self._coset_cols = {
            k: [i for i in range(comb(arr.n, k)) if i not in set(sub.pivots)]
            for k, sub in self.parts.items()
        }
        dims = [1]
        for k in range(1, up_to + 1):
            dims.append(comb(arr.n, k) - self.parts[k].dim())
        self.ambient_dims = tuple(dims)

    def _domain_subsets(self, k: int):
        return [()] if k == 0 else self.parts[k].coset_subsets()

    def differential(self, pt: ExtElement, k: int):
        """Matrix of d_k: A^k -> A^{k+1}, rows indexed by the coset basis of A^k."""
        target = self.parts[k + 1]
        cols = self._coset_cols[k + 1]
        rows = []
        for s in self._domain_subsets(k):
            img = pt if k == 0 else wedge(pt, ExtElement(self.p, k, {s: 1}))
            rows.append(target.vector(img))
        if not rows:
            return np.zeros((0, len(cols)), dtype=np.int64)
        return _np_reduce_rows(rows, target)[:, cols]

    def differentials(self, pt: ExtElement):
        _check_point(pt)
        if pt.p != self.p:
            raise InputError("point modulus does not match the complex")
        return [self.differential(pt, k) for k in range(self.up_to + 1)]

    def profile(self, pt: ExtElement) -> CohomologyProfile:
        mats = self.differentials(pt)
        ranks = [_matrix_rank(m, self.p) for m in mats]
        dims = []
        for k in range(self.up_to + 1):
            below = ranks[k - 1] if k else 0
            dims.append(self.ambient_dims[k] - ranks[k] - below)
        return CohomologyProfile(tuple(dims), self.ambient_dims, ranks[-1])


def aomoto_profile(arr: Arrangement, pt: ExtElement, up_to: int = 1) -> CohomologyProfile:
    """Cohomology dimensions h^0..h^up_to of (A, a) at a = pt."""
    _check_point(pt)
    return AomotoComplex(arr, pt.p, up_to).profile(pt)


def is_resonant_1(arr: Arrangement, pt: ExtElement) -> bool:
    """Whether some b outside span(pt) has pt ^ b in I_2.

    Single rank computation: the map b -> (pt ^ b mod I_2) always kills pt,
    so resonance is exactly a kernel of dimension 2 or more.
    """
    _check_point(pt)
    sub = os_ideal_part(arr, 2, pt.p)
    n = arr.n
    rows = [
        sub.reduce_vec(sub.vector(wedge(pt, ExtElement(pt.p, 1, {(i,): 1}))))
        for i in range(n)
    ]
    return row_rank(rows, sub.ambient_dim(), pt.p, stop_at=n - 1) < n - 1


def _wedge_tensor(n: int, q: int, sub: Subspace):
    """T with T[i] @ a = coset coordinates of (a ^ e_i) reduced mod I_2."""
    m = comb(n, 2)
    pair_index = {pr: c for c, pr in enumerate(combinations(range(n), 2))}
    t = np.zeros((n, m, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if j < i:
                t[i, pair_index[(j, i)], j] = 1
            elif j > i:
                t[i, pair_index[(i, j)], j] = q - 1
    if sub.pivots:
        rref = np.asarray(sub.rows, dtype=np.int64)
        for i in range(n):
            t[i] = (t[i] - rref.T @ t[i][sub.pivots, :]) % q
    cols = [c for c in range(m) if c not in set(sub.pivots)]
    return t[:, cols, :]


def _tail_chunks(q: int, length: int, size: int = 4096):
    buf = []
    for tail in product(range(q), repeat=length):
        buf.append(tail)
        if len(buf) == size:
            yield buf
            buf = []
    if buf:
        yield buf


def enumerate_r1(arr: Arrangement, q: int, budget: int | None = None):
    """All resonant points of P^{n-1}(F_q), as sorted normalized tuples.

    Candidates are scanned in blocks by leading coordinate; each point costs
    one early-exit rank test on its reduced wedge matrix.
    """
    if not is_prime(q):
        raise InputError(f"enumeration field size must be prime, got {q}")
    budget = resolve_budget(budget)
    n = arr.n
    candidates = (q**n - 1) // (q - 1)
    if candidates > budget:
        raise BudgetError(candidates, budget, "resonant point enumeration")
    sub = os_ideal_part(arr, 2, q)
    tensor = _wedge_tensor(n, q, sub)
    mcols = tensor.shape[1]
    found = []
    for lead in range(n):
        prefix = (0,) * lead + (1,)
        for chunk in _tail_chunks(q, n - 1 - lead):
            pts = np.empty((len(chunk), n), dtype=np.int64)
            pts[:, :lead] = 0
            pts[:, lead] = 1
            pts[:, lead + 1 :] = np.asarray(chunk, dtype=np.int64).reshape(len(chunk), -1)
            batch = np.einsum("imj,cj->cim", tensor, pts) % q
            for c in range(len(chunk)):
                r = row_rank(batch[c].tolist(), mcols, q, stop_at=n - 1)
                if r < n - 1:
                    found.append(prefix + chunk[c])
    return sorted(found)


@dataclass(frozen=True)
class Prop21Report:
    """Outcome of comparing rank-test resonance with the decomposable planes."""

    arrangement: str
    q: int
    agree: bool
    n_resonant: int
    n_planes: int
    n_plane_points: int
    planes_pairwise_disjoint: bool
    missing: tuple  # plane points the rank test did not flag
    extra: tuple  # flagged points on no plane

    def to_json(self) -> str:
        return json.dumps(
            {
                "arrangement": self.arrangement,
                "q": self.q,
                "agree": self.agree,
                "n_resonant": self.n_resonant,
                "n_planes": self.n_planes,
                "n_plane_points": self.n_plane_points,
                "planes_pairwise_disjoint": self.planes_pairwise_disjoint,
                "missing": [list(pt) for pt in self.missing],
                "extra": [list(pt) for pt in self.extra],
            }
        )


def check_prop21(arr: Arrangement, q: int, budget: int | None = None) -> Prop21Report:
    """Compare the two routes to R^1 over F_q point by point.

    Route one enumerates resonant points by rank tests; route two takes the
    union of F_q-points of the planes found by the decomposable search.
    Agreement plus the symmetric difference goes into the report.
    """
    planes = decomposables_in_I2_bruteforce(arr, q, budget)
    resonant = set(enumerate_r1(arr, q, budget))
    union = set()
    disjoint = True
    for pl in planes:
        pts = set(pl.points())
        if union & pts:
            disjoint = False
        union |= pts
    missing = tuple(sorted(union - resonant))
    extra = tuple(sorted(resonant - union))
    return Prop21Report(
        arrangement=arr.name,
        q=q,
        agree=not missing and not extra,
        n_resonant=len(resonant),
        n_planes=len(planes),
        n_plane_points=len(union),
        planes_pairwise_disjoint=disjoint,
        missing=missing,
        extra=extra,
    )


@dataclass(frozen=True)
class KResonance:
    """Grade-k resonance verdict with the open-locus witness cross-check.

    resonant follows the cohomological definition h^k != 0.  witness asks for
    rho in Lambda^k with pt ^ rho in I_{k+1}, pt ^ rho != 0 and rho not in
    I_k; the two can disagree in principle, so divergence is reported rather
    than asserted away.
    """

    k: int
    h: int
    resonant: bool
    witness: bool
    divergence: bool

    def __bool__(self) -> bool:
        return self.resonant


def is_resonant_k(arr: Arrangement, pt: ExtElement, k: int) -> KResonance:
    """Grade-k resonance of pt by cohomology, with the witness condition."""
    if k < 1:
        raise InputError("resonance grade must be at least 1")
    _check_point(pt)
    prof = aomoto_profile(arr, pt, up_to=k)
    h = prof.dims[k]
    p = pt.p
    low = os_ideal_part(arr, k, p)
    high = os_ideal_part(arr, k + 1, p)
    rows = [
        high.vector(wedge(pt, ExtElement(p, k, {s: 1})))
        for s in combinations(range(arr.n), k)
    ]
    nk = comb(arr.n, k)
    ncols = high.ambient_dim()
    ker_full = nk - row_rank([list(r) for r in rows], ncols, p)
    reduced = _np_reduce_rows(rows, high)
    ker_mod = nk - _matrix_rank(reduced, p)
    # a witness exists iff the preimage of I_{k+1} exceeds both I_k and
    # ker(pt ^ .), since two proper subspaces never cover a vector space
    witness = ker_mod > low.dim() and ker_mod > ker_full
    return KResonance(k, h, h != 0, witness, (h != 0) != witness)
