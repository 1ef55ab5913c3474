"""Exterior algebra over F_p on symbols e_0..e_{n-1}, with subset basis.

A grade-r element is a dict mapping strictly increasing r-tuples of indices to
nonzero coefficients.  The boundary of e_S is the alternating sum of its
facets; its span over all dependent sets S generates the relation ideal whose
graded slices live in Subspace objects.
"""

from __future__ import annotations

from itertools import combinations

from .arrangement import Arrangement, dependent_sets
from .field import DEFAULT_MODULUS


def _merge_signed(a: tuple, b: tuple):
    """Merge two increasing tuples, or None if they overlap; sign = (-1)^inversions."""
    out = []
    i = j = inv = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return None
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            inv += len(a) - i
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return (-1) ** inv, tuple(out)


class ExtElement:
    """Homogeneous element of the exterior algebra over F_p."""

    __slots__ = ("p", "grade", "terms")

    def __init__(self, p: int, grade: int, terms=None):
        self.p = p
        self.grade = grade
        clean = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != grade or any(key[i] >= key[i + 1] for i in range(len(key) - 1)):
                raise ValueError(f"bad grade-{grade} basis subset {key}")
            c %= p
            if c:
                clean[key] = c
        self.terms = clean

    @classmethod
    def generator(cls, p: int, i: int) -> "ExtElement":
        return cls(p, 1, {(i,): 1})

    @classmethod
    def from_coeffs(cls, p: int, coeffs) -> "ExtElement":
        """Grade-1 element sum_i coeffs[i] * e_i."""
        return cls(p, 1, {(i,): c for i, c in enumerate(coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, c: int) -> "ExtElement":
        return ExtElement(self.p, self.grade, {k: v * c for k, v in self.terms.items()})

    def __add__(self, other: "ExtElement") -> "ExtElement":
        if (self.p, self.grade) != (other.p, other.grade):
            raise ValueError("grade or modulus mismatch")
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return ExtElement(self.p, self.grade, terms)

    def __sub__(self, other: "ExtElement") -> "ExtElement":
        return self + other.scale(-1)

    def __neg__(self) -> "ExtElement":
        return self.scale(-1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExtElement)
            and self.p == other.p
            and self.grade == other.grade
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.p, self.grade, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for key in sorted(self.terms):
            c = self.terms[key]
            if c > self.p // 2:
                c -= self.p
            name = "e" + ",".join(map(str, key)) if key else "1"
            if c == 1:
                bits.append(f"+ {name}")
            elif c == -1:
                bits.append(f"- {name}")
            else:
                bits.append(f"{'+' if c > 0 else '-'} {abs(c)}*{name}")
        s = " ".join(bits)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def wedge(x: ExtElement, y: ExtElement) -> ExtElement:
    """Exterior product; the sign is the inversion count of the index merge."""
    if x.p != y.p:
        raise ValueError("modulus mismatch")
    p = x.p
    terms: dict = {}
    for ka, ca in x.terms.items():
        for kb, cb in y.terms.items():
            merged = _merge_signed(ka, kb)
            if merged is None:
                continue
            sign, key = merged
            terms[key] = terms.get(key, 0) + sign * ca * cb
    return ExtElement(p, x.grade + y.grade, terms)


def boundary(subset, p: int = DEFAULT_MODULUS) -> ExtElement:
    """d(e_S) = sum_i (-1)^i e_{S minus its i-th element}."""
    s = tuple(sorted(subset))
    if len(set(s)) != len(s):
        raise ValueError(f"subset {subset} repeats an index")
    terms = {}
    for i in range(len(s)):
        terms[s[:i] + s[i + 1:]] = (-1) ** i
    return ExtElement(p, len(s) - 1, terms)


class Subspace:
    """Subspace of the grade-k slice, held in reduced echelon form.

    Coordinates run over the k-subsets of range(n) in lexicographic order, so
    equal subspaces always carry identical rows.
    """

    __slots__ = ("n", "k", "p", "subsets", "index", "rows", "pivots")

    def __init__(self, n: int, k: int, p: int, rows, pivots):
        self.n, self.k, self.p = n, k, p
        self.subsets = list(combinations(range(n), k))
        self.index = {s: i for i, s in enumerate(self.subsets)}
        self.rows = rows
        self.pivots = pivots

    @classmethod
    def from_elements(cls, n: int, k: int, p: int, elems) -> "Subspace":
        from .field import rref

        ncols = len(list(combinations(range(n), k)))
        index = {s: i for i, s in enumerate(combinations(range(n), k))}
        mat = []
        for x in elems:
            if x.grade != k or x.p != p:
                raise ValueError("element grade or modulus mismatch")
            row = [0] * ncols
            for key, c in x.terms.items():
                row[index[key]] = c
            mat.append(row)
        rows, pivots = rref(mat, ncols, p)
        return cls(n, k, p, rows, pivots)

    def dim(self) -> int:
        return len(self.rows)

    def ambient_dim(self) -> int:
        return len(self.subsets)

    def vector(self, x: ExtElement):
        if x.grade != self.k or x.p != self.p:
            raise ValueError("element grade or modulus mismatch")
        row = [0] * len(self.subsets)
        for key, c in x.terms.items():
            row[self.index[key]] = c
        return row

    def reduce_vec(self, vec):
        """Canonical representative of vec modulo the subspace (pivot coords zeroed)."""
        p = self.p
        out = [c % p for c in vec]
        for r, pc in zip(self.rows, self.pivots):
            f = out[pc]
            if f:
                out = [(a - f * b) % p for a, b in zip(out, r)]
        return out

    def reduce(self, x: ExtElement) -> ExtElement:
        vec = self.reduce_vec(self.vector(x))
        return self.element_from_vec(vec)

    def element_from_vec(self, vec) -> ExtElement:
        return ExtElement(
            self.p, self.k, {s: c for s, c in zip(self.subsets, vec) if c % self.p}
        )

    def contains(self, x: ExtElement) -> bool:
        return all(c % self.p == 0 for c in self.reduce_vec(self.vector(x)))

    def coset_subsets(self):
        """Basis subsets of a complement: the non-pivot coordinates."""
        pivot_set = set(self.pivots)
        return [s for i, s in enumerate(self.subsets) if i not in pivot_set]


def os_ideal_part(arr: Arrangement, k: int, p: int = DEFAULT_MODULUS) -> Subspace:
    """The grade-k slice I_k of the ideal generated by boundaries of dependent sets.

    Spanning set: e_J ^ boundary(S) over dependent S with |S| <= k+1 and all
    J of the complementary size.  Flats-only arrangements know their size-3
    dependencies, hence support k <= 2 only (the slice for k < 2 is zero).
    """
    elems = []
    if k >= 2:
        for S in dependent_sets(arr, min(k + 1, arr.n), p):
            d = boundary(S, p)
            jsize = k - len(S) + 1
            if jsize == 0:
                elems.append(d)
            else:
                for J in combinations(range(arr.n), jsize):
                    w = wedge(ExtElement(p, jsize, {J: 1}), d)
                    if not w.is_zero():
                        elems.append(w)
    return Subspace.from_elements(arr.n, k, p, elems)
