"""Arithmetic in the prime field F_p and small dense linear algebra over it.

Matrices are plain lists of rows, each row a list of ints reduced mod p.
Everything in this package is exact; no floating point enters the pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_MODULUS = 31991

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; the base set covers all n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field Z/p for a fixed prime p."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def element(self, x: int) -> int:
        return x % self.p

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.p

    def mul(self, x: int, y: int) -> int:
        return x * y % self.p

    def neg(self, x: int) -> int:
        return -x % self.p

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.p}")
        return pow(x, self.p - 2, self.p)


def rref(rows, ncols: int, p: int):
    """Reduced row echelon form over F_p.

    Returns (reduced_rows, pivot_columns); zero rows are dropped.  Pivoting is
    deterministic (first nonzero entry scanning top to bottom), so equal row
    spaces always produce identical output.
    """
    mat = [[x % p for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        mat[r] = [v * inv % p for v in mat[r]]
        lead = mat[r]
        for i in range(len(mat)):
            f = mat[i][c]
            if f and i != r:
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], lead)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows, ncols: int, p: int, stop_at: int | None = None) -> int:
    """Rank by forward elimination; returns early once stop_at is reached."""
    mat = [[x % p for x in row] for row in rows]
    rk = 0
    for c in range(ncols):
        pr = next((i for i in range(rk, len(mat)) if mat[i][c]), None)
        if pr is None:
            continue
        mat[rk], mat[pr] = mat[pr], mat[rk]
        inv = pow(mat[rk][c], p - 2, p)
        lead = [v * inv % p for v in mat[rk]]
        mat[rk] = lead
        for i in range(rk + 1, len(mat)):
            f = mat[i][c]
            if f:
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], lead)]
        rk += 1
        if rk == len(mat) or (stop_at is not None and rk >= stop_at):
            break
    return rk


def kernel_basis(rows, ncols: int, p: int):
    """Basis of the right kernel {v : M v = 0}, itself in reduced echelon form.

    An empty matrix (no rows) has the full space as kernel, so the identity
    basis comes back.
    """
    red, pivots = rref(rows, ncols, p)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    vecs = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][f] % p
        vecs.append(v)
    out, _ = rref(vecs, ncols, p)
    return out


def matvec(rows, vec, p: int):
    return [sum(a * b for a, b in zip(row, vec)) % p for row in rows]
