"""Sparse polynomials over F_p, packed monomials, and a Buchberger engine.

Monomials are packed into Python ints so that integer comparison realizes the
monomial order directly.  Graded reverse lexicographic follows the Macaulay2
convention: the first ring variable is largest, degrees compare first, and
ties break at the last variable where the exponents differ, smaller exponent
winning.  Exponents and total degrees are capped at 127 per monomial, far
above anything the resonance pipeline produces.

The Buchberger loop prunes S-pairs with the Gebauer-Moeller criteria and
picks pairs by smallest lcm.  Before the loop, linear generators are
eliminated by row reduction and substituted into the rest: every S-poly of a
linear form with leading variable absent elsewhere reduces to zero, so a
reduced basis of the substituted ideal together with the linear forms is the
reduced basis of the whole ideal.  Homogeneous inputs take a vectorized path
that reduces whole coefficient vectors per degree with numpy; a dict-based
reference reducer handles everything else (and cross-checks the fast path in
the tests).
"""

from __future__ import annotations

from heapq import heapify, heappop, heappush
from itertools import combinations, combinations_with_replacement

import numpy as np

from .field import DEFAULT_MODULUS, PrimeField, rref

_W = 8
_CAP = 127


class GrevlexOrder:
    """Degree-prefixed complement digits: bigger packed int = bigger monomial."""

    name = "grevlex"
    graded = True

    def __init__(self, nvars: int):
        self.nvars = nvars
        self._degshift = _W * nvars
        self.offset = sum(_CAP << (_W * i) for i in range(nvars))
        self.one = self.offset
        self._guards = sum(0x80 << (_W * i) for i in range(nvars))
        self._chk = self._guards

    def pack(self, exps) -> int:
        if len(exps) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents, got {len(exps)}")
        deg = 0
        key = 0
        for i, e in enumerate(exps):
            if not 0 <= e <= _CAP:
                raise OverflowError(f"exponent {e} outside 0..{_CAP}")
            deg += e
            key |= (_CAP - e) << (_W * i)
        if deg > _CAP:
            raise OverflowError(f"total degree {deg} over the cap {_CAP}")
        return key | (deg << self._degshift)

    def pack_combo(self, combo) -> int:
        """Pack a multiset of variable indices (len = total degree)."""
        key = self.offset + (len(combo) << self._degshift)
        for v in combo:
            key -= 1 << (_W * v)
        return key

    def unpack(self, key: int):
        return tuple(
            _CAP - ((key >> (_W * i)) & 0xFF) for i in range(self.nvars)
        )

    def degree(self, key: int) -> int:
        return key >> self._degshift

    def mul(self, a: int, b: int) -> int:
        k = a + b - self.offset
        if (k >> self._degshift) > _CAP:
            raise OverflowError(f"product degree over the cap {_CAP}")
        return k

    def quo(self, a: int, b: int) -> int:
        """a / b for b dividing a."""
        return a - b + self.offset

    def divides(self, b: int, a: int) -> bool:
        # per-slot digit_b >= digit_a, checked in parallel via guard bits;
        # complement digits stay below 0x80, so no borrow crosses a slot
        return (b + self._guards - a) & self._chk == self._chk

    def lcm(self, a: int, b: int) -> int:
        if a == b:
            return a
        key = 0
        deg = 0
        for i in range(self.nvars):
            da = (a >> (_W * i)) & 0xFF
            db = (b >> (_W * i)) & 0xFF
            d = da if da < db else db
            key |= d << (_W * i)
            deg += _CAP - d
        return key | (deg << self._degshift)


class LexOrder:
    """Plain exponent digits, first variable most significant."""

    name = "lex"
    graded = False

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.one = 0
        self._guards = sum(0x80 << (_W * i) for i in range(nvars))
        self._chk = self._guards

    def _shift(self, i: int) -> int:
        return _W * (self.nvars - 1 - i)

    def pack(self, exps) -> int:
        if len(exps) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents, got {len(exps)}")
        key = 0
        for i, e in enumerate(exps):
            if not 0 <= e <= _CAP:
                raise OverflowError(f"exponent {e} outside 0..{_CAP}")
            key |= e << self._shift(i)
        return key

    def pack_combo(self, combo) -> int:
        key = 0
        for v in combo:
            key += 1 << self._shift(v)
        return key

    def unpack(self, key: int):
        return tuple((key >> self._shift(i)) & 0xFF for i in range(self.nvars))

    def degree(self, key: int) -> int:
        return sum((key >> (_W * i)) & 0xFF for i in range(self.nvars))

    def mul(self, a: int, b: int) -> int:
        return a + b

    def quo(self, a: int, b: int) -> int:
        return a - b

    def divides(self, b: int, a: int) -> bool:
        return (a + self._guards - b) & self._chk == self._chk

    def lcm(self, a: int, b: int) -> int:
        if a == b:
            return a
        key = 0
        for i in range(self.nvars):
            da = (a >> (_W * i)) & 0xFF
            db = (b >> (_W * i)) & 0xFF
            key |= (da if da > db else db) << (_W * i)
        return key


_ORDERS = {"grevlex": GrevlexOrder, "lex": LexOrder}


class PolyRing:
    """F_p[x_0 .. x_{nvars-1}] with a fixed monomial order."""

    def __init__(self, nvars: int, p: int = DEFAULT_MODULUS, order: str = "grevlex",
                 names=None):
        if order not in _ORDERS:
            raise ValueError(f"unknown order {order!r} (grevlex or lex)")
        PrimeField(p)  # validates primality
        self.nvars = nvars
        self.p = p
        self.order = order
        self.ord = _ORDERS[order](nvars)
        self.names = tuple(names) if names else tuple(f"x{i}" for i in range(nvars))
        if len(self.names) != nvars:
            raise ValueError("wrong number of variable names")

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {self.ord.one: 1})

    def var(self, i: int) -> "Poly":
        return Poly(self, {self.ord.pack_combo((i,)): 1})

    def monomial(self, exps, c: int = 1) -> "Poly":
        return Poly(self, {self.ord.pack(exps): c})

    def from_exp_terms(self, terms: dict) -> "Poly":
        return Poly(self, {self.ord.pack(e): c for e, c in terms.items()})

    def linear_form(self, coeffs, const: int = 0) -> "Poly":
        terms = {self.ord.pack_combo((i,)): c for i, c in enumerate(coeffs) if c % self.p}
        if const % self.p:
            terms[self.ord.one] = const
        return Poly(self, terms)

    def __repr__(self):
        return f"PolyRing(nvars={self.nvars}, p={self.p}, order={self.order!r})"


class PluckerRing(PolyRing):
    """Coordinate ring of P(Lambda^2 F^n): one variable w_{i}_{j} per pair i<j."""

    def __init__(self, n: int, p: int = DEFAULT_MODULUS, order: str = "grevlex"):
        if n < 2:
            raise ValueError("need at least two hyperplanes")
        pairs = tuple(combinations(range(n), 2))
        names = tuple(f"w_{i}_{j}" for i, j in pairs)
        super().__init__(len(pairs), p, order, names)
        self.n = n
        self.pairs = pairs
        self.pair_index = {pr: k for k, pr in enumerate(pairs)}

    def pair_var(self, i: int, j: int) -> "Poly":
        return self.var(self.pair_index[(min(i, j), max(i, j))])


class Poly:
    """Immutable-ish sparse polynomial: dict of packed monomial -> coeff in [1, p)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        p = ring.p
        self.terms = {k: c % p for k, c in terms.items() if c % p}

    def is_zero(self) -> bool:
        return not self.terms

    def lead_key(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no lead term")
        return max(self.terms)

    def lead_coeff(self) -> int:
        return self.terms[self.lead_key()]

    def lead_exponents(self):
        return self.ring.ord.unpack(self.lead_key())

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        inv = pow(self.lead_coeff(), self.ring.p - 2, self.ring.p)
        return Poly(self.ring, {k: c * inv for k, c in self.terms.items()})

    def degree(self) -> int:
        if not self.terms:
            return -1
        o = self.ring.ord
        if o.graded:
            return o.degree(max(self.terms))
        return max(o.degree(k) for k in self.terms)

    def is_homogeneous(self) -> bool:
        o = self.ring.ord
        degs = {o.degree(k) for k in self.terms}
        return len(degs) <= 1

    def scale(self, c: int) -> "Poly":
        return Poly(self.ring, {k: v * c for k, v in self.terms.items()})

    def __add__(self, other: "Poly") -> "Poly":
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return Poly(self.ring, terms)

    def __sub__(self, other: "Poly") -> "Poly":
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) - v
        return Poly(self.ring, terms)

    def __neg__(self) -> "Poly":
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        mul = self.ring.ord.mul
        terms: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                k = mul(ka, kb)
                terms[k] = terms.get(k, 0) + ca * cb
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def evaluate(self, vals) -> int:
        p = self.ring.p
        total = 0
        for key, c in self.terms.items():
            prod = c
            for i, e in enumerate(self.ring.ord.unpack(key)):
                if e:
                    prod = prod * pow(vals[i], e, p) % p
            total += prod
        return total % p

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.ring is other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((id(self.ring), frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        p = self.ring.p
        names = self.ring.names
        bits = []
        for key in sorted(self.terms, reverse=True):
            c = self.terms[key]
            if c > p // 2:
                c -= p
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(names, self.ring.ord.unpack(key))
                if e
            )
            if not mono:
                bits.append(f"{'+' if c > 0 else '-'} {abs(c)}")
            elif abs(c) == 1:
                bits.append(f"{'+' if c > 0 else '-'} {mono}")
            else:
                bits.append(f"{'+' if c > 0 else '-'} {abs(c)}*{mono}")
        s = " ".join(bits)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def plucker_ideal(ring: PluckerRing):
    """The three-term quadrics cutting out G(2, n), one per 4-subset of indices."""
    mul = ring.ord.mul

    def vk(i, j):
        return ring.ord.pack_combo((ring.pair_index[(i, j)],))

    out = []
    for a, b, c, d in combinations(range(ring.n), 4):
        out.append(
            Poly(
                ring,
                {
                    mul(vk(a, b), vk(c, d)): 1,
                    mul(vk(a, c), vk(b, d)): -1,
                    mul(vk(a, d), vk(b, c)): 1,
                },
            )
        )
    return out


class _DivisorIndex:
    """First basis element whose lead divides a query monomial, with caching.

    The negative cache stores how many elements have been checked, so
    appending new elements never requires invalidation.
    """

    def __init__(self, ord_, leads=()):
        self.ord = ord_
        self.leads = list(leads)
        self._pos: dict = {}
        self._neg: dict = {}

    def append(self, lead: int):
        self.leads.append(lead)

    def find(self, m: int):
        gi = self._pos.get(m)
        if gi is not None:
            return gi
        leads = self.leads
        divides = self.ord.divides
        for gi in range(self._neg.get(m, 0), len(leads)):
            if divides(leads[gi], m):
                self._pos[m] = gi
                return gi
        self._neg[m] = len(leads)
        return None


def _nf_terms(terms, basis_terms, index: _DivisorIndex, lcinvs, ord_, p: int):
    """Full normal form of a term dict against an indexed basis (dict engine)."""
    work = {k: c % p for k, c in terms.items() if c % p}
    out: dict = {}
    heap = [-k for k in work]
    heapify(heap)
    mul = ord_.mul
    quo = ord_.quo
    while heap:
        k = -heappop(heap)
        c = work.pop(k, 0) % p
        if not c:
            continue
        gi = index.find(k)
        if gi is None:
            out[k] = c
            continue
        q = quo(k, index.leads[gi])
        f = c * lcinvs[gi] % p
        for kg, cg in basis_terms[gi]:
            kk = mul(q, kg)
            if kk == k:
                continue
            cur = work.get(kk)
            if cur is None:
                work[kk] = -f * cg
                heappush(heap, -kk)
            else:
                work[kk] = cur - f * cg
    return out


def normal_form(f: Poly, gens) -> Poly:
    """Remainder of f on division by gens (a GroebnerBasis or iterable of Poly).

    Every monomial of the result is irreducible; the result is canonical when
    gens is a Groebner basis.
    """
    if isinstance(gens, GroebnerBasis):
        gens = gens.gens
    gens = [g for g in gens if g.terms]
    ring = f.ring
    if not gens:
        return f
    index = _DivisorIndex(ring.ord, [g.lead_key() for g in gens])
    basis_terms = [list(g.terms.items()) for g in gens]
    lcinvs = [pow(g.lead_coeff(), ring.p - 2, ring.p) for g in gens]
    return Poly(ring, _nf_terms(f.terms, basis_terms, index, lcinvs, ring.ord, ring.p))


class _PairSet:
    """Gebauer-Moeller managed S-pair queue, popping smallest lcm first."""

    def __init__(self, ord_):
        self.ord = ord_
        self.leads: list[int] = []
        self.alive: dict = {}
        self.heap: list = []

    def add_element(self, lead: int):
        ord_ = self.ord
        t = len(self.leads)
        # chain criterion: a strictly smaller new lcm retires old pairs
        for (i, j), l in list(self.alive.items()):
            if (
                ord_.divides(lead, l)
                and ord_.lcm(self.leads[i], lead) != l
                and ord_.lcm(self.leads[j], lead) != l
            ):
                del self.alive[(i, j)]
        cand = [(ord_.lcm(self.leads[i], lead), i) for i in range(t)]
        keep = []
        for li, i in cand:
            if any(lj != li and ord_.divides(lj, li) for lj, _ in cand):
                continue
            keep.append((li, i))
        by_lcm: dict = {}
        for li, i in keep:
            by_lcm.setdefault(li, []).append(i)
        for li in sorted(by_lcm):
            group = by_lcm[li]
            if any(li == ord_.mul(self.leads[i], lead) for i in group):
                continue  # coprime leads: that S-poly reduces to zero
            pair = (min(group), t)
            self.alive[pair] = li
            heappush(self.heap, (li, *pair))
        self.leads.append(lead)

    def pop(self):
        while self.heap:
            li, i, j = heappop(self.heap)
            if self.alive.get((i, j)) == li:
                del self.alive[(i, j)]
                return i, j
        return None


def _buchberger_dict(polys):
    """Reference Buchberger loop on term dicts; handles inhomogeneous input."""
    ring = polys[0].ring
    ord_, p = ring.ord, ring.p
    basis_terms: list = []
    index = _DivisorIndex(ord_)
    lcinvs: list = []
    pairs = _PairSet(ord_)

    def absorb(terms):
        r = _nf_terms(terms, basis_terms, index, lcinvs, ord_, p)
        if not r:
            return
        lead = max(r)
        inv = pow(r[lead], p - 2, p)
        basis_terms.append([(k, c * inv % p) for k, c in r.items()])
        index.append(lead)
        lcinvs.append(1)
        pairs.add_element(lead)

    for g in sorted(polys, key=lambda g: (g.degree(), g.lead_key())):
        absorb(g.terms)
    while (pr := pairs.pop()) is not None:
        i, j = pr
        li, lj = pairs.leads[i], pairs.leads[j]
        l = ord_.lcm(li, lj)
        qi, qj = ord_.quo(l, li), ord_.quo(l, lj)
        s: dict = {}
        for k, c in basis_terms[i]:
            kk = ord_.mul(qi, k)
            s[kk] = s.get(kk, 0) + c
        for k, c in basis_terms[j]:
            kk = ord_.mul(qj, k)
            s[kk] = s.get(kk, 0) - c
        absorb(s)
    return [Poly(ring, dict(t)) for t in basis_terms]


def _first_nonzero(v, i: int) -> int:
    n = v.shape[0]
    step = 1024
    while i < n:
        j = min(i + step, n)
        chunk = v[i:j]
        if chunk.any():
            return i + int((chunk != 0).argmax())
        i = j
    return -1


class _VecEngine:
    """Buchberger for homogeneous input: per-degree dense int64 reduction."""

    def __init__(self, ring, polys):
        self.ring = ring
        self.p = ring.p
        self.ord = ring.ord
        active = set()
        for g in polys:
            for key in g.terms:
                for i, e in enumerate(ring.ord.unpack(key)):
                    if e:
                        active.add(i)
        self.active = sorted(active)
        self.tables: dict = {}
        self.terms: list = []  # list of [(key, coeff)] per basis element, monic
        self.index = _DivisorIndex(self.ord)
        self.pairs = _PairSet(self.ord)
        self._rcache: dict = {}

    def _table(self, deg: int):
        tab = self.tables.get(deg)
        if tab is None:
            pack = self.ord.pack_combo
            keys = sorted(
                (pack(c) for c in combinations_with_replacement(self.active, deg)),
                reverse=True,
            )
            tab = (keys, {k: i for i, k in enumerate(keys)})
            self.tables[deg] = tab
        return tab

    def _reducer(self, gi: int, m: int, deg: int):
        q = self.ord.quo(m, self.index.leads[gi])
        ck = (gi, q)
        rc = self._rcache.get(ck)
        if rc is None:
            mul = self.ord.mul
            pos = self._table(deg)[1]
            terms = self.terms[gi]
            idxs = np.empty(len(terms), np.intp)
            coefs = np.empty(len(terms), np.int64)
            for t, (k, c) in enumerate(terms):
                idxs[t] = pos[mul(q, k)]
                coefs[t] = c
            rc = (idxs, coefs)
            self._rcache[ck] = rc
        return rc

    def _reduce_vec(self, v, deg: int, start: int = 0):
        """In-place reduction; returns remainder terms in descending order."""
        keys = self._table(deg)[0]
        p = self.p
        find = self.index.find
        i = start
        while True:
            i = _first_nonzero(v, i)
            if i < 0:
                break
            c = int(v[i]) % p
            if c == 0:
                v[i] = 0
                i += 1
                continue
            gi = find(keys[i])
            if gi is None:
                v[i] = c
                i += 1
                continue
            idxs, coefs = self._reducer(gi, keys[i], deg)
            v[idxs] -= c * coefs
            v[i] = 0
            i += 1
        nz = np.nonzero(v)[0]
        return [(keys[j], int(v[j])) for j in nz]

    def _append(self, items):
        lead, lc = items[0]
        p = self.p
        inv = pow(lc, p - 2, p)
        self.terms.append([(k, c * inv % p) for k, c in items])
        self.index.append(lead)
        self.pairs.add_element(lead)

    def add_input(self, g: Poly):
        deg = g.degree()
        keys, pos = self._table(deg)
        v = np.zeros(len(keys), np.int64)
        for k, c in g.terms.items():
            v[pos[k]] += c
        r = self._reduce_vec(v, deg)
        if r:
            self._append(r)

    def run(self):
        ord_ = self.ord
        while (pr := self.pairs.pop()) is not None:
            i, j = pr
            li, lj = self.index.leads[i], self.index.leads[j]
            l = ord_.lcm(li, lj)
            deg = ord_.degree(l)
            keys, pos = self._table(deg)
            ia, ca = self._reducer(i, l, deg)
            ib, cb = self._reducer(j, l, deg)
            v = np.zeros(len(keys), np.int64)
            v[ia] += ca
            v[ib] -= cb
            r = self._reduce_vec(v, deg, pos[l])
            if r:
                self._append(r)
        return [Poly(self.ring, dict(t)) for t in self.terms]


def _linear_data(g: Poly):
    """(coeff_by_var, const) of a polynomial of degree <= 1."""
    coeffs = {}
    const = 0
    for key, c in g.terms.items():
        exps = g.ring.ord.unpack(key)
        deg = sum(exps)
        if deg == 0:
            const = c
        else:
            coeffs[exps.index(1)] = c
    return coeffs, const


def _interreduce(polys):
    """Reduced basis from a Groebner basis: minimal leads, reduced tails."""
    polys = sorted((g for g in polys if g.terms), key=lambda g: g.lead_key())
    if not polys:
        return []
    ring = polys[0].ring
    ord_, p = ring.ord, ring.p
    kept = []
    for g in polys:
        lk = g.lead_key()
        if any(ord_.divides(h.lead_key(), lk) for h in kept):
            continue
        kept.append(g.monic())
    index = _DivisorIndex(ord_, [g.lead_key() for g in kept])
    lcinvs = [1] * len(kept)
    while True:
        changed = False
        terms_list = [list(g.terms.items()) for g in kept]
        for i, g in enumerate(kept):
            lk = g.lead_key()
            tail = {k: c for k, c in g.terms.items() if k != lk}
            red = _nf_terms(tail, terms_list, index, lcinvs, ord_, p)
            red[lk] = 1
            if red != g.terms:
                kept[i] = Poly(ring, red)
                changed = True
        if not changed:
            return kept


class GroebnerBasis:
    """Reduced Groebner basis: monic generators sorted by ascending lead."""

    __slots__ = ("ring", "gens")

    def __init__(self, ring: PolyRing, gens):
        self.ring = ring
        self.gens = tuple(gens)

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __getitem__(self, i):
        return self.gens[i]

    def normal_form(self, f: Poly) -> Poly:
        return normal_form(f, self.gens)

    def contains(self, f: Poly) -> bool:
        return normal_form(f, self.gens).is_zero()

    def lead_exponents(self):
        return [g.lead_exponents() for g in self.gens]

    def __repr__(self):
        return f"GroebnerBasis({len(self.gens)} generators over {self.ring!r})"


def buchberger(gens, ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by gens.

    Deterministic: equal input ideals (over the same ring and order) produce
    identical output, and reduced bases are unique, so any correct engine
    must agree.
    """
    polys = [g for g in gens if g is not None and not g.is_zero()]
    if ring is None:
        if not polys:
            raise ValueError("cannot infer the ring from an empty generator list")
        ring = polys[0].ring
    if any(g.ring is not ring for g in polys):
        raise ValueError("generators live in different rings")
    p, ord_ = ring.p, ring.ord

    rows: list = []
    pending = polys
    lin_polys: list = []
    while True:
        lin_new = [g for g in pending if g.degree() <= 1]
        others = [g for g in pending if g.degree() > 1]
        if not lin_new:
            pending = others
            break
        for g in lin_new:
            coeffs, const = _linear_data(g)
            rows.append([coeffs.get(i, 0) for i in range(ring.nvars)] + [const])
        # leftmost column = largest variable under both supported orders
        rows, pivots = rref(rows, ring.nvars + 1, p)
        if pivots and pivots[-1] == ring.nvars:
            return GroebnerBasis(ring, [ring.one()])
        lin_polys = [ring.linear_form(r[:-1], r[-1]) for r in rows]
        pending = []
        for g in others:
            r = normal_form(g, lin_polys)
            if not r.is_zero():
                pending.append(r)

    if pending:
        if all(g.is_homogeneous() for g in pending):
            eng = _VecEngine(ring, pending)
            for g in sorted(pending, key=lambda g: (g.degree(), g.lead_key())):
                eng.add_input(g)
            core = eng.run()
        else:
            core = _buchberger_dict(pending)
    else:
        core = []

    reduced = _interreduce(lin_polys + core)
    return GroebnerBasis(ring, sorted(reduced, key=lambda g: g.lead_key()))
