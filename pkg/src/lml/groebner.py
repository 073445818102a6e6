"""Buchberger's algorithm and the ideal operations built on it.

The engine works over a field (the rationals or a prime field).  Pairs are
processed by the sugar strategy and pruned with the Gebauer-Moeller
installation of the coprime and chain criteria.  Every reduction step is
charged against a budget so that hard instances fail loudly with
:class:`BudgetExceeded` instead of running forever.
"""

from __future__ import annotations

import bisect
import threading
from dataclasses import dataclass
from operator import add, sub
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .ring_core import (
    MonomialOrder,
    Polynomial,
    PolyRing,
    RingMismatch,
    block_order,
)

DEFAULT_BUDGET = 10 ** 6
_default_budget = [DEFAULT_BUDGET]


def set_default_budget(steps: int) -> None:
    if steps <= 0:
        raise ValueError("budget must be positive")
    _default_budget[0] = int(steps)


def get_default_budget() -> int:
    return _default_budget[0]


class BudgetExceeded(RuntimeError):
    def __init__(self, limit: int):
        super().__init__(f"reduction budget of {limit} steps exceeded")
        self.limit = limit


class Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: Optional[int] = None):
        self.limit = limit if limit is not None else _default_budget[0]
        self.used = 0

    def charge(self, k: int = 1) -> None:
        self.used += k
        if self.used > self.limit:
            raise BudgetExceeded(self.limit)


def _as_budget(budget) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)


# ---------------------------------------------------------------------------
# low level: polynomials as dicts {monomial: coefficient}


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Reducer:
    """A set of monic polynomials used as divisors, kept sorted by leading
    monomial (smallest first) so that the first divisor found is the one
    with the smallest leading monomial."""

    def __init__(self, key, p: int):
        self.key = key
        self.p = p
        self.keys: List[tuple] = []
        self.items: List[Tuple[tuple, Dict]] = []

    def insert(self, lm, d):
        k = self.key(lm)
        pos = bisect.bisect_left(self.keys, k)
        self.keys.insert(pos, k)
        self.items.insert(pos, (lm, d))

    def remove(self, lm):
        k = self.key(lm)
        pos = bisect.bisect_left(self.keys, k)
        while self.items[pos][0] != lm:
            pos += 1
        del self.keys[pos]
        del self.items[pos]

    def find(self, m):
        for lm, d in self.items:
            if _divides(lm, m):
                return lm, d
        return None

    def reduce(self, f: Dict, budget: Budget, full: bool = True) -> Dict:
        """Return the remainder of ``f`` (consumed) modulo the divisors."""
        key = self.key
        p = self.p
        rem: Dict = {}
        items = self.items
        while f:
            m = max(f, key=key)
            c = f.pop(m)
            hit = None
            for lm, d in items:
                if _divides(lm, m):
                    hit = d
                    hlm = lm
                    q = tuple(map(sub, m, lm))
                    break
            if hit is None:
                rem[m] = c
                if not full:
                    rem.update(f)
                    return rem
                continue
            budget.charge()
            for m2, c2 in hit.items():
                if m2 == hlm:
                    continue
                mm = tuple(map(add, m2, q))
                v = f.get(mm)
                if v is None:
                    v = -c * c2
                else:
                    v = v - c * c2
                if p:
                    v %= p
                if v:
                    f[mm] = v
                else:
                    f.pop(mm, None)
        return rem


def _monic(d: Dict, lm, p: int) -> Dict:
    c = d[lm]
    if c == 1:
        return d
    if p:
        inv = pow(c, -1, p)
        return {m: v * inv % p for m, v in d.items()}
    inv = 1 / c
    return {m: v * inv for m, v in d.items()}


def _spoly(lm1, d1, lm2, d2, p: int) -> Dict:
    L = _lcm(lm1, lm2)
    q1 = tuple(map(sub, L, lm1))
    q2 = tuple(map(sub, L, lm2))
    out: Dict = {}
    for m, c in d1.items():
        if m != lm1:
            out[tuple(map(add, m, q1))] = c
    for m, c in d2.items():
        if m == lm2:
            continue
        mm = tuple(map(add, m, q2))
        v = out.get(mm, 0) - c
        if p:
            v %= p
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def _buchberger(polys: List[Dict], ring: PolyRing, budget: Budget) -> List[Tuple[tuple, Dict]]:
    key = ring.key
    p = ring.coeff.p
    P: List[Tuple[tuple, Dict, int]] = []  # (lm, monic dict, sugar)
    G: List[int] = []
    pairs: List[Tuple[int, int]] = []
    pair_info: Dict[Tuple[int, int], Tuple[int, tuple]] = {}
    red = _Reducer(key, p)

    def sugar_of(i, j, L):
        return max(P[i][2] + sum(L) - sum(P[i][0]), P[j][2] + sum(L) - sum(P[j][0]))

    def update(h: int):
        nonlocal pairs, G
        lmh = P[h][0]
        C = list(G)
        D: List[int] = []
        while C:
            g1 = C.pop(0)
            lm1 = P[g1][0]
            L1 = _lcm(lmh, lm1)
            if _coprime(lmh, lm1):
                D.append(g1)
                continue
            dominated = False
            for g2 in C + D:
                if _divides(_lcm(lmh, P[g2][0]), L1):
                    dominated = True
                    break
            if not dominated:
                D.append(g1)
        E = []
        for g in D:
            if not _coprime(lmh, P[g][0]):
                E.append((g, h))
        newpairs = []
        for (g1, g2) in pairs:
            L = pair_info[(g1, g2)][1]
            if (_divides(lmh, L) and _lcm(P[g1][0], lmh) != L and _lcm(lmh, P[g2][0]) != L):
                del pair_info[(g1, g2)]
                continue
            newpairs.append((g1, g2))
        for pr in E:
            L = _lcm(P[pr[0]][0], P[pr[1]][0])
            pair_info[pr] = (sugar_of(pr[0], pr[1], L), L)
            newpairs.append(pr)
        pairs = newpairs
        keep = []
        for g in G:
            if _divides(lmh, P[g][0]):
                red.remove(P[g][0])
            else:
                keep.append(g)
        G = keep + [h]
        red.insert(P[h][0], P[h][1])

    # inter-reduce the input a little: process generators by increasing LM
    start = []
    for d in polys:
        if d:
            start.append(d)
    start.sort(key=lambda d: (sum(max(d, key=key)), key(max(d, key=key))))
    for d in start:
        r = red.reduce(dict(d), budget)
        if not r:
            continue
        lm = max(r, key=key)
        r = _monic(r, lm, p)
        sug = max(sum(m) for m in d)
        P.append((lm, r, sug))
        update(len(P) - 1)

    while pairs:
        best = min(pairs, key=lambda pr: (pair_info[pr][0], key(pair_info[pr][1]), pr))
        pairs.remove(best)
        sug, L = pair_info.pop(best)
        i, j = best
        s = _spoly(P[i][0], P[i][1], P[j][0], P[j][1], p)
        budget.charge()
        r = red.reduce(s, budget)
        if not r:
            continue
        lm = max(r, key=key)
        r = _monic(r, lm, p)
        P.append((lm, r, sug))
        update(len(P) - 1)

    # reduced basis
    lms = [P[g][0] for g in G]
    minimal = []
    for g in G:
        lm = P[g][0]
        if any(_divides(o, lm) and o != lm for o in lms):
            continue
        minimal.append(g)
    final = _Reducer(key, p)
    for g in minimal:
        final.insert(P[g][0], P[g][1])
    out = []
    for g in minimal:
        lm, d, _ = P[g]
        final.remove(lm)
        tail = {m: c for m, c in d.items() if m != lm}
        tail = final.reduce(tail, budget)
        tail[lm] = 1 if p else d[lm]
        final.insert(lm, tail)
        out.append((lm, tail))
    out.sort(key=lambda t: key(t[0]), reverse=True)
    return out


# ---------------------------------------------------------------------------
# public API


def _ordered_ring(ring: PolyRing, order: Optional[MonomialOrder]) -> PolyRing:
    if order is None or order == ring.order:
        return ring
    return ring.with_order(order)


class IdealHandle:
    """An ideal given by generators, with cached reduced Groebner bases."""

    def __init__(self, ring: PolyRing, gens: Iterable = ()):
        self.ring = ring
        out = []
        for g in gens:
            if isinstance(g, str):
                g = ring(g)
            elif not isinstance(g, Polynomial):
                g = ring.const(g)
            elif g.ring != ring:
                g = g.to_ring(ring)
            if not g.is_zero():
                out.append(g)
        self.gens: Tuple[Polynomial, ...] = tuple(out)
        self._cache: Dict[MonomialOrder, Tuple[Polynomial, ...]] = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"IdealHandle({self.ring!r}, {[str(g) for g in self.gens]})"

    def basis(self, order: Optional[MonomialOrder] = None, budget=None) -> Tuple[Polynomial, ...]:
        order = order or self.ring.order
        cached = self._cache.get(order)
        if cached is not None:
            return cached
        R = _ordered_ring(self.ring, order)
        polys = [g.to_ring(R)._d for g in self.gens]
        raw = _buchberger(polys, R, _as_budget(budget))
        result = tuple(Polynomial(R, d) for _, d in raw)
        with self._lock:
            self._cache.setdefault(order, result)
        return self._cache[order]

    def normal_form(self, f: Polynomial, order: Optional[MonomialOrder] = None, budget=None) -> Polynomial:
        if isinstance(f, str):
            f = self.ring(f)
        if f.ring.variables != self.ring.variables or f.ring.coeff != self.ring.coeff:
            f = f.to_ring(self.ring)
        G = self.basis(order, budget)
        R = _ordered_ring(self.ring, order or self.ring.order)
        red = _Reducer(R.key, R.coeff.p)
        for g in G:
            red.insert(g.lm, g._d)
        r = red.reduce(dict(f.to_ring(R)._d), _as_budget(budget))
        return Polynomial(R, r).to_ring(self.ring)

    def contains(self, f, budget=None) -> bool:
        return self.normal_form(f, budget=budget).is_zero()

    __contains__ = contains

    def is_unit_ideal(self, budget=None) -> bool:
        G = self.basis(budget=budget)
        return len(G) == 1 and G[0].total_degree() == 0

    def with_ring(self, ring: PolyRing) -> "IdealHandle":
        return IdealHandle(ring, [g.to_ring(ring) for g in self.gens])

    def to_json(self) -> dict:
        return {"ring": self.ring.to_json(), "gens": [str(g) for g in self.gens]}


def groebner_basis(I: IdealHandle, order: Optional[MonomialOrder] = None, budget=None) -> Tuple[Polynomial, ...]:
    return I.basis(order, budget)


def normal_form(f: Polynomial, I: IdealHandle, order: Optional[MonomialOrder] = None, budget=None) -> Polynomial:
    return I.normal_form(f, order, budget)


def satisfies_buchberger_criterion(G: Sequence[Polynomial], budget=None) -> bool:
    """Every S-polynomial of ``G`` reduces to zero modulo ``G``."""
    if not G:
        return True
    R = G[0].ring
    p = R.coeff.p
    red = _Reducer(R.key, p)
    mon = []
    for g in G:
        lm = g.lm
        d = _monic(dict(g._d), lm, p)
        red.insert(lm, d)
        mon.append((lm, d))
    b = _as_budget(budget)
    for i in range(len(mon)):
        for j in range(i + 1, len(mon)):
            s = _spoly(*mon[i], *mon[j], p)
            if red.reduce(s, b):
                return False
    return True


# ---------------------------------------------------------------------------
# ideal operations


def member(I: IdealHandle, f, budget=None) -> bool:
    return I.contains(f, budget)


def ideal_sum(I: IdealHandle, J) -> IdealHandle:
    extra = J.gens if isinstance(J, IdealHandle) else J
    return IdealHandle(I.ring, list(I.gens) + [g.to_ring(I.ring) if isinstance(g, Polynomial) else g for g in extra])


def ideal_equal(I: IdealHandle, J: IdealHandle, budget=None) -> bool:
    if I.ring.variables != J.ring.variables or I.ring.coeff != J.ring.coeff:
        raise RingMismatch("ideals live in different rings")
    if J.ring != I.ring:
        J = J.with_ring(I.ring)
    return [g._d for g in I.basis(budget=budget)] == [g._d for g in J.basis(budget=budget)]


def eliminate(I: IdealHandle, variables: Sequence[str], budget=None) -> IdealHandle:
    """``I`` intersected with the subring on the variables not listed."""
    R = I.ring
    elim = [R.index(v) for v in variables]
    rest = [i for i in range(R.nvars) if i not in elim]
    if not elim:
        return IdealHandle(R, I.gens)
    order = block_order([elim, rest]) if rest else block_order([elim])
    G = I.basis(order, budget)
    sub_ring = PolyRing([R.variables[i] for i in rest], R.coeff)
    kept = [g for g in G if all(g.lm[i] == 0 for i in elim)]
    # in a block order any element whose leading monomial avoids the first
    # block lies entirely in the subring
    return IdealHandle(sub_ring, [g.to_ring(sub_ring) for g in kept])


def exact_divide(g: Polynomial, f: Polynomial) -> Polynomial:
    """The quotient ``g / f``; raises ValueError when ``f`` does not divide ``g``."""
    R = g.ring
    p = R.coeff.p
    key = R.key
    lmf = f.lm
    inv = R.coeff.inv(f._d[lmf])
    rem = dict(g._d)
    q: Dict = {}
    while rem:
        m = max(rem, key=key)
        if not _divides(lmf, m):
            raise ValueError("division is not exact")
        c = rem[m] * inv
        if p:
            c %= p
        s = tuple(map(sub, m, lmf))
        q[s] = c
        for m2, c2 in f._d.items():
            mm = tuple(map(add, m2, s))
            v = rem.get(mm, 0) - c * c2
            if p:
                v %= p
            if v:
                rem[mm] = v
            else:
                rem.pop(mm, None)
    return Polynomial(R, q)


def intersect(I: IdealHandle, J: IdealHandle, budget=None) -> IdealHandle:
    R = I.ring
    w = R.fresh_name("w")
    Rw = PolyRing((w,) + R.variables, R.coeff)
    W = Rw.gen(w)
    gens = [W * g.to_ring(Rw) for g in I.gens] + [(1 - W) * g.to_ring(Rw) for g in J.gens]
    K = eliminate(IdealHandle(Rw, gens), [w], budget)
    return IdealHandle(R, [g.to_ring(R) for g in K.gens])


def colon(I: IdealHandle, f: Polynomial, budget=None) -> IdealHandle:
    """The ideal quotient ``I : f``."""
    if isinstance(f, str):
        f = I.ring(f)
    if f.is_zero():
        return IdealHandle(I.ring, [I.ring.one()])
    K = intersect(I, IdealHandle(I.ring, [f]), budget)
    return IdealHandle(I.ring, [exact_divide(g, f) for g in K.basis(budget=budget)])


def saturate(I: IdealHandle, f: Polynomial, budget=None) -> IdealHandle:
    """``I : f^infinity`` computed as a stabilizing chain of colons."""
    b = _as_budget(budget)
    J = I
    while True:
        K = colon(J, f, b)
        if ideal_equal(K, J, b):
            return J
        J = K


def ideal_ops(op: str, *args, budget=None):
    """Dispatch ``op`` in {member, colon, saturate, sum, equal, eliminate}."""
    table = {
        "member": member,
        "colon": colon,
        "saturate": saturate,
        "equal": ideal_equal,
        "eliminate": eliminate,
    }
    if op == "sum":
        return ideal_sum(*args)
    if op not in table:
        raise ValueError(f"unknown ideal operation {op!r}")
    return table[op](*args, budget=budget)


def invert_element(I: IdealHandle, f: Polynomial, name: str = "s") -> IdealHandle:
    """Adjoin a fresh variable ``s`` together with the relation ``s*f - 1``."""
    R = I.ring
    s = R.fresh_name(name)
    R2 = R.extend([s])
    S = R2.gen(s)
    return IdealHandle(R2, [g.to_ring(R2) for g in I.gens] + [S * f.to_ring(R2) - 1])


# ---------------------------------------------------------------------------
# ring homomorphisms


@dataclass(frozen=True)
class RingHom:
    source: PolyRing
    target: PolyRing
    images: Tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.images) != self.source.nvars:
            raise ValueError("one image per source variable is required")
        for img in self.images:
            if img.ring.variables != self.target.variables:
                raise RingMismatch("image outside the target ring")

    @classmethod
    def from_mapping(cls, source: PolyRing, target: PolyRing, mapping: Mapping[str, object]) -> "RingHom":
        imgs = []
        for v in source.variables:
            if v in mapping:
                img = mapping[v]
                if isinstance(img, str):
                    img = target(img)
                elif not isinstance(img, Polynomial):
                    img = target.const(img)
                imgs.append(img.to_ring(target))
            elif target.has(v):
                imgs.append(target.gen(v))
            else:
                raise ValueError(f"no image given for {v!r}")
        return cls(source, target, tuple(imgs))

    def __call__(self, f: Polynomial) -> Polynomial:
        if f.ring.variables != self.source.variables:
            f = f.to_ring(self.source)
        return f.substitute(dict(zip(self.source.variables, self.images)), self.target)

    def compose(self, inner: "RingHom") -> "RingHom":
        """``self`` after ``inner``."""
        return RingHom(inner.source, self.target, tuple(self(img) for img in inner.images))


def hom_kernel(phi: RingHom, target_ideal: Optional[IdealHandle] = None, budget=None) -> IdealHandle:
    """Kernel of ``phi`` (into the quotient by ``target_ideal`` if given),
    by eliminating the target variables from the graph ideal."""
    src, tgt = phi.source, phi.target
    if src.coeff != tgt.coeff:
        raise RingMismatch("source and target need the same coefficient field")
    taken = set(src.variables)
    rename = {}
    for v in tgt.variables:
        new = v
        k = 0
        while new in taken:
            k += 1
            new = f"{v}_g{k}"
        rename[v] = new
        taken.add(new)
    names = [rename[v] for v in tgt.variables] + list(src.variables)
    nt = tgt.nvars
    prod = PolyRing(names, src.coeff, block_order([range(nt), range(nt, nt + src.nvars)]))
    moved = {v: prod.gen(rename[v]) for v in tgt.variables}

    def move(g: Polynomial) -> Polynomial:
        return g.substitute(moved, prod)

    gens = [prod.gen(v) - move(img) for v, img in zip(src.variables, phi.images)]
    if target_ideal is not None:
        gens += [move(g) for g in target_ideal.gens]
    K = eliminate(IdealHandle(prod, gens), [rename[v] for v in tgt.variables], budget)
    return IdealHandle(src, [g.to_ring(src) for g in K.gens])


def hom_check(phi: RingHom, source_ideal: IdealHandle, target_ideal: IdealHandle, budget=None) -> bool:
    """Whether ``phi`` descends to the quotient rings."""
    return all(target_ideal.contains(phi(g), budget) for g in source_ideal.gens)
