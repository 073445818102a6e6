"""Alcoves for GL_n and GSp_2n, and the extended affine Weyl group.

An alcove is a tuple of integer vectors ``x_0 <= x_1 <= ... <= x_{n-1} <= x_0 + 1``
whose coordinate sums increase by one at every step.  The group
``Z^n x| S_n`` acts on alcoves by ``(nu, sigma) . x_i = nu + sigma(x_i)``,
simply transitively, so every alcove ``x`` names a group element ``w_x``.

Permutations are tuples ``sigma`` of ``0..n-1`` acting on vectors by moving
coordinate ``j`` to position ``sigma[j]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

Vector = Tuple[int, ...]


class AlcoveError(ValueError):
    def __init__(self, message: str, index: int | None = None):
        super().__init__(message if index is None else f"{message} (index {index})")
        self.index = index


def omega(n: int, i: int) -> Vector:
    """The base alcove vertex (1^(i), 0^(n-i))."""
    return tuple(1 if j < i else 0 for j in range(n))


def _add(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class Alcove:
    n: int
    rows: Tuple[Vector, ...]

    @property
    def size(self) -> int:
        return sum(self.rows[0])

    def vertex(self, i: int) -> Vector:
        """``x_i`` for any integer ``i``, using ``x_{i+n} = x_i + 1``."""
        q, r = divmod(i, self.n)
        return tuple(v + q for v in self.rows[r])

    def difference(self, i: int) -> Vector:
        """The difference vector ``t_i = x_i - omega_i`` (``t_{i+n} = t_i``)."""
        i %= self.n
        return _sub(self.rows[i], omega(self.n, i))

    def differences(self) -> Tuple[Vector, ...]:
        return tuple(self.difference(i) for i in range(self.n))

    def is_minuscule(self) -> bool:
        return all(set(t) <= {0, 1} for t in self.differences())

    def to_json(self) -> List[List[int]]:
        return [list(r) for r in self.rows]


def alcove_validate(rows: Sequence[Sequence[int]]) -> Alcove:
    """Build an :class:`Alcove`, raising :class:`AlcoveError` on a failed axiom."""
    rows = tuple(tuple(int(v) for v in r) for r in rows)
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise AlcoveError("an alcove for GL_n consists of n vectors of length n")
    chain = list(rows) + [tuple(v + 1 for v in rows[0])]
    for i in range(n):
        a, b = chain[i], chain[i + 1]
        if any(x > y for x, y in zip(a, b)):
            raise AlcoveError("chain condition x_i <= x_{i+1} fails", i)
        if sum(b) != sum(a) + 1:
            raise AlcoveError("size condition sum x_{i+1} = sum x_i + 1 fails", i)
    return Alcove(n, rows)


def base_alcove(n: int) -> Alcove:
    return Alcove(n, tuple(omega(n, i) for i in range(n)))


def alcove_from_differences(diffs: Sequence[Sequence[int]]) -> Alcove:
    n = len(diffs)
    return alcove_validate([_add(diffs[i], omega(n, i)) for i in range(n)])


# ---------------------------------------------------------------------------
# the extended affine Weyl group


@dataclass(frozen=True)
class WeylElement:
    nu: Vector
    sigma: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.sigma) != list(range(len(self.sigma))) or len(self.nu) != len(self.sigma):
            raise ValueError("sigma must be a permutation of 0..n-1 matching nu")

    @property
    def n(self) -> int:
        return len(self.nu)

    @property
    def component(self) -> int:
        """Image in Omega = Z (the sum of the translation part)."""
        return sum(self.nu)

    def to_json(self) -> dict:
        return {"nu": list(self.nu), "sigma": list(self.sigma)}


def identity(n: int) -> WeylElement:
    return WeylElement((0,) * n, tuple(range(n)))


def translation(nu: Sequence[int]) -> WeylElement:
    return WeylElement(tuple(nu), tuple(range(len(nu))))


def permute(sigma: Sequence[int], v: Sequence[int]) -> Vector:
    out = [0] * len(v)
    for j, x in enumerate(v):
        out[sigma[j]] = x
    return tuple(out)


def multiply(a: WeylElement, b: WeylElement) -> WeylElement:
    return WeylElement(_add(a.nu, permute(a.sigma, b.nu)),
                       tuple(a.sigma[b.sigma[j]] for j in range(a.n)))


def invert(a: WeylElement) -> WeylElement:
    inv = [0] * a.n
    for j, s in enumerate(a.sigma):
        inv[s] = j
    inv = tuple(inv)
    return WeylElement(tuple(-x for x in permute(inv, a.nu)), inv)


def act(w: WeylElement, v: Sequence[int]) -> Vector:
    return _add(w.nu, permute(w.sigma, v))


def act_on_alcove(w: WeylElement, x: Alcove) -> Alcove:
    return Alcove(x.n, tuple(act(w, r) for r in x.rows))


def alcove_to_weyl(x: Alcove) -> WeylElement:
    """The unique ``w`` with ``w . omega = x``."""
    n = x.n
    sigma = [0] * n
    for i in range(1, n + 1):
        step = _sub(x.vertex(i), x.vertex(i - 1))
        sigma[i - 1] = step.index(1)
    return WeylElement(x.rows[0], tuple(sigma))


def weyl_to_alcove(w: WeylElement) -> Alcove:
    return act_on_alcove(w, base_alcove(w.n))


def _barycenter_sums(x: Alcove) -> Vector:
    return tuple(sum(r[j] for r in x.rows) for j in range(x.n))


def length(w: WeylElement) -> int:
    """Number of affine root hyperplanes ``x_a - x_b = k`` separating the base
    alcove from ``w . omega``, counted at the barycenters."""
    n = w.n
    b0 = _barycenter_sums(base_alcove(n))
    b1 = _barycenter_sums(weyl_to_alcove(w))
    total = 0
    for a in range(n):
        for b in range(a + 1, n):
            total += abs((b0[a] - b0[b]) // n - (b1[a] - b1[b]) // n)
    return total


def simple_reflection(n: int, k: int) -> WeylElement:
    """``s_k`` for ``k = 1..n-1`` swaps coordinates ``k-1, k``; ``s_0`` is the
    affine reflection ``t_(1,0,..,0,-1) (1 n)``."""
    if not 0 <= k < n:
        raise ValueError("simple reflection index out of range")
    sigma = list(range(n))
    if k == 0:
        sigma[0], sigma[n - 1] = n - 1, 0
        nu = [0] * n
        nu[0], nu[n - 1] = 1, -1
        return WeylElement(tuple(nu), tuple(sigma))
    sigma[k - 1], sigma[k] = k, k - 1
    return WeylElement((0,) * n, tuple(sigma))


def rotation(n: int) -> WeylElement:
    """The length-zero generator of Omega (sending ``omega_i`` to ``omega_{i+1}``)."""
    return alcove_to_weyl(Alcove(n, tuple(omega(n, i + 1) for i in range(n))))


def power(w: WeylElement, k: int) -> WeylElement:
    base = w if k >= 0 else invert(w)
    out = identity(w.n)
    for _ in range(abs(k)):
        out = multiply(out, base)
    return out


def reduced_word(w: WeylElement) -> Tuple[List[int], int]:
    """Greedy right descents.  Returns ``(word, k)`` with
    ``w = rotation^k * s_word[0] * ... * s_word[-1]``."""
    n = w.n
    peeled: List[int] = []
    cur = w
    ell = length(cur)
    while ell > 0:
        for k in range(n):
            nxt = multiply(cur, simple_reflection(n, k))
            l2 = length(nxt)
            if l2 < ell:
                peeled.append(k)
                cur, ell = nxt, l2
                break
        else:  # pragma: no cover - impossible for a Coxeter system
            raise RuntimeError("no descent found")
    return list(reversed(peeled)), cur.component


def weyl_ops(op: str, *args):
    """Dispatch ``op`` in {act_on_alcove, alcove_to_weyl, multiply, invert, length, reduced_word}."""
    table = {
        "act_on_alcove": act_on_alcove,
        "alcove_to_weyl": alcove_to_weyl,
        "multiply": multiply,
        "invert": invert,
        "length": length,
        "reduced_word": reduced_word,
    }
    if op not in table:
        raise ValueError(f"unknown Weyl group operation {op!r}")
    return table[op](*args)


# ---------------------------------------------------------------------------
# Bruhat order and admissible sets


@lru_cache(maxsize=None)
def _length_cached(w: WeylElement) -> int:
    return length(w)


@lru_cache(maxsize=None)
def _right_descent(w: WeylElement):
    ell = _length_cached(w)
    for k in range(w.n):
        ws = multiply(w, simple_reflection(w.n, k))
        if _length_cached(ws) < ell:
            return k, ws
    return None


@lru_cache(maxsize=None)
def bruhat_leq(u: WeylElement, v: WeylElement) -> bool:
    """Bruhat order; elements of different Omega-components are incomparable."""
    if u.n != v.n or u.component != v.component:
        return False
    lu, lv = _length_cached(u), _length_cached(v)
    if lu > lv:
        return False
    if lv == 0:
        return u == v
    k, vs = _right_descent(v)
    us = multiply(u, simple_reflection(u.n, k))
    smaller = us if _length_cached(us) < lu else u
    return bruhat_leq(smaller, vs)


@lru_cache(maxsize=None)
def lower_set(v: WeylElement) -> FrozenSet[WeylElement]:
    """All ``u <= v``."""
    d = _right_descent(v)
    if d is None:
        return frozenset([v])
    k, vs = d
    s = simple_reflection(v.n, k)
    below = lower_set(vs)
    return below | frozenset(multiply(u, s) for u in below)


def mu(n: int, r: int) -> Vector:
    return omega(n, r)


def admissible_set(n: int, r: int) -> FrozenSet[WeylElement]:
    if not 0 <= r <= n:
        raise ValueError("need 0 <= r <= n")
    out: set = set()
    for lam in set(itertools.permutations(mu(n, r))):
        out |= lower_set(translation(lam))
    return frozenset(out)


# ---------------------------------------------------------------------------
# enumeration


def enumerate_minuscule(n: int, r: int) -> List[Alcove]:
    """All minuscule alcoves of size ``r``, in a deterministic order."""
    if not 0 <= r <= n:
        raise ValueError("need 0 <= r <= n")
    found = set()
    for ones in itertools.combinations(range(n), r):
        x0 = tuple(1 if j in ones else 0 for j in range(n))
        for sigma in itertools.permutations(range(n)):
            rows = [x0]
            ok = True
            for i in range(1, n):
                nxt = list(rows[-1])
                nxt[sigma[i - 1]] += 1
                t = _sub(nxt, omega(n, i))
                if min(t) < 0 or max(t) > 1:
                    ok = False
                    break
                rows.append(tuple(nxt))
            if ok:
                found.add(tuple(rows))
    return [Alcove(n, rows) for rows in sorted(found)]


def extreme_alcoves(n: int, r: int) -> List[Alcove]:
    return [x for x in enumerate_minuscule(n, r) if len(set(x.differences())) == 1]


def worst_alcove(n: int, r: int) -> Alcove:
    """The alcove tau with ``t_k(j) = 1`` iff ``(j - k) mod n < r``."""
    return alcove_from_differences([tuple(1 if (j - k) % n < r else 0 for j in range(n))
                                    for k in range(n)])


def rotate_alcove(x: Alcove) -> Alcove:
    """Shift the cyclic index by one: ``t'_k(j) = t_{k-1}(j-1)``."""
    n = x.n
    diffs = []
    for k in range(n):
        prev = x.difference(k - 1)
        diffs.append(tuple(prev[(j - 1) % n] for j in range(n)))
    return alcove_from_differences(diffs)


# ---------------------------------------------------------------------------
# G-alcoves for GSp_2n


def theta(v: Sequence[int]) -> Vector:
    return tuple(-x for x in reversed(v))


def g_alcove_offset(x: Alcove, convention: str = "chain") -> int | None:
    """Return ``d`` when ``x`` is a G-alcove, else None.

    With ``convention="chain"`` the duality pairs ``x_{2n-i}`` with ``x_i``
    (indices taken in the periodic chain ``x_{i+2n} = x_i + 1``).  The
    ``"literal"`` convention pairs ``x_{2n-1-i}`` with ``x_i``.
    """
    m = x.n
    if m % 2:
        return None
    shift = 0 if convention == "chain" else 1
    if convention not in ("chain", "literal"):
        raise ValueError(f"unknown convention {convention!r}")
    pairs = [(m - shift - i, i) for i in range(m)]
    a, b = pairs[0]
    total = sum(x.vertex(a)) + sum(x.vertex(b))
    if total % m:
        return None
    d = total // m
    for a, b in pairs:
        if x.vertex(a) != tuple(d + v for v in theta(x.vertex(b))):
            return None
    return d


def is_g_alcove(x: Alcove, convention: str = "chain") -> bool:
    return g_alcove_offset(x, convention) is not None


def enumerate_g_minuscule(n: int, convention: str = "chain") -> List[Alcove]:
    """Minuscule size-n GL_2n alcoves satisfying the GSp duality."""
    return [x for x in enumerate_minuscule(2 * n, n) if is_g_alcove(x, convention)]


def g_alcove_ops(op: str, *args, **kw):
    if op == "is_G_alcove":
        return is_g_alcove(*args, **kw)
    if op == "enumerate_G_minuscule":
        return enumerate_g_minuscule(*args, **kw)
    raise ValueError(f"unknown G-alcove operation {op!r}")


def permissible_elements(n: int, r: int) -> FrozenSet[WeylElement]:
    return frozenset(alcove_to_weyl(x) for x in enumerate_minuscule(n, r))


def expected_extreme_count(n: int, r: int) -> int:
    return comb(n, r)
