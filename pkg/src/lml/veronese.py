"""Veronese combinatorics: sorted strings, sorted binomials, and the
normalization of the first pro-p component.

An index ``c`` is a vector of naturals of length ``n`` summing to ``g``.  Its
string ``str(c)`` is the weakly increasing word over ``1..n`` containing the
symbol ``i+1`` exactly ``c[i]`` times.  Polynomial variables for indices are
named ``uc_<c_0>_<c_1>_...``.
"""

from __future__ import annotations

import itertools
from math import gcd
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from .charts import ChartPresentation, ModelParams, build_component, drinfeld_target
from .groebner import IdealHandle, RingHom, eliminate, hom_check, hom_kernel, ideal_equal
from .ring_core import QQ, PolyRing, Polynomial, RationalEchelon

Index = Tuple[int, ...]


def index_set(n: int, g: int) -> List[Index]:
    """All ``c`` with ``n`` nonnegative entries summing to ``g``, in descending lex order."""
    if n < 1 or g < 0:
        raise ValueError("need n >= 1 and g >= 0")
    out = []
    for cut in itertools.combinations(range(g + n - 1), n - 1):
        prev, c = -1, []
        for pos in cut:
            c.append(pos - prev - 1)
            prev = pos
        c.append(g + n - 2 - prev)
        out.append(tuple(c))
    return sorted(out, reverse=True)


def to_str(c: Sequence[int]) -> Tuple[int, ...]:
    return tuple(i + 1 for i, k in enumerate(c) for _ in range(k))


def from_str(s: Sequence[int], n: int) -> Index:
    c = [0] * n
    for z in s:
        c[z - 1] += 1
    return tuple(c)


def sort_pair(c1: Sequence[int], c2: Sequence[int]) -> Tuple[Index, Index]:
    n = len(c1)
    merged = sorted(to_str(c1) + to_str(c2))
    return from_str(merged[0::2], n), from_str(merged[1::2], n)


def _unsorted_pair(c1: Sequence[int], c2: Sequence[int]) -> Tuple[Index, Index]:
    """Negative control: the same split with the sorting step left out."""
    n = len(c1)
    merged = list(to_str(c1) + to_str(c2))
    return from_str(merged[0::2], n), from_str(merged[1::2], n)


def lemma_sort_check(n: int, g: int, sorter: Callable = sort_pair) -> bool:
    """``sorter(c1, c2) = sorter(c3, c4)`` iff ``c1 + c2 = c3 + c4``, sums are
    preserved, and ``sorter`` is idempotent, over all pairs of indices."""
    A = index_set(n, g)
    by_sum: Dict[Index, set] = {}
    by_sort: Dict[Tuple[Index, Index], set] = {}
    for c1, c2 in itertools.product(A, repeat=2):
        s = sorter(c1, c2)
        total = tuple(a + b for a, b in zip(c1, c2))
        if tuple(a + b for a, b in zip(*s)) != total:
            return False
        if sorter(*s) != s:
            return False
        by_sum.setdefault(total, set()).add(s)
        by_sort.setdefault(s, set()).add(total)
    return all(len(v) == 1 for v in by_sum.values()) and all(len(v) == 1 for v in by_sort.values())


def uc_name(c: Sequence[int]) -> str:
    return "uc_" + "_".join(str(k) for k in c)


def veronese_ring(n: int, g: int, extra: Sequence[str] = ()) -> PolyRing:
    return PolyRing([uc_name(c) for c in index_set(n, g)] + list(extra), QQ)


def _binomial_gens(ring: PolyRing, n: int, g: int, alternative: bool) -> List[Polynomial]:
    A = index_set(n, g)
    gens, seen = [], set()

    def add(c1, c2, c3, c4):
        if sorted((c1, c2)) == sorted((c3, c4)):
            return
        b = ring.gen(uc_name(c1)) * ring.gen(uc_name(c2)) - ring.gen(uc_name(c3)) * ring.gen(uc_name(c4))
        key = frozenset([tuple(sorted((c1, c2))), tuple(sorted((c3, c4)))])
        if key not in seen:
            seen.add(key)
            gens.append(b)

    pairs = list(itertools.combinations_with_replacement(A, 2))
    if alternative:
        for (c1, c2), (c3, c4) in itertools.combinations(pairs, 2):
            if all(a + b == c + d for a, b, c, d in zip(c1, c2, c3, c4)):
                add(c1, c2, c3, c4)
    else:
        for c1, c2 in pairs:
            add(c1, c2, *sort_pair(c1, c2))
    return gens


def sorted_binomials(n: int, g: int, alternative: bool = False, ring: PolyRing | None = None) -> IdealHandle:
    """The sorted-binomial ideal, or with ``alternative=True`` all binomials
    ``u_c1 u_c2 - u_c3 u_c4`` with ``c1 + c2 = c3 + c4``."""
    ring = ring or veronese_ring(n, g)
    return IdealHandle(ring, _binomial_gens(ring, n, g, alternative))


def monomial_map(n: int, g: int, source: PolyRing | None = None, extra: Sequence[str] = ()) -> RingHom:
    source = source or veronese_ring(n, g)
    target = PolyRing([f"u_{i}" for i in range(n)] + list(extra), QQ)
    images = {}
    for c in index_set(n, g):
        images[uc_name(c)] = target.monomial({f"u_{i}": k for i, k in enumerate(c)})
    return RingHom.from_mapping(source, target, images)


def veronese_kernel_oracle(n: int, g: int, budget=None) -> IdealHandle:
    return hom_kernel(monomial_map(n, g), budget=budget)


def normalization_presentation(n: int, p: int) -> ChartPresentation:
    g = gcd(p - 1, n - 1)
    h = (p - 1) // g
    ring = veronese_ring(n, g, ["t"])
    gens = _binomial_gens(ring, n, g, False)
    prod = ring.one()
    for i in range(n):
        prod = prod * ring.gen(uc_name(tuple(g if j == i else 0 for j in range(n))))
    gens.append(prod ** h - ring.gen("t"))
    return ChartPresentation("normalization", {"n": n, "r": 1, "p": p, "g": g, "h": h}, ring, tuple(gens))


def psi_map(n: int, p: int) -> Tuple[RingHom, ChartPresentation, ChartPresentation]:
    """``u_c -> u^c`` from the normalization presentation into
    ``Q[u, t] / ((u_0...u_{n-1})^(p-1) - t)``."""
    src = normalization_presentation(n, p)
    tgt = drinfeld_target(n, p)
    g = src.params["g"]
    images = {uc_name(c): tgt.ring.monomial({f"u_{i}": k for i, k in enumerate(c)}) for c in index_set(n, g)}
    return RingHom.from_mapping(src.ring, tgt.ring, images), src, tgt


def c1_xv_presentation(n: int, p: int) -> ChartPresentation:
    """The component ``C_1`` (``r = 1``) in coordinates ``x_i = beta_i`` and
    roots ``v_i`` with ``v_i^(p-1) = prod_{j != i} x_j``."""
    prm = ModelParams(n, 1, p)
    ring = PolyRing([f"x_{i}" for i in range(n)] + [f"v_{i}" for i in range(n)] + ["t"], QQ)
    x = [ring.gen(f"x_{i}") for i in range(n)]
    v = [ring.gen(f"v_{i}") for i in range(n)]
    X = ring.one()
    V = ring.one()
    for i in range(n):
        X = X * x[i]
        V = V * v[i]
    gens = [X - ring.gen("t")]
    for i in range(n):
        rest = ring.one()
        for j in range(n):
            if j != i:
                rest = rest * x[j]
        gens.append(v[i] ** (p - 1) - rest)
    gens.append(V ** prm.h - ring.gen("t") ** prm.m)
    return ChartPresentation("gl-component", {**prm.to_json(), "eps": "+1", "coords": "xv"}, ring, tuple(gens))


def xv_matches_chart(n: int, p: int, budget=None) -> bool:
    """Eliminating the dependent ``a``-variables from the chart ``C_1`` gives the
    ``x, v`` presentation (with ``a_i_1_1 -> x_i`` and ``u_i -> v_i``)."""
    chart = build_component(ModelParams(n, 1, p), 1)
    R = chart.ring
    dependent = [v for v in R.variables if v.startswith("a_") and v.split("_")[2] != "1"]
    elim = eliminate(chart.ideal(), dependent, budget)
    xv = c1_xv_presentation(n, p)
    rename = {f"a_{i}_1_1": xv.ring.gen(f"x_{i}") for i in range(n)}
    rename.update({f"u_{i}": xv.ring.gen(f"v_{i}") for i in range(n)})
    moved = IdealHandle(xv.ring, [g.substitute(rename, xv.ring) for g in elim.gens])
    return ideal_equal(moved, xv.ideal(), budget)


def f_map(n: int, p: int) -> Tuple[RingHom, ChartPresentation, ChartPresentation]:
    """``x_i -> u_i^(p-1)``, ``v_i -> prod_{j != i} u_j`` from ``C_1`` to the
    Drinfeld-shaped ring."""
    src = c1_xv_presentation(n, p)
    tgt = drinfeld_target(n, p)
    T = tgt.ring
    images = {}
    for i in range(n):
        images[f"x_{i}"] = T.gen(f"u_{i}") ** (p - 1)
        rest = T.one()
        for j in range(n):
            if j != i:
                rest = rest * T.gen(f"u_{j}")
        images[f"v_{i}"] = rest
    return RingHom.from_mapping(src.ring, T, images), src, tgt


# ---------------------------------------------------------------------------
# bounded-degree linear algebra


def _monomials(nvars: int, degree: int) -> Iterable[Tuple[int, ...]]:
    for cut in itertools.combinations(range(degree + nvars - 1), nvars - 1):
        prev, e = -1, []
        for pos in cut:
            e.append(pos - prev - 1)
            prev = pos
        e.append(degree + nvars - 2 - prev)
        yield tuple(e)


def veronese_span_check(n: int, g: int, D: int) -> Dict[str, int]:
    """Span all products of degree-``g`` monomials up to degree ``D`` and test
    every monomial of degree ``<= D`` against the divisibility rule."""
    A = index_set(n, g)
    span = RationalEchelon()
    layer = {tuple([0] * n)}
    span.add({tuple([0] * n): 1})
    for _ in range(D // g):
        layer = {tuple(a + b for a, b in zip(m, c)) for m in layer for c in A}
        for m in layer:
            span.add({m: 1})
    checked = mismatches = 0
    for d in range(D + 1):
        for m in _monomials(n, d):
            checked += 1
            if span.contains({m: 1}) != (d % g == 0):
                mismatches += 1
    return {"checked": checked, "mismatches": mismatches}


def kernel_pi_check(n: int, p: int, D: int, t_degree: int = 1) -> Dict[str, int]:
    """For ``G`` in ``Q[u, t]`` with ``u``-degree ``<= D - n(p-1)`` and ``t``-degree
    ``<= t_degree``: if ``((u_0...u_{n-1})^(p-1) - t) G`` lies in ``V[t]`` then
    so does ``G``.  Certified by showing every coordinate of ``G`` on a
    monomial outside ``V`` is a linear combination of the constraints."""
    g = gcd(p - 1, n - 1)
    top = D - n * (p - 1)
    if top < 0:
        return {"unknowns": 0, "constraints": 0, "unforced": 0}
    unknowns = [(e, b) for d in range(top + 1) for e in _monomials(n, d) for b in range(t_degree + 1)]
    U = tuple([p - 1] * n)
    # coefficient of the product at (E, B) as a linear form in the unknowns
    forms: Dict[Tuple[Tuple[int, ...], int], Dict] = {}
    for e, b in unknowns:
        for target, sign in (((tuple(a + c for a, c in zip(e, U)), b), 1), ((e, b + 1), -1)):
            form = forms.setdefault(target, {})
            form[(e, b)] = form.get((e, b), 0) + sign
    constraints = RationalEchelon()
    count = 0
    for (E, _), form in forms.items():
        if sum(E) % g:
            form = {k: v for k, v in form.items() if v}
            if form:
                constraints.add(form)
                count += 1
    unforced = sum(1 for e, b in unknowns if sum(e) % g and not constraints.contains({(e, b): 1}))
    return {"unknowns": len(unknowns), "constraints": count, "unforced": unforced}


def image_membership(n: int, p: int, D: int | None = None) -> bool:
    g = gcd(p - 1, n - 1)
    D = 2 * g * n if D is None else D
    a = veronese_span_check(n, g, D)
    b = kernel_pi_check(n, p, D)
    return a["mismatches"] == 0 and b["unforced"] == 0
