"""Explicit affine charts of local models, and their F_p points.

Variable names encode indices with underscores: ``a_i_j_k`` is the entry
``a^i_{jk}`` of the chart matrix ``M_i``, ``a_i_k`` is a variable of the
companion-matrix presentation, ``u_i``/``v_i`` are root variables and ``t``
stands for the prime ``p``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .alcoves import Alcove, worst_alcove
from .groebner import IdealHandle, RingHom, eliminate, exact_divide, ideal_equal
from .ring_core import (
    DEGREVLEX,
    GF,
    QQ,
    FpMatrix,
    Polynomial,
    PolyRing,
    block_order,
    fp_mul,
    fp_rank,
)


class ChartError(ValueError):
    pass


@dataclass(frozen=True)
class ModelParams:
    n: int
    r: int
    p: int = 3

    def __post_init__(self):
        if self.p < 3 or any(self.p % q == 0 for q in range(2, int(self.p ** 0.5) + 1)):
            raise ChartError("p must be an odd prime")
        if not 1 <= self.r <= self.n - 1:
            raise ChartError("need 1 <= r <= n-1")

    @property
    def g(self) -> int:
        return gcd(self.p - 1, self.n - self.r)

    @property
    def h(self) -> int:
        return (self.p - 1) // self.g

    @property
    def m(self) -> int:
        return (self.n - self.r) // self.g

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r, "p": self.p, "g": self.g, "h": self.h, "m": self.m}


@dataclass
class ChartPresentation:
    case: str
    params: dict
    ring: PolyRing
    gens: Tuple[Polynomial, ...]
    named: Dict[str, Polynomial] = field(default_factory=dict)
    _ideal: Optional[IdealHandle] = field(default=None, repr=False)

    def ideal(self) -> IdealHandle:
        if self._ideal is None:
            self._ideal = IdealHandle(self.ring, self.gens)
        return self._ideal

    def var(self, name: str) -> Polynomial:
        return self.ring.gen(name)

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "params": dict(self.params),
            "ring": self.ring.to_json(),
            "gens": [str(g) for g in self.gens],
            "named": {k: str(v) for k, v in self.named.items()},
        }


def _dedupe(gens) -> Tuple[Polynomial, ...]:
    out, seen = [], set()
    for g in gens:
        if g.is_zero():
            continue
        key = g.monic()
        if key in seen:
            continue
        seen.add(key)
        out.append(g)
    return tuple(out)


def _matmul(A, B, ring: PolyRing):
    rows, inner, cols = len(A), len(B), len(B[0])
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = ring.zero()
            for k in range(inner):
                if not A[i][k].is_zero() and not B[k][j].is_zero():
                    acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def _phi(size: int, pos: int, ring: PolyRing, t: Polynomial):
    return [[(t if a == pos else ring.one()) if a == b else ring.zero() for b in range(size)]
            for a in range(size)]


def _companion(first_row: Sequence[Polynomial], ring: PolyRing):
    r = len(first_row)
    A = [[ring.zero() for _ in range(r)] for _ in range(r)]
    for k in range(r - 1):
        A[k][k + 1] = ring.one()
    A[r - 1] = list(first_row)
    return A


def _chain_matrix(size: int, rank: int, i: int, entry, ring: PolyRing):
    """``size x rank`` matrix with the identity in rows ``i..i+rank-1`` and
    ``entry(j, k)`` (1-based) in row ``i+rank+j-1`` (rows mod size)."""
    M = [[ring.zero() for _ in range(rank)] for _ in range(size)]
    for k in range(rank):
        M[(i + k) % size][k] = ring.one()
    for j in range(1, size - rank + 1):
        row = (i + rank + j - 1) % size
        for k in range(1, rank + 1):
            M[row][k - 1] = entry(j, k)
    return M


# ---------------------------------------------------------------------------
# GL charts


def a_name(i: int, j: int, k: int) -> str:
    return f"a_{i}_{j}_{k}"


def gl_variables(n: int, r: int) -> List[str]:
    return [a_name(i, j, k) for i in range(n) for j in range(1, n - r + 1) for k in range(1, r + 1)]


def _gl_ring(n: int, r: int, extra: Sequence[str] = ()) -> PolyRing:
    return PolyRing(gl_variables(n, r) + list(extra) + ["t"], QQ)


def gl_chart_matrices(n: int, r: int, ring: PolyRing):
    """The matrices ``M_i`` (``n x r``) and ``A_i`` (``r x r``) of the GL chart."""
    Ms, As = [], []
    for i in range(n):
        Ms.append(_chain_matrix(n, r, i, lambda j, k, i=i: ring.gen(a_name(i, j, k)), ring))
        As.append(_companion([ring.gen(a_name(i, 1, k)) for k in range(1, r + 1)], ring))
    return Ms, As


def gl_matrix_equations(n: int, r: int, ring: PolyRing) -> List[Polynomial]:
    """All entries of ``phi_i M_i - M_{i+1} A_i``."""
    t = ring.gen("t")
    Ms, As = gl_chart_matrices(n, r, ring)
    out = []
    for i in range(n):
        lhs = _matmul(_phi(n, i, ring, t), Ms[i], ring)
        rhs = _matmul(Ms[(i + 1) % n], As[i], ring)
        out.extend(lhs[a][b] - rhs[a][b] for a in range(n) for b in range(r))
    return [g for g in out if not g.is_zero()]


def _gl_families(n: int, r: int, ring: PolyRing) -> List[Polynomial]:
    t = ring.gen("t")

    def a(i, j, k):
        return ring.gen(a_name(i % n, j, k))

    gens = []
    for i in range(n):
        for j in range(1, n - r):
            gens.append(a(i + 1, j, r) * a(i, 1, 1) - a(i, j + 1, 1))
        gens.append(a(i + 1, n - r, r) * a(i, 1, 1) - t)
        for j in range(1, n - r):
            for k in range(2, r + 1):
                gens.append(a(i, j + 1, k) - (a(i + 1, j, k - 1) + a(i + 1, j, r) * a(i, 1, k)))
        for k in range(2, r + 1):
            gens.append(a(i + 1, n - r, k - 1) + a(i + 1, n - r, r) * a(i, 1, k))
    return gens


def _gl_named(n: int, r: int, ring: PolyRing) -> Dict[str, Polynomial]:
    named = {}
    for i in range(n):
        named[f"alpha_{i}"] = ring.gen(a_name((i + 1) % n, n - r, r))
        named[f"beta_{i}"] = ring.gen(a_name(i, 1, 1))
    return named


def build_gl_iwahori(n: int, r: int) -> ChartPresentation:
    if not 1 <= r <= n - 1:
        raise ChartError("need 1 <= r <= n-1")
    ring = _gl_ring(n, r)
    return ChartPresentation("gl-iwahori", {"n": n, "r": r}, ring,
                             _dedupe(_gl_families(n, r, ring)), _gl_named(n, r, ring))


def build_gl_iwahori_matrix(n: int, r: int) -> ChartPresentation:
    """Presentation by the entries of the cyclic products ``A_{i-1}...A_i - t``."""
    if not 1 <= r <= n - 1:
        raise ChartError("need 1 <= r <= n-1")
    names = [f"a_{i}_{k}" for i in range(n) for k in range(1, r + 1)]
    ring = PolyRing(names + ["t"], QQ)
    t = ring.gen("t")
    As = [_companion([ring.gen(f"a_{i}_{k}") for k in range(1, r + 1)], ring) for i in range(n)]
    gens = []
    for start in range(n):
        # A_{start-1} ... A_{start}: apply A_start first
        P = None
        for step in range(n):
            A = As[(start + step) % n]
            P = A if P is None else _matmul(A, P, ring)
        for a_ in range(r):
            for b_ in range(r):
                gens.append(P[a_][b_] - (t if a_ == b_ else ring.zero()))
    named = {}
    for i in range(n):
        named[f"beta_{i}"] = ring.gen(f"a_{i}_1")
    return ChartPresentation("gl-iwahori-matrix", {"n": n, "r": r}, ring, _dedupe(gens), named)


def presentation_equivalence(n: int, r: int, budget=None) -> Dict[str, bool]:
    """Compare the two presentations of the GL chart.

    ``a_i_k`` corresponds to ``a_i_1_k``.  The check has two parts: the ideal
    of the matrix presentation equals the elimination ideal of the entry
    presentation, and every ``a_i_j_k`` with ``j >= 2`` is congruent to a
    polynomial in the ``a_i_1_k``.
    """
    big = build_gl_iwahori(n, r)
    small = build_gl_iwahori_matrix(n, r)
    R = big.ring
    others = [v for v in R.variables if v.startswith("a_") and v.split("_")[2] != "1"]
    keep = [v for v in R.variables if v not in others]
    elim = eliminate(big.ideal(), others, budget)
    rename = {f"a_{i}_{k}": f"a_{i}_1_{k}" for i in range(n) for k in range(1, r + 1)}
    target = PolyRing([v for v in keep], QQ)
    moved = IdealHandle(target, [g.substitute({k: target.gen(v) for k, v in rename.items()}, target)
                                 for g in small.gens])
    equal = ideal_equal(IdealHandle(target, [g.to_ring(target) for g in elim.gens]), moved, budget)
    order = block_order([[R.index(v) for v in others], [R.index(v) for v in keep]])
    expressible = True
    for v in others:
        nf = big.ideal().normal_form(R.gen(v), order, budget)
        if any(nf.degree(o) > 0 for o in others):
            expressible = False
    return {"ideals_equal": equal, "entries_expressible": expressible}


def _sign(r: int, convention: str) -> int:
    if convention == "det":
        return -1 if (r - 1) % 2 else 1
    if convention == "literal":
        return 1
    raise ChartError(f"unknown sign convention {convention!r}")


def build_gl_pro_p(params: ModelParams, sign: str = "det") -> ChartPresentation:
    """Adjoin ``u_i`` with ``u_i^(p-1) = s * alpha_i``.

    ``s = (-1)^(r-1)`` under the default ``"det"`` convention, which makes
    ``u_i^(p-1)`` the determinant of the map induced on quotients; the
    ``"literal"`` convention uses ``s = 1``.  The two agree for ``r = 1``.
    """
    n, r, p = params.n, params.r, params.p
    us = [f"u_{i}" for i in range(n)]
    ring = _gl_ring(n, r, us)
    base = _gl_families(n, r, ring)
    named = _gl_named(n, r, ring)
    s = _sign(r, sign)
    gens = list(base)
    for i in range(n):
        gens.append(ring.gen(f"u_{i}") ** (p - 1) - named[f"alpha_{i}"].scale(s))
    U = ring.one()
    for u in us:
        U = U * ring.gen(u)
    named["u_product"] = U
    named["f_1"] = U ** params.h - ring.gen("t") ** params.m
    named.update(_component_witness(params, ring, s))
    return ChartPresentation("gl-pro-p", {**params.to_json(), "sign": sign}, ring, _dedupe(gens), named)


def _component_witness(params: ModelParams, ring: PolyRing, s: int) -> Dict[str, Polynomial]:
    """``(u_1...u_{n-1})^h - s^m beta_0^m u_0^(m(p-1)-h)``, killed by ``t^m`` in ``C_1``."""
    n, p, h, m = params.n, params.p, params.h, params.m
    if params.g == 1:
        return {}
    rest = ring.one()
    for i in range(1, n):
        rest = rest * ring.gen(f"u_{i}")
    beta0 = ring.gen(a_name(0, 1, 1))
    w = rest ** h - (beta0 ** m * ring.gen("u_0") ** (m * (p - 1) - h)).scale(s ** m)
    return {"torsion_witness": w}


def cyclotomic(d: int, ring: PolyRing, var: str) -> Polynomial:
    """The d-th cyclotomic polynomial in ``var``."""
    x = ring.gen(var)
    num = x ** d - 1
    for k in range(1, d):
        if d % k == 0:
            num = exact_divide(num, cyclotomic(k, ring, var))
    return num


def build_component(params: ModelParams, eps=1, sign: str = "det") -> ChartPresentation:
    """``C_eps = C / ((u_0...u_{n-1})^h - eps t^m)``.

    ``eps`` is ``+1`` or ``-1``, or an integer ``d`` (not 1 or 2) dividing
    ``g``; then a variable ``e`` with the d-th cyclotomic relation stands for a
    primitive d-th root of unity.
    """
    pro = build_gl_pro_p(params, sign)
    g = params.g
    if eps in (1, -1, "+1", "-1"):
        e_val = int(eps)
        ring = pro.ring
        extra = []
        epsilon = ring.const(e_val)
        tag = "+1" if e_val == 1 else "-1"
        if e_val == -1 and g % 2:
            raise ChartError("-1 is not a g-th root of unity for odd g")
    else:
        d = int(eps)
        if d in (1, 2) or g % d:
            raise ChartError("cyclotomic order must divide g and differ from 1, 2")
        ring = pro.ring.extend(["e"])
        epsilon = ring.gen("e")
        extra = [cyclotomic(d, ring, "e")]
        tag = f"zeta_{d}"
    U = pro.named["u_product"].to_ring(ring)
    f = U ** params.h - epsilon * ring.gen("t") ** params.m
    gens = [g_.to_ring(ring) for g_ in pro.gens] + extra + [f]
    named = {k: v.to_ring(ring) for k, v in pro.named.items()}
    named["f_eps"] = f
    if tag != "+1":
        named.pop("torsion_witness", None)
    return ChartPresentation("gl-component", {**pro.params, "eps": tag}, ring, _dedupe(gens), named)


def worst_fiber(chart: ChartPresentation) -> ChartPresentation:
    if chart.case not in ("gl-pro-p", "gl-component"):
        raise ChartError("worst fiber needs a pro-p chart")
    avars = [v for v in chart.ring.variables if v.startswith("a_")]
    gens = list(chart.gens) + [chart.ring.gen(v) for v in avars]
    return ChartPresentation("worst-fiber", dict(chart.params), chart.ring, tuple(gens), dict(chart.named))


def expected_worst_fiber_basis(chart: ChartPresentation) -> List[Polynomial]:
    R = chart.ring
    p = chart.params["p"]
    out = [R.gen(v) for v in R.variables if v.startswith("a_")] + [R.gen("t")]
    out += [R.gen(v) ** (p - 1) for v in R.variables if v.startswith("u_")]
    return out


def drinfeld_target(n: int, p: int) -> ChartPresentation:
    """``Q[u_0..u_{n-1}, t] / ((u_0...u_{n-1})^(p-1) - t)``."""
    ring = PolyRing([f"u_{i}" for i in range(n)] + ["t"], QQ)
    U = ring.one()
    for i in range(n):
        U = U * ring.gen(f"u_{i}")
    return ChartPresentation("drinfeld-target", {"n": n, "p": p}, ring, (U ** (p - 1) - ring.gen("t"),))


# ---------------------------------------------------------------------------
# GSp charts


def gsp_canonical(n: int, i: int, j: int, k: int) -> Tuple[int, int, int]:
    if i in (0, n):
        partner = (n + 1 - k, n + 1 - j)
        if partner < (j, k):
            return (i, partner[0], partner[1])
    return (i, j, k)


def gsp_name(n: int, i: int, j: int, k: int) -> str:
    return a_name(*gsp_canonical(n, i, j, k))


def gsp_variables(n: int) -> List[str]:
    out = []
    for i in range(n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                name = gsp_name(n, i, j, k)
                if name not in out:
                    out.append(name)
    return out


def gsp_chart_matrices(n: int, ring: PolyRing):
    Ms, As = [], []
    for i in range(n + 1):
        Ms.append(_chain_matrix(2 * n, n, i, lambda j, k, i=i: ring.gen(gsp_name(n, i, j, k)), ring))
        if i < n:
            As.append(_companion([ring.gen(gsp_name(n, i, 1, k)) for k in range(1, n + 1)], ring))
    return Ms, As


def _gsp_equations(n: int, ring: PolyRing) -> List[Polynomial]:
    t = ring.gen("t")
    Ms, As = gsp_chart_matrices(n, ring)
    out = []
    for i in range(n):
        lhs = _matmul(_phi(2 * n, i, ring, t), Ms[i], ring)
        rhs = _matmul(Ms[i + 1], As[i], ring)
        out.extend(lhs[a][b] - rhs[a][b] for a in range(2 * n) for b in range(n))
    return out


def _gsp_named(n: int, ring: PolyRing) -> Dict[str, Polynomial]:
    def a(i, j, k):
        return ring.gen(gsp_name(n, i, j, k))

    named = {}
    for i in range(n):
        named[f"alpha_{i}"] = a(i + 1, n, n)
        named[f"beta_{i}"] = a(i, 1, 1)
    if n >= 2:
        named["lemma_identity"] = a(1, n, n) * a(0, 1, 2) + a(2, n - 1, n) * a(1, 1, 1)
        named["lemma_identity_literal"] = a(1, n, n) * a(0, 1, 2) + a(2, n - 1, 1) * a(1, 1, 1)
    return named


def build_gsp_iwahori(n: int) -> ChartPresentation:
    if n < 1:
        raise ChartError("need n >= 1")
    ring = PolyRing(gsp_variables(n) + ["t"], QQ)
    return ChartPresentation("gsp-iwahori", {"n": n}, ring,
                             _dedupe(_gsp_equations(n, ring)), _gsp_named(n, ring))


def build_gsp_hs(n: int, p: int) -> ChartPresentation:
    extra = [f"u_{i}" for i in range(n)] + [f"v_{i}" for i in range(n)]
    ring = PolyRing(gsp_variables(n) + extra + ["t"], QQ)
    base = _gsp_equations(n, ring)
    named = _gsp_named(n, ring)
    gens = list(base)
    u = [ring.gen(f"u_{i}") for i in range(n)]
    v = [ring.gen(f"v_{i}") for i in range(n)]
    for i in range(n):
        gens.append(u[i] ** (p - 1) - named[f"alpha_{i}"])
        gens.append(v[i] ** (p - 1) - named[f"beta_{i}"])
    for i in range(1, n):
        gens.append(u[0] * v[0] - u[i] * v[i])
    if n >= 2:
        a012 = ring.gen(gsp_name(n, 0, 1, 2))
        a2 = ring.gen(gsp_name(n, 2, n - 1, n))
        named["torsion_witness"] = a012 * u[0] * u[1] ** (p - 2) + a2 * v[0] ** (p - 2) * v[1]
    return ChartPresentation("gsp-hs", {"n": n, "p": p}, ring, _dedupe(gens), named)


def build_gsp_shadrach(n: int, p: int) -> ChartPresentation:
    extra = [f"u_{i}" for i in range(n)] + ["w"]
    ring = PolyRing(gsp_variables(n) + extra + ["t"], QQ)
    named = _gsp_named(n, ring)
    gens = list(_gsp_equations(n, ring))
    for i in range(n):
        gens.append(ring.gen(f"u_{i}") ** (p - 1) - named[f"alpha_{i}"])
    gens.append(ring.gen("w") ** (p - 1) - ring.gen("t"))
    return ChartPresentation("gsp-shadrach", {"n": n, "p": p}, ring, _dedupe(gens), named)


def hs_auxiliary_point(n: int) -> Dict[str, int]:
    """``a^0_{12} = a^i_{n-i-1,n-i} = 1`` (``i = 0..n-2``), everything else 0."""
    values = {v: 0 for v in gsp_variables(n)}
    values[gsp_name(n, 0, 1, 2)] = 1
    for i in range(n - 1):
        values[gsp_name(n, i, n - i - 1, n - i)] = 1
    values["t"] = 0
    return values


# ---------------------------------------------------------------------------
# the elliptic triangle


@dataclass
class EllipticTriangle:
    base: ChartPresentation
    sh: ChartPresentation
    hs: ChartPresentation
    prime: ChartPresentation
    homs: Dict[str, RingHom]


def build_elliptic_triangle(p: int) -> EllipticTriangle:
    def chart(case, extra, rels):
        ring = PolyRing(["x", "y"] + extra + ["t"], QQ)
        gens = [ring("x*y - t")] + [ring(s) for s in rels]
        return ChartPresentation(case, {"p": p}, ring, tuple(gens))

    q = p - 1
    base = chart("elliptic-B", [], [])
    sh = chart("elliptic-sh", ["u", "w"], [f"u^{q} - x", f"w^{q} - t"])
    hs = chart("elliptic-hs", ["u", "v"], [f"u^{q} - x", f"v^{q} - y"])
    prime = chart("elliptic-prime", ["u"], [f"u^{q} - x"])
    homs = {
        "sh_to_hs": RingHom.from_mapping(sh.ring, hs.ring, {"w": "u*v"}),
        "prime_to_sh": RingHom.from_mapping(prime.ring, sh.ring, {}),
        "prime_to_hs": RingHom.from_mapping(prime.ring, hs.ring, {}),
    }
    return EllipticTriangle(base, sh, hs, prime, homs)


# ---------------------------------------------------------------------------
# F_p points: base points, chart membership, vanishing patterns


def base_point(x: Alcove, p: int = 3) -> List[FpMatrix]:
    """Column bases of the coordinate subspaces ``F^x_i = span{e_j : t_i(j) = 1}``."""
    n = x.n
    out = []
    for i in range(n):
        cols = [[1 if a == j else 0 for a in range(n)] for j, b in enumerate(x.difference(i)) if b]
        out.append(FpMatrix.from_columns(p, cols, n) if cols else FpMatrix(p, n, 0, tuple(() for _ in range(n))))
    return out


def _coordinate_complement(n: int, diff: Sequence[int], p: int) -> FpMatrix:
    cols = [[1 if a == j else 0 for a in range(n)] for j, b in enumerate(diff) if b == 0]
    return FpMatrix.from_columns(p, cols, n) if cols else FpMatrix(p, n, 0, tuple(() for _ in range(n)))


def flag_in_chart(flag: Sequence[FpMatrix], y: Alcove) -> bool:
    """Whether ``F_i + span{e_j : t^y_i(j) = 0}`` is a direct sum equal to k^n for all i."""
    n = y.n
    for i, F in enumerate(flag):
        C = _coordinate_complement(n, y.difference(i), F.p)
        if F.cols + C.cols != n or fp_rank(F.hstack(C)) != n:
            return False
    return True


def chart_membership(x: Alcove, y: Alcove, p: int = 3) -> bool:
    return flag_in_chart(base_point(x, p), y)


def _phi_fp(n: int, i: int, p: int) -> FpMatrix:
    return FpMatrix.diag(p, [0 if a == i else 1 for a in range(n)])


def flag_pattern(flag: Sequence[FpMatrix]) -> List[Tuple[bool, bool]]:
    """``(alpha_i != 0, beta_i != 0)`` from the maps induced by ``phi_i`` on a flag."""
    n = len(flag)
    p = flag[0].p
    out = []
    for i in range(n):
        phi = _phi_fp(n, i, p)
        F, Fn = flag[i], flag[(i + 1) % n]
        r = F.cols
        quotient_iso = fp_rank(phi.hstack(Fn)) == n
        restriction_iso = fp_rank(fp_mul(phi, F)) == r
        out.append((quotient_iso, restriction_iso))
    return out


def vanishing_pattern(x: Alcove, p: int = 3) -> List[Tuple[bool, bool]]:
    return flag_pattern(base_point(x, p))


def combinatorial_vanishing(x: Alcove) -> List[Tuple[bool, bool]]:
    """``alpha_i != 0`` iff ``t_{i+1}(i+1) = 1``; ``beta_i != 0`` iff ``t_i(i+1) = 0``
    (coordinates 1-based, as in the criterion)."""
    return [(x.difference(i + 1)[i] == 1, x.difference(i)[i] == 0) for i in range(x.n)]


def gl_point_flag(n: int, r: int, values: Mapping[str, int], p: int) -> List[FpMatrix]:
    """The flag spanned by the columns of the chart matrices ``M_i`` at an F_p point."""
    flag = []
    for i in range(n):
        M = [[0] * r for _ in range(n)]
        for k in range(r):
            M[(i + k) % n][k] = 1
        for j in range(1, n - r + 1):
            for k in range(1, r + 1):
                M[(i + r + j - 1) % n][k - 1] = int(values[a_name(i, j, k)]) % p
        flag.append(FpMatrix.from_rows(p, M))
    return flag


def point_satisfies(chart: ChartPresentation, values: Mapping[str, int], p: int) -> bool:
    R = chart.ring.with_coeff(GF(p))
    return all(g.to_ring(R).evaluate(values) == 0 for g in chart.gens)


def iter_fp_points(ring: PolyRing, gens: Sequence[Polynomial], p: int,
                   nonzero: Sequence[Polynomial] = (), budget=None):
    """Yield the F_p points of ``V(gens)`` where every ``nonzero`` polynomial is
    a unit, in lexicographic order of the values.

    Depth-first search over variable values; each partial assignment is
    pruned by testing the ideal (with inverses adjoined) for the unit ideal.
    """
    Rp = ring.with_coeff(GF(p))
    taken = set(ring.variables)
    inv_names = [f"z{k}" if f"z{k}" not in taken else f"z{k}_inv" for k in range(len(nonzero))]
    R2 = Rp.extend(inv_names)
    base = [g.to_ring(R2) for g in gens]
    base += [R2.gen(z) * f.to_ring(R2) - 1 for z, f in zip(inv_names, nonzero)]
    order = list(ring.variables)

    def consistent(fixed):
        extra = [R2.gen(v) - c for v, c in fixed.items()]
        return not IdealHandle(R2, base + extra).is_unit_ideal(budget)

    def dfs(idx, fixed):
        if not consistent(fixed):
            return
        if idx == len(order):
            yield dict(fixed)
            return
        v = order[idx]
        for c in range(p):
            fixed[v] = c
            yield from dfs(idx + 1, fixed)
            del fixed[v]

    yield from dfs(0, {})


def find_fp_point(ring: PolyRing, gens: Sequence[Polynomial], p: int,
                  nonzero: Sequence[Polynomial] = (), budget=None) -> Optional[Dict[str, int]]:
    """The first F_p point found by :func:`iter_fp_points`, or None."""
    return next(iter_fp_points(ring, gens, p, nonzero, budget), None)


def chart_fp_points(chart: ChartPresentation, p: int, budget=None) -> List[Dict[str, int]]:
    """All F_p points of the special fibre ``t = 0`` of a chart."""
    gens = list(chart.gens) + [chart.ring.gen("t")]
    return list(iter_fp_points(chart.ring, gens, p, budget=budget))


def in_worst_chart(n: int, r: int, values: Mapping[str, int], p: int) -> bool:
    return flag_in_chart(gl_point_flag(n, r, values, p), worst_alcove(n, r))
