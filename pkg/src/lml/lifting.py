"""Lifting F_p points of pro-p charts to a finite extension of Z_p.

Arithmetic happens in ``O = W(F_q)[pi] / (pi^e - p*w)`` modulo ``p^K``; an
element is the tuple of its coordinates on ``1, pi, ..., pi^(e-1)``, each
coordinate itself a tuple over a basis of ``W(F_q)``.  A lift
is accepted only after every chart generator evaluates to zero mod ``p^K``
(with ``t = p``) and every coordinate reduces to the given point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .charts import ChartPresentation, a_name, gsp_name
from .ring_core import Polynomial


class LiftError(ValueError):
    """The recipe cannot produce a lift; the message names the failing constraint."""


@dataclass(frozen=True)
class PadicApprox:
    p: int
    K: int
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.p ** self.K:
            raise ValueError("value must lie in [0, p^K)")


def teichmuller(a: int, p: int, K: int) -> PadicApprox:
    """The (p-1)-th root of unity mod ``p^K`` congruent to ``a`` (0 for ``a = 0``)."""
    mod = p ** K
    x = a % p
    for _ in range(K):
        x = pow(x, p, mod)
    return PadicApprox(p, K, x)


def _irreducible(p: int, f: int) -> Tuple[int, ...]:
    """Coefficients ``c_0..c_{f-1}`` of a monic irreducible ``y^f + ...`` over F_p."""
    if f == 1:
        return (0,)
    for coeffs in itertools.product(range(p), repeat=f):
        if coeffs[0] == 0:
            continue
        poly = list(coeffs) + [1]
        if not any(sum(c * pow(a, k, p) for k, c in enumerate(poly)) % p == 0 for a in range(p)):
            if f <= 3:
                return tuple(coeffs)
    raise ValueError("no irreducible polynomial found")


class Eisenstein:
    """``W(F_q)[pi] / (pi^e - p*w)`` mod ``p^K`` with ``q = p^f``.

    ``W(F_q)`` is ``Z_p[y] / (y^f + c_{f-1} y^(f-1) + ... + c_0)`` for a monic
    polynomial irreducible mod ``p``; ``f = 1`` gives ``Z_p`` itself.
    """

    def __init__(self, p: int, e: int, K: int, w: int = 1, f: int = 1):
        if w % p == 0:
            raise ValueError("w must be a unit")
        if f not in (1, 2, 3):
            raise ValueError("residue degree must be 1, 2 or 3")
        self.p, self.e, self.K, self.f = p, e, K, f
        self.mod = p ** K
        self.w = w % self.mod
        self.phi = _irreducible(p, f)
        self.q = p ** f

    # coefficient ring W_K(F_q): tuples of length f
    def _cmul(self, a, b):
        f, mod = self.f, self.mod
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        for k in range(2 * f - 2, f - 1, -1):
            top = prod[k]
            if top:
                prod[k] = 0
                for l, c in enumerate(self.phi):
                    prod[k - f + l] -= top * c
        return tuple(x % mod for x in prod[:f])

    def elt(self, coeffs) -> "OElt":
        rows = []
        for x in list(coeffs) + [0] * (self.e - len(coeffs)):
            row = tuple(x) if isinstance(x, tuple) else (int(x),) + (0,) * (self.f - 1)
            rows.append(tuple(v % self.mod for v in row))
        return OElt(self, tuple(rows))

    def const(self, c: int) -> "OElt":
        return self.elt([c])

    def pi_pow(self, k: int) -> "OElt":
        q, r = divmod(k, self.e)
        c = [0] * self.e
        c[r] = pow(self.p * self.w, q, self.mod)
        return self.elt(c)

    def teich(self, a) -> "OElt":
        """Teichmueller lift of an element of F_q (an int means an element of F_p)."""
        if isinstance(a, int):
            return self.const(teichmuller(a, self.p, self.K).value)
        x = self.elt([tuple(v % self.p for v in a)])
        for _ in range(self.K):
            x = x ** self.q
        return x

    def residues(self) -> List[Tuple[int, ...]]:
        """All elements of F_q as coefficient tuples."""
        return list(itertools.product(range(self.p), repeat=self.f))

    def fq_pow(self, a: Tuple[int, ...], k: int) -> Tuple[int, ...]:
        return tuple(v % self.p for v in self.elt([a]).__pow__(k).c[0])

    def zero(self) -> "OElt":
        return self.const(0)

    def one(self) -> "OElt":
        return self.const(1)


@dataclass(frozen=True)
class OElt:
    O: Eisenstein = field(repr=False)
    c: Tuple[Tuple[int, ...], ...]

    def _lift(self, other):
        return other if isinstance(other, OElt) else self.O.const(int(other))

    def __add__(self, other):
        other = self._lift(other)
        mod = self.O.mod
        return OElt(self.O, tuple(tuple((x + y) % mod for x, y in zip(a, b)) for a, b in zip(self.c, other.c)))

    __radd__ = __add__

    def __neg__(self):
        mod = self.O.mod
        return OElt(self.O, tuple(tuple(-x % mod for x in a) for a in self.c))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        O = self.O
        e, f, mod = O.e, O.f, O.mod
        pw = O.p * O.w
        out = [[0] * f for _ in range(e)]
        for i, a in enumerate(self.c):
            if not any(a):
                continue
            for j, b in enumerate(other.c):
                if not any(b):
                    continue
                prod = a[0] * b[0] if f == 1 else None
                prod = (prod % mod,) if f == 1 else O._cmul(a, b)
                k = i + j
                scale = 1
                if k >= e:
                    k -= e
                    scale = pw
                row = out[k]
                for l in range(f):
                    row[l] += prod[l] * scale
        return OElt(O, tuple(tuple(x % mod for x in row) for row in out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result, base = self.O.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(any(a) for a in self.c)

    def valuation(self) -> Optional[int]:
        """pi-adic valuation (None for zero mod p^K)."""
        best = None
        p, e = self.O.p, self.O.e
        for j, row in enumerate(self.c):
            for a in row:
                if a:
                    v, k = 0, a
                    while k % p == 0:
                        k //= p
                        v += 1
                    val = v * e + j
                    best = val if best is None or val < best else best
        return best

    def residue_fq(self) -> Tuple[int, ...]:
        return tuple(x % self.O.p for x in self.c[0])

    def residue(self) -> int:
        """Residue as an element of F_p (-1 if it lies outside F_p)."""
        r = self.residue_fq()
        if any(r[1:]):
            return -1
        return r[0]

    def inverse(self) -> "OElt":
        r = self.residue_fq()
        if not any(r):
            raise LiftError("inverse of a non-unit")
        O = self.O
        rinv = O.fq_pow(r, O.q - 2)
        y = O.elt([rinv])
        for _ in range((O.e * O.K).bit_length() + 2):
            y = y * (2 - self * y)
        return y

    def shift_down(self, k: int) -> "OElt":
        """Divide by ``pi^k``; requires valuation >= k (precision drops by about k/e digits)."""
        v = self.valuation()
        if v is not None and v < k:
            raise LiftError("division leaves O")
        O = self.O
        winv = pow(O.w, -1, O.mod)
        rows = list(self.c)
        for _ in range(k):
            low = rows[0]
            if any(x % O.p for x in low):
                raise LiftError("division leaves O")
            rows = rows[1:] + [tuple((x // O.p) * winv % O.mod for x in low)]
        return OElt(O, tuple(rows))

    def __truediv__(self, other):
        other = self._lift(other)
        v = other.valuation()
        if v is None:
            raise LiftError("division by zero")
        unit = other.shift_down(v)
        return self.shift_down(v) * unit.inverse()

    def root(self, m: int, start=None) -> "OElt":
        """An m-th root of a unit (Newton iteration from a residue ``start``;
        by default the first m-th root of the residue found in F_q)."""
        O = self.O
        if m % O.p == 0:
            raise LiftError("root degree divisible by p")
        r = self.residue_fq()
        if start is None:
            found = [s for s in O.residues() if any(s) and O.fq_pow(s, m) == r]
            if not found:
                raise LiftError(f"unit residue is not an {m}-th power in F_{O.q}")
            start = found[0]
        elif isinstance(start, int):
            start = (start % O.p,) + (0,) * (O.f - 1)
        if O.fq_pow(start, m) != r:
            raise LiftError("residue is not an m-th power of the prescribed value")
        z = O.elt([start])
        for _ in range((O.e * O.K).bit_length() + 2):
            z = z - (z ** m - self) * ((z ** (m - 1)) * m).inverse()
        return z


def evaluate_in(f: Polynomial, values: Mapping[str, OElt], O: Eisenstein) -> OElt:
    acc = O.zero()
    names = f.ring.variables
    for mono, c in f.as_dict().items():
        num, den = int(c.numerator), int(c.denominator)
        if den % O.p == 0:
            raise LiftError("coefficient not p-integral")
        term = O.const(num * pow(den, -1, O.mod))
        for v, k in zip(names, mono):
            if k:
                term = term * values[v] ** k
        acc = acc + term
    return acc


@dataclass
class LiftResult:
    ok: bool
    branch: str
    e: int = 0
    w: int = 1
    K: int = 0
    detail: str = ""
    values: Dict[str, Tuple[Tuple[int, ...], ...]] = field(default_factory=dict)
    f: int = 1

    def to_json(self) -> dict:
        return {"ok": self.ok, "branch": self.branch, "e": self.e, "w": self.w, "K": self.K,
                "residue_degree": self.f, "detail": self.detail,
                "values": {k: [list(row) for row in v] for k, v in self.values.items()}}


def certify(chart: ChartPresentation, point: Mapping[str, int], values: Mapping[str, OElt],
            O: Eisenstein) -> Tuple[bool, str]:
    p = O.p
    for v in chart.ring.variables:
        if v == "t":
            continue
        if values[v].residue() != point[v] % p:
            return False, f"coordinate {v} does not reduce to the point"
    vals = dict(values)
    vals["t"] = O.const(p)
    for g in chart.gens:
        if not evaluate_in(g, vals, O).is_zero():
            return False, f"generator {g} does not vanish mod p^{O.K}"
    return True, "all generators vanish"


def _unit_root(alpha_val: int, alpha_unit: OElt, p: int, residue: int, name: str) -> OElt:
    """A (p-1)-th root of ``pi^alpha_val * alpha_unit`` reducing to ``residue``."""
    O = alpha_unit.O
    if alpha_val == 0:
        if residue % p == 0:
            raise LiftError(f"{name}: unit value but zero residue")
        return alpha_unit.root(p - 1, residue % p)
    if residue % p:
        raise LiftError(f"{name}: nonunit value but unit residue")
    if alpha_val % (p - 1):
        raise LiftError(f"{name}: valuation {alpha_val} not divisible by p-1")
    return O.pi_pow(alpha_val // (p - 1)) * alpha_unit.root(p - 1)


def _fix_product(values, names: Sequence[str], point, target: OElt, exponent: int, p: int, label: str):
    """Multiply one root with zero residue by a Teichmueller unit so that the
    product of ``names`` raised to ``exponent`` equals ``target``."""
    O = target.O
    prod = O.one()
    for v in names:
        prod = prod * values[v]
    cur = prod ** exponent
    if cur.valuation() != target.valuation():
        raise LiftError(f"{label}: valuations differ")
    vt = target.valuation()
    ratio = target.shift_down(vt) * cur.shift_down(vt).inverse()
    eta = ratio.residue_fq()
    zetas = [z for z in O.residues() if any(z) and O.fq_pow(z, exponent) == eta]
    free = [v for v in names if point[v] % p == 0]
    if not zetas or not free:
        raise LiftError(f"{label}: no root-of-unity correction available")
    values[free[0]] = values[free[0]] * O.teich(zetas[0])
    prod = O.one()
    for v in names:
        prod = prod * values[v]
    if not (prod ** exponent - target).is_zero():
        raise LiftError(f"{label}: correction did not close up")


# ---------------------------------------------------------------------------
# GL pro-p components with r = 1


def lift_gl_r1(chart: ChartPresentation, point: Mapping[str, int], K: int) -> LiftResult:
    n, r, p = chart.params["n"], chart.params["r"], chart.params["p"]
    if r != 1:
        raise LiftError("the GL recipe covers r = 1")
    xbar = [point[a_name(i, 1, 1)] % p for i in range(n)]
    ubar = [point[f"u_{i}"] % p for i in range(n)]
    Z = [i for i in range(n) if xbar[i] == 0]
    if not Z:
        raise LiftError("no vanishing beta: the point is not on the special fiber")
    S = {xbar[i] for i in range(n) if i not in Z and ubar[i] == 0}
    if len(S) > 1:
        raise LiftError("roots with zero residue need equal unit residues")
    winv = S.pop() if S else 1
    w = pow(winv, -1, p)
    if len(Z) == 1:
        e = p - 1
        k = {Z[0]: e}
    else:
        e = (p - 1) * len(Z)
        k = {j: p - 1 for j in Z}
    O = Eisenstein(p, e, K, w)
    U: Dict[int, OElt] = {}
    for j in range(n):
        if j not in Z:
            U[j] = O.teich(xbar[j])
    for j in Z[:-1]:
        U[j] = O.teich(winv)
    rest = O.one()
    for j in range(n):
        if j != Z[-1]:
            rest = rest * U[j]
    U[Z[-1]] = O.const(pow(w, -1, O.mod)) * rest.inverse()
    x = [O.pi_pow(k.get(j, 0)) * U[j] for j in range(n)]
    values: Dict[str, OElt] = {}
    for i in range(n):
        acc = O.one()
        for j in range(1, n):
            acc = acc * x[(i + j - 1) % n]
            values[a_name(i, j, 1)] = acc
    for i in range(n):
        unit = O.one()
        for j in range(n):
            if j != i:
                unit = unit * U[j]
        val = e - k.get(i, 0)
        values[f"u_{i}"] = _unit_root(val, unit, p, ubar[i], f"u_{i}")
    if chart.case == "gl-component":
        eps = chart.params.get("eps", "+1")
        if eps not in ("+1", "-1"):
            raise LiftError("cyclotomic components are not covered")
        h, m = chart.params["h"], chart.params["m"]
        target = O.const(p) ** m * int(eps)
        _fix_product(values, [f"u_{i}" for i in range(n)], point, target, h, p, "component relation")
    ok, detail = certify(chart, point, values, O)
    return LiftResult(ok, "gl-r1", e, w, K, detail, {k_: v.c for k_, v in values.items()})


# ---------------------------------------------------------------------------
# GSp charts, n = 2, via the parametrisation of the generic fibre by
# (x0, x1, a012, a112) with x1 = x0 - a012*a112


def _gsp2_candidates(bar: int, O: Eisenstein, p: int, max_val: int, allow_zero: bool = True):
    if bar % p:
        yield O.teich(bar)
        return
    if allow_zero:
        yield O.zero()
    for kk in range(1, max_val + 1):
        for z in range(1, p):
            yield O.pi_pow(kk) * O.teich(z)


def _gsp2_complete(x0, x1, a012, a112, O: Eisenstein) -> Optional[Dict[str, OElt]]:
    t = O.const(O.p)
    try:
        vals = {
            "a_0_1_1": x0,
            "a_0_1_2": a012,
            "a_0_2_1": x0 * a112,
            "a_1_1_1": x1,
            "a_1_1_2": a112,
            "a_1_2_2": t / x0,
            "a_1_2_1": -(a012 * t) / x0,
            "a_2_1_1": t / x1,
            "a_2_1_2": -(a012 * t) / (x0 * x1),
            "a_2_2_1": -(a112 * t) / x1,
        }
    except LiftError:
        return None
    return vals


def _gsp2_params(point, O: Eisenstein, p: int):
    """Candidate ``(x0, x1, a012, a112)`` with ``x1 = x0 - a012*a112``; one of
    ``a012``, ``a112`` is solved for whenever the other is a unit."""
    e = O.e
    for x0 in _gsp2_candidates(point["a_0_1_1"], O, p, e, allow_zero=False):
        for x1 in _gsp2_candidates(point["a_1_1_1"], O, p, e, allow_zero=False):
            diff = x0 - x1
            if point["a_1_1_2"] % p:
                pairs = [(None, O.teich(point["a_1_1_2"]))]
            elif point["a_0_1_2"] % p:
                pairs = [(O.teich(point["a_0_1_2"]), None)]
            else:
                pairs = [(a, None) for a in _gsp2_candidates(0, O, p, e, allow_zero=False)]
                if diff.is_zero():
                    pairs += [(a, O.zero()) for a in _gsp2_candidates(0, O, p, e)]
            for a012, a112 in pairs:
                try:
                    if a012 is None:
                        a012 = diff / a112
                    elif a112 is None:
                        a112 = diff / a012
                except LiftError:
                    continue
                yield x0, x1, a012, a112


def lift_gsp2(chart: ChartPresentation, point: Mapping[str, int], K: int,
              max_e_mult: int = 3, max_f: int = 2) -> LiftResult:
    """Search totally ramified extensions first; if none works, retry over the
    unramified extension of residue degree up to ``max_f``."""
    last = LiftResult(False, "gsp2-search", K=K, detail="search exhausted")
    for f in range(1, max_f + 1):
        last = _lift_gsp2(chart, point, K, max_e_mult, f)
        if last.ok:
            return last
    return last


def _lift_gsp2(chart, point, K, max_e_mult, f) -> LiftResult:
    if chart.params.get("n") != 2 or chart.case != "gsp-hs":
        raise LiftError("the GSp recipe covers the n = 2 HS chart")
    p = chart.params["p"]
    last = "search exhausted"
    for mult in range(1, max_e_mult + 1):
        e = (p - 1) * mult
        for w in range(1, p):
            O = Eisenstein(p, e, K + 3, w, f)
            for x0, x1, a012, a112 in _gsp2_params(point, O, p):
                vals = _gsp2_complete(x0, x1, a012, a112, O)
                if vals is None:
                    continue
                if any(vals[v].residue() != point[v] % p for v in vals):
                    continue
                try:
                    roots = _gsp2_roots(vals, point, O, p)
                except LiftError as exc:
                    last = str(exc)
                    continue
                vals.update(roots)
                Oc = Eisenstein(p, e, K, w, f)
                cut = {k_: Oc.elt(v.c) for k_, v in vals.items()}
                ok, detail = certify(chart, point, cut, Oc)
                if ok:
                    return LiftResult(True, "gsp2-search", e, w, K, detail,
                                      {k_: v.c for k_, v in cut.items()}, f)
                last = detail
    return LiftResult(False, "gsp2-search", 0, 1, K, last, f=f)


def _split(x: OElt) -> Tuple[int, OElt]:
    v = x.valuation()
    if v is None:
        raise LiftError("zero coordinate where a root is needed")
    return v, x.shift_down(v)


def _gsp2_roots(vals, point, O, p) -> Dict[str, OElt]:
    roots = {}
    for name, src in (("u_0", "a_1_2_2"), ("u_1", "a_2_1_1"), ("v_0", "a_0_1_1"), ("v_1", "a_1_1_1")):
        v, unit = _split(vals[src])
        roots[name] = _unit_root(v, unit, p, point[name], name)
    lhs = roots["u_0"] * roots["v_0"]
    _fix_product(roots, ["u_1", "v_1"], point, lhs, 1, p, "u_0 v_0 = u_1 v_1")
    return roots


def lift_point(chart: ChartPresentation, point: Mapping[str, int], K: int = 4) -> LiftResult:
    """Lift an F_p point of a pro-p chart mod ``p^K``; failures are reported, not raised."""
    try:
        if chart.case in ("gl-component", "gl-pro-p"):
            return lift_gl_r1(chart, point, K)
        if chart.case == "gsp-hs":
            return lift_gsp2(chart, point, K)
        raise LiftError(f"no lifting recipe for {chart.case}")
    except LiftError as exc:
        return LiftResult(False, chart.case, K=K, detail=str(exc))
