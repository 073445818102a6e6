"""Exact multivariate polynomials over the rationals and prime fields.

Polynomials are stored sparsely as a mapping from exponent tuples to nonzero
coefficients.  Rational coefficients are ``gmpy2.mpq`` values; prime-field
coefficients are plain Python integers in ``range(p)``.  The prime ``p`` of
the arithmetic setting is modelled by an ordinary indeterminate, by
convention named ``t``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import gmpy2
from gmpy2 import mpq

Monomial = Tuple[int, ...]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class ParseError(ValueError):
    """Raised on malformed polynomial text; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class RingMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# coefficient domains


@dataclass(frozen=True)
class CoeffDomain:
    kind: str  # "rationals" | "prime-field"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise ValueError("the rationals have characteristic 0")
        elif self.kind == "prime-field":
            if self.characteristic < 2 or not gmpy2.is_prime(self.characteristic):
                raise ValueError(f"{self.characteristic} is not a prime")
        else:
            raise ValueError(f"unknown coefficient domain {self.kind!r}")

    @property
    def p(self) -> int:
        return self.characteristic

    def convert(self, value):
        """Coerce an int, Fraction, mpq or field element into this domain."""
        if self.characteristic == 0:
            if isinstance(value, Fraction):
                return mpq(value.numerator, value.denominator)
            return mpq(value)
        p = self.characteristic
        if isinstance(value, int) or type(value).__name__ == "mpz":
            return int(value) % p
        if isinstance(value, Fraction):
            num, den = value.numerator, value.denominator
        else:
            q = mpq(value)
            num, den = int(q.numerator), int(q.denominator)
        if den % p == 0:
            raise ZeroDivisionError(f"denominator {den} is not invertible mod {p}")
        return num * pow(den, -1, p) % p

    def inv(self, c):
        if self.characteristic == 0:
            return 1 / c
        return pow(c, -1, self.characteristic)

    def fmt(self, c) -> str:
        if self.characteristic == 0:
            if c.denominator == 1:
                return str(c.numerator)
            return f"{c.numerator}/{c.denominator}"
        return str(c)

    def to_json(self) -> dict:
        if self.characteristic == 0:
            return {"coeff": "QQ"}
        return {"coeff": "Fp", "p": self.characteristic}


QQ = CoeffDomain("rationals", 0)


def GF(p: int) -> CoeffDomain:
    return CoeffDomain("prime-field", p)


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "degrevlex"  # "lex" | "degrevlex" | "block"
    blocks: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind != "block" and self.blocks:
            raise ValueError("only block orders carry blocks")

    def validate(self, nvars: int) -> None:
        if self.kind != "block":
            return
        flat = sorted(i for b in self.blocks for i in b)
        if flat != list(range(nvars)):
            raise ValueError("block partition must cover every variable exactly once")

    def key_function(self):
        """Return a function mapping an exponent tuple to a sortable key.

        Larger keys mean larger monomials.  Within a block the order is
        degree reverse lexicographic.
        """
        if self.kind == "lex":
            return lambda e: e
        if self.kind == "degrevlex":
            return _degrevlex_key
        blocks = self.blocks

        def key(e):
            out = []
            for b in blocks:
                sub = [e[i] for i in b]
                out.append(sum(sub))
                out.extend(-x for x in reversed(sub))
            return tuple(out)

        return key


def _degrevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


def block_order(blocks: Sequence[Sequence[int]]) -> MonomialOrder:
    return MonomialOrder("block", tuple(tuple(b) for b in blocks))


# ---------------------------------------------------------------------------
# rings


class PolyRing:
    """A polynomial ring over a field with a fixed monomial order."""

    __slots__ = ("variables", "coeff", "order", "_index", "_key", "_keycache", "_hash")

    def __init__(self, variables: Sequence[str], coeff: CoeffDomain = QQ,
                 order: MonomialOrder = DEGREVLEX):
        variables = tuple(variables)
        for v in variables:
            if not _NAME_RE.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be unique")
        order.validate(len(variables))
        self.variables = variables
        self.coeff = coeff
        self.order = order
        self._index = {v: i for i, v in enumerate(variables)}
        self._key = order.key_function()
        self._keycache: Dict[Monomial, tuple] = {}
        self._hash = hash((variables, coeff, order))

    # identity
    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.variables == other.variables
                and self.coeff == other.coeff and self.order == other.order)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PolyRing({list(self.variables)}, {self.coeff.kind}{self.coeff.p or ''}, {self.order.kind})"

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def key(self, m: Monomial):
        k = self._keycache.get(m)
        if k is None:
            k = self._key(m)
            self._keycache[m] = k
        return k

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def has(self, name: str) -> bool:
        return name in self._index

    # derived rings
    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.variables, self.coeff, order)

    def with_coeff(self, coeff: CoeffDomain) -> "PolyRing":
        return PolyRing(self.variables, coeff, self.order)

    def extend(self, names: Sequence[str]) -> "PolyRing":
        order = self.order
        if order.kind == "block":
            order = block_order(list(order.blocks) + [range(self.nvars, self.nvars + len(names))])
        return PolyRing(self.variables + tuple(names), self.coeff, order)

    def fresh_name(self, base: str) -> str:
        if base not in self._index:
            return base
        k = 1
        while f"{base}_{k}" in self._index:
            k += 1
        return f"{base}_{k}"

    # element constructors
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.coeff.convert(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): self.coeff.convert(1)})

    def gens(self) -> List["Polynomial"]:
        return [self.gen(v) for v in self.variables]

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value.to_ring(self)
        if isinstance(value, str):
            return parse_poly(self, value)
        return self.const(value)

    def monomial(self, exps: Mapping[str, int], c=1) -> "Polynomial":
        e = [0] * self.nvars
        for name, k in exps.items():
            e[self.index(name)] += k
        c = self.coeff.convert(c)
        return Polynomial(self, {tuple(e): c} if c else {})

    def from_dict(self, d: Mapping[Monomial, object]) -> "Polynomial":
        conv = self.coeff.convert
        out = {}
        for m, c in d.items():
            c = conv(c)
            if c:
                out[tuple(m)] = c
        return Polynomial(self, out)

    def to_json(self) -> dict:
        out = {"vars": list(self.variables)}
        out.update(self.coeff.to_json())
        return out


def ring_from_json(spec: Mapping) -> PolyRing:
    coeff = spec.get("coeff", "QQ")
    if coeff == "QQ":
        dom = QQ
    elif coeff == "Fp":
        if "p" not in spec:
            raise ValueError("prime-field ring needs 'p'")
        dom = GF(int(spec["p"]))
    else:
        raise ValueError(f"unknown coefficient field {coeff!r}")
    return PolyRing(spec["vars"], dom)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """An immutable polynomial; ``terms`` lists (exponent, coefficient) pairs
    sorted strictly descending by the ring's monomial order."""

    __slots__ = ("ring", "_d", "_terms", "_hash")

    def __init__(self, ring: PolyRing, d: Dict[Monomial, object]):
        self.ring = ring
        self._d = d
        self._terms = None
        self._hash = None

    # canonical form
    @property
    def terms(self) -> List[Tuple[Monomial, object]]:
        if self._terms is None:
            key = self.ring.key
            self._terms = sorted(self._d.items(), key=lambda kv: key(kv[0]), reverse=True)
        return self._terms

    def as_dict(self) -> Dict[Monomial, object]:
        return dict(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    @property
    def lm(self) -> Monomial:
        if not self._d:
            raise ValueError("zero polynomial has no leading monomial")
        if self._terms is not None:
            return self._terms[0][0]
        return max(self._d, key=self.ring.key)

    @property
    def lc(self):
        return self._d[self.lm]

    def total_degree(self) -> int:
        return max((sum(m) for m in self._d), default=-1)

    def degree(self, name: str) -> int:
        i = self.ring.index(name)
        return max((m[i] for m in self._d), default=-1)

    def support(self) -> List[str]:
        used = set()
        for m in self._d:
            used.update(i for i, e in enumerate(m) if e)
        return [self.ring.variables[i] for i in sorted(used)]

    def coefficient(self, m: Monomial):
        return self._d.get(tuple(m), self.ring.coeff.convert(0))

    def constant_term(self):
        return self.coefficient((0,) * self.ring.nvars)

    # comparison
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._d == other._d
        if isinstance(other, (int, Fraction)) or type(other).__name__ in ("mpq", "mpz"):
            return self._d == self.ring.const(other)._d
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._d.items())))
        return self._hash

    # arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        p = self.ring.coeff.p
        d = dict(self._d)
        for m, c in other._d.items():
            s = d.get(m)
            if s is None:
                d[m] = c
            else:
                s = (s + c) % p if p else s + c
                if s:
                    d[m] = s
                else:
                    del d[m]
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.coeff.p
        if p:
            return Polynomial(self.ring, {m: (-c) % p for m, c in self._d.items()})
        return Polynomial(self.ring, {m: -c for m, c in self._d.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        p = self.ring.coeff.p
        a, b = self._d, other._d
        if len(a) < len(b):
            a, b = b, a
        d: Dict[Monomial, object] = {}
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                c = ca * cb
                s = d.get(m)
                d[m] = c if s is None else s + c
        if p:
            d = {m: c % p for m, c in d.items() if c % p}
        else:
            d = {m: c for m, c in d.items() if c}
        return Polynomial(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a natural number")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = self.ring.coeff.convert(c)
        if not c:
            return self.ring.zero()
        p = self.ring.coeff.p
        if p:
            return Polynomial(self.ring, {m: x * c % p for m, x in self._d.items()})
        return Polynomial(self.ring, {m: x * c for m, x in self._d.items()})

    def mul_term(self, mono: Monomial, c) -> "Polynomial":
        p = self.ring.coeff.p
        d = {}
        for m, x in self._d.items():
            y = x * c
            if p:
                y %= p
            d[tuple(a + b for a, b in zip(m, mono))] = y
        return Polynomial(self.ring, d)

    def monic(self) -> "Polynomial":
        if not self._d:
            return self
        return self.scale(self.ring.coeff.inv(self.lc))

    # ring changes
    def to_ring(self, target: PolyRing) -> "Polynomial":
        """Move into a ring sharing variable names (a superset, or one where
        the unused variables are missing)."""
        if target == self.ring:
            return self
        src = self.ring.variables
        pos = []
        for i, v in enumerate(src):
            pos.append(target._index.get(v))
        conv = target.coeff.convert
        d: Dict[Monomial, object] = {}
        n = target.nvars
        for m, c in self._d.items():
            e = [0] * n
            for i, k in enumerate(m):
                if k:
                    j = pos[i]
                    if j is None:
                        raise RingMismatch(f"variable {src[i]!r} absent from target ring")
                    e[j] = k
            c = conv(c)
            if c:
                key = tuple(e)
                s = d.get(key)
                d[key] = c if s is None else s + c
        if target.coeff.p:
            d = {m: c % target.coeff.p for m, c in d.items() if c % target.coeff.p}
        else:
            d = {m: c for m, c in d.items() if c}
        return Polynomial(target, d)

    def substitute(self, mapping: Mapping[str, "Polynomial"], target: PolyRing | None = None) -> "Polynomial":
        """Replace variables by polynomials of ``target``.

        Variables not in ``mapping`` go to the same-named variable of
        ``target``."""
        target = target or self.ring
        images = []
        for v in self.ring.variables:
            if v in mapping:
                img = mapping[v]
                if not isinstance(img, Polynomial):
                    img = target.const(img)
                elif img.ring != target:
                    img = img.to_ring(target)
                images.append(img)
            elif target.has(v):
                images.append(target.gen(v))
            else:
                images.append(None)
        return _apply_images(self, images, target)

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at a point of the coefficient field (missing names are an error)."""
        dom = self.ring.coeff
        pt = [dom.convert(values[v]) if self.ring.has(v) and v in values else None
              for v in self.ring.variables]
        total = dom.convert(0)
        p = dom.p
        for m, c in self._d.items():
            val = c
            for i, k in enumerate(m):
                if k:
                    if pt[i] is None:
                        raise KeyError(f"no value for {self.ring.variables[i]!r}")
                    val = val * (pow(pt[i], k, p) if p else pt[i] ** k)
                    if p:
                        val %= p
            total += val
        return total % p if p else total

    def partial_evaluate(self, values: Mapping[str, object]) -> "Polynomial":
        return self.substitute({k: self.ring.const(v) for k, v in values.items()})

    # text
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def _apply_images(f: Polynomial, images: Sequence[Polynomial | None], target: PolyRing) -> Polynomial:
    conv = target.coeff.convert
    result = target.zero()
    powcache: Dict[Tuple[int, int], Polynomial] = {}
    for m, c in f.terms:
        term = target.const(conv(c))
        for i, k in enumerate(m):
            if k:
                img = images[i]
                if img is None:
                    raise RingMismatch(f"no image for {f.ring.variables[i]!r}")
                pk = powcache.get((i, k))
                if pk is None:
                    pk = img ** k
                    powcache[(i, k)] = pk
                term = term * pk
        result = result + term
    return result


def format_poly(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    names = f.ring.variables
    dom = f.ring.coeff
    pieces = []
    for idx, (m, c) in enumerate(f.terms):
        factors = []
        for i, k in enumerate(m):
            if k == 1:
                factors.append(names[i])
            elif k:
                factors.append(f"{names[i]}^{k}")
        neg = dom.p == 0 and c < 0
        mag = -c if neg else c
        cs = dom.fmt(mag)
        if factors:
            body = "*".join(factors) if cs == "1" else cs + "*" + "*".join(factors)
        else:
            body = cs
        if idx == 0:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^]))")


def _tokenize(text: str):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", n))
    return out


def parse_poly(ring: PolyRing, text: str) -> Polynomial:
    """Parse ``text`` using the grammar

    ``expr = term (("+"|"-") term)*``,
    ``term = [sign] [int | int "/" int] ("*"? factor)*``,
    ``factor = name ("^" natural)?``.
    """
    toks = _tokenize(text)
    dom = ring.coeff
    pos = 0

    def peek():
        return toks[pos]

    def take():
        nonlocal pos
        tok = toks[pos]
        pos += 1
        return tok

    def term(sign_required: bool) -> Polynomial:
        kind, val, at = peek()
        sign = 1
        # a leading sign is optional; after the first term the separator sign
        # has already been consumed by the caller
        while kind == "op" and val in "+-":
            take()
            if val == "-":
                sign = -sign
            kind, val, at = peek()
        coeff = None
        if kind == "num":
            take()
            num = int(val)
            den = 1
            k2, v2, a2 = peek()
            if k2 == "op" and v2 == "/":
                take()
                k3, v3, a3 = take()
                if k3 != "num":
                    raise ParseError("expected integer denominator", a3)
                den = int(v3)
                if den == 0:
                    raise ParseError("zero denominator", a3)
            try:
                coeff = dom.convert(Fraction(num, den))
            except ZeroDivisionError:
                raise ParseError(f"denominator not invertible mod {dom.p}", at) from None
        exps = [0] * ring.nvars
        nfactors = 0
        while True:
            kind, val, at = peek()
            if kind == "op" and val == "*":
                take()
                kind, val, at = peek()
                if kind != "name":
                    raise ParseError("expected variable after '*'", at)
            if kind != "name":
                break
            take()
            if not ring.has(val):
                raise ParseError(f"unknown variable {val!r}", at)
            k = 1
            k2, v2, a2 = peek()
            if k2 == "op" and v2 == "^":
                take()
                k3, v3, a3 = take()
                if k3 != "num":
                    raise ParseError("expected natural exponent", a3)
                k = int(v3)
            exps[ring.index(val)] += k
            nfactors += 1
        if coeff is None and nfactors == 0:
            raise ParseError("expected a term", peek()[2])
        if coeff is None:
            coeff = dom.convert(1)
        if sign < 0:
            coeff = dom.convert(-coeff) if dom.p else -coeff
        if not coeff:
            return ring.zero()
        return Polynomial(ring, {tuple(exps): coeff})

    result = term(False)
    while True:
        kind, val, at = peek()
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            take()
            t = term(True)
            result = result + t if val == "+" else result - t
        else:
            raise ParseError(f"unexpected token {val!r}", at)
    return result


# ---------------------------------------------------------------------------
# dense linear algebra over F_p


@dataclass(frozen=True)
class FpMatrix:
    p: int
    rows: int
    cols: int
    entries: Tuple[Tuple[int, ...], ...] = field(repr=False)

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry count must equal rows x cols")

    @classmethod
    def from_rows(cls, p: int, rows: Iterable[Iterable[int]]) -> "FpMatrix":
        data = tuple(tuple(int(x) % p for x in r) for r in rows)
        ncols = len(data[0]) if data else 0
        return cls(p, len(data), ncols, data)

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls.from_rows(p, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, p: int, values: Sequence[int]) -> "FpMatrix":
        n = len(values)
        return cls.from_rows(p, [[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, p: int, cols: Sequence[Sequence[int]], nrows: int) -> "FpMatrix":
        return cls.from_rows(p, [[c[i] for c in cols] for i in range(nrows)])

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> List[Tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "FpMatrix":
        return FpMatrix.from_rows(self.p, zip(*self.entries)) if self.rows else FpMatrix(self.p, self.cols, 0, ((),) * self.cols)

    def hstack(self, other: "FpMatrix") -> "FpMatrix":
        if self.rows != other.rows or self.p != other.p:
            raise ValueError("dimension mismatch")
        return FpMatrix.from_rows(self.p, [a + b for a, b in zip(self.entries, other.entries)])

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        return fp_mul(self, other)


def _check_same_field(*ms: FpMatrix):
    if len({m.p for m in ms}) != 1:
        raise ValueError("matrices over different prime fields")


def fp_mul(a: FpMatrix, b: FpMatrix) -> FpMatrix:
    _check_same_field(a, b)
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.rows}x{a.cols} times {b.rows}x{b.cols}")
    p = a.p
    bt = list(zip(*b.entries)) if b.rows else [()] * b.cols
    return FpMatrix(p, a.rows, b.cols,
                    tuple(tuple(sum(x * y for x, y in zip(r, c)) % p for c in bt) for r in a.entries))


def fp_rref(m: FpMatrix) -> Tuple[List[List[int]], List[int]]:
    """Reduced row echelon form and pivot columns."""
    p = m.p
    a = [list(r) for r in m.entries]
    pivots: List[int] = []
    row = 0
    for col in range(m.cols):
        pr = next((i for i in range(row, m.rows) if a[i][col]), None)
        if pr is None:
            continue
        a[row], a[pr] = a[pr], a[row]
        inv = pow(a[row][col], -1, p)
        a[row] = [x * inv % p for x in a[row]]
        for i in range(m.rows):
            if i != row and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
        if row == m.rows:
            break
    return a, pivots


def fp_rank(m: FpMatrix) -> int:
    return len(fp_rref(m)[1])


def fp_kernel(m: FpMatrix) -> FpMatrix:
    """Basis of the right kernel, as the columns of the returned matrix."""
    p = m.p
    red, pivots = fp_rref(m)
    free = [j for j in range(m.cols) if j not in pivots]
    basis = []
    for fcol in free:
        v = [0] * m.cols
        v[fcol] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-red[r][fcol]) % p
        basis.append(v)
    if not basis:
        return FpMatrix(p, m.cols, 0, tuple(() for _ in range(m.cols)))
    return FpMatrix.from_columns(p, basis, m.cols)


def fp_solve(m: FpMatrix, b: Sequence[int]):
    """One solution x of m x = b, or None when the system is inconsistent."""
    if len(b) != m.rows:
        raise ValueError("dimension mismatch")
    p = m.p
    aug = FpMatrix.from_rows(p, [list(r) + [b[i]] for i, r in enumerate(m.entries)])
    red, pivots = fp_rref(aug)
    if m.cols in pivots:
        return None
    x = [0] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][m.cols]
    return tuple(x)


def fp_is_isomorphism(m: FpMatrix) -> bool:
    return m.rows == m.cols and fp_rank(m) == m.rows


def fp_linalg(op: str, *matrices, **kw):
    """Dispatch ``op`` in {mul, rank, kernel, solve, is_isomorphism}."""
    if op == "mul":
        return fp_mul(*matrices)
    if op == "rank":
        return fp_rank(*matrices)
    if op == "kernel":
        return fp_kernel(*matrices)
    if op == "solve":
        return fp_solve(*matrices, **kw)
    if op == "is_isomorphism":
        return fp_is_isomorphism(*matrices)
    raise ValueError(f"unknown linear algebra operation {op!r}")


# ---------------------------------------------------------------------------
# exact rank over the rationals (sparse rows)


def rational_rank(rows: Iterable[Mapping[object, object]]) -> int:
    """Rank of a sparse matrix given as dicts column -> rational entry."""
    return len(RationalEchelon(rows).pivots)


class RationalEchelon:
    """Incremental sparse echelon form over the rationals."""

    def __init__(self, rows: Iterable[Mapping[object, object]] = ()):
        self.pivots: Dict[object, Dict[object, object]] = {}
        self._order: Dict[object, int] = {}
        for r in rows:
            self.add(r)

    def _rank_of(self, col):
        o = self._order.get(col)
        if o is None:
            o = len(self._order)
            self._order[col] = o
        return o

    def reduce(self, row: Mapping[object, object]) -> Dict[object, object]:
        r = {c: mpq(v) for c, v in row.items() if v}
        # pivot rows are kept fully reduced, so one pass suffices
        for c in [c for c in r if c in self.pivots]:
            f = r[c]
            for k, v in self.pivots[c].items():
                s = r.get(k, 0) - f * v
                if s:
                    r[k] = s
                else:
                    r.pop(k, None)
        return r

    def add(self, row: Mapping[object, object]) -> bool:
        """Insert ``row``; return True when it increased the rank."""
        r = self.reduce(row)
        if not r:
            return False
        col = min(r, key=self._rank_of)
        inv = 1 / r[col]
        r = {k: v * inv for k, v in r.items()}
        # keep existing pivot rows free of the new pivot column
        for c, prow in self.pivots.items():
            f = prow.get(col)
            if f:
                for k, v in r.items():
                    s = prow.get(k, 0) - f * v
                    if s:
                        prow[k] = s
                    else:
                        prow.pop(k, None)
        self.pivots[col] = r
        return True

    def contains(self, row: Mapping[object, object]) -> bool:
        return not self.reduce(row)
