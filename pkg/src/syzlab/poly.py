"""Exact multivariate polynomials over prime fields, ordered by degrevlex.

Two layers live here.  The raw layer works on plain dicts mapping exponent
tuples to coefficients in ``range(1, p)``; every hot path in the package uses
it.  :class:`Polynomial` wraps a raw dict with its field and variable count and
is what user-facing code and the CLI hand around.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

DEFAULT_PRIME = 32003
# p**2 must fit in a signed 64-bit accumulator in the compiled kernel.
MAX_PRIME = 2**31 - 1
MAX_EXPONENT = 2**31 - 1

Mono = tuple  # tuple[int, ...]
RawPoly = dict  # dict[Mono, int]


class PolynomialError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: F_p for a prime p (0 would mean the rationals)."""

    characteristic: int = DEFAULT_PRIME

    def __post_init__(self):
        p = self.characteristic
        if p == 0:
            raise PolynomialError(
                "characteristic 0 is not supported; use a large prime such as 32003")
        if not is_prime(p):
            raise PolynomialError(f"characteristic {p} is not prime")
        if p > MAX_PRIME:
            raise PolynomialError(f"prime {p} exceeds the supported bound {MAX_PRIME}")

    @property
    def p(self) -> int:
        return self.characteristic


# ---------------------------------------------------------------- monomials

def mono_degree(m: Mono) -> int:
    return sum(m)


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Mono, b: Mono) -> Mono:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(b: Mono, a: Mono) -> bool:
    for x, y in zip(b, a):
        if x > y:
            return False
    return True


def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_gcd(a: Mono, b: Mono) -> Mono:
    return tuple(x if x < y else y for x, y in zip(a, b))


def desc_key(m: Mono):
    """Sort key under which ascending order means descending degrevlex."""
    return (-sum(m), m[::-1])


def monomial_compare(a: Sequence[int], b: Sequence[int]) -> int:
    """Compare two exponent vectors in degrevlex; returns -1, 0 or 1."""
    if len(a) != len(b):
        raise PolynomialError(f"monomials of different lengths {len(a)} and {len(b)}")
    da, db = sum(a), sum(b)
    if da != db:
        return 1 if da > db else -1
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            # smaller exponent in the last differing variable is larger
            return 1 if x < y else -1
    return 0


def check_exponents(m: Mono) -> Mono:
    for e in m:
        if e < 0 or e > MAX_EXPONENT:
            raise OverflowError(f"exponent {e} outside the machine-width bound")
    return m


# ---------------------------------------------------------------- raw polys

def padd(f: RawPoly, g: RawPoly, p: int) -> RawPoly:
    h = dict(f)
    for m, c in g.items():
        v = (h.get(m, 0) + c) % p
        if v:
            h[m] = v
        else:
            h.pop(m, None)
    return h


def psub(f: RawPoly, g: RawPoly, p: int) -> RawPoly:
    h = dict(f)
    for m, c in g.items():
        v = (h.get(m, 0) - c) % p
        if v:
            h[m] = v
        else:
            h.pop(m, None)
    return h


def pscale(f: RawPoly, c: int, p: int) -> RawPoly:
    c %= p
    if not c:
        return {}
    return {m: (v * c) % p for m, v in f.items()}


def pmul(f: RawPoly, g: RawPoly, p: int) -> RawPoly:
    h: dict = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            v = (h.get(m, 0) + c1 * c2) % p
            if v:
                h[m] = v
            else:
                h.pop(m, None)
    return h


def pmul_term(f: RawPoly, mono: Mono, c: int, p: int) -> RawPoly:
    return {tuple(x + y for x, y in zip(m, mono)): (v * c) % p for m, v in f.items()}


def plead(f: RawPoly) -> Mono:
    return min(f, key=desc_key)


def psorted(f: RawPoly) -> list:
    return sorted(f.items(), key=lambda t: desc_key(t[0]))


def is_homogeneous_raw(f: RawPoly) -> bool:
    return len({sum(m) for m in f}) <= 1


def pnormal_form(f: RawPoly, gb: Sequence[RawPoly], p: int) -> RawPoly:
    """Full normal form of ``f`` modulo a (monic) Groebner basis of an ideal."""
    if not gb or not f:
        return dict(f)
    leads = [plead(g) for g in gb]
    f = dict(f)
    rem: dict = {}
    while f:
        m = min(f, key=desc_key)
        c = f[m]
        for g, lm in zip(gb, leads):
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                for gm, gc in g.items():
                    t = tuple(x + y for x, y in zip(gm, q))
                    v = (f.get(t, 0) - c * gc) % p
                    if v:
                        f[t] = v
                    else:
                        f.pop(t, None)
                break
        else:
            rem[m] = c
            del f[m]
    return rem


# ---------------------------------------------------------------- wrapper

class Polynomial:
    """An immutable polynomial in ``nvars`` variables over F_p."""

    __slots__ = ("nvars", "p", "_terms")

    def __init__(self, nvars: int, p: int, terms: Mapping[Mono, int] | None = None):
        self.nvars = nvars
        self.p = p
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != nvars:
                raise PolynomialError(f"monomial {m} does not have {nvars} exponents")
            check_exponents(m)
            c %= p
            if c:
                clean[m] = (clean.get(m, 0) + c) % p
                if not clean[m]:
                    del clean[m]
        self._terms = dict(sorted(clean.items(), key=lambda t: desc_key(t[0])))

    @classmethod
    def _wrap(cls, nvars: int, p: int, raw: RawPoly) -> "Polynomial":
        obj = cls.__new__(cls)
        obj.nvars, obj.p = nvars, p
        obj._terms = dict(sorted(raw.items(), key=lambda t: desc_key(t[0])))
        return obj

    @classmethod
    def constant(cls, nvars: int, p: int, c: int) -> "Polynomial":
        return cls(nvars, p, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, p: int, i: int) -> "Polynomial":
        return cls(nvars, p, {tuple(int(j == i) for j in range(nvars)): 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def raw(self) -> RawPoly:
        return dict(self._terms)

    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other).__name__}")
        if other.nvars != self.nvars:
            raise PolynomialError(
                f"variable count mismatch: {self.nvars} vs {other.nvars}")
        if other.p != self.p:
            raise PolynomialError(f"field mismatch: F_{self.p} vs F_{other.p}")

    def __add__(self, other):
        self._check(other)
        return Polynomial._wrap(self.nvars, self.p, padd(self._terms, other._terms, self.p))

    def __sub__(self, other):
        self._check(other)
        return Polynomial._wrap(self.nvars, self.p, psub(self._terms, other._terms, self.p))

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        return Polynomial._wrap(self.nvars, self.p, pmul(self._terms, other._terms, self.p))

    __rmul__ = __mul__

    def scale(self, c: int) -> "Polynomial":
        return Polynomial._wrap(self.nvars, self.p, pscale(self._terms, c, self.p))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.nvars, self.p, self._terms) == (other.nvars, other.p, other._terms)

    def __hash__(self):
        return hash((self.nvars, self.p, tuple(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_homogeneous(self) -> bool:
        return is_homogeneous_raw(self._terms)

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def lead(self) -> Mono:
        return next(iter(self._terms))

    def to_string(self, names: Sequence[str]) -> str:
        return format_poly(self._terms, names, self.p)

    def __repr__(self):
        names = [f"x{i}" for i in range(self.nvars)]
        return f"Polynomial({self.to_string(names)!r} over F_{self.p})"


def poly_arithmetic(f: Polynomial, g: Polynomial | int, op: str) -> Polynomial:
    """Apply ``op`` in {"add", "mul", "scale"}; for scale ``g`` is an integer."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(int(g))
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------- text I/O

def _signed(c: int, p: int) -> int:
    return c - p if c > p // 2 else c


def format_mono(m: Mono, names: Sequence[str]) -> str:
    parts = []
    for e, name in zip(m, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: RawPoly, names: Sequence[str], p: int) -> str:
    if not f:
        return "0"
    out = []
    for m, c in psorted(f):
        c = _signed(c, p)
        ms = format_mono(m, names)
        mag = abs(c)
        if ms:
            body = ms if mag == 1 else f"{mag}*{ms}"
        else:
            body = str(mag)
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def parse_poly(text: str, names: Sequence[str], p: int) -> RawPoly:
    """Parse ``3*x^2*y - y^3 + 1`` style text into a raw polynomial."""
    index = {n: i for i, n in enumerate(names)}
    nv = len(names)
    try:
        tree = ast.parse(text.replace("^", "**").strip() or "0", mode="eval")
    except SyntaxError as exc:
        raise PolynomialError(f"cannot parse polynomial {text!r}: {exc.msg}") from None

    def walk(node) -> RawPoly:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) \
                and not isinstance(node.value, bool):
            c = node.value % p
            return {(0,) * nv: c} if c else {}
        if isinstance(node, ast.Name):
            if node.id not in index:
                raise PolynomialError(f"unknown variable {node.id!r} in {text!r}")
            return {tuple(int(j == index[node.id]) for j in range(nv)): 1}
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            f = walk(node.operand)
            return pscale(f, -1, p) if isinstance(node.op, ast.USub) else f
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)
                        and node.right.value >= 0):
                    raise PolynomialError(f"exponent must be a non-negative integer in {text!r}")
                base = walk(node.left)
                out = {(0,) * nv: 1}
                for _ in range(node.right.value):
                    out = pmul(out, base, p)
                return out
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return padd(left, right, p)
            if isinstance(node.op, ast.Sub):
                return psub(left, right, p)
            if isinstance(node.op, ast.Mult):
                return pmul(left, right, p)
        raise PolynomialError(f"unsupported syntax in polynomial {text!r}")

    return walk(tree)


def make_poly(text: str, names: Sequence[str], p: int = DEFAULT_PRIME) -> Polynomial:
    return Polynomial._wrap(len(names), p, parse_poly(text, names, p))


def monomials_of_degree(nvars: int, d: int) -> Iterable[Mono]:
    """All exponent vectors of total degree ``d``, in descending degrevlex."""
    if d < 0:
        return []
    out = []

    def rec(prefix, left, k):
        if k == nvars - 1:
            out.append(prefix + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), left - e, k + 1)

    if nvars == 0:
        return [()] if d == 0 else []
    rec((), d, 0)
    out.sort(key=desc_key)
    return out
