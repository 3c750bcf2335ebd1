"""A small expression language for modules on the command line.

Grammar (``+`` is direct sum)::

    expr  := term ('+' term)*
    term  := 'R' ['^' int] ['/(' polys ')'] | 'k' | 'omega' | '(' polys ')'
           | 'syz(' int ',' expr ')' | 'img(' ints [';' 'kill=' ints] ')'
           | '@' path

``(f, g)`` is the ideal generated by f and g viewed as a module, ``R/(f, g)``
the cyclic quotient, ``img(1, 1; kill=0)`` the quotient of
Omega_1(k) + Omega_1(k) by its first generator.  Terms built only from ``k``,
``syz(n, k)`` and ``img`` remember their syzygy-image provenance so the
criteria can check their hypotheses.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from syzlab.criteria import syzygy_image_builder
from syzlab.groebner import ideal_module, image_module
from syzlab.homology import subquotient
from syzlab.invariants import canonical_module
from syzlab.poly import PolynomialError
from syzlab.resolve import syzygy_module
from syzlab.rings import (
    GradedRing,
    PresentedModule,
    RingError,
    cyclic_module,
    direct_sum,
    free_module,
    module_from_matrix,
    residue_field,
)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"-?\d+")


class ExprError(RingError):
    pass


@dataclass
class ModuleTerm:
    module: PresentedModule
    text: str
    image_spec: list | None = None      # [(n, multiplicity), ...] when a syzygy image of k
    kill: tuple = ()
    elements: tuple = ()

    def syzygy_image(self):
        if self.image_spec is None:
            return None
        return syzygy_image_builder(self.module.ring, self.image_spec, self.kill, self.elements)


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ExprError(f"expected a list of integers, got {text!r}") from None


def _polys(ring: GradedRing, text: str) -> list[dict]:
    out = []
    for part in _split_top(text, ","):
        if not part.strip():
            raise ExprError("empty polynomial in list")
        try:
            out.append(ring.poly(part))
        except PolynomialError as exc:
            raise ExprError(str(exc)) from None
    return out


class _Parser:
    def __init__(self, ring: GradedRing, text: str, base: Path | None):
        self.ring = ring
        self.text = text
        self.pos = 0
        self.base = base

    def error(self, msg):
        raise ExprError(f"{msg} at position {self.pos} in {self.text!r}")

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.ws()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        if not self.peek(s):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def closing(self) -> int:
        """Index of the parenthesis closing the one just consumed."""
        depth = 1
        i = self.pos
        while i < len(self.text):
            if self.text[i] == "(":
                depth += 1
            elif self.text[i] == ")":
                depth -= 1
                if depth == 0:
                    return i
            i += 1
        self.error("unbalanced parenthesis")

    def integer(self) -> int:
        self.ws()
        m = _INT.match(self.text, self.pos)
        if not m:
            self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def expr(self) -> ModuleTerm:
        start = self.pos
        terms = [self.term()]
        while self.peek("+"):
            self.pos += 1
            terms.append(self.term())
        if len(terms) == 1:
            return terms[0]
        spec = None
        if all(t.image_spec is not None and not t.kill and not t.elements for t in terms):
            spec = [s for t in terms for s in t.image_spec]
        M = direct_sum(*(t.module for t in terms))
        return ModuleTerm(M, self.text[start:self.pos].strip(), spec)

    def term(self) -> ModuleTerm:
        self.ws()
        start = self.pos
        if self.peek("@"):
            self.pos += 1
            end = self.text.find("+", self.pos)
            end = len(self.text) if end < 0 else end
            path = Path(self.text[self.pos:end].strip())
            self.pos = end
            if self.base is not None and not path.is_absolute():
                path = self.base / path
            return load_module_file(self.ring, path)
        if self.peek("("):
            self.pos += 1
            close = self.closing()
            gens = _polys(self.ring, self.text[self.pos:close])
            self.pos = close + 1
            return ModuleTerm(ideal_module(gens, self.ring), self.text[start:self.pos])
        m = _IDENT.match(self.text, self.pos)
        if not m:
            self.error("expected a module term")
        word = m.group()
        self.pos = m.end()
        R = self.ring
        if word == "k":
            return ModuleTerm(residue_field(R), "k", [(0, 1)])
        if word == "omega":
            return ModuleTerm(canonical_module(R), "omega")
        if word == "R":
            rank = 1
            if self.peek("^"):
                self.pos += 1
                rank = self.integer()
                if rank < 0:
                    self.error("negative rank")
            if self.peek("/("):
                self.pos += 2
                close = self.closing()
                gens = _polys(R, self.text[self.pos:close])
                self.pos = close + 1
                M = cyclic_module(R, gens)
                if rank != 1:
                    M = direct_sum(*[M] * rank) if rank else free_module(R, 0)
                return ModuleTerm(M, self.text[start:self.pos])
            return ModuleTerm(free_module(R, rank), self.text[start:self.pos])
        if word == "syz":
            self.expect("(")
            n = self.integer()
            if n < 0:
                self.error("syzygy index must be non-negative")
            self.expect(",")
            inner = self.expr()
            self.expect(")")
            spec = None
            if inner.image_spec == [(0, 1)]:
                spec = [(n, 1)]
            return ModuleTerm(syzygy_module(inner.module, n), self.text[start:self.pos], spec)
        if word == "img":
            self.expect("(")
            close = self.closing()
            body = self.text[self.pos:close]
            self.pos = close + 1
            parts = body.split(";")
            ns = _ints(parts[0])
            if not ns or any(n < 0 for n in ns):
                self.error("img needs non-negative syzygy indices")
            kill: list[int] = []
            for extra in parts[1:]:
                key, _, val = extra.partition("=")
                if key.strip() != "kill":
                    self.error(f"unknown img option {key.strip()!r}")
                kill.extend(_ints(val))
            spec = []
            for n in ns:
                if spec and spec[-1][0] == n:
                    spec[-1] = (n, spec[-1][1] + 1)
                else:
                    spec.append((n, 1))
            img = syzygy_image_builder(R, spec, kill)
            return ModuleTerm(img.module, self.text[start:self.pos], spec, tuple(kill))
        self.error(f"unknown module term {word!r}")


def parse_module(ring: GradedRing, text: str, base: Path | None = None) -> ModuleTerm:
    p = _Parser(ring, text, base)
    term = p.expr()
    p.ws()
    if p.pos != len(text):
        p.error("trailing input")
    return term


def load_module_file(ring: GradedRing, path: Path) -> ModuleTerm:
    """Read a module description: ``{"shifts", "relations"}`` (a cokernel),
    optionally with ``"generators"`` (a subquotient of the free module), or
    ``{"syzygyImage": {"spec", "kill", "elements"}}``."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ExprError(f"cannot read module file {path}: {exc}") from None
    return module_from_description(ring, data, str(path))


def module_from_description(ring: GradedRing, data: dict, label: str = "module") -> ModuleTerm:
    if not isinstance(data, dict):
        raise ExprError("module description must be a JSON object")
    if "syzygyImage" in data:
        extra = set(data) - {"syzygyImage"}
        if extra:
            raise ExprError(f"unknown module fields: {sorted(extra)}")
        si = data["syzygyImage"]
        unknown = set(si) - {"spec", "kill", "elements"}
        if unknown:
            raise ExprError(f"unknown syzygyImage fields: {sorted(unknown)}")
        spec = [tuple(int(a) for a in s) for s in si.get("spec", [])]
        kill = tuple(int(c) for c in si.get("kill", []))
        elements = tuple(_column(ring, col) for col in si.get("elements", []))
        img = syzygy_image_builder(ring, spec, kill, elements)
        return ModuleTerm(img.module, label, spec, kill, elements)
    unknown = set(data) - {"shifts", "relations", "generators"}
    if unknown:
        raise ExprError(f"unknown module fields: {sorted(unknown)}")
    shifts = [int(s) for s in data.get("shifts", [])]
    try:
        rels = [_column(ring, col) for col in data.get("relations", [])]
        for col in data.get("relations", []):
            if len(col) != len(shifts):
                raise ExprError("relation column length does not match the shifts")
        if "generators" in data:
            gens = [_column(ring, col) for col in data["generators"]]
            if any(len(col) != len(shifts) for col in data["generators"]):
                raise ExprError("generator length does not match the shifts")
            if rels:
                M, _ = subquotient(ring, shifts, gens, rels)
            else:
                M = image_module(gens, shifts, ring)
        else:
            M = module_from_matrix(ring, shifts, data.get("relations", []))
    except PolynomialError as exc:
        raise ExprError(str(exc)) from None
    return ModuleTerm(M, label)


def _column(ring: GradedRing, col) -> dict:
    v = {}
    for c, f in enumerate(col):
        for m, x in ring.poly(f).items():
            v[(c, m)] = x
    return v


def describe_module(M: PresentedModule) -> dict:
    """JSON description that re-parses through :func:`module_from_description`."""
    return M.describe()

