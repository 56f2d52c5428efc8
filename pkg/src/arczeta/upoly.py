"""Exact arithmetic in Z[u].

Every invariant computed by this package is an integer polynomial in a
single formal variable ``u``.  The representation is a sparse mapping
``exponent -> nonzero coefficient``; Python integers are arbitrary
precision, so arithmetic can never overflow silently.

Division is deliberately not implemented: all quotient-shaped
expressions are built with :func:`geom_sum`.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping

__all__ = ["UPoly", "geom_sum", "u_pow", "U", "ONE", "ZERO", "NEG_INFINITY"]

NEG_INFINITY = float("-inf")


class UPoly:
    """An immutable polynomial in u with integer coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for exp, coef in items:
            if exp < 0:
                raise ValueError(f"negative exponent {exp}")
            if not isinstance(exp, int) or not isinstance(coef, int):
                raise TypeError("exponents and coefficients must be int")
            if coef:
                c[exp] = c.get(exp, 0) + coef
                if not c[exp]:
                    del c[exp]
        object.__setattr__(self, "_c", c)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("UPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> UPoly:
        return _ZERO

    @classmethod
    def one(cls) -> UPoly:
        return _ONE

    @classmethod
    def const(cls, n: int) -> UPoly:
        return cls({0: n})

    @classmethod
    def monomial(cls, coef: int, exp: int) -> UPoly:
        return cls({exp: coef})

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int | float:
        """Largest stored exponent; −∞ for the zero polynomial."""
        return max(self._c) if self._c else NEG_INFINITY

    def is_zero(self) -> bool:
        return not self._c

    def coeff(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._c.items()))

    # -- ring operations -----------------------------------------------

    def __add__(self, other: UPoly | int) -> UPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for exp, coef in other._c.items():
            s = c.get(exp, 0) + coef
            if s:
                c[exp] = s
            elif exp in c:
                del c[exp]
        return _raw(c)

    __radd__ = __add__

    def __neg__(self) -> UPoly:
        return _raw({e: -k for e, k in self._c.items()})

    def __sub__(self, other: UPoly | int) -> UPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: UPoly | int) -> UPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: UPoly | int) -> UPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c: dict[int, int] = {}
        for e1, k1 in self._c.items():
            for e2, k2 in other._c.items():
                e = e1 + e2
                s = c.get(e, 0) + k1 * k2
                if s:
                    c[e] = s
                elif e in c:
                    del c[e]
        return _raw(c)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> UPoly:
        if n < 0:
            raise ValueError("negative power")
        result = _ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = UPoly.const(other)
        if not isinstance(other, UPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __bool__(self) -> bool:
        return bool(self._c)

    # -- evaluation ------------------------------------------------------

    def eval_at(self, x: int) -> int:
        """Evaluate at an integer point (a ring homomorphism Z[u] -> Z)."""
        total = 0
        for exp, coef in self._c.items():
            total += coef * x**exp
        return total

    # -- rendering / parsing ----------------------------------------------

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts: list[str] = []
        for exp in sorted(self._c, reverse=True):
            coef = self._c[exp]
            mag = abs(coef)
            if exp == 0:
                body = str(mag)
            else:
                upart = "u" if exp == 1 else f"u^{exp}"
                body = upart if mag == 1 else f"{mag}*{upart}"
            if not parts:
                parts.append(body if coef > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if coef > 0 else f" - {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"UPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> UPoly:
        """Parse the canonical rendering (and benign whitespace variants)."""
        s = text.strip()
        if not s:
            raise ValueError("empty polynomial text")
        pos = 0
        coeffs: dict[int, int] = {}
        first = True
        n = len(s)
        while pos < n:
            # sign
            sign = 1
            while pos < n and s[pos] in " \t":
                pos += 1
            if pos < n and s[pos] in "+-":
                sign = -1 if s[pos] == "-" else 1
                pos += 1
                while pos < n and s[pos] in " \t":
                    pos += 1
            elif not first:
                raise ValueError(f"expected '+' or '-' at position {pos} in {text!r}")
            if pos >= n:
                raise ValueError(f"dangling sign at position {pos} in {text!r}")
            m = re.match(r"(\d+)", s[pos:])
            mag: int | None = None
            if m:
                mag = int(m.group(1))
                pos += m.end()
                while pos < n and s[pos] in " \t":
                    pos += 1
                if pos < n and s[pos] == "*":
                    pos += 1
                    while pos < n and s[pos] in " \t":
                        pos += 1
                    if pos >= n or s[pos] != "u":
                        raise ValueError(f"expected 'u' at position {pos} in {text!r}")
            if pos < n and s[pos] == "u":
                pos += 1
                exp = 1
                if pos < n and s[pos] == "^":
                    pos += 1
                    m = re.match(r"(\d+)", s[pos:])
                    if not m:
                        raise ValueError(f"expected exponent at position {pos} in {text!r}")
                    exp = int(m.group(1))
                    pos += m.end()
                coef = sign * (1 if mag is None else mag)
            else:
                if mag is None:
                    raise ValueError(f"expected term at position {pos} in {text!r}")
                exp, coef = 0, sign * mag
            coeffs[exp] = coeffs.get(exp, 0) + coef
            first = False
            while pos < n and s[pos] in " \t":
                pos += 1
        return cls(coeffs)


def _raw(c: dict[int, int]) -> UPoly:
    p = UPoly.__new__(UPoly)
    object.__setattr__(p, "_c", c)
    return p


def _coerce(x: UPoly | int) -> UPoly:
    if isinstance(x, UPoly):
        return x
    if isinstance(x, int):
        return UPoly.const(x)
    return NotImplemented  # type: ignore[return-value]


_ZERO = _raw({})
_ONE = _raw({0: 1})

ZERO = _ZERO
ONE = _ONE
U = _raw({1: 1})


def u_pow(k: int) -> UPoly:
    """The monomial u^k."""
    return UPoly.monomial(1, k)


def geom_sum(step: int, terms: int) -> UPoly:
    """Sum_{s=0}^{terms-1} u^{s*step}, the division-free geometric sum.

    geom_sum(0, m) is the constant m; geom_sum(k, 0) is 0.
    """
    if step < 0 or terms < 0:
        raise ValueError("step and terms must be non-negative")
    c: dict[int, int] = {}
    for s in range(terms):
        e = s * step
        c[e] = c.get(e, 0) + 1
    return UPoly(c)
