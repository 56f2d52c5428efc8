"""Germ normal forms, canonical representatives, and zeta tables.

A :class:`GermSpec` names one germ from the supported families —
corank-1 chains, the corank-2 D/E families, the auxiliary cube and
``x1*x2^2`` models, the bare quadratic form, and the nonsimple ``J``
instances — together with a quadratic suspension signature (p, q).

Tables are assembled from two independent paths: closed formulas where
covered, and the stratification engine (the oracle) everywhere.  The
hybrid source cross-checks the two and treats disagreement as a hard
error; cells with neither path are explicitly unavailable.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

from .engine import EngineOutcome, beta_of
from .formulas import (
    OutOfCoverage,
    arc_Ak,
    arc_cube,
    arc_Dk,
    arc_E,
    arc_G,
    arc_order2,
    arc_Q_naive,
    arc_Q_signed,
)
from .mpoly import MPoly
from .quadric import Sig
from .upoly import UPoly

__all__ = [
    "FAMILIES",
    "CHANNELS",
    "GermSpec",
    "CrossCheckError",
    "germ_poly",
    "apply_signed_permutation",
    "canonicalize",
    "analytic_equiv",
    "formula_cell",
    "oracle_cell",
    "Cell",
    "ZetaTable",
    "zeta_table",
    "corank_index",
]

FAMILIES = ("Q", "AK", "DK", "E6", "E7", "E8", "CUBE", "G", "JKI")
CHANNELS = ("plus", "minus", "naive")
_SIMPLE = frozenset({"AK", "DK", "E6", "E7", "E8"})
_TARGETS = {"plus": 1, "minus": -1, "naive": "naive"}

_SIGNED = frozenset({1, -1})


def _fmt_sign(s: int) -> str:
    return "+" if s == 1 else "-"


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class GermSpec:
    """One germ: family data plus the quadratic suspension Q_{p,q}."""

    family: str
    sig: Sig
    k: int | None = None
    i: int | None = None
    signs: tuple[int, ...] = ()
    params: tuple[tuple[str, Fraction], ...] = ()

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        p, q = self.sig
        if p < 0 or q < 0:
            raise ValueError(f"signature entries must be >= 0, got {self.sig}")
        fam = self.family
        if fam == "AK":
            if self.k is None or self.k < 2:
                raise ValueError(f"A-family needs k >= 2, got {self.k}")
            if len(self.signs) != 1 or self.signs[0] not in _SIGNED:
                raise ValueError("A-family needs one sign")
            if self.i is not None:
                raise ValueError("A-family takes no i")
        elif fam == "DK":
            if self.k is None or self.k < 4:
                raise ValueError(f"D-family needs k >= 4, got {self.k}")
            if len(self.signs) != 2 or any(s not in _SIGNED for s in self.signs):
                raise ValueError("D-family needs two signs")
            if self.i is not None:
                raise ValueError("D-family takes no i")
        elif fam == "E6":
            if len(self.signs) != 1 or self.signs[0] not in _SIGNED:
                raise ValueError("E6 needs one sign")
            if self.k is not None or self.i is not None:
                raise ValueError("E6 takes no k or i")
        elif fam == "JKI":
            if self.k is None or self.k < 2:
                raise ValueError(f"J-family needs k >= 2, got {self.k}")
            if self.i is None or self.i < 0:
                raise ValueError(f"J-family needs i >= 0, got {self.i}")
            object.__setattr__(
                self, "params", _normalize_jki(self.k, self.i, dict(self.params))
            )
        else:
            if self.k is not None or self.i is not None or self.signs:
                raise ValueError(f"family {fam} takes no parameters")
        if fam != "JKI" and self.params:
            raise ValueError(f"family {fam} takes no coefficient parameters")

    # -- derived data ---------------------------------------------------

    @property
    def d(self) -> int:
        p, q = self.sig
        if self.family == "Q":
            return p + q
        if self.family == "AK":
            return p + q + 1
        return p + q + 2

    @property
    def corank(self) -> int:
        return self.d - sum(self.sig)

    @property
    def is_simple(self) -> bool:
        return self.family in _SIMPLE

    def param(self, name: str, default: Fraction | int = 0) -> Fraction:
        for n, v in self.params:
            if n == name:
                return v
        return Fraction(default)

    def render(self) -> str:
        p, q = self.sig
        suffix = f" (+) Q({p},{q})"
        fam = self.family
        if fam == "AK":
            if self.k % 2 == 0 and self.signs[0] == 1:
                return f"A({self.k}){suffix}"
            return f"A({self.k},{_fmt_sign(self.signs[0])}){suffix}"
        if fam == "DK":
            e1, e2 = self.signs
            return f"D({self.k},{_fmt_sign(e1)},{_fmt_sign(e2)}){suffix}"
        if fam == "E6":
            return f"E6({_fmt_sign(self.signs[0])}){suffix}"
        if fam == "JKI":
            inner = f"{self.k},{self.i}"
            if self.params:
                body = ", ".join(f"{n}={_fmt_coeff(v)}" for n, v in self.params)
                inner += f"; {body}"
            return f"J({inner}){suffix}"
        return f"{fam}{suffix}"


def _normalize_jki(
    k: int, i: int, given: dict[str, Fraction]
) -> tuple[tuple[str, Fraction], ...]:
    """Materialize defaults and validate the J-family moduli."""
    out: dict[str, Fraction] = {}
    known: set[str]
    if i == 0:
        known = {"b", "c"} | {f"a{m}" for m in range(0, k)}
        b = Fraction(given.get("b", 1))
        if 4 * b**3 + 27 == 0:
            raise ValueError("J(k,0) requires 4b^3+27 != 0")
        c = Fraction(given.get("c", 1))
        if c == 0:
            raise ValueError("J(k,0) requires a nonzero x2^(3k) coefficient")
        out["b"] = b
        out["c"] = c
        for m in range(0, k):
            a = Fraction(given.get(f"a{m}", 0))
            if a:
                if k == 2:
                    raise ValueError("J(2,0) has no free A-coefficients")
                out[f"a{m}"] = a
    else:
        known = {"s", "a0"} | {f"a{m}" for m in range(1, k + 1)}
        s = Fraction(given.get("s", 1))
        if s not in (1, -1):
            raise ValueError("J(k,i) sign parameter s must be +1 or -1")
        a0 = Fraction(given.get("a0", 1))
        if a0 == 0:
            raise ValueError("J(k,i) with i > 0 requires a0 != 0")
        out["s"] = s
        out["a0"] = a0
        for m in range(1, k + 1):
            a = Fraction(given.get(f"a{m}", 0))
            if a:
                out[f"a{m}"] = a
    unknown = set(given) - known
    if unknown:
        raise ValueError(f"unknown J-family parameters: {sorted(unknown)}")
    return tuple(sorted(out.items()))


# ---------------------------------------------------------------------------
# Polynomial models
# ---------------------------------------------------------------------------


def _suspension(first_y: int, sig: Sig) -> MPoly:
    p, q = sig
    poly = MPoly.zero()
    for idx in range(p):
        poly = poly + MPoly.var(first_y + idx, 2)
    for idx in range(q):
        poly = poly - MPoly.var(first_y + p + idx, 2)
    return poly


def germ_poly(g: GermSpec) -> tuple[MPoly, tuple[str, ...]]:
    """The germ as a polynomial in ambient variables, with block labels."""
    p, q = g.sig
    r = p + q
    fam = g.family
    if fam == "Q":
        return _suspension(0, g.sig), ("c",) * r
    if fam == "AK":
        poly = MPoly.var(0, g.k + 1) * g.signs[0] + _suspension(1, g.sig)
        return poly, ("a",) + ("c",) * r
    blocks = ("a", "b") + ("c",) * r
    susp = _suspension(2, g.sig)
    if fam == "DK":
        e1, e2 = g.signs
        poly = MPoly.var(0) * MPoly.var(1, 2) * e1 + MPoly.var(0, g.k - 1) * e2
    elif fam == "E6":
        poly = MPoly.var(0, 3) + MPoly.var(1, 4) * g.signs[0]
    elif fam == "E7":
        poly = MPoly.var(0, 3) + MPoly.var(0) * MPoly.var(1, 3)
    elif fam == "E8":
        poly = MPoly.var(0, 3) + MPoly.var(1, 5)
    elif fam == "CUBE":
        poly = MPoly.var(0, 3)
    elif fam == "G":
        poly = MPoly.var(0) * MPoly.var(1, 2)
    elif fam == "JKI":
        k, i = g.k, g.i
        if i == 0:
            poly = (
                MPoly.var(0, 3)
                + MPoly.var(0, 2) * MPoly.var(1, k) * g.param("b")
                + MPoly.var(1, 3 * k) * g.param("c")
            )
            tail = MPoly.zero()
            for m in range(0, k):
                a = g.param(f"a{m}")
                if a:
                    tail = tail + MPoly.var(1, 2 * k + 1 + m) * a
            if not tail.is_zero():
                poly = poly + MPoly.var(0) * tail
        else:
            poly = MPoly.var(0, 3) + MPoly.var(0, 2) * MPoly.var(1, k) * g.param("s")
            acc = MPoly.zero()
            for m in range(0, k + 1):
                a = g.param(f"a{m}")
                if a:
                    exp = 3 * k + i + m
                    acc = acc + MPoly.var(1, exp) * a
            poly = poly + acc
    else:  # pragma: no cover - families enumerated above
        raise AssertionError(fam)
    return poly + susp, blocks


def apply_signed_permutation(
    poly: MPoly, blocks: tuple[str, ...], perm: list[int], flips: list[int]
) -> tuple[MPoly, tuple[str, ...]]:
    """Relabel ambient variable j to perm[j] and scale it by flips[j] = ±1."""
    d = len(blocks)
    if sorted(perm) != list(range(d)) or len(flips) != d:
        raise ValueError("perm must be a permutation of the ambient variables")
    if any(f not in (1, -1) for f in flips):
        raise ValueError("flips must be +1/-1")
    out = MPoly.zero()
    for mono, c in poly.terms():
        coeff = c
        parts = MPoly.const(1)
        for v, e in mono:
            coeff *= flips[v] ** e
            parts = parts * MPoly.var(perm[v], e)
        out = out + parts * coeff
    new_blocks = [""] * d
    for j in range(d):
        new_blocks[perm[j]] = blocks[j]
    return out, tuple(new_blocks)


# ---------------------------------------------------------------------------
# Canonical representatives
# ---------------------------------------------------------------------------


def canonicalize(g: GermSpec) -> GermSpec:
    """Canonical class representative under the family sign identities."""
    if g.family == "AK" and g.k % 2 == 0 and g.signs[0] == -1:
        return replace(g, signs=(1,))
    if g.family == "DK":
        e1, e2 = g.signs
        if g.k % 2 == 1:
            return replace(g, signs=(1, e2)) if e1 == -1 else g
        best = min(
            [(e1, e2), (-e1, -e2)],
            key=lambda t: tuple(0 if s == 1 else 1 for s in t),
        )
        return replace(g, signs=best) if best != (e1, e2) else g
    return g


def analytic_equiv(g1: GermSpec, g2: GermSpec) -> bool:
    """Same blow-Nash class under the family sign identities (simple only)."""
    for g in (g1, g2):
        if not g.is_simple:
            raise ValueError(
                f"analytic equivalence is classified only for simple germs, got {g.render()}"
            )
    return canonicalize(g1) == canonicalize(g2)


# ---------------------------------------------------------------------------
# Cell computation
# ---------------------------------------------------------------------------


class CrossCheckError(RuntimeError):
    """Formula and oracle disagree on a cell: a genuine defect somewhere."""

    def __init__(
        self, germ: GermSpec, n: int, channel: str, formula: UPoly, oracle: UPoly
    ) -> None:
        super().__init__(
            f"cell ({germ.render()}, n={n}, {channel}): formula {formula} "
            f"!= oracle {oracle}"
        )
        self.germ = germ
        self.n = n
        self.channel = channel
        self.formula = formula
        self.oracle = oracle


@lru_cache(maxsize=None)
def formula_cell(g: GermSpec, n: int, channel: str) -> UPoly:
    """Closed-form cell value; raises OutOfCoverage beyond the formulas."""
    t = _TARGETS[channel]
    fam = g.family
    if fam == "Q":
        if t == "naive":
            return arc_Q_naive(n, g.sig)
        return arc_Q_signed(n, t, g.sig)
    if fam == "AK":
        return arc_Ak(g.k, g.signs[0], n, t, g.sig)
    if fam == "DK":
        return arc_Dk(g.k, g.signs[0], g.signs[1], n, t, g.sig)
    if fam == "E6":
        return arc_E("E6+" if g.signs[0] == 1 else "E6-", n, t, g.sig)
    if fam in ("E7", "E8"):
        return arc_E(fam, n, t, g.sig)
    if fam == "CUBE":
        return arc_cube(n, t, g.sig)
    if fam == "G":
        return arc_G(n, t, g.sig)
    raise OutOfCoverage(f"no closed forms for family {fam}")


@lru_cache(maxsize=None)
def _oracle_cached(g: GermSpec, n: int, channel: str) -> EngineOutcome:
    poly, blocks = germ_poly(g)
    return beta_of(poly, blocks, n, _TARGETS[channel])


def oracle_cell(
    g: GermSpec,
    n: int,
    channel: str,
    budget: int | None = None,
    collect_trace: bool = False,
) -> EngineOutcome:
    """Engine-computed cell value (cached for default invocations)."""
    if budget is None and not collect_trace:
        return _oracle_cached(g, n, channel)
    poly, blocks = germ_poly(g)
    return beta_of(poly, blocks, n, _TARGETS[channel], budget=budget, collect_trace=collect_trace)


@dataclass(frozen=True)
class Cell:
    value: UPoly | None
    provenance: str  # "formula" | "oracle" | "unavailable"
    note: str = ""


def resolve_cell(g: GermSpec, n: int, channel: str, source: str) -> Cell:
    """One table cell under the requested source policy.

    ``formulas``: closed form or unavailable.  ``oracle``: engine or
    unavailable.  ``hybrid``: formula where covered (cross-checked
    against the oracle; disagreement raises), oracle elsewhere.
    ``auto``: formula where covered (unchecked), oracle elsewhere —
    the fast path used by classification scans.
    """
    if source == "formulas":
        try:
            return Cell(formula_cell(g, n, channel), "formula")
        except OutOfCoverage as oc:
            return Cell(None, "unavailable", str(oc))
    if source == "oracle":
        out = oracle_cell(g, n, channel)
        if out.ok:
            return Cell(out.value, "oracle")
        return Cell(None, "unavailable", f"{out.failure}: {out.detail}")
    if source not in ("hybrid", "auto"):
        raise ValueError(f"unknown source {source!r}")
    try:
        value = formula_cell(g, n, channel)
    except OutOfCoverage:
        out = oracle_cell(g, n, channel)
        if out.ok:
            return Cell(out.value, "oracle")
        return Cell(None, "unavailable", f"{out.failure}: {out.detail}")
    if source == "hybrid":
        out = oracle_cell(g, n, channel)
        if out.ok:
            if out.value != value:
                raise CrossCheckError(g, n, channel, value, out.value)
            return Cell(value, "formula", "oracle-checked")
        return Cell(value, "formula", f"cross-check unavailable ({out.failure})")
    return Cell(value, "formula")


# ---------------------------------------------------------------------------
# Zeta tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZetaTable:
    germ: GermSpec
    N: int
    source: str
    rows: tuple[tuple[int, dict[str, Cell]], ...]

    @property
    def d(self) -> int:
        return self.germ.d

    def cell(self, n: int, channel: str) -> Cell:
        for row_n, cells in self.rows:
            if row_n == n:
                return cells[channel]
        raise KeyError(f"no row n={n}")

    def unavailable(self) -> list[tuple[int, str]]:
        return [
            (n, ch)
            for n, cells in self.rows
            for ch in CHANNELS
            if cells[ch].provenance == "unavailable"
        ]

    def z_text(self, channel: str) -> str:
        """Zeta polynomial truncated at N, omitting unavailable cells."""
        parts = []
        skipped = []
        for n, cells in self.rows:
            cell = cells[channel]
            if cell.value is None:
                skipped.append(n)
            elif not cell.value.is_zero():
                parts.append(f"({cell.value})*T^{n}")
            else:
                continue
        body = " + ".join(parts) if parts else "0"
        note = f"   [no value at T^{','.join(map(str, skipped))}]" if skipped else ""
        return f"Z(T) = {body} + O(T^{self.N + 1}){note}"

    def to_json_dict(self) -> dict:
        rows = []
        for n, cells in self.rows:
            row: dict = {"n": n}
            prov = {}
            for ch in CHANNELS:
                cell = cells[ch]
                row[ch] = str(cell.value) if cell.value is not None else None
                prov[ch] = cell.provenance
                if cell.note:
                    prov[ch] += f" ({cell.note})"
            row["provenance"] = prov
            rows.append(row)
        return {
            "germ": self.germ.render(),
            "d": self.d,
            "N": self.N,
            "source": self.source,
            "rows": rows,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["germ", "d", "n", "channel", "value", "provenance"])
        label = self.germ.render()
        for n, cells in self.rows:
            for ch in CHANNELS:
                cell = cells[ch]
                writer.writerow(
                    [
                        label,
                        self.d,
                        n,
                        ch,
                        str(cell.value) if cell.value is not None else "",
                        cell.provenance,
                    ]
                )
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"germ: {self.germ.render()}   d={self.d}   source={self.source}"]
        header = f"{'n':>3}  {'plus':<34}{'minus':<34}{'naive'}"
        lines.append(header)
        for n, cells in self.rows:
            def show(ch: str) -> str:
                cell = cells[ch]
                if cell.value is None:
                    return f"<{cell.provenance}>"
                return str(cell.value)
            lines.append(f"{n:>3}  {show('plus'):<34.34}{show('minus'):<34.34}{show('naive')}")
        return "\n".join(lines)


def zeta_table(g: GermSpec, N: int, source: str = "hybrid") -> ZetaTable:
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    rows = []
    for n in range(2, N + 1):
        cells = {ch: resolve_cell(g, n, ch, source) for ch in CHANNELS}
        rows.append((n, cells))
    return ZetaTable(germ=g, N=N, source=source, rows=tuple(rows))


# ---------------------------------------------------------------------------
# Corank and index, recovered from the n=2 row
# ---------------------------------------------------------------------------


def corank_index(g: GermSpec) -> tuple[int, Sig]:
    """Recover (corank, (p,q)) from the germ's computed n=2 coefficients.

    The order-2 cells are computed by the oracle, then matched against
    the closed forms over all signatures with p+q <= d.
    """
    d = g.d
    observed = {}
    for ch in CHANNELS:
        out = oracle_cell(g, 2, ch)
        if not out.ok:
            raise RuntimeError(f"oracle failed on n=2 cell ({ch}): {out.detail}")
        observed[ch] = out.value
    matches = []
    for p in range(d + 1):
        for q in range(d + 1 - p):
            ok = all(
                arc_order2(d, (p, q), _TARGETS[ch]) == observed[ch] for ch in CHANNELS
            )
            if ok:
                matches.append((p, q))
    if len(matches) != 1:
        raise RuntimeError(
            f"n=2 row of {g.render()} matched signatures {matches}; expected exactly one"
        )
    sig = matches[0]
    return d - sig[0] - sig[1], sig
