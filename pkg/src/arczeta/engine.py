"""Arc-space stratification engine.

Computes the virtual Poincaré polynomial of a truncated arc-space cell
by recursive stratification of the coefficient constraints:

* algebraic cleanup (constant constraints, nonzero-factor reduction,
  forced zeros from definite forms),
* pivot discharges of variables that appear linearly with a unit
  coefficient (graphs contribute a factor 1, punctured lines u-1),
* a catalog of recognized terminal shapes (diagonal quadrics, power
  forms, monomial equations, cusp-type plane curves), combined by
  inclusion-exclusion over nonvanishing assumptions,
* sign splits on a chosen coordinate when nothing else applies.

Every leaf contributes ``prefactor * (recognized values) * u^free`` and
the results add up by additivity of the virtual Poincaré polynomial.
The engine never guesses: an unrecognized terminal shape or an
exhausted stratum budget yields an explicit failure outcome.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

from .mpoly import MPoly
from .quadric import (
    beta_D_curve,
    beta_D_curve_zero,
    beta_power_fiber,
    beta_power_zero,
    beta_Y,
    beta_Y_fiber,
)
from .upoly import ONE, UPoly, ZERO, u_pow

__all__ = [
    "EQ",
    "NEQ",
    "DEFAULT_BUDGET",
    "BUDGET_ENV",
    "ArcVar",
    "ArcSystem",
    "EngineOutcome",
    "build_system",
    "decompose",
    "beta_of",
]

EQ = "eq"
NEQ = "neq"
Rel = Literal["eq", "neq"]

DEFAULT_BUDGET = 10_000
BUDGET_ENV = "ARCZETA_STRATUM_BUDGET"

_UM1 = u_pow(1) - 1
_BLOCK_RANK = {"c": 0, "b": 1, "a": 2}


def effective_budget(override: int | None = None) -> int:
    if override is not None:
        return override
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{BUDGET_ENV} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class ArcVar:
    """One arc coefficient: block letter, t-power level, block coordinate."""

    vid: int
    block: str
    level: int
    coord: int

    @property
    def name(self) -> str:
        if self.block == "c":
            return f"c{self.level}^{self.coord}"
        return f"{self.block}{self.level}"

    @property
    def split_key(self) -> tuple[int, int, int]:
        return (_BLOCK_RANK[self.block], self.level, self.coord)


@dataclass
class ArcSystem:
    """Constraint system for one arc-space cell."""

    n: int
    target: int | str
    variables: list[ArcVar]
    constraints: list[tuple[MPoly, str]]
    names: dict[int, str]

    @property
    def total_vars(self) -> int:
        return len(self.variables)

    @property
    def eq_count(self) -> int:
        return sum(1 for _, rel in self.constraints if rel == EQ)


def _tmul(a: list[MPoly], b: list[MPoly], n: int) -> list[MPoly]:
    out = [MPoly.zero() for _ in range(n + 1)]
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j in range(0, n - i + 1):
            bj = b[j]
            if not bj.is_zero():
                out[i + j] = out[i + j] + ai * bj
    return out


def build_system(
    germ: MPoly, blocks: Sequence[str], n: int, target: int | str
) -> ArcSystem:
    """Expand germ(arc(t)) to order n and collect the cell constraints.

    ``germ`` is a polynomial in ambient variables 0..len(blocks)-1; each
    receives the arc sum_{s=1..n} v_{j,s} t^s.  Constraints: the t^m
    coefficient vanishes for m < n, and at m = n equals the target sign
    (or is nonzero for the order-exactly-n cell).
    """
    if n < 2:
        raise ValueError(f"arc order must be >= 2, got {n}")
    if target not in (1, -1, "naive"):
        raise ValueError(f"target must be +1, -1 or 'naive', got {target!r}")
    d = len(blocks)
    variables: list[ArcVar] = []
    coord_of: list[int] = []
    counts: dict[str, int] = {}
    for j, block in enumerate(blocks):
        if block not in _BLOCK_RANK:
            raise ValueError(f"unknown block {block!r}")
        counts[block] = counts.get(block, 0) + 1
        coord_of.append(counts[block])
    for j in range(d):
        for s in range(1, n + 1):
            variables.append(
                ArcVar(vid=j * n + (s - 1), block=blocks[j], level=s, coord=coord_of[j])
            )
    names = {v.vid: v.name for v in variables}

    arcs: list[list[MPoly]] = []
    for j in range(d):
        coeffs = [MPoly.zero()]
        for s in range(1, n + 1):
            coeffs.append(MPoly.var(j * n + (s - 1)))
        arcs.append(coeffs)

    power_cache: dict[tuple[int, int], list[MPoly]] = {}

    def arc_power(j: int, e: int) -> list[MPoly]:
        key = (j, e)
        if key not in power_cache:
            if e == 1:
                power_cache[key] = arcs[j]
            else:
                power_cache[key] = _tmul(arc_power(j, e - 1), arcs[j], n)
        return power_cache[key]

    tpoly = [MPoly.zero() for _ in range(n + 1)]
    for mono, coef in germ.terms():
        if not mono:
            raise ValueError("germ has a constant term")
        part = [MPoly.zero() for _ in range(n + 1)]
        part[0] = MPoly.const(coef)
        for j, e in mono:
            part = _tmul(part, arc_power(j, e), n)
        for m in range(n + 1):
            tpoly[m] = tpoly[m] + part[m]

    if not tpoly[0].is_zero() or not tpoly[1].is_zero():
        raise ValueError("germ must vanish to order >= 2 at the origin")

    constraints: list[tuple[MPoly, str]] = []
    for m in range(2, n):
        if not tpoly[m].is_zero():
            constraints.append((tpoly[m], EQ))
    if target == "naive":
        constraints.append((tpoly[n], NEQ))
    else:
        constraints.append((tpoly[n] - MPoly.const(target), EQ))
    return ArcSystem(
        n=n, target=target, variables=variables, constraints=constraints, names=names
    )


# ---------------------------------------------------------------------------
# Terminal-shape catalog
# ---------------------------------------------------------------------------


def _torus_fiber(exps: tuple[int, ...], positive: bool) -> UPoly:
    if any(e % 2 for e in exps):
        return _UM1 ** (len(exps) - 1)
    if not positive:
        return ZERO
    half = tuple(e // 2 for e in exps)
    return _torus_fiber(half, True) + _torus_fiber(half, False)


def _recognize(p: MPoly, rel: str) -> UPoly | None:
    """beta of {p rel 0} inside R^vars(p), or None if unrecognized."""
    if rel == NEQ:
        if p.is_zero():
            return ZERO
        if p.is_const():
            return ONE
        inner = _recognize(p, EQ)
        if inner is None:
            return None
        return u_pow(len(p.vars())) - inner
    if p.is_zero():
        return ONE
    if p.is_const():
        return ZERO
    e = p.constant_term()
    terms = [(m, c) for m, c in p.terms() if m]

    if len(terms) == 1:
        mono, c = terms[0]
        k = len(mono)
        if e == 0:
            return u_pow(k) - _UM1**k
        exps = tuple(ex for _, ex in mono)
        return _torus_fiber(exps, (-e / c) > 0)

    if all(len(m) == 1 for m, _ in terms):
        entries = [(m[0][0], m[0][1], c) for m, c in terms]
        if len({v for v, _, _ in entries}) == len(entries):
            quad = [(v, c) for v, ex, c in entries if ex == 2]
            high = [(v, ex, c) for v, ex, c in entries if ex != 2]
            pq = (
                sum(1 for _, c in quad if c > 0),
                sum(1 for _, c in quad if c < 0),
            )
            if not high:
                if e == 0:
                    return beta_Y(pq)
                return beta_Y_fiber(pq, 1 if e < 0 else -1)
            if len(high) == 1 and high[0][1] >= 3:
                m0 = high[0][1]
                sigma = 1 if high[0][2] > 0 else -1
                if e == 0:
                    return beta_power_zero(m0, sigma, pq)
                return beta_power_fiber(m0, sigma, pq, 1 if e < 0 else -1)

    if len(terms) == 2:
        curve = _match_cusp_curve(terms, e)
        if curve is not None:
            return curve

    # An isolated hyperbolic pair z^2 - w^2 rotates to a product coordinate
    # and peels off: beta = (u-1)*u^rest + u*beta(remainder).
    pos = neg = None
    for v in sorted(p.vars()):
        hits = [(m, c) for m, c in terms if any(w == v for w, _ in m)]
        if len(hits) != 1 or hits[0][0] != ((v, 2),):
            continue
        if hits[0][1] > 0:
            pos = pos if pos is not None else v
        else:
            neg = neg if neg is not None else v
    if pos is not None and neg is not None:
        remainder = MPoly(
            {m: c for m, c in p.terms() if m not in (((pos, 2),), ((neg, 2),))}
        )
        sub = _recognize(remainder, EQ)
        if sub is None:
            return None
        return _UM1 * u_pow(len(remainder.vars())) + u_pow(1) * sub
    return None


def _match_cusp_curve(
    terms: list[tuple[tuple[tuple[int, int], ...], Fraction]], e: Fraction
) -> UPoly | None:
    """{c1*x*v^2 + c2*x^j = -e} for j >= 3: the D-family curve shapes."""
    for first, second in (terms, terms[::-1]):
        m1, c1 = first
        m2, c2 = second
        if len(m1) != 2 or len(m2) != 1:
            continue
        exps = sorted(m1, key=lambda t: t[1])
        if exps[0][1] != 1 or exps[1][1] != 2:
            continue
        x = exps[0][0]
        if m2[0][0] != x or m2[0][1] < 3:
            continue
        j = m2[0][1]
        k = j + 1
        s2 = 1 if c2 > 0 else -1
        if c1 < 0:
            s2 *= (-1) ** j
        if e == 0:
            return beta_D_curve_zero(k, s2)
        return beta_D_curve(k, s2, 1 if e < 0 else -1)
    return None


def _T(p: MPoly, rel: str, assumed: frozenset[int], ambient: frozenset[int]) -> UPoly | None:
    """beta of {p rel 0, v != 0 for v in assumed} inside R^ambient."""
    if assumed:
        v = min(assumed)
        rest = assumed - {v}
        if v not in p.vars():
            sub = _T(p, rel, rest, ambient - {v})
            return None if sub is None else _UM1 * sub
        whole = _T(p, rel, rest, ambient)
        if whole is None:
            return None
        sliced = _T(p.subs_zero(v), rel, rest, ambient - {v})
        if sliced is None:
            return None
        return whole - sliced
    base = _recognize(p, rel)
    if base is None:
        return None
    return u_pow(len(ambient) - len(p.vars())) * base


# ---------------------------------------------------------------------------
# Stratification
# ---------------------------------------------------------------------------


@dataclass
class _Stratum:
    constraints: list[tuple[MPoly, str]]
    assumed: frozenset[int]
    alive: frozenset[int]
    prefactor: UPoly
    depth: int
    path: str


@dataclass
class EngineOutcome:
    """Result of a decomposition: a value or an explicit failure."""

    value: UPoly | None
    failure: str | None
    detail: str
    strata: int
    leaves: list[tuple[str, UPoly]]
    trace: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failure is None

    def audit(self) -> bool:
        """Additivity check: the leaf contributions sum to the value."""
        if not self.ok:
            return False
        total = ZERO
        for _, v in self.leaves:
            total += v
        return total == self.value


class _Failure(Exception):
    def __init__(self, kind: str, detail: str) -> None:
        super().__init__(kind)
        self.kind = kind
        self.detail = detail


def decompose(
    system: ArcSystem,
    budget: int | None = None,
    collect_trace: bool = False,
) -> EngineOutcome:
    limit = effective_budget(budget)
    names = system.names
    trace: list[str] = []
    leaves: list[tuple[str, UPoly]] = []
    total = ZERO
    processed = 0

    def log(depth: int, msg: str) -> None:
        if collect_trace:
            trace.append("  " * depth + msg)

    root = _Stratum(
        constraints=list(system.constraints),
        assumed=frozenset(),
        alive=frozenset(v.vid for v in system.variables),
        prefactor=ONE,
        depth=0,
        path="root",
    )
    stack = [root]
    var_of = {v.vid: v for v in system.variables}

    try:
        while stack:
            st = stack.pop()
            processed += 1
            if processed > limit:
                raise _Failure(
                    "depth-exceeded",
                    f"stratum budget {limit} exhausted (set {BUDGET_ENV} to raise it)",
                )
            action = _simplify(st, var_of, names, log)
            if action[0] == "empty":
                log(st.depth, "[empty]")
                continue
            if action[0] == "leaf":
                value = action[1]
                log(st.depth, f"[leaf] {value}")
                leaves.append((st.path, value))
                total += value
                continue
            if action[0] == "fail":
                raise _Failure("unmatched-terminal", action[1])
            if action[0] == "peel":
                _, i, z, w = action
                zn, wn = names[z], names[w]
                log(st.depth, f"[peel] {zn}^2-{wn}^2 in #{i}")
                p, rel = st.constraints[i]
                reduced = MPoly(
                    {m: c for m, c in p.terms() if m not in (((z, 2),), ((w, 2),))}
                )
                drop_factor = _UM1 if rel == EQ else _UM1 * _UM1
                drop_branch = _Stratum(
                    constraints=[c for j, c in enumerate(st.constraints) if j != i],
                    assumed=st.assumed,
                    alive=st.alive - {z, w},
                    prefactor=st.prefactor * drop_factor,
                    depth=st.depth + 1,
                    path=f"{st.path} / peel({zn},{wn})-solve",
                )
                keep_branch = _Stratum(
                    constraints=[
                        (reduced, rel) if j == i else c
                        for j, c in enumerate(st.constraints)
                    ],
                    assumed=st.assumed,
                    alive=st.alive - {z, w},
                    prefactor=st.prefactor * u_pow(1),
                    depth=st.depth + 1,
                    path=f"{st.path} / peel({zn},{wn})-slice",
                )
                stack.append(drop_branch)
                stack.append(keep_branch)
                continue
            # split
            v = action[1]
            vn = names[v]
            log(st.depth, f"[split] {vn}")
            zero_branch = _Stratum(
                constraints=[(p.subs_zero(v), rel) for p, rel in st.constraints],
                assumed=st.assumed,
                alive=st.alive - {v},
                prefactor=st.prefactor,
                depth=st.depth + 1,
                path=f"{st.path} / {vn}=0",
            )
            nonzero_branch = _Stratum(
                constraints=list(st.constraints),
                assumed=st.assumed | {v},
                alive=st.alive,
                prefactor=st.prefactor,
                depth=st.depth + 1,
                path=f"{st.path} / {vn}!=0",
            )
            stack.append(zero_branch)
            stack.append(nonzero_branch)
    except _Failure as f:
        return EngineOutcome(
            value=None,
            failure=f.kind,
            detail=f.detail,
            strata=processed,
            leaves=leaves,
            trace=trace,
        )
    return EngineOutcome(
        value=total,
        failure=None,
        detail="",
        strata=processed,
        leaves=leaves,
        trace=trace,
    )


def _simplify(st, var_of, names, log):
    """Run the rewrite rules to quiescence; return the stratum's fate.

    Returns ("empty",) | ("leaf", UPoly) | ("split", vid) | ("fail", detail).
    """
    while True:
        changed = False

        # trivial constants
        kept: list[tuple[MPoly, str]] = []
        for p, rel in st.constraints:
            if p.is_zero():
                if rel == NEQ:
                    return ("empty",)
                changed = True
                continue
            if p.is_const():
                if rel == EQ:
                    return ("empty",)
                changed = True
                continue
            kept.append((p, rel))
        st.constraints = kept

        # nonzero-factor reduction
        for i, (p, rel) in enumerate(st.constraints):
            content = p.content_monomial()
            if not content:
                continue
            if rel == NEQ:
                fresh = [v for v in content if v not in st.assumed]
                if fresh:
                    st.assumed = st.assumed | frozenset(fresh)
                st.constraints[i] = (p.divide_by(content), rel)
                changed = True
            else:
                div = {v: e for v, e in content.items() if v in st.assumed}
                if div:
                    st.constraints[i] = (p.divide_by(div), rel)
                    changed = True
        if changed:
            continue

        # forced zeros
        forced: set[int] = set()
        empty = False
        for p, rel in st.constraints:
            if rel != EQ:
                continue
            single = p.single_term()
            if single is not None:
                mono, _ = single
                if mono and len(mono) == 1:
                    forced.add(mono[0][0])
                    continue
            verdict = _definite(p, st.assumed)
            if verdict == "empty":
                empty = True
                break
            if isinstance(verdict, set):
                forced |= verdict
        if empty:
            return ("empty",)
        if forced:
            if forced & st.assumed:
                return ("empty",)
            st.constraints = [
                (_subs_zero_many(p, forced), rel) for p, rel in st.constraints
            ]
            st.alive = st.alive - forced
            continue

        # pivot discharges, deepest constraint first
        discharged = False
        for i in range(len(st.constraints) - 1, -1, -1):
            p, rel = st.constraints[i]
            earlier_vars: set[int] = set()
            for j in range(i):
                earlier_vars |= st.constraints[j][0].vars()
            candidates = sorted(
                p.vars() - st.assumed, key=lambda w: var_of[w].split_key
            )
            for v in candidates:
                if v in earlier_vars:
                    continue
                split = p.linear_split(v)
                if split is None:
                    continue
                a, b = split
                unit = a.single_term()
                if unit is None:
                    continue
                if any(w not in st.assumed for w, _ in unit[0]):
                    continue
                if rel == EQ:
                    new_cons = st.constraints[:i]
                    for j in range(i + 1, len(st.constraints)):
                        q, qrel = st.constraints[j]
                        if v in q.vars():
                            q = q.subs_clear(v, a, b)
                        new_cons.append((q, qrel))
                    st.constraints = new_cons
                    st.alive = st.alive - {v}
                    log(st.depth, f"[pivot] {names[v]} from eq#{i}")
                    discharged = True
                    break
                later = any(
                    v in st.constraints[j][0].vars()
                    for j in range(len(st.constraints))
                    if j != i
                )
                if later:
                    continue
                st.constraints = st.constraints[:i] + st.constraints[i + 1 :]
                st.alive = st.alive - {v}
                st.prefactor = st.prefactor * _UM1
                log(st.depth, f"[pivot] {names[v]} from neq#{i} (factor u-1)")
                discharged = True
                break
            if discharged:
                break
        if discharged:
            continue
        break

    # terminal attempt
    var_sets = [p.vars() for p, _ in st.constraints]
    blocked: list[int] = []
    values: list[UPoly] = []
    for i, (p, rel) in enumerate(st.constraints):
        overlap = any(var_sets[i] & var_sets[j] for j in range(len(var_sets)) if j != i)
        if overlap:
            blocked.append(i)
            continue
        val = _T(p, rel, st.assumed & var_sets[i], var_sets[i])
        if val is None:
            blocked.append(i)
        else:
            values.append(val)
    if not blocked:
        in_constraints: set[int] = set()
        for vs in var_sets:
            in_constraints |= vs
        free = len(st.alive - st.assumed - in_constraints)
        loose = len((st.alive & st.assumed) - in_constraints)
        value = st.prefactor * u_pow(free) * (_UM1**loose)
        for val in values:
            value = value * val
        return ("leaf", value)

    for i in blocked:
        pair = _peelable_pair(st, i, var_sets, var_of)
        if pair is not None:
            return ("peel", i, pair[0], pair[1])
    for i in blocked:
        splittable = sorted(
            st.constraints[i][0].vars() - st.assumed,
            key=lambda w: var_of[w].split_key,
        )
        if splittable:
            return ("split", splittable[0])
    frozen = [st.constraints[i][0].text(names) for i in blocked]
    return (
        "fail",
        "no terminal form for: " + "; ".join(frozen),
    )


def _peelable_pair(st, i, var_sets, var_of):
    """A hyperbolic pair z^2 - w^2 isolated in constraint i, if any.

    Both variables must occur only through their own square term in this
    constraint, nowhere else, and carry no nonvanishing assumption; the
    rotated coordinates (z+w, z-w) then split the stratum algebraically.
    """
    p = st.constraints[i][0]
    elsewhere: set[int] = set()
    for j, vs in enumerate(var_sets):
        if j != i:
            elsewhere |= vs
    pos: list[int] = []
    neg: list[int] = []
    for v in sorted(p.vars() - st.assumed, key=lambda w: var_of[w].split_key):
        if v in elsewhere:
            continue
        hits = [(m, c) for m, c in p.terms() if any(w == v for w, _ in m)]
        if len(hits) != 1 or hits[0][0] != ((v, 2),):
            continue
        (pos if hits[0][1] > 0 else neg).append(v)
    if pos and neg:
        return pos[0], neg[0]
    return None


def _subs_zero_many(p: MPoly, vs: set[int]) -> MPoly:
    for v in vs:
        p = p.subs_zero(v)
    return p


def _definite(p: MPoly, assumed: frozenset[int]) -> str | set[int] | None:
    """Detect sum-of-same-sign even powers: forces zeros or emptiness."""
    e = p.constant_term()
    sign = 0
    involved: set[int] = set()
    for m, c in p.terms():
        if not m:
            continue
        if len(m) != 1 or m[0][1] % 2:
            return None
        s = 1 if c > 0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            return None
        involved.add(m[0][0])
    if e == 0:
        if involved & assumed:
            return "empty"
        return involved
    if (e > 0) == (sign > 0):
        return "empty"
    return None


def beta_of(
    germ: MPoly,
    blocks: Sequence[str],
    n: int,
    target: int | str,
    budget: int | None = None,
    collect_trace: bool = False,
) -> EngineOutcome:
    """Convenience wrapper: build the cell system and decompose it."""
    system = build_system(germ, blocks, n, target)
    return decompose(system, budget=budget, collect_trace=collect_trace)
