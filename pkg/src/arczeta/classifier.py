"""Machine-checked classification of germ normal forms by zeta-table cells.

Every verdict produced here is a comparison of arc-space coefficients:
two germs are *distinguished* by the first table cell (scanning order
``n`` ascending, channels plus, minus, naive) where their values differ,
and consistency with equivalence means every available cell agrees.
Corank and index separation is itself an ``n = 2`` cell difference, so
no out-of-band invariants enter the reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .formulas import (
    arc_E,
    arc_G,
    arc_Q_recursive,
    arc_Q_signed,
    formula_variants,
    variant_ids,
)
from .germs import GermSpec, analytic_equiv, canonicalize, oracle_cell, resolve_cell
from .quadric import beta_D_curve, beta_Y, beta_Y_fiber
from .upoly import UPoly, u_pow

__all__ = [
    "CHANNELS",
    "ClassificationReport",
    "Distinguisher",
    "NonsimpleReport",
    "PairEntry",
    "SuiteReport",
    "SuiteSection",
    "ade_table",
    "audit_scan_minimality",
    "distinguish",
    "enumerate_simple",
    "nonsimple_report",
    "oracle_recheck",
    "verify_paper_suite",
]

CHANNELS = ("plus", "minus", "naive")

_UM1 = u_pow(1) - u_pow(0)


def _cell_id(n: int, channel: str) -> str:
    return f"n={n}/{channel}"


# ---------------------------------------------------------------------------
# Distinguishers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Distinguisher:
    """Certificate of non-equivalence, or a bounded failure to find one.

    When ``n`` is set, ``value1 != value2`` at that cell and every cell
    earlier in scan order either agreed or is listed in ``unavailable``.
    """

    germ1: str
    germ2: str
    N: int
    source: str
    n: int | None = None
    channel: str | None = None
    value1: UPoly | None = None
    value2: UPoly | None = None
    unavailable: tuple[str, ...] = ()

    @property
    def separated(self) -> bool:
        return self.n is not None

    @property
    def verdict(self) -> str:
        if self.separated:
            return f"distinguished at n={self.n}, {self.channel}"
        return f"indistinguishable <= {self.N}"

    def to_json_dict(self) -> dict:
        out: dict = {
            "germ1": self.germ1,
            "germ2": self.germ2,
            "N": self.N,
            "source": self.source,
            "verdict": self.verdict,
            "unavailable": list(self.unavailable),
        }
        if self.separated:
            out["certificate"] = {
                "n": self.n,
                "channel": self.channel,
                "value1": str(self.value1),
                "value2": str(self.value2),
            }
        return out


def distinguish(
    g1: GermSpec, g2: GermSpec, N: int = 9, source: str = "auto"
) -> Distinguisher:
    """First differing cell of the two zeta tables, if any up to order N."""
    if g1.d != g2.d:
        raise ValueError(
            f"cannot compare germs of different ambient dimension: "
            f"{g1.d} vs {g2.d} (tables omit the u^(-n*d) normalization)"
        )
    unavailable: list[str] = []
    for n in range(2, N + 1):
        for channel in CHANNELS:
            c1 = resolve_cell(g1, n, channel, source)
            c2 = resolve_cell(g2, n, channel, source)
            if c1.value is None or c2.value is None:
                unavailable.append(_cell_id(n, channel))
                continue
            if c1.value != c2.value:
                return Distinguisher(
                    g1.render(),
                    g2.render(),
                    N,
                    source,
                    n,
                    channel,
                    c1.value,
                    c2.value,
                    tuple(unavailable),
                )
    return Distinguisher(g1.render(), g2.render(), N, source, unavailable=tuple(unavailable))


def audit_scan_minimality(
    dist: Distinguisher, g1: GermSpec, g2: GermSpec, source: str = "auto"
) -> bool:
    """Re-walk the scan and confirm the certificate sits at the first difference."""
    if not dist.separated:
        return True
    for n in range(2, dist.n + 1):
        for channel in CHANNELS:
            if (n, channel) == (dist.n, dist.channel):
                c1 = resolve_cell(g1, n, channel, source)
                c2 = resolve_cell(g2, n, channel, source)
                return (
                    c1.value == dist.value1
                    and c2.value == dist.value2
                    and c1.value != c2.value
                )
            c1 = resolve_cell(g1, n, channel, source)
            c2 = resolve_cell(g2, n, channel, source)
            if c1.value is None or c2.value is None:
                if _cell_id(n, channel) not in dist.unavailable:
                    return False
                continue
            if c1.value != c2.value:
                return False
    return False


def oracle_recheck(pairs: list[tuple[GermSpec, GermSpec, Distinguisher]]) -> list[str]:
    """Soundness pass: certificate cells recomputed with the engine only.

    Returns diagnostics for any certificate the oracle does not
    reproduce; an empty list means every verdict survived.
    """
    problems: list[str] = []
    for g1, g2, dist in pairs:
        if not dist.separated:
            continue
        c1 = resolve_cell(g1, dist.n, dist.channel, "oracle")
        c2 = resolve_cell(g2, dist.n, dist.channel, "oracle")
        where = f"{dist.germ1} vs {dist.germ2} at {_cell_id(dist.n, dist.channel)}"
        if c1.value is None or c2.value is None:
            problems.append(f"{where}: oracle unavailable")
        elif (c1.value, c2.value) != (dist.value1, dist.value2):
            problems.append(
                f"{where}: oracle gives {c1.value} vs {c2.value}, "
                f"certificate recorded {dist.value1} vs {dist.value2}"
            )
    return problems


# ---------------------------------------------------------------------------
# The A-D-E classification table
# ---------------------------------------------------------------------------


def _sigs(total: int) -> list[tuple[int, int]]:
    return [(p, total - p) for p in range(total + 1)]


def enumerate_simple(d: int, kmax: int = 8) -> list[GermSpec]:
    """Every simple germ spec with ambient dimension d, parameters <= kmax.

    Both members of each sign-equivalent pair are listed; canonical
    representatives are recovered with :func:`arczeta.germs.canonicalize`.
    """
    if d < 2:
        raise ValueError(f"ambient dimension must be >= 2, got {d}")
    specs: list[GermSpec] = []
    for sig in _sigs(d - 1):
        for k in range(2, kmax + 1):
            for s in (1, -1):
                specs.append(GermSpec("AK", sig, k=k, signs=(s,)))
    for sig in _sigs(d - 2):
        for k in range(4, kmax + 1):
            for e1 in (1, -1):
                for e2 in (1, -1):
                    specs.append(GermSpec("DK", sig, k=k, signs=(e1, e2)))
        for s in (1, -1):
            specs.append(GermSpec("E6", sig, signs=(s,)))
        specs.append(GermSpec("E7", sig))
        specs.append(GermSpec("E8", sig))
    return specs


@dataclass(frozen=True)
class PairEntry:
    germ1: str
    germ2: str
    relation: str  # "equivalent" | "distinct"
    certificate: Distinguisher | None
    unavailable: tuple[str, ...]
    agreed_cells: int

    def to_json_dict(self) -> dict:
        out: dict = {
            "germ1": self.germ1,
            "germ2": self.germ2,
            "relation": self.relation,
            "unavailable": list(self.unavailable),
        }
        if self.relation == "equivalent":
            out["agreed_cells"] = self.agreed_cells
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json_dict()
        return out


@dataclass(frozen=True)
class ClassificationReport:
    d: int
    kmax: int
    N: int
    source: str
    specs: tuple[str, ...]
    classes: tuple[str, ...]
    entries: tuple[PairEntry, ...]
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def certificate_for(self, germ1: str, germ2: str) -> PairEntry | None:
        for e in self.entries:
            if {e.germ1, e.germ2} == {germ1, germ2}:
                return e
        return None

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "kmax": self.kmax,
            "N": self.N,
            "source": self.source,
            "specs": list(self.specs),
            "classes": list(self.classes),
            "pairs": [e.to_json_dict() for e in self.entries],
            "failures": list(self.failures),
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [
            f"blow-Nash classification  d={self.d}  kmax={self.kmax}  "
            f"N={self.N}  source={self.source}",
            f"specs: {len(self.specs)}  classes: {len(self.classes)}  "
            f"pairs: {len(self.entries)}",
        ]
        if self.failures:
            lines.append(f"failures: {len(self.failures)}")
            lines.extend(f"  {f}" for f in self.failures)
        else:
            lines.append("failures: none")
        cert: dict[tuple[str, str], PairEntry] = {}
        for e in self.entries:
            cert[(e.germ1, e.germ2)] = e
            cert[(e.germ2, e.germ1)] = e
        lines.append("classes:")
        for i, c in enumerate(self.classes, start=1):
            lines.append(f"  [{i}] {c}")
        cells: list[list[str]] = []
        for r in self.classes:
            row = []
            for c in self.classes:
                if r == c:
                    row.append("=")
                    continue
                e = cert.get((r, c))
                if e is None:
                    row.append("?")
                elif e.relation == "equivalent":
                    row.append("==")
                elif e.certificate is not None and e.certificate.separated:
                    row.append(f"{e.certificate.n}/{e.certificate.channel}")
                else:
                    row.append("!!")
            cells.append(row)
        width = max(
            [len(str(len(self.classes)))]
            + [len(x) for row in cells for x in row]
        )
        head = " " * (len(str(len(self.classes))) + 2) + " ".join(
            str(j + 1).rjust(width) for j in range(len(self.classes))
        )
        lines.append("matrix (cells: first separating n/channel, = self, == equivalent):")
        lines.append(head)
        for i, row in enumerate(cells):
            label = str(i + 1).rjust(len(str(len(self.classes))))
            lines.append(f"{label}  " + " ".join(x.rjust(width) for x in row))
        return "\n".join(lines) + "\n"


def ade_table(
    d: int, kmax: int = 8, N: int = 9, source: str = "auto"
) -> ClassificationReport:
    """Pairwise classification of every simple germ at ambient dimension d.

    Equivalent pairs (same canonical form) must agree on every available
    cell up to N; all other pairs must produce a Distinguisher with
    n <= N.  Violations land in ``failures``.
    """
    specs = enumerate_simple(d, kmax)
    entries: list[PairEntry] = []
    failures: list[str] = []
    for i, g1 in enumerate(specs):
        for g2 in specs[i + 1 :]:
            if analytic_equiv(g1, g2):
                agreed = 0
                unavailable: list[str] = []
                for n in range(2, N + 1):
                    for channel in CHANNELS:
                        c1 = resolve_cell(g1, n, channel, source)
                        c2 = resolve_cell(g2, n, channel, source)
                        if c1.value is None or c2.value is None:
                            unavailable.append(_cell_id(n, channel))
                            continue
                        if c1.value != c2.value:
                            failures.append(
                                f"equivalent pair {g1.render()} ~ {g2.render()} "
                                f"disagrees at {_cell_id(n, channel)}: "
                                f"{c1.value} vs {c2.value}"
                            )
                        else:
                            agreed += 1
                entries.append(
                    PairEntry(
                        g1.render(),
                        g2.render(),
                        "equivalent",
                        None,
                        tuple(unavailable),
                        agreed,
                    )
                )
            else:
                dist = distinguish(g1, g2, N, source)
                if not dist.separated:
                    failures.append(
                        f"no distinguisher at n <= {N} for {g1.render()} vs "
                        f"{g2.render()} (unavailable: {', '.join(dist.unavailable) or 'none'})"
                    )
                entries.append(
                    PairEntry(
                        g1.render(),
                        g2.render(),
                        "distinct",
                        dist,
                        dist.unavailable,
                        0,
                    )
                )
    seen: set[str] = set()
    classes: list[str] = []
    for g in specs:
        c = canonicalize(g).render()
        if c not in seen:
            seen.add(c)
            classes.append(c)
    return ClassificationReport(
        d,
        kmax,
        N,
        source,
        tuple(g.render() for g in specs),
        tuple(classes),
        tuple(entries),
        tuple(failures),
    )


# ---------------------------------------------------------------------------
# Nonsimple instances
# ---------------------------------------------------------------------------


def _corank2_classes(d: int, kmax: int) -> list[GermSpec]:
    out: list[GermSpec] = []
    for g in enumerate_simple(d, kmax):
        if g.corank == 2 and canonicalize(g) == g:
            out.append(g)
    return out


@dataclass(frozen=True)
class CubeCheck:
    n: int
    channel: str
    matched: bool
    instance_value: UPoly
    cube_value: UPoly


@dataclass(frozen=True)
class NonsimpleEntry:
    instance: str
    skipped: bool
    reason: str
    cube_checks: tuple[CubeCheck, ...]
    separations: tuple[Distinguisher, ...]

    def to_json_dict(self) -> dict:
        out: dict = {"instance": self.instance}
        if self.skipped:
            out["skipped"] = True
            out["reason"] = self.reason
            return out
        out["cube_checks"] = [
            {
                "n": c.n,
                "channel": c.channel,
                "matched": c.matched,
                "instance_value": str(c.instance_value),
                "cube_value": str(c.cube_value),
            }
            for c in self.cube_checks
        ]
        out["separations"] = [s.to_json_dict() for s in self.separations]
        return out


@dataclass(frozen=True)
class NonsimpleReport:
    N: int
    entries: tuple[NonsimpleEntry, ...]
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "N": self.N,
            "entries": [e.to_json_dict() for e in self.entries],
            "failures": list(self.failures),
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"nonsimple germ report  N={self.N}"]
        for e in self.entries:
            lines.append(f"instance {e.instance}")
            if e.skipped:
                lines.append(f"  skipped: {e.reason}")
                continue
            for c in e.cube_checks:
                mark = "ok" if c.matched else "MISMATCH"
                lines.append(
                    f"  cube-jet cell {_cell_id(c.n, c.channel)}: "
                    f"{c.instance_value} vs {c.cube_value} [{mark}]"
                )
            for s in e.separations:
                lines.append(f"  vs {s.germ2}: {s.verdict}")
        if self.failures:
            lines.append(f"failures: {len(self.failures)}")
            lines.extend(f"  {f}" for f in self.failures)
        else:
            lines.append("failures: none")
        return "\n".join(lines) + "\n"


def nonsimple_report(
    instances: list[GermSpec], N: int = 5, kmax: int = 8
) -> NonsimpleReport:
    """Separate nonsimple J-family instances from every simple corank-2 class.

    Per instance: the engine confirms that its order-4 and order-5
    signed cells coincide with the pure-cube cells (the freedom that
    collapses the count), then a Distinguisher is produced against each
    simple corank-2 class of the same ambient dimension.  An engine
    failure on an instance cell is reported and the instance skipped.
    """
    entries: list[NonsimpleEntry] = []
    failures: list[str] = []
    for g in instances:
        if g.family != "JKI":
            raise ValueError(f"nonsimple_report expects J-family instances, got {g.family}")
        cube = GermSpec("CUBE", g.sig)
        checks: list[CubeCheck] = []
        skip_reason = ""
        for n in (4, 5):
            for channel in ("plus", "minus"):
                out = oracle_cell(g, n, channel)
                if not out.ok:
                    skip_reason = (
                        f"engine failure at {_cell_id(n, channel)}: {out.failure}"
                    )
                    break
                ref = resolve_cell(cube, n, channel, "auto")
                matched = ref.value is not None and out.value == ref.value
                checks.append(CubeCheck(n, channel, matched, out.value, ref.value))
                if not matched:
                    failures.append(
                        f"{g.render()}: cell {_cell_id(n, channel)} does not match "
                        f"the cube cell ({out.value} vs {ref.value})"
                    )
            if skip_reason:
                break
        if skip_reason:
            entries.append(NonsimpleEntry(g.render(), True, skip_reason, (), ()))
            failures.append(f"{g.render()}: {skip_reason}")
            continue
        seps: list[Distinguisher] = []
        for cls in _corank2_classes(g.d, kmax):
            dist = distinguish(g, cls, N, "auto")
            if not dist.separated:
                failures.append(
                    f"{g.render()} not separated from {cls.render()} at n <= {N}"
                )
            seps.append(dist)
        entries.append(NonsimpleEntry(g.render(), False, "", tuple(checks), tuple(seps)))
    return NonsimpleReport(N, tuple(entries), tuple(failures))


# ---------------------------------------------------------------------------
# The verification suite
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteSection:
    name: str
    status: str  # "ok" | "flagged" | "FAIL"
    lines: tuple[str, ...]


@dataclass(frozen=True)
class SuiteReport:
    sections: tuple[SuiteSection, ...]

    @property
    def ok(self) -> bool:
        return all(s.status != "FAIL" for s in self.sections)

    @property
    def flagged(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.sections if s.status == "flagged")

    def section(self, name: str) -> SuiteSection:
        for s in self.sections:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_json_dict(self) -> dict:
        return {
            "sections": [
                {"name": s.name, "status": s.status, "lines": list(s.lines)}
                for s in self.sections
            ],
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = ["paper verification suite", "========================"]
        for s in self.sections:
            lines.append(f"[{s.status}] {s.name}")
            lines.extend(f"    {x}" for x in s.lines)
        tail = "PASS" if self.ok else "FAIL"
        lines.append(
            f"result: {tail} (flagged sections record adjudicated discrepancies, "
            "not failures)"
        )
        return "\n".join(lines) + "\n"


_GRID_SIGS = ((0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (2, 2))


def _grid_specs() -> list[GermSpec]:
    out: list[GermSpec] = []
    for sig in _GRID_SIGS:
        out.append(GermSpec("Q", sig))
        for k in range(2, 7):
            for s in (1, -1):
                out.append(GermSpec("AK", sig, k=k, signs=(s,)))
        out.append(GermSpec("G", sig))
        for k in range(4, 7):
            for e1 in (1, -1):
                for e2 in (1, -1):
                    out.append(GermSpec("DK", sig, k=k, signs=(e1, e2)))
        for s in (1, -1):
            out.append(GermSpec("E6", sig, signs=(s,)))
        out.append(GermSpec("E7", sig))
        out.append(GermSpec("E8", sig))
        out.append(GermSpec("CUBE", sig))
    return out


def _channel(t) -> str:
    return {1: "plus", -1: "minus", "naive": "naive"}[t]


def _variant_oracle_cell(vid: str, args: tuple) -> tuple[GermSpec, int, str]:
    if vid == "quadra-even-terminal":
        l, eps, sig = args
        return GermSpec("Q", sig), l, _channel(eps)
    if vid == "lem7-A3-first-term":
        t, sig = args
        return GermSpec("CUBE", sig), 3, _channel(t)
    if vid == "lem2-Q-sign":
        k, s, eps, sig = args
        return GermSpec("AK", sig, k=k, signs=(s,)), k + 1, _channel(eps)
    if vid == "lem4-display-set":
        l, eps, sig = args
        return GermSpec("G", sig), l, _channel(eps)
    if vid == "lem5-keven-00":
        k, e1, e2, eps = args
        return GermSpec("DK", (0, 0), k=k, signs=(e1, e2)), k - 1, _channel(eps)
    raise KeyError(vid)


def _describe_cell(g: GermSpec, n: int, channel: str) -> str:
    return f"{g.render()} {_cell_id(n, channel)}"


def verify_paper_suite() -> SuiteReport:
    """Run every adjudication the acceptance grid rests on.

    Sections: the quadric catalog spot values, closed-vs-recursive
    agreement for the quadric chain, the oracle-vs-formulas grid, the
    frozen report values, the pairwise separation of the four cube-jet
    classes, and the stated-vs-proof-derived variant adjudication.
    """
    sections: list[SuiteSection] = []

    # quadric catalog spot values
    u = u_pow(1)
    spot = [
        ("beta_Y(1,1)", beta_Y((1, 1)), 2 * u - 1),
        ("beta_Y(2,1)", beta_Y((2, 1)), u_pow(2)),
        ("beta_Y_fiber((1,1),+1)", beta_Y_fiber((1, 1), 1), u - 1),
        ("beta_Y_fiber((2,1),+1)", beta_Y_fiber((2, 1), 1), u_pow(2) + u),
    ]
    lines = []
    bad = 0
    for name, got, want in spot:
        mark = "ok" if got == want else "FAIL"
        bad += got != want
        lines.append(f"{name} = {got} [{mark}]")
    sections.append(
        SuiteSection("quadric-catalog", "FAIL" if bad else "ok", tuple(lines))
    )

    # closed form vs recursion on the quadric chain
    mismatches = []
    count = 0
    for l in range(2, 13):
        for p in range(5):
            for q in range(5):
                for eps in (1, -1):
                    count += 1
                    if arc_Q_signed(l, eps, (p, q)) != arc_Q_recursive(l, eps, (p, q)):
                        mismatches.append(f"l={l} eps={eps} sig=({p},{q})")
    sections.append(
        SuiteSection(
            "closed-vs-recursive",
            "FAIL" if mismatches else "ok",
            tuple([f"{count} cells compared, {len(mismatches)} mismatches"] + mismatches),
        )
    )

    # oracle vs formulas on the acceptance grid
    from .germs import formula_cell
    from .formulas import OutOfCoverage

    per_family: dict[str, list[int]] = {}
    grid_mismatches: list[str] = []
    for g in _grid_specs():
        bucket = per_family.setdefault(g.family, [0, 0])
        for n in range(2, 8):
            for channel in CHANNELS:
                try:
                    f = formula_cell(g, n, channel)
                except OutOfCoverage:
                    continue
                out = oracle_cell(g, n, channel)
                bucket[0] += 1
                if not out.ok or out.value != f:
                    bucket[1] += 1
                    grid_mismatches.append(
                        f"{_describe_cell(g, n, channel)}: formula {f}, "
                        f"oracle {out.value if out.ok else out.failure}"
                    )
    lines = []
    total_bad = 0
    for fam in sorted(per_family):
        n_cells, n_bad = per_family[fam]
        total_bad += n_bad
        lines.append(f"{fam}: {n_cells} covered cells, {n_bad} mismatches")
    lines.extend(grid_mismatches)
    sections.append(
        SuiteSection(
            "oracle-vs-formulas", "FAIL" if total_bad else "ok", tuple(lines)
        )
    )

    # frozen report values
    lines = []
    bad = 0

    def check(name: str, got: UPoly, want: UPoly) -> None:
        nonlocal bad
        mark = "ok" if got == want else "FAIL"
        bad += got != want
        lines.append(f"{name} = {got} [{mark}]")

    check("curve fiber, odd k, aligned signs", beta_D_curve(5, 1, 1), 2 * u)
    check("curve fiber, even k, positive", beta_D_curve(4, 1, 1), u)
    check("curve fiber, even k, negative", beta_D_curve(4, -1, 1), 2 * u)
    check("suspension-free order 3", arc_G(3, 1, (0, 0)), u_pow(4) * (u - 1))
    check("suspension-free order 5", arc_G(5, 1, (0, 0)), u_pow(6) * (u_pow(2) - 1))
    check("E7 order-5 cell at (0,0)", arc_E("E7", 5, 1, (0, 0)), (u - 1) * u_pow(7))
    check("E8 order-5 cell at (0,0)", arc_E("E8", 5, 1, (0, 0)), u_pow(8))
    sections.append(
        SuiteSection("report-values", "FAIL" if bad else "ok", tuple(lines))
    )

    # pairwise separation of the cube-jet classes (corank-2 normal forms)
    e_germs = [
        GermSpec("E6", (0, 0), signs=(1,)),
        GermSpec("E6", (0, 0), signs=(-1,)),
        GermSpec("E7", (0, 0)),
        GermSpec("E8", (0, 0)),
    ]
    lines = []
    bad = 0
    for i, g1 in enumerate(e_germs):
        for g2 in e_germs[i + 1 :]:
            dist = distinguish(g1, g2, 9, "auto")
            if dist.separated:
                lines.append(f"{dist.germ1} vs {dist.germ2}: {dist.verdict}")
            else:
                bad += 1
                lines.append(f"{dist.germ1} vs {dist.germ2}: NOT SEPARATED [FAIL]")
    sections.append(
        SuiteSection("cube-jet-classes", "FAIL" if bad else "ok", tuple(lines))
    )

    # stated vs proof-derived adjudication
    lines = []
    any_fail = False
    any_flag = False
    for vid in variant_ids():
        v = formula_variants(vid)
        stated_bad: list[str] = []
        derived_bad: list[str] = []
        for args in v.domain:
            germ, n, channel = _variant_oracle_cell(vid, args)
            out = oracle_cell(germ, n, channel)
            if not out.ok:
                derived_bad.append(f"{_describe_cell(germ, n, channel)}: oracle {out.failure}")
                continue
            if v.proof_derived(*args) != out.value:
                derived_bad.append(_describe_cell(germ, n, channel))
            if v.stated(*args) != out.value:
                stated_bad.append(_describe_cell(germ, n, channel))
        if derived_bad:
            any_fail = True
            lines.append(
                f"{vid}: proof-derived form INCONSISTENT at {derived_bad[0]} [FAIL]"
            )
            continue
        if stated_bad:
            any_flag = True
            lines.append(
                f"{vid}: stated form oracle-inconsistent on "
                f"{len(stated_bad)}/{len(v.domain)} domain cells "
                f"(first: {stated_bad[0]}); proof-derived confirmed on all "
                f"{len(v.domain)}"
            )
        else:
            lines.append(
                f"{vid}: stated and proof-derived agree with the oracle on all "
                f"{len(v.domain)} domain cells"
            )
    status = "FAIL" if any_fail else ("flagged" if any_flag else "ok")
    sections.append(SuiteSection("variant-adjudication", status, tuple(lines)))

    return SuiteReport(tuple(sections))
