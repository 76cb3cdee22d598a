"""Head and tail of the normalized colored Jones polynomial.

Reads the three extreme coefficients on each end of ``J'_K(n)``, predicts
them from the A- and B-graphs, and checks stabilization in the color, the
span law, the three-term bracket expansion and the volume bounds.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import asdict, dataclass, field
from math import comb
from typing import Iterable

from .algebra import LaurentPoly, to_q
from .cache import ResultCache, cached_colored_jones
from .diagram import PDCode, is_alternating
from .statesum import FRONTIER_CAP, NAIVE_CAP, ColoredJones, FrontierTooWide, TooLarge, bracket
from .stategraphs import GraphStats, graph_stats, third_coefficient

log = logging.getLogger(__name__)

V0 = 1.0149416  # volume of the regular ideal tetrahedron
VOLUME_TOL = 1e-9

PASS, FAIL, INAPPLICABLE, SKIPPED = "PASS", "FAIL", "INAPPLICABLE", "SKIPPED"


class Inapplicable(ValueError):
    """The hypotheses of a coefficient formula are not met."""


class MissingVolume(KeyError):
    pass


@dataclass(frozen=True)
class HeadTail:
    """Extreme coefficients of ``J'_K(n)`` in ``q = A^4``.

    ``head`` reads down from the top exponent, ``tail`` up from the bottom.
    Positions outside the support read as 0; ``degenerate`` marks spans
    short enough (below 5) that head and tail share positions.
    """

    head: tuple[int, int, int]
    tail: tuple[int, int, int]
    q_span: int
    top: int
    bottom: int

    @property
    def degenerate(self) -> bool:
        return self.q_span < 5

    @staticmethod
    def _alternates(t) -> bool:
        nz = [x for x in t if x]
        return all(a * b < 0 for a, b in zip(nz, nz[1:])) and all(
            t[i] * t[i + 1] <= 0 for i in range(len(t) - 1)
        )

    @property
    def head_alternating(self) -> bool:
        return self._alternates(self.head)

    @property
    def tail_alternating(self) -> bool:
        return self._alternates(self.tail)

    @property
    def abs_head(self) -> tuple[int, ...]:
        return tuple(abs(x) for x in self.head)

    @property
    def abs_tail(self) -> tuple[int, ...]:
        return tuple(abs(x) for x in self.tail)


def head_tail(j: ColoredJones | LaurentPoly) -> HeadTail:
    p = j.normalized if isinstance(j, ColoredJones) else j
    if p.is_zero():
        raise ValueError("zero polynomial has no head or tail")
    q = to_q(p).as_dict
    top, bottom = max(q), min(q)
    return HeadTail(
        head=tuple(q.get(top - i, 0) for i in range(3)),
        tail=tuple(q.get(bottom + i, 0) for i in range(3)),
        q_span=top - bottom,
        top=top,
        bottom=bottom,
    )


@dataclass(frozen=True)
class Prediction:
    """Predicted head (from the A-graph) and tail (from the B-graph).

    ``head_signed`` is ``(1, -b, c)`` up to a global sign, with ``c`` the raw
    formula value, which may be negative for small graphs.
    """

    n: int
    stats_a: GraphStats
    stats_b: GraphStats
    head_signed: tuple[int, int, int | None]
    tail_signed: tuple[int, int, int | None]

    @property
    def b(self) -> int:
        return -self.head_signed[1]

    @property
    def beta(self) -> int:
        return -self.tail_signed[1]

    @property
    def head(self) -> tuple[int | None, ...]:
        return tuple(None if x is None else abs(x) for x in self.head_signed)

    @property
    def tail(self) -> tuple[int | None, ...]:
        return tuple(None if x is None else abs(x) for x in self.tail_signed)


def _third(s: GraphStats, b: int, n: int) -> int:
    if n == 2:
        return comb(b + 1, 2) + s.n2 - s.tau
    return comb(b, 2) - s.tau


def predict(stats_a: GraphStats, stats_b: GraphStats, n: int, alternating: bool = True) -> Prediction:
    """Predicted extreme coefficients of ``J'_K(n)``.

    The third coefficients need a reduced alternating diagram; otherwise
    they are left as ``None``.
    """
    if n < 2:
        raise Inapplicable("predictions start at color 2")
    if not (stats_a.adequate and stats_b.adequate):
        raise Inapplicable("diagram is not adequate")
    b = stats_a.e - stats_a.v + 1
    beta = stats_b.e - stats_b.v + 1
    c = _third(stats_a, b, n) if alternating else None
    gamma = _third(stats_b, beta, n) if alternating else None
    return Prediction(n, stats_a, stats_b, (1, -b, c), (1, -beta, gamma))


# -- checks ---------------------------------------------------------------------

@dataclass
class Check:
    id: str
    expected: object
    got: object
    status: str
    detail: str = ""

    def to_json(self) -> dict:
        return {k: _jsonable(v) for k, v in asdict(self).items()}


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, list):
        return [_jsonable(x) for x in v]
    if isinstance(v, LaurentPoly):
        return v.to_json()
    return v


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def verify_span(j: ColoredJones, c: int) -> Check:
    """q-span of ``J'_K(n)`` against ``C(n, 2) * c``."""
    expected = comb(j.n, 2) * c
    got = to_q(j.normalized).span()
    return Check(f"span[n={j.n}]", expected, got, _status(got == expected))


def _signed_match(got: tuple, expected: tuple) -> bool:
    return any(tuple(s * x for x in expected) == tuple(got) for s in (1, -1))


def partial_sum_check(j: ColoredJones) -> Check:
    """Top of ``J_K(n)`` against window sums of the top of ``J'_K(n)``.

    ``J = J' [n]`` and ``[n]`` has ``n`` unit terms spaced by ``A^4``, so
    coefficient ``i`` from the top is the sum of ``J'`` coefficients
    ``i-n+1 .. i``; for ``n >= 3`` this is ``(a, a+b, a+b+c)``.
    """
    h = head_tail(j).head
    top = j.unnormalized.max_degree()
    got = tuple(j.unnormalized.coeff(top - 4 * i) for i in range(3))
    expected = tuple(sum(h[max(0, i - j.n + 1):i + 1]) for i in range(3))
    return Check(f"partial-sums[n={j.n}]", expected, got, _status(got == expected))


def three_term_check(d: PDCode, polarity: str = "A", engine: str = "auto", **caps) -> Check:
    """Top three coefficients of the reduced bracket from the state graph.

    For ``polarity='B'`` the bottom of the bracket is read through the
    mirror image, whose A-graph is this diagram's B-graph.
    """
    cid = f"bracket-three-term[{polarity}]"
    s = graph_stats(d, polarity)
    if not s.adequate:
        return Check(cid, None, None, INAPPLICABLE, f"{polarity}-graph has loops")
    p = bracket(d, engine, **caps).reduced
    if polarity == "B":
        p = p.substitute_inverse()
    c, v, e = len(d.crossings), s.v, s.e
    top = c + 2 * v - 2
    sign = -1 if (v - 1) % 2 else 1
    expected = (sign, -sign * (e - v + 1), sign * third_coefficient(s))
    got = tuple(p.coeff(top - 4 * i) for i in range(3))
    return Check(cid, expected, got, _status(got == expected),
                 f"v={v} e={e} mu={s.mu} theta={s.theta} tau={s.tau}")


# -- census and volume bounds -----------------------------------------------------

@dataclass(frozen=True)
class CensusEntry:
    name: str
    volume: float | None
    alternating: bool
    prime: bool
    torus: bool
    note: str = ""

    def __post_init__(self):
        if self.volume is not None and not self.volume > 0:
            raise ValueError(f"{self.name}: volume must be positive")


def _flag(text: str) -> bool:
    t = text.strip().lower()
    if t in ("true", "yes", "y", "1"):
        return True
    if t in ("false", "no", "n", "0"):
        return False
    raise ValueError(f"bad boolean {text!r}")


def load_census(path) -> dict[str, CensusEntry]:
    """CSV ``name,volume,alternating,prime,torus``; blank volume = none recorded."""
    out = {}
    with open(path, newline="") as fh:
        rows = csv.DictReader(line for line in fh if not line.startswith("#"))
        for row in rows:
            vol = row["volume"].strip()
            out[row["name"].strip()] = CensusEntry(
                name=row["name"].strip(),
                volume=float(vol) if vol else None,
                alternating=_flag(row["alternating"]),
                prime=_flag(row["prime"]),
                torus=_flag(row["torus"]),
                note=(row.get("note") or "").strip(),
            )
    return out


def volume_bounds(source: HeadTail | Prediction, census: CensusEntry | None) -> Check:
    """``2 v0 (max(|b|,|beta|) - 1) <= Vol <= 10 v0 (|b| + |beta| - 1)``."""
    if census is None:
        raise MissingVolume("knot is not in the census")
    if isinstance(source, Prediction):
        b, beta = abs(source.b), abs(source.beta)
    else:
        b, beta = abs(source.head[1]), abs(source.tail[1])
    lower = 2 * V0 * (max(b, beta) - 1)
    upper = 10 * V0 * (b + beta - 1)
    expected = [lower, upper]
    if not census.alternating or not census.prime or census.torus:
        return Check("volume-bounds", expected, census.volume, INAPPLICABLE,
                     "needs an alternating, prime, non-torus knot")
    if census.volume is None:
        raise MissingVolume(f"no volume recorded for {census.name}")
    vol = census.volume
    ok = lower <= vol + VOLUME_TOL and vol <= upper + VOLUME_TOL
    return Check("volume-bounds", expected, vol, _status(ok), f"|b|={b} |beta|={beta}")


# -- full verification --------------------------------------------------------------

@dataclass
class VerificationReport:
    knot: str | None
    crossings: int
    checks: list[Check] = field(default_factory=list)
    colors: list[int] = field(default_factory=list)
    untested: list[int] = field(default_factory=list)
    headtails: dict[int, HeadTail] = field(default_factory=dict)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "knot": self.knot,
            "crossings": self.crossings,
            "colors": self.colors,
            "untested_colors": self.untested,
            "passed": self.passed,
            "headtail": {
                str(n): {"head": list(h.head), "tail": list(h.tail), "q_span": h.q_span,
                         "degenerate": h.degenerate}
                for n, h in self.headtails.items()
            },
            "checks": [c.to_json() for c in self.checks],
        }


def verify_stabilization(
    d: PDCode,
    n_max: int,
    engine: str = "auto",
    census: CensusEntry | None = None,
    cache: ResultCache | None = None,
    naive_cap: int = NAIVE_CAP,
    frontier_cap: int = FRONTIER_CAP,
    colors: Iterable[int] | None = None,
) -> VerificationReport:
    """Compute ``J'_K(n)`` for ``n = 2..n_max`` and run every check."""
    caps = {"naive_cap": naive_cap, "frontier_cap": frontier_cap}
    report = VerificationReport(d.name, len(d.crossings))
    sa, sb = graph_stats(d, "A"), graph_stats(d, "B")
    alternating = is_alternating(d)
    reduced_alt = alternating and sa.adequate and sb.adequate

    for pol in ("A", "B"):
        report.add(three_term_check(d, pol, engine, **caps))

    jones: dict[int, ColoredJones] = {}
    for n in (colors or range(2, n_max + 1)):
        try:
            jones[n] = cached_colored_jones(d, n, engine, cache, **caps)
            report.colors.append(n)
        except (FrontierTooWide, TooLarge) as exc:
            log.warning("%s color %d not computed: %s", d.name, n, exc)
            report.untested.append(n)
            report.add(Check(f"compute[n={n}]", None, None, SKIPPED, str(exc)))

    sides = (("head", "A", sa), ("tail", "B", sb))
    for n, j in jones.items():
        ht = head_tail(j)
        report.headtails[n] = ht
        report.add(partial_sum_check(j))
        if reduced_alt:
            report.add(verify_span(j, len(d.crossings)))
        else:
            report.add(Check(f"span[n={n}]", None, None, INAPPLICABLE,
                             "needs a reduced alternating diagram"))
        for side, pol, st in sides:
            got = ht.head if side == "head" else ht.tail
            if not st.adequate:
                report.add(Check(f"{side}[n={n}]", None, got, INAPPLICABLE,
                                 f"diagram is not {pol}-adequate"))
                continue
            b = st.e - st.v + 1
            if not reduced_alt:
                # only |a| and |b| are predicted off the alternating class
                got2 = tuple(abs(x) for x in got[:2])
                report.add(Check(f"{side}[n={n}]", (1, b), got2, _status(got2 == (1, b)),
                                 "first two coefficients only"))
                continue
            exp_signed = (1, -b, _third(st, b, n))
            exp_abs = tuple(abs(x) for x in exp_signed)
            got_abs = tuple(abs(x) for x in got)
            detail = "c2 formula with n(2)" if n == 2 else ""
            report.add(Check(f"{side}[n={n}]", exp_abs, got_abs, _status(got_abs == exp_abs), detail))
            alternates = ht.head_alternating if side == "head" else ht.tail_alternating
            report.add(Check(f"{side}-sign[n={n}]", exp_signed, got,
                             _status(_signed_match(got, exp_signed)),
                             f"sign pattern alternates: {alternates}"))

    ns = sorted(report.headtails)
    for side, pol, st in sides:
        third = [n for n in ns if n >= 3]
        if len(third) >= 2:
            vals = [getattr(report.headtails[n], f"abs_{side}") for n in third]
            cid = f"{side}-stable[n={third[0]}..{third[-1]}]"
            if reduced_alt:
                report.add(Check(cid, vals[0], vals, _status(all(v == vals[0] for v in vals))))
            else:
                report.add(Check(cid, None, vals, INAPPLICABLE, "needs a reduced alternating diagram"))
        if len(ns) >= 2:
            vals = [getattr(report.headtails[n], f"abs_{side}")[:2] for n in ns]
            cid = f"{side}-second-stable[n={ns[0]}..{ns[-1]}]"
            if st.adequate:
                report.add(Check(cid, vals[0], vals, _status(all(v == vals[0] for v in vals))))
            else:
                report.add(Check(cid, None, vals, INAPPLICABLE, f"diagram is not {pol}-adequate"))

    if census is not None:
        try:
            pred = predict(sa, sb, 2, reduced_alt)
            report.add(volume_bounds(pred, census))
        except Inapplicable as exc:
            report.add(Check("volume-bounds", None, census.volume, INAPPLICABLE, str(exc)))
        except MissingVolume as exc:
            report.add(Check("volume-bounds", None, None, SKIPPED, str(exc)))
    else:
        report.add(Check("volume-bounds", None, None, SKIPPED, "knot is not in the census"))
    return report


def mirror_prediction(p: Prediction) -> Prediction:
    """Prediction for the mirror image: head and tail trade places."""
    return Prediction(p.n, p.stats_b, p.stats_a, p.tail_signed, p.head_signed)

