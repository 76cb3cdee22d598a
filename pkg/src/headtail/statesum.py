"""Kauffman bracket engines and the colored Jones polynomial.

Two independent engines compute the bracket:

* :func:`bracket_naive` enumerates all ``2^c`` states.  It is the oracle.
* :func:`bracket_frontier` sweeps the crossings one at a time and keeps, for
  every way the open arc ends can be paired through the processed part, the
  accumulated weight.  It handles cables with dozens of crossings.

The colored Jones polynomial follows the Chebyshev cabling formula

    J_K(m+1) = ((-1)^m A^(m^2+2m))^(-w) (-1)^(m-1) [2] <S_m(D)>

evaluated with the unreduced bracket ``<<.>>`` (``<<empty>> = 1``).  Since
``[2] = -delta`` and ``<<D>> = delta <D>``, the prefactor
``(-1)^(m-1) [2] <S_m(D)>`` equals ``(-1)^m <<S_m(D)>>``, which is what is
computed; the unknot check ``J_O(n) = [n]`` pins this identity.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .algebra import (
    DELTA,
    ONE,
    LaurentPoly,
    chebyshev,
    div_exact,
    quantum_integer,
)
from .diagram import A_SPLICE, B_SPLICE, PDCode, UnionFind, cable, writhe

log = logging.getLogger(__name__)

NAIVE_CAP = 16
FRONTIER_CAP = 10**6


class TooLarge(RuntimeError):
    """The brute-force engine refuses diagrams above its crossing cap."""


class FrontierTooWide(RuntimeError):
    """The frontier sweep exceeded its cap on the number of pairings."""


class Convention(enum.Enum):
    REDUCED = "reduced"  # <unknot> = 1
    UNREDUCED = "unreduced"  # <<empty>> = 1, <<unknot>> = delta


@dataclass(frozen=True)
class BracketValue:
    poly: LaurentPoly
    convention: Convention

    @property
    def reduced(self) -> LaurentPoly:
        if self.convention is Convention.REDUCED:
            return self.poly
        return div_exact(self.poly, DELTA)

    @property
    def unreduced(self) -> LaurentPoly:
        if self.convention is Convention.UNREDUCED:
            return self.poly
        return self.poly * DELTA


@lru_cache(maxsize=None)
def delta_power(k: int) -> LaurentPoly:
    if k == 0:
        return ONE
    return delta_power(k - 1) * DELTA


# -- brute force ---------------------------------------------------------------

def bracket_naive(d: PDCode, cap: int = NAIVE_CAP) -> BracketValue:
    """Reduced bracket as the sum over all ``2^c`` states."""
    c = len(d.crossings)
    if c > cap:
        raise TooLarge(
            f"{c} crossings exceed the brute-force cap of {cap}; "
            "use the frontier engine or raise --naive-cap"
        )
    if c == 0:
        return BracketValue(delta_power(d.loops - 1), Convention.REDUCED)
    uf = UnionFind(range(1, d.arc_count + 1))
    pairs = [
        [(x.slots[p], x.slots[q]) for p, q in A_SPLICE] + [(x.slots[p], x.slots[q]) for p, q in B_SPLICE]
        for x in d.crossings
    ]
    # counts[(number of B-splices, number of circles)]
    counts: dict[tuple[int, int], int] = {}

    def visit(i: int, beta: int) -> None:
        if i == c:
            key = (beta, uf.count)
            counts[key] = counts.get(key, 0) + 1
            return
        p = pairs[i]
        uf.union(*p[0])
        uf.union(*p[1])
        visit(i + 1, beta)
        uf.undo()
        uf.undo()
        uf.union(*p[2])
        uf.union(*p[3])
        visit(i + 1, beta + 1)
        uf.undo()
        uf.undo()

    visit(0, 0)
    total: dict[int, int] = {}
    for (beta, circles), k in counts.items():
        for e, v in delta_power(circles + d.loops - 1):
            key = e + c - 2 * beta
            total[key] = total.get(key, 0) + k * v
    return BracketValue(LaurentPoly(total), Convention.REDUCED)


# -- frontier sweep ----------------------------------------------------------------

def _greedy_order(labels, start: int) -> tuple[list[int], list[int]]:
    """Greedy sweep from ``start``; returns the order and the open-arc counts."""
    remaining = set(range(len(labels)))
    open_: set[int] = set()
    order, widths = [], []
    i = start
    while True:
        order.append(i)
        remaining.discard(i)
        for v in set(labels[i]):
            if v in open_:
                open_.discard(v)
            elif labels[i].count(v) == 1:
                open_.add(v)
        widths.append(len(open_))
        if not remaining:
            return order, widths
        best = None
        for j in remaining:
            s = labels[j]
            closes = sum(1 for v in set(s) if v in open_)
            opens = sum(1 for v in set(s) if v not in open_ and s.count(v) == 1)
            key = (opens - closes, -closes, min(s), j)
            if best is None or key < best[0]:
                best = (key, j)
        i = best[1]


def crossing_order(d: PDCode) -> list[int]:
    """Crossing order keeping the set of open arcs small.

    From each starting crossing, repeatedly take the crossing that opens the
    fewest new arcs (ties: most arcs closed, then smallest arc label).  The
    run with the smallest peak width wins, then the smallest sum of
    ``2^width``, then the smallest start index.
    """
    labels = [x.slots for x in d.crossings]
    if not labels:
        return []
    best = None
    for start in range(len(labels)):
        order, widths = _greedy_order(labels, start)
        key = (max(widths), sum(1 << w for w in widths), start)
        if best is None or key < best[0]:
            best = (key, order)
    return best[1]


def _apply(partner: dict[int, int], pairs) -> int:
    """Join each ``(x, y)`` through the frontier in place; return loops closed."""
    loops = 0
    for x, y in pairs:
        if x == y:
            loops += 1
            continue
        px = partner.pop(x, None)
        py = partner.pop(y, None)
        if px is None and py is None:
            partner[x] = y
            partner[y] = x
        elif px is None:
            # y was open: x takes over y's far end
            if py == x:
                loops += 1
            else:
                partner[py] = x
                partner[x] = py
        elif py is None:
            partner[px] = y
            partner[y] = px
        elif px == y:
            loops += 1
        else:
            partner[px] = py
            partner[py] = px
    return loops


def bracket_frontier(d: PDCode, cap: int = FRONTIER_CAP) -> BracketValue:
    """Unreduced bracket by a frontier sweep, converted to the reduced one.

    Each frontier state maps the open arc labels to their partners.  Its
    weight is stored as a packed integer: digit ``i`` (``bits`` wide,
    two's-complement balanced) is the coefficient of ``A^(low + 2i)``.  All
    weights at a given step share exponent parity, so steps of ``A^2``
    suffice.
    """
    c = len(d.crossings)
    if c == 0:
        return BracketValue(delta_power(d.loops - 1), Convention.REDUCED)
    # |coefficient| <= 2^c * 2^(circles) with circles <= c + components
    bits = 2 * c + d.components + 4
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    delta_packed = {}

    def times_delta(p: int, m: int) -> int:
        # delta = -A^-2 (1 + X^2) with X = A^2; the A^-2 goes into the offset
        f = delta_packed.get(m)
        if f is None:
            f = sum(comb(m, k) << (2 * bits * k) for k in range(m + 1))
            delta_packed[m] = f
        return p * f if m % 2 == 0 else -(p * f)

    order = crossing_order(d)
    # frontier key: tuple of partners for the open labels in sorted order
    states: dict[tuple, tuple[int, int]] = {(): (1, 0)}
    open_labels: list[int] = []
    peak = 1
    for i in order:
        s = d.crossings[i].slots
        splices = (
            ((s[A_SPLICE[0][0]], s[A_SPLICE[0][1]]), (s[A_SPLICE[1][0]], s[A_SPLICE[1][1]])),
            ((s[B_SPLICE[0][0]], s[B_SPLICE[0][1]]), (s[B_SPLICE[1][0]], s[B_SPLICE[1][1]])),
        )
        after = set(open_labels)
        for v in set(s):
            if v in after:
                after.discard(v)
            elif s.count(v) == 1:
                after.add(v)
        new_open = sorted(after)
        new_states: dict[tuple, tuple[int, int]] = {}
        for key, (val, low) in states.items():
            for splice, shift in zip(splices, (1, -1)):
                partner = dict(zip(open_labels, key))
                m = _apply(partner, splice)
                nval = times_delta(val, m) if m else val
                nlow = low + shift - 2 * m
                nkey = tuple(partner[v] for v in new_open)
                old = new_states.get(nkey)
                if old is None:
                    new_states[nkey] = (nval, nlow)
                else:
                    oval, olow = old
                    if olow <= nlow:
                        new_states[nkey] = (oval + (nval << (bits * ((nlow - olow) >> 1))), olow)
                    else:
                        new_states[nkey] = (nval + (oval << (bits * ((olow - nlow) >> 1))), nlow)
        states = new_states
        open_labels = new_open
        peak = max(peak, len(states))
        if len(states) > cap:
            raise FrontierTooWide(
                f"frontier reached {len(states)} pairings (cap {cap}); raise --frontier-cap"
            )
    log.debug("frontier sweep of %d crossings: peak %d pairings", c, peak)
    (val, low), = states.values()
    terms = {}
    k = 0
    while val:
        digit = val & mask
        if digit >= half:
            digit -= 1 << bits
        if digit:
            terms[low + 2 * k] = digit
        val = (val - digit) >> bits
        k += 1
    poly = LaurentPoly(terms) * delta_power(d.loops)
    return BracketValue(poly, Convention.UNREDUCED)


# -- engine selection -----------------------------------------------------------

ENGINES = ("auto", "naive", "frontier")


def bracket(d: PDCode, engine: str = "auto", naive_cap: int = NAIVE_CAP,
            frontier_cap: int = FRONTIER_CAP) -> BracketValue:
    if engine == "auto":
        engine = "naive" if len(d.crossings) <= naive_cap else "frontier"
    if engine == "naive":
        return bracket_naive(d, naive_cap)
    if engine == "frontier":
        return bracket_frontier(d, frontier_cap)
    raise ValueError(f"unknown engine {engine!r}")


def bracket_combination(d: PDCode, n: int, engine: str = "auto", **caps) -> LaurentPoly:
    """Unreduced bracket of ``S_n(D) = sum_k c_k D^k``; the 0-cable is empty."""
    total = LaurentPoly()
    for k, ck in chebyshev(n).coeffs:
        if k == 0:
            total = total + ck
        else:
            total = total + bracket(cable(d, k), engine, **caps).unreduced.scale(ck)
    return total


@dataclass(frozen=True)
class ColoredJones:
    """``J_K(n)`` and ``J'_K(n) = J_K(n) / [n]``; ``n`` is the color (dimension)."""

    knot: str | None
    n: int
    unnormalized: LaurentPoly
    normalized: LaurentPoly


def colored_jones(d: PDCode, n: int, engine: str = "auto", **caps) -> ColoredJones:
    """Colored Jones polynomial of color ``n`` (``n = 2`` is the Jones polynomial)."""
    if n < 1:
        raise ValueError("color must be >= 1")
    m = n - 1
    w = writhe(d)
    framing = LaurentPoly.monomial(-(m * m + 2 * m) * w, -1 if (m * w + m) % 2 else 1)
    j = framing * bracket_combination(d, m, engine, **caps)
    return ColoredJones(d.name, n, j, div_exact(j, quantum_integer(n)))


def jones_from_bracket(d: PDCode, engine: str = "naive", **caps) -> LaurentPoly:
    """Classical Jones polynomial in ``A``: ``(-A^3)^(-w) <D>``.

    Independent of the cabling path; used to check ``J'_K(2)``.
    """
    w = writhe(d)
    factor = LaurentPoly.monomial(-3 * w, -1 if w % 2 else 1)
    return factor * bracket(d, engine, **caps).reduced
