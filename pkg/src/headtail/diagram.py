"""Planar-diagram (PD) codes: parsing, orientation, mirror images and cables.

A crossing ``X[a, b, c, d]`` lists its four arc labels counterclockwise,
starting from the incoming under-strand, so the under-strand runs ``a -> c``
and the over-strand occupies ``b`` and ``d``.  The crossing is positive when
the over-strand runs ``d -> b``.  Orientation of the over-strand is recovered
by walking the knot, which also handles one-crossing kinks such as
``X[1,1,2,2]`` where label arithmetic alone is ambiguous.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

# Splice pairings of slot positions (0=a, 1=b, 2=c, 3=d).  The A-splice
# joins (a,b) and (c,d); this is the single place that fixes the convention.
A_SPLICE = ((0, 1), (2, 3))
B_SPLICE = ((0, 3), (1, 2))
SPLICES = {"A": A_SPLICE, "B": B_SPLICE}


class PDError(ValueError):
    """Base class for invalid planar-diagram input."""


class ParseError(PDError):
    pass


class LabelError(PDError):
    pass


class OrientationError(PDError):
    """The under-strand entries are inconsistent with any orientation."""


class MultiComponent(PDError):
    pass


@dataclass(frozen=True)
class Crossing:
    slots: tuple[int, int, int, int]
    sign: int

    def __str__(self) -> str:
        return "X[{},{},{},{}]".format(*self.slots)


@dataclass(frozen=True)
class PDCode:
    """An oriented diagram: crossings plus crossingless circles.

    ``loops`` counts components that meet no crossing (the 0-crossing unknot
    has ``loops == 1``).  ``components`` includes them.
    """

    crossings: tuple[Crossing, ...]
    loops: int = 0
    components: int = 1
    name: str | None = field(default=None, compare=False)

    @property
    def arc_count(self) -> int:
        return 2 * len(self.crossings)

    def __len__(self) -> int:
        return len(self.crossings)

    @property
    def degenerate(self) -> bool:
        """True when some crossing repeats a label (a reduced kink)."""
        return any(len(set(x.slots)) < 4 for x in self.crossings)

    def text(self) -> str:
        if not self.crossings:
            return "PD[]" if self.loops == 1 else " ".join(["PD[]"] * self.loops)
        return " ".join(str(x) for x in self.crossings)

    def __str__(self) -> str:
        return f"{self.name} : {self.text()}" if self.name else self.text()

    @classmethod
    def unknot(cls, name: str | None = "0_1") -> "PDCode":
        return cls((), loops=1, components=1, name=name)

    @classmethod
    def from_slots(
        cls,
        slots: Iterable[Sequence[int]],
        loops: int = 0,
        name: str | None = None,
        allow_links: bool = False,
    ) -> "PDCode":
        """Validate raw slot tuples and build a PDCode with derived signs."""
        raw = [tuple(int(v) for v in s) for s in slots]
        for s in raw:
            if len(s) != 4:
                raise ParseError(f"crossing needs 4 labels, got {s}")
        if not raw and loops == 0:
            raise ParseError("empty diagram")
        counts = Counter(v for s in raw for v in s)
        bad = sorted(v for v, k in counts.items() if k != 2)
        if bad:
            raise LabelError(f"labels {bad} do not appear exactly twice")
        if raw and set(counts) != set(range(1, 2 * len(raw) + 1)):
            raise LabelError(f"labels must be exactly 1..{2 * len(raw)}")
        signs, comps = _orient(raw)
        comps += loops
        if comps > 1 and not allow_links:
            raise MultiComponent(f"diagram has {comps} components; only knots are accepted")
        crossings = tuple(Crossing(s, sg) for s, sg in zip(raw, signs))
        return cls(crossings, loops=loops, components=comps, name=name)


def _slot_partner(raw: list[tuple[int, ...]]) -> dict[tuple[int, int], tuple[int, int]]:
    where: dict[int, list[tuple[int, int]]] = {}
    for i, s in enumerate(raw):
        for p, v in enumerate(s):
            where.setdefault(v, []).append((i, p))
    partner = {}
    for u, w in where.values():
        partner[u] = w
        partner[w] = u
    return partner


def _orient(raw: list[tuple[int, ...]]) -> tuple[list[int], int]:
    """Walk every component; return crossing signs and component count."""
    partner = _slot_partner(raw)
    entered: set[tuple[int, int]] = set()
    over_in: dict[int, int] = {}
    comps = 0

    def walk(start: tuple[int, int]) -> None:
        slot = start
        while True:
            i, p = slot
            if slot in entered:
                return
            if p == 2 or (i, (p + 2) % 4) in entered:
                raise OrientationError(
                    f"strand enters crossing {i} ({'X[%d,%d,%d,%d]' % raw[i]}) against its under-strand direction"
                )
            entered.add(slot)
            if p in (1, 3):
                over_in[i] = p
            slot = partner[(i, (p + 2) % 4)]

    for i in range(len(raw)):
        if (i, 0) not in entered:
            comps += 1
            walk((i, 0))
    # components that only ever pass over: orientation is arbitrary, take d -> b
    for i in range(len(raw)):
        if i not in over_in:
            comps += 1
            walk((i, 3))
    signs = [1 if over_in[i] == 3 else -1 for i in range(len(raw))]
    return signs, comps


# -- text form ----------------------------------------------------------------

_X = re.compile(r"X\s*\[\s*([^\]]*)\]")
_PD = re.compile(r"^PD\s*\[(.*)\]$", re.S)


def parse_pd(text: str, name: str | None = None) -> PDCode:
    """Parse one diagram: ``[name :] X[a,b,c,d] X[...] ...``.

    ``PD[...]`` wrappers are accepted, and ``PD[]`` is the crossingless
    unknot.
    """
    body = text.strip()
    if ":" in body and "[" not in body.split(":", 1)[0]:
        label, body = body.split(":", 1)
        name = label.strip() or name
        body = body.strip()
    if not body:
        raise ParseError("no crossings given")
    m = _PD.match(body)
    if m:
        body = m.group(1).strip()
        if not body:
            return PDCode.unknot(name)
    slots = []
    pos = 0
    for m in _X.finditer(body):
        if body[pos:m.start()].strip(" \t,"):
            raise ParseError(f"unexpected text {body[pos:m.start()].strip()!r}")
        try:
            labels = [int(v) for v in m.group(1).split(",")]
        except ValueError:
            raise ParseError(f"non-integer label in {m.group(0)!r}") from None
        if len(labels) != 4:
            raise ParseError(f"{m.group(0)!r} does not have 4 labels")
        if min(labels) < 1:
            raise ParseError(f"labels must be positive in {m.group(0)!r}")
        slots.append(labels)
        pos = m.end()
    if body[pos:].strip(" \t,") or not slots:
        raise ParseError(f"cannot parse {body[pos:].strip() or body!r}")
    return PDCode.from_slots(slots, name=name)


@dataclass
class ParsedLine:
    line_no: int
    text: str
    name: str | None
    diagram: PDCode | None
    error: PDError | None


def parse_lines(text: str) -> Iterator[ParsedLine]:
    """Parse a knot file, one diagram per line; ``#`` starts a comment."""
    for no, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        name = None
        if ":" in body and "[" not in body.split(":", 1)[0]:
            name = body.split(":", 1)[0].strip() or None
        try:
            yield ParsedLine(no, body, name, parse_pd(body), None)
        except PDError as exc:
            yield ParsedLine(no, body, name, None, exc)


def load_knots(path) -> list[PDCode]:
    """Read a knot file; raise on the first bad line."""
    with open(path) as fh:
        text = fh.read()
    out = []
    for pl in parse_lines(text):
        if pl.error is not None:
            raise type(pl.error)(f"line {pl.line_no}: {pl.error}")
        out.append(pl.diagram)
    return out


# -- invariants of the diagram ---------------------------------------------------

def writhe(d: PDCode) -> int:
    return sum(x.sign for x in d.crossings)


def mirror(d: PDCode) -> PDCode:
    """Exchange over and under at every crossing."""
    slots = []
    for x in d.crossings:
        a, b, c, e = x.slots
        # new incoming under-strand is the old incoming over-strand
        slots.append((e, a, b, c) if x.sign > 0 else (b, c, e, a))
    name = None if d.name is None else (d.name[:-1] if d.name.endswith("*") else d.name + "*")
    return PDCode.from_slots(slots, loops=d.loops, name=name, allow_links=True) if slots else \
        PDCode((), d.loops, d.components, name)


def splice_all(d: PDCode, choice: Sequence[str] | str) -> int:
    """Number of circles after splicing crossing ``i`` by ``choice[i]`` (``'A'``/``'B'``)."""
    if len(choice) != len(d.crossings):
        raise ValueError("choice length must equal the crossing count")
    uf = UnionFind(range(1, d.arc_count + 1))
    for x, ch in zip(d.crossings, choice):
        for p, q in SPLICES[ch]:
            uf.union(x.slots[p], x.slots[q])
    return uf.count + d.loops


class UnionFind:
    """Union by size with an undo log (no path compression, so undo is exact)."""

    def __init__(self, items: Iterable = ()):
        self.parent = {x: x for x in items}
        self.size = dict.fromkeys(self.parent, 1)
        self.count = len(self.parent)
        self._log: list = []

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            x = parent[x]
        return x

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            self._log.append(None)
            return False
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        self.count -= 1
        self._log.append(ry)
        return True

    def undo(self) -> None:
        ry = self._log.pop()
        if ry is None:
            return
        rx = self.parent[ry]
        self.parent[ry] = ry
        self.size[rx] -= self.size[ry]
        self.count += 1


# -- blackboard cabling ------------------------------------------------------------

def cable(d: PDCode, n: int) -> PDCode:
    """Blackboard ``n``-cable: ``n`` parallel copies of every strand.

    Each crossing becomes an ``n x n`` grid of crossings of the same sign.
    Arc labels of the result are assigned by walking each component in
    turn, so the output is deterministic.
    """
    if n < 1:
        raise ValueError("cable needs n >= 1")
    if n == 1:
        return d
    grid: list[tuple] = []
    for i, x in enumerate(d.crossings):
        a, b, c, e = x.slots
        over_in, over_out = (e, b) if x.sign > 0 else (b, e)

        def under_seg(u, t, i=i, a=a, c=c):
            if t == 0:
                return ("ext", a, u)
            if t == n:
                return ("ext", c, u)
            return ("u", i, u, t)

        def over_seg(j, t, i=i, over_in=over_in, over_out=over_out):
            if t == 0:
                return ("ext", over_in, j)
            if t == n:
                return ("ext", over_out, j)
            return ("o", i, j, t)

        # copies are indexed from the left of their direction of travel;
        # the under-strand runs south -> north with copy u in column u
        for y in range(n):
            j = n - 1 - y if x.sign > 0 else y
            for u in range(n):
                if x.sign > 0:
                    west, east = over_seg(j, u), over_seg(j, u + 1)
                else:
                    east, west = over_seg(j, n - 1 - u), over_seg(j, n - u)
                grid.append((under_seg(u, y), east, under_seg(u, y + 1), west))
    slots = _relabel(grid)
    name = None if d.name is None else f"{d.name}^{n}"
    if not slots:
        return PDCode((), d.loops * n, d.loops * n, name)
    return PDCode.from_slots(slots, loops=d.loops * n, name=name, allow_links=True)


def _relabel(grid: list[tuple]) -> list[tuple[int, int, int, int]]:
    """Replace provisional arc keys by 1..2c, consecutive along each component."""
    partner = _slot_partner(grid)
    label: dict = {}
    entered: set = set()

    def walk(slot):
        while slot not in entered:
            entered.add(slot)
            ci, p = slot
            out = (ci, (p + 2) % 4)
            label.setdefault(grid[ci][out[1]], len(label) + 1)
            slot = partner[out]

    for i in range(len(grid)):
        if (i, 0) not in entered:
            walk((i, 0))
    for i in range(len(grid)):
        if (i, 1) not in entered and (i, 3) not in entered:
            walk((i, 3))
    return [tuple(label[k] for k in x) for x in grid]


def is_alternating(d: PDCode) -> bool:
    """True when every strand alternates over/under along each component."""
    if not d.crossings:
        return True
    raw = [x.slots for x in d.crossings]
    partner = _slot_partner(raw)
    for i, x in enumerate(d.crossings):
        # leaving crossing i along the under-strand, the next pass must be over
        j, p = partner[(i, 2)]
        if p in (0, 2):
            return False
        # leaving along the over-strand, the next pass must be under
        out = 1 if x.sign > 0 else 3
        j, p = partner[(i, out)]
        if p in (1, 3):
            return False
    return True
