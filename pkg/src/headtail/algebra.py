"""Exact sparse Laurent polynomials in the bracket variable ``A``.

Coefficients are Python integers, so nothing ever overflows.  Values are
immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping


class NotDivisible(ArithmeticError):
    """Raised when an exact Laurent quotient does not exist."""


class NotOnLattice(ValueError):
    """Raised when exponents are not all congruent modulo 4."""


class ZeroPolynomial(ValueError):
    """Raised by degree-type queries on the zero polynomial."""


class LaurentPoly:
    """Sparse Laurent polynomial ``sum c_k A^k`` with integer coefficients.

    The zero polynomial is the empty term map; zero coefficients are never
    stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[int, int] = {}
        for k, c in items:
            k = int(k)
            clean[k] = clean.get(k, 0) + int(c)
        self._terms = {k: c for k, c in sorted(clean.items()) if c}
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> "LaurentPoly":
        # terms must already be free of zero coefficients
        p = cls.__new__(cls)
        p._terms = dict(sorted(terms.items()))
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    # -- read access --------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        """A copy of the exponent -> coefficient map."""
        return dict(self._terms)

    def coeff(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def exponents(self) -> list[int]:
        return list(self._terms)

    def max_degree(self) -> int:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no degree")
        return next(reversed(self._terms))

    def min_degree(self) -> int:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no degree")
        return next(iter(self._terms))

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        return _coerce(other) - self

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _coerce(other)
        out: dict[int, int] = {}
        for i, a in self._terms.items():
            for j, b in other._terms.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return LaurentPoly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._terms) == 1:
                (k, c), = self._terms.items()
                if c in (1, -1):
                    return LaurentPoly({-k * -n: c ** -n})
            raise NotDivisible("only unit monomials have Laurent inverses")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``A**k``."""
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def scale(self, c: int) -> "LaurentPoly":
        if c == 0:
            return ZERO
        return LaurentPoly._raw({e: c * v for e, v in self._terms.items()})

    def substitute_inverse(self) -> "LaurentPoly":
        """Return ``p(A**-1)``."""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # -- text / json --------------------------------------------------------

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({to_text(self)!r})"

    def to_json(self) -> list[list]:
        """``[[exponent, "coefficient"], ...]`` in descending exponent order."""
        return [[k, str(c)] for k, c in sorted(self._terms.items(), reverse=True)]

    @classmethod
    def from_json(cls, data: Iterable) -> "LaurentPoly":
        return cls((int(k), int(c)) for k, c in data)


def _coerce(x: "LaurentPoly | int") -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.constant(x)
    raise TypeError(f"cannot combine LaurentPoly with {type(x).__name__}")


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
A = LaurentPoly.monomial(1)
DELTA = LaurentPoly({2: -1, -2: -1})  # value of a single circle, -A^2 - A^-2


def to_text(p: LaurentPoly, var: str = "A") -> str:
    """Render as ``c*A^k + ...`` with descending exponents; ``0`` for zero."""
    if p.is_zero():
        return "0"
    parts = []
    for k, c in sorted(p.terms.items(), reverse=True):
        mono = f"{c}" if k == 0 else f"{c}*{var}^{k}"
        if parts:
            parts.append(f"- {mono[1:]}" if c < 0 else f"+ {mono}")
        else:
            parts.append(mono)
    return " ".join(parts)


_TERM = re.compile(r"([+-]?)\s*(\d+)(?:\s*\*\s*([A-Za-z]+)(?:\^(-?\d+))?)?")


def from_text(text: str) -> LaurentPoly:
    """Inverse of :func:`to_text` (any single variable name is accepted)."""
    text = text.strip()
    if text == "0":
        return ZERO
    terms: dict[int, int] = {}
    pos = 0
    for m in _TERM.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"cannot parse polynomial text {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        exp = 0 if m.group(3) is None else int(m.group(4) or 1)
        terms[exp] = terms.get(exp, 0) + sign * int(m.group(2))
        pos = m.end()
    if text[pos:].strip() or not terms:
        raise ValueError(f"cannot parse polynomial text {text!r}")
    return LaurentPoly(terms)


# -- exact division ---------------------------------------------------------

def div_exact(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Return ``r`` with ``r * q == p``; raise :class:`NotDivisible` otherwise."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return ZERO
    qt = q.terms
    qhi = q.max_degree()
    qlo = q.min_degree()
    lead = qt[qhi]
    rem = p.terms
    quotient: dict[int, int] = {}
    lo = p.min_degree()
    # the quotient's lowest exponent is fixed by the lowest terms
    while rem:
        hi = max(rem)
        if hi - qhi < lo - qlo:
            raise NotDivisible(f"{p} is not divisible by {q}")
        c, r = divmod(rem[hi], lead)
        if r:
            raise NotDivisible(f"{p} is not divisible by {q}")
        shift = hi - qhi
        quotient[shift] = c
        for k, v in qt.items():
            e = k + shift
            s = rem.get(e, 0) - c * v
            if s:
                rem[e] = s
            else:
                rem.pop(e, None)
    return LaurentPoly(quotient)


# -- quantum integers and Chebyshev polynomials -----------------------------

def quantum_integer(n: int) -> LaurentPoly:
    """``[n] = A^(2n-2) + A^(2n-6) + ... + A^(2-2n)``; ``[0]`` is zero."""
    if n < 0:
        raise ValueError("quantum_integer needs n >= 0")
    return LaurentPoly({2 * n - 2 - 4 * i: 1 for i in range(n)})


@dataclass(frozen=True)
class ChebyshevExpansion:
    """Integer coefficients of ``S_n(x) = sum c_k x^k``, highest power first."""

    n: int
    coeffs: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def evaluate(self, x: LaurentPoly) -> LaurentPoly:
        result = ZERO
        for k, c in self.coeffs:
            result = result + (x ** k).scale(c)
        return result


@lru_cache(maxsize=None)
def chebyshev(n: int) -> ChebyshevExpansion:
    """Expansion of ``S_n`` from ``S_{n+1} = x S_n - S_{n-1}``, ``S_0 = 1``, ``S_1 = x``."""
    if n < 0:
        raise ValueError("chebyshev needs n >= 0")
    prev: dict[int, int] = {0: 1}
    if n == 0:
        return ChebyshevExpansion(0, ((0, 1),))
    cur: dict[int, int] = {1: 1}
    for _ in range(n - 1):
        nxt = {k + 1: c for k, c in cur.items()}
        for k, c in prev.items():
            nxt[k] = nxt.get(k, 0) - c
        prev, cur = cur, {k: c for k, c in nxt.items() if c}
    return ChebyshevExpansion(n, tuple(sorted(cur.items(), reverse=True)))


# -- q = A^4 lattice ----------------------------------------------------------

@dataclass(frozen=True)
class QPoly:
    """A polynomial on the lattice ``A^offset * q^k`` with ``q = A^4``.

    ``terms`` maps q-exponents to coefficients.  ``offset`` is in ``0..3``.
    """

    terms: tuple[tuple[int, int], ...]
    offset: int

    @property
    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def span(self) -> int:
        ks = [k for k, _ in self.terms]
        if not ks:
            raise ZeroPolynomial("zero polynomial has no span")
        return max(ks) - min(ks)

    def inverted(self) -> "QPoly":
        """The same polynomial re-indexed by ``A^-4``: q-exponents negate."""
        return QPoly(tuple(sorted((-k, c) for k, c in self.terms)), self.offset)

    def to_laurent(self) -> LaurentPoly:
        return LaurentPoly({4 * k + self.offset: c for k, c in self.terms})

    def to_text(self, var: str = "q") -> str:
        body = to_text(LaurentPoly(dict(self.terms)), var)
        if self.offset == 0:
            return body
        return f"A^{self.offset} * ({body})"


def to_q(p: LaurentPoly) -> QPoly:
    """Re-index ``p`` in ``q = A^4``; all exponents must agree modulo 4."""
    exps = p.exponents()
    if not exps:
        return QPoly((), 0)
    r = exps[0] % 4
    if any(e % 4 != r for e in exps):
        raise NotOnLattice(f"exponents of {p} are not congruent mod 4")
    return QPoly(tuple(((e - r) // 4, c) for e, c in p), r)


def span(p: LaurentPoly) -> int:
    """Highest minus lowest exponent."""
    return p.max_degree() - p.min_degree()
