"""Exact arithmetic of Steinitz (supernatural) numbers.

A Steinitz number is a formal product over all primes p of p^e(p) with
exponents in {0, 1, 2, ...} or infinity.  Values here use the cofinite
presentation: a *default* exponent shared by every prime not listed, plus a
finite map of exceptional primes.  That class is closed under every
operation this package needs (lcm, finite multiplication/division, rational
scaling) and covers shapes like the product of all primes (default 1) or a
single p^inf.

All values are immutable; all operations are pure functions.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import factorint, isprime

#: Exponent value standing for an infinite prime exponent.  Finite exponents
#: stay arbitrary-precision ints; only this one value is a float.
INF = math.inf

Exponent = int | float


class ParseError(ValueError):
    """Malformed textual input; carries the offending position."""

    def __init__(self, message: str, pos: int | None = None):
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
        self.pos = pos


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of a positive integer as sorted (p, e) pairs."""
    if n < 1:
        raise ValueError(f"cannot factor non-positive integer {n}")
    return tuple(sorted((int(p), int(e)) for p, e in factorint(n).items()))


@lru_cache(maxsize=None)
def _is_prime(p: int) -> bool:
    return bool(isprime(p))


def _check_exponent(e: Exponent) -> Exponent:
    if e is INF or e == INF:
        return INF
    if isinstance(e, int) and e >= 0:
        return e
    raise ValueError(f"exponent must be a nonnegative integer or INF, got {e!r}")


@dataclass(frozen=True)
class SteinitzNumber:
    """A Steinitz number in minimal cofinite presentation.

    ``default`` is the exponent of every prime not listed in ``exceptions``;
    each exception value differs from the default and keys are primes in
    increasing order.  Instances compare equal iff they denote the same
    number (the presentation is canonical).
    """

    default: Exponent
    exceptions: tuple[tuple[int, Exponent], ...]

    @classmethod
    def of(cls, default: Exponent = 0, exceptions: dict[int, Exponent] | None = None) -> "SteinitzNumber":
        default = _check_exponent(default)
        cleaned: dict[int, Exponent] = {}
        for p, e in (exceptions or {}).items():
            if not (isinstance(p, int) and _is_prime(p)):
                raise ValueError(f"exception key {p!r} is not a prime")
            e = _check_exponent(e)
            if e != default:
                cleaned[p] = e
        return cls(default, tuple(sorted(cleaned.items())))

    @classmethod
    def _make(cls, default: Exponent, exceptions: dict[int, Exponent]) -> "SteinitzNumber":
        # Trusted fast path for arithmetic results: primes and exponents
        # already validated, only minimality and ordering to restore.
        return cls(default, tuple(sorted((p, e) for p, e in exceptions.items() if e != default)))

    @classmethod
    def from_int(cls, n: int) -> "SteinitzNumber":
        """The natural number n viewed as a Steinitz number."""
        return cls.of(0, dict(factorize(n)))

    def valuation(self, p: int) -> Exponent:
        """Exponent of the prime p (exception value if listed, else default)."""
        for q, e in self.exceptions:
            if q == p:
                return e
            if q > p:
                break
        return self.default

    @property
    def is_natural(self) -> bool:
        return self.default == 0 and all(e != INF for _, e in self.exceptions)

    @property
    def is_infinite(self) -> bool:
        return not self.is_natural

    @property
    def is_infinity_free(self) -> bool:
        return self.default != INF and all(e != INF for _, e in self.exceptions)

    def as_int(self) -> int:
        """The value as a Python int; only defined for natural numbers."""
        if not self.is_natural:
            raise ValueError(f"{self} is not a natural number")
        n = 1
        for p, e in self.exceptions:
            n *= p ** e
        return n

    def __str__(self) -> str:
        terms = []
        for p, e in self.exceptions:
            if e == 1:
                terms.append(str(p))
            elif e == INF:
                terms.append(f"{p}^inf")
            else:
                terms.append(f"{p}^{e}")
        if self.default == 1:
            terms.append("P")
        elif self.default == INF:
            terms.append("P^inf")
        elif self.default != 0:
            terms.append(f"P^{self.default}")
        return "*".join(terms) if terms else "1"

    def __repr__(self) -> str:
        return f'SteinitzNumber("{self}")'


ONE = SteinitzNumber.of(0, {})

_TERM_RE = re.compile(r"^(?:(?P<prime>\d+)|(?P<all>P))(?:\^(?P<exp>\d+|inf))?$")


def parse(text: str) -> SteinitzNumber:
    """Parse the canonical product grammar.

    Terms are separated by ``*``: ``p^e`` with p a prime literal and e a
    nonnegative integer or ``inf``; a bare ``p`` means ``p^1``; at most one
    ``P^e`` term assigns e to every unlisted prime (absent means default 0).
    The literal ``1`` denotes the empty product.

    >>> parse("2^inf*3^2")
    SteinitzNumber("2^inf*3^2")
    """
    stripped = text.strip()
    if stripped == "1":
        return ONE
    if not stripped:
        raise ParseError("empty Steinitz expression", 0)
    exceptions: dict[int, Exponent] = {}
    default: Exponent | None = None
    offset = 0
    for raw in text.split("*"):
        term = raw.strip()
        pos = offset + (len(raw) - len(raw.lstrip()))
        offset += len(raw) + 1
        m = _TERM_RE.match(term)
        if m is None:
            raise ParseError(f"malformed term {term!r}, expected p^e or P^e", pos)
        exp_text = m.group("exp")
        e: Exponent = 1 if exp_text is None else (INF if exp_text == "inf" else int(exp_text))
        if m.group("all"):
            if default is not None:
                raise ParseError("duplicate P term", pos)
            default = e
            continue
        p = int(m.group("prime"))
        if not _is_prime(p):
            raise ParseError(f"non-prime base {p}", pos)
        if p in exceptions:
            raise ParseError(f"duplicate prime {p}", pos)
        exceptions[p] = e
    return SteinitzNumber.of(default if default is not None else 0, exceptions)


_SCALED_RE = re.compile(r"^\(\s*(\d+)\s*/\s*(\d+)\s*\)\s*\*\s*(.+)$", re.DOTALL)


def parse_scaled(text: str) -> SteinitzNumber:
    """Parse an optionally scaled literal ``(u/v)*<product>``.

    The prefix multiplies the product by the positive rational u/v; the
    reduced denominator must divide the product.  Used by the CLI, where
    members of a set are written relative to its base.
    """
    m = _SCALED_RE.match(text.strip())
    if m is None:
        return parse(text)
    u, v = int(m.group(1)), int(m.group(2))
    if u < 1 or v < 1:
        raise ParseError("scale factor must be a positive rational", 1)
    return scale(parse(m.group(3)), Fraction(u, v))


def omega_contains(s: SteinitzNumber, n: int) -> bool:
    """True iff the natural number n divides s (n is in Omega(s))."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return all(e <= s.valuation(p) for p, e in factorize(n))


def divides(s1: SteinitzNumber, s2: SteinitzNumber) -> bool:
    """Divisibility order: every valuation of s1 is <= that of s2."""
    if not s1.default <= s2.default:
        return False
    merged = {p for p, _ in s1.exceptions} | {p for p, _ in s2.exceptions}
    return all(s1.valuation(p) <= s2.valuation(p) for p in merged)


def mul_natural(s: SteinitzNumber, n: int) -> SteinitzNumber:
    """Multiply by a natural number (exponentwise add; INF absorbs)."""
    if n < 1:
        raise ValueError(f"multiplier must be positive, got {n}")
    if n == 1:
        return s
    exc = dict(s.exceptions)
    for p, e in factorize(n):
        exc[p] = s.valuation(p) + e
    return SteinitzNumber._make(s.default, exc)


def divide_by(s: SteinitzNumber, b: int) -> SteinitzNumber:
    """Divide by b in Omega(s) (exponentwise subtract; INF absorbs)."""
    if not omega_contains(s, b):
        raise ValueError(f"{b} is not in Omega({s})")
    exc = dict(s.exceptions)
    for p, e in factorize(b):
        exc[p] = s.valuation(p) - e
    return SteinitzNumber._make(s.default, exc)


def scale(s: SteinitzNumber, q: Fraction | int) -> SteinitzNumber:
    """Multiply by a positive rational whose reduced denominator divides s."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError(f"scale factor must be positive, got {q}")
    return mul_natural(divide_by(s, q.denominator), q.numerator)


def finitely_divides(s1: SteinitzNumber, s2: SteinitzNumber) -> int | None:
    """The minimal witness b in Omega(s2) with s1 = s2/b, or None.

    Requires equal defaults, equal sets of infinite-exponent primes, and
    finite nonnegative exponent deficits at the remaining primes.  Witnesses
    are not unique when s2 has an infinite prime (extra powers of it change
    nothing); the minimal one has exponent 0 there.
    """
    if s1.default != s2.default:
        return None
    b = 1
    merged = {p for p, _ in s1.exceptions} | {p for p, _ in s2.exceptions}
    for p in sorted(merged):
        e1, e2 = s1.valuation(p), s2.valuation(p)
        if (e1 == INF) != (e2 == INF):
            return None
        if e1 == INF:
            continue
        if e1 > e2:
            return None
        b *= p ** (e2 - e1)
    return b


def ratio_if_connected(s1: SteinitzNumber, s2: SteinitzNumber) -> Fraction | None:
    """The canonical ratio q with s2 = q*s1, or None when not rationally
    connected.  One sweep over the merged exception primes."""
    if s1.default != s2.default:
        return None
    num = den = 1
    merged = {p for p, _ in s1.exceptions} | {p for p, _ in s2.exceptions}
    for p in merged:
        e1, e2 = s1.valuation(p), s2.valuation(p)
        if e1 == INF or e2 == INF:
            if e1 != e2:
                return None
            continue
        if e2 > e1:
            num *= p ** (e2 - e1)
        elif e1 > e2:
            den *= p ** (e1 - e2)
    return Fraction(num, den)


def rationally_connected(s1: SteinitzNumber, s2: SteinitzNumber) -> bool:
    """True iff s2 = q*s1 for some positive rational q."""
    return ratio_if_connected(s1, s2) is not None


def canonical_ratio(s1: SteinitzNumber, s2: SteinitzNumber) -> Fraction:
    """The canonical q with s2 = q*s1, as a reduced positive fraction.

    The product runs over primes where both valuations are finite; primes
    with infinite exponent contribute exponent 0 (there the ratio is not
    unique, and this fixes the decidable representative).
    """
    q = ratio_if_connected(s1, s2)
    if q is None:
        raise ValueError(f"{s1} and {s2} are not rationally connected")
    return q


def lcm(s1: SteinitzNumber, s2: SteinitzNumber) -> SteinitzNumber:
    """Pointwise max of valuations."""
    default = max(s1.default, s2.default)
    merged = {p for p, _ in s1.exceptions} | {p for p, _ in s2.exceptions}
    return SteinitzNumber.of(default, {p: max(s1.valuation(p), s2.valuation(p)) for p in merged})


def enumerate_omega(s: SteinitzNumber, bound: int) -> list[int]:
    """All n <= bound dividing s, ascending."""
    if bound < 1:
        raise ValueError(f"bound must be positive, got {bound}")
    return [n for n in range(1, bound + 1) if omega_contains(s, n)]
