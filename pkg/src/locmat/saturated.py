"""Saturated subsets of the Steinitz numbers, in canonical form.

A saturated set satisfies: (1) any two members are rationally connected,
(2) closure under finite division, (3) if s and n*s are members then so is
i*s for 1 <= i <= n.  Every saturated set is one of: a segment {1..n}, all
naturals, an infinite-type set S(inf, s), or a finite-type set S(r, s)
(closed bound a <= r*b) or S+(r, s) (strict bound a < r*b) over an infinite
base s.  Constructors here normalize to those forms; in particular a
finite-type set over a base with an infinite prime exponent is extensionally
the infinite-type set and is normalized to it (the "collapse").
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .density import (
    INFINITY,
    Density,
    Surd,
    cmp_density,
    floor_times,
    format_density,
    parse_density,
    scale_density,
    times_is_integer,
)
from .steinitz import (
    ParseError,
    SteinitzNumber,
    canonical_ratio,
    divide_by,
    enumerate_omega,
    finitely_divides,
    mul_natural,
    omega_contains,
    parse_scaled,
    ratio_if_connected,
    rationally_connected,
    scale,
)


class SaturatedSet:
    """Marker base class; instances are one of the four canonical forms."""

    __slots__ = ()


@dataclass(frozen=True)
class Segment(SaturatedSet):
    """{1, 2, ..., n}."""

    n: int


@dataclass(frozen=True)
class AllNaturals(SaturatedSet):
    """All positive integers."""


@dataclass(frozen=True)
class InfType(SaturatedSet):
    """S(inf, base) = {(a/b)*base : a natural, b in Omega(base)}."""

    base: SteinitzNumber


@dataclass(frozen=True)
class FiniteType(SaturatedSet):
    """S(r, base) with bound a <= r*b, or S+(r, base) with a < r*b."""

    r: Fraction | Surd
    base: SteinitzNumber
    strict: bool


ALL_NATURALS = AllNaturals()


def mk_segment(n: int) -> SaturatedSet:
    if n < 1:
        raise ValueError(f"segment length must be positive, got {n}")
    return Segment(n)


def mk_all_naturals() -> SaturatedSet:
    return ALL_NATURALS


def mk_inf_type(s: SteinitzNumber) -> SaturatedSet:
    """S(inf, s); for natural s this is all of the naturals."""
    if s.is_natural:
        return ALL_NATURALS
    return InfType(s)


def mk_finite_type(r: Density, s: SteinitzNumber, strict: bool = False) -> SaturatedSet:
    """Normalized finite-type constructor.

    Density inf delegates to the infinite type; a base with an infinite
    prime exponent collapses to the infinite type (every bound a <= r*b is
    then satisfiable through representations absorbing that prime); the
    strict flag is cleared when the strict and closed sets coincide (r
    irrational, or r = u/v with v not dividing the base).
    """
    if r is INFINITY:
        return mk_inf_type(s)
    if s.is_natural:
        raise ValueError(f"finite-type base must be an infinite Steinitz number, got {s}")
    if cmp_density(r, Fraction(1)) < 0:
        raise ValueError(f"density must be at least 1, got {format_density(r)}")
    if not s.is_infinity_free:
        return InfType(s)
    if strict and (isinstance(r, Surd) or not omega_contains(s, r.denominator)):
        strict = False
    return FiniteType(r, s, strict)


def contains(S: SaturatedSet, t: SteinitzNumber) -> bool:
    """Exact membership test."""
    if isinstance(S, Segment):
        return t.is_natural and t.as_int() <= S.n
    if isinstance(S, AllNaturals):
        return t.is_natural
    if isinstance(S, InfType):
        # Any rationally connected t is (a/b)*base with reduced b in
        # Omega(base): the reduced denominator must divide the base for the
        # exponents of t to stay nonnegative.
        return rationally_connected(S.base, t)
    q = ratio_if_connected(S.base, t)
    if q is None:
        return False
    if not omega_contains(S.base, q.denominator):
        return False
    c = cmp_density(q, S.r)  # a <= r*b  iff  a/b <= r
    return c < 0 if S.strict else c <= 0


def rebase(S: SaturatedSet, t: SteinitzNumber) -> tuple[Density, bool]:
    """Density and strictness of the same set expressed at the member t."""
    if not contains(S, t):
        raise ValueError(f"{t} is not a member of {format_set(S)}")
    if isinstance(S, InfType):
        return INFINITY, False
    if isinstance(S, FiniteType):
        q = canonical_ratio(S.base, t)  # t = q * base, so r(t) = r / q
        return scale_density(S.r, 1 / q), S.strict
    raise ValueError(f"{format_set(S)} has no base to rebase")


def density(S: SaturatedSet, t: SteinitzNumber) -> Density:
    """The density limit r_S(t) at an infinite member t."""
    if not t.is_infinite:
        raise ValueError(f"density is defined at infinite members only, got {t}")
    return rebase(S, t)[0]


def r_sub(S: SaturatedSet, t: SteinitzNumber, b: int) -> int | type(INFINITY):
    """r_t(b) = max { i >= 1 : i * t/b in S }, in closed form.

    Infinite-type sets (and all naturals) give infinity.  Finite types use
    the floor dichotomy: floor(r*b) when r is irrational or its reduced
    denominator v does not divide b; exactly r*b (closed) or r*b - 1
    (strict) when v divides b.
    """
    if not contains(S, t):
        raise ValueError(f"{t} is not a member of {format_set(S)}")
    if not omega_contains(t, b):
        raise ValueError(f"{b} is not in Omega({t})")
    if isinstance(S, (InfType, AllNaturals)):
        return INFINITY
    if isinstance(S, Segment):
        return S.n * b // t.as_int()
    r, strict = rebase(S, t)
    if times_is_integer(r, b):
        exact = r.numerator * b // r.denominator
        return exact - 1 if strict else exact
    return floor_times(r, b)


def max_element(S: SaturatedSet) -> SteinitzNumber | None:
    """The largest member, when one exists (segments and attained closed bounds)."""
    if isinstance(S, Segment):
        return SteinitzNumber.from_int(S.n)
    if isinstance(S, FiniteType) and not S.strict and isinstance(S.r, Fraction):
        if omega_contains(S.base, S.r.denominator):
            return scale(S.base, S.r)
    return None


def equals_formal(S1: SaturatedSet, S2: SaturatedSet) -> bool:
    """Descriptor-level equality after normalization.

    Finite types are compared by rebasing S2's density to S1's base and
    matching (density, strictness) exactly; infinite types by rational
    connectivity of bases.
    """
    if isinstance(S1, Segment) and isinstance(S2, Segment):
        return S1.n == S2.n
    if isinstance(S1, AllNaturals) and isinstance(S2, AllNaturals):
        return True
    if isinstance(S1, InfType) and isinstance(S2, InfType):
        return rationally_connected(S1.base, S2.base)
    if isinstance(S1, FiniteType) and isinstance(S2, FiniteType):
        if not rationally_connected(S1.base, S2.base):
            return False
        q = canonical_ratio(S2.base, S1.base)
        r2_here = scale_density(S2.r, 1 / q)
        return S1.strict == S2.strict and cmp_density(S1.r, r2_here) == 0
    return False


class Inclusion(Enum):
    DISJOINT = "disjoint"
    EQUAL = "equal"
    LEFT_IN_RIGHT = "left-in-right"
    RIGHT_IN_LEFT = "right-in-left"


def _strictness_rank(S: SaturatedSet) -> int:
    # S+(r,s) within S(r,s) within S(inf,s) at equal density.
    if isinstance(S, InfType):
        return 2
    return 0 if S.strict else 1


def compare_inclusion(S1: SaturatedSet, S2: SaturatedSet) -> Inclusion:
    """Exact trichotomy: saturated sets are disjoint or nested."""
    natural1 = isinstance(S1, (Segment, AllNaturals))
    natural2 = isinstance(S2, (Segment, AllNaturals))
    if natural1 != natural2:
        return Inclusion.DISJOINT
    if natural1:
        n1 = S1.n if isinstance(S1, Segment) else None
        n2 = S2.n if isinstance(S2, Segment) else None
        if n1 == n2:
            return Inclusion.EQUAL
        if n2 is None or (n1 is not None and n1 < n2):
            return Inclusion.LEFT_IN_RIGHT
        return Inclusion.RIGHT_IN_LEFT
    if not rationally_connected(S1.base, S2.base):
        return Inclusion.DISJOINT
    d1 = S1.r if isinstance(S1, FiniteType) else INFINITY
    if isinstance(S2, FiniteType):
        d2 = scale_density(S2.r, 1 / canonical_ratio(S2.base, S1.base))
    else:
        d2 = INFINITY
    c = cmp_density(d1, d2)
    if c < 0:
        return Inclusion.LEFT_IN_RIGHT
    if c > 0:
        return Inclusion.RIGHT_IN_LEFT
    r1, r2 = _strictness_rank(S1), _strictness_rank(S2)
    if r1 == r2:
        return Inclusion.EQUAL
    return Inclusion.LEFT_IN_RIGHT if r1 < r2 else Inclusion.RIGHT_IN_LEFT


@dataclass(frozen=True)
class TailRule:
    """Declared limit of an ascending chain of saturated sets.

    The density of an ``attained``/``approached`` tail is expressed at the
    base of the first chain element (no finite prefix determines the limit,
    so the construction declares it).
    """

    kind: str  # "attained" | "approached" | "unbounded"
    r: Density | None = None

    @classmethod
    def attained(cls, r: Density) -> "TailRule":
        return cls("attained", r)

    @classmethod
    def approached(cls, r: Density) -> "TailRule":
        return cls("approached", r)

    @classmethod
    def unbounded(cls) -> "TailRule":
        return cls("unbounded")


def union_chain(prefix: list[SaturatedSet], tail: TailRule | None = None) -> SaturatedSet:
    """Union of an ascending chain given a finite prefix and a declared tail."""
    if not prefix:
        raise ValueError("empty chain prefix")
    for a, b in zip(prefix, prefix[1:]):
        if compare_inclusion(a, b) not in (Inclusion.EQUAL, Inclusion.LEFT_IN_RIGHT):
            raise ValueError(f"chain prefix is not ascending at {format_set(a)} vs {format_set(b)}")
    if tail is None:
        return prefix[-1]
    if tail.kind == "unbounded":
        if isinstance(prefix[0], (Segment, AllNaturals)):
            return ALL_NATURALS
        return mk_inf_type(prefix[0].base)
    if tail.kind not in ("attained", "approached"):
        raise ValueError(f"unknown tail kind {tail.kind!r}")
    if isinstance(prefix[0], (Segment, AllNaturals)):
        raise ValueError("a density tail needs a chain of based sets")
    base = prefix[0].base
    for S in prefix:
        if not isinstance(S, FiniteType):
            raise ValueError("a density tail is inconsistent with an infinite-type prefix")
        d_here = scale_density(S.r, 1 / canonical_ratio(S.base, base))
        c = cmp_density(tail.r, d_here)
        if c < 0 or (c == 0 and tail.kind == "approached" and not S.strict):
            raise ValueError(
                f"tail density {format_density(tail.r)} is below the prefix density {format_density(d_here)}"
            )
    return mk_finite_type(tail.r, base, strict=(tail.kind == "approached"))


def sample_members(
    S: SaturatedSet,
    den_bound: int = 30,
    limit: int | None = None,
    inf_cap: int = 3,
) -> list[SteinitzNumber]:
    """Deterministic member sample.

    Based sets are swept as (a/b)*base with b from Omega(base) up to
    den_bound and a up to the density bound (plus one, to probe the
    boundary), filtering by the defining inequality; infinite types cap a at
    inf_cap*b+1.  Natural sets are initial segments of the integers.
    """
    out: list[SteinitzNumber] = []
    seen: set[SteinitzNumber] = set()
    if isinstance(S, (Segment, AllNaturals)):
        top = S.n if isinstance(S, Segment) else (limit or 200)
        if limit is not None:
            top = min(top, limit)
        return [SteinitzNumber.from_int(i) for i in range(1, top + 1)]
    for b in enumerate_omega(S.base, den_bound):
        if isinstance(S, InfType):
            hi = inf_cap * b + 1
        else:
            hi = floor_times(S.r, b) + 1
        for a in range(1, hi + 1):
            if isinstance(S, FiniteType):
                c = cmp_density(Fraction(a, b), S.r)
                if (S.strict and c >= 0) or (not S.strict and c > 0):
                    continue
            t = scale(S.base, Fraction(a, b))
            if t not in seen:
                seen.add(t)
                out.append(t)
                if limit is not None and len(out) >= limit:
                    return out
    return out


def _existential_contains(S: FiniteType, t: SteinitzNumber, den_bound: int = 4096) -> bool:
    """Membership by representation search: some b in Omega(base) with
    t = (a/b)*base and a within the bound.

    Needed for raw finite-type descriptors whose base has an infinite prime
    exponent, where the canonical ratio does not range over all
    representations (the collapse phenomenon).
    """
    if not rationally_connected(S.base, t):
        return False
    for b in enumerate_omega(S.base, den_bound):
        a = finitely_divides(divide_by(S.base, b), t)
        if a is None:
            continue
        c = cmp_density(Fraction(a, b), S.r)
        if c < 0 or (c == 0 and not S.strict):
            return True
    return False


def _probe_contains(S: SaturatedSet, t: SteinitzNumber) -> bool:
    if isinstance(S, FiniteType) and not S.base.is_infinity_free:
        return _existential_contains(S, t)
    return contains(S, t)


def equals_extensional(S1: SaturatedSet, S2: SaturatedSet, budget: int = 100) -> bool:
    """Semi-decision of set equality by bidirectional membership sampling.

    Samples up to ``budget`` members of each set and checks them against the
    other; membership of raw infinite-prime finite types is decided by
    representation search.  True means no disagreement was found.
    """
    for left, right in ((S1, S2), (S2, S1)):
        for t in sample_members(left, den_bound=256, limit=budget):
            if not _probe_contains(right, t):
                return False
    return True


@dataclass(frozen=True)
class AxiomViolation:
    axiom: int
    witness: str


MemberPool = SaturatedSet  # or any collection of SteinitzNumber


def check_saturation_axioms(S, samples: int = 1000, seed: int = 0, den_bound: int = 30):
    """Check the three saturation axioms on sampled members.

    ``S`` may be a canonical SaturatedSet or a literal collection of
    SteinitzNumbers (membership by equality).  Returns the first
    AxiomViolation found, or None.  Deterministic for a fixed seed.
    """
    if isinstance(S, SaturatedSet):
        pool = sample_members(S, den_bound=den_bound, limit=max(40, samples // 10))
        member = lambda t: _probe_contains(S, t)
    else:
        pool = list(S)
        literal = set(pool)
        member = lambda t: t in literal
    if not pool:
        return None
    rng = random.Random(seed)
    omegas: dict[SteinitzNumber, list[int]] = {}
    spent = 0
    while spent < samples:
        t1, t2 = rng.choice(pool), rng.choice(pool)
        spent += 1
        if not rationally_connected(t1, t2):
            return AxiomViolation(1, f"{t1} and {t2} are not rationally connected")
        t = rng.choice(pool)
        if t not in omegas:
            omegas[t] = enumerate_omega(t, den_bound)
        b = rng.choice(omegas[t])
        spent += 1
        if not member(divide_by(t, b)):
            return AxiomViolation(2, f"{t} is a member but {t}/{b} is not")
        t = rng.choice(pool)
        n = rng.randint(2, 12)
        spent += 1
        if member(mul_natural(t, n)):
            for i in range(2, n):
                spent += 1
                if not member(mul_natural(t, i)):
                    return AxiomViolation(3, f"{t} and {n}*{t} are members but {i}*{t} is not")
    return None


def format_set(S: SaturatedSet) -> str:
    if isinstance(S, Segment):
        return f"[1..{S.n}]"
    if isinstance(S, AllNaturals):
        return "N"
    if isinstance(S, InfType):
        return f"S(inf, {S.base})"
    plus = "+" if S.strict else ""
    return f"S{plus}({format_density(S.r)}, {S.base})"


_SEGMENT_RE = re.compile(r"^\[\s*1\s*\.\.\s*(\d+)\s*\]$")


def parse_set(text: str) -> SaturatedSet:
    """Parse ``[1..n]``, ``N``, ``S(inf, s)``, ``S(r, s)`` or ``S+(r, s)``.

    The result is constructor-normalized, so printing it back gives the
    canonical form of the set, not necessarily the input spelling.
    """
    t = text.strip()
    if t == "N":
        return ALL_NATURALS
    m = _SEGMENT_RE.match(t)
    if m:
        return mk_segment(int(m.group(1)))
    strict = t.startswith("S+(")
    if not (strict or t.startswith("S(")) or not t.endswith(")"):
        raise ParseError(f"malformed saturated set {text!r}, expected [1..n], N, S(r, s) or S+(r, s)", 0)
    inner = t[3:-1] if strict else t[2:-1]
    if "," not in inner:
        raise ParseError(f"missing comma in {text!r}", len(t) - 1)
    r_text, base_text = inner.split(",", 1)
    r = parse_density(r_text)
    base = parse_scaled(base_text)
    if r is INFINITY:
        if strict:
            raise ParseError("S+ cannot have density inf", 0)
        return mk_inf_type(base)
    return mk_finite_type(r, base, strict)
