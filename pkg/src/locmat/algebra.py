"""Countable-dimensional locally matrix algebras, modeled by their spectra.

The spectrum of such an algebra (the set of Steinitz numbers of its unital
corners) determines it up to isomorphism, so descriptors here carry a
saturated set and no field elements at all.  Decision procedures (unitality,
isomorphism, approximative-corner embedding) reduce to exact operations on
spectra; ``realize`` produces an explicit ascending chain of matrix corners
whose union has a prescribed spectrum, and ``spectrum_of_chain`` inverts it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import prime as nth_prime

from .density import format_density, parse_density, scale_density
from .saturated import (
    ALL_NATURALS,
    AllNaturals,
    FiniteType,
    Inclusion,
    InfType,
    SaturatedSet,
    Segment,
    TailRule,
    compare_inclusion,
    contains,
    equals_formal,
    format_set,
    max_element,
    mk_finite_type,
    mk_segment,
    parse_set,
    r_sub,
    union_chain,
)
from .steinitz import (
    ONE,
    ParseError,
    SteinitzNumber,
    canonical_ratio,
    divide_by,
    mul_natural,
    omega_contains,
    parse as parse_steinitz,
    rationally_connected,
    scale,
)


@dataclass(frozen=True)
class AlgebraDescriptor:
    """A locally matrix algebra, known through its spectrum.

    ``collapsed`` is set when constructor normalization changed the
    canonical form (a finite-type spectrum over a base with an infinite
    prime collapses to the infinite type); ``unit_st`` then records the
    Steinitz number of the modeled unital algebra, which the spectrum alone
    no longer determines.
    """

    spectrum: SaturatedSet
    collapsed: bool = False
    unit_st: SteinitzNumber | None = None

    @property
    def st(self) -> SteinitzNumber | None:
        """Steinitz number of the algebra, when it is unital (or collapsed)."""
        m = max_element(self.spectrum)
        if m is not None:
            return m
        return self.unit_st if self.collapsed else None

    def __str__(self) -> str:
        return f"alg({format_set(self.spectrum)})"


def spec_matrix(n: int) -> AlgebraDescriptor:
    """The full matrix algebra of size n: spectrum {1, ..., n}."""
    return AlgebraDescriptor(mk_segment(n))


def spec_unital(s: SteinitzNumber) -> AlgebraDescriptor:
    """The unital locally matrix algebra with Steinitz number s.

    Natural s gives a segment; infinite s gives the closed density-1 set at
    base s, which collapses to the infinite type when s has an infinite
    prime (the descriptor keeps the modeled st and a collapsed flag).
    """
    if s.is_natural:
        return AlgebraDescriptor(mk_segment(s.as_int()))
    spec = mk_finite_type(Fraction(1), s, strict=False)
    if isinstance(spec, InfType):
        return AlgebraDescriptor(spec, collapsed=True, unit_st=s)
    return AlgebraDescriptor(spec)


def _require_st(A: AlgebraDescriptor, op: str) -> SteinitzNumber:
    s = A.st
    if s is None:
        raise ValueError(f"{op} needs a unital algebra, got {A}")
    return s


def m_infinity(A: AlgebraDescriptor) -> AlgebraDescriptor:
    """Finitary infinite matrices over a unital A: spectrum S(inf, st(A))."""
    s = _require_st(A, "m_infinity")
    return AlgebraDescriptor(InfType(s) if s.is_infinite else ALL_NATURALS)


def matrix_over(A: AlgebraDescriptor, n: int) -> AlgebraDescriptor:
    """M_n(A) for unital A: st multiplies by n."""
    if n < 1:
        raise ValueError(f"matrix size must be positive, got {n}")
    return spec_unital(mul_natural(_require_st(A, "matrix_over"), n))


def corner(A: AlgebraDescriptor, q: Fraction) -> AlgebraDescriptor:
    """eAe for an idempotent of relative rank q = a/b: st scales by q.

    Requires 0 < q <= 1 with the reduced denominator dividing st(A).
    """
    s = _require_st(A, "corner")
    q = Fraction(q)
    if not 0 < q <= 1:
        raise ValueError(f"relative rank must be in (0, 1], got {q}")
    if not omega_contains(s, q.denominator):
        raise ValueError(f"denominator {q.denominator} is not in Omega({s})")
    return spec_unital(scale(s, q))


def is_unital(A: AlgebraDescriptor) -> bool:
    """Unital iff the spectrum has a largest element (segment, or closed
    rational bound attained at the base)."""
    return max_element(A.spectrum) is not None


def isomorphic(A: AlgebraDescriptor, B: AlgebraDescriptor) -> bool:
    """Equal spectra classify countable-dimensional algebras."""
    return equals_formal(A.spectrum, B.spectrum)


def embeds_as_approximative_corner(B: AlgebraDescriptor, A: AlgebraDescriptor) -> bool:
    """B embeds in A as a union of an increasing chain of corners iff
    Spec(B) is contained in Spec(A)."""
    return compare_inclusion(B.spectrum, A.spectrum) in (Inclusion.EQUAL, Inclusion.LEFT_IN_RIGHT)


@dataclass(frozen=True)
class Stage:
    """One chain stage M_k(A_s): outer matrix size k over the algebra with
    Steinitz number s."""

    k: int
    s: SteinitzNumber

    @property
    def number(self) -> SteinitzNumber:
        return mul_natural(self.s, self.k)


@dataclass(frozen=True)
class ChainPresentation:
    """Finitely presented ascending chain of corners M_{k_i}(A_{s_i}).

    ``quotients[i]`` is the integer q with s_i = q * s_{i+1}; consecutive
    stages must satisfy the north-west corner inequality k_i*q_i <= k_{i+1}.
    ``tail`` declares the limit of the infinite continuation, if any.
    """

    stages: tuple[Stage, ...]
    quotients: tuple[int, ...]
    tail: TailRule | None = None

    def validate(self) -> None:
        if not self.stages:
            raise ValueError("chain needs at least one stage")
        if len(self.quotients) != len(self.stages) - 1:
            raise ValueError("need exactly one quotient per consecutive stage pair")
        for st in self.stages:
            if st.k < 1:
                raise ValueError(f"stage size must be positive, got {st.k}")
        for i, q in enumerate(self.quotients):
            a, b = self.stages[i], self.stages[i + 1]
            if q < 1:
                raise ValueError(f"quotient must be positive, got {q}")
            if mul_natural(b.s, q) != a.s:
                raise ValueError(f"stage {i}: {a.s} != {q} * {b.s}")
            if a.k * q > b.k:
                raise ValueError(f"stage {i}: corner inequality {a.k}*{q} <= {b.k} fails")
        if self.tail is not None and self.tail.kind in ("attained", "approached") and self.tail.r is None:
            raise ValueError("density tail needs a density")

    def stage_numbers(self) -> list[SteinitzNumber]:
        return [st.number for st in self.stages]

    def to_json_dict(self) -> dict:
        d: dict = {
            "stages": [
                {"k": st.k, "s": str(st.s), "q": (self.quotients[i] if i < len(self.quotients) else None)}
                for i, st in enumerate(self.stages)
            ]
        }
        if self.tail is None:
            d["tail"] = None
        elif self.tail.kind == "unbounded":
            d["tail"] = {"kind": "unbounded"}
        else:
            d["tail"] = {"kind": self.tail.kind, "r": format_density(self.tail.r)}
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "ChainPresentation":
        try:
            stages = tuple(Stage(int(e["k"]), parse_steinitz(e["s"])) for e in d["stages"])
            quotients = tuple(int(e["q"]) for e in d["stages"][:-1])
            tail_d = d.get("tail")
            if tail_d is None:
                tail = None
            elif tail_d["kind"] == "unbounded":
                tail = TailRule.unbounded()
            else:
                tail = TailRule(tail_d["kind"], parse_density(tail_d["r"]))
        except (KeyError, TypeError) as e:
            raise ParseError(f"malformed chain object: {e}") from e
        chain = cls(stages, quotients, tail)
        chain.validate()
        return chain

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "ChainPresentation":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"malformed chain JSON: {e.msg}", e.pos) from e
        return cls.from_json_dict(d)


@dataclass(frozen=True)
class FiniteMatrixChain:
    """Concrete finite chain of matrix algebras with unital embeddings
    n_{i+1} = m_i * n_i + z_i (multiplicity m_i, padding z_i)."""

    sizes: tuple[int, ...]
    mults: tuple[int, ...]
    pads: tuple[int, ...]

    def validate(self) -> None:
        if not self.sizes:
            raise ValueError("chain needs at least one stage")
        if len(self.mults) != len(self.sizes) - 1 or len(self.pads) != len(self.sizes) - 1:
            raise ValueError("need one multiplicity and one padding per step")
        for i, (m, z) in enumerate(zip(self.mults, self.pads)):
            if self.sizes[i] < 1 or m < 1 or z < 0:
                raise ValueError(f"step {i}: need n >= 1, m >= 1, z >= 0")
            if self.sizes[i + 1] != m * self.sizes[i] + z:
                raise ValueError(f"step {i}: {self.sizes[i + 1]} != {m}*{self.sizes[i]}+{z}")


def _default_divisor_chain(base: SteinitzNumber, depth: int) -> list[int]:
    # Diagonal sweep: b_i is the product over the first i primes p of
    # p^min(v_p(base), i).  Ascending by divisibility, lcm exhausts the base.
    out = []
    for i in range(1, depth + 1):
        b = 1
        for j in range(1, i + 1):
            p = int(nth_prime(j))
            b *= p ** min(base.valuation(p), i)
        out.append(b)
    return out


def realize(S: SaturatedSet, divisor_chain: list[int] | None = None, depth: int = 4) -> ChainPresentation:
    """An explicit chain of corners whose union has spectrum S.

    For a finite-type S over base s with divisors b_1 | b_2 | ... the stages
    are M_{r_s(b_i)}(A_{s/b_i}); the corner inequality k_i*q_i <= k_{i+1} is
    an instance of r_s(b)*(c/b) <= r_s(c).  Segment and infinite-type
    spectra use the single-stage and growing-size constructions.
    """
    if isinstance(S, Segment):
        return ChainPresentation((Stage(S.n, ONE),), ())
    if isinstance(S, AllNaturals):
        stages = tuple(Stage(i, ONE) for i in range(1, depth + 1))
        return ChainPresentation(stages, (1,) * (depth - 1), TailRule.unbounded())
    if isinstance(S, InfType):
        stages = tuple(Stage(i, S.base) for i in range(1, depth + 1))
        return ChainPresentation(stages, (1,) * (depth - 1), TailRule.unbounded())
    base = S.base
    if divisor_chain is None:
        divisor_chain = _default_divisor_chain(base, depth)
    if not divisor_chain:
        raise ValueError("empty divisor chain")
    for b, c in zip(divisor_chain, divisor_chain[1:]):
        if c % b != 0:
            raise ValueError(f"divisor chain not ascending by divisibility: {b}, {c}")
    for b in divisor_chain:
        if not omega_contains(base, b):
            raise ValueError(f"divisor {b} is not in Omega({base})")
    stages = []
    for b in divisor_chain:
        k = r_sub(S, base, b)
        stages.append(Stage(k, divide_by(base, b)))
    quotients = tuple(c // b for b, c in zip(divisor_chain, divisor_chain[1:]))
    k1, b1 = stages[0].k, divisor_chain[0]
    tail_r = scale_density(S.r, Fraction(b1, k1))
    tail = TailRule.approached(tail_r) if S.strict else TailRule.attained(tail_r)
    chain = ChainPresentation(tuple(stages), quotients, tail)
    chain.validate()
    return chain


def _unital_spectrum(s: SteinitzNumber) -> SaturatedSet:
    if s.is_natural:
        return mk_segment(s.as_int())
    return mk_finite_type(Fraction(1), s, strict=False)


def spectrum_of_chain(chain: ChainPresentation) -> SaturatedSet:
    """Union of the stage spectra, with the declared tail: Spec of the
    chain's union algebra."""
    chain.validate()
    prefix = [_unital_spectrum(n) for n in chain.stage_numbers()]
    return union_chain(prefix, chain.tail)


@dataclass(frozen=True)
class CornerWitness:
    """Rank witness for growing one corner into another at a common stage:
    sizes current = (r1/n)*ref and target = (r2/n)*ref with r1 < r2."""

    n: int
    r1: int
    r2: int


def match_corner(
    A: AlgebraDescriptor, current: SteinitzNumber, target: SteinitzNumber
) -> CornerWitness | None:
    """Witness that the corner of size ``current`` extends to one of size
    ``target`` inside A; None when the preconditions fail."""
    if not contains(A.spectrum, current) or not contains(A.spectrum, target):
        return None
    if not rationally_connected(current, target):
        return None
    if canonical_ratio(current, target) <= 1:
        return None
    ref = A.st
    if ref is None:
        ref = A.spectrum.base if isinstance(A.spectrum, (InfType, FiniteType)) else ONE
    q1 = canonical_ratio(ref, current)
    q2 = canonical_ratio(ref, target)
    n = math.lcm(q1.denominator, q2.denominator)
    r1 = q1.numerator * (n // q1.denominator)
    r2 = q2.numerator * (n // q2.denominator)
    return CornerWitness(n, r1, r2)


def _ratio_key(ref: SteinitzNumber, t: SteinitzNumber) -> Fraction:
    return canonical_ratio(ref, t)


def interleave(cA: ChainPresentation, cB: ChainPresentation) -> list[SteinitzNumber] | None:
    """Isomorphism certificate for two chains with equal spectra.

    Returns the merged ascending sequence of stage Steinitz numbers (each a
    member of both spectra), or None when the spectra differ formally.  The
    sequence is the matched st-chain a back-and-forth construction runs
    through.
    """
    SA, SB = spectrum_of_chain(cA), spectrum_of_chain(cB)
    if not equals_formal(SA, SB):
        return None
    numbers = cA.stage_numbers() + cB.stage_numbers()
    ref = numbers[0]
    numbers.sort(key=lambda t: _ratio_key(ref, t))
    merged: list[SteinitzNumber] = []
    for t in numbers:
        if not merged or merged[-1] != t:
            merged.append(t)
    for t in merged:
        if not (contains(SA, t) and contains(SB, t)):
            raise AssertionError(f"stage number {t} escaped the common spectrum")
    return merged


def check_certificate(cert: list[SteinitzNumber], cA: ChainPresentation, cB: ChainPresentation) -> bool:
    """Verify an interleave certificate: ascending, inside both spectra, and
    dominating every stage of both chains."""
    if not cert:
        return False
    SA, SB = spectrum_of_chain(cA), spectrum_of_chain(cB)
    for t in cert:
        if not (contains(SA, t) and contains(SB, t)):
            return False
    for a, b in zip(cert, cert[1:]):
        q = canonical_ratio(a, b)
        if q < 1:
            return False
    covered = set(cert)
    return all(t in covered for t in cA.stage_numbers() + cB.stage_numbers())


def parse_descriptor(text: str) -> AlgebraDescriptor:
    """Parse the ``alg(<saturated-set>)`` text form."""
    t = text.strip()
    if not t.startswith("alg(") or not t.endswith(")"):
        raise ParseError(f"malformed algebra descriptor {text!r}, expected alg(<set>)", 0)
    return AlgebraDescriptor(parse_set(t[4:-1]))


def format_descriptor(A: AlgebraDescriptor) -> str:
    return str(A)
