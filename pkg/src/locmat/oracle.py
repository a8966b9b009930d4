"""Brute-force oracles for the closed forms.

Everything here recomputes quantities from raw definitions: members by
sweeping representations (a/b)*base, r_s(b) by scanning memberships up to a
bound, the inequality ladder from those brute values, and matrix-chain rank
evolution by stepwise recursion.  Results are reported as PASS/FAIL lines
with a JSON mirror.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import FiniteMatrixChain
from .density import INFINITY, Surd, cmp_density
from .saturated import (
    ALL_NATURALS,
    AllNaturals,
    FiniteType,
    InfType,
    SaturatedSet,
    Segment,
    check_saturation_axioms,
    contains,
    format_set,
    mk_finite_type,
    mk_inf_type,
    mk_segment,
    r_sub,
)
from .steinitz import (
    SteinitzNumber,
    divide_by,
    enumerate_omega,
    factorize,
    mul_natural,
    omega_contains,
    parse,
    scale,
)


class AboveBound:
    """Result of a brute-force maximum that hit its scan bound (the finite
    answer, if any, lies beyond; expected only for infinite type)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "AboveBound"


ABOVE_BOUND = AboveBound()


@dataclass(frozen=True)
class EnumWindow:
    prime_bound: int = 210
    numerator_bound: int = 64
    denominator_bound: int = 30

    def __post_init__(self):
        if min(self.prime_bound, self.numerator_bound, self.denominator_bound) < 1:
            raise ValueError("window bounds must be positive")


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    name: str
    witness: str = ""

    def line(self) -> str:
        head = "PASS" if self.ok else "FAIL"
        return f"{head} {self.name}" + (f" {self.witness}" if self.witness else "")


@dataclass
class Report:
    results: list[CheckResult] = field(default_factory=list)

    def add(self, ok: bool, name: str, witness: str = "") -> None:
        self.results.append(CheckResult(ok, name, witness))

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.results)

    def lines(self) -> list[str]:
        return [r.line() for r in self.results]

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [{"ok": r.ok, "name": r.name, "witness": r.witness} for r in self.results],
        }


def enumerate_members(S: SaturatedSet, w: EnumWindow) -> list[tuple[Fraction, SteinitzNumber]]:
    """All members representable in the window, by raw definition sweep.

    Based sets sweep b over Omega(base) up to the denominator bound (prime
    factors capped by the prime bound) and a up to the numerator bound,
    keeping pairs that satisfy the defining inequality; results are
    deduplicated by reduced formal ratio.
    """
    if isinstance(S, (Segment, AllNaturals)):
        top = w.numerator_bound if isinstance(S, AllNaturals) else min(S.n, w.numerator_bound)
        return [(Fraction(i), SteinitzNumber.from_int(i)) for i in range(1, top + 1)]
    out: list[tuple[Fraction, SteinitzNumber]] = []
    seen: set[Fraction] = set()
    check = S.base.is_infinity_free
    for b in enumerate_omega(S.base, w.denominator_bound):
        if b > 1 and max(p for p, _ in factorize(b)) > w.prime_bound:
            continue
        for a in range(1, w.numerator_bound + 1):
            if isinstance(S, FiniteType):
                c = cmp_density(Fraction(a, b), S.r)
                if c > 0 or (c == 0 and S.strict):
                    continue
            key = Fraction(a, b)
            if key in seen:
                continue
            seen.add(key)
            t = scale(S.base, key)
            if check and not contains(S, t):
                raise AssertionError(f"definition sweep produced a non-member {t} of {format_set(S)}")
            out.append((key, t))
    return out


def r_sub_brute(S: SaturatedSet, t: SteinitzNumber, b: int, i_bound: int = 1000):
    """max { i <= i_bound : i * t/b in S } by full membership scan.

    Returns ABOVE_BOUND when membership still holds at i_bound, 0 when no i
    is a member (impossible for canonical sets with t in S).
    """
    if not contains(S, t):
        raise ValueError(f"{t} is not a member of {format_set(S)}")
    if not omega_contains(t, b):
        raise ValueError(f"{b} is not in Omega({t})")
    u = divide_by(t, b)
    best = 0
    for i in range(1, i_bound + 1):
        if contains(S, mul_natural(u, i)):
            best = i
    if best == i_bound:
        return ABOVE_BOUND
    return best


def divisor_pairs(t: SteinitzNumber, bound: int = 210) -> list[tuple[int, int]]:
    """All pairs (b, c) with b | c, b < c, both dividing t and <= bound."""
    omega = enumerate_omega(t, bound)
    return [(b, c) for c in omega for b in omega if b < c and c % b == 0]


def check_inequality_suite(
    S: SaturatedSet,
    t: SteinitzNumber,
    pairs: list[tuple[int, int]] | None = None,
    bound: int = 210,
    i_bound: int = 1000,
    brute_values: dict[int, int] | None = None,
) -> Report:
    """Verify the divisor-pair inequality ladder with brute-force values.

    For b | c: (1) r(b)/b <= r(c)/c; (2) floor(r(c)/(c/b)) <= r(b);
    (3) that floor equals r(b); (4) r(c)/c < r(b)/b + 1/b.  Finite type
    only; all comparisons are exact rationals.  ``brute_values`` may carry a
    precomputed r_sub_brute table keyed by b.
    """
    if isinstance(S, (InfType, AllNaturals)):
        raise ValueError("inequality ladder applies to finite-type sets only")
    if pairs is None:
        pairs = divisor_pairs(t, bound)
    report = Report()
    cache: dict[int, int] = dict(brute_values or {})

    def brute(b: int) -> int:
        if b not in cache:
            v = r_sub_brute(S, t, b, i_bound)
            if v is ABOVE_BOUND:
                raise ValueError(f"brute r_sub hit the bound at b={b}; raise i_bound")
            cache[b] = v
        return cache[b]

    fails = {1: None, 2: None, 3: None, 4: None}
    for b, c in pairs:
        rb, rc = brute(b), brute(c)
        if not Fraction(rb, b) <= Fraction(rc, c):
            fails[1] = fails[1] or f"b={b} c={c} r(b)={rb} r(c)={rc}"
        floored = rc // (c // b)
        if not floored <= rb:
            fails[2] = fails[2] or f"b={b} c={c} floor={floored} r(b)={rb}"
        if floored != rb:
            fails[3] = fails[3] or f"b={b} c={c} floor={floored} r(b)={rb}"
        if not Fraction(rc, c) < Fraction(rb, b) + Fraction(1, b):
            fails[4] = fails[4] or f"b={b} c={c} r(b)={rb} r(c)={rc}"
    names = {
        1: "eq1-monotone-ratio",
        2: "eq2-floor-lower",
        3: "eq3-floor-recurrence",
        4: "eq4-strict-upper",
    }
    for k in (1, 2, 3, 4):
        report.add(fails[k] is None, f"{names[k]}[{format_set(S)}]", fails[k] or f"{len(pairs)} pairs")
    return report


def simulate_finite_chain(
    chain: FiniteMatrixChain, seeds: list[tuple[int, int]]
) -> list[tuple[int, int, tuple[int, ...]]]:
    """Rank evolution of seed idempotents through a finite matrix chain.

    A rank-rho idempotent at stage i (0-based) has rank rho * m_i * ... at
    every later stage, computed stepwise; padding never contributes.
    Returns (stage, rank, ranks-from-stage-on) rows.
    """
    chain.validate()
    rows = []
    for stage, rho in seeds:
        if not 0 <= stage < len(chain.sizes):
            raise ValueError(f"stage {stage} out of range")
        if not 1 <= rho <= chain.sizes[stage]:
            raise ValueError(f"rank {rho} out of range at stage {stage} (size {chain.sizes[stage]})")
        ranks = [rho]
        r = rho
        for j in range(stage, len(chain.sizes) - 1):
            r *= chain.mults[j]
            if r > chain.sizes[j + 1]:
                raise AssertionError("rank exceeded stage size")
            ranks.append(r)
        rows.append((stage, rho, tuple(ranks)))
    return rows


def saturation_fuzz(S, trials: int = 1000, seed: int = 0) -> Report:
    """Axiom fuzz plus closed-form/brute cross-checks at random divisors.

    ``S`` may also be a literal member collection; those get the axiom check
    only (there is no closed form to cross-check).
    """
    report = Report()
    is_canonical = isinstance(S, SaturatedSet)
    label = format_set(S) if is_canonical else f"literal:{len(list(S))}-members"
    violation = check_saturation_axioms(S, samples=trials, seed=seed)
    report.add(violation is None, f"axioms[{label}]", violation.witness if violation else f"{trials} samples")
    if not is_canonical:
        return report
    rng = random.Random(seed)
    t = reference_member(S)
    omega = enumerate_omega(t, 210)
    infinite = isinstance(S, (InfType, AllNaturals))
    mismatch = None
    for _ in range(max(10, trials // 50)):
        b = rng.choice(omega)
        closed = r_sub(S, t, b)
        if infinite:
            brute = r_sub_brute(S, t, b, i_bound=60)
            ok = closed is INFINITY and brute is ABOVE_BOUND
        else:
            brute = r_sub_brute(S, t, b, i_bound=3 * b + 80)
            ok = closed == brute
        if not ok:
            mismatch = f"b={b} closed={closed} brute={brute}"
            break
    report.add(mismatch is None, f"rsub-closed-vs-brute[{label}]", mismatch or "")
    return report


def reference_member(S: SaturatedSet) -> SteinitzNumber:
    """A canonical member to anchor per-set checks (the base, when it is one)."""
    if isinstance(S, Segment):
        return SteinitzNumber.from_int(S.n)
    if isinstance(S, AllNaturals):
        return SteinitzNumber.from_int(210)
    return S.base


def acceptance_corpus() -> list[tuple[str, SaturatedSet]]:
    """The fixed verification corpus: segments, all naturals, infinite types
    over 2^inf, 2^inf*3 and the product of all primes, and finite types with
    rational and quadratic-surd densities over two bases."""
    p_all = parse("P")
    p_with_8 = parse("P^1*2^3")
    sqrt2 = Surd.make(0, 1, 2, 1)
    sqrt5 = Surd.make(0, 1, 5, 1)
    return [
        ("segment-4", mk_segment(4)),
        ("segment-50", mk_segment(50)),
        ("naturals", ALL_NATURALS),
        ("inf-2adic", mk_inf_type(parse("2^inf"))),
        ("inf-2adic-3", mk_inf_type(parse("2^inf*3"))),
        ("inf-allprimes", mk_inf_type(p_all)),
        ("r1-closed", mk_finite_type(Fraction(1), p_all, False)),
        ("r1-closed-b8", mk_finite_type(Fraction(1), p_with_8, False)),
        ("r32-closed", mk_finite_type(Fraction(3, 2), p_all, False)),
        ("r32-strict", mk_finite_type(Fraction(3, 2), p_all, True)),
        ("r73-closed", mk_finite_type(Fraction(7, 3), p_all, False)),
        ("r73-strict", mk_finite_type(Fraction(7, 3), p_all, True)),
        ("r52-closed-b8", mk_finite_type(Fraction(5, 2), p_with_8, False)),
        ("r52-strict-b8", mk_finite_type(Fraction(5, 2), p_with_8, True)),
        ("sqrt2", mk_finite_type(sqrt2, p_all, False)),
        ("sqrt5", mk_finite_type(sqrt5, p_all, False)),
        ("sqrt2-b8", mk_finite_type(sqrt2, p_with_8, False)),
    ]
