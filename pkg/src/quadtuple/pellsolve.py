"""Continued fractions for sqrt(d) and the norm-equation machinery.

Provides the fundamental solution of x^2 - d*y^2 = 1, class representatives
and deterministic enumeration for x^2 - d*y^2 = N, and executable congruence
checks on the shapes of norm -6 and norm 1 solutions when d = 15 (mod 60).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import isqrt

from .quadring import QuadInt, RingCtx, is_perfect_square

__all__ = [
    "CFExpansion",
    "Norm6Shape",
    "NormEqClasses",
    "PellFundamental",
    "Pm2Certificate",
    "ShapeViolation",
    "UnitShape",
    "cf_sqrt",
    "check_pm2_unsolvable",
    "d_congruence_check",
    "enumerate_solutions",
    "fundamental_shape",
    "fundamental_unit",
    "norm6_shape",
    "select_norm6_by_parity",
    "solutions_within",
    "solve_norm_eq",
    "unit_from_norm6",
    "unit_quadint",
]

NORM_CAP_DEFAULT = 10**6


class ShapeViolation(RuntimeError):
    """A value failed a congruence shape the theory guarantees.

    Seeing this means a bug or a hypothesis violation (typically a
    non-square-free radicand smuggled past the checks)."""


@dataclass(frozen=True)
class CFExpansion:
    """Periodic continued fraction of sqrt(d): [a0; period repeating]."""

    a0: int
    period: tuple[int, ...]

    def partial_quotients(self):
        """a0, then the period forever."""
        yield self.a0
        yield from itertools.cycle(self.period)


def cf_sqrt(ctx: RingCtx) -> CFExpansion:
    """Exact periodic expansion of sqrt(d) via the (P, Q) recurrence.

    The period closes exactly when Q returns to 1, at which point the last
    partial quotient equals 2*a0.
    """
    d = ctx.d
    a0 = isqrt(d)
    m, q, a = 0, 1, a0
    period = []
    while True:
        m = q * a - m
        q = (d - m * m) // q
        a = (a0 + m) // q
        period.append(a)
        if q == 1:
            return CFExpansion(a0, tuple(period))


@dataclass(frozen=True)
class PellFundamental:
    """Minimal positive solution of x^2 - d*y^2 = 1."""

    x: int
    y: int


@lru_cache(maxsize=None)
def fundamental_unit(ctx: RingCtx) -> PellFundamental:
    """Fundamental solution of x^2 - d*y^2 = 1, read off the convergents."""
    d = ctx.d
    quotients = cf_sqrt(ctx).partial_quotients()
    h0, k0 = 1, 0
    h1, k1 = next(quotients), 1
    while h1 * h1 - d * k1 * k1 != 1:
        a = next(quotients)
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
    return PellFundamental(h1, k1)


def unit_quadint(ctx: RingCtx) -> QuadInt:
    """The fundamental unit as a ring element."""
    fu = fundamental_unit(ctx)
    return QuadInt(fu.x, fu.y, ctx)


# ---------------------------------------------------------------------------
# the norm equation x^2 - d*y^2 = N


@dataclass(frozen=True)
class NormEqClasses:
    """Solution classes of x^2 - d*y^2 = N.

    One canonical representative per class (minimal |y| with y >= 0, ties
    broken by x > 0); an empty representative tuple means unsolvable.  Any
    solution is +-representative * unit^k for exactly one representative.
    """

    N: int
    representatives: tuple[QuadInt, ...]
    unit: PellFundamental


def _rep_key(s: QuadInt):
    # minimal |y|, then y >= 0, then x > 0: the canonical class element
    return (abs(s.b), s.b < 0, s.a <= 0, abs(s.a))


def _enum_key(s: QuadInt):
    # deterministic output order: |y|, |x|, positive x first, positive y first
    return (abs(s.b), abs(s.a), s.a <= 0, s.b < 0)


def _associated(s: QuadInt, r: QuadInt, N: int) -> bool:
    """True iff s = r * v for a unit v of norm 1."""
    z = s * r.conjugate()  # equals v * N when associated
    if z.a % N or z.b % N:
        return False
    v = QuadInt(z.a // N, z.b // N, s.ctx)
    return v.norm() == 1


def solve_norm_eq(ctx: RingCtx, N: int, cap: int = NORM_CAP_DEFAULT) -> NormEqClasses:
    """Class representatives of x^2 - d*y^2 = N.

    Scans 0 <= y <= ceil(sqrt(|N| * (t + 1) / (2d))) with (t, u) the
    fundamental unit; every class has a fundamental solution inside that
    range, so an empty result is a proof of unsolvability.
    """
    if N == 0:
        raise ValueError("N must be nonzero")
    if abs(N) > cap:
        raise ValueError(f"|N| = {abs(N)} exceeds the search cap {cap}")
    fu = fundamental_unit(ctx)
    ybound = isqrt(abs(N) * (fu.x + 1) // (2 * ctx.d)) + 1
    hits: list[QuadInt] = []
    for y in range(ybound + 1):
        t = ctx.d * y * y + N
        if t < 0:
            continue
        x = is_perfect_square(t)
        if x is None:
            continue
        seen = set()
        for sx in (x, -x):
            for sy in (y, -y):
                if (sx, sy) not in seen:
                    seen.add((sx, sy))
                    hits.append(QuadInt(sx, sy, ctx))
    hits.sort(key=_rep_key)
    reps: list[QuadInt] = []
    for s in hits:
        if not any(_associated(s, r, N) for r in reps):
            reps.append(s)
    return NormEqClasses(N, tuple(reps), fu)


def solutions_within(classes: NormEqClasses, ybound: int) -> list[QuadInt]:
    """All solutions with |y| <= ybound, deterministically ordered.

    Walks +-rep * unit^k both ways from each representative; |y| along a walk
    descends to a single valley and then grows, so the walk stops once it is
    past the valley and above the bound.
    """
    if not classes.representatives:
        return []
    ctx = classes.representatives[0].ctx
    unit = QuadInt(classes.unit.x, classes.unit.y, ctx)
    found: set[tuple[int, int]] = set()
    for rep in classes.representatives:
        for step in (unit, unit.conjugate()):
            cur = rep
            prev = None
            for _ in range(100_000):
                ay = abs(cur.b)
                if ay <= ybound:
                    found.add((cur.a, cur.b))
                    found.add((-cur.a, -cur.b))
                elif prev is not None and ay >= prev:
                    break
                prev = ay
                cur = cur * step
            else:
                raise RuntimeError(f"unit walk failed to leave |y| <= {ybound}")
    sols = [QuadInt(a, b, ctx) for (a, b) in found]
    sols.sort(key=_enum_key)
    return sols


def enumerate_solutions(classes: NormEqClasses, limit: int) -> list[QuadInt]:
    """The first `limit` solutions in the canonical order."""
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    if not classes.representatives:
        return []
    bound = max(abs(r.b) for r in classes.representatives) + 1
    while True:
        sols = solutions_within(classes, bound)
        if len(sols) >= limit:
            return sols[:limit]
        bound = bound * 4 + 4


# ---------------------------------------------------------------------------
# structure of solutions for d = 15 (mod 60)

_QR_MOD5 = {0, 1, 4}


@dataclass(frozen=True)
class Pm2Certificate:
    """Record that x^2 - d*y^2 = +-2 is unsolvable when 5 | d.

    Both +2 and -2 are quadratic non-residues mod 5, so neither equation has
    solutions; the two *_empty fields cross-check that against the solver.
    """

    d: int
    d_mod5: int
    plus2_qr_mod5: bool
    minus2_qr_mod5: bool
    plus2_empty: bool
    minus2_empty: bool

    @property
    def ok(self) -> bool:
        return (
            self.d_mod5 == 0
            and not self.plus2_qr_mod5
            and not self.minus2_qr_mod5
            and self.plus2_empty
            and self.minus2_empty
        )


def check_pm2_unsolvable(ctx: RingCtx) -> Pm2Certificate:
    """Certificate that +-2 are unattained norms; requires d = 15 (mod 60)."""
    if ctx.d_mod60 != 15:
        raise ValueError(f"d = {ctx.d} is not 15 mod 60")
    cert = Pm2Certificate(
        d=ctx.d,
        d_mod5=ctx.d % 5,
        plus2_qr_mod5=2 % 5 in _QR_MOD5,
        minus2_qr_mod5=-2 % 5 in _QR_MOD5,
        plus2_empty=not solve_norm_eq(ctx, 2).representatives,
        minus2_empty=not solve_norm_eq(ctx, -2).representatives,
    )
    if not cert.ok:
        raise ShapeViolation(f"+-2 unexpectedly solvable for d = {ctx.d}")
    return cert


@dataclass(frozen=True)
class Norm6Shape:
    """Decomposition x = 6*alpha + 3*sign_x, y = 6*beta + sign_y.

    The convention is fixed: sign_x is always +1 (negative x is absorbed
    into alpha) and sign_y follows y mod 6, so the decomposition is unique.
    """

    alpha: int
    beta: int
    sign_x: int
    sign_y: int


def norm6_shape(sol: QuadInt) -> Norm6Shape:
    """Shape of a norm -6 solution: x = 3 (mod 6) and y = +-1 (mod 6)."""
    if sol.norm() != -6:
        raise ValueError(f"{sol} has norm {sol.norm()}, expected -6")
    x, y = sol.a, sol.b
    if x % 6 != 3:
        raise ShapeViolation(f"norm -6 solution with x = {x} not 3 mod 6")
    ymod = y % 6
    if ymod == 1:
        sign_y, beta = 1, (y - 1) // 6
    elif ymod == 5:
        sign_y, beta = -1, (y + 1) // 6
    else:
        raise ShapeViolation(f"norm -6 solution with y = {y} not +-1 mod 6")
    return Norm6Shape(alpha=(x - 3) // 6, beta=beta, sign_x=1, sign_y=sign_y)


def select_norm6_by_parity(ctx: RingCtx, parity: str) -> QuadInt:
    """First enumerated norm -6 solution whose alpha + beta has the parity.

    Both parities occur among the sign flips of any one solution, so the
    scan terminates.
    """
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    if ctx.d_mod60 != 15:
        raise ValueError(f"d = {ctx.d} is not 15 mod 60")
    classes = solve_norm_eq(ctx, -6)
    if not classes.representatives:
        raise ValueError(f"x^2 - {ctx.d}y^2 = -6 has no solutions")
    want = 0 if parity == "even" else 1
    limit = 8
    while True:
        for sol in enumerate_solutions(classes, limit):
            shape = norm6_shape(sol)
            if (shape.alpha + shape.beta) % 2 == want:
                return sol
        limit *= 2


def unit_from_norm6(sol: QuadInt) -> QuadInt:
    """Norm 1 element ((g^2 + 3)/3, g*h/3) built from a norm -6 solution (g, h).

    3 | g for every norm -6 solution, so the division is exact; the result
    always has an even first and odd second coordinate.
    """
    if sol.norm() != -6:
        raise ValueError(f"{sol} has norm {sol.norm()}, expected -6")
    g, h = sol.a, sol.b
    if g % 3:
        raise ShapeViolation(f"norm -6 solution with x = {g} not divisible by 3")
    u = QuadInt((g * g + 3) // 3, g * h // 3, sol.ctx)
    if u.norm() != 1:
        raise ShapeViolation(f"derived element {u} has norm {u.norm()}, expected 1")
    if u.a % 2 != 0 or u.b % 2 != 1:
        raise ShapeViolation(f"derived unit {u} missing even/odd coordinate parity")
    return u


class UnitShape(Enum):
    """The two possible coordinate shapes of the fundamental unit mod 6."""

    Y_PM1 = "(6a+-4, 6b+-1)"
    Y_PLUS3 = "(6a+-4, 6b+3)"


def fundamental_shape(ctx: RingCtx) -> UnitShape:
    """Classify the fundamental unit's coordinates mod 6."""
    fu = fundamental_unit(ctx)
    if fu.x % 6 not in (2, 4):
        raise ShapeViolation(f"fundamental unit x = {fu.x} not +-4 mod 6")
    ymod = fu.y % 6
    if ymod in (1, 5):
        return UnitShape.Y_PM1
    if ymod == 3:
        return UnitShape.Y_PLUS3
    raise ShapeViolation(f"fundamental unit y = {fu.y} even mod 6")


def d_congruence_check(ctx: RingCtx) -> bool | None:
    """d = 15 (mod 360), which is forced whenever norm -6 is attained.

    Returns None (not applicable) when d is not 15 mod 60 or -6 is not
    attained; a False return therefore signals invalid input.
    """
    if ctx.d_mod60 != 15:
        return None
    if not solve_norm_eq(ctx, -6).representatives:
        return None
    return ctx.d_mod360 == 15
