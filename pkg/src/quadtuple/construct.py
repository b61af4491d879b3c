"""Construction and verification of Diophantine quadruples in Z[sqrt(d)].

Builds {a, b, a+b+2r, a+4b+4r} with property D(n) for n = (4m+2) + 4k*sqrt(d),
m + k even, in rings with d = 15 (mod 60) where norm -6 is attained.  The
identities behind the six stored square-root witnesses:

    ab + n = r^2                    (forced by the choice of b)
    a(a+b+2r) + n = (a+r)^2
    b(a+b+2r) + n = (b+r)^2
    a(a+4b+4r) + n = alpha^2        given 3n = (a+2r)^2 - alpha^2
    b(a+4b+4r) + n = (2b+r)^2
    (a+b+2r)(a+4b+4r) + n = (a+2b+3r)^2
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import pellsolve
from .quadring import QuadInt, RingCtx, element_from_json, element_to_json, exact_div, sqrt_in_ring

__all__ = [
    "PAIRS",
    "ConstructionTrace",
    "PairStatus",
    "ParityError",
    "Quadruple",
    "RetryBudgetExceeded",
    "TargetN",
    "VerifyReport",
    "construct_quadruple",
    "degenerate_check",
    "quadruple_from_json",
    "quadruple_to_json",
    "scale_quadruple",
    "target_n",
    "verify_quadruple",
]

# index pairs of a quadruple, 1-based
PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


class ParityError(ValueError):
    """m + k must be even for the construction to land in the ring."""


class RetryBudgetExceeded(RuntimeError):
    """Every tried unit choice produced a degenerate element set."""


@dataclass(frozen=True)
class TargetN:
    """The target n = (4m+2) + 4k*sqrt(d)."""

    m: int
    k: int
    n: QuadInt


def target_n(ctx: RingCtx, m: int, k: int) -> TargetN:
    return TargetN(m, k, QuadInt(4 * m + 2, 4 * k, ctx))


@dataclass(frozen=True)
class Quadruple:
    """Four elements, the target n, and square-root witnesses per pair.

    witnesses maps 1-based index pairs (i, j), i < j, to w with
    elements[i-1] * elements[j-1] + n = w^2; it may be None (stripped),
    in which case verification falls back on the square decision procedure.
    """

    elements: tuple[QuadInt, QuadInt, QuadInt, QuadInt]
    n: QuadInt
    witnesses: Mapping[tuple[int, int], QuadInt] | None


@dataclass(frozen=True)
class ConstructionTrace:
    """Every intermediate of a successful construction, for audit."""

    gamma_delta: QuadInt
    factorization_choice: str
    alpha1: QuadInt
    alpha2: QuadInt
    unit_a: QuadInt
    r: QuadInt
    b: QuadInt
    alpha_sym: QuadInt
    unit_index: int


def degenerate_check(elements) -> bool:
    """True iff all elements are nonzero and pairwise distinct."""
    if any(e.is_zero() for e in elements):
        return False
    return len(set((e.a, e.b) for e in elements)) == len(elements)


def _halved(x: QuadInt) -> QuadInt:
    if x.a % 2 or x.b % 2:
        raise pellsolve.ShapeViolation(f"{x} is not divisible by 2 in the ring")
    return QuadInt(x.a // 2, x.b // 2, x.ctx)


def _unit_exponent(index: int) -> int:
    # deterministic schedule 0, 1, -1, 2, -2, ...
    if index % 2:
        return (index + 1) // 2
    return -(index // 2)


def _pick_norm6(ctx: RingCtx, choice: str) -> QuadInt:
    """First enumerated norm -6 solution matching the factorization form.

    'first' wants y = +1 (mod 6), 'second' wants y = -1 (mod 6); both
    residues occur among the sign flips of any solution.
    """
    want = 1 if choice == "first" else -1
    classes = pellsolve.solve_norm_eq(ctx, -6)
    if not classes.representatives:
        raise ValueError(f"x^2 - {ctx.d}y^2 = -6 has no solutions")
    limit = 8
    while True:
        for sol in pellsolve.enumerate_solutions(classes, limit):
            if pellsolve.norm6_shape(sol).sign_y == want:
                return sol
        limit *= 2


def construct_quadruple(
    ctx: RingCtx,
    m: int,
    k: int,
    unit_index: int = 0,
    factorization_choice: str = "first",
    retry_budget: int = 64,
) -> tuple[Quadruple, ConstructionTrace]:
    """Build a verified D(n) quadruple for n = (4m+2, 4k), m + k even.

    Steps: pick a norm -6 solution (gamma, delta) of the requested shape;
    split 3n = alpha1 * alpha2 with alpha1 = (-gamma, delta) and
    alpha2 = (gamma, delta) * (2m+1, 2k); halve alpha1 + alpha2 into a + 2r;
    take a from the deterministic unit schedule (all units of even/odd
    coordinate parity, which keeps r integral); then b = (r^2 - n) / a.

    Degenerate element sets (a zero or a collision) advance the schedule;
    only finitely many indices can misbehave, so the budget is generous.
    """
    if ctx.d_mod60 != 15:
        raise ValueError(f"d = {ctx.d} is not 15 mod 60")
    if (m + k) % 2:
        raise ParityError(f"m + k = {m + k} is odd")
    if unit_index < 0:
        raise ValueError(f"unit_index must be >= 0, got {unit_index}")
    if factorization_choice not in ("first", "second"):
        raise ValueError(f"factorization_choice must be 'first' or 'second'")

    gd = _pick_norm6(ctx, factorization_choice)
    n = QuadInt(4 * m + 2, 4 * k, ctx)
    alpha1 = QuadInt(-gd.a, gd.b, ctx)
    alpha2 = gd * QuadInt(2 * m + 1, 2 * k, ctx)
    s = _halved(alpha1 + alpha2)  # a + 2r
    alpha_sym = _halved(alpha1 - alpha2)

    base_unit = pellsolve.unit_from_norm6(gd)
    eps = pellsolve.unit_quadint(ctx)
    eps2 = eps * eps
    eps2_inv = eps2.conjugate()  # norm 1, so the conjugate inverts it

    for attempt in range(retry_budget):
        index = unit_index + attempt
        j = _unit_exponent(index)
        step = eps2 if j >= 0 else eps2_inv
        a = base_unit * step ** abs(j)
        if a.norm() != 1 or a.a % 2 != 0 or a.b % 2 != 1:
            raise pellsolve.ShapeViolation(f"unit schedule produced {a}")
        r = _halved(s - a)
        b = exact_div(r * r - n, a)
        if b is None:  # cannot happen: a is a unit
            raise pellsolve.ShapeViolation(f"division by unit {a} failed")
        elements = (a, b, a + b + 2 * r, a + 4 * b + 4 * r)
        if not degenerate_check(elements):
            continue
        witnesses = {
            (1, 2): r,
            (1, 3): a + r,
            (1, 4): alpha_sym,
            (2, 3): b + r,
            (2, 4): 2 * b + r,
            (3, 4): a + 2 * b + 3 * r,
        }
        quad = Quadruple(elements, n, witnesses)
        trace = ConstructionTrace(
            gamma_delta=gd,
            factorization_choice=factorization_choice,
            alpha1=alpha1,
            alpha2=alpha2,
            unit_a=a,
            r=r,
            b=b,
            alpha_sym=alpha_sym,
            unit_index=index,
        )
        return quad, trace
    raise RetryBudgetExceeded(
        f"no nondegenerate quadruple within {retry_budget} unit choices"
    )


@dataclass(frozen=True)
class PairStatus:
    """Verification record for one index pair."""

    i: int
    j: int
    target: QuadInt  # elements[i-1] * elements[j-1] + n
    witness_ok: bool | None  # None when no witness is stored for the pair
    root: QuadInt | None  # independent root from the square decision procedure
    ok: bool


@dataclass(frozen=True)
class VerifyReport:
    pairs: tuple[PairStatus, ...]
    ok: bool


def verify_quadruple(ctx: RingCtx, quad: Quadruple) -> VerifyReport:
    """Check all six pairwise products against witnesses and the square test.

    The two routes are independent on purpose: a bad witness with a good
    root points at the construction, a good witness with no root points at
    the square decision procedure.
    """
    pairs = []
    all_ok = True
    for i, j in PAIRS:
        target = quad.elements[i - 1] * quad.elements[j - 1] + quad.n
        witness = quad.witnesses.get((i, j)) if quad.witnesses else None
        witness_ok = None if witness is None else witness * witness == target
        root = sqrt_in_ring(target)
        ok = root is not None and witness_ok is not False
        all_ok = all_ok and ok
        pairs.append(PairStatus(i, j, target, witness_ok, root, ok))
    return VerifyReport(tuple(pairs), all_ok)


def scale_quadruple(ctx: RingCtx, quad: Quadruple, w: QuadInt) -> Quadruple:
    """{w*a_i} has property D(w^2 * n); witnesses scale along."""
    if w.is_zero():
        raise ValueError("scaling factor must be nonzero")
    elements = tuple(w * e for e in quad.elements)
    witnesses = None
    if quad.witnesses is not None:
        witnesses = {pair: w * x for pair, x in quad.witnesses.items()}
    return Quadruple(elements, w * w * quad.n, witnesses)


# ---------------------------------------------------------------------------
# JSON form


def quadruple_to_json(quad: Quadruple) -> dict:
    ctx = quad.n.ctx
    doc = {
        "d": str(ctx.d),
        "n": element_to_json(quad.n),
        "elements": [element_to_json(e) for e in quad.elements],
    }
    if quad.witnesses is not None:
        doc["witnesses"] = {
            f"{i}{j}": element_to_json(quad.witnesses[(i, j)])
            for (i, j) in PAIRS
            if (i, j) in quad.witnesses
        }
    return doc


def quadruple_from_json(doc: dict, ctx: RingCtx | None = None) -> Quadruple:
    if ctx is None:
        ctx = RingCtx(int(doc["d"]), allow_nonsquarefree=True)
    elif ctx.d != int(doc["d"]):
        raise ValueError(f"document is for d = {doc['d']}, context has d = {ctx.d}")
    elements = tuple(element_from_json(e, ctx) for e in doc["elements"])
    if len(elements) != 4:
        raise ValueError(f"expected 4 elements, got {len(elements)}")
    witnesses = None
    if "witnesses" in doc:
        witnesses = {
            (int(key[0]), int(key[1])): element_from_json(value, ctx)
            for key, value in doc["witnesses"].items()
        }
    return Quadruple(elements, element_from_json(doc["n"], ctx), witnesses)
