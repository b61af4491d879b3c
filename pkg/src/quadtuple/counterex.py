"""End-to-end counterexample pipeline.

Walks the one-parameter family d = 360*(10*alpha^2 + alpha) + 15, where
x = 60*alpha + 3, y = 1 solves x^2 - d*y^2 = -6 identically, and for each
eligible (square-free) member produces a self-contained report: a verified
D(n) quadruple for n = 2*unit^(2t) together with a certificate that this n
is not a difference of two squares.  Each report is a machine-checkable
counterexample to the Franusic-Jadrijevic conjecture, which ties D(n)
quadruple existence to n being a difference of two squares.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import pellsolve
from .construct import (
    Quadruple,
    construct_quadruple,
    degenerate_check,
    quadruple_from_json,
    quadruple_to_json,
    scale_quadruple,
    verify_quadruple,
)
from .quadring import (
    NotSquareFreeError,
    QuadInt,
    RingCtx,
    element_from_json,
    element_to_json,
    is_square_free,
)
from .represent import (
    NonRepCertificate,
    certificate_to_json,
    certify_nonrepresentable,
)

__all__ = [
    "CounterexampleReport",
    "DCandidate",
    "StageError",
    "T_CAP_DEFAULT",
    "build_report",
    "enumerate_counterexample_rings",
    "family_d",
    "report_to_json",
    "verify_report_doc",
]

T_CAP_DEFAULT = 1000


class StageError(RuntimeError):
    """A pipeline stage failed; the stage name travels with the message."""

    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(f"[{stage}] {message}")


@dataclass(frozen=True)
class DCandidate:
    """One member of the d-family, with its built-in norm -6 solution x + sqrt(d)."""

    alpha: int
    d: int
    x: int
    square_free: bool


def family_d(alpha: int) -> DCandidate:
    """d = 360*(10*alpha^2 + alpha) + 15 and x = 60*alpha + 3."""
    d = 360 * (10 * alpha * alpha + alpha) + 15
    x = 60 * alpha + 3
    if x * x - d != -6:
        raise StageError("family", f"x^2 - d = {x * x - d} at alpha = {alpha}")
    return DCandidate(alpha=alpha, d=d, x=x, square_free=is_square_free(d))


def enumerate_counterexample_rings(alpha_lo: int, alpha_hi: int) -> list[DCandidate]:
    """All candidates for alpha_lo <= alpha <= alpha_hi, in alpha order.

    Non-square-free members are retained but flagged ineligible.
    """
    if alpha_lo > alpha_hi:
        raise ValueError(f"empty range: {alpha_lo} > {alpha_hi}")
    return [family_d(alpha) for alpha in range(alpha_lo, alpha_hi + 1)]


@dataclass(frozen=True)
class CounterexampleReport:
    d: int
    t: int
    n: QuadInt
    quadruple: Quadruple
    certificate: NonRepCertificate
    verified: bool
    notes: tuple[str, ...]


def build_report(ctx: RingCtx, t: int, t_cap: int = T_CAP_DEFAULT) -> CounterexampleReport:
    """Full pipeline for one ring and exponent t >= 0.

    Base D(2) quadruple at m = k = 0, scaled by unit^t to reach
    n = 2*unit^(2t); the certificate applies because even unit powers have
    an odd first and even second coordinate, keeping n = (4m+2, 4k) with
    n/2 of norm 1.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if t > t_cap:
        raise ValueError(f"t = {t} exceeds the cap {t_cap}")
    if not ctx.square_free:
        raise StageError("eligibility", f"d = {ctx.d} is not square-free")
    if ctx.d_mod60 != 15:
        raise StageError("eligibility", f"d = {ctx.d} is not 15 mod 60")
    if not pellsolve.solve_norm_eq(ctx, -6).representatives:
        raise StageError("eligibility", f"norm -6 is not attained for d = {ctx.d}")

    unit = pellsolve.unit_quadint(ctx)
    n = 2 * unit ** (2 * t)

    try:
        base, trace = construct_quadruple(ctx, 0, 0)
    except Exception as exc:
        raise StageError("construct", str(exc)) from exc
    scaled = scale_quadruple(ctx, base, unit**t)

    certificate = certify_nonrepresentable(n)
    if certificate is None:
        raise StageError("certify", f"hypotheses unexpectedly fail for n = {n}")

    verified = (
        scaled.n == n
        and degenerate_check(scaled.elements)
        and verify_quadruple(ctx, scaled).ok
    )
    notes = (
        f"base quadruple at m=0, k=0, unit_index={trace.unit_index}, "
        f"factorization={trace.factorization_choice}",
    )
    return CounterexampleReport(
        d=ctx.d,
        t=t,
        n=n,
        quadruple=scaled,
        certificate=certificate,
        verified=verified,
        notes=notes,
    )


def report_to_json(report: CounterexampleReport) -> dict:
    return {
        "d": str(report.d),
        "t": report.t,
        "n": element_to_json(report.n),
        "quadruple": quadruple_to_json(report.quadruple),
        "certificate": certificate_to_json(report.certificate),
        "verified": report.verified,
        "notes": list(report.notes),
    }


def verify_report_doc(doc: dict) -> bool:
    """Re-verify a report from its JSON alone, with no pipeline state.

    Uses only d, n, elements, witnesses, and the certificate: rebuilds the
    ring, re-runs the pairwise verification, and recomputes the certificate
    hypotheses from scratch.  Any inconsistency returns False.
    """
    try:
        d = int(doc["d"])
        ctx = RingCtx(d)
        quad = quadruple_from_json(doc["quadruple"], ctx)
        n = element_from_json(doc["n"], ctx)
    except (NotSquareFreeError, ValueError, KeyError, IndexError, TypeError):
        return False
    if quad.n != n:
        return False
    if not degenerate_check(quad.elements):
        return False
    if not verify_quadruple(ctx, quad).ok:
        return False
    certificate = certify_nonrepresentable(n)
    if certificate is None:
        return False
    stored = doc.get("certificate", {})
    try:
        stored_u = element_from_json(stored["u"], ctx)
    except (ValueError, KeyError, TypeError):
        return False
    return stored_u == certificate.u
