"""Exact arithmetic in the quadratic ring Z[sqrt(d)].

Elements are pairs (a, b) standing for a + b*sqrt(d) with unbounded integer
coordinates; nothing in this module ever rounds.  Alongside the ring type it
carries the integer routines the rest of the toolkit leans on (perfect-square
test, factorization, divisor enumeration) and the decision procedure for
squareness of a ring element.
"""

from __future__ import annotations

import os
import random
import re
from dataclasses import InitVar, dataclass, field
from math import gcd, isqrt

__all__ = [
    "MixedRingError",
    "NotSquareFreeError",
    "QuadInt",
    "RingCtx",
    "divisors",
    "element_from_json",
    "element_to_json",
    "exact_div",
    "factorize",
    "format_element",
    "is_perfect_square",
    "is_square_free",
    "parse_element",
    "sqrt_in_ring",
]


class NotSquareFreeError(ValueError):
    """The radicand has a square factor and the caller did not opt in."""


class MixedRingError(ValueError):
    """Operands belong to different ring contexts."""


# ---------------------------------------------------------------------------
# integer routines


def is_perfect_square(n: int) -> int | None:
    """Return the nonnegative integer square root of n, or None."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


_TRIAL_BOUND = 10**6
_DEFAULT_RHO_SEED = 1257787
# deterministic Miller-Rabin bases, sufficient below this limit
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def _rho_seed() -> int:
    return int(os.environ.get("QUADTUPLE_RHO_SEED", _DEFAULT_RHO_SEED))


def _is_prime(n: int, rng: random.Random) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES
    if n >= _MR_LIMIT:
        bases = bases + tuple(rng.randrange(2, n - 1) for _ in range(20))
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int, rng: random.Random) -> int:
    """A nontrivial factor of an odd composite n (Brent's cycle variant)."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}.

    Trial division below 10**6, then Brent's rho on what remains.  The rho
    walk is seeded deterministically (override with the QUADTUPLE_RHO_SEED
    environment variable) so repeated runs are byte-identical.
    """
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)  # steps through numbers coprime to 2,3,5
    i = 0
    while p <= _TRIAL_BOUND and p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += wheel[i]
        i = (i + 1) % 8
    if n > 1:
        rng = random.Random(_rho_seed())
        stack = [n]
        while stack:
            m = stack.pop()
            if _is_prime(m, rng):
                out[m] = out.get(m, 0) + 1
                continue
            f = _brent_rho(m, rng)
            stack.append(f)
            stack.append(m // f)
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n >= 1, sorted ascending."""
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**j for d in divs for j in range(e + 1)]
    return sorted(divs)


def is_square_free(n: int) -> bool:
    """True iff no prime squared divides n (n >= 1)."""
    return all(e == 1 for e in factorize(n).values())


# ---------------------------------------------------------------------------
# the ring


@dataclass(frozen=True)
class RingCtx:
    """Validated ring parameter d for Z[sqrt(d)], with cached residues.

    Rejects d < 2, perfect squares, and (unless allow_nonsquarefree is set)
    radicands with a square factor.
    """

    d: int
    d_mod4: int = field(init=False)
    d_mod60: int = field(init=False)
    d_mod360: int = field(init=False)
    square_free: bool = field(init=False)
    allow_nonsquarefree: InitVar[bool] = False

    def __post_init__(self, allow_nonsquarefree: bool) -> None:
        d = self.d
        if d < 2:
            raise ValueError(f"ring radicand must be >= 2, got {d}")
        if is_perfect_square(d) is not None:
            raise ValueError(f"ring radicand must not be a perfect square, got {d}")
        square_free = is_square_free(d)
        if not square_free and not allow_nonsquarefree:
            raise NotSquareFreeError(
                f"d = {d} is not square-free; pass allow_nonsquarefree=True to override"
            )
        object.__setattr__(self, "d_mod4", d % 4)
        object.__setattr__(self, "d_mod60", d % 60)
        object.__setattr__(self, "d_mod360", d % 360)
        object.__setattr__(self, "square_free", square_free)

    def element(self, a: int, b: int) -> QuadInt:
        return QuadInt(a, b, self)

    def one(self) -> QuadInt:
        return QuadInt(1, 0, self)

    def zero(self) -> QuadInt:
        return QuadInt(0, 0, self)


@dataclass(frozen=True)
class QuadInt:
    """a + b*sqrt(d), immutable, with exact integer coordinates."""

    a: int
    b: int
    ctx: RingCtx = field(repr=False)

    def _same_ring(self, other: QuadInt) -> None:
        if self.ctx is not other.ctx and self.ctx != other.ctx:
            raise MixedRingError(
                f"mixing elements of Z[sqrt({self.ctx.d})] and Z[sqrt({other.ctx.d})]"
            )

    def __add__(self, other: QuadInt) -> QuadInt:
        self._same_ring(other)
        return QuadInt(self.a + other.a, self.b + other.b, self.ctx)

    def __sub__(self, other: QuadInt) -> QuadInt:
        self._same_ring(other)
        return QuadInt(self.a - other.a, self.b - other.b, self.ctx)

    def __neg__(self) -> QuadInt:
        return QuadInt(-self.a, -self.b, self.ctx)

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadInt(self.a * other, self.b * other, self.ctx)
        if isinstance(other, QuadInt):
            self._same_ring(other)
            return QuadInt(
                self.a * other.a + self.ctx.d * self.b * other.b,
                self.a * other.b + self.b * other.a,
                self.ctx,
            )
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, e: int) -> QuadInt:
        if not isinstance(e, int) or e < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {e!r}")
        result = QuadInt(1, 0, self.ctx)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> QuadInt:
        return QuadInt(self.a, -self.b, self.ctx)

    def norm(self) -> int:
        return self.a * self.a - self.ctx.d * self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return abs(self.norm()) == 1

    def unit_inverse(self) -> QuadInt:
        """Inverse of a unit; for norm +1 that is the conjugate."""
        nm = self.norm()
        if nm == 1:
            return self.conjugate()
        if nm == -1:
            return -self.conjugate()
        raise ValueError(f"{self} has norm {nm}, not a unit")

    def __str__(self) -> str:
        return f"{self.a},{self.b}"


def exact_div(x: QuadInt, y: QuadInt) -> QuadInt | None:
    """x / y when the quotient lies in the ring, else None.

    Multiplies by the conjugate and requires norm(y) to divide both
    coordinates; the ring is an integral domain so the quotient is unique.
    """
    if y.is_zero():
        raise ZeroDivisionError("division by the zero element")
    x._same_ring(y)
    ny = y.norm()
    z = x * y.conjugate()
    if z.a % ny or z.b % ny:
        return None
    return QuadInt(z.a // ny, z.b // ny, x.ctx)


def sqrt_in_ring(z: QuadInt) -> QuadInt | None:
    """The w with w*w == z, or None when z is not a square in the ring.

    For w = (x, y) and z = (A, B): 2xy = B and x^2 + d*y^2 = A, so x^2 and
    d*y^2 are the two roots of T^2 - A*T + d*(B/2)^2, i.e. (A +- s)/2 with
    s^2 = A^2 - d*B^2 = norm(z).  Everything reduces to integer square-root
    tests, so coordinates with thousands of digits stay cheap.

    Roots come in pairs +-w; the one returned has positive rational part
    (positive sqrt(d) part when the rational part is zero).
    """
    ctx = z.ctx
    d, A, B = ctx.d, z.a, z.b
    if B == 0:
        if A < 0:
            return None
        s = is_perfect_square(A)
        if s is not None:
            return QuadInt(s, 0, ctx)
        if A % d == 0:
            s = is_perfect_square(A // d)
            if s is not None:
                return QuadInt(0, s, ctx)
        return None
    if B % 2:
        return None
    s = is_perfect_square(A * A - d * B * B)
    if s is None:
        return None
    half = B // 2
    for doubled in (A + s, A - s):
        if doubled % 2:
            continue
        x = is_perfect_square(doubled // 2)
        if not x:  # x == 0 cannot pair with B != 0
            continue
        if half % x:
            continue
        y = half // x
        if x * x + d * y * y == A:
            return QuadInt(x, y, ctx)
    return None


# ---------------------------------------------------------------------------
# textual and JSON element formats

_ELEMENT_RE = re.compile(r"^([+-]?[0-9]+),([+-]?[0-9]+)$")


def format_element(x: QuadInt) -> str:
    """Render as 'a,b' (two signed decimals, no spaces)."""
    return f"{x.a},{x.b}"


def parse_element(text: str, ctx: RingCtx) -> QuadInt:
    """Parse the 'a,b' format; raises ValueError on anything else."""
    m = _ELEMENT_RE.match(text)
    if m is None:
        raise ValueError(f"malformed element {text!r}: expected 'a,b'")
    return QuadInt(int(m.group(1)), int(m.group(2)), ctx)


def element_to_json(x: QuadInt) -> dict[str, str]:
    """JSON form with string-encoded integers (no precision loss)."""
    return {"a": str(x.a), "b": str(x.b)}


def element_from_json(doc: dict, ctx: RingCtx) -> QuadInt:
    return QuadInt(int(doc["a"]), int(doc["b"]), ctx)
