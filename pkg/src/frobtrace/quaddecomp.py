"""Normalised representations p = a^2 + b^2 and p = c^2 - cd + d^2.

The normalisations are a + bi = 1 mod (2+2i) in Z[i] and c + d*omega = 2 mod 3
in Z[omega].  Both are found by taking one base solution from an exhaustive
scan and walking its unit multiples and conjugates in a fixed order.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import BadResidue, InternalError


@dataclass(frozen=True)
class GaussianDecomp:
    a: int
    b: int


@dataclass(frozen=True)
class EisensteinDecomp:
    c: int
    d: int


def is_gaussian_normalized(a: int, b: int) -> bool:
    # ((a-1) + bi)(2-2i) / 8 must lie in Z[i].
    re = 2 * (a - 1) + 2 * b
    im = 2 * b - 2 * (a - 1)
    return re % 8 == 0 and im % 8 == 0


def is_eisenstein_normalized(c: int, d: int) -> bool:
    return c % 3 == 2 and d % 3 == 0


def _gaussian_base(p: int) -> tuple[int, int]:
    for a in range(isqrt(p) + 1):
        b2 = p - a * a
        b = isqrt(b2)
        if b * b == b2:
            return a, b
    raise InternalError(f"no base solution of a^2+b^2={p}")


def gaussian_associates(p: int) -> list[tuple[int, int]]:
    """The 8 unit multiples and conjugates of the base solution, in scan order."""
    a, b = _gaussian_base(p)
    cands = {(x, y) for x, y in ((a, b), (b, a)) for x, y in ((x, y), (-x, y), (x, -y), (-x, -y))}
    return sorted(cands, reverse=True)


def gaussian_decomp(p: int) -> GaussianDecomp:
    if p % 4 != 1:
        raise BadResidue(f"p={p} is not 1 mod 4")
    for a, b in gaussian_associates(p):
        if is_gaussian_normalized(a, b):
            return GaussianDecomp(a, b)
    raise InternalError(f"no associate of the base solution for {p} is 1 mod 2+2i")


def all_gaussian_normalized(p: int) -> list[GaussianDecomp]:
    return [GaussianDecomp(a, b) for a, b in gaussian_associates(p) if is_gaussian_normalized(a, b)]


def _eisenstein_base(p: int) -> tuple[int, int]:
    for c in range(2 * isqrt(p) + 2):
        for d in range(c + 1):
            if c * c - c * d + d * d == p:
                return c, d
    raise InternalError(f"no base solution of c^2-cd+d^2={p}")


def eisenstein_associates(p: int) -> list[tuple[int, int]]:
    """The 12 elements u*z and u*conj(z), u a sixth root of unity, in scan order."""
    c, d = _eisenstein_base(p)
    out = set()
    # conj(c + d w) = (c - d) - d w ; -w * (x + y w) = y + (y - x) w, a unit of order 6
    for z in ((c, d), (c - d, -d)):
        x, y = z
        for _ in range(6):
            out.add((x, y))
            x, y = y, y - x
    return sorted(out, reverse=True)


def eisenstein_decomp(p: int) -> EisensteinDecomp:
    if p % 3 != 1:
        raise BadResidue(f"p={p} is not 1 mod 3")
    for c, d in eisenstein_associates(p):
        if is_eisenstein_normalized(c, d):
            return EisensteinDecomp(c, d)
    raise InternalError(f"no associate of the base solution for {p} is 2 mod 3")


def all_eisenstein_normalized(p: int) -> list[EisensteinDecomp]:
    return [EisensteinDecomp(c, d) for c, d in eisenstein_associates(p) if is_eisenstein_normalized(c, d)]
