"""Point counts and traces of Frobenius for the curve families, plus exhaustive
enumeration of F_p-isomorphism classes of short Weierstrass curves.

Curves are ``y^2 = f(x)`` with ``f`` a cubic given by coefficients in
increasing degree, ``[f0, f1, f2, f3]``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BadParameter, NonPrime, Singular, TooLarge
from .ffield import is_prime

CLASS_ORACLE_PMAX = 200


@lru_cache(maxsize=64)
def legendre_table(p: int) -> np.ndarray:
    """Quadratic character of x for x = 0..p-1, built by squaring."""
    tab = -np.ones(p, dtype=np.int64)
    tab[0] = 0
    tab[(np.arange(1, p, dtype=np.int64) ** 2) % p] = 1
    tab.setflags(write=False)
    return tab


def cubic_discriminant(f, p: int) -> int:
    d, c, b, a = (int(v) % p for v in f)
    return (18 * a * b * c * d - 4 * b**3 * d + b * b * c * c - 4 * a * c**3 - 27 * a * a * d * d) % p


def _check_prime(p: int):
    if p < 5 or not is_prime(p):
        raise NonPrime(f"p={p} is not a prime >= 5")


@dataclass(frozen=True)
class CurvePointCount:
    p: int
    coeffs: tuple[int, ...]
    count: int
    trace: int
    t: int | None = None


def _poly_values(f, p: int) -> np.ndarray:
    x = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(list(f)):
        acc = (acc * x + int(c)) % p
    return acc


def count_curve(p: int, f, t: int | None = None) -> CurvePointCount:
    _check_prime(p)
    f = tuple(int(c) % p for c in f) + (0,) * (4 - len(f))
    if f[3] == 0 or cubic_discriminant(f, p) == 0:
        raise Singular(f"y^2 = {f} is singular mod {p}")
    s = int(legendre_table(p)[_poly_values(f, p)].sum())
    count = p + 1 + s
    return CurvePointCount(p=p, coeffs=f, count=count, trace=p + 1 - count, t=t)


def count_naive(p: int, f) -> int:
    """#E(F_p) by scanning every (x, y), plus the point at infinity."""
    fx = _poly_values(f, p)
    y2 = (np.arange(p, dtype=np.int64) ** 2) % p
    return int((fx[:, None] == y2[None, :]).sum()) + 1


class CurveFamily(enum.Enum):
    T1728 = "T1728"          # y^2 = 4x^3 - 27/(1-t) x - 27/(1-t)
    BEUKERS_A = "BEUKERS_A"  # y^2 = x^3 + t x + 1
    BEUKERS_B = "BEUKERS_B"  # y^2 = x^3 - x - t
    LEGENDRE = "LEGENDRE"    # y^2 = x(x-1)(x-t)
    TWISTED = "TWISTED"      # y^2 = (x-1)(x^2+t)

    def excluded_t(self, p: int) -> frozenset[int]:
        if self in (CurveFamily.T1728, CurveFamily.LEGENDRE):
            return frozenset({0, 1})
        if self is CurveFamily.TWISTED:
            return frozenset({0, p - 1})
        if self is CurveFamily.BEUKERS_A:
            return frozenset(t for t in range(p) if (4 * t**3 + 27) % p == 0)
        return frozenset(t for t in range(p) if (27 * t * t - 4) % p == 0)

    def valid_t(self, p: int) -> list[int]:
        bad = self.excluded_t(p)
        return [t for t in range(p) if t not in bad]

    def coefficients(self, p: int, t: int) -> tuple[int, int, int, int]:
        t %= p
        if t in self.excluded_t(p):
            raise BadParameter(f"t={t} is excluded for {self.value} at p={p}")
        if self is CurveFamily.T1728:
            c = -27 * pow(1 - t, p - 2, p) % p
            return (c, c, 0, 4)
        if self is CurveFamily.BEUKERS_A:
            return (1, t, 0, 1)
        if self is CurveFamily.BEUKERS_B:
            return (-t % p, p - 1, 0, 1)
        if self is CurveFamily.LEGENDRE:
            return (0, t, (-1 - t) % p, 1)
        return (-t % p, t, p - 1, 1)


def trace_family(family: CurveFamily, p: int, t: int) -> int:
    _check_prime(p)
    return count_curve(p, family.coefficients(p, t), t=t).trace


def family_traces(family: CurveFamily, p: int) -> dict[int, int]:
    """Trace for every valid t, in increasing t."""
    _check_prime(p)
    fam = CurveFamily(family)
    return _family_traces_cached(fam, p)


@lru_cache(maxsize=256)
def _family_traces_cached(family: CurveFamily, p: int) -> dict[int, int]:
    return {t: trace_family(family, p, t) for t in family.valid_t(p)}


def t1728_traces(p: int) -> list[int]:
    """a(t, p) for t = 2..p-1, the list every trace-formula computation sums over."""
    tr = family_traces(CurveFamily.T1728, p)
    return [tr[t] for t in range(2, p)]


def j_invariant(p: int, A: int, B: int) -> int:
    """j of y^2 = x^3 + A x + B."""
    num = 4 * A**3
    den = (num + 27 * B * B) % p
    if den == 0:
        raise Singular(f"(A, B) = ({A}, {B}) is singular mod {p}")
    return 1728 * num * pow(den, p - 2, p) % p


def j_invariant_weierstrass(p: int, g2: int, g3: int) -> int:
    """j of y^2 = 4x^3 - g2 x - g3."""
    num = g2**3
    den = (num - 27 * g3 * g3) % p
    if den == 0:
        raise Singular("singular curve")
    return 1728 * num * pow(den, p - 2, p) % p


def trace_closed_form(ctx, t: int) -> complex:
    """a(t, p) on the 1728/t family evaluated from its Gauss-sum closed form."""
    from .charsum import gauss_table

    p = ctx.p
    G = gauss_table(ctx)
    s = (p - 1) // 12
    k = np.arange(p - 1)
    w = 27 * pow(1 - t, p - 2, p) % p
    ph = ctx.legendre(3 * pow(1 - t, p - 2, p))
    t4 = ctx.unit_roots[(k * ctx.dlog[(-4) % p]) % (p - 1)]
    tw = ctx.unit_roots[(-k * ctx.dlog[w]) % (p - 1)]
    total = np.sum(G[-k] * G[3 * k] * G[6 * s - 2 * k] * t4 * tw)
    val = -ph - ph * total / (math.sqrt(p) * (p - 1))
    return complex(val)


# --- isomorphism classes -----------------------------------------------------


@dataclass(frozen=True)
class IsoClass:
    rep: tuple[int, int]
    trace: int
    j: int
    size: int


@lru_cache(maxsize=8)
def enumerate_classes(p: int, bound: int = CLASS_ORACLE_PMAX) -> tuple[IsoClass, ...]:
    """Orbits of nonsingular (A, B) under (A, B) -> (u^4 A, u^6 B), u in F_p^x."""
    _check_prime(p)
    if p > bound:
        raise TooLarge(f"class enumeration is limited to p <= {bound}")
    A, B = np.meshgrid(np.arange(p, dtype=np.int64), np.arange(p, dtype=np.int64), indexing="ij")
    A = A.ravel()
    B = B.ravel()
    good = (4 * A**3 + 27 * B * B) % p != 0
    A, B = A[good], B[good]
    key = A * p + B
    canon = key.copy()
    for u in range(2, p):
        u4 = pow(u, 4, p)
        u6 = pow(u, 6, p)
        np.minimum(canon, (u4 * A % p) * p + (u6 * B % p), out=canon)
    reps, sizes = np.unique(canon, return_counts=True)
    leg = legendre_table(p)
    x = np.arange(p, dtype=np.int64)
    x3 = x**3 % p
    out = []
    for r, n in zip(reps.tolist(), sizes.tolist()):
        a, b = divmod(r, p)
        tr = -int(leg[(x3 + a * x + b) % p].sum())
        out.append(IsoClass(rep=(a, b), trace=tr, j=j_invariant(p, a, b), size=n))
    return tuple(out)


def classes_by_j(p: int) -> dict[int, list[IsoClass]]:
    out: dict[int, list[IsoClass]] = {}
    for c in enumerate_classes(p):
        out.setdefault(c.j, []).append(c)
    return out


def count_I(p: int, s: int) -> int:
    """Number of F_p-classes with p + 1 +- s points."""
    return sum(1 for c in enumerate_classes(p) if abs(c.trace) == s)
