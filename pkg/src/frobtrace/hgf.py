"""Greene's hypergeometric functions over F_p.

``hg_general`` evaluates the character-sum definition (a sum over all p-1
characters of products of binomial coefficients); ``hg_2f1`` evaluates the
single-sum form for 2F1.  The specialisations below are the particular
functions that line up with traces of Frobenius on curve families.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .charsum import binom_gauss, gauss_table
from .errors import BadArgument, BadResidue, ContextMismatch
from .ffield import FpContext, MultCharacter, char_values


@dataclass(frozen=True)
class HgSpec:
    upper: tuple[MultCharacter, ...]
    lower: tuple[MultCharacter, ...]
    x: int

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        if len(self.lower) < 1 or len(self.upper) != len(self.lower) + 1:
            raise BadArgument("need n+1 upper and n lower characters, n >= 1")
        ctx = self.upper[0].ctx
        if any(c.ctx is not ctx for c in self.upper + self.lower):
            raise ContextMismatch("characters live on different fields")

    @property
    def ctx(self) -> FpContext:
        return self.upper[0].ctx


def hg_general(spec: HgSpec) -> complex:
    ctx = spec.ctx
    p = ctx.p
    x = spec.x % p
    if x == 0:
        return 0j
    table = gauss_table(ctx)
    j = np.arange(p - 1)
    terms = binom_gauss(table, spec.upper[0].m + j, j)
    for A, B in zip(spec.upper[1:], spec.lower):
        terms = terms * binom_gauss(table, A.m + j, B.m + j)
    chi_x = ctx.unit_roots[(j * ctx.dlog[x]) % (p - 1)]
    return complex(p / (p - 1) * np.sum(terms * chi_x))


def hg_2f1(A: MultCharacter, B: MultCharacter, C: MultCharacter, x: int) -> complex:
    return complex(hg_2f1_many(A, B, C, [x])[0])


def hg_2f1_many(A: MultCharacter, B: MultCharacter, C: MultCharacter, xs) -> np.ndarray:
    """``eps(x) * BC(-1)/p * sum_y B(y) conj(B)C(1-y) conj(A)(1-xy)`` for each x in ``xs``."""
    A._check(B)
    A._check(C)
    ctx = A.ctx
    p = ctx.p
    xs = np.asarray(xs, dtype=np.int64) % p
    y = np.arange(p)
    b = B.values()
    bbar_c = char_values(ctx, C.m - B.m)[(1 - y) % p]
    abar = char_values(ctx, -A.m)
    head = b * bbar_c
    lin = (1 - np.outer(xs, y)) % p
    sums = (abar[lin] * head).sum(axis=1)
    out = (B * C)(-1) * sums / p
    return np.where(xs == 0, 0, out)


def _require_mod12(ctx: FpContext):
    if ctx.p % 12 != 1:
        raise BadResidue(f"p={ctx.p} is not 1 mod 12")


def canonical_xi(ctx: FpContext) -> MultCharacter:
    _require_mod12(ctx)
    return ctx.char((ctx.p - 1) // 12)


def hg_theorem1(ctx: FpContext, t: int, xi: MultCharacter | None = None) -> complex:
    """2F1(xi, xi^5; eps | t), the function matching the j = 1728/t family."""
    _require_mod12(ctx)
    if t % ctx.p in (0, 1):
        raise BadArgument("t must avoid 0 and 1")
    xi = canonical_xi(ctx) if xi is None else xi
    return hg_2f1(xi, xi**5, ctx.trivial, t)


def theorem1_values(ctx: FpContext, xi: MultCharacter | None = None) -> np.ndarray:
    """Vector of 2F1(xi, xi^5; eps | t) for t = 2..p-1."""
    _require_mod12(ctx)
    xi = canonical_xi(ctx) if xi is None else xi
    return hg_2f1_many(xi, xi**5, ctx.trivial, np.arange(2, ctx.p))


def psi_theorem1(ctx: FpContext, t: int, xi: MultCharacter | None = None) -> complex:
    """-phi(2) xi^-3(1-t)."""
    xi = canonical_xi(ctx) if xi is None else xi
    return -ctx.quadratic(2) * (xi ** -3)(1 - t)


def hg_closed_form(ctx: FpContext, t: int) -> complex:
    """The Gauss-sum closed form of 2F1(xi, xi^5; eps | t) for the canonical xi."""
    _require_mod12(ctx)
    p = ctx.p
    if t % p in (0, 1):
        raise BadArgument("t must avoid 0 and 1")
    G = gauss_table(ctx)
    s = (p - 1) // 12
    k = np.arange(p - 1)
    u = ctx.inv(1 - t)
    w = 27 * u % p
    t4 = ctx.unit_roots[(k * ctx.dlog[4]) % (p - 1)]
    tw = ctx.unit_roots[(-k * ctx.dlog[w]) % (p - 1)]
    total = np.sum(G[6 * s - 2 * k] * G[3 * k] / G[k] * t4 * tw)
    pre = ctx.char(3 * s)(4 * (1 - t))
    return complex(pre * total / (math.sqrt(p) * (p - 1)))


# --- the other specialisations ----------------------------------------------


def hg_legendre(ctx: FpContext, t: int) -> complex:
    """2F1(phi, phi; eps | t)."""
    phi = ctx.quadratic
    return hg_2f1(phi, phi, ctx.trivial, t)


def hg_twisted(ctx: FpContext, t: int) -> complex:
    """3F2(phi, phi, phi; eps, eps | 1 + 1/t)."""
    phi = ctx.quadratic
    eps = ctx.trivial
    x = (1 + ctx.inv(t)) % ctx.p
    return hg_general(HgSpec((phi, phi, phi), (eps, eps), x))


def hg_beukers_a(ctx: FpContext, t: int, xi: MultCharacter | None = None) -> complex:
    """2F1(xi, xi^7; xi^8 | -4t^3/27)."""
    xi = canonical_xi(ctx) if xi is None else xi
    x = -4 * t**3 * ctx.inv(27) % ctx.p
    return hg_2f1(xi, xi**7, xi**8, x)


def chi_beukers_a(ctx: FpContext, t: int, xi: MultCharacter | None = None) -> complex:
    """-xi^-1(-4) xi^-4(t^3/27)."""
    xi = canonical_xi(ctx) if xi is None else xi
    return -(xi ** -1)(-4) * (xi ** -4)(t**3 * ctx.inv(27))


def hg_beukers_b(ctx: FpContext, t: int, xi: MultCharacter | None = None) -> complex:
    """2F1(xi, xi^5; phi | 27t^2/4)."""
    xi = canonical_xi(ctx) if xi is None else xi
    x = 27 * t * t * ctx.inv(4) % ctx.p
    return hg_2f1(xi, xi**5, ctx.quadratic, x)


def sign_beukers_b(ctx: FpContext, xi: MultCharacter | None = None) -> complex:
    """xi^3(-27); equal to +1 or -1 when p = 1 mod 12."""
    xi = canonical_xi(ctx) if xi is None else xi
    return (xi**3)(-27)
