"""Gauss sums, the additive character theta, binomial coefficients of characters,
and residual checks for the classical Gauss-sum identities (orthogonality,
inversion, Hasse-Davenport product formulas).
"""
from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .ffield import FpContext, MultCharacter, char_values, roots_of_unity

_CHUNK = 256


def identity_tolerance(p: int, c: float = 100.0, factors: int = 3) -> float:
    """Residual bound for an identity between products of ``factors`` Gauss sums (magnitude p^(factors/2))."""
    return p ** (factors / 2) * sys.float_info.epsilon * c


@dataclass(frozen=True, eq=False)
class GaussTable:
    ctx: FpContext
    G: np.ndarray
    p_roots: np.ndarray

    def __getitem__(self, m):
        return self.G[np.asarray(m) % (self.ctx.p - 1)]


@lru_cache(maxsize=32)
def gauss_table(ctx: FpContext) -> GaussTable:
    p = ctx.p
    p_roots = roots_of_unity(p)
    # accumulate in long double so products of several Gauss sums stay near rounding error
    roots_ld = p_roots.astype(np.clongdouble)
    G = np.empty(p - 1, dtype=complex)
    for lo in range(0, p - 1, _CHUNK):
        ms = np.arange(lo, min(lo + _CHUNK, p - 1))
        G[lo:lo + len(ms)] = (char_values(ctx, ms).astype(np.clongdouble) * roots_ld).sum(axis=1)
    G.setflags(write=False)
    p_roots.setflags(write=False)
    return GaussTable(ctx=ctx, G=G, p_roots=p_roots)


def gauss_sum(table: GaussTable, m: int) -> complex:
    return complex(table.G[m % (table.ctx.p - 1)])


def theta(ctx: FpContext, alpha: int) -> complex:
    return cmath.exp(2j * math.pi * (alpha % ctx.p) / ctx.p)


def binom(A: MultCharacter, B: MultCharacter) -> complex:
    """Greene's binomial coefficient ``B(-1)/p * sum_x A(x) conj(B)(1-x)``, summed directly."""
    A._check(B)
    ctx = A.ctx
    p = ctx.p
    x = np.arange(p)
    a = A.values()
    bbar = B.conj().values()
    return complex(B(-1) * np.sum(a * bbar[(1 - x) % p]) / p)


@lru_cache(maxsize=32)
def _binom_diagonal(ctx: FpContext) -> np.ndarray:
    """``binom(T^m, T^m)`` for all m by direct summation (the Gauss-sum formula does not apply)."""
    p = ctx.p
    x = np.arange(p)
    out = np.empty(p - 1, dtype=complex)
    minus_one = ctx.unit_roots[(np.arange(p - 1) * ctx.dlog[p - 1]) % (p - 1)]
    for lo in range(0, p - 1, _CHUNK):
        ms = np.arange(lo, min(lo + _CHUNK, p - 1))
        v = char_values(ctx, ms)
        vbar = np.conj(v)[:, (1 - x) % p]
        out[lo:lo + len(ms)] = minus_one[ms] * np.sum(v * vbar, axis=1) / p
    return out


def binom_gauss(table: GaussTable, m, n) -> np.ndarray:
    """Vectorised ``binom(T^m, T^n)`` via Gauss sums, falling back to the direct sum when m = n."""
    ctx = table.ctx
    q = ctx.p - 1
    m = np.asarray(m, dtype=np.int64) % q
    n = np.asarray(n, dtype=np.int64) % q
    m, n = np.broadcast_arrays(m, n)
    # T^n(-1) = (-1)^n since dlog(-1) = (p-1)/2.
    sign = np.where(n % 2 == 0, 1.0, -1.0)
    degenerate = (m - n) % q == 0
    safe = np.where(degenerate, 1, m - n)
    val = table.G[m] * table.G[(-n) % q] * sign / (table.G[safe % q] * ctx.p)
    if degenerate.any():
        val = np.where(degenerate, _binom_diagonal(ctx)[m], val)
    return val


# --- identity residuals ------------------------------------------------------
# Each returns the largest |lhs - rhs| over every index the identity quantifies.


def orthogonality_residuals(ctx: FpContext) -> tuple[float, float]:
    """(sum over x of T^n(x), sum over n of T^n(x)) against p-1 / 0."""
    p = ctx.p
    V = char_values(ctx, np.arange(p - 1))
    over_x = V.sum(axis=1)
    want_x = np.zeros(p - 1)
    want_x[0] = p - 1
    over_n = V.sum(axis=0)
    want_n = np.zeros(p)
    want_n[1] = p - 1
    return float(np.max(np.abs(over_x - want_x))), float(np.max(np.abs(over_n - want_n)))


def special_gauss_residual(table: GaussTable) -> float:
    p = table.ctx.p
    r = abs(table.G[0] + 1)
    half = table.G[(p - 1) // 2]
    want = math.sqrt(p) if p % 4 == 1 else 1j * math.sqrt(p)
    return float(max(r, abs(half - want)))


def theta_inversion_residual(table: GaussTable) -> float:
    """theta(a) = 1/(p-1) * sum_m G_{-m} T^m(a) for every nonzero a."""
    ctx = table.ctx
    p = ctx.p
    ms = np.arange(p - 1)
    V = char_values(ctx, ms)[:, 1:]
    rhs = (table[-ms] @ V) / (p - 1)
    lhs = table.p_roots[1:]
    return float(np.max(np.abs(lhs - rhs)))


def gauss_norm_residual(table: GaussTable) -> float:
    """G_k G_{-k} = p T^k(-1) for nontrivial T^k."""
    p = table.ctx.p
    k = np.arange(1, p - 1)
    rhs = p * np.where(k % 2 == 0, 1.0, -1.0)
    return float(np.max(np.abs(table[k] * table[-k] - rhs)))


def binom_gauss_residual(table: GaussTable, pairs=None) -> float:
    """Direct binomial sums against the Gauss-sum formula on (m, n) with m != n."""
    ctx = table.ctx
    q = ctx.p - 1
    if pairs is None:
        pairs = [(m, n) for m in range(0, q, max(1, q // 12)) for n in range(0, q, max(1, q // 12)) if m != n]
    worst = 0.0
    for m, n in pairs:
        direct = binom(ctx.char(m), ctx.char(n))
        worst = max(worst, abs(direct - complex(binom_gauss(table, m, n))))
    return worst


def hasse_davenport_residual(table: GaussTable, m: int) -> float:
    """prod_{chi^m=1} G(chi psi) = -G(psi^m) psi(m^-m) prod_{chi^m=1} G(chi), over every psi."""
    ctx = table.ctx
    p = ctx.p
    q = p - 1
    if q % m:
        raise ValueError(f"p={p} is not 1 mod {m}")
    step = q // m
    k = np.arange(q)
    lhs = np.ones(q, dtype=complex)
    base = 1 + 0j
    for j in range(m):
        lhs *= table[k + j * step]
        base *= table.G[j * step]
    inv_mm = pow(pow(m, m, p), p - 2, p)
    psi_at = ctx.unit_roots[(k * ctx.dlog[inv_mm]) % q]
    rhs = -table[m * k] * psi_at * base
    return float(np.max(np.abs(lhs - rhs)))


def hd_quadratic_residual(table: GaussTable) -> float:
    """G_{-k} G_{-(p-1)/2-k} = sqrt(p) G_{-2k} T^k(4), p = 1 mod 4."""
    ctx = table.ctx
    p = ctx.p
    q = p - 1
    k = np.arange(q)
    lhs = table[-k] * table[-q // 2 - k]
    rhs = math.sqrt(p) * table[-2 * k] * ctx.unit_roots[(k * ctx.dlog[4]) % q]
    return float(np.max(np.abs(lhs - rhs)))


def hd_cubic_residual(table: GaussTable) -> float:
    """G_k G_{k+(p-1)/3} G_{k+2(p-1)/3} = p T^{-k}(27) T^{(p-1)/3}(-1) G_{3k}, p = 1 mod 3."""
    ctx = table.ctx
    p = ctx.p
    q = p - 1
    r = q // 3
    k = np.arange(q)
    lhs = table[k] * table[k + r] * table[k + 2 * r]
    t27 = ctx.unit_roots[(-k * ctx.dlog[27 % p]) % q]
    tm1 = ctx.unit_roots[(r * ctx.dlog[p - 1]) % q]
    rhs = p * t27 * tm1 * table[3 * k]
    return float(np.max(np.abs(lhs - rhs)))
