"""Prime fields, the canonical generator, discrete logs and multiplicative characters.

Every character is written ``T**m`` where ``T`` is the character sending the
smallest primitive root ``g`` to ``exp(2*pi*i/(p-1))``.  Character values are
looked up in precomputed tables, so evaluation is O(1).
"""
from __future__ import annotations

import os
from math import gcd
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ContextMismatch, NonPrime, TooLarge

DEFAULT_PMAX_HARD = 10**6
_PI_LD = np.longdouble("3.14159265358979323846264338327950288")

# Witnesses making Miller-Rabin deterministic below 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def primes_up_to(n: int, residue: tuple[int, int] | None = None) -> list[int]:
    """Primes ``5 <= p <= n``, optionally restricted to ``p % mod == r`` for ``residue=(r, mod)``."""
    out = [p for p in range(5, n + 1) if is_prime(p)]
    if residue is not None:
        r, mod = residue
        out = [p for p in out if p % mod == r]
    return out


def smallest_primitive_root(p: int) -> int:
    qs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise NonPrime(f"{p} has no primitive root")


def pmax_hard() -> int:
    return int(os.environ.get("FROBTRACE_PMAX_HARD", DEFAULT_PMAX_HARD))


@dataclass(frozen=True, eq=False)
class FpContext:
    """Tables for F_p.  ``dlog[0]`` is -1; ``unit_roots[k] = exp(2*pi*i*k/(p-1))``."""

    p: int
    g: int
    dlog: np.ndarray
    powers: np.ndarray
    unit_roots: np.ndarray

    @property
    def order(self) -> int:
        return self.p - 1

    def char(self, m: int) -> MultCharacter:
        return MultCharacter(self, m % (self.p - 1))

    @property
    def trivial(self) -> MultCharacter:
        return self.char(0)

    @property
    def quadratic(self) -> MultCharacter:
        return self.char((self.p - 1) // 2)

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return pow(x, self.p - 2, self.p)

    def legendre(self, x: int) -> int:
        x %= self.p
        if x == 0:
            return 0
        return 1 if self.dlog[x] % 2 == 0 else -1

    def __repr__(self):
        return f"FpContext(p={self.p}, g={self.g})"


def roots_of_unity(n: int) -> np.ndarray:
    """exp(2 pi i k/n) for k < n, computed in extended precision and rounded once."""
    ang = 2 * np.arange(n, dtype=np.longdouble) / n
    ang = np.where(ang > 1, ang - 2, ang) * _PI_LD
    return (np.cos(ang) + 1j * np.sin(ang)).astype(complex)


def make_context(p: int, bound: int | None = None) -> FpContext:
    p = int(p)
    if p < 5 or not is_prime(p):
        raise NonPrime(f"p={p} is not a prime >= 5")
    bound = pmax_hard() if bound is None else bound
    if p > bound:
        raise TooLarge(f"p={p} exceeds the table bound {bound}")
    return _build_context(p)


@lru_cache(maxsize=64)
def _build_context(p: int) -> FpContext:
    g = smallest_primitive_root(p)
    powers = np.empty(p - 1, dtype=np.int64)
    dlog = np.full(p, -1, dtype=np.int64)
    x = 1
    for m in range(p - 1):
        powers[m] = x
        dlog[x] = m
        x = x * g % p
    unit_roots = roots_of_unity(p - 1)
    for arr in (powers, dlog, unit_roots):
        arr.setflags(write=False)
    return FpContext(p=p, g=g, dlog=dlog, powers=powers, unit_roots=unit_roots)


@dataclass(frozen=True)
class MultCharacter:
    """The character ``T**m``; ``chi(0) = 0`` for every ``chi`` including the trivial one."""

    ctx: FpContext
    m: int

    def __post_init__(self):
        object.__setattr__(self, "m", int(self.m) % (self.ctx.p - 1))

    def _check(self, other: MultCharacter):
        if other.ctx is not self.ctx:
            raise ContextMismatch("characters live on different fields")

    def __mul__(self, other: MultCharacter) -> MultCharacter:
        self._check(other)
        return MultCharacter(self.ctx, self.m + other.m)

    def __truediv__(self, other: MultCharacter) -> MultCharacter:
        self._check(other)
        return MultCharacter(self.ctx, self.m - other.m)

    def __pow__(self, n: int) -> MultCharacter:
        return MultCharacter(self.ctx, self.m * n)

    def conj(self) -> MultCharacter:
        return MultCharacter(self.ctx, -self.m)

    def __call__(self, x: int) -> complex:
        return char_eval(self, x)

    @property
    def is_trivial(self) -> bool:
        return self.m == 0

    def order(self) -> int:
        return char_order(self)

    def values(self) -> np.ndarray:
        """Vector of ``chi(x)`` for x = 0..p-1."""
        return char_values(self.ctx, self.m)

    def __repr__(self):
        return f"T^{self.m} (mod {self.ctx.p})"


def char_eval(chi: MultCharacter, x: int) -> complex:
    ctx = chi.ctx
    x %= ctx.p
    if x == 0:
        return 0j
    return complex(ctx.unit_roots[(chi.m * int(ctx.dlog[x])) % (ctx.p - 1)])


def char_index(ctx: FpContext, m: int, x: int) -> int | None:
    """Exponent k with ``T^m(x) = exp(2*pi*i*k/(p-1))``, or None at x = 0."""
    x %= ctx.p
    if x == 0:
        return None
    return (m * int(ctx.dlog[x])) % (ctx.p - 1)


def char_values(ctx: FpContext, m) -> np.ndarray:
    """``T^m(x)`` for all x; ``m`` may be an int or an array (one row per exponent)."""
    m = np.asarray(m, dtype=np.int64)
    idx = (m[..., None] * ctx.dlog[1:]) % (ctx.p - 1)
    vals = np.zeros(m.shape + (ctx.p,), dtype=complex)
    vals[..., 1:] = ctx.unit_roots[idx]
    return vals


def char_order(chi: MultCharacter) -> int:
    n = chi.ctx.p - 1
    return n // gcd(chi.m, n)


def order12_characters(ctx: FpContext) -> list[MultCharacter]:
    """All characters of order 12, canonical one ``T^((p-1)/12)`` first."""
    s = (ctx.p - 1) // 12
    return [ctx.char(s * e) for e in (1, 5, 7, 11)]
