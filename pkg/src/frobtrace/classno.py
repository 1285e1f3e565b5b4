"""Class numbers of imaginary quadratic orders by counting reduced forms."""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import BadDiscriminant, OutOfRange


@dataclass(frozen=True)
class OrderClassData:
    d: int
    h: int
    w: int
    h_star: Fraction
    forms: tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class HurwitzSplit:
    s: int
    p: int
    D: int
    ell: int
    m: int

    @property
    def fundamental(self) -> int:
        return self.m if self.m % 4 == 1 else 4 * self.m

    def reconstruct(self) -> int:
        return self.ell**2 * self.fundamental


def _check_disc(d: int):
    if d >= 0 or d % 4 not in (0, 1):
        raise BadDiscriminant(f"{d} is not a negative discriminant")


def reduced_forms(d: int) -> list[tuple[int, int, int]]:
    """Primitive reduced forms (a, b, c) of discriminant d: -a < b <= a <= c, b >= 0 if a == c."""
    _check_disc(d)
    out = []
    for a in range(1, isqrt(-d // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b - d) % 2:
                continue
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            if gcd(gcd(a, abs(b)), c) != 1:
                continue
            out.append((a, b, c))
    return out


_cache: dict[int, OrderClassData] = {}
_lock = threading.Lock()


def class_number(d: int) -> OrderClassData:
    hit = _cache.get(d)
    if hit is not None:
        return hit
    forms = tuple(reduced_forms(d))
    w = 3 if d == -3 else 2 if d == -4 else 1
    data = OrderClassData(d=d, h=len(forms), w=w, h_star=Fraction(len(forms), w), forms=forms)
    with _lock:
        _cache.setdefault(d, data)
    return data


def hurwitz_H(d: int) -> int:
    """Sum of h over all orders containing the order of discriminant d."""
    _check_disc(d)
    total = 0
    f = 1
    while f * f <= -d:
        if d % (f * f) == 0 and (d // (f * f)) % 4 in (0, 1):
            total += class_number(d // (f * f)).h
        f += 1
    return total


def _square_part(n: int) -> tuple[int, int]:
    """n = f^2 * core with core squarefree; returns (f, core)."""
    f, core = 1, 1
    q = 2
    while q * q <= n:
        e = 0
        while n % q == 0:
            n //= q
            e += 1
        f *= q ** (e // 2)
        core *= q ** (e % 2)
        q += 1
    return f, core * n


def split_discriminant(s: int, p: int) -> HurwitzSplit:
    if s <= 0 or s * s >= 4 * p:
        raise OutOfRange(f"need 0 < s < 2 sqrt(p); got s={s}, p={p}")
    D = s * s - 4 * p
    f, core = _square_part(-D)
    m = -core
    if m % 4 == 1:
        ell = f
    else:
        # D = 0 mod 4 and m = 2, 3 mod 4 force f even.
        ell = f // 2
    split = HurwitzSplit(s=s, p=p, D=D, ell=ell, m=m)
    assert split.reconstruct() == D
    return split


def divisors(n: int) -> list[int]:
    return [f for f in range(1, n + 1) if n % f == 0]


def order_sum(split: HurwitzSplit, star: bool = False):
    """sum_{f | ell} h((s^2-4p)/f^2), or the same with h* when ``star``."""
    total = Fraction(0) if star else 0
    for f in divisors(split.ell):
        data = class_number(split.D // (f * f))
        total += data.h_star if star else data.h
    return total
