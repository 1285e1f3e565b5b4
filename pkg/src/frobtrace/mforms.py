"""Exact q-expansions of level-one forms, used as an independent source of
Hecke traces.  For every weight k <= 22 the cusp space has dimension at most
one, so the trace of T(p) is the p-th coefficient of the normalised form.
"""
from __future__ import annotations

from functools import lru_cache

from .errors import BadWeight, UnsupportedWeight


class QSeries:
    """Power series in q truncated after q^N, with exact integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = [int(c) for c in coeffs]

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def one(cls, N: int) -> QSeries:
        return cls([1] + [0] * N)

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def _common(self, other: QSeries) -> int:
        return min(self.N, other.N)

    def __add__(self, other: QSeries) -> QSeries:
        n = self._common(other)
        return QSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])])

    def __sub__(self, other: QSeries) -> QSeries:
        n = self._common(other)
        return QSeries([a - b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])])

    def __neg__(self) -> QSeries:
        return QSeries([-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return QSeries([other * a for a in self.coeffs])
        n = self._common(other)
        a, b = self.coeffs, other.coeffs
        out = [0] * (n + 1)
        for i in range(n + 1):
            ai = a[i]
            if ai:
                for j in range(n + 1 - i):
                    out[i + j] += ai * b[j]
        return QSeries(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> QSeries:
        result = QSeries.one(self.N)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exact_div(self, c: int) -> QSeries:
        if any(a % c for a in self.coeffs):
            raise ArithmeticError(f"series is not divisible by {c}")
        return QSeries([a // c for a in self.coeffs])

    def truncate(self, N: int) -> QSeries:
        return QSeries(self.coeffs[: N + 1])

    def __eq__(self, other):
        return isinstance(other, QSeries) and self.coeffs == other.coeffs

    def __repr__(self):
        head = " + ".join(f"{c}q^{i}" for i, c in enumerate(self.coeffs[:6]) if c)
        return f"QSeries({head} + O(q^{self.N + 1}))"


def sigma(k: int, n: int) -> int:
    if n < 1:
        raise ValueError("sigma needs n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**k
            e = n // d
            if e != d:
                total += e**k
        d += 1
    return total


@lru_cache(maxsize=16)
def eisenstein(k: int, N: int) -> QSeries:
    """E_4 = 1 + 240 sum sigma_3 q^n and E_6 = 1 - 504 sum sigma_5 q^n."""
    const = {4: 240, 6: -504}
    if k not in const:
        raise BadWeight(f"only E_4 and E_6 are provided, got weight {k}")
    return QSeries([1] + [const[k] * sigma(k - 1, n) for n in range(1, N + 1)])


@lru_cache(maxsize=16)
def delta_series(N: int) -> QSeries:
    """q * prod_{n>=1} (1 - q^n)^24 to order q^N, expanded factor by factor."""
    if N < 1:
        raise ValueError("need N >= 1")
    prod = [1] + [0] * N
    for n in range(1, N + 1):
        for i in range(N, n - 1, -1):
            prod[i] -= prod[i - n]
    eta24 = QSeries(prod) ** 24
    out = QSeries([0] + eta24.coeffs[:N])
    assert out[1] == 1 and (N < 2 or out[2] == -24)
    return out


def delta_from_eisenstein(N: int) -> QSeries:
    E4 = eisenstein(4, N)
    E6 = eisenstein(6, N)
    return (E4 ** 3 - E6 * E6).exact_div(1728)


CUSP_WEIGHTS = (12, 16, 18, 20, 22)
EMPTY_WEIGHTS = (2, 4, 6, 8, 10, 14)


@lru_cache(maxsize=32)
def cusp_form(k: int, N: int) -> QSeries:
    """Normalised generator of S_k for k in 12, 16, 18, 20, 22."""
    D = delta_series(N)
    E4 = eisenstein(4, N)
    E6 = eisenstein(6, N)
    gens = {12: D, 16: D * E4, 18: D * E6, 20: D * E4 * E4, 22: D * E4 * E6}
    if k not in gens:
        raise UnsupportedWeight(f"no single-form generator for weight {k}")
    return gens[k]


def _series_order(p: int) -> int:
    n = 64
    while n < p:
        n *= 2
    return n


def trace_oracle(k: int, p: int) -> int:
    if k % 2 or k < 2:
        raise BadWeight(f"bad weight {k}")
    if k >= 24:
        raise UnsupportedWeight("dim S_k >= 2 from weight 24 on")
    if k in EMPTY_WEIGHTS:
        return 0
    return cusp_form(k, _series_order(p))[p]


def tau(n: int) -> int:
    return delta_series(_series_order(n))[n]
