"""Traces of Hecke operators T_k(p) on level-one cusp forms from traces of
Frobenius on the j = 1728/t family, by three routes:

* the closed form ``-1 - lambda(k,p) - sum_t G_k(a(t,p), p)``,
* the recursion in the weight driven by power sums of a(t,p),
* the class-number trace formula.

All arithmetic is exact (Python ints and Fractions).  The hypergeometric
versions of the same sums are floating-point cross-checks only.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from . import classno, ecurves, hgf, quaddecomp
from .errors import BadResidue, BadWeight, InternalError, MissingPrior, NonPrime
from .ffield import is_prime, make_context


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def _check_weight(k: int, minimum: int = 2):
    if k % 2 or k < minimum:
        raise BadWeight(f"weight must be even and >= {minimum}, got {k}")


def _check_p(p: int):
    if p < 5 or not is_prime(p):
        raise NonPrime(f"p={p} is not a prime >= 5")
    if p % 12 != 1:
        raise BadResidue(f"p={p} is not 1 mod 12")


@dataclass(frozen=True)
class TracePolynomial:
    """G_k(s, p) = sum_j coeffs[j] * p^j * s^(k-2j-2)."""

    k: int
    coeffs: tuple[int, ...]

    def __call__(self, s: int, p: int) -> int:
        e = self.k - 2
        return sum(c * p**j * s ** (e - 2 * j) for j, c in enumerate(self.coeffs))


def trace_polynomial(k: int) -> TracePolynomial:
    _check_weight(k)
    return TracePolynomial(k, tuple((-1) ** j * binomial(k - 2 - j, j) for j in range(k // 2)))


def gk_eval(k: int, s: int, p: int) -> int:
    # Python gives 0**0 == 1, which is the s^0 = 1 convention.
    return trace_polynomial(k)(s, p)


def hm_poly(m: int) -> list[int]:
    """Coefficients of H_m(x) = sum_i C(m+i, m-i) x^i."""
    return [binomial(m + i, m - i) for i in range(m + 1)]


@dataclass(frozen=True)
class Decomps:
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def for_prime(cls, p: int) -> Decomps:
        g = quaddecomp.gaussian_decomp(p)
        e = quaddecomp.eisenstein_decomp(p)
        return cls(g.a, g.b, e.c, e.d)

    def gauss_terms(self) -> tuple[int, int]:
        return 2 * self.a, 2 * self.b

    def eisenstein_terms(self) -> tuple[int, int, int]:
        c, d = self.c, self.d
        return c + d, 2 * c - d, c - 2 * d


def lambda_exact(k: int, p: int, decomps: Decomps | None = None) -> Fraction:
    decomps = Decomps.for_prime(p) if decomps is None else decomps
    G = trace_polynomial(k)
    half = sum(G(s, p) for s in decomps.gauss_terms())
    third = sum(G(s, p) for s in decomps.eisenstein_terms())
    return Fraction(half, 2) + Fraction(third, 3)


def lambda_eval(k: int, p: int, decomps: Decomps | None = None) -> int:
    _check_weight(k, 4)
    val = lambda_exact(k, p, decomps)
    if val.denominator != 1:
        raise InternalError(f"lambda({k},{p}) = {val} is not an integer")
    return val.numerator


@dataclass(frozen=True)
class RecursionCoeffs:
    m: int
    p: int
    b: tuple[int, ...]


def recursion_coeffs(m: int, p: int) -> RecursionCoeffs:
    b = tuple(p ** (m - i) * (binomial(2 * m, m - i) - binomial(2 * m, m - i - 1)) for i in range(m + 1))
    return RecursionCoeffs(m=m, p=p, b=b)


def power_sum(traces, n: int) -> int:
    return sum(a**n for a in traces)


def trace_thm2(k: int, p: int, traces: list[int] | None = None) -> int:
    _check_weight(k, 4)
    _check_p(p)
    traces = ecurves.t1728_traces(p) if traces is None else traces
    G = trace_polynomial(k)
    return -1 - lambda_eval(k, p) - sum(G(a, p) for a in traces)


def trace_recursion(k: int, p: int, prior_traces: dict[int, int], traces: list[int] | None = None) -> int:
    """Tr_k from Tr_4 .. Tr_{k-2} and the power sum of a(t,p)^(k-2)."""
    _check_weight(k, 4)
    _check_p(p)
    m = k // 2 - 1
    missing = [2 * i + 2 for i in range(1, m) if 2 * i + 2 not in prior_traces]
    if missing:
        raise MissingPrior(f"need traces for weights {missing}")
    traces = ecurves.t1728_traces(p) if traces is None else traces
    b = recursion_coeffs(m, p).b
    total = -1 - lambda_eval(k, p) + b[0] * (p - 2) - power_sum(traces, 2 * m)
    for i in range(1, m):
        w = 2 * i + 2
        total -= b[i] * (1 + lambda_eval(w, p)) + b[i] * prior_traces[w]
    return total


def traces_by_recursion(kmax: int, p: int) -> dict[int, int]:
    """Tr_4, Tr_6, ..., Tr_kmax computed in order, each from the previous ones."""
    traces = ecurves.t1728_traces(p)
    out: dict[int, int] = {}
    for k in range(4, kmax + 1, 2):
        out[k] = trace_recursion(k, p, out, traces)
    return out


def hijikata_class_sum(p: int) -> list[tuple[int, Fraction]]:
    """(s, sum_{f | ell} h*((s^2-4p)/f^2)) for 0 < s < 2 sqrt(p)."""
    out = []
    s = 1
    while s * s < 4 * p:
        out.append((s, classno.order_sum(classno.split_discriminant(s, p), star=True)))
        s += 1
    return out


def trace_hijikata_exact(k: int, p: int, coefficient: str = "proof") -> Fraction:
    """Class-number trace formula.

    ``coefficient="proof"`` weights the h*(-4p) term by 1/2; ``"statement"``
    uses weight 1.  Only the first matches the q-expansion traces.
    """
    _check_weight(k, 2)
    _check_p(p)
    weight = {"proof": Fraction(1, 2), "statement": Fraction(1)}[coefficient]
    G = trace_polynomial(k)
    hs = classno.class_number(-4 * p).h_star
    total = -1 - weight * hs * (-p) ** (k // 2 - 1)
    total -= sum(G(s, p) * hsum for s, hsum in hijikata_class_sum(p))
    if k == 2:
        total += p + 1
    return total


def trace_hijikata(k: int, p: int, coefficient: str = "proof") -> int:
    val = trace_hijikata_exact(k, p, coefficient)
    if val.denominator != 1:
        raise InternalError(f"class-number trace {val} is not an integer")
    return val.numerator


def weight2_balance(p: int) -> Fraction:
    """p - h*(-4p)/2 - sum_s sum_f h*, which must vanish."""
    _check_p(p)
    return p - classno.class_number(-4 * p).h_star / 2 - sum(h for _, h in hijikata_class_sum(p))


# --- tau(p) ------------------------------------------------------------------


def _eis_sum(d: Decomps, n: int) -> int:
    return sum(s**n for s in d.eisenstein_terms())


def _gauss_pow_sum(d: Decomps, n: int) -> int:
    return d.a**n + d.b**n


def tau_cor1(p: int, traces: list[int] | None = None) -> int:
    _check_p(p)
    traces = ecurves.t1728_traces(p) if traces is None else traces
    d = Decomps.for_prime(p)
    x = d.a**2 * d.b**2
    y = d.c * d.d
    G12 = trace_polynomial(12)
    return (-1 - 8 * p**5 + 80 * p**3 * x - 256 * p * x * x + 27 * y * y * p**3 - 27 * y**3 * p * p
            - sum(G12(a, p) for a in traces))


def tau_cor2_exact(p: int, tenth_power_sum) -> Fraction:
    d = Decomps.for_prime(p)
    return (42 * p**6 - 90 * p**4 - 75 * p**3 - 35 * p * p - 9 * p - 1 - 2**9 * _gauss_pow_sum(d, 10)
            - Fraction(_eis_sum(d, 10), 3) - tenth_power_sum)


def tau_cor2(p: int, traces: list[int] | None = None) -> int:
    _check_p(p)
    traces = ecurves.t1728_traces(p) if traces is None else traces
    val = tau_cor2_exact(p, power_sum(traces, 10))
    if val.denominator != 1:
        raise InternalError(f"tau formula gave non-integer {val}")
    return val.numerator


def tau_cor3_exact(p: int, twelfth_power_sum) -> Fraction:
    d = Decomps.for_prime(p)
    return (12 * p**6 - 27 * p**4 - 25 * p**3 - 14 * p * p - Fraction(54, 11) * p - 1 - Fraction(1, 11 * p)
            - Fraction(2**11, 11 * p) * _gauss_pow_sum(d, 12) - Fraction(_eis_sum(d, 12), 33 * p)
            - Fraction(twelfth_power_sum, 11 * p))


def tau_cor3(p: int, traces: list[int] | None = None) -> int:
    _check_p(p)
    traces = ecurves.t1728_traces(p) if traces is None else traces
    val = tau_cor3_exact(p, power_sum(traces, 12))
    if val.denominator != 1:
        raise InternalError(f"denominators 11p did not cancel: {val}")
    return val.numerator


def power_sum_identities(p: int, tau_p: int | None = None) -> dict[str, Fraction]:
    """Residuals of the closed forms for sum_t a(t,p)^n, n = 2..12; all must be 0."""
    from .mforms import tau as tau_oracle

    _check_p(p)
    traces = ecurves.t1728_traces(p)
    d = Decomps.for_prime(p)
    S = {n: power_sum(traces, n) for n in (2, 4, 6, 8, 10, 12)}
    A = lambda n: _gauss_pow_sum(d, n)  # noqa: E731
    E = lambda n: Fraction(_eis_sum(d, n), 3)  # noqa: E731
    T = tau_oracle(p) if tau_p is None else tau_p
    return {
        "n2": Fraction(p * p - 4 * p - 1 - S[2]),
        "n4": Fraction(2 * p**3 - 6 * p * p - 3 * p - 8 * A(4) - 1 - S[4]),
        "n6": 5 * p**4 - 9 * p * p - 5 * p - 1 - 2**5 * A(6) - E(6) - S[6],
        "n8": 14 * p**5 - 28 * p**3 - 20 * p * p - 7 * p - 1 - 2**7 * A(8) - E(8) - S[8],
        "n10": 42 * p**6 - 90 * p**4 - 75 * p**3 - 35 * p * p - 9 * p - 1 - 2**9 * A(10) - E(10) - S[10] - T,
        "n12": (132 * p**7 - 297 * p**5 - 275 * p**4 - 154 * p**3 - 54 * p * p - 1 - 11 * p - 11 * p * T
                - 2**11 * A(12) - E(12) - S[12]),
    }


# --- hypergeometric cross-checks ---------------------------------------------


def hg_power_sum(p: int, n: int, xi=None) -> complex:
    """sum_t p^n phi^(n/2)(1-t) 2F1(xi, xi^5; eps | t)^n, which equals sum_t a(t,p)^n for even n."""
    ctx = make_context(p)
    F = hgf.theorem1_values(ctx, xi)
    t = np.arange(2, p)
    phi = np.array([ctx.legendre(1 - int(v)) for v in t], dtype=float)
    return complex(np.sum(p**n * phi ** (n // 2) * F**n))


def hg_traces(p: int, xi=None) -> np.ndarray:
    """a(t,p) recovered as psi(t)^-1 p 2F1(...), complex-valued."""
    ctx = make_context(p)
    F = hgf.theorem1_values(ctx, xi)
    psi = np.array([hgf.psi_theorem1(ctx, t, xi) for t in range(2, p)])
    return p * F / psi


def trace_thm2_hypergeometric(k: int, p: int, xi=None) -> complex:
    """The closed-form trace with a(t,p) replaced by its hypergeometric expression."""
    a = hg_traces(p, xi)
    G = trace_polynomial(k)
    e = k - 2
    total = sum(c * p**j * np.sum(a ** (e - 2 * j)) for j, c in enumerate(G.coeffs))
    return -1 - lambda_eval(k, p) - complex(total)


def trace_recursion_hypergeometric(k: int, p: int, prior_traces: dict[int, int], xi=None) -> complex:
    """The weight recursion with the power sum taken from the hypergeometric function."""
    _check_weight(k, 4)
    m = k // 2 - 1
    missing = [2 * i + 2 for i in range(1, m) if 2 * i + 2 not in prior_traces]
    if missing:
        raise MissingPrior(f"need traces for weights {missing}")
    b = recursion_coeffs(m, p).b
    total = -1 - lambda_eval(k, p) + b[0] * (p - 2) - hg_power_sum(p, 2 * m, xi)
    for i in range(1, m):
        w = 2 * i + 2
        total -= b[i] * (1 + lambda_eval(w, p)) + b[i] * prior_traces[w]
    return complex(total)
