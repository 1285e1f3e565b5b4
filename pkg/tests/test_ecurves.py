import math
from collections import Counter

import pytest

from frobtrace import ecurves, quaddecomp
from frobtrace.ecurves import CurveFamily
from frobtrace.errors import BadParameter, NonPrime, Singular, TooLarge
from frobtrace.ffield import make_context


def test_t1728_example():
    # 27/(1-2) = -27 = -1 mod 13, so E_2 is y^2 = 4x^3 + x + 1 reduced
    f = CurveFamily.T1728.coefficients(13, 2)
    assert f == (1, 1, 0, 4)
    c = ecurves.count_curve(13, f)
    assert c.count == ecurves.count_naive(13, f)
    assert c.trace == 13 + 1 - c.count


def test_naive_agrees_everywhere_at_13():
    for fam in CurveFamily:
        for t in fam.valid_t(13):
            f = fam.coefficients(13, t)
            assert ecurves.count_curve(13, f).count == ecurves.count_naive(13, f)


def test_singular_and_excluded():
    with pytest.raises(Singular):
        ecurves.count_curve(13, (0, 1, 11, 1))  # x(x-1)^2
    with pytest.raises(BadParameter):
        CurveFamily.LEGENDRE.coefficients(13, 1)
    with pytest.raises(BadParameter):
        ecurves.trace_family(CurveFamily.T1728, 13, 0)
    with pytest.raises(NonPrime):
        ecurves.count_curve(15, (1, 1, 0, 1))
    with pytest.raises(Singular):
        ecurves.j_invariant(13, 0, 0)


@pytest.mark.parametrize("p", [5, 7, 13, 37, 61, 97])
def test_hasse_bound(p):
    for fam in CurveFamily:
        for a in ecurves.family_traces(fam, p).values():
            assert a * a <= 4 * p


def test_excluded_sets_are_exactly_the_singular_parameters():
    p = 37
    for fam in CurveFamily:
        for t in range(p):
            try:
                f = fam.coefficients(p, t)
            except BadParameter:
                continue
            assert ecurves.cubic_discriminant(f, p) != 0


def test_jinvariant_of_family(p):
    j = sorted(ecurves.j_invariant_weierstrass(p, -c % p, -c % p)
               for c, *_ in (CurveFamily.T1728.coefficients(p, t) for t in range(2, p)))
    assert j == sorted(set(range(p)) - {0, 1728 % p})
    for t in range(2, p):
        c = CurveFamily.T1728.coefficients(p, t)[0]
        assert ecurves.j_invariant_weierstrass(p, -c % p, -c % p) == 1728 * pow(t, p - 2, p) % p


def test_trace_closed_form(p):
    ctx = make_context(p)
    a = ecurves.t1728_traces(p)
    for t in range(2, p):
        assert abs(ecurves.trace_closed_form(ctx, t) - a[t - 2]) < 1e-6


@pytest.mark.parametrize("p", [13, 37])
def test_class_counts(p):
    byj = ecurves.classes_by_j(p)
    j1728 = 1728 % p
    assert set(byj) == set(range(p))
    for j, cls in byj.items():
        assert len(cls) == (6 if j == 0 else 4 if j == j1728 else 2)
    classes = ecurves.enumerate_classes(p)
    assert sum(c.size for c in classes) == sum(
        1 for A in range(p) for B in range(p) if (4 * A**3 + 27 * B * B) % p)


@pytest.mark.parametrize("p", [13, 37])
def test_twists_negate(p):
    for j, cls in ecurves.classes_by_j(p).items():
        if j not in (0, 1728 % p):
            assert sorted(c.trace for c in cls) == sorted([cls[0].trace, -cls[0].trace])


@pytest.mark.parametrize("p", [13, 37])
def test_special_j_power_sums(p):
    g = quaddecomp.gaussian_decomp(p)
    e = quaddecomp.eisenstein_decomp(p)
    byj = ecurves.classes_by_j(p)
    for n in (2, 4):
        assert sum(c.trace**n for c in byj[1728 % p]) == 2 ** (n + 1) * (g.a**n + g.b**n)
        assert sum(c.trace**n for c in byj[0]) == 2 * ((e.c + e.d) ** n + (2 * e.c - e.d) ** n + (e.c - 2 * e.d) ** n)


def test_class_bound():
    with pytest.raises(TooLarge):
        ecurves.enumerate_classes(211)


def test_class_sizes_match_automorphisms():
    p = 37
    for c in ecurves.enumerate_classes(p):
        aut = 6 if c.j == 0 else 4 if c.j == 1728 % p else 2
        assert c.size == (p - 1) // aut


def test_count_I_against_trace_histogram():
    p = 37
    hist = Counter(abs(c.trace) for c in ecurves.enumerate_classes(p))
    for s in range(1, 2 * math.isqrt(p) + 1):
        assert ecurves.count_I(p, s) == hist.get(s, 0)
