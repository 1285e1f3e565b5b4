import pytest

from frobtrace import mforms
from frobtrace.errors import BadWeight, UnsupportedWeight

TAU = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944, -577738]


def test_delta():
    assert mforms.delta_series(13).coeffs == [0] + TAU
    assert mforms.tau(13) == -577738


def test_delta_from_eisenstein():
    assert mforms.delta_from_eisenstein(80) == mforms.delta_series(80)


def test_eisenstein():
    assert mforms.eisenstein(4, 3).coeffs == [1, 240, 2160, 6720]
    assert mforms.eisenstein(6, 3).coeffs == [1, -504, -16632, -122976]
    with pytest.raises(BadWeight):
        mforms.eisenstein(8, 3)


def test_sigma():
    assert mforms.sigma(3, 6) == 1 + 8 + 27 + 216
    assert mforms.sigma(0, 12) == 6
    with pytest.raises(ValueError):
        mforms.sigma(1, 0)


def test_tau_known_values():
    known = {37: -182213314, 61: 6956478662, 73: 1463791322, 97: 75013568546}
    for p, v in known.items():
        assert mforms.tau(p) == v


def test_ramanujan_congruence():
    for n in range(1, 200):
        assert (mforms.tau(n) - mforms.sigma(11, n)) % 691 == 0


def test_tau_multiplicative():
    assert mforms.tau(6) == mforms.tau(2) * mforms.tau(3)
    assert mforms.tau(65) == mforms.tau(5) * mforms.tau(13)
    assert mforms.tau(4) == mforms.tau(2) ** 2 - 2**11


def test_hecke_bound():
    for p in (13, 37, 61, 97, 193):
        assert abs(mforms.tau(p)) < 2 * p**5.5


def test_oracle():
    assert mforms.trace_oracle(10, 13) == 0
    assert mforms.trace_oracle(12, 13) == -577738
    D = mforms.delta_series(64)
    E4 = mforms.eisenstein(4, 64)
    assert mforms.trace_oracle(16, 13) == (D * E4)[13]
    for k in (12, 16, 18, 20, 22):
        f = mforms.cusp_form(k, 40)
        assert f[0] == 0 and f[1] == 1
        # normalised eigenform: a(mn) = a(m)a(n) for coprime m, n
        assert f[6] == f[2] * f[3] and f[10] == f[2] * f[5] and f[15] == f[3] * f[5]
    with pytest.raises(BadWeight):
        mforms.trace_oracle(13, 13)
    with pytest.raises(UnsupportedWeight):
        mforms.trace_oracle(24, 13)
    with pytest.raises(UnsupportedWeight):
        mforms.cusp_form(14, 10)


def test_series_arithmetic():
    a = mforms.QSeries([1, 2, 3])
    b = mforms.QSeries([0, 1, 0, 5])
    assert (a + b).coeffs == [1, 3, 3]
    assert (a - b).coeffs == [1, 1, 3]
    assert (a * b).coeffs == [0, 1, 2]
    assert (a**2).coeffs == [1, 4, 10]
    assert (3 * a).coeffs == [3, 6, 9]
    assert (-a).coeffs == [-1, -2, -3]
    assert mforms.QSeries([2, 4]).exact_div(2).coeffs == [1, 2]
    with pytest.raises(ArithmeticError):
        mforms.QSeries([1, 2]).exact_div(2)
