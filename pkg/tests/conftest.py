import pytest

SMALL_PRIMES = (13, 37, 61)


@pytest.fixture(params=SMALL_PRIMES)
def p(request):
    return request.param
