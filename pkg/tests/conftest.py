import pytest

from scattered_lab.selftest import tower as _tower


@pytest.fixture(scope="session")
def tower():
    """Shared, memoized tower factory: tower(p, e, n)."""
    return _tower
