import pytest

from ffhyper import make_field
from ffhyper.charsums import SumTables

_CACHE: dict[int, SumTables] = {}


@pytest.fixture(scope="session")
def tables_for():
    """Shared per-prime SumTables so table construction is paid once per run."""

    def get(q: int) -> SumTables:
        if q not in _CACHE:
            _CACHE[q] = SumTables(make_field(q))
        return _CACHE[q]

    return get
