import pytest

from tmat import families, registry


@pytest.fixture(autouse=True)
def clean_registries():
    """Isolate family and group registry mutations per test."""
    fam_snapshot = families._snapshot()
    group_snapshot = registry._snapshot()
    yield
    families._restore(fam_snapshot)
    registry._restore(group_snapshot)
