import pytest


@pytest.fixture(autouse=True, scope="session")
def _isolated_cache(tmp_path_factory):
    mp = pytest.MonkeyPatch()
    mp.setenv("PALEYLAB_CACHE", str(tmp_path_factory.mktemp("clique-cache")))
    yield
    mp.undo()
