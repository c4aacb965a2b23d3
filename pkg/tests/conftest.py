import sys
import warnings
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def cubic_family_150():
    from zetares.catalog import enumerate_cubics

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return enumerate_cubics(150)


@pytest.fixture(autouse=True)
def _quiet_index_warnings():
    from zetares.artin import IndexWarning

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IndexWarning)
        yield


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
