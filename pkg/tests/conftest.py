import sys
from pathlib import Path

import pytest
from hypothesis import settings

from fdalg.families import liu_schulz, module_Mc

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


@pytest.fixture(scope="session")
def A2():
    return liu_schulz(r=2)


@pytest.fixture(scope="session")
def M(A2):
    cache = {}

    def get(c):
        if c not in cache:
            cache[c] = module_Mc(A2, c)
        return cache[c]
    return get


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
    passed = sum(line.startswith("PASS") for line in mod.RESULTS.values())
    terminalreporter.write_line(f"{passed}/{len(mod.RESULTS)} acceptance criteria pass")
