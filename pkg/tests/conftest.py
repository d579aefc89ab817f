import pytest

from grack.constructions import conjugation_mgr, heap_rack, multiple_group_rack
from grack.groups import cyclic_group, symmetric_group


@pytest.fixture(scope="session")
def heap_z2():
    return heap_rack(cyclic_group(2))


@pytest.fixture(scope="session")
def heap_z3():
    return heap_rack(cyclic_group(3))


@pytest.fixture(scope="session")
def mgr_s3():
    return multiple_group_rack(conjugation_mgr([symmetric_group(3)]))


@pytest.fixture(scope="session")
def algebras(heap_z2, heap_z3, mgr_s3):
    return {"heap:Z2": heap_z2, "heap:Z3": heap_z3, "mgr:S3": mgr_s3}


# acceptance criteria report one line each; the lines are printed in the
# terminal summary so they show up even when output is captured
ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    lines = request.config.stash.setdefault(ACCEPTANCE, [])

    def report(number, ok, detail=""):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}" + (f"  ({detail})" if detail else "")
        print(line)
        lines.append(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
