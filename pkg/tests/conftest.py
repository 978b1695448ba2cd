import itertools

import hypothesis
import pytest

from exactness.finset import EquivRel, FiniteSet

hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile("ci")


def closure_pairs(n, pairs):
    """Reflexive-symmetric-transitive closure by iteration to a fixed point."""
    rel = {(x, x) for x in range(n)} | set(pairs) | {(b, a) for a, b in pairs}
    while True:
        extra = {(a, d) for (a, b), (c, d) in itertools.product(rel, repeat=2) if b == c} - rel
        if not extra:
            return rel
        rel |= extra


def as_pairs(S: EquivRel) -> set:
    return set(S.pairs())


@pytest.fixture
def abc():
    return FiniteSet(("a", "b", "c"))


@pytest.fixture
def ab():
    return FiniteSet(("a", "b"))


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
