import pytest

from eigenvanish import CyclotomicSetup, build_field

_acceptance_lines: dict[int, str] = {}


def record_acceptance(num: int, ok: bool, detail: str) -> None:
    """Collect one pass/fail line per acceptance criterion; printed in the
    terminal summary so the verdicts survive output capturing."""
    line = f"ACCEPTANCE {num:2d}: {'PASS' if ok else 'FAIL'} - {detail}"
    _acceptance_lines[num] = line
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for num in sorted(_acceptance_lines):
            terminalreporter.write_line(_acceptance_lines[num])


@pytest.fixture(scope="session")
def f8():
    """F_8 for (p, q) = (7, 2): the fully hand-checkable case."""
    setup = CyclotomicSetup.create(7, 2)
    return setup, build_field(setup, cap=1 << 20)


@pytest.fixture(scope="session")
def f27():
    """F_27 for (p, q) = (13, 3): e = 4, two even eigenspaces."""
    setup = CyclotomicSetup.create(13, 3)
    return setup, build_field(setup, cap=1 << 20)


@pytest.fixture(scope="session")
def f243():
    """F_243 for (p, q) = (11, 3): order-5 witness for p = 11."""
    setup = CyclotomicSetup.create(11, 3)
    return setup, build_field(setup, cap=1 << 20)
