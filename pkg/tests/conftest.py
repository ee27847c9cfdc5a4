import time

import pytest

_LINES = pytest.StashKey[list]()


class Criterion:
    """Times one acceptance criterion and records a one-line verdict."""

    def __init__(self, lines, number, title, limit_s):
        self.lines, self.number, self.title, self.limit_s = lines, number, title, limit_s
        self.start = time.perf_counter()
        self.done = False

    def finish(self, ok: bool, detail: str) -> bool:
        elapsed = time.perf_counter() - self.start
        ok = bool(ok) and elapsed < self.limit_s
        line = (f"{'PASS' if ok else 'FAIL'}  {self.number:>2}  {self.title:<34} "
                f"{elapsed:6.2f} s (limit {self.limit_s:g} s)  {detail}")
        self.lines.append((self.number, line))
        print(line)
        self.done = True
        return ok


@pytest.fixture
def criterion(request):
    lines = request.config.stash.setdefault(_LINES, [])
    made = []

    def start(number, title, limit_s):
        c = Criterion(lines, number, title, limit_s)
        made.append(c)
        return c

    yield start
    for c in made:
        if not c.done:
            lines.append((c.number, f"FAIL  {c.number:>2}  {c.title:<34} raised before a verdict"))


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
