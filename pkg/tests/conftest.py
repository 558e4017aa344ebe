import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from kothe.exactla import Field

DATA = Path(__file__).resolve().parents[1] / "src" / "kothe" / "data"
FIELDS = [Field.gf(2), Field.gf(3), Field.gf(5), Field.qq()]

# criterion number -> (title, passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


@contextmanager
def criterion(number: int, title: str):
    """Record a pass/fail line for an acceptance criterion; failures re-raise."""
    start = time.perf_counter()
    info = {"detail": ""}
    try:
        yield info
    except BaseException as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        ACCEPTANCE[number] = (title, False, f"{type(exc).__name__}: {msg}"[:200])
        raise
    else:
        elapsed = time.perf_counter() - start
        ACCEPTANCE[number] = (title, True, f"{info['detail']} ({elapsed:.2f}s)".strip())


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 9):
        if n in ACCEPTANCE:
            title, ok, detail = ACCEPTANCE[n]
            terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}  {detail}")
        else:
            terminalreporter.write_line(f"criterion {n}: NOT RUN")


@pytest.fixture(params=FIELDS, ids=lambda f: f.name)
def field(request):
    return request.param
