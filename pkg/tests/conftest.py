import os
import sys
import tempfile
from pathlib import Path

# keep cache files out of the working tree during tests
os.environ.setdefault("IWASAWA_CACHE_DIR", tempfile.mkdtemp(prefix="iwasawa-cache-"))
sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
