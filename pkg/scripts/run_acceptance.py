"""Run the acceptance criteria and print one PASS/FAIL line per criterion."""

import subprocess
import sys
from pathlib import Path

TESTS = Path(__file__).resolve().parent.parent / "tests" / "test_acceptance.py"

if __name__ == "__main__":
    sys.exit(subprocess.call([sys.executable, str(TESTS)]))
