#!/usr/bin/env python3
"""Run the acceptance suite with visible per-criterion verdict lines."""

import subprocess
import sys
from pathlib import Path

root = Path(__file__).resolve().parent.parent
cmd = [sys.executable, "-m", "pytest", "-s", "-q", str(root / "tests" / "test_acceptance.py")]
raise SystemExit(subprocess.call(cmd, cwd=root))
