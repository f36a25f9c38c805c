#!/usr/bin/env python3
"""Run the acceptance suite with its per-criterion pass/fail lines visible."""
import subprocess
import sys

sys.exit(subprocess.call([sys.executable, "-m", "pytest",
                          "tests/test_acceptance.py", "-s", "-v"]))
