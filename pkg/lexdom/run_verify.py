#!/usr/bin/env python3
"""
Full verification run with a markdown report
"""
import os
import sys

# Add the package directory to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from main import cli  # noqa: E402

if __name__ == "__main__":
    cli(["verify", "--format", "markdown", "--case-table", *sys.argv[1:]])
