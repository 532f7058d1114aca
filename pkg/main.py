#!/usr/bin/env python3
"""
Calogero Polynomial Toolkit - command-line entry point
"""

import os
import sys

# Add the repository root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
