"""
Entry point for the pfg command line.

Usage: python main.py check --pfs data/pfs/z4_two_level.json
"""

import sys

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
