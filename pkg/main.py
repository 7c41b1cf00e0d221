#!/usr/bin/env python3
"""
Main entry point for nilharmonic

Runs the command-line interface from a source checkout, e.g.
``python main.py catalog --budget default``.
"""

import sys
import os

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from nilharmonic.cli import main


if __name__ == "__main__":
    sys.exit(main())
