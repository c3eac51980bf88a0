"""
Superradiant quantum absorption refrigerator simulator - main.py
Evaluates steady-state currents, noise and performance bounds, parameter
sweeps, thermalization times and the reaction-coordinate mapping as CSV.
"""

import sys

from src.qar.cli import main

if __name__ == "__main__":
    sys.exit(main())
