#!/usr/bin/env python3
"""Full concurrence-vs-disorder sweep with production defaults.

Writes fig1.csv and manifest.json under results/fig1 (25 log-spaced W points
in [0.2, 10], detunings 0.05/0.1/0.2, 100 realizations). Extra CLI flags are
forwarded, e.g. --realizations 500 --threads 8.
"""

import sys

from qladder.cli import main

if __name__ == "__main__":
    sys.exit(main(["fig1", "--out-dir", "results/fig1", *sys.argv[1:]]))
