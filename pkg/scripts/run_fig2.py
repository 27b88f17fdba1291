#!/usr/bin/env python3
"""Branch-occupation traces for several disorder strengths.

Writes fig2.csv and manifest.json under results/fig2 (W in {0.2, 1, 2, 5, 10},
200 time points over [0, 10 tau], 100 realizations). Extra CLI flags are
forwarded.
"""

import sys

from qladder.cli import main

if __name__ == "__main__":
    sys.exit(main(["fig2", "--out-dir", "results/fig2", *sys.argv[1:]]))
