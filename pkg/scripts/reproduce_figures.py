"""Write the four figure data sets (CSV and SVG) for the default parameters.

    python3 scripts/reproduce_figures.py [out_dir]
"""

import sys

from modbs.cli import main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "figures"
    sys.exit(main(["figures", "--out", out, "--format", "svg"]))
