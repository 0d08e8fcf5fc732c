"""Herald probability curves for a family of squeezing values.

Writes chi,n,probability,asymptotic CSV and prints each curve's peaks.
"""
import argparse
import sys

import numpy as np

from gbsim.cli import main as cli_main
from gbsim.gaussian import fig3_rows


def local_maxima(values):
    return [i for i in range(1, len(values) - 1) if values[i - 1] < values[i] > values[i + 1]]


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--chi", default="0.2,0.3,0.4,0.5")
    p.add_argument("--n-max", type=int, default=50)
    p.add_argument("--out", default="fig3.csv")
    args = p.parse_args(argv)
    code = cli_main(["fig3", "--chi", args.chi, "--n-max", str(args.n_max), "--out", args.out])
    if code:
        return code
    chis = [float(c) for c in args.chi.split(",")]
    rows = fig3_rows(chis, args.n_max)
    for chi in chis:
        ns = [n for c, n, _, _ in rows if c == chi]
        ps = [p for c, _, p, _ in rows if c == chi]
        peaks = [ns[i] for i in local_maxima(ps)]
        print(f"chi={chi}: argmax n={ns[int(np.argmax(ps))]}, interior peaks at n={peaks}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
