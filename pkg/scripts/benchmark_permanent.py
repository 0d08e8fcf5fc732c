"""Wall time of the Ryser permanent against matrix size and thread count."""
import argparse
import time

from gbsim.linalg import haar_unitary
from gbsim.permanent import permanent_ryser
from gbsim.rng import RngStream


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--dims", type=int, nargs="+", default=[10, 14, 18, 22, 24])
    p.add_argument("--threads", type=int, nargs="+", default=[1, 4])
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    permanent_ryser(haar_unitary(3, RngStream(args.seed)))  # compile
    print("dim,threads,seconds,abs_permanent")
    for dim in args.dims:
        u = haar_unitary(dim, RngStream(args.seed, dim))
        for t in args.threads:
            start = time.perf_counter()
            value = permanent_ryser(u, workers=t)
            print(f"{dim},{t},{time.perf_counter() - start:.4f},{abs(value):.6g}")


if __name__ == "__main__":
    main()
