"""Sample-rate breakdown for a lossy device, swept over photon number."""
import argparse

from gbsim.pipeline import ExperimentConfig, rate_breakdown


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, nargs="+", default=[5, 10, 20, 30])
    p.add_argument("--eta1", type=float, default=0.99)
    p.add_argument("--eta2", type=float, default=0.9)
    p.add_argument("--rep-rate", type=float, default=1e6)
    args = p.parse_args(argv)
    print("n,herald_probability,postselection_efficiency,success_fraction,sample_rate")
    for n in args.n:
        r = rate_breakdown(ExperimentConfig(n=n, eta1=args.eta1, eta2=args.eta2, rep_rate=args.rep_rate))
        print(f"{n},{r['herald_probability']:.6g},{r['postselection_efficiency']:.6g},"
              f"{r['success_fraction']:.6g},{r['sample_rate']:.6g}")


if __name__ == "__main__":
    main()
