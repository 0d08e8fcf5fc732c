"""Compare simulated Gaussian sampler output with the exact joint distribution."""
import argparse

from gbsim.bosonsampling import BosonSamplingInstance, full_distribution
from gbsim.fock import FockDistribution, enumerate_collision_free, variation_distance
from gbsim.gaussian import herald_prob_any
from gbsim.linalg import haar_unitary
from gbsim.pipeline import ExperimentConfig, gbs_events
from gbsim.rng import RngStream


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--events", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    cfg = ExperimentConfig(n=args.n, m=args.m, seed=args.seed)
    u = haar_unitary(args.m, RngStream(args.seed, 1))
    events = gbs_events(cfg, u, args.events, cfg.rng())
    heralds = enumerate_collision_free(args.m, args.n)
    exact = {}
    for k in heralds:
        for l, q in full_distribution(BosonSamplingInstance(u, k)).as_dict().items():
            exact[k + l] = q / len(heralds)
    emp = FockDistribution.empirical(e.herald + e.output for e in events)
    mean = sum(e.attempts for e in events) / len(events)
    print(f"variation distance (unhalved): {variation_distance(emp, FockDistribution.from_mapping(exact)):.4f}")
    print(f"mean attempts {mean:.3f}, expected {1 / herald_prob_any(cfg.chi, args.n, args.m):.3f}")


if __name__ == "__main__":
    main()
