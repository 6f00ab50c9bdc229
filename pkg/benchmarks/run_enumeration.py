import argparse
import time

from absl import logging

from omcodes import battery, om_from_central_arrangement, validate_covectors


logging.set_verbosity(logging.ERROR)


def parse_args():
    parser = argparse.ArgumentParser(description="Benchmark arrangement enumeration and covector validation")
    parser.add_argument("--d", type=int, default=3, help="Ambient dimension of the arrangements.")
    parser.add_argument("--seed", type=int, default=0, help="Battery seed.")
    parser.add_argument("--jobs", type=int, default=1, help="Enumeration workers.")
    args = parser.parse_args()
    return args


SIZES = [3, 4, 5, 6, 7]
NUM_INSTANCES = 10


def main():
    args = parse_args()
    for size in SIZES:
        instances = battery("acyclic-arrangements", size, d=args.d, size=NUM_INSTANCES, seed=args.seed)
        arrangements = [instance.realization for instance in instances]

        # warm-up step
        om_from_central_arrangement(arrangements[0], jobs=args.jobs)

        start = time.time()
        for A in arrangements:
            M = om_from_central_arrangement(A, jobs=args.jobs)
            validate_covectors(M.n, M.covectors)
        runtime = time.time() - start

        print(f"{size}: {runtime:.06}")


if __name__ == "__main__":
    main()
