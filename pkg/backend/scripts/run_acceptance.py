# backend/scripts/run_acceptance.py - Acceptance Run
"""
Runs every suite at acceptance size and writes one report per suite.
Usage: python backend/scripts/run_acceptance.py [--seed S] [--out DIR]
"""

import os
import sys
import time
import logging
import argparse

# Add backend to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from controllers.report_controller import emit_report  # noqa: E402
from controllers.suite_controller import SUITES, SuiteController  # noqa: E402
from utils import check_dependencies  # noqa: E402
from utils.config import get_config  # noqa: E402
from utils.data_structures import SuiteConfig  # noqa: E402
from utils.logger import setup_logging  # noqa: E402

logger = logging.getLogger(__name__)

ACCEPTANCE_TRIALS = 1000
# The quadrature oracle costs ~1e5 evaluations per segment per trial
REDUCED_TRIALS = {'oracle-agreement': 100}


def run_acceptance(seed: int, out_dir: str = None, show_progress: bool = False) -> bool:
    """Every suite once; True when all of them passed"""
    config = get_config()
    controller = SuiteController(show_progress=show_progress)
    base = SuiteConfig.from_config(config, next(iter(SUITES)), trials=ACCEPTANCE_TRIALS, seed=seed)

    passed_count = 0
    started = time.time()
    for name in SUITES:
        report = controller.run_suite(base.for_suite(name, REDUCED_TRIALS.get(name, ACCEPTANCE_TRIALS)))
        status = 'passed' if report.passed else f"FAILED ({len(report.failures)} failures)"
        logger.info(f"{name}: {status} in {report.wall_time:.2f}s, max tightness {report.max_tightness:.6g}")

        if report.passed:
            passed_count += 1
        if out_dir:
            with open(os.path.join(out_dir, f"{name}.json"), 'wb') as handle:
                handle.write(emit_report(report, 'json'))

    logger.info(f"Acceptance: {passed_count}/{len(SUITES)} suites passed in {time.time() - started:.1f}s")
    return passed_count == len(SUITES)


def main():
    parser = argparse.ArgumentParser(description='Run every suite at acceptance size')
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--out', help='Directory for per-suite JSON reports')
    parser.add_argument('--progress', action='store_true')
    args = parser.parse_args()

    setup_logging(get_config())

    # Step 1: dependencies
    dependencies = check_dependencies()
    if dependencies['status'] != 'all_dependencies_available':
        logger.error(f"Missing packages: {', '.join(dependencies['missing'])}")
        return False

    # Step 2: output directory
    if args.out:
        os.makedirs(args.out, exist_ok=True)

    # Step 3: suites
    return run_acceptance(args.seed, args.out, args.progress)


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
