#!/usr/bin/env python3
"""
Test Runner for laman-lcontact
Runs the unittest suites by category and prints a summary
"""

import sys
import os
import argparse
import unittest
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent

CATEGORIES = [
    ('config', 'Configuration', 'tests.test_config_loader'),
    ('graph', 'Plane graphs', 'tests.test_plane_graph'),
    ('laman', 'Pebble game and subset oracle', 'tests.test_laman'),
    ('henneberg', 'Henneberg moves', 'tests.test_henneberg'),
    ('angular', 'Angular structures', 'tests.test_angular'),
    ('labeling', 'Angle and edge labelings', 'tests.test_labeling'),
    ('lcontact', 'Types, D_r/D_b and shapes', 'tests.test_lcontact'),
    ('validator', 'Representation validator', 'tests.test_validator'),
    ('batch', 'Batch drawing', 'tests.test_batch_processor'),
    ('integration', 'Pipeline and CLI', 'tests.test_integration'),
]

# slow fixed-seed runs, only with --full or --only acceptance
FULL_CATEGORIES = [
    ('acceptance', 'Fixed-seed acceptance and timing', 'tests.test_acceptance'),
]


def run_category(title: str, module_name: str, verbosity: int) -> unittest.TestResult:
    print(f"\n📋 {title} ({module_name})")
    print("-" * 50)
    suite = unittest.TestLoader().loadTestsFromName(module_name)
    result = unittest.TextTestRunner(verbosity=verbosity).run(suite)
    print(f"  ran {result.testsRun}, failures {len(result.failures)}, "
          f"errors {len(result.errors)}, skipped {len(result.skipped)}")
    return result


def run_tests(only=None, verbosity: int = 2, full: bool = False) -> bool:
    """Run the selected categories; True when all pass"""
    print("\n" + "=" * 70)
    print("🧪 LAMAN L-CONTACT - TEST SUITE")
    print("=" * 70)
    sys.path.insert(0, str(PROJECT_ROOT))

    selected = [c for c in CATEGORIES if not only or c[0] in only]
    selected += [c for c in FULL_CATEGORIES if full or (only and c[0] in only)]
    if any(c in FULL_CATEGORIES for c in selected):
        os.environ['LAMAN_ACCEPTANCE'] = '1'
    total = 0
    broken = []
    for key, title, module_name in selected:
        try:
            result = run_category(title, module_name, verbosity)
        except Exception as e:
            print(f"  ❌ Could not load {module_name}: {e}")
            broken.append(key)
            continue
        total += result.testsRun
        if not result.wasSuccessful():
            broken.append(key)

    print("\n" + "=" * 70)
    print(f"📊 {total} tests in {len(selected)} categories")
    if broken:
        print(f"❌ Failing categories: {', '.join(broken)}")
        return False
    print("✅ Every category passed")
    return True


def run_quick_smoke_test() -> bool:
    """Draw one small random graph end to end"""
    print("\n" + "=" * 70)
    print("💨 QUICK SMOKE TEST")
    print("=" * 70)
    sys.path.insert(0, str(PROJECT_ROOT))

    try:
        from src.config_loader import get_config
        from src.henneberg import random_sequence
        from src.pipeline import run_pipeline
    except ImportError as e:
        print(f"  ✗ Import failed: {e}")
        return False

    problems = []
    sequence, g = random_sequence(8, seed=1)
    try:
        artifacts = run_pipeline(g, sequence=sequence)
        if artifacts.verdict:
            print(f"  ✓ n=8 drawn and validated in {sum(artifacts.timings.values()):.1f} ms")
        else:
            problems.append(f"representation fails clause {artifacts.verdict.rule}")
    except Exception as e:
        problems.append(f"pipeline raised {type(e).__name__}: {e}")

    limit = get_config().get('BRUTE_FORCE_LIMIT')
    if 'LAMAN_BRUTE_FORCE_LIMIT' not in os.environ and limit != 10:
        problems.append(f"BRUTE_FORCE_LIMIT is {limit}, default is 10")
    else:
        print("  ✓ Configuration defaults in place")

    for problem in problems:
        print(f"  ✗ {problem}")
    return not problems


def main():
    """Main test runner"""
    parser = argparse.ArgumentParser(description='Run tests for laman-lcontact')
    parser.add_argument('--quick', action='store_true', help='smoke test only')
    parser.add_argument('--full', action='store_true', help='preflight check, then every category including the slow acceptance runs')
    parser.add_argument('--only', nargs='+', choices=[c[0] for c in CATEGORIES + FULL_CATEGORIES], help='run these categories')
    parser.add_argument('--quiet', action='store_true', help='one dot per test')
    args = parser.parse_args()

    verbosity = 1 if args.quiet else 2
    if args.quick:
        success = run_quick_smoke_test()
    elif args.only:
        success = run_tests(args.only, verbosity)
    else:
        from preflight_check import main as preflight_main
        try:
            preflight_main()
        except SystemExit as e:
            if e.code:
                print("⚠️  Preflight reported problems; running tests anyway")
        success = run_tests(verbosity=verbosity, full=args.full)

    sys.exit(0 if success else 1)


if __name__ == "__main__":
    main()
