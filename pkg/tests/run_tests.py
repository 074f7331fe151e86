"""
Test runner for the DeLaM kernel

Runs the kernel unit tests, the law bench and the corpus integration
tests. Module names on the command line narrow the run:

    python tests/run_tests.py              # everything
    python tests/run_tests.py ulevel subst # test_ulevel.py and test_subst.py
"""

import sys
import unittest
from pathlib import Path

TESTS = Path(__file__).parent

# The tests import the kernel as src.delam
sys.path.insert(0, str(TESTS.parent))


def load_tests_for(names):
    """All test modules, or test_<name>.py for each name given"""
    loader = unittest.TestLoader()
    patterns = [f"test_{name}.py" for name in names] or ["test_*.py"]
    suite = unittest.TestSuite()
    for pattern in patterns:
        if pattern != "test_*.py" and not (TESTS / pattern).exists():
            raise SystemExit(f"no test module {pattern} in {TESTS}")
        suite.addTests(loader.discover(str(TESTS), pattern=pattern, top_level_dir=str(TESTS)))
    return suite


def run_tests(names=()):
    runner = unittest.TextTestRunner(verbosity=2)
    return runner.run(load_tests_for(list(names))).wasSuccessful()


if __name__ == '__main__':
    success = run_tests(sys.argv[1:])
    sys.exit(0 if success else 1)
