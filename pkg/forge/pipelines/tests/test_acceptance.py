import time
import unittest

from monty.tempfile import ScratchDir
from forge import FORGE_LONG_TESTS
from forge.errors import InputError
from forge.pipelines.acceptance import CRITERIA, selftest

SKIP_MSG = "Long tests disabled, set FORGE_LONG_TESTS to run long tests"

QUICK = ["amplification_law", "compressed_integration", "fix_measure_stability",
         "repetitivity_window", "displacing_search"]


class SelftestTest(unittest.TestCase):
    def test_quick_criteria(self):
        report = selftest(names=QUICK)
        self.assertEqual([check.name for check in report.checks], QUICK)
        self.assertTrue(report.passed, report.failures)
        self.assertEqual(report.get("amplification_law").value, "600")
        self.assertEqual(report.get("repetitivity_window").value, "3")
        self.assertEqual(report.get("displacing_search").value, "a1 a2 a1")

    def test_corrupted_file(self):
        with ScratchDir("."):
            with open("t.txt", "w") as f:
                f.write("radius 1\naab one\n")
            report = selftest(files={"t.txt": "t.txt"}, names=["lef_pipeline"])
        check = report.get("lef_pipeline")
        self.assertFalse(check.passed)
        self.assertEqual(check.witness["error"], "ParseError")
        self.assertEqual(check.witness["line"], 2)

    def test_lamplighter_criterion(self):
        start = time.time()
        report = selftest(names=["lamplighter_pipeline"])
        self.assertLess(time.time() - start, 60)
        self.assertTrue(report.passed, report.failures)
        self.assertEqual(report.get("lamplighter_pipeline").value, "1")

    def test_unknown_criterion(self):
        self.assertRaises(InputError, selftest, names=["nothing"])

    def test_deterministic(self):
        first = selftest(seed=3, names=["amplification_law"])
        second = selftest(seed=3, names=["amplification_law"])
        self.assertEqual(first.content(), second.content())

    @unittest.skipUnless(FORGE_LONG_TESTS, SKIP_MSG)
    def test_full_suite(self):
        report = selftest()
        self.assertEqual(len(report.checks), len(CRITERIA))
        self.assertTrue(report.passed, report.failures)


if __name__ == '__main__':
    unittest.main()
