import unittest

from forge.budget import Budget, DEFAULT_BUDGET
from forge.errors import BudgetExceeded, InputError


class BudgetTest(unittest.TestCase):
    def test_defaults(self):
        self.assertEqual(DEFAULT_BUDGET.vertex_cap, 200000)
        self.assertEqual(DEFAULT_BUDGET.carrier_cap, 2 ** 22)
        self.assertEqual(Budget(), DEFAULT_BUDGET)

    def test_validation(self):
        self.assertRaises(InputError, Budget, vertex_cap=0)
        self.assertRaises(InputError, Budget, scan_cap=1.5)

    def test_check(self):
        budget = Budget(window_cap=10)
        self.assertEqual(budget.check("window_cap", 10), 10)
        with self.assertRaises(BudgetExceeded) as context:
            budget.check("window_cap", 11, "pattern 'aa'")
        self.assertEqual(context.exception.budget, "window_cap")
        self.assertEqual(context.exception.limit, 10)
        self.assertIn("pattern 'aa'", str(context.exception))

    def test_scaling(self):
        half = Budget(vertex_cap=5, probe_cap=1).scaled("1/2")
        self.assertEqual(half.vertex_cap, 2)
        self.assertEqual(half.probe_cap, 1)
        self.assertEqual(Budget.from_env("3").scan_cap, 600000)
        self.assertEqual(Budget.from_env(None), DEFAULT_BUDGET)
        self.assertRaises(InputError, Budget.from_env, "0")
        self.assertRaises(InputError, Budget.from_env, "-1/2")
        self.assertRaises(InputError, Budget.from_env, "lots")

    def test_serialization(self):
        budget = Budget(language_cap=12)
        self.assertEqual(Budget.from_dict(budget.as_dict()), budget)


if __name__ == '__main__':
    unittest.main()
