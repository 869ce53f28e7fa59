import os
import unittest

import numpy as np
from hypothesis import given, settings, strategies as st
from forge import FORGE_TEST_FILES, FORGE_LONG_TESTS
from forge.budget import Budget
from forge.errors import (
    BudgetExceeded, IncompleteTable, InputError, NotBijective, ParseError)
from forge.finactions import check_lef, compose
from forge.fullgroup import (
    FullGroupElement, OrbitPermutation, transposition, shift, load_element,
    exponent_at, apply, compose_elements, element_equal, check_bijection,
    l_sequence, lef_quotient)
from forge.subshift import TwoSidedPoint, get_substitution, occurrences

SKIP_MSG = "Long tests disabled, set FORGE_LONG_TESTS to run long tests"

FIBONACCI = get_substitution("fibonacci")
POINT = TwoSidedPoint(FIBONACCI)
IDENTITY = FullGroupElement.identity(FIBONACCI)
T = transposition(FIBONACCI, "ab")
U = transposition(FIBONACCI, "ba")
SHIFT = shift(FIBONACCI)
TEST_SET = [IDENTITY, T, U, SHIFT]


class ElementTest(unittest.TestCase):
    def test_transposition_table(self):
        self.assertEqual(T.table, {"aab": 1, "aba": -1, "baa": 0, "bab": 1})
        self.assertEqual(T.bound, 1)
        self.assertEqual(IDENTITY.bound, 0)

    def test_load(self):
        self.assertTrue(element_equal(load_element("t.txt", FIBONACCI), T))
        self.assertTrue(element_equal(load_element("u.txt", FIBONACCI), U))
        with self.assertRaises(ParseError):
            load_element(os.path.join(FORGE_TEST_FILES, "incomplete.txt"),
                         FIBONACCI)

    def test_incomplete(self):
        self.assertRaises(IncompleteTable, FullGroupElement, FIBONACCI, 1,
                          {"aab": 1, "aba": -1, "baa": 0})
        self.assertRaises(InputError, transposition, FIBONACCI, "aa")
        self.assertRaises(InputError, transposition, FIBONACCI, "bb")

    def test_pad_and_normalize(self):
        padded = T.pad(3)
        self.assertEqual(padded.radius, 3)
        self.assertTrue(element_equal(padded, T))
        self.assertEqual(padded.normalized().table, T.table)
        self.assertEqual(IDENTITY.pad(2).normalized().radius, 0)

    def test_text_round_trip(self):
        text = T.to_text()
        self.assertTrue(text.startswith("radius 1\n"))
        self.assertIn("aba -1", text)


class EvaluationTest(unittest.TestCase):
    def test_identity(self):
        for p in range(-10, 10):
            self.assertEqual(exponent_at(IDENTITY, POINT, p), 0)
            self.assertEqual(apply(IDENTITY, POINT, p), p)

    def test_transposition_at_ab(self):
        for p in occurrences(POINT, "ab", -50, 50):
            self.assertEqual(exponent_at(T, POINT, p), 1)
            self.assertEqual(apply(T, POINT, p), p + 1)
            self.assertEqual(apply(T, POINT, p + 1), p)

    def test_involution(self):
        for p in range(-50, 51):
            self.assertEqual(apply(T, POINT, apply(T, POINT, p)), p)
            self.assertEqual(apply(U, POINT, apply(U, POINT, p)), p)

    def test_inverse_negates(self):
        inverse = check_bijection(SHIFT)
        for p in range(-20, 20):
            image = apply(SHIFT, POINT, p)
            self.assertEqual(exponent_at(inverse, POINT, image),
                             -exponent_at(SHIFT, POINT, p))

    def test_orbit_permutation(self):
        phi = OrbitPermutation(T, POINT)
        self.assertEqual(phi(0), apply(T, POINT, 0))
        self.assertTrue(phi.is_bijective_on(-50, 50))
        self.assertTrue(OrbitPermutation(SHIFT, POINT).is_bijective_on(-10, 10))


class GroupLawTest(unittest.TestCase):
    def test_composition_examples(self):
        self.assertTrue(element_equal(compose_elements(IDENTITY, T), T))
        self.assertTrue(element_equal(compose_elements(T, T), IDENTITY))
        self.assertFalse(element_equal(IDENTITY, T))
        self.assertTrue(element_equal(
            compose_elements(SHIFT, check_bijection(SHIFT)), IDENTITY))

    def test_pointwise_agreement(self):
        for e2 in TEST_SET:
            for e1 in TEST_SET:
                composed = compose_elements(e2, e1)
                self.assertLessEqual(composed.bound, e1.bound + e2.bound)
                for p in range(-100, 101):
                    self.assertEqual(apply(composed, POINT, p),
                                     apply(e2, POINT, apply(e1, POINT, p)))

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.sampled_from(TEST_SET), min_size=1, max_size=4),
           st.integers(-50, 50))
    def test_homomorphism(self, word, p):
        element, position = IDENTITY, p
        for letter in reversed(word):
            element = compose_elements(letter, element)
            position = apply(letter, POINT, position)
        self.assertEqual(apply(element, POINT, p), position)

    def test_locality(self):
        element = compose_elements(T, U)
        radius = element.radius
        seen = {}
        for p in range(-100, 101):
            key = POINT.window(p - radius, p + radius)
            value = apply(element, POINT, p) - p
            self.assertEqual(seen.setdefault(key, value), value)


class BijectionTest(unittest.TestCase):
    def test_certified_inverses(self):
        self.assertTrue(element_equal(check_bijection(IDENTITY), IDENTITY))
        self.assertTrue(element_equal(check_bijection(T), T))
        self.assertTrue(element_equal(check_bijection(U), U))

    def test_not_bijective(self):
        element = load_element(os.path.join(FORGE_TEST_FILES, "not_bijective.txt"),
                               FIBONACCI)
        with self.assertRaises(NotBijective) as context:
            check_bijection(element)
        self.assertIn(context.exception.kind, ("twice", "never"))


class LSequenceTest(unittest.TestCase):
    def test_identity(self):
        sequence = l_sequence([IDENTITY], POINT, -5, 5)
        self.assertEqual(sequence.values, [(0,)] * 11)

    def test_transposition(self):
        sequence = l_sequence([T], POINT, 0, 10)
        starts = occurrences(POINT, "ab", -1, 10)
        for p in range(0, 11):
            expected = 1 if p in starts else (-1 if p - 1 in starts else 0)
            self.assertEqual(sequence[p], (expected,))
        self.assertEqual(sequence.bound, 1)

    def test_pattern_determines_values(self):
        sequence = l_sequence([T, U], POINT, -60, 60)
        seen = {}
        for p in range(-60, 61):
            key = POINT.window(p - 1, p + 1)
            self.assertEqual(seen.setdefault(key, sequence[p]), sequence[p])


class LefQuotientTest(unittest.TestCase):
    def test_identity_generator(self):
        quotient = lef_quotient([IDENTITY], 2)
        self.assertEqual(len(quotient.elements), 1)
        theta, labels, mult = quotient.as_assignment()
        self.assertEqual(labels, ["1"])
        self.assertTrue(check_lef(theta, labels, mult).passed)

    def test_transposition(self):
        quotient = lef_quotient([T], 2)
        self.assertEqual(len(quotient.elements), 2)
        self.assertGreater(quotient.modulus, 10)
        theta, labels, mult = quotient.as_assignment()
        image = theta["s1"]
        self.assertTrue(image.is_bijection())
        self.assertFalse(image.is_identity())
        self.assertTrue(compose(image, image).is_identity())
        report = check_lef(theta, labels, mult)
        self.assertTrue(report.passed)
        self.assertTrue(all(c.value == "0" for c in report.checks
                            if c.name.startswith("product")))

    def test_periodic_rejected(self):
        periodic = get_substitution("periodic")
        self.assertRaises(InputError, lef_quotient,
                          [FullGroupElement.identity(periodic)], 1)

    def test_no_generators(self):
        self.assertRaises(InputError, lef_quotient, [], 1)

    def test_budget(self):
        budget = Budget(scan_cap=5)
        self.assertRaises(BudgetExceeded, lef_quotient, [T], 2, None, budget)

    @unittest.skipUnless(FORGE_LONG_TESTS, SKIP_MSG)
    def test_two_transpositions(self):
        quotient = lef_quotient([T, U], 2)
        theta, labels, mult = quotient.as_assignment()
        self.assertEqual(len(labels), len(set(labels)))
        self.assertTrue(check_lef(theta, labels, mult).passed)
        tables = [theta[label].table for label in labels]
        for i in range(len(tables)):
            for j in range(i):
                self.assertFalse(np.array_equal(tables[i], tables[j]))


if __name__ == '__main__':
    unittest.main()
