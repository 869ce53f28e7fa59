import itertools
import os
import unittest
from fractions import Fraction

import numpy as np
from hypothesis import given, settings, strategies as st
from forge import FORGE_TEST_FILES
from forge.budget import Budget
from forge.errors import (
    BudgetExceeded, CarrierMismatch, InputError, MissingLabel, ParseError)
from forge.finactions import (
    FiniteMap, MapAssignment, CompressedSpec, compose, hamming, fix_fraction,
    tensor_power, amplify_witness, evaluate_word, check_sofic, check_lef,
    check_compressed, sofic_parameters, amplification_power, load_witness)
from forge.words import parse_word


def maps_on(size, count):
    table = st.lists(st.integers(0, size - 1), min_size=size, max_size=size)
    return st.tuples(*[table.map(FiniteMap) for _ in range(count)])


map_pairs = st.integers(1, 6).flatmap(lambda size: maps_on(size, 2))
map_triples = st.integers(1, 6).flatmap(lambda size: maps_on(size, 3))


def cyclic_witness(n, radius):
    """Z acting on Z_n by shifts, restricted to {-radius..radius}"""
    labels = [str(j) for j in range(-radius, radius + 1)]
    theta = MapAssignment.from_permutation_action(
        "0", labels, lambda label, x: (x + int(label)) % n, n)
    mult = {(f, g): str(int(f) + int(g)) for f in labels for g in labels}
    return theta, labels, mult


class FiniteMapTest(unittest.TestCase):
    def test_compose(self):
        f = FiniteMap([1, 2, 0])
        self.assertEqual(compose(f, f), FiniteMap([2, 0, 1]))
        self.assertEqual(compose(FiniteMap.identity(3), f), f)
        self.assertRaises(CarrierMismatch, compose, f, FiniteMap([0, 1]))

    @given(map_pairs)
    def test_compose_pointwise(self, pair):
        f, g = pair
        composed = compose(f, g)
        for x in range(f.size):
            self.assertEqual(composed(x), f(g(x)))

    def test_invalid_tables(self):
        self.assertRaises(InputError, FiniteMap, [0, 3])
        self.assertRaises(InputError, FiniteMap, [])
        self.assertRaises(InputError, FiniteMap([0, 0]).inverse)

    def test_inverse(self):
        f = FiniteMap([2, 0, 3, 1])
        self.assertTrue(compose(f, f.inverse()).is_identity())
        self.assertTrue(compose(f.inverse(), f).is_identity())


class HammingTest(unittest.TestCase):
    def test_examples(self):
        f = FiniteMap([1, 0, 2])
        self.assertEqual(hamming(f, f), 0)
        self.assertEqual(hamming(f, FiniteMap.identity(3)), Fraction(2, 3))

    def test_metric_exhaustive(self):
        maps = [FiniteMap(t) for t in itertools.product(range(3), repeat=3)]
        for f, g in itertools.product(maps, repeat=2):
            d = hamming(f, g)
            self.assertEqual(d, hamming(g, f))
            self.assertEqual(d == 0, f == g)
        for f, g, h in itertools.product(maps[::3], repeat=3):
            self.assertLessEqual(hamming(f, h), hamming(f, g) + hamming(g, h))

    @given(map_triples)
    def test_metric_random(self, triple):
        f, g, h = triple
        self.assertEqual(hamming(f, g),
                         Fraction(sum(f(x) != g(x) for x in range(f.size)), f.size))
        self.assertLessEqual(hamming(f, h), hamming(f, g) + hamming(g, h))

    def test_fix_fraction(self):
        self.assertEqual(fix_fraction(FiniteMap.identity(5)), 1)
        self.assertEqual(fix_fraction(FiniteMap([1, 0])), 0)
        self.assertEqual(fix_fraction(FiniteMap([0, 2, 1, 3])), Fraction(1, 2))
        f = FiniteMap([3, 1, 0, 2])
        self.assertEqual(fix_fraction(f), 1 - hamming(f, FiniteMap.identity(4)))


class TensorPowerTest(unittest.TestCase):
    def test_examples(self):
        swap = FiniteMap([1, 0])
        self.assertEqual(tensor_power(swap, 1), swap)
        identity = FiniteMap.identity(4)
        self.assertEqual(hamming(tensor_power(swap, 2), identity), 1)
        half = FiniteMap([0, 1, 3, 2])
        self.assertEqual(hamming(tensor_power(half, 2), FiniteMap.identity(16)),
                         Fraction(3, 4))

    def test_encoding(self):
        # (x1, x2) is encoded as 3 * x1 + x2
        f = FiniteMap([1, 2, 0])
        power = tensor_power(f, 2)
        for x1, x2 in itertools.product(range(3), repeat=2):
            self.assertEqual(power(3 * x1 + x2), 3 * f(x1) + f(x2))

    @settings(max_examples=200)
    @given(map_pairs, st.integers(1, 3))
    def test_amplification_law(self, pair, k):
        f, g = pair
        self.assertEqual(hamming(tensor_power(f, k), tensor_power(g, k)),
                         1 - (1 - hamming(f, g)) ** k)
        self.assertEqual(fix_fraction(tensor_power(f, k)), fix_fraction(f) ** k)
        self.assertEqual(compose(tensor_power(f, k), tensor_power(g, k)),
                         tensor_power(compose(f, g), k))

    def test_direct_count(self):
        f, g = FiniteMap([1, 1, 0]), FiniteMap([1, 2, 0])
        k = 3
        count = sum(any(f(x) != g(x) for x in xs)
                    for xs in itertools.product(range(3), repeat=k))
        self.assertEqual(hamming(tensor_power(f, k), tensor_power(g, k)),
                         Fraction(count, 3 ** k))

    def test_budget(self):
        self.assertRaises(BudgetExceeded, tensor_power, FiniteMap.identity(10),
                          4, Budget(carrier_cap=1000))
        self.assertRaises(InputError, tensor_power, FiniteMap.identity(2), 0)


class MapAssignmentTest(unittest.TestCase):
    def test_identity_invariant(self):
        self.assertRaises(InputError, MapAssignment, "e",
                          {"e": FiniteMap([1, 0])})
        self.assertRaises(MissingLabel, MapAssignment, "e",
                          {"g": FiniteMap([1, 0])})
        self.assertRaises(CarrierMismatch, MapAssignment, "e",
                          {"e": FiniteMap([0, 1]), "g": FiniteMap([0])})

    def test_amplify(self):
        theta, labels, _ = cyclic_witness(3, 1)
        self.assertEqual(amplify_witness(theta, 1), theta)
        amplified = amplify_witness(theta, 2)
        self.assertTrue(amplified["0"].is_identity())
        for f, g in itertools.product(labels, repeat=2):
            self.assertEqual(hamming(amplified[f], amplified[g]),
                             1 - (1 - hamming(theta[f], theta[g])) ** 2)

    def test_evaluate_word(self):
        s1 = parse_word("s1")[0]
        images = {s1: FiniteMap([1, 2, 0])}
        self.assertEqual(evaluate_word(images, parse_word("s1 s1")),
                         FiniteMap([2, 0, 1]))
        self.assertTrue(evaluate_word(images, parse_word("s1 S1")).is_identity())
        self.assertTrue(evaluate_word(images, parse_word("")).is_identity())
        self.assertRaises(MissingLabel, evaluate_word, images, parse_word("s2"))


class CheckSoficTest(unittest.TestCase):
    def test_cyclic_shift(self):
        theta, labels, mult = cyclic_witness(7, 2)
        report = check_sofic(theta, labels, Fraction(1, 10), mult)
        self.assertTrue(report.passed)
        for check in report.checks:
            if check.name.startswith("product"):
                self.assertEqual(check.value, "0")
            else:
                self.assertEqual(check.value, "1")

    def test_trivial_image_fails(self):
        theta = MapAssignment("e", {"e": FiniteMap.identity(3),
                                    "g": FiniteMap.identity(3)})
        report = check_sofic(theta, ["e", "g"], Fraction(1, 2), {})
        self.assertFalse(report.passed)
        self.assertEqual(report.failures[0].name, "identity_distance(g)")

    def test_lef_implies_sofic(self):
        theta, labels, mult = load_witness(
            os.path.join(FORGE_TEST_FILES, "z3_witness.json"))
        self.assertTrue(check_lef(theta, labels, mult).passed)
        for eps in [Fraction(1, 1000), Fraction(1, 3), Fraction(9, 10)]:
            self.assertTrue(check_sofic(theta, labels, eps, mult).passed)

    def test_missing_label(self):
        theta, labels, mult = cyclic_witness(5, 1)
        self.assertRaises(MissingLabel, check_lef, theta, labels + ["7"], mult)


class CheckLefTest(unittest.TestCase):
    def test_one_point_defect(self):
        images = {"e": FiniteMap.identity(4), "g": FiniteMap([1, 0, 3, 2]),
                  "h": FiniteMap([1, 0, 2, 3])}
        theta = MapAssignment("e", images)
        mult = {("g", "g"): "e", ("g", "e"): "g", ("e", "g"): "g",
                ("h", "e"): "h"}
        report = check_lef(theta, ["e", "g", "h"], mult)
        self.assertTrue(report.passed)
        # a 4-cycle for g breaks g g = e
        images["g"] = FiniteMap([1, 2, 3, 0])
        report = check_lef(MapAssignment("e", images), ["e", "g"], mult)
        self.assertFalse(report.passed)
        failure = report.failures[0]
        self.assertEqual(failure.name, "product(g,g)")
        self.assertEqual(failure.witness["f"], "g")


class CheckCompressedTest(unittest.TestCase):
    def test_spec_invariants(self):
        self.assertRaises(InputError, CompressedSpec, {"g": 0}, Fraction(1, 2))
        self.assertRaises(InputError, CompressedSpec, {"g": 2}, Fraction(1, 2))
        self.assertRaises(InputError, CompressedSpec, {"g": 1}, 1)
        spec = CompressedSpec({"g": Fraction(1, 3)}, Fraction(1, 100))
        self.assertEqual(CompressedSpec.from_dict(spec.as_dict()).lower_bounds,
                         spec.lower_bounds)

    def test_passes_and_fails(self):
        theta = MapAssignment("e", {"e": FiniteMap.identity(2),
                                    "g": FiniteMap([1, 0])})
        mult = {("g", "g"): "e"}
        spec = CompressedSpec({"g": Fraction(1, 2)}, Fraction(1, 100))
        report = check_compressed(theta, spec, mult)
        self.assertTrue(report.passed)
        self.assertEqual(report.get("product(g,g)").value, "0")
        self.assertEqual(report.get("identity_distance(g)").value, "1")

        trivial = MapAssignment("e", {"e": FiniteMap.identity(2),
                                      "g": FiniteMap.identity(2)})
        self.assertFalse(check_compressed(trivial, spec, mult).passed)

    def test_missing(self):
        theta = MapAssignment("e", {"e": FiniteMap.identity(2)})
        spec = CompressedSpec({"g": Fraction(1, 2)}, Fraction(1, 100))
        self.assertRaises(MissingLabel, check_compressed, theta, spec, {})


class AmplificationParametersTest(unittest.TestCase):
    def test_sofic_parameters(self):
        self.assertEqual(sofic_parameters(0, Fraction(1, 2), 2),
                         (0, Fraction(3, 4)))

    def test_amplification_power(self):
        # (1/2)^k < 1/100 first at k = 7
        self.assertEqual(amplification_power(Fraction(1, 2), Fraction(1, 100)), 7)
        self.assertEqual(amplification_power(1, Fraction(1, 2)), 1)
        self.assertRaises(InputError, amplification_power, 0, Fraction(1, 2))


class LoadWitnessTest(unittest.TestCase):
    def test_load(self):
        theta, labels, mult = load_witness(
            os.path.join(FORGE_TEST_FILES, "z3_witness.json"))
        self.assertEqual(labels, ["e", "g", "h"])
        self.assertEqual(theta.identity, "e")
        self.assertEqual(mult[("g", "h")], "e")
        self.assertTrue(np.array_equal(theta["g"].table, [1, 2, 0]))

    def test_bad_witness(self):
        with self.assertRaises(ParseError) as context:
            load_witness(os.path.join(FORGE_TEST_FILES, "bad_witness.json"))
        self.assertIn("bad_witness.json", str(context.exception))


if __name__ == '__main__':
    unittest.main()
