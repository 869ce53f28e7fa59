"""
Bundled acceptance suite run by `forge selftest`.

Every criterion is an exact check at desk scale and yields one record
of the selftest report.  A criterion that cannot read its bundled data
fails with the parse error (file and line) as its witness, the other
criteria still run.
"""
import itertools
from fractions import Fraction

import numpy as np
from forge.ballstats import (
    LabeledAction, TrElement, ball_at, ball_distribution, random_action,
    rooted_distance)
from forge.budget import DEFAULT_BUDGET
from forge.errors import ForgeError, InputError, ParseError
from forge.finactions import (
    FiniteMap, amplify_witness, check_compressed, check_lef, hamming, tensor_power)
from forge.fullgroup import (
    FullGroupElement, apply, compose_elements, lef_quotient, load_element,
    shift, transposition)
from forge.lamps import (
    FiniteLampElement, act, ball, embedding_threshold, find_displacing,
    parse_action_spec, verify_embedding)
from forge.log import FORGE_LOGGER
from forge.odometer import (
    compressed_rep, compressed_spec, fix_measure, load_binding, load_section)
from forge.report import Report, format_rational
from forge.subshift import TwoSidedPoint, get_substitution, language, repetitivity_window
from forge.words import enumerate_ball

BUNDLED_FILES = {"z2.json": "z2.json", "dyadic_words.json": "dyadic_words.json",
                 "t.txt": "t.txt"}


def _shift_cycle(n):
    return LabeledAction.from_permutations({"s1": [(v + 1) % n for v in range(n)]})


def amplification_law(rng, budget, files):
    """hamming(f^k, g^k) = 1 - (1 - hamming(f, g))^k for random maps"""
    cases = 0
    for _ in range(200):
        size = int(rng.integers(1, 7))
        f = FiniteMap(rng.integers(0, size, size))
        g = FiniteMap(rng.integers(0, size, size))
        distance = hamming(f, g)
        for k in (1, 2, 3):
            measured = hamming(tensor_power(f, k, budget), tensor_power(g, k, budget))
            expected = 1 - (1 - distance) ** k
            cases += 1
            if measured != expected:
                return False, cases, {"f": f.tolist(), "g": g.tolist(), "k": k,
                                      "measured": format_rational(measured),
                                      "expected": format_rational(expected)}
    return True, cases, None


def compressed_integration(rng, budget, files):
    """Z/2 section over the depth one odometer generator at n = 10"""
    section = load_section(files["z2.json"])
    n = 10
    theta = compressed_rep(section, n, budget)
    spec = compressed_spec(section, n, Fraction(1, 10), budget)
    report = check_compressed(theta, spec, section.mult)
    for label in section.generators:
        measure = fix_measure(section.words[label], section.binding, n, budget)
        if spec.lower_bounds[label] != (1 - measure) / 2:
            return False, None, {"label": label, "fix": format_rational(measure)}
        if report.get("identity_distance({})".format(label)).value != "1":
            return False, None, {"label": label, "reason": "identity distance below 1"}
    if not all(check.value == "0" for check in report.checks
               if check.name.startswith("product")):
        return False, None, {"reason": "nonzero product defect"}
    amplified = check_compressed(amplify_witness(theta, 2, budget), spec, section.mult)
    passed = report.passed and amplified.passed
    return passed, theta.size, None if passed else {
        "failures": [check.name for check in report.failures + amplified.failures]}


def fix_measure_stability(rng, budget, files):
    """fix_measure of every bundled dyadic word is the same at depths 8, 10, 12"""
    binding, words = load_binding(files["dyadic_words.json"])
    for word in words:
        measures = {fix_measure(word, binding, depth, budget) for depth in (8, 10, 12)}
        if len(measures) != 1:
            return False, None, {"word": str(word),
                                 "measures": sorted(format_rational(m) for m in measures)}
    return True, len(words), None


def lef_pipeline(rng, budget, files):
    sub = get_substitution("fibonacci")
    generator = load_element(files["t.txt"], sub, budget)
    quotient = lef_quotient([generator], 2, budget=budget)
    theta, labels, mult = quotient.as_assignment()
    bad = [label for label in labels if not theta[label].is_bijection()]
    if bad:
        return False, quotient.modulus, {"not_permutations": bad}
    report = check_lef(theta, labels, mult)
    return report.passed, quotient.modulus, None if report.passed else {
        "failures": [check.name for check in report.failures]}


def repetitivity(rng, budget, files):
    sub = get_substitution("fibonacci")
    m = repetitivity_window(sub, "a", budget)
    if m != 3 or "bb" in language(sub, 2, budget):
        return False, m, {"pattern": "a"}
    for pattern in ("aa", "aba"):
        window = repetitivity_window(sub, pattern, budget)
        missing = [w for w in language(sub, window, budget) if pattern not in w]
        if missing:
            return False, window, {"pattern": pattern, "word": missing[0]}
    return True, m, None


def lamplighter_pipeline(rng, budget, files):
    dihedral = verify_embedding(parse_action_spec("cayley:2"), 1, 20, "exhaustive",
                                budget=budget)
    if not dihedral.passed:
        return False, None, {"action": "cayley:2",
                             "failures": [check.name for check in dihedral.failures]}
    threshold = embedding_threshold(parse_action_spec("cayley:3"), 1, 25, "exhaustive",
                                    budget=budget)
    if threshold is None:
        return False, None, {"action": "cayley:3", "reason": "fails at n = 25"}
    return True, threshold, None


def displacing(rng, budget, files):
    tree = parse_action_spec("cayley:3")
    inner = ball(tree, 1, budget).vertices
    g = find_displacing(tree, inner, budget)
    images = {act(tree, g, v) for v in inner}
    hit = images & set(inner)
    return not hit, str(g), {"word": str(g)} if hit else None


def ball_statistics(rng, budget, files):
    for _ in range(50):
        size = int(rng.integers(1, 9))
        action = random_action(rng, size, generators=2, width=1)
        distribution = ball_distribution(action, 1, budget)
        if sum(distribution.weights.values()) != 1:
            return False, None, {"reason": "weights do not sum to 1"}
        codes = [ball_at(action, x, 2, budget).code for x in range(size)]
        for _ in range(20):
            permutation = rng.permutation(size)
            relabeled = action.relabel(permutation)
            for x in range(size):
                if ball_at(relabeled, int(permutation[x]), 2, budget).code != codes[x]:
                    return False, None, {"root": x,
                                         "permutation": permutation.tolist()}
    distance = rooted_distance(TrElement(_shift_cycle(4), 0),
                               TrElement(_shift_cycle(8), 0), 6, budget)
    if distance != Fraction(1, 2):
        return False, distance, {"expected": "1/2"}
    return True, distance, None


def group_laws(rng, budget, files):
    """Both product laws against brute-force composition"""
    sub = get_substitution("fibonacci")
    point = TwoSidedPoint(sub, budget)
    elements = [FullGroupElement.identity(sub, budget), transposition(sub, "ab", budget),
                transposition(sub, "ba", budget), shift(sub, budget)]
    for e2, e1 in itertools.product(elements, repeat=2):
        composed = compose_elements(e2, e1)
        for p in range(-100, 101):
            if apply(composed, point, p) != apply(e2, point, apply(e1, point, p)):
                return False, None, {"position": p, "e2": e2.to_text(),
                                     "e1": e1.to_text()}
    tree = parse_action_spec("cayley:3")
    model = ball(tree, 2, budget)
    vertices = model.vertices
    configs = np.array(list(itertools.product([0, 1], repeat=len(vertices))),
                       dtype=np.uint8)
    words = enumerate_ball(tree.alphabet(), 3, budget)
    for _ in range(20):
        f, g = (FiniteLampElement(model, [v for v in vertices if rng.integers(2)],
                                  words[int(rng.integers(len(words)))])
                for _ in range(2))
        if not np.array_equal((f * g).apply_all(configs), f.apply_all(g.apply_all(configs))):
            return False, None, {"f": str(f.word), "g": str(g.word)}
    return True, len(configs), None


CRITERIA = [
    ("amplification_law", amplification_law),
    ("compressed_integration", compressed_integration),
    ("fix_measure_stability", fix_measure_stability),
    ("lef_pipeline", lef_pipeline),
    ("repetitivity_window", repetitivity),
    ("lamplighter_pipeline", lamplighter_pipeline),
    ("displacing_search", displacing),
    ("ball_statistics", ball_statistics),
    ("group_laws", group_laws),
]


def selftest(seed=0, budget=DEFAULT_BUDGET, files=None, names=None):
    """
    Runs every acceptance criterion

    Args:
        seed (int): seed of the random instances
        budget (Budget): caps
        files (dict): replacements for bundled data files, keyed by
            bundled name
        names ([str]): criteria to run, all by default

    Returns:
        (Report) one record per criterion
    """
    paths = dict(BUNDLED_FILES)
    paths.update(files or {})
    report = Report("selftest", {"seed": seed})
    known = [name for name, _ in CRITERIA]
    unknown = set(names or []) - set(known)
    if unknown:
        raise InputError("unknown criteria {}".format(sorted(unknown)))
    for name, criterion in CRITERIA:
        if names is not None and name not in names:
            continue
        rng = np.random.default_rng(seed)
        try:
            passed, value, witness = criterion(rng, budget, paths)
        except ParseError as e:
            passed, value, witness = False, None, {
                "error": "ParseError", "path": e.path, "line": e.line, "message": str(e)}
        except ForgeError as e:
            passed, value, witness = False, None, {
                "error": e.__class__.__name__, "message": str(e)}
        FORGE_LOGGER.info("criterion %s: %s", name, "pass" if passed else "FAIL")
        report.add(name, passed, value, witness)
    return report
