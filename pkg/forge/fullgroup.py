"""
Elements of the topological full group of a substitution subshift.

An element is given by a window radius w and a total table sending every
admissible word of length 2w+1 (positions -w..w around the current
position) to the power of the shift applied there.  Tables make the group
law and equality decidable through the subshift language, and on the orbit
of a point they induce permutations of Z, which are reduced mod n to give
finite LEF quotients.
"""
import itertools

import numpy as np
from forge import tqdm
from forge.budget import DEFAULT_BUDGET
from forge.errors import (
    BudgetExceeded, CertificationFailed, IncompleteTable, InputError,
    NotBijective, NotInLanguage, ParseError)
from forge.finactions import FiniteMap, MapAssignment
from forge.log import FORGE_LOGGER, forge_traced
from forge.subshift import (
    Pattern, TwoSidedPoint, check_aperiodic, find_occurrences, language)
from forge.utils.parsers import parse_int, read_records
from forge.words import IDENTITY, ReducedWord, Symbol, concat

IDENTITY_LABEL = "1"


class FullGroupElement(object):
    """
    Clopen-piecewise power of the shift.

    Args:
        sub (Substitution): the substitution defining the subshift
        radius (int): window radius w
        table (dict): admissible word of length 2w+1 -> exponent
        budget (Budget): bounds the language computations
    """
    def __init__(self, sub, radius, table, budget=DEFAULT_BUDGET):
        if radius < 0:
            raise InputError("window radius must be nonnegative, got {}".format(radius))
        admissible = language(sub, 2 * radius + 1, budget)
        missing = sorted(admissible - set(table))
        if missing:
            raise IncompleteTable("no exponent for admissible words {}".format(
                missing[:5]))
        extra = sorted(set(table) - admissible)
        if extra:
            raise NotInLanguage("table words {} are not admissible in {}".format(
                extra[:5], sub.name))
        self.sub = sub
        self.radius = radius
        self.table = {word: int(table[word]) for word in sorted(admissible)}
        self.budget = budget

    @property
    def bound(self):
        """Cocycle bound a = max |n|"""
        return max(abs(n) for n in self.table.values())

    @classmethod
    def identity(cls, sub, budget=DEFAULT_BUDGET):
        return cls(sub, 0, {s: 0 for s in language(sub, 1, budget)}, budget)

    def pad(self, radius):
        """The same element read through a larger window"""
        if radius < self.radius:
            raise InputError("cannot pad radius {} down to {}".format(
                self.radius, radius))
        cut = radius - self.radius
        table = {word: self.table[word[cut:len(word) - cut]]
                 for word in language(self.sub, 2 * radius + 1, self.budget)}
        return FullGroupElement(self.sub, radius, table, self.budget)

    def normalized(self):
        """The same element on the smallest window determining it"""
        for radius in range(self.radius):
            cut = self.radius - radius
            table = {}
            for word, exponent in self.table.items():
                center = word[cut:len(word) - cut]
                if table.setdefault(center, exponent) != exponent:
                    break
            else:
                return FullGroupElement(self.sub, radius, table, self.budget)
        return self

    def key(self):
        """Hashable invariant of the element"""
        element = self.normalized()
        return element.radius, tuple(sorted(element.table.items()))

    def to_text(self):
        lines = ["radius {}".format(self.radius)]
        lines.extend("{} {}".format(word, n) for word, n in self.table.items())
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return "FullGroupElement({}, radius={}, bound={})".format(
            self.sub.name, self.radius, self.bound)


def transposition(sub, pair, budget=DEFAULT_BUDGET):
    """
    The involution exchanging the two letters of every occurrence of a
    two-letter word xy with x != y: +1 where the current position reads x
    followed by y, -1 where it reads y preceded by x, 0 elsewhere.  The
    two cases are disjoint because xy cannot overlap itself at shift 1.

    Args:
        sub (Substitution): substitution
        pair (str): admissible word of two distinct letters, e. g. "ab"

    Returns:
        (FullGroupElement) of radius 1
    """
    if len(pair) != 2 or pair[0] == pair[1]:
        raise InputError("transpositions need two distinct letters, got {!r}".format(pair))
    if pair not in language(sub, 2, budget):
        raise NotInLanguage("{!r} is not a factor of {}".format(pair, sub.name))
    table = {}
    for word in language(sub, 3, budget):
        if word[1:] == pair:
            table[word] = 1
        elif word[:2] == pair:
            table[word] = -1
        else:
            table[word] = 0
    return FullGroupElement(sub, 1, table, budget)


def shift(sub, budget=DEFAULT_BUDGET):
    """The shift itself, exponent 1 everywhere"""
    return FullGroupElement(sub, 0, {s: 1 for s in language(sub, 1, budget)}, budget)


def load_element(filename, sub, budget=DEFAULT_BUDGET):
    """
    Reads an element file: a line "radius w" followed by lines
    "word exponent", one per admissible word of length 2w+1

    Args:
        filename (str): path to the element file
        sub (Substitution): the subshift the words belong to
        budget (Budget): bounds the language check

    Returns:
        (FullGroupElement)
    """
    records = read_records(filename)
    if not records:
        raise ParseError("empty element file", filename)
    line, fields = records[0]
    if len(fields) != 2 or fields[0] != "radius":
        raise ParseError("first line must be 'radius w'", filename, line)
    radius = parse_int(fields[1], filename, line)
    table = {}
    for line, fields in records[1:]:
        if len(fields) != 2:
            raise ParseError("expected 'word exponent'", filename, line)
        word, exponent = fields
        if len(word) != 2 * radius + 1:
            raise ParseError("word {!r} does not have length {}".format(
                word, 2 * radius + 1), filename, line)
        if word in table:
            raise ParseError("duplicate word {!r}".format(word), filename, line)
        table[word] = parse_int(exponent, filename, line)
    try:
        return FullGroupElement(sub, radius, table, budget)
    except InputError as e:
        raise ParseError(str(e), filename)


def exponent_at(e, point, position):
    """Table entry for the centered word of the point at position"""
    word = point.window(position - e.radius, position + e.radius)
    try:
        return e.table[word]
    except KeyError:
        raise IncompleteTable("no exponent for {!r} at position {}".format(
            word, position))


def exponents(e, point, i, j):
    """
    Exponents at all positions i..j, reading the point once

    Returns:
        (numpy.ndarray) int64 array of length j - i + 1
    """
    width = 2 * e.radius + 1
    text = point.window(i - e.radius, j + e.radius)
    try:
        values = [e.table[text[k:k + width]] for k in range(j - i + 1)]
    except KeyError as error:
        raise IncompleteTable("no exponent for {} in [{}, {}]".format(error, i, j))
    return np.array(values, dtype=np.int64)


def apply(e, point, position):
    """φ(e)(position) = position + n(T^position x)"""
    return position + exponent_at(e, point, position)


def compose_elements(e2, e1):
    """
    The element y -> e2(e1(y)), tabulated at radius w1 + w2 + a1

    Args:
        e2 (FullGroupElement): applied second
        e1 (FullGroupElement): applied first

    Returns:
        (FullGroupElement)
    """
    if e1.sub != e2.sub:
        raise InputError("elements of different subshifts cannot be composed")
    w1, w2 = e1.radius, e2.radius
    radius = w1 + w2 + e1.bound
    budget = e1.budget
    table = {}
    for word in language(e1.sub, 2 * radius + 1, budget):
        n1 = e1.table[word[radius - w1:radius + w1 + 1]]
        center = radius + n1
        table[word] = n1 + e2.table[word[center - w2:center + w2 + 1]]
    return FullGroupElement(e1.sub, radius, table, budget).normalized()


def element_equal(e1, e2):
    """Whether the exponents agree on every admissible word of the larger window"""
    if e1.sub != e2.sub:
        raise InputError("elements of different subshifts cannot be compared")
    radius = max(e1.radius, e2.radius)
    return e1.pad(radius).table == e2.pad(radius).table


def check_bijection(e):
    """
    Builds the inverse table at radius w + a and certifies both
    compositions are the identity.  A target word with no source or
    two sources is a witness that e is not a bijection.

    Args:
        e (FullGroupElement): candidate bijection

    Returns:
        (FullGroupElement) the certified inverse
    """
    a, w = e.bound, e.radius
    radius = w + a
    table = {}
    for target in language(e.sub, 2 * radius + 1, e.budget):
        sources = []
        for n in range(-a, a + 1):
            # the source sits n positions to the left of the target
            center = radius - n
            if e.table[target[center - w:center + w + 1]] == n:
                sources.append(n)
        if len(sources) != 1:
            raise NotBijective(target, "never" if not sources else "twice", sources)
        table[target] = -sources[0]
    inverse = FullGroupElement(e.sub, radius, table, e.budget).normalized()
    identity = FullGroupElement.identity(e.sub, e.budget)
    for label, composed in [("inverse after element", compose_elements(inverse, e)),
                            ("element after inverse", compose_elements(e, inverse))]:
        if not element_equal(composed, identity):
            raise CertificationFailed("{} is not the identity".format(label),
                                      {"element": e.to_text()})
    return inverse


class OrbitPermutation(object):
    """
    The permutation φ(γ) of Z induced on the orbit of a point.

    Args:
        element (FullGroupElement): γ
        point (TwoSidedPoint): basepoint x
    """
    def __init__(self, element, point):
        self.element = element
        self.point = point

    def __call__(self, position):
        return apply(self.element, self.point, position)

    def images(self, i, j):
        return np.arange(i, j + 1) + exponents(self.element, self.point, i, j)

    def is_bijective_on(self, i, j):
        """
        Spot check: images of [i - a, j + a] are distinct and cover [i, j]
        """
        a = self.element.bound
        images = self.images(i - a, j + a)
        if len(np.unique(images)) != len(images):
            return False
        return bool(np.isin(np.arange(i, j + 1), images).all())


class LSequence(object):
    """
    Tuples of generator exponents along the orbit.

    Args:
        gens ([FullGroupElement]): generators γ_1, ..., γ_k
        start (int): first position
        values ([tuple]): exponent tuples at start, start + 1, ...
    """
    def __init__(self, gens, start, values):
        self.gens = gens
        self.start = start
        self.values = values

    @property
    def bound(self):
        return max(g.bound for g in self.gens)

    @property
    def stop(self):
        return self.start + len(self.values) - 1

    def __getitem__(self, position):
        if not self.start <= position <= self.stop:
            raise IndexError("position {} outside [{}, {}]".format(
                position, self.start, self.stop))
        return self.values[position - self.start]

    def window(self, i, j):
        return self.values[i - self.start:j - self.start + 1]

    def __len__(self):
        return len(self.values)


def l_sequence(gens, point, i, j):
    """
    Exponent tuples (t_1, ..., t_k) of the generators at positions i..j

    Returns:
        (LSequence)
    """
    columns = [exponents(g, point, i, j) for g in gens]
    values = list(zip(*[column.tolist() for column in columns]))
    return LSequence(gens, i, values)


def symmetric_generators(gens):
    """
    Generators together with their certified inverses, labelled by the
    symbols s_i and S_i; inverses equal to their generator are skipped

    Returns:
        ([(Symbol, FullGroupElement)])
    """
    symmetric = []
    for index, g in enumerate(gens, start=1):
        inverse = check_bijection(g)
        symmetric.append((Symbol(index), g))
        if not element_equal(inverse, g):
            symmetric.append((Symbol(index, inverted=True), inverse))
    return symmetric


def enumerate_elements(symmetric, r):
    """
    W^r: the distinct elements among products of at most r symmetric
    generators, breadth first, each with a shortest word

    Args:
        symmetric ([(Symbol, FullGroupElement)]): output of
            symmetric_generators
        r (int): word length

    Returns:
        ([ReducedWord], [FullGroupElement])
    """
    if not symmetric:
        raise InputError("at least one generator is required")
    first = symmetric[0][1]
    identity = FullGroupElement.identity(first.sub, first.budget)
    words, elements = [IDENTITY], [identity]
    seen = {identity.key(): 0}
    frontier = [0]
    for _ in range(r):
        next_frontier = []
        for index in frontier:
            for symbol, g in symmetric:
                product = compose_elements(g, elements[index])
                key = product.key()
                if key in seen:
                    continue
                seen[key] = len(elements)
                next_frontier.append(len(elements))
                words.append(concat(ReducedWord((symbol,)), words[index]))
                elements.append(product)
        frontier = next_frontier
    return words, elements


def separation_threshold(elements, point, budget=DEFAULT_BUDGET):
    """
    Least J such that every pair of distinct elements differs on the
    orbit at some position 0 < j <= J

    Returns:
        (int)
    """
    if len(elements) < 2:
        return 0
    hi = min(256, budget.scan_cap)
    while True:
        orbits = [np.arange(1, hi + 1) + exponents(e, point, 1, hi) for e in elements]
        threshold = 0
        for x, y in itertools.combinations(range(len(elements)), 2):
            differ = np.flatnonzero(orbits[x] != orbits[y])
            if not len(differ):
                break
            threshold = max(threshold, int(differ[0]) + 1)
        else:
            return threshold
        if hi >= budget.scan_cap:
            raise BudgetExceeded("scan_cap", budget.scan_cap,
                                 "separating positions of {} elements".format(
                                     len(elements)))
        hi = min(2 * hi, budget.scan_cap)


@forge_traced
class LefQuotient(object):
    """
    Finite permutation model of W^r on Z_n.

    Args:
        modulus (int): n
        radius (int): r
        point (TwoSidedPoint): basepoint
        words ([ReducedWord]): shortest generator word per element
        elements ([FullGroupElement]): W^r, identity first
        images ({str: FiniteMap}): label -> φ_r image
        mult (dict): (x, y) -> xy for x, y, xy in W^r
        bound (int): cocycle bound a of the symmetric generators
    """
    def __init__(self, modulus, radius, point, words, elements, images, mult,
                 bound):
        self.modulus = modulus
        self.radius = radius
        self.point = point
        self.words = words
        self.elements = elements
        self.images = images
        self.mult = mult
        self.bound = bound

    @property
    def labels(self):
        return [element_label(word) for word in self.words]

    def as_assignment(self):
        """
        Returns:
            (MapAssignment, [str], dict) the input of finactions.check_lef
        """
        return MapAssignment(IDENTITY_LABEL, self.images), self.labels, self.mult

    def __repr__(self):
        return "LefQuotient(n={}, r={}, |W^r|={})".format(
            self.modulus, self.radius, len(self.elements))


def element_label(word):
    return str(word) if word.length else IDENTITY_LABEL


def lef_quotient(gens, r, point=None, budget=DEFAULT_BUDGET, max_period=20):
    """
    Finds a modulus n and reduces the orbit permutations of W^r mod n.

    The scan starts above 10 a^r.  A modulus is accepted when the
    exponent sequence of the symmetric generators repeats with period n
    on [-2ar, 2ar] and distinct elements of W^r already differ at some
    position 0 < j < n.  The resulting maps are verified to be
    permutations, injective on W^r and multiplicative on W^r.

    Args:
        gens ([FullGroupElement]): generators, certified bijections
        r (int): radius of W^r
        point (TwoSidedPoint): basepoint, a fresh point by default
        budget (Budget): scan_cap bounds n
        max_period (int): periods excluded by the aperiodicity spot check

    Returns:
        (LefQuotient)
    """
    if r < 0:
        raise InputError("radius must be nonnegative, got {}".format(r))
    if not gens:
        raise InputError("at least one generator is required")
    sub = gens[0].sub
    if not sub.aperiodic:
        raise InputError("{} is declared periodic, the shift does not act freely".format(
            sub.name))
    point = point if point else TwoSidedPoint(sub, budget)
    span = 10 * max_period + 1
    if not check_aperiodic(point, max_period, -span, span):
        raise InputError("point of {} is periodic on [{}, {}]".format(
            sub.name, -span, span))

    labelled = symmetric_generators(gens)
    words, elements = enumerate_elements(labelled, r)
    symmetric = [g for _, g in labelled]
    a = max(g.bound for g in symmetric)
    reach = 2 * a * r
    FORGE_LOGGER.info("|W^%d| = %d, cocycle bound %d", r, len(elements), a)

    threshold = separation_threshold(elements, point, budget)
    start = max(10 * a ** r + 1, threshold + 1)
    sigma = l_sequence(symmetric, point, -reach, reach).values
    pattern = Pattern(sigma, offset=-reach)
    n, hi = None, max(4 * start, 1024)
    while n is None:
        hi = min(hi, budget.scan_cap)
        if start > hi:
            raise BudgetExceeded("scan_cap", budget.scan_cap,
                                 "no modulus for W^{} of {}".format(r, sub.name))
        values = l_sequence(symmetric, point, start - reach, hi + reach).values
        found = find_occurrences(values, pattern.word)
        if found:
            n = start + found[0]
        elif hi == budget.scan_cap:
            raise BudgetExceeded("scan_cap", budget.scan_cap,
                                 "no modulus for W^{} of {}".format(r, sub.name))
        else:
            start, hi = hi + 1, 2 * hi
    FORGE_LOGGER.info("modulus n = %d found for r = %d", n, r)

    labels = [element_label(word) for word in words]
    images = {}
    for label, word, element in zip(labels, words, elements):
        table = (np.arange(n) + exponents(element, point, 0, n - 1)) % n
        image = FiniteMap(table)
        if not image.is_bijection():
            values, counts = np.unique(table, return_counts=True)
            raise CertificationFailed(
                "image of {} is not a permutation of Z_{}".format(label, n),
                {"element": label, "hit_twice": int(values[counts > 1][0])})
        images[label] = image
    by_table = {}
    for label, image in images.items():
        other = by_table.setdefault(image, label)
        if other != label:
            raise CertificationFailed("W^{} is not embedded mod {}".format(r, n),
                                      {"elements": [other, label]})

    index = {element.key(): label for label, element in zip(labels, elements)}
    mult = {}
    pairs = list(itertools.product(range(len(elements)), repeat=2))
    for x, y in tqdm(pairs, desc="products in W^{}".format(r)):
        product = index.get(compose_elements(elements[x], elements[y]).key())
        if product is None:
            continue
        mult[(labels[x], labels[y])] = product
        composed = images[labels[x]].table[images[labels[y]].table]
        if not np.array_equal(images[product].table, composed):
            i = int(np.flatnonzero(images[product].table != composed)[0])
            raise CertificationFailed(
                "φ_r is not multiplicative mod {}".format(n),
                {"x": labels[x], "y": labels[y], "xy": product, "position": i})
    return LefQuotient(n, r, point, words, elements, images, mult, a)
