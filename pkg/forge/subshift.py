"""
Minimal substitution subshifts.

A Substitution maps every symbol to a nonempty word; a primitive one
generates a minimal subshift, which is the Cantor system the full group
elements of forge.fullgroup act on.  Symbols are single characters and
words are python strings.
"""
import math
import threading

import numpy as np
from forge.budget import DEFAULT_BUDGET
from forge.errors import InputError, NotInLanguage, ParseError
from forge.log import FORGE_LOGGER
from forge.utils.parsers import read_records

BUILTIN_SUBSTITUTIONS = {
    "fibonacci": ({"a": "ab", "b": "a"}, True),
    "thue-morse": ({"a": "ab", "b": "ba"}, True),
    "period-doubling": ({"a": "ab", "b": "aa"}, True),
    # (ab)^Z, primitive but periodic
    "periodic": ({"a": "ab", "b": "ab"}, False),
}


class Substitution(object):
    """
    Substitution on single-character symbols.

    Args:
        rules (dict): symbol -> nonempty word over the alphabet
        name (str): display name
        aperiodic (bool): declared aperiodicity, spot-checked by
            check_aperiodic on a point
        strict (bool): whether to reject non-primitive rules
    """
    def __init__(self, rules, name=None, aperiodic=True, strict=True):
        if not rules:
            raise InputError("a substitution needs at least one rule")
        for symbol, image in rules.items():
            if len(symbol) != 1:
                raise InputError("symbols are single characters, got {!r}".format(symbol))
            if not image:
                raise InputError("rule for {!r} has an empty image".format(symbol))
            unknown = set(image) - set(rules)
            if unknown:
                raise InputError("rule {} -> {} uses symbols {} without rules".format(
                    symbol, image, sorted(unknown)))
        self.rules = dict(rules)
        self.alphabet = sorted(rules)
        self.name = name if name else " ".join(
            "{}->{}".format(s, self.rules[s]) for s in self.alphabet)
        self.aperiodic = aperiodic
        self._languages = {}
        self._lock = threading.Lock()
        if strict and not is_primitive(self):
            raise InputError("substitution {} is not primitive".format(self.name))

    def apply(self, word):
        return "".join(self.rules[symbol] for symbol in word)

    def iterate(self, word, times):
        for _ in range(times):
            word = self.apply(word)
        return word

    def power(self, p):
        """The substitution σ^p"""
        return Substitution({s: self.iterate(s, p) for s in self.alphabet},
                            name="({})^{}".format(self.name, p),
                            aperiodic=self.aperiodic, strict=False)

    def incidence_matrix(self):
        """M[i, j] = number of occurrences of symbol j in the image of symbol i"""
        index = {symbol: i for i, symbol in enumerate(self.alphabet)}
        matrix = np.zeros((len(index), len(index)), dtype=np.int64)
        for symbol, image in self.rules.items():
            for target in image:
                matrix[index[symbol], index[target]] += 1
        return matrix

    def __eq__(self, other):
        return isinstance(other, Substitution) and self.rules == other.rules

    def __hash__(self):
        return hash(tuple(sorted(self.rules.items())))

    def __repr__(self):
        return "Substitution({})".format(self.name)


def is_primitive(sub):
    """
    Whether some power <= |A|^2 of the incidence matrix is positive

    Args:
        sub (Substitution): substitution to test

    Returns:
        (bool)
    """
    adjacency = (sub.incidence_matrix() > 0).astype(np.int64)
    current = adjacency
    for _ in range(len(sub.alphabet) ** 2):
        if current.all():
            return True
        current = ((current @ adjacency) > 0).astype(np.int64)
    return bool(current.all())


def get_substitution(name):
    """
    Built-in substitution by name, or one loaded from a rule file

    Args:
        name (str): "fibonacci", "thue-morse", "period-doubling",
            "periodic" or a path to a file of "symbol -> word" lines

    Returns:
        (Substitution)
    """
    if name in BUILTIN_SUBSTITUTIONS:
        rules, aperiodic = BUILTIN_SUBSTITUTIONS[name]
        return Substitution(rules, name=name, aperiodic=aperiodic)
    return load_substitution(name)


def load_substitution(filename):
    rules = {}
    for line, fields in read_records(filename):
        if len(fields) != 3 or fields[1] != "->":
            raise ParseError("expected 'symbol -> word'", filename, line)
        symbol, image = fields[0], fields[2]
        if symbol in rules:
            raise ParseError("second rule for {!r}".format(symbol), filename, line)
        rules[symbol] = image
    try:
        return Substitution(rules, name=filename)
    except InputError as e:
        raise ParseError(str(e), filename)


def factors(word, length):
    return {word[k:k + length] for k in range(len(word) - length + 1)}


def _two_letter_language(sub):
    language = set()
    for symbol in sub.alphabet:
        language |= factors(sub.rules[symbol], 2)
    frontier = set(language)
    while frontier:
        found = set()
        for word in frontier:
            found |= factors(sub.apply(word), 2)
        frontier = found - language
        language |= frontier
    return language


def language(sub, length, budget=DEFAULT_BUDGET):
    """
    All length-ℓ factors of the subshift.

    Two-letter factors are the closure of the factors of the rule images
    under substitution; longer factors are read off σ^k(u) for two-letter
    factors u, with k large enough that every σ^k(c) has length >= ℓ - 1.

    Args:
        sub (Substitution): primitive substitution
        length (int): factor length ℓ >= 1
        budget (Budget): language_cap bounds ℓ

    Returns:
        (frozenset) the admissible words of length ℓ
    """
    if length < 1:
        raise InputError("factor length must be positive, got {}".format(length))
    budget.check("language_cap", length, "factors of length {}".format(length))
    if length in sub._languages:
        return sub._languages[length]
    two = _two_letter_language(sub)
    if length == 1:
        result = frozenset(symbol for word in two for symbol in word)
    else:
        images = {symbol: symbol for symbol in sub.alphabet}
        stalled = 0
        while min(len(image) for image in images.values()) < length - 1:
            shortest = min(len(image) for image in images.values())
            images = {s: sub.apply(image) for s, image in images.items()}
            stalled = stalled + 1 if min(
                len(image) for image in images.values()) == shortest else 0
            if stalled > len(sub.alphabet) ** 2:
                raise InputError("substitution {} does not expand".format(sub.name))
        result = set()
        for word in two:
            result |= factors(images[word[0]] + images[word[1]], length)
        result = frozenset(result)
    with sub._lock:
        sub._languages[length] = result
    return result


def factor_complexity(sub, length, budget=DEFAULT_BUDGET):
    """Number of admissible words of the given length"""
    return len(language(sub, length, budget))


class Pattern(object):
    """
    A word anchored at an offset: the pattern matches a sequence at
    position p when the sequence reads word[k] at p + offset + k.

    Args:
        word (str or sequence): nonempty word
        offset (int): position of word[0] relative to the anchor
    """
    def __init__(self, word, offset=0):
        if len(word) == 0:
            raise InputError("patterns are nonempty")
        self.word = word
        self.offset = offset

    def __len__(self):
        return len(self.word)

    def __repr__(self):
        return "Pattern({!r}, offset={})".format(self.word, self.offset)


def find_occurrences(sequence, word):
    """
    Start indices of all occurrences of word in sequence, for strings
    as well as lists of hashable values
    """
    n = len(word)
    if isinstance(sequence, str):
        found, k = [], sequence.find(word)
        while k >= 0:
            found.append(k)
            k = sequence.find(word, k + 1)
        return found
    word = list(word)
    return [k for k in range(len(sequence) - n + 1)
            if sequence[k] == word[0] and list(sequence[k:k + n]) == word]


def _seed_pair(sub):
    """Least power p and seeds (l, r) giving a two-sided fixed point of σ^p"""
    max_power = math.lcm(*range(1, len(sub.alphabet) + 1))
    admissible = _two_letter_language(sub)
    for p in range(1, max_power + 1):
        if max_power % p:
            continue
        images = {s: sub.iterate(s, p) for s in sub.alphabet}
        for left in sub.alphabet:
            if images[left][-1] != left:
                continue
            for right in sub.alphabet:
                if images[right][0] == right and left + right in admissible:
                    return p, left, right
    raise InputError("no two-sided fixed point for {}".format(sub.name))


class TwoSidedPoint(object):
    """
    A point of the subshift, expanded lazily around the seeds (l, r):
    positions >= 0 read σ^{pn}(r) and negative positions read σ^{pn}(l)
    from the right.

    Args:
        sub (Substitution): primitive substitution
        budget (Budget): expansion_cap bounds |positions|
    """
    def __init__(self, sub, budget=DEFAULT_BUDGET):
        self.sub = sub
        self.budget = budget
        self.power, self.left_seed, self.right_seed = _seed_pair(sub)
        self._step = sub.power(self.power)
        self._right = self.right_seed
        self._left = self.left_seed
        self._lock = threading.Lock()

    @property
    def seed(self):
        return self.left_seed, self.right_seed

    def _expand(self, lo, hi):
        self.budget.check("expansion_cap", max(-lo, hi + 1, 0),
                          "window [{}, {}]".format(lo, hi))
        with self._lock:
            while len(self._right) <= hi:
                self._right = self._step.apply(self._right)
            while len(self._left) < -lo:
                self._left = self._step.apply(self._left)
            FORGE_LOGGER.debug("point expanded to [-%d, %d)",
                               len(self._left), len(self._right))
            return self._left, self._right

    def window(self, i, j):
        """
        Symbols at positions i..j

        Args:
            i (int): first position
            j (int): last position, i <= j

        Returns:
            (str)
        """
        if i > j:
            raise InputError("empty window [{}, {}]".format(i, j))
        left, right = self._left, self._right
        if len(right) <= j or len(left) < -i:
            left, right = self._expand(i, j)
        parts = []
        if i < 0:
            parts.append(left[len(left) + i:len(left) + min(j, -1) + 1])
        if j >= 0:
            parts.append(right[max(i, 0):j + 1])
        return "".join(parts)

    def symbol_at(self, i):
        return self.window(i, i)

    def __repr__(self):
        return "TwoSidedPoint({}, seed {}.{})".format(
            self.sub.name, self.left_seed, self.right_seed)


def occurrences(point, pattern, i, j):
    """
    Sorted anchors p in [i, j] at which the pattern matches the point

    Args:
        point (TwoSidedPoint): the point
        pattern (Pattern or str): pattern, a bare string is anchored at 0
        i (int): first anchor
        j (int): last anchor

    Returns:
        ([int])
    """
    if not isinstance(pattern, Pattern):
        pattern = Pattern(pattern)
    start = i + pattern.offset
    text = point.window(start, j + pattern.offset + len(pattern) - 1)
    return [i + k for k in find_occurrences(text, pattern.word)]


def repetitivity_window(sub, pattern, budget=DEFAULT_BUDGET):
    """
    A window length m such that every admissible word of length m
    contains the pattern, searched upward from 2|w| + 1.

    Args:
        sub (Substitution): primitive substitution
        pattern (Pattern or str): the pattern w
        budget (Budget): window_cap bounds m

    Returns:
        (int) certified m
    """
    word = pattern.word if isinstance(pattern, Pattern) else pattern
    if word not in language(sub, len(word), budget):
        raise NotInLanguage("{!r} is not a factor of {}".format(word, sub.name))
    m = 2 * len(word) + 1
    while True:
        budget.check("window_cap", m, "repetitivity window of {!r}".format(word))
        if all(word in candidate for candidate in language(sub, m, budget)):
            FORGE_LOGGER.debug("pattern %r recurs within %d symbols", word, m)
            return m
        m += 1


def check_aperiodic(point, max_period, i, j):
    """
    Whether no period p <= max_period matches the point on [i, j]; the
    range must be longer than 2 * max_period.

    Returns:
        (bool)
    """
    if j - i + 1 <= 2 * max_period:
        raise InputError("range [{}, {}] must exceed twice the period {}".format(
            i, j, max_period))
    text = point.window(i, j)
    for p in range(1, max_period + 1):
        if text[p:] == text[:-p]:
            FORGE_LOGGER.info("%s has period %d on [%d, %d]",
                              point.sub.name, p, i, j)
            return False
    return True
