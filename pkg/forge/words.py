"""
Exact word arithmetic in free groups F_m and in free products of
order-2 cyclic groups.

Words are immutable and always reduced.  A word knows its alphabet
mode ("free" for s1, S1, ... and "involutive" for a1, a2, ...), the
empty word is compatible with both.  Text format: whitespace separated
tokens, "s1 S2 s1" or "a1 a2 a1", capital S for inverses, "" for the
identity.
"""
import re

from forge.budget import DEFAULT_BUDGET
from forge.errors import InputError, MixedAlphabet

FREE = "free"
INVOLUTIVE = "involutive"

TOKEN_PATTERN = re.compile(r"^([sSa])(\d+)$")


class Symbol(object):
    """
    A generator or inverse generator.

    Args:
        generator_id (int): positive generator index
        inverted (bool): whether this is the inverse letter
        involutive (bool): whether the letter has order 2
    """
    __slots__ = ("generator_id", "inverted", "involutive")

    def __init__(self, generator_id, inverted=False, involutive=False):
        if not isinstance(generator_id, int) or generator_id < 1:
            raise InputError("generator id must be a positive integer, "
                             "got {!r}".format(generator_id))
        if involutive and inverted:
            raise InputError("involutive symbol a{} cannot be inverted".format(
                generator_id))
        self.generator_id = generator_id
        self.inverted = bool(inverted)
        self.involutive = bool(involutive)

    @property
    def mode(self):
        return INVOLUTIVE if self.involutive else FREE

    @property
    def sort_key(self):
        return (self.generator_id, self.inverted)

    def inverse(self):
        if self.involutive:
            return self
        return Symbol(self.generator_id, not self.inverted)

    def cancels(self, other):
        return (self.generator_id == other.generator_id
                and self.involutive == other.involutive
                and (self.involutive or self.inverted != other.inverted))

    @classmethod
    def parse(cls, token):
        match = TOKEN_PATTERN.match(token)
        if not match:
            raise InputError("bad word token {!r}".format(token))
        letter, index = match.group(1), int(match.group(2))
        if letter == "a":
            return cls(index, involutive=True)
        return cls(index, inverted=(letter == "S"))

    def __eq__(self, other):
        return (isinstance(other, Symbol)
                and self.generator_id == other.generator_id
                and self.inverted == other.inverted
                and self.involutive == other.involutive)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __hash__(self):
        return hash((self.generator_id, self.inverted, self.involutive))

    def __str__(self):
        if self.involutive:
            return "a{}".format(self.generator_id)
        return "{}{}".format("S" if self.inverted else "s", self.generator_id)

    __repr__ = __str__


def _mode_of(symbols):
    modes = {symbol.mode for symbol in symbols}
    if len(modes) > 1:
        raise MixedAlphabet("free and involutive symbols in one word: {}".format(
            " ".join(str(s) for s in symbols)))
    return modes.pop() if modes else None


class ReducedWord(object):
    """
    A cancellation-free word.  Use reduce() or parse_word() to build one
    from arbitrary tokens; the constructor trusts its input to be reduced.

    Args:
        symbols (tuple): reduced sequence of Symbol
    """
    __slots__ = ("symbols", "mode")

    def __init__(self, symbols=()):
        self.symbols = tuple(symbols)
        self.mode = _mode_of(self.symbols)

    @property
    def length(self):
        return len(self.symbols)

    def is_identity(self):
        return not self.symbols

    def inverse(self):
        return ReducedWord(tuple(s.inverse() for s in reversed(self.symbols)))

    def __mul__(self, other):
        return concat(self, other)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** -n
        result = ReducedWord()
        for _ in range(n):
            result = concat(result, self)
        return result

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, item):
        return self.symbols[item]

    def __eq__(self, other):
        return isinstance(other, ReducedWord) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __lt__(self, other):
        return ((len(self), [s.sort_key for s in self.symbols])
                < (len(other), [s.sort_key for s in other.symbols]))

    def __str__(self):
        return " ".join(str(s) for s in self.symbols)

    def __repr__(self):
        return "ReducedWord({!r})".format(str(self) if self.symbols else "ε")


IDENTITY = ReducedWord()


def reduce(tokens):
    """
    Free reduction of a token sequence.

    Args:
        tokens (iterable): Symbols, all free or all involutive

    Returns:
        (ReducedWord) the unique cancellation-free form
    """
    tokens = list(tokens)
    _mode_of(tokens)
    stack = []
    for token in tokens:
        if stack and stack[-1].cancels(token):
            stack.pop()
        else:
            stack.append(token)
    return ReducedWord(tuple(stack))


def concat(w1, w2):
    """Group product w1 w2"""
    if w1.mode and w2.mode and w1.mode != w2.mode:
        raise MixedAlphabet("cannot multiply {} word by {} word".format(
            w1.mode, w2.mode))
    return reduce(w1.symbols + w2.symbols)


def inverse(w):
    return w.inverse()


def commutator(u, v):
    """[u, v] = u v u^-1 v^-1"""
    return concat(concat(u, v), concat(u.inverse(), v.inverse()))


def parse_word(text):
    """
    Args:
        text (str): whitespace separated tokens, "" for the identity

    Returns:
        (ReducedWord) reduced form of the tokens
    """
    return reduce(Symbol.parse(token) for token in str(text).split())


def free_alphabet(m):
    """[s1, S1, ..., sm, Sm]"""
    return [Symbol(i, inverted) for i in range(1, m + 1)
            for inverted in (False, True)]


def involutive_alphabet(k):
    """[a1, ..., ak]"""
    return [Symbol(i, involutive=True) for i in range(1, k + 1)]


def ball_size(alphabet_size, r, involutive):
    """
    Number of reduced words of length at most r

    Args:
        alphabet_size (int): 2m for the free group of rank m, k for Γ^k
        r (int): radius
        involutive (bool): whether the letters have order 2

    Returns:
        (int) 1 + sum_{l=1..r} q (q-1)^(l-1) with q = alphabet_size
    """
    q = alphabet_size
    return 1 + sum(q * (q - 1) ** (length - 1) for length in range(1, r + 1))


def enumerate_ball(alphabet, r, budget=DEFAULT_BUDGET):
    """
    All reduced words of length at most r, ordered by length and then
    lexicographically on (generator_id, inverted).

    Args:
        alphabet (iterable): Symbols, all of one mode; a free alphabet is
            closed under inverses first
        r (int): radius, r >= 0
        budget (Budget): enumeration_cap bounds the number of words

    Returns:
        ([ReducedWord])
    """
    if r < 0:
        raise InputError("radius must be nonnegative, got {}".format(r))
    letters = sorted(set(alphabet))
    _mode_of(letters)
    involutive = bool(letters) and letters[0].involutive
    if not involutive:
        letters = sorted(set(letters) | {s.inverse() for s in letters})
    budget.check("enumeration_cap", ball_size(len(letters), r, involutive),
                 "ball of radius {} over {} letters".format(r, len(letters)))
    words = [IDENTITY]
    layer = [IDENTITY]
    for _ in range(r):
        next_layer = []
        for word in layer:
            last = word.symbols[-1] if word.symbols else None
            for letter in letters:
                if last is not None and last.cancels(letter):
                    continue
                next_layer.append(ReducedWord(word.symbols + (letter,)))
        words.extend(next_layer)
        layer = next_layer
    return words
