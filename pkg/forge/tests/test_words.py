import unittest

from hypothesis import given, settings, strategies as st
from forge.budget import Budget
from forge.errors import BudgetExceeded, InputError, MixedAlphabet
from forge.words import (
    Symbol, ReducedWord, IDENTITY, reduce, concat, inverse, commutator,
    parse_word, free_alphabet, involutive_alphabet, enumerate_ball, ball_size)


def naive_reduce(tokens):
    """Repeated full scans until no cancellation is left"""
    tokens = list(tokens)
    changed = True
    while changed:
        changed = False
        for i in range(len(tokens) - 1):
            if tokens[i].cancels(tokens[i + 1]):
                del tokens[i:i + 2]
                changed = True
                break
    return tokens


free_tokens = st.lists(st.sampled_from(free_alphabet(3)), max_size=12)
involutive_tokens = st.lists(st.sampled_from(involutive_alphabet(3)), max_size=12)
free_words = free_tokens.map(reduce)


class SymbolTest(unittest.TestCase):
    def test_rendering(self):
        self.assertEqual(str(Symbol(1)), "s1")
        self.assertEqual(str(Symbol(2, inverted=True)), "S2")
        self.assertEqual(str(Symbol(3, involutive=True)), "a3")

    def test_invalid(self):
        self.assertRaises(InputError, Symbol, 0)
        self.assertRaises(InputError, Symbol, 1, True, True)
        self.assertRaises(InputError, Symbol.parse, "x1")

    def test_inverse(self):
        self.assertEqual(Symbol(1).inverse(), Symbol(1, inverted=True))
        a1 = Symbol(1, involutive=True)
        self.assertEqual(a1.inverse(), a1)


class ReduceTest(unittest.TestCase):
    def test_examples(self):
        s1, S1, s2 = Symbol(1), Symbol(1, True), Symbol(2)
        self.assertEqual(reduce([s1, S1, s2]), ReducedWord((s2,)))
        a1 = Symbol(1, involutive=True)
        self.assertEqual(reduce([a1, a1]), IDENTITY)
        self.assertEqual(parse_word("s1 s2 S2 S1"), IDENTITY)

    def test_mixed(self):
        self.assertRaises(MixedAlphabet, reduce,
                          [Symbol(1), Symbol(1, involutive=True)])
        self.assertRaises(MixedAlphabet, concat,
                          parse_word("s1"), parse_word("a1"))
        # the identity is compatible with both modes
        self.assertEqual(concat(IDENTITY, parse_word("a1")), parse_word("a1"))

    @given(free_tokens)
    def test_free_against_naive(self, tokens):
        self.assertEqual(list(reduce(tokens).symbols), naive_reduce(tokens))

    @given(involutive_tokens)
    def test_involutive_against_naive(self, tokens):
        self.assertEqual(list(reduce(tokens).symbols), naive_reduce(tokens))

    @given(free_tokens)
    def test_idempotent(self, tokens):
        once = reduce(tokens)
        self.assertEqual(reduce(once.symbols), once)

    def test_text_format(self):
        word = parse_word("s1 S2 s1")
        self.assertEqual(str(word), "s1 S2 s1")
        self.assertEqual(parse_word(""), IDENTITY)
        self.assertEqual(word.mode, "free")
        self.assertEqual(parse_word("a1 a2").mode, "involutive")
        self.assertIsNone(IDENTITY.mode)


class GroupLawTest(unittest.TestCase):
    def test_concat_examples(self):
        self.assertEqual(concat(parse_word("s1"), parse_word("S1")), IDENTITY)
        self.assertEqual(concat(parse_word("a1 a2"), parse_word("a2 a1")),
                         IDENTITY)

    def test_inverse_examples(self):
        self.assertEqual(inverse(IDENTITY), IDENTITY)
        self.assertEqual(inverse(parse_word("s1 S2")), parse_word("s2 S1"))
        self.assertEqual(inverse(parse_word("a1 a2 a1")), parse_word("a1 a2 a1"))

    @settings(max_examples=100)
    @given(free_words)
    def test_inverse_cancels(self, word):
        self.assertEqual(concat(word, inverse(word)), IDENTITY)
        self.assertEqual(concat(inverse(word), word), IDENTITY)
        self.assertEqual(inverse(inverse(word)), word)

    @given(free_words, free_words, free_words)
    def test_associative(self, u, v, w):
        self.assertEqual(concat(concat(u, v), w), concat(u, concat(v, w)))

    def test_associative_exhaustive(self):
        ball = enumerate_ball(free_alphabet(1), 4)
        for u in ball:
            for v in ball:
                for w in ball[:9]:
                    self.assertEqual((u * v) * w, u * (v * w))

    def test_power_and_commutator(self):
        s1, s2 = parse_word("s1"), parse_word("s2")
        self.assertEqual(s1 ** 3, parse_word("s1 s1 s1"))
        self.assertEqual(s1 ** -2, parse_word("S1 S1"))
        self.assertEqual(commutator(s1, s2), parse_word("s1 s2 S1 S2"))
        self.assertEqual(commutator(s1, s1), IDENTITY)


class EnumerateBallTest(unittest.TestCase):
    def test_rank_one(self):
        self.assertEqual(enumerate_ball(free_alphabet(1), 1),
                         [IDENTITY, parse_word("s1"), parse_word("S1")])

    def test_generators_only(self):
        self.assertEqual(enumerate_ball([Symbol(1)], 1),
                         [IDENTITY, parse_word("s1"), parse_word("S1")])
        self.assertEqual(enumerate_ball([Symbol(1), Symbol(2)], 2),
                         enumerate_ball(free_alphabet(2), 2))

    def test_involutive(self):
        self.assertEqual(
            enumerate_ball(involutive_alphabet(2), 2),
            [parse_word(text) for text in ["", "a1", "a2", "a1 a2", "a2 a1"]])

    def test_counts(self):
        ball = enumerate_ball(free_alphabet(2), 3)
        self.assertEqual(len(ball), 53)
        self.assertEqual(len(set(ball)), 53)
        for m in range(1, 4):
            for r in range(4):
                self.assertEqual(len(enumerate_ball(free_alphabet(m), r)),
                                 ball_size(2 * m, r, False))
        for k in range(2, 5):
            for r in range(4):
                self.assertEqual(len(enumerate_ball(involutive_alphabet(k), r)),
                                 ball_size(k, r, True))

    def test_brute_force(self):
        # every token sequence of length <= 3 reduces into the ball
        alphabet = free_alphabet(2)
        expected = {IDENTITY}
        layer = [[]]
        for _ in range(3):
            layer = [tokens + [s] for tokens in layer for s in alphabet]
            expected.update(reduce(tokens) for tokens in layer)
        self.assertEqual(set(enumerate_ball(alphabet, 3)), expected)

    def test_order(self):
        ball = enumerate_ball(free_alphabet(2), 2)
        self.assertEqual(ball, sorted(ball))

    def test_budget(self):
        self.assertRaises(BudgetExceeded, enumerate_ball, free_alphabet(2), 5,
                          Budget(enumeration_cap=100))
        self.assertRaises(InputError, enumerate_ball, free_alphabet(1), -1)


if __name__ == '__main__':
    unittest.main()
