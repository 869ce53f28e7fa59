"""
Lamplighters over transitive actions of the free product Γ^k of k
copies of Z/2, and their finite models.

An element a·w of the lamplighter pairs a finite set a of lit vertices
with a reduced word w over a1, ..., ak; products follow
(a2·w2)(a1·w1) = (a2 + w2·a1, w2 w1).  Truncating the Schreier graph to
the ball B_n(x) gives the involutions α_n, which fix a boundary vertex
whenever the original image leaves the ball, and the finite lamplighter
{0,1}^{B_n(x)} ⋊ α_n(Γ^k).  The map τ sends a·w to a·α_n(w); this module
builds the balls and certifies that τ is injective and multiplicative
on short elements.
"""
import abc
import itertools
import threading
import time
from collections import deque

import numpy as np
from forge import tqdm
from forge.budget import DEFAULT_BUDGET
from forge.errors import (
    BudgetExceeded, InputError, NotInHl, NotInvolution, ParseError)
from forge.log import FORGE_LOGGER, forge_traced
from forge.report import Report
from forge.utils.parsers import load_json
from forge.words import (
    IDENTITY, ReducedWord, Symbol, concat, enumerate_ball, involutive_alphabet)

CAYLEY_PREFIX = "cayley:"


def vertex_text(v):
    if isinstance(v, ReducedWord):
        return str(v) if v.symbols else "e"
    return str(v)


class FPAction(metaclass=abc.ABCMeta):
    """
    Action of Γ^k on a countable vertex set with a basepoint x, given by
    one involution rule per generator a_i.

    Args:
        k (int): number of generators
        basepoint: the vertex x
        name (str): display name
    """
    has_distance_oracle = False

    def __init__(self, k, basepoint, name=None):
        if k < 1:
            raise InputError("need at least one generator, got k = {}".format(k))
        self.k = k
        self.basepoint = basepoint
        self.name = name or self.__class__.__name__
        self._inner = {}
        self._lock = threading.Lock()

    @abc.abstractmethod
    def apply(self, i, v):
        """
        Image of v under the generator a_i

        Args:
            i (int): generator index, 1 <= i <= k
            v: vertex

        Returns:
            the vertex a_i v
        """

    def neighbors(self, v):
        return [self.apply(i, v) for i in range(1, self.k + 1)]

    def distance(self, v):
        """Exact distance from the basepoint, for actions with an oracle"""
        raise NotImplementedError("{} has no distance oracle".format(self.name))

    def ball_size(self, n):
        """|B_n(x)|, for actions with an oracle"""
        raise NotImplementedError("{} has no distance oracle".format(self.name))

    def alphabet(self):
        return involutive_alphabet(self.k)

    def inner_ball(self, l, budget=DEFAULT_BUDGET):
        """Vertices of B_l(x) with their distances, memoized per radius"""
        if l not in self._inner:
            vertices = _ball_vertices(self, l, budget)
            with self._lock:
                self._inner.setdefault(l, vertices)
        return self._inner[l]

    def __repr__(self):
        return "FPAction({})".format(self.name)


class CayleyTreeAction(FPAction):
    """Γ^k acting on itself by left multiplication; vertices are reduced words"""
    has_distance_oracle = True

    def __init__(self, k):
        super(CayleyTreeAction, self).__init__(k, IDENTITY, "{}{}".format(CAYLEY_PREFIX, k))
        self._letters = {i: Symbol(i, involutive=True) for i in range(1, k + 1)}

    def apply(self, i, v):
        letter = self._letters[i]
        if v.symbols and v.symbols[0] == letter:
            return ReducedWord(v.symbols[1:])
        return ReducedWord((letter,) + v.symbols)

    def distance(self, v):
        return len(v)

    def ball_size(self, n):
        """1 + sum_{l=1..n} k (k-1)^(l-1)"""
        return 1 + sum(self.k * (self.k - 1) ** (level - 1) for level in range(1, n + 1))


class RuleTableAction(FPAction):
    """
    Action given by finite involution tables; vertices outside a table
    are fixed by that generator.

    Args:
        k (int): number of generators
        basepoint (int): the vertex x
        rules (dict): generator index -> {vertex: vertex}
        name (str): display name
    """
    def __init__(self, k, basepoint, rules, name=None):
        super(RuleTableAction, self).__init__(k, basepoint, name or "rule-table")
        unknown = [i for i in rules if not 1 <= i <= k]
        if unknown:
            raise InputError("rules for generators {} outside 1..{}".format(unknown, k))
        self.rules = {i: dict(rules.get(i, {})) for i in range(1, k + 1)}
        for i, table in self.rules.items():
            for v, u in table.items():
                if self.apply(i, u) != v:
                    raise NotInvolution("a{} sends {} to {} but {} to {}".format(
                        i, v, u, u, self.apply(i, u)))

    def apply(self, i, v):
        return self.rules[i].get(v, v)


def load_rule_table(filename):
    """
    Reads a rule-table action: JSON with "k", "basepoint", "rules"
    ({"a1": {vertex: vertex}, ...}) and "extension" (only "fixed")

    Returns:
        (RuleTableAction)
    """
    data = load_json(filename, required=("k", "basepoint", "rules"))
    if data.get("extension", "fixed") != "fixed":
        raise ParseError("unsupported extension rule {!r}".format(data["extension"]),
                         filename)
    try:
        rules = {}
        for token, table in data["rules"].items():
            symbol = Symbol.parse(token)
            if not symbol.involutive:
                raise InputError("rule tables are keyed by a_i, got {!r}".format(token))
            rules[symbol.generator_id] = {int(v): int(u) for v, u in table.items()}
        return RuleTableAction(int(data["k"]), int(data["basepoint"]), rules, name=filename)
    except (ParseError, NotInvolution):
        raise
    except (InputError, TypeError, ValueError) as e:
        raise ParseError(str(e), filename)


def parse_action_spec(spec):
    """
    Args:
        spec (str): "cayley:k" or a rule-table file

    Returns:
        (FPAction)
    """
    if spec.startswith(CAYLEY_PREFIX):
        try:
            k = int(spec[len(CAYLEY_PREFIX):])
        except ValueError:
            raise InputError("bad action spec {!r}".format(spec))
        return CayleyTreeAction(k)
    return load_rule_table(spec)


def _check_word(action, word):
    if word.mode not in (None, "involutive"):
        raise InputError("lamplighter words use a_i letters, got {}".format(word))
    for symbol in word:
        if symbol.generator_id > action.k:
            raise InputError("{} is not a generator of a {}-generator action".format(
                symbol, action.k))


def act(action, word, v):
    """α(w)(v), letters applied right to left"""
    _check_word(action, word)
    for symbol in reversed(word.symbols):
        v = action.apply(symbol.generator_id, v)
    return v


def explore(action, limit):
    """
    Breadth-first traversal of the Schreier graph from the basepoint

    Args:
        action (FPAction): the action
        limit (int): maximal number of vertices visited

    Yields:
        (vertex, distance) pairs
    """
    seen = {action.basepoint}
    queue = deque([(action.basepoint, 0)])
    visited = 0
    while queue and visited < limit:
        v, d = queue.popleft()
        visited += 1
        yield v, d
        for u in action.neighbors(v):
            if u not in seen:
                seen.add(u)
                queue.append((u, d + 1))


class BallAction(object):
    """
    The truncated action α_n on B_n(x).  Balls larger than the vertex
    cap stay lazy when the action has an exact distance oracle; lazy
    balls answer membership and α_n queries without listing vertices.

    Args:
        action (FPAction): the action α
        n (int): radius
        budget (Budget): vertex_cap and probe_cap
        lazy (bool): never materialize when the action has an oracle
    """
    def __init__(self, action, n, budget=DEFAULT_BUDGET, lazy=False):
        if n < 0:
            raise InputError("radius must be nonnegative, got {}".format(n))
        self.action = action
        self.n = n
        self.budget = budget
        self.lazy = False
        self._boundary_distance = None
        if action.has_distance_oracle and (lazy or action.ball_size(n) > budget.vertex_cap):
            self.lazy = True
            FORGE_LOGGER.debug("ball of radius %d around %s kept lazy", n, action.name)
            return
        distances = {action.basepoint: 0}
        order = [action.basepoint]
        frontier = [action.basepoint]
        for d in range(1, n + 1):
            layer = []
            for v in frontier:
                for u in action.neighbors(v):
                    if u not in distances:
                        distances[u] = d
                        layer.append(u)
            order.extend(layer)
            frontier = layer
            if len(order) > budget.vertex_cap:
                budget.check("vertex_cap", len(order),
                             "ball of radius {} in {}".format(n, action.name))
        self.vertices = order
        self.distances = distances
        self.index = {v: i for i, v in enumerate(order)}
        self.tables = {}
        boundary = set()
        for i in range(1, action.k + 1):
            table = np.arange(len(order), dtype=np.int64)
            for j, v in enumerate(order):
                u = action.apply(i, v)
                if action.apply(i, u) != v:
                    raise NotInvolution("a{} is not an involution at {}".format(
                        i, vertex_text(v)))
                if u in self.index:
                    table[j] = self.index[u]
                else:
                    boundary.add(v)
            if not np.array_equal(table[table], np.arange(len(order))):
                raise NotInvolution("truncation of a{} is not an involution".format(i))
            table.setflags(write=False)
            self.tables[i] = table
        self.boundary = boundary

    @property
    def size(self):
        if self.lazy:
            return self.action.ball_size(self.n)
        return len(self.vertices)

    def contains(self, v):
        if self.lazy:
            return self.action.distance(v) <= self.n
        return v in self.index

    def distance(self, v):
        """d(x, v) for v in the ball"""
        if not self.contains(v):
            raise InputError("{} is not in B_{}".format(vertex_text(v), self.n))
        return self.action.distance(v) if self.lazy else self.distances[v]

    def apply_n(self, i, v):
        if not self.contains(v):
            raise InputError("{} is not in B_{}".format(vertex_text(v), self.n))
        u = self.action.apply(i, v)
        return u if self.contains(u) else v

    def act_n(self, word, v):
        """α_n(w)(v), letters applied right to left"""
        _check_word(self.action, word)
        for symbol in reversed(word.symbols):
            v = self.apply_n(symbol.generator_id, v)
        return v

    def permutation(self, word):
        """α_n(w) as an index table over self.vertices"""
        if self.lazy:
            raise InputError("lazy balls have no permutation tables")
        _check_word(self.action, word)
        table = np.arange(len(self.vertices), dtype=np.int64)
        for symbol in reversed(word.symbols):
            table = self.tables[symbol.generator_id][table]
        return table

    def boundary_distance(self, v):
        """
        d(v, ∂B_n(x)), exact on materialized balls and the lower bound
        n - d(x, v) on lazy ones
        """
        if self.lazy:
            return self.n - self.distance(v)
        if self._boundary_distance is None:
            distances = {b: 0 for b in self.boundary}
            queue = deque(self.boundary)
            while queue:
                u = queue.popleft()
                for i in range(1, self.action.k + 1):
                    w = self.vertices[self.tables[i][self.index[u]]]
                    if w not in distances:
                        distances[w] = distances[u] + 1
                        queue.append(w)
            self._boundary_distance = distances
        return self._boundary_distance.get(v, float("inf"))

    def probe(self, limit=None):
        """Vertices of the ball in breadth-first order, at most limit of them"""
        limit = self.budget.probe_cap if limit is None else limit
        if not self.lazy:
            return iter(self.vertices[:limit])
        return (v for v, _ in itertools.takewhile(
            lambda pair: pair[1] <= self.n, explore(self.action, limit)))

    def moved_point(self, word):
        """
        Some v with α_n(w)(v) != v, or None if α_n(w) is the identity.
        Lazy balls raise BudgetExceeded when the probe cap is spent before
        the whole ball is seen.
        """
        if not self.lazy:
            moved = np.flatnonzero(self.permutation(word) != np.arange(len(self.vertices)))
            return self.vertices[moved[0]] if len(moved) else None
        count = 0
        for v in self.probe():
            count += 1
            if self.act_n(word, v) != v:
                return v
        if count == self.size:
            return None
        raise BudgetExceeded("probe_cap", self.budget.probe_cap,
                             "no point moved by {} among {} probed".format(word, count))

    def __repr__(self):
        return "BallAction({}, n={}, {})".format(
            self.action.name, self.n, "lazy" if self.lazy else "{} vertices".format(
                self.size))


def ball(action, n, budget=DEFAULT_BUDGET, lazy=False):
    """
    The ball B_n(x) with its certified involutions α_n

    Returns:
        (BallAction)
    """
    return BallAction(action, n, budget, lazy)


class LampElement(object):
    """
    Element a·w of the lamplighter: a finite set of lit vertices and a
    reduced word over a_1, ..., a_k.
    """
    def __init__(self, support=(), word=IDENTITY):
        if word.mode not in (None, "involutive"):
            raise InputError("lamplighter words use a_i letters, got {}".format(word))
        self.support = frozenset(support)
        self.word = word

    @classmethod
    def identity(cls):
        return cls()

    def is_identity(self):
        return not self.support and self.word.is_identity()

    def __eq__(self, other):
        return (isinstance(other, LampElement) and self.support == other.support
                and self.word == other.word)

    def __hash__(self):
        return hash((self.support, self.word))

    def __str__(self):
        lit = ",".join(sorted(vertex_text(v) for v in self.support))
        return "{{{}}}.{}".format(lit, vertex_text(self.word))

    def __repr__(self):
        return "LampElement({})".format(self)


def lamp_mul(e2, e1, action):
    """
    (a2·w2)(a1·w1) = (a2 + w2·a1, w2 w1)

    Args:
        e2 (LampElement): left factor
        e1 (LampElement): right factor
        action (FPAction): the action α

    Returns:
        (LampElement)
    """
    translated = {act(action, e2.word, v) for v in e1.support}
    return LampElement(e2.support.symmetric_difference(translated),
                       concat(e2.word, e1.word))


def lamp_eval(e, kappa, p, action):
    """
    (a·w)(κ) at p: a(p) + κ(w^-1 p) mod 2

    Args:
        e (LampElement): the element
        kappa (set): vertices where the configuration is 1
        p: vertex

    Returns:
        (int) 0 or 1
    """
    return int((p in e.support) != (act(action, e.word.inverse(), p) in kappa))


def lamp_apply(e, kappa, action):
    """The whole configuration (a·w)(κ) as the set of lit vertices"""
    moved = {act(action, e.word, q) for q in kappa}
    return frozenset(e.support.symmetric_difference(moved))


class FiniteLampElement(object):
    """
    Element of {0,1}^{B_n(x)} ⋊ α_n(Γ^k): lit vertices in the ball and a
    word standing for its α_n-permutation.
    """
    def __init__(self, ball_action, support=(), word=IDENTITY):
        support = frozenset(support)
        outside = [v for v in support if not ball_action.contains(v)]
        if outside:
            raise InputError("lit vertices {} lie outside B_{}".format(
                [vertex_text(v) for v in outside], ball_action.n))
        _check_word(ball_action.action, word)
        self.ball = ball_action
        self.support = support
        self.word = word

    def __mul__(self, other):
        if other.ball is not self.ball:
            raise InputError("elements of different finite lamplighters")
        moved = {self.ball.act_n(self.word, v) for v in other.support}
        return FiniteLampElement(self.ball, self.support.symmetric_difference(moved),
                                 concat(self.word, other.word))

    def bits(self):
        if self.ball.lazy:
            raise InputError("lazy balls have no bit tables")
        bits = np.zeros(len(self.ball.vertices), dtype=np.uint8)
        for v in self.support:
            bits[self.ball.index[v]] = 1
        return bits

    def permutation(self):
        return self.ball.permutation(self.word)

    def apply_all(self, configs):
        """
        Images of 0/1 configurations on the ball

        Args:
            configs (numpy.ndarray): one configuration per row, columns
                indexed like ball.vertices

        Returns:
            (numpy.ndarray) rows κ' with κ'(p) = bits(p) + κ(w^-1 p)
        """
        configs = np.atleast_2d(np.asarray(configs, dtype=np.uint8))
        inverse = np.argsort(self.permutation())
        return configs[:, inverse] ^ self.bits()[None, :]

    def equals(self, other):
        """
        Equality in the finite lamplighter: same lit vertices and the same
        α_n-permutation, certified symbolically for equal words and by a
        moved point of α_n(u^-1 v) otherwise
        """
        if self.support != other.support:
            return False
        if self.word == other.word:
            return True
        return self.ball.moved_point(concat(self.word.inverse(), other.word)) is None

    def is_identity(self):
        return self.equals(FiniteLampElement(self.ball))

    def __repr__(self):
        return "FiniteLampElement({{{}}}.{}, n={})".format(
            ",".join(sorted(vertex_text(v) for v in self.support)),
            vertex_text(self.word), self.ball.n)


def in_hl(action, l, e, budget=DEFAULT_BUDGET):
    """Whether |w| <= l and the lit vertices lie in B_l(x)"""
    return _hl_violation(action, l, e, budget) is None


def _hl_violation(action, l, e, budget=DEFAULT_BUDGET):
    if len(e.word) > l:
        return "word {} is longer than {}".format(vertex_text(e.word), l)
    if action.has_distance_oracle:
        outside = [v for v in e.support if action.distance(v) > l]
    else:
        inner = action.inner_ball(l, budget)
        outside = [v for v in e.support if v not in inner]
    if outside:
        return "lit vertices {} lie outside B_{}".format(
            sorted(vertex_text(v) for v in outside), l)
    return None


def _ball_vertices(action, l, budget):
    vertices = {}
    for v, d in explore(action, budget.vertex_cap + 1):
        if d > l:
            return vertices
        vertices[v] = d
    budget.check("vertex_cap", len(vertices) + 1, "ball of radius {}".format(l))
    return vertices


def tau(ball_action, l, e, budget=DEFAULT_BUDGET):
    """
    τ(a·w) = a·α_n(w) for a·w in H_l

    Args:
        ball_action (BallAction): the finite model of radius n >= l
        l (int): size of the window H_l
        e (LampElement): element of H_l

    Returns:
        (FiniteLampElement)
    """
    if ball_action.n < l:
        raise InputError("need n >= l, got n = {}, l = {}".format(ball_action.n, l))
    violation = _hl_violation(ball_action.action, l, e, budget)
    if violation:
        raise NotInHl("{} is not in H_{}: {}".format(e, l, violation))
    return FiniteLampElement(ball_action, e.support, e.word)


def hl_supports(action, l, mode="exhaustive", seed=0, samples=64, max_support=2,
                budget=DEFAULT_BUDGET):
    """
    Lit sets used to enumerate H_l: all subsets of B_l(x) with at most
    max_support vertices, or random subsets in sampled mode

    Returns:
        ([frozenset])
    """
    inner = list(action.inner_ball(l, budget))
    if mode == "exhaustive":
        supports = [frozenset(c) for size in range(max_support + 1)
                    for c in itertools.combinations(inner, size)]
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        supports = {frozenset()}
        for _ in range(samples):
            mask = rng.integers(0, 2, len(inner)).astype(bool)
            supports.add(frozenset(v for v, lit in zip(inner, mask) if lit))
        supports = sorted(supports, key=lambda s: (len(s), sorted(map(vertex_text, s))))
    else:
        raise InputError("mode is 'exhaustive' or 'sampled', got {!r}".format(mode))
    return supports


def _separated_witness(ball_action, word, l, action):
    """y with α(w)y != y, d(y, ∂B_n) > l and d(y, B_l(x)) > l"""
    for y in ball_action.probe():
        d = ball_action.distance(y)
        if max(0, d - l) <= l or ball_action.boundary_distance(y) <= l:
            continue
        if act(action, word, y) != y and ball_action.act_n(word, y) != y:
            return y
    return None


@forge_traced
class EmbeddingVerifier(object):
    """
    Checks injectivity and multiplicativity of τ on H_l at radius n.

    Args:
        action (FPAction): the action
        l (int): window size
        n (int): ball radius, n >= l
        mode (str): "exhaustive" or "sampled" lit sets
        seed (int): seed for sampled mode
        samples (int): number of sampled lit sets
        budget (Budget): caps for balls, probes and enumerations
        lazy (bool): keep the ball lazy when the action has an oracle
    """
    def __init__(self, action, l, n, mode="exhaustive", seed=0, samples=64,
                 budget=DEFAULT_BUDGET, lazy=False):
        if l < 0:
            raise InputError("l must be nonnegative, got {}".format(l))
        if n < l:
            raise InputError("need n >= l, got n = {}, l = {}".format(n, l))
        self.action = action
        self.l = l
        self.n = n
        self.mode = mode
        self.seed = seed
        self.budget = budget
        self.words = enumerate_ball(action.alphabet(), l, budget)
        self.supports = hl_supports(action, l, mode, seed, samples, budget=budget)
        self.ball = ball(action, n, budget, lazy)

    def report(self):
        start = time.time()
        report = Report("lamp-embed", {
            "action": self.action.name, "l": self.l, "n": self.n,
            "mode": self.mode, "seed": self.seed,
            "ball": "lazy" if self.ball.lazy else len(self.ball.vertices)})
        self.check_injective(report)
        self.check_pairwise(report)
        self.check_multiplicative(report)
        report.duration = time.time() - start
        FORGE_LOGGER.info("%s l=%d n=%d: %d checks, %d failures", self.action.name,
                          self.l, self.n, len(report.checks), len(report.failures))
        return report

    def check_injective(self, report):
        lit = sum(1 for s in self.supports if s) * len(self.words)
        report.add("injective(lit)", True, lit)
        for word in self.words:
            if word.is_identity():
                continue
            certificate = None
            if _separated_witness(self.ball, word, self.l, self.action) is not None:
                certificate = "separated-witness"
            elif self.ball.moved_point(word) is not None:
                certificate = "moved-point"
            report.add("injective({})".format(word), certificate is not None,
                       certificate, None if certificate else {
                           "word": str(word), "n": self.n,
                           "reason": "α_n(w) is the identity on B_n"})

    def check_pairwise(self, report):
        checked, failure, seen = 0, None, {}
        for u, v in itertools.combinations(self.words, 2):
            z = concat(u.inverse(), v)
            if z not in seen:
                seen[z] = self.ball.moved_point(z) is not None
            checked += 1
            if not seen[z] and failure is None:
                failure = {"u": str(u), "v": str(v), "n": self.n}
        report.add("pairwise_injective", failure is None, checked, failure)

    def check_multiplicative(self, report):
        self.budget.check("enumeration_cap", (len(self.words) * len(self.supports)) ** 2,
                          "pairs in H_{}".format(self.l))
        pairs = [(w2, w1) for w2 in self.words for w1 in self.words
                 if len(concat(w2, w1)) <= self.l]
        for w2, w1 in tqdm(pairs, desc="multiplicativity"):
            checked, failure = 0, None
            for a2, a1 in itertools.product(self.supports, repeat=2):
                e2, e1 = LampElement(a2, w2), LampElement(a1, w1)
                product = lamp_mul(e2, e1, self.action)
                if not in_hl(self.action, self.l, product, self.budget):
                    continue
                checked += 1
                left = tau(self.ball, self.l, e2) * tau(self.ball, self.l, e1)
                right = tau(self.ball, self.l, product)
                if not left.equals(right) and failure is None:
                    failure = {"e2": str(e2), "e1": str(e1), "n": self.n}
            report.add("multiplicative({},{})".format(vertex_text(w2), vertex_text(w1)),
                       failure is None, checked, failure)


def verify_embedding(action, l, n, mode="exhaustive", seed=0, samples=64,
                     budget=DEFAULT_BUDGET, lazy=False):
    """
    Certifies that τ: H_l -> L^n_k is injective and multiplicative

    Args:
        action (FPAction): transitive action of Γ^k
        l (int): window size
        n (int): ball radius, n >= l
        mode (str): "exhaustive" or "sampled"
        seed (int): seed for sampled lit sets
        samples (int): number of sampled lit sets
        budget (Budget): caps
        lazy (bool): verify on a lazy ball when the action has an oracle

    Returns:
        (Report)
    """
    return EmbeddingVerifier(action, l, n, mode, seed, samples, budget, lazy).report()


def embedding_threshold(action, l, n_max, mode="exhaustive", seed=0,
                        budget=DEFAULT_BUDGET):
    """
    Least n* >= l such that verify_embedding passes for every n in
    [n*, n_max], or None if it fails at n_max.  Actions with a distance
    oracle are verified on lazy balls throughout the scan.

    Returns:
        (int or None)
    """
    threshold = None
    lazy = action.has_distance_oracle
    for n in tqdm(range(n_max, l - 1, -1), desc="threshold"):
        if not verify_embedding(action, l, n, mode, seed, budget=budget, lazy=lazy).passed:
            break
        threshold = n
    FORGE_LOGGER.info("%s l=%d: threshold %s up to n=%d", action.name, l, threshold, n_max)
    return threshold


def find_displacing(action, vertices, budget=DEFAULT_BUDGET):
    """
    Shortest word g, lexicographically first among its length, with
    gS ∩ S = ∅

    Args:
        action (FPAction): the action
        vertices (iterable): the finite set S

    Returns:
        (ReducedWord)
    """
    targets = set(vertices)
    if not targets:
        return IDENTITY
    for r in range(1, budget.word_length_cap + 1):
        for word in enumerate_ball(action.alphabet(), r, budget):
            if len(word) != r:
                continue
            if targets.isdisjoint(act(action, word, v) for v in targets):
                FORGE_LOGGER.debug("%s displaces %d vertices", word, len(targets))
                return word
    raise BudgetExceeded("word_length_cap", budget.word_length_cap,
                         "no displacing word for {} vertices".format(len(targets)))


def moved_points(action, word, count, budget=DEFAULT_BUDGET):
    """
    At least count distinct vertices moved by α(w), found breadth-first
    from the basepoint

    Returns:
        ([vertex])
    """
    if word.is_identity():
        raise InputError("the empty word moves nothing")
    found = []
    for v, _ in explore(action, budget.probe_cap):
        if act(action, word, v) != v:
            found.append(v)
            if len(found) >= count:
                return found
    raise BudgetExceeded("probe_cap", budget.probe_cap,
                         "found {} of {} points moved by {}".format(len(found), count, word))
