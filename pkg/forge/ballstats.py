"""
Local statistics of finite labeled actions.

A LabeledAction is a directed graph on its carrier with an edge x -> f(x)
for every generator map f; an edge carries the set of generator symbols
mapping its tail to its head, and loops are allowed.  Balls around a root
are coded canonically, so that two balls get the same code exactly when
a root-preserving isomorphism matches edge label sets and vertex labels.
"""
import threading
from collections import Counter
from fractions import Fraction

import networkx as nx
import numpy as np
import pandas as pd
from forge.budget import DEFAULT_BUDGET
from forge.errors import BudgetExceeded, InputError, ParseError, RadiusMismatch
from forge.finactions import FiniteMap
from forge.log import FORGE_LOGGER
from forge.odometer import FiniteModel
from forge.report import format_rational
from forge.utils.parsers import load_json
from forge.words import Symbol


class LabeledAction(object):
    """
    Finite action of generator symbols on a carrier, with bit-string
    vertex labels of constant width.

    Args:
        generator_maps (dict): Symbol -> FiniteMap, maps need not be
            bijections
        vertex_labels ([str]): one bit string per vertex, all of the same
            width, or None for width 0
    """
    def __init__(self, generator_maps, vertex_labels=None):
        if not generator_maps:
            raise InputError("an action needs at least one generator")
        maps = dict(generator_maps)
        sizes = {image.size for image in maps.values()}
        if len(sizes) != 1:
            raise InputError("generator maps live on carriers of sizes {}".format(
                sorted(sizes)))
        size = sizes.pop()
        if vertex_labels is None:
            vertex_labels = [""] * size
        vertex_labels = [str(label) for label in vertex_labels]
        if len(vertex_labels) != size:
            raise InputError("{} labels for {} vertices".format(len(vertex_labels), size))
        if len({len(label) for label in vertex_labels}) > 1:
            raise InputError("vertex labels must have a common width")
        if any(set(label) - {"0", "1"} for label in vertex_labels):
            raise InputError("vertex labels are bit strings")
        self.generator_maps = maps
        self.vertex_labels = vertex_labels
        self.graph = _action_graph(maps, vertex_labels)
        self._balls = {}
        self._lock = threading.Lock()

    @property
    def size(self):
        return len(self.vertex_labels)

    @property
    def width(self):
        return len(self.vertex_labels[0]) if self.vertex_labels else 0

    @property
    def generators(self):
        return sorted(self.generator_maps)

    @classmethod
    def from_permutations(cls, tables, vertex_labels=None):
        """
        Args:
            tables (dict): generator token ("s1", Symbol) -> image list
            vertex_labels ([str]): optional labels

        Returns:
            (LabeledAction)
        """
        maps = {}
        for key, table in tables.items():
            symbol = key if isinstance(key, Symbol) else Symbol.parse(key)
            maps[symbol] = FiniteMap(table)
        return cls(maps, vertex_labels)

    def relabel(self, permutation):
        """
        Isomorphic copy in which vertex v is renamed permutation[v]

        Args:
            permutation ([int]): bijection of the carrier

        Returns:
            (LabeledAction)
        """
        permutation = np.asarray(permutation, dtype=np.int64)
        if sorted(permutation.tolist()) != list(range(self.size)):
            raise InputError("relabeling must be a permutation of the carrier")
        maps = {}
        for symbol, image in self.generator_maps.items():
            table = np.empty(self.size, dtype=np.int64)
            table[permutation] = permutation[image.table]
            maps[symbol] = FiniteMap(table)
        labels = [""] * self.size
        for v, label in enumerate(self.vertex_labels):
            labels[permutation[v]] = label
        return LabeledAction(maps, labels)

    def __repr__(self):
        return "LabeledAction({} generators on {} vertices, width {})".format(
            len(self.generator_maps), self.size, self.width)


def _action_graph(maps, vertex_labels):
    graph = nx.DiGraph()
    for v, label in enumerate(vertex_labels):
        graph.add_node(v, label=label)
    edges = {}
    for symbol, image in maps.items():
        for v in range(image.size):
            edges.setdefault((v, image(v)), set()).add(str(symbol))
    for (tail, head), labels in edges.items():
        graph.add_edge(tail, head, labels=tuple(sorted(labels)))
    return graph


class TrElement(object):
    """A labeled action with a distinguished root vertex"""
    def __init__(self, action, root):
        if not 0 <= root < action.size:
            raise InputError("root {} is not in the carrier of size {}".format(
                root, action.size))
        self.action = action
        self.root = root

    def ball(self, t):
        return ball_at(self.action, self.root, t)


class RootedBall(object):
    """
    The radius-t ball around a root, with its canonical code.

    Args:
        radius (int): t
        code (bytes): canonical serialization
        graph (networkx.DiGraph): the induced subgraph, vertices keep
            their ids in the action
        root (int): root vertex id
        probes (int): branch probes spent on the canonical form
    """
    def __init__(self, radius, code, graph, root, probes=0):
        self.radius = radius
        self.code = code
        self.graph = graph
        self.root = root
        self.probes = probes

    @property
    def size(self):
        return self.graph.number_of_nodes()

    def hex(self):
        return self.code.hex()

    def is_action_ball(self):
        """
        Whether every generator has in- and out-degree <= 1 at every
        vertex and each s-edge inside the ball is matched by an S-edge
        backwards when S is a generator too
        """
        out_degree, in_degree = Counter(), Counter()
        present = set()
        for tail, head, data in self.graph.edges(data=True):
            for label in data["labels"]:
                out_degree[(tail, label)] += 1
                in_degree[(head, label)] += 1
                present.add(label)
        if any(count > 1 for count in list(out_degree.values()) + list(in_degree.values())):
            return False
        for tail, head, data in self.graph.edges(data=True):
            for label in data["labels"]:
                inverse = str(Symbol.parse(label).inverse())
                if inverse not in present or inverse == label:
                    continue
                back = self.graph.get_edge_data(head, tail)
                if back is None or inverse not in back["labels"]:
                    return False
        return True

    def __eq__(self, other):
        return isinstance(other, RootedBall) and self.code == other.code

    def __hash__(self):
        return hash(self.code)

    def __repr__(self):
        return "RootedBall(radius={}, {} vertices)".format(self.radius, self.size)


def _refine(ball, colors):
    """Color refinement until the partition is stable; colors stay canonical"""
    while True:
        signatures = {}
        for v in ball.nodes:
            incident = [(0, data["labels"], colors[u])
                        for _, u, data in ball.out_edges(v, data=True)]
            incident.extend((1, data["labels"], colors[u])
                            for u, _, data in ball.in_edges(v, data=True))
            signatures[v] = (colors[v], tuple(sorted(incident)))
        ranks = {signature: i for i, signature in enumerate(sorted(set(signatures.values())))}
        refined = {v: ranks[signatures[v]] for v in ball.nodes}
        if len(ranks) == len(set(colors.values())):
            return refined
        colors = refined


def _serialize(ball, radius, order):
    index = {v: i for i, v in enumerate(order)}
    labels = ",".join(ball.nodes[v]["label"] for v in order)
    edges = sorted((index[tail], index[head], data["labels"])
                   for tail, head, data in ball.edges(data=True))
    text = "t={};n={};labels={};edges={}".format(
        radius, len(order), labels,
        "|".join("{}>{}:{}".format(i, j, ".".join(symbols)) for i, j, symbols in edges))
    return text.encode("ascii")


def _canonical_code(ball, radius, colors, probes):
    colors = _refine(ball, colors)
    cells = {}
    for v, color in colors.items():
        cells.setdefault(color, []).append(v)
    split = [color for color, members in cells.items() if len(members) > 1]
    if not split:
        return _serialize(ball, radius, sorted(ball.nodes, key=colors.get))
    target = min(split)
    best = None
    for v in cells[target]:
        probes[0] -= 1
        if probes[0] < 0:
            raise BudgetExceeded("probe_cap", probes[1],
                                 "canonical form of a ball with {} vertices".format(len(colors)))
        branch = {u: 2 * color for u, color in colors.items()}
        branch[v] = 2 * target - 1
        code = _canonical_code(ball, radius, branch, probes)
        if best is None or code < best:
            best = code
    return best


def ball_at(action, x, t, budget=DEFAULT_BUDGET):
    """
    The canonically coded ball of radius t around x, distances measured
    in the undirected graph of the action

    Args:
        action (LabeledAction): the action
        x (int): root vertex
        t (int): radius >= 0
        budget (Budget): probe_cap bounds the canonical form search

    Returns:
        (RootedBall)
    """
    if t < 0:
        raise InputError("radius must be nonnegative, got {}".format(t))
    if not 0 <= x < action.size:
        raise InputError("vertex {} is not in the carrier".format(x))
    key = (x, t)
    cached = action._balls.get(key)
    if cached is not None:
        budget.check("probe_cap", cached.probes,
                     "canonical form of a ball with {} vertices".format(cached.size))
        return cached
    ball = nx.ego_graph(action.graph, x, radius=t, undirected=True)
    distances = nx.single_source_shortest_path_length(
        ball.to_undirected(as_view=True), x)
    initial = sorted({(distances[v], ball.nodes[v]["label"]) for v in ball.nodes})
    ranks = {value: i for i, value in enumerate(initial)}
    colors = {v: ranks[(distances[v], ball.nodes[v]["label"])] for v in ball.nodes}
    probes = [budget.probe_cap, budget.probe_cap]
    code = _canonical_code(ball, t, colors, probes)
    rooted = RootedBall(t, code, ball, x, budget.probe_cap - probes[0])
    with action._lock:
        return action._balls.setdefault(key, rooted)


class BallDistribution(object):
    """
    Probability distribution on ball codes of one radius.

    Args:
        radius (int): t
        weights (dict): code (bytes) -> positive Fraction, summing to 1
    """
    def __init__(self, radius, weights):
        weights = {code: Fraction(weight) for code, weight in weights.items()}
        if any(weight <= 0 for weight in weights.values()):
            raise InputError("weights of a ball distribution are positive")
        if sum(weights.values()) != 1:
            raise InputError("weights sum to {}, not 1".format(sum(weights.values())))
        self.radius = radius
        self.weights = weights

    @property
    def support(self):
        return sorted(self.weights)

    def __getitem__(self, code):
        return self.weights.get(code, Fraction(0))

    def __len__(self):
        return len(self.weights)

    def as_dataframe(self):
        return pd.DataFrame([{"code": code.hex(), "weight": format_rational(weight)}
                             for code, weight in sorted(self.weights.items())],
                            columns=["code", "weight"])

    def to_text(self):
        return "".join("{} {}\n".format(code.hex(), format_rational(weight))
                       for code, weight in sorted(self.weights.items()))

    def dump(self, filename):
        with open(filename, "w") as f:
            f.write(self.to_text())

    def __eq__(self, other):
        return (isinstance(other, BallDistribution) and self.radius == other.radius
                and self.weights == other.weights)

    def __repr__(self):
        return "BallDistribution(radius={}, {} classes)".format(self.radius, len(self))


def ball_distribution(action, t, budget=DEFAULT_BUDGET):
    """
    Empirical distribution of ball_at(action, x, t) over uniformly
    random roots x

    Returns:
        (BallDistribution)
    """
    counts = Counter(ball_at(action, x, t, budget).code for x in range(action.size))
    FORGE_LOGGER.debug("%d ball classes of radius %d on %d vertices",
                       len(counts), t, action.size)
    return BallDistribution(t, {code: Fraction(count, action.size)
                                for code, count in counts.items()})


def tv_distance(first, second):
    """
    Total variation distance, exact

    Args:
        first (BallDistribution): D1
        second (BallDistribution): D2 of the same radius

    Returns:
        (Fraction)
    """
    if first.radius != second.radius:
        raise RadiusMismatch("distributions of radii {} and {}".format(
            first.radius, second.radius))
    codes = set(first.weights) | set(second.weights)
    return sum((abs(first[code] - second[code]) for code in codes), Fraction(0)) / 2


def rooted_distance(first, second, t_max, budget=DEFAULT_BUDGET):
    """
    1/2^k for the largest k <= t_max with isomorphic k-balls around the
    roots, 1 if the roots already differ and 0 if all balls up to t_max
    agree

    Args:
        first (TrElement): G
        second (TrElement): H
        t_max (int): exploration cap

    Returns:
        (Fraction)
    """
    if t_max < 0:
        raise InputError("t_max must be nonnegative, got {}".format(t_max))
    for k in range(t_max + 1):
        if ball_at(first.action, first.root, k, budget).code != \
                ball_at(second.action, second.root, k, budget).code:
            return Fraction(1) if k == 0 else Fraction(1, 2 ** (k - 1))
    return Fraction(0)


def random_action(rng, size, generators=1, width=0, bijective=False):
    """
    A random labeled action

    Args:
        rng (numpy.random.Generator): source of randomness
        size (int): carrier size
        generators (int): number of generators s1, s2, ...
        width (int): label width
        bijective (bool): whether to draw permutations

    Returns:
        (LabeledAction)
    """
    tables = {}
    for i in range(1, generators + 1):
        table = rng.permutation(size) if bijective else rng.integers(0, size, size)
        tables[Symbol(i)] = table
    labels = ["".join(str(bit) for bit in rng.integers(0, 2, width)) for _ in range(size)]
    return LabeledAction.from_permutations(tables, labels)


def odometer_action(n, k):
    """
    The odometer model on Z_{2^n} (v -> v + 1) labelled by the first k
    binary digits of each vertex
    """
    model = FiniteModel(n, k)
    return LabeledAction({Symbol(1): model.shift_map()}, model.labels())


def load_action(filename):
    """
    Reads an action file: JSON with "carrier", "generators", "images"
    (generator -> image list) and optional "labels" (bit strings)

    Args:
        filename (str): path or bundled name

    Returns:
        (LabeledAction)
    """
    data = load_json(filename, required=("carrier", "generators", "images"))
    try:
        size = int(data["carrier"])
        tables = {}
        for token in data["generators"]:
            table = data["images"][token]
            if len(table) != size:
                raise ParseError("image of {} has {} entries, carrier is {}".format(
                    token, len(table), size), filename)
            tables[token] = table
        return LabeledAction.from_permutations(tables, data.get("labels"))
    except ParseError:
        raise
    except (InputError, KeyError, TypeError, ValueError) as e:
        raise ParseError(str(e), filename)
