"""
Finite self-maps and the sofic, LEF and compressed-sofic witness checks.

Maps are numpy integer tables on a carrier {0, ..., size-1}.  Composition
follows "left map applied last": compose(f, g)(x) = f(g(x)), so that a
witness Θ is multiplicative when Θ(fg) = compose(Θ(f), Θ(g)).  All
distances are exact Fractions.
"""
import itertools
from fractions import Fraction

import numpy as np
from monty.json import MSONable
from forge.budget import DEFAULT_BUDGET
from forge.errors import (
    CarrierMismatch, InputError, MissingLabel, ParseError)
from forge.report import Report, parse_rational
from forge.utils.parsers import load_json


class Carrier(object):
    """The finite set {0, ..., size-1}"""
    __slots__ = ("size",)

    def __init__(self, size):
        if not isinstance(size, (int, np.integer)) or size < 1:
            raise InputError("carrier size must be a positive integer, got "
                             "{!r}".format(size))
        self.size = int(size)

    def __eq__(self, other):
        return isinstance(other, Carrier) and self.size == other.size

    def __hash__(self):
        return hash(self.size)

    def __repr__(self):
        return "Carrier({})".format(self.size)


class FiniteMap(object):
    """
    Self-map of a finite carrier, stored as an immutable int64 table.

    Args:
        table (array-like): image of each point, entries in 0..size-1
    """
    def __init__(self, table):
        table = np.array(table, dtype=np.int64).reshape(-1)
        if table.size == 0:
            raise InputError("a finite map needs a nonempty carrier")
        if table.min() < 0 or table.max() >= table.size:
            raise InputError("map entries must lie in 0..{}".format(table.size - 1))
        table.setflags(write=False)
        self.table = table
        self.carrier = Carrier(table.size)

    @classmethod
    def identity(cls, size):
        return cls(np.arange(size, dtype=np.int64))

    @property
    def size(self):
        return self.carrier.size

    def __call__(self, x):
        return int(self.table[x])

    def is_bijection(self):
        return len(np.unique(self.table)) == self.size

    def is_identity(self):
        return bool(np.array_equal(self.table, np.arange(self.size)))

    def inverse(self):
        if not self.is_bijection():
            raise InputError("only bijections can be inverted")
        inv = np.empty_like(self.table)
        inv[self.table] = np.arange(self.size)
        return FiniteMap(inv)

    def tolist(self):
        return [int(v) for v in self.table]

    def __eq__(self, other):
        return (isinstance(other, FiniteMap)
                and np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        if self.size <= 12:
            return "FiniteMap({})".format(self.tolist())
        return "FiniteMap(<{} points>)".format(self.size)


def _same_carrier(f, g):
    if f.carrier != g.carrier:
        raise CarrierMismatch("carriers of size {} and {} differ".format(
            f.size, g.size))


def compose(f, g):
    """x -> f(g(x))"""
    _same_carrier(f, g)
    return FiniteMap(f.table[g.table])


def hamming(f, g):
    """
    Normalized Hamming distance |{x : f(x) != g(x)}| / |A|

    Args:
        f (FiniteMap): first map
        g (FiniteMap): second map on the same carrier

    Returns:
        (Fraction)
    """
    _same_carrier(f, g)
    return Fraction(int(np.count_nonzero(f.table != g.table)), f.size)


def fix_fraction(f):
    """|Fix(f)| / |A|"""
    return Fraction(int(np.count_nonzero(f.table == np.arange(f.size))), f.size)


def tensor_power(f, k, budget=DEFAULT_BUDGET):
    """
    Coordinatewise action of f on k-tuples.  A tuple (x_1, ..., x_k) is
    encoded in mixed radix with x_1 most significant.

    Args:
        f (FiniteMap): map on a carrier of size s
        k (int): positive power
        budget (Budget): carrier_cap bounds s ** k

    Returns:
        (FiniteMap) on the carrier of size s ** k
    """
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise InputError("tensor power must be a positive integer, got {!r}".format(k))
    size = f.size
    budget.check("carrier_cap", size ** k,
                 "tensor power {} of a map on {} points".format(k, size))
    table = f.table
    for _ in range(k - 1):
        table = (table[:, None] * size + f.table[None, :]).reshape(-1)
    return FiniteMap(table)


def evaluate_word(images, word, size=None):
    """
    Evaluates a word under an assignment of maps to letters, left
    letter applied last.

    Args:
        images (dict): Symbol -> FiniteMap, inverse letters need their own
            entry unless every generator map is a bijection
        word (ReducedWord or iterable of Symbol): the word
        size (int): carrier size, needed only for the empty word

    Returns:
        (FiniteMap)
    """
    symbols = list(word)
    if not symbols:
        if size is None:
            size = next(iter(images.values())).size
        return FiniteMap.identity(size)
    table = None
    for symbol in reversed(symbols):
        if symbol in images:
            image = images[symbol]
        elif symbol.inverse() in images:
            image = images[symbol.inverse()].inverse()
        else:
            raise MissingLabel("no map bound to {}".format(symbol))
        table = image.table if table is None else image.table[table]
    return FiniteMap(table)


class MapAssignment(object):
    """
    Table from group-element labels to finite maps on a common carrier.

    Args:
        identity (str): label of the group identity
        images (dict): label -> FiniteMap, the identity label must map
            to the identity
    """
    def __init__(self, identity, images):
        if identity not in images:
            raise MissingLabel("identity label {!r} has no image".format(identity))
        maps = list(images.values())
        for image in maps[1:]:
            _same_carrier(maps[0], image)
        if not images[identity].is_identity():
            raise InputError("identity label {!r} must map to the identity".format(
                identity))
        self.identity = identity
        self.images = dict(images)
        self.carrier = maps[0].carrier

    @property
    def labels(self):
        return list(self.images)

    @property
    def size(self):
        return self.carrier.size

    def __getitem__(self, label):
        try:
            return self.images[label]
        except KeyError:
            raise MissingLabel("assignment has no image for label {!r}".format(label))

    def __contains__(self, label):
        return label in self.images

    @classmethod
    def from_permutation_action(cls, identity, labels, act, size):
        """
        Restriction of a genuine finite action to a set of labels.

        Args:
            identity (str): identity label
            labels (iterable): labels to include
            act (callable): (label, point) -> point
            size (int): carrier size

        Returns:
            (MapAssignment)
        """
        images = {label: FiniteMap([act(label, x) for x in range(size)])
                  for label in labels}
        images[identity] = FiniteMap.identity(size)
        return cls(identity, images)

    def __eq__(self, other):
        return (isinstance(other, MapAssignment)
                and self.identity == other.identity
                and self.images == other.images)

    def __repr__(self):
        return "MapAssignment({} labels on {} points)".format(
            len(self.images), self.size)


def amplify_witness(theta, k, budget=DEFAULT_BUDGET):
    """Tensor power of every image; the identity label stays the identity"""
    return MapAssignment(theta.identity,
                         {label: tensor_power(image, k, budget)
                          for label, image in theta.images.items()})


def _products(labels, mult):
    """(f, g, fg) for f, g, fg in labels with fg defined by mult"""
    labels = set(labels)
    for (f, g), fg in sorted(mult.items()):
        if f in labels and g in labels and fg in labels:
            yield f, g, fg


def _product_defects(theta, labels, mult):
    for f, g, fg in _products(labels, mult):
        yield f, g, fg, hamming(theta[fg], compose(theta[f], theta[g]))


def check_sofic(theta, labels, eps, mult):
    """
    Checks the two sofic inequalities on a finite set F:
    d_H(Θ(fg), Θ(f)Θ(g)) <= ε whenever f, g, fg are in F, and
    d_H(Θ(f), id) > 1 - ε for every f != 1 in F.

    Args:
        theta (MapAssignment): the witness
        labels (iterable): the finite set F
        eps (Fraction): tolerance
        mult (dict): (f, g) -> fg, partial multiplication table

    Returns:
        (Report)
    """
    eps = Fraction(eps)
    labels = list(labels)
    report = Report("sofic-check", {"eps": str(eps),
                                   "labels": [str(label) for label in labels]})
    for f, g, fg, defect in _product_defects(theta, labels, mult):
        report.add("product({},{})".format(f, g), defect <= eps, defect,
                   None if defect <= eps else {"f": f, "g": g, "fg": fg})
    identity = FiniteMap.identity(theta.size)
    for f in labels:
        if f == theta.identity:
            continue
        distance = hamming(theta[f], identity)
        passed = distance > 1 - eps
        report.add("identity_distance({})".format(f), passed, distance,
                   None if passed else {"label": f, "bound": str(1 - eps)})
    return report


def check_lef(theta, labels, mult):
    """
    Exact version: every defined product has defect 0 and every
    non-identity label is mapped to a non-identity map.
    """
    labels = list(labels)
    report = Report("lef-check", {"labels": [str(label) for label in labels]})
    for f, g, fg, defect in _product_defects(theta, labels, mult):
        witness = None
        if defect:
            composed = compose(theta[f], theta[g])
            x = int(np.flatnonzero(theta[fg].table != composed.table)[0])
            witness = {"f": f, "g": g, "fg": fg, "point": x,
                       "fg(x)": theta[fg](x), "f(g(x))": composed(x)}
        report.add("product({},{})".format(f, g), defect == 0, defect, witness)
    for f in labels:
        if f == theta.identity:
            continue
        trivial = theta[f].is_identity()
        report.add("nontrivial({})".format(f), not trivial,
                   fix_fraction(theta[f]),
                   {"label": f} if trivial else None)
    return report


class CompressedSpec(MSONable):
    """
    Constants of a compressed sofic representation.

    Args:
        lower_bounds (dict): label -> ε_i with 0 < ε_i <= 1
        eps (Fraction): product tolerance, 0 < ε < 1
        labels ([str]): the generators γ_1, ..., γ_r in order, defaults
            to the keys of lower_bounds
    """
    def __init__(self, lower_bounds, eps, labels=None):
        self.lower_bounds = {label: Fraction(value)
                             for label, value in lower_bounds.items()}
        self.eps = Fraction(eps)
        self.labels = list(labels) if labels else list(self.lower_bounds)
        for label, value in self.lower_bounds.items():
            if not 0 < value <= 1:
                raise InputError("lower bound for {} must lie in (0, 1], got {}".format(
                    label, value))
        if not 0 < self.eps < 1:
            raise InputError("product tolerance must lie in (0, 1), got {}".format(
                self.eps))
        missing = [label for label in self.labels if label not in self.lower_bounds]
        if missing:
            raise MissingLabel("no lower bound for {}".format(missing))

    @property
    def r(self):
        return len(self.labels)

    def as_dict(self):
        return {"@module": self.__class__.__module__,
                "@class": self.__class__.__name__,
                "lower_bounds": {label: str(value)
                                 for label, value in self.lower_bounds.items()},
                "eps": str(self.eps), "labels": self.labels}

    @classmethod
    def from_dict(cls, d):
        return cls({label: parse_rational(value)
                    for label, value in d["lower_bounds"].items()},
                   parse_rational(d["eps"]), d.get("labels"))


def check_compressed(theta, spec, mult):
    """
    Checks a compressed sofic representation:
    d_H(Θ(γ_iγ_j), Θ(γ_i)Θ(γ_j)) < ε for 1 <= i, j <= r and
    d_H(Θ(γ_i), id) > ε_i.

    Args:
        theta (MapAssignment): the candidate Θ_n
        spec (CompressedSpec): ε_i, ε and the generators
        mult (dict): (γ_i, γ_j) -> γ_iγ_j

    Returns:
        (Report)
    """
    missing = [label for label in spec.labels if label not in theta]
    if missing:
        raise MissingLabel("assignment has no image for {}".format(missing))
    report = Report("compressed-check",
                    {"eps": str(spec.eps),
                     "lower_bounds": {k: str(v) for k, v in spec.lower_bounds.items()}})
    for f, g in itertools.product(spec.labels, repeat=2):
        if (f, g) not in mult:
            continue
        fg = mult[(f, g)]
        defect = hamming(theta[fg], compose(theta[f], theta[g]))
        passed = defect < spec.eps
        report.add("product({},{})".format(f, g), passed, defect,
                   None if passed else {"f": f, "g": g, "fg": fg})
    identity = FiniteMap.identity(theta.size)
    for label in spec.labels:
        distance = hamming(theta[label], identity)
        bound = spec.lower_bounds[label]
        passed = distance > bound
        report.add("identity_distance({})".format(label), passed, distance,
                   None if passed else {"label": label, "bound": str(bound)})
    return report


def sofic_parameters(defect, distance, k):
    """
    Exact product defect and identity distance after amplification by k

    Args:
        defect (Fraction): product defect of the compressed witness
        distance (Fraction): identity distance of the compressed witness
        k (int): tensor power

    Returns:
        (Fraction, Fraction) 1 - (1 - defect)^k, 1 - (1 - distance)^k
    """
    defect, distance = Fraction(defect), Fraction(distance)
    return 1 - (1 - defect) ** k, 1 - (1 - distance) ** k


def amplification_power(d_min, eps, k_max=4096):
    """
    Least k with 1 - (1 - d_min)^k > 1 - eps, i. e. (1 - d_min)^k < eps

    Args:
        d_min (Fraction): smallest identity distance of the generators
        eps (Fraction): target sofic tolerance
        k_max (int): search cap

    Returns:
        (int)
    """
    d_min, eps = Fraction(d_min), Fraction(eps)
    if not 0 < d_min <= 1 or not 0 < eps < 1:
        raise InputError("need 0 < d_min <= 1 and 0 < eps < 1")
    base = 1 - d_min
    power = Fraction(1)
    for k in range(1, k_max + 1):
        power *= base
        if power < eps:
            return k
    raise InputError("no amplification power up to {} reaches eps = {}".format(
        k_max, eps))


def load_witness(filename):
    """
    Reads a witness file: JSON with "carrier", "labels" (objects with
    "id" and "identity"), "images" (label -> integer table) and "mult"
    (triples [f, g, fg]).

    Args:
        filename (str): path to the witness file

    Returns:
        (MapAssignment, [str], dict) the witness, its labels and the
        multiplication table
    """
    data = load_json(filename, required=("carrier", "labels", "images"))
    identities = [str(entry["id"]) for entry in data["labels"]
                  if entry.get("identity")]
    if len(identities) != 1:
        raise ParseError("exactly one identity label required, found {}".format(
            identities), filename)
    labels = [str(entry["id"]) for entry in data["labels"]]
    size = data["carrier"]
    images = {}
    for label in labels:
        if label not in data["images"]:
            raise ParseError("label {!r} has no image table".format(label), filename)
        table = data["images"][label]
        if len(table) != size:
            raise ParseError("image of {!r} has {} entries, carrier is {}".format(
                label, len(table), size), filename)
        images[label] = FiniteMap(table)
    mult = {}
    for triple in data.get("mult", []):
        if len(triple) != 3:
            raise ParseError("multiplication entries are [f, g, fg] triples",
                             filename)
        f, g, fg = (str(label) for label in triple)
        mult[(f, g)] = fg
    return MapAssignment(identities[0], images), labels, mult
