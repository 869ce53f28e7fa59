"""
The dyadic odometer at finite depth.

Points of the truncated space are low-endian bit strings of length D
(index 0 is the first coordinate), identified with integers
v = sum x_i 2^i so that the odometer is v -> v + 1 mod 2^D.  A dyadic map
of depth k acts on x by the power j(ρ) of the odometer, where ρ is the
first k bits of x.  Finitizing a map at n means letting it act on Z_{2^n}
by v -> v + j(v mod 2^k) mod 2^n, and a section σ turns those maps into
a compressed sofic witness of a group Γ.
"""
import os
from fractions import Fraction

import numpy as np
from monty.json import MSONable
from forge.budget import DEFAULT_BUDGET
from forge.errors import InputError, MissingLabel, ParseError
from forge.finactions import CompressedSpec, FiniteMap, MapAssignment, evaluate_word
from forge.utils.parsers import data_path, load_json, parse_int, read_records
from forge.words import IDENTITY, parse_word


def bits_to_int(x):
    """Low-endian bit string to integer"""
    if x and set(x) - {"0", "1"}:
        raise InputError("not a bit string: {!r}".format(x))
    return int(x[::-1], 2) if x else 0


def int_to_bits(v, depth):
    return format(v, "0{}b".format(depth))[::-1] if depth else ""


def odometer_apply(x, e):
    """
    x + e with binary carry, wrapping modulo 2^D

    Args:
        x (str): low-endian bit string of length D
        e (int): power of the odometer

    Returns:
        (str) bit string of length D
    """
    depth = len(x)
    return int_to_bits((bits_to_int(x) + e) % 2 ** depth, depth)


class DyadicMap(MSONable):
    """
    Map acting by the odometer power j(ρ) on the cylinder of each
    depth-k prefix ρ.

    Args:
        depth (int): k
        table (dict): low-endian bit string of length k -> exponent
    """
    def __init__(self, depth, table):
        if depth < 0:
            raise InputError("depth must be nonnegative, got {}".format(depth))
        expected = {int_to_bits(v, depth) for v in range(2 ** depth)}
        if set(table) != expected:
            missing = sorted(expected - set(table))
            raise InputError("dyadic map of depth {} needs exponents for all "
                             "{} prefixes, missing {}".format(
                                 depth, 2 ** depth, missing[:4]))
        self.depth = depth
        self.table = {rho: int(table[rho]) for rho in sorted(table)}
        exponents = np.zeros(2 ** depth, dtype=np.int64)
        for rho, j in self.table.items():
            exponents[bits_to_int(rho)] = j
        exponents.setflags(write=False)
        self.exponents = exponents

    @classmethod
    def from_exponents(cls, exponents):
        """Table given by a list indexed by the integer value of ρ"""
        depth = int(np.log2(len(exponents)))
        if 2 ** depth != len(exponents):
            raise InputError("need 2^k exponents, got {}".format(len(exponents)))
        return cls(depth, {int_to_bits(v, depth): j for v, j in enumerate(exponents)})

    @property
    def bound(self):
        return int(np.abs(self.exponents).max())

    def exponent(self, x):
        return int(self.exponents[bits_to_int(x[:self.depth])])

    def apply_int(self, values, depth):
        """Vectorized action on integer-encoded points of depth D"""
        values = np.asarray(values, dtype=np.int64)
        return (values + self.exponents[values % 2 ** self.depth]) % 2 ** depth

    def refine(self, depth):
        """The same map tabulated on the longer prefixes of the given depth"""
        if depth < self.depth:
            raise InputError("cannot refine depth {} to {}".format(self.depth, depth))
        return DyadicMap(depth, {int_to_bits(v, depth): int(self.exponents[v % 2 ** self.depth])
                                 for v in range(2 ** depth)})

    def is_bijection(self, depth):
        return len(np.unique(self.apply_int(np.arange(2 ** depth), depth))) == 2 ** depth

    def to_text(self):
        lines = ["depth {}".format(self.depth)]
        lines.extend("{} {}".format(rho or "-", j) for rho, j in self.table.items())
        return "\n".join(lines) + "\n"

    def as_dict(self):
        return {"@module": self.__class__.__module__,
                "@class": self.__class__.__name__,
                "depth": self.depth, "table": self.table}

    def __eq__(self, other):
        return (isinstance(other, DyadicMap) and self.depth == other.depth
                and self.table == other.table)

    def __repr__(self):
        return "DyadicMap(depth={}, {})".format(self.depth, self.exponents.tolist())


def apply_dyadic(q, x):
    """Q(x) = T^{j(ρ)} x for the depth-k prefix ρ of x"""
    if len(x) < q.depth:
        raise InputError("point of depth {} is shorter than the map depth {}".format(
            len(x), q.depth))
    return odometer_apply(x, q.exponent(x))


def load_dyadic_map(filename):
    """
    Reads a dyadic map file: "depth k", then one "bitstring exponent"
    line per prefix; "-" is the empty prefix of depth 0

    Args:
        filename (str): path or bundled name

    Returns:
        (DyadicMap)
    """
    records = read_records(filename)
    if not records:
        raise ParseError("empty dyadic map file", filename)
    line, fields = records[0]
    if len(fields) == 2 and fields[0] == "depth":
        depth = parse_int(fields[1], filename, line)
    elif len(fields) == 1:
        depth = parse_int(fields[0], filename, line)
    else:
        raise ParseError("first line must be 'depth k'", filename, line)
    table = {}
    for line, fields in records[1:]:
        if len(fields) != 2:
            raise ParseError("expected 'bitstring exponent'", filename, line)
        rho = "" if fields[0] == "-" else fields[0]
        if len(rho) != depth or set(rho) - {"0", "1"}:
            raise ParseError("{!r} is not a bit string of length {}".format(
                fields[0], depth), filename, line)
        if rho in table:
            raise ParseError("duplicate prefix {!r}".format(rho), filename, line)
        table[rho] = parse_int(fields[1], filename, line)
    try:
        return DyadicMap(depth, table)
    except InputError as e:
        raise ParseError(str(e), filename)


class TruncatedSpace(object):
    """
    {0,1}^D with the uniform measure.

    Args:
        depth (int): D
        budget (Budget): carrier_cap bounds 2^D
    """
    def __init__(self, depth, budget=DEFAULT_BUDGET):
        if depth < 1:
            raise InputError("depth must be positive, got {}".format(depth))
        budget.check("carrier_cap", 2 ** depth, "truncated space of depth {}".format(depth))
        self.depth = depth

    @property
    def size(self):
        return 2 ** self.depth

    def points(self):
        return np.arange(self.size, dtype=np.int64)

    def strings(self):
        return [int_to_bits(v, self.depth) for v in range(self.size)]

    def evaluate(self, word, binding):
        """Images of all points under the word, left letter applied last"""
        return evaluate_dyadic_word(word, binding, self.depth)


def _check_binding(binding, word, depth):
    for symbol in word:
        base = symbol if symbol in binding else symbol.inverse()
        if base not in binding:
            raise MissingLabel("no dyadic map bound to {}".format(symbol))
        if binding[base].depth > depth:
            raise InputError("map for {} has depth {} > {}".format(
                base, binding[base].depth, depth))


def evaluate_dyadic_word(word, binding, depth):
    """
    Images of all integer-encoded points of depth D under a word.  An
    inverse letter without its own binding acts by the inverse
    permutation of its generator, which must be a bijection at depth D.

    Args:
        word (ReducedWord): word over s_1, ..., s_m
        binding (dict): Symbol -> DyadicMap
        depth (int): D

    Returns:
        (numpy.ndarray) image of v at index v
    """
    _check_binding(binding, word, depth)
    values = np.arange(2 ** depth, dtype=np.int64)
    for symbol in reversed(list(word)):
        if symbol in binding:
            values = binding[symbol].apply_int(values, depth)
        else:
            forward = binding[symbol.inverse()].apply_int(np.arange(2 ** depth), depth)
            if len(np.unique(forward)) != len(forward):
                raise InputError("{} is not a bijection at depth {}, bind {} "
                                 "explicitly".format(symbol.inverse(), depth, symbol))
            inverse = np.empty_like(forward)
            inverse[forward] = np.arange(len(forward))
            values = inverse[values]
    return values


def fix_measure(word, binding, depth, budget=DEFAULT_BUDGET):
    """
    Exact measure of the fixed point set of a word at depth D

    Args:
        word (ReducedWord): δ over the dyadic generators
        binding (dict): Symbol -> DyadicMap
        depth (int): D >= every bound map's depth
        budget (Budget): carrier_cap bounds 2^D

    Returns:
        (Fraction)
    """
    space = TruncatedSpace(depth, budget)
    images = space.evaluate(word, binding)
    return Fraction(int(np.count_nonzero(images == space.points())), space.size)


class FiniteModel(object):
    """
    The cyclic model Z_{2^n} of the odometer, labelled by the first k
    binary digits of every vertex.

    Args:
        n (int): the carrier is Z_{2^n}
        k (int): label width, k <= n
        budget (Budget): carrier_cap bounds 2^n
    """
    def __init__(self, n, k=0, budget=DEFAULT_BUDGET):
        if not 0 <= k <= n:
            raise InputError("need 0 <= k <= n, got k={}, n={}".format(k, n))
        budget.check("carrier_cap", 2 ** n, "finite model Z_2^{}".format(n))
        self.n = n
        self.k = k

    @property
    def size(self):
        return 2 ** self.n

    def shift_map(self):
        """ι^n(T): v -> v + 1"""
        return FiniteMap((np.arange(self.size) + 1) % self.size)

    def labels(self):
        return [int_to_bits(v % 2 ** self.k, self.k) for v in range(self.size)]


def finitize_images(binding, n, budget=DEFAULT_BUDGET):
    """
    Finite maps v -> v + j(v mod 2^k) mod 2^n, one per bound symbol

    Returns:
        ({Symbol: FiniteMap})
    """
    model = FiniteModel(n, 0, budget)
    for symbol, q in binding.items():
        if q.depth > n:
            raise InputError("map for {} has depth {} > n = {}".format(
                symbol, q.depth, n))
    return {symbol: FiniteMap(q.apply_int(np.arange(model.size), n))
            for symbol, q in binding.items()}


def finitize(binding, n, budget=DEFAULT_BUDGET):
    """
    The finitized generators as a MapAssignment labelled "s1", "S1", ...
    with identity label "1"

    Args:
        binding (dict): Symbol -> DyadicMap
        n (int): carrier Z_{2^n}

    Returns:
        (MapAssignment)
    """
    images = {str(symbol): image
              for symbol, image in finitize_images(binding, n, budget).items()}
    images["1"] = FiniteMap.identity(2 ** n)
    return MapAssignment("1", images)


class SectionTable(object):
    """
    A section σ from Γ into the free group on the dyadic generators.

    Args:
        identity (str): label of the identity of Γ
        words (dict): label -> ReducedWord, σ(identity) must be empty
        binding (dict): Symbol -> DyadicMap
        mult (dict): (f, g) -> fg, multiplication of Γ on the labels
        generators ([str]): labels checked by the compressed witness,
            all non-identity labels by default
    """
    def __init__(self, identity, words, binding, mult=None, generators=None):
        if identity not in words:
            raise MissingLabel("section has no word for the identity {!r}".format(identity))
        if words[identity] != IDENTITY:
            raise InputError("σ({}) must be the empty word, got {}".format(
                identity, words[identity]))
        for label, word in words.items():
            if word.mode == "involutive":
                raise InputError("section words use s_i letters, {} does not".format(label))
            for symbol in word:
                if symbol not in binding and symbol.inverse() not in binding:
                    raise MissingLabel("σ({}) uses unbound {}".format(label, symbol))
        self.identity = identity
        self.words = dict(words)
        self.binding = dict(binding)
        self.mult = dict(mult) if mult else {}
        self.generators = list(generators) if generators else [
            label for label in words if label != identity]
        unknown = [g for g in self.generators if g not in words]
        if unknown:
            raise MissingLabel("generators {} have no section word".format(unknown))

    @property
    def depth(self):
        return max([q.depth for q in self.binding.values()] + [0])

    def __repr__(self):
        return "SectionTable({} labels, depth {})".format(len(self.words), self.depth)


def compressed_rep(section, n, budget=DEFAULT_BUDGET):
    """
    Θ(γ) = evaluation of σ(γ) under the finitized generators on Z_{2^n}

    Args:
        section (SectionTable): σ and the generator binding
        n (int): carrier Z_{2^n}

    Returns:
        (MapAssignment) over the labels of Γ
    """
    if n < section.depth:
        raise InputError("n = {} is below the section depth {}".format(n, section.depth))
    generators = finitize_images(section.binding, n, budget)
    images = {label: evaluate_word(generators, word, 2 ** n)
              for label, word in section.words.items()}
    images[section.identity] = FiniteMap.identity(2 ** n)
    return MapAssignment(section.identity, images)


def compressed_spec(section, n, eps, budget=DEFAULT_BUDGET):
    """
    Constants of the compressed witness: ε_i = (1 - μ(Fix(σ(γ_i))))/2
    measured at depth n, and the given product tolerance

    Returns:
        (CompressedSpec)
    """
    bounds = {}
    for label in section.generators:
        measure = fix_measure(section.words[label], section.binding, n, budget)
        bounds[label] = (1 - measure) / 2
    return CompressedSpec(bounds, Fraction(eps), section.generators)


def _binding_symbol(token):
    word = parse_word(token)
    if len(word) != 1 or word.mode != "free":
        raise InputError("bindings are keyed by single s_i letters, got {!r}".format(token))
    return word[0]


def _binding_entry(value, base, filename):
    if isinstance(value, dict):
        return DyadicMap(value["depth"], {str(rho) if rho != "-" else "": j
                                          for rho, j in value["table"].items()})
    local = os.path.join(base, value)
    return load_dyadic_map(local if os.path.isfile(local) else value)


def load_section(filename):
    """
    Reads a section file (JSON): "identity", "words" (label -> word text),
    "bindings" (symbol -> dyadic map file or inline {"depth", "table"}),
    optional "mult" triples and "generators"

    Args:
        filename (str): path or bundled name

    Returns:
        (SectionTable)
    """
    path = data_path(filename)
    data = load_json(path, required=("identity", "words", "bindings"))
    base = os.path.dirname(path)
    try:
        binding = {}
        for token, value in data["bindings"].items():
            binding[_binding_symbol(token)] = _binding_entry(value, base, path)
        words = {str(label): parse_word(text) for label, text in data["words"].items()}
        mult = {}
        for triple in data.get("mult", []):
            if len(triple) != 3:
                raise ParseError("multiplication entries are [f, g, fg] triples", path)
            mult[(str(triple[0]), str(triple[1]))] = str(triple[2])
        return SectionTable(str(data["identity"]), words, binding, mult,
                            data.get("generators"))
    except ParseError:
        raise
    except (InputError, KeyError, TypeError) as e:
        raise ParseError(str(e), path)


def load_binding(filename):
    """
    Reads a binding document: JSON with "bindings" as in load_section
    and an optional list "words" of word texts

    Returns:
        ({Symbol: DyadicMap}, [ReducedWord])
    """
    path = data_path(filename)
    data = load_json(path, required=("bindings",))
    base = os.path.dirname(path)
    try:
        binding = {_binding_symbol(token): _binding_entry(value, base, path)
                   for token, value in data["bindings"].items()}
        return binding, [parse_word(text) for text in data.get("words", [])]
    except ParseError:
        raise
    except (InputError, KeyError, TypeError) as e:
        raise ParseError(str(e), path)

