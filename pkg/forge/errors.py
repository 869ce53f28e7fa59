"""
Exception hierarchy shared by every forge module.

InputError subclasses are raised for invalid arguments and broken
invariants at construction time, BudgetExceeded when a capped search
or enumeration runs out, and VerificationError when a certificate
cannot be produced.  Checkers never raise on a failed inequality,
they report it.
"""


class ForgeError(Exception):
    """Base class for all forge errors"""


class InputError(ForgeError, ValueError):
    """Invalid input or violated construction invariant"""


class MixedAlphabet(InputError):
    """Free and involutive symbols combined in one word"""


class CarrierMismatch(InputError):
    """Finite maps on carriers of different sizes"""


class MissingLabel(InputError, KeyError):
    """A map assignment lacks a label required by a check"""

    def __str__(self):
        return ValueError.__str__(self)


class RadiusMismatch(InputError):
    """Ball distributions of different radii"""


class NotInLanguage(InputError):
    """A pattern that does not occur in the subshift"""


class IncompleteTable(InputError):
    """An exponent table has no entry for an admissible word"""


class NotInHl(InputError):
    """A lamplighter element outside the set H_l"""


class NotInvolution(InputError):
    """An action rule violating a_i a_i = 1"""


class ParseError(InputError):
    """
    Malformed input file

    Args:
        message (str): what went wrong
        path (str): file being parsed
        line (int): 1-based line number, None if not line oriented
    """
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        location = path if path else "<input>"
        if line is not None:
            location = "{}:{}".format(location, line)
        super().__init__("{}: {}".format(location, message))


class BudgetExceeded(ForgeError):
    """
    A capped search or enumeration exceeded its budget

    Args:
        budget (str): name of the exhausted budget field
        limit (int): the limit in force
        detail (str): what was being computed
    """
    def __init__(self, budget, limit, detail=""):
        self.budget = budget
        self.limit = limit
        message = "budget {} exceeded (limit {})".format(budget, limit)
        if detail:
            message = "{}: {}".format(message, detail)
        super().__init__(message)


class VerificationError(ForgeError):
    """A certificate could not be produced"""


class NotBijective(VerificationError):
    """
    A full group table that is not a bijection

    Args:
        word (str): admissible target word witnessing the failure
        kind (str): "twice" if two sources hit the word, "never" if none do
        exponents (list): exponents of the sources found
    """
    def __init__(self, word, kind, exponents=()):
        self.word = word
        self.kind = kind
        self.exponents = list(exponents)
        super().__init__("word {} is hit {} (source exponents {})".format(
            word, "twice" if kind == "twice" else "never", self.exponents))


class CertificationFailed(VerificationError):
    """
    A verification step of a pipeline failed

    Args:
        message (str): which step failed
        witness (dict): concrete data reproducing the failure
    """
    def __init__(self, message, witness=None):
        self.witness = witness if witness else {}
        super().__init__("{} (witness: {})".format(message, self.witness))
