"""
Budgets for every unbounded search and enumeration.

The existence statements behind the pipelines come without effective
bounds, so every loop that searches for an object is capped by one of
the fields below and raises BudgetExceeded when the cap is hit.
"""
import math
from fractions import Fraction

from monty.json import MSONable
from forge import FORGE_BUDGET_SCALE
from forge.errors import BudgetExceeded, InputError


class Budget(MSONable):
    """
    Caps used throughout forge.

    Args:
        vertex_cap (int): vertices of a materialized ball or graph
        word_length_cap (int): length of enumerated words
        enumeration_cap (int): size of any enumerated family
        carrier_cap (int): size of a finite carrier (tensor powers)
        expansion_cap (int): symbols per side of a two-sided point
        language_cap (int): length of factors of a subshift
        window_cap (int): repetitivity windows searched
        scan_cap (int): moduli scanned for LEF quotients
        probe_cap (int): vertices probed by lazy searches
    """
    FIELDS = ("vertex_cap", "word_length_cap", "enumeration_cap",
              "carrier_cap", "expansion_cap", "language_cap",
              "window_cap", "scan_cap", "probe_cap")

    def __init__(self, vertex_cap=200000, word_length_cap=16,
                 enumeration_cap=1000000, carrier_cap=2 ** 22,
                 expansion_cap=2000000, language_cap=400, window_cap=400,
                 scan_cap=200000, probe_cap=200000):
        self.vertex_cap = vertex_cap
        self.word_length_cap = word_length_cap
        self.enumeration_cap = enumeration_cap
        self.carrier_cap = carrier_cap
        self.expansion_cap = expansion_cap
        self.language_cap = language_cap
        self.window_cap = window_cap
        self.scan_cap = scan_cap
        self.probe_cap = probe_cap
        for field in self.FIELDS:
            value = getattr(self, field)
            if not isinstance(value, int) or value <= 0:
                raise InputError("budget {} must be a positive integer, got {}".format(
                    field, value))

    def scaled(self, scale):
        """
        Args:
            scale (Fraction): positive factor applied to every cap

        Returns:
            (Budget) new budget with caps max(1, floor(cap * scale))
        """
        scale = Fraction(scale)
        if scale <= 0:
            raise InputError("budget scale must be positive, got {}".format(scale))
        return Budget(**{field: max(1, math.floor(getattr(self, field) * scale))
                         for field in self.FIELDS})

    @classmethod
    def from_env(cls, scale=FORGE_BUDGET_SCALE, **kwargs):
        """
        Default budget scaled by FORGE_BUDGET_SCALE if it is set

        Args:
            scale (str): rational scale, e. g. "1/2" or "4"
            **kwargs: explicit overrides of the default caps

        Returns:
            (Budget)
        """
        budget = cls(**kwargs)
        if scale in (None, ""):
            return budget
        try:
            value = Fraction(str(scale).strip())
        except (ValueError, ZeroDivisionError):
            raise InputError("FORGE_BUDGET_SCALE must be a positive rational, "
                             "got {!r}".format(scale))
        return budget.scaled(value)

    def check(self, field, value, detail=""):
        """Raises BudgetExceeded if value is above the named cap"""
        limit = getattr(self, field)
        if value > limit:
            raise BudgetExceeded(field, limit, detail)
        return value

    def as_dict(self):
        d = {"@module": self.__class__.__module__,
             "@class": self.__class__.__name__}
        d.update({field: getattr(self, field) for field in self.FIELDS})
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(**{field: d[field] for field in cls.FIELDS if field in d})

    def __eq__(self, other):
        return isinstance(other, Budget) and self.as_dict() == other.as_dict()

    def __repr__(self):
        return "Budget({})".format(", ".join(
            "{}={}".format(field, getattr(self, field)) for field in self.FIELDS))


DEFAULT_BUDGET = Budget()
