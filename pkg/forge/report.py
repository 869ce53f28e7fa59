"""
Machine-readable verdicts.

A Report is a list of named checks, each with a pass flag, an exact
value rendered as "p/q", and a witness when it failed.  Reports never
carry floats: every threshold in the pipelines is sharp.
"""
from fractions import Fraction

import pandas as pd
from monty.json import MSONable
from monty.serialization import dumpfn
from forge.errors import InputError


def format_rational(value):
    """
    Args:
        value (Fraction or int): exact value

    Returns:
        (str) "p/q", or "p" for integers
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "{}/{}".format(value.numerator, value.denominator)


def parse_rational(text):
    """
    Inverse of format_rational; rejects floats and garbage

    Args:
        text (str): "p/q" or "p"

    Returns:
        (Fraction)
    """
    text = str(text).strip()
    if not text or "." in text or "e" in text.lower():
        raise InputError("not an exact rational: {!r}".format(text))
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError("not an exact rational: {!r}".format(text))


class CheckRecord(MSONable):
    """
    One verified inequality or identity.

    Args:
        name (str): what is checked, e. g. "product(g,h)"
        passed (bool): verdict
        value (str or Fraction): exact value, stored as "p/q" text
        witness (dict): data reproducing a failure, None if passed
    """
    def __init__(self, name, passed, value=None, witness=None):
        self.name = name
        self.passed = bool(passed)
        if isinstance(value, (Fraction, int)) and not isinstance(value, bool):
            value = format_rational(value)
        self.value = value
        self.witness = witness

    def __repr__(self):
        return "CheckRecord({}, {}, {})".format(
            self.name, "pass" if self.passed else "FAIL", self.value)


class Report(MSONable):
    """
    Collection of checks produced by a pipeline or checker

    Args:
        pipeline (str): pipeline id or checker name
        parameters (dict): resolved configuration, embedded verbatim
        checks ([CheckRecord]): individual verdicts
        duration (float): wall clock seconds, excluded from comparisons
    """
    def __init__(self, pipeline, parameters=None, checks=None, duration=0.0):
        self.pipeline = pipeline
        self.parameters = parameters if parameters else {}
        self.checks = list(checks) if checks else []
        self.duration = duration

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def failures(self):
        return [check for check in self.checks if not check.passed]

    def add(self, name, passed, value=None, witness=None):
        record = CheckRecord(name, passed, value, witness)
        self.checks.append(record)
        return record

    def extend(self, other, prefix=None):
        """Appends the checks of another report, optionally prefixing names"""
        for check in other.checks:
            name = "{}:{}".format(prefix, check.name) if prefix else check.name
            self.checks.append(CheckRecord(name, check.passed, check.value,
                                           check.witness))
        return self

    def get(self, name):
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def as_dataframe(self):
        """
        Returns:
            (pandas.DataFrame) one row per check with name, passed, value
        """
        return pd.DataFrame(
            [{"name": check.name, "passed": check.passed, "value": check.value}
             for check in self.checks],
            columns=["name", "passed", "value"])

    def as_dict(self):
        return {"@module": self.__class__.__module__,
                "@class": self.__class__.__name__,
                "pipeline": self.pipeline,
                "parameters": self.parameters,
                "passed": self.passed,
                "checks": [check.as_dict() for check in self.checks],
                "duration": self.duration}

    @classmethod
    def from_dict(cls, d):
        checks = [CheckRecord.from_dict(c) if isinstance(c, dict) else c
                  for c in d.get("checks", [])]
        return cls(d["pipeline"], d.get("parameters"), checks,
                   d.get("duration", 0.0))

    def content(self):
        """Dict form without the duration, used for determinism checks"""
        d = self.as_dict()
        d.pop("duration")
        return d

    def dump(self, filename):
        if filename.lower().endswith((".yaml", ".yml")):
            dumpfn(self.as_dict(), filename)
        else:
            dumpfn(self.as_dict(), filename, indent=2, sort_keys=True)

    def __repr__(self):
        return "Report({}, {} checks, {})".format(
            self.pipeline, len(self.checks), "pass" if self.passed else "FAIL")
