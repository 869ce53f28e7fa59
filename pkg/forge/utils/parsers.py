"""
This module consolidates reading of the plain-text and JSON
input formats used by forge (witnesses, substitutions, full group
elements, dyadic maps, sections and actions)
"""

import os

from monty.serialization import loadfn
from forge import FORGE_DATA
from forge.errors import ParseError


def data_path(filename):
    """
    Resolves a file name against the bundled data directory if it
    does not exist as given

    Args:
        filename (str): path or name of a bundled file

    Returns:
        (str): path to an existing file

    """
    if os.path.isfile(filename):
        return filename
    bundled = os.path.join(FORGE_DATA, filename)
    if os.path.isfile(bundled):
        return bundled
    raise ParseError("no such file", filename)


def read_records(filename):
    """
    Line-oriented reader, skips blank lines and # comments

    Args:
        filename (str): path to a text file

    Returns:
        ([(int, [str])]): 1-based line number and whitespace
            separated fields of each content line

    """
    filename = data_path(filename)
    records = []
    with open(filename) as f:
        for number, line in enumerate(f, start=1):
            content = line.split("#", 1)[0].strip()
            if content:
                records.append((number, content.split()))
    return records


def parse_int(text, filename=None, line=None):
    try:
        return int(text)
    except ValueError:
        raise ParseError("expected an integer, got {!r}".format(text),
                         filename, line)


def load_json(filename, required=()):
    """
    Loads a JSON (or YAML) document with monty and checks that
    the required keys are present

    Args:
        filename (str): path to the document
        required ([str]): keys which must be present

    Returns:
        (dict): the parsed document

    """
    filename = data_path(filename)
    try:
        data = loadfn(filename)
    except ValueError as e:
        raise ParseError("invalid document ({})".format(e), filename)
    if not isinstance(data, dict):
        raise ParseError("expected a mapping at top level", filename)
    for key in required:
        if key not in data:
            raise ParseError("missing key {!r}".format(key), filename)
    return data
