"""
Pyinvoke tasks.py file for testing and versioning forge.
"""

from invoke import task
import re
import datetime

NEW_VER = datetime.datetime.today().strftime("%Y.%-m.%-d")


@task
def test(ctx, long=False):
    """
    Run the test suite, including the long tests if requested.

    :param ctx:
    :param long: Whether to run tests gated by FORGE_LONG_TESTS.
    """
    prefix = "FORGE_LONG_TESTS=1 " if long else ""
    ctx.run(prefix + "TQDM_OFF=1 pytest forge")


@task
def coverage(ctx):
    """
    Run the quick tests under coverage and print the per-module summary.

    :param ctx:
    """
    ctx.run("TQDM_OFF=1 coverage run --source=forge -m pytest forge")
    ctx.run("coverage report --omit='*/tests/*'")


@task
def lint(ctx):
    ctx.run("pylint forge --disable=invalid-name,too-many-arguments", warn=True)


@task
def selftest(ctx, seed=0):
    """
    Run the bundled acceptance suite through the console script.

    :param ctx:
    :param seed: Seed for the randomized criteria.
    """
    ctx.run("TQDM_OFF=1 forge selftest --seed {} --report selftest.json".format(seed))


@task
def set_ver(ctx):
    """
    Stamp today's date as the version of forge/__init__.py and setup.py.

    :param ctx:
    """
    for filename, pattern, replacement in [
            ("forge/__init__.py", r'^__version__ = .*$', '__version__ = "%s"' % NEW_VER),
            ("setup.py", r'version=([^,]+),', 'version="%s",' % NEW_VER)]:
        with open(filename, "rt") as f:
            contents = f.read()
        with open(filename, "wt") as f:
            f.write(re.sub(pattern, replacement, contents, flags=re.M))


@task
def update_changelog(ctx, notes=""):
    """
    Start a CHANGES.md section for the new version.

    :param ctx:
    :param notes: Semicolon separated entries for the section.
    """
    lines = ["* " + note.strip() for note in notes.split(";") if note.strip()]
    with open("CHANGES.md") as f:
        contents = f.read()
    head = "v%s\n" % NEW_VER + "-" * (len(NEW_VER) + 1) + "\n"
    with open("CHANGES.md", "w") as f:
        f.write(head + "\n".join(lines) + "\n\n" + contents)
