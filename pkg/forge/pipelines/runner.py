"""
Module and script for running the forge pipelines

Usage:
    forge sofic check WITNESS --eps EPS [options]
    forge sofic amplify WITNESS [--k K] [--eps EPS] [options]
    forge subshift lef [--substitution SUB] [--gens FILES] [--r R] [options]
    forge odometer compress [--section FILE] [--n N] [--eps EPS] [--k K] [options]
    forge lamp embed [--action SPEC] [--l L] [--n N] [--mode MODE] [--samples NUM] [--threshold N_MAX] [options]
    forge ballstats compare FIRST SECOND [--t T] [--root ROOT] [--tol TOL] [options]
    forge selftest [options]
    forge (-h | --help)
    forge --version

Options:
    --eps EPS             tolerance, an exact rational such as 1/100
    --k K                 tensor power of the amplification
    --substitution SUB    built-in substitution name or rule file
    --gens FILES          comma separated full group element files
    --r R                 radius of the word ball W^r
    --section FILE        section file of the compressed witness
    --n N                 carrier exponent (odometer) or ball radius (lamp)
    --action SPEC         cayley:k or a rule table file
    --l L                 window size of H_l
    --mode MODE           exhaustive or sampled
    --samples NUM         lit sets drawn in sampled mode
    --threshold N_MAX     also scan for the embedding threshold up to N_MAX
    --t T                 ball radius of the local statistics
    --root ROOT           root vertex for the rooted distance
    --tol TOL             largest accepted total variation distance
    --report PATH         write the report, JSON or YAML by extension
    --seed SEED           seed for randomized sampling  [default: 0]
    -h --help             Show this screen
    --version             Show version

FIRST and SECOND of ballstats compare are action files, "cycle:n" for
the unlabelled shift on Z_n or "odometer:n:k" for the odometer model on
Z_{2^n} labelled by k binary digits.

Exit codes: 0 if every check passed, 1 on a failed check or invalid
input, 2 if a budget was exhausted.
"""
import sys
import time

from docopt import docopt, DocoptExit
from monty.json import MSONable
from forge import __version__
from forge.ballstats import (
    LabeledAction, TrElement, ball_distribution, load_action, odometer_action,
    rooted_distance, tv_distance)
from forge.budget import Budget
from forge.errors import (
    BudgetExceeded, ForgeError, InputError, ParseError, VerificationError)
from forge.finactions import (
    FiniteMap, amplify_witness, amplification_power, check_compressed, check_lef,
    check_sofic, compose, hamming, load_witness, sofic_parameters)
from forge.fullgroup import lef_quotient, load_element
from forge.lamps import embedding_threshold, parse_action_spec, verify_embedding
from forge.log import FORGE_LOGGER, forge_traced
from forge.odometer import compressed_rep, compressed_spec, load_section
from forge.pipelines import PIPELINES
from forge.pipelines.acceptance import selftest
from forge.report import Report, format_rational, parse_rational
from forge.subshift import get_substitution

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_BUDGET = 2

# resolved parameters of each pipeline, None marks a required value
PIPELINE_DEFAULTS = {
    "sofic-check": {"witness": None, "eps": None},
    "sofic-amplify": {"witness": None, "k": 2, "eps": None},
    "subshift-lef": {"substitution": "fibonacci", "gens": "t.txt", "r": 2},
    "odometer-compress": {"section": "z2.json", "n": 16, "eps": "1/100", "k": None},
    "lamp-embed": {"action": "cayley:2", "l": 1, "n": 20, "mode": "exhaustive",
                   "samples": 64, "threshold": None},
    "ballstats-compare": {"first": None, "second": None, "t": 2, "root": 0,
                          "tol": "1"},
    "selftest": {},
}
OPTIONAL = {("sofic-amplify", "eps"), ("odometer-compress", "k"),
            ("lamp-embed", "threshold")}


class RunConfig(MSONable):
    """
    Resolved configuration of one pipeline run, embedded in its report

    Args:
        pipeline (str): pipeline id
        params (dict): pipeline parameters, defaults filled in
        budget (Budget): caps, FORGE_BUDGET_SCALE applied by default
        seed (int): seed for randomized sampling
        report (str): path the report is written to, None to skip
    """
    def __init__(self, pipeline, params=None, budget=None, seed=0, report=None):
        if pipeline not in PIPELINES:
            raise InputError("unknown pipeline {!r}, expected one of {}".format(
                pipeline, ", ".join(PIPELINES)))
        self.pipeline = pipeline
        self.params = dict(PIPELINE_DEFAULTS[pipeline])
        unknown = set(params or {}) - set(self.params)
        if unknown:
            raise InputError("{} takes no parameters {}".format(pipeline, sorted(unknown)))
        self.params.update({key: value for key, value in (params or {}).items()
                            if value is not None})
        missing = [key for key, value in self.params.items()
                   if value is None and (pipeline, key) not in OPTIONAL]
        if missing:
            raise InputError("{} requires {}".format(pipeline, ", ".join(missing)))
        self.budget = budget if budget else Budget.from_env()
        self.seed = _integer(seed, "seed", minimum=0)
        self.report = report

    @classmethod
    def from_arguments(cls, args):
        """
        Builds the config from the docopt argument dictionary

        Args:
            args (dict): output of docopt on the module usage

        Returns:
            (RunConfig)
        """
        if args["sofic"]:
            pipeline = "sofic-check" if args["check"] else "sofic-amplify"
        elif args["subshift"]:
            pipeline = "subshift-lef"
        elif args["odometer"]:
            pipeline = "odometer-compress"
        elif args["lamp"]:
            pipeline = "lamp-embed"
        elif args["ballstats"]:
            pipeline = "ballstats-compare"
        else:
            pipeline = "selftest"
        params = {}
        for key in PIPELINE_DEFAULTS[pipeline]:
            for name in ("--{}".format(key), key.upper()):
                if args.get(name) is not None:
                    params[key] = args[name]
        return cls(pipeline, params, seed=args["--seed"], report=args["--report"])

    def as_dict(self):
        return {"@module": self.__class__.__module__,
                "@class": self.__class__.__name__,
                "pipeline": self.pipeline,
                "params": self.params,
                "budget": self.budget.as_dict(),
                "seed": self.seed,
                "report": self.report}

    @classmethod
    def from_dict(cls, d):
        return cls(d["pipeline"], d.get("params"), Budget.from_dict(d["budget"]),
                   d.get("seed", 0), d.get("report"))


def _integer(value, name, minimum=None):
    try:
        result = int(str(value).strip())
    except ValueError:
        raise InputError("{} must be an integer, got {!r}".format(name, value))
    if minimum is not None and result < minimum:
        raise InputError("{} must be at least {}, got {}".format(name, minimum, result))
    return result


@forge_traced
class PipelineRunner(object):
    """
    Executes the pipeline named by a RunConfig and collects its checks
    in one report
    """
    def __init__(self, config):
        self.config = config
        self.params = config.params
        self.budget = config.budget
        self.report = Report(config.pipeline, config.as_dict())

    def integer(self, key, minimum=None):
        return _integer(self.params[key], key, minimum)

    def rational(self, key):
        return parse_rational(self.params[key])

    def run(self):
        method = getattr(self, "run_{}".format(self.config.pipeline.replace("-", "_")))
        method()
        return self.report

    def run_sofic_check(self):
        theta, labels, mult = load_witness(self.params["witness"])
        self.report.extend(check_sofic(theta, labels, self.rational("eps"), mult))

    def run_sofic_amplify(self):
        theta, labels, mult = load_witness(self.params["witness"])
        k = self.integer("k", minimum=1)
        amplified = amplify_witness(theta, k, self.budget)
        FORGE_LOGGER.info("amplified carrier %d -> %d", theta.size, amplified.size)
        identity, large = FiniteMap.identity(theta.size), FiniteMap.identity(amplified.size)
        distances = []
        for (f, g), fg in sorted(mult.items()):
            if f not in labels or g not in labels or fg not in labels:
                continue
            defect = hamming(theta[fg], compose(theta[f], theta[g]))
            predicted, _ = sofic_parameters(defect, 0, k)
            measured = hamming(amplified[fg], compose(amplified[f], amplified[g]))
            self.report.add("amplified_product({},{})".format(f, g),
                            measured == predicted, measured,
                            None if measured == predicted
                            else {"predicted": format_rational(predicted)})
        for f in labels:
            if f == theta.identity:
                continue
            distance = hamming(theta[f], identity)
            distances.append(distance)
            _, predicted = sofic_parameters(0, distance, k)
            measured = hamming(amplified[f], large)
            self.report.add("amplified_identity_distance({})".format(f),
                            measured == predicted, measured,
                            None if measured == predicted
                            else {"predicted": format_rational(predicted)})
        if self.params["eps"] is not None:
            eps = self.rational("eps")
            self.report.extend(check_sofic(amplified, labels, eps, mult), "sofic")
            if distances and min(distances) > 0:
                power = amplification_power(min(distances), eps)
                self.report.add("amplification_power", True, power)

    def run_subshift_lef(self):
        sub = get_substitution(self.params["substitution"])
        gens = [load_element(name.strip(), sub, self.budget)
                for name in str(self.params["gens"]).split(",") if name.strip()]
        if not gens:
            raise InputError("no generator files given")
        quotient = lef_quotient(gens, self.integer("r", minimum=0), budget=self.budget)
        self.report.add("modulus", True, quotient.modulus)
        self.report.add("ball_size", True, len(quotient.elements))
        theta, labels, mult = quotient.as_assignment()
        for label in labels:
            image = theta[label]
            self.report.add("permutation({})".format(label), image.is_bijection())
        self.report.extend(check_lef(theta, labels, mult))

    def run_odometer_compress(self):
        section = load_section(self.params["section"])
        n = self.integer("n", minimum=1)
        theta = compressed_rep(section, n, self.budget)
        spec = compressed_spec(section, n, self.rational("eps"), self.budget)
        for label in spec.labels:
            self.report.add("epsilon({})".format(label), True, spec.lower_bounds[label])
        self.report.extend(check_compressed(theta, spec, section.mult))
        if self.params["k"] is not None:
            amplified = amplify_witness(theta, self.integer("k", minimum=1), self.budget)
            self.report.extend(check_compressed(amplified, spec, section.mult),
                               "amplified")

    def run_lamp_embed(self):
        action = parse_action_spec(self.params["action"])
        l, n = self.integer("l", minimum=0), self.integer("n", minimum=0)
        mode = self.params["mode"]
        self.report.extend(verify_embedding(
            action, l, n, mode, self.config.seed, self.integer("samples", minimum=1),
            self.budget))
        if self.params["threshold"] is not None:
            threshold = embedding_threshold(action, l, self.integer("threshold", minimum=l),
                                            mode, self.config.seed, self.budget)
            self.report.add("threshold", threshold is not None, threshold)

    def run_ballstats_compare(self):
        first = parse_labeled_action(self.params["first"])
        second = parse_labeled_action(self.params["second"])
        t = self.integer("t", minimum=0)
        tol = self.rational("tol")
        distance = tv_distance(ball_distribution(first, t, self.budget),
                               ball_distribution(second, t, self.budget))
        self.report.add("tv_distance", distance <= tol, distance,
                        None if distance <= tol else {"tol": format_rational(tol)})
        root = self.integer("root", minimum=0)
        rooted = rooted_distance(TrElement(first, root), TrElement(second, root), t,
                                 self.budget)
        self.report.add("rooted_distance", True,
                        rooted if rooted else "<= 2^-{}".format(t))

    def run_selftest(self):
        self.report.extend(selftest(self.config.seed, self.budget))


def parse_labeled_action(spec):
    """
    Args:
        spec (str): "cycle:n", "odometer:n:k" or an action file

    Returns:
        (LabeledAction)
    """
    fields = str(spec).split(":")
    if fields[0] == "cycle" and len(fields) == 2:
        n = _integer(fields[1], "cycle length", minimum=1)
        return LabeledAction.from_permutations({"s1": [(v + 1) % n for v in range(n)]})
    if fields[0] == "odometer" and len(fields) == 3:
        return odometer_action(_integer(fields[1], "odometer depth", minimum=1),
                               _integer(fields[2], "label width", minimum=0))
    return load_action(spec)


def _error_witness(error):
    witness = {"error": error.__class__.__name__, "message": str(error)}
    if isinstance(error, ParseError):
        witness.update({"path": error.path, "line": error.line})
    if isinstance(error, BudgetExceeded):
        witness.update({"budget": error.budget, "limit": error.limit})
    if getattr(error, "witness", None):
        witness["witness"] = error.witness
    return witness


def run(config):
    """
    Runs one pipeline and writes its report

    Args:
        config (RunConfig): resolved configuration

    Returns:
        (Report, int) the report and the process exit code
    """
    start = time.time()
    runner = PipelineRunner(config)
    report = runner.report
    try:
        runner.run()
        code = EXIT_PASS if report.passed else EXIT_FAIL
    except BudgetExceeded as e:
        FORGE_LOGGER.warning("%s", e)
        report.add("budget", False, witness=_error_witness(e))
        code = EXIT_BUDGET
    except InputError as e:
        FORGE_LOGGER.error("%s", e)
        report.add("input", False, witness=_error_witness(e))
        code = EXIT_FAIL
    except VerificationError as e:
        FORGE_LOGGER.error("%s", e)
        report.add("certificate", False, witness=_error_witness(e))
        code = EXIT_FAIL
    report.duration = time.time() - start
    FORGE_LOGGER.info("%s finished: %d checks, %d failed", config.pipeline,
                      len(report.checks), len(report.failures))
    if config.report:
        report.dump(config.report)
    return report, code


def main(argv=None):
    """
    Console entry point

    Args:
        argv ([str]): arguments, sys.argv[1:] by default

    Returns:
        (int) exit code
    """
    try:
        args = docopt(__doc__, argv=argv, version=__version__)
    except DocoptExit as e:
        print(e, file=sys.stderr)
        return EXIT_FAIL
    try:
        config = RunConfig.from_arguments(args)
    except ForgeError as e:
        print(e, file=sys.stderr)
        return EXIT_FAIL
    report, code = run(config)
    print(report.as_dataframe().to_string(index=False))
    print("{}: {}".format(config.pipeline, "pass" if report.passed else "FAIL"))
    return code


if __name__ == "__main__":
    sys.exit(main())
