#!/usr/bin/python

"""
Command line analysis of monomial systems.

    monomialsystem analyze system.txt
    monomialsystem simulate --max-n 20 system.txt
    monomialsystem check system.txt
    monomialsystem export --what depgraph --out graph.dot system.txt
    monomialsystem generate --n 8 --seed 7 --require fps

Exit status is 0 on success, 1 for invalid input, 2 when a size limit or
the generation attempt limit is exceeded, and 3 when the classifier and the
brute force state space disagree.
"""

import argparse
import json
import logging
import os
import sys
import time

import numpy as np

from .Classify import classify
from .DependencyGraph import DependencyGraph
from .Error import Error, InvalidValueError, ResourceLimitError, VerificationError
from .Monomial import MonomialSystem
from .StateSpace import StateSpace
from .SystemFile import formatSystem, readSystem
from .Transform import randomSystem

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_LIMIT = 2
EXIT_MISMATCH = 3

defaultMaxN = 24
maxNEnvironment = "MONOMIAL_MAX_N"


class _ArgumentParser(argparse.ArgumentParser):
    # Invalid arguments are input errors, not the argparse default status 2
    def error(self, message):
        raise InvalidValueError(message)


def _defaultMaxN():
    value = os.environ.get(maxNEnvironment)
    if not value:
        return defaultMaxN
    try:
        return int(value)
    except ValueError:
        raise InvalidValueError("Invalid " + maxNEnvironment + " value " + repr(value))


def addCommonArguments():
    parser = _ArgumentParser(add_help=False)
    parser.add_argument(
        "--format",
        choices=("human", "structured"),
        default="human",
        help="Report format (default human)",
    )
    parser.add_argument(
        "--max-n",
        type=int,
        default=None,
        help="Largest dimension to brute force (default $" + maxNEnvironment + " or " + str(defaultMaxN) + ")",
    )
    parser.add_argument("--threads", type=int, default=1, help="Worker threads for state enumeration")
    parser.add_argument("--out", help="Output file (default standard output)")
    parser.add_argument("--timings", action="store_true", help="Include stage timings in the report")
    parser.add_argument("--logging", action="store_true", help="Enable trace logging")
    return parser


def _buildParser():
    common = addCommonArguments()
    parser = _ArgumentParser(
        prog="monomialsystem",
        description="Analyse Boolean monomial dynamical systems over F2^n",
    )
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    for name, help in (
        ("analyze", "Classify the system from its dependency graph"),
        ("simulate", "Enumerate the state space and report its limit cycles"),
        ("check", "Compare the classifier verdict with the brute force verdict"),
    ):
        command = commands.add_parser(name, parents=[common], help=help)
        command.add_argument("system_file", help="System definition file")

    export = commands.add_parser("export", parents=[common], help="Write a graph in DOT format")
    export.add_argument("system_file", help="System definition file")
    export.add_argument(
        "--what",
        choices=("depgraph", "statespace"),
        default="depgraph",
        help="Graph to export (default depgraph)",
    )

    generate = commands.add_parser("generate", parents=[common], help="Write a random system")
    generate.add_argument("--n", type=int, default=8, help="System dimension (default 8)")
    generate.add_argument("--density", type=float, default=0.3, help="Probability of each variable in a support")
    generate.add_argument("--zero-prob", type=float, default=0.0, help="Probability of a zero component")
    generate.add_argument("--seed", type=int, help="Random seed")
    generate.add_argument(
        "--require",
        choices=("fps", "non-fps", "any"),
        default="any",
        help="Only accept systems with this verdict",
    )
    generate.add_argument("--attempts", type=int, default=1000, help="Maximum systems tried for --require")
    return parser


class _Timer(object):
    def __init__(self, enabled):
        self._enabled = enabled
        self._timings = {}
        self._start = time.perf_counter()

    def stage(self, name):
        now = time.perf_counter()
        self._timings[name] = round((now - self._start) * 1000.0, 3)
        self._start = now

    def timings(self):
        return dict(self._timings) if self._enabled else None


def buildReport(system, verdict, structure=None, timings=None):
    """
    Machine readable report.  Vertices are numbered from 1.
    """
    components = []
    for c in verdict.componentVerdicts:
        components.append(
            {
                "vertices": [v + 1 for v in c.vertices],
                "loop_number": c.loopNumber,
                "reaches_zero": c.reachesZero,
                "status": c.status.value,
            }
        )
    oracle = None
    if structure is not None:
        oracle = {
            "cycle_counts": dict((str(length), count) for length, count in structure.cycleCounts.items()),
            "fixed_points": len(structure.fixedPoints),
            "max_transient": structure.maxTransient,
        }
    return {
        "n": system.n(),
        "system": formatSystem(system),
        "verdict": verdict.isFixedPointSystem,
        "components": components,
        "vertex_criteria": dict((str(v + 1), c.value) for v, c in enumerate(verdict.vertexCriteria)),
        "oracle": oracle,
        "timings_ms": timings,
    }


def formatReport(report):
    lines = ["System of dimension " + str(report["n"])]
    for c in report["components"]:
        lines.append(
            "Component "
            + ",".join("a" + str(v) for v in c["vertices"])
            + ": loop number "
            + str(c["loop_number"])
            + ", reaches zero "
            + ("yes" if c["reaches_zero"] else "no")
            + ", "
            + c["status"]
        )
    lines.append("Verdict: " + ("fixed-point system" if report["verdict"] else "not a fixed-point system"))
    oracle = report["oracle"]
    if oracle is not None:
        lines.append(
            "State space: cycle counts "
            + " ".join(length + ":" + str(count) for length, count in sorted(oracle["cycle_counts"].items(), key=lambda x: int(x[0])))
            + ", fixed points "
            + str(oracle["fixed_points"])
            + ", max transient "
            + str(oracle["max_transient"])
        )
    if report["timings_ms"] is not None:
        lines.append("Timings (ms): " + ", ".join(k + " " + str(v) for k, v in sorted(report["timings_ms"].items())))
    return "\n".join(lines) + "\n"


def _write(text, out):
    if out:
        with open(out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _emit(args, report, extra=None):
    if args.format == "structured":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        text = formatReport(report)
        if extra:
            text += extra + "\n"
    _write(text, args.out)


def checkSystem(system, maxN=None, threads=None, classifier=classify):
    """
    Classifies the system and brute forces its state space.  Returns the
    verdict, the cycle structure and whether the two agree.
    """
    verdict = classifier(system)
    structure = StateSpace.enumerate(system, maxN, threads).cycleStructure()
    agree = verdict.isFixedPointSystem == structure.isFixedPointSystem()
    if not agree:
        logging.info("Classifier verdict %s disagrees with brute force", verdict.isFixedPointSystem)
    return verdict, structure, agree


def _analyze(args, classifier):
    timer = _Timer(args.timings)
    system = readSystem(args.system_file)
    timer.stage("parse")
    verdict = classifier(system)
    timer.stage("classify")
    _emit(args, buildReport(system, verdict, timings=timer.timings()))
    return EXIT_OK


def _simulate(args, classifier):
    timer = _Timer(args.timings)
    system = readSystem(args.system_file)
    timer.stage("parse")
    verdict = classifier(system)
    timer.stage("classify")
    structure = StateSpace.enumerate(system, args.max_n, args.threads).cycleStructure()
    timer.stage("simulate")
    _emit(args, buildReport(system, verdict, structure, timer.timings()))
    return EXIT_OK


def _check(args, classifier):
    timer = _Timer(args.timings)
    system = readSystem(args.system_file)
    timer.stage("parse")
    verdict, structure, agree = checkSystem(system, args.max_n, args.threads, classifier)
    timer.stage("check")
    message = "Classifier and brute force agree" if agree else "Classifier and brute force DISAGREE"
    _emit(args, buildReport(system, verdict, structure, timer.timings()), message)
    return EXIT_OK if agree else EXIT_MISMATCH


def _export(args, classifier):
    system = readSystem(args.system_file)
    if args.what == "depgraph":
        dot = DependencyGraph.fromSystem(system).toDot()
    else:
        if system.n() > StateSpace.dotLimit:
            raise ResourceLimitError(
                "System dimension " + str(system.n()) + " exceeds the DOT export limit " + str(StateSpace.dotLimit)
            )
        dot = StateSpace.enumerate(system, args.max_n, args.threads).toDot()
    _write(dot, args.out)
    return EXIT_OK


def _generate(args, classifier):
    if args.n < 1 or args.n > MonomialSystem.maxDimension:
        raise InvalidValueError("Invalid system dimension " + str(args.n))
    if args.attempts < 1:
        raise InvalidValueError("Invalid number of attempts " + str(args.attempts))
    rng = np.random.default_rng(args.seed)
    for attempt in range(args.attempts):
        system = randomSystem(args.n, args.density, args.zero_prob, rng)
        if args.require == "any":
            break
        isFixedPointSystem = classifier(system).isFixedPointSystem
        if isFixedPointSystem == (args.require == "fps"):
            break
    else:
        raise ResourceLimitError(
            "No system with verdict " + args.require + " found in " + str(args.attempts) + " attempts"
        )
    logging.info("Generated system after %s attempts", attempt + 1)
    _write(formatSystem(system), args.out)
    return EXIT_OK


_commands = {
    "analyze": _analyze,
    "simulate": _simulate,
    "check": _check,
    "export": _export,
    "generate": _generate,
}


def main(argv=None, classifier=classify):
    """
    Runs the command line and returns the exit status.  The classifier
    argument allows the check command to be run against another classifier.
    """
    try:
        args = _buildParser().parse_args(argv)
        if args.logging:
            logging.basicConfig(level=logging.INFO)
        if args.max_n is None:
            args.max_n = _defaultMaxN()
        logging.info("Running %s", args.command)
        return _commands[args.command](args, classifier)
    except ResourceLimitError as e:
        sys.stderr.write("Limit exceeded: " + str(e) + "\n")
        return EXIT_LIMIT
    except VerificationError as e:
        sys.stderr.write("Verification failed: " + str(e) + "\n")
        return EXIT_MISMATCH
    except (Error, IOError, UnicodeDecodeError) as e:
        sys.stderr.write("Error: " + str(e) + "\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
