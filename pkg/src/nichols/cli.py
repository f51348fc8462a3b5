"""Command-line front end.

Exit status: 0 success, 1 negative mathematical verdict (mismatch,
violation), 2 input error, 3 budget exhausted.  The result document is
written once, atomically, to --out (or stdout).
"""

import argparse
import json
import os
import sys
import tempfile

from .errors import BudgetExceeded, InputError
from .jobs import COMMANDS, InvalidInput, Job, run

EXIT_OK, EXIT_VERDICT, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

PARAM_FLAGS = ("d", "N", "n", "p", "q", "tag", "seed", "count", "budget", "work_budget")


def build_parser():
    p = argparse.ArgumentParser(
        prog="nichols",
        description="Exact Nichols algebra dimensions, covers, approximations and twists.",
    )
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--job", metavar="FILE", help="JSON job description")
    src.add_argument("--command", choices=sorted(COMMANDS), help="command to run")
    p.add_argument("--input", metavar="FILE", help="input JSON file, or fixture:NAME")
    p.add_argument("--fixture", metavar="NAME", help="use a built-in input")
    p.add_argument("--d", type=int, help="cover / truncation degree")
    p.add_argument("--N", type=int, help="top degree of the computed tables")
    p.add_argument("--n", type=int, help="single degree (symmetrizer, ideal)")
    p.add_argument("--p", type=int, help=argparse.SUPPRESS)
    p.add_argument("--q", type=int, help=argparse.SUPPRESS)
    p.add_argument("--tag", choices=["tensor", "shuffle", "nichols"], help="source algebra")
    p.add_argument("--budget", type=int, help="max dimension of one graded component")
    p.add_argument("--work-budget", dest="work_budget", type=int, help="max word applications")
    p.add_argument("--seed", type=int, help="seed for randomized suites")
    p.add_argument("--count", type=int, help="instances in randomized suites")
    p.add_argument("--format", choices=["json", "tsv"], help="output format (default json)")
    p.add_argument("--out", metavar="FILE", help="output file (default stdout)")
    p.add_argument("--workers", type=int, default=None, help="worker processes (default 1)")
    p.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="extra job parameter; VALUE is read as JSON when possible",
    )
    return p


def parse_param(text):
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise InputError(f"--param expects KEY=VALUE, got {text!r}")
    try:
        return key, json.loads(value)
    except json.JSONDecodeError:
        return key, value


def job_from_args(args):
    params = {}
    fmt, workers, base_dir, inp = "json", 1, os.getcwd(), None
    if args.job:
        try:
            with open(args.job, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read job file {args.job}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise InputError(f"job file {args.job} is not valid JSON: {exc}") from None
        if not isinstance(data, dict) or "command" not in data:
            raise InputError("a job file is a JSON object with a 'command'")
        command = data["command"]
        inp = data.get("input")
        fmt = data.get("format", fmt)
        workers = data.get("workers", workers)
        base_dir = os.path.dirname(os.path.abspath(args.job))
        params = {k: v for k, v in data.items() if k not in ("command", "input", "format", "workers")}
    else:
        command = args.command
    if args.fixture:
        inp = f"fixture:{args.fixture}"
    if args.input:
        inp = args.input
        base_dir = os.getcwd()
    for text in args.param:
        key, value = parse_param(text)
        params[key] = value
    for key in PARAM_FLAGS:
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    if args.format:
        fmt = args.format
    if args.workers is not None:
        workers = args.workers
    return Job(command, inp, params, fmt, int(workers), base_dir)


def render(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_atomic(text, path):
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".nichols-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def execute(argv=None):
    """Run the CLI; returns (exit status, output text, message for stderr)."""
    args = build_parser().parse_args(argv)
    try:
        job = job_from_args(args)
        outcome = run(job)
    except InvalidInput as exc:
        return EXIT_INPUT, render(exc.payload), f"invalid input: {exc}", args.out
    except BudgetExceeded as exc:
        doc = {"error": "budget", "message": str(exc), "size": exc.size, "limit": exc.limit}
        if exc.partial is not None:
            doc["partial"] = exc.partial.to_json()
        return EXIT_BUDGET, render(doc), f"budget exceeded: {exc}", args.out
    except InputError as exc:
        return EXIT_INPUT, render({"error": "input", "message": str(exc)}), f"input error: {exc}", args.out
    if job.format == "tsv":
        text = outcome.table.to_tsv()
    else:
        text = render(outcome.payload)
    return outcome.status, text, None, args.out


def main(argv=None):
    status, text, message, out = execute(argv)
    if message:
        print(message, file=sys.stderr)
    write_atomic(text, out)
    return status


if __name__ == "__main__":
    sys.exit(main())
