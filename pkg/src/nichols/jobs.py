"""Batch jobs: input documents, command dispatch and result documents.

Every input is a JSON object with a ``type`` field:

    rack           {"op", "labels"?, "group"?, "elements"?}
    group          {"mul", "identity"?, "labels"?}
    rack-cocycle   {"rack", "q"}
    group-cocycle  {"group", "sigma"}
    diagonal       {"Q"}
    braiding       {"dim", "entries", "provenance"?}
    matrix         {"rows", "cols", "entries"}
    truncated      {"d", "dims", "mult"}
    presentation   {"dims", "relations"}
    twist          {"rack" (with its group embedding), "q", "sigma", "qprime"?}
    fixture        {"name"}

A command returns an :class:`Outcome`: an exit status (0 success, 1
negative verdict) and a JSON payload, plus a HilbertPrefix for commands
that can also be written as TSV.
"""

import json
import math
import os
import random
from dataclasses import dataclass, field

from . import approx, braiding, tensor, twist
from .cocycles import (
    GroupCocycle,
    RackCocycle,
    twist_rack_cocycle,
    validate_group_cocycle,
    validate_rack_cocycle,
)
from .config import Budget
from .errors import InputError
from .fixtures import fixture, fixtures
from .instances import random_ybe_instance
from .linalg import SparseMatrix, nullspace_basis, rank
from .racks import GroupTable, Rack, check_embedding, validate_rack
from .scalars import as_scalar, common_modulus, embed, embed_all, format_scalar

DEFAULTS = {"N": 5, "d": 2, "n": 2, "tag": "nichols", "seed": 0, "count": 10}


@dataclass
class Job:
    command: str
    input: object = None
    params: dict = field(default_factory=dict)
    format: str = "json"
    workers: int = 1
    base_dir: str = "."

    def get(self, key):
        value = self.params.get(key)
        return DEFAULTS.get(key) if value is None else value

    def int_param(self, key, minimum=0):
        value = self.get(key)
        try:
            value = int(value)
        except (TypeError, ValueError):
            raise InputError(f"parameter {key} must be an integer, got {value!r}") from None
        if value < minimum:
            raise InputError(f"parameter {key} must be >= {minimum}, got {value}")
        return value

    @property
    def budget(self):
        b = Budget()
        ambient = self.params.get("budget")
        work = self.params.get("work_budget")
        return Budget(
            ambient=b.ambient if ambient is None else int(ambient),
            work=b.work if work is None else int(work),
        )


@dataclass
class Outcome:
    status: int
    payload: dict
    table: object = None


# inputs


def load_input(ref, base_dir="."):
    """Resolve an input reference (inline object, file path or ``fixture:NAME``)."""
    if ref is None:
        raise InputError("this command needs an input")
    if isinstance(ref, str):
        if ref.startswith("fixture:"):
            return fixture(ref[len("fixture:") :])
        path = ref if os.path.isabs(ref) else os.path.join(base_dir, ref)
        try:
            with open(path, encoding="utf-8") as fh:
                ref = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read input file {path}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise InputError(f"input file {path} is not valid JSON: {exc}") from None
    if not isinstance(ref, dict):
        raise InputError("an input must be a JSON object")
    if ref.get("type") == "fixture":
        return fixture(ref.get("name", ""))
    if "type" not in ref:
        raise InputError("input object needs a 'type' field")
    return ref


def parse_matrix(obj):
    try:
        rows, cols, raw = int(obj["rows"]), int(obj["cols"]), obj["entries"]
    except (KeyError, TypeError, ValueError):
        raise InputError("matrix JSON needs 'rows', 'cols' and 'entries'") from None
    ents = {}
    for item in raw:
        if not isinstance(item, (list, tuple)) or len(item) != 3:
            raise InputError(f"matrix entry {item!r} is not [row, col, scalar]")
        ents[(int(item[0]), int(item[1]))] = as_scalar(item[2])
    m = common_modulus(*(x.modulus for x in ents.values())) if ents else 1
    return SparseMatrix(rows, cols, {k: embed(x, m) for k, x in ents.items()}, m)


def _braiding_matrix(obj):
    """The (unchecked) matrix of c described by a braiding-like input."""
    kind = obj["type"]
    if kind == "braiding":
        dim = int(obj.get("dim", 0))
        M = parse_matrix({"rows": dim * dim, "cols": dim * dim, "entries": obj.get("entries", [])})
        return M
    if kind == "matrix":
        return parse_matrix(obj)
    if kind == "diagonal":
        rows = [[as_scalar(v) for v in r] for r in obj.get("Q", [])]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise InputError("diagonal braiding needs a square non-empty table 'Q'")
        m = common_modulus(*(v.modulus for r in rows for v in r))
        return SparseMatrix(
            n * n, n * n, {(j * n + i, i * n + j): embed(rows[i][j], m) for i in range(n) for j in range(n)}, m
        )
    if kind in ("rack-cocycle", "twist"):
        X = Rack.from_json(obj["rack"])
        q = RackCocycle(X, obj["q"])
        n = X.size
        return SparseMatrix(
            n * n, n * n, {(X.op[x][y] * n + x, x * n + y): q.q[x][y] for x in range(n) for y in range(n)}, q.modulus
        )
    raise InputError(f"input of type {kind!r} does not describe a braiding")


def build_braiding(obj):
    kind = obj["type"]
    if kind == "diagonal":
        return braiding.braiding_diagonal(obj.get("Q", []))
    if kind in ("rack-cocycle", "twist"):
        q = RackCocycle.from_json({"rack": obj["rack"], "q": obj["q"]})
        return braiding.braiding_from_rack(q.rack, q)
    if kind == "braiding":
        return braiding.Braiding.from_json(obj)
    raise InputError(f"input of type {kind!r} does not describe a braiding")


def build_twist(obj):
    if obj["type"] != "twist":
        raise InputError("this command needs a 'twist' input (rack with embedding, q, sigma)")
    X = Rack.from_json(obj["rack"])
    if not X.embedded:
        raise InputError("the twist input's rack needs 'group' and 'elements'")
    q = RackCocycle.from_json({"rack": obj["rack"], "q": obj["q"]})
    sigma = GroupCocycle.from_json({"group": obj["rack"]["group"], "sigma": obj["sigma"]})
    qprime = RackCocycle(q.rack, obj["qprime"]) if obj.get("qprime") is not None else None
    return q, sigma, qprime


def build_presentation(obj):
    if obj["type"] != "presentation":
        raise InputError("this command needs a 'presentation' input")
    gens = tensor.GradedGenerators(obj.get("dims", []))
    rels_raw = obj.get("relations", [])
    scalars = [as_scalar(t[0]) for rel in rels_raw for t in rel]
    rels = tensor.RelationSet(gens, common_modulus(*(s.modulus for s in scalars)) if scalars else 1)
    for rel in rels_raw:
        rels.add_terms([(t[0], t[1]) for t in rel])
    return gens, rels


def build_truncated(obj):
    if obj["type"] != "truncated":
        raise InputError("this command needs a 'truncated' input")
    return approx.TruncatedBialgebra.from_json(obj)


# validation


def validation_report(obj):
    """The first Violation found in an input document, or None if it is valid."""
    kind = obj["type"]
    try:
        if kind == "rack":
            X = Rack.from_json(obj, validate=False)
            bad = validate_rack(X)
            if bad is None and X.embedded:
                check_embedding(X)
        elif kind == "group":
            GroupTable.from_json(obj)
            bad = None
        elif kind == "rack-cocycle" or kind == "twist":
            X = Rack.from_json(obj["rack"], validate=False)
            bad = validate_rack(X)
            if bad is None:
                if X.embedded:
                    check_embedding(X)
                bad = validate_rack_cocycle(X, RackCocycle(X, obj["q"]))
            if bad is None and kind == "twist":
                q, sigma, qprime = build_twist(obj)
                bad = validate_group_cocycle(sigma.group, sigma)
                if bad is None:
                    _, bad = twist_rack_cocycle(q.rack, q, sigma)
                if bad is None and qprime is not None:
                    bad = validate_rack_cocycle(q.rack, qprime)
        elif kind == "group-cocycle":
            G = GroupTable.from_json(obj["group"])
            bad = validate_group_cocycle(G, GroupCocycle(G, obj["sigma"]))
        elif kind in ("diagonal", "braiding"):
            M = _braiding_matrix(obj)
            bad = braiding.check_yang_baxter(M)
            if bad is None:
                build_braiding(obj)
        elif kind == "matrix":
            parse_matrix(obj)
            bad = None
        elif kind == "truncated":
            A = approx.TruncatedBialgebra.from_json(obj, validate=False)
            bad = A.associativity_violation()
        elif kind == "presentation":
            build_presentation(obj)
            bad = None
        else:
            raise InputError(f"unknown input type {kind!r}")
    except KeyError as exc:
        raise InputError(f"input of type {kind!r} is missing field {exc}") from None
    return bad


# commands


def _prefix_outcome(command, prefix, extra=None):
    payload = {"command": command, **prefix.to_json()}
    if extra:
        payload.update(extra)
    return Outcome(0, payload, prefix)


def _vector(obj, modulus=None):
    if isinstance(obj, dict):
        items = [(int(k), as_scalar(v)) for k, v in obj.items()]
    elif isinstance(obj, list) and all(isinstance(t, (list, tuple)) and len(t) == 2 for t in obj):
        items = [(int(k), as_scalar(v)) for k, v in obj]
    elif isinstance(obj, list):
        items = [(k, as_scalar(v)) for k, v in enumerate(obj)]
    else:
        raise InputError("vectors are objects {index: scalar} or lists")
    out = {}
    for k, x in items:
        if modulus is not None:
            x = embed(x, modulus)
        if x:
            out[k] = x
    return out


def _same_field(c, *vectors):
    """Lift the braiding and the vectors to the smallest common cyclotomic field."""
    m = common_modulus(c.modulus, *(x.modulus for v in vectors for x in v.values()))
    if m != c.modulus:
        c = c.embedded(m)
    return (c,) + tuple({k: embed(x, m) for k, x in v.items()} for v in vectors)


def _vector_json(v):
    return [[k, format_scalar(x)] for k, x in sorted(v.items())]


def _matrix_json(M):
    return {
        "rows": M.rows,
        "cols": M.cols,
        "entries": [[r, c, format_scalar(x)] for (r, c), x in sorted(M.entries.items())],
    }


def cmd_fixtures(job):
    return Outcome(
        0,
        {
            "command": "fixtures",
            "fixtures": [
                {"name": name, "type": obj["type"], "description": desc}
                for name, (desc, obj) in sorted(fixtures().items())
            ],
        },
    )


def cmd_validate(job):
    obj = load_input(job.input, job.base_dir)
    bad = validation_report(obj)
    payload = {"command": "validate", "kind": obj["type"], "valid": bad is None}
    if bad is not None:
        payload["violation"] = bad.to_json()
        raise InvalidInput(payload)
    return Outcome(0, payload)


class InvalidInput(InputError):
    """Raised by ``validate`` so the CLI reports exit code 2 with the payload."""

    def __init__(self, payload):
        super().__init__(payload["violation"]["detail"])
        self.payload = payload


def cmd_yangbaxter(job):
    obj = load_input(job.input, job.base_dir)
    M = _braiding_matrix(obj)
    bad = braiding.check_yang_baxter(M)
    payload = {"command": "yangbaxter", "dim": math.isqrt(M.rows), "holds": bad is None}
    if bad is not None:
        payload["violation"] = bad.to_json()
    return Outcome(0 if bad is None else 1, payload)


def cmd_nichols(job):
    c = build_braiding(load_input(job.input, job.base_dir))
    N = job.int_param("N")
    return _prefix_outcome("nichols", approx.nichols_dims(c, N, job.budget, job.workers))


def cmd_cover(job):
    c = build_braiding(load_input(job.input, job.base_dir))
    d, N = job.int_param("d", 1), job.int_param("N")
    return _prefix_outcome("cover", approx.cover_dims(c, d, N, job.budget, job.workers), {"d": d})


def cmd_cover_check(job):
    c = build_braiding(load_input(job.input, job.base_dir))
    d, N = job.int_param("d", 1), job.int_param("N")
    v = approx.cover_check(c, d, N, job.budget, job.workers)
    return Outcome(0 if v.agree else 1, {"command": "cover-check", **v.to_json()})


def cmd_braiding(job):
    c = build_braiding(load_input(job.input, job.base_dir))
    return Outcome(0, {"command": "braiding", "braiding": {"type": "braiding", **c.to_json()}, "monomial": c.is_monomial})


def cmd_symmetrizer(job):
    c = build_braiding(load_input(job.input, job.base_dir))
    n = job.int_param("n", 1)
    Q = braiding.quantum_symmetrizer(c, n, job.budget, workers=job.workers)
    return Outcome(0, {"command": "symmetrizer", "n": n, "rank": rank(Q), "matrix": _matrix_json(Q)})


def cmd_truncate(job):
    c = build_braiding(load_input(job.input, job.base_dir))
    A = approx.truncate_graded_algebra(c, job.get("tag"), job.int_param("d", 1), job.budget, job.workers)
    return Outcome(0, {"command": "truncate", "tag": job.get("tag"), "algebra": {"type": "truncated", **A.to_json()}})


def cmd_extend(job):
    A = build_truncated(load_input(job.input, job.base_dir))
    return _prefix_outcome("extend", approx.extension_dims(A, job.int_param("N"), job.budget, job.workers))


def cmd_approx(job):
    c = build_braiding(load_input(job.input, job.base_dir))
    d, N = job.int_param("d", 1), job.int_param("N")
    prefix = approx.approximation_dims(c, job.get("tag"), d, N, job.budget, job.workers)
    return _prefix_outcome("approx", prefix, {"d": d, "tag": job.get("tag")})


def cmd_quotient(job):
    gens, rels = build_presentation(load_input(job.input, job.base_dir))
    return _prefix_outcome("quotient", tensor.quotient_dims(gens, rels, job.int_param("N"), job.budget, job.workers))


def cmd_ideal(job):
    gens, rels = build_presentation(load_input(job.input, job.base_dir))
    n = job.int_param("n")
    dim = tensor.ideal_component_dim(gens, rels, n, job.budget, job.workers)
    return Outcome(0, {"command": "ideal", "n": n, "dim": dim, "ambient": tensor.word_basis(gens, n).dim})


def cmd_shuffle(job):
    c = build_braiding(load_input(job.input, job.base_dir))
    p, q = job.int_param("p"), job.int_param("q")
    c, u, v = _same_field(c, _vector(job.get("u")), _vector(job.get("v")))
    w = tensor.shuffle_product(c, u, p, v, q, job.budget)
    return Outcome(0, {"command": "shuffle", "degree": p + q, "vector": _vector_json(w)})


def cmd_matsumoto(job):
    perm = job.get("permutation")
    if perm is None:
        raise InputError("matsumoto needs a 'permutation' parameter (one-line notation)")
    w = braiding.matsumoto_word(perm)
    return Outcome(0, {"command": "matsumoto", "permutation": list(perm), "word": list(w.letters)})


def cmd_rank(job):
    M = parse_matrix(load_input(job.input, job.base_dir))
    return Outcome(0, {"command": "rank", "rank": rank(M, job.workers)})


def cmd_nullspace(job):
    M = parse_matrix(load_input(job.input, job.base_dir))
    basis = nullspace_basis(M)
    return Outcome(0, {"command": "nullspace", "dimension": len(basis), "basis": [_vector_json(v) for v in basis]})


def cmd_twist_cocycle(job):
    q, sigma, _ = build_twist(load_input(job.input, job.base_dir))
    qp, bad = twist_rack_cocycle(q.rack, q, sigma)
    payload = {"command": "twist-cocycle", "qprime": [[format_scalar(x) for x in row] for row in qp.q], "valid": bad is None}
    if bad is not None:
        payload["violation"] = bad.to_json()
    return Outcome(0 if bad is None else 1, payload)


def cmd_twist(job):
    q, sigma, qprime = build_twist(load_input(job.input, job.base_dir))
    report = twist.twist_invariance_check(
        q, sigma, job.int_param("d", 1), job.int_param("N"), job.budget, job.workers, qprime=qprime
    )
    return Outcome(0 if report.ok else 1, {"command": "twist", **report.to_json()})


def cmd_intertwine(job):
    q, sigma, qprime = build_twist(load_input(job.input, job.base_dir))
    if qprime is None:
        qprime, _ = twist_rack_cocycle(q.rack, q, sigma)
    N = job.int_param("N", 2)
    verified, bad = 1, None
    for n in range(2, N + 1):
        bad = twist.verify_intertwining(q, qprime, sigma, n, job.budget)
        if bad:
            break
        verified = n
    payload = {"command": "intertwine", "verified_up_to_n": verified, "holds": bad is None}
    if bad is not None:
        payload["violation"] = bad.to_json()
    return Outcome(0 if bad is None else 1, payload)


def cmd_ybe_suite(job):
    seed, count = job.int_param("seed"), job.int_param("count", 1)
    rng = random.Random(seed)
    results, failures = [], 0
    for _ in range(count):
        X, q = random_ybe_instance(rng)
        bad = braiding.check_yang_baxter(_braiding_matrix({"type": "rack-cocycle", **q.to_json()}))
        failures += bad is not None
        results.append({"size": X.size, "modulus": q.modulus, "holds": bad is None})
    return Outcome(1 if failures else 0, {"command": "ybe-suite", "seed": seed, "instances": results, "failures": failures})


def cmd_extension_suite(job):
    seed, count = job.int_param("seed"), job.int_param("count", 1)
    rng = random.Random(seed)
    results, failures = [], 0
    for _ in range(count):
        A = approx.random_truncated_algebra(rng)
        ext = approx.extension_dims(A, A.d, job.budget, job.workers)
        ok = ext.dims[1:] == list(A.dims)
        failures += not ok
        results.append({"dims": list(A.dims), "extension_dims": ext.dims, "holds": ok})
    return Outcome(1 if failures else 0, {"command": "extension-suite", "seed": seed, "instances": results, "failures": failures})


def cmd_scalar(job):
    op = job.get("op")
    a = job.get("a")
    if a is None:
        raise InputError("scalar needs an operand 'a'")
    a = as_scalar(a)
    unary = {"inverse": lambda x: x.inverse(), "neg": lambda x: -x}
    binary = {
        "add": lambda x, y: x + y,
        "sub": lambda x, y: x - y,
        "mul": lambda x, y: x * y,
        "div": lambda x, y: x / y,
        "eq": lambda x, y: x == y,
    }
    try:
        if op in unary:
            value = unary[op](a)
        elif op in binary:
            b = job.get("b")
            if b is None:
                raise InputError(f"scalar {op} needs a second operand 'b'")
            b = as_scalar(b)
            if job.get("embed"):
                (a, b), _ = embed_all([a, b])
            value = binary[op](a, b)
        else:
            raise InputError(f"unknown scalar op {op!r}; expected one of {', '.join([*unary, *binary])}")
    except ZeroDivisionError as exc:
        raise InputError(str(exc)) from None
    result = value if isinstance(value, bool) else format_scalar(value)
    return Outcome(0, {"command": "scalar", "op": op, "result": result})


def cmd_symmetric_group(job):
    from .racks import element_order, symmetric_group

    G = symmetric_group(job.int_param("n", 1))
    orders = [element_order(G, g) for g in range(G.size)]
    return Outcome(
        0,
        {
            "command": "symmetric-group",
            "group": {"type": "group", **G.to_json()},
            "orders": orders,
            "involutions": sum(1 for k in orders if k == 2),
        },
    )


def _group_input(obj):
    if obj["type"] == "group":
        return GroupTable.from_json(obj)
    if obj["type"] in ("rack", "twist", "rack-cocycle"):
        rack = obj if obj["type"] == "rack" else obj["rack"]
        if rack.get("group") is None:
            raise InputError("this input carries no group")
        return GroupTable.from_json(rack["group"])
    raise InputError(f"input of type {obj['type']!r} does not describe a group")


def cmd_conjugation_rack(job):
    from .racks import conjugacy_class, conjugation_rack

    G = _group_input(load_input(job.input, job.base_dir))
    subset = job.get("subset")
    if subset is None:
        g = job.get("class_of")
        if g is None:
            raise InputError("conjugation-rack needs 'subset' or 'class_of'")
        subset = conjugacy_class(G, int(g))
    X = conjugation_rack(G, subset)
    return Outcome(0, {"command": "conjugation-rack", "rack": {"type": "rack", **X.to_json()}})


def cmd_coboundary(job):
    from .cocycles import coboundary

    G = _group_input(load_input(job.input, job.base_dir))
    mu = job.get("mu")
    if mu is None:
        raise InputError("coboundary needs 'mu' (one scalar per group element)")
    sigma = coboundary(G, mu)
    bad = validate_group_cocycle(G, sigma)
    return Outcome(0, {"command": "coboundary", "cocycle": {"type": "group-cocycle", **sigma.to_json()}, "valid": bad is None})


def cmd_braid_apply(job):
    c = build_braiding(load_input(job.input, job.base_dir))
    n = job.int_param("n", 1)
    word = braiding.BraidWord(max(n, 1), job.get("word") or ())
    c, v = _same_field(c, _vector(job.get("v") or {}))
    return Outcome(0, {"command": "braid-apply", "n": n, "vector": _vector_json(braiding.braid_rep_apply(c, n, word, v))})


def cmd_word_basis(job):
    dims = job.get("dims")
    if dims is None:
        raise InputError("word-basis needs 'dims'")
    wb = tensor.word_basis(tensor.GradedGenerators(dims), job.int_param("n"))
    return Outcome(
        0,
        {
            "command": "word-basis",
            "n": wb.n,
            "dim": wb.dim,
            "compositions": [list(c) for c in wb.compositions],
        },
    )


def cmd_intertwiner(job):
    q, sigma, _ = build_twist(load_input(job.input, job.base_dir))
    n = job.int_param("n", 1)
    f = twist.intertwiner_matrix(q.rack, sigma, n, job.budget)
    entries = [
        [list(twist._word(k, q.rack.size, n)), format_scalar(x)] for k, x in enumerate(f.diagonal)
    ]
    return Outcome(0, {"command": "intertwiner", "n": n, "diagonal": entries})


COMMANDS = {
    "validate": cmd_validate,
    "yangbaxter": cmd_yangbaxter,
    "braiding": cmd_braiding,
    "nichols": cmd_nichols,
    "cover": cmd_cover,
    "cover-check": cmd_cover_check,
    "symmetrizer": cmd_symmetrizer,
    "truncate": cmd_truncate,
    "extend": cmd_extend,
    "approx": cmd_approx,
    "quotient": cmd_quotient,
    "ideal": cmd_ideal,
    "shuffle": cmd_shuffle,
    "matsumoto": cmd_matsumoto,
    "rank": cmd_rank,
    "nullspace": cmd_nullspace,
    "twist-cocycle": cmd_twist_cocycle,
    "twist": cmd_twist,
    "intertwine": cmd_intertwine,
    "ybe-suite": cmd_ybe_suite,
    "extension-suite": cmd_extension_suite,
    "fixtures": cmd_fixtures,
    "scalar": cmd_scalar,
    "symmetric-group": cmd_symmetric_group,
    "conjugation-rack": cmd_conjugation_rack,
    "coboundary": cmd_coboundary,
    "braid-apply": cmd_braid_apply,
    "word-basis": cmd_word_basis,
    "intertwiner": cmd_intertwiner,
}

TABLE_COMMANDS = ("nichols", "cover", "extend", "approx", "quotient")


def run(job):
    """Execute a job; raises InputError, UnsupportedFeature or BudgetExceeded."""
    fn = COMMANDS.get(job.command)
    if fn is None:
        raise InputError(f"unknown command {job.command!r}; expected one of {', '.join(COMMANDS)}")
    if job.format not in ("json", "tsv"):
        raise InputError(f"unknown format {job.format!r}")
    if job.format == "tsv" and job.command not in TABLE_COMMANDS:
        raise InputError(f"TSV output is available for {', '.join(TABLE_COMMANDS)} only")
    try:
        return fn(job)
    except KeyError as exc:
        raise InputError(f"input is missing field {exc}") from None

