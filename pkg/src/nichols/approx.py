"""Nichols algebra dimensions, d-atic covers, truncation, extension and approximation."""

import random
from dataclasses import dataclass

from .braiding import braid_orbit_blocks, quantum_symmetrizer
from .config import as_budget
from .errors import BudgetExceeded, InputError, Violation
from .hilbert import HilbertPrefix
from .linalg import (
    SparseMatrix,
    independent_columns,
    nullspace_basis,
    rank,
    solve_in_span,
)
from .scalars import ExactScalar, as_scalar, common_modulus, embed, format_scalar
from .tensor import GradedGenerators, RelationSet, quotient_dims, shuffle_product


def nichols_rank(c, n, budget=None, workers=1, blocked=False):
    """rank Q_n, optionally assembled and reduced one braid-orbit block at a time."""
    if not blocked:
        return rank(quantum_symmetrizer(c, n, budget=budget, workers=workers), workers)
    total = 0
    for block in braid_orbit_blocks(c, n):
        Q = quantum_symmetrizer(c, n, budget=budget, columns=block)
        total += rank(Q)
    return total


def nichols_dims(c, N, budget=None, workers=1, blocked=False):
    """dims[n] = rank Q_n for n = 1..N, dims[0] = 1.

    The Nichols algebra is generated in degree 1, so once a degree vanishes
    all higher ones do; those degrees are filled with 0 without building the
    (possibly over-budget) symmetrizers.
    """
    dims = [1]
    for n in range(1, N + 1):
        if dims[-1] == 0:
            dims.append(0)
            continue
        try:
            dims.append(nichols_rank(c, n, budget, workers, blocked))
        except BudgetExceeded as exc:
            exc.partial = HilbertPrefix.truncated(dims, N)
            raise
    return HilbertPrefix(dims)


def cover_relations(c, d, budget=None, workers=1):
    """ker Q_j for 2 <= j <= d, as a RelationSet on degree-1 generators."""
    rels = RelationSet(GradedGenerators([c.dim]), c.modulus)
    for j in range(2, d + 1):
        for v in nullspace_basis(quantum_symmetrizer(c, j, budget=budget, workers=workers)):
            rels.add(j, v)
    return rels


def cover_dims(c, d, N, budget=None, workers=1):
    """Graded dims of T(V) modulo the ideal generated by ker Q_j, j <= d."""
    if d < 1:
        raise InputError("cover degree d must be >= 1")
    try:
        rels = cover_relations(c, min(d, N), budget, workers)
    except BudgetExceeded as exc:
        exc.partial = HilbertPrefix.truncated([1], N)
        raise
    return quotient_dims(rels.gens, rels, N, budget, workers)


@dataclass
class CoverVerdict:
    d: int
    N: int
    cover: HilbertPrefix
    nichols: HilbertPrefix

    @property
    def mismatch_degree(self):
        for n, (a, b) in enumerate(zip(self.cover.dims, self.nichols.dims)):
            if a != b:
                return n
        return None

    @property
    def agree(self):
        return self.mismatch_degree is None

    def to_json(self):
        n = self.mismatch_degree
        out = {
            "d": self.d,
            "N": self.N,
            "verdict": "agree" if n is None else "mismatch",
            "cover_dims": self.cover.dims,
            "nichols_dims": self.nichols.dims,
        }
        if n is not None:
            out["mismatch"] = {"degree": n, "cover_dim": self.cover[n], "nichols_dim": self.nichols[n]}
        return out

    def summary(self):
        n = self.mismatch_degree
        if n is None:
            return f"agree up to degree {self.N}"
        return f"mismatch at degree {n}: cover {self.cover[n]} vs nichols {self.nichols[n]}"


def cover_check(c, d, N, budget=None, workers=1):
    """Degree-by-degree comparison of the d-atic cover with the Nichols algebra.

    Agreement is only certified through degree N.
    """
    nich = nichols_dims(c, N, budget, workers)
    cov = cover_dims(c, d, N, budget, workers)
    return CoverVerdict(d, N, cov, nich)


# truncated algebras


class TruncatedBialgebra:
    """Graded pieces A_1..A_d (by dimension) with products m[(i, j)], i + j <= d.

    ``mult[(i, j)]`` is a dims[i+j] x (dims[i] dims[j]) matrix; the column of
    x (x) y is ``x * dims[j] + y``.  Only the algebra half of the structure
    is stored.
    """

    def __init__(self, d, dims, mult, modulus=1, validate=True):
        if d < 1:
            raise InputError("truncation degree must be >= 1")
        dims = tuple(int(x) for x in dims)
        if len(dims) != d or any(x < 0 for x in dims):
            raise InputError(f"need {d} non-negative dimensions, got {dims}")
        self.d = d
        self.dims = dims
        self.modulus = modulus
        self.mult = {}
        for i in range(1, d + 1):
            for j in range(1, d + 1 - i):
                M = mult.get((i, j))
                shape = (self.dim(i + j), self.dim(i) * self.dim(j))
                if M is None:
                    M = SparseMatrix.zeros(*shape, modulus=modulus)
                if M.shape != shape:
                    raise InputError(f"m[{i}][{j}] must be {shape[0]}x{shape[1]}, got {M.shape}")
                if M.entries and M.modulus != modulus:
                    M = SparseMatrix(
                        M.rows, M.cols, {k: embed(x, modulus) for k, x in M.entries.items()}, modulus
                    )
                self.mult[(i, j)] = M
        extra = set(mult) - set(self.mult)
        if extra:
            raise InputError(f"products {sorted(extra)} exceed the truncation degree {d}")
        if validate:
            bad = self.associativity_violation()
            if bad:
                raise InputError(f"truncated algebra is not associative: {bad.detail}")

    def dim(self, i):
        return self.dims[i - 1] if 1 <= i <= self.d else 0

    def product(self, i, j, x, y):
        """m[i][j] applied to sparse vectors x in A_i and y in A_j."""
        col = {}
        for a, s in x.items():
            for b, t in y.items():
                col[a * self.dim(j) + b] = s * t
        return self.mult[(i, j)].matvec(col) if col else {}

    def associativity_violation(self):
        one = ExactScalar.one(self.modulus)
        for i in range(1, self.d + 1):
            for j in range(1, self.d + 1):
                for k in range(1, self.d + 1 - i - j):
                    for a in range(self.dim(i)):
                        for b in range(self.dim(j)):
                            for c in range(self.dim(k)):
                                ea, eb, ec = {a: one}, {b: one}, {c: one}
                                lhs = self.product(i + j, k, self.product(i, j, ea, eb), ec)
                                rhs = self.product(i, j + k, ea, self.product(j, k, eb, ec))
                                if lhs != rhs:
                                    return Violation(
                                        "associativity",
                                        (i, j, k, a, b, c),
                                        f"(xy)z != x(yz) for basis elements {a}, {b}, {c} "
                                        f"of degrees {i}, {j}, {k}",
                                    )
        return None

    def to_json(self):
        return {
            "d": self.d,
            "dims": list(self.dims),
            "mult": [
                {
                    "i": i,
                    "j": j,
                    "entries": [[r, col, format_scalar(x)] for (r, col), x in sorted(M.entries.items())],
                }
                for (i, j), M in sorted(self.mult.items())
                if M.entries
            ],
        }

    @classmethod
    def from_json(cls, obj, validate=True):
        try:
            d, dims = int(obj["d"]), obj["dims"]
            blocks = obj.get("mult", [])
        except (KeyError, TypeError, ValueError, AttributeError):
            raise InputError("truncated algebra JSON needs 'd', 'dims' and 'mult'") from None
        raw = {}
        mods = {1}
        for blk in blocks:
            i, j = int(blk["i"]), int(blk["j"])
            ents = {(int(r), int(col)): as_scalar(x) for r, col, x in blk["entries"]}
            mods.update(x.modulus for x in ents.values())
            raw[(i, j)] = ents
        m = common_modulus(*mods)
        dims = [int(x) for x in dims]
        if len(dims) != d:
            raise InputError(f"need {d} dimensions, got {len(dims)}")

        def dim(k):
            return dims[k - 1] if 1 <= k <= d else 0

        mult = {}
        for (i, j), ents in raw.items():
            mult[(i, j)] = SparseMatrix(
                dim(i + j), dim(i) * dim(j), {k: embed(x, m) for k, x in ents.items()}, m
            )
        return cls(d, dims, mult, m, validate=validate)


TAGS = ("tensor", "shuffle", "nichols")


def truncate_graded_algebra(c, tag, d, budget=None, workers=1):
    """Degrees 1..d of the tensor, shuffle or Nichols algebra of (V, c), with products."""
    if tag not in TAGS:
        raise InputError(f"unknown algebra tag {tag!r}; expected one of {', '.join(TAGS)}")
    budget = as_budget(budget)
    dim, mod = c.dim, c.modulus
    one = ExactScalar.one(mod)
    if tag == "tensor":
        dims = [dim**i for i in range(1, d + 1)]
        for k in range(1, d + 1):
            budget.check_ambient(dim**k, f"V^(x){k}")
        mult = {
            (i, j): SparseMatrix.identity(dim ** (i + j), mod)
            for i in range(1, d + 1)
            for j in range(1, d + 1 - i)
        }
        return TruncatedBialgebra(d, dims, mult, mod, validate=False)
    if tag == "shuffle":
        dims = [dim**i for i in range(1, d + 1)]
        mult = {}
        for i in range(1, d + 1):
            for j in range(1, d + 1 - i):
                cols = []
                for x in range(dim**i):
                    for y in range(dim**j):
                        cols.append(shuffle_product(c, {x: one}, i, {y: one}, j, budget))
                mult[(i, j)] = SparseMatrix.from_columns(dim ** (i + j), cols, mod)
        return TruncatedBialgebra(d, dims, mult, mod, validate=False)
    # Nichols algebra: B_k is the image of Q_k, with basis Q_k(e_w) for the
    # pivot columns w; Q_i(u) * Q_j(v) = Q_{i+j}(u (x) v).
    Qs, reps, bases = {}, {}, {}
    for k in range(1, d + 1):
        Q = quantum_symmetrizer(c, k, budget=budget, workers=workers)
        cols = Q.column_dicts()
        Qs[k] = cols
        reps[k] = independent_columns(Q)
        bases[k] = [cols[w] for w in reps[k]]
    dims = [len(reps[k]) for k in range(1, d + 1)]
    mult = {}
    for i in range(1, d + 1):
        for j in range(1, d + 1 - i):
            cols = []
            for u in reps[i]:
                for v in reps[j]:
                    image = Qs[i + j][u * dim**j + v]
                    coords = solve_in_span(bases[i + j], image, mod)
                    cols.append({k: x for k, x in enumerate(coords) if x})
            mult[(i, j)] = SparseMatrix.from_columns(len(reps[i + j]), cols, mod)
    return TruncatedBialgebra(d, dims, mult, mod, validate=False)


def extension_relations(A):
    """x (x) y - m(x (x) y) for basis elements x in A_i, y in A_j, i + j <= d."""
    gens = GradedGenerators(A.dims)
    rels = RelationSet(gens, A.modulus)
    one = ExactScalar.one(A.modulus)
    for i in range(1, A.d + 1):
        for j in range(1, A.d + 1 - i):
            cols = A.mult[(i, j)].column_dicts()
            for x in range(A.dim(i)):
                for y in range(A.dim(j)):
                    terms = [(one, ((i, x), (j, y)))]
                    for k, s in sorted(cols[x * A.dim(j) + y].items()):
                        terms.append((-s, ((i + j, k),)))
                    rels.add_terms(terms)
    return rels


def extension_dims(A, N, budget=None, workers=1):
    """Graded dims of the free algebra on A_1..A_d modulo the products of A."""
    if isinstance(A, TruncatedBialgebra):
        bad = A.associativity_violation()
        if bad:
            raise InputError(f"truncated algebra is not associative: {bad.detail}")
    rels = extension_relations(A)
    return quotient_dims(rels.gens, rels, N, budget, workers)


def approximation_dims(c, tag, d, N, budget=None, workers=1):
    """Extension of the degree-d truncation of the tagged algebra."""
    A = truncate_graded_algebra(c, tag, d, budget, workers)
    return extension_dims(A, N, budget, workers)


def random_truncated_algebra(rng, max_dim=3, max_d=3, d=None, scalar_range=3):
    """A random associative TruncatedBialgebra over Q.

    Products into degree <= 2 are arbitrary; for d = 3 the pair (m[1][2],
    m[2][1]) is drawn from the solution space of the associativity equations
    given m[1][1].
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    d = rng.randint(1, max_d) if d is None else d
    if d > 3:
        raise InputError("random truncated algebras are generated for d <= 3 only")
    dims = [rng.randint(1, max_dim)] + [rng.randint(0, max_dim) for _ in range(d - 1)]

    def rand_matrix(rows, cols):
        entries = {}
        for r in range(rows):
            for col in range(cols):
                v = rng.randint(-scalar_range, scalar_range)
                if v:
                    entries[(r, col)] = ExactScalar.rational(v)
        return SparseMatrix(rows, cols, entries, 1)

    mult = {}
    if d >= 2:
        mult[(1, 1)] = rand_matrix(dims[1], dims[0] ** 2)
    if d == 3:
        mult.update(_associative_completion(rng, dims, mult[(1, 1)], scalar_range))
    return TruncatedBialgebra(d, dims, mult, 1)


def _associative_completion(rng, dims, m11, scalar_range):
    a1, a2, a3 = dims
    n12, n21 = a3 * a1 * a2, a3 * a2 * a1
    if n12 + n21 == 0:
        return {}
    # unknowns: m12[r][x*a2 + t] at r*(a1*a2) + x*a2 + t, then m21[r][t*a1 + z]
    # at n12 + r*(a2*a1) + t*a1 + z.  Equation for (r, x, y, z):
    # sum_t m11[t][y*a1+z] m12[r][x*a2+t] - sum_t m11[t][x*a1+y] m21[r][t*a1+z] = 0
    m = m11.column_dicts()
    eqs = []
    for r in range(a3):
        for x in range(a1):
            for y in range(a1):
                for z in range(a1):
                    row = {}
                    for t, s in m[y * a1 + z].items():
                        k = r * a1 * a2 + x * a2 + t
                        row[k] = row.get(k, 0) + s
                    for t, s in m[x * a1 + y].items():
                        k = n12 + r * a2 * a1 + t * a1 + z
                        row[k] = row.get(k, 0) - s
                    row = {k: v for k, v in row.items() if v}
                    if row:
                        eqs.append(row)
    system = SparseMatrix.from_rows(n12 + n21, eqs, 1) if eqs else SparseMatrix.zeros(0, n12 + n21)
    sol = {}
    for v in nullspace_basis(system):
        coef = rng.randint(-scalar_range, scalar_range)
        for k, x in v.items():
            sol[k] = sol.get(k, 0) + coef * x
    m12 = {(k // (a1 * a2), k % (a1 * a2)): x for k, x in sol.items() if k < n12 and x}
    m21 = {((k - n12) // (a2 * a1), (k - n12) % (a2 * a1)): x for k, x in sol.items() if k >= n12 and x}
    return {
        (1, 2): SparseMatrix(a3, a1 * a2, m12, 1),
        (2, 1): SparseMatrix(a3, a2 * a1, m21, 1),
    }

