"""Braided vector spaces, braid group actions and quantum symmetrizers.

Basis of V^{(x)n}: the word (x_1, ..., x_n) has index sum x_k dim^(n-k), i.e.
lexicographic order with the first tensor factor most significant.  The
braiding is stored as a dim^2 x dim^2 matrix in the same order on V (x) V.

A braid word ``(a_1, ..., a_l)`` stands for sigma_{a_1} ... sigma_{a_l};
negative letters are inverse generators.  Acting on a vector, the rightmost
letter is applied first.  Permutations are tuples in one-line notation with
values 1..n, multiplied as maps: (u v)(i) = u(v(i)).
"""

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .config import as_budget
from .errors import InputError, Violation
from .linalg import SparseMatrix, inverse
from .scalars import ExactScalar, as_scalar, common_modulus, embed, format_scalar


class Braiding:
    """An invertible solution c of the braid equation on V (x) V.

    Construction verifies invertibility and the Yang-Baxter equation and
    raises InputError if either fails (pass ``check=False`` only for data
    already known to be valid).
    """

    def __init__(self, matrix, provenance="explicit", check=True):
        n2 = matrix.rows
        if matrix.rows != matrix.cols:
            raise InputError(f"braiding matrix must be square, got {matrix.shape}")
        dim = math.isqrt(n2)
        if dim * dim != n2 or dim == 0:
            raise InputError(f"braiding size {n2} is not the square of a dimension")
        self.dim = dim
        self.matrix = matrix
        self.modulus = matrix.modulus
        self.provenance = provenance
        self.inverse_matrix = inverse(matrix)
        if check:
            bad = check_yang_baxter(matrix)
            if bad:
                raise InputError(f"braiding fails the Yang-Baxter equation: {bad.detail}")
        self._act = _column_action(matrix)
        self._act_inv = _column_action(self.inverse_matrix)
        self.is_monomial = all(len(col) == 1 for col in self._act)

    def __getstate__(self):
        return (self.matrix, self.provenance)

    def __setstate__(self, state):
        self.__init__(state[0], state[1], check=False)

    def __eq__(self, other):
        return isinstance(other, Braiding) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"Braiding(dim={self.dim}, provenance={self.provenance!r}, mod {self.modulus})"

    def embedded(self, modulus):
        m = self.matrix
        entries = {rc: embed(x, modulus) for rc, x in m.entries.items()}
        return Braiding(SparseMatrix(m.rows, m.cols, entries, modulus), self.provenance, check=False)

    def to_json(self):
        return {
            "dim": self.dim,
            "entries": [
                [r, c, format_scalar(x)] for (r, c), x in sorted(self.matrix.entries.items())
            ],
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, obj):
        try:
            dim = int(obj["dim"])
            raw = obj["entries"]
        except (KeyError, TypeError, ValueError):
            raise InputError("braiding JSON needs 'dim' and 'entries'") from None
        entries = {}
        for item in raw:
            if len(item) != 3:
                raise InputError(f"braiding entry {item!r} is not [row, col, scalar]")
            r, c, s = item
            entries[(int(r), int(c))] = as_scalar(s)
        mods = {x.modulus for x in entries.values()}
        m = common_modulus(*mods) if mods else 1
        entries = {rc: embed(x, m) for rc, x in entries.items()}
        return cls(SparseMatrix(dim * dim, dim * dim, entries, m), obj.get("provenance", "explicit"))


def _column_action(M):
    cols = [[] for _ in range(M.cols)]
    for (r, c), x in sorted(M.entries.items()):
        cols[c].append((r, x))
    return [tuple(col) for col in cols]


def braiding_from_rack(X, q):
    """c(e_x (x) e_y) = q(x, y) e_{x|>y} (x) e_x."""
    from .cocycles import validate_rack_cocycle
    from .racks import validate_rack

    if q.rack.op != X.op:
        raise InputError("cocycle is defined on a different rack")
    bad = validate_rack(X) or validate_rack_cocycle(X, q)
    if bad:
        raise InputError(f"invalid rack data: {bad.detail}")
    n = X.size
    entries = {}
    for x in range(n):
        for y in range(n):
            entries[(X.op[x][y] * n + x, x * n + y)] = q.q[x][y]
    return Braiding(SparseMatrix(n * n, n * n, entries, q.modulus), "rack+cocycle")


def braiding_diagonal(Q):
    """c(e_i (x) e_j) = Q[i][j] e_j (x) e_i."""
    rows = [[as_scalar(v) for v in r] for r in Q]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise InputError("diagonal braiding needs a square non-empty table")
    m = common_modulus(*(v.modulus for r in rows for v in r))
    entries = {}
    for i in range(n):
        for j in range(n):
            v = embed(rows[i][j], m)
            if not v:
                raise InputError(f"diagonal braiding entry ({i}, {j}) is zero")
            entries[(j * n + i, i * n + j)] = v
    return Braiding(SparseMatrix(n * n, n * n, entries, m), "diagonal")


def flip(dim, modulus=1):
    return braiding_diagonal([[ExactScalar.one(modulus)] * dim for _ in range(dim)])


def kron(A, B):
    entries = {}
    for (r1, c1), x in A.entries.items():
        for (r2, c2), y in B.entries.items():
            entries[(r1 * B.rows + r2, c1 * B.cols + c2)] = x * y
    modulus = A.modulus if A.entries else B.modulus
    return SparseMatrix._trusted(A.rows * B.rows, A.cols * B.cols, entries, modulus)


def check_yang_baxter(c):
    """Compare (id(x)c)(c(x)id)(id(x)c) with (c(x)id)(id(x)c)(c(x)id) exactly.

    Returns None, or a Violation naming the first basis word of V^{(x)3}
    (as a triple of letters) whose images differ.
    """
    if isinstance(c, Braiding):
        c = c.matrix
    if c.rows != c.cols:
        raise InputError(f"matrix must be square, got {c.shape}")
    dim = math.isqrt(c.rows)
    if dim * dim != c.rows:
        raise InputError(f"size {c.rows} is not a perfect square")
    ident = SparseMatrix.identity(dim, c.modulus)
    c12 = kron(c, ident)
    c23 = kron(ident, c)
    lhs = c23 @ c12 @ c23
    rhs = c12 @ c23 @ c12
    lcols, rcols = lhs.column_dicts(), rhs.column_dicts()
    for j in range(lhs.cols):
        a, b = lcols[j], rcols[j]
        if a.keys() != b.keys() or any(a[k] != b[k] for k in a):
            word = (j // (dim * dim), (j // dim) % dim, j % dim)
            return Violation(
                "yang-baxter",
                word,
                f"braid relation fails on basis word {word}",
            )
    return None


# permutations and braid words


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple = ()

    def __post_init__(self):
        letters = tuple(int(a) for a in self.letters)
        for a in letters:
            if a == 0 or abs(a) >= self.strands:
                raise InputError(f"braid letter {a} out of range for {self.strands} strands")
        object.__setattr__(self, "letters", letters)

    def __add__(self, other):
        if self.strands != other.strands:
            raise InputError("cannot concatenate braid words on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self):
        return BraidWord(self.strands, tuple(-a for a in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)


def inversions(w):
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def check_permutation(w):
    w = tuple(int(v) for v in w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise InputError(f"{w} is not a permutation of 1..{len(w)}")
    return w


def permutation_of_word(letters, n):
    """The permutation s_{a_1} ... s_{a_l} in one-line notation."""
    w = list(range(1, n + 1))
    # w * s_i swaps positions i, i+1 of the one-line notation
    for a in letters:
        a = abs(a)
        w[a - 1], w[a] = w[a], w[a - 1]
    return tuple(w)


def matsumoto_word(w):
    """Reduced braid word lifting the permutation w.

    Repeatedly take the smallest i with w(i) > w(i+1) and replace w by
    w s_i; the emitted indices, read backwards, give a reduced expression
    w = s_{i_1} ... s_{i_l} with l the number of inversions.
    """
    w = list(check_permutation(w))
    emitted = []
    while True:
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                emitted.append(i + 1)
                break
        else:
            break
    return BraidWord(max(len(w), 1), tuple(reversed(emitted)))


def shuffles(p, q):
    """The (p, q)-shuffles: permutations increasing on 1..p and on p+1..p+q.

    These are the minimal-length representatives of the left cosets of
    S_p x S_q in S_{p+q}; listed in lexicographic order of the positions
    taken by the first block.
    """
    n = p + q
    out = []
    for first in itertools.combinations(range(1, n + 1), p):
        rest = [k for k in range(1, n + 1) if k not in first]
        out.append(tuple(first) + tuple(rest))
    return out


# the action of B_n on V^{(x)n}


def _apply_letter(b, n, letter, v):
    dim = b.dim
    d2 = dim * dim
    i = abs(letter)
    act = b._act if letter > 0 else b._act_inv
    low = dim ** (n - i - 1)
    block = low * d2
    out = {}
    for w, x in v.items():
        high, rest = divmod(w, block)
        pair, tail = divmod(rest, low)
        base = high * block + tail
        for p2, s in act[pair]:
            key = base + p2 * low
            t = s * x
            y = out.get(key)
            if y is None:
                out[key] = t
            else:
                t = y + t
                if t:
                    out[key] = t
                else:
                    del out[key]
    return out


def _check_vector(b, n, v):
    size = b.dim ** n
    for k in v:
        if not 0 <= k < size:
            raise InputError(f"vector index {k} outside V^(x){n} of dimension {size}")


def braid_rep_apply(b, n, w, v):
    """rho_n(w) v for a braid word w on n strands and a sparse vector v."""
    if isinstance(w, BraidWord):
        if w.strands != n and not (n <= 1 and not w.letters):
            raise InputError(f"word on {w.strands} strands applied to V^(x){n}")
        letters = w.letters
    else:
        letters = tuple(w)
        BraidWord(max(n, 1), letters)
    _check_vector(b, n, v)
    out = dict(v)
    for a in reversed(letters):
        out = _apply_letter(b, n, a, out)
    return out


def _vec_acc(acc, v):
    for k, x in v.items():
        y = acc.get(k)
        if y is None:
            acc[k] = x
        else:
            t = y + x
            if t:
                acc[k] = t
            else:
                del acc[k]


def symmetrize(b, n, v):
    """Q_n v, summing rho_n(M_n(w)) v over all w in S_n.

    Every w factors uniquely as tau * w' with w' in S_{m-1} (first m-1
    strands) and tau = s_k s_{k+1} ... s_{m-1}, lengths adding; so the sum
    over S_n is T_n T_{n-1} ... T_2 with T_m = sum_k rho(sigma_k ... sigma_{m-1}),
    and T_m costs m-1 generator applications.
    """
    cur = dict(v)
    for m in range(2, n + 1):
        acc = dict(cur)
        part = cur
        for k in range(m - 1, 0, -1):
            part = _apply_letter(b, n, k, part)
            _vec_acc(acc, part)
        cur = acc
    return cur


def symmetrize_by_words(b, n, v, words=None):
    """Q_n v as the literal sum over the Matsumoto word of every permutation."""
    if words is None:
        words = [matsumoto_word(w) for w in itertools.permutations(range(1, n + 1))]
    acc = {}
    for w in words:
        _vec_acc(acc, braid_rep_apply(b, n, w, v))
    return acc


def _symmetrizer_columns(args):
    b, n, cols, method = args
    one = ExactScalar.one(b.modulus)
    if method == "words":
        words = [matsumoto_word(w) for w in itertools.permutations(range(1, n + 1))]
        return [symmetrize_by_words(b, n, {j: one}, words) for j in cols]
    return [symmetrize(b, n, {j: one}) for j in cols]


def quantum_symmetrizer(b, n, budget=None, method="factored", workers=1, columns=None):
    """Matrix of Q_n on V^{(x)n}, assembled column by column.

    ``method="words"`` applies the Matsumoto word of each permutation to each
    basis vector; the default ``"factored"`` sums the same n! operators
    through the coset factorization (see :func:`symmetrize`).  With
    ``columns`` only those columns are filled in.
    """
    if n < 1:
        raise InputError("quantum symmetrizer needs n >= 1")
    if method not in ("factored", "words"):
        raise InputError(f"unknown symmetrizer method {method!r}")
    budget = as_budget(budget)
    size = b.dim ** n
    budget.check_ambient(size, f"V^(x){n}")
    budget.check_work(math.factorial(n) * size, f"Q_{n}")
    cols = list(range(size)) if columns is None else list(columns)
    if workers and workers > 1 and len(cols) > 1:
        chunk = max(1, -(-len(cols) // (4 * workers)))
        jobs = [(b, n, cols[i : i + chunk], method) for i in range(0, len(cols), chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_symmetrizer_columns, jobs))
        results = [c for part in parts for c in part]
    else:
        results = _symmetrizer_columns((b, n, cols, method))
    entries = {}
    for j, col in zip(cols, results):
        for i, x in col.items():
            entries[(i, j)] = x
    return SparseMatrix._trusted(size, size, entries, b.modulus)


def braid_operator(b, n, w):
    """Matrix of rho_n(w) (small n only; used by checks)."""
    size = b.dim ** n
    one = ExactScalar.one(b.modulus)
    cols = [braid_rep_apply(b, n, w, {j: one}) for j in range(size)]
    return SparseMatrix.from_columns(size, cols, b.modulus)


def braid_orbit_blocks(b, n):
    """Partition of the basis of V^{(x)n} into blocks invariant under B_n.

    Two basis words are joined when some generator maps one onto a vector
    whose support contains the other; every rho_n(sigma_i), hence Q_n, maps
    the span of a block into itself.  For rack braidings these are the orbits
    of the set-theoretic braid action, for diagonal ones the multisets.
    """
    size = b.dim ** n
    parent = list(range(size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    dim = b.dim
    d2 = dim * dim
    for i in range(1, n):
        low = dim ** (n - i - 1)
        block = low * d2
        for w in range(size):
            high, rest = divmod(w, block)
            pair, tail = divmod(rest, low)
            base = high * block + tail
            for p2, _ in b._act[pair]:
                a, c = find(w), find(base + p2 * low)
                if a != c:
                    parent[max(a, c)] = min(a, c)
    groups = {}
    for w in range(size):
        groups.setdefault(find(w), []).append(w)
    return [groups[k] for k in sorted(groups)]


def word_index(word, dim):
    idx = 0
    for x in word:
        idx = idx * dim + x
    return idx


def index_word(idx, dim, n):
    out = []
    for _ in range(n):
        idx, r = divmod(idx, dim)
        out.append(r)
    return tuple(reversed(out))

