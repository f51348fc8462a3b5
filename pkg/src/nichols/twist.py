"""Cocycle twists of rack braidings and the diagonal intertwiner between them."""

from dataclasses import dataclass

from .approx import cover_check
from .braiding import braid_rep_apply, braiding_from_rack
from .cocycles import RackCocycle, twist_rack_cocycle, validate_rack_cocycle
from .config import as_budget
from .errors import InputError, Violation
from .linalg import SparseMatrix
from .scalars import ExactScalar, common_modulus, embed


@dataclass
class Intertwiner:
    """Diagonal operator f on (kX)^(x)n, stored as its list of diagonal entries."""

    n: int
    dim: int
    diagonal: list

    def entry(self, word):
        idx = 0
        for x in word:
            idx = idx * self.dim + x
        return self.diagonal[idx]

    def matrix(self):
        size = len(self.diagonal)
        m = self.diagonal[0].modulus if self.diagonal else 1
        return SparseMatrix(size, size, {(i, i): x for i, x in enumerate(self.diagonal)}, m)

    def apply(self, v):
        return {k: self.diagonal[k] * x for k, x in v.items()}

    def apply_inverse(self, v):
        return {k: x / self.diagonal[k] for k, x in v.items()}


def intertwiner_matrix(X, sigma, n, budget=None):
    """f(x_1 ... x_n) = prod_{i<n} sigma(x_i, x_{i+1} ... x_n), products taken in G."""
    if not X.embedded:
        raise InputError("the intertwiner needs the rack's embedding into a group")
    if sigma.group != X.group:
        raise InputError("sigma is defined on a different group than the rack's")
    if n < 1:
        raise InputError("need n >= 1")
    as_budget(budget).check_ambient(X.size**n, f"(kX)^(x){n}")
    G, els, s = X.group, X.elements, sigma.sigma
    one = ExactScalar.one(sigma.modulus)
    # words of length k: group product of the word and partial value of f
    prods = [els[x] for x in range(X.size)]
    vals = [one] * X.size
    for k in range(2, n + 1):
        size = X.size ** (k - 1)
        new_prods, new_vals = [], []
        for x in range(X.size):
            g = els[x]
            for t in range(size):
                h = prods[t]
                new_prods.append(G.mul[g][h])
                new_vals.append(s[g][h] * vals[t])
        prods, vals = new_prods, new_vals
    return Intertwiner(n, X.size, vals)


def _common_braidings(q, qprime):
    m = common_modulus(q.modulus, qprime.modulus)
    b = braiding_from_rack(q.rack, q.embedded(m) if q.modulus != m else q)
    bp = braiding_from_rack(qprime.rack, qprime.embedded(m) if qprime.modulus != m else qprime)
    return b, bp, m


def verify_intertwining(q, qprime, sigma, n, budget=None):
    """Check rho_n(sigma_j) f = f rho'_n(sigma_j) for j = 1..n-1 on every basis word.

    rho is the representation of c_q and rho' that of c_{q'}.  q' is used as
    given (it need not satisfy the cocycle condition), so corrupted tables
    produce a located violation.  Returns None or a Violation with witness
    (j, word).
    """
    if q.rack.op != qprime.rack.op:
        raise InputError("q and q' live on different racks")
    X = q.rack
    m = common_modulus(q.modulus, qprime.modulus, sigma.modulus)
    tq = [[embed(v, m) for v in row] for row in q.q]
    tp = [[embed(v, m) for v in row] for row in qprime.q]
    f = intertwiner_matrix(X, sigma, n, budget)
    diag = [embed(x, m) for x in f.diagonal]
    words = [_word(w, X.size, n) for w in range(X.size**n)]
    for j in range(1, n):
        for w, word in enumerate(words):
            x, y = word[j - 1], word[j]
            image = word[: j - 1] + (X.op[x][y], x) + word[j + 1 :]
            k = _index(image, X.size)
            # c(e_x (x) e_y) = q(x, y) e_{x|>y} (x) e_x on positions j, j+1
            lhs = tq[x][y] * diag[w]
            rhs = diag[k] * tp[x][y]
            if lhs != rhs:
                return Violation(
                    "intertwining",
                    (j, word),
                    f"rho(sigma_{j}) f and f rho'(sigma_{j}) differ on basis word {word}",
                    (lhs, rhs),
                )
    return None


def verify_conjugation(q, qprime, sigma, n, word, budget=None):
    """rho'_n(w) = f^-1 rho_n(w) f for a braid word w, on every basis vector."""
    X = q.rack
    b, bp, m = _common_braidings(q, qprime)
    f = intertwiner_matrix(X, sigma, n, budget)
    diag = [embed(x, m) for x in f.diagonal]
    one = ExactScalar.one(m)
    for w in range(X.size**n):
        lhs = braid_rep_apply(bp, n, word, {w: one})
        mid = braid_rep_apply(b, n, word, {w: diag[w]})
        rhs = {k: x / diag[k] for k, x in mid.items()}
        if lhs != rhs:
            return Violation("conjugation", (_word(w, X.size, n),), "conjugation identity fails")
    return None


def _index(word, dim):
    idx = 0
    for x in word:
        idx = idx * dim + x
    return idx


def _word(idx, dim, n):
    out = []
    for _ in range(n):
        idx, r = divmod(idx, dim)
        out.append(r)
    return tuple(reversed(out))


@dataclass
class TwistReport:
    q_dims: list
    qprime_dims: list
    q_cover: dict
    qprime_cover: dict
    intertwiner_verified_up_to_n: int
    N: int
    cocycle_violation: object = None

    @property
    def dims_equal(self):
        return self.q_dims == self.qprime_dims

    @property
    def verdicts_equal(self):
        keys = ("verdict", "mismatch", "cover_dims")
        return all(self.q_cover.get(k) == self.qprime_cover.get(k) for k in keys)

    @property
    def ok(self):
        return (
            self.cocycle_violation is None
            and self.dims_equal
            and self.verdicts_equal
            and self.intertwiner_verified_up_to_n >= self.N
        )

    def to_json(self):
        out = {
            "q_dims": self.q_dims,
            "qprime_dims": self.qprime_dims,
            "cover_verdicts": {
                "q": self.q_cover,
                "qprime": self.qprime_cover,
                "identical": self.verdicts_equal,
            },
            "intertwiner_verified_up_to_n": self.intertwiner_verified_up_to_n,
            "ok": self.ok,
        }
        if self.cocycle_violation is not None:
            out["cocycle_violation"] = self.cocycle_violation.to_json()
        return out


def twist_invariance_check(q, sigma, d, N, budget=None, workers=1, qprime=None):
    """Compare the Nichols algebras and d-atic covers of q and its twist q'.

    The intertwiner is verified for n = 2..N; ``intertwiner_verified_up_to_n``
    is the largest n reached without a violation (1 if none).
    """
    if qprime is None:
        qprime, bad = twist_rack_cocycle(q.rack, q, sigma)
    else:
        if not isinstance(qprime, RackCocycle):
            qprime = RackCocycle(q.rack, qprime)
        bad = validate_rack_cocycle(q.rack, qprime)
    if bad:
        return TwistReport([], [], {}, {}, 0, N, bad)
    verified = 1
    for n in range(2, N + 1):
        if verify_intertwining(q, qprime, sigma, n, budget):
            break
        verified = n
    b = braiding_from_rack(q.rack, q)
    bp = braiding_from_rack(qprime.rack, qprime)
    v = cover_check(b, d, N, budget, workers)
    vp = cover_check(bp, d, N, budget, workers)
    return TwistReport(
        v.nichols.dims,
        vp.nichols.dims,
        v.to_json(),
        vp.to_json(),
        verified,
        N,
    )

