"""Free graded algebras on graded generators, ideals, quotients and shuffles.

A monomial is a tuple of ``(degree, index)`` letters; its total degree is
the sum of the letter degrees.  Vectors are sparse dicts over the
:class:`WordBasis` of their degree.
"""

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .braiding import _vec_acc, braid_rep_apply, matsumoto_word, quantum_symmetrizer, shuffles
from .config import as_budget
from .errors import BudgetExceeded, InputError
from .hilbert import HilbertPrefix
from .linalg import span_rank
from .scalars import as_scalar, embed


@dataclass(frozen=True)
class GradedGenerators:
    """dims[i-1] generators in degree i, for i = 1..d."""

    dims: tuple

    def __post_init__(self):
        dims = tuple(int(x) for x in self.dims)
        if not dims:
            raise InputError("need generators in at least degree 1")
        if any(x < 0 for x in dims):
            raise InputError(f"generator dimensions must be >= 0, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def d(self):
        return len(self.dims)

    def dim(self, degree):
        return self.dims[degree - 1] if 1 <= degree <= len(self.dims) else 0


def compositions(n, max_part):
    """Compositions of n with parts in 1..max_part, lexicographically."""
    if n == 0:
        return [()]
    out = []
    for first in range(1, min(n, max_part) + 1):
        for rest in compositions(n - first, max_part):
            out.append((first,) + rest)
    return out


class WordBasis:
    """Basis of the degree-n component of the free algebra on ``gens``.

    Compositions of n come in lexicographic order (parts whose generator space
    is zero are skipped); inside each composition the letters are ordered
    lexicographically with the leftmost most significant.
    """

    def __init__(self, gens, n):
        if n < 0:
            raise InputError("degree must be >= 0")
        self.gens = gens
        self.n = n
        self.compositions = [
            c for c in compositions(n, gens.d) if all(gens.dim(p) > 0 for p in c)
        ]
        self.offsets = {}
        self.block_sizes = {}
        total = 0
        for c in self.compositions:
            self.offsets[c] = total
            size = math.prod(gens.dim(p) for p in c)
            self.block_sizes[c] = size
            total += size
        self.dim = total

    def index(self, mono):
        comp = tuple(p for p, _ in mono)
        try:
            k = self.offsets[comp]
        except KeyError:
            raise InputError(f"monomial {mono} is not of degree {self.n}") from None
        local = 0
        for p, i in mono:
            size = self.gens.dim(p)
            if not 0 <= i < size:
                raise InputError(f"letter index {i} out of range in degree {p}")
            local = local * size + i
        return k + local

    def monomials(self):
        out = []
        for c in self.compositions:
            ranges = [range(self.gens.dim(p)) for p in c]
            for idx in itertools.product(*ranges):
                out.append(tuple(zip(c, idx)))
        return out

    def word(self, index):
        if not 0 <= index < self.dim:
            raise InputError(f"index {index} outside degree-{self.n} basis of size {self.dim}")
        for c in self.compositions:
            off, size = self.offsets[c], self.block_sizes[c]
            if index < off + size:
                local = index - off
                idx = []
                for p in reversed(c):
                    local, r = divmod(local, self.gens.dim(p))
                    idx.append(r)
                return tuple(zip(c, reversed(idx)))
        raise AssertionError("unreachable")


@lru_cache(maxsize=256)
def _word_basis(dims, n):
    return WordBasis(GradedGenerators(dims), n)


def word_basis(gens, n):
    return _word_basis(gens.dims, n)


def _parse_monomial(mono):
    letters = []
    for letter in mono:
        if isinstance(letter, int):
            letters.append((1, letter))
        else:
            p, i = letter
            letters.append((int(p), int(i)))
    return tuple(letters)


class RelationSet:
    """Homogeneous relations, grouped by degree, in WordBasis coordinates."""

    def __init__(self, gens, modulus=1):
        self.gens = gens
        self.modulus = modulus
        self.by_degree = {}

    def add(self, degree, vector):
        if degree < 1:
            raise InputError("relations must have positive degree")
        size = word_basis(self.gens, degree).dim
        vec = {}
        for k, x in dict(vector).items():
            if not 0 <= k < size:
                raise InputError(f"relation index {k} outside degree-{degree} basis of size {size}")
            x = embed(as_scalar(x), self.modulus)
            if x:
                vec[k] = x
        if vec:
            self.by_degree.setdefault(degree, []).append(vec)

    def add_terms(self, terms):
        """Add sum coef * monomial; every monomial must have the same degree."""
        degrees = set()
        parsed = []
        for coef, mono in terms:
            mono = _parse_monomial(mono)
            degrees.add(sum(p for p, _ in mono))
            parsed.append((as_scalar(coef), mono))
        if len(degrees) > 1:
            raise InputError(f"inhomogeneous relation with terms in degrees {sorted(degrees)}")
        if not parsed:
            return
        (degree,) = degrees
        wb = word_basis(self.gens, degree)
        vec = {}
        for coef, mono in parsed:
            k = wb.index(mono)
            vec[k] = vec[k] + embed(coef, self.modulus) if k in vec else embed(coef, self.modulus)
        self.add(degree, vec)

    def degrees(self):
        return sorted(self.by_degree)

    def __getitem__(self, degree):
        return self.by_degree.get(degree, [])

    def count(self):
        return sum(len(v) for v in self.by_degree.values())


def ideal_vectors(gens, rels, n, budget=None):
    """Spanning set u.r.v of the degree-n part of the ideal generated by rels.

    In a free algebra the two-sided ideal generated by homogeneous elements
    is spanned by their products with monomials on both sides, so the
    degree-n component is the span of these placements.
    """
    budget = as_budget(budget)
    wb = word_basis(gens, n)
    budget.check_ambient(wb.dim, f"degree-{n} component")
    count = 0
    for j in rels.degrees():
        if j > n:
            continue
        nrels = len(rels[j])
        for a in range(n - j + 1):
            count += nrels * word_basis(gens, a).dim * word_basis(gens, n - j - a).dim
    budget.check_work(count, f"degree-{n} ideal placements")
    out = []
    for j in rels.degrees():
        if j > n:
            continue
        rb = word_basis(gens, j)
        rel_terms = [[(rb.word(k), x) for k, x in r.items()] for r in rels[j]]
        for a in range(n - j + 1):
            left = word_basis(gens, a).monomials()
            right = word_basis(gens, n - j - a).monomials()
            for u in left:
                for v in right:
                    for terms in rel_terms:
                        out.append({wb.index(u + w + v): x for w, x in terms})
    return out


def ideal_component_dim(gens, rels, n, budget=None, workers=1):
    vectors = ideal_vectors(gens, rels, n, budget)
    return span_rank(vectors, word_basis(gens, n).dim, workers)


def quotient_dims(gens, rels, N, budget=None, workers=1):
    """Graded dimensions of the free algebra modulo the ideal, degrees 0..N."""
    dims = [1]
    for n in range(1, N + 1):
        try:
            total = word_basis(gens, n).dim
            dims.append(total - ideal_component_dim(gens, rels, n, budget, workers))
        except BudgetExceeded as exc:
            exc.partial = HilbertPrefix.truncated(dims, N)
            raise
    return HilbertPrefix(dims)


def free_dims(gens, N):
    return HilbertPrefix([word_basis(gens, n).dim for n in range(N + 1)])


# braided shuffle algebra


def tensor_vectors(u, v, right_size):
    out = {}
    for i, x in u.items():
        for j, y in v.items():
            out[i * right_size + j] = x * y
    return out


def shuffle_product(c, u, p, v, q, budget=None):
    """Braided shuffle product of u in V^(x)p and v in V^(x)q.

    Sum over the (p, q)-shuffles tau (permutations increasing on 1..p and on
    p+1..p+q) of rho(M(tau)) applied to u (x) v.  With this choice
    Q_{p+q}(u (x) v) = Q_p(u) * Q_q(v).
    """
    budget = as_budget(budget)
    n = p + q
    size = c.dim**n
    budget.check_ambient(size, f"V^(x){n}")
    budget.check_work(math.comb(n, p) * size, f"shuffle of degrees {p} and {q}")
    uv = tensor_vectors(u, v, c.dim**q)
    if not uv:
        return {}
    acc = {}
    for tau in shuffles(p, q):
        _vec_acc(acc, braid_rep_apply(c, n, matsumoto_word(tau), uv))
    return acc


def omega_component(c, n, budget=None, workers=1):
    """Degree-n component of the algebra map from T(V) onto the shuffle algebra: Q_n."""
    return quantum_symmetrizer(c, n, budget=budget, workers=workers)
