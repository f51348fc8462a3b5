"""Finite racks and finite groups given by explicit operation tables.

Rack elements are the indices 0..n-1; ``op[x][y]`` is ``x |> y``.  Groups are
multiplication tables with ``mul[a][b]`` the index of the product ``a*b``.
A rack built by conjugation remembers the group and the group index of each
of its elements, which the twisting code needs.
"""

import itertools
import math
from dataclasses import dataclass

from .errors import InputError, Violation

MAX_SYMMETRIC_DEGREE = 6


@dataclass(frozen=True)
class GroupTable:
    mul: tuple
    identity: int = 0
    labels: tuple = None

    def __post_init__(self):
        mul = tuple(tuple(int(v) for v in row) for row in self.mul)
        m = len(mul)
        if m == 0:
            raise InputError("a group needs at least one element")
        for a, row in enumerate(mul):
            if len(row) != m:
                raise InputError(f"group table row {a} has length {len(row)}, expected {m}")
            for v in row:
                if not 0 <= v < m:
                    raise InputError(f"group table entry {v} out of range 0..{m - 1}")
        if not 0 <= self.identity < m:
            raise InputError(f"identity index {self.identity} out of range")
        object.__setattr__(self, "mul", mul)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        e = self.identity
        inv = [None] * m
        for a in range(m):
            if mul[e][a] != a or mul[a][e] != a:
                raise InputError(f"index {e} is not a two-sided identity (fails at {a})")
            for b in range(m):
                if mul[a][b] == e:
                    inv[a] = b
                    break
            if inv[a] is None or mul[inv[a]][a] != e:
                raise InputError(f"element {a} has no two-sided inverse")
        object.__setattr__(self, "inverse", tuple(inv))

    @property
    def size(self):
        return len(self.mul)

    def product(self, *elements):
        """Left-to-right product of group indices (identity if empty)."""
        acc = self.identity
        for g in elements:
            acc = self.mul[acc][g]
        return acc

    def conjugate(self, x, y):
        """x y x^-1."""
        return self.mul[self.mul[x][y]][self.inverse[x]]

    def label(self, a):
        return self.labels[a] if self.labels else str(a)

    def to_json(self):
        out = {"size": self.size, "mul": [list(r) for r in self.mul], "identity": self.identity}
        if self.labels:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, obj):
        try:
            mul = obj["mul"]
        except (KeyError, TypeError):
            raise InputError("group JSON needs a 'mul' table") from None
        if "size" in obj and obj["size"] != len(mul):
            raise InputError(f"group size {obj['size']} disagrees with table of {len(mul)} rows")
        G = cls(mul, obj.get("identity", 0), obj.get("labels"))
        bad = find_nonassociative(G)
        if bad:
            raise InputError(f"group table is not associative at {bad}")
        return G


def find_nonassociative(G):
    """First triple (a, b, c) with (ab)c != a(bc), or None."""
    mul = G.mul
    for a in range(G.size):
        ra = mul[a]
        for b in range(G.size):
            ab = ra[b]
            rab, rb = mul[ab], mul[b]
            for c in range(G.size):
                if rab[c] != ra[rb[c]]:
                    return (a, b, c)
    return None


def cycle_notation(perm):
    """Cycle string of a one-line permutation with values 1..n, e.g. '(1 2)'."""
    n = len(perm)
    seen = [False] * n
    cycles = []
    for i in range(n):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + 1)
            j = perm[j] - 1
        if len(cyc) > 1:
            cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def permutation_group(perms):
    """Group table for a list of one-line permutations closed under composition.

    The product is composition of maps: ``(p*q)(i) = p(q(i))``.
    """
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    if len(index) != len(perms):
        raise InputError("duplicate permutations")
    n = len(perms[0])
    mul = []
    for p in perms:
        row = []
        for q in perms:
            pq = tuple(p[q[i] - 1] for i in range(n))
            if pq not in index:
                raise InputError(f"permutations not closed: {cycle_notation(pq)} missing")
            row.append(index[pq])
        mul.append(row)
    ident = index.get(tuple(range(1, n + 1)))
    if ident is None:
        raise InputError("identity permutation missing")
    return GroupTable(mul, ident, [cycle_notation(p) for p in perms])


def symmetric_group(n):
    """S_n with elements in lexicographic order of one-line notation.

    Index 0 is the identity; labels are cycle strings such as ``'(1 2)'``.
    """
    if n < 1:
        raise InputError("symmetric group degree must be positive")
    if n > MAX_SYMMETRIC_DEGREE:
        raise InputError(
            f"S_{n} has a {math.factorial(n)}^2 entry table; limit is n <= {MAX_SYMMETRIC_DEGREE}"
        )
    return permutation_group(list(itertools.permutations(range(1, n + 1))))


def alternating_group(n):
    perms = [p for p in itertools.permutations(range(1, n + 1)) if _sign(p) == 1]
    return permutation_group(perms)


def _sign(p):
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inv % 2 else 1


def cyclic_group(m):
    """Z_m; index k stands for the residue k."""
    return GroupTable([[(a + b) % m for b in range(m)] for a in range(m)], 0, [str(k) for k in range(m)])


def conjugacy_class(G, g):
    return sorted({G.conjugate(x, g) for x in range(G.size)})


def element_order(G, g):
    k, acc = 1, g
    while acc != G.identity:
        acc = G.mul[acc][g]
        k += 1
    return k


@dataclass(frozen=True)
class Rack:
    """A finite rack.  ``group``/``elements`` record a conjugation embedding."""

    op: tuple
    labels: tuple = None
    group: GroupTable = None
    elements: tuple = None

    def __post_init__(self):
        op = tuple(tuple(int(v) for v in row) for row in self.op)
        n = len(op)
        if n == 0:
            raise InputError("a rack must be non-empty")
        for x, row in enumerate(op):
            if len(row) != n:
                raise InputError(f"rack table row {x} has length {len(row)}, expected {n}")
            for v in row:
                if not 0 <= v < n:
                    raise InputError(f"rack table entry {v} out of range 0..{n - 1}")
        object.__setattr__(self, "op", op)
        if self.labels is not None:
            if len(self.labels) != n:
                raise InputError("rack labels must match the rack size")
            object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        if self.elements is not None:
            els = tuple(int(g) for g in self.elements)
            if self.group is None or len(els) != n:
                raise InputError("a rack embedding needs a group and one element per rack index")
            object.__setattr__(self, "elements", els)

    @property
    def size(self):
        return len(self.op)

    @property
    def embedded(self):
        return self.group is not None and self.elements is not None

    def act(self, x, y):
        return self.op[x][y]

    def label(self, x):
        return self.labels[x] if self.labels else str(x)

    def to_json(self):
        out = {"size": self.size, "op": [list(r) for r in self.op]}
        if self.labels:
            out["labels"] = list(self.labels)
        if self.embedded:
            out["group"] = self.group.to_json()
            out["elements"] = list(self.elements)
        return out

    @classmethod
    def from_json(cls, obj, validate=True):
        try:
            op = obj["op"]
        except (KeyError, TypeError):
            raise InputError("rack JSON needs an 'op' table") from None
        if "size" in obj and obj["size"] != len(op):
            raise InputError(f"rack size {obj['size']} disagrees with table of {len(op)} rows")
        group = GroupTable.from_json(obj["group"]) if obj.get("group") is not None else None
        X = cls(op, obj.get("labels"), group, obj.get("elements"))
        if validate:
            bad = validate_rack(X.op)
            if bad:
                raise InputError(f"not a rack: {bad.detail}")
            if X.embedded:
                check_embedding(X)
        return X


def validate_rack(table):
    """Check both rack axioms on a square table.

    Returns None when the table is a rack, otherwise a Violation naming the
    first non-bijective row or the first triple (x, y, z) breaking
    self-distributivity.  Malformed tables raise InputError.
    """
    op = table.op if isinstance(table, Rack) else table
    op = [list(r) for r in op]
    n = len(op)
    if n == 0 or any(len(r) != n for r in op):
        raise InputError("rack table must be square and non-empty")
    for r in op:
        for v in r:
            if not isinstance(v, int) or not 0 <= v < n:
                raise InputError(f"rack table entry {v!r} out of range 0..{n - 1}")
    for x in range(n):
        if len(set(op[x])) != n:
            return Violation("rack-bijectivity", (x,), f"y -> {x} |> y is not a bijection")
    for x in range(n):
        ox = op[x]
        for y in range(n):
            oy = op[y]
            oxy = op[ox[y]]
            for z in range(n):
                if ox[oy[z]] != oxy[ox[z]]:
                    return Violation(
                        "rack-self-distributivity",
                        (x, y, z),
                        f"x|>(y|>z) = {ox[oy[z]]} but (x|>y)|>(x|>z) = {oxy[ox[z]]} "
                        f"at (x, y, z) = ({x}, {y}, {z})",
                    )
    return None


def check_embedding(X):
    """Raise unless X's table is conjugation on its recorded group elements."""
    G, els = X.group, X.elements
    pos = {g: i for i, g in enumerate(els)}
    if len(pos) != len(els):
        raise InputError("rack embedding is not injective")
    for x in range(X.size):
        for y in range(X.size):
            g = G.conjugate(els[x], els[y])
            if pos.get(g) != X.op[x][y]:
                raise InputError(f"rack table disagrees with conjugation at ({x}, {y})")


def conjugation_rack(G, subset):
    """The rack (subset, x |> y = x y x^-1), re-indexed 0..len(subset)-1."""
    subset = [int(g) for g in subset]
    if not subset:
        raise InputError("conjugation rack needs a non-empty subset")
    pos = {g: i for i, g in enumerate(subset)}
    if len(pos) != len(subset):
        raise InputError("subset has repeated elements")
    op = []
    for x in subset:
        if not 0 <= x < G.size:
            raise InputError(f"group index {x} out of range")
        row = []
        for y in subset:
            c = G.conjugate(x, y)
            if c not in pos:
                raise InputError(
                    f"subset not closed under conjugation: {G.label(x)} |> {G.label(y)} = {G.label(c)}"
                )
            row.append(pos[c])
        op.append(row)
    return Rack(op, [G.label(g) for g in subset], G, subset)


def trivial_rack(n):
    return Rack([list(range(n)) for _ in range(n)])


def permutation_rack(perm):
    """x |> y = perm[y] for every x (0-based perm)."""
    perm = list(perm)
    return Rack([perm[:] for _ in perm])


def affine_rack(n, a):
    """Alexander rack on Z_n: x |> y = a*y + (1 - a)*x, a a unit mod n."""
    return Rack([[(a * y + (1 - a) * x) % n for y in range(n)] for x in range(n)])


def relabel(X, perm):
    """Isomorphic copy of X with element x renamed perm[x]."""
    n = X.size
    inv = [0] * n
    for x, p in enumerate(perm):
        inv[p] = x
    op = [[perm[X.op[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]
    labels = [X.label(inv[a]) for a in range(n)] if X.labels else None
    elements = [X.elements[inv[a]] for a in range(n)] if X.embedded else None
    return Rack(op, labels, X.group if X.embedded else None, elements)


def rack_orbits(X):
    """Orbits of the permutation group generated by the maps y -> x |> y."""
    parent = list(range(X.size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x in range(X.size):
        for y in range(X.size):
            a, b = find(y), find(X.op[x][y])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for y in range(X.size):
        groups.setdefault(find(y), []).append(y)
    return sorted(groups.values())


def is_quandle(X):
    return all(X.op[x][x] == x for x in range(X.size))
