"""Sparse exact linear algebra over Q(zeta_N).

Vectors are plain dicts ``{index: ExactScalar}`` holding only nonzero
entries.  Elimination works row-wise on such dicts; within each column the
pivot is the candidate row of least current fill.  Before eliminating, a
matrix is split into the connected components of its row/column incidence
graph, since rank and kernel are additive over those blocks.
"""

from concurrent.futures import ProcessPoolExecutor

from .errors import InputError, ModulusMismatch
from .scalars import ExactScalar, as_scalar

__all__ = [
    "SparseMatrix",
    "rank",
    "nullspace_basis",
    "span_rank",
    "row_echelon",
    "independent_columns",
    "solve_in_span",
    "inverse",
    "as_vector",
    "dense_vector",
    "vec_add",
    "vec_scale",
    "vec_sub",
]


def as_vector(v, modulus=None):
    """Accept a dense sequence or a sparse dict and return a sparse dict."""
    items = v.items() if isinstance(v, dict) else enumerate(v)
    out = {}
    for i, x in items:
        s = as_scalar(x, modulus or 1)
        if modulus is not None and s.modulus != modulus:
            raise ModulusMismatch(f"vector entry {x!r} is not in Q(zeta_{modulus})")
        if s:
            out[i] = s
    return out


def dense_vector(v, n, modulus=1):
    zero = ExactScalar.zero(modulus)
    return [v.get(i, zero) for i in range(n)]


def vec_add(a, b):
    out = dict(a)
    for i, x in b.items():
        y = out.get(i)
        if y is None:
            out[i] = x
        else:
            s = y + x
            if s:
                out[i] = s
            else:
                del out[i]
    return out


def vec_scale(a, s):
    if not s:
        return {}
    return {i: x * s for i, x in a.items()}


def vec_sub(a, b):
    return vec_add(a, {i: -x for i, x in b.items()})


def _axpy_inplace(target, s, v):
    """target += s * v, dropping cancelled entries; returns (added, removed) keys."""
    added, removed = [], []
    for i, x in v.items():
        y = target.get(i)
        t = s * x
        if y is None:
            target[i] = t
            added.append(i)
        else:
            t = y + t
            if t:
                target[i] = t
            else:
                del target[i]
                removed.append(i)
    return added, removed


class SparseMatrix:
    """A rows x cols matrix over Q(zeta_N); absent entries are zero."""

    __slots__ = ("rows", "cols", "entries", "modulus")

    def __init__(self, rows, cols, entries=None, modulus=None):
        if rows < 0 or cols < 0:
            raise InputError("matrix shape must be non-negative")
        clean = {}
        mods = set()
        entries = entries or {}
        if modulus is None:
            # plain ints and Fractions take the field of the scalar entries
            found = {x.modulus for x in entries.values() if isinstance(x, ExactScalar)}
            if len(found) == 1:
                modulus = found.pop()
        for (r, c), x in entries.items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise InputError(f"entry ({r}, {c}) outside a {rows}x{cols} matrix")
            x = as_scalar(x, modulus or 1)
            if x:
                clean[(r, c)] = x
                mods.add(x.modulus)
        if modulus is None:
            if len(mods) > 1:
                raise ModulusMismatch(f"matrix entries span moduli {sorted(mods)}")
            modulus = mods.pop() if mods else 1
        elif mods - {modulus}:
            raise ModulusMismatch(f"matrix declared mod {modulus} holds entries mod {sorted(mods)}")
        self.rows = rows
        self.cols = cols
        self.entries = clean
        self.modulus = modulus

    @classmethod
    def _trusted(cls, rows, cols, entries, modulus):
        obj = object.__new__(cls)
        obj.rows, obj.cols, obj.entries, obj.modulus = rows, cols, entries, modulus
        return obj

    @classmethod
    def identity(cls, n, modulus=1):
        one = ExactScalar.one(modulus)
        return cls._trusted(n, n, {(i, i): one for i in range(n)}, modulus)

    @classmethod
    def zeros(cls, rows, cols, modulus=1):
        return cls._trusted(rows, cols, {}, modulus)

    @classmethod
    def from_dense(cls, data, modulus=None):
        data = [list(r) for r in data]
        ncols = len(data[0]) if data else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != ncols:
                raise InputError("ragged dense matrix")
            for j, x in enumerate(row):
                entries[(i, j)] = x
        return cls(len(data), ncols, entries, modulus)

    @classmethod
    def from_columns(cls, nrows, columns, modulus=1):
        entries = {}
        for j, col in enumerate(columns):
            for i, x in col.items():
                entries[(i, j)] = x
        return cls._trusted(nrows, len(columns), entries, modulus)

    @classmethod
    def from_rows(cls, ncols, rows, modulus=1):
        entries = {}
        for i, row in enumerate(rows):
            for j, x in row.items():
                entries[(i, j)] = x
        return cls._trusted(len(rows), ncols, entries, modulus)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def nnz(self):
        return len(self.entries)

    def __getitem__(self, rc):
        x = self.entries.get(rc)
        return x if x is not None else ExactScalar.zero(self.modulus)

    def row_dicts(self):
        out = [dict() for _ in range(self.rows)]
        for (r, c), x in self.entries.items():
            out[r][c] = x
        return out

    def column_dicts(self):
        out = [dict() for _ in range(self.cols)]
        for (r, c), x in self.entries.items():
            out[c][r] = x
        return out

    def to_dense(self):
        zero = ExactScalar.zero(self.modulus)
        out = [[zero] * self.cols for _ in range(self.rows)]
        for (r, c), x in self.entries.items():
            out[r][c] = x
        return out

    def transpose(self):
        return SparseMatrix._trusted(
            self.cols, self.rows, {(c, r): x for (r, c), x in self.entries.items()}, self.modulus
        )

    def matvec(self, v):
        cols = self.column_dicts()
        out = {}
        for j, x in v.items():
            col = cols[j]
            if col:
                _axpy_inplace(out, x, col)
        return out

    def _check_same_field(self, other):
        if self.modulus != other.modulus and (self.entries and other.entries):
            raise ModulusMismatch(f"matrices mod {self.modulus} and mod {other.modulus}")
        return self.modulus if self.entries else other.modulus

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
        modulus = self._check_same_field(other)
        left_rows = self.row_dicts()
        right_rows = other.row_dicts()
        entries = {}
        for i, row in enumerate(left_rows):
            acc = {}
            for k, x in row.items():
                if right_rows[k]:
                    _axpy_inplace(acc, x, right_rows[k])
            for j, y in acc.items():
                entries[(i, j)] = y
        return SparseMatrix._trusted(self.rows, other.cols, entries, modulus)

    def __add__(self, other):
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} + {other.shape}")
        modulus = self._check_same_field(other)
        entries = dict(self.entries)
        for rc, x in other.entries.items():
            y = entries.get(rc)
            if y is None:
                entries[rc] = x
            else:
                s = x + y
                if s:
                    entries[rc] = s
                else:
                    del entries[rc]
        return SparseMatrix._trusted(self.rows, self.cols, entries, modulus)

    def __neg__(self):
        return SparseMatrix._trusted(
            self.rows, self.cols, {rc: -x for rc, x in self.entries.items()}, self.modulus
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = as_scalar(s, self.modulus)
        return SparseMatrix._trusted(
            self.rows, self.cols, {rc: x * s for rc, x in self.entries.items() if s}, self.modulus
        )

    def submatrix(self, row_ids, col_ids):
        rpos = {r: i for i, r in enumerate(row_ids)}
        cpos = {c: j for j, c in enumerate(col_ids)}
        entries = {}
        for (r, c), x in self.entries.items():
            i, j = rpos.get(r), cpos.get(c)
            if i is not None and j is not None:
                entries[(i, j)] = x
        return SparseMatrix._trusted(len(row_ids), len(col_ids), entries, self.modulus)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        if self.entries.keys() != other.entries.keys():
            return False
        return all(x == other.entries[rc] for rc, x in self.entries.items())

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries)))

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)}, mod {self.modulus})"


# elimination core


def _components(rows):
    """Group row ids by connected component of the row/column incidence graph."""
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in rows:
        keys = iter(row)
        first = next(keys, None)
        if first is None:
            continue
        parent.setdefault(first, first)
        ra = find(first)
        for c in keys:
            parent.setdefault(c, c)
            rb = find(c)
            if rb != ra:
                if rb < ra:
                    ra, rb = rb, ra
                parent[rb] = ra
    groups = {}
    for i, row in enumerate(rows):
        if row:
            groups.setdefault(find(next(iter(row))), []).append(i)
    return [groups[k] for k in sorted(groups)]


def _echelon(rows, stop_at=None):
    """Forward elimination with least-fill pivoting.

    ``rows`` (list of dicts) is consumed.  Returns (pivot_cols, pivot_rows)
    where each pivot row is normalized to 1 at its pivot and has no entries
    left of it; pivots come out in increasing column order.
    """
    active = {i: r for i, r in enumerate(rows) if r}
    by_col = {}
    for i, r in active.items():
        for c in r:
            by_col.setdefault(c, set()).add(i)
    pivot_cols, pivot_rows = [], []
    for col in sorted(by_col):
        cand = by_col.pop(col, None)
        if not cand:
            continue
        p = min(cand, key=lambda i: (len(active[i]), i))
        prow = active.pop(p)
        for c in prow:
            if c != col:
                by_col[c].discard(p)
        inv = prow[col].inverse()
        prow = {c: x * inv for c, x in prow.items()}
        for i in sorted(cand):
            if i == p:
                continue
            r = active[i]
            factor = -r[col]
            added, removed = _axpy_inplace(r, factor, prow)
            for c in added:
                by_col.setdefault(c, set()).add(i)
            for c in removed:
                if c != col:
                    by_col[c].discard(i)
            if not r:
                del active[i]
        pivot_cols.append(col)
        pivot_rows.append(prow)
        if stop_at is not None and len(pivot_cols) >= stop_at:
            break
    return pivot_cols, pivot_rows


def _back_substitute(pivot_cols, pivot_rows):
    """Turn an echelon form into the reduced row echelon form, in place."""
    for k in range(len(pivot_cols) - 1, -1, -1):
        col, prow = pivot_cols[k], pivot_rows[k]
        for i in range(k):
            x = pivot_rows[i].get(col)
            if x is not None:
                _axpy_inplace(pivot_rows[i], -x, prow)
    return pivot_cols, pivot_rows


def _component_rank(rows):
    ncols = len({c for r in rows for c in r})
    cols, _ = _echelon([dict(r) for r in rows], stop_at=min(len(rows), ncols))
    return len(cols)


def _map(fn, items, workers):
    if workers and workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _rows_rank(rows, workers=1):
    comps = _components(rows)
    work = [[rows[i] for i in comp] for comp in comps]
    return sum(_map(_component_rank, work, workers))


def rank(M, workers=1):
    """Exact rank of a SparseMatrix."""
    if not M.entries:
        return 0
    return _rows_rank(M.row_dicts(), workers)


def span_rank(vectors, ambient_dim, workers=1):
    """Dimension of the span of the given vectors in a space of ``ambient_dim``."""
    rows = []
    for v in vectors:
        v = as_vector(v)
        if any(not (0 <= i < ambient_dim) for i in v):
            raise InputError(f"vector index outside ambient dimension {ambient_dim}")
        rows.append(v)
    if not rows:
        return 0
    return _rows_rank(rows, workers)


def row_echelon(rows, ncols=None):
    """Reduced row echelon form of a list of sparse rows.

    Returns (pivot_cols, rref_rows).  The result is canonical: it does not
    depend on pivot choices or on the input row order.
    """
    work = [dict(r) for r in rows]
    return _back_substitute(*_echelon(work))


def nullspace_basis(M):
    """Basis of the right kernel of M, as sparse dict vectors.

    One vector per non-pivot column f of the reduced row echelon form, with
    a 1 in position f; ordered by f.
    """
    rows = M.row_dicts()
    pivot_cols, rref = [], []
    for comp in _components(rows):
        pc, pr = _back_substitute(*_echelon([dict(rows[i]) for i in comp]))
        pivot_cols.extend(pc)
        rref.extend(pr)
    pivot_set = set(pivot_cols)
    # column -> list of (pivot col, coefficient) entries of the rref in that column
    free_entries = {}
    for pc, prow in zip(pivot_cols, rref):
        for c, x in prow.items():
            if c != pc:
                free_entries.setdefault(c, []).append((pc, x))
    one = ExactScalar.one(M.modulus)
    basis = []
    for f in range(M.cols):
        if f in pivot_set:
            continue
        v = {f: one}
        for pc, x in free_entries.get(f, ()):
            v[pc] = -x
        basis.append(dict(sorted(v.items())))
    return basis


def independent_columns(M):
    """Indices of the pivot columns of M: a basis of its column space."""
    pivot_cols, _ = _echelon(M.row_dicts())
    return pivot_cols


def solve_in_span(basis, v, modulus=1):
    """Coordinates of v in terms of the linearly independent ``basis`` vectors.

    Returns a list of scalars, or None when v is not in the span.
    """
    # eliminate on the augmented system  sum_k a_k basis[k] = v  by columns
    # of the transposed system: unknowns are indexed by k.
    n = len(basis)
    eqs = {}
    for k, b in enumerate(basis):
        for i, x in b.items():
            eqs.setdefault(i, {})[k] = x
    for i, x in v.items():
        eqs.setdefault(i, {})[n] = -x
    pivot_cols, rref = row_echelon(list(eqs.values()))
    if n in pivot_cols:
        return None
    if len(pivot_cols) != n and basis:
        raise InputError("basis vectors are linearly dependent")
    sol = {}
    for pc, prow in zip(pivot_cols, rref):
        x = prow.get(n)
        sol[pc] = -x if x is not None else None
    zero = ExactScalar.zero(modulus)
    return [sol.get(k) or zero for k in range(n)]


def inverse(M):
    """Inverse of a square SparseMatrix; raises InputError if singular."""
    if M.rows != M.cols:
        raise InputError(f"cannot invert a {M.rows}x{M.cols} matrix")
    n = M.rows
    one = ExactScalar.one(M.modulus)
    rows = M.row_dicts()
    aug = []
    for i, r in enumerate(rows):
        row = dict(r)
        row[n + i] = one
        aug.append(row)
    pivot_cols, rref = _back_substitute(*_echelon(aug))
    if pivot_cols[:n] != list(range(n)):
        raise InputError("matrix is singular")
    entries = {}
    for i in range(n):
        for c, x in rref[i].items():
            if c >= n:
                entries[(i, c - n)] = x
    return SparseMatrix._trusted(n, n, entries, M.modulus)
