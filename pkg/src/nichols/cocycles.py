"""Scalar 2-cocycles on racks and on finite groups, and twisting between them."""

from dataclasses import dataclass

from .errors import InputError, UnsupportedFeature, Violation
from .racks import GroupTable, Rack
from .scalars import ExactScalar, as_scalar, common_modulus, embed, format_scalar


def _scalar_table(rows, size, what):
    """Coerce a square table to ExactScalars embedded in one common field."""
    rows = [list(r) for r in rows]
    if len(rows) != size or any(len(r) != size for r in rows):
        raise InputError(f"{what} table must be {size}x{size}")
    vals = []
    for r in rows:
        row = []
        for v in r:
            if isinstance(v, (list, tuple)):
                raise UnsupportedFeature(
                    f"{what} entries are matrices: only degree-1 (scalar) cocycles are supported"
                )
            row.append(as_scalar(v))
        vals.append(row)
    modulus = common_modulus(*(v.modulus for r in vals for v in r))
    table = tuple(tuple(embed(v, modulus) for v in r) for r in vals)
    for i, r in enumerate(table):
        for j, v in enumerate(r):
            if not v:
                raise InputError(f"{what} has a zero entry at ({i}, {j}); values must be invertible")
    return table, modulus


@dataclass(frozen=True)
class RackCocycle:
    """q(x, y) on a rack; entries live in one field Q(zeta_N)."""

    rack: Rack
    q: tuple
    degree: int = 1

    def __post_init__(self):
        if self.degree != 1:
            raise UnsupportedFeature(f"rack cocycles of degree {self.degree} are not supported")
        table, modulus = _scalar_table(self.q, self.rack.size, "rack cocycle")
        object.__setattr__(self, "q", table)
        object.__setattr__(self, "modulus", modulus)

    def __call__(self, x, y):
        return self.q[x][y]

    def embedded(self, modulus):
        return RackCocycle(self.rack, [[embed(v, modulus) for v in r] for r in self.q])

    def to_json(self):
        return {"rack": self.rack.to_json(), "q": [[format_scalar(v) for v in r] for r in self.q]}

    @classmethod
    def from_json(cls, obj, validate=True):
        if not isinstance(obj, dict) or "rack" not in obj or "q" not in obj:
            raise InputError("rack cocycle JSON needs 'rack' and 'q'")
        X = Rack.from_json(obj["rack"])
        c = cls(X, obj["q"])
        if validate:
            bad = validate_rack_cocycle(X, c)
            if bad:
                raise InputError(f"not a rack cocycle: {bad.detail}")
        return c


@dataclass(frozen=True)
class GroupCocycle:
    group: GroupTable
    sigma: tuple

    def __post_init__(self):
        table, modulus = _scalar_table(self.sigma, self.group.size, "group cocycle")
        object.__setattr__(self, "sigma", table)
        object.__setattr__(self, "modulus", modulus)

    def __call__(self, x, y):
        return self.sigma[x][y]

    def pointwise_inverse(self):
        return GroupCocycle(self.group, [[v.inverse() for v in r] for r in self.sigma])

    def __mul__(self, other):
        if other.group != self.group:
            raise InputError("cocycles on different groups")
        m = common_modulus(self.modulus, other.modulus)
        return GroupCocycle(
            self.group,
            [
                [embed(a, m) * embed(b, m) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.sigma, other.sigma)
            ],
        )

    def to_json(self):
        return {"group": self.group.to_json(), "sigma": [[format_scalar(v) for v in r] for r in self.sigma]}

    @classmethod
    def from_json(cls, obj, validate=True):
        if not isinstance(obj, dict) or "group" not in obj or "sigma" not in obj:
            raise InputError("group cocycle JSON needs 'group' and 'sigma'")
        G = GroupTable.from_json(obj["group"])
        s = cls(G, obj["sigma"])
        if validate:
            bad = validate_group_cocycle(G, s)
            if bad:
                raise InputError(f"not a group cocycle: {bad.detail}")
        return s


def validate_rack_cocycle(X, q):
    """Check q(x, y|>z) q(y, z) = q(x|>y, x|>z) q(x, z) for all triples.

    ``q`` may be a RackCocycle or a raw table.  Returns None or the first
    violating triple with both sides.
    """
    if not isinstance(q, RackCocycle):
        q = RackCocycle(X, q)
    op, t = X.op, q.q
    n = X.size
    for x in range(n):
        for y in range(n):
            xy = op[x][y]
            for z in range(n):
                lhs = t[x][op[y][z]] * t[y][z]
                rhs = t[xy][op[x][z]] * t[x][z]
                if lhs != rhs:
                    return Violation(
                        "rack-cocycle",
                        (x, y, z),
                        f"q(x, y|>z) q(y, z) = {lhs} but q(x|>y, x|>z) q(x, z) = {rhs} "
                        f"at (x, y, z) = ({x}, {y}, {z})",
                        (lhs, rhs),
                    )
    return None


def validate_group_cocycle(G, sigma):
    """Check normalization and sigma(x,y) sigma(xy,z) = sigma(y,z) sigma(x,yz)."""
    if not isinstance(sigma, GroupCocycle):
        sigma = GroupCocycle(G, sigma)
    s, mul, e = sigma.sigma, G.mul, G.identity
    for x in range(G.size):
        if s[x][e] != 1 or s[e][x] != 1:
            return Violation(
                "group-cocycle-normalization",
                (x,),
                f"sigma({x}, e) = {s[x][e]}, sigma(e, {x}) = {s[e][x]}; both must be 1",
                (s[x][e], s[e][x]),
            )
    for x in range(G.size):
        for y in range(G.size):
            xy = mul[x][y]
            for z in range(G.size):
                lhs = s[x][y] * s[xy][z]
                rhs = s[y][z] * s[x][mul[y][z]]
                if lhs != rhs:
                    return Violation(
                        "group-cocycle",
                        (x, y, z),
                        f"sigma(x,y) sigma(xy,z) = {lhs} but sigma(y,z) sigma(x,yz) = {rhs} "
                        f"at (x, y, z) = ({x}, {y}, {z})",
                        (lhs, rhs),
                    )
    return None


def coboundary(G, mu):
    """sigma(x, y) = mu(x) mu(y) / mu(xy); requires mu(e) = 1."""
    mu = [as_scalar(v) for v in mu]
    if len(mu) != G.size:
        raise InputError(f"mu needs {G.size} values, got {len(mu)}")
    m = common_modulus(*(v.modulus for v in mu))
    mu = [embed(v, m) for v in mu]
    if mu[G.identity] != 1:
        raise InputError(f"coboundary needs mu(e) = 1, got {mu[G.identity]}")
    if any(not v for v in mu):
        raise InputError("mu must take nonzero values")
    inv = [v.inverse() for v in mu]
    return GroupCocycle(
        G, [[mu[x] * mu[y] * inv[G.mul[x][y]] for y in range(G.size)] for x in range(G.size)]
    )


def bicharacter(m, k=1):
    """sigma(a, b) = zeta_m^(k a b) on the cyclic group Z_m."""
    from .racks import cyclic_group

    G = cyclic_group(m)
    return GroupCocycle(G, [[ExactScalar.zeta(m, k * a * b) for b in range(m)] for a in range(m)])


def twist_rack_cocycle(X, q, sigma):
    """Twist q by a group 2-cocycle on the group X is embedded in.

    q'(x, y) = sigma(x, y) q(x, y) sigma(x|>y, x)^-1, evaluated on group
    elements.  Both inputs are embedded into their common cyclotomic field.
    Returns ``(q', report)`` where report is None if q' passes the rack
    cocycle check.
    """
    if not X.embedded:
        raise InputError("twisting needs the rack's embedding into a group")
    if sigma.group != X.group:
        raise InputError("sigma is defined on a different group than the rack's")
    m = common_modulus(q.modulus, sigma.modulus)
    els, op = X.elements, X.op
    s = sigma.sigma
    table = []
    for x in range(X.size):
        row = []
        for y in range(X.size):
            gx, gy, gxy = els[x], els[y], els[op[x][y]]
            val = embed(s[gx][gy], m) * embed(q.q[x][y], m) * embed(s[gxy][gx], m).inverse()
            row.append(val)
        table.append(row)
    qp = RackCocycle(X, table)
    return qp, validate_rack_cocycle(X, qp)


def constant_cocycle(X, value):
    v = as_scalar(value)
    return RackCocycle(X, [[v] * X.size for _ in range(X.size)])
