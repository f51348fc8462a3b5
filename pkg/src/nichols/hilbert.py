from dataclasses import dataclass, field

EXACT = "exact"
TRUNCATED = "budget-truncated"


@dataclass
class HilbertPrefix:
    """Graded dimensions for degrees 0..N with a per-degree status flag.

    Degrees that could not be computed within budget carry ``dim=None`` and
    the flag ``budget-truncated``.
    """

    dims: list
    flags: list = field(default=None)

    def __post_init__(self):
        self.dims = list(self.dims)
        if self.flags is None:
            self.flags = [EXACT] * len(self.dims)
        self.flags = list(self.flags)
        if len(self.flags) != len(self.dims):
            raise ValueError("dims and flags differ in length")

    @classmethod
    def truncated(cls, dims, top):
        """Exact ``dims`` followed by unknown entries up to degree ``top``."""
        dims = list(dims)
        missing = max(0, top + 1 - len(dims))
        return cls(dims + [None] * missing, [EXACT] * len(dims) + [TRUNCATED] * missing)

    @property
    def complete(self):
        return all(f == EXACT for f in self.flags)

    @property
    def top(self):
        return len(self.dims) - 1

    def __getitem__(self, n):
        return self.dims[n]

    def __len__(self):
        return len(self.dims)

    def to_json(self):
        return {"dims": self.dims, "flags": self.flags}

    def to_tsv(self):
        lines = ["degree\tdim\tflag"]
        for n, (d, f) in enumerate(zip(self.dims, self.flags)):
            lines.append(f"{n}\t{'NA' if d is None else d}\t{f}")
        return "\n".join(lines) + "\n"
