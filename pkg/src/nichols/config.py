from dataclasses import dataclass

from .errors import BudgetExceeded


@dataclass(frozen=True)
class Budget:
    """Size guards for the combinatorial computations.

    ``ambient`` bounds the dimension of any single graded component that is
    materialized (dim^n for tensor powers).  ``work`` bounds the number of
    (word, basis vector) applications: n! * dim^n for a quantum symmetrizer,
    C(p+q, p) * dim^(p+q) for a shuffle product.
    """

    ambient: int = 500_000
    work: int = 50_000_000

    def check_ambient(self, size, what):
        if size > self.ambient:
            raise BudgetExceeded(
                f"{what}: ambient dimension {size} exceeds budget {self.ambient}",
                size=size,
                limit=self.ambient,
            )

    def check_work(self, size, what):
        if size > self.work:
            raise BudgetExceeded(
                f"{what}: {size} word applications exceed work budget {self.work}",
                size=size,
                limit=self.work,
            )


DEFAULT_BUDGET = Budget()


def as_budget(budget):
    if budget is None:
        return DEFAULT_BUDGET
    if isinstance(budget, Budget):
        return budget
    return Budget(ambient=int(budget))
