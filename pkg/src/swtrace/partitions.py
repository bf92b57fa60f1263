"""Young diagrams: validation, enumeration, hook lengths, symmetric-group dimensions.

All arithmetic here is exact (Python integers).  Partitions are written as
non-increasing tuples of positive row lengths, e.g. (4, 2, 1) is the diagram

    * * * *
    * *
    *
"""

from __future__ import annotations

import math
from typing import Iterator

# Enumerating all partitions of n grows like exp(pi*sqrt(2n/3)); past this
# point the full list no longer fits in desk-scale memory.
MAX_ENUMERATION_N = 64


class Partition:
    """A partition of n, i.e. a Young diagram with non-increasing rows."""

    __slots__ = ("rows", "n")

    def __init__(self, rows=()):
        rows = tuple(int(r) for r in rows)
        for r in rows:
            if r <= 0:
                raise ValueError(f"row lengths must be positive, got {rows}")
        for a, b in zip(rows, rows[1:]):
            if a < b:
                raise ValueError(f"row lengths must be non-increasing, got {rows}")
        self.rows = rows
        self.n = sum(rows)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def row(self, j: int) -> int:
        """Length of row j (1-based); rows past the diagram have length 0."""
        if j < 1:
            raise ValueError(f"row index must be >= 1, got {j}")
        return self.rows[j - 1] if j <= len(self.rows) else 0

    def padded(self, length: int) -> tuple[int, ...]:
        """Row lengths padded with zeros to the requested length."""
        if length < len(self.rows):
            raise ValueError(f"cannot pad {self.rows} to length {length}")
        return self.rows + (0,) * (length - len(self.rows))

    def conjugate(self) -> "Partition":
        """Transpose of the diagram (columns become rows)."""
        if not self.rows:
            return Partition()
        return Partition(
            tuple(sum(1 for r in self.rows if r > j) for j in range(self.rows[0]))
        )

    def __iter__(self) -> Iterator[int]:
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, j: int) -> int:
        return self.rows[j]

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __lt__(self, other: "Partition") -> bool:
        # descending lexicographic: (4,) < (3, 1) is False, (4,) comes first
        return self.rows > other.rows

    def __repr__(self) -> str:
        return f"Partition{self.rows}"

    def to_list(self) -> list[int]:
        return list(self.rows)


def enumerate_partitions(n: int, max_rows: int | None = None) -> list[Partition]:
    """All partitions of n (optionally with at most max_rows rows), in
    descending lexicographic order: (4), (3,1), (2,2), (2,1,1), (1,1,1,1)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > MAX_ENUMERATION_N:
        raise ValueError(
            f"n = {n} exceeds the enumeration bound {MAX_ENUMERATION_N}; "
            "the partition list would not fit in memory"
        )
    if max_rows is not None and max_rows < 1:
        raise ValueError(f"max_rows must be >= 1, got {max_rows}")
    rows_budget = n if max_rows is None else min(max_rows, n)
    out: list[Partition] = []

    def descend(prefix: list[int], remaining: int, max_part: int, rows_left: int) -> None:
        if remaining == 0:
            out.append(Partition(tuple(prefix)))
            return
        if rows_left == 0:
            return
        # a feasibility cut: rows_left rows of size <= max_part must cover remaining
        if remaining > max_part * rows_left:
            return
        for part in range(min(remaining, max_part), 0, -1):
            prefix.append(part)
            descend(prefix, remaining - part, part, rows_left - 1)
            prefix.pop()

    descend([], n, n, rows_budget)
    return out


def hook_lengths(lam: Partition) -> list[int]:
    """Hook lengths of every cell, row-major.  The hook of cell (i, j) counts
    the cell itself, the cells to its right, and the cells below it."""
    rows = lam.rows
    conj = [sum(1 for r in rows if r > j) for j in range(rows[0])] if rows else []
    hooks = []
    for i, r in enumerate(rows):
        for j in range(r):
            hooks.append((r - j) + (conj[j] - i) - 1)
    return hooks


def dim_sym(lam: Partition) -> int:
    """Number of standard Young tableaux of shape lam (hook length formula),
    equivalently the dimension of the symmetric-group irrep labelled by lam."""
    if lam.n == 0:
        return 1
    prod = math.prod(hook_lengths(lam))
    num = math.factorial(lam.n)
    if num % prod != 0:
        raise ArithmeticError(f"hook product {prod} does not divide {lam.n}!")
    return num // prod
