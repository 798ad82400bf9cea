"""Grid Tiling with Inequality: instances, brute-force solving, augmentation.

Cells are addressed 1-based as ``(i, j)`` with ``i`` the row. A solution picks
one pair per cell so that first components never decrease down a column
(``i -> i+1``) and second components never decrease along a row
(``j -> j+1``).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import product
from typing import Iterable

Pair = tuple[int, int]


@dataclass(frozen=True)
class GTInstance:
    chi: int
    n: int
    sets: tuple[tuple[frozenset[Pair], ...], ...]

    def __post_init__(self):
        if self.chi < 1 or self.n < 1:
            raise ValueError("chi and n must be positive")
        if len(self.sets) != self.chi or any(len(row) != self.chi for row in self.sets):
            raise ValueError(f"sets must form a {self.chi}x{self.chi} grid")

    @classmethod
    def from_cells(cls, chi: int, n: int, cells: Iterable[Iterable[Iterable[Pair]]]) -> GTInstance:
        rows = tuple(
            tuple(frozenset((int(a), int(b)) for a, b in cell) for cell in row) for row in cells
        )
        return cls(chi, n, rows)

    def cell(self, i: int, j: int) -> frozenset[Pair]:
        return self.sets[i - 1][j - 1]

    def cells(self):
        """Yield ``((i, j), pairs)`` in row-major order."""
        for i in range(1, self.chi + 1):
            for j in range(1, self.chi + 1):
                yield (i, j), self.cell(i, j)

    def is_normalized(self) -> bool:
        return all(1 <= a <= self.n and 1 <= b <= self.n for _, s in self.cells() for a, b in s)


@dataclass(frozen=True)
class GTSolution:
    chosen: tuple[tuple[Pair, ...], ...]

    def pair(self, i: int, j: int) -> Pair:
        return self.chosen[i - 1][j - 1]

    @property
    def chi(self) -> int:
        return len(self.chosen)


def check_solution(inst: GTInstance, sol: GTSolution) -> bool:
    if len(sol.chosen) != inst.chi or any(len(row) != inst.chi for row in sol.chosen):
        raise ValueError("solution shape does not match the instance")
    chi = inst.chi
    for i, j in product(range(1, chi + 1), repeat=2):
        a, b = sol.pair(i, j)
        if (a, b) not in inst.cell(i, j):
            return False
        if i < chi and a > sol.pair(i + 1, j)[0]:
            return False
        if j < chi and b > sol.pair(i, j + 1)[1]:
            return False
    return True


def solve_bruteforce(inst: GTInstance) -> GTSolution | None:
    """Exhaustive backtracking in row-major order with monotonicity pruning."""
    chi = inst.chi
    if any(not s for _, s in inst.cells()):
        return None
    cells = [(i, j) for i in range(chi) for j in range(chi)]
    options = {(i, j): sorted(inst.sets[i][j]) for i, j in cells}
    grid: list[list[Pair | None]] = [[None] * chi for _ in range(chi)]

    def place(k: int) -> bool:
        if k == len(cells):
            return True
        i, j = cells[k]
        min_a = grid[i - 1][j][0] if i > 0 else None
        min_b = grid[i][j - 1][1] if j > 0 else None
        for a, b in options[i, j]:
            if min_a is not None and a < min_a:
                continue
            if min_b is not None and b < min_b:
                continue
            grid[i][j] = (a, b)
            if place(k + 1):
                return True
        grid[i][j] = None
        return False

    if not place(0):
        return None
    return GTSolution(tuple(tuple(row) for row in grid))  # type: ignore[arg-type]


def is_b_covered(inst: GTInstance) -> bool:
    need = set(range(1, inst.n + 1))
    return all(need <= {b for _, b in s} for _, s in inst.cells())


def augment(inst: GTInstance) -> GTInstance:
    """Pad every cell so each second component up to the new bound occurs.

    Genuine pairs are shifted to ``(a+1, b)`` and the bound becomes
    ``N = n + chi``. Rows ``i < chi`` receive dummies ``(N - i + 1, b)`` and
    row ``chi`` receives dummies ``(1, b)``, for every ``b`` in ``1..N``. The
    dummies can never be part of a solution, so solvability is preserved.
    """
    chi, n = inst.chi, inst.n
    if chi < 2:
        raise ValueError("augment needs chi >= 2; decide chi = 1 directly (every cell non-empty)")
    if not inst.is_normalized():
        raise ValueError("augment expects pairs within [n] x [n]")
    big = n + chi
    rows = []
    for i in range(1, chi + 1):
        dummy_a = big - i + 1 if i < chi else 1
        row = []
        for j in range(1, chi + 1):
            cell = {(a + 1, b) for a, b in inst.cell(i, j)}
            cell.update((dummy_a, b) for b in range(1, big + 1))
            row.append(frozenset(cell))
        rows.append(tuple(row))
    return GTInstance(chi, big, tuple(rows))


def _lift_to_two(inst: GTInstance) -> GTInstance:
    # chi = 1 embedded in a 2x2 grid whose other cells hold every pair:
    # solvable iff the original cell is non-empty.
    full = frozenset(product(range(1, inst.n + 1), repeat=2))
    return GTInstance(2, inst.n, ((inst.cell(1, 1), full), (full, full)))


def reduction_input(inst: GTInstance) -> GTInstance:
    """Turn an arbitrary instance into an equivalent b-covered, normalized one.

    ``chi >= 2`` goes through :func:`augment`. A non-empty ``chi = 1`` cell is
    padded with ``(1, b)`` for every missing ``b`` up to ``max(n, 2)``, which
    keeps it solvable and leaves a pair with ``b`` below the bound. An empty
    ``chi = 1`` cell is embedded into an unsolvable 2x2 instance first.
    """
    if inst.chi >= 2:
        return augment(inst)
    cell = inst.cell(1, 1)
    if not cell:
        return augment(_lift_to_two(inst))
    bound = max(inst.n, 2)
    present = {b for _, b in cell}
    padded = set(cell) | {(1, b) for b in range(1, bound + 1) if b not in present}
    return GTInstance(1, bound, ((frozenset(padded),),))


def restore_solution(original: GTInstance, sol: GTSolution) -> GTSolution:
    """Map a solution of ``reduction_input(original)`` back to ``original``.

    Augmented pairs are shifted back to ``(a - 1, b)``. For a padded
    ``chi = 1`` cell a padding pair is replaced by the smallest genuine pair.
    """
    if original.chi == 1:
        cell = original.cell(1, 1)
        if not cell or sol.chi != 1:
            raise ValueError("an empty single cell has no solution to restore")
        pair = sol.pair(1, 1)
        return GTSolution(((pair if pair in cell else min(cell),),))
    if sol.chi != original.chi:
        raise ValueError("solution shape does not match the instance")
    return GTSolution(tuple(tuple((a - 1, b) for a, b in row) for row in sol.chosen))


def is_solvable(inst: GTInstance) -> bool:
    if inst.chi == 1:
        return bool(inst.cell(1, 1))
    return solve_bruteforce(inst) is not None


def random_instance(chi: int, n: int, pairs_per_cell: int, seed: int) -> GTInstance:
    if not 0 <= pairs_per_cell <= n * n:
        raise ValueError(f"pairs_per_cell must lie in [0, {n * n}]")
    rng = random.Random(seed)
    universe = sorted(product(range(1, n + 1), repeat=2))
    rows = tuple(
        tuple(frozenset(rng.sample(universe, pairs_per_cell)) for _ in range(chi))
        for _ in range(chi)
    )
    return GTInstance(chi, n, rows)


def random_covered_instance(chi: int, n: int, extra_pairs: int, seed: int) -> GTInstance:
    """Random b-covered instance: one random ``a`` per ``b`` plus extra pairs."""
    rng = random.Random(seed)
    universe = sorted(product(range(1, n + 1), repeat=2))
    rows = []
    for _ in range(chi):
        row = []
        for _ in range(chi):
            cell = {(rng.randint(1, n), b) for b in range(1, n + 1)}
            cell.update(rng.sample(universe, min(extra_pairs, len(universe))))
            row.append(frozenset(cell))
        rows.append(tuple(row))
    return GTInstance(chi, n, tuple(rows))


# ---------------------------------------------------------------- file format


def instance_to_json(inst: GTInstance) -> str:
    doc = {
        "chi": inst.chi,
        "n": inst.n,
        "sets": [sorted([a, b] for a, b in s) for _, s in inst.cells()],
    }
    return json.dumps(doc) + "\n"


def instance_from_json(text: str) -> GTInstance:
    doc = json.loads(text)
    chi, n, flat = int(doc["chi"]), int(doc["n"]), doc["sets"]
    if len(flat) != chi * chi:
        raise ValueError(f"expected {chi * chi} cells, got {len(flat)}")
    cells = [[flat[i * chi + j] for j in range(chi)] for i in range(chi)]
    return GTInstance.from_cells(chi, n, cells)


def solution_to_json(sol: GTSolution) -> str:
    return json.dumps({"chosen": [[list(p) for p in row] for row in sol.chosen]}) + "\n"
