from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gtkcenter.gridtiling import (
    GTInstance,
    GTSolution,
    augment,
    check_solution,
    instance_from_json,
    instance_to_json,
    is_b_covered,
    is_solvable,
    random_covered_instance,
    random_instance,
    reduction_input,
    restore_solution,
    solve_bruteforce,
)

from conftest import unsolvable_instance


def enumerate_solvable(inst: GTInstance) -> bool:
    """Oracle: try every choice of one pair per cell."""
    cells = [sorted(s) for _, s in inst.cells()]
    chi = inst.chi
    for choice in product(*cells):
        rows = tuple(tuple(choice[i * chi : (i + 1) * chi]) for i in range(chi))
        if check_solution(inst, GTSolution(rows)):
            return True
    return False


@st.composite
def instances(draw, chis=(2, 3), ns=(2, 3)):
    chi = draw(st.sampled_from(chis))
    n = draw(st.sampled_from(ns))
    pairs = st.tuples(st.integers(1, n), st.integers(1, n))
    cells = [[draw(st.frozensets(pairs, max_size=3)) for _ in range(chi)] for _ in range(chi)]
    return GTInstance.from_cells(chi, n, cells)


def test_check_solution_examples():
    single = GTInstance.from_cells(1, 3, [[[(3, 1), (1, 2)]]])
    assert check_solution(single, GTSolution((((3, 1),),)))
    ident = GTInstance.from_cells(2, 2, [[[(1, 1)], [(1, 2)]], [[(2, 1)], [(2, 2)]]])
    assert check_solution(ident, GTSolution((((1, 1), (1, 2)), ((2, 1), (2, 2)))))
    row = GTInstance.from_cells(2, 2, [[[(1, 2)], [(1, 1)]], [[(2, 2)], [(2, 2)]]])
    assert not check_solution(row, GTSolution((((1, 2), (1, 1)), ((2, 2), (2, 2)))))
    with pytest.raises(ValueError):
        check_solution(ident, GTSolution((((1, 1),),)))


def test_bruteforce_examples():
    empty = GTInstance.from_cells(2, 2, [[[(1, 1)], []], [[(1, 1)], [(1, 1)]]])
    assert solve_bruteforce(empty) is None
    assert solve_bruteforce(unsolvable_instance()) is None
    both = GTInstance.from_cells(2, 2, [[[(1, 1), (2, 2)]] * 2] * 2)
    sol = solve_bruteforce(both)
    assert sol is not None and check_solution(both, sol)


def test_b_covered():
    assert is_b_covered(GTInstance.from_cells(2, 1, [[[(1, 1)]] * 2] * 2))
    assert not is_b_covered(GTInstance.from_cells(1, 2, [[[(1, 1), (2, 1)]]]))


def test_augment_example_on_empty_cells():
    empty = GTInstance.from_cells(2, 2, [[[], []], [[], []]])
    aug = augment(empty)
    assert aug.n == 4
    # rows above the last get a = N - i + 1 = 4; the last row gets a = 1
    for j in (1, 2):
        assert aug.cell(1, j) == {(4, b) for b in range(1, 5)}
        assert aug.cell(2, j) == {(1, b) for b in range(1, 5)}
    assert not is_solvable(aug)


def test_augment_rejects_small_or_unnormalized():
    with pytest.raises(ValueError):
        augment(GTInstance.from_cells(1, 2, [[[(1, 1)]]]))
    with pytest.raises(ValueError):
        augment(GTInstance.from_cells(2, 2, [[[(3, 1)], []], [[], []]]))


def test_augment_keeps_the_unsolvable_example_unsolvable():
    inst = unsolvable_instance()
    assert not is_solvable(augment(inst))


@settings(max_examples=80, deadline=None)
@given(instances())
def test_augment_preserves_solvability(inst):
    aug = augment(inst)
    assert is_b_covered(aug)
    assert aug.is_normalized()
    assert is_solvable(aug) == is_solvable(inst)
    sol = solve_bruteforce(aug)
    if sol is not None:
        assert check_solution(inst, restore_solution(inst, sol))


@settings(max_examples=60, deadline=None)
@given(instances(chis=(1, 2), ns=(1, 2)))
def test_bruteforce_matches_enumeration(inst):
    sol = solve_bruteforce(inst)
    assert (sol is not None) == enumerate_solvable(inst)
    if sol is not None:
        assert check_solution(inst, sol)


def test_single_cell_handling():
    cell = GTInstance.from_cells(1, 1, [[[(1, 1)]]])
    padded = reduction_input(cell)
    assert padded.chi == 1 and padded.n == 2 and is_b_covered(padded)
    empty = GTInstance.from_cells(1, 2, [[[]]])
    lifted = reduction_input(empty)
    assert lifted.chi == 2 and not is_solvable(lifted)
    sol = solve_bruteforce(padded)
    assert restore_solution(cell, sol).pair(1, 1) == (1, 1)
    with pytest.raises(ValueError):
        restore_solution(empty, sol)


def test_random_instances():
    assert random_instance(2, 3, 2, 7) == random_instance(2, 3, 2, 7)
    full = random_instance(2, 2, 4, 0)
    assert all(len(s) == 4 for _, s in full.cells())
    assert not is_solvable(random_instance(2, 2, 0, 0))
    with pytest.raises(ValueError):
        random_instance(2, 2, 5, 0)
    assert is_b_covered(random_covered_instance(3, 3, 1, 4))


def test_instance_json_round_trip():
    inst = random_instance(3, 3, 2, 11)
    assert instance_from_json(instance_to_json(inst)) == inst
    with pytest.raises(ValueError):
        instance_from_json('{"chi": 2, "n": 2, "sets": [[]]}')
