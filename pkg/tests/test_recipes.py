from __future__ import annotations

from graphconcat.codes import ClassicalCode, CwsCode
from graphconcat.distance import stabilizer_distance_coset
from graphconcat.recipes import (
    fig5_move,
    full_space_code,
    iter_standard_graph_codes,
    pentagon_code,
    search_graph_code,
    star_422_code,
    steane_cube_code,
    triangle_code,
    two_qubit_inner_code,
)


def distance(code: CwsCode) -> int:
    return stabilizer_distance_coset(code.matrices()).value


def test_parameters():
    for code, n, k, d in [
        (triangle_code(), 3, 1, 1),
        (two_qubit_inner_code(), 2, 1, 1),
        (pentagon_code(), 5, 1, 3),
        (steane_cube_code(), 7, 1, 3),
        (star_422_code(), 4, 2, 2),
    ]:
        assert (code.n, code.classical.k, distance(code)) == (n, k, d)


def test_full_space():
    assert full_space_code(4).K == 16


def test_steane_cube_degrees():
    g = steane_cube_code().graph
    # corners at Hamming weight 1 lose their neighbour 000, the rest keep all three
    assert [len(g.neighbors(v)) for v in range(7)] == [2, 2, 3, 2, 3, 3, 3]


def test_422_rows_give_412_subcodes():
    code = star_422_code()
    for row in code.classical.generators.array:
        sub = CwsCode(code.graph, ClassicalCode.linear([row]))
        assert distance(sub) == 2


def test_search():
    found = search_graph_code(4, 2, 2, subcode_distance=2)
    assert found.classical.k == 2 and distance(found) == 2


def test_enumeration_count():
    assert sum(1 for _ in iter_standard_graph_codes(3, 1)) == 8 * 4


def test_fig5_move_validates():
    g, move = fig5_move()
    move.validate(g)
