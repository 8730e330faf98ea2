import itertools
from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from qgrade.linalg import matvec, rank, solve_integer, solve_rational

ints = st.integers(-3, 3)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(ints, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


def test_rational_solution_with_kernel():
    sol = solve_rational([[1, 1, 0], [0, 1, 1]], [1, 2])
    assert matvec([[1, 1, 0], [0, 1, 1]], sol.particular) == (1, 2)
    assert len(sol.kernel) == 1
    assert matvec([[1, 1, 0], [0, 1, 1]], sol.kernel[0]) == (0, 0)


def test_inconsistent_system():
    assert solve_rational([[1, 1], [2, 2]], [1, 3]) is None


def test_integer_solvability_differs_from_rational():
    assert solve_integer([[2]], [1]) is None
    assert solve_rational([[2]], [1]).particular == (F(1, 2),)
    assert solve_integer([[2, 3]], [1]).particular is not None


@settings(max_examples=400)
@given(matrices(), st.data())
def test_rational_solver_matches_definition(a, data):
    n = len(a[0])
    x = data.draw(st.lists(ints, min_size=n, max_size=n))
    b = matvec(a, x)
    sol = solve_rational(a, b, n)
    assert sol is not None
    assert matvec(a, sol.particular) == b
    assert len(sol.kernel) == n - rank(a)
    for k in sol.kernel:
        assert not any(matvec(a, k))


@settings(max_examples=400)
@given(matrices(3, 3), st.lists(ints, min_size=3, max_size=3))
def test_integer_solver_against_brute_force(a, b):
    b = b[: len(a)]
    n = len(a[0])
    sol = solve_integer(a, b, n)
    # brute force over a box; lattice solutions of these small systems, when they exist,
    # have a representative with small entries after adding kernel vectors, so only the
    # positive direction is checked exhaustively
    if sol is not None:
        assert matvec(a, sol.particular) == tuple(b)
        for k in sol.kernel:
            assert all(isinstance(v, int) for v in k)
            assert not any(matvec(a, k))
    else:
        for x in itertools.product(range(-6, 7), repeat=n):
            assert matvec(a, x) != tuple(b)
    rational = solve_rational(a, b, n)
    if sol is not None:
        assert rational is not None


@settings(max_examples=300)
@given(matrices(3, 4))
def test_integer_kernel_is_full_rank_lattice(a):
    n = len(a[0])
    sol = solve_integer(a, [0] * len(a), n)
    assert len(sol.kernel) == n - rank(a)
