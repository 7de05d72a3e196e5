import random

import pytest
from hypothesis import given, strategies as st

from relaynet.gf2 import GF2Matrix, GF2Vector, block_matrix, shift_matrix


def naive_rank(entries):
    """Reference rank: plain Gaussian elimination on lists of 0/1."""
    m = [row[:] for row in entries]
    if not m:
        return 0
    nr, nc = len(m), len(m[0])
    rank = 0
    col = 0
    for col in range(nc):
        piv = None
        for i in range(rank, nr):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(nr):
            if i != rank and m[i][col]:
                m[i] = [(a + b) % 2 for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def random_entries(rng, nr, nc):
    return [[rng.randint(0, 1) for _ in range(nc)] for _ in range(nr)]


def test_rank_small_example():
    m = GF2Matrix.from_lists([[1, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1]])
    assert m.rank() == 3


def test_rank_matches_naive_oracle():
    rng = random.Random(7)
    for _ in range(30):
        nr = rng.randint(1, 8)
        nc = rng.randint(1, 8)
        e = random_entries(rng, nr, nc)
        assert GF2Matrix.from_lists(e).rank() == naive_rank(e)


def test_rank_identity_and_zero():
    assert GF2Matrix.identity(6).rank() == 6
    assert GF2Matrix.zeros(4, 5).rank() == 0
    assert GF2Matrix(0, 0).rank() == 0


def test_shift_matrix_entries():
    # q=4, n=2: top two transmit levels land on the bottom two receive levels
    s = shift_matrix(4, 2)
    assert s.to_lists() == [
        [0, 0, 0, 0],
        [0, 0, 0, 0],
        [1, 0, 0, 0],
        [0, 1, 0, 0],
    ]
    assert shift_matrix(3, 3) == GF2Matrix.identity(3)
    assert shift_matrix(3, 0) == GF2Matrix.zeros(3, 3)


def test_shift_matrix_rank_is_strength():
    for q in range(1, 7):
        for n in range(q + 1):
            assert shift_matrix(q, n).rank() == n


def test_shift_matrix_rejects_bad_strength():
    with pytest.raises(ValueError):
        shift_matrix(3, 4)
    with pytest.raises(ValueError):
        shift_matrix(3, -1)


def test_apply_shift_moves_levels():
    q, n = 5, 3
    s = shift_matrix(q, n)
    for j in range(q):
        y = s.apply(GF2Vector(q).set(j, 1))
        if j < n:
            assert y.tolist().index(1) == j + (q - n)
        else:
            assert y.bits == 0


def test_apply_matches_naive():
    rng = random.Random(3)
    for _ in range(20):
        nr = rng.randint(1, 7)
        nc = rng.randint(1, 7)
        e = random_entries(rng, nr, nc)
        xs = [rng.randint(0, 1) for _ in range(nc)]
        want = [sum(a * b for a, b in zip(row, xs)) % 2 for row in e]
        got = GF2Matrix.from_lists(e).apply(GF2Vector.fromlist(xs))
        assert got.tolist() == want


def test_block_matrix_assembly():
    a = GF2Matrix.from_lists([[1, 0], [1, 1]])
    b = GF2Matrix.from_lists([[0, 1], [1, 0]])
    m = block_matrix([[a, None], [None, b]])
    assert m.to_lists() == [
        [1, 0, 0, 0],
        [1, 1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
    ]
    assert m.rank() == a.rank() + b.rank()


def test_block_matrix_shape_errors():
    a = GF2Matrix.identity(2)
    with pytest.raises(ValueError):
        block_matrix([[a, None], [None, None]])
    with pytest.raises(ValueError):
        block_matrix([[a, GF2Matrix.identity(3)]])


def bits_strategy(nr, nc):
    return st.lists(
        st.integers(min_value=0, max_value=(1 << nc) - 1), min_size=nr, max_size=nr
    )


@given(st.data())
def test_rank_equals_transpose_rank(data):
    nr = data.draw(st.integers(1, 8))
    nc = data.draw(st.integers(1, 8))
    rows = data.draw(bits_strategy(nr, nc))
    m = GF2Matrix(nr, nc, rows)
    t = GF2Matrix.from_lists(
        [[m.get(i, j) for i in range(nr)] for j in range(nc)]
    )
    assert m.rank() == t.rank()


@given(st.data())
def test_apply_is_linear(data):
    nr = data.draw(st.integers(1, 8))
    nc = data.draw(st.integers(1, 8))
    m = GF2Matrix(nr, nc, data.draw(bits_strategy(nr, nc)))
    x = GF2Vector(nc, data.draw(st.integers(0, (1 << nc) - 1)))
    y = GF2Vector(nc, data.draw(st.integers(0, (1 << nc) - 1)))
    assert m.apply(x ^ y) == m.apply(x) ^ m.apply(y)


def test_vector_roundtrip_and_bounds():
    v = GF2Vector.fromlist([1, 0, 1, 1])
    assert v.tolist() == [1, 0, 1, 1]
    assert v.get(0) == 1 and v.get(1) == 0
    with pytest.raises(IndexError):
        v.get(4)
    with pytest.raises(ValueError):
        GF2Vector(2, 4)
