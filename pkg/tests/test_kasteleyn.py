import math

import numpy as np
import pytest

from hexdimer import (
    BoxShape,
    INFINITE,
    build_embedding,
    kasteleyn_matrix,
    kasteleyn_partition,
    log_z_kasteleyn,
    oracle_partition,
)
from hexdimer.kasteleyn import HORIZONTAL

from _reference import boxed_plane_partition_count


def test_unit_hexagon_structure():
    emb = build_embedding(BoxShape(1, 1, 1))
    assert len(emb.white_vertices) == 3
    assert len(emb.black_vertices) == 3
    assert len(emb.edges) == 6


def test_vertex_counts():
    # 2(mn + nk + mk) vertices in total
    assert build_embedding(BoxShape(2, 1, 1)).size * 2 == 10
    assert build_embedding(BoxShape(2, 2, 2)).size * 2 == 24
    for shape in (BoxShape(3, 2, 1), BoxShape(1, 3, 2), BoxShape(3, 3, 3)):
        emb = build_embedding(shape)
        assert 2 * emb.size == shape.volume


def test_horizontal_edges_have_integer_aligned_endpoints():
    emb = build_embedding(BoxShape(2, 3, 2))
    for wi, bi, direction in emb.edges:
        w, b = emb.white_vertices[wi], emb.black_vertices[bi]
        same_row = (w.imag == b.imag)
        assert same_row == (direction == HORIZONTAL)
        if direction == HORIZONTAL:
            assert w.real == int(w.real) and w.imag == int(w.imag)
            assert b.real == int(b.real) and b.imag == int(b.imag)


def test_matrix_entries():
    emb = build_embedding(BoxShape(1, 1, 1))
    mat = kasteleyn_matrix(emb, 0.5)
    assert mat.shape == (3, 3)
    assert np.all(mat >= 0.0)
    # one horizontal edge at weight 1 (v = 0) and one at weight q^{-(-1)} = q
    horizontal_weights = sorted(mat[wi, bi] for wi, bi, d in emb.edges if d == HORIZONTAL)
    assert horizontal_weights == [0.5, 1.0]


def test_infinite_height_rejected():
    with pytest.raises(ValueError):
        build_embedding(BoxShape(2, 2, INFINITE))


def test_matchings_counted_at_q_one():
    for shape in (BoxShape(1, 1, 1), BoxShape(2, 2, 2), BoxShape(3, 2, 2)):
        count = kasteleyn_partition(shape, 1.0)
        assert abs(count - boxed_plane_partition_count(shape.m, shape.n, shape.k)) < 1e-6


@pytest.mark.parametrize("q", [0.3, 0.5, 0.9])
@pytest.mark.parametrize("m,n,k", [(m, n, k) for m in (1, 2, 3) for n in (1, 2, 3) for k in (1, 2, 3)])
def test_matches_enumeration_oracle(m, n, k, q):
    shape = BoxShape(m, n, k)
    z_det = kasteleyn_partition(shape, q)
    z_ref = oracle_partition(shape, q)
    assert abs(z_det - z_ref) <= 1e-9 * z_ref


def test_examples_from_oracle():
    assert abs(kasteleyn_partition(BoxShape(1, 1, 1), 0.5) - 1.5) < 1e-12
    assert abs(kasteleyn_partition(BoxShape(1, 1, 2), 0.5) - 1.75) < 1e-12
    assert abs(kasteleyn_partition(BoxShape(2, 2, 2), 1.0) - 20.0) < 1e-9


def test_log_form_consistent():
    shape = BoxShape(3, 2, 2)
    assert abs(math.exp(log_z_kasteleyn(shape, 0.4)) - oracle_partition(shape, 0.4)) < 1e-9


def test_dimension_guard():
    with pytest.raises(ValueError):
        log_z_kasteleyn(BoxShape(40, 40, 40), 0.9)
