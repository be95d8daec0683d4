import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starframes import (
    AlgebraElement,
    FrameContext,
    ModuleOperator,
    ModuleVector,
    SequenceOperator,
    SequenceVector,
    coordinate_projection,
    inner_product,
    is_positive,
    module_action,
    op_adjoint,
    op_apply,
    op_compose,
    sequence_adjoint_apply,
    sequence_apply,
    sequence_inner_product,
)
from starframes.errors import ContextMismatch, DimensionMismatch, IndexOutOfRange, LengthMismatch

from conftest import crandn, rand_elem, rand_vec

CTX = FrameContext(2, 2)


def rand_op(rng, ctx=CTX):
    return ModuleOperator(ctx, crandn(rng, (ctx.flat_dim, ctx.flat_dim)))


def maxabs(a):
    return float(np.abs(np.asarray(a)).max())


def test_context_validation():
    with pytest.raises(ValueError):
        FrameContext(0, 1)
    with pytest.raises(ValueError):
        FrameContext(1, True)
    assert FrameContext(2, 3).flat_dim == 6


def test_flatten_round_trip(rng):
    coords = [rand_elem(rng, 2) for _ in range(3)]
    ctx = FrameContext(2, 3)
    x = ModuleVector.from_coords(ctx, coords)
    assert x.flat.shape == (2, 6)
    for a, b in zip(x.coords, coords):
        np.testing.assert_array_equal(a.entries, b.entries)
    y = ModuleVector.from_coords(ctx, x.coords)
    np.testing.assert_array_equal(x.flat, y.flat)
    with pytest.raises(DimensionMismatch):
        ModuleVector.from_coords(ctx, coords[:2])


def test_inner_product_examples():
    ctx = FrameContext(1, 2)
    e0 = ModuleVector.from_coords(ctx, [[[1]], [[0]]])
    e1 = ModuleVector.from_coords(ctx, [[[0]], [[1]]])
    assert inner_product(e0, e1).entries[0, 0] == 0
    assert inner_product(e0, e0).entries[0, 0] == 1


def test_inner_product_is_sum_over_coordinates(rng):
    x, y = rand_vec(rng, CTX), rand_vec(rng, CTX)
    expected = sum(a.entries @ b.entries.conj().T for a, b in zip(x.coords, y.coords))
    assert maxabs(inner_product(x, y).entries - expected) <= 1e-14


def test_inner_product_hermitian_symmetry(rng):
    x, y = rand_vec(rng, CTX), rand_vec(rng, CTX)
    lhs = inner_product(x, y).H.entries
    assert maxabs(lhs - inner_product(y, x).entries) <= 1e-13


def test_inner_product_context_mismatch(rng):
    with pytest.raises(ContextMismatch):
        inner_product(rand_vec(rng, CTX), rand_vec(rng, FrameContext(2, 1)))


def test_module_action(rng):
    x, y = rand_vec(rng, CTX), rand_vec(rng, CTX)
    np.testing.assert_array_equal(module_action(AlgebraElement.identity(2), x).flat, x.flat)
    np.testing.assert_array_equal(module_action(AlgebraElement.zeros(2), x).flat, 0)
    a = rand_elem(rng, 2)
    lhs = inner_product(module_action(a, x), y).entries
    rhs = (a @ inner_product(x, y)).entries
    assert maxabs(lhs - rhs) <= 1e-13
    with pytest.raises(ContextMismatch):
        module_action(rand_elem(rng, 3), x)


def test_op_apply(rng):
    x = rand_vec(rng, CTX)
    np.testing.assert_array_equal(op_apply(ModuleOperator.identity(CTX), x).flat, x.flat)
    np.testing.assert_array_equal(op_apply(ModuleOperator.zeros(CTX), x).flat, 0)
    M, a = rand_op(rng), rand_elem(rng, 2)
    lhs = op_apply(M, module_action(a, x)).flat
    rhs = module_action(a, op_apply(M, x)).flat
    assert maxabs(lhs - rhs) <= 1e-13
    with pytest.raises(ContextMismatch):
        op_apply(M, rand_vec(rng, FrameContext(1, 4)))


def test_flatten_homomorphism(rng):
    M, x = rand_op(rng), rand_vec(rng, CTX)
    np.testing.assert_array_equal(op_apply(M, x).flat, x.flat @ M.mat)


def test_op_adjoint(rng):
    Id = ModuleOperator.identity(CTX)
    np.testing.assert_array_equal(op_adjoint(Id).mat, Id.mat)
    M = rand_op(rng)
    np.testing.assert_array_equal(op_adjoint(op_adjoint(M)).mat, M.mat)
    x, y = rand_vec(rng, CTX), rand_vec(rng, CTX)
    lhs = inner_product(op_apply(M, x), y).entries
    rhs = inner_product(x, op_apply(op_adjoint(M), y)).entries
    assert maxabs(lhs - rhs) <= 1e-13


def test_op_compose(rng):
    M1, M2, x = rand_op(rng), rand_op(rng), rand_vec(rng, CTX)
    np.testing.assert_array_equal(op_compose(ModuleOperator.identity(CTX), M1).mat, M1.mat)
    lhs = op_apply(op_compose(M1, M2), x).flat
    rhs = op_apply(M1, op_apply(M2, x)).flat
    assert maxabs(lhs - rhs) <= 1e-13
    well = ModuleOperator(CTX, np.eye(4) + 0.2 * crandn(rng, (4, 4)))
    inv = ModuleOperator(CTX, np.linalg.inv(well.mat))
    assert maxabs(op_compose(well, inv).mat - np.eye(4)) <= 1e-11
    adj_lhs = op_adjoint(op_compose(M1, M2)).mat
    adj_rhs = op_compose(op_adjoint(M2), op_adjoint(M1)).mat
    assert maxabs(adj_lhs - adj_rhs) <= 1e-13
    with pytest.raises(ContextMismatch):
        op_compose(M1, ModuleOperator.identity(FrameContext(1, 4)))


def test_coordinate_projection(rng):
    x, y = rand_vec(rng, CTX), rand_vec(rng, CTX)
    assert coordinate_projection(0, SequenceVector(CTX, (x,))) is x
    s = SequenceVector(CTX, (x, y))
    assert coordinate_projection(1, s) is y
    with pytest.raises(IndexOutOfRange):
        coordinate_projection(2, s)
    with pytest.raises(IndexError):
        coordinate_projection(-1, s)


def test_sequence_apply(rng):
    x = rand_vec(rng, CTX)
    out = sequence_apply(SequenceOperator(CTX, (ModuleOperator.identity(CTX),)), x)
    np.testing.assert_array_equal(out.items[0].flat, x.flat)
    assert len(sequence_apply(SequenceOperator(CTX, ()), x)) == 0
    P = SequenceOperator(CTX, tuple(rand_op(rng) for _ in range(3)))
    out = sequence_apply(P, x)
    for row, item in zip(P.rows, out.items):
        np.testing.assert_array_equal(item.flat, op_apply(row, x).flat)


def test_sequence_block_matches_rows(rng):
    P = SequenceOperator(CTX, tuple(rand_op(rng) for _ in range(3)))
    x = rand_vec(rng, CTX)
    joined = np.hstack([it.flat for it in sequence_apply(P, x).items])
    assert maxabs(x.flat @ P.block - joined) <= 1e-14
    assert P.stack.shape == (3, 4, 4)


def test_sequence_adjoint_apply(rng):
    y = rand_vec(rng, CTX)
    single = SequenceOperator(CTX, (ModuleOperator.identity(CTX),))
    np.testing.assert_array_equal(sequence_adjoint_apply(single, SequenceVector(CTX, (y,))).flat, y.flat)
    P = SequenceOperator(CTX, tuple(rand_op(rng) for _ in range(3)))
    zero = SequenceVector(CTX, tuple(ModuleVector.zeros(CTX) for _ in range(3)))
    np.testing.assert_array_equal(sequence_adjoint_apply(P, zero).flat, 0)
    x = rand_vec(rng, CTX)
    s = SequenceVector(CTX, tuple(rand_vec(rng, CTX) for _ in range(3)))
    lhs = sequence_inner_product(sequence_apply(P, x), s).entries
    rhs = inner_product(x, sequence_adjoint_apply(P, s)).entries
    assert maxabs(lhs - rhs) <= 1e-12
    with pytest.raises(LengthMismatch):
        sequence_adjoint_apply(P, SequenceVector(CTX, s.items[:2]))


def test_zero_inner_product_only_for_zero_vector(rng):
    assert maxabs(inner_product(ModuleVector.zeros(CTX), ModuleVector.zeros(CTX)).entries) == 0
    # a vector with one nonzero entry still has nonzero <x, x>
    flat = np.zeros((2, 4), dtype=complex)
    flat[1, 3] = 1e-3
    x = ModuleVector(CTX, flat)
    assert np.linalg.norm(inner_product(x, x).entries) > 1e-13
    for _ in range(20):
        x = rand_vec(rng, CTX)
        assert np.linalg.norm(inner_product(x, x).entries) > 1e-13


@settings(max_examples=50, deadline=None)
@given(n=st.integers(1, 3), k=st.integers(1, 3), seed=st.integers(0, 2**32 - 1))
def test_self_inner_product_positive(n, k, seed):
    x = rand_vec(np.random.default_rng(seed), FrameContext(n, k))
    assert is_positive(inner_product(x, x))
