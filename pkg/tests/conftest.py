import numpy as np
import pytest
from hypothesis import settings

from starframes import AlgebraElement, FrameContext, ModuleVector, OperatorFrame

settings.register_profile("default", derandomize=True, deadline=None)
settings.load_profile("default")


def crandn(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def rand_elem(rng, n):
    return AlgebraElement(crandn(rng, (n, n)))


def rand_vec(rng, ctx):
    return ModuleVector(ctx, crandn(rng, (ctx.algebra_dim, ctx.flat_dim)))


def diag31_frame():
    """n=1, k=2 frame {I, diag(1,0), E_01} with G = diag(3, 1)."""
    ctx = FrameContext(1, 2)
    return OperatorFrame.from_mats(ctx, [np.eye(2), np.diag([1.0, 0.0]), [[0, 1], [0, 0]]],
                                   label="diag31")


def parseval_frame(ctx, count=3, seed=0):
    """Parseval frame from an isometry: rows of a unitary split into blocks."""
    rng = np.random.default_rng(seed)
    nk = ctx.flat_dim
    q, _ = np.linalg.qr(crandn(rng, (count * nk, nk)))
    # q^H q = I; the blocks of q^H are the M_i with sum M_i M_i^H = I
    mats = [q[i * nk:(i + 1) * nk, :].conj().T for i in range(count)]
    return OperatorFrame.from_mats(ctx, mats, label="parseval")


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.RESULTS:
        terminalreporter.write_line(line)
