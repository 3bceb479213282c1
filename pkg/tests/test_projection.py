"""Contract tests for the discrete divergence-free projection.

The projector removes the part of H seen by the *same* centered-difference
divergence the diagnostics use, while keeping every component pinned to zero
on the walls.  Contract: post-state satisfies ||div H||_2 <= 1e-10 ||H||_2.
"""

import numpy as np
import pytest

from mhdlab.grid import Grid
from mhdlab.fieldops import divergence
from mhdlab.projection import DivFreeProjector


def _zero_walls(g, F):
    for ax in g.active_axes:
        sl = [slice(None)] * 4
        for pos in (0, -1):
            sl[1 + ax] = pos
            F[tuple(sl)] = 0.0
            sl[1 + ax] = slice(None)
    return F


def _rand_field(g, seed):
    rng = np.random.default_rng(seed)
    return _zero_walls(g, rng.standard_normal((3,) + g.shape))


@pytest.mark.parametrize(
    "shape,extents",
    [
        ((64, 64, 1), (np.pi, np.pi, 1.0)),
        ((31, 47, 1), (1.0, 2.0, 1.0)),
        ((17, 17, 17), (1.0, 1.0, 1.0)),
    ],
)
def test_projection_contract(shape, extents):
    g = Grid(shape=shape, extents=extents)
    proj = DivFreeProjector(g)
    H = _rand_field(g, seed=5)
    out = proj.project(H)
    assert g.norm_l2(divergence(g, out)) <= 1e-10 * g.norm_l2(H)
    # walls stay pinned
    for ax in g.active_axes:
        sl = [slice(None)] * 4
        for pos in (0, -1):
            sl[1 + ax] = pos
            assert np.all(out[tuple(sl)] == 0.0)
            sl[1 + ax] = slice(None)


def test_projection_idempotent_up_to_solver_tol():
    g = Grid(shape=(48, 48, 1), extents=(np.pi, np.pi, 1.0))
    proj = DivFreeProjector(g)
    H = proj.project(_rand_field(g, seed=11))
    H2 = proj.project(H)
    assert np.max(np.abs(H2 - H)) <= 1e-9 * max(np.max(np.abs(H)), 1.0)


def _bump(s):
    a = np.clip(np.abs(s), 0.0, 1.0)
    return 1.0 - 10.0 * a**3 + 15.0 * a**4 - 6.0 * a**5


def test_interior_divfree_field_nearly_unchanged():
    # H with compactly supported discrete div ~ 0 everywhere: projection is
    # close to the identity
    g = Grid(shape=(65, 65, 1), extents=(np.pi, np.pi, 1.0))
    x, y = g.mesh()[:2]
    L = np.pi
    psi = _bump((x - 0.5 * L) * 3.2 / L) * _bump((y - 0.5 * L) * 3.2 / L) * np.sin(x + y)
    # stream-function field: exactly wall-zero, interior div is O(h^2) small
    from mhdlab.fieldops import d1, ODD, EVEN

    H = np.stack([d1(g, psi, 1, EVEN), -d1(g, psi, 0, EVEN), np.zeros_like(psi)])
    _zero_walls(g, H)
    proj = DivFreeProjector(g)
    out = proj.project(H)
    base = g.norm_l2(H)
    assert g.norm_l2(divergence(g, out)) <= 1e-10 * base
    # correction is on the scale of the pre-projection divergence defect
    defect = g.norm_l2(divergence(g, H))
    assert g.norm_l2(out - H) <= 20.0 * defect + 1e-12 * base


def test_projection_1d_kills_normal_component():
    g = Grid(shape=(129, 1, 1), extents=(np.pi, 1.0, 1.0))
    x = g.mesh()[0]
    H = np.stack([np.sin(x) ** 2, np.sin(2 * x), np.sin(3 * x)])
    H[:, 0] = H[:, -1] = 0.0
    proj = DivFreeProjector(g)
    out = proj.project(H)
    assert g.norm_l2(divergence(g, out)) <= 1e-10 * g.norm_l2(H)
    # tangential components never enter the 1d divergence
    np.testing.assert_array_equal(out[1], H[1])
    np.testing.assert_array_equal(out[2], H[2])


def test_projection_rejects_nonzero_walls():
    from mhdlab.errors import InvariantViolation

    g = Grid(shape=(33, 33, 1), extents=(1.0, 1.0, 1.0))
    H = np.ones((3,) + g.shape)
    with pytest.raises(InvariantViolation):
        DivFreeProjector(g).project(H)


def test_adjoint_consistency():
    # <D F, s> == <F, D^T s> in the plain dot product the solver uses
    g = Grid(shape=(20, 14, 1), extents=(1.0, 1.0, 1.0))
    proj = DivFreeProjector(g)
    rng = np.random.default_rng(23)
    F = rng.standard_normal((3,) + g.shape)
    s = rng.standard_normal(g.shape)
    lhs = float(np.sum(divergence(g, F) * s))
    rhs = float(np.sum(F * proj.div_transpose(s)))
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_projection_deterministic():
    g = Grid(shape=(40, 40, 1), extents=(1.0, 1.0, 1.0))
    proj = DivFreeProjector(g)
    H = _rand_field(g, seed=3)
    a = proj.project(H.copy())
    b = DivFreeProjector(g).project(H.copy())
    np.testing.assert_array_equal(a, b)
