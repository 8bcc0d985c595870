import numpy as np
import pytest

from vexspaces import Grid, GridFunction


@pytest.fixture
def grid64():
    return Grid(1, 64)


@pytest.fixture
def grid256():
    return Grid(1, 256)


@pytest.fixture
def grid2d():
    return Grid(2, 16)


def random_band_limited(grid, rng, kmax=8, real=True):
    """Random band-limited GridFunction with modes |k| <= kmax."""
    shape = grid.shape
    coeffs = np.zeros(shape, dtype=complex)
    if grid.dim == 1:
        ks = [(k,) for k in range(-kmax, kmax + 1)]
    else:
        ks = [(k1, k2) for k1 in range(-kmax, kmax + 1) for k2 in range(-kmax, kmax + 1)]
    for k in ks:
        c = rng.normal() + 1j * rng.normal()
        coeffs[tuple(ki % grid.n for ki in k)] = c
    from vexspaces import synthesize

    f = synthesize(grid, coeffs)
    if real:
        return GridFunction(grid, np.real(f.samples))
    return f
