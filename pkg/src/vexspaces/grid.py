"""Uniform grids on the periodic unit torus and their spectral transform.

Everything downstream works with plain lattice sums, so the conventions here
pin down the whole artifact: samples sit at cell midpoints ``(i + 1/2) / n``
(midpoint quadrature), the resolvable frequency set is ``{2*pi*k : -n/2 <= k
< n/2}`` per axis in FFT order, and distances are always wrap-around torus
distances.
"""

from functools import cached_property

import numpy as np

__all__ = [
    "Grid",
    "GridFunction",
    "FunctionSequence",
    "quadrature",
    "coefficients",
    "synthesize",
    "convolve",
    "spectral_derivative",
]


def _is_power_of_two(n):
    return n >= 1 and (n & (n - 1)) == 0


class Grid:
    """Sampling lattice on the unit torus [0,1)^dim, dim in {1, 2}.

    n is the per-axis sample count, a power of two >= 16.  Samples sit at
    cell midpoints so lattice sums are midpoint Riemann sums.
    """

    def __init__(self, dim, n):
        if dim not in (1, 2):
            raise ValueError(f"dim must be 1 or 2, got {dim}")
        if not _is_power_of_two(n) or n < 16:
            raise ValueError(f"n must be a power of two >= 16, got {n}")
        self.dim = int(dim)
        self.n = int(n)
        self.h = 1.0 / n

    @property
    def shape(self):
        return (self.n,) * self.dim

    @property
    def cell_volume(self):
        return self.h**self.dim

    @property
    def num_points(self):
        return self.n**self.dim

    @cached_property
    def axis_coords(self):
        """Midpoint coordinates along one axis, shape (n,)."""
        return (np.arange(self.n) + 0.5) * self.h

    @cached_property
    def coords(self):
        """Tuple of dim coordinate arrays, each of full grid shape."""
        if self.dim == 1:
            return (self.axis_coords,)
        return tuple(np.meshgrid(self.axis_coords, self.axis_coords, indexing="ij"))

    @cached_property
    def axis_wavenumbers(self):
        """Integer wavenumbers k in FFT order, -n/2 <= k < n/2."""
        return np.fft.fftfreq(self.n, d=1.0 / self.n).astype(np.int64)

    @cached_property
    def xi(self):
        """Tuple of dim frequency arrays xi = 2*pi*k of full grid shape, FFT order."""
        ax = 2.0 * np.pi * self.axis_wavenumbers
        if self.dim == 1:
            return (ax,)
        return tuple(np.meshgrid(ax, ax, indexing="ij"))

    @cached_property
    def xi_norm(self):
        """|xi| on the frequency lattice, full grid shape, FFT order."""
        sq = np.zeros(self.shape)
        for x in self.xi:
            sq = sq + x * x
        return np.sqrt(sq)

    @cached_property
    def _phase_forward(self):
        # Half-cell offset of midpoint samples shows up as a per-axis phase
        # twist on the raw FFT; see coefficients()/synthesize().
        ax = np.exp(-1j * np.pi * self.axis_wavenumbers / self.n)
        if self.dim == 1:
            return ax
        return np.multiply.outer(ax, ax)

    def max_levels(self):
        """Largest J with the whole dyadic annulus 2^(J+1) inside Nyquist."""
        return int(np.floor(np.log2(np.pi * self.n))) - 1

    def wrap_deltas(self, deltas):
        """Componentwise torus displacement |d| reduced to [0, 1/2]."""
        d = np.abs(np.asarray(deltas, dtype=float)) % 1.0
        return np.minimum(d, 1.0 - d)

    def torus_distance(self, point_a, point_b):
        """Euclidean wrap-around distance between coordinate arrays."""
        a = np.asarray(point_a, dtype=float)
        b = np.asarray(point_b, dtype=float)
        if self.dim == 1:
            return self.wrap_deltas(a - b)
        acc = 0.0
        for i in range(self.dim):
            acc = acc + self.wrap_deltas(a[i] - b[i]) ** 2
        return np.sqrt(acc)

    @cached_property
    def dist_to_origin(self):
        """Torus distance of every sample point to the origin, grid shape."""
        if self.dim == 1:
            return self.wrap_deltas(self.coords[0])
        return np.sqrt(
            self.wrap_deltas(self.coords[0]) ** 2 + self.wrap_deltas(self.coords[1]) ** 2
        )

    def shift_distance(self, shift):
        """Torus distance between a sample and its lattice-shifted image."""
        if self.dim == 1:
            return float(self.wrap_deltas(shift[0] * self.h))
        d0 = self.wrap_deltas(shift[0] * self.h)
        d1 = self.wrap_deltas(shift[1] * self.h)
        return float(np.sqrt(d0 * d0 + d1 * d1))

    def sample(self, fn):
        """GridFunction from a callable of the coordinate arrays."""
        return GridFunction(self, fn(*self.coords))

    def mode(self, k):
        """Unit-coefficient Fourier mode exp(i * 2*pi*k . x) as a GridFunction."""
        ks = (k,) if np.isscalar(k) else tuple(k)
        if len(ks) != self.dim:
            raise ValueError(f"mode index needs {self.dim} components, got {len(ks)}")
        phase = np.zeros(self.shape)
        for ki, xi in zip(ks, self.coords):
            if not (-self.n // 2 <= ki < self.n // 2):
                raise ValueError(f"mode {ki} outside the resolvable set")
            phase = phase + 2.0 * np.pi * ki * xi
        return GridFunction(self, np.exp(1j * phase))

    def zeros(self):
        return GridFunction(self, np.zeros(self.shape))

    def __eq__(self, other):
        return isinstance(other, Grid) and (self.dim, self.n) == (other.dim, other.n)

    def __hash__(self):
        return hash((self.dim, self.n))

    def __repr__(self):
        return f"Grid(dim={self.dim}, n={self.n})"


class GridFunction:
    """Immutable sampled function on a Grid.  Samples must be finite."""

    __slots__ = ("grid", "samples")

    def __init__(self, grid, samples):
        samples = np.asarray(samples)
        if samples.shape != grid.shape:
            raise ValueError(f"samples shape {samples.shape} != grid shape {grid.shape}")
        if not np.issubdtype(samples.dtype, np.complexfloating):
            samples = samples.astype(np.float64)
        if not np.all(np.isfinite(samples)):
            raise ValueError("samples must be finite")
        samples = samples.copy()
        samples.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "samples", samples)

    def __setattr__(self, *_):
        raise AttributeError("GridFunction is immutable")

    def abs(self):
        return GridFunction(self.grid, np.abs(self.samples))

    def max_abs(self):
        return float(np.max(np.abs(self.samples)))

    def is_real(self):
        return not np.issubdtype(self.samples.dtype, np.complexfloating)

    def real(self):
        return GridFunction(self.grid, np.real(self.samples))

    def _coerce(self, other):
        if isinstance(other, GridFunction):
            if other.grid != self.grid:
                raise ValueError("grid mismatch")
            return other.samples
        return other

    def __add__(self, other):
        return GridFunction(self.grid, self.samples + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return GridFunction(self.grid, self.samples - self._coerce(other))

    def __rsub__(self, other):
        return GridFunction(self.grid, self._coerce(other) - self.samples)

    def __mul__(self, other):
        return GridFunction(self.grid, self.samples * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return GridFunction(self.grid, self.samples / self._coerce(other))

    def __neg__(self):
        return GridFunction(self.grid, -self.samples)

    def __repr__(self):
        return f"GridFunction({self.grid!r}, max_abs={self.max_abs():.3e})"


class FunctionSequence:
    """Finite sequence (f_0, ..., f_J) of GridFunctions on one grid."""

    __slots__ = ("grid", "entries")

    def __init__(self, entries):
        entries = tuple(entries)
        if not entries:
            raise ValueError("sequence must be nonempty")
        grid = entries[0].grid
        for e in entries:
            if e.grid != grid:
                raise ValueError("all entries must share one grid")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *_):
        raise AttributeError("FunctionSequence is immutable")

    @property
    def levels(self):
        return len(self.entries) - 1

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, j):
        return self.entries[j]

    def stack(self):
        """Array of shape (J+1, *grid.shape) with |entries| stacked."""
        return np.stack([e.samples for e in self.entries])

    def abs_stack(self):
        return np.abs(self.stack())

    def scaled(self, factor):
        return FunctionSequence([e * factor for e in self.entries])

    def weighted(self, level_arrays):
        """Multiply entry j by level_arrays[j] (arrays or scalars)."""
        if len(level_arrays) < len(self.entries):
            raise ValueError("need one factor per entry")
        return FunctionSequence(
            [e * w for e, w in zip(self.entries, level_arrays)]
        )

    @classmethod
    def from_stack(cls, grid, stack):
        return cls([GridFunction(grid, s) for s in stack])


def quadrature(f):
    """Midpoint quadrature h^dim * sum(samples); exact for band-limited f."""
    return f.grid.cell_volume * f.samples.sum()


def coefficients(f):
    """Fourier coefficients on the grid frequency set, FFT order.

    c_k = h^dim * sum_i f(x_i) exp(-i xi_k . x_i); band-limited functions
    are recovered exactly by synthesize().
    """
    g = f.grid
    return np.fft.fftn(f.samples) * g._phase_forward / g.num_points


def synthesize(grid, coeffs):
    """Inverse of coefficients(): f(x_i) = sum_k c_k exp(i xi_k . x_i)."""
    coeffs = np.asarray(coeffs)
    if coeffs.shape != grid.shape:
        raise ValueError("coefficient array must match grid shape")
    samples = np.fft.ifftn(coeffs * np.conj(grid._phase_forward)) * grid.num_points
    return GridFunction(grid, samples)


def convolve(f, mask):
    """Fourier-side product (mask * f^)^v; mask indexed like grid.xi."""
    return synthesize(f.grid, np.asarray(mask) * coefficients(f))


def _derivative_mask(grid, gamma):
    if np.isscalar(gamma):
        gamma = (gamma,)
    gamma = tuple(int(g) for g in gamma)
    if len(gamma) != grid.dim or any(g < 0 for g in gamma):
        raise ValueError(f"gamma must be {grid.dim} nonnegative integers")
    mask = np.ones(grid.shape, dtype=complex)
    for g, xi in zip(gamma, grid.xi):
        if g:
            mask = mask * (1j * xi) ** g
    return mask


def spectral_derivative(f, gamma):
    """Mixed partial D^gamma via ((i xi)^gamma f^)^v on the frequency set."""
    return convolve(f, _derivative_mask(f.grid, gamma))
