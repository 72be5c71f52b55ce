"""
Discrete apertures: two parallel uniform linear arrays along y, the channel matrix H between them and
the effective degrees of freedom (tr R / ||R||_F)^2 of R = H^H H.
"""
import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DegenerateChannelError, GeometryError, NumericalError

logger = logging.getLogger(__name__)

# above this many sources R = H^H H is not formed explicitly
_EXPLICIT_LIMIT = 2000


@dataclass(frozen=True)
class UlaGeometry:
    """A uniform linear array along the y axis centred at (center_x, center_y, height)."""

    length: float
    height: float
    center_x: float = 0.0
    center_y: float = 0.0

    def __post_init__(self):
        if not self.length >= 0:
            raise GeometryError(f"array length must be non-negative, got {self.length}")
        if not self.height >= 0:
            raise GeometryError(f"array height must be non-negative, got {self.height}")

    @property
    def center(self):
        return np.array([self.center_x, self.center_y, self.height])

    def point(self, y_offset):
        """Positions at the given offsets from the centre along the array axis, shape (..., 3)."""
        y_offset = np.asarray(y_offset, dtype=float)
        points = np.empty(y_offset.shape + (3,))
        points[..., 0] = self.center_x
        points[..., 1] = self.center_y + y_offset
        points[..., 2] = self.height
        return points


@dataclass(frozen=True)
class LinkGeometry:
    source: UlaGeometry
    receiver: UlaGeometry

    def __post_init__(self):
        if not self.rho > 0:
            raise GeometryError(f"receiver must lie at a positive horizontal distance, got rho={self.rho}")

    @property
    def rho(self):
        return self.receiver.center_x - self.source.center_x


def make_link(L_s, L_r, z_s, z_r, rho):
    """Source centred on the z axis, receiver at x = rho, both along y."""
    return LinkGeometry(UlaGeometry(L_s, z_s), UlaGeometry(L_r, z_r, center_x=rho))


def ula_positions(geometry, count):
    """
    Antenna positions of an array, shape (count, 3).

    One antenna sits at the centre; two or more are spread uniformly with both endpoints included.
    """
    if int(count) != count or count < 1:
        raise ValueError(f"antenna count must be a positive integer, got {count}")
    if count == 1:
        return geometry.point([0.0])
    half = 0.5 * geometry.length
    return geometry.point(np.linspace(-half, half, int(count)))


class ChannelMatrix:
    """H[m, n] = G(receiver m, source n)."""

    def __init__(self, entries):
        entries = np.array(entries, dtype=complex)
        if entries.ndim != 2:
            raise ValueError(f"a channel matrix is two-dimensional, got shape {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise NumericalError("channel matrix has non-finite entries")
        entries.setflags(write=False)
        self._entries = entries

    @property
    def entries(self):
        return self._entries

    @property
    def M(self):
        return self._entries.shape[0]

    @property
    def N(self):
        return self._entries.shape[1]

    def correlation(self):
        return self._entries.conj().T @ self._entries

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self._entries, dtype=dtype)

    def __repr__(self):
        return f"ChannelMatrix(M={self.M}, N={self.N})"


def build_channel_matrix(link, N, M, green):
    """M x N channel from N sources to M receivers under the evaluator ``green``."""
    receivers = ula_positions(link.receiver, M)
    sources = ula_positions(link.source, N)
    logger.debug("channel matrix %dx%d, rho=%g z_s=%g z_r=%g", M, N, link.rho, link.source.height,
                 link.receiver.height)
    return ChannelMatrix(green(receivers[:, None, :], sources[None, :, :]))


def _entries(H):
    if isinstance(H, ChannelMatrix):
        return H.entries
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2:
        raise ValueError(f"a channel matrix is two-dimensional, got shape {H.shape}")
    return H


def edof_from_correlation(R):
    """(tr R / ||R||_F)^2 of a Hermitian positive semi-definite correlation matrix."""
    R = np.asarray(R, dtype=complex)
    frobenius = scipy.linalg.norm(R)
    if frobenius == 0:
        raise DegenerateChannelError("correlation matrix is zero")
    return float((np.trace(R).real / frobenius) ** 2)


def edof_discrete(H):
    H = _entries(H)
    peak = np.max(np.abs(H)) if H.size else 0.0
    if peak == 0:
        raise DegenerateChannelError("channel matrix is zero")
    # the functional is scale invariant; normalizing keeps |H|^4 clear of underflow
    H = H / peak
    if H.shape[1] <= _EXPLICIT_LIMIT:
        return edof_from_correlation(H.conj().T @ H)

    # tr R = ||H||_F^2 and ||H^H H||_F = ||H H^H||_F; the Gram matrix of the short side is
    # accumulated in row blocks of at most _EXPLICIT_LIMIT rows
    trace = np.vdot(H, H).real
    short = H if H.shape[0] < H.shape[1] else H.conj().T
    power = 0.0
    for start in range(0, short.shape[0], _EXPLICIT_LIMIT):
        block = short[start:start + _EXPLICIT_LIMIT] @ short.conj().T
        power += np.vdot(block, block).real
    return float(trace ** 2 / power)


def edof_from_eigenvalues(H):
    """(sum s)^2 / sum s^2 over the eigenvalues s of H^H H; the slow reference for ``edof_discrete``."""
    H = _entries(H)
    eigenvalues = np.clip(scipy.linalg.eigvalsh(H.conj().T @ H), 0.0, None)
    power = np.sum(eigenvalues ** 2)
    if power == 0:
        raise DegenerateChannelError("channel matrix is zero")
    return float(np.sum(eigenvalues) ** 2 / power)
