"""
Discrete Fourier analysis on GroupSpec groups.

Normalization follows f^(t) = E[f conj(chi_t)] = (1/N) sum_x f(x) conj(chi_t(x))
with chi_t(x) = prod_j exp(2 pi i t_j x_j / m_j), so that f = sum_t f^(t) chi_t,
Parseval reads sum_t |f^(t)|^2 = E[|f|^2], and (f * h)^ = N f^ h^.

Boolean groups take a real Walsh-Hadamard fast path; every other group goes
through numpy's multidimensional FFT with one axis per cyclic factor (the
C-order reshape of a dense vector lines the axes up with the factors).
"""
from typing import Any, Callable, Dict, Tuple

import numpy as np

from mu_lab import config
from mu_lab.core.constants import TRANSFORM_TOLERANCE, CONVOLUTION_TOLERANCE
from mu_lab.core.exceptions import DenseCapError, GroupMismatchError, ResidualError
from mu_lab.models.models import GroupSpec, Subset, DenseFunction, Spectrum
from mu_lab.analysis.group import decode, format_group_spec
from mu_lab.utils.logging_config import get_logger

# Set up logging
logger = get_logger(__name__)

# Absolute slack when comparing magnitudes for argmax ties
_TIE_TOLERANCE = 1e-12


def check_dense(g: GroupSpec) -> None:
    """Raise DenseCapError when g is too large for dense vectors."""
    if g.order > config.DENSE_CAP:
        raise DenseCapError(
            f"group {g} has order {g.order}, above the dense cap {config.DENSE_CAP}"
        )


def check_same_group(*groups: GroupSpec) -> GroupSpec:
    first = groups[0]
    for other in groups[1:]:
        if other != first:
            raise GroupMismatchError(f"operands live on different groups: {first} vs {other}")
    return first


def walsh_hadamard(values: np.ndarray) -> np.ndarray:
    """
    Unnormalized Walsh-Hadamard transform W[t] = sum_x v[x] (-1)^popcount(t & x).

    Works on a copy; len(values) must be a power of two.
    """
    out = np.array(values, copy=True)
    n = out.shape[0]
    h = 1
    while h < n:
        view = out.reshape(-1, 2, h)
        top = view[:, 0, :].copy()
        view[:, 0, :] += view[:, 1, :]
        view[:, 1, :] = top - view[:, 1, :]
        h *= 2
    return out


def indicator(A: Subset) -> DenseFunction:
    """Dense indicator of A; multiplicities in multiset mode."""
    check_dense(A.group)
    values = np.zeros(A.group.order, dtype=np.float64)
    values[A.indices] = A.weights
    return DenseFunction(A.group, values)


def dense_weights(A: Subset) -> np.ndarray:
    """Integer indicator of A (multiplicities in multiset mode) as an int64 vector."""
    check_dense(A.group)
    weights = np.zeros(A.group.order, dtype=np.int64)
    weights[A.indices] = A.weights
    return weights


def character(g: GroupSpec, t: int) -> np.ndarray:
    """chi_t as a dense complex vector."""
    check_dense(g)
    t_coords = decode(g, t)
    x_coords = np.unravel_index(np.arange(g.order, dtype=np.int64), g.factors)
    # Phase as an exact fraction of a turn per factor before going to floats
    phase = np.zeros(g.order, dtype=np.float64)
    for tj, xj, m in zip(t_coords, x_coords, g.factors):
        phase += ((tj * xj) % m) / m
    return np.exp(2j * np.pi * phase)


def forward(f: DenseFunction, fast: bool = True) -> Spectrum:
    """
    Fourier coefficients of f.

    Args:
        f: The function to transform
        fast: Use the Walsh-Hadamard path on boolean groups

    Returns:
        The Spectrum with the trivial character at index 0
    """
    g = f.group
    check_dense(g)
    n = g.order
    if g.is_boolean and fast:
        coeffs = walsh_hadamard(f.values) / n
        return Spectrum(g, coeffs.astype(np.complex128))
    coeffs = np.fft.fftn(f.values.reshape(g.factors)).ravel() / n
    return Spectrum(g, coeffs)


def _real_part(values: np.ndarray, tolerance: float, what: str) -> np.ndarray:
    if not np.iscomplexobj(values):
        return values
    residue = float(np.max(np.abs(values.imag))) if values.size else 0.0
    if residue > tolerance:
        raise ResidualError(f"{what}: imaginary residue {residue:.3e} above {tolerance:.1e}")
    return values.real.copy()


def inverse(s: Spectrum, fast: bool = True) -> DenseFunction:
    """
    Reconstruct f = sum_t f^(t) chi_t.

    Raises:
        ResidualError: the result has an imaginary part above 1e-10, i.e. the
            spectrum does not belong to a real function
    """
    g = s.group
    check_dense(g)
    if g.is_boolean and fast:
        real = _real_part(s.coeffs, TRANSFORM_TOLERANCE, "inverse transform")
        return DenseFunction(g, walsh_hadamard(real))
    values = np.fft.ifftn(s.coeffs.reshape(g.factors)).ravel() * g.order
    return DenseFunction(g, _real_part(values, TRANSFORM_TOLERANCE, "inverse transform"))


def _is_integer_valued(values: np.ndarray) -> bool:
    return bool(np.all(values == np.round(values)))


def _transform(g: GroupSpec, values: np.ndarray) -> np.ndarray:
    """Unnormalized transform used by the convolution routines."""
    if g.is_boolean:
        return walsh_hadamard(values)
    return np.fft.fftn(values.reshape(g.factors))


def _untransform(g: GroupSpec, product: np.ndarray) -> np.ndarray:
    if g.is_boolean:
        return walsh_hadamard(product) / g.order
    return np.fft.ifftn(product).ravel()


def convolve_with(h: DenseFunction) -> Callable[[DenseFunction], DenseFunction]:
    """
    Convolution by a fixed h; h is transformed once and reused for every call.

    Integer-valued inputs give an integer-valued output, rounded exactly; the
    rounding residue is checked against 1e-9 relative to the output scale.

    Args:
        h: The fixed operand

    Returns:
        A function f -> f * h
    """
    g = h.group
    check_dense(g)
    h_hat = _transform(g, h.values)
    h_integer = _is_integer_valued(h.values)

    def apply(f: DenseFunction) -> DenseFunction:
        check_same_group(g, f.group)
        out = _untransform(g, _transform(g, f.values) * h_hat)

        scale = max(1.0, float(np.max(np.abs(out))) if out.size else 1.0)
        tolerance = CONVOLUTION_TOLERANCE * scale
        out = _real_part(out, tolerance, "convolution")

        if h_integer and _is_integer_valued(f.values):
            rounded = np.round(out)
            residue = float(np.max(np.abs(out - rounded))) if out.size else 0.0
            if residue > tolerance:
                raise ResidualError(f"convolution: rounding residue {residue:.3e} above {tolerance:.1e}")
            logger.debug(f"Convolution on {g}: rounding residue {residue:.3e}")
            out = rounded
        return DenseFunction(g, out)

    return apply


def convolve(f: DenseFunction, h: DenseFunction) -> DenseFunction:
    """(f * h)(x) = sum_y f(y) h(x - y), computed through the convolution theorem."""
    check_same_group(f.group, h.group)
    return convolve_with(h)(f)


def max_nonprincipal_coeff(A: Subset) -> Tuple[float, int]:
    """
    Largest |1_A^(t)| over non-trivial characters t.

    Args:
        A: The subset (multiset weights are used as the indicator values)

    Returns:
        (value, argmax) with ties broken by the smallest character index
    """
    spectrum = forward(indicator(A))
    return _max_nonprincipal(spectrum)


def _max_nonprincipal(spectrum: Spectrum) -> Tuple[float, int]:
    magnitudes = np.abs(spectrum.coeffs[1:])
    best = float(np.max(magnitudes))
    argmax = int(np.flatnonzero(magnitudes >= best - _TIE_TOLERANCE)[0]) + 1
    return best, argmax


def spectral_summary(A: Subset) -> Dict[str, Any]:
    """Density, total spectral mass and the max non-principal coefficient of 1_A."""
    spectrum = forward(indicator(A))
    value, argmax = _max_nonprincipal(spectrum)
    return {
        'group': format_group_spec(A.group),
        'N': A.group.order,
        'size': A.size,
        'density': float(spectrum.coeffs[0].real),
        'spectral_mass': float(np.sum(np.abs(spectrum.coeffs) ** 2)),
        'max_nonprincipal': value,
        'argmax': argmax,
    }
