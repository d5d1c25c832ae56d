"""Gabor filter bank construction, superposition, convolution and edge detection.

A Gabor kernel is a cosine of wavelength ``wavelength`` (phase
``phase_deg``, modulation direction ``orientation_deg``) under a Gaussian
envelope of standard deviation ``sigma`` and aspect ratio
``aspect_ratio``. ``sigma`` may instead be derived from a half-response
spatial-frequency bandwidth in octaves. Kernels are mean-subtracted so
flat image regions give zero response.

Edge detection superposes one bank of kernels per phase (0 and 90
degrees) across evenly spaced orientations, convolves the image with
both, and rescales the per-pixel magnitude to [0, 255].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.ndimage

from .image import ImageBuffer, clamp_u8, round_half_up

_HALF_LN2 = math.sqrt(math.log(2.0) / 2.0)
# responses this small only arise from float noise on flat inputs
_ZERO_RESPONSE = 1e-8


def sigma_from_bandwidth(wavelength: float, bandwidth: float) -> float:
    """Gaussian sigma giving the requested half-response bandwidth in octaves."""
    if wavelength <= 0 or bandwidth <= 0:
        raise ValueError("wavelength and bandwidth must be positive")
    ratio = (2.0**bandwidth + 1.0) / (2.0**bandwidth - 1.0)
    return (wavelength / math.pi) * _HALF_LN2 * ratio


def bandwidth_from_sigma(wavelength: float, sigma: float) -> float:
    """Inverse of sigma_from_bandwidth: octave bandwidth of a sigma/wavelength pair."""
    if wavelength <= 0 or sigma <= 0:
        raise ValueError("wavelength and sigma must be positive")
    r = sigma * math.pi / wavelength
    if r <= _HALF_LN2:
        raise ValueError("sigma too small relative to wavelength: bandwidth undefined")
    return math.log2((r + _HALF_LN2) / (r - _HALF_LN2))


@dataclass(frozen=True)
class GaborParams:
    """One filter's parameters; give exactly one of sigma or bandwidth."""

    wavelength: float
    orientation_deg: float = 0.0
    phase_deg: float = 0.0
    aspect_ratio: float = 1.0
    sigma: float | None = None
    bandwidth: float | None = None

    def __post_init__(self):
        if self.wavelength <= 0:
            raise ValueError("wavelength must be positive")
        if self.aspect_ratio <= 0:
            raise ValueError("aspect ratio must be positive")
        if (self.sigma is None) == (self.bandwidth is None):
            raise ValueError("give exactly one of sigma or bandwidth")
        if self.sigma is None:
            object.__setattr__(
                self, "sigma", sigma_from_bandwidth(self.wavelength, self.bandwidth)
            )
        else:
            if self.sigma <= 0:
                raise ValueError("sigma must be positive")
            try:
                object.__setattr__(
                    self, "bandwidth", bandwidth_from_sigma(self.wavelength, self.sigma)
                )
            except ValueError:
                pass  # bandwidth has no real solution for small sigma/wavelength


@dataclass(frozen=True, eq=False)
class Kernel:
    """Square convolution kernel of side 2*radius + 1, weights[y+radius, x+radius]."""

    radius: int
    weights: np.ndarray

    def __post_init__(self):
        if self.radius < 1:
            raise ValueError("radius must be at least 1")
        w = np.asarray(self.weights, dtype=np.float64)
        side = 2 * self.radius + 1
        if w.shape != (side, side):
            raise ValueError(f"expected {side}x{side} weights, got shape {w.shape}")
        if not np.isfinite(w).all():
            raise ValueError("kernel weights must be finite")
        w = w.copy()
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)


def default_radius(sigma: float) -> int:
    """ceil(3*sigma): truncates the Gaussian at about 1.1% of its peak."""
    return max(1, math.ceil(3.0 * sigma))


def gabor_kernel(params: GaborParams, radius: int | None = None) -> Kernel:
    """Sample the Gabor function on integer offsets and subtract the mean.

    The mean subtraction makes the kernel sum to zero, so constant image
    regions produce no response.
    """
    if radius is None:
        radius = default_radius(params.sigma)
    if radius < 1:
        raise ValueError("radius must be at least 1")
    theta = math.radians(params.orientation_deg)
    phi = math.radians(params.phase_deg)
    offs = np.arange(-radius, radius + 1, dtype=np.float64)
    x, y = np.meshgrid(offs, offs)  # x: column offset, y: row offset
    xp = x * math.cos(theta) + y * math.sin(theta)
    yp = -x * math.sin(theta) + y * math.cos(theta)
    envelope = np.exp(
        -(xp**2 + (params.aspect_ratio**2) * yp**2) / (2.0 * params.sigma**2)
    )
    carrier = np.cos(2.0 * np.pi * xp / params.wavelength + phi)
    weights = envelope * carrier
    weights -= weights.mean()
    return Kernel(radius, weights)


def superpose(kernels: list) -> Kernel:
    """Element-wise sum of same-radius kernels."""
    if not kernels:
        raise ValueError("need at least one kernel")
    radius = kernels[0].radius
    for k in kernels[1:]:
        if k.radius != radius:
            raise ValueError("kernels must share one radius to superpose")
    total = np.sum([k.weights for k in kernels], axis=0)
    return Kernel(radius, total)


def convolve(img: ImageBuffer, kernel: Kernel) -> np.ndarray:
    """True 2-D convolution with mirrored borders; returns a float map."""
    if img.channels != 1:
        raise ValueError("convolution expects a grayscale image")
    side = 2 * kernel.radius + 1
    if img.width < side or img.height < side:
        raise ValueError(
            f"image {img.width}x{img.height} smaller than kernel ({side}x{side})"
        )
    return scipy.ndimage.convolve(
        img.as_array().astype(np.float64), kernel.weights, mode="mirror"
    )


def edge_map(
    img: ImageBuffer,
    wavelength: float,
    aspect_ratio: float,
    bandwidth: float,
    n_orientations: int,
) -> ImageBuffer:
    """Edge detection via superposed Gabor banks at phases 0 and 90 degrees.

    Each bank sums ``n_orientations`` kernels at orientations k*360/n.
    The output is the per-pixel magnitude of the two bank responses,
    linearly rescaled so the maximum maps to 255 (flat input stays zero).
    """
    if n_orientations < 1:
        raise ValueError("need at least one orientation")
    responses = []
    for phase in (0.0, 90.0):
        bank = superpose(
            [
                gabor_kernel(
                    GaborParams(
                        wavelength=wavelength,
                        orientation_deg=k * 360.0 / n_orientations,
                        phase_deg=phase,
                        aspect_ratio=aspect_ratio,
                        bandwidth=bandwidth,
                    )
                )
                for k in range(n_orientations)
            ]
        )
        responses.append(convolve(img, bank))
    magnitude = np.hypot(responses[0], responses[1])
    peak = magnitude.max()
    if peak <= _ZERO_RESPONSE:
        return ImageBuffer.from_array(np.zeros((img.height, img.width), dtype=np.uint8))
    return ImageBuffer.from_array(clamp_u8(round_half_up(magnitude * (255.0 / peak))))
