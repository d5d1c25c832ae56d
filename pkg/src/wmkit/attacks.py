"""Content-preserving attacks used to stress watermark robustness.

The quantization attack mimics JPEG coefficient rounding on every full
8x8 block; severity is a linear scale on the reference table below, not
the libjpeg quality curve. The noise attack adds seeded Gaussian noise
from the toolkit's pinned generator so runs are reproducible.
"""

from __future__ import annotations

import numpy as np

from .dctwm import N, dct2_8x8, idct2_8x8
from .image import ImageBuffer, block_grid, clamp_u8, round_half_up
from .rng import normal_stream

# Reference quantization table (kept verbatim, including its departures
# from the standard JPEG luminance table in row 1).
QUANT_TABLE = np.array(
    [
        [16, 11, 10, 16, 24, 40, 51, 61],
        [12, 12, 14, 19, 26, 48, 16, 55],
        [14, 13, 16, 24, 40, 57, 69, 56],
        [14, 17, 22, 29, 51, 87, 80, 62],
        [18, 22, 37, 56, 68, 109, 108, 77],
        [24, 35, 55, 64, 81, 104, 113, 92],
        [49, 64, 78, 87, 103, 121, 120, 101],
        [72, 92, 95, 98, 112, 100, 103, 99],
    ],
    dtype=np.float64,
)
QUANT_TABLE.flags.writeable = False


def jpeg_quantize_attack(img: ImageBuffer, scale: float) -> ImageBuffer:
    """Round each coefficient to the nearest multiple of scale*Q, per 8x8 block."""
    if scale <= 0:
        raise ValueError("scale must be positive")
    grid = block_grid(img)
    step = scale * QUANT_TABLE
    out = img.as_array().copy()
    for r0, c0 in grid.origins:
        block = out[r0 : r0 + N, c0 : c0 + N]
        F = dct2_8x8(block)
        Fq = round_half_up(F / step) * step
        block[:, :] = clamp_u8(round_half_up(idct2_8x8(Fq)))
    return ImageBuffer.from_array(out)


def gaussian_noise_attack(img: ImageBuffer, sigma: float, seed: int) -> ImageBuffer:
    """Add iid Gaussian noise of the given standard deviation, then round and clamp."""
    if sigma < 0:
        raise ValueError("sigma must be non-negative")
    if sigma == 0:
        return img
    noise = normal_stream(seed, img.samples.size) * sigma
    noisy = img.samples.astype(np.float64) + noise
    return ImageBuffer(img.width, img.height, img.channels, clamp_u8(round_half_up(noisy)))
