"""Quality and similarity measures: MSE, PSNR and normalized cross-correlation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dctwm import WatermarkImage
from .image import ImageBuffer

PEAK = 255.0


@dataclass(frozen=True)
class QualityReport:
    """Result of a comparison; nc is None for plain image pairs."""

    mse: float
    psnr_db: float
    nc: float | None = None


def _check_dims(a: ImageBuffer, b: ImageBuffer):
    if (a.width, a.height, a.channels) != (b.width, b.height, b.channels):
        raise ValueError(
            f"dimension mismatch: {a.width}x{a.height}x{a.channels} vs "
            f"{b.width}x{b.height}x{b.channels}"
        )


def mse(a: ImageBuffer, b: ImageBuffer) -> float:
    """Mean squared sample difference, averaged over every sample (channels included)."""
    _check_dims(a, b)
    da = a.samples.astype(np.float64)
    db = b.samples.astype(np.float64)
    return float(np.mean((da - db) ** 2))


def psnr(a: ImageBuffer, b: ImageBuffer) -> float:
    """Peak signal-to-noise ratio in dB against peak amplitude 255; inf when identical."""
    err = mse(a, b)
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / err)


def compare_images(a: ImageBuffer, b: ImageBuffer) -> QualityReport:
    err = mse(a, b)
    val = math.inf if err == 0.0 else 10.0 * math.log10(PEAK * PEAK / err)
    return QualityReport(mse=err, psnr_db=val)


def nc(w: WatermarkImage, w2: WatermarkImage) -> float:
    """Normalized cross-correlation of two binary watermark grids.

    Operands are the {0,1} bit grids; 1.0 means identical. Undefined
    (raises) when either operand has no set bits.
    """
    if (w.w_width, w.w_height) != (w2.w_width, w2.w_height):
        raise ValueError(
            f"dimension mismatch: {w.w_width}x{w.w_height} vs {w2.w_width}x{w2.w_height}"
        )
    a = w.bits.astype(np.float64)
    b = w2.bits.astype(np.float64)
    aa = float(np.sum(a * a))
    bb = float(np.sum(b * b))
    if aa == 0.0 or bb == 0.0:
        raise ValueError("NC undefined for zero watermark")
    # single sqrt keeps nc(w, w) exactly 1.0 for integer bit counts
    return float(np.sum(a * b)) / math.sqrt(aa * bb)
