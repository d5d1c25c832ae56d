"""Blind watermarking by mid-band exchange of 8x8 DCT coefficients (MBEC).

One watermark bit is carried per 8x8 block by ordering two mid-band
coefficients: bit 0 means the first configured coefficient is >= the
second, bit 1 means it is smaller. Embedding swaps the two values when
the order is wrong and then widens their separation to at least the
strength ``k`` so the order survives pixel rounding and mild attacks.
Extraction re-reads the order per block and needs no original image.

Coefficient blocks are plain (8, 8) float64 arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .image import BLOCK_SIZE, ImageBuffer, block_grid, clamp_u8, round_half_up

N = BLOCK_SIZE

# Orthonormal DCT-II basis: C[j, m] = a(j) * cos((2m+1) j pi / 16),
# a(0) = sqrt(1/8), a(j>0) = sqrt(2/8). Then dct2(f) = C f C^T.
_j = np.arange(N).reshape(-1, 1)
_m = np.arange(N).reshape(1, -1)
_BASIS = np.cos((2 * _m + 1) * _j * np.pi / (2 * N))
_BASIS[0, :] *= np.sqrt(1.0 / N)
_BASIS[1:, :] *= np.sqrt(2.0 / N)
_BASIS.flags.writeable = False

# Default coefficient pairs; each pair shares one quantization value in the
# reference table (22 for A, 14 for B), zero-based (row, col).
PAIR_A = ((4, 1), (3, 2))
PAIR_B = ((1, 2), (3, 0))
DEFAULT_STRENGTH = 10.0


def dct2_8x8(block) -> np.ndarray:
    """Orthonormal 2-D DCT of an 8x8 block (pixel values used directly)."""
    f = np.asarray(block, dtype=np.float64)
    if f.shape != (N, N):
        raise ValueError(f"expected an {N}x{N} block, got shape {f.shape}")
    return _BASIS @ f @ _BASIS.T


def idct2_8x8(coefs) -> np.ndarray:
    """Inverse of dct2_8x8; returns real values, caller rounds/clamps."""
    F = np.asarray(coefs, dtype=np.float64)
    if F.shape != (N, N):
        raise ValueError(f"expected an {N}x{N} coefficient block, got shape {F.shape}")
    return _BASIS.T @ F @ _BASIS


def midband_mask() -> frozenset:
    """Zero-based (row, col) positions of the mid-band region: 3 <= r+c <= 6."""
    return frozenset(
        (r, c) for r in range(N) for c in range(N) if 3 <= r + c <= 6
    )


@dataclass(frozen=True, eq=False)
class WatermarkImage:
    """Binary watermark: w_width x w_height bits in {0, 1}, row-major."""

    w_width: int
    w_height: int
    bits: np.ndarray

    def __post_init__(self):
        if self.w_width < 1 or self.w_height < 1:
            raise ValueError("watermark dimensions must be positive")
        arr = np.asarray(self.bits).reshape(-1)
        if arr.size != self.w_width * self.w_height:
            raise ValueError(
                f"expected {self.w_width * self.w_height} bits, got {arr.size}"
            )
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("watermark bits must be 0 or 1")
        arr = arr.astype(np.uint8)
        arr.flags.writeable = False
        object.__setattr__(self, "bits", arr)

    def as_grid(self) -> np.ndarray:
        return self.bits.reshape(self.w_height, self.w_width)

    def __eq__(self, other):
        if not isinstance(other, WatermarkImage):
            return NotImplemented
        return (
            self.w_width == other.w_width
            and self.w_height == other.w_height
            and np.array_equal(self.bits, other.bits)
        )

    @classmethod
    def from_image(cls, img: ImageBuffer) -> "WatermarkImage":
        # thresholding rule is normative: sample >= 128 reads as bit 1
        if img.channels != 1:
            raise ValueError("watermark files must be grayscale")
        return cls(img.width, img.height, (img.samples >= 128).astype(np.uint8))

    def to_image(self) -> ImageBuffer:
        return ImageBuffer(self.w_width, self.w_height, 1, self.bits * np.uint8(255))


@dataclass(frozen=True)
class MbecConfig:
    """Which two mid-band coefficients carry the bit, and the separation k."""

    pair: tuple = PAIR_A
    strength: float = DEFAULT_STRENGTH

    def __post_init__(self):
        p1, p2 = self.pair
        fm = midband_mask()
        if tuple(p1) not in fm or tuple(p2) not in fm:
            raise ValueError(f"coefficient pair {self.pair} must lie in the mid-band")
        if tuple(p1) == tuple(p2):
            raise ValueError("coefficient positions must be distinct")
        if self.strength < 0:
            raise ValueError("strength must be non-negative")


def wm_capacity(img: ImageBuffer) -> int:
    """Watermark capacity in bits: one per full 8x8 block."""
    grid = block_grid(img)
    return len(grid)


def _encode_pair(c1: float, c2: float, bit: int, k: float) -> tuple[float, float]:
    lo, hi = (c1, c2) if c1 <= c2 else (c2, c1)
    if hi - lo < k:
        mid = 0.5 * (c1 + c2)
        lo, hi = mid - 0.5 * k, mid + 0.5 * k
    return (hi, lo) if bit == 0 else (lo, hi)


def mbec_embed(host: ImageBuffer, wm: WatermarkImage, cfg: MbecConfig = MbecConfig()) -> ImageBuffer:
    """Embed a binary watermark, one bit per 8x8 block in row-major order.

    Blocks beyond the watermark length and pixels outside full blocks are
    copied through bit-identically.
    """
    grid = block_grid(host)
    nbits = wm.bits.size
    if nbits > len(grid):
        raise ValueError(
            f"watermark of {nbits} bits exceeds capacity of {len(grid)} blocks"
        )
    (u1, v1), (u2, v2) = cfg.pair
    out = host.as_array().copy()
    for idx in range(nbits):
        r0, c0 = grid.origins[idx]
        block = out[r0 : r0 + N, c0 : c0 + N]
        F = dct2_8x8(block)
        c1, c2 = F[u1, v1], F[u2, v2]
        n1, n2 = _encode_pair(c1, c2, int(wm.bits[idx]), cfg.strength)
        if n1 == c1 and n2 == c2:
            continue  # order and gap already fine; keep the block bit-identical
        F[u1, v1], F[u2, v2] = n1, n2
        block[:, :] = clamp_u8(round_half_up(idct2_8x8(F)))
    return ImageBuffer.from_array(out)


def mbec_extract(
    img: ImageBuffer, w_width: int, w_height: int, cfg: MbecConfig = MbecConfig()
) -> WatermarkImage:
    """Blind extraction: bit = 0 if the first pair coefficient >= the second."""
    grid = block_grid(img)
    nbits = w_width * w_height
    if nbits > len(grid):
        raise ValueError(
            f"requested watermark of {nbits} bits exceeds {len(grid)} blocks"
        )
    (u1, v1), (u2, v2) = cfg.pair
    arr = img.as_array()
    bits = np.empty(nbits, dtype=np.uint8)
    for idx in range(nbits):
        r0, c0 = grid.origins[idx]
        F = dct2_8x8(arr[r0 : r0 + N, c0 : c0 + N])
        bits[idx] = 0 if F[u1, v1] >= F[u2, v2] else 1
    return WatermarkImage(w_width, w_height, bits)
