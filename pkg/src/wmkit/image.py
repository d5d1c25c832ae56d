"""Pixel buffers, netpbm file I/O, grayscale conversion and 8x8 block decomposition.

The on-disk formats are binary PGM (P5, one channel) and binary PPM (P6,
three channels) with maxval 255. Writing always produces the canonical
header ``P5\\n<width> <height>\\n255\\n`` followed by the raw samples in
row-major order (channel-interleaved for PPM), so a save/load round trip
is bit-exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.ndimage

BLOCK_SIZE = 8


@dataclass(frozen=True, eq=False)
class ImageBuffer:
    """Immutable width x height x channels grid of 8-bit samples.

    ``samples`` is a flat row-major array; RGB images interleave the
    channels per pixel. The array is made read-only at construction.
    """

    width: int
    height: int
    channels: int
    samples: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be positive")
        if self.channels not in (1, 3):
            raise ValueError(f"channels must be 1 or 3, got {self.channels}")
        arr = np.asarray(self.samples)
        if arr.size != self.width * self.height * self.channels:
            raise ValueError(
                f"expected {self.width * self.height * self.channels} samples, got {arr.size}"
            )
        if arr.dtype != np.uint8:
            if arr.size and (arr.min() < 0 or arr.max() > 255):
                raise ValueError("samples must lie in [0, 255]")
            arr = arr.astype(np.uint8)
        arr = arr.reshape(-1).copy()
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)

    @classmethod
    def from_array(cls, arr) -> "ImageBuffer":
        """Build a buffer from an (h, w) or (h, w, 3) array."""
        arr = np.asarray(arr)
        if arr.ndim == 2:
            h, w = arr.shape
            return cls(w, h, 1, arr.reshape(-1))
        if arr.ndim == 3 and arr.shape[2] == 3:
            h, w, _ = arr.shape
            return cls(w, h, 3, arr.reshape(-1))
        raise ValueError(f"expected (h, w) or (h, w, 3) array, got shape {arr.shape}")

    def as_array(self) -> np.ndarray:
        """Read-only view shaped (h, w) for grayscale or (h, w, 3) for RGB."""
        if self.channels == 1:
            return self.samples.reshape(self.height, self.width)
        return self.samples.reshape(self.height, self.width, self.channels)

    def __eq__(self, other):
        if not isinstance(other, ImageBuffer):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and self.channels == other.channels
            and np.array_equal(self.samples, other.samples)
        )


@dataclass(frozen=True)
class BlockGrid:
    """Non-overlapping 8x8 tiling of the top-left region of an image.

    ``origins`` lists the (row, col) pixel origin of every block in
    row-major block order. Trailing rows/columns that do not fill a
    whole block are not covered.
    """

    block_size: int
    blocks_x: int
    blocks_y: int
    origins: tuple

    def __len__(self):
        return self.blocks_x * self.blocks_y


def _read_header_token(data: bytes, pos: int) -> tuple[bytes, int]:
    # skip whitespace and '#' comment lines between header tokens
    n = len(data)
    while pos < n:
        ch = data[pos : pos + 1]
        if ch.isspace():
            pos += 1
        elif ch == b"#":
            while pos < n and data[pos : pos + 1] != b"\n":
                pos += 1
        else:
            break
    start = pos
    while pos < n and not data[pos : pos + 1].isspace():
        pos += 1
    if start == pos:
        raise ValueError("malformed netpbm header: missing token")
    return data[start:pos], pos


def load_image(path) -> ImageBuffer:
    """Read a binary PGM (P5) or PPM (P6) file with maxval 255."""
    with open(path, "rb") as fh:
        data = fh.read()
    magic = data[:2]
    if magic == b"P5":
        channels = 1
    elif magic == b"P6":
        channels = 3
    else:
        raise ValueError(f"unsupported format: expected P5 or P6 magic, got {magic!r}")
    pos = 2
    fields = []
    for _ in range(3):
        tok, pos = _read_header_token(data, pos)
        try:
            fields.append(int(tok))
        except ValueError:
            raise ValueError(f"malformed netpbm header: non-numeric field {tok!r}") from None
    width, height, maxval = fields
    if maxval != 255:
        raise ValueError(f"unsupported maxval {maxval} (only 255)")
    if width < 1 or height < 1:
        raise ValueError("malformed netpbm header: non-positive dimensions")
    pos += 1  # exactly one whitespace byte separates the header from the raster
    raster = data[pos:]
    expected = width * height * channels
    if len(raster) < expected:
        raise ValueError(f"truncated raster: expected {expected} bytes, got {len(raster)}")
    samples = np.frombuffer(raster[:expected], dtype=np.uint8)
    return ImageBuffer(width, height, channels, samples)


def save_image(img: ImageBuffer, path) -> None:
    """Write a buffer as binary PGM/PPM; load_image(save_image(img)) == img."""
    magic = b"P5" if img.channels == 1 else b"P6"
    header = magic + b"\n%d %d\n255\n" % (img.width, img.height)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(img.samples.tobytes())


def round_half_up(values: np.ndarray) -> np.ndarray:
    """Round with halves toward +infinity (numpy rounds halves to even)."""
    return np.floor(np.asarray(values, dtype=np.float64) + 0.5)


def clamp_u8(values: np.ndarray) -> np.ndarray:
    return np.clip(values, 0, 255).astype(np.uint8)


# ITU-R BT.601 luma weights; the toolkit works on 8-bit grayscale carriers.
_LUMA = np.array([0.299, 0.587, 0.114])


def to_grayscale(img: ImageBuffer) -> ImageBuffer:
    """Convert RGB to grayscale (BT.601 weights, round half up); identity on grayscale."""
    if img.channels == 1:
        return img
    rgb = img.as_array().astype(np.float64)
    gray = clamp_u8(round_half_up(rgb @ _LUMA))
    return ImageBuffer.from_array(gray)


def block_grid(img: ImageBuffer) -> BlockGrid:
    """Tile a grayscale image into non-overlapping 8x8 blocks, row-major."""
    if img.channels != 1:
        raise ValueError("block decomposition requires a grayscale image")
    if img.width < BLOCK_SIZE or img.height < BLOCK_SIZE:
        raise ValueError("image too small for block watermarking")
    bx = img.width // BLOCK_SIZE
    by = img.height // BLOCK_SIZE
    origins = tuple(
        (r * BLOCK_SIZE, c * BLOCK_SIZE) for r in range(by) for c in range(bx)
    )
    return BlockGrid(BLOCK_SIZE, bx, by, origins)


def median_filter3(img: ImageBuffer) -> ImageBuffer:
    """3x3 median filter (mirrored borders), applied per channel."""
    arr = img.as_array()
    if img.channels == 1:
        out = scipy.ndimage.median_filter(arr, size=3, mode="mirror")
    else:
        out = np.stack(
            [scipy.ndimage.median_filter(arr[:, :, c], size=3, mode="mirror") for c in range(3)],
            axis=2,
        )
    return ImageBuffer.from_array(out)
