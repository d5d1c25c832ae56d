"""LSB-substitution data hiding: embed and extract framed text payloads.

Bit layout (normative, bit-exact across implementations): a 32-bit
big-endian byte count, then each message byte MSB-first. Bit i of the
payload replaces the least significant bit of the sample at position
pixel_order[i], where pixel_order is either row-major sample order
(sequential mode) or the prefix of a keyed Fisher-Yates shuffle of all
sample indices (see rng module for the pinned generator).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .image import ImageBuffer
from .rng import fnv1a64, keyed_permutation

HEADER_BITS = 32


@dataclass(frozen=True, eq=False)
class BitPayload:
    """Ordered bit sequence with its length."""

    bits: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.bits).reshape(-1)
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("payload bits must be 0 or 1")
        arr = arr.astype(np.uint8)
        arr.flags.writeable = False
        object.__setattr__(self, "bits", arr)

    @property
    def length(self) -> int:
        return int(self.bits.size)

    def __eq__(self, other):
        if not isinstance(other, BitPayload):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)


@dataclass(frozen=True)
class EmbedKey:
    """Seed for the keyed pixel order; same seed and image size, same order."""

    seed: int

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    @classmethod
    def from_passphrase(cls, passphrase: str) -> "EmbedKey":
        return cls(fnv1a64(passphrase.encode("utf-8")))


def frame_message(text: bytes) -> BitPayload:
    """Frame raw bytes: 32-bit big-endian byte count, then bytes MSB-first."""
    if len(text) >= 2**29:
        raise ValueError("message too long to frame")
    framed = len(text).to_bytes(4, "big") + bytes(text)
    return BitPayload(np.unpackbits(np.frombuffer(framed, dtype=np.uint8)))


def lsb_capacity(img: ImageBuffer) -> int:
    """Embeddable bits: one per sample."""
    return img.width * img.height * img.channels


def pixel_order(key: EmbedKey | None, total_samples: int, count: int) -> np.ndarray:
    """First ``count`` sample indices visited by embedding/extraction.

    Without a key this is plain row-major order; with a key it is the
    prefix of the keyed shuffle of all ``total_samples`` indices.
    """
    if count > total_samples:
        raise ValueError(
            f"message exceeds capacity: {count} bits > {total_samples} samples"
        )
    if key is None:
        return np.arange(count, dtype=np.int64)
    return keyed_permutation(key.seed, total_samples)[:count]


def lsb_embed(cover: ImageBuffer, payload: BitPayload, key: EmbedKey | None = None) -> ImageBuffer:
    """Replace the LSB of each visited sample with the next payload bit."""
    order = pixel_order(key, lsb_capacity(cover), payload.length)
    flat = cover.samples.copy()
    flat[order] = (flat[order] & 0xFE) | payload.bits
    return ImageBuffer(cover.width, cover.height, cover.channels, flat)


def lsb_extract(stego: ImageBuffer, key: EmbedKey | None = None) -> bytes:
    """Read the framed payload back; raises on an impossible byte count."""
    capacity = lsb_capacity(stego)
    if capacity < HEADER_BITS:
        raise ValueError("corrupt or absent payload: image smaller than header")
    order = pixel_order(key, capacity, capacity)
    lsbs = stego.samples[order] & 1
    nbytes = int(np.packbits(lsbs[:HEADER_BITS]).view(">u4")[0])
    if HEADER_BITS + 8 * nbytes > capacity:
        raise ValueError(
            f"corrupt or absent payload: header declares {nbytes} bytes, "
            f"capacity is {(capacity - HEADER_BITS) // 8}"
        )
    body = lsbs[HEADER_BITS : HEADER_BITS + 8 * nbytes]
    return np.packbits(body).tobytes()
