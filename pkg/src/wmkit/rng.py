"""Pinned deterministic randomness shared by the keyed embedding and attack paths.

Everything here is normative for interoperability: the SplitMix64 stream,
the Fisher-Yates shuffle it drives, the FNV-1a passphrase hash and the
Box-Muller normal stream are all fixed bit-for-bit so that independent
implementations produce identical stego files and attack outputs.
"""

from __future__ import annotations

import numpy as np

_MASK64 = np.uint64(0xFFFFFFFFFFFFFFFF)
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def splitmix64_stream(seed: int, count: int) -> np.ndarray:
    """First ``count`` outputs of SplitMix64 seeded with ``seed``.

    SplitMix64 is counter-based (state i = seed + i*gamma), so the whole
    stream vectorizes: mix(seed + k*gamma) for k = 1..count.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    idx = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + idx * _GAMMA) & _MASK64
        z = ((z ^ (z >> np.uint64(30))) * _MIX1) & _MASK64
        z = ((z ^ (z >> np.uint64(27))) * _MIX2) & _MASK64
        return z ^ (z >> np.uint64(31))


def keyed_permutation(seed: int, n: int) -> np.ndarray:
    """Fisher-Yates permutation of range(n) driven by the SplitMix64 stream.

    One draw per step, i from n-1 down to 1, j = draw mod (i+1), swap.
    The modulo draw is part of the pinned definition.
    """
    perm = list(range(n))
    if n < 2:
        return np.array(perm, dtype=np.int64)
    draws = splitmix64_stream(seed, n - 1)
    t = 0
    for i in range(n - 1, 0, -1):
        j = int(draws[t] % np.uint64(i + 1))
        t += 1
        perm[i], perm[j] = perm[j], perm[i]
    return np.array(perm, dtype=np.int64)


def fnv1a64(data: bytes) -> int:
    """FNV-1a 64-bit hash, used to derive seeds from passphrases."""
    h = 0xCBF29CE484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def normal_stream(seed: int, count: int) -> np.ndarray:
    """``count`` standard normal deviates via Box-Muller over SplitMix64.

    Each pair of deviates consumes two stream outputs z1, z2 mapped to
    uniforms in (0, 1] as ((z >> 11) + 1) * 2**-53, giving
    r*cos(2*pi*u2) then r*sin(2*pi*u2) with r = sqrt(-2*ln(u1)).
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    pairs = (count + 1) // 2
    raw = splitmix64_stream(seed, 2 * pairs)
    u = ((raw >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53
    u1, u2 = u[0::2], u[1::2]
    r = np.sqrt(-2.0 * np.log(u1))
    out = np.empty(2 * pairs)
    out[0::2] = r * np.cos(2.0 * np.pi * u2)
    out[1::2] = r * np.sin(2.0 * np.pi * u2)
    return out[:count]
