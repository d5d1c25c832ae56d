"""Independent oracles and synthetic fixtures shared across the test modules.

Everything here is deliberately written the slow, obvious way (pure
Python loops, direct formula transcriptions) so it cannot share bugs
with the library paths it checks.
"""

import math

import numpy as np
import scipy.ndimage

from wmkit import ImageBuffer

MASK64 = (1 << 64) - 1


def splitmix64_ref(seed, count):
    """Reference SplitMix64: sequential state updates, pure Python ints."""
    out = []
    state = seed & MASK64
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        out.append(z ^ (z >> 31))
    return out


def keyed_permutation_ref(seed, n):
    """Reference Fisher-Yates over the reference stream, j = draw mod (i+1)."""
    perm = list(range(n))
    draws = splitmix64_ref(seed, max(0, n - 1))
    t = 0
    for i in range(n - 1, 0, -1):
        j = draws[t] % (i + 1)
        t += 1
        perm[i], perm[j] = perm[j], perm[i]
    return perm


def dct2_ref(block):
    """Four-loop transcription of the 2-D DCT-II double sum."""
    f = np.asarray(block, dtype=np.float64)
    n = 8
    out = np.zeros((n, n))
    for j in range(n):
        for k in range(n):
            aj = math.sqrt(1.0 / n) if j == 0 else math.sqrt(2.0 / n)
            ak = math.sqrt(1.0 / n) if k == 0 else math.sqrt(2.0 / n)
            acc = 0.0
            for m in range(n):
                for nn in range(n):
                    acc += (
                        f[m, nn]
                        * math.cos((2 * m + 1) * j * math.pi / (2 * n))
                        * math.cos((2 * nn + 1) * k * math.pi / (2 * n))
                    )
            out[j, k] = aj * ak * acc
    return out


def _mirror(idx, n):
    # reflect without repeating the edge pixel: ... 2 1 | 0 1 2 ... n-1 | n-2 ...
    if n == 1:
        return 0
    period = 2 * n - 2
    m = idx % period
    return period - m if m >= n else m


def convolve_ref(image, weights, radius):
    """Direct double-loop true convolution with mirrored borders."""
    img = np.asarray(image, dtype=np.float64)
    h, w = img.shape
    out = np.zeros((h, w))
    for i in range(h):
        for j in range(w):
            acc = 0.0
            for y in range(-radius, radius + 1):
                for x in range(-radius, radius + 1):
                    # out(i,j) = sum img(i+y, j+x) * k(-x, -y)
                    acc += (
                        img[_mirror(i + y, h), _mirror(j + x, w)]
                        * weights[-y + radius, -x + radius]
                    )
            out[i, j] = acc
    return out


def random_cover(rng, width, height, channels=1):
    n = width * height * channels
    return ImageBuffer(width, height, channels, rng.integers(0, 256, size=n, dtype=np.uint8))


def natural_host(size=512, seed=20, tex_amp=14.0):
    """Photo-like host: smooth shading, a few blobs, global fine texture."""
    rng = np.random.default_rng(seed)
    y, x = np.mgrid[0:size, 0:size].astype(np.float64)
    base = 128 + 30 * np.sin(2 * np.pi * x / size * 1.5 + 0.7) * np.cos(
        2 * np.pi * y / size * 1.1
    )
    blobs = [(0.25, 0.27, 0.18, 26), (0.70, 0.59, 0.23, -26), (0.51, 0.82, 0.14, 20)]
    for fx, fy, fr, amp in blobs:
        cx, cy, r = fx * size, fy * size, fr * size
        base += amp * np.exp(-(((x - cx) ** 2 + (y - cy) ** 2) / (2 * r * r)))
    noise = rng.normal(0, 1, (size, size))
    tex = scipy.ndimage.gaussian_filter(noise, 1.0) - scipy.ndimage.gaussian_filter(
        noise, 2.6
    )
    tex /= tex.std()
    img = np.clip(np.floor(base + tex_amp * tex + 0.5), 0, 255)
    return ImageBuffer.from_array(img.astype(np.uint8))


def step_image(size=32, level=255):
    """Vertical step: left half 0, right half ``level``; edge between cols 15/16."""
    arr = np.zeros((size, size), dtype=np.uint8)
    arr[:, size // 2 :] = level
    return ImageBuffer.from_array(arr)
