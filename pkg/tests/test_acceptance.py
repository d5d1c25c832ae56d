"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as
they complete. All inputs are synthetic and seeded; every tolerance is
stated inline.
"""

import math

import numpy as np
import pytest

import wmkit
from wmkit import (
    EmbedKey,
    ImageBuffer,
    MbecConfig,
    WatermarkImage,
    frame_message,
    jpeg_quantize_attack,
    lsb_capacity,
    lsb_embed,
    lsb_extract,
    mbec_embed,
    mbec_extract,
    mse,
    nc,
    psnr,
    save_image,
)
from wmkit.cli import main
from wmkit.lsb import BitPayload

from helpers import dct2_ref, natural_host, random_cover, step_image


def _report(criterion, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"acceptance {criterion}: {status}{' (' + detail + ')' if detail else ''}")
    assert ok, f"{criterion}: {detail}"


def _lsb_triples():
    rng = np.random.default_rng(1001)
    triples = []
    for i in range(200):
        w = int(rng.integers(8, 56))
        h = int(rng.integers(8, 56))
        channels = 3 if i % 5 == 0 else 1
        cover = random_cover(rng, w, h, channels)
        max_bytes = (lsb_capacity(cover) - 32) // 8
        n_bytes = int(rng.integers(0, max_bytes + 1))
        message = bytes(rng.integers(0, 256, size=n_bytes, dtype=np.uint8))
        mode = i % 3
        key = None if mode == 0 else EmbedKey(int(rng.integers(0, 2**63)))
        triples.append((cover, message, key))
    return triples


@pytest.fixture(scope="module")
def lsb_runs():
    runs = []
    for cover, message, key in _lsb_triples():
        stego = lsb_embed(cover, frame_message(message), key)
        runs.append((cover, message, key, stego))
    return runs


def test_criterion_1_lsb_round_trip(lsb_runs):
    failures = sum(
        1 for cover, message, key, stego in lsb_runs if lsb_extract(stego, key) != message
    )
    _report(
        "1 LSB round-trip (200 triples, exact)",
        failures == 0,
        f"{len(lsb_runs) - failures}/{len(lsb_runs)} recovered",
    )


def test_criterion_2_lsb_distortion(lsb_runs):
    ok = True
    for cover, message, key, stego in lsb_runs:
        diff = np.abs(stego.samples.astype(int) - cover.samples.astype(int))
        payload_bits = 32 + 8 * len(message)
        floor_db = 10 * math.log10(255**2 * lsb_capacity(cover) / payload_bits)
        ok = ok and diff.max() <= 1 and psnr(cover, stego) >= floor_db
    # payload densities mirroring the reported experiments: >= 55 dB
    rng = np.random.default_rng(1002)
    for (w, h), n_bytes in [((256, 240), 664), ((512, 512), 1083), ((384, 512), 2342)]:
        cover = random_cover(rng, w, h)
        message = bytes(rng.integers(0, 256, size=n_bytes, dtype=np.uint8))
        stego = lsb_embed(cover, frame_message(message), EmbedKey(7))
        ok = ok and psnr(cover, stego) >= 55.0
    _report("2 LSB distortion (|diff|<=1, PSNR floor, >=55 dB at survey densities)", ok)


def test_criterion_3_worked_lsb_example():
    cover = ImageBuffer(
        6, 1, 1,
        [0b10110101, 0b01001101, 0b11001101, 0b00010011, 0b00010100, 0b01001010],
    )
    stego = lsb_embed(cover, BitPayload([0, 0, 1, 0, 0, 1]))
    expected = [0b10110100, 0b01001100, 0b11001101, 0b00010010, 0b00010100, 0b01001011]
    _report("3 published six-byte example (exact)", list(stego.samples) == expected)


def test_criterion_4_dct_oracle():
    rng = np.random.default_rng(1003)
    worst_oracle = worst_inverse = worst_parseval = 0.0
    for _ in range(1000):
        block = rng.uniform(0, 255, (8, 8))
        F = wmkit.dct2_8x8(block)
        worst_oracle = max(worst_oracle, np.abs(F - dct2_ref(block)).max())
        worst_inverse = max(worst_inverse, np.abs(wmkit.idct2_8x8(F) - block).max())
        pix = float(np.sum(block * block))
        worst_parseval = max(worst_parseval, abs(float(np.sum(F * F)) - pix) / pix)
    ok = worst_oracle < 1e-9 and worst_inverse < 1e-9 and worst_parseval < 1e-6
    _report(
        "4 DCT vs double-sum oracle (1000 blocks, 1e-9 abs; Parseval 1e-6 rel)",
        ok,
        f"oracle {worst_oracle:.2e}, inverse {worst_inverse:.2e}, parseval {worst_parseval:.2e}",
    )


@pytest.fixture(scope="module")
def mbec_setup():
    host = natural_host(size=512, seed=20)
    rng = np.random.default_rng(1004)
    wm = WatermarkImage(64, 64, rng.integers(0, 2, size=4096, dtype=np.uint8))
    cfg = MbecConfig(strength=10.0)
    marked = mbec_embed(host, wm, cfg)
    return host, wm, cfg, marked


def test_criterion_5_mbec_fidelity(mbec_setup):
    host, wm, cfg, marked = mbec_setup
    recovered = mbec_extract(marked, 64, 64, cfg)
    quality = psnr(host, marked)
    ok = nc(wm, recovered) == 1.0 and quality >= 35.0
    _report(
        "5 MBEC full-capacity fidelity (NC exactly 1.0, PSNR >= 35 dB)",
        ok,
        f"NC {nc(wm, recovered)}, PSNR {quality:.2f} dB",
    )


def test_criterion_6_mbec_robustness(mbec_setup):
    _, wm, cfg, marked = mbec_setup
    values = [
        nc(wm, mbec_extract(jpeg_quantize_attack(marked, s), 64, 64, cfg))
        for s in (0.5, 1.0, 2.0)
    ]
    ok = values[1] >= 0.75 and values[0] >= values[1] >= values[2]
    _report(
        "6 MBEC robustness (NC >= 0.75 at scale 1.0, non-increasing over scales)",
        ok,
        "NC = " + ", ".join(f"{v:.4f}" for v in values),
    )


def test_criterion_7_gabor_properties():
    round_trip = all(
        abs(wmkit.bandwidth_from_sigma(8, wmkit.sigma_from_bandwidth(8, b)) - b) < 1e-9
        for b in (0.5, 1.0, 2.0)
    )
    flat = ImageBuffer(40, 40, 1, np.full(1600, 93, dtype=np.uint8))
    flat_zero = not wmkit.edge_map(flat, 4, 0.5, 1.0, 4).samples.any()
    edges = wmkit.edge_map(step_image(32), 4, 1.0, 1.0, 1)
    profile = edges.as_array().astype(float).sum(axis=0)
    peak_on_step = int(np.argmax(profile)) in (15, 16)
    rng = np.random.default_rng(1005)
    img = random_cover(rng, 16, 16)
    a = wmkit.gabor_kernel(wmkit.GaborParams(wavelength=4, sigma=1.5), radius=4)
    b = wmkit.gabor_kernel(
        wmkit.GaborParams(wavelength=6, sigma=1.5, orientation_deg=45.0), radius=4
    )
    linear = (
        np.abs(
            wmkit.convolve(img, wmkit.superpose([a, b]))
            - (wmkit.convolve(img, a) + wmkit.convolve(img, b))
        ).max()
        < 1e-6
    )
    ok = round_trip and flat_zero and peak_on_step and linear
    _report(
        "7 Gabor properties (bandwidth 1e-9, flat->zero, step argmax, linearity 1e-6)",
        ok,
        f"round_trip={round_trip} flat_zero={flat_zero} peak={peak_on_step} linear={linear}",
    )


def test_criterion_8_metrics():
    rng = np.random.default_rng(1006)
    identity_ok = True
    for _ in range(100):
        bits = (rng.random(64) < rng.uniform(0.1, 0.9)).astype(np.uint8)
        if not bits.any():
            bits[0] = 1
        w = WatermarkImage(8, 8, bits)
        identity_ok = identity_ok and nc(w, w) == 1.0
    fixture_ok = (
        nc(
            WatermarkImage(4, 2, [1, 1, 1, 1, 0, 0, 0, 0]),
            WatermarkImage(4, 2, [1, 1, 1, 0, 1, 0, 0, 0]),
        )
        == 0.75
    )
    a = random_cover(rng, 12, 9)
    b = random_cover(rng, 12, 9)
    symmetric = mse(a, b) == mse(b, a) and psnr(a, b) == psnr(b, a)
    # flipping exactly B LSBs over S samples gives mse == B/S
    base = rng.integers(0, 256, size=300, dtype=np.uint8) | 1
    flipped = base.copy()
    flipped[:123] ^= 1
    flip_ok = mse(ImageBuffer(30, 10, 1, base), ImageBuffer(30, 10, 1, flipped)) == 123 / 300
    ok = identity_ok and fixture_ok and symmetric and flip_ok
    _report(
        "8 metrics (nc identity x100, 0.75 fixture, symmetry, B/S flip identity)", ok
    )


def test_criterion_9_cli_determinism(tmp_path, capsysbinary):
    work = tmp_path
    cover_path = work / "cover.pgm"
    host_path = work / "host.pgm"
    wm_path = work / "wm.pgm"
    msg_path = work / "msg.txt"
    rng = np.random.default_rng(1007)
    save_image(random_cover(rng, 64, 64), cover_path)
    save_image(natural_host(size=128, seed=1008), host_path)
    save_image(
        WatermarkImage(16, 16, rng.integers(0, 2, size=256, dtype=np.uint8)).to_image(),
        wm_path,
    )
    msg_path.write_bytes(b"the quick brown fox\n")

    def run_examples(tag):
        outputs = {}
        stego = work / f"stego_{tag}.pgm"
        assert main(["lsb-embed", "--cover", str(cover_path), "--message", str(msg_path),
                     "--key", "swordfish", "--out", str(stego)]) == 0
        assert main(["lsb-extract", "--stego", str(stego), "--key", "swordfish"]) == 0
        outputs["extracted"] = capsysbinary.readouterr().out
        marked = work / f"marked_{tag}.pgm"
        attacked = work / f"attacked_{tag}.pgm"
        wm_out = work / f"wmout_{tag}.pgm"
        assert main(["dct-embed", "--host", str(host_path), "--wm", str(wm_path),
                     "--k", "10", "--out", str(marked)]) == 0
        assert main(["attack", "--kind", "quantize", "--scale", "1.0",
                     "--in", str(marked), "--out", str(attacked)]) == 0
        assert main(["dct-extract", "--in", str(attacked), "--w", "16", "--h", "16",
                     "--out", str(wm_out)]) == 0
        assert main(["metrics", "--wm-ref", str(wm_path), "--wm-test", str(wm_out)]) == 0
        outputs["nc_line"] = capsysbinary.readouterr().out
        edge_out = work / f"edges_{tag}.pgm"
        assert main(["edges", "--in", str(host_path), "--lambda", "8", "--gamma", "0.5",
                     "--bandwidth", "1", "--orientations", "12", "--out", str(edge_out)]) == 0
        noise_out = work / f"noise_{tag}.pgm"
        assert main(["attack", "--kind", "noise", "--sigma", "5", "--seed", "11",
                     "--in", str(cover_path), "--out", str(noise_out)]) == 0
        for name, path in [("stego", stego), ("marked", marked), ("attacked", attacked),
                           ("wm_out", wm_out), ("edges", edge_out), ("noise", noise_out)]:
            outputs[name] = path.read_bytes()
        return outputs

    first = run_examples("a")
    second = run_examples("b")
    mismatched = [k for k in first if first[k] != second[k]]
    _report(
        "9 CLI determinism (every example twice, byte-identical)",
        not mismatched,
        "all outputs identical" if not mismatched else f"mismatch: {mismatched}",
    )
