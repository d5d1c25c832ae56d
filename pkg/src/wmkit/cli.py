"""Command-line front end for the embedding, extraction, attack and measurement pipelines.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable or
malformed files, capacity exceeded, corrupt payloads). Diagnostics go to
standard error; results (extracted text, metric lines) go to standard
output unless redirected with --out.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import attacks, dctwm, gabor, lsb, metrics
from .image import load_image, median_filter3, save_image, to_grayscale


class UsageError(Exception):
    """Bad flag combination; exits 1 like any other usage problem."""


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1 (argparse default is 2, which we reserve for data errors)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _embed_key(args) -> lsb.EmbedKey | None:
    if args.key is not None and args.seed is not None:
        raise UsageError("give either --key or --seed, not both")
    if args.key is not None:
        return lsb.EmbedKey.from_passphrase(args.key)
    if args.seed is not None:
        return lsb.EmbedKey(args.seed)
    return None


def _pair(name: str):
    return dctwm.PAIR_A if name == "a" else dctwm.PAIR_B


def _check_no_overwrite(out_path, *in_paths):
    import os

    if out_path is None:
        return
    out_real = os.path.realpath(out_path)
    for p in in_paths:
        if p is not None and os.path.realpath(p) == out_real:
            raise UsageError(f"refusing to overwrite input file {p}")


def cmd_lsb_embed(args) -> int:
    _check_no_overwrite(args.out, args.cover, args.message)
    cover = load_image(args.cover)
    with open(args.message, "rb") as fh:
        message = fh.read()
    stego = lsb.lsb_embed(cover, lsb.frame_message(message), _embed_key(args))
    save_image(stego, args.out)
    return 0


def cmd_lsb_extract(args) -> int:
    _check_no_overwrite(args.out, args.stego)
    message = lsb.lsb_extract(load_image(args.stego), _embed_key(args))
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(message)
    else:
        sys.stdout.buffer.write(message)
        sys.stdout.buffer.flush()
    return 0


def cmd_dct_embed(args) -> int:
    _check_no_overwrite(args.out, args.host, args.wm)
    host = to_grayscale(load_image(args.host))
    wm = dctwm.WatermarkImage.from_image(to_grayscale(load_image(args.wm)))
    cfg = dctwm.MbecConfig(pair=_pair(args.pair), strength=args.k)
    save_image(dctwm.mbec_embed(host, wm, cfg), args.out)
    return 0


def cmd_dct_extract(args) -> int:
    _check_no_overwrite(args.out, args.input)
    img = to_grayscale(load_image(args.input))
    cfg = dctwm.MbecConfig(pair=_pair(args.pair))
    wm = dctwm.mbec_extract(img, args.w, args.h, cfg)
    save_image(wm.to_image(), args.out)
    return 0


def cmd_edges(args) -> int:
    _check_no_overwrite(args.out, args.input)
    img = to_grayscale(load_image(args.input))
    out = gabor.edge_map(
        img,
        wavelength=args.wavelength,
        aspect_ratio=args.gamma,
        bandwidth=args.bandwidth,
        n_orientations=args.orientations,
    )
    save_image(out, args.out)
    return 0


def cmd_attack(args) -> int:
    _check_no_overwrite(args.out, args.input)
    img = load_image(args.input)
    if args.kind == "quantize":
        out = attacks.jpeg_quantize_attack(to_grayscale(img), args.scale)
    else:
        if args.sigma is None:
            raise UsageError("noise attack needs --sigma")
        out = attacks.gaussian_noise_attack(img, args.sigma, args.seed)
    save_image(out, args.out)
    return 0


def cmd_metrics(args) -> int:
    image_pair = args.ref is not None or args.test is not None
    wm_pair = args.wm_ref is not None or args.wm_test is not None
    if image_pair == wm_pair:
        raise UsageError("give either --ref/--test or --wm-ref/--wm-test")
    _check_no_overwrite(args.fig, args.ref, args.test, args.wm_ref, args.wm_test)
    if image_pair:
        if args.ref is None or args.test is None:
            raise UsageError("--ref and --test must be given together")
        ref, test = load_image(args.ref), load_image(args.test)
        report = metrics.compare_images(ref, test)
        psnr_txt = "inf" if math.isinf(report.psnr_db) else f"{report.psnr_db:.6f}"
        print(f"mse={report.mse:.6f} psnr={psnr_txt}")
        if args.fig:
            from .report import render_image_report

            render_image_report(ref, test, report, args.fig)
    else:
        if args.wm_ref is None or args.wm_test is None:
            raise UsageError("--wm-ref and --wm-test must be given together")
        wref = dctwm.WatermarkImage.from_image(load_image(args.wm_ref))
        wtest = dctwm.WatermarkImage.from_image(load_image(args.wm_test))
        value = metrics.nc(wref, wtest)
        print(f"nc={value:.6f}")
        if args.fig:
            from .report import render_watermark_report

            render_watermark_report(wref, wtest, value, args.fig)
    return 0


def cmd_capacity(args) -> int:
    img = load_image(args.input)
    lsb_bits = lsb.lsb_capacity(img)
    if img.channels == 1 and img.width >= 8 and img.height >= 8:
        wm_bits = dctwm.wm_capacity(img)
    else:
        wm_bits = 0
    print(f"lsb_bits={lsb_bits} wm_bits={wm_bits}")
    return 0


def cmd_median_filter(args) -> int:
    _check_no_overwrite(args.out, args.input)
    save_image(median_filter3(load_image(args.input)), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wmkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add_key_flags(p):
        p.add_argument("--key", help="passphrase for the keyed pixel order (FNV-1a hashed)")
        p.add_argument("--seed", type=int, help="raw 64-bit seed, bypasses passphrase hashing")

    p = sub.add_parser("lsb-embed", help="hide a message file in an image's LSBs")
    p.add_argument("--cover", required=True)
    p.add_argument("--message", required=True, help="file whose raw bytes are embedded")
    add_key_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_lsb_embed)

    p = sub.add_parser("lsb-extract", help="recover a hidden message")
    p.add_argument("--stego", required=True)
    add_key_flags(p)
    p.add_argument("--out", help="write message bytes here instead of stdout")
    p.set_defaults(func=cmd_lsb_extract)

    p = sub.add_parser("dct-embed", help="embed a binary watermark in 8x8 DCT blocks")
    p.add_argument("--host", required=True)
    p.add_argument("--wm", required=True, help="watermark PGM, samples >= 128 read as bit 1")
    p.add_argument("--k", type=float, default=dctwm.DEFAULT_STRENGTH,
                   help="coefficient separation strength (default %(default)s)")
    p.add_argument("--pair", choices=("a", "b"), default="a",
                   help="mid-band coefficient pair (default %(default)s)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_dct_embed)

    p = sub.add_parser("dct-extract", help="blind-extract a watermark")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--w", type=int, required=True, help="watermark width in bits")
    p.add_argument("--h", type=int, required=True, help="watermark height in bits")
    p.add_argument("--pair", choices=("a", "b"), default="a")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_dct_extract)

    p = sub.add_parser("edges", help="Gabor filter-bank edge detection")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--lambda", dest="wavelength", type=float, default=8.0,
                   help="carrier wavelength in pixels (default %(default)s)")
    p.add_argument("--gamma", type=float, default=0.5,
                   help="Gaussian aspect ratio (default %(default)s)")
    p.add_argument("--bandwidth", type=float, default=1.0,
                   help="half-response bandwidth in octaves (default %(default)s)")
    p.add_argument("--orientations", type=int, default=12,
                   help="orientations spanning 360 degrees (default %(default)s)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_edges)

    p = sub.add_parser("attack", help="simulate a content-preserving attack")
    p.add_argument("--kind", choices=("quantize", "noise"), required=True)
    p.add_argument("--scale", type=float, default=1.0,
                   help="quantization table scale (default %(default)s)")
    p.add_argument("--sigma", type=float, help="noise standard deviation in gray levels")
    p.add_argument("--seed", type=int, default=0, help="noise seed (default %(default)s)")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("metrics", help="compare images (mse/psnr) or watermarks (nc)")
    p.add_argument("--ref", help="reference image")
    p.add_argument("--test", help="image under test")
    p.add_argument("--wm-ref", dest="wm_ref", help="reference watermark PGM")
    p.add_argument("--wm-test", dest="wm_test", help="extracted watermark PGM")
    p.add_argument("--fig", help="also render a comparison figure (PNG) to this path")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("capacity", help="report embeddable bits of an image")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("median-filter", help="3x3 median denoise utility")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_median_filter)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"wmkit {args.command}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"wmkit {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
