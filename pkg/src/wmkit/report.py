"""Render comparison figures to files next to the CLI's text output."""

from __future__ import annotations

import numpy as np

from .dctwm import WatermarkImage
from .image import ImageBuffer
from .metrics import QualityReport


def _new_figure(width, height):
    # Agg canvas directly, no pyplot: keeps rendering free of global state
    from matplotlib.backends.backend_agg import FigureCanvasAgg
    from matplotlib.figure import Figure

    fig = Figure(figsize=(width, height), dpi=100)
    FigureCanvasAgg(fig)
    return fig


def render_image_report(
    ref: ImageBuffer, test: ImageBuffer, report: QualityReport, path
) -> None:
    """Reference, test and absolute difference panels with the metric values."""
    fig = _new_figure(9.6, 3.4)
    ref_arr = ref.as_array()
    test_arr = test.as_array()
    diff = np.abs(ref_arr.astype(np.float64) - test_arr.astype(np.float64))
    if diff.ndim == 3:
        diff = diff.mean(axis=2)
    panels = [(ref_arr, "reference"), (test_arr, "test"), (diff, "abs difference")]
    for i, (arr, title) in enumerate(panels):
        ax = fig.add_subplot(1, 3, i + 1)
        im = ax.imshow(arr, cmap="gray", interpolation="nearest")
        ax.set_title(title, fontsize=10)
        ax.set_axis_off()
        if title == "abs difference":
            fig.colorbar(im, ax=ax, fraction=0.046)
    psnr_txt = "inf" if report.psnr_db == float("inf") else f"{report.psnr_db:.6f}"
    fig.suptitle(f"mse={report.mse:.6f}  psnr={psnr_txt} dB", fontsize=11)
    fig.savefig(path, format="png")


def render_watermark_report(
    ref: WatermarkImage, test: WatermarkImage, nc_value: float, path
) -> None:
    """Original and extracted watermark grids with their correlation."""
    fig = _new_figure(6.4, 3.4)
    for i, (wm, title) in enumerate([(ref, "reference"), (test, "extracted")]):
        ax = fig.add_subplot(1, 2, i + 1)
        ax.imshow(wm.as_grid(), cmap="gray", interpolation="nearest", vmin=0, vmax=1)
        ax.set_title(title, fontsize=10)
        ax.set_axis_off()
    fig.suptitle(f"nc={nc_value:.6f}", fontsize=11)
    fig.savefig(path, format="png")
