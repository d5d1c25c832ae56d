"""Image watermarking toolkit: Gabor edge detection, LSB steganography,
DCT mid-band blind watermarking, attack simulation and quality metrics."""

from .attacks import QUANT_TABLE, gaussian_noise_attack, jpeg_quantize_attack
from .dctwm import (
    PAIR_A,
    PAIR_B,
    MbecConfig,
    WatermarkImage,
    dct2_8x8,
    idct2_8x8,
    mbec_embed,
    mbec_extract,
    midband_mask,
    wm_capacity,
)
from .gabor import (
    GaborParams,
    Kernel,
    bandwidth_from_sigma,
    convolve,
    edge_map,
    gabor_kernel,
    sigma_from_bandwidth,
    superpose,
)
from .image import (
    BlockGrid,
    ImageBuffer,
    block_grid,
    load_image,
    median_filter3,
    save_image,
    to_grayscale,
)
from .lsb import (
    BitPayload,
    EmbedKey,
    frame_message,
    lsb_capacity,
    lsb_embed,
    lsb_extract,
    pixel_order,
)
from .metrics import QualityReport, compare_images, mse, nc, psnr

__version__ = "0.1.0"

__all__ = [
    "BitPayload",
    "BlockGrid",
    "EmbedKey",
    "GaborParams",
    "ImageBuffer",
    "Kernel",
    "MbecConfig",
    "PAIR_A",
    "PAIR_B",
    "QUANT_TABLE",
    "QualityReport",
    "WatermarkImage",
    "bandwidth_from_sigma",
    "block_grid",
    "compare_images",
    "convolve",
    "dct2_8x8",
    "edge_map",
    "frame_message",
    "gabor_kernel",
    "gaussian_noise_attack",
    "idct2_8x8",
    "jpeg_quantize_attack",
    "load_image",
    "lsb_capacity",
    "lsb_embed",
    "lsb_extract",
    "mbec_embed",
    "mbec_extract",
    "median_filter3",
    "midband_mask",
    "mse",
    "nc",
    "pixel_order",
    "psnr",
    "save_image",
    "sigma_from_bandwidth",
    "superpose",
    "to_grayscale",
    "wm_capacity",
]
