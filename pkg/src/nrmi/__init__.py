"""NrMI: a no-reference image quality index built on regional mutual
information between an image and its rotated, reshape-realigned copy,
weighted by global intensity variance."""

from .image import GrayImage, decode_image, encode_pgm
from .metric import NrmiConfig, QualityRecord, score_image, score_sequence

__all__ = [
    "GrayImage",
    "NrmiConfig",
    "QualityRecord",
    "decode_image",
    "encode_pgm",
    "score_image",
    "score_sequence",
]

__version__ = "0.1.0"
