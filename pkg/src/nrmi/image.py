"""Grayscale image representation and the geometric plumbing of the metric:
decoding, luminance conversion, 90-degree rotation, row-major reshape and
disjoint square block partitioning.

Conventions (frozen for reproducibility):
  * rotation is 90 degrees counter-clockwise, out[i][j] = in[j][cols-1-i]
  * vectorization and refill are row-major
  * intensities are kept as float64 in [0, 255], never normalized
  * colour is collapsed with BT.601 weights 0.299 / 0.587 / 0.114
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import (
    DecodeError,
    DimensionError,
    TooSmallError,
    UnsupportedFormatError,
)

BT601_WEIGHTS = (0.299, 0.587, 0.114)


@dataclass(frozen=True)
class GrayImage:
    """2-D matrix of real-valued intensities in [0, 255]."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DimensionError(f"expected a non-empty 2-D array, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise DimensionError("pixel values must be finite")
        if arr.min() < 0.0 or arr.max() > 255.0:
            raise DimensionError(
                f"pixel values outside [0, 255]: min={arr.min()}, max={arr.max()}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @property
    def rows(self) -> int:
        return self.pixels.shape[0]

    @property
    def cols(self) -> int:
        return self.pixels.shape[1]

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and np.array_equal(
            self.pixels, other.pixels
        )


@dataclass(frozen=True)
class BlockPair:
    """Corresponding square blocks from the image and its rotated-reshaped twin."""

    a: np.ndarray
    b: np.ndarray
    index: tuple = field(default=(0, 0))


def _pgm_tokens(data: bytes):
    """Yield (token, offset) over a PGM header, skipping whitespace and # comments."""
    i = 0
    n = len(data)
    while i < n:
        c = data[i : i + 1]
        if c.isspace():
            i += 1
        elif c == b"#":
            while i < n and data[i : i + 1] not in (b"\n", b"\r"):
                i += 1
        else:
            start = i
            while i < n and not data[i : i + 1].isspace() and data[i : i + 1] != b"#":
                i += 1
            yield data[start:i], start, i


def _decode_pgm(data: bytes) -> GrayImage:
    tokens = _pgm_tokens(data)

    def next_token(what):
        try:
            return next(tokens)
        except StopIteration:
            raise DecodeError(f"truncated PGM header: missing {what} at offset {len(data)}")

    magic, off, _ = next_token("magic number")
    if magic not in (b"P2", b"P5"):
        raise DecodeError(f"not a PGM file: bad magic at offset {off}")
    binary = magic == b"P5"

    dims = []
    for what in ("width", "height", "maxval"):
        tok, off, end = next_token(what)
        try:
            dims.append(int(tok))
        except ValueError:
            raise DecodeError(f"malformed PGM {what} {tok!r} at offset {off}")
        header_end = end
    width, height, maxval = dims
    if width < 1 or height < 1:
        raise DecodeError(f"non-positive PGM dimensions {width}x{height}")
    if not 0 < maxval <= 255:
        raise UnsupportedFormatError(f"PGM maxval {maxval} unsupported (need 1..255)")

    count = width * height
    if binary:
        # exactly one whitespace byte separates maxval from the payload
        payload = data[header_end + 1 :]
        if len(payload) < count:
            raise DecodeError(
                f"truncated P5 payload: need {count} bytes, got {len(payload)}"
            )
        arr = np.frombuffer(payload[:count], dtype=np.uint8).astype(np.float64)
    else:
        values = []
        for tok, off, _ in tokens:
            try:
                values.append(int(tok))
            except ValueError:
                raise DecodeError(f"malformed P2 sample {tok!r} at offset {off}")
            if len(values) == count:
                break
        if len(values) < count:
            raise DecodeError(
                f"truncated P2 payload: need {count} samples, got {len(values)}"
            )
        arr = np.asarray(values, dtype=np.float64)
    if arr.max(initial=0) > maxval:
        raise DecodeError(f"PGM sample exceeds maxval {maxval}")
    return GrayImage(arr.reshape(height, width))


def _decode_png(data: bytes) -> GrayImage:
    try:
        img = Image.open(io.BytesIO(data))
        img.load()
    except UnidentifiedImageError:
        raise DecodeError("unrecognized image data (offset 0)")
    except OSError as exc:
        raise DecodeError(f"PNG decode failed: {exc}")

    mode = img.mode
    if mode in ("I", "I;16", "I;16B", "F"):
        raise UnsupportedFormatError(f"bit depth of PNG mode {mode!r} unsupported")
    if mode == "P":
        img = img.convert("RGBA" if "transparency" in img.info else "RGB")
        mode = img.mode

    arr = np.asarray(img, dtype=np.float64)
    if mode == "L":
        return GrayImage(arr)
    if mode == "LA":
        return GrayImage(arr[:, :, 0])
    if mode in ("RGB", "RGBA"):
        wr, wg, wb = BT601_WEIGHTS
        lum = wr * arr[:, :, 0] + wg * arr[:, :, 1] + wb * arr[:, :, 2]
        return GrayImage(lum)
    raise UnsupportedFormatError(f"PNG mode {mode!r} unsupported")


def decode_image(data: bytes) -> GrayImage:
    """Decode PGM (P2/P5, maxval <= 255) or PNG bytes into a GrayImage.

    Colour inputs are collapsed to BT.601 luminance, kept as reals.
    """
    if data[:2] in (b"P2", b"P5"):
        return _decode_pgm(data)
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        return _decode_png(data)
    raise DecodeError("unrecognized image data: unknown magic at offset 0")


def encode_pgm(img: GrayImage) -> bytes:
    """Serialize as binary P5, rounding intensities to the nearest integer."""
    arr = np.clip(np.rint(img.pixels), 0, 255).astype(np.uint8)
    header = f"P5\n{img.cols} {img.rows}\n255\n".encode("ascii")
    return header + arr.tobytes()


def rotate90(img: GrayImage) -> GrayImage:
    """90-degree counter-clockwise rotation; (rows, cols) becomes (cols, rows)."""
    return GrayImage(np.rot90(img.pixels, 1))


def reshape_to(img: GrayImage, rows: int, cols: int) -> GrayImage:
    """Row-major flatten, then row-major refill into a rows x cols image."""
    if img.rows * img.cols != rows * cols:
        raise DimensionError(
            f"cannot reshape {img.rows}x{img.cols} into {rows}x{cols}: "
            f"{img.rows * img.cols} != {rows * cols} elements"
        )
    return GrayImage(img.pixels.reshape(rows, cols))


def crop_to_multiple(img: GrayImage, block: int = 3) -> GrayImage:
    """Top-left crop so both dimensions are multiples of the block size."""
    if img.rows < block or img.cols < block:
        raise TooSmallError(
            f"image {img.rows}x{img.cols} smaller than one {block}x{block} block"
        )
    r = block * (img.rows // block)
    c = block * (img.cols // block)
    if (r, c) == (img.rows, img.cols):
        return img
    return GrayImage(img.pixels[:r, :c])


def crop_to_multiple_of_3(img: GrayImage) -> GrayImage:
    return crop_to_multiple(img, 3)


def partition_pairs(phi: GrayImage, phi_theta: GrayImage, block: int = 3) -> list:
    """Tile both images into disjoint block x block sub-matrices, paired by
    spatial index, in row-major block order."""
    if (phi.rows, phi.cols) != (phi_theta.rows, phi_theta.cols):
        raise DimensionError(
            f"dimension mismatch: {phi.rows}x{phi.cols} vs "
            f"{phi_theta.rows}x{phi_theta.cols}"
        )
    if phi.rows % block or phi.cols % block:
        raise DimensionError(
            f"dimensions {phi.rows}x{phi.cols} are not multiples of {block}"
        )
    pairs = []
    for bi in range(phi.rows // block):
        for bj in range(phi.cols // block):
            sl = np.s_[bi * block : (bi + 1) * block, bj * block : (bj + 1) * block]
            pairs.append(BlockPair(phi.pixels[sl], phi_theta.pixels[sl], (bi, bj)))
    return pairs
