"""Loading and preprocessing of real data: image decoding, grayscale
conversion, mean/std normalization, and tiling into sub-grids.

Only lossless raster formats are decoded (PNG, BMP, TIFF, PGM/PPM/PBM);
JPEG is rejected because compression artifacts corrupt the ordinal
structure of neighboring pixels. Grayscale values are kept as reals, never
re-quantized, to avoid creating artificial ties. Plain numeric CSV is
accepted for non-image data matrices.
"""

from __future__ import annotations

import os

import numpy as np
from PIL import Image

from .core import as_grid
from .errors import DecodeError, DegenerateInputError, InvalidInputError, UnsupportedFormatError

__all__ = ["to_gray", "normalize", "tile", "load_grid", "save_grid"]

_LOSSLESS_FORMATS = {"PNG", "BMP", "TIFF", "PPM", "PGM", "PBM", "PNM"}


def to_gray(r, g, b):
    """Luminance 0.299*R + 0.587*G + 0.114*B, kept as a real number."""
    r = np.asarray(r, dtype=np.float64)
    g = np.asarray(g, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    out = 0.299 * r + 0.587 * g + 0.114 * b
    return float(out) if out.ndim == 0 else out


def normalize(grid, target_mean: float = 127.0, target_std: float = 40.0) -> np.ndarray:
    """Affine transform to the target mean and standard deviation.

    Strictly increasing for target_std > 0, so all ordinal outputs are
    unchanged; provided for dataset-faithful export.
    """
    grid = as_grid(grid)
    std = grid.std()
    if std == 0:
        raise DegenerateInputError("constant grid cannot be normalized to a target std")
    return (grid - grid.mean()) * (target_std / std) + target_mean


def tile(grid, tile_rows: int, tile_cols: int, grid_rows: int, grid_cols: int) -> list[np.ndarray]:
    """Cut grid_rows x grid_cols non-overlapping tiles of shape
    (tile_rows, tile_cols), row-major from the top-left corner.

    The grid must be large enough; partial tiles are refused, not padded.
    """
    grid = as_grid(grid)
    need = (tile_rows * grid_rows, tile_cols * grid_cols)
    if tile_rows < 1 or tile_cols < 1 or grid_rows < 1 or grid_cols < 1:
        raise InvalidInputError("tile and grid counts must be positive")
    if grid.shape[0] < need[0] or grid.shape[1] < need[1]:
        raise InvalidInputError(
            f"grid of shape {grid.shape} too small for {grid_rows}x{grid_cols} "
            f"tiles of {tile_rows}x{tile_cols}"
        )
    return [
        grid[i * tile_rows:(i + 1) * tile_rows, j * tile_cols:(j + 1) * tile_cols].copy()
        for i in range(grid_rows)
        for j in range(grid_cols)
    ]


def _decode_image(path: str) -> np.ndarray:
    try:
        img = Image.open(path)
        img.load()
    except Exception as exc:
        raise DecodeError(f"{path}: cannot decode image ({exc})") from exc
    if img.format == "JPEG":
        raise UnsupportedFormatError(
            f"{path}: JPEG is lossy and not appropriate for ordinal analysis; "
            "use PNG, BMP, TIFF or a netpbm format"
        )
    if img.format is not None and img.format not in _LOSSLESS_FORMATS:
        raise UnsupportedFormatError(f"{path}: unsupported format {img.format}")
    if img.mode in ("L", "I", "I;16", "F", "1"):
        return np.asarray(img, dtype=np.float64)
    if img.mode in ("RGB", "RGBA"):
        arr = np.asarray(img, dtype=np.float64)
        return to_gray(arr[..., 0], arr[..., 1], arr[..., 2])
    if img.mode == "P":
        arr = np.asarray(img.convert("RGB"), dtype=np.float64)
        return to_gray(arr[..., 0], arr[..., 1], arr[..., 2])
    raise UnsupportedFormatError(f"{path}: unsupported pixel mode {img.mode}")


def _decode_csv(path: str) -> np.ndarray:
    try:
        try:
            return np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2)
        except ValueError:
            return np.loadtxt(path, dtype=np.float64, ndmin=2)
    except Exception as exc:
        raise DecodeError(f"{path}: cannot parse numeric matrix ({exc})") from exc


def load_grid(path) -> np.ndarray:
    """Decode a file into a float grid. Dispatch is by extension:
    .csv/.txt are numeric matrices, everything else is decoded as an image."""
    path = os.fspath(path)
    ext = os.path.splitext(path)[1].lower()
    if ext in (".csv", ".txt", ".dat"):
        values = _decode_csv(path)
    else:
        values = _decode_image(path)
    try:
        return as_grid(values)
    except InvalidInputError as exc:
        raise DecodeError(f"{path}: {exc}") from exc


def save_grid(grid, path):
    """Write a grid as plain CSV, or as a 16-bit portable graymap (.pgm)
    after affine rescaling to 0..65535."""
    grid = as_grid(grid)
    path = os.fspath(path)
    if path.lower().endswith(".pgm"):
        lo, hi = grid.min(), grid.max()
        scaled = np.zeros_like(grid) if hi == lo else (grid - lo) / (hi - lo)
        img = Image.fromarray((scaled * 65535).round().astype(np.uint16))
        img.save(path)
    else:
        np.savetxt(path, grid, delimiter=",")
