#!/usr/bin/env python3
"""
Render Tools
Writes attractor samples as SVG point clouds or CSV, and |mu_hat| heatmaps as
binary PGM images. Each writer returns a small result dict; write failures
are raised as click.FileError carrying the path.
"""

from pathlib import Path

import click
import numpy as np
from PIL import Image

from app.logger import get_logger

log = get_logger("render")

SVG_MARGIN = 16


def _file_error(path: Path, err: OSError) -> click.FileError:
    return click.FileError(str(path), hint=err.strerror or str(err))


def write_svg(points: np.ndarray, path: str | Path, viewport: int = 1024) -> dict:
    """Maps the bounding box of the points onto a viewport x viewport canvas (y axis up)."""
    path = Path(path)
    lo, hi = points.min(axis=0), points.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1])) or 1.0
    scale = (viewport - 2 * SVG_MARGIN) / span

    xs = SVG_MARGIN + (points[:, 0] - lo[0]) * scale
    ys = viewport - SVG_MARGIN - (points[:, 1] - lo[1]) * scale
    circles = "\n".join(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="0.8"/>' for x, y in zip(xs, ys))
    svg = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{viewport}" height="{viewport}" '
        f'viewBox="0 0 {viewport} {viewport}">\n'
        f'<rect width="100%" height="100%" fill="white"/>\n'
        f'<g fill="black">\n{circles}\n</g>\n</svg>\n'
    )
    try:
        path.write_text(svg, encoding="utf-8")
    except OSError as err:
        raise _file_error(path, err) from err

    log.info(f"[Render] wrote {len(points)} points to {path}")
    return {"success": True, "path": str(path), "format": "svg", "count": int(len(points))}


def write_csv(points: np.ndarray, path: str | Path) -> dict:
    path = Path(path)
    try:
        np.savetxt(path, points, delimiter=",", header="x,y", comments="", fmt="%.12g")
    except OSError as err:
        raise _file_error(path, err) from err

    log.info(f"[Render] wrote {len(points)} rows to {path}")
    return {"success": True, "path": str(path), "format": "csv", "count": int(len(points))}


def write_pgm(values: np.ndarray, path: str | Path) -> dict:
    """values in [0,1] become 8-bit gray levels."""
    path = Path(path)
    gray = np.rint(np.clip(values, 0.0, 1.0) * 255).astype(np.uint8)
    try:
        Image.fromarray(gray).save(path, format="PPM")
    except OSError as err:
        raise _file_error(path, err) from err

    log.info(f"[Render] wrote {gray.shape[1]}x{gray.shape[0]} heatmap to {path}")
    return {"success": True, "path": str(path), "format": "pgm", "width": int(gray.shape[1]), "height": int(gray.shape[0])}
