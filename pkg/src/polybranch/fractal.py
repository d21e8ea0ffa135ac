"""Escape-time pictures of Newton convergence for t**d = S.

Each cell of a window in the S-plane runs the Newton iteration from one
shared seed and records how many steps it took to come within threshold_r of
the nearest true d-th root of S (known analytically, so convergence here is
measured against the truth, not a residual proxy).  Images go out as binary
PPM with a dark-purple-to-yellow ramp for converged cells -- darker is
faster -- and light blue for cells that never made it; an optional plain PGM
of raw iteration counts supports diffing.

Rendering is data-parallel over row bands.  Every cell is computed by the
same elementwise kernel, so output is identical for any worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .newton import DEFAULT_CONFIG, NewtonConfig, sector_seed

_TWO_PI = 2.0 * math.pi

DIVERGED_COLOR = (173, 216, 230)  # light blue

Window = tuple[float, float, float, float]  # re_min, re_max, im_min, im_max


def _build_colormap() -> np.ndarray:
    """256-entry dark-purple -> yellow ramp, luminance strictly increasing."""
    anchors = [
        (0, (13, 8, 60)),
        (64, (84, 12, 163)),
        (128, (190, 54, 121)),
        (192, (244, 136, 73)),
        (255, (246, 240, 70)),
    ]
    idx = np.arange(256)
    xs = [a[0] for a in anchors]
    table = np.empty((256, 3), dtype=np.uint8)
    for c in range(3):
        ys = [a[1][c] for a in anchors]
        table[:, c] = np.rint(np.interp(idx, xs, ys)).astype(np.uint8)
    return table


COLORMAP = _build_colormap()


@dataclass(frozen=True)
class FractalGrid:
    """Escape-time data for one rendered window.

    ``iterations`` and ``converged`` are (height, width) arrays with row 0 at
    the top of the window (largest imaginary part).  Non-converged cells hold
    the iteration cap.  ``sector`` records the canonical-frame index when the
    render was driven by a sector rather than a literal seed.
    """

    d: int
    seed: complex
    window: Window
    width: int
    height: int
    threshold_r: float
    max_iters: int
    iterations: np.ndarray
    converged: np.ndarray
    sector: int | None = None

    def cell_centers(self) -> np.ndarray:
        return _cell_centers(self.window, self.width, self.height)


def _cell_centers(window: Window, width: int, height: int) -> np.ndarray:
    re0, re1, im0, im1 = window
    re = re0 + (np.arange(width) + 0.5) * (re1 - re0) / width
    im = im1 - (np.arange(height) + 0.5) * (im1 - im0) / height  # row 0 on top
    return re[np.newaxis, :] + 1j * im[:, np.newaxis]


def escape_times(
    d: int,
    S: np.ndarray,
    seed: complex,
    config: NewtonConfig | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized escape-time kernel over an array of right-hand sides.

    Returns (iterations, converged) arrays of the same shape as ``S``.
    A cell converges at step n when the iterate first comes within
    threshold_r of the nearest d-th root of its S; cells that diverge, hit
    the map's critical point 0, or exhaust the cap are non-converged and
    carry the cap as their count.  S = 0 cells are converged at 0 (the only
    root is 0 and every distance test against it is degenerate).
    """
    if d < 2:
        raise ValueError("degree must be at least 2")
    cfg = config or DEFAULT_CONFIG
    S = np.asarray(S, dtype=np.complex128)
    shape = S.shape
    flat = S.ravel()
    n_cells = flat.size

    iterations = np.full(n_cells, cfg.max_iters, dtype=np.int32)
    converged = np.zeros(n_cells, dtype=bool)

    zero_mask = flat == 0
    iterations[zero_mask] = 0
    converged[zero_mask] = True

    live = np.flatnonzero(~zero_mask)
    S_live = flat[live]
    root_mod = np.abs(S_live) ** (1.0 / d)
    theta = np.angle(S_live)
    x = np.full(live.size, complex(seed), dtype=np.complex128)

    def near_root_dist(xs: np.ndarray, mods: np.ndarray, ths: np.ndarray) -> np.ndarray:
        j = np.round((d * np.angle(xs) - ths) / _TWO_PI)
        nearest = mods * np.exp(1j * (ths + _TWO_PI * j) / d)
        return np.abs(xs - nearest)

    hit = near_root_dist(x, root_mod, theta) < cfg.threshold_r
    if np.any(hit):
        idx = live[hit]
        iterations[idx] = 0
        converged[idx] = True
        keep = ~hit
        live, S_live, root_mod, theta, x = (
            live[keep],
            S_live[keep],
            root_mod[keep],
            theta[keep],
            x[keep],
        )

    for n in range(1, cfg.max_iters + 1):
        if live.size == 0:
            break
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            xp = x ** (d - 1)
            x = x - (xp * x - S_live) / (d * xp)
        bad = ~np.isfinite(x.real) | ~np.isfinite(x.imag)
        big = np.abs(x) > cfg.divergence_bailout
        dead = bad | big  # critical point hit or divergence: stays at the cap
        with np.errstate(invalid="ignore"):
            near = near_root_dist(x, root_mod, theta) < cfg.threshold_r
        near &= ~dead
        if np.any(near):
            idx = live[near]
            iterations[idx] = n
            converged[idx] = True
        drop = dead | near
        if np.any(drop):
            keep = ~drop
            live, S_live, root_mod, theta, x = (
                live[keep],
                S_live[keep],
                root_mod[keep],
                theta[keep],
                x[keep],
            )

    return iterations.reshape(shape), converged.reshape(shape)


def convergence_duration(
    d: int,
    S: complex,
    seed: complex,
    config: NewtonConfig | None = None,
) -> tuple[int, bool]:
    """Escape time of a single right-hand side (same kernel as the grid)."""
    its, conv = escape_times(d, np.array([S], dtype=np.complex128), seed, config)
    return int(its[0]), bool(conv[0])


def rotated_frame(d: int, S: complex | np.ndarray, k: int) -> np.ndarray | complex:
    """Map S into the canonical frame of sector k: S * exp(-2j*pi*k/d)."""
    return S * np.exp(-2j * math.pi * k / d)


def sector_duration(
    d: int,
    S: complex,
    k: int,
    config: NewtonConfig | None = None,
) -> tuple[int, bool]:
    """Escape time for the sector-k seed, computed in the rotated frame.

    The Newton map for seed exp(2j*pi*k/d**2) at S conjugates exactly onto
    the seed-1 map at S * exp(-2j*pi*k/d), so the rotation is applied to S
    before iterating and the canonical iteration does the work.
    """
    if not 0 <= k < d:
        raise ValueError("sector index out of range")
    return convergence_duration(d, complex(rotated_frame(d, S, k)), 1 + 0j, config)


def _worker_count(workers: int | None) -> int:
    if workers is not None:
        n = workers
    else:
        raw = os.environ.get("POLYBRANCH_THREADS", "")
        try:
            n = int(raw) if raw else 1
        except ValueError:
            n = 1
    return max(1, n)


def render(
    d: int,
    seed: complex = 1 + 0j,
    config: NewtonConfig | None = None,
    window: Window = (-2.0, 2.0, -2.0, 2.0),
    resolution: tuple[int, int] = (512, 512),
    workers: int | None = None,
    sector: int | None = None,
) -> FractalGrid:
    """Render the escape-time grid of a window in the S-plane.

    ``sector=k`` renders in the canonical rotated frame (rotation applied to
    every cell before iterating, seed 1 doing the work), which reproduces the
    sector-k seed's picture exactly up to the grid rotation.  ``workers``
    defaults to the POLYBRANCH_THREADS environment variable (else 1); the
    worker count partitions rows only and never changes a single cell.
    """
    cfg = config or DEFAULT_CONFIG
    width, height = resolution
    if width < 1 or height < 1:
        raise ValueError("resolution must be positive")
    re0, re1, im0, im1 = window
    if not (re1 > re0 and im1 > im0):
        raise ValueError("window must have positive extent")
    S = _cell_centers(window, width, height)
    if sector is not None:
        if not 0 <= sector < d:
            raise ValueError("sector index out of range")
        S_work = np.asarray(rotated_frame(d, S, sector))
        seed_used = sector_seed(d, sector)
        seed_work = 1 + 0j
    else:
        S_work = S
        seed_used = complex(seed)
        seed_work = seed_used

    n_workers = _worker_count(workers)
    iterations = np.empty((height, width), dtype=np.int32)
    converged = np.empty((height, width), dtype=bool)

    bands = np.array_split(np.arange(height), min(n_workers, height))

    def run_band(rows: np.ndarray) -> None:
        if rows.size == 0:
            return
        its, conv = escape_times(d, S_work[rows, :], seed_work, cfg)
        iterations[rows, :] = its
        converged[rows, :] = conv

    if n_workers == 1 or len(bands) == 1:
        run_band(np.arange(height))
    else:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            list(pool.map(run_band, bands))

    return FractalGrid(
        d=d,
        seed=seed_used,
        window=window,
        width=width,
        height=height,
        threshold_r=cfg.threshold_r,
        max_iters=cfg.max_iters,
        iterations=iterations,
        converged=converged,
        sector=sector,
    )


def write_image(grid: FractalGrid, path: str | os.PathLike) -> None:
    """Write a binary PPM (P6): colormap by iterations/max_iters, light blue
    for non-converged cells."""
    scale = max(grid.max_iters, 1)
    idx = np.rint(np.clip(grid.iterations, 0, scale) * (255.0 / scale)).astype(np.int64)
    rgb = COLORMAP[idx]
    rgb[~grid.converged] = DIVERGED_COLOR
    header = f"P6\n{grid.width} {grid.height}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(rgb.astype(np.uint8).tobytes())


def write_pgm(grid: FractalGrid, path: str | os.PathLike) -> None:
    """Write a plain PGM (P2) of raw iteration counts, maxval = max_iters."""
    lines = [f"P2\n{grid.width} {grid.height}\n{max(grid.max_iters, 1)}"]
    for row in grid.iterations:
        lines.append(" ".join(str(int(v)) for v in row))
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def sector_statistics(
    grid: FractalGrid,
    min_modulus: float = 0.1,
    max_modulus: float | None = None,
) -> list[dict]:
    """Per-sector convergence summary of a rendered grid.

    Cells are bucketed by the angular sector of their S value; cells with
    |S| < min_modulus (near-origin noise) are excluded, as are cells beyond
    ``max_modulus`` when given.  Mean iterations cover converged cells only.
    """
    if min_modulus < 0:
        raise ValueError("min_modulus must be nonnegative")
    if max_modulus is not None and max_modulus < min_modulus:
        raise ValueError("max_modulus must not be below min_modulus")
    d = grid.d
    S = grid.cell_centers()
    mod = np.abs(S)
    mask = mod >= min_modulus
    if max_modulus is not None:
        mask &= mod <= max_modulus
    theta = np.angle(S)
    theta = np.where(theta == math.pi, -math.pi, theta)
    sectors = np.floor((theta + math.pi / d) / (_TWO_PI / d)).astype(np.int64) % d
    out: list[dict] = []
    for k in range(d):
        sel = mask & (sectors == k)
        cells = int(np.count_nonzero(sel))
        if cells == 0:
            out.append(
                {"sector": k, "cells": 0, "converged_fraction": None, "mean_iterations": None}
            )
            continue
        conv = grid.converged[sel]
        frac = float(np.count_nonzero(conv)) / cells
        if np.any(conv):
            mean_its = float(np.mean(grid.iterations[sel][conv]))
        else:
            mean_its = None
        out.append(
            {
                "sector": k,
                "cells": cells,
                "converged_fraction": frac,
                "mean_iterations": mean_its,
            }
        )
    return out
