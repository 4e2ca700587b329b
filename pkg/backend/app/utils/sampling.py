import hashlib
import itertools
from typing import Sequence

import numpy as np
from scipy.stats import qmc


def seed_from_label(label: str, base_seed: int = 0) -> int:
    """Deterministic 32-bit seed from a text label"""
    h = hashlib.sha256(f"{base_seed}:{label}".encode("utf-8")).digest()
    return int.from_bytes(h[:4], "little")


def halton_points(lo: Sequence[float], hi: Sequence[float], n: int, seed: int) -> np.ndarray:
    """n scrambled Halton points in the box [lo, hi], shape (n, d)"""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    sampler = qmc.Halton(d=lo.size, scramble=True, seed=seed)
    unit = sampler.random(n)
    return lo + unit * (hi - lo)


def box_vertices_and_center(lo: Sequence[float], hi: Sequence[float]) -> np.ndarray:
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    corners = np.array(list(itertools.product(*zip(lo, hi))), dtype=float)
    return np.vstack([corners, (0.5 * (lo + hi))[None, :]])


def grid_points(lo: Sequence[float], hi: Sequence[float], per_axis: int) -> np.ndarray:
    """Tensor grid including the box faces, shape (per_axis**d, d)"""
    axes = [np.linspace(a, b, per_axis) for a, b in zip(lo, hi)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def spawn_generators(seed: int, count: int) -> list[np.random.Generator]:
    """Independent per-instance generators"""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]
