"""Gauss-Legendre node/weight tables, tensor rules and shell decompositions."""

import itertools
import math
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

# Tensor rules are coarsened past this many nodes.
MAX_TENSOR_NODES = 2_000_000

BoxBounds = Tuple[np.ndarray, np.ndarray]


@lru_cache(maxsize=64)
def gauss_legendre(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """n-point rule on [-1, 1]"""
    nodes, weights = np.polynomial.legendre.leggauss(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def panel_rule_1d(a: float, b: float, panels: int, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Composite n-point rule on [a, b] with equal panels"""
    q, w = gauss_legendre(n)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * q[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def breakpoint_rule_1d(breakpoints: np.ndarray, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Composite n-point rule on consecutive panels [b_k, b_{k+1}]"""
    q, w = gauss_legendre(n)
    half = 0.5 * np.diff(breakpoints)
    mid = 0.5 * (breakpoints[:-1] + breakpoints[1:])
    nodes = (mid[:, None] + half[:, None] * q[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def tensor_rule(axes: Sequence[Tuple[np.ndarray, np.ndarray]]) -> Tuple[np.ndarray, np.ndarray]:
    """Product of 1-D rules: nodes (N, d), weights (N,)"""
    node_mesh = np.meshgrid(*[a[0] for a in axes], indexing="ij")
    weight_mesh = np.meshgrid(*[a[1] for a in axes], indexing="ij")
    nodes = np.stack([m.ravel() for m in node_mesh], axis=1)
    weights = np.prod(np.stack([m.ravel() for m in weight_mesh], axis=1), axis=1)
    return nodes, weights


def box_rule(lo: np.ndarray, hi: np.ndarray, n: int, panels: Sequence[int] = ()) -> Tuple[np.ndarray, np.ndarray]:
    dim = lo.size
    panels = list(panels) or [1] * dim
    return tensor_rule([panel_rule_1d(float(lo[i]), float(hi[i]), panels[i], n) for i in range(dim)])


def capped_panels(widths: np.ndarray, panel_width: float, n: int, min_panels: int) -> List[int]:
    """Panels per axis so that each is at most panel_width wide, within MAX_TENSOR_NODES"""
    dim = widths.size
    panels = [max(min_panels, int(math.ceil(w / panel_width))) for w in widths]
    per_axis_cap = max(min_panels, int(MAX_TENSOR_NODES ** (1.0 / dim)) // n)
    return [min(p, per_axis_cap) for p in panels]


def shell_boxes(inner: float, outer: float, dim: int) -> List[BoxBounds]:
    """Boxes tiling [-outer, outer]^d minus [-inner, inner]^d"""
    intervals = [(-outer, -inner), (-inner, inner), (inner, outer)]
    boxes = []
    for combo in itertools.product(range(3), repeat=dim):
        if all(c == 1 for c in combo):
            continue
        lo = np.array([intervals[c][0] for c in combo], dtype=float)
        hi = np.array([intervals[c][1] for c in combo], dtype=float)
        boxes.append((lo, hi))
    return boxes


def oscillation_breakpoints(a: float, b: float) -> np.ndarray:
    """a, every (k + 1/2) pi strictly inside (a, b), then b"""
    k_lo = int(math.floor(a / math.pi - 0.5)) + 1
    k_hi = int(math.ceil(b / math.pi - 0.5)) - 1
    inner = (np.arange(k_lo, k_hi + 1) + 0.5) * math.pi
    inner = inner[(inner > a) & (inner < b)]
    return np.concatenate([[a], inner, [b]])


@lru_cache(maxsize=8)
def cached_box_rule(lo: Tuple[float, ...], hi: Tuple[float, ...], n: int, panels: Tuple[int, ...]) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = box_rule(np.asarray(lo), np.asarray(hi), n, panels)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights
