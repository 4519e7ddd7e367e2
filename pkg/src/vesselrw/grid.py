"""Pixel lattice indexing, neighborhoods, and the labeled/unlabeled partition.

Pixels are indexed row-major: index = y * width + x. Neighbor enumeration
order is fixed (E, W, S, N, SE, SW, NE, NW) so that matrix assembly and the
tests built on it are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

# (dy, dx) per direction, E W S N then diagonals SE SW NE NW.
OFFSETS_8 = ((0, 1), (0, -1), (1, 0), (-1, 0), (1, 1), (1, -1), (-1, 1), (-1, -1))
OFFSETS_4 = OFFSETS_8[:4]

# Step angles (atan2(dy, dx), y pointing down) and step lengths, same order.
STEP_ANGLES_8 = tuple(float(np.arctan2(dy, dx)) for dy, dx in OFFSETS_8)
STEP_LENGTHS_8 = tuple(float(np.hypot(dy, dx)) for dy, dx in OFFSETS_8)


class Connectivity(IntEnum):
    FOUR = 4
    EIGHT = 8


class LabelKind(IntEnum):
    SEED = 0
    SCRIBBLE = 1
    CENTERLINE = 2


_KIND_NAMES = {LabelKind.SEED: "seed", LabelKind.SCRIBBLE: "scribble",
               LabelKind.CENTERLINE: "centerline"}
_KINDS_BY_NAME = {v: k for k, v in _KIND_NAMES.items()}


def kind_name(kind: LabelKind) -> str:
    return _KIND_NAMES[LabelKind(kind)]


def kind_from_name(name: str) -> LabelKind:
    try:
        return _KINDS_BY_NAME[name]
    except KeyError:
        raise ValueError(f"unknown label kind {name!r}") from None


class ValidationError(ValueError):
    """Input violates a documented precondition or type invariant."""


@dataclass(frozen=True)
class PixelGrid:
    width: int
    height: int
    connectivity: Connectivity = Connectivity.EIGHT

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValidationError("grid dimensions must be >= 1")
        object.__setattr__(self, "connectivity", Connectivity(self.connectivity))

    @property
    def num_pixels(self) -> int:
        return self.width * self.height

    def offsets(self):
        return OFFSETS_8 if self.connectivity == Connectivity.EIGHT else OFFSETS_4

    def index(self, x: int, y: int) -> int:
        return y * self.width + x

    def coords(self, index: int) -> tuple[int, int]:
        return index % self.width, index // self.width

    def neighbors(self, x: int) -> list[int]:
        """In-bounds neighbors of pixel ``x`` in the fixed direction order."""
        if not 0 <= x < self.num_pixels:
            raise ValidationError(f"pixel index {x} out of range")
        px, py = self.coords(x)
        out = []
        for dy, dx in self.offsets():
            nx, ny = px + dx, py + dy
            if 0 <= nx < self.width and 0 <= ny < self.height:
                out.append(ny * self.width + nx)
        return out

    def neighbor_arrays(self):
        """Vectorized neighbor structure for assembly.

        Returns (src, dst, direction) index arrays covering every in-bounds
        directed edge, ordered by direction then row-major source pixel.
        """
        w, h = self.width, self.height
        ys, xs = np.mgrid[0:h, 0:w]
        srcs, dsts, dirs = [], [], []
        for d, (dy, dx) in enumerate(self.offsets()):
            ny, nx = ys + dy, xs + dx
            ok = (ny >= 0) & (ny < h) & (nx >= 0) & (nx < w)
            srcs.append((ys[ok] * w + xs[ok]).ravel())
            dsts.append((ny[ok] * w + nx[ok]).ravel())
            dirs.append(np.full(int(ok.sum()), d, dtype=np.int64))
        return (np.concatenate(srcs), np.concatenate(dsts), np.concatenate(dirs))


@dataclass(frozen=True)
class SparseLabels:
    """Sparse annotations: parallel arrays of pixel index, label id, kind."""

    pixels: np.ndarray
    labels: np.ndarray
    kinds: np.ndarray
    num_labels: int = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "pixels", np.asarray(self.pixels, dtype=np.int64))
        object.__setattr__(self, "labels", np.asarray(self.labels, dtype=np.int64))
        object.__setattr__(self, "kinds", np.asarray(self.kinds, dtype=np.int64))
        if not (self.pixels.shape == self.labels.shape == self.kinds.shape):
            raise ValidationError("label arrays must be parallel")
        if self.num_labels < 2:
            raise ValidationError("numLabels must be >= 2")
        if self.pixels.size:
            if self.pixels.min() < 0:
                raise ValidationError("negative pixel index")
            if self.labels.min() < 0 or self.labels.max() >= self.num_labels:
                raise ValidationError("label id out of range")

    @staticmethod
    def from_entries(entries, num_labels: int = 2) -> "SparseLabels":
        """Build from (pixel, label, kind) triples, deduplicating repeats.

        A pixel listed twice with the same label keeps its first entry; two
        distinct labels at one pixel is a validation error.
        """
        seen: dict[int, tuple[int, int]] = {}
        order: list[int] = []
        for pix, lab, kind in entries:
            pix, lab = int(pix), int(lab)
            if pix in seen:
                if seen[pix][0] != lab:
                    raise ValidationError(f"pixel {pix} carries two distinct labels")
                continue
            seen[pix] = (lab, int(kind))
            order.append(pix)
        pixels = np.array(order, dtype=np.int64)
        labels = np.array([seen[p][0] for p in order], dtype=np.int64)
        kinds = np.array([seen[p][1] for p in order], dtype=np.int64)
        return SparseLabels(pixels, labels, kinds, num_labels)

    def __len__(self) -> int:
        return int(self.pixels.size)

    @property
    def centerline_pixels(self) -> np.ndarray:
        return self.pixels[self.kinds == LabelKind.CENTERLINE]

    def validate_for(self, grid: PixelGrid) -> None:
        if self.pixels.size and self.pixels.max() >= grid.num_pixels:
            raise ValidationError("label pixel index outside grid")
        uniq, counts = np.unique(self.pixels, return_counts=True)
        if np.any(counts > 1):
            # repeats are tolerated only when they agree on the label id
            lab_at: dict[int, int] = {}
            for p, l in zip(self.pixels.tolist(), self.labels.tolist()):
                if lab_at.setdefault(p, l) != l:
                    raise ValidationError(f"pixel {p} carries two distinct labels")


@dataclass(frozen=True)
class Partition:
    """Stable split of the grid into unlabeled and labeled pixel sets."""

    unlabeled: np.ndarray           # pixel indices, ascending
    labeled: np.ndarray             # pixel indices, ascending
    label_of: np.ndarray            # per-pixel label id, -1 if unlabeled
    unlabeled_pos: np.ndarray       # per-pixel rank in `unlabeled`, -1 otherwise
    labeled_pos: np.ndarray = field(repr=False, default=None)

    @property
    def num_unlabeled(self) -> int:
        return int(self.unlabeled.size)


def partition(grid: PixelGrid, labels: SparseLabels) -> Partition:
    """Split pixels into solve unknowns and absorbing states.

    Raises ValidationError when no pixel is labeled (no absorbing states) or
    when the labels are inconsistent for this grid.
    """
    labels.validate_for(grid)
    if len(labels) == 0:
        raise ValidationError("no labeled pixels: no absorbing states")
    n = grid.num_pixels
    label_of = np.full(n, -1, dtype=np.int64)
    label_of[labels.pixels] = labels.labels
    labeled = np.flatnonzero(label_of >= 0)
    unlabeled = np.flatnonzero(label_of < 0)
    unlabeled_pos = np.full(n, -1, dtype=np.int64)
    unlabeled_pos[unlabeled] = np.arange(unlabeled.size)
    labeled_pos = np.full(n, -1, dtype=np.int64)
    labeled_pos[labeled] = np.arange(labeled.size)
    return Partition(unlabeled, labeled, label_of, unlabeled_pos, labeled_pos)
