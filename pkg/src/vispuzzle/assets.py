"""Image sources for the sliding puzzle.

The benchmark ships with a deterministic synthetic provider so builds need
no external data; a directory source covers user-supplied photo corpora
(stable ids = file stems).
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import MissingAsset
from .seeds import stable_seed


class SyntheticImages:
    """Procedural textures with enough spatial structure that every tile of
    the grid is visually distinct. Pure numpy, byte-deterministic."""

    def has(self, image_id: str) -> bool:
        return True

    def ids(self, count: int = 30) -> list[str]:
        return [f"img_{i:03d}" for i in range(count)]

    def get(self, image_id: str, size: int = 512) -> np.ndarray:
        rng = np.random.default_rng(stable_seed("synthetic_image", image_id))
        coarse = rng.uniform(40, 215, size=(7, 7, 3))
        img = _bilinear_upscale(coarse, size)

        yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)
        for _ in range(6):
            cx, cy = rng.uniform(0.1 * size, 0.9 * size, size=2)
            radius = rng.uniform(0.06 * size, 0.22 * size)
            color = rng.uniform(30, 225, size=3)
            mask = (xx - cx) ** 2 + (yy - cy) ** 2 <= radius * radius
            alpha = rng.uniform(0.45, 0.85)
            img[mask] = (1 - alpha) * img[mask] + alpha * color

        # A couple of oriented stripes for orientation cues within tiles.
        for _ in range(3):
            theta = rng.uniform(0, np.pi)
            c0 = rng.uniform(0.2, 0.8) * size
            width = rng.uniform(0.015 * size, 0.05 * size)
            proj = xx * np.cos(theta) + yy * np.sin(theta)
            mask = np.abs(proj - c0) <= width
            color = rng.uniform(0, 255, size=3)
            img[mask] = 0.5 * img[mask] + 0.5 * color

        return np.clip(np.rint(img), 0, 255).astype(np.uint8)


class DirectoryImages:
    """Images from a local directory; ids are file stems."""

    EXTENSIONS = (".png", ".jpg", ".jpeg", ".bmp", ".webp")

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self._index: dict[str, Path] = {}
        for path in sorted(self.root.iterdir()):
            if path.suffix.lower() in self.EXTENSIONS:
                self._index.setdefault(path.stem, path)

    def has(self, image_id: str) -> bool:
        return image_id in self._index

    def ids(self, count: int | None = None) -> list[str]:
        out = sorted(self._index)
        return out if count is None else out[:count]

    def get(self, image_id: str, size: int = 512) -> np.ndarray:
        if image_id not in self._index:
            raise MissingAsset(f"image {image_id!r} not in {self.root}")
        from PIL import Image

        with Image.open(self._index[image_id]) as im:
            im = im.convert("RGB")
            side = min(im.size)
            left = (im.width - side) // 2
            top = (im.height - side) // 2
            im = im.crop((left, top, left + side, top + side))
            im = im.resize((size, size), Image.LANCZOS)
            return np.asarray(im, dtype=np.uint8)


def _bilinear_upscale(coarse: np.ndarray, size: int) -> np.ndarray:
    h, w, _ = coarse.shape
    ys = np.linspace(0, h - 1, size)
    xs = np.linspace(0, w - 1, size)
    y0 = np.floor(ys).astype(int)
    x0 = np.floor(xs).astype(int)
    y1 = np.minimum(y0 + 1, h - 1)
    x1 = np.minimum(x0 + 1, w - 1)
    fy = (ys - y0)[:, None, None]
    fx = (xs - x0)[None, :, None]
    top = coarse[y0][:, x0] * (1 - fx) + coarse[y0][:, x1] * fx
    bottom = coarse[y1][:, x0] * (1 - fx) + coarse[y1][:, x1] * fx
    return top * (1 - fy) + bottom * fy
