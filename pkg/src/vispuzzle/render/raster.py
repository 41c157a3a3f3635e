"""Byte-deterministic software rasterizer.

Shapes are filled with 4x4 supersampled coverage computed in fixed-point
integer arithmetic (coordinates scaled by 256), so output is identical
across platforms; no system font or graphics library is involved.
"""

from __future__ import annotations

import math
import struct
import zlib

import numpy as np

SS = 4          # supersamples per pixel axis
FP = 256        # fixed-point scale


class Canvas:
    def __init__(self, width: int, height: int, background=(255, 255, 255)):
        self.width = width
        self.height = height
        self.img = np.empty((height, width, 3), dtype=np.uint8)
        self.img[:, :] = np.asarray(background, dtype=np.uint8)

    # -- filling ------------------------------------------------------------

    def fill_convex(self, pts, color) -> None:
        """Coverage-fill a convex polygon given in pixel coordinates."""
        if len(pts) < 3:
            return
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        x0 = max(int(math.floor(min(xs))), 0)
        y0 = max(int(math.floor(min(ys))), 0)
        x1 = min(int(math.ceil(max(xs))) + 1, self.width)
        y1 = min(int(math.ceil(max(ys))) + 1, self.height)
        if x0 >= x1 or y0 >= y1:
            return

        # signed area to fix orientation
        area2 = 0.0
        n = len(pts)
        for i in range(n):
            ax, ay = pts[i]
            bx, by = pts[(i + 1) % n]
            area2 += ax * by - bx * ay
        if area2 == 0:
            return
        orient = 1 if area2 > 0 else -1

        ipts = [(int(round(px * FP)), int(round(py * FP))) for px, py in pts]

        w = (x1 - x0) * SS
        h = (y1 - y0) * SS
        step = FP // SS
        half = step // 2
        sx = np.arange(w, dtype=np.int64) * step + x0 * FP + half
        sy = np.arange(h, dtype=np.int64) * step + y0 * FP + half
        gx = sx[None, :]
        gy = sy[:, None]
        inside = np.ones((h, w), dtype=bool)
        for i in range(n):
            ax, ay = ipts[i]
            bx, by = ipts[(i + 1) % n]
            cross = (bx - ax) * (gy - ay) - (by - ay) * (gx - ax)
            if orient > 0:
                inside &= cross >= 0
            else:
                inside &= cross <= 0
            if not inside.any():
                return
        cov = inside.reshape(y1 - y0, SS, x1 - x0, SS).sum(axis=(1, 3), dtype=np.uint16)
        self._blend(x0, y0, x1, y1, cov, color)

    def _blend(self, x0, y0, x1, y1, cov, color) -> None:
        region = self.img[y0:y1, x0:x1].astype(np.uint16)
        c = np.asarray(color, dtype=np.uint16)
        cov3 = cov[:, :, None]
        total = SS * SS
        self.img[y0:y1, x0:x1] = ((c * cov3 + region * (total - cov3) + total // 2)
                                  // total).astype(np.uint8)

    def fill_polygon(self, pts, color) -> None:
        """Fill a simple polygon (triangulated when non-convex)."""
        if _is_convex(pts):
            self.fill_convex(pts, color)
            return
        from ..geom import triangulate, signed_area

        if signed_area(pts) < 0:
            pts = list(reversed(pts))
        for tri in triangulate(list(pts)):
            self.fill_convex(list(tri), color)

    def fill_circle(self, center, radius: float, color, segments: int = 32) -> None:
        cx, cy = center
        pts = [(cx + radius * math.cos(2 * math.pi * i / segments),
                cy + radius * math.sin(2 * math.pi * i / segments))
               for i in range(segments)]
        self.fill_convex(pts, color)

    # -- strokes ------------------------------------------------------------

    def stroke_segment(self, a, b, width: float, color) -> None:
        ax, ay = a
        bx, by = b
        dx, dy = bx - ax, by - ay
        ln = math.hypot(dx, dy)
        if ln < 1e-9:
            self.fill_circle(a, width / 2, color, segments=8)
            return
        nx, ny = -dy / ln * width / 2, dx / ln * width / 2
        self.fill_convex([(ax + nx, ay + ny), (bx + nx, by + ny),
                          (bx - nx, by - ny), (ax - nx, ay - ny)], color)

    def stroke_polyline(self, pts, width: float, color, closed=False) -> None:
        n = len(pts)
        last = n if closed else n - 1
        for i in range(last):
            self.stroke_segment(pts[i], pts[(i + 1) % n], width, color)

    def dashed_segment(self, a, b, width: float, color,
                       dash: float = 7.0, gap: float = 5.0) -> None:
        ax, ay = a
        bx, by = b
        ln = math.hypot(bx - ax, by - ay)
        if ln < 1e-9:
            return
        ux, uy = (bx - ax) / ln, (by - ay) / ln
        t = 0.0
        while t < ln:
            e = min(t + dash, ln)
            self.stroke_segment((ax + ux * t, ay + uy * t),
                                (ax + ux * e, ay + uy * e), width, color)
            t = e + gap

    def arrow(self, base, tip, shaft_width: float, head_len: float, color) -> None:
        bx, by = base
        tx, ty = tip
        dx, dy = tx - bx, ty - by
        ln = math.hypot(dx, dy)
        if ln < 1e-9:
            return
        ux, uy = dx / ln, dy / ln
        jx, jy = tx - ux * head_len, ty - uy * head_len
        self.stroke_segment(base, (jx, jy), shaft_width, color)
        half = head_len * 0.62
        self.fill_convex([(tx, ty),
                          (jx - uy * half, jy + ux * half),
                          (jx + uy * half, jy - ux * half)], color)

    # -- text ---------------------------------------------------------------

    def text(self, pos, string: str, px: int, color, anchor: str = "center") -> None:
        """Draw text from the embedded 5x7 glyph set; px is glyph height in
        pixels (rounded to a multiple of 7)."""
        from .glyphs import GLYPHS

        scale = max(px // 7, 1)
        gw, gh = 5 * scale, 7 * scale
        adv = gw + scale
        total_w = adv * len(string) - scale
        x, y = pos
        if anchor == "center":
            x -= total_w / 2
            y -= gh / 2
        cx = int(round(x))
        cy = int(round(y))
        for ch in string.upper():
            rows = GLYPHS.get(ch)
            if rows is not None:
                for r, row in enumerate(rows):
                    for c, bit in enumerate(row):
                        if bit == "#":
                            self._rect_px(cx + c * scale, cy + r * scale,
                                          scale, scale, color)
            cx += adv

    def _rect_px(self, x, y, w, h, color) -> None:
        x0 = max(x, 0)
        y0 = max(y, 0)
        x1 = min(x + w, self.width)
        y1 = min(y + h, self.height)
        if x0 < x1 and y0 < y1:
            self.img[y0:y1, x0:x1] = color

    def blit(self, x: int, y: int, tile: np.ndarray) -> None:
        h, w, _ = tile.shape
        x0, y0 = max(x, 0), max(y, 0)
        x1, y1 = min(x + w, self.width), min(y + h, self.height)
        if x0 < x1 and y0 < y1:
            self.img[y0:y1, x0:x1] = tile[y0 - y:y1 - y, x0 - x:x1 - x]


def _is_convex(pts) -> bool:
    n = len(pts)
    if n < 4:
        return True
    sign = 0
    for i in range(n):
        ax, ay = pts[i]
        bx, by = pts[(i + 1) % n]
        cx, cy = pts[(i + 2) % n]
        cross = (bx - ax) * (cy - by) - (by - ay) * (cx - bx)
        if abs(cross) < 1e-12:
            continue
        s = 1 if cross > 0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            return False
    return True


def png_bytes(img: np.ndarray) -> bytes:
    """Minimal RGB8 PNG encoding (fixed zlib level, no filtering)."""
    if img.ndim != 3 or img.shape[2] != 3 or img.dtype != np.uint8:
        raise ValueError("expected HxWx3 uint8 image")
    h, w, _ = img.shape
    raw = b"".join(b"\x00" + img[y].tobytes() for y in range(h))
    idat = zlib.compress(raw, 6)

    def chunk(tag: bytes, data: bytes) -> bytes:
        crc = zlib.crc32(tag + data) & 0xFFFFFFFF
        return struct.pack(">I", len(data)) + tag + data + struct.pack(">I", crc)

    ihdr = struct.pack(">IIBBBBB", w, h, 8, 2, 0, 0, 0)
    return (b"\x89PNG\r\n\x1a\n" + chunk(b"IHDR", ihdr) +
            chunk(b"IDAT", idat) + chunk(b"IEND", b""))


def decode_png(data: bytes) -> np.ndarray:
    """Inverse of png_bytes for tests and the study server (RGB8, filter 0)."""
    if data[:8] != b"\x89PNG\r\n\x1a\n":
        raise ValueError("not a PNG")
    pos = 8
    w = h = None
    idat = b""
    while pos < len(data):
        (length,) = struct.unpack(">I", data[pos:pos + 4])
        tag = data[pos + 4:pos + 8]
        body = data[pos + 8:pos + 8 + length]
        if tag == b"IHDR":
            w, h = struct.unpack(">II", body[:8])
        elif tag == b"IDAT":
            idat += body
        pos += 12 + length
    raw = zlib.decompress(idat)
    stride = w * 3 + 1
    rows = [np.frombuffer(raw[y * stride + 1:(y + 1) * stride], dtype=np.uint8)
            for y in range(h)]
    return np.stack(rows).reshape(h, w, 3)
