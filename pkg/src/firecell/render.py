"""Frame rendering: ASCII art and PNG images of a forest state.

Frames are pure functions of (state, agents, options): the same inputs
always produce byte-identical output. North (increasing row index) is up
and east is right. Hexagonal frames honour the axial geometry, so each
row is offset half a cell against the previous one.
"""

from __future__ import annotations

import math

from PIL import Image, ImageDraw

from .dynamics import CellState, ForestState
from .grid import GridKind

GLYPHS = {
    int(CellState.HEALTHY): ".",
    int(CellState.AFIRE): "*",
    int(CellState.BURNT): "#",
    int(CellState.EXT): "o",
    int(CellState.NONFLAM): "x",
}
AGENT_GLYPH = "A"

COLORS = {
    int(CellState.HEALTHY): (34, 139, 34),
    int(CellState.AFIRE): (226, 48, 28),
    int(CellState.BURNT): (24, 24, 24),
    int(CellState.EXT): (52, 98, 222),
    int(CellState.NONFLAM): (128, 128, 128),
}
AGENT_COLOR = (255, 255, 255)
BACKGROUND = (250, 250, 245)

FORMATS = ("ascii", "png")


def render_frame(forest: ForestState, agents=(), fmt: str = "ascii", scale: int = 12):
    """Render one frame; returns a str for ascii, a PIL image for png."""
    if fmt == "ascii":
        return ascii_frame(forest, agents)
    if fmt == "png":
        return png_frame(forest, agents, scale)
    raise ValueError(f"unsupported render format {fmt!r}; expected one of {FORMATS}")


def ascii_frame(forest: ForestState, agents=()) -> str:
    occupied = {a.position for a in agents}
    n = forest.topology.n
    hexagonal = forest.topology.kind is GridKind.HEXAGONAL
    lines = []
    for r in range(n - 1, -1, -1):
        glyphs = [
            AGENT_GLYPH if (r, c) in occupied else GLYPHS[int(forest.cells[r, c])]
            for c in range(n)
        ]
        indent = " " * r if hexagonal else ""
        lines.append(indent + " ".join(glyphs))
    return "\n".join(lines) + "\n"


def _hex_vertices(cx: float, cy: float, radius: float):
    # pointy-top: vertices at 30, 90, ..., 330 degrees
    return [
        (
            cx + radius * math.cos(math.radians(30 + 60 * k)),
            cy + radius * math.sin(math.radians(30 + 60 * k)),
        )
        for k in range(6)
    ]


def png_frame(forest: ForestState, agents=(), scale: int = 12) -> Image.Image:
    if scale < 1:
        raise ValueError(f"scale must be >= 1, got {scale}")
    topo = forest.topology
    n = topo.n
    occupied = {a.position for a in agents}

    if topo.kind is GridKind.RECTANGULAR:
        img = Image.new("RGB", (n * scale, n * scale), BACKGROUND)
        draw = ImageDraw.Draw(img)
        for r in range(n):
            y0 = (n - 1 - r) * scale
            for c in range(n):
                x0 = c * scale
                draw.rectangle(
                    (x0, y0, x0 + scale - 1, y0 + scale - 1),
                    fill=COLORS[int(forest.cells[r, c])],
                )
    else:
        radius = scale / math.sqrt(3.0)
        margin = scale
        max_x = topo.centers[..., 0].max()
        max_y = topo.centers[..., 1].max()
        width = int(math.ceil(max_x * scale + 2 * margin))
        height = int(math.ceil(max_y * scale + 2 * margin))
        img = Image.new("RGB", (width, height), BACKGROUND)
        draw = ImageDraw.Draw(img)
        for r in range(n):
            for c in range(n):
                cx, cy = topo.centers[r, c]
                px = cx * scale + margin
                py = (max_y - cy) * scale + margin  # flip so north is up
                draw.polygon(
                    _hex_vertices(px, py, radius),
                    fill=COLORS[int(forest.cells[r, c])],
                )

    for pos in occupied:
        cx, cy = topo.centers[pos[0], pos[1]]
        if topo.kind is GridKind.RECTANGULAR:
            px = cx * scale + scale / 2.0
            py = (n - 1 - pos[0]) * scale + scale / 2.0
        else:
            px = cx * scale + scale
            py = (topo.centers[..., 1].max() - cy) * scale + scale
        rad = max(1.0, scale * 0.3)
        draw.ellipse(
            (px - rad, py - rad, px + rad, py + rad),
            fill=AGENT_COLOR,
            outline=(0, 0, 0),
        )
    return img


def write_gif(images, path, duration_ms: int = 120) -> None:
    """Assemble rendered PNG frames into a looping animation."""
    images = list(images)
    if not images:
        raise ValueError("no frames to animate")
    images[0].save(
        path,
        save_all=True,
        append_images=images[1:],
        duration=duration_ms,
        loop=0,
    )
