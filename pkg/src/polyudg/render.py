"""SVG drawing of unit graphs.  Output only; coordinates come from float embedding."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .graph_builder import UnitGraph
from .polygon_metric import embed_float
from .vector_catalog import Role, catalog

LAYERS = ("all", "expected", "accidental")
_COLORS = {"expected": "#1f4e9c", "accidental": "#c0392b"}


def edge_layer(g: UnitGraph, label: str) -> str:
    """``expected`` for generating-orbit edges, ``accidental`` for everything else."""
    cat = catalog(g.metric)
    try:
        return "expected" if cat[label].role is Role.GENERATING else "accidental"
    except KeyError:
        return "accidental"


def render_svg(g: UnitGraph, layer: str = "all", size: int = 800, margin: int = 20) -> str:
    if layer not in LAYERS:
        raise ValueError(f"layer must be one of {LAYERS}")
    xy = [embed_float(v) for v in g.vertices]
    if xy:
        xs, ys = [p[0] for p in xy], [p[1] for p in xy]
        x0, y0 = min(xs), min(ys)
        span = max(max(xs) - x0, max(ys) - y0) or 1.0
    else:
        x0 = y0 = 0.0
        span = 1.0
    s = (size - 2 * margin) / span

    def pos(i: int) -> tuple[float, float]:
        x, y = xy[i]
        # SVG y grows downwards
        return round(margin + (x - x0) * s, 3), round(size - margin - (y - y0) * s, 3)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f"<title>{escape(g.provenance or 'unit-distance graph')}</title>",
        '<g class="edges" stroke-width="0.6">',
    ]
    for i, j, lab in g.edges:
        kind = edge_layer(g, lab)
        if layer != "all" and kind != layer:
            continue
        (x1, y1), (x2, y2) = pos(i), pos(j)
        out.append(
            f'<line class="edge {kind}" data-orbit="{escape(lab)}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{_COLORS[kind]}"/>'
        )
    out.append("</g>")
    out.append('<g class="vertices" fill="black">')
    for i in range(g.n):
        x, y = pos(i)
        out.append(f'<circle class="vertex" data-index="{i}" cx="{x}" cy="{y}" r="2.5"/>')
    out += ["</g>", "</svg>"]
    return "\n".join(out) + "\n"
