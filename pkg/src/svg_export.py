"""
SVG Export
Static drawing of an L-contact representation on its integer grid
"""

import logging
from pathlib import Path
from typing import Dict, Optional, Union

from src.config_loader import get_config
from src.lcontact import LContactRepresentation

logger = logging.getLogger(__name__)


def render_svg(rep: LContactRepresentation, cell: Optional[int] = None, margin: Optional[int] = None,
               colors: Optional[Dict[str, str]] = None) -> str:
    """
    SVG text with grid lines and one two-segment polyline per shape

    Args:
        rep: representation to draw
        cell: pixels per grid unit (config SVG_CELL_SIZE)
        margin: grid units of padding (config SVG_MARGIN)
        colors: quadrant type -> stroke color (config TYPE_COLORS)
    """
    config = get_config()
    cell = cell or int(config.get('SVG_CELL_SIZE', 40))
    margin = int(config.get('SVG_MARGIN', 1)) if margin is None else margin
    colors = colors or config.get('TYPE_COLORS', {})

    points = [p for s in rep.shapes.values() for p in (s.bend, s.h_end, s.v_end)]
    lo_x = min([0] + [p[0] for p in points]) - margin
    lo_y = min([0] + [p[1] for p in points]) - margin
    hi_x = max([rep.n + 1] + [p[0] for p in points]) + margin
    hi_y = max([rep.n + 1] + [p[1] for p in points]) + margin
    width, height = (hi_x - lo_x) * cell, (hi_y - lo_y) * cell

    def sx(x: float) -> float:
        return (x - lo_x) * cell

    def sy(y: float) -> float:
        # grid y grows upward, SVG y downward
        return (hi_y - y) * cell

    rows = [
        f'<svg width="{width}" height="{height}" viewBox="0 0 {width} {height}" '
        'xmlns="http://www.w3.org/2000/svg">',
        '<g stroke="#dddddd" stroke-width="1">',
    ]
    for x in range(lo_x, hi_x + 1):
        rows.append(f'<line x1="{sx(x)}" y1="{sy(lo_y)}" x2="{sx(x)}" y2="{sy(hi_y)}"/>')
    for y in range(lo_y, hi_y + 1):
        rows.append(f'<line x1="{sx(lo_x)}" y1="{sy(y)}" x2="{sx(hi_x)}" y2="{sy(y)}"/>')
    rows.append('</g>')

    rows.append(f'<g fill="none" stroke-width="{max(2, cell // 10)}" stroke-linecap="round">')
    for v in sorted(rep.shapes):
        shape = rep.shapes[v]
        path = ' '.join(f"{sx(x)},{sy(y)}" for x, y in (shape.h_end, shape.bend, shape.v_end))
        color = colors.get(shape.type, '#000000')
        rows.append(f'<polyline points="{path}" stroke="{color}"><title>{v} ({shape.type})</title></polyline>')
    rows.append('</g>')

    rows.append(f'<g font-family="sans-serif" font-size="{max(8, cell // 3)}" fill="#333333">')
    for v in sorted(rep.shapes):
        bx, by = rep.shapes[v].bend
        rows.append(f'<text x="{sx(bx) + 3}" y="{sy(by) - 3}">{v}</text>')
    rows.append('</g>')
    rows.append('</svg>')
    return '\n'.join(rows) + '\n'


def write_svg(path: Union[str, Path], rep: LContactRepresentation, **kwargs):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_svg(rep, **kwargs), encoding='utf-8')
    logger.info(f"SVG written to {path}")
