"""
SVG Rendering
Static picture of an instance and a solution annulus; open boundaries are drawn dashed

Coordinates are converted to floats here and nowhere else: the picture never
feeds back into a computation.
"""

import logging
import math
import os
from typing import Dict, List, Optional

from jinja2 import Environment, FileSystemLoader, select_autoescape

from annulus_cover.models.geom_core import CircAnnulus, Instance, IntervalPair, RectAnnulus, Solution

logger = logging.getLogger(__name__)

TEMPLATE_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'templates')
TEMPLATE_NAME = 'annulus.svg.j2'
MARGIN = 24
COLORS = {'R': '#d62728', 'B': '#1f77b4'}

_environment = Environment(loader=FileSystemLoader(TEMPLATE_DIR), autoescape=select_autoescape(['j2', 'svg']))


class _Viewport:
    """Maps instance coordinates into the square picture (y grows upward)"""

    def __init__(self, xs: List[float], ys: List[float], size: int):
        self.size = size
        self.x0, self.x1 = min(xs), max(xs)
        self.y0, self.y1 = min(ys), max(ys)
        span = max(self.x1 - self.x0, self.y1 - self.y0) or 1.0
        self.scale = (size - 2 * MARGIN) / span

    def x(self, v) -> float:
        return round(MARGIN + (float(v) - self.x0) * self.scale, 3)

    def y(self, v) -> float:
        return round(self.size - MARGIN - (float(v) - self.y0) * self.scale, 3)

    def length(self, v) -> float:
        return round(float(v) * self.scale, 3)


def _extent(instance: Instance, annulus) -> Dict[str, List[float]]:
    xs = [float(p.x) for p in instance.points]
    ys = [float(p.y) if instance.dimension == 2 else 0.0 for p in instance.points]
    if isinstance(annulus, IntervalPair):
        xs += [float(v) for v in annulus.left_interval + annulus.right_interval]
    elif isinstance(annulus, RectAnnulus):
        xs += [float(annulus.outer.left), float(annulus.outer.right)]
        ys += [float(annulus.outer.bottom), float(annulus.outer.top)]
    elif isinstance(annulus, CircAnnulus):
        r = math.sqrt(float(annulus.r_out_sq))
        cx, cy = float(annulus.center[0]), float(annulus.center[1])
        xs += [cx - r, cx + r]
        ys += [cy - r, cy + r]
    return {'xs': xs or [0.0], 'ys': ys or [0.0]}


def _rect_outlines(annulus: RectAnnulus, view: _Viewport) -> List[Dict]:
    outlines = []
    for prefix, rect in (('outer', annulus.outer), ('inner', annulus.inner)):
        left, right = view.x(rect.left), view.x(rect.right)
        bottom, top = view.y(rect.bottom), view.y(rect.top)
        sides = {
            'left': (left, bottom, left, top),
            'right': (right, bottom, right, top),
            'bottom': (left, bottom, right, bottom),
            'top': (left, top, right, top),
        }
        for side, (x1, y1, x2, y2) in sides.items():
            name = f"{prefix}_{side}"
            outlines.append({'name': name, 'x1': x1, 'y1': y1, 'x2': x2, 'y2': y2,
                             'open': getattr(annulus.side_open, name)})
    return outlines


def _interval_shapes(annulus: IntervalPair, view: _Viewport):
    base = view.y(0)
    bands, outlines = [], []
    ends = list(annulus.left_interval) + list(annulus.right_interval)
    names = ('left_outer', 'left_inner', 'right_inner', 'right_outer')
    for a, b in (annulus.left_interval, annulus.right_interval):
        bands.append({'x1': view.x(a), 'y1': base, 'x2': view.x(b), 'y2': base})
    for name, value, is_open in zip(names, ends, annulus.endpoint_open):
        x = view.x(value)
        outlines.append({'name': name, 'x1': x, 'y1': base - 8, 'x2': x, 'y2': base + 8, 'open': is_open})
    return bands, outlines


def render_svg(instance: Instance, solution: Optional[Solution] = None, size: int = 480) -> str:
    """SVG text for the instance and, when given, the solution annulus"""
    annulus = solution.annulus if solution is not None else None
    extent = _extent(instance, annulus)
    view = _Viewport(extent['xs'], extent['ys'], size)

    bands: List[Dict] = []
    outlines: List[Dict] = []
    circles: List[Dict] = []
    if isinstance(annulus, IntervalPair):
        bands, outlines = _interval_shapes(annulus, view)
    elif isinstance(annulus, RectAnnulus):
        outlines = _rect_outlines(annulus, view)
    elif isinstance(annulus, CircAnnulus):
        cx, cy = view.x(annulus.center[0]), view.y(annulus.center[1])
        for name, radius_sq, is_open in (('inner', annulus.r_in_sq, annulus.boundary_open[0]),
                                         ('outer', annulus.r_out_sq, annulus.boundary_open[1])):
            circles.append({'name': name, 'cx': cx, 'cy': cy, 'r': view.length(math.sqrt(float(radius_sq))),
                            'open': is_open})

    top_penalty = max((float(p.penalty) for p in instance.points), default=1.0)
    points = [{
        'pid': p.pid,
        'color': 'red' if p.is_red else 'blue',
        'fill': COLORS[p.color.value],
        'cx': view.x(p.x),
        'cy': view.y(p.y if instance.dimension == 2 else 0),
        'r': round(3 + 4 * math.sqrt(float(p.penalty) / top_penalty), 2),
    } for p in instance.points]

    title = instance.id if solution is None else f"{instance.id} {solution.variant} lambda={solution.lambda_value}"
    template = _environment.get_template(TEMPLATE_NAME)
    return template.render(size=size, title=title, bands=bands, outlines=outlines, circles=circles, points=points)


def write_svg(path: str, instance: Instance, solution: Optional[Solution] = None, size: int = 480) -> str:
    text = render_svg(instance, solution, size)
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(text)
    logger.info("wrote %s", path)
    return path
