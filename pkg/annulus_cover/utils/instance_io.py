"""
Instance I/O
Plain-text instance format, its writer, and the seeded random instance generator

Format:
    # comments anywhere, '# id: name' names the instance
    dim 2
    R <x> <y> <penalty>
    B <x> <y> <penalty>
Numbers are integers, p/q rationals or decimal literals; all are read exactly.
"""

import logging
import random
from typing import List, Optional, Sequence, Tuple

from annulus_cover.errors import InstanceFormatError
from annulus_cover.models.geom_core import Color, Instance, Point
from annulus_cover.utils.helpers import format_fraction, to_fraction

logger = logging.getLogger(__name__)

PROFILES = ('uniform_grid', 'clustered', 'cocircular', 'collinear')
DEFAULT_GRID = 20
MAX_PENALTY = 5

# integer points on x^2 + y^2 = 325
_CIRCLE_325 = sorted({(sx * a, sy * b) for a, b in ((1, 18), (6, 17), (10, 15), (18, 1), (17, 6), (15, 10))
                      for sx in (1, -1) for sy in (1, -1)})


def parse_instance(text: str, instance_id: Optional[str] = None) -> Instance:
    """Parse instance text; every error names its 1-based line"""
    dimension = None
    name = instance_id
    points = {Color.RED: [], Color.BLUE: []}
    seen = {Color.RED: set(), Color.BLUE: set()}

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith('#'):
            body = line[1:].strip()
            if name is None and body.startswith('id:'):
                name = body[3:].strip() or None
            continue
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        fields = line.split()

        if fields[0] == 'dim':
            if dimension is not None:
                raise InstanceFormatError("repeated 'dim' header", line_number)
            if len(fields) != 2 or fields[1] not in ('1', '2'):
                raise InstanceFormatError("expected 'dim 1' or 'dim 2'", line_number)
            dimension = int(fields[1])
            continue
        if dimension is None:
            raise InstanceFormatError("missing 'dim' header before the first point", line_number)
        if fields[0] not in ('R', 'B'):
            raise InstanceFormatError(f"unknown record {fields[0]!r}; expected R or B", line_number)
        if len(fields) != dimension + 2:
            raise InstanceFormatError(
                f"expected {dimension} coordinate(s) and a penalty, got {len(fields) - 1} value(s)", line_number)

        try:
            values = [to_fraction(v) for v in fields[1:]]
        except (ValueError, ZeroDivisionError, OverflowError) as e:
            raise InstanceFormatError(str(e), line_number) from e
        color = Color(fields[0])
        coords, penalty = tuple(values[:-1]), values[-1]
        if penalty <= 0:
            raise InstanceFormatError(f"non-positive penalty {format_fraction(penalty)}", line_number)
        if coords in seen[color]:
            raise InstanceFormatError(f"duplicate {color.name.lower()} point", line_number)
        seen[color].add(coords)
        points[color].append(Point(f"{color.value}{len(points[color])}", color, coords, penalty))

    if dimension is None:
        raise InstanceFormatError("missing 'dim' header")
    instance = Instance(dimension, tuple(points[Color.RED]), tuple(points[Color.BLUE]), name or 'instance')
    logger.debug("parsed %s: dim=%d n=%d m=%d", instance.id, dimension, instance.n, instance.m)
    return instance


def read_instance(path: str) -> Instance:
    with open(path, encoding='utf-8') as handle:
        return parse_instance(handle.read())


def emit_instance(instance: Instance) -> str:
    lines = [f"# id: {instance.id}", f"dim {instance.dimension}"]
    for p in instance.points:
        lines.append(' '.join([p.color.value, *(format_fraction(c) for c in p.coords), format_fraction(p.penalty)]))
    return '\n'.join(lines) + '\n'


def _sample_cells(rng: random.Random, count: int, dim: int, grid: int) -> List[Tuple[int, ...]]:
    if count > (2 * grid + 1) ** dim:
        raise ValueError(f"cannot place {count} distinct points on a grid of radius {grid}")
    cells = set()
    while len(cells) < count:
        cells.add(tuple(rng.randint(-grid, grid) for _ in range(dim)))
    ordered = sorted(cells)
    rng.shuffle(ordered)
    return ordered


def _clustered_cells(rng: random.Random, count: int, dim: int, grid: int) -> List[Tuple[int, ...]]:
    centers = [tuple(rng.randint(-grid + 3, grid - 3) for _ in range(dim)) for _ in range(rng.randint(1, 3))]
    cells, attempts = [], 0
    while len(cells) < count:
        attempts += 1
        spread = 3 + attempts // 50
        center = rng.choice(centers)
        cell = tuple(c + rng.randint(-spread, spread) for c in center)
        if cell not in cells:
            cells.append(cell)
    return cells


def _cocircular_reds(rng: random.Random, n: int, dim: int, grid: int) -> List[Tuple[int, ...]]:
    """Reds on one circle (2D) or mirrored about one center (1D)"""
    if dim == 1:
        center = rng.randint(-grid // 2, grid // 2)
        offsets = rng.sample(range(1, grid), (n + 1) // 2)
        cells = [(center + sign * d,) for d in offsets for sign in (1, -1)]
        return cells[:n]
    if n > len(_CIRCLE_325):
        raise ValueError(f"cocircular profile supports at most {len(_CIRCLE_325)} reds")
    shift = (rng.randint(-3, 3), rng.randint(-3, 3))
    return [(x + shift[0], y + shift[1]) for x, y in rng.sample(_CIRCLE_325, n)]


def _collinear_cells(rng: random.Random, count: int, dim: int, grid: int) -> List[Tuple[int, ...]]:
    if dim == 1:
        return _sample_cells(rng, count, 1, grid)
    slope, offset = rng.randint(-2, 2), rng.randint(-3, 3)
    xs = rng.sample(range(-grid, grid + 1), count)
    return [(x, slope * x + offset) for x in xs]


def generate(seed: int, profile: str = 'uniform_grid', n: int = 4, m: int = 4, dim: int = 2,
             grid: int = DEFAULT_GRID) -> Instance:
    """Deterministic random instance for the given seed and profile"""
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; expected one of {', '.join(PROFILES)}")
    if n < 0 or m < 0:
        raise ValueError("point counts must be non-negative")
    if dim not in (1, 2):
        raise ValueError(f"dimension must be 1 or 2, got {dim}")
    rng = random.Random(seed)

    if profile == 'uniform_grid':
        cells = _sample_cells(rng, n + m, dim, grid)
        reds, blues = cells[:n], cells[n:]
    elif profile == 'clustered':
        cells = _clustered_cells(rng, n + m, dim, grid)
        reds, blues = cells[:n], cells[n:]
    elif profile == 'cocircular':
        reds = _cocircular_reds(rng, n, dim, grid)
        blues = [c for c in _sample_cells(rng, m + n, dim, grid) if c not in reds][:m]
    else:
        cells = _collinear_cells(rng, n + m, dim, grid)
        reds, blues = cells[:n], cells[n:]

    def weighted(cells: Sequence[Tuple[int, ...]]):
        return [(cell, rng.randint(1, MAX_PENALTY)) for cell in cells]

    instance = Instance.build(dim, weighted(reds), weighted(blues), id=f"{profile}-s{seed}-n{n}-m{m}-d{dim}")
    logger.debug("generated %s", instance.id)
    return instance
