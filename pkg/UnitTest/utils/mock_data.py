"""
Mock Data Generator
==================

Seeded random instances for oracle comparisons and property tests.
"""

import random
from typing import List, Optional, Tuple
import os
import sys

# Add project root to path
project_root = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
sys.path.insert(0, project_root)

from annulus_cover.models.geom_core import Instance
from annulus_cover.utils.instance_io import PROFILES, generate


class MockInstanceGenerator:
    """Generates small random red/blue instances for testing."""

    PENALTIES = [1, 1, 2, 3]

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.rng = random.Random(seed)

    def _cells(self, count: int, dimension: int, span: int) -> List[Tuple[int, ...]]:
        cells = set()
        while len(cells) < count:
            cells.add(tuple(self.rng.randint(-span, span) for _ in range(dimension)))
        return sorted(cells)

    def instance(self, n: int, m: int, dimension: int = 2, span: int = 4,
                 shared: int = 0, id: Optional[str] = None) -> Instance:
        """Random instance; `shared` blues are placed on red positions"""
        reds = self._cells(n, dimension, span)
        blues = set(self._cells(m - shared, dimension, span)) if m > shared else set()
        for cell in self.rng.sample(reds, min(shared, len(reds))):
            blues.add(cell)
        pick = lambda: self.rng.choice(self.PENALTIES)
        return Instance.build(
            dimension,
            [(cell, pick()) for cell in reds],
            [(cell, pick()) for cell in sorted(blues)],
            id=id or f"mock-{self.seed}-{n}-{m}-{dimension}",
        )

    def batch(self, count: int, n: int, m: int, dimension: int = 2, span: int = 4) -> List[Instance]:
        return [self.instance(n, m, dimension, span, id=f"mock-{self.seed}-{k}") for k in range(count)]

    def profiled(self, profile: str, n: int, m: int, dimension: int = 2) -> Instance:
        """Instance from the package generator (same seed, same instance)"""
        if profile not in PROFILES:
            raise ValueError(f"unknown profile {profile}")
        return generate(self.seed, profile, n, m, dimension)


def create_mock_instance(n: int = 4, m: int = 3, dimension: int = 2, seed: int = 0) -> Instance:
    """Convenience function for a single random instance."""
    return MockInstanceGenerator(seed).instance(n, m, dimension)
