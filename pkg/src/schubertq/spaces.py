"""Space façade: one object bundling all per-space structures, cached.

Spaces are addressed by strings like "E6/P1", "A4/P2", "D5/P5".  All
components (coset system, quivers, naming, product tables) are built
lazily and shared; everything is immutable after construction, so a
Space can be used freely across threads.
"""

from __future__ import annotations

import re
from functools import lru_cache

from .root_system import (
    MarkedSpace,
    UnsupportedSpaceError,
    build_marked_space,
    build_root_system,
)
from .weyl import CosetSystem, SchubertIndex, enumerate_cosets
from .quiver import QuiverContext

_SPACE_RE = re.compile(r"^([A-Ga-g])(\d+)/P(\d+)$")


def parse_space_label(label: str) -> tuple[str, int, int]:
    m = _SPACE_RE.match(label.strip())
    if not m:
        raise UnsupportedSpaceError(
            f"cannot parse space {label!r}; expected e.g. 'E6/P1' or 'A4/P2'"
        )
    return m.group(1).upper(), int(m.group(2)), int(m.group(3))


class Space:
    def __init__(self, type_label: str, rank: int, node: int):
        self.rs = build_root_system(type_label, rank)
        self.marked: MarkedSpace = build_marked_space(self.rs, node)
        self.cosets: CosetSystem = enumerate_cosets(self.marked)
        self.quivers = QuiverContext(self.marked, self.cosets)
        self._naming = None
        self._classical = None
        self._quantum = None
        self._seed_cache = None

    # --- shorthands --------------------------------------------------------
    @property
    def name(self) -> str:
        return self.marked.name

    @property
    def dimension(self) -> int:
        return self.marked.dimension

    @property
    def index_c1(self) -> int:
        return self.marked.index_c1

    @property
    def d_max(self) -> int:
        return self.marked.d_max

    def codim(self, w) -> int:
        return self.cosets.codim(w)

    def class_of_codim(self, c: int) -> list[SchubertIndex]:
        return [self.cosets.indices[i] for i in self.cosets.by_length[self.dimension - c]]

    @property
    def h_class(self) -> SchubertIndex:
        (h,) = self.class_of_codim(1) if self.dimension >= 1 else (self.cosets.w_x,)
        return h

    # --- lazy heavyweight structures ---------------------------------------
    @property
    def naming(self):
        if self._naming is None:
            from .naming import build_naming

            self._naming = build_naming(self)
        return self._naming

    def classical_table(self):
        if self._classical is None:
            from .schubert_algebra import complete_table
            from .naming import default_seeds

            seeds = default_seeds(self)
            if self._classical is None:  # naming may have cached its table
                self._classical = complete_table(self, seeds)
        return self._classical

    def quantum_table(self):
        if self._quantum is None:
            from .quantum import complete_quantum_table

            self._quantum = complete_quantum_table(self, self.classical_table())
        return self._quantum


@lru_cache(maxsize=None)
def space(label: str) -> Space:
    type_label, rank, node = parse_space_label(label)
    return Space(type_label, rank, node)
