"""Linear system over GF(3) whose {1, 2}-solutions are orientations.

Each non-loop edge ``e = (u, v)`` gets a variable ``x_e`` in {1, 2}: 1 means
``u -> v`` and 2 means ``v -> u``. The excess of ``w`` is then congruent to
``sum(x_e for e leaving u = w) - sum(x_e for e entering v = w)``, so an
orientation with prescribed excess classes is a solution of ``A x = t`` with
no zero coordinate.
"""

from __future__ import annotations

import logging

import numpy as np

from facetint.domain.graph import Multigraph
from facetint.domain.orientation import ExcessTarget, Orientation

logger = logging.getLogger(__name__)

_INVERSE = (0, 1, 2)  # multiplicative inverse modulo 3


def _rref_mod3(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, list[int]]:
    """Row-reduce ``a`` modulo 3, returning (reduced, transform, pivot columns).

    ``transform @ a`` equals ``reduced`` modulo 3.
    """
    m = a.copy() % 3
    rows, cols = m.shape
    t = np.eye(rows, dtype=np.int64)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.nonzero(m[r:, c])[0]
        if nonzero.size == 0:
            continue
        p = r + int(nonzero[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
            t[[r, p]] = t[[p, r]]
        inv = _INVERSE[int(m[r, c])]
        m[r] = (m[r] * inv) % 3
        t[r] = (t[r] * inv) % 3
        for i in range(rows):
            if i != r and m[i, c]:
                factor = int(m[i, c])
                m[i] = (m[i] - factor * m[r]) % 3
                t[i] = (t[i] - factor * t[r]) % 3
        pivots.append(c)
        r += 1
    return m, t, pivots


class Gf3System:
    """Reduced system for one graph, reusable across excess targets."""

    def __init__(self, graph: Multigraph) -> None:
        self.graph = graph
        self.edge_ids = [e.id for e in graph.edges if not e.is_loop]
        self._row = {v: i for i, v in enumerate(graph.vertices)}
        a = np.zeros((graph.order, len(self.edge_ids)), dtype=np.int64)
        for j, eid in enumerate(self.edge_ids):
            e = graph.edge(eid)
            a[self._row[e.u], j] += 1
            a[self._row[e.v], j] -= 1
        self.reduced, self.transform, self.pivots = _rref_mod3(a)
        self.rank = len(self.pivots)
        pivot_set = set(self.pivots)
        free = [j for j in range(len(self.edge_ids)) if j not in pivot_set]
        weight = {j: int(np.count_nonzero(self.reduced[: self.rank, j])) for j in free}
        self.free = sorted(free, key=lambda j: (-weight[j], self.edge_ids[j]))
        self._rows_of = {
            j: [r for r in range(self.rank) if self.reduced[r, j]] for j in self.free
        }
        self._free_in_row = [
            [j for j in self.free if self.reduced[r, j]] for r in range(self.rank)
        ]
        self.nodes = 0

    def solve(self, target: ExcessTarget | None = None) -> dict[int, int] | None:
        """Values in {1, 2} for every non-loop edge, or None when none exist."""
        target = target or ExcessTarget.zero()
        b = np.array([target.value(v) for v in self.graph.vertices], dtype=np.int64)
        c = (self.transform @ b) % 3 if self.graph.order else b
        if np.any(c[self.rank :]):
            return None
        search = _Backtrack(self, [int(x) for x in c[: self.rank]])
        found = search.run()
        self.nodes += search.nodes
        logger.debug(
            "gf3 solve: %d edges, rank %d, %d nodes, solved=%s",
            len(self.edge_ids),
            self.rank,
            search.nodes,
            found is not None,
        )
        return found

    def orientation(self, target: ExcessTarget | None = None) -> Orientation | None:
        values = self.solve(target)
        if values is None:
            return None
        return orientation_from_values(self.graph, values)


def orientation_from_values(graph: Multigraph, values: dict[int, int]) -> Orientation:
    """x=1 keeps the stored direction, x=2 reverses it; loops stay forward."""
    return Orientation(graph, {e.id: values.get(e.id, 1) == 1 for e in graph.edges})


class _Backtrack:
    """Search over free variables with unit propagation on the pivot rows."""

    def __init__(self, system: Gf3System, rhs: list[int]) -> None:
        self.s = system
        self.rhs = rhs
        self.partial = [0] * system.rank
        self.remaining = [len(cols) for cols in system._free_in_row]
        self.domain: dict[int, set[int]] = {j: {1, 2} for j in system.free}
        self.value: dict[int, int] = {}
        self.nodes = 0

    def run(self) -> dict[int, int] | None:
        for r in range(self.s.rank):
            if self.remaining[r] == 0 and self.rhs[r] == 0:
                return None
            if self.remaining[r] == 1 and not self._restrict(r, []):
                return None
        if not self._assign(0):
            return None
        values = dict(self.value)
        red = self.s.reduced
        for r, pc in enumerate(self.s.pivots):
            total = self.rhs[r] - sum(int(red[r, j]) * values[j] for j in self.s._free_in_row[r])
            values[pc] = total % 3
        return {self.s.edge_ids[j]: x for j, x in values.items()}

    def _restrict(self, r: int, log: list[tuple[int, int]]) -> bool:
        """Forbid the value of the last open variable of row ``r`` that zeroes its pivot."""
        open_cols = [j for j in self.s._free_in_row[r] if j not in self.value]
        j = open_cols[0]
        coef = int(self.s.reduced[r, j])
        forbidden = ((self.rhs[r] - self.partial[r]) * _INVERSE[coef]) % 3
        if forbidden in self.domain[j]:
            self.domain[j].discard(forbidden)
            log.append((j, forbidden))
        return bool(self.domain[j])

    def _assign(self, idx: int) -> bool:
        if idx == len(self.s.free):
            return True
        j = self.s.free[idx]
        for x in sorted(self.domain[j]):
            self.nodes += 1
            log: list[tuple[int, int]] = []
            self.value[j] = x
            ok = True
            for r in self.s._rows_of[j]:
                self.partial[r] = (self.partial[r] + int(self.s.reduced[r, j]) * x) % 3
                self.remaining[r] -= 1
            for r in self.s._rows_of[j]:
                if self.remaining[r] == 0 and (self.rhs[r] - self.partial[r]) % 3 == 0:
                    ok = False
                    break
                if self.remaining[r] == 1 and not self._restrict(r, log):
                    ok = False
                    break
            if ok and self._assign(idx + 1):
                return True
            for r in self.s._rows_of[j]:
                self.partial[r] = (self.partial[r] - int(self.s.reduced[r, j]) * x) % 3
                self.remaining[r] += 1
            for col, val in reversed(log):
                self.domain[col].add(val)
            del self.value[j]
        return False
