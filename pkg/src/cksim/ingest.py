"""Edge-list ingestion for real-network spectra.

Accepts the common whitespace-separated "u v" text format with '#'
comment lines (as distributed by SNAP and similar archives). Edges are
undirected; self-loops are dropped, duplicates in either orientation are
merged, and ids are remapped onto a dense range.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graphs import SimpleGraph


class EdgeListError(ValueError):
    """Malformed edge-list line (strict mode)."""


@dataclass(frozen=True)
class IngestProvenance:
    source: str
    lines_total: int
    parsed: int
    comments: int
    blank: int
    malformed: int
    self_loops: int
    duplicates: int


@dataclass(frozen=True)
class EdgeListGraph:
    """Parsed edge list with dense vertex ids and parse provenance.

    vertex_ids maps dense id -> original id; only vertices on kept edges
    are included.
    """

    vertex_ids: np.ndarray
    edges_u: np.ndarray
    edges_v: np.ndarray
    provenance: IngestProvenance

    @property
    def n(self) -> int:
        return len(self.vertex_ids)

    @property
    def edge_count(self) -> int:
        return len(self.edges_u)

    def to_simple_graph(self) -> SimpleGraph:
        return SimpleGraph.from_edges(self.n, self.edges_u, self.edges_v)


def ingest_edge_list(path, strict: bool = True) -> EdgeListGraph:
    """Parse a whitespace-separated undirected edge list.

    In strict mode a malformed line raises EdgeListError with its line
    number; in lenient mode it is counted and skipped.
    """
    path = Path(path)
    lines_total = comments = blank = malformed = self_loops = parsed = 0
    raw_u: list[int] = []
    raw_v: list[int] = []
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            lines_total += 1
            stripped = line.strip()
            if not stripped:
                blank += 1
                continue
            if stripped.startswith("#"):
                comments += 1
                continue
            parts = stripped.split()
            try:
                if len(parts) != 2:
                    raise ValueError(f"expected 2 fields, got {len(parts)}")
                u, v = int(parts[0]), int(parts[1])
            except ValueError as exc:
                if strict:
                    raise EdgeListError(f"{path}:{lineno}: {exc}") from None
                malformed += 1
                continue
            parsed += 1
            if u == v:
                self_loops += 1
                continue
            raw_u.append(u)
            raw_v.append(v)

    if raw_u:
        u = np.array(raw_u, dtype=np.int64)
        v = np.array(raw_v, dtype=np.int64)
        ids, dense = np.unique(np.concatenate([u, v]), return_inverse=True)
        du, dv = dense[: len(u)], dense[len(u):]
        lo = np.minimum(du, dv)
        hi = np.maximum(du, dv)
        keys = lo * np.int64(len(ids)) + hi
        uniq = np.unique(keys)
        duplicates = len(keys) - len(uniq)
        eu, ev = uniq // len(ids), uniq % len(ids)
    else:
        ids = np.empty(0, dtype=np.int64)
        eu = ev = np.empty(0, dtype=np.int64)
        duplicates = 0

    return EdgeListGraph(
        vertex_ids=ids,
        edges_u=eu,
        edges_v=ev,
        provenance=IngestProvenance(
            source=str(path),
            lines_total=lines_total,
            parsed=parsed,
            comments=comments,
            blank=blank,
            malformed=malformed,
            self_loops=self_loops,
            duplicates=duplicates,
        ),
    )
