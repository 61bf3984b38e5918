"""Complete graphs, canonical edge indexing and spanning-tree enumeration.

Edges of K_n are indexed in the order (0,1), (0,2), ..., (0,n-1), (1,2), ...
so that the edge (i, j) with i < j has index ``i*n - i*(i+1)/2 + (j-i-1)``.
Every vector in the package uses this coordinate order.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ResourceLimitError

DEFAULT_MAX_N = 8
VARIANTS = ("mst", "lcmst", "rlsmst", "svmst", "dcmst")


def num_edges(n: int) -> int:
    return n * (n - 1) // 2


def edge_index(i: int, j: int, n: int) -> int:
    if i > j:
        i, j = j, i
    if i == j or i < 0 or j >= n:
        raise ValueError(f"({i}, {j}) is not an edge of K_{n}")
    return i * n - i * (i + 1) // 2 + (j - i - 1)


@lru_cache(maxsize=None)
def edge_table(n: int) -> tuple[tuple[int, int], ...]:
    """All edges of K_n as (i, j) pairs, position = edge index."""
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


def edge_pair(idx: int, n: int) -> tuple[int, int]:
    table = edge_table(n)
    if not 0 <= idx < len(table):
        raise ValueError(f"edge index {idx} out of range for K_{n}")
    return table[idx]


def incident_edges(v: int, n: int) -> list[int]:
    """Indices of the edges of K_n meeting vertex v (the set delta_v)."""
    return [edge_index(v, u, n) for u in range(n) if u != v]


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GraphInstance:
    """Complete graph K_n with exact rational edge weights.

    ``weights[idx]`` is the weight of the edge with canonical index ``idx``.
    ``subset_u`` is the distinguished vertex set used by the RLSMST and
    SVMST variants.
    """

    n: int
    weights: tuple[Fraction, ...]
    subset_u: frozenset[int] | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("a graph instance needs at least 2 vertices")
        if len(self.weights) != num_edges(self.n):
            raise ValueError(
                f"K_{self.n} has {num_edges(self.n)} edges, "
                f"got {len(self.weights)} weights")
        object.__setattr__(
            self, "weights", tuple(Fraction(w) for w in self.weights))
        if self.subset_u is not None:
            u = frozenset(self.subset_u)
            if any(not 0 <= v < self.n for v in u):
                raise ValueError(f"subset {sorted(u)} is not inside 0..{self.n - 1}")
            object.__setattr__(self, "subset_u", u)

    @property
    def d(self) -> int:
        return num_edges(self.n)

    @classmethod
    def unit(cls, n: int, subset_u: Iterable[int] | None = None) -> GraphInstance:
        u = None if subset_u is None else frozenset(subset_u)
        return cls(n, (Fraction(1),) * num_edges(n), u)

    @classmethod
    def from_pairs(cls, n: int, weights: dict[tuple[int, int], object],
                   default=None, subset_u=None) -> GraphInstance:
        w: list[Fraction | None] = [None] * num_edges(n)
        for (i, j), val in weights.items():
            w[edge_index(i, j, n)] = Fraction(val)
        if default is not None:
            w = [Fraction(default) if x is None else x for x in w]
        if any(x is None for x in w):
            raise ValueError("every edge of the complete graph needs a weight")
        u = None if subset_u is None else frozenset(subset_u)
        return cls(n, tuple(w), u)

    def tree_weight(self, tree: SpanningTree) -> Fraction:
        return sum((self.weights[e] for e in tree.edges), Fraction(0))


_RATIONAL_RE = re.compile(r"^\s*-?\d+\s*(/\s*\d+\s*)?$")


def _parse_weight(raw) -> Fraction:
    if isinstance(raw, bool):
        raise ValueError(f"invalid weight {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str) and _RATIONAL_RE.match(raw):
        return Fraction(raw.replace(" ", ""))
    raise ValueError(f"invalid weight {raw!r}: expected an integer or 'p/q'")


def instance_from_json(obj: dict) -> GraphInstance:
    """Build an instance from the JSON document layout.

    ``{"n": 4, "weights": [[0, 1, "3/2"], ...], "subset": [0, 1]}``.
    """
    try:
        n = obj["n"]
        rows = obj["weights"]
    except (KeyError, TypeError) as exc:
        raise ValueError("instance needs 'n' and 'weights'") from exc
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise ValueError(f"invalid vertex count {n!r}")
    w: list[Fraction | None] = [None] * num_edges(n)
    for row in rows:
        if not isinstance(row, (list, tuple)) or len(row) != 3:
            raise ValueError(f"weight entry {row!r} is not [i, j, w]")
        i, j, raw = row
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (i, j)):
            raise ValueError(f"weight entry {row!r} has non-integer endpoints")
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
        idx = edge_index(i, j, n)
        if w[idx] is not None:
            raise ValueError(f"duplicate weight for edge ({min(i, j)}, {max(i, j)})")
        w[idx] = _parse_weight(raw)
    missing = [edge_pair(e, n) for e, x in enumerate(w) if x is None]
    if missing:
        raise ValueError(f"missing weights for edges {missing[:5]}")
    subset = obj.get("subset")
    if subset is not None:
        if len(set(subset)) != len(subset):
            raise ValueError("duplicate vertex in subset")
    return GraphInstance(n, tuple(w), None if subset is None else frozenset(subset))


def instance_to_json(g: GraphInstance) -> dict:
    out: dict = {
        "n": g.n,
        "weights": [[i, j, _fmt(g.weights[e])] for e, (i, j) in enumerate(edge_table(g.n))],
    }
    if g.subset_u is not None:
        out["subset"] = sorted(g.subset_u)
    return out


def load_instance(path: str | Path) -> GraphInstance:
    with open(path, encoding="utf-8") as fh:
        return instance_from_json(json.load(fh))


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def random_instance(n: int, seed: int, subset_u: Iterable[int] | None = None) -> GraphInstance:
    """Weights p/q with p in [1, 100] and q in [1, 10], drawn from ``seed``."""
    rng = random.Random(seed)
    w = tuple(Fraction(rng.randint(1, 100), rng.randint(1, 10)) for _ in range(num_edges(n)))
    return GraphInstance(n, w, None if subset_u is None else frozenset(subset_u))


# ---------------------------------------------------------------------------
# Trees
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class SpanningTree:
    """Spanning tree of K_n stored as its sorted tuple of edge indices."""

    edges: tuple[int, ...]
    n: int = field(compare=False)

    def __post_init__(self):
        edges = tuple(sorted(self.edges))
        object.__setattr__(self, "edges", edges)
        if not is_spanning_tree(edges, self.n):
            raise ValueError(f"edges {edges} do not form a spanning tree of K_{self.n}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], n: int) -> SpanningTree:
        return cls(tuple(edge_index(i, j, n) for i, j in pairs), n)

    @classmethod
    def _trusted(cls, edges: tuple[int, ...], n: int) -> SpanningTree:
        t = object.__new__(cls)
        object.__setattr__(t, "edges", edges)
        object.__setattr__(t, "n", n)
        return t

    @property
    def pairs(self) -> list[tuple[int, int]]:
        table = edge_table(self.n)
        return [table[e] for e in self.edges]

    @cached_property
    def mask(self) -> int:
        m = 0
        for e in self.edges:
            m |= 1 << e
        return m

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for i, j in self.pairs:
            deg[i] += 1
            deg[j] += 1
        return tuple(deg)

    def leaves(self) -> list[int]:
        return [v for v, dv in enumerate(self.degrees) if dv == 1]

    def label(self) -> str:
        """Compact label such as ``01,12,23`` (vertex ids below 10 only)."""
        sep = "" if self.n <= 10 else "-"
        return ",".join(f"{i}{sep}{j}" for i, j in self.pairs)


def is_spanning_tree(edges: Sequence[int], n: int) -> bool:
    if len(edges) != n - 1 or len(set(edges)) != len(edges):
        return False
    table = edge_table(n)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in edges:
        if not 0 <= e < len(table):
            return False
        a, b = (find(v) for v in table[e])
        if a == b:
            return False
        parent[a] = b
    return True


def leaf_count(t: SpanningTree, n: int | None = None) -> int:
    degrees = t.degrees if n is None or n == t.n else _degrees(t.edges, n)
    return sum(1 for dv in degrees if dv == 1)


def _degrees(edges, n):
    deg = [0] * n
    for i, j in (edge_pair(e, n) for e in edges):
        deg[i] += 1
        deg[j] += 1
    return deg


@lru_cache(maxsize=4)
def _all_trees(n: int) -> tuple[SpanningTree, ...]:
    table = edge_table(n)
    d = len(table)
    need = n - 1
    out: list[SpanningTree] = []
    chosen: list[int] = []

    def extend(start: int, comp: list[int]) -> None:
        left = need - len(chosen)
        if left == 0:
            out.append(SpanningTree._trusted(tuple(chosen), n))
            return
        for e in range(start, d - left + 1):
            i, j = table[e]
            ci, cj = comp[i], comp[j]
            if ci == cj:
                continue
            chosen.append(e)
            extend(e + 1, [ci if c == cj else c for c in comp])
            chosen.pop()

    if n == 1:
        return (SpanningTree._trusted((), 1),)
    extend(0, list(range(n)))
    return tuple(out)


def enumerate_spanning_trees(g: GraphInstance | int, max_n: int = DEFAULT_MAX_N) -> list[SpanningTree]:
    """All spanning trees of K_n in lexicographic order of their edge lists.

    Accepts either an instance or a bare vertex count. Only n matters: the
    graph is complete.
    """
    n = g if isinstance(g, int) else g.n
    if n < 2:
        raise ValueError("need n >= 2")
    if n > max_n:
        raise ResourceLimitError(
            f"n={n} exceeds the enumeration cap max_n={max_n}")
    return list(_all_trees(n))


def count_spanning_trees(g: GraphInstance | int) -> int:
    """Matrix-tree count: determinant of a reduced Laplacian of K_n."""
    n = g if isinstance(g, int) else g.n
    if n < 2:
        raise ValueError("need n >= 2")
    size = n - 1
    # Laplacian of K_n with row/column 0 deleted.
    m = [[Fraction(n - 1) if r == c else Fraction(-1) for c in range(size)]
         for r in range(size)]
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if m[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, size):
            f = m[r][col] / m[col][col]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return int(det)


# ---------------------------------------------------------------------------
# Constrained families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LeafMax:
    """At most k leaves (LCMST)."""
    k: int

    def validate(self, n: int) -> None:
        if not 1 <= self.k < n:
            raise ValueError(f"LeafMax needs 1 <= k < n, got k={self.k}, n={n}")

    def __call__(self, t: SpanningTree) -> bool:
        return leaf_count(t) <= self.k


@dataclass(frozen=True)
class LeafMaxInSubset:
    """At most k leaves inside U (RLSMST)."""
    subset: frozenset[int]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "subset", frozenset(self.subset))

    def validate(self, n: int) -> None:
        _check_subset(self.subset, n)
        if not 1 <= self.k < len(self.subset):
            raise ValueError(
                f"LeafMaxInSubset needs 1 <= k < |U|, got k={self.k}, |U|={len(self.subset)}")

    def __call__(self, t: SpanningTree) -> bool:
        return sum(1 for v in t.leaves() if v in self.subset) <= self.k


@dataclass(frozen=True)
class LeavesOnlyIn:
    """Every leaf belongs to U (SVMST)."""
    subset: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "subset", frozenset(self.subset))

    def validate(self, n: int) -> None:
        _check_subset(self.subset, n)

    def __call__(self, t: SpanningTree) -> bool:
        return all(v in self.subset for v in t.leaves())


@dataclass(frozen=True)
class DegreeMax:
    """No vertex of degree above k (DCMST)."""
    k: int

    def validate(self, n: int) -> None:
        if not 1 <= self.k < n:
            raise ValueError(f"DegreeMax needs 1 <= k < n, got k={self.k}, n={n}")

    def __call__(self, t: SpanningTree) -> bool:
        return max(t.degrees) <= self.k


Constraint = LeafMax | LeafMaxInSubset | LeavesOnlyIn | DegreeMax


def _check_subset(subset, n):
    if any(not 0 <= v < n for v in subset):
        raise ValueError(f"subset {sorted(subset)} is not inside 0..{n - 1}")


def filter_family(trees: Sequence[SpanningTree], constraint: Constraint | None,
                  n: int | None = None) -> list[SpanningTree]:
    """Trees satisfying ``constraint``, input order preserved.

    ``constraint=None`` means the unconstrained MST family.
    """
    if n is None:
        if not trees:
            return []
        n = trees[0].n
    if constraint is None:
        return list(trees)
    constraint.validate(n)
    return [t for t in trees if constraint(t)]


def constraint_for(variant: str, n: int, k: int | None = None,
                   subset_u: Iterable[int] | None = None) -> Constraint | None:
    """Map a variant name to its combinatorial constraint (None for MST)."""
    variant = variant.lower()
    u = None if subset_u is None else frozenset(subset_u)
    if variant == "mst":
        return None
    if variant in ("lcmst", "dcmst"):
        if k is None:
            raise ValueError(f"{variant} needs k")
        c: Constraint = LeafMax(k) if variant == "lcmst" else DegreeMax(k)
    elif variant == "rlsmst":
        if k is None or u is None:
            raise ValueError("rlsmst needs k and U")
        c = LeafMaxInSubset(u, k)
    elif variant == "svmst":
        if u is None:
            raise ValueError("svmst needs U")
        c = LeavesOnlyIn(u)
    else:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    c.validate(n)
    return c
