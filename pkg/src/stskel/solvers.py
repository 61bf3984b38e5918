"""Exact solvers for the spanning tree problem and its constrained variants.

Variants: ``mst``, ``lcmst`` (at most k leaves), ``rlsmst`` (at most k
leaves inside U), ``svmst`` (all leaves inside U) and ``dcmst`` (degree at
most k).

Two independent routes are provided: exhaustive enumeration of K_n's
spanning trees, and branch-and-bound over the integer programming model
with exact LP relaxations.

The leaf variants use indicator variables y_v. The link row
``sum_{e in delta(v)} x_e + (|delta(v)|-1) y_v <= |delta(v)|`` only says
that y_v = 1 forces deg(v) <= 1; it does not force y_v = 1 at a leaf, so
counting rows on y would not bound the leaves. Each vertex therefore also
gets ``sum_{e in delta(v)} x_e + y_v >= 2``, which makes y_v = 1 exactly at
the leaves of an integral tree. ``build_model(..., repair=False)`` omits
these rows; :func:`model_feasible_set_check` shows the difference.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from . import lp
from .errors import ResourceLimitError
from .graph import (
    DEFAULT_MAX_N,
    VARIANTS,
    GraphInstance,
    SpanningTree,
    constraint_for,
    edge_pair,
    enumerate_spanning_trees,
    filter_family,
    incident_edges,
    is_spanning_tree,
    num_edges,
)
from .skeleton import char_vector, subtour_sets

LEAF_VARIANTS = ("lcmst", "rlsmst", "svmst")


@dataclass
class ModelRow:
    coeffs: dict[int, int]
    rhs: int
    kind: str  # "==" or "<="
    label: str


@dataclass
class IPModel:
    """Integer program over x (one per edge) and, for leaf variants, y (one per vertex).

    Variable j < num_x is the edge with canonical index j; variable
    num_x + v is y_v. Every variable is binary.
    """

    variant: str
    n: int
    k: Optional[int]
    subset_u: Optional[frozenset[int]]
    num_x: int
    num_y: int
    rows: list[ModelRow] = field(default_factory=list)
    repaired: bool = True

    @property
    def num_vars(self) -> int:
        return self.num_x + self.num_y

    @property
    def lower_bounds(self) -> list[int]:
        return [0] * self.num_vars

    @property
    def upper_bounds(self) -> list[int]:
        return [1] * self.num_vars

    @property
    def integer(self) -> list[bool]:
        return [True] * self.num_vars

    def count(self, label: str) -> int:
        return sum(1 for r in self.rows if r.label == label)

    def y(self, v: int) -> int:
        return self.num_x + v

    def satisfied(self, values) -> bool:
        for r in self.rows:
            lhs = sum(c * values[j] for j, c in r.coeffs.items())
            if (r.kind == "==" and lhs != r.rhs) or (r.kind == "<=" and lhs > r.rhs):
                return False
        return all(0 <= v <= 1 for v in values)

    def relaxation(self, weights, fixed: dict[int, int] | None = None) -> Optional[lp.LPProblem]:
        """LP relaxation with the variables in ``fixed`` substituted out.

        Returns None when a row left without free variables is violated.
        The LP's variables are the free model variables, in model order.
        """
        fixed = fixed or {}
        free = [j for j in range(self.num_vars) if j not in fixed]
        pos = {j: i for i, j in enumerate(free)}
        eqs, les = [], []
        for r in self.rows:
            rhs = r.rhs - sum(c * fixed[j] for j, c in r.coeffs.items() if j in fixed)
            dense = [0] * len(free)
            empty = True
            for j, c in r.coeffs.items():
                if j in pos:
                    dense[pos[j]] = c
                    empty = False
            if empty:
                if (r.kind == "==" and rhs != 0) or (r.kind == "<=" and rhs < 0):
                    return None
                continue
            (eqs if r.kind == "==" else les).append((dense, rhs))
        objective = [weights[j] if j < self.num_x else 0 for j in free]
        return lp.LPProblem(len(free), equalities=eqs, inequalities=les,
                            lower_bounds=[0] * len(free), upper_bounds=[1] * len(free),
                            objective=objective)


def _check_variant(variant: str) -> str:
    v = variant.lower()
    if v not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    return v


def build_model(g: GraphInstance | int, variant: str, k: int | None = None,
                subset_u: Iterable[int] | None = None, repair: bool = True) -> IPModel:
    n = g if isinstance(g, int) else g.n
    if subset_u is None and not isinstance(g, int):
        subset_u = g.subset_u
    variant = _check_variant(variant)
    constraint_for(variant, n, k, subset_u)  # argument validation
    u = None if subset_u is None else frozenset(subset_u)
    d = num_edges(n)
    leafy = variant in LEAF_VARIANTS
    model = IPModel(variant, n, k, u, d, n if leafy else 0, repaired=repair)
    rows = model.rows
    rows.append(ModelRow({e: 1 for e in range(d)}, n - 1, "==", "cardinality"))
    for s, inside in subtour_sets(n):
        rows.append(ModelRow({e: 1 for e in inside}, len(s) - 1, "<=", "subset"))
    if leafy:
        for v in range(n):
            delta = incident_edges(v, n)
            coeffs = {e: 1 for e in delta}
            coeffs[model.y(v)] = len(delta) - 1
            rows.append(ModelRow(coeffs, len(delta), "<=", "leaf-link"))
        if repair:
            for v in range(n):
                # -(sum x) - y <= -2
                coeffs = {e: -1 for e in incident_edges(v, n)}
                coeffs[model.y(v)] = -1
                rows.append(ModelRow(coeffs, -2, "<=", "leaf-lower"))
        if variant == "lcmst":
            rows.append(ModelRow({model.y(v): 1 for v in range(n)}, k, "<=", "leaf-count"))
        elif variant == "rlsmst":
            rows.append(ModelRow({model.y(v): 1 for v in sorted(u)}, k, "<=", "leaf-count"))
        else:
            for v in range(n):
                if v not in u:
                    rows.append(ModelRow({model.y(v): 1}, 0, "==", "leaf-forbidden"))
    elif variant == "dcmst":
        for v in range(n):
            rows.append(ModelRow({e: 1 for e in incident_edges(v, n)}, k, "<=", "degree"))
    return model


# ---------------------------------------------------------------------------
# solutions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Solution:
    variant: str
    tree: SpanningTree
    weight: Fraction
    node_count: int
    method: str
    k: Optional[int] = None

    @property
    def status(self) -> str:
        return "optimal"

    def to_dict(self) -> dict:
        return {
            "status": "optimal",
            "variant": self.variant,
            "n": self.tree.n,
            "k": self.k,
            "weight": _fmt(self.weight),
            "edges": [list(p) for p in self.tree.pairs],
            "method": self.method,
            "nodes_explored": self.node_count,
        }


@dataclass(frozen=True)
class InfeasibleProblem:
    variant: str
    n: int
    method: str
    node_count: int = 0
    k: Optional[int] = None

    @property
    def status(self) -> str:
        return "infeasible"

    def to_dict(self) -> dict:
        return {"status": "infeasible", "variant": self.variant, "n": self.n, "k": self.k,
                "weight": None, "edges": None, "method": self.method,
                "nodes_explored": self.node_count}


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def solution_json(sol: Solution | InfeasibleProblem, **extra) -> str:
    doc = sol.to_dict()
    doc.update(extra)
    return json.dumps(doc, indent=1)


def solve_enumerate(g: GraphInstance, variant: str, k: int | None = None,
                    subset_u: Iterable[int] | None = None,
                    max_n: int = DEFAULT_MAX_N) -> Solution | InfeasibleProblem:
    """Cheapest feasible tree by exhaustive search; ties go to the smallest edge list."""
    variant = _check_variant(variant)
    u = g.subset_u if subset_u is None else frozenset(subset_u)
    constraint = constraint_for(variant, g.n, k, u)
    trees = enumerate_spanning_trees(g.n, max_n=max_n)
    family = filter_family(trees, constraint, n=g.n)
    if not family:
        return InfeasibleProblem(variant, g.n, "enumerate", len(trees), k)
    best, best_w = None, None
    for t in family:
        w = g.tree_weight(t)
        if best_w is None or w < best_w:
            best, best_w = t, w
    return Solution(variant, best, best_w, len(trees), "enumerate", k)


def _most_fractional(values) -> int:
    best, best_gap = -1, None
    half = Fraction(1, 2)
    for j, v in enumerate(values):
        if v.denominator != 1:
            gap = abs(v - half)
            if best_gap is None or gap < best_gap:
                best, best_gap = j, gap
    return best


def solve_bnb(g: GraphInstance, variant: str, k: int | None = None,
              subset_u: Iterable[int] | None = None,
              max_nodes: int = 100_000) -> Solution | InfeasibleProblem:
    """Depth-first branch-and-bound on the edge variables.

    Each node solves the exact LP relaxation with its fixings substituted.
    The most fractional edge variable (ties: lowest index) is branched on;
    both children are bounded immediately and the one with the better bound
    is explored first (the x=1 child on ties).
    """
    variant = _check_variant(variant)
    u = g.subset_u if subset_u is None else frozenset(subset_u)
    model = build_model(g, variant, k, u)
    weights = g.weights
    nx = model.num_x

    def bound(fixed: dict[int, int]):
        prob = model.relaxation(weights, fixed)
        if prob is None:
            return None
        res = lp.optimize(prob)
        if not isinstance(res, lp.Optimal):
            return None
        fixed_w = sum((weights[j] for j, v in fixed.items() if j < nx and v), Fraction(0))
        values = {}
        free = [j for j in range(model.num_vars) if j not in fixed]
        for j, val in zip(free, res.point):
            values[j] = val
        for j, v in fixed.items():
            values[j] = Fraction(v)
        return res.value + fixed_w, [values[j] for j in range(nx)]

    nodes = 0
    best_tree: Optional[SpanningTree] = None
    best_w: Optional[Fraction] = None
    root = bound({})
    nodes += 1
    stack = [] if root is None else [({}, root)]
    while stack:
        fixed, (value, xs) = stack.pop()
        if best_w is not None and value >= best_w:
            continue
        j = _most_fractional(xs)
        if j < 0:
            edges = tuple(e for e, v in enumerate(xs) if v == 1)
            if not is_spanning_tree(edges, g.n):
                raise AssertionError("integral relaxation point is not a spanning tree")
            best_tree, best_w = SpanningTree(edges, g.n), value
            continue
        if nodes >= max_nodes:
            raise ResourceLimitError(f"branch-and-bound exceeded max_nodes={max_nodes}")
        children = []
        for val in (1, 0):
            child = dict(fixed)
            child[j] = val
            res = bound(child)
            nodes += 1
            if res is not None and (best_w is None or res[0] < best_w):
                children.append((child, res))
        # stable sort keeps the x=1 child first on ties; push the better one last
        children.sort(key=lambda c: c[1][0])
        stack.extend(reversed(children))
    if best_tree is None:
        return InfeasibleProblem(variant, g.n, "bnb", nodes, k)
    constraint = constraint_for(variant, g.n, k, u)
    if constraint is not None and not constraint(best_tree):
        raise AssertionError("branch-and-bound returned a tree violating the variant")
    return Solution(variant, best_tree, g.tree_weight(best_tree), nodes, "bnb", k)


def solve(g: GraphInstance, variant: str, k: int | None = None,
          subset_u: Iterable[int] | None = None, method: str = "bnb"):
    if method == "enumerate":
        return solve_enumerate(g, variant, k, subset_u)
    if method == "bnb":
        return solve_bnb(g, variant, k, subset_u)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# model validation
# ---------------------------------------------------------------------------

@dataclass
class FeasibleSetReport:
    variant: str
    n: int
    k: Optional[int]
    subset_u: Optional[list[int]]
    repaired: bool
    assignments_checked: int
    model_trees: int
    expected_trees: int
    extra: list[str]
    missing: list[str]

    @property
    def ok(self) -> bool:
        return not self.extra and not self.missing

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["ok"] = self.ok
        return d


def model_feasible_set_check(g: GraphInstance | int, variant: str, k: int | None = None,
                             subset_u: Iterable[int] | None = None, repair: bool = True,
                             max_n: int = 6) -> FeasibleSetReport:
    """Compare the 0/1 solutions of the model (projected to x) with the variant's trees.

    Assignments violating the cardinality row cannot be feasible, so x is
    drawn from the 0/1 vectors with exactly n-1 ones; every y in {0,1}^n is
    tried for each of them and all model rows are checked.
    """
    n = g if isinstance(g, int) else g.n
    if n > max_n:
        raise ValueError(f"feasible set check is limited to n <= {max_n}")
    if subset_u is None and not isinstance(g, int):
        subset_u = g.subset_u
    model = build_model(n, variant, k, subset_u, repair=repair)
    d = model.num_x
    ys = list(itertools.product((0, 1), repeat=model.num_y))
    projected = set()
    checked = 0
    for ones in itertools.combinations(range(d), n - 1):
        x = [0] * d
        for e in ones:
            x[e] = 1
        for y in ys:
            checked += 1
            if model.satisfied(x + list(y)):
                projected.add(tuple(x))
                break
    constraint = constraint_for(model.variant, n, k, subset_u)
    expected = {char_vector(t) for t in filter_family(enumerate_spanning_trees(n), constraint, n=n)}

    def label(x):
        return ",".join(f"{a}{b}" for a, b in (edge_pair(e, n) for e, v in enumerate(x) if v))

    return FeasibleSetReport(
        model.variant, n, k, None if subset_u is None else sorted(subset_u), repair, checked,
        len(projected), len(expected),
        sorted(label(x) for x in projected - expected),
        sorted(label(x) for x in expected - projected),
    )
