"""Binary program for the minimum cut: model build, LP export, and solve.

The model has one binary variable per vertex (block membership) and one
per hyperedge (cut indicator); the objective is the total weight of cut
hyperedges.  Two rows keep both blocks non-empty, and per-edge indicator
rows force the edge variable up whenever two of its pins land in
different blocks.

The pure LP relaxation of this model is degenerate: spreading 1/n over
every vertex variable satisfies all rows with every indicator at zero, so
"relaxation" here means branch-and-bound over the LP relaxation with an
integrality tolerance, plus rounding of fractional points to feasible
bipartitions.  The reported value is always the recomputed cut of the
rounded bipartition, never the raw objective, so it is a sound upper
bound; with generous limits the search is exact up to the tolerance.
The solver targets residual instances of modest size (it keeps a dense
tableau); bigger models are meant to be exported and handed to an
external solver.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ._limits import Deadline
from .hgraph import Hypergraph, Weight, cut_value

__all__ = ["BipModel", "SolveLimits", "RelaxedSolution", "build_model", "export_lp", "solve_relaxed"]


@dataclass(frozen=True)
class BipModel:
    """Objective and constraint rows over n vertex + m edge binaries."""

    hypergraph: Hypergraph
    mode: str
    objective: tuple  # length n + m; weight on edge variables only
    rows: tuple  # (terms, sense, rhs) with terms ((var, coef), ...), sense '<=' or '>='

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def var_name(self, j: int) -> str:
        n = self.hypergraph.vertex_count
        return f"x_v{j}" if j < n else f"y_e{j - n}"


def build_model(h: Hypergraph, mode: str = "pairwise") -> BipModel:
    """Build the cut model; indicator rows cover ordered pin pairs, or two
    rows per non-representative pin in ``representative`` mode."""
    if h.vertex_count < 2:
        raise ValueError("model needs at least two vertices")
    if mode not in ("pairwise", "representative"):
        raise ValueError(f"unknown constraint mode: {mode!r}")
    n, m = h.vertex_count, h.edge_count

    objective = [0] * n + [h.weight(e) for e in range(m)]

    rows = [
        (tuple((v, 1) for v in range(n)), ">=", 1),
        (tuple((v, 1) for v in range(n)), "<=", n - 1),
    ]
    for eid in range(m):
        pins = h.pins(eid)
        ye = n + eid
        if mode == "pairwise":
            for u in pins:
                for v in pins:
                    if u != v:
                        rows.append((((ye, 1), (u, -1), (v, 1)), ">=", 0))
        else:
            rep = pins[0]
            for u in pins[1:]:
                rows.append((((ye, 1), (u, -1), (rep, 1)), ">=", 0))
                rows.append((((ye, 1), (rep, -1), (u, 1)), ">=", 0))
    return BipModel(hypergraph=h, mode=mode, objective=tuple(objective), rows=tuple(rows))


def _coef_str(value: Weight) -> str:
    if isinstance(value, float) and value.is_integer():
        value = int(value)
    return str(value)


def export_lp(model: BipModel, path) -> None:
    """Write the model in LP text format (minimize / subject to / binary)."""
    lines = ["Minimize"]
    terms = [
        f"{_coef_str(c)} {model.var_name(j)}"
        for j, c in enumerate(model.objective)
        if c != 0
    ]
    lines.append(" obj: " + (" + ".join(terms) if terms else "0"))
    lines.append("Subject To")
    for i, (row, sense, rhs) in enumerate(model.rows):
        parts = []
        for j, coef in row:
            name = model.var_name(j)
            if not parts:
                parts.append(f"{_coef_str(coef)} {name}" if coef >= 0 else f"- {_coef_str(-coef)} {name}")
            elif coef >= 0:
                parts.append(f"+ {_coef_str(coef)} {name}")
            else:
                parts.append(f"- {_coef_str(-coef)} {name}")
        lines.append(f" c{i}: " + " ".join(parts) + f" {sense} {_coef_str(rhs)}")
    lines.append("Binary")
    for j in range(model.num_vars):
        lines.append(f" {model.var_name(j)}")
    lines.append("End")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


# -- dense LP machinery ---------------------------------------------------------


def _dense_ub(model: BipModel) -> Tuple[np.ndarray, np.ndarray]:
    """Rows as A x <= b including the [0, 1] upper bounds."""
    nv = model.num_vars
    nr = model.num_rows
    a = np.zeros((nr + nv, nv))
    b = np.zeros(nr + nv)
    for i, (row, sense, rhs) in enumerate(model.rows):
        sign = 1.0 if sense == "<=" else -1.0
        for j, coef in row:
            a[i, j] = sign * coef
        b[i] = sign * rhs
    a[nr:, :] = np.eye(nv)
    b[nr:] = 1.0
    return a, b


def _pivot_loop(tableau, basis, cost, tol, ban_from=None):
    """Dantzig pricing with a Bland fallback; returns False when unbounded."""
    n_rows = tableau.shape[0]
    n_cols = tableau.shape[1] - 1
    switch = 50 * (n_rows + n_cols) + 200
    hard_limit = 40 * switch
    iteration = 0
    while True:
        iteration += 1
        if iteration > hard_limit:
            raise ArithmeticError("simplex did not converge")
        reduced = cost - cost[basis] @ tableau[:, :-1]
        if ban_from is not None:
            reduced[ban_from:] = np.inf
        candidates = np.flatnonzero(reduced < -tol)
        if candidates.size == 0:
            return True
        if iteration <= switch:
            enter = candidates[np.argmin(reduced[candidates])]
        else:
            enter = candidates[0]  # Bland: smallest index, terminates
        col = tableau[:, enter]
        positive = np.flatnonzero(col > tol)
        if positive.size == 0:
            return False
        ratios = tableau[positive, -1] / col[positive]
        theta = ratios.min()
        ties = positive[ratios <= theta + 1e-12]
        leave = ties[np.argmin(basis[ties])]
        pivot = tableau[leave, enter]
        tableau[leave] /= pivot
        factors = tableau[:, enter].copy()
        factors[leave] = 0.0
        tableau -= np.outer(factors, tableau[leave])
        basis[leave] = enter


def _solve_lp(c, a_ub, b_ub, tol=1e-9):
    """min c@x s.t. a_ub@x <= b_ub, x >= 0.  Returns (x, obj) or None."""
    n_rows, n_vars = a_ub.shape
    a = np.array(a_ub, dtype=float)
    b = np.array(b_ub, dtype=float)
    flip = b < 0
    a[flip] *= -1.0
    b[flip] *= -1.0
    art_rows = np.flatnonzero(flip)
    n_art = art_rows.size

    total = n_vars + n_rows + n_art
    tableau = np.zeros((n_rows, total + 1))
    tableau[:, :n_vars] = a
    slack_sign = np.where(flip, -1.0, 1.0)
    tableau[np.arange(n_rows), n_vars + np.arange(n_rows)] = slack_sign
    if n_art:
        tableau[art_rows, n_vars + n_rows + np.arange(n_art)] = 1.0
    tableau[:, -1] = b

    basis = n_vars + np.arange(n_rows)
    basis[art_rows] = n_vars + n_rows + np.arange(n_art)

    if n_art:
        phase1 = np.zeros(total)
        phase1[n_vars + n_rows :] = 1.0
        if not _pivot_loop(tableau, basis, phase1, tol):
            return None
        if phase1[basis] @ tableau[:, -1] > 1e-7:
            return None  # infeasible
        for i in np.flatnonzero(basis >= n_vars + n_rows):
            row = tableau[i, : n_vars + n_rows]
            nz = np.flatnonzero(np.abs(row) > tol)
            if nz.size:
                enter = nz[0]
                pivot = tableau[i, enter]
                tableau[i] /= pivot
                factors = tableau[:, enter].copy()
                factors[i] = 0.0
                tableau -= np.outer(factors, tableau[i])
                basis[i] = enter
            # else: redundant row; the artificial stays basic at zero

    phase2 = np.zeros(total)
    phase2[:n_vars] = c
    if not _pivot_loop(tableau, basis, phase2, tol, ban_from=n_vars + n_rows):
        return None  # unbounded; cannot happen with box bounds
    x = np.zeros(total)
    x[basis] = tableau[:, -1]
    solution = x[:n_vars]
    return solution, float(np.dot(c, solution))


def _node_lp(c, a, b, fixed):
    """LP with some binaries fixed; returns (full x, objective) or None."""
    n_vars = c.shape[0]
    if not fixed:
        res = _solve_lp(c, a, b)
        if res is None:
            return None
        return res
    free = [j for j in range(n_vars) if j not in fixed]
    ones = [j for j, val in fixed.items() if val == 1]
    rhs = b - a[:, ones].sum(axis=1) if ones else b.copy()
    const = float(c[ones].sum()) if ones else 0.0
    x_full = np.zeros(n_vars)
    for j in ones:
        x_full[j] = 1.0
    if not free:
        if np.all(rhs >= -1e-9):
            return x_full, const
        return None
    res = _solve_lp(c[free], a[:, free], rhs)
    if res is None:
        return None
    x_free, obj = res
    x_full[free] = x_free
    return x_full, obj + const


# -- branch and bound -----------------------------------------------------------


@dataclass
class SolveLimits:
    time_limit: Optional[float] = None
    tol: float = 1e-7
    node_limit: Optional[int] = None


@dataclass(frozen=True)
class RelaxedSolution:
    """Best binary assignment found, its recomputed cut value, and status."""

    assignments: tuple
    value: Weight
    block: frozenset
    status: str  # optimal | feasible-timeout | infeasible


def _block_from_point(h: Hypergraph, x: np.ndarray) -> set:
    n = h.vertex_count
    block = {v for v in range(n) if x[v] >= 0.5}
    if not block or len(block) == n:
        wd = h.weighted_degrees()
        mover = min(range(n), key=lambda v: (wd[v], v))
        if not block:
            block = {mover}
        else:
            block.discard(mover)
            if not block:  # n == 1 cannot happen; mover was the whole block
                block = {v for v in range(n) if v != mover}
    return block


def _assignment_for(h: Hypergraph, block: frozenset) -> tuple:
    n, m = h.vertex_count, h.edge_count
    xs = [1 if v in block else 0 for v in range(n)]
    ys = []
    for e in range(m):
        pins = h.pins(e)
        inside = sum(1 for v in pins if v in block)
        ys.append(1 if 0 < inside < len(pins) else 0)
    return tuple(xs + ys)


def solve_relaxed(model: BipModel, limits: Optional[SolveLimits] = None) -> RelaxedSolution:
    """Best-bound branch-and-bound over the LP relaxation, with rounding.

    Every explored point is rounded at one half to a bipartition (moving
    the lightest vertex if a block comes up empty) and scored by its true
    cut weight, so an incumbent exists from the start and the best one is
    returned when a limit stops the search early.  Variables within the
    integrality tolerance of a bit close a node; branching picks the most
    fractional variable, ties toward the lowest index.
    """
    limits = limits if limits is not None else SolveLimits()
    h = model.hypergraph
    deadline = Deadline(limits.time_limit)
    a, b = _dense_ub(model)
    c = np.array(model.objective, dtype=float)

    wd = h.weighted_degrees()
    seed_vertex = min(range(h.vertex_count), key=lambda v: (wd[v], v))
    best_block = frozenset({seed_vertex})
    best_value: Weight = (
        cut_value(h, best_block) if h.edge_count else 0
    )

    counter = 0
    heap = [(0.0, counter, {})]
    status = "optimal"
    nodes = 0
    while heap:
        if deadline.expired():
            status = "feasible-timeout"
            break
        if limits.node_limit is not None and nodes >= limits.node_limit:
            status = "feasible-timeout"
            break
        bound, _, fixed = heapq.heappop(heap)
        if bound >= best_value - 1e-9:
            break  # best-bound order: nothing left can improve
        solved = _node_lp(c, a, b, fixed)
        nodes += 1
        if solved is None:
            continue
        x, obj = solved
        if obj >= best_value - 1e-9:
            continue
        block = _block_from_point(h, x)
        value = cut_value(h, block)
        if value < best_value:
            best_value = value
            best_block = frozenset(block)
        distance = np.abs(x - np.round(x))
        branch_var = int(np.argmax(distance))
        if distance[branch_var] <= limits.tol:
            continue  # integral point: node fully solved
        for bit in (0, 1):
            child = dict(fixed)
            child[branch_var] = bit
            counter += 1
            heapq.heappush(heap, (obj, counter, child))

    return RelaxedSolution(
        assignments=_assignment_for(h, best_block),
        value=best_value,
        block=best_block,
        status=status,
    )
