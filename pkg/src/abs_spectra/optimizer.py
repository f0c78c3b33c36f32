"""Multi-start penalized projected-gradient maximization of spectrum purity.

The task: maximize sum(x_i^2) over probability vectors x whose sorted form
satisfies a spectral criterion (qubit-qudit separability or qutrit-qudit
PPT).  Both the objective and the criteria are invariant under permutations
of x, so the solver works on the plain (unordered) simplex and sorts before
evaluating the criterion; gradients use the permutation realized by a
stable descending sort, which fixes the subgradient at ties.

A staged quadratic penalty turns the constraint into a smooth unconstrained
ascent problem; each stage is solved by projected gradient ascent with an
Armijo backtracking line search.  Because the objective is convex, the
uniform vector is a stationary minimum, so the loop includes a deterministic
ramp probe that escapes non-maximal stationary points.  After the penalty
stages the iterate is pulled back to exact feasibility (mixing toward the
uniform vector, which is strictly feasible for every criterion) and then
polished by a feasible projected-ascent pass, so the reported optimum always
satisfies the exact, unsmoothed margin.

The inner loop runs on plain Python lists: the vectors here have at most a
few dozen entries, where list arithmetic beats numpy dispatch by a wide
margin.  numpy appears only in the public array-facing wrappers, in the
Dirichlet sampling and in the 3x3 eigenvector solves of the PPT gradient.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import closedform
from .core import (
    CriterionKind,
    Spectrum,
    UnsupportedDimensions,
    abs_ppt_margin_parts_kernel,
    abs_sep_margin_kernel,
    purity,
    validate_spectrum,
)

_SMOOTH_EPS = 1e-12     # sqrt smoothing: sqrt(a*b + eps^2) - eps
_ARMIJO = 1e-4
_MAX_BACKTRACKS = 50
_TIE_TOL = 1e-12
_PROBE_STEPS = (0.1, 0.01, 0.001)
_RESTORE_STEPS = 64
_POLISH_ROUNDS = 200
_STALL_TOL = 1e-11      # per-iteration relative progress treated as grind
_STALL_WINDOW = 16
_PG_EVERY = 4           # iterations between projected-gradient stationarity tests
_SEED_MASK = 0xFFFFFFFFFFFFFFFF

DEFAULT_SEED = 1729


@dataclass(frozen=True)
class Problem:
    """Dimensions plus the criterion constraining the feasible spectra."""

    m: int
    n: int
    criterion: CriterionKind

    def __post_init__(self):
        if self.m < 2 or self.n < 2:
            raise UnsupportedDimensions(f"need m, n >= 2, got ({self.m}, {self.n})")
        if self.criterion is CriterionKind.ABS_SEP_2XN:
            if 2 not in (self.m, self.n):
                raise UnsupportedDimensions("separability criterion needs a dimension-2 side")
        elif self.criterion is CriterionKind.ABS_PPT_3XN:
            if 3 not in (self.m, self.n):
                raise UnsupportedDimensions("PPT criterion needs a dimension-3 side")
        else:
            raise UnsupportedDimensions(f"cannot optimize against {self.criterion}")

    @property
    def N(self) -> int:
        return self.m * self.n

    @classmethod
    def for_dimensions(cls, m: int, n: int) -> "Problem":
        """Infer the criterion from the smaller subsystem dimension."""
        side = min(m, n)
        if side == 2:
            return cls(m=m, n=n, criterion=CriterionKind.ABS_SEP_2XN)
        if side == 3:
            return cls(m=m, n=n, criterion=CriterionKind.ABS_PPT_3XN)
        raise UnsupportedDimensions(f"no criterion for min(m, n) = {side}")


@dataclass(frozen=True)
class SolverOptions:
    restarts: int = 64
    seed: int = DEFAULT_SEED
    max_iters: int = 5000
    penalty_init: float = 10.0
    penalty_growth: float = 10.0
    penalty_stages: int = 6
    step_tol: float = 1e-12
    constraint_tol: float = 1e-9
    dirichlet_alpha: float = 1.0

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        for name in ("max_iters", "penalty_init", "penalty_growth",
                     "penalty_stages", "step_tol", "constraint_tol", "dirichlet_alpha"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class OptimizationResult:
    best_purity: float
    best_spectrum: Spectrum
    margin_at_opt: float
    restarts_converged: int
    iterations_total: int
    wall_time: float

    def to_dict(self) -> dict:
        return {
            "best_purity": self.best_purity,
            "best_spectrum": self.best_spectrum.to_dict(),
            "margin_at_opt": self.margin_at_opt,
            "restarts_converged": self.restarts_converged,
            "iterations_total": self.iterations_total,
            "wall_time": self.wall_time,
        }


def sample_start(N: int, alpha: float, rng: np.random.Generator) -> np.ndarray:
    """Dirichlet(alpha, ..., alpha) draw, sorted non-increasing."""
    x = rng.dirichlet(np.full(N, float(alpha)))
    return np.sort(x)[::-1].copy()


# ---------------------------------------------------------------------------
# List-based numeric core.
# ---------------------------------------------------------------------------

def _proj(v: list[float]) -> list[float]:
    # Euclidean projection onto {x >= 0, sum x = 1} by sort and threshold.
    # Shifting by the maximum first keeps the "- 1" from rounding away when a
    # penalty gradient produces huge trial points; the projection itself is
    # invariant under shifts along the all-ones direction.
    mx = max(v)
    w = [a - mx for a in v]
    u = sorted(w, reverse=True)
    css = 0.0
    theta = 0.0
    for i, ui in enumerate(u):
        css += ui
        t = (css - 1.0) / (i + 1)
        if ui - t > 0.0:
            theta = t
    return [a - theta if a > theta else 0.0 for a in w]


def _sortperm_desc(x: list[float]) -> tuple[list[float], list[int]]:
    idx = sorted(range(len(x)), key=x.__getitem__, reverse=True)
    # Python's sort is stable; reverse=True on the key keeps ties in original
    # order, which is the documented subgradient choice.
    return [x[i] for i in idx], idx


def _sep_smooth(s: list[float]) -> tuple[float, float]:
    # Smoothed qubit-qudit margin of a sorted vector; returns (margin, root).
    N = len(s)
    root = math.sqrt(s[N - 3] * s[N - 1] + _SMOOTH_EPS * _SMOOTH_EPS)
    return s[N - 2] + 2.0 * (root - _SMOOTH_EPS) - s[0], root


def _smooth_margin_sorted(criterion: CriterionKind, s: list[float]) -> float:
    if criterion is CriterionKind.ABS_SEP_2XN:
        return _sep_smooth(s)[0]
    e1, e2 = abs_ppt_margin_parts_kernel(s)
    return e1 if e1 <= e2 else e2


def _exact_margin_sorted(criterion: CriterionKind, s: list[float]) -> float:
    if criterion is CriterionKind.ABS_SEP_2XN:
        return abs_sep_margin_kernel(s)
    e1, e2 = abs_ppt_margin_parts_kernel(s)
    return e1 if e1 <= e2 else e2


def _value(problem: Problem, x: list[float], mu: float) -> float:
    margin = _smooth_margin_sorted(problem.criterion, sorted(x, reverse=True))
    p = 0.0
    for a in x:
        p += a * a
    if margin >= 0.0:
        return p
    return p - mu * margin * margin


def _grad_value(problem: Problem, x: list[float], mu: float) -> tuple[float, list[float]]:
    N = len(x)
    s, idx = _sortperm_desc(x)
    gs = [0.0] * N
    if problem.criterion is CriterionKind.ABS_SEP_2XN:
        margin, root = _sep_smooth(s)
        gs[N - 2] += 1.0
        gs[0] -= 1.0
        gs[N - 3] += s[N - 1] / root
        gs[N - 1] += s[N - 3] / root
    else:
        l = s
        m1 = np.array([
            [2.0 * l[N - 1], l[N - 2] - l[0], l[N - 4] - l[1]],
            [l[N - 2] - l[0], 2.0 * l[N - 3], l[N - 5] - l[2]],
            [l[N - 4] - l[1], l[N - 5] - l[2], 2.0 * l[N - 6]],
        ])
        m2 = np.array([
            [2.0 * l[N - 1], l[N - 2] - l[0], l[N - 3] - l[1]],
            [l[N - 2] - l[0], 2.0 * l[N - 4], l[N - 5] - l[2]],
            [l[N - 3] - l[1], l[N - 5] - l[2], 2.0 * l[N - 6]],
        ])
        w1, v1 = np.linalg.eigh(m1)
        w2, v2 = np.linalg.eigh(m2)
        if w1[0] <= w2[0]:
            margin, v = float(w1[0]), v1[:, 0]
            diag2, off13 = N - 3, N - 4
        else:
            margin, v = float(w2[0]), v2[:, 0]
            diag2, off13 = N - 4, N - 3
        v0, va, vb = float(v[0]), float(v[1]), float(v[2])
        gs[N - 1] += 2.0 * v0 * v0
        gs[diag2] += 2.0 * va * va
        gs[N - 6] += 2.0 * vb * vb
        t = 2.0 * v0 * va
        gs[N - 2] += t
        gs[0] -= t
        t = 2.0 * v0 * vb
        gs[off13] += t
        gs[1] -= t
        t = 2.0 * va * vb
        gs[N - 5] += t
        gs[2] -= t
    p = 0.0
    for a in x:
        p += a * a
    if margin >= 0.0:
        return p, [2.0 * a for a in x]
    value = p - mu * margin * margin
    scale = -2.0 * mu * margin
    grad = [2.0 * a for a in x]
    for pos, i in enumerate(idx):
        grad[i] += scale * gs[pos]
    return value, grad


def _restore_sorted(criterion: CriterionKind, s: list[float]) -> list[float]:
    # Mix a sorted vector toward the uniform vector (strictly feasible for
    # both criteria) until the exact margin is nonnegative; bisection on the
    # mixing weight.  Mixing with the uniform vector preserves sortedness.
    if _exact_margin_sorted(criterion, s) >= 0.0:
        return s
    N = len(s)
    u = 1.0 / N
    lo, hi = 0.0, 1.0
    for _ in range(_RESTORE_STEPS):
        mid = 0.5 * (lo + hi)
        cand = [(1.0 - mid) * a + mid * u for a in s]
        if _exact_margin_sorted(criterion, cand) >= 0.0:
            hi = mid
        else:
            lo = mid
    return [(1.0 - hi) * a + hi * u for a in s]


def _polish_sorted(criterion: CriterionKind, s: list[float]) -> list[float]:
    # Projected purity ascent restricted to the exact feasible set.  All the
    # vectors involved stay sorted: the ascent direction is a projection of a
    # positive multiple of the iterate and convex combinations of sorted
    # vectors are sorted.  Only strict improvements are accepted.
    x = _restore_sorted(criterion, s)
    p = 0.0
    for a in x:
        p += a * a
    for _ in range(_POLISH_ROUNDS):
        target = _proj([3.0 * a for a in x])
        d = [t - a for t, a in zip(target, x)]
        if math.sqrt(sum(a * a for a in d)) < 1e-15:
            break
        improved = False
        step = 1.0
        for _ in range(60):
            y = _restore_sorted(criterion, [a + step * b for a, b in zip(x, d)])
            py = 0.0
            for a in y:
                py += a * a
            if py > p + 1e-16:
                x, p = y, py
                improved = True
                break
            step *= 0.5
        if not improved:
            break
    return x


def _escape_probe(problem: Problem, x: list[float], f: float, mu: float):
    # Deterministic second-order escape: purity is convex, so stationary
    # points that are not constrained maxima (the uniform vector above all)
    # admit an improving ramp direction.
    N = len(x)
    ramp = [1.0 - 2.0 * i / (N - 1) for i in range(N)]
    mean = sum(ramp) / N
    ramp = [r - mean for r in ramp]
    norm = math.sqrt(sum(r * r for r in ramp))
    ramp = [r / norm for r in ramp]
    for eta in _PROBE_STEPS:
        y = _proj([a + eta * r for a, r in zip(x, ramp)])
        if _value(problem, y, mu) > f + 1e-14:
            return y
    return None


# ---------------------------------------------------------------------------
# Public array-facing operations.
# ---------------------------------------------------------------------------

def project_to_simplex(v) -> np.ndarray:
    """Euclidean projection onto {x >= 0, sum(x) = 1} (sort and threshold)."""
    v = np.asarray(v, dtype=float)
    return np.array(_proj([float(a) for a in v]))


def penalized_objective(problem: Problem, lam, mu: float) -> tuple[float, np.ndarray]:
    """Penalized purity sum(x^2) - mu*max(0, -margin)^2 and its gradient.

    The margin is the smoothed criterion margin of the stably sorted vector;
    the gradient scatters the sorted-position derivatives back through the
    sort permutation.
    """
    x = [float(a) for a in np.asarray(lam, dtype=float)]
    value, grad = _grad_value(problem, x, float(mu))
    return value, np.array(grad)


def exact_margin(problem: Problem, x) -> float:
    """Unsmoothed criterion margin of the sorted form of ``x``."""
    s = sorted((float(a) for a in np.asarray(x, dtype=float)), reverse=True)
    return _exact_margin_sorted(problem.criterion, s)


def local_solve(problem: Problem, start, opts: SolverOptions | None = None) -> OptimizationResult:
    """Penalized projected-gradient ascent from one start point.

    Runs ``penalty_stages`` stages with growing penalty weight, then restores
    exact feasibility and polishes.  The returned spectrum is sorted,
    revalidated, and satisfies margin >= -constraint_tol; failure to reach
    stationarity within ``max_iters`` is recorded as restarts_converged = 0,
    not an error.
    """
    if opts is None:
        opts = SolverOptions()
    t0 = time.perf_counter()
    x = _proj([float(a) for a in np.asarray(start, dtype=float)])
    iters = 0
    stage_done = False
    stage_budget = max(1, opts.max_iters // opts.penalty_stages)
    for stage in range(opts.penalty_stages):
        mu = opts.penalty_init * opts.penalty_growth ** stage
        stage_done = False
        stage_iters = 0
        step0 = 1.0
        f_anchor = None
        anchor_age = 0
        while stage_iters < stage_budget and iters < opts.max_iters:
            f, grad = _grad_value(problem, x, mu)
            # Windowed stall exit: Armijo ascent is monotone, so negligible
            # gain over a whole window means the stage is done at this scale;
            # the final feasible polish recovers the remaining digits.  (The
            # one-sided penalty keeps the projected-gradient test from firing
            # exactly on the constraint boundary.)
            if f_anchor is None:
                f_anchor, anchor_age = f, 0
            else:
                anchor_age += 1
                if anchor_age >= _STALL_WINDOW:
                    if f - f_anchor <= _STALL_WINDOW * _STALL_TOL * (1.0 + abs(f)):
                        stage_done = True
                        break
                    f_anchor, anchor_age = f, 0
            if stage_iters % _PG_EVERY == 0:
                pg = _proj([a + g for a, g in zip(x, grad)])
                pgn = math.sqrt(sum((b - a) ** 2 for a, b in zip(x, pg)))
                if pgn <= opts.step_tol * (1.0 + abs(f)):
                    probe = _escape_probe(problem, x, f, mu)
                    if probe is None:
                        stage_done = True
                        break
                    x = probe
                    f_anchor = None
                    iters += 1
                    stage_iters += 1
                    continue
            # Armijo backtracking, warm started from the last accepted step
            # (a fixed 1.0 restart costs ~30 halvings per late iteration).
            step = step0
            moved = False
            for _ in range(_MAX_BACKTRACKS):
                y = _proj([a + step * g for a, g in zip(x, grad)])
                slope = 0.0
                for g, b, a in zip(grad, y, x):
                    slope += g * (b - a)
                if slope > 0.0:
                    if _value(problem, y, mu) >= f + _ARMIJO * slope:
                        x = y
                        moved = True
                        break
                step *= 0.5
            iters += 1
            stage_iters += 1
            if not moved:
                # The line search cannot ascend (slope vanishes at the exact
                # uniform point, or no machine-scale step helps): probe for a
                # second-order escape before declaring the stage stationary.
                probe = _escape_probe(problem, x, f, mu)
                if probe is None:
                    stage_done = True
                    break
                x = probe
                f_anchor = None
                continue
            step0 = min(1.0, step * 4.0)
        if iters >= opts.max_iters:
            break
    converged = stage_done
    lam = _polish_sorted(problem.criterion, sorted(x, reverse=True))
    spec = validate_spectrum(problem.m, problem.n, lam)
    return OptimizationResult(
        best_purity=purity(spec),
        best_spectrum=spec,
        margin_at_opt=_exact_margin_sorted(problem.criterion, list(spec.lambdas)),
        restarts_converged=1 if converged else 0,
        iterations_total=iters,
        wall_time=time.perf_counter() - t0,
    )


def _conjectured_start(problem: Problem) -> np.ndarray:
    # Deterministic warm start: the closed-form candidate spectrum for the
    # criterion's family, pulled back to feasibility when it violates the
    # criterion (the 3 x n candidates do for n >= 3).
    other = problem.n if min(problem.m, problem.n) == problem.m else problem.m
    if problem.criterion is CriterionKind.ABS_SEP_2XN:
        if other == 2:
            _, spec = closedform.two_qubit_optimum()
        else:
            spec = closedform.conj_spectrum_2xn(other)
    else:
        spec = closedform.conj_spectrum_3xn(other)
    restored = _restore_sorted(problem.criterion, list(spec.lambdas))
    return np.array(restored)


def generate_starts(problem: Problem, opts: SolverOptions) -> list[np.ndarray]:
    """Start points in solve order: uniform, closed-form candidate, Dirichlet
    draws seeded as seed XOR restart index."""
    N = problem.N
    starts = [np.full(N, 1.0 / N), _conjectured_start(problem)]
    for i in range(opts.restarts):
        rng = np.random.default_rng((opts.seed ^ i) & _SEED_MASK)
        starts.append(sample_start(N, opts.dirichlet_alpha, rng))
    return starts


def _better(cur: OptimizationResult | None, cand: OptimizationResult) -> OptimizationResult:
    # Deterministic reduction: higher purity wins; ties within _TIE_TOL go to
    # the lexicographically largest sorted spectrum.
    if cur is None:
        return cand
    if cand.best_purity > cur.best_purity + _TIE_TOL:
        return cand
    if (cand.best_purity >= cur.best_purity - _TIE_TOL
            and cand.best_spectrum.lambdas > cur.best_spectrum.lambdas):
        return cand
    return cur


def maximize_purity(problem: Problem, opts: SolverOptions | None = None) -> OptimizationResult:
    """Best purity over Dirichlet restarts plus the two deterministic starts.

    Reproducible for a fixed (problem, opts): restarts run in a fixed order,
    each with a private RNG, and the reduction uses the purity/lexicographic
    tie-break rather than arrival order.
    """
    if opts is None:
        opts = SolverOptions()
    t0 = time.perf_counter()
    best: OptimizationResult | None = None
    converged = 0
    iters = 0
    for start in generate_starts(problem, opts):
        res = local_solve(problem, start, opts)
        converged += res.restarts_converged
        iters += res.iterations_total
        best = _better(best, res)
    assert best is not None
    return OptimizationResult(
        best_purity=best.best_purity,
        best_spectrum=best.best_spectrum,
        margin_at_opt=best.margin_at_opt,
        restarts_converged=converged,
        iterations_total=iters,
        wall_time=time.perf_counter() - t0,
    )
