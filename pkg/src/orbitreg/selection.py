"""Choosing the symmetry that minimises holdout error.

The search evaluates, for every subgroup in a cover of the symmetry
catalog, the holdout mean squared error of the orbit-grid symmetrised
predictor, with the bandwidth re-optimised per candidate (larger orbit
dimension permits a wider ball).  The minimiser is the selected symmetry;
the final predictor symmetrises the base estimator with it, either through
the deterministic orbit grid or through Monte-Carlo draws for compact
groups.

Holdout data must be independent of the data inside the base estimator;
the convenience splitter produces such a pair from one sample.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import ConfigError, EmptyHoldoutError
from .estimators import (
    Dataset,
    LocalConstantEstimator,
    Predictor,
    bandwidth,
    monte_carlo_symmetrised_predict,
    partial_symmetrised_predict,
)
from .orbit_grids import build_orbit_grid, orbit_coords_batch
from .spaces import Point
from .subgroups import (
    ClosedSubgroup,
    CompactNeighborhood,
    SubgroupFamily,
    WHOLE_GROUP,
    orbit_dimension,
    orbit_quadrature_coords,
    sample_orbit_coords,
)

_TIE_TOL = 1e-12


@dataclass
class SelectionInput:
    """Everything the symmetry search needs.

    Exactly one of ``fit_data`` and ``base`` must be provided: with
    ``fit_data`` each candidate gets its own local-constant base estimator
    at that candidate's bandwidth; a fixed ``base`` is used verbatim for
    every candidate (the orbit grids still use per-candidate bandwidths).
    """

    holdout: Dataset
    cover: Sequence[ClosedSubgroup]
    fit_data: Dataset | None = None
    base: Predictor | None = None
    a: float = 1.0
    beta: float = 1.0
    bandwidth_n: int | None = None
    neighborhood: CompactNeighborhood = WHOLE_GROUP
    region: Callable[[np.ndarray], np.ndarray] | None = None
    fallback_error: float = 1.0
    symmetriser: str = "grid"

    def __post_init__(self):
        if (self.fit_data is None) == (self.base is None):
            raise ConfigError("provide exactly one of fit_data and base")
        if not self.cover:
            raise ConfigError("the cover must be nonempty")
        if not any(g.family is SubgroupFamily.TRIVIAL for g in self.cover):
            raise ConfigError("the cover must contain the trivial subgroup")
        if not 0.0 < self.beta <= 1.0:
            raise ConfigError("beta must lie in (0, 1] (degree-0 local estimator)")
        if self.symmetriser not in ("grid", "uniform"):
            raise ConfigError("symmetriser must be 'grid' or 'uniform'")

    def effective_n(self) -> int:
        if self.bandwidth_n is not None:
            return self.bandwidth_n
        return len(self.fit_data) if self.fit_data is not None else len(self.holdout)


@dataclass
class SymmetrySelection:
    """Search result: the chosen subgroup and the full error table."""

    chosen: ClosedSubgroup
    chosen_bandwidth: float
    per_group_error: dict[ClosedSubgroup, float]
    used_fallback: bool = False
    bandwidth_by_group: dict[ClosedSubgroup, float] = field(default_factory=dict)

    def to_text(self) -> str:
        lines = [f"chosen: {self.chosen.describe()}"]
        if self.used_fallback:
            lines.append("note: holdout region was empty; fell back to the trivial group")
        lines.append("per-group holdout error:")
        for group, err in self.per_group_error.items():
            lines.append(f"  {err:.6e}  {group.describe()}")
        return "\n".join(lines)


def empirical_error(pred, holdout: Dataset) -> float:
    """Mean squared residual of a predictor over a holdout sample."""
    if len(holdout) == 0:
        raise EmptyHoldoutError("cannot estimate error on an empty holdout set")
    if hasattr(pred, "predict_coords"):
        values = pred.predict_coords(holdout.X)
    else:
        values = np.array([pred(Point.of(holdout.space, row, validate=False))
                           for row in holdout.X])
    residual = values - holdout.Y
    return float(np.mean(residual * residual))


def _candidate_bandwidth(inp: SelectionInput, group: ClosedSubgroup) -> float:
    d = inp.holdout.space.intrinsic_dim
    d_group = orbit_dimension(group, inp.holdout.space)
    return bandwidth(inp.a, inp.effective_n(), inp.beta, d, d_group)


def _candidate_base(inp: SelectionInput, h: float) -> Predictor:
    if inp.base is not None:
        return inp.base
    return LocalConstantEstimator(inp.fit_data, h)


def _group_holdout_error(inp: SelectionInput, group: ClosedSubgroup, h: float,
                         X: np.ndarray, Y: np.ndarray) -> float:
    base = _candidate_base(inp, h)
    coords, counts = orbit_coords_batch(inp.holdout.space, group, X, h, inp.neighborhood)
    preds = base.predict_coords(coords)
    starts = np.cumsum(counts) - counts
    sym = np.add.reduceat(preds, starts) / counts
    residual = sym - Y
    return float(np.mean(residual * residual))


def _class_holdout_errors(inp: SelectionInput, groups: list[ClosedSubgroup], h: float,
                          X: np.ndarray, Y: np.ndarray) -> dict[ClosedSubgroup, float]:
    """Errors for all candidates sharing one bandwidth, via one prediction pass.

    With the ``grid`` symmetriser each candidate is scored through its orbit
    grid (the deterministic packing construction); with ``uniform`` it is
    scored through fixed quadrature nodes approximating the full orbit
    average, matching a Monte-Carlo deployment of compact groups.
    """
    base = _candidate_base(inp, h)
    if inp.symmetriser == "uniform":
        blocks = [orbit_quadrature_coords(g, X) for g in groups]
    else:
        blocks = [orbit_coords_batch(inp.holdout.space, g, X, h, inp.neighborhood)
                  for g in groups]
    preds = base.predict_coords(np.vstack([coords for coords, _ in blocks]))
    errors: dict[ClosedSubgroup, float] = {}
    offset = 0
    for group, (coords, counts) in zip(groups, blocks):
        block = preds[offset : offset + coords.shape[0]]
        offset += coords.shape[0]
        starts = np.cumsum(counts) - counts
        sym = np.add.reduceat(block, starts) / counts
        residual = sym - Y
        errors[group] = float(np.mean(residual * residual))
    return errors


def _argmin_with_ties(errors: dict[ClosedSubgroup, float], space) -> ClosedSubgroup:
    best = min(errors.values())
    tied = [g for g, e in errors.items() if e <= best + _TIE_TOL]
    tied.sort(key=lambda g: (-orbit_dimension(g, space), g.canonical_key()))
    return tied[0]


def global_ems(inp: SelectionInput) -> SymmetrySelection:
    """Error Minimising Symmetry over the whole holdout sample."""
    if inp.region is not None:
        return local_ems(inp)
    if len(inp.holdout) == 0:
        raise EmptyHoldoutError("the symmetry search needs a nonempty holdout sample")
    return _run_search(inp, np.ones(len(inp.holdout), dtype=bool))


def local_ems(inp: SelectionInput) -> SymmetrySelection:
    """Error Minimising Symmetry restricted to a region of the space.

    Points exactly on the region boundary count as inside (membership
    predicates are expected to use closed comparisons).  When no holdout
    point lies in the region the search cannot be run; the trivial group is
    returned with the configured fallback error level for every candidate.
    """
    if inp.region is None:
        raise ConfigError("local_ems requires a region membership predicate")
    mask = np.asarray(inp.region(inp.holdout.X), dtype=bool) if len(inp.holdout) else np.zeros(0, bool)
    if mask.sum() == 0:
        cover = _canonical_cover(inp.cover)
        trivial = next(g for g in cover if g.family is SubgroupFamily.TRIVIAL)
        errors = {g: inp.fallback_error for g in cover}
        bw = {g: _candidate_bandwidth(inp, g) for g in cover}
        return SymmetrySelection(trivial, bw[trivial], errors, used_fallback=True,
                                 bandwidth_by_group=bw)
    return _run_search(inp, mask)


def _canonical_cover(cover: Sequence[ClosedSubgroup]) -> list[ClosedSubgroup]:
    out, seen = [], set()
    for g in sorted(cover, key=lambda g: g.canonical_key()):
        if g.canonical_key() not in seen:
            seen.add(g.canonical_key())
            out.append(g)
    return out


def _run_search(inp: SelectionInput, mask: np.ndarray) -> SymmetrySelection:
    cover = _canonical_cover(inp.cover)
    X = inp.holdout.X[mask]
    Y = inp.holdout.Y[mask]
    bw = {group: _candidate_bandwidth(inp, group) for group in cover}
    by_bandwidth: dict[float, list[ClosedSubgroup]] = {}
    for group in cover:
        by_bandwidth.setdefault(bw[group], []).append(group)
    errors: dict[ClosedSubgroup, float] = {}
    for h, groups in by_bandwidth.items():
        errors.update(_class_holdout_errors(inp, groups, h, X, Y))
    errors = {group: errors[group] for group in cover}
    chosen = _argmin_with_ties(errors, inp.holdout.space)
    return SymmetrySelection(chosen, bw[chosen], errors, bandwidth_by_group=bw)


def best_symmetric_predict(base: Predictor, selection: SymmetrySelection, x: Point,
                           method: str = "grid", mc_draws: int | None = None,
                           rng: np.random.Generator | None = None,
                           neighborhood: CompactNeighborhood = WHOLE_GROUP) -> float:
    """Predict at ``x`` with the base estimator symmetrised by the selection."""
    if method == "grid":
        grid = build_orbit_grid(x, selection.chosen, selection.chosen_bandwidth, neighborhood)
        return partial_symmetrised_predict(base, grid, x)
    if method != "monte_carlo":
        raise ConfigError(f"unknown symmetrisation method {method!r}")
    if rng is None:
        raise ConfigError("monte_carlo symmetrisation needs an explicit rng")
    m = mc_draws if mc_draws is not None else _default_mc_draws(base)
    return monte_carlo_symmetrised_predict(base, selection.chosen, m, rng, x)


def _default_mc_draws(base: Predictor) -> int:
    data = getattr(base, "data", None)
    if data is None or len(data) == 0:
        raise ConfigError("mc_draws must be given when the base has no training set")
    return len(data)


class BestSymmetricPredictor:
    """Predictor wrapper around :func:`best_symmetric_predict` with batching."""

    def __init__(self, base: Predictor, selection: SymmetrySelection,
                 method: str = "grid", mc_draws: int | None = None,
                 rng: np.random.Generator | None = None,
                 neighborhood: CompactNeighborhood = WHOLE_GROUP):
        if method not in ("grid", "monte_carlo"):
            raise ConfigError(f"unknown symmetrisation method {method!r}")
        if method == "monte_carlo" and rng is None:
            raise ConfigError("monte_carlo symmetrisation needs an explicit rng")
        self.base = base
        self.selection = selection
        self.method = method
        self.mc_draws = mc_draws if mc_draws is not None else (
            _default_mc_draws(base) if method == "monte_carlo" else None)
        self.rng = rng
        self.neighborhood = neighborhood
        self.space = base.space

    def predict(self, x: Point) -> float:
        return float(self.predict_coords(x.coords[None, :])[0])

    def predict_coords(self, coords: np.ndarray) -> np.ndarray:
        coords = np.atleast_2d(np.asarray(coords, dtype=np.float64))
        group = self.selection.chosen
        if self.method == "grid":
            pts, counts = orbit_coords_batch(self.space, group, coords,
                                             self.selection.chosen_bandwidth,
                                             self.neighborhood)
            preds = self.base.predict_coords(pts)
            starts = np.cumsum(counts) - counts
            return np.add.reduceat(preds, starts) / counts
        m = self.mc_draws
        out = np.empty(coords.shape[0])
        chunk = max(1, int(200_000 / max(m, 1)))
        for start in range(0, coords.shape[0], chunk):
            block = coords[start : start + chunk]
            pts = sample_orbit_coords(group, block, m, self.rng)
            preds = self.base.predict_coords(pts.reshape(-1, coords.shape[1]))
            out[start : start + chunk] = preds.reshape(len(block), m).mean(axis=1)
        return out


def split_dataset(full: Dataset, rng: np.random.Generator) -> tuple[Dataset, Dataset]:
    """Random disjoint halves of sizes (floor(n/2), ceil(n/2))."""
    n = len(full)
    if n < 2:
        raise ConfigError("splitting requires at least two observations")
    perm = rng.permutation(n)
    first = np.sort(perm[: n // 2])
    second = np.sort(perm[n // 2 :])
    return full.subset(first), full.subset(second)
