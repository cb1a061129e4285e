"""Achievable-rate-region computation for the secret-binding identification model.

Two equivalent characterizations are supported: a single-auxiliary form
(variant A1, channels P(U|Y)) and a two-auxiliary form (variant A2, channel
pairs P(U|Y), P(V|U) along Z - X - Y - U - V).  Searches quantize channel rows
on a probability simplex grid; membership answers are one-sided ("found" is
conclusive, "not found" is quantization-limited) and every report carries its
quantization level.  All searches are deterministic.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import BudgetExceeded, ContractViolation
from .probability import (
    AuxiliaryPair,
    Channel,
    JointDistribution,
    SystemModel,
    compose_joint,
    conditional_mutual_information,
    mutual_information,
)
from .simplex import (
    channel_candidate_count,
    channel_candidates,
    refine_rows,
    simplex_grid,
)

MI_NOISE_FLOOR = -1e-9

# Axes of compose_joint output.
_Z, _X, _Y, _U, _V = 0, 1, 2, 3, 4


def _clamp_mi(value: float, what: str) -> float:
    if value < MI_NOISE_FLOOR:
        raise ContractViolation(f"{what} = {value!r} below the noise floor")
    return max(0.0, value)


@dataclass(frozen=True)
class RateTuple:
    """Rates in bits per source symbol: identification, secrecy, template, privacy."""

    r_i: float
    r_s: float
    r_j: float
    r_l: float

    def __post_init__(self):
        for name in ("r_i", "r_s", "r_j", "r_l"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0.0:
                raise ContractViolation(f"{name} must be finite and nonnegative, got {v!r}")


@dataclass(frozen=True)
class RegionSpec:
    """Which characterization to sweep and the auxiliary alphabet sizes."""

    variant: str  # "A1" or "A2"
    u_cardinality: int
    v_cardinality: int = 1

    def __post_init__(self):
        if self.variant not in ("A1", "A2"):
            raise ContractViolation("variant must be 'A1' or 'A2'")
        if self.u_cardinality < 1 or self.v_cardinality < 1:
            raise ContractViolation("cardinalities must be positive")

    def validate_for(self, model: SystemModel):
        y = model.y_size
        if self.variant == "A1":
            if self.u_cardinality > y + 2:
                raise ContractViolation(
                    f"A1 needs u_cardinality <= |Y|+2 = {y + 2}, got {self.u_cardinality}"
                )
        else:
            if self.u_cardinality > (y + 2) * (y + 3):
                raise ContractViolation(
                    f"A2 needs u_cardinality <= (|Y|+2)(|Y|+3) = {(y + 2) * (y + 3)}"
                )
            if self.v_cardinality > y + 3:
                raise ContractViolation(
                    f"A2 needs v_cardinality <= |Y|+3 = {y + 3}"
                )


@dataclass(frozen=True)
class MutualInfoSummary:
    """The information quantities the region constraints and code rates use."""

    i_zu: float
    i_zv: float
    i_yu: float
    i_yv: float
    i_xu: float
    i_yu_given_v: float
    i_zu_given_v: float

    def __post_init__(self):
        if self.i_zu < self.i_zv - 1e-9:
            raise ContractViolation("data processing violated: I(Z;U) < I(Z;V)")
        if self.i_yu < self.i_xu - 1e-9 or self.i_xu < self.i_zu - 1e-9:
            raise ContractViolation("data processing violated along Z-X-Y-U")


@dataclass(frozen=True)
class SearchConfig:
    """Quantization and tolerance knobs for the region searches."""

    grid_steps: int = 8
    refinement_rounds: int = 0
    tolerance: float = 1e-6
    v_grid_steps: int = 0  # 0: derive from grid_steps
    threads: int = 1
    chunk: int = 1 << 15
    max_candidates: int = 5_000_000

    def __post_init__(self):
        if self.grid_steps < 2:
            raise ContractViolation("grid_steps must be at least 2")
        if self.refinement_rounds < 0:
            raise ContractViolation("refinement_rounds must be nonnegative")
        if not self.tolerance > 0.0:
            raise ContractViolation("tolerance must be positive")

    @property
    def effective_v_steps(self) -> int:
        return self.v_grid_steps if self.v_grid_steps >= 2 else max(2, self.grid_steps // 2)


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    witness: Optional[Channel]
    slack: float
    grid_steps: int
    u_cardinality: int
    refined: bool


@dataclass(frozen=True)
class SweepRow:
    r_i: float
    max_r_s: float
    min_r_j: float
    min_r_l: float
    feasible: bool


@dataclass(frozen=True)
class EquivalenceReport:
    max_violation_a2_in_a1: float
    max_violation_a1_in_a2: float
    a2_tuples_checked: int
    a1_tuples_checked: int
    grid_steps: int
    a2_u_grid_steps: int
    a2_v_grid_steps: int
    v_cardinality: int
    tolerance: float
    convex_hull_applied: bool = False  # raw grid points, no time-sharing closure


@dataclass(frozen=True)
class ReductionReport:
    max_dev_noiseless_enroll: float
    max_dev_single_individual: float
    tolerance: float
    r_i_grid: tuple
    matches_noiseless_enroll: bool
    matches_single_individual: bool


@dataclass(frozen=True)
class CardinalityReport:
    base_cardinality: int
    improvements: tuple  # (extra, d_max_r_s, d_min_r_l, d_min_r_j) per extra
    max_improvement: float
    grid_steps: int


def summarize(model: SystemModel, aux: AuxiliaryPair) -> MutualInfoSummary:
    """All region-relevant information quantities of one (model, aux) instance."""
    joint = compose_joint(model, aux)
    return summarize_joint(joint)


def summarize_joint(joint: JointDistribution) -> MutualInfoSummary:
    mi = lambda a, b: _clamp_mi(mutual_information(joint, a, b), "mutual information")
    cmi = lambda a, b, c: _clamp_mi(
        conditional_mutual_information(joint, a, b, c), "conditional mutual information"
    )
    return MutualInfoSummary(
        i_zu=mi((_Z,), (_U,)),
        i_zv=mi((_Z,), (_V,)),
        i_yu=mi((_Y,), (_U,)),
        i_yv=mi((_Y,), (_V,)),
        i_xu=mi((_X,), (_U,)),
        i_yu_given_v=cmi((_Y,), (_U,), (_V,)),
        i_zu_given_v=cmi((_Z,), (_U,), (_V,)),
    )


def extreme_tuple_a2(summary: MutualInfoSummary) -> RateTuple:
    """The full-identification corner of the two-auxiliary region."""
    return RateTuple(
        r_i=max(0.0, summary.i_zv),
        r_s=max(0.0, summary.i_zu - summary.i_zv),
        r_j=max(0.0, summary.i_yu),
        r_l=max(0.0, summary.i_xu - summary.i_zu + summary.i_zv),
    )


def erasure_extension(u_size: int, lam: float) -> Channel:
    """V = U with probability lam, else a fresh erasure symbol (last index).

    Gives I(Z;V) = lam * I(Z;U) exactly for any upstream Z, which makes it the
    natural family for trading identification rate against secrecy rate.
    """
    if not 0.0 <= lam <= 1.0:
        raise ContractViolation("erasure parameter must be in [0, 1]")
    rows = np.zeros((u_size, u_size + 1))
    rows[np.arange(u_size), np.arange(u_size)] = lam
    rows[:, u_size] = 1.0 - lam
    return Channel(u_size, u_size + 1, rows)


# ---------------------------------------------------------------------------
# Vectorized candidate evaluation
# ---------------------------------------------------------------------------


def _mi_batch(p_ab: np.ndarray) -> np.ndarray:
    """I(A;B) in bits for a stack of 2-D joints, zero-mass cells contributing 0."""
    pa = p_ab.sum(axis=2)
    pb = p_ab.sum(axis=1)
    prod = pa[:, :, None] * pb[:, None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p_ab > 0.0, p_ab * np.log2(p_ab / prod), 0.0)
    out = terms.sum(axis=(1, 2))
    if out.size and out.min() < MI_NOISE_FLOOR:
        raise ContractViolation("batched mutual information below the noise floor")
    return np.maximum(out, 0.0)


@dataclass(frozen=True)
class CandidateTable:
    """Quantities of every quantized P(U|Y) candidate, indexed like the grid."""

    u_cardinality: int
    grid_steps: int
    n_rows: int
    row_grid: np.ndarray
    count: int
    i_zu: np.ndarray
    i_yu: np.ndarray
    i_xu: np.ndarray
    p_zu: Optional[np.ndarray] = None  # (count, |Z|, |U|) when kept for pair scans

    def channel(self, index: int) -> Channel:
        rows = channel_candidates(self.row_grid, self.n_rows, index, index + 1)[0]
        return Channel.from_rows(rows)


def _model_kernels(model: SystemModel):
    px = model.source.probs
    p_xy = px[:, None] * model.enroll.rows
    p_y = p_xy.sum(axis=0)
    p_zy = np.einsum("x,xz,xy->zy", px, model.identify.rows, model.enroll.rows)
    return p_xy, p_y, p_zy


def build_candidate_table(
    model: SystemModel, u_cardinality: int, cfg: SearchConfig, keep_pzu: bool = False
) -> CandidateTable:
    """Evaluate I(Z;U), I(Y;U), I(X;U) for every gridded P(U|Y)."""
    y = model.y_size
    row_grid = simplex_grid(u_cardinality, cfg.grid_steps)
    count = channel_candidate_count(y, u_cardinality, cfg.grid_steps)
    if count > cfg.max_candidates:
        raise BudgetExceeded(
            "candidate-grid",
            f"{count} candidate channels exceed the limit {cfg.max_candidates}; "
            "reduce grid_steps or the auxiliary cardinality",
        )
    p_xy, p_y, p_zy = _model_kernels(model)

    def eval_range(bounds):
        a, b = bounds
        w = channel_candidates(row_grid, y, a, b)
        p_zu = np.einsum("zy,nyu->nzu", p_zy, w)
        p_xu = np.einsum("xy,nyu->nxu", p_xy, w)
        p_yu = p_y[None, :, None] * w
        return _mi_batch(p_zu), _mi_batch(p_yu), _mi_batch(p_xu), p_zu if keep_pzu else None

    ranges = [(a, min(a + cfg.chunk, count)) for a in range(0, count, cfg.chunk)]
    if cfg.threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as ex:
            parts = list(ex.map(eval_range, ranges))
    else:
        parts = [eval_range(r) for r in ranges]
    i_zu = np.concatenate([p[0] for p in parts])
    i_yu = np.concatenate([p[1] for p in parts])
    i_xu = np.concatenate([p[2] for p in parts])
    p_zu = np.concatenate([p[3] for p in parts]) if keep_pzu else None
    return CandidateTable(
        u_cardinality=u_cardinality,
        grid_steps=cfg.grid_steps,
        n_rows=y,
        row_grid=row_grid,
        count=count,
        i_zu=i_zu,
        i_yu=i_yu,
        i_xu=i_xu,
        p_zu=p_zu,
    )


def _membership_deficit(table: CandidateTable, tup: RateTuple) -> np.ndarray:
    """Per-candidate worst constraint deficit; <= 0 means the candidate works."""
    d1 = (tup.r_i + tup.r_s) - table.i_zu
    d2 = table.i_yu - tup.r_j
    d3 = (table.i_xu - table.i_zu + tup.r_i) - tup.r_l
    return np.maximum(np.maximum(d1, d2), d3)


def _best_candidate(table: CandidateTable) -> int:
    """Index maximizing i_zu, ties broken by smallest (i_xu, i_yu), then index."""
    top = table.i_zu.max()
    ties = np.flatnonzero(table.i_zu == top)
    order = np.lexsort((table.i_yu[ties], table.i_xu[ties]))
    return int(ties[order[0]])


def is_member_a1(model: SystemModel, tup: RateTuple, cfg: SearchConfig) -> MembershipResult:
    """Search for a single-auxiliary witness certifying the tuple achievable.

    A True answer is conclusive (the witness is returned); False only means no
    witness exists at this quantization.
    """
    table = build_candidate_table(model, model.y_size + 2, cfg)
    deficits = _membership_deficit(table, tup)
    best = int(np.argmin(deficits))
    slack = float(-deficits[best])
    rows = channel_candidates(table.row_grid, model.y_size, best, best + 1)[0]
    refined = False
    if cfg.refinement_rounds > 0:
        p_xy, p_y, p_zy = _model_kernels(model)

        def objective(w):
            w3 = w[None, :, :]
            izu = _mi_batch(np.einsum("zy,nyu->nzu", p_zy, w3))[0]
            iyu = _mi_batch((p_y[None, :, None] * w3))[0]
            ixu = _mi_batch(np.einsum("xy,nyu->nxu", p_xy, w3))[0]
            d = max(
                (tup.r_i + tup.r_s) - izu,
                iyu - tup.r_j,
                (ixu - izu + tup.r_i) - tup.r_l,
            )
            return (-d,)

        better = refine_rows(rows, objective, cfg.grid_steps, cfg.refinement_rounds)
        new_slack = objective(better)[0]
        if new_slack > slack:
            rows, slack, refined = better, float(new_slack), True
    member = slack >= -cfg.tolerance
    witness = Channel.from_rows(rows) if member else None
    return MembershipResult(
        member=member,
        witness=witness,
        slack=slack,
        grid_steps=cfg.grid_steps,
        u_cardinality=table.u_cardinality,
        refined=refined,
    )


def _corner_quantities(model: SystemModel, table: CandidateTable, cfg: SearchConfig):
    """Best achievable (i_zu, i_xu, i_yu) corner plus its channel rows."""
    best = _best_candidate(table)
    rows = channel_candidates(table.row_grid, model.y_size, best, best + 1)[0]
    izu = float(table.i_zu[best])
    ixu = float(table.i_xu[best])
    iyu = float(table.i_yu[best])
    if cfg.refinement_rounds > 0:
        p_xy, p_y, p_zy = _model_kernels(model)

        def objective(w):
            w3 = w[None, :, :]
            a = _mi_batch(np.einsum("zy,nyu->nzu", p_zy, w3))[0]
            b = _mi_batch(np.einsum("xy,nyu->nxu", p_xy, w3))[0]
            c = _mi_batch((p_y[None, :, None] * w3))[0]
            return (a, a - b, -c)

        rows = refine_rows(rows, objective, cfg.grid_steps, cfg.refinement_rounds)
        a, ab, negc = objective(rows)
        izu, ixu, iyu = float(a), float(a - ab), float(-negc)
    return izu, ixu, iyu, rows


def boundary_sweep(
    model: SystemModel,
    spec: RegionSpec,
    cfg: SearchConfig,
    r_i_grid: Sequence[float],
) -> list:
    """Boundary rows (r_i, max r_s, min r_j, min r_l) over an identification grid.

    At each r_i the secrecy rate is maximized first; among its maximizers the
    privacy rate, then the template rate, are minimized.  For the A2 variant
    the inner optimization over P(V|U) is solved by the erasure family (which
    meets I(Z;V) = r_i exactly and therefore dominates any gridded V at the
    same U); each winning pair is re-verified through the full composition.
    """
    grid = [float(r) for r in r_i_grid]
    if not grid:
        raise ContractViolation("r_i_grid must be nonempty")
    if any(r < 0 for r in grid):
        raise ContractViolation("r_i values must be nonnegative")
    spec.validate_for(model)
    table = build_candidate_table(model, spec.u_cardinality, cfg)
    izu, ixu, iyu, rows = _corner_quantities(model, table, cfg)

    out = []
    for r_i in grid:
        if r_i > izu + cfg.tolerance:
            out.append(SweepRow(r_i, float("nan"), float("nan"), float("nan"), False))
            continue
        if spec.variant == "A1":
            r_s = max(0.0, izu - r_i)
            r_l = max(0.0, ixu - izu + r_i)
            out.append(SweepRow(r_i, r_s, iyu, r_l, True))
        else:
            lam = 0.0 if izu <= 0.0 else min(1.0, r_i / izu)
            pair = AuxiliaryPair(
                Channel.from_rows(rows), erasure_extension(spec.u_cardinality, lam)
            )
            s = summarize(model, pair)
            r_s = max(0.0, s.i_zu - s.i_zv)
            r_l = max(0.0, s.i_xu - s.i_zu + s.i_zv)
            out.append(SweepRow(r_i, r_s, s.i_yu, r_l, True))
    return out


# ---------------------------------------------------------------------------
# Equivalence, reductions, cardinality support
# ---------------------------------------------------------------------------


def _alphabet_guard(model: SystemModel, what: str):
    if max(model.x_size, model.y_size, model.z_size) > 3:
        raise BudgetExceeded(
            "alphabet", f"{what} supports alphabets up to 3 symbols"
        )


def _v_combo_channels(u_card: int, v_card: int, steps: int, limit: int) -> np.ndarray:
    """Deterministically subsampled grid of P(V|U) channels, (n, u_card, v_card)."""
    row_grid = simplex_grid(v_card, steps)
    total = channel_candidate_count(u_card, v_card, steps)
    stride = max(1, math.ceil(total / limit))
    picks = np.arange(0, total, stride, dtype=np.int64)
    out = np.empty((picks.size, u_card, v_card))
    for j, t in enumerate(picks):
        out[j] = channel_candidates(row_grid, u_card, int(t), int(t) + 1)[0]
    return out


def check_equivalence(model: SystemModel, cfg: SearchConfig) -> EquivalenceReport:
    """Two-way numerical containment check between the A1 and A2 grids.

    Direction A2 -> A1: extreme tuples of gridded (U, V) pairs, each computed
    from the full five-way composition, must be certified achievable by a scan
    of the single-auxiliary candidate table.  Direction A1 -> A2: each corner
    split of a gridded U must be matched by a pair witness, built from the
    erasure family and verified through the full composition.  Reports the
    worst constraint violation seen in either direction.
    """
    _alphabet_guard(model, "check_equivalence")
    u_card = model.y_size + 2
    table = build_candidate_table(model, u_card, cfg)

    sub_cfg = SearchConfig(
        grid_steps=max(2, cfg.grid_steps // 2),
        tolerance=cfg.tolerance,
        threads=cfg.threads,
        chunk=cfg.chunk,
        max_candidates=cfg.max_candidates,
    )
    sub = build_candidate_table(model, u_card, sub_cfg, keep_pzu=True)

    v_card = min(2, model.y_size + 3)
    v_steps = cfg.effective_v_steps
    v_combos = _v_combo_channels(u_card, v_card, v_steps, limit=64)
    lam_grid = np.linspace(0.0, 1.0, cfg.grid_steps + 1)

    # --- A2 tuples into A1 ---------------------------------------------------
    # Bulk pass: every (sub-grid U) x (sampled V) pair, tuple coordinates from
    # the batched pair quantities, membership via the pair's own U (an explicit
    # conclusive witness).  Deep pass below re-derives a subsample through
    # compose_joint and scans the whole table.
    worst_a2 = 0.0
    n_a2 = 0
    for vc in v_combos:
        p_zv = np.einsum("nzu,uv->nzv", sub.p_zu, vc)
        i_zv = _mi_batch(p_zv)
        r_i = np.maximum(i_zv, 0.0)
        r_s = np.maximum(sub.i_zu - i_zv, 0.0)
        r_l = np.maximum(sub.i_xu - sub.i_zu + i_zv, 0.0)
        d1 = (r_i + r_s) - sub.i_zu
        d3 = (sub.i_xu - sub.i_zu + r_i) - r_l
        own = np.maximum(d1, d3)  # the r_j constraint is met with equality
        n_a2 += own.size
        worst_a2 = max(worst_a2, float(own.max(initial=0.0)))

    deep_stride = max(1, sub.count // 40)
    deep_indices = range(0, sub.count, deep_stride)
    v_deep = v_combos[:: max(1, len(v_combos) // 4)]
    for t in deep_indices:
        u_chan = sub.channel(t)
        for vc in v_deep:
            pair = AuxiliaryPair(u_chan, Channel.from_rows(vc))
            tup = extreme_tuple_a2(summarize(model, pair))
            deficit = float(_membership_deficit(table, tup).min())
            worst_a2 = max(worst_a2, deficit)
            n_a2 += 1

    # --- A1 corner splits into A2 ---------------------------------------------
    worst_a1 = 0.0
    n_a1 = 0
    for t in range(sub.count):
        u_chan = sub.channel(t)
        izu, ixu, iyu = float(sub.i_zu[t]), float(sub.i_xu[t]), float(sub.i_yu[t])
        for lam in lam_grid:
            r_i = lam * izu
            r_s = izu - r_i
            r_l = max(0.0, ixu - izu + r_i)
            pair = AuxiliaryPair(u_chan, erasure_extension(u_card, float(lam)))
            s = summarize(model, pair)
            viol = max(
                r_i - s.i_zv,
                r_s - (s.i_zu - s.i_zv),
                s.i_yu - iyu,
                (s.i_xu - s.i_zu + s.i_zv) - r_l,
            )
            worst_a1 = max(worst_a1, float(viol))
            n_a1 += 1

    return EquivalenceReport(
        max_violation_a2_in_a1=worst_a2,
        max_violation_a1_in_a2=worst_a1,
        a2_tuples_checked=n_a2,
        a1_tuples_checked=n_a1,
        grid_steps=cfg.grid_steps,
        a2_u_grid_steps=sub_cfg.grid_steps,
        a2_v_grid_steps=v_steps,
        v_cardinality=v_card,
        tolerance=cfg.tolerance,
    )


def _entropy_1d(p: np.ndarray) -> float:
    nz = p[p > 0.0]
    return float(-(nz * np.log2(nz)).sum()) + 0.0


def _direct_corner(model: SystemModel, u_card: int, cfg: SearchConfig):
    """Independent route: entropy-formula MI over the same candidate grid."""
    p_xy, p_y, p_zy = _model_kernels(model)
    row_grid = simplex_grid(u_card, cfg.grid_steps)
    count = channel_candidate_count(model.y_size, u_card, cfg.grid_steps)
    h_z = _entropy_1d(p_zy.sum(axis=1))
    h_x = _entropy_1d(model.source.probs)
    h_y = _entropy_1d(p_y)
    best = None
    for a in range(0, count, cfg.chunk):
        w = channel_candidates(row_grid, model.y_size, a, min(a + cfg.chunk, count))
        p_zyu = p_zy[None, :, :, None] * w[:, None, :, :]
        p_zu = p_zyu.sum(axis=2)
        p_xyu = p_xy[None, :, :, None] * w[:, None, :, :]
        p_xu = p_xyu.sum(axis=2)
        p_yu = p_y[None, :, None] * w
        p_u = p_yu.sum(axis=1)
        h_u = np.array([_entropy_1d(r) for r in p_u])
        h_zu = np.array([_entropy_1d(m.ravel()) for m in p_zu])
        h_xu = np.array([_entropy_1d(m.ravel()) for m in p_xu])
        h_yu = np.array([_entropy_1d(m.ravel()) for m in p_yu])
        i_zu = np.maximum(h_z + h_u - h_zu, 0.0)
        i_xu = np.maximum(h_x + h_u - h_xu, 0.0)
        i_yu = np.maximum(h_y + h_u - h_yu, 0.0)
        for j in range(i_zu.size):
            key = (i_zu[j], -(i_xu[j]), -(i_yu[j]))
            if best is None or key > best[0]:
                best = (key, float(i_zu[j]), float(i_xu[j]), float(i_yu[j]))
    return best[1], best[2], best[3]


def reduction_checks(model: SystemModel, cfg: SearchConfig) -> ReductionReport:
    """Check the two special-case reductions of the region characterization.

    (i) with a noiseless enrollment channel and the template constraint
    ignored, the swept boundary must match a directly computed two-constraint
    region; (ii) the r_i = 0 slice must match the single-individual region.
    Both comparisons share one candidate grid per check.
    """
    # (i) noiseless enrollment: replace Y by X
    noiseless = SystemModel(
        model.source, Channel.identity(model.x_size), model.identify
    )
    u_card = noiseless.y_size + 2
    spec = RegionSpec("A1", u_card)
    izu_d, ixu_d, _ = _direct_corner(noiseless, u_card, cfg)
    r_i_grid = tuple(float(r) for r in np.linspace(0.0, izu_d, 9))
    swept = boundary_sweep(noiseless, spec, cfg, r_i_grid)
    dev_i = 0.0
    for row, r_i in zip(swept, r_i_grid):
        if not row.feasible:
            dev_i = max(dev_i, abs(izu_d - r_i))
            continue
        direct_rs = max(0.0, izu_d - r_i)
        direct_rl = max(0.0, ixu_d - izu_d + r_i)
        dev_i = max(dev_i, abs(row.max_r_s - direct_rs), abs(row.min_r_l - direct_rl))

    # (ii) r_i = 0 slice equals the single-individual region
    u_card2 = model.y_size + 2
    spec2 = RegionSpec("A1", u_card2)
    slice0 = boundary_sweep(model, spec2, cfg, [0.0])[0]
    izu_s, ixu_s, iyu_s = _direct_corner(model, u_card2, cfg)
    dev_ii = max(
        abs(slice0.max_r_s - izu_s),
        abs(slice0.min_r_j - iyu_s),
        abs(slice0.min_r_l - max(0.0, ixu_s - izu_s)),
    )
    return ReductionReport(
        max_dev_noiseless_enroll=float(dev_i),
        max_dev_single_individual=float(dev_ii),
        tolerance=cfg.tolerance,
        r_i_grid=r_i_grid,
        matches_noiseless_enroll=bool(dev_i <= cfg.tolerance),
        matches_single_individual=bool(dev_ii <= cfg.tolerance),
    )


def cardinality_sweep(
    model: SystemModel, cfg: SearchConfig, max_extra: int
) -> CardinalityReport:
    """Boundary change from growing |U| past the support-lemma size."""
    if max_extra < 1:
        raise ContractViolation("max_extra must be positive")
    _alphabet_guard(model, "cardinality_sweep")
    base_card = model.y_size + 2
    corners = []
    for extra in range(max_extra + 1):
        table = build_candidate_table(model, base_card + extra, cfg)
        izu, ixu, iyu, _ = _corner_quantities(model, table, cfg)
        corners.append((izu, ixu, iyu))
    izu0, ixu0, iyu0 = corners[0]
    improvements = []
    worst = 0.0
    for extra in range(1, max_extra + 1):
        izu, ixu, iyu = corners[extra]
        d_rs = max(0.0, izu - izu0)
        d_rl = max(0.0, (ixu0 - izu0) - (ixu - izu))
        d_rj = max(0.0, iyu0 - iyu)
        improvements.append((extra, d_rs, d_rl, d_rj))
        worst = max(worst, d_rs, d_rl, d_rj)
    return CardinalityReport(
        base_cardinality=base_card,
        improvements=tuple(improvements),
        max_improvement=worst,
        grid_steps=cfg.grid_steps,
    )
