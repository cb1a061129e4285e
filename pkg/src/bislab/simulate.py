"""Random-binning enrollment/identification simulator with one-time-pad binding.

The construction: cloud-center sequences drawn i.i.d. from the V marginal,
per-center satellite sequences drawn from the U|V conditional, a uniform
permutation of each center's satellites, and an even partition of the permuted
satellites into bins of one-secret size.  Enrollment finds a jointly typical
(center, satellite) pair for the observed noisy sequence and stores (center,
bin, pad-masked secret); identification scans all enrolled templates and all
secret slots for a unique jointly typical match.  Error, secrecy-leakage, and
privacy-leakage statistics come from seeded Monte Carlo trials plus exact
enumeration at small block lengths.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from . import kernels
from .errors import BudgetExceeded, ContractViolation
from .probability import (
    AXIS_U,
    AXIS_V,
    AXIS_Y,
    AXIS_Z,
    AuxiliaryPair,
    SystemModel,
    compose_joint,
    marginalize,
)
from .region import MutualInfoSummary, summarize
from .typicality import SymbolSequence, TypicalityParams

DEFAULT_EXACT_BUDGET = 5_000_000

RngLike = Union[int, np.random.Generator]


def _as_rng(seed: RngLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(np.random.SeedSequence(seed))


# ---------------------------------------------------------------------------
# Parameters and codebook
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CodeParams:
    """Code sizes: individuals, secrets, templates, centers, satellites, bins."""

    n: int
    delta_rate: float
    m_i: int
    m_s: int
    m_j_c: int
    m_j_g: int
    n_v: int
    n_u: int
    n_b: int
    clamped: tuple = ()

    def __post_init__(self):
        if self.n < 1:
            raise ContractViolation("block length must be positive")
        if not self.delta_rate > 0.0:
            raise ContractViolation("delta_rate must be positive")
        for name in ("m_i", "m_s", "m_j_c", "m_j_g", "n_v", "n_u", "n_b"):
            if getattr(self, name) < 1:
                raise ContractViolation(f"{name} must be positive")
        if self.n_u != self.n_b * self.m_s:
            raise ContractViolation("satellites must split evenly into bins: n_u = n_b * m_s")
        if self.m_j_g != self.n_v * self.n_b:
            raise ContractViolation("m_j_g must equal n_v * n_b")
        if self.m_j_c != self.m_j_g * self.m_s:
            raise ContractViolation("m_j_c must equal m_j_g * m_s")


def _count(rate_exponent: float, n: int) -> int:
    return int(round(2.0 ** (n * rate_exponent)))


def derive_params(
    model: SystemModel, aux: AuxiliaryPair, n: int, delta_rate: float
) -> CodeParams:
    """Code sizes from the information quantities at rate slack delta_rate.

    Counts that would round below one are clamped to one and recorded in the
    result's `clamped` field.
    """
    if n < 1:
        raise ContractViolation("block length must be positive")
    if not delta_rate > 0.0:
        raise ContractViolation("delta_rate must be positive")
    s = summarize(model, aux)
    d = delta_rate
    raw = {
        "m_i": _count(s.i_zv - d, n),
        "m_s": _count(s.i_zu - s.i_zv - d, n),
        "n_b": _count(s.i_yu_given_v - s.i_zu_given_v + 2 * d, n),
    }
    clamped = tuple(sorted(name for name, v in raw.items() if v < 1))
    m_i = max(1, raw["m_i"])
    m_s = max(1, raw["m_s"])
    n_b = max(1, raw["n_b"])
    n_v = int(math.ceil(2.0 ** (n * (s.i_yv + d))))
    n_u = n_b * m_s
    m_j_g = n_v * n_b
    return CodeParams(
        n=n,
        delta_rate=delta_rate,
        m_i=m_i,
        m_s=m_s,
        m_j_c=m_j_g * m_s,
        m_j_g=m_j_g,
        n_v=n_v,
        n_u=n_u,
        n_b=n_b,
        clamped=clamped,
    )


def rate_bookkeeping(params: CodeParams) -> dict:
    """Realized code rates in bits per symbol (identification, secrecy, template)."""
    n = params.n
    return {
        "identification": math.log2(params.m_i) / n,
        "secrecy": math.log2(params.m_s) / n,
        "template": math.log2(params.m_j_c) / n,
    }


@dataclass(frozen=True)
class Codebook:
    """Cloud centers, per-center satellites, and per-center permutations.

    Also carries the reference joints the encoder (Y,V,U) and decoder (Z,V,U)
    test typicality against, flattened in C order.
    """

    params: CodeParams
    cloud: np.ndarray  # (n_v, n) int64
    satellites: np.ndarray  # (n_v, n_u, n) int64
    permutations: np.ndarray  # (n_v, n_u) int64; permutations[m][k] = permuted slot
    y_size: int
    z_size: int
    u_size: int
    v_size: int
    p_yvu: np.ndarray  # flat over (y, v, u)
    p_zvu: np.ndarray  # flat over (z, v, u)

    def __post_init__(self):
        p = self.params
        cloud = np.ascontiguousarray(self.cloud, dtype=np.int64)
        sats = np.ascontiguousarray(self.satellites, dtype=np.int64)
        perms = np.ascontiguousarray(self.permutations, dtype=np.int64)
        if cloud.shape != (p.n_v, p.n):
            raise ContractViolation("cloud shape mismatch")
        if sats.shape != (p.n_v, p.n_u, p.n):
            raise ContractViolation("satellites shape mismatch")
        if perms.shape != (p.n_v, p.n_u):
            raise ContractViolation("permutations shape mismatch")
        if cloud.size and (cloud.min() < 0 or cloud.max() >= self.v_size):
            raise ContractViolation("cloud symbol out of range")
        if sats.size and (sats.min() < 0 or sats.max() >= self.u_size):
            raise ContractViolation("satellite symbol out of range")
        ident = np.arange(p.n_u)
        for m in range(p.n_v):
            if not np.array_equal(np.sort(perms[m]), ident):
                raise ContractViolation(f"permutation {m} is not a bijection")
        inv = np.argsort(perms, axis=1)
        for name, val in (
            ("cloud", cloud),
            ("satellites", sats),
            ("permutations", perms),
            ("inverse_permutations", inv),
            ("scan_v_rows", np.repeat(cloud, p.n_u, axis=0)),
            ("scan_u_rows", sats.reshape(p.n_v * p.n_u, p.n)),
            ("p_yvu", np.ascontiguousarray(self.p_yvu, dtype=np.float64)),
            ("p_zvu", np.ascontiguousarray(self.p_zvu, dtype=np.float64)),
        ):
            val.flags.writeable = False
            object.__setattr__(self, name, val)


@dataclass(frozen=True)
class Template:
    """Stored helper data: cloud index, bin index, pad-masked secret."""

    m_index: int
    b_index: int
    masked_secret: int

    def __post_init__(self):
        if min(self.m_index, self.b_index, self.masked_secret) < 0:
            raise ContractViolation("template indices must be nonnegative")


@dataclass(frozen=True)
class Database:
    templates: tuple

    def __post_init__(self):
        object.__setattr__(self, "templates", tuple(self.templates))
        if not self.templates:
            raise ContractViolation("database must hold at least one template")


@dataclass(frozen=True)
class EnrollResult:
    template: Template
    gs_secret: int
    failed: bool


@dataclass(frozen=True)
class IdentifyResult:
    individual: Optional[int]
    secret_estimate: Optional[int]
    failed: bool
    n_matches: int


@dataclass(frozen=True)
class ExactLeakage:
    secrecy_leakage_bits: float
    privacy_leakage_rate: float
    gs_secret_entropy_bits: float
    gs_privacy_leakage_rate: float  # (1/n) I(X^n; J_G), the masking-layer bound


@dataclass(frozen=True)
class SimReport:
    trials: int
    error_rate: float
    error_rate_ci95: float
    secrecy_leakage_bits: Optional[float]
    privacy_leakage_rate: Optional[float]
    exact_mode: bool
    params_echo: CodeParams

    def __post_init__(self):
        if not 0.0 <= self.error_rate <= 1.0:
            raise ContractViolation("error_rate must lie in [0, 1]")
        for v in (self.secrecy_leakage_bits, self.privacy_leakage_rate):
            if v is not None and v < -1e-9:
                raise ContractViolation("leakage values must be nonnegative")


def sampling_laws(model: SystemModel, aux: AuxiliaryPair):
    """(P_V, P(U|V), flat P_YVU, flat P_ZVU) derived from the composed joint."""
    joint = compose_joint(model, aux)
    p_uv = marginalize(joint, (AXIS_U, AXIS_V)).mass
    p_v = p_uv.sum(axis=0)
    if abs(float(p_v.sum()) - 1.0) > 1e-9:
        raise ContractViolation("V marginal does not normalize; invalid auxiliary pair")
    u_size, v_size = p_uv.shape
    rows = np.empty((v_size, u_size))
    for v in range(v_size):
        if p_v[v] > 0.0:
            rows[v] = p_uv[:, v] / p_v[v]
        else:
            rows[v] = 1.0 / u_size  # never sampled
    p_yvu = marginalize(joint, (AXIS_Y, AXIS_V, AXIS_U)).mass
    p_zvu = marginalize(joint, (AXIS_Z, AXIS_V, AXIS_U)).mass
    return p_v, rows, p_yvu.ravel(), p_zvu.ravel()


def _sample_from_pmf(rng: np.random.Generator, pmf: np.ndarray, shape) -> np.ndarray:
    cum = np.cumsum(pmf)
    r = rng.random(shape)
    return np.sum(r[..., None] > cum[:-1], axis=-1).astype(np.int64)


def _apply_channel(rng: np.random.Generator, rows: np.ndarray, x: np.ndarray) -> np.ndarray:
    cum = np.cumsum(rows, axis=1)
    r = rng.random(x.shape)
    return np.sum(r[..., None] > cum[x][..., :-1], axis=-1).astype(np.int64)


def generate_codebook(
    model: SystemModel,
    aux: AuxiliaryPair,
    params: CodeParams,
    seed: RngLike,
    permute: bool = True,
) -> Codebook:
    """Draw the cloud, satellites, and permutations; deterministic given seed.

    Draw order: cloud first, then each center's satellites, then each center's
    permutation.  `permute=False` installs identity permutations (ablation).
    """
    rng = _as_rng(seed)
    p_v, u_given_v, p_yvu, p_zvu = sampling_laws(model, aux)
    n, n_v, n_u = params.n, params.n_v, params.n_u
    cloud = _sample_from_pmf(rng, p_v, (n_v, n))
    cum_uv = np.cumsum(u_given_v, axis=1)
    sats = np.empty((n_v, n_u, n), dtype=np.int64)
    for m in range(n_v):
        r = rng.random((n_u, n))
        sats[m] = np.sum(r[..., None] > cum_uv[cloud[m]][None, :, :-1], axis=-1)
    if permute:
        perms = np.stack([rng.permutation(n_u) for _ in range(n_v)])
    else:
        perms = np.tile(np.arange(n_u, dtype=np.int64), (n_v, 1))
    return Codebook(
        params=params,
        cloud=cloud,
        satellites=sats,
        permutations=perms,
        y_size=model.y_size,
        z_size=model.z_size,
        u_size=aux.u_size,
        v_size=aux.v_size,
        p_yvu=p_yvu,
        p_zvu=p_zvu,
    )


# ---------------------------------------------------------------------------
# Masking layer
# ---------------------------------------------------------------------------


def mask(s_c: int, s_g: int, m_s: int) -> int:
    """One-time-pad combination of the chosen secret with the extracted one."""
    if not (0 <= s_c < m_s and 0 <= s_g < m_s):
        raise ContractViolation("secrets must lie in [0, m_s)")
    return (s_c + s_g) % m_s


def unmask(masked: int, s_g_hat: int, m_s: int) -> int:
    if not (0 <= masked < m_s and 0 <= s_g_hat < m_s):
        raise ContractViolation("inputs must lie in [0, m_s)")
    return (masked - s_g_hat) % m_s


# ---------------------------------------------------------------------------
# Enrollment and identification
# ---------------------------------------------------------------------------

FALLBACK_M = 0
FALLBACK_B = 0
FALLBACK_SG = 0


def enroll_candidates(codebook: Codebook, y_seq: SymbolSequence, typ: TypicalityParams) -> np.ndarray:
    """Indices (m * n_u + k) of all typicality-matching (center, satellite) pairs."""
    if y_seq.alphabet_size != codebook.y_size or len(y_seq) != codebook.params.n:
        raise ContractViolation("enrollment sequence has the wrong alphabet or length")
    mask_arr = kernels.scan_triples(
        y_seq.symbols,
        codebook.scan_v_rows,
        codebook.scan_u_rows,
        codebook.p_yvu,
        codebook.v_size,
        codebook.u_size,
        typ.delta,
    )
    return np.flatnonzero(mask_arr)


def enroll(
    codebook: Codebook,
    y_seq: SymbolSequence,
    chosen_secret: int,
    typ: TypicalityParams,
    seed: RngLike,
) -> EnrollResult:
    """Bind a chosen secret to an observed sequence; ties break uniformly.

    No jointly typical pair means the designated fallback template is stored
    and the event counts as an enrollment error.
    """
    p = codebook.params
    if not 0 <= chosen_secret < p.m_s:
        raise ContractViolation("chosen_secret out of range")
    rng = _as_rng(seed)
    cand = enroll_candidates(codebook, y_seq, typ)
    if cand.size == 0:
        fallback = Template(FALLBACK_M, FALLBACK_B, mask(chosen_secret, FALLBACK_SG, p.m_s))
        return EnrollResult(fallback, FALLBACK_SG, True)
    pick = int(cand[rng.integers(cand.size)])
    m, k = divmod(pick, p.n_u)
    slot = int(codebook.permutations[m, k])
    b, s_g = divmod(slot, p.m_s)
    return EnrollResult(Template(m, b, mask(chosen_secret, s_g, p.m_s)), s_g, False)


def identify(
    codebook: Codebook,
    db: Database,
    z_seq: SymbolSequence,
    typ: TypicalityParams,
) -> IdentifyResult:
    """Scan all enrolled individuals and secret slots for a unique typical match."""
    p = codebook.params
    if z_seq.alphabet_size != codebook.z_size or len(z_seq) != p.n:
        raise ContractViolation("identification sequence has the wrong alphabet or length")
    m_arr = np.array([t.m_index for t in db.templates], dtype=np.int64)
    b_arr = np.array([t.b_index for t in db.templates], dtype=np.int64)
    if m_arr.max(initial=0) >= p.n_v or b_arr.max(initial=0) >= p.n_b:
        raise ContractViolation("template indices exceed the codebook")
    slots = b_arr[:, None] * p.m_s + np.arange(p.m_s, dtype=np.int64)[None, :]
    m_rep = np.repeat(m_arr, p.m_s)
    k_arr = codebook.inverse_permutations[m_rep, slots.ravel()]
    v_rows = codebook.cloud[m_rep]
    u_rows = codebook.satellites[m_rep, k_arr]
    mask_arr = kernels.scan_triples(
        z_seq.symbols,
        v_rows,
        u_rows,
        codebook.p_zvu,
        codebook.v_size,
        codebook.u_size,
        typ.delta,
    )
    matches = np.flatnonzero(mask_arr)
    if matches.size != 1:
        return IdentifyResult(None, None, True, int(matches.size))
    i, s = divmod(int(matches[0]), p.m_s)
    s_c_hat = unmask(db.templates[i].masked_secret, s, p.m_s)
    return IdentifyResult(i, s_c_hat, False, 1)


# ---------------------------------------------------------------------------
# Monte Carlo trials
# ---------------------------------------------------------------------------


def _one_trial(
    model: SystemModel,
    aux: AuxiliaryPair,
    params: CodeParams,
    typ: TypicalityParams,
    codebook: Optional[Codebook],
    rng: np.random.Generator,
    w_mode: str,
    permute: bool,
):
    """Returns per-individual error indicators (sweep) or a single indicator."""
    if codebook is None:
        codebook = generate_codebook(model, aux, params, rng, permute=permute)
    p = params
    xs = _sample_from_pmf(rng, model.source.probs, (p.m_i, p.n))
    ys = _apply_channel(rng, model.enroll.rows, xs)
    secrets = rng.integers(0, p.m_s, size=p.m_i)
    results = [
        enroll(codebook, SymbolSequence(model.y_size, ys[i]), int(secrets[i]), typ, rng)
        for i in range(p.m_i)
    ]
    db = Database(tuple(r.template for r in results))

    def attempt(w: int) -> int:
        z = _apply_channel(rng, model.identify.rows, xs[w])
        out = identify(codebook, db, SymbolSequence(model.z_size, z), typ)
        wrong = out.failed or out.individual != w or out.secret_estimate != int(secrets[w])
        return 1 if (results[w].failed or wrong) else 0

    if w_mode == "sweep":
        return np.array([attempt(w) for w in range(p.m_i)], dtype=np.int64)
    w = int(rng.integers(p.m_i))
    return np.array([attempt(w)], dtype=np.int64)


def run_trials(
    model: SystemModel,
    aux: AuxiliaryPair,
    params: CodeParams,
    typ: TypicalityParams,
    trials: int,
    seed: int,
    w_mode: str = "uniform",
    fresh_codebook: bool = False,
    permute: bool = True,
    exact: str = "auto",
    exact_budget: int = DEFAULT_EXACT_BUDGET,
    threads: int = 1,
) -> SimReport:
    """Monte Carlo error-rate measurement, plus exact leakage when affordable.

    All randomness derives from `seed`: one child stream for the shared
    codebook and one per trial, so parallel and serial execution agree and the
    identified-individual statistics are reproducible.  `w_mode="sweep"`
    evaluates every enrolled individual each trial and reports the worst
    per-individual error rate.
    """
    if trials < 1:
        raise ContractViolation("trials must be positive")
    if w_mode not in ("uniform", "sweep"):
        raise ContractViolation("w_mode must be 'uniform' or 'sweep'")
    if exact not in ("auto", "require", "skip"):
        raise ContractViolation("exact must be 'auto', 'require', or 'skip'")
    children = np.random.SeedSequence(seed).spawn(trials + 1)
    codebook = None
    if not fresh_codebook:
        codebook = generate_codebook(
            model, aux, params, np.random.default_rng(children[0]), permute=permute
        )

    def trial(i: int):
        rng = np.random.default_rng(children[1 + i])
        return _one_trial(model, aux, params, typ, codebook, rng, w_mode, permute)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            rows = list(ex.map(trial, range(trials)))
    else:
        rows = [trial(i) for i in range(trials)]
    errors = np.stack(rows)  # (trials, m_i) in sweep mode, (trials, 1) otherwise
    per_i = errors.mean(axis=0)
    p_hat = float(per_i.max())
    ci = 1.96 * math.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / trials)

    secrecy = privacy = None
    exact_mode = False
    if exact != "skip" and codebook is not None:
        cost = (model.y_size ** params.n) * params.n_v * params.n_u
        if cost <= exact_budget:
            leak = exact_leakage(model, aux, params, typ, codebook, budget=exact_budget)
            secrecy = leak.secrecy_leakage_bits
            privacy = leak.privacy_leakage_rate
            exact_mode = True
        elif exact == "require":
            raise BudgetExceeded(
                "enumeration",
                f"exact leakage needs {cost} scan steps, budget is {exact_budget}",
            )
    elif exact == "require" and codebook is None:
        raise ContractViolation("exact leakage requires a fixed codebook")

    return SimReport(
        trials=trials,
        error_rate=p_hat,
        error_rate_ci95=ci,
        secrecy_leakage_bits=secrecy,
        privacy_leakage_rate=privacy,
        exact_mode=exact_mode,
        params_echo=params,
    )


# ---------------------------------------------------------------------------
# Exact leakage by enumeration
# ---------------------------------------------------------------------------


def enumerate_sequences(alphabet_size: int, n: int) -> np.ndarray:
    """All length-n sequences in lexicographic order, shape (alphabet_size**n, n)."""
    total = alphabet_size**n
    idx = np.arange(total, dtype=np.int64)
    out = np.empty((total, n), dtype=np.int64)
    for t in range(n - 1, -1, -1):
        out[:, t] = idx % alphabet_size
        idx //= alphabet_size
    return out


def _sequence_log_probs(seqs: np.ndarray, pmf: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        logs = np.log(pmf)
    vals = logs[seqs].sum(axis=1)
    return vals


def _mi_2d(p: np.ndarray) -> float:
    pa = p.sum(axis=1, keepdims=True)
    pb = p.sum(axis=0, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0.0, p * np.log2(p / (pa * pb)), 0.0)
    return max(0.0, float(terms.sum()))


def exact_leakage(
    model: SystemModel,
    aux: AuxiliaryPair,
    params: CodeParams,
    typ: TypicalityParams,
    codebook: Codebook,
    budget: int = DEFAULT_EXACT_BUDGET,
) -> ExactLeakage:
    """Exact secrecy and privacy leakage of one enrolled individual.

    Enumerates every source and observed sequence and the encoder's uniform
    tie-breaking to build the joint law of (X^n, stored template, chosen
    secret) under the fixed codebook.  Also returns the extracted-secret
    entropy and the helper-part privacy rate (1/n) I(X^n; J_G), which must
    dominate the template privacy rate.
    """
    p = params
    n_y = model.y_size**p.n
    cost = n_y * p.n_v * p.n_u
    if cost > budget:
        raise BudgetExceeded(
            "enumeration", f"exact leakage needs {cost} scan steps, budget is {budget}"
        )
    n_x = model.x_size**p.n
    n_jg = p.n_v * p.n_b

    # Encoder law Q[y, jg, s_g]: uniform over typical candidates, else fallback.
    ys = enumerate_sequences(model.y_size, p.n)
    q = np.zeros((n_y, n_jg, p.m_s))
    slots_all = codebook.permutations  # (n_v, n_u): k -> permuted slot
    for yi in range(n_y):
        cand = enroll_candidates(
            codebook, SymbolSequence(model.y_size, ys[yi]), typ
        )
        if cand.size == 0:
            q[yi, FALLBACK_M * p.n_b + FALLBACK_B, FALLBACK_SG] = 1.0
            continue
        w = 1.0 / cand.size
        for c in cand:
            m, k = divmod(int(c), p.n_u)
            b, s_g = divmod(int(slots_all[m, k]), p.m_s)
            q[yi, m * p.n_b + b, s_g] += w

    xs = enumerate_sequences(model.x_size, p.n)
    log_px = _sequence_log_probs(xs, model.source.probs)
    # per-sequence channel law: sum over positions of log P(y_t | x_t)
    with np.errstate(divide="ignore"):
        log_rows = np.log(model.enroll.rows)
    log_pyx = np.zeros((n_x, n_y))
    for t in range(p.n):
        log_pyx += log_rows[xs[:, t][:, None], ys[:, t][None, :]]
    p_xy = np.exp(log_px[:, None] + log_pyx)  # (n_x, n_y), zero where impossible

    t_xjs = np.einsum("xy,yjs->xjs", p_xy, q)  # (n_x, n_jg, m_s)
    p_x_jg = t_xjs.sum(axis=2)
    i_x_jg = _mi_2d(p_x_jg)

    # Joint of (X^n, J_C=(jg, c)) with the pad summed out: uniform third part.
    shift = (np.arange(p.m_s)[:, None] - np.arange(p.m_s)[None, :]) % p.m_s
    # P(x, jg, c) = sum_sc T[x, jg, (c - sc) mod m_s] / m_s
    p_x_jc = t_xjs[:, :, shift].sum(axis=3) / p.m_s  # (n_x, n_jg, m_s)
    i_x_jc = _mi_2d(p_x_jc.reshape(n_x, n_jg * p.m_s))

    # Joint of (J_C, S_C): G[jg, sg] summed over sources, shifted by the pad.
    g = t_xjs.sum(axis=0)  # (n_jg, m_s)
    p_jc_sc = g[:, shift] / p.m_s  # (n_jg, c, sc)
    i_jc_sc = _mi_2d(p_jc_sc.reshape(n_jg * p.m_s, p.m_s))

    p_sg = g.sum(axis=0)
    nzg = p_sg[p_sg > 0.0]
    h_sg = float(-(nzg * np.log2(nzg)).sum()) + 0.0

    if i_x_jc > i_x_jg + 1e-9:
        raise ContractViolation(
            "template privacy leakage exceeds its helper-part bound"
        )
    return ExactLeakage(
        secrecy_leakage_bits=i_jc_sc,
        privacy_leakage_rate=i_x_jc / p.n,
        gs_secret_entropy_bits=h_sg,
        gs_privacy_leakage_rate=i_x_jg / p.n,
    )


# ---------------------------------------------------------------------------
# Trend over block lengths
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrendRow:
    n: int
    params: CodeParams
    report: SimReport
    rates: dict


@dataclass(frozen=True)
class TrendReport:
    rows: tuple
    delta_rate: float
    error_bound_target: float
    privacy_rate_target: float
    secrecy_rate_target: float
    summary: MutualInfoSummary


def achievability_trend(
    model: SystemModel,
    aux: AuxiliaryPair,
    delta_rate: float,
    typ: TypicalityParams,
    n_list: Sequence[int],
    trials: int,
    seed: int,
    **run_kwargs,
) -> TrendReport:
    """Error and leakage across block lengths, with the asymptotic targets.

    Reports trends only: finite-length fluctuation is expected and no
    monotonicity is asserted.
    """
    ns = [int(n) for n in n_list]
    if ns != sorted(ns) or len(set(ns)) != len(ns):
        raise ContractViolation("n_list must be strictly increasing")
    s = summarize(model, aux)
    rows = []
    for n in ns:
        params = derive_params(model, aux, n, delta_rate)
        report = run_trials(
            model, aux, params, typ, trials, seed, **run_kwargs
        )
        rows.append(TrendRow(n=n, params=params, report=report, rates=rate_bookkeeping(params)))
    return TrendReport(
        rows=tuple(rows),
        delta_rate=delta_rate,
        error_bound_target=4.0 * delta_rate,
        privacy_rate_target=s.i_xu - s.i_zu + s.i_zv + 3.0 * delta_rate,
        secrecy_rate_target=4.0 * delta_rate,
        summary=s,
    )
