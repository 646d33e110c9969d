"""Seeded verification campaigns over random instances.

Every trial is reproducible in isolation: its generator is seeded by a hash
of (root seed, inequality id, dims, function id, beta, trial index), and the
resulting integer is stored in the report, so a failing line can be replayed
with :func:`run_single` from the report fields alone.  Reports stream to
JSONL in a fixed loop order, which makes repeated runs byte-identical.
"""

from __future__ import annotations

import hashlib
import io
from dataclasses import dataclass, field

import numpy as np

from . import bounds
from .entropy import quasi_relative_entropy, wyd_skew_information
from .errors import DivergentEntropy, InvalidParameter
from .functions import from_id
from .linalg import (
    FactorizedSpace,
    random_contraction,
    random_density,
    random_hermitian,
    random_unitary,
)
from .reports import BoundReport

SKEW_TOL = 1e-10


@dataclass(frozen=True)
class CampaignConfig:
    """One verification campaign: inequality x function x dims x beta grid."""

    inequalities: tuple[str, ...]
    functions: tuple[str, ...] = ("neg_log",)
    dims: tuple[tuple[int, ...], ...] = ((2, 2),)
    betas: tuple[float, ...] = (0.5,)
    trials: int = 100
    seed: int = 0
    rank_policy: str = "full"
    output_path: str | None = None
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.trials < 1:
            raise InvalidParameter(f"trials must be >= 1, got {self.trials}")
        if any(not 0.0 < b < 1.0 for b in self.betas):
            raise InvalidParameter(f"betas must lie in (0,1): {self.betas}")
        if self.rank_policy not in ("full", "mixed"):
            raise InvalidParameter(f"rank_policy must be full|mixed: {self.rank_policy}")
        unknown = [i for i in self.inequalities if i not in RUNNERS]
        if unknown:
            raise InvalidParameter(f"unknown inequalities {unknown}; known: {sorted(RUNNERS)}")


def parse_config(text: str) -> CampaignConfig:
    """Plain key = value lines; lists are comma separated, dims use '2x2x2'."""
    fields: dict = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidParameter(f"bad config line {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        fields[key] = val
    def split(v):
        return tuple(s.strip() for s in v.split(",") if s.strip())
    kwargs = {}
    if "inequalities" in fields:
        kwargs["inequalities"] = split(fields["inequalities"])
    else:
        raise InvalidParameter("config must list inequalities")
    if "functions" in fields:
        kwargs["functions"] = split(fields["functions"])
    if "dims" in fields:
        kwargs["dims"] = tuple(parse_dims(d) for d in split(fields["dims"]))
    if "betas" in fields:
        kwargs["betas"] = tuple(float(b) for b in split(fields["betas"]))
    for key in ("trials", "seed"):
        if key in fields:
            kwargs[key] = int(fields[key])
    if "rank_policy" in fields:
        kwargs["rank_policy"] = fields["rank_policy"]
    if "output" in fields:
        kwargs["output_path"] = fields["output"]
    # per-inequality pass tolerances: lines like  tol.monotonicity = 1e-8
    tols = {k[4:]: float(v) for k, v in fields.items() if k.startswith("tol.")}
    if tols:
        kwargs["tolerances"] = tols
    return CampaignConfig(**kwargs)


def parse_dims(s: str) -> tuple[int, ...]:
    try:
        return tuple(int(d) for d in s.replace("x", ",").split(",") if d)
    except ValueError as exc:
        raise InvalidParameter(f"bad dims {s!r}") from exc


def trial_seed(root: int, inequality: str, dims: tuple[int, ...],
               fid: str, beta: float, trial: int) -> int:
    key = f"{root}|{inequality}|{'x'.join(map(str, dims))}|{fid}|{beta!r}|{trial}"
    return int.from_bytes(hashlib.sha256(key.encode()).digest()[:8], "big") >> 1


def _sample_state(rng, dim: int, policy: str):
    if policy == "mixed" and dim > 1 and rng.random() < 0.2:
        return random_density(dim, rank=int(rng.integers(1, dim)), seed=rng)
    return random_density(dim, seed=rng)


# ----------------------------------------------------------------------------
# Trial runners: (f, space, beta, rng, policy) -> list[BoundReport]
# ----------------------------------------------------------------------------

def _run_monotonicity(f, space, beta, rng, policy):
    rho = _sample_state(rng, space.dim, policy)
    sigma = _sample_state(rng, space.dim, policy)
    k1 = random_contraction(space.dims[0], seed=rng)
    v = random_unitary(space.dims[1], seed=rng)
    return [bounds.verify_monotonicity(f, k1, v, rho, sigma, space)]


def _run_thm42(f, space, beta, rng, policy):
    rho = random_density(space.dim, seed=rng)
    sigma = random_density(space.dim, seed=rng)
    k1 = random_contraction(space.dims[0], seed=rng)
    v = random_unitary(space.dims[1], seed=rng)
    return [bounds.verify_thm42_grid(f, k1, v, rho, sigma, beta, space)]


def _run_monotonicity_bound(f, space, beta, rng, policy):
    rho = random_density(space.dim, seed=rng)
    sigma = random_density(space.dim, seed=rng)
    k1 = random_contraction(space.dims[0], seed=rng)
    v = random_unitary(space.dims[1], seed=rng)
    return [bounds.verify_monotonicity_bound(f, k1, v, rho, sigma, beta, space)]


def _run_joint_convexity(f, space, beta, rng, policy):
    comps = _sample_ensemble(rng, space.dim, 3)
    k = random_contraction(space.dim, seed=rng)
    return [bounds.verify_joint_convexity(f, k, comps, beta)]


def _sample_ensemble(rng, dim, n):
    probs = rng.dirichlet(np.ones(n))
    return [(float(p), random_density(dim, seed=rng), random_density(dim, seed=rng))
            for p in probs]


def _run_ssa(f, space, beta, rng, policy):
    rho = _sample_state(rng, space.dim, policy)
    return [bounds.verify_ssa(rho, beta, space)]


def _make_op_ssa(variant):
    def run(f, space, beta, rng, policy):
        rho = random_density(space.dim, seed=rng)
        sab = random_density(space.subspace((0, 1)).dim, seed=rng)
        return [bounds.verify_operator_ssa(f, rho, sab, beta, variant, space)]
    return run


def _run_pinsker(f, space, beta, rng, policy):
    rho = _sample_state(rng, space.dim, policy)
    sigma = _sample_state(rng, space.dim, policy)
    u = random_unitary(space.dim, seed=rng)
    return [bounds.pinsker_check(f, u, rho, sigma)]


def _run_classical(f, space, beta, rng, policy):
    rho = random_density(space.dim, seed=rng)
    sigma = random_density(space.dim, seed=rng)
    return [bounds.verify_classical_reduction(f, rho, sigma)]


def _run_wyd_skew(f, space, beta, rng, policy):
    p = _power_of(f)
    if p is None or not 0.0 < p < 1.0:
        return []
    rho = random_density(space.dim, seed=rng)
    k = random_hermitian(space.dim, seed=rng)
    skew = wyd_skew_information(p, rho, k)
    cross = p * (1.0 - p) * quasi_relative_entropy(f, k, rho, rho)
    scale = max(1.0, abs(skew))
    ok = skew >= -SKEW_TOL and abs(skew - cross) <= 1e-9 * scale
    rep = bounds._report("wyd_skew", 0.0, skew, ok,
                         notes=f"p={p:g}", details={"cross_check": cross})
    return [rep]


def _power_of(f):
    if f.name.startswith("f_p:"):
        return float(f.name.split(":", 1)[1])
    return None


def _run_wyd_joint(f, space, beta, rng, policy):
    p = _power_of(f)
    if p is None:
        return []
    comps = _sample_ensemble(rng, space.dim, 3)
    k = random_contraction(space.dim, seed=rng)
    return [bounds.verify_wyd_joint_concavity(p, k, comps, beta)]


def _run_wyd_operator(f, space, beta, rng, policy):
    p = _power_of(f)
    if p is None or not 0.0 < p < 1.0:
        return []
    rho = random_density(space.dim, seed=rng)
    sab = random_density(space.subspace((0, 1)).dim, seed=rng)
    return [bounds.verify_wyd_operator(p, rho, sab, beta, space)]


def _run_cauchy_schwarz(f, space, beta, rng, policy):
    rho = random_density(space.dim, seed=rng)
    sab = random_density(space.subspace((0, 1)).dim, seed=rng)
    return [bounds.verify_cauchy_schwarz(rho, sab, beta, space)]


def _run_lieb_ruskai(f, space, beta, rng, policy):
    d = space.dim
    x = random_contraction(d, seed=rng) * 2.0
    q = random_density(d, seed=rng).mat * d
    ac = FactorizedSpace((space.dims[0], int(np.prod(space.dims[1:]))))
    return [bounds.lieb_ruskai_check(x, q, ac)]


def _run_equality_mono(f, space, beta, rng, policy):
    return bounds.equality_monotonicity_sweep(f, space, rng)


def _run_equality_joint(f, space, beta, rng, policy):
    return bounds.equality_joint_convexity_sweep(f, space.dims[0], rng)


def _run_equality_op_ssa(f, space, beta, rng, policy):
    return bounds.equality_operator_ssa_sweep(f, space, rng)


RUNNERS = {
    "monotonicity": (_run_monotonicity, 2, True),
    "thm42": (_run_thm42, 2, True),
    "monotonicity_bound": (_run_monotonicity_bound, 2, True),
    "joint_convexity": (_run_joint_convexity, None, True),
    "ssa": (_run_ssa, 3, False),
    "operator_ssa_thm62": (_make_op_ssa("thm62"), 3, True),
    "operator_ssa_thm63": (_make_op_ssa("thm63"), 3, True),
    "operator_ssa_cor64": (_make_op_ssa("cor64"), 3, True),
    "operator_ssa_cor65": (_make_op_ssa("cor65"), 3, True),
    "pinsker": (_run_pinsker, None, True),
    "classical_reduction": (_run_classical, None, True),
    "wyd_skew": (_run_wyd_skew, None, True),
    "wyd_joint_concavity": (_run_wyd_joint, None, True),
    "wyd_operator": (_run_wyd_operator, 3, True),
    "cauchy_schwarz": (_run_cauchy_schwarz, 3, False),
    "lieb_ruskai": (_run_lieb_ruskai, 2, False),
    "equality_monotonicity": (_run_equality_mono, 2, True),
    "equality_joint_convexity": (_run_equality_joint, None, True),
    "equality_operator_ssa": (_run_equality_op_ssa, 3, True),
}

BETA_FREE = {"monotonicity", "pinsker", "classical_reduction", "wyd_skew",
             "lieb_ruskai", "equality_monotonicity", "equality_joint_convexity",
             "equality_operator_ssa"}


def run_single(inequality: str, fid: str, dims: tuple[int, ...], beta: float,
               seed: int, rank_policy: str = "full") -> list[BoundReport]:
    """Replay one trial from the fields a campaign report carries."""
    runner, nfac, _ = RUNNERS[inequality]
    space = FactorizedSpace(dims)
    if nfac is not None and space.nfactors != nfac:
        return []
    f = from_id(fid)
    rng = np.random.default_rng(seed)
    try:
        reports = runner(f, space, beta, rng, rank_policy)
    except DivergentEntropy as exc:
        rep = bounds._report(inequality, 0.0, 0.0, True,
                             notes=f"f={fid};divergent=1 ({exc})")
        rep.details["divergent"] = 1.0
        reports = [rep]
    for rep in reports:
        rep.seed = seed
        rep.notes = _with_context(rep.notes, fid, dims, beta)
    return reports


def _with_context(notes, fid, dims, beta):
    parts = [f"dims={'x'.join(map(str, dims))}"]
    if "f=" not in notes:
        parts.append(f"f={fid}")
    if "beta=" not in notes:
        parts.append(f"beta={beta:g}")
    ctx = ";".join(parts)
    return f"{notes}|{ctx}" if notes else ctx


@dataclass
class CampaignSummary:
    trials: int = 0
    reports: int = 0
    passes: int = 0
    failures: int = 0
    divergent: int = 0
    worst_margin: float = float("inf")
    per_inequality: dict = field(default_factory=dict)
    failing: list = field(default_factory=list)

    def line(self) -> str:
        return (f"trials={self.trials} reports={self.reports} passes={self.passes} "
                f"failures={self.failures} divergent={self.divergent} "
                f"worst_margin={self.worst_margin:.6g}")


def run_campaign(config: CampaignConfig, stream: io.TextIOBase | None = None) -> CampaignSummary:
    """Run every (inequality, dims, function, beta, trial) combination in fixed order."""
    out = stream
    close = False
    if out is None and config.output_path:
        out = open(config.output_path, "w")
        close = True
    summary = CampaignSummary()
    try:
        for ineq in config.inequalities:
            runner, nfac, uses_f = RUNNERS[ineq]
            stats = summary.per_inequality.setdefault(
                ineq, {"reports": 0, "passes": 0, "divergent": 0,
                       "worst_margin": float("inf")})
            fids = config.functions if uses_f else (config.functions[:1] or ("neg_log",))
            betas = config.betas if ineq not in BETA_FREE else config.betas[:1]
            for dims in config.dims:
                if nfac is not None and len(dims) != nfac:
                    continue
                for fid in fids:
                    for beta in betas:
                        for t in range(config.trials):
                            seed = trial_seed(config.seed, ineq, dims, fid, beta, t)
                            reports = run_single(ineq, fid, dims, beta, seed,
                                                 config.rank_policy)
                            if reports:
                                summary.trials += 1
                            for rep in reports:
                                tol = config.tolerances.get(ineq)
                                if tol is not None:
                                    rep.passed = rep.gap >= -tol
                                _tally(summary, stats, rep)
                                if out is not None:
                                    out.write(rep.to_json() + "\n")
    finally:
        if close:
            out.close()
    return summary


def _tally(summary, stats, rep):
    summary.reports += 1
    stats["reports"] += 1
    if rep.details.get("divergent"):
        summary.divergent += 1
        stats["divergent"] += 1
        return
    margin = rep.gap
    summary.worst_margin = min(summary.worst_margin, margin)
    stats["worst_margin"] = min(stats["worst_margin"], margin)
    if rep.passed:
        summary.passes += 1
        stats["passes"] += 1
    else:
        summary.failures += 1
        summary.failing.append(
            f"{rep.inequality_id} seed={rep.seed} notes={rep.notes}")
