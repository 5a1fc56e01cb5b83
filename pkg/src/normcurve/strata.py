"""Seeded sampling surveys over random curves and deformations.

Every trial draws from its own ``random.Random`` seeded by
``trial_seed(master_seed, index)``, so trials can run in any order or in
parallel and any single trial can be replayed from its stored seed.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from random import Random
from typing import Callable, Sequence

from .binform import BinForm, bf_random
from .curve import ParamCurve, SamplingExhausted, random_immersed_curve, random_plane_curve
from .deform import (
    DeformationSpec,
    compare,
    componentwise_kernel_sum,
    connecting_rank,
    lift,
    phi_rank,
    predicted_splitting,
)
from .exactfield import ExactMatrix, FieldSpec, kernel_basis, rank
from .localmodel import (
    CONVENTIONS,
    kernel_dim_exact,
    kernel_dim_model,
    leading_degree,
    random_frame,
    tail_from_xi,
    tail_matrix,
)
from .splitting import ProfileError, SplittingType, splitting_type

_MASK64 = (1 << 64) - 1

DOMINATING_NOTE = ("all sampled curves project to immersed plane curves, so only strata "
                   "dominating the space of plane curves are observed")


class InvariantViolation(RuntimeError):
    def __init__(self, message: str, seed: int):
        super().__init__(f"{message} (trial seed {seed})")
        self.seed = seed


def trial_seed(master_seed: int, index: int) -> int:
    """SplitMix64 finaliser applied to master_seed * 2^64/phi + index + 1."""
    z = (master_seed * 0x9E3779B97F4A7C15 + index + 1) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def worker_count() -> int:
    raw = os.environ.get("NORMCURVE_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = os.cpu_count() or 1
    return n


def run_trials(fn: Callable, arg_list: Sequence[tuple]) -> list:
    """Map ``fn`` over argument tuples; results come back in input order."""
    workers = min(worker_count(), len(arg_list))
    if workers <= 1:
        return [fn(*args) for args in arg_list]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, *zip(*arg_list)))


def check_type(st: SplittingType, seed: int) -> None:
    try:
        st.check()
    except ProfileError as exc:
        raise InvariantViolation(str(exc), seed) from exc


@dataclass
class SurveyReport:
    mode: str
    parameters: dict
    histogram: dict = dc_field(default_factory=dict)
    agreement: float | None = None
    anomalies: list = dc_field(default_factory=list)
    trials: list = dc_field(default_factory=list)
    rejected: int = 0
    diagnostics: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)

    def dominant(self) -> str | None:
        if not self.histogram:
            return None
        return max(sorted(self.histogram), key=lambda k: self.histogram[k])

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "parameters": self.parameters,
            "histogram": dict(sorted(self.histogram.items())),
            "agreement": self.agreement,
            "rejected": self.rejected,
            "anomalies": self.anomalies,
            "diagnostics": self.diagnostics,
            "notes": self.notes,
            "trials": self.trials,
        }


def _params(field: FieldSpec, seed: int, **kw) -> dict:
    return {**kw, "seed": seed, "field": field.to_json()}


# -- splitting survey ----------------------------------------------------------

def splitting_trial(n: int, d: int, seed: int, field: FieldSpec) -> dict:
    rng = Random(seed)
    try:
        c = random_immersed_curve(n, d, rng, field)
    except SamplingExhausted:
        return {"seed": seed, "status": "rejected", "type": None}
    st = splitting_type(c)
    check_type(st, seed)
    return {"seed": seed, "status": "ok", "type": st.label()}


def survey_splitting(n: int, d: int, count: int, seed: int, field: FieldSpec) -> SurveyReport:
    rows = run_trials(splitting_trial, [(n, d, trial_seed(seed, i), field) for i in range(count)])
    rep = SurveyReport("splitting", _params(field, seed, n=n, d=d, count=count))
    hist: Counter = Counter()
    for i, row in enumerate(rows):
        rep.trials.append({"trial": i, **row})
        if row["status"] == "ok":
            hist[row["type"]] += 1
        else:
            rep.rejected += 1
    rep.histogram = dict(hist)
    if n == 2:
        rep.notes.append("n = 2: the normal bundle has rank one, type forced to {2d-2}")
    return rep


# -- deformation survey ----------------------------------------------------------

def random_lifting_forms(r: int, d: int, rng: Random, field: FieldSpec) -> tuple[BinForm, ...]:
    while True:
        ts = tuple(bf_random(d, rng, field) for _ in range(r))
        if not all(t.is_zero() for t in ts):
            return ts


def random_nonzero(rng: Random, field: FieldSpec):
    while True:
        x = field.random(rng)
        if x != 0:
            return x


def deform_trial(d: int, r: int, seed: int, field: FieldSpec) -> dict:
    rng = Random(seed)
    g = random_plane_curve(d, rng, field)
    ts = random_lifting_forms(r, d, rng, field)
    eps = random_nonzero(rng, field)
    spec = DeformationSpec(g, ts, eps)
    cmp = compare(spec)
    row = {
        "seed": seed,
        "status": cmp.status,
        "predicted": cmp.predicted.label() if cmp.predicted else None,
        "direct": cmp.direct.label() if cmp.direct else None,
        "match": cmp.match,
        "witness": None,
    }
    if cmp.direct is not None:
        check_type(cmp.direct, seed)
    if cmp.status == "degenerate-lift":
        row["witness"] = "degenerate-lift"
    elif cmp.status == "profile-error":
        row["witness"] = f"profile-consistency: {cmp.error}"
    elif not cmp.match:
        hits = 0
        for _ in range(3):
            alt = DeformationSpec(g, ts, random_nonzero(rng, field))
            if splitting_type(lift(alt)) == cmp.predicted:
                hits += 1
        row["witness"] = f"epsilon-recovery {hits}/3" if hits >= 2 else "unexplained"
    if r >= 2:
        twists = range(d - 1, 3 * d - 1)
        combined = [r * (a - d + 1) - connecting_rank(g, ts, a) for a in twists]
        summed = [componentwise_kernel_sum(g, ts, a) for a in twists]
        row["kernel_sum_equals_combined"] = combined == summed
    return row


def survey_deform(d: int, r: int, count: int, seed: int, field: FieldSpec) -> SurveyReport:
    if d < 2 or r < 1:
        raise ValueError("need d >= 2 and r >= 1")
    rows = run_trials(deform_trial, [(d, r, trial_seed(seed, i), field) for i in range(count)])
    rep = SurveyReport("deform", _params(field, seed, d=d, r=r, count=count))
    hist: Counter = Counter()
    matches = 0
    for i, row in enumerate(rows):
        rec = {"trial": i, **row}
        rep.trials.append(rec)
        if row["status"] == "ok":
            hist[row["direct"]] += 1
            matches += bool(row["match"])
        else:
            rep.rejected += 1
        if not row["match"]:
            rep.anomalies.append(rec)
    rep.histogram = dict(hist)
    rep.agreement = matches / count if count else None
    if r >= 2:
        eq = sum(1 for row in rows if row.get("kernel_sum_equals_combined"))
        rep.diagnostics["kernel_sum_equals_combined"] = {"trials": count, "equal": eq}
    rep.notes.append(DOMINATING_NOTE)
    return rep


def replay_deform_trial(d: int, r: int, seed: int, field: FieldSpec) -> dict:
    return deform_trial(d, r, seed, field)


# -- level sets of the leading degree ------------------------------------------

def _random_combo(basis: Sequence[Sequence], rng: Random, field: FieldSpec, d: int) -> BinForm:
    coeffs = [field.random(rng) for _ in basis]
    vec = [field(sum(c * b[i] for c, b in zip(coeffs, basis))) for i in range(d + 1)]
    return BinForm(tuple(vec), field)


def level_basis(tm: ExactMatrix, l0: int, field: FieldSpec) -> list[list]:
    """Basis of {t : c_1(t) = ... = c_{l0-1}(t) = 0} from the tail matrix."""
    n = tm.cols
    rows = tm.row_lists()[:l0 - 1]
    if not rows:
        return [[field(int(i == j)) for i in range(n)] for j in range(n)]
    return kernel_basis(ExactMatrix.from_rows(rows, field, n))


def _in_level(g: ParamCurve, t: BinForm, frame, l0: int) -> bool:
    l = leading_degree(tail_from_xi(g, t, frame))
    return l is None or l >= l0


@dataclass
class LinearityReport:
    d: int
    l0: int
    pairs: int
    closure_failures: int
    dim_estimate: int
    dim_next: int
    nested: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def level_set_linearity(g: ParamCurve, l0: int, trials: int, rng: Random, frame=None) -> LinearityReport:
    """Closure of V_{>=l0} under sums and scalar multiples on sampled pairs."""
    field, d = g.field, g.d
    if d < 3:
        raise ValueError("need d >= 3")
    frame = frame if frame is not None else random_frame(rng, field)
    tm = tail_matrix(g, frame)
    basis = level_basis(tm, l0, field)
    basis_next = level_basis(tm, l0 + 1, field)
    failures = 0
    members = []
    for _ in range(trials):
        t1 = _random_combo(basis, rng, field, d)
        t2 = _random_combo(basis, rng, field, d)
        c = random_nonzero(rng, field)
        if not (_in_level(g, t1, frame, l0) and _in_level(g, t2, frame, l0)):
            failures += 1
            continue
        members.extend([t1.coeffs, t2.coeffs])
        if not _in_level(g, t1 + t2, frame, l0) or not _in_level(g, t1.scale(c), frame, l0):
            failures += 1
    dim_est = rank(ExactMatrix.from_rows(members, field, d + 1)) if members else 0
    nested_samples = [_random_combo(basis_next, rng, field, d) for _ in range(min(trials, 10))]
    nested = all(_in_level(g, t, frame, l0) for t in nested_samples)
    nmembers = [t.coeffs for t in nested_samples]
    dim_next = rank(ExactMatrix.from_rows(nmembers, field, d + 1)) if nmembers else 0
    return LinearityReport(d, l0, trials, failures, dim_est, dim_next, nested)


def codim_one_check(g: ParamCurve, frame) -> dict:
    """Rank and kernel of the linear functional t -> c_1."""
    field, d = g.field, g.d
    tm = tail_matrix(g, frame)
    row = ExactMatrix.from_rows([tm.row_lists()[0]], field, d + 1)
    rk = rank(row)
    kernel_dim = d + 1 - rk
    contains_span = all(tail_from_xi(g, s, frame).c[0] == 0 for s in g.forms)
    if kernel_dim < d:
        raise AssertionError("a scalar functional has kernel of codimension > 1")
    return {"d": d, "rank": rk, "kernel_dim": kernel_dim, "kernel_contains_span": contains_span}


def fiber_dim_check(g: ParamCurve, r: int, trials: int, rng: Random) -> dict:
    """Modal predicted type over random t-tuples for a fixed base."""
    field, d = g.field, g.d
    types: Counter = Counter()
    for _ in range(trials):
        ts = random_lifting_forms(r, d, rng, field)
        types[predicted_splitting(g, ts).label()] += 1
    modal = max(sorted(types), key=lambda k: types[k])
    return {
        "d": d,
        "r": r,
        "fiber_dim": r * (d + 1),
        "trials": trials,
        "modal_type": modal,
        "hit_rate": types[modal] / trials,
        "types": dict(sorted(types.items())),
    }


# -- leading-degree and fiber surveys -------------------------------------------------

def leading_trial(d: int, seed: int, field: FieldSpec) -> dict:
    rng = Random(seed)
    g = random_plane_curve(d, rng, field)
    frame = random_frame(rng, field)
    t = bf_random(d, rng, field)
    codim = codim_one_check(g, frame)
    tc = tail_from_xi(g, t, frame)
    return {
        "seed": seed,
        "phi_rank": phi_rank(g),
        "c1_rank": codim["rank"],
        "c1_kernel_dim": codim["kernel_dim"],
        "leading_degree": leading_degree(tc),
    }


def survey_leading(d: int, count: int, seed: int, field: FieldSpec) -> SurveyReport:
    if d < 2:
        raise ValueError("need d >= 2")
    rows = run_trials(leading_trial, [(d, trial_seed(seed, i), field) for i in range(count)])
    rep = SurveyReport("leading", _params(field, seed, d=d, count=count))
    hist: Counter = Counter()
    for i, row in enumerate(rows):
        rep.trials.append({"trial": i, **row})
        hist[str(row["leading_degree"])] += 1
        if row["phi_rank"] != d - 2:
            rep.anomalies.append({"trial": i, **row, "witness": "phi rank != d-2"})
    rep.histogram = dict(hist)
    rep.diagnostics["c1_rank_one"] = sum(1 for row in rows if row["c1_rank"] == 1)
    if d == 3:
        rep.notes.append("d = 3: the image of t -> class is a line, so every nonzero class has "
                         "one leading degree and constancy per leading degree holds vacuously")
    return rep


def fiber_trial(d: int, r: int, inner: int, seed: int, field: FieldSpec) -> dict:
    rng = Random(seed)
    g = random_plane_curve(d, rng, field)
    return {"seed": seed, **fiber_dim_check(g, r, inner, rng)}


def survey_fiber(d: int, r: int, count: int, seed: int, field: FieldSpec, inner: int = 20) -> SurveyReport:
    rows = run_trials(fiber_trial, [(d, r, inner, trial_seed(seed, i), field) for i in range(count)])
    rep = SurveyReport("fiber", _params(field, seed, d=d, r=r, count=count, inner=inner))
    hist: Counter = Counter()
    for i, row in enumerate(rows):
        rec = {"trial": i, "seed": row["seed"], "modal_type": row["modal_type"],
               "hit_rate": row["hit_rate"], "fiber_dim": row["fiber_dim"]}
        rep.trials.append(rec)
        hist[row["modal_type"]] += 1
        if row["hit_rate"] < 0.9:
            rep.anomalies.append({**rec, "witness": "modal type below 90% of the fiber sample"})
    rep.histogram = dict(hist)
    rep.notes.append(DOMINATING_NOTE)
    return rep


# -- leading-degree kernel harness -----------------------------------------------------

@dataclass
class RemarkReport:
    d: int
    a_range: tuple[int, int]
    samples: int
    seed: int
    field: FieldSpec
    frame: list
    cells: dict = dc_field(default_factory=dict)
    mismatches: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)

    def realized_leading_degrees(self) -> list[int]:
        return sorted({l for l, _ in self.cells})

    def exact_constant_per_l(self) -> bool:
        return all(len(cell["exact"]) == 1 for cell in self.cells.values())

    def verdicts(self) -> dict:
        out = {"exact_constant_per_l": self.exact_constant_per_l()}
        for conv in CONVENTIONS:
            out[conv] = {
                "constant_per_l": all(len(cell[conv]) == 1 for cell in self.cells.values()),
                "matches_exact": self.mismatches[conv] == 0,
                "mismatched_sample_twists": self.mismatches[conv],
            }
        return out

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "a_range": list(self.a_range),
            "samples": self.samples,
            "seed": self.seed,
            "field": self.field.to_json(),
            "frame": [[str(x) for x in row] for row in self.frame],
            "realized_leading_degrees": self.realized_leading_degrees(),
            "cells": [
                {"l": l, "a": a, "count": cell["count"],
                 **{k: sorted(cell[k]) for k in ("exact", *CONVENTIONS)}}
                for (l, a), cell in sorted(self.cells.items())
            ],
            "verdicts": self.verdicts(),
            "notes": self.notes,
        }

    def csv_rows(self) -> list[dict]:
        return [
            {"l": l, "a": a, "count": cell["count"],
             **{k: " ".join(str(v) for v in sorted(cell[k])) for k in ("exact", *CONVENTIONS)}}
            for (l, a), cell in sorted(self.cells.items())
        ]


def remark_test(d: int, a_range: tuple[int, int] | None, sample_count: int, seed: int,
                field: FieldSpec) -> RemarkReport:
    """Group realized classes by leading degree and compare kernel dimensions.

    Each sample draws a fresh base curve, computes which leading degrees its
    classes realise at the run's fixed frame, picks one of them, and draws t
    from the corresponding level set.
    """
    if d < 3:
        raise ValueError("need d >= 3")
    lo, hi = a_range if a_range is not None else (d - 1, 3 * d - 2)
    lo, hi = max(lo, d - 1), min(hi, 3 * d - 2)
    rng = Random(trial_seed(seed, 0))
    frame = random_frame(rng, field)
    rep = RemarkReport(d, (lo, hi), sample_count, seed, field, frame,
                       mismatches={conv: 0 for conv in CONVENTIONS})
    for i in range(sample_count):
        srng = Random(trial_seed(seed, i + 1))
        g = random_plane_curve(d, srng, field)
        tm = tail_matrix(g, frame)
        levels = [level_basis(tm, l, field) for l in range(1, 2 * d - 1)]
        realized = [l for l in range(1, 2 * d - 2) if len(levels[l - 1]) > len(levels[l])]
        target = srng.choice(realized)
        t = _random_combo(levels[target - 1], srng, field, d)
        tc = tail_from_xi(g, t, frame)
        l = leading_degree(tc)
        if l is None:
            continue
        for a in range(lo, hi + 1):
            exact = kernel_dim_exact(g, t, a)
            cell = rep.cells.setdefault((l, a), {"count": 0, "exact": set(),
                                                 **{c: set() for c in CONVENTIONS}})
            cell["count"] += 1
            cell["exact"].add(exact)
            for conv in CONVENTIONS:
                model = kernel_dim_model(tc, a, conv)
                cell[conv].add(model)
                if model != exact:
                    rep.mismatches[conv] += 1
    if len(rep.realized_leading_degrees()) <= 1:
        rep.notes.append("realized classes show a single leading degree; "
                         "constancy per leading degree holds vacuously")
    if d == 3:
        rep.notes.append("d = 3: the image of t -> class is one-dimensional")
    rep.notes.append("trunc column is a closed form in the leading degree, constant per l by construction")
    return rep
