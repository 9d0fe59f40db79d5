"""Command line front door: job specs in, JSON reports out.

A job spec is a JSON object::

    {"command": "rank-at-point", "algebra": {"type": "A", "rank": 2},
     "payload": {...}, "seed": 0, "sample_count": 10}

Root indices, Weyl words and simple-root subsets are 1-based in every file;
rationals are written as strings.  Exit codes: 0 when nothing failed, 1 when a
formula or check failed, 2 for a bad spec, 3 when an internal consistency
assertion fired.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Any, Sequence

from . import __version__
from .checks import SUITE, CheckResult, rank_main_configurations, splittings_for
from .double import (VARIANTS, Double, InvalidLagrangian, Quad, TransversalityFailure, build_delorme_splitting,
                     enumerate_triples, lagrangian_subalg, normalizer_closed_form, r_subalg, sample_lagrangian_V,
                     standard_system, validate_gbd_system)
from .exactlin import Mat, Subspace, format_rational, parse_rational
from .liealg import build_type_A, perturbed_copy, realization_defects
from .poisson import (NotCoisotropic, NotTransversal, SplittingContext, TheoryViolation, coisotropic_catalog,
                      normalizer_condition, random_group_element, rank_at_point, schouten_identity_failures)
from .rankformula import OrbitIndex, evaluate_common_point, find_common_point
from .weyl import GroupElement, WeylBoundExceeded, exp_ad, max_weyl_bound, torus_element, weyl_group, weyl_rep

COMMANDS = ("verify-algebra", "enumerate-gbd", "build-splitting", "rank-at-point", "verify-rank-main",
            "check-prop-cond", "run-suite")
SAMPLING_COMMANDS = ("rank-at-point", "verify-rank-main", "check-prop-cond", "run-suite")
MAX_RANK = 8

EXIT_OK, EXIT_FAILED, EXIT_SCHEMA, EXIT_INTERNAL = 0, 1, 2, 3


class SpecError(ValueError):
    """Schema violations in a job spec; ``errors`` lists every one found."""

    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors))
        self.errors = errors


@dataclass
class JobSpec:
    command: str
    algebra: dict
    payload: dict = field(default_factory=dict)
    seed: int | None = None
    sample_count: int | None = None

    @property
    def rank(self) -> int:
        return int(self.algebra["rank"])

    def to_json(self) -> dict:
        return {"command": self.command, "algebra": dict(self.algebra), "payload": self.payload,
                "seed": self.seed, "sample_count": self.sample_count}


# -- spec parsing -------------------------------------------------------------------

def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def validate_spec(data: Any) -> JobSpec:
    if not isinstance(data, dict):
        raise SpecError(["spec must be a JSON object"])
    errors = []
    command = data.get("command")
    if command is None:
        errors.append("missing field 'command'")
    elif command not in COMMANDS:
        errors.append(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
    algebra = data.get("algebra")
    if algebra is None:
        errors.append("missing field 'algebra'")
    elif not isinstance(algebra, dict):
        errors.append("field 'algebra' must be an object")
    else:
        if algebra.get("type", "A") != "A":
            errors.append(f"algebra.type {algebra.get('type')!r} unsupported; only 'A' is implemented")
        rank = algebra.get("rank")
        if rank is None:
            errors.append("missing field 'algebra.rank'")
        elif not _is_int(rank):
            errors.append("algebra.rank must be an integer")
        elif not 1 <= rank <= MAX_RANK:
            errors.append(f"algebra.rank {rank} out of range [1, {MAX_RANK}]")
    payload = data.get("payload", {})
    if not isinstance(payload, dict):
        errors.append("field 'payload' must be an object")
    for key in ("seed", "sample_count"):
        val = data.get(key)
        if val is not None and (not _is_int(val) or val < 0):
            errors.append(f"{key} must be a non-negative integer")
    if command in SAMPLING_COMMANDS:
        for key in ("seed", "sample_count"):
            if data.get(key) is None:
                errors.append(f"missing field '{key}' (required by {command})")
    unknown = set(data) - {"command", "algebra", "payload", "seed", "sample_count"}
    if unknown:
        errors.append(f"unknown fields {sorted(unknown)}")
    if errors:
        raise SpecError(errors)
    alg = {"type": "A", "rank": algebra["rank"]}
    return JobSpec(command, alg, payload, data.get("seed"), data.get("sample_count"))


def parse_spec(text: str | bytes) -> JobSpec:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SpecError([f"spec is not UTF-8: {exc}"]) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError([f"invalid JSON: {exc}"]) from None
    return validate_spec(data)


# -- JSON conversion ------------------------------------------------------------------

def to_jsonable(x):
    """Recursively convert rationals to strings and containers to lists and dicts."""
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, (Subspace, Mat)):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (frozenset, set)):
        return sorted(to_jsonable(v) for v in x)
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return to_jsonable(x.to_json())
    return x


def provenance_to_json(records: Sequence[dict]) -> list[dict]:
    """Generator records with Weyl words shifted to 1-based indices."""
    out = []
    for r in records:
        r = dict(r)
        if "weyl" in r:
            r["weyl"] = [i + 1 for i in r["weyl"]]
        if "inverse" in r:
            r["inverse"] = provenance_to_json(r["inverse"])
        out.append(r)
    return out


def _record_element(L, r: dict, D: Double | None) -> GroupElement:
    if "weyl" in r:
        return weyl_rep(L, [i - 1 for i in r["weyl"]])
    if "exp" in r:
        return exp_ad(L, [parse_rational(str(v)) for v in r["exp"]])
    if "torus" in r:
        return torus_element(L, [parse_rational(str(v)) for v in r["torus"]])
    if "inverse" in r:
        return group_from_json(L, r["inverse"], D).inverse()
    raise SpecError([f"unrecognized group record {r!r}"])


def group_from_json(L, records: Sequence[dict], D: Double | None = None) -> GroupElement:
    """Rebuild a group element from 1-based generator records.

    Records carrying a ``factor`` key ('left', 'right', 'both') act on the double ``D``.
    """
    parts = []
    for r in records:
        factor = r.get("factor")
        el = _record_element(L, {k: v for k, v in r.items() if k != "factor"}, D)
        if factor is not None:
            if D is None:
                raise SpecError(["factor-tagged group record needs the double"])
            if factor not in ("left", "right", "both"):
                raise SpecError([f"unknown factor {factor!r}"])
            el = D.diag_element(el) if factor == "both" else \
                D.pair_element(el, None) if factor == "left" else D.pair_element(None, el)
        parts.append(el)
    if not parts:
        return GroupElement.identity(D.dim if D is not None else L.dim)
    out = parts[0]
    for el in parts[1:]:
        if el.matrix.rows != out.matrix.rows:
            raise SpecError(["group records mix the algebra and its double"])
        out = out @ el
    return out


def _subset(xs, n: int, name: str) -> tuple[int, ...]:
    out = tuple(sorted(int(x) - 1 for x in xs))
    if any(not 0 <= x < n for x in out):
        raise SpecError([f"{name} has indices outside 1..{n}"])
    return out


def _bijection(d, n: int) -> dict[int, int]:
    items = d.items() if isinstance(d, dict) else d
    return {int(k) - 1: int(v) - 1 for k, v in items}


def quad_from_json(D: Double, data: dict, seed: int = 0) -> Quad:
    """(S, T, d, V) from 1-based JSON; V defaults to a seeded sample."""
    r = D.g.rank
    try:
        S = _subset(data.get("S", []), r, "S")
        T = _subset(data.get("T", []), r, "T")
        d = _bijection(data.get("d", {}), r)
    except (TypeError, ValueError, AttributeError) as exc:
        raise SpecError([f"malformed quadruple {data!r}: {exc}"]) from None
    if "V" in data:
        V = Subspace.span([[parse_rational(str(x)) for x in v] for v in data["V"]], D.dim)
    else:
        V = sample_lagrangian_V(D, S, T, d, seed=int(data.get("V_seed", seed)))
    return Quad.make(S, T, d, V)


def quad_to_json(q: Quad) -> dict:
    return {"S": [s + 1 for s in sorted(q.S)], "T": [t + 1 for t in sorted(q.T)],
            "d": {str(s + 1): t + 1 for s, t in q.d}, "V": [[format_rational(x) for x in v] for v in q.V.vectors()]}


def system_from_json(D: Double, data, seed: int = 0) -> tuple[Quad, Quad]:
    if data in (None, "standard"):
        return standard_system(D)
    if not isinstance(data, dict) or "quad1" not in data or "quad2" not in data:
        raise SpecError(["system must be 'standard' or an object with quad1 and quad2"])
    return quad_from_json(D, data["quad1"], seed), quad_from_json(D, data["quad2"], seed + 1)


def valid_system_from_json(D: Double, data, seed: int = 0) -> tuple[Quad, Quad]:
    """As system_from_json, rejecting systems that fail the gBD conditions."""
    system = system_from_json(D, data, seed)
    diag = validate_gbd_system(D, *system)
    if not diag.valid:
        raise SpecError([f"system is not a valid gBD system: {json.dumps(diag.to_json(), sort_keys=True)}"])
    return system


def _weyl_word(W, word, name: str):
    try:
        return W.from_word([int(i) - 1 for i in word])
    except (TypeError, ValueError, KeyError, IndexError):
        raise SpecError([f"{name} is not a valid Weyl word"]) from None


@lru_cache(maxsize=None)
def _double(rank: int) -> Double:
    return Double(build_type_A(rank))


# -- commands -------------------------------------------------------------------------

@dataclass
class Outcome:
    results: list
    failed: int = 0
    empty: int = 0
    total: int | None = None
    extra: dict = field(default_factory=dict)


def cmd_verify_algebra(job: JobSpec, jobs: int) -> Outcome:
    defects = realization_defects(build_type_A(job.rank))
    ok = not any(defects.values())
    return Outcome([{"rank": job.rank, "defects": defects, "ok": ok}], failed=int(not ok))


def enumerate_gbd(rank: int, bound: int | None = None) -> list[dict]:
    """Every (S, T, d) with |S| = |T| and d a bijection, flagged valid or invalid, in a fixed order."""
    bound = max_weyl_bound() if bound is None else bound
    if factorial(rank + 1) > bound:
        raise WeylBoundExceeded(f"|W(A{rank})| = {factorial(rank + 1)} exceeds bound {bound}")
    return [{"S": [s + 1 for s in S], "T": [t + 1 for t in T], "d": {str(k + 1): v + 1 for k, v in sorted(d.items())},
             "valid": ok} for S, T, d, ok in enumerate_triples(build_type_A(rank))]


def write_catalog(path: str, header: dict, entries: list[dict]) -> None:
    """Append a header line and one line per entry."""
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for e in entries:
            fh.write(json.dumps(e, sort_keys=True) + "\n")


def cmd_enumerate_gbd(job: JobSpec, jobs: int) -> Outcome:
    entries = enumerate_gbd(job.rank)
    out = job.payload.get("catalog")
    if out:
        header = {"algebra": job.algebra, "code_version": __version__, "seed": job.seed or 0}
        write_catalog(out, header, entries)
    return Outcome(entries, extra={"valid": sum(e["valid"] for e in entries)})


def cmd_build_splitting(job: JobSpec, jobs: int) -> Outcome:
    D = _double(job.rank)
    system = system_from_json(D, job.payload.get("system"), job.seed or 0)
    diag = validate_gbd_system(D, *system)
    res = {"system": [quad_to_json(q) for q in system], "diagnostics": diag.to_json()}
    if not diag.valid:
        res["ok"] = False
        return Outcome([res], failed=1)
    try:
        sp = build_delorme_splitting(D, *system)
    except TransversalityFailure as exc:
        res.update(ok=False, error=str(exc))
        return Outcome([res], failed=1)
    ctx = SplittingContext(D, sp.u, sp.u_prime)
    lag = D.is_lagrangian(sp.u) and D.is_lagrangian(sp.u_prime)
    schouten = schouten_identity_failures(D, ctx.A) if job.payload.get("check_schouten", True) else []
    ok = lag and sp.certificate() == 0 and not schouten
    res.update({"u": sp.u, "u_prime": sp.u_prime, "transversality_certificate": sp.certificate(),
                "lagrangian": lag, "schouten_failures": [[i + 1 for i in t] for t in schouten],
                "r_matrix": ctx.A, "ok": ok})
    return Outcome([res], failed=int(not ok))


def _q_from_json(D: Double, data) -> tuple[str, Subspace]:
    if data in (None, "D"):
        return "D", D.full()
    r = D.g.rank
    S, T = _subset(data.get("S", []), r, "S"), _subset(data.get("T", []), r, "T")
    d = _bijection(data.get("d", {}), r)
    variant = data.get("variant", "plain")
    if variant not in VARIANTS:
        raise SpecError([f"variant must be one of {VARIANTS}"])
    return f"r[{variant}] S={list(data.get('S', []))} T={list(data.get('T', []))}", r_subalg(D, S, T, d, variant)


def _report_json(rep) -> dict:
    out = to_jsonable(rep.to_json())
    out["point"]["g_word"] = provenance_to_json(rep.g_word)
    return out


def _rank_sample(args) -> dict:
    rank, system_json, q_json, seed, index = args
    D = _double(rank)
    ctx = _context_cached(rank, json.dumps(system_json, sort_keys=True), seed)
    rng = random.Random(seed * 1_000_003 + index)
    if q_json is None:
        qname, q = rng.choice(coisotropic_catalog(D))
    else:
        qname, q = _q_from_json(D, q_json)
    g = random_group_element(D, rng)
    rep = rank_at_point(ctx, q, g, qname)
    return {"index": index, **_report_json(rep)}


@lru_cache(maxsize=16)
def _context_cached(rank: int, system_key: str, seed: int) -> SplittingContext:
    D = _double(rank)
    system = valid_system_from_json(D, json.loads(system_key), seed)
    sp = build_delorme_splitting(D, *system)
    return SplittingContext(D, sp.u, sp.u_prime)


def _map(fn, tasks: list, jobs: int) -> list:
    """Ordered map, in worker processes when jobs > 1."""
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, tasks))


def cmd_rank_at_point(job: JobSpec, jobs: int) -> Outcome:
    D = _double(job.rank)
    p = job.payload
    system_json = p.get("system")
    if "g" in p:
        ctx = _context_cached(job.rank, json.dumps(system_json, sort_keys=True), job.seed)
        qname, q = _q_from_json(D, p.get("q"))
        rep = rank_at_point(ctx, q, group_from_json(D.g, p["g"], D), qname)
        results = [_report_json(rep)]
    else:
        tasks = [(job.rank, system_json, p.get("q"), job.seed, i) for i in range(job.sample_count)]
        results = _map(_rank_sample, tasks, jobs)
    return Outcome(results, failed=sum(not r["agree"] for r in results))


def _evaluate_config(D: Double, system, base: Quad, v1, v2, m2, idx2_filter, ctx) -> dict:
    cps = find_common_point(D, system, base, v1, v2, m2, u_prime=ctx.up, all_certificates=idx2_filter is not None)
    if idx2_filter is not None:
        w1, w2 = idx2_filter
        cps = [cp for cp in cps if cp.idx2.x1 == w1 and cp.idx2.x2 == w2]
    head = {"base": quad_to_json(base), "idx1": OrbitIndex("N_l1", v1, v2, m2).to_json()}
    if not cps:
        return {**head, "empty_intersection": True}
    cp = cps[0]
    ev = evaluate_common_point(D, ctx, system, cp)
    q = r_subalg(D, base.S, base.T, base.dmap, "plain")
    rep = rank_at_point(ctx, q, cp.g, "r[plain] of base")
    rep.corank_main = ev["corank_main"]
    out = {**head, "idx2": cp.idx2.to_json(), **_report_json(rep)}
    out["idx1"]["m2_word"] = provenance_to_json(out["idx1"]["m2_word"])
    out["idx2"]["m1_word"] = provenance_to_json(out["idx2"]["m1_word"])
    out.update({"xyz_dims": ev["xyz_dims"], "terms": ev["terms"], "intersection_minus_rank": ev["intersection_minus_rank"],
                "empty_intersection": False})
    return to_jsonable(out)


@lru_cache(maxsize=None)
def _sampled_configs(rank: int, splittings: int) -> list:
    D = _double(rank)
    return list(rank_main_configurations(D, splittings_for(D, splittings)))


@lru_cache(maxsize=None)
def _sampled_context(rank: int, splittings: int, sname: str) -> SplittingContext:
    D = _double(rank)
    system = dict(splittings_for(D, splittings))[sname]
    sp = build_delorme_splitting(D, *system)
    return SplittingContext(D, sp.u, sp.u_prime)


def _rank_main_sample(args) -> dict:
    rank, splittings, index, config_index = args
    D = _double(rank)
    sname, system, base, v1, v2 = _sampled_configs(rank, splittings)[config_index]
    ctx = _sampled_context(rank, splittings, sname)
    return {"index": index, "splitting": sname, **_evaluate_config(D, system, base, v1, v2, None, None, ctx)}


def cmd_verify_rank_main(job: JobSpec, jobs: int) -> Outcome:
    D = _double(job.rank)
    W = weyl_group(D.g)
    p = job.payload
    if "idx1" in p:
        system = valid_system_from_json(D, p.get("system"), job.seed)
        ctx = _context_cached(job.rank, json.dumps(p.get("system"), sort_keys=True), job.seed)
        base = quad_from_json(D, p.get("base", {}), job.seed)
        i1 = p["idx1"]
        v1, v2 = _weyl_word(W, i1.get("v1", []), "idx1.v1"), _weyl_word(W, i1.get("v2", []), "idx1.v2")
        m2 = group_from_json(D.g, i1["m2_word"]) if i1.get("m2_word") else None
        idx2 = None
        if "idx2" in p:
            i2 = p["idx2"]
            idx2 = (_weyl_word(W, i2.get("w1", []), "idx2.w1"), _weyl_word(W, i2.get("w2", []), "idx2.w2"))
        results = [_evaluate_config(D, system, base, v1, v2, m2, idx2, ctx)]
    else:
        splittings = int(p.get("splittings", 1))
        order = list(range(len(_sampled_configs(job.rank, splittings))))
        random.Random(job.seed).shuffle(order)
        picks = [order[i % len(order)] for i in range(job.sample_count)]
        tasks = [(job.rank, splittings, i, c) for i, c in enumerate(picks)]
        results = _map(_rank_main_sample, tasks, jobs)
    empty = sum(r["empty_intersection"] for r in results)
    failed = sum(not r["empty_intersection"] and not r["agree"] for r in results)
    return Outcome(results, failed=failed, empty=empty)


def cmd_check_prop_cond(job: JobSpec, jobs: int) -> Outcome:
    D = _double(job.rank)
    results = []
    for S, T, d, _ in enumerate_triples(D.g, valid_only=True):
        for k in range(job.sample_count):
            V = sample_lagrangian_V(D, S, T, d, seed=job.seed + k)
            for variant in VARIANTS:
                l = lagrangian_subalg(D, S, T, d, V, variant)
                ok = normalizer_condition(D, l)
                closed = normalizer_closed_form(D, S, T, d, variant)
                results.append({"S": [s + 1 for s in S], "T": [t + 1 for t in T],
                                "d": {str(a + 1): b + 1 for a, b in sorted(d.items())}, "V_sample": k,
                                "variant": variant, "normalizer_dim": closed.dim, "agree": ok})
    return Outcome(results, failed=sum(not r["agree"] for r in results))


def _suite_kwargs(name: str, rank: int, seed: int, samples: int) -> dict:
    kw: dict = {"ranks": (rank,)}
    if name in ("rank_oracle", "lagrangian_corank"):
        kw["points"] = samples
    if name == "rank_main":
        kw["min_configs"] = samples
    if name == "fromluy":
        kw["max_configs"] = samples
    if name == "torus_invariance":
        kw["samples"] = samples
    if name in ("rank_oracle", "lagrangian_corank", "rank_main", "fromluy", "torus_invariance", "regularity",
                "projected_membership"):
        kw["seed"] = seed
    return kw


def _run_check(args) -> dict:
    name, kw = args
    kw = dict(kw)
    if "ranks" in kw:
        kw["ranks"] = tuple(kw["ranks"])
    res = SUITE[name](**kw)
    return to_jsonable(res.to_json())


def run_suite(job: JobSpec, jobs: int = 1) -> Outcome:
    """Run the named checks (all by default); sub-check failures are counted, not raised."""
    p = job.payload
    names = p.get("checks", list(SUITE))
    bad = [n for n in names if n not in SUITE]
    if bad:
        raise SpecError([f"unknown checks {bad}; expected names from {sorted(SUITE)}"])
    overrides = p.get("params", {})
    tasks = []
    for n in names:
        kw = _suite_kwargs(n, job.rank, job.seed, job.sample_count)
        kw.update(overrides.get(n, {}))
        tasks.append((n, kw))
    results = _map(_run_check, tasks, jobs)
    if "corrupt_bracket" in p:
        i, j, k = (int(x) - 1 for x in p["corrupt_bracket"])
        L = build_type_A(job.rank)
        res = SUITE["realization"](algebras=[perturbed_copy(L, i, j, k)])
        res.name = "realization[corrupt_bracket]"
        results.append(to_jsonable(res.to_json()))
    return Outcome(results, failed=sum(r["failed"] for r in results), empty=sum(r["empty_intersections"] for r in results),
                   total=sum(r["total"] for r in results))


HANDLERS = {
    "verify-algebra": cmd_verify_algebra,
    "enumerate-gbd": cmd_enumerate_gbd,
    "build-splitting": cmd_build_splitting,
    "rank-at-point": cmd_rank_at_point,
    "verify-rank-main": cmd_verify_rank_main,
    "check-prop-cond": cmd_check_prop_cond,
    "run-suite": run_suite,
}


def execute(job: JobSpec, jobs: int = 1) -> dict:
    """Run a job and assemble the report; exceptions propagate to the caller."""
    t0 = time.perf_counter()
    outcome = HANDLERS[job.command](job, jobs)
    total = outcome.total if outcome.total is not None else len(outcome.results)
    summary = {"total": total, "agreed": total - outcome.failed - outcome.empty, "failed": outcome.failed,
               "empty_intersections": outcome.empty}
    summary.update(outcome.extra)
    return {"job": job.to_json(), "results": to_jsonable(outcome.results), "summary": summary,
            "runtime_ms": int((time.perf_counter() - t0) * 1000)}


# -- entry point ----------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="maninlab", description="Exact checks of rank formulas for Poisson structures "
                                 "on D/Q from Lagrangian splittings of g + g.")
    ap.add_argument("command", nargs="?", choices=COMMANDS, help="overrides or supplies the spec's command")
    ap.add_argument("--spec", help="job spec JSON file ('-' for stdin)")
    ap.add_argument("--rank", type=int, help="type A rank when no spec file is given")
    ap.add_argument("--seed", type=int, help="overrides the spec's seed")
    ap.add_argument("--samples", type=int, help="overrides the spec's sample_count")
    ap.add_argument("--out", help="write the report here instead of stdout")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for independent samples")
    ap.add_argument("--format", choices=("json",), default="json")
    ap.add_argument("--catalog", help="enumerate-gbd: append the catalog (JSON lines) to this file")
    return ap


def _load_job(args) -> JobSpec:
    if args.spec:
        text = sys.stdin.buffer.read() if args.spec == "-" else open(args.spec, "rb").read()
        try:
            data = json.loads(text.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise SpecError([f"cannot read spec: {exc}"]) from None
    else:
        data = {}
        if args.rank is not None:
            data["algebra"] = {"type": "A", "rank": args.rank}
    if isinstance(data, dict):
        if args.command:
            data["command"] = args.command
        if args.seed is not None:
            data["seed"] = args.seed
        if args.samples is not None:
            data["sample_count"] = args.samples
        if args.catalog:
            data.setdefault("payload", {})["catalog"] = args.catalog
    return validate_spec(data)


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        job = _load_job(args)
    except SpecError as exc:
        _emit({"error": "schema", "violations": exc.errors}, None)
        return EXIT_SCHEMA
    except OSError as exc:
        _emit({"error": "schema", "violations": [f"cannot open spec: {exc}"]}, None)
        return EXIT_SCHEMA
    try:
        report = execute(job, max(1, args.jobs))
    except SpecError as exc:
        _emit({"error": "schema", "violations": exc.errors}, None)
        return EXIT_SCHEMA
    except (WeylBoundExceeded, InvalidLagrangian, NotTransversal, NotCoisotropic, KeyError, ValueError) as exc:
        _emit({"error": "schema", "violations": [f"{type(exc).__name__}: {exc}"]}, None)
        return EXIT_SCHEMA
    except (TheoryViolation, AssertionError) as exc:
        _emit({"error": "internal", "message": f"{type(exc).__name__}: {exc}"}, None)
        return EXIT_INTERNAL
    _emit(report, args.out)
    return EXIT_OK if report["summary"]["failed"] == 0 else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
