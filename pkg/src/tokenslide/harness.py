"""Differential campaigns: polynomial solvers and reductions against the oracle.

A campaign either enumerates a whole instance family (oriented cycles and
oriented paths) or samples it with per-trial seeds derived from the campaign
seed.  Oracle runs that hit the state limit are discarded and counted as
truncated; they never count as agreement.
"""

from __future__ import annotations

import json
import os
import random
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator

from .errors import (
    InfeasibleSpec,
    ReductionError,
    StateLimitExceeded,
    UnknownSubject,
    WrongGraphClass,
)
from .exact import SearchLimits, configurations_along, reachable_masks, solve_exact
from .generators import GRAPH_CLASSES, GenSpec, generate_graph, generate_with_partition, random_independent_set
from .graph import (
    OrientedGraph,
    bipartition,
    independent_sets,
    is_independent,
    is_split_partition,
    mask_of,
    max_independent_set,
)
from .instance import Instance, parse_instance, serialize_instance
from .poly import solve_auto, solve_cograph, solve_cycle, solve_path_forest
from .reductions import (
    KINDS,
    ReductionArtifact,
    ReductionPolicy,
    gadget_weights,
    lift_sequence,
    map_configuration,
    project_sequence,
    reduce,
    write_artifact,
)

MODES = ("solver_equivalence", "reduction_soundness")
EXHAUSTIVE_BUDGET = 1_000_000
CAMPAIGN_MAX_STATES = 200_000

SOLVERS: dict[str, Callable[[Instance], bool]] = {
    "cycle": lambda inst: solve_cycle(inst).answer,
    "path": lambda inst: solve_path_forest(inst).answer,
    "cograph": lambda inst: solve_cograph(inst).answer,
    "auto": lambda inst: solve_auto(inst).answer,
}
DEFAULT_CLASS = {
    "cycle": "cycle",
    "path": "path_forest",
    "cograph": "cograph",
    "auto": "arbitrary",
    "planar": "subcubic_max_is",
    "split": "split",
    "bipartite": "bipartite",
}


@dataclass(frozen=True)
class CampaignSpec:
    """What to test and over which instance family.

    ``k_max=None`` means every admissible token count.  ``exhaustive=None``
    enumerates when the family has an enumerator and needs at most
    ``EXHAUSTIVE_BUDGET`` oracle comparisons; otherwise ``trials`` draws are
    sampled.  ``all_targets`` compares every target of the drawn size
    against one sampled source (one oracle search per source).
    """

    mode: str
    subject: str
    trials: int = 100
    seed: int = 0
    graph_class: str | None = None
    n_min: int = 1
    n_max: int = 8
    k_min: int = 0
    k_max: int | None = None
    limits: SearchLimits = SearchLimits(max_states=CAMPAIGN_MAX_STATES)
    policies: tuple[str, ...] = ("lex",)
    exhaustive: bool | None = None
    all_targets: bool = False
    out_dir: str | None = None

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.trials < 0:
            raise ValueError("trials must be >= 0")
        if not 1 <= self.n_min <= self.n_max:
            raise ValueError(f"empty vertex range [{self.n_min}, {self.n_max}]")
        if self.k_min < 0 or (self.k_max is not None and self.k_max < self.k_min):
            raise ValueError(f"empty token range [{self.k_min}, {self.k_max}]")
        if not self.policies:
            raise ValueError("at least one policy is required")
        for p in self.policies:
            ReductionPolicy.parse(p)
        if self.graph_class is not None and self.graph_class not in GRAPH_CLASSES:
            raise ValueError(f"unknown graph class {self.graph_class!r}")

    @property
    def family(self) -> str:
        return self.graph_class or DEFAULT_CLASS.get(self.subject, "arbitrary")


@dataclass
class Mismatch:
    instance_text: str
    reason: str
    provenance: dict
    path: str | None = None

    @property
    def instance(self) -> Instance:
        return parse_instance(self.instance_text)


@dataclass
class CampaignReport:
    trials_run: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)
    truncated: int = 0
    wall_time: float = 0.0
    exhaustive: bool = False
    oracle_yes: int = 0

    @property
    def passed(self) -> bool:
        return not self.mismatches

    @property
    def mismatch_paths(self) -> list[str]:
        return [m.path for m in self.mismatches if m.path]

    def to_json(self) -> dict:
        return {
            "trials_run": self.trials_run,
            "mismatch_count": len(self.mismatches),
            "mismatch_paths": self.mismatch_paths,
            "truncated": self.truncated,
            "wall_time_ms": round(self.wall_time * 1000),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def content(self) -> tuple:
        """Everything except wall time, for determinism checks."""
        return (
            self.trials_run,
            self.truncated,
            [(m.instance_text, m.reason, sorted(m.provenance.items())) for m in self.mismatches],
        )


def trial_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}/{index}")


# -- enumeration ----------------------------------------------------------------


def _family_edges(family: str, n: int) -> list[tuple[int, int]] | None:
    if family == "cycle":
        return [(i, i % n + 1) for i in range(1, n + 1)] if n >= 3 else []
    if family in ("path", "path_forest"):
        return [(i, i + 1) for i in range(1, n)]
    return None


def _enumerable(spec: CampaignSpec) -> bool:
    return spec.mode == "solver_equivalence" and _family_edges(spec.family, 3) is not None


def _token_sizes(spec: CampaignSpec, alpha: int) -> range:
    hi = alpha if spec.k_max is None else min(spec.k_max, alpha)
    return range(spec.k_min, hi + 1)


def exhaustive_size(spec: CampaignSpec) -> int:
    """Number of oracle comparisons an exhaustive run of ``spec`` would make."""
    total = 0
    for n in range(spec.n_min, spec.n_max + 1):
        edges = _family_edges(spec.family, n)
        if edges is None:
            return -1
        if spec.family == "cycle" and n < 3:
            continue
        g = OrientedGraph(n, edges)
        counts: dict[int, int] = {}
        for s in independent_sets(g):
            counts[len(s)] = counts.get(len(s), 0) + 1
        pairs = sum(counts.get(k, 0) ** 2 for k in _token_sizes(spec, max(counts)))
        total += pairs * 2 ** len(edges)
    return total


def _exhaustive_groups(spec: CampaignSpec) -> Iterator[tuple[dict, OrientedGraph, tuple, list[tuple]]]:
    for n in range(spec.n_min, spec.n_max + 1):
        edges = _family_edges(spec.family, n)
        if spec.family == "cycle" and n < 3:
            continue
        base = OrientedGraph(n, edges)
        by_size: dict[int, list[tuple]] = {}
        for s in independent_sets(base):
            by_size.setdefault(len(s), []).append(s)
        sizes = _token_sizes(spec, max(by_size))
        for flips in product((False, True), repeat=len(edges)):
            g = OrientedGraph(n, [(b, a) if f else (a, b) for (a, b), f in zip(edges, flips)])
            for k in sizes:
                for s in by_size.get(k, []):
                    prov = {"n": n, "orientation": "".join("10"[f] for f in flips), "k": k}
                    yield prov, g, s, by_size[k]


# -- solver equivalence ---------------------------------------------------------


def _sampled_groups(spec: CampaignSpec) -> Iterator[tuple[dict, OrientedGraph, tuple, list[tuple]] | None]:
    """Yield ``(provenance, graph, source, targets)``; ``None`` marks an infeasible draw."""
    for i in range(spec.trials):
        rng = trial_rng(spec.seed, i)
        n = rng.randint(spec.n_min, spec.n_max)
        try:
            g, _ = generate_graph(spec.family, n, rng)
        except InfeasibleSpec:
            yield None
            continue
        alpha = max_independent_set(g).alpha
        sizes = list(_token_sizes(spec, alpha))
        if not sizes:
            yield None
            continue
        if not spec.all_targets:
            sizes = [rng.choice(sizes)]
        for k in sizes:
            s = random_independent_set(g, k, rng)
            if s is None:
                yield None
                continue
            if spec.all_targets:
                targets = list(independent_sets(g, size=k))
            else:
                targets = [random_independent_set(g, k, rng)]
            yield {"seed": spec.seed, "trial": i, "n": n, "k": k}, g, s, targets


def _compare_group(spec, solver, report: CampaignReport, prov, g, s, targets) -> None:
    try:
        reach = reachable_masks(g, s, spec.limits)
    except StateLimitExceeded:
        report.truncated += len(targets)
        return
    for t in targets:
        inst = Instance(g, s, t)
        expected = mask_of(t) in reach
        try:
            got = solver(inst)
        except WrongGraphClass as exc:
            _record(spec, report, inst, f"subject rejected the instance: {exc}", prov)
            continue
        report.trials_run += 1
        report.oracle_yes += expected
        if got != expected:
            _record(spec, report, inst, f"subject says {_yn(got)}, oracle says {_yn(expected)}", prov)


def run_equivalence_campaign(spec: CampaignSpec) -> CampaignReport:
    if spec.mode != "solver_equivalence":
        raise ValueError("run_equivalence_campaign needs mode 'solver_equivalence'")
    solver = SOLVERS.get(spec.subject)
    if solver is None:
        raise UnknownSubject(f"unknown solver {spec.subject!r}; choose from {tuple(SOLVERS)}")
    start = time.perf_counter()
    report = CampaignReport()
    exhaustive = spec.exhaustive
    if exhaustive is None:
        exhaustive = _enumerable(spec) and 0 <= exhaustive_size(spec) <= EXHAUSTIVE_BUDGET
    elif exhaustive and not _enumerable(spec):
        raise ValueError(f"no enumerator for class {spec.family!r}")
    report.exhaustive = exhaustive
    groups = _exhaustive_groups(spec) if exhaustive else _sampled_groups(spec)
    for group in groups:
        if group is not None:
            _compare_group(spec, solver, report, *group)
    report.wall_time = time.perf_counter() - start
    return report


# -- reduction soundness --------------------------------------------------------


def structure_errors(kind: str, original: Instance, reduced: Instance, art: ReductionArtifact) -> list[str]:
    """Structural closure checks for one reduction output."""
    errs = []
    g = reduced.graph
    if kind == "bipartite":
        if bipartition(g) is None:
            errs.append("output is not bipartite")
        n = art.original_n
        for v in range(1, n + 1):
            if g.neighbors(v) != g.neighbors(n + v):
                errs.append(f"N({v}) != N({v}')")
    elif kind == "split":
        clique = {x for v in art.clique for x in art.forward_map[v]} | {art.c1, art.c2}
        indep = set(g.vertices) - clique
        if not is_split_partition(g, clique, indep):
            errs.append("output fails the split-partition check")
    else:
        if len(reduced.source) != len(original.source) + original.graph.arc_count:
            errs.append("|S*| != |S| + |E|")
        if len(reduced.target) != len(original.target) + original.graph.arc_count:
            errs.append("|T*| != |T| + |E|")
    for which, conf in (("source", reduced.source), ("target", reduced.target)):
        if not is_independent(g, conf):
            errs.append(f"reduced {which} is not independent")
    return errs


def _check_reduction(spec, kind, inst, partition, policy_text) -> tuple[str | None, bool | None]:
    """Return ``(failure reason or None, oracle answer)`` for one instance and policy.

    The answer is ``None`` when an oracle run was truncated.
    """
    red, art = reduce(kind, inst, ReductionPolicy.parse(policy_text), partition)
    errs = structure_errors(kind, inst, red, art)
    if errs:
        return "; ".join(errs), False
    try:
        a = solve_exact(inst, spec.limits, want_witness=True, undirected=True)
        b = solve_exact(red, spec.limits, want_witness=True)
    except StateLimitExceeded:
        return None, None
    if a.answer != b.answer:
        return f"original says {_yn(a.answer)}, reduced says {_yn(b.answer)}", a.answer
    if map_configuration(art, inst.source) != red.source:
        return "mapped source differs from reduced source", a.answer
    if not a.answer:
        return None, False
    try:
        lifted = lift_sequence(art, inst, a.witness)
    except ReductionError as exc:
        return f"lift failed: {exc}", True
    try:
        project_sequence(art, red, b.witness)
    except ReductionError as exc:
        return f"project failed: {exc}", True
    if kind == "planar":
        for seq in (lifted, b.witness):
            for conf in configurations_along(red, seq):
                if max(gadget_weights(art, conf), default=0) > 2:
                    return "a gadget holds more than 2 tokens", True
    return None, True


def run_reduction_campaign(spec: CampaignSpec) -> CampaignReport:
    if spec.mode != "reduction_soundness":
        raise ValueError("run_reduction_campaign needs mode 'reduction_soundness'")
    if spec.subject not in KINDS:
        raise UnknownSubject(f"unknown reduction {spec.subject!r}; choose from {KINDS}")
    start = time.perf_counter()
    report = CampaignReport()
    max_is = spec.family.endswith("max_is")
    for i in range(spec.trials):
        rng = trial_rng(spec.seed, i)
        n = rng.randint(spec.n_min, spec.n_max)
        if max_is:
            k = None
        else:
            k = rng.randint(spec.k_min, spec.k_max if spec.k_max is not None else max(spec.k_min, n // 2))
        try:
            inst, partition = generate_with_partition(GenSpec(spec.family, n, k, rng.getrandbits(63)))
        except InfeasibleSpec:
            continue
        for policy in spec.policies:
            prov = {"seed": spec.seed, "trial": i, "policy": policy}
            if partition is not None:
                prov["clique"] = " ".join(map(str, sorted(partition[0])))
            reason, answer = _check_reduction(spec, spec.subject, inst, partition, policy)
            if answer is None:
                report.truncated += 1
                continue
            report.trials_run += 1
            report.oracle_yes += answer
            if reason is not None:
                _record(spec, report, inst, reason, prov, partition)
    report.wall_time = time.perf_counter() - start
    return report


def run_campaign(spec: CampaignSpec) -> CampaignReport:
    if spec.mode == "solver_equivalence":
        return run_equivalence_campaign(spec)
    return run_reduction_campaign(spec)


# -- mismatches -----------------------------------------------------------------


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def _record(spec: CampaignSpec, report: CampaignReport, inst: Instance, reason: str, prov: dict, partition=None) -> None:
    m = Mismatch(serialize_instance(inst), reason, dict(prov, subject=spec.subject))
    if spec.out_dir:
        os.makedirs(spec.out_dir, exist_ok=True)
        stem = os.path.join(spec.out_dir, f"{spec.subject}-{spec.seed}-{len(report.mismatches):04d}")
        with open(stem + ".tsd", "w", encoding="utf-8") as fh:
            fh.write(f"# {reason}\n# " + " ".join(f"{k}={v}" for k, v in sorted(m.provenance.items())) + "\n")
            fh.write(m.instance_text)
        if spec.mode == "reduction_soundness":
            _, art = reduce(spec.subject, inst, ReductionPolicy.parse(prov["policy"]), partition)
            write_artifact(art, stem + ".map")
        m.path = stem + ".tsd"
    report.mismatches.append(m)


def recheck(spec: CampaignSpec, mismatch: Mismatch) -> bool:
    """Re-run one reported mismatch in isolation; True if it still disagrees."""
    inst = mismatch.instance
    if spec.mode == "solver_equivalence":
        try:
            got = SOLVERS[spec.subject](inst)
        except WrongGraphClass:
            return True
        return got != solve_exact(inst, spec.limits).answer
    partition = None
    if "clique" in mismatch.provenance:
        clique = frozenset(int(x) for x in mismatch.provenance["clique"].split())
        partition = (clique, frozenset(inst.graph.vertices) - clique)
    reason, _ = _check_reduction(spec, spec.subject, inst, partition, mismatch.provenance["policy"])
    return reason is not None
