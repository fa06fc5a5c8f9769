"""Certified lower and upper bounds on OR-capacity, for graphs and pairs.

Lower bounds come from cliques in OR powers (the limit defining capacity is
a supremum, so every finite level counts), from the ``(v, sigma(v))`` clique
of self-complementary graphs, and from Lovasz's theorem for vertex-transitive
self-complementary graphs.  Upper bounds come from the dual certificate of
theta-bar and from exact chromatic numbers.

For a pair ``(F, G)`` the categorical product is bounded above by the
smaller factor capacity and below by capacities of subgraphs of one factor
that map homomorphically into the other.  Only a declared family of such
subgraphs is examined, so reported lower bounds may be weaker than the true
supremum over all subgraphs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Any

from .graph import (
    Graph,
    SizeBudgetExceeded,
    complement,
    complete_graph,
    induced_subgraph,
    is_isomorphic,
    or_power,
)
from .paley import (
    PaleyVariant,
    is_automorphism,
    is_complementing,
    is_prime,
    paley_family,
    self_complement_witness,
    transitivity_generators,
    vertex_orbit,
    z_pair,
)
from .search import (
    SearchBudget,
    SearchInconclusive,
    chromatic_number,
    homomorphism,
    is_k_colorable,
    max_clique,
    max_independent_set,
    selfcomp_square_clique,
    verify_coloring,
)
from .theta import SolverConfig, theta_bar

__all__ = [
    "LabConfig",
    "GraphHints",
    "BoundEntry",
    "BoundReport",
    "PairReport",
    "HansonPetridis",
    "capacity_bounds",
    "hanson_petridis",
    "pair_bounds",
    "paley_gap_certificate",
    "paley_hints",
]

TOL = 1e-6

CLIQUE_POWER = "clique-power"
SELF_COMPLEMENTARY_SQUARE = "self-complementary-square"
VT_SELFCOMP_THEOREM = "vertex-transitive-selfcomp-theorem"
THETA_BAR = "theta-bar"
CHROMATIC = "chromatic"
HOMOMORPHISM = "homomorphism"
CLIQUE_ROUTE = "common-clique"
COLORABLE_SUBGRAPH = "colorable-subgraph"


@dataclass(frozen=True)
class LabConfig:
    solver: SolverConfig = SolverConfig()
    max_power: int = 1
    search_budget: SearchBudget = SearchBudget(max_seconds=20.0)
    chromatic_budget: SearchBudget = SearchBudget(max_nodes=50_000, max_seconds=5.0)
    subgraph_limit: int = 10
    isomorphism_limit: int = 64


@dataclass(frozen=True)
class GraphHints:
    """Optional certificates supplied by the caller; all are re-verified."""

    complementing: tuple[int, ...] | None = None
    automorphisms: tuple[tuple[int, ...], ...] | None = None


@dataclass(frozen=True)
class BoundEntry:
    value: float
    kind: str  # "lower" | "upper"
    provenance: str
    detail: str = ""
    certificate: dict[str, Any] = field(default_factory=dict, compare=False, repr=False)


@dataclass(frozen=True)
class BoundReport:
    graph_id: str
    n: int
    entries: tuple[BoundEntry, ...]
    exact: bool = False
    notices: tuple[str, ...] = ()

    @property
    def lowers(self) -> list[BoundEntry]:
        return [e for e in self.entries if e.kind == "lower"]

    @property
    def uppers(self) -> list[BoundEntry]:
        return [e for e in self.entries if e.kind == "upper"]

    @property
    def best_lower(self) -> float:
        return max((e.value for e in self.lowers), default=0.0 if self.n == 0 else 1.0)

    @property
    def best_upper(self) -> float:
        return min((e.value for e in self.uppers), default=float(self.n))

    def pinned(self, rel_tol: float = 1e-4) -> bool:
        return self.exact or self.best_upper - self.best_lower <= rel_tol * max(1.0, self.best_upper)

    def check(self) -> None:
        worst_upper = self.best_upper
        for e in self.lowers:
            if e.value > worst_upper + TOL:
                raise AssertionError(f"{self.graph_id}: lower bound {e} exceeds upper {worst_upper}")


@dataclass(frozen=True)
class Hypothesis:
    name: str
    holds: bool | None  # None when undecided
    detail: str


@dataclass(frozen=True)
class PairReport:
    f_id: str
    g_id: str
    upper: float
    lower_candidates: tuple[BoundEntry, ...]
    verdict: str  # equality-proved | gap-open | bounds-coincide-numerically | undetermined
    f_report: BoundReport
    g_report: BoundReport
    homomorphisms: dict[str, Any] = field(default_factory=dict)
    value_interval: tuple[float, float] | None = None
    cap: float | None = None
    hypotheses: tuple[Hypothesis, ...] = ()
    narrative: tuple[str, ...] = ()
    notices: tuple[str, ...] = ()

    @property
    def best_lower(self) -> float:
        return max((e.value for e in self.lower_candidates), default=1.0)

    def check(self) -> None:
        for e in self.lower_candidates:
            if e.value > self.upper + TOL:
                raise AssertionError(f"pair lower candidate {e} exceeds upper {self.upper}")


def _verified_sigma(g: Graph, hints: GraphHints | None, cfg: LabConfig) -> tuple[list[int] | None, str]:
    if hints is not None and hints.complementing is not None:
        sigma = list(hints.complementing)
        if is_complementing(g, sigma):
            return sigma, "supplied"
        return None, "supplied complementing permutation failed verification"
    if g.n > cfg.isomorphism_limit:
        return None, f"no complementing permutation searched (n > {cfg.isomorphism_limit})"
    if g.num_edges * 4 != g.n * (g.n - 1):
        return None, ""
    try:
        sigma = is_isomorphic(g, complement(g), cfg.isomorphism_limit)
    except SizeBudgetExceeded as exc:
        return None, str(exc)
    return sigma, "found by isomorphism search" if sigma else ""


def capacity_bounds(
    g: Graph,
    max_power: int | None = None,
    cfg: LabConfig = LabConfig(),
    hints: GraphHints | None = None,
    graph_id: str | None = None,
) -> BoundReport:
    """Lower and upper bounds on the OR-capacity of ``g`` with certificates."""
    max_power = cfg.max_power if max_power is None else max_power
    if max_power < 1:
        raise ValueError("max_power must be at least 1")
    gid = graph_id or g.label or f"graph{g.n}"
    entries: list[BoundEntry] = []
    notices: list[str] = []
    n = g.n
    if n == 0:
        return BoundReport(gid, 0, (), True, ("empty graph",))

    for t in range(1, max_power + 1):
        try:
            power = g if t == 1 else or_power(g, t)
        except SizeBudgetExceeded as exc:
            notices.append(f"clique bound at power {t} omitted: {exc}")
            break
        res = max_clique(power, cfg.search_budget)
        if not res.proven_optimal:
            notices.append(f"clique search at power {t} hit its budget; using the clique found")
        entries.append(
            BoundEntry(
                res.size ** (1.0 / t),
                "lower",
                CLIQUE_POWER,
                f"omega(G^{t}) >= {res.size}",
                {"power": t, "clique": list(res.witness)},
            )
        )

    sigma, how = _verified_sigma(g, hints, cfg)
    if how and sigma is None:
        notices.append(how)
    exact = False
    if sigma is not None:
        clique = selfcomp_square_clique(g, sigma)
        entries.append(
            BoundEntry(
                math.sqrt(n),
                "lower",
                SELF_COMPLEMENTARY_SQUARE,
                f"(v, sigma(v)) clique of size {n} in G^2; sigma {how}",
                {"sigma": sigma, "clique": clique},
            )
        )
        gens = None if hints is None or hints.automorphisms is None else [list(p) for p in hints.automorphisms]
        if gens is not None:
            if all(is_automorphism(g, p) for p in gens) and len(vertex_orbit(gens, 0)) == n:
                exact = True
                cert = {"sigma": sigma, "generators": gens}
                detail = "vertex-transitive and self-complementary: capacity is sqrt(n)"
                entries.append(BoundEntry(math.sqrt(n), "lower", VT_SELFCOMP_THEOREM, detail, cert))
                entries.append(BoundEntry(math.sqrt(n), "upper", VT_SELFCOMP_THEOREM, detail, cert))
            else:
                notices.append("supplied automorphisms do not certify vertex-transitivity")

    tb = theta_bar(g, cfg.solver)
    entries.append(
        BoundEntry(
            tb.upper,
            "upper",
            THETA_BAR,
            f"theta-bar in [{tb.lower:.6f}, {tb.upper:.6f}] ({tb.status})",
            {"lower": tb.lower, "upper": tb.upper, "status": tb.status, "iterations": tb.iterations},
        )
    )

    try:
        chi = chromatic_number(g, cfg.chromatic_budget)
    except SearchInconclusive as exc:
        notices.append(f"chromatic bound omitted: {exc}")
    else:
        coloring = is_k_colorable(g, chi, cfg.chromatic_budget) if chi else []
        if coloring is not None and verify_coloring(g, coloring, chi):
            entries.append(BoundEntry(float(chi), "upper", CHROMATIC, f"chi(G) = {chi}", {"coloring": coloring}))
        else:  # pragma: no cover - chromatic_number just decided this
            notices.append("chromatic colouring could not be reproduced")

    report = BoundReport(gid, n, tuple(entries), exact, tuple(notices))
    report.check()
    return report


@dataclass(frozen=True)
class HansonPetridis:
    p: int
    omega_bound: float  # (sqrt(2p-1) + 1) / 2
    omega_cap: int  # largest integer not exceeding omega_bound
    chi_bound: float  # chi(P_p) > 2p / (sqrt(2p) + 1)


def hanson_petridis(p: int) -> HansonPetridis:
    if not is_prime(p) or p % 4 != 1:
        raise ValueError(f"Hanson-Petridis bound needs a prime p = 1 mod 4, got {p}")
    bound = (math.sqrt(2 * p - 1) + 1) / 2
    # largest w with 2w - 1 <= sqrt(2p - 1), decided in integers
    cap = (math.isqrt(2 * p - 1) + 1) // 2
    return HansonPetridis(p, bound, cap, 2 * p / (math.sqrt(2 * p) + 1))


def _ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def _hom_to_complete(f: Graph, m: int, budget: SearchBudget) -> tuple[list[int] | None, str]:
    """Decide ``F -> K_m`` (an m-colouring), cheapest argument first."""
    clique = max_clique(f, budget, deterministic=False)
    if clique.size > m:
        return None, f"omega = {clique.size} > {m}"
    alpha = max_independent_set(f, budget, deterministic=False)
    if alpha.proven_optimal and alpha.size and -(-f.n // alpha.size) > m:
        return None, f"ceil(n / alpha) = ceil({f.n}/{alpha.size}) > {m}"
    coloring = is_k_colorable(f, m, budget)
    return coloring, "exhaustive colouring search" if coloring is None else "colouring found"


def _decide_hom(f: Graph, g: Graph, budget: SearchBudget) -> tuple[list[int] | None, str]:
    if g.is_complete():
        return _hom_to_complete(f, g.n, budget)
    mapping = homomorphism(f, g, budget)
    return mapping, "backtracking search" if mapping is None else "witness found"


def _colorable_subgraph_candidates(
    f: Graph, m: int, cfg: LabConfig, label: str
) -> tuple[list[BoundEntry], list[str]]:
    """Capacity lower bounds of m-colourable induced subgraphs of ``f``.

    Exhaustive over vertex subsets when ``f`` is small; otherwise over the
    graphs with one vertex deleted.
    """
    out: list[BoundEntry] = []
    notes: list[str] = []
    if f.n <= cfg.subgraph_limit:
        family = []
        maximal: list[int] = []
        for size in range(f.n, 0, -1):
            for subset in itertools.combinations(range(f.n), size):
                mask = sum(1 << v for v in subset)
                if any(mask & big == mask for big in maximal):
                    continue
                sub = induced_subgraph(f, subset)
                try:
                    if is_k_colorable(sub, m, cfg.search_budget) is not None:
                        maximal.append(mask)
                        family.append(list(subset))
                except SearchInconclusive:
                    notes.append(f"colourability of {label}[{list(subset)}] undecided")
        scope = "all maximal m-colourable induced subgraphs"
    else:
        family = []
        for v in range(f.n):
            keep = [u for u in range(f.n) if u != v]
            try:
                if is_k_colorable(induced_subgraph(f, keep), m, cfg.search_budget) is not None:
                    family.append(keep)
            except SearchInconclusive:
                notes.append(f"colourability of {label} - {v} undecided")
        scope = "one-vertex-deleted induced subgraphs"
    for subset in family:
        sub = induced_subgraph(f, subset)
        omega = max_clique(sub, cfg.search_budget)
        best, cert = float(omega.size), {"power": 1, "clique": list(omega.witness)}
        if sub.n * sub.n <= 400:
            sq = max_clique(or_power(sub, 2), cfg.search_budget)
            if math.sqrt(sq.size) > best:
                best, cert = math.sqrt(sq.size), {"power": 2, "clique": list(sq.witness)}
        cert["vertices"] = subset
        out.append(BoundEntry(best, "lower", COLORABLE_SUBGRAPH, f"{m}-colourable {label}[{len(subset)} vertices] ({scope})", cert))
    return out, notes


def _assemble(
    f: Graph,
    g: Graph,
    rf: BoundReport,
    rg: BoundReport,
    homs: dict[str, tuple[list[int] | None, str] | None],
    extra: list[BoundEntry],
    notices: list[str],
) -> tuple[float, list[BoundEntry], str, tuple[float, float] | None]:
    upper = min(rf.best_upper, rg.best_upper)
    cands = list(extra)
    verdict = None
    interval = None
    for key, src, rep in (("F->G", f, rf), ("G->F", g, rg)):
        decided = homs.get(key)
        if decided is None:
            continue
        mapping, how = decided
        if mapping is not None:
            cands.append(
                BoundEntry(rep.best_lower, "lower", HOMOMORPHISM, f"{key}: whole factor maps across", {"mapping": mapping})
            )
            verdict = "equality-proved"
            lo = rep.best_lower
            hi = min(rep.best_upper, upper)
            interval = (lo, hi) if interval is None else (max(interval[0], lo), min(interval[1], hi))
    if verdict is None:
        best = max((c.value for c in cands), default=1.0)
        if best >= upper - TOL * max(1.0, upper):
            verdict = "bounds-coincide-numerically"
        else:
            verdict = "gap-open"
    return upper, cands, verdict, interval


def pair_bounds(
    f: Graph,
    g: Graph,
    cfg: LabConfig = LabConfig(),
    f_hints: GraphHints | None = None,
    g_hints: GraphHints | None = None,
    max_power: int | None = None,
) -> PairReport:
    """Bounds on the OR-capacity of the categorical product ``F x G``."""
    fid = f.label or f"F{f.n}"
    gid = g.label or f"G{g.n}"
    rf = capacity_bounds(f, max_power, cfg, f_hints, fid)
    rg = capacity_bounds(g, max_power, cfg, g_hints, gid)
    notices: list[str] = []
    homs: dict[str, tuple[list[int] | None, str] | None] = {}
    for key, a, b in (("F->G", f, g), ("G->F", g, f)):
        try:
            homs[key] = _decide_hom(a, b, cfg.search_budget)
        except SearchInconclusive as exc:
            homs[key] = None
            notices.append(f"{key} undecided: {exc}")

    wf = max_clique(f, cfg.search_budget)
    wg = max_clique(g, cfg.search_budget)
    c = min(wf.size, wg.size)
    small = wf if wf.size <= wg.size else wg
    extra = [
        BoundEntry(
            float(c),
            "lower",
            CLIQUE_ROUTE,
            f"K_{c} lies in both factors",
            {"clique": list(small.witness[:c])},
        )
    ]
    for key, a, b, label in (("F->G", f, g, fid), ("G->F", g, f, gid)):
        decided = homs.get(key)
        if b.is_complete() and not a.is_complete() and decided is not None and decided[0] is None:
            found, notes = _colorable_subgraph_candidates(a, b.n, cfg, label)
            extra.extend(found)
            notices.extend(notes)

    upper, cands, verdict, interval = _assemble(f, g, rf, rg, homs, extra, notices)
    if verdict == "gap-open" and any(v is None for v in homs.values()):
        verdict = "undetermined"
    notices.append("lower candidates cover a declared subgraph family only; the full supremum may be larger")
    report = PairReport(
        fid,
        gid,
        upper,
        tuple(cands),
        verdict,
        rf,
        rg,
        homomorphisms={k: None if v is None else {"mapping": v[0], "reason": v[1]} for k, v in homs.items()},
        value_interval=interval,
        notices=tuple(notices),
    )
    report.check()
    return report


def paley_hints(q: int, variant: PaleyVariant | str = PaleyVariant.FULL) -> GraphHints:
    variant = PaleyVariant(variant)
    if variant is PaleyVariant.FULL:
        w = self_complement_witness(q)
        gens = tuple(tuple(p) for p in transitivity_generators(q))
        return GraphHints(w.paley, gens)
    if variant is PaleyVariant.ONE_DELETED:
        return GraphHints(self_complement_witness(q).one_deleted, None)
    return GraphHints()


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def paley_gap_certificate(p: int, variant: PaleyVariant | str = PaleyVariant.ONE_DELETED, cfg: LabConfig = LabConfig()) -> PairReport:
    """Check whether ``(P_p, K_m)`` or ``(Q_{p-1}, K_l)`` separates the bounds.

    Every hypothesis of the argument is decided by computation and listed in
    the report; when one fails the report says which.
    """
    variant = PaleyVariant(variant)
    if variant not in (PaleyVariant.FULL, PaleyVariant.ONE_DELETED):
        raise ValueError("gap certificates exist for the full and one-deleted variants only")
    if not is_prime(p) or p % 4 != 1:
        raise ValueError(f"need a prime p = 1 mod 4, got {p}")

    hp = hanson_petridis(p)
    full = variant is PaleyVariant.FULL
    f = paley_family(p, variant)
    order = f.n
    m = _ceil_sqrt(order)
    k = complete_graph(m)
    fid, kid = f.label, f"K{m}"
    story: list[str] = []
    hyps: list[Hypothesis] = []
    notices: list[str] = []

    story.append(f"Pair ({fid}, {kid}) with {m} = ceil(sqrt({order})).")
    story.append(
        f"Hanson-Petridis: omega(P{p}) <= (sqrt({2 * p - 1}) + 1)/2 = {hp.omega_bound:.4f}, "
        f"so omega(P{p}) <= {hp.omega_cap} and chi(P{p}) > {hp.chi_bound:.4f}."
    )

    omega = max_clique(f, cfg.search_budget)
    alpha = max_independent_set(f, cfg.search_budget)
    exact_counts = omega.proven_optimal and alpha.proven_optimal
    if omega.size > hp.omega_cap and full:
        raise AssertionError("clique search contradicts the Hanson-Petridis bound")

    # K_m -> F iff F has an m-clique
    holds = omega.size < m if omega.proven_optimal else None
    hyps.append(Hypothesis(f"{kid} does not map to {fid}", holds, f"omega({fid}) = {omega.size} vs m = {m}"))
    story.append(f"omega({fid}) = {omega.size}, alpha({fid}) = {alpha.size} (exact search).")

    # F -> K_m iff chi(F) <= m
    chi_floor = -(-order // alpha.size)
    coloring = None
    if exact_counts and chi_floor > m:
        no_map: bool | None = True
        how = f"chi({fid}) >= ceil({order}/{alpha.size}) = {chi_floor} > {m}"
    else:
        how = f"ceil({order}/{alpha.size}) = {chi_floor} does not exceed {m}"
        try:
            coloring = is_k_colorable(f, m, cfg.search_budget)
        except SearchInconclusive:
            no_map = None
            how += f"; exact {m}-colourability undecided"
        else:
            no_map = coloring is None
            how += "; exhaustive search refutes an m-colouring" if no_map else f"; {fid} is {m}-colourable"
    hyps.append(Hypothesis(f"{fid} does not map to {kid}", no_map, how))
    story.append(how + ".")
    if not full:
        floor2 = -(-(order - 1) // alpha.size)
        story.append(
            f"Each {order - 1}-vertex induced subgraph has chi >= ceil({order - 1}/{alpha.size}) = {floor2}"
            f" ({'>' if floor2 > m else '<='} {m})."
        )
    if no_map is False:
        story.append(f"Hypothesis fails: {fid} -> {kid}, so the gap argument does not apply for p = {p}.")

    if full:
        hints_f = paley_hints(p, PaleyVariant.FULL)
        inner = [paley_family(p, PaleyVariant.ONE_DELETED)]
    else:
        hints_f = paley_hints(p, PaleyVariant.ONE_DELETED)
        inner = list(z_pair(p))
    rf = capacity_bounds(f, 1, cfg, hints_f, fid)
    rk = capacity_bounds(k, 1, cfg, None, kid)

    cap_parts = []
    for sub in inner:
        tb = theta_bar(sub, cfg.solver)
        cap_parts.append((sub.label, tb))
        story.append(f"theta-bar({sub.label}) in [{_fmt(tb.lower)}, {_fmt(tb.upper)}].")
    cap = max([tb.upper for _, tb in cap_parts] + [float(omega.size)])
    story.append(
        f"Every {m}-colourable induced subgraph of {fid} misses a vertex, so its capacity is at most "
        f"max theta-bar over {', '.join(lbl for lbl, _ in cap_parts)}; subgraphs of {kid} mapping to {fid} "
        f"have capacity <= omega({fid}) = {omega.size}. Cap = {_fmt(cap)}."
    )

    homs: dict[str, tuple[list[int] | None, str] | None] = {
        "F->G": None if no_map is None else (coloring, how),
        "G->F": None if holds is None else (None if holds else list(omega.witness[:m]), f"omega({fid}) = {omega.size}"),
    }
    extra = [
        BoundEntry(float(min(omega.size, m)), "lower", CLIQUE_ROUTE, f"K_{min(omega.size, m)} lies in both factors", {"clique": list(omega.witness)})
    ]
    upper, cands, verdict, interval = _assemble(f, k, rf, rk, homs, extra, notices)
    target = min(rf.best_lower, rk.best_lower)
    story.append(f"Upper bound min(C({fid}), C({kid})) <= {_fmt(upper)}; known lower bound on that minimum = {_fmt(target)}.")

    if verdict == "equality-proved":
        story.append("A homomorphism between the factors exists, so the two bounds coincide.")
    elif all(h.holds for h in hyps) and cap < target - TOL:
        verdict = "gap-open"
        story.append(f"Cap {_fmt(cap)} < {_fmt(target)}: lower and upper bounds on C({fid} x {kid}) are separated.")
    else:
        verdict = "undetermined"
        failed = [h.name for h in hyps if not h.holds]
        if cap >= target - TOL:
            failed.append(f"cap {_fmt(cap)} < {_fmt(target)}")
        story.append("Not certified; failing step(s): " + "; ".join(failed) + ".")
    hyps.append(Hypothesis("cap below the minimum factor capacity", cap < target - TOL, f"{_fmt(cap)} vs {_fmt(target)}"))
    notices.append(
        "the cap covers induced subgraphs (vertex deletions); edge-deleted spanning subgraphs are not examined"
    )
    report = PairReport(
        fid,
        kid,
        upper,
        tuple(cands),
        verdict,
        rf,
        rk,
        homomorphisms={k_: None if v is None else {"mapping": v[0], "reason": v[1]} for k_, v in homs.items()},
        value_interval=interval,
        cap=cap,
        hypotheses=tuple(hyps),
        narrative=tuple(story),
        notices=tuple(notices),
    )
    report.check()
    return report
