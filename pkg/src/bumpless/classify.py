"""
Pattern characterization harness: permutations whose co-BPDs are all reduced.

The claim under test is that every co-BPD of w is reduced exactly when w
avoids the seven patterns in ``PI``. This module decides both sides for each
w and builds explicit witnesses: droop plans for each pattern, their
translation into a larger permutation, a constructive fix for blocked 1423
embeddings, and a construction of non-reduced BPDs for 2143-containing w.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .config import Case, classify_case, co_nonreduced, find_configurations, lemma_predicates
from .diagram import Diagram, co, rothe_bpd
from .enumeration import _check_size, bpds_of, diagrams_by_perm
from .errors import ConstructionFailed, InvalidOccurrence, NotActive, UnknownPattern
from .moves import (
    apply_droop, apply_k_droop, find_k_droops, is_active,
)
from .perm import (
    PI, PI_REVERSED, VEXILLARY_PATTERN, Permutation, all_perms, avoids_all,
    contains, occurrences,
)
from .poly import a_table
from .trace import trace

__all__ = [
    "DroopPlan", "EmbeddedPlan", "BlockingPipe", "Blocked", "APPENDIX_PLANS",
    "all_co_reduced", "appendix_plan", "embed_plan", "witness",
    "nonreduced_bpd_witness", "verify_main_theorem", "co_reverse_pattern_check",
    "TheoremReport", "CoReverseReport", "vexillary_corollary_check",
    "structural_report", "StructuralReport", "CASE_PATTERNS", "witness_detail",
]

Cell = tuple[int, int]
Step = tuple[Cell, Cell]

# droop sequences from the Rothe BPD of each pattern, in cell notation
APPENDIX_PLANS: dict[str, tuple[Step, ...]] = {
    "1423": (((1, 1), (2, 3)),),
    "12543": (((2, 2), (3, 4)), ((1, 1), (2, 3))),
    "13254": (((2, 3), (4, 4)), ((1, 1), (2, 3))),
    "25143": (((1, 2), (2, 4)), ((3, 1), (4, 3))),
    "215643": (((1, 2), (4, 4)), ((2, 1), (3, 3))),
    "216543": (((1, 2), (4, 4)), ((2, 1), (3, 3))),
    "241653": (((2, 4), (4, 5)), ((1, 2), (2, 4)), ((3, 1), (4, 3))),
}


def _fmt_step(s: Step) -> str:
    (a, b), (c, d) = s
    return f"({a},{b})↘({c},{d})"


def _run(d: Diagram, steps) -> Diagram:
    for (a, b), (c, e) in steps:
        d = apply_droop(d, (a, c, b, e))
    return d


@dataclass(frozen=True)
class DroopPlan:
    source_pattern: Permutation
    moves: tuple[Step, ...]

    def execute(self) -> Diagram:
        return _run(rothe_bpd(self.source_pattern), self.moves)

    def to_json_obj(self) -> dict:
        return {
            "pattern": str(self.source_pattern),
            "moves": [[list(s), list(e)] for s, e in self.moves],
        }

    def __str__(self) -> str:
        return f"{self.source_pattern}: " + ", ".join(map(_fmt_step, self.moves))


@dataclass(frozen=True)
class EmbeddedPlan:
    base: DroopPlan
    w: Permutation
    occurrence: tuple[int, ...]
    moves: tuple[Step, ...]
    result: Diagram = field(compare=False)

    def to_json_obj(self) -> dict:
        return {
            "w": str(self.w),
            "pattern": str(self.base.source_pattern),
            "occurrence": list(self.occurrence),
            "moves": [[list(s), list(e)] for s, e in self.moves],
        }


@dataclass(frozen=True, order=True)
class BlockingPipe:
    label: int
    x: int  # pattern pipes exiting above it
    y: int  # pattern pipes entering left of it


@dataclass(frozen=True)
class Blocked:
    base: DroopPlan
    w: Permutation
    occurrence: tuple[int, ...]
    step: int
    move: Step
    blockers: tuple[BlockingPipe, ...]

    def to_json_obj(self) -> dict:
        return {
            "w": str(self.w),
            "pattern": str(self.base.source_pattern),
            "occurrence": list(self.occurrence),
            "step": self.step,
            "move": [list(self.move[0]), list(self.move[1])],
            "blockers": [{"pipe": b.label, "form": [b.x, b.y]} for b in self.blockers],
        }


def all_co_reduced(w: Permutation | str) -> bool:
    """Whether every BPD of w has a reduced co-BPD."""
    return not any(co_nonreduced(d) for d in bpds_of(w).all)


def appendix_plan(pattern: Permutation | str) -> DroopPlan:
    key = str(Permutation.parse(pattern))
    if key not in APPENDIX_PLANS:
        raise UnknownPattern(f"{key} is not one of {', '.join(APPENDIX_PLANS)}")
    return DroopPlan(Permutation.parse(key), APPENDIX_PLANS[key])


def _embedding(w: Permutation, pattern: Permutation, occ: tuple[int, ...]):
    if len(occ) != pattern.n or list(occ) != sorted(set(occ)) or not all(1 <= i <= w.n for i in occ):
        raise InvalidOccurrence(f"{occ} is not a set of positions of {w}")
    vals = [w[i] for i in occ]
    if Permutation.parse([sorted(vals).index(v) + 1 for v in vals]) != pattern:
        raise InvalidOccurrence(f"positions {occ} of {w} do not form {pattern}")
    cols = sorted(vals)
    return (lambda a: occ[a - 1]), (lambda b: cols[b - 1]), vals


def blocking_form(w: Permutation, occ: tuple[int, ...], label: int) -> BlockingPipe:
    row = w.position(label)
    vals = [w[i] for i in occ]
    return BlockingPipe(label, sum(1 for i in occ if i < row), sum(1 for v in vals if v < label))


def embed_plan(w: Permutation | str, pattern: Permutation | str, occurrence) -> EmbeddedPlan | Blocked:
    """Translate a pattern's droop plan along an occurrence and run it on the Rothe BPD of w."""
    w = Permutation.parse(w)
    base = appendix_plan(pattern)
    occ = tuple(int(i) for i in occurrence)
    row, col, _ = _embedding(w, base.source_pattern, occ)
    moves = tuple(((row(a), col(b)), (row(c), col(e))) for (a, b), (c, e) in base.moves)
    d = rothe_bpd(w)
    for k, ((a, b), (c, e)) in enumerate(moves):
        rect = (a, c, b, e)
        if not is_active(d, rect):
            return Blocked(base, w, occ, k, moves[k], _blockers(d, w, occ, rect))
        d = apply_droop(d, rect)
    return EmbeddedPlan(base, w, occ, moves, d)


def _blockers(d: Diagram, w: Permutation, occ: tuple[int, ...], rect) -> tuple[BlockingPipe, ...]:
    a, b, c, e = rect
    owner = trace(d, check=False).owner()
    pattern_pipes = {w[i] for i in occ}
    labels = set()
    for i in range(a, b + 1):
        for j in range(c, e + 1):
            if (i, j) not in ((a, c), (b, e)) and d[i, j] in "rj":
                labels.update(p for p in owner[i, j] if p not in pattern_pipes)
    return tuple(sorted(blocking_form(w, occ, p) for p in labels))


def _droop_through(d: Diagram, start: Cell, target: Cell) -> Diagram:
    """
    Droop the SE elbow at ``start`` into the blank at ``target``, first
    drooping the right-most blocking SE elbow into the target and retrying
    with that elbow's vacated cell, until the requested droop is active.
    """
    (a, c) = start
    while True:
        b, e = target
        rect = (a, b, c, e)
        if is_active(d, rect):
            return apply_droop(d, rect)
        inner = [
            (i, j) for i in range(a, b + 1) for j in range(c, e + 1)
            if (i, j) not in (start, target) and d[i, j] in "rj"
        ]
        ses = [x for x in inner if d[x] == "r"]
        if len(ses) != len(inner) or not ses:
            raise ConstructionFailed(f"droop {start}->{target} is blocked by non-SE elbows")
        blocker = max(ses, key=lambda x: (x[1], -x[0]))
        try:
            d = apply_droop(d, (blocker[0], b, blocker[1], e))
        except NotActive:
            raise ConstructionFailed(f"blocking elbow {blocker} cannot droop into {target}") from None
        target = blocker


def _cleared_plan(w: Permutation, pattern: Permutation, occ: tuple[int, ...]) -> Diagram:
    """Run the embedded plan, drooping blocking SE elbows out of the way first."""
    row, col, _ = _embedding(w, pattern, occ)
    d = rothe_bpd(w)
    for (a, b), (c, e) in APPENDIX_PLANS[str(pattern)]:
        d = _droop_through(d, (row(a), col(b)), (row(c), col(e)))
    if not co_nonreduced(d):
        raise ConstructionFailed(f"cleared {pattern} plan on {w} at {occ} gave a reduced co-BPD")
    return d


@dataclass(frozen=True)
class WitnessResult:
    diagram: Diagram
    method: str  # "plan", "cleared", "search"
    pattern: Permutation | None = None
    occurrence: tuple[int, ...] | None = None


def witness_detail(w: Permutation | str) -> WitnessResult | None:
    w = Permutation.parse(w)
    _check_size(w.n)
    found = [(p, occ) for p in PI for occ in occurrences(w, p)]
    if not found:
        return None
    for p, occ in found:
        r = embed_plan(w, p, occ)
        if isinstance(r, EmbeddedPlan) and co_nonreduced(r.result):
            return WitnessResult(r.result, "plan", p, occ)
    for p, occ in found:
        try:
            return WitnessResult(_cleared_plan(w, p, occ), "cleared", p, occ)
        except ConstructionFailed:
            continue
    for d in bpds_of(w).all:
        if co_nonreduced(d):
            return WitnessResult(d, "search")
    raise ConstructionFailed(f"{w} contains a pattern of PI but no BPD has a non-reduced co-BPD")


def witness(w: Permutation | str) -> Diagram | None:
    """A BPD of w with non-reduced co-BPD, or None if w avoids every pattern in PI."""
    r = witness_detail(w)
    return None if r is None else r.diagram


def _vex_occurrence_key(w: Permutation, occ: tuple[int, ...]):
    j, i, l, k = (w[t] for t in occ)
    return (-i, -j, k, l)


def nonreduced_bpd_witness(w: Permutation | str, fallback: bool = True) -> Diagram | None:
    """
    A non-reduced BPD of a 2143-containing w: with i < j < k < l the
    occurrence maximizing i and j, droop i (clearing blockers largest first)
    into the blank of the inversion (k, l), then K-droop j onto the SE elbow
    i leaves above that blank.
    """
    w = Permutation.parse(w)
    _check_size(w.n)
    occs = sorted(occurrences(w, VEXILLARY_PATTERN), key=lambda o: _vex_occurrence_key(w, o))
    if not occs:
        return None
    problems = []
    for occ in occs:
        j, i, l, k = (w[t] for t in occ)
        pi, pj, pl = w.position(i), w.position(j), w.position(l)
        try:
            d = _droop_through(rothe_bpd(w), (pi, i), (pl, k))
            # i's pipe now turns east again at the top of the column it drooped into
            landing = next(
                (pi, c) for c in range(i + 1, w.n + 1) if d[pi, c] == "r"
            )
            m = next(
                (m for m in find_k_droops(d) if m.start == (pj, j) and m.landing == landing),
                None,
            )
            if m is None:
                raise ConstructionFailed(f"no K-theoretic droop of {j} onto {landing}")
            out = apply_k_droop(d, m)
            tr = trace(out)
            if tr.perm != w or tr.reduced:
                raise ConstructionFailed("construction did not give a non-reduced BPD of w")
            return out
        except (ConstructionFailed, StopIteration) as exc:
            problems.append(f"{occ}: {exc}")
    if fallback:
        for d in bpds_of(w).nonreduced:
            return d
    raise ConstructionFailed("; ".join(problems))


# verification reports

@dataclass(frozen=True)
class TheoremRow:
    w: Permutation
    all_co_reduced: bool
    avoids_pi: bool

    @property
    def agree(self) -> bool:
        return self.all_co_reduced == self.avoids_pi


@dataclass(frozen=True)
class TheoremReport:
    n: int
    rows: tuple[TheoremRow, ...]

    @property
    def disagreements(self) -> list[TheoremRow]:
        return [r for r in self.rows if not r.agree]

    @property
    def ok(self) -> bool:
        return not self.disagreements

    @property
    def non_avoiders(self) -> list[Permutation]:
        return [r.w for r in self.rows if not r.avoids_pi]

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "permutations": len(self.rows),
            "avoiders": sum(r.avoids_pi for r in self.rows),
            "all_co_reduced": sum(r.all_co_reduced for r in self.rows),
            "agreements": sum(r.agree for r in self.rows),
            "disagreements": [
                {"w": str(r.w), "all_co_reduced": r.all_co_reduced, "avoids_pi": r.avoids_pi}
                for r in self.disagreements
            ],
            "non_avoiders": [str(w) for w in self.non_avoiders],
            "ok": self.ok,
        }

    def to_text(self) -> str:
        o = self.to_json_obj()
        lines = [
            f"n = {self.n}",
            f"permutations:            {o['permutations']}",
            f"avoid all of PI:         {o['avoiders']}",
            f"all co-BPDs reduced:     {o['all_co_reduced']}",
            f"agreements:              {o['agreements']}",
            f"disagreements:           {len(o['disagreements'])}",
        ]
        for r in o["disagreements"]:
            lines.append(f"  {r['w']}: all_co_reduced={r['all_co_reduced']} avoids_pi={r['avoids_pi']}")
        shown = o["non_avoiders"]
        lines.append(f"non-avoiders ({len(shown)}): " + (" ".join(shown) if len(shown) <= 40 else " ".join(shown[:40]) + " ..."))
        lines.append("result: " + ("OK" if self.ok else "FAILED"))
        return "\n".join(lines) + "\n"


def _theorem_row(w: Permutation) -> TheoremRow:
    return TheoremRow(w, all_co_reduced(w), avoids_all(w, PI))


def _theorem_chunk(args) -> list[tuple[str, bool, bool]]:
    max_n, cache, perms = args
    from . import enumeration
    enumeration.set_max_n(max_n)
    enumeration.set_cache_dir(cache)
    out = []
    for s in perms:
        r = _theorem_row(Permutation.parse(s))
        out.append((s, r.all_co_reduced, r.avoids_pi))
    return out


def _chunks(items: list, k: int) -> list[list]:
    size = max(1, -(-len(items) // k))
    return [items[i : i + size] for i in range(0, len(items), size)]


def verify_main_theorem(n: int, jobs: int = 1) -> TheoremReport:
    """Compare all-co-reduced against PI-avoidance for every w in S_n."""
    _check_size(n)
    perms = all_perms(n)
    if jobs <= 1 or n <= 4:
        by = diagrams_by_perm(n)
        rows = []
        for w in perms:
            ds = by.get(w, ())
            rows.append(TheoremRow(w, not any(co_nonreduced(d) for d in ds), avoids_all(w, PI)))
        return TheoremReport(n, tuple(rows))
    from . import enumeration
    cache = enumeration._cache_dir or os.environ.get(enumeration.CACHE_ENV)
    work = [(enumeration._max_n, str(cache) if cache else None, [str(w) for w in chunk])
            for chunk in _chunks(perms, jobs * 4)]
    rows = []
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for part in ex.map(_theorem_chunk, work):
            rows.extend(TheoremRow(Permutation.parse(s), a, b) for s, a, b in part)
    rows.sort(key=lambda r: r.w)
    return TheoremReport(n, tuple(rows))


@dataclass(frozen=True)
class CoReverseReport:
    n: int
    nonreduced: int
    violations: tuple[Diagram, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "nonreduced_diagrams": self.nonreduced,
            "violations": [d.text for d in self.violations],
            "ok": self.ok,
        }


def co_reverse_pattern_check(n: int) -> CoReverseReport:
    """Every non-reduced BPD of size n has a co-BPD whose permutation contains a reversed PI pattern."""
    _check_size(n)
    count, bad = 0, []
    for ds in diagrams_by_perm(n).values():
        for d in ds:
            if trace(d, check=False).reduced:
                continue
            count += 1
            v = trace(co(d), check=False).perm
            if avoids_all(v, PI_REVERSED):
                bad.append(d)
    return CoReverseReport(n, count, tuple(bad))


def vexillary_corollary_check(n: int) -> list[Permutation]:
    """
    Permutations w in S_n containing 2143 and avoiding PI for which no v with
    a_{w,v} > 0 contains a reversed PI pattern (expected: none).
    """
    _check_size(n)
    bad = []
    for w in all_perms(n):
        if contains(w, VEXILLARY_PATTERN) is None or not avoids_all(w, PI):
            continue
        if not any(not avoids_all(v, PI_REVERSED) for v in a_table(w).entries):
            bad.append(w)
    return bad


CASE_PATTERNS: dict[Case, tuple[Permutation, ...]] = {
    Case.NO_DROOP_AFTER: tuple(Permutation.parse(s) for s in ("1423", "13254")),
    Case.DROOP_AFTER: tuple(Permutation.parse(s) for s in ("1423", "12543", "13254", "215643", "216543")),
    Case.CROSS_BEFORE: tuple(
        Permutation.parse(s) for s in ("1423", "12543", "13254", "25143", "216543", "241653")
    ),
}


@dataclass
class StructuralReport:
    n: int
    diagrams: int = 0
    config_mismatches: list[str] = field(default_factory=list)
    lemma_checks: dict[str, int] = field(default_factory=dict)
    lemma_failures: list[dict] = field(default_factory=list)
    cases: dict[str, int] = field(default_factory=dict)
    case_failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.config_mismatches or self.lemma_failures or self.case_failures)

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "diagrams": self.diagrams,
            "config_equivalence_mismatches": self.config_mismatches,
            "lemma_checks": dict(sorted(self.lemma_checks.items())),
            "lemma_failures": self.lemma_failures,
            "cases": dict(sorted(self.cases.items())),
            "case_failures": self.case_failures,
            "ok": self.ok,
        }

    def to_text(self) -> str:
        lines = [f"sizes 1..{self.n}: {self.diagrams} diagrams"]
        lines.append(f"configuration <-> non-reduced co-BPD mismatches: {len(self.config_mismatches)}")
        for k, v in sorted(self.lemma_checks.items()):
            bad = sum(1 for f in self.lemma_failures if f["lemma"] == k)
            lines.append(f"lemma {k:<12} checked {v:>7}  failed {bad}")
        for k, v in sorted(self.cases.items()):
            bad = sum(1 for f in self.case_failures if f["case"] == k)
            lines.append(f"case  {k:<12} instances {v:>5}  prediction failures {bad}")
        lines.append("result: " + ("OK" if self.ok else "FAILED"))
        return "\n".join(lines) + "\n"


def structural_report(n: int) -> StructuralReport:
    """Run the configuration equivalence, lemma predicates and case predictions on every BPD of size <= n."""
    _check_size(n)
    rep = StructuralReport(n)
    for m in range(1, n + 1):
        for w, ds in diagrams_by_perm(m).items():
            for d in ds:
                rep.diagrams += 1
                tr = trace(d, check=False)
                insts = find_configurations(d, tr)
                if bool(insts) != co_nonreduced(d):
                    rep.config_mismatches.append(d.text)
                for chk in lemma_predicates(d):
                    rep.lemma_checks[chk.lemma] = rep.lemma_checks.get(chk.lemma, 0) + 1
                    if not chk.passed:
                        rep.lemma_failures.append({"lemma": chk.lemma, "pipe": chk.pipe, "diagram": d.text})
                for inst in insts:
                    case = classify_case(d, inst, tr)
                    rep.cases[case.value] = rep.cases.get(case.value, 0) + 1
                    if avoids_all(w, CASE_PATTERNS[case]):
                        rep.case_failures.append({"case": case.value, "w": str(w), "diagram": d.text})
    return rep
