"""Per-graph analysis shared by the corpus commands."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence

from .coloring import solve, verify_coloring
from .corpus import CorpusEntry, embedded, generate_family, hand_built, load_file
from .discharging import apply_builtin_rules, case_analysis_check, negative_elements
from .embedding import NotPlanar
from .family import is_in_family
from .graph import GraphError, is_connected
from .lemmas import minimal_counterexample_candidate, scan_all

log = logging.getLogger(__name__)

PROVEN_DEFECTS = ((0, 6), (3, 3), (2, 4))
SWEEP_DEFECTS = ((0, 6), (1, 5), (2, 4), (3, 3))


def covered_by_known_result(d: Sequence[int]) -> bool:
    """True when every family member is known to have a ``d``-colouring."""
    return len(d) == 2 and any(d[0] >= a and d[1] >= b for a, b in PROVEN_DEFECTS)


def load_corpus(paths: Iterable[str]) -> tuple[list[CorpusEntry], list[dict]]:
    entries: list[CorpusEntry] = []
    errors: list[dict] = []
    for path in paths:
        try:
            entries += load_file(path)
        except (OSError, ValueError) as exc:
            log.error("%s: %s", path, exc)
            errors.append({"file": str(path), "error": str(exc)})
    return entries, errors


def generated_corpus(max_n: int) -> list[CorpusEntry]:
    return [CorpusEntry(f"gen-n{g.n}-{i}", g) for i, g in enumerate(generate_family(max_n))]


def builtin_corpus() -> list[CorpusEntry]:
    return [CorpusEntry(name, g) for name, g in hand_built()]


def analyze(entry: CorpusEntry, d: Sequence[int]) -> dict:
    g = entry.abstract
    record: dict = {"graph": entry.name, "n": g.n, "m": g.m, "connected": is_connected(g)}
    verdict = is_in_family(g)
    record["family"] = verdict.to_json()
    member = verdict.member and record["connected"]
    record["member"] = member
    if not member:
        return record

    coloring = solve(g, d)
    solver = {"satisfiable": coloring is not None}
    if coloring is not None:
        solver["valid"] = not verify_coloring(g, coloring, d)
        solver["coloring"] = list(coloring)
    record["solver"] = solver
    if coloring is None and covered_by_known_result(d):
        record["flag"] = "THEOREM-VIOLATION"

    try:
        eg = embedded(entry)
    except (GraphError, NotPlanar) as exc:
        record["embedding_error"] = str(exc)
        return record
    reports = scan_all(eg)
    record["lemmas"] = {
        "violated": [r.lemma for r in reports if not r.holds],
        "counterexample_candidate": minimal_counterexample_candidate(reports),
    }
    result = apply_builtin_rules(eg)
    cases = case_analysis_check(eg, result.final)
    record["discharge"] = {
        "initial": str(result.initial.total()),
        "final": str(result.final.total()),
        "negative": len(negative_elements(result.final)),
        "applicable": sum(c.applicable for c in cases),
        "unsound": sum(not c.sound for c in cases),
    }
    return record


def _analyze_star(args: tuple[CorpusEntry, tuple[int, ...]]) -> dict:
    return analyze(*args)


def run_parallel(fn: Callable, items: list, jobs: int) -> list:
    """Map ``fn`` over ``items`` keeping input order."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=8))


def corpus_run(entries: list[CorpusEntry], d: Sequence[int], jobs: int = 1) -> list[dict]:
    d = tuple(d)
    return run_parallel(_analyze_star, [(e, d) for e in entries], jobs)


def _sweep_one(entry: CorpusEntry) -> list[bool] | None:
    g = entry.abstract
    if not (is_connected(g) and is_in_family(g)):
        return None
    return [solve(g, d) is not None for d in SWEEP_DEFECTS]


def conjecture_sweep(entries: list[CorpusEntry], jobs: int = 1) -> list[dict]:
    results = [r for r in run_parallel(_sweep_one, entries, jobs) if r is not None]
    rows = []
    for i, d in enumerate(SWEEP_DEFECTS):
        sat = sum(r[i] for r in results)
        proven = covered_by_known_result(d)
        rows.append(
            {
                "d1": d[0],
                "d2": d[1],
                "members": len(results),
                "satisfiable": sat,
                "unsatisfiable": len(results) - sat,
                "proven": proven,
                "status": ("ok" if sat == len(results) else "VIOLATION") if proven else "open",
            }
        )
    return rows
