"""
Suite orchestration: dispatch per-element and per-facet checks to a worker
pool and merge their records into one deterministic report.
"""

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

from .. import __version__
from ..loaders.mesh_loader import load_mesh
from ..models.polytope import MeshComplex
from ..models.reports import CheckRecord, SuiteReport
from ..utils.config_manager import DEFAULT_SETTINGS
from ..utils.errors import DomainError
from ..utils.logger import get_logger
from ..utils.progress_tracker import ProgressTracker
from .checks import (SuiteSettings, count_checks, element_boundary_checks, facet_conformity_checks,
                     identity_checks, repro_checks)

logger = get_logger("suite")

SUITES = ("identities", "repro", "conformity", "count")
SUITE_CHOICES = SUITES + ("all",)

CheckFunction = Callable[[MeshComplex, int, SuiteSettings], List[CheckRecord]]
Task = Tuple[str, CheckFunction, int]


def suite_tasks(mesh: MeshComplex, suite: str) -> List[Task]:
    """Ordered (label, check, id) tasks of a suite."""
    if suite not in SUITE_CHOICES:
        raise DomainError(f"Unknown suite '{suite}', expected one of {', '.join(SUITE_CHOICES)}")
    selected = SUITES if suite == "all" else (suite,)
    element_ids = range(len(mesh.elements))
    tasks: List[Task] = []
    for name in selected:
        if name == "identities":
            tasks.extend((f"identities element {e}", identity_checks, e) for e in element_ids)
        elif name == "repro":
            tasks.extend((f"repro element {e}", repro_checks, e) for e in element_ids)
        elif name == "conformity":
            tasks.extend((f"boundary element {e}", element_boundary_checks, e) for e in element_ids)
            tasks.extend((f"conformity facet {f.facet_id}", facet_conformity_checks, f.facet_id)
                         for f in mesh.interior_facets)
        else:
            tasks.extend((f"count element {e}", count_checks, e) for e in element_ids)
    return tasks


def run_checks(mesh: MeshComplex, suite: str, settings: SuiteSettings, mesh_digest: str = "") -> SuiteReport:
    """Run every task of a suite on a built mesh; records merge in submission order."""
    tasks = suite_tasks(mesh, suite)
    tracker = ProgressTracker()
    tracker.start_tracking(suite, len(tasks))

    def run(task: Task) -> List[CheckRecord]:
        label, check, ident = task
        records = check(mesh, ident, settings)
        tracker.record_task(label, sum(not r.passed for r in records))
        return records

    with ThreadPoolExecutor(max_workers=max(1, settings.workers)) as executor:
        results = list(executor.map(run, tasks))
    tracker.stop_tracking()

    header = dict(settings.to_dict(), suite=suite)
    return SuiteReport(__version__, mesh_digest, header, [r for records in results for r in records])


def run_suite(source: str, suite: str = "all", tol: float = 1e-8, seed: int = 42,
              settings: Optional[Dict[str, Any]] = None) -> SuiteReport:
    """
    Load a mesh (path or 'corpus:<name>') and run a suite on it.

    Raises:
        MeshParseError, PolytopeValidationError and the other mesh errors
        from loading; OSError when the file cannot be read
    """
    effective = dict(DEFAULT_SETTINGS)
    effective.update(settings or {})
    effective.update(tolerance=tol, seed=seed)
    document, mesh = load_mesh(source, effective['geometric_tolerance'])
    report = run_checks(mesh, suite, SuiteSettings.from_dict(effective), document.digest)
    logger.info(f"Suite '{suite}' on {source}: {len(report.records)} checks, "
                f"{len(report.failures())} failed")
    return report


def to_json(data: Any) -> str:
    """Canonical JSON text used for every report."""
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def to_csv(rows: Iterable[Dict[str, Any]], columns: List[str]) -> str:
    """CSV text with a header row; missing fields are left empty."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, extrasaction='ignore', lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def format_report(report: SuiteReport, fmt: str = "json") -> str:
    """Suite report as JSON, or its records as CSV."""
    if fmt == "csv":
        return to_csv((r.to_dict() for r in report.sorted_records()),
                      ['check_id', 'target', 'residual', 'tolerance', 'pass', 'detail'])
    return to_json(report.to_dict())
