"""Plain-text findings and JSON reports for the CLI commands."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Union

from .. import __version__
from ..config.schema import AppConfig
from ..core.circle import Crossing, CrossingCensus, CrossingViolation, TypedArc, WalkReport
from ..core.coloring import ColoringCertificate, InfeasibleUpTo
from ..core.distance import ConflictWitness
from ..core.plane import Tiling, Vertex
from ..core.triangles import NotFound, TriangleCheck
from ..core.utils import ensure_directory, natural_key, sanitize_filename

LOGGER = logging.getLogger(__name__)

__all__ = [
    "Report",
    "ReportWriter",
    "verify_report",
    "vertex_report",
    "triangles_report",
    "chromatic_report",
]


@dataclass
class Report:
    """Findings of one command: grepable ``key=value`` lines plus a summary."""

    command: str
    inputs: Dict[str, Any]
    lines: list[str] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    violations: int = 0

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def text(self) -> str:
        return "\n".join(self.lines) + "\n" if self.lines else ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "version": __version__,
            "command": self.command,
            "inputs": self.inputs,
            "summary": self.summary,
            "violations": self.violations,
            "findings": list(self.lines),
        }


class ReportWriter:
    """Write JSON reports under the configured reports root."""

    def __init__(self, config: AppConfig) -> None:
        self.reports_root = config.reports_dir
        ensure_directory(self.reports_root)

    def write(self, report: Report, now: Optional[datetime] = None) -> Path:
        moment = now or datetime.now(timezone.utc)
        stamp = moment.strftime("%Y%m%dT%H%M%SZ")
        source = sanitize_filename(Path(str(report.inputs.get("file", "input"))).stem)
        path = self.reports_root / f"{report.command}-{source}-{stamp}.json"
        payload = report.to_dict()
        payload["generated_at"] = moment.isoformat()
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        LOGGER.info("Report written to %s", path)
        return path


def _color_line(tiling: Tiling) -> str:
    return ",".join(str(c) for c in sorted(tiling.colors()))


def verify_report(
    tiling: Tiling, witnesses: Sequence[ConflictWitness], inputs: Dict[str, Any]
) -> Report:
    report = Report("verify", inputs)
    report.lines.extend(w.describe() for w in witnesses)
    colors = len(tiling.colors())
    result = "ok" if not witnesses else "conflicts"
    report.lines.append(
        f"verify result={result} conflicts={len(witnesses)} colors={colors} "
        f"regions={len(tiling.regions)} palette={_color_line(tiling)}"
    )
    report.summary = {"conflicts": len(witnesses), "colors": colors, "regions": len(tiling.regions)}
    report.violations = len(witnesses)
    return report


def vertex_report(
    tiling: Tiling,
    vertex: Vertex,
    key: str,
    crossings: Sequence[Crossing],
    inputs: Dict[str, Any],
    arcs: Optional[Sequence[TypedArc]] = None,
    typed_arcs: Optional[Sequence[TypedArc]] = None,
    walk: Optional[WalkReport] = None,
    violations: Optional[Sequence[CrossingViolation]] = None,
    census: Optional[CrossingCensus] = None,
) -> Report:
    report = Report("vertex", inputs)
    colors = ",".join(str(c) for c in sorted(vertex.colors()))
    report.lines.append(f"vertex id={key} degree={vertex.degree} colors={colors}")
    report.lines.extend(c.describe(i) for i, c in enumerate(crossings))
    real = sum(1 for c in crossings if c.kind.value == "crossing")
    summary: Dict[str, Any] = {
        "degree": vertex.degree,
        "crossings": real,
        "pseudo_crossings": len(crossings) - real,
    }
    tail = f"vertex degree={vertex.degree} crossings={real} pseudo={len(crossings) - real}"
    if typed_arcs is not None:
        report.lines.extend(arc.describe() for arc in typed_arcs)
        summary["typed_arcs"] = len(typed_arcs)
    if arcs is not None:
        if typed_arcs is None:
            report.lines.extend(arc.describe() for arc in arcs)
        summary["alternative_arcs"] = len(arcs)
        tail += f" alternative_arcs={len(arcs)}"
    if walk is not None:
        report.lines.extend(walk.lines())
        summary["walk_findings"] = walk.has_findings
    if violations is not None:
        report.lines.extend(v.describe() for v in violations)
        report.violations = len(violations)
        summary["violations"] = len(violations)
        tail += f" violations={len(violations)}"
    if census is not None:
        report.lines.append(census.describe())
        summary["local_bound"] = census.lower_bound
    report.lines.append(tail)
    report.summary = summary
    return report


def triangles_report(
    check: TriangleCheck, found: Union[str, NotFound, None], degree: int, inputs: Dict[str, Any]
) -> Report:
    report = Report("triangles", inputs)
    report.lines.extend(f"triangle-check reason={reason!r}" for reason in check.reasons)
    if isinstance(found, NotFound):
        report.lines.append(found.describe())
        report.summary = {"found": False, "searched": found.searched}
    elif found is not None:
        report.lines.append(f"degree-search result=found vertex={found} degree={degree}")
        report.summary = {"found": True, "vertex": found, "degree": degree}
    report.violations = len(check.reasons)
    return report


def chromatic_report(
    result: Union[ColoringCertificate, InfeasibleUpTo], nodes: Sequence[str], inputs: Dict[str, Any]
) -> Report:
    report = Report("chromatic", inputs)
    if isinstance(result, ColoringCertificate):
        for node in sorted(nodes, key=natural_key):
            report.lines.append(f"assign region={node} color={result.assignment[node]}")
        report.lines.append(result.describe())
        report.summary = {"k": result.k, "nodes_explored": result.nodes_explored}
    else:
        report.lines.append(result.describe())
        report.summary = {"k": None, "kmax": result.kmax, "nodes_explored": result.nodes_explored}
        report.violations = 1
    return report
