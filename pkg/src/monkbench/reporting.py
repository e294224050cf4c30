"""Report serialization: JSON, delimited per-case records, summary figure.

The JSON report is the full structured result; the CSV holds one row per
case for spreadsheet/awk consumption; the figure is a per-suite pass/fail
bar chart rendered to an image file next to the delimited output.
"""
from __future__ import annotations

import csv
import json
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .harness import Report


def _flat_suites(report: Report) -> list[Report]:
    return report.sub_reports if report.sub_reports else [report]


def write_json(report: Report, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(report.to_json(), fh, indent=2)
        fh.write("\n")


def write_csv(report: Report, path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["suite", "index", "seed", "digest", "checks", "failed_checks", "pass"])
        for sub in _flat_suites(report):
            for case in sub.cases:
                failed = sum(1 for _, ok in case.checks if not ok)
                writer.writerow([
                    sub.suite, case.index, case.seed, case.digest,
                    len(case.checks), failed, int(case.passed),
                ])


def write_figure(report: Report, path: str) -> None:
    """Stacked pass/fail case counts per suite."""
    subs = _flat_suites(report)
    names = [s.suite for s in subs]
    passed = [sum(1 for c in s.cases if c.passed) for s in subs]
    failed = [sum(1 for c in s.cases if not c.passed) for s in subs]
    fig, ax = plt.subplots(figsize=(max(6, 1.2 * len(names)), 4))
    xs = range(len(names))
    ax.bar(xs, passed, color="#2a7e43", label="pass")
    ax.bar(xs, failed, bottom=passed, color="#b8352c", label="fail")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(names, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("cases")
    ax.set_title(f"verification report (seed {report.seed})")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(report: Report, out_dir: str, stem: str = "report") -> dict[str, str]:
    """Render all three artifacts into a directory; returns their paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = {
        "json": os.path.join(out_dir, f"{stem}.json"),
        "csv": os.path.join(out_dir, f"{stem}.csv"),
        "figure": os.path.join(out_dir, f"{stem}.png"),
    }
    write_json(report, paths["json"])
    write_csv(report, paths["csv"])
    write_figure(report, paths["figure"])
    return paths
