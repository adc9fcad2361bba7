"""Figure and CSV rendering for CLI reports."""

from __future__ import annotations

import csv
from pathlib import Path

from .graphs import EdgeColouredBipartiteGraph
from .homogeneity import SweepReport


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def render_graph_figure(graph: EdgeColouredBipartiteGraph, path: str) -> None:
    """Draw the two vertex columns with edges coloured per colour label."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    ly = {v: i for i, v in enumerate(graph.left)}
    ry = {v: i for i, v in enumerate(graph.right)}
    palette = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    colour_ix = {c: k for k, c in enumerate(graph.occurring_colours())}
    seen = set()
    for l in graph.left:
        for r in graph.right:
            c = graph.colour_of[(l, r)]
            colour = palette[colour_ix[c] % len(palette)]
            label = str(c) if c not in seen else None
            seen.add(c)
            ax.plot([0, 1], [ly[l], ry[r]], color=colour, label=label, linewidth=1.4)
    ax.scatter([0] * len(graph.left), [ly[v] for v in graph.left],
               s=60, zorder=3, color="black")
    ax.scatter([1] * len(graph.right), [ry[v] for v in graph.right],
               s=60, zorder=3, color="black")
    for v, y in ly.items():
        ax.annotate(str(v), (0, y), textcoords="offset points", xytext=(-14, 0))
    for v, y in ry.items():
        ax.annotate(str(v), (1, y), textcoords="offset points", xytext=(8, 0))
    ax.set_xlim(-0.3, 1.3)
    ax.axis("off")
    if seen:
        ax.legend(loc="upper center", ncol=min(len(seen), 4), fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_graph_csv(graph: EdgeColouredBipartiteGraph, path: str) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["left", "right", "colour"])
        for l in graph.left:
            for r in graph.right:
                writer.writerow([l, r, graph.colour_of[(l, r)]])


def write_sweep_csv(report: SweepReport, path: str) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["group", "cols", "rows", "inner_matrix", "brute",
                         "classifier", "case", "decomposition", "agree"])
        for row in report.rows:
            writer.writerow([row.group_name, row.n_cols, row.n_rows,
                             " ".join(map(str, row.inner_matrix)),
                             row.brute, row.classifier,
                             row.case if row.case is not None else "",
                             row.decomposition, row.agree])


def render_sweep_figure(report: SweepReport, path: str) -> None:
    """Per-group instance counts, split into homogeneous / not, with
    disagreements flagged in the title."""
    plt = _pyplot()
    groups: dict[str, list[int]] = {}
    for row in report.rows:
        hom, total = groups.setdefault(row.group_name, [0, 0])
        groups[row.group_name] = [hom + (1 if row.brute else 0), total + 1]
    names = list(groups)
    hom_counts = [groups[n][0] for n in names]
    other_counts = [groups[n][1] - groups[n][0] for n in names]
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = range(len(names))
    ax.bar(xs, hom_counts, label="homogeneous", color="#2a9d8f")
    ax.bar(xs, other_counts, bottom=hom_counts, label="not homogeneous",
           color="#e76f51")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(names)
    ax.set_ylabel("instances")
    n_bad = len(report.disagreements)
    ax.set_title(f"sweep: {len(report.rows)} instances, "
                 f"{n_bad} disagreement{'s' if n_bad != 1 else ''}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def ensure_dir(path: str) -> Path:
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p
