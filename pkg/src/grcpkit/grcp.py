"""Search for t-synchronizing colorings of periodic d-out digraphs.

A coloring is t-synchronizing when its semigroup kernel is a right group of
rank ``t = period(G)`` whose maximal groups are cyclic of order ``t``; every
kernel word then sends ``V`` onto one vertex per periodic class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .digraph import Digraph, Partition, is_strongly_connected, period, periodic_partition
from .exceptions import NotFound, NotStronglyConnected, SearchSpaceExceeded
from .semigroup import (
    DEFAULT_MAX_SEMIGROUP,
    Coloring,
    cross_section_check,
    enumerate_colorings,
    generate,
    is_right_group,
    maximal_group,
    quotient_graph,
    stability_classes,
)

DEFAULT_MAX_COLORINGS = 100_000


@dataclass(frozen=True)
class ColoringCheck:
    """Kernel summary of one coloring, measured against the periodic partition."""

    coloring: Coloring
    t: int
    periodic_partition: Partition
    semigroup_size: int
    kernel_rank: int
    kernel_size: int
    kernel_is_right_group: bool
    group_order: int
    group_is_cyclic: bool
    partition_matches_periodic: bool | None
    ranges_are_cross_sections: bool | None
    sync_word: tuple[int, ...]

    @property
    def t_synchronizing(self) -> bool:
        return bool(
            self.kernel_is_right_group
            and self.kernel_rank == self.t
            and self.group_is_cyclic
            and self.group_order == self.t
            and self.partition_matches_periodic
            and self.ranges_are_cross_sections
        )


def check_coloring(c: Coloring, max_semigroup: int = DEFAULT_MAX_SEMIGROUP) -> ColoringCheck:
    g = c.graph
    if not is_strongly_connected(g):
        raise NotStronglyConnected("graph is not strongly connected")
    t = period(g)
    pp = periodic_partition(g)
    s = generate(c, max_size=max_semigroup)
    k = s.kernel
    right = is_right_group(k)
    e = k.shortest_element()
    grp = maximal_group(k, e, e)
    matches = cross = None
    if right and k.rank == t:
        matches = k.partitions[0].same_blocks(pp)
        cross = all(cross_section_check(b, pp) for b in k.ranges)
    return ColoringCheck(
        coloring=c,
        t=t,
        periodic_partition=pp,
        semigroup_size=len(s),
        kernel_rank=k.rank,
        kernel_size=len(k),
        kernel_is_right_group=right,
        group_order=grp.order,
        group_is_cyclic=grp.is_cyclic,
        partition_matches_periodic=matches,
        ranges_are_cross_sections=cross,
        sync_word=s.word(e),
    )


@dataclass(frozen=True)
class GrcpReport:
    graph: Digraph
    t: int
    found: bool
    colorings_examined: int
    coloring: Coloring | None = None
    kernel_rank: int | None = None
    kernel_is_right_group: bool | None = None
    group_order: int | None = None
    group_is_cyclic: bool | None = None
    sync_word: tuple[int, ...] | None = None
    periodic_partition: Partition | None = None
    evidence: dict[str, Any] = field(default_factory=dict)

    @property
    def falsified(self) -> bool:
        return not self.found

    def to_dict(self) -> dict[str, Any]:
        g = self.graph
        out: dict[str, Any] = {
            "graph": {"n": g.n, "d": g.degree, "edges": sum(map(sum, g.adj))},
            "t": self.t,
            "found": self.found,
            "colorings_examined": self.colorings_examined,
            "periodic_partition": self.periodic_partition.as_lists(one_based=True)
            if self.periodic_partition
            else None,
        }
        if self.found:
            c = self.coloring
            sync_map = c.word_map(self.sync_word)
            out.update(
                coloring=[[x + 1 for x in m] for m in c.maps],
                kernel_rank=self.kernel_rank,
                kernel_is_right_group=self.kernel_is_right_group,
                group_order=self.group_order,
                group_is_cyclic=self.group_is_cyclic,
                sync_word=[x + 1 for x in self.sync_word],
                sync_image=sorted(x + 1 for x in sync_map.range),
            )
        else:
            out["evidence"] = self.evidence
        return out


def _report_from_check(g: Digraph, chk: ColoringCheck, examined: int) -> GrcpReport:
    return GrcpReport(
        graph=g,
        t=chk.t,
        found=True,
        colorings_examined=examined,
        coloring=chk.coloring,
        kernel_rank=chk.kernel_rank,
        kernel_is_right_group=chk.kernel_is_right_group,
        group_order=chk.group_order,
        group_is_cyclic=chk.group_is_cyclic,
        sync_word=chk.sync_word,
        periodic_partition=chk.periodic_partition,
    )


def find_t_synchronizing_coloring(
    g: Digraph,
    max_colorings: int = DEFAULT_MAX_COLORINGS,
    max_semigroup: int = DEFAULT_MAX_SEMIGROUP,
) -> GrcpReport:
    """First t-synchronizing coloring in canonical enumeration order.

    An exhausted search returns ``found=False`` together with the evidence
    gathered; that outcome contradicts the generalized road coloring theorem
    and so points to a bug or a violated precondition.
    """
    g.degree  # raises NotRegular
    t = period(g)
    pp = periodic_partition(g)
    examined = 0
    min_rank = None
    rank_histogram: dict[int, int] = {}
    right_groups = 0
    for c in enumerate_colorings(g):
        if examined >= max_colorings:
            raise SearchSpaceExceeded(f"more than {max_colorings} colorings needed", max_colorings)
        examined += 1
        chk = check_coloring(c, max_semigroup=max_semigroup)
        if chk.t_synchronizing:
            return _report_from_check(g, chk, examined)
        rank_histogram[chk.kernel_rank] = rank_histogram.get(chk.kernel_rank, 0) + 1
        right_groups += chk.kernel_is_right_group
        min_rank = chk.kernel_rank if min_rank is None else min(min_rank, chk.kernel_rank)
    evidence = {
        "adjacency": [list(r) for r in g.adj],
        "period": t,
        "min_kernel_rank": min_rank,
        "kernel_rank_histogram": {str(r): n for r, n in sorted(rank_histogram.items())},
        "right_group_kernels": right_groups,
    }
    return GrcpReport(g, t, False, examined, periodic_partition=pp, evidence=evidence)


def synchronizing_word(report: GrcpReport) -> tuple[int, ...]:
    """Color word (0-based colors) whose map has rank ``t``."""
    if not report.found:
        raise NotFound("no t-synchronizing coloring in this report")
    return report.sync_word


@dataclass(frozen=True)
class QuotientHint:
    stability: Partition
    graph: Digraph
    coloring: Coloring
    report: GrcpReport


def quotient_recursion_hint(
    g: Digraph,
    c: Coloring,
    max_colorings: int = DEFAULT_MAX_COLORINGS,
    max_semigroup: int = DEFAULT_MAX_SEMIGROUP,
) -> QuotientHint:
    """Collapse the stability classes of ``c`` and search the smaller graph.

    The quotient result is informational: it is not lifted back to ``g``.
    """
    stab = stability_classes(generate(c, max_size=max_semigroup))
    qg, qc = quotient_graph(g, c, stab)
    rep = find_t_synchronizing_coloring(qg, max_colorings=max_colorings, max_semigroup=max_semigroup)
    return QuotientHint(stab, qg, qc, rep)
