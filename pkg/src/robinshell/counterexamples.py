"""Limit-form comparisons showing that the symmetry hypotheses are needed.

Only the limiting spectra are computed: the thin-neck dumbbell is replaced by
the union of its limit pieces, and small holes by the hole-free domain.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .closed_form import (disk_neumann_spectrum, expand, rectangle_neumann_spectrum,
                          segment_dirichlet_spectrum)
from .radial_sl import DIRICHLET, ModeProblem, ShellGeometry, sl_eigenvalue
from .shell_spectrum import assemble_spectrum

TIE_TOL = 1e-9


@dataclass(frozen=True)
class ComparisonReport:
    label: str
    lhs_label: str
    lhs_value: float
    rhs_label: str
    rhs_value: float
    relation: str
    margin: float
    parameters: dict = field(default_factory=dict)


def compare(label, lhs_label, lhs, rhs_label, rhs, **parameters) -> ComparisonReport:
    diff = lhs - rhs
    if abs(diff) < TIE_TOL:
        relation = "tie"
    else:
        relation = ">" if diff > 0 else "<"
    return ComparisonReport(label, lhs_label, float(lhs), rhs_label, float(rhs), relation,
                            abs(diff), dict(parameters))


@dataclass(frozen=True)
class TaggedEigenvalue:
    value: float
    source: str      # "disk", "neck" or "holed_disk"
    mode: tuple


@dataclass(frozen=True)
class DumbbellSpectrum:
    entries: list
    precondition_holds: bool
    neck_ground: float
    competitor: float     # max{mu_2(B_1), tau_1(B_1 \ B_alpha)}

    @property
    def values(self) -> list[float]:
        return [e.value for e in self.entries]


def dumbbell_limit_spectrum(neck_half_length: float, alpha: float, count: int) -> DumbbellSpectrum:
    """Sorted union of the disk Neumann, neck Dirichlet and holed-disk spectra.

    The holed disk ``B_1 \\ B_alpha`` carries a Dirichlet condition on the hole.
    """
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    disk = [TaggedEigenvalue(e.value, "disk", e.mode)
            for e in disk_neumann_spectrum(1.0, count) for _ in range(e.multiplicity)][:count]
    neck = [TaggedEigenvalue(e.value, "neck", e.mode)
            for e in segment_dirichlet_spectrum(neck_half_length, count)]
    holed = [TaggedEigenvalue(e.tau, "holed_disk", (e.l, e.j))
             for e in assemble_spectrum(ShellGeometry(2, alpha, 1.0), DIRICHLET, count)]
    merged = sorted(disk + neck + holed, key=lambda e: (e.value, e.source))[:count]
    competitor = max(expand(disk_neumann_spectrum(1.0, 2))[1], holed[0].value)
    return DumbbellSpectrum(merged, neck[0].value > competitor, neck[0].value, competitor)


def inner_dirichlet_tau(alpha: float, beta: float, k: int) -> float:
    """``tau_k(B_beta \\ B_alpha)`` in the plane, Dirichlet inside, Neumann outside."""
    return assemble_spectrum(ShellGeometry(2, alpha, beta), DIRICHLET, k)[-1].tau


def verify_central_symmetry_counterexample(alpha_grid) -> list[ComparisonReport]:
    """Compare ``min{mu_2(B_1), tau_1(B_1 \\ B_a)}`` with ``tau_2(B_sqrt2 \\ B_a)``."""
    mu2 = expand(disk_neumann_spectrum(1.0, 2))[1]
    reports = []
    for a in alpha_grid:
        tau1 = sl_eigenvalue(ModeProblem(ShellGeometry(2, a, 1.0), 0, DIRICHLET), 1)
        tau2 = inner_dirichlet_tau(a, math.sqrt(2.0), 2)
        reports.append(compare("dumbbell limit vs equimeasurable annulus",
                               "min{mu_2(B_1), tau_1(B_1 minus B_alpha)}", min(mu2, tau1),
                               "tau_2(B_sqrt2 minus B_alpha)", tau2,
                               alpha=float(a), mu2_disk=mu2, tau1_holed_disk=tau1))
    return reports


def verify_order_symmetry_counterexamples() -> list[ComparisonReport]:
    """Unit-area rectangles and square against the unit-area disk (Neumann)."""
    r = 1 / math.sqrt(math.pi)
    disk = expand(disk_neumann_spectrum(r, 5))
    rect = [e.value for e in rectangle_neumann_spectrum(math.sqrt(3), 4)]
    square = [e.value for e in rectangle_neumann_spectrum(1.0, 5)]
    return [
        compare("rectangle a=sqrt3 vs disk, third eigenvalue", "mu_3(rectangle sqrt3)", rect[2],
                "mu_2(disk 1/sqrt(pi))", disk[1], a=math.sqrt(3)),
        compare("rectangle a=sqrt3 vs disk, fourth eigenvalue", "mu_4(rectangle sqrt3)", rect[3],
                "mu_4(disk 1/sqrt(pi))", disk[3], a=math.sqrt(3)),
        compare("square vs disk, fifth eigenvalue", "mu_5(square)", square[4],
                "mu_5(disk 1/sqrt(pi))", disk[4], a=1.0),
    ]
