"""Global spectrum of the shell assembled from the separated radial problems."""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import closed_form
from .errors import DomainError, ConvergenceError
from .radial_sl import ModeProblem, ShellGeometry, count_eigenvalues_below, sl_eigenvalue

MAX_ANGULAR_INDEX = 2000
TIE_TOL = 1e-10

METHODS = ("auto", "sl", "bessel")


@dataclass(frozen=True)
class SpectrumEntry:
    k: int
    tau: float
    l: int
    j: int
    multiplicity: int
    group_id: tuple[int, int]


@dataclass(frozen=True)
class Position:
    """Global indices ``first..last`` occupied by ``tau_{l,1}``, or why not known."""

    applicable: bool
    first: int | None = None
    last: int | None = None
    reason: str = ""

    @property
    def indices(self) -> range:
        return range(self.first, self.last + 1) if self.applicable else range(0)


@dataclass(frozen=True)
class RadialVerdict:
    verdict: str          # "radial", "nonradial" or "tie"
    margin: float         # tau_{1,1} - tau_{0,2}
    tau_02: float
    tau_11: float


def multiplicity_lambda(l: int, N: int) -> int:
    """Multiplicity of the spherical harmonics of degree ``l`` on ``S^(N-1)``."""
    if l < 0 or N < 2:
        raise DomainError("need l >= 0 and N >= 2")
    second = math.comb(l + N - 3, N - 1) if l + N - 3 >= N - 1 else 0
    return math.comb(l + N - 1, N - 1) - second


def mode_eigenvalues(geometry: ShellGeometry, h: float, l: int, count: int,
                     method: str = "auto") -> list[float]:
    """``tau_{l,1..count}``; ``bessel`` uses the cross-product above ``TAU_EPS``."""
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}")
    problem = ModeProblem(geometry, l, h)
    if method == "sl" or geometry.dimension != 2:
        if method == "bessel":
            raise DomainError("the Bessel route exists for N = 2 only")
        return [sl_eigenvalue(problem, j) for j in range(1, count + 1)]
    n_small = min(count, count_eigenvalues_below(problem, closed_form.TAU_EPS))
    small = [sl_eigenvalue(problem, j) for j in range(1, n_small + 1)]
    if n_small == count:
        return small
    return small + list(closed_form.crossproduct_roots(l, count - n_small, geometry, h))


def angular_lower_bound(tau_01: float, l: int, geometry: ShellGeometry) -> float:
    """``tau_{l,1} >= tau_{0,1} + l(l+N-2)/beta^2``."""
    return tau_01 + l * (l + geometry.dimension - 2) / geometry.beta ** 2


def assemble_spectrum(geometry: ShellGeometry, h: float, count: int,
                      method: str = "auto") -> list[SpectrumEntry]:
    """First ``count`` eigenvalues of the shell, with multiplicity and origin."""
    if count < 1:
        raise DomainError("count must be positive")
    N = geometry.dimension
    candidates = [(tau, 0, j) for j, tau in enumerate(mode_eigenvalues(geometry, h, 0, count, method), 1)]
    tau_01 = candidates[0][0]

    def cutoff():
        expanded = sorted(t for t, l, _ in candidates for _ in range(multiplicity_lambda(l, N)))
        return expanded[count - 1]

    l = 1
    while angular_lower_bound(tau_01, l, geometry) <= cutoff():
        if l > MAX_ANGULAR_INDEX:
            raise ConvergenceError(f"spectrum assembly needs l > {MAX_ANGULAR_INDEX}")
        j = 1
        while True:
            tau = mode_eigenvalues(geometry, h, l, j, method)[-1]
            if tau > cutoff():
                break
            candidates.append((tau, l, j))
            j += 1
        l += 1

    candidates.sort(key=lambda c: (c[0], c[1], c[2]))
    # near-equal values from different groups are ordered by ascending l
    ordered = _order_ties(candidates)
    entries = []
    for tau, l, j in ordered:
        lam = multiplicity_lambda(l, N)
        for _ in range(lam):
            if len(entries) == count:
                return entries
            entries.append(SpectrumEntry(len(entries) + 1, tau, l, j, lam, (l, j)))
    return entries


def _order_ties(candidates):
    out = []
    i = 0
    while i < len(candidates):
        block = [candidates[i]]
        while i + len(block) < len(candidates) and \
                candidates[i + len(block)][0] - block[0][0] < TIE_TOL * max(1.0, abs(block[0][0])):
            block.append(candidates[i + len(block)])
        out.extend(sorted(block, key=lambda c: (c[1], c[2])))
        i += len(block)
    return out


def ordering_chain_holds(geometry: ShellGeometry, h: float, l: int) -> bool:
    """``tau_{0,1} < tau_{1,1} < ... < tau_{l,1} < tau_{0,2}``."""
    chain = [sl_eigenvalue(ModeProblem(geometry, m, h), 1) for m in range(l + 1)]
    chain.append(sl_eigenvalue(ModeProblem(geometry, 0, h), 2))
    return all(a < b for a, b in zip(chain, chain[1:]))


def position_of_first_angular(geometry: ShellGeometry, h: float, l: int) -> Position:
    """Where ``tau_{l,1}`` sits in the shell spectrum when the ordering chain holds."""
    if l < 1:
        raise DomainError("l must be positive")
    if not ordering_chain_holds(geometry, h, l):
        return Position(False, reason=f"ordering chain up to tau_{{{l},1}} < tau_{{0,2}} fails")
    N = geometry.dimension
    first = 2 + sum(multiplicity_lambda(m, N) for m in range(1, l))
    return Position(True, first, first + multiplicity_lambda(l, N) - 1)


def second_eigenfunction_is_radial(geometry: ShellGeometry, h: float) -> RadialVerdict:
    """Radial iff ``tau_{0,2} < tau_{1,1}``."""
    tau_02 = sl_eigenvalue(ModeProblem(geometry, 0, h), 2)
    tau_11 = sl_eigenvalue(ModeProblem(geometry, 1, h), 1)
    margin = tau_11 - tau_02
    if abs(margin) < TIE_TOL:
        verdict = "tie"
    else:
        verdict = "radial" if margin > 0 else "nonradial"
    return RadialVerdict(verdict, margin, tau_02, tau_11)
