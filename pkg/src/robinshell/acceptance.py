"""Acceptance criteria, runnable from the CLI (``robinshell verify``) and pytest.

Each criterion returns a :class:`CriterionResult`; reports contain no timing
values so that repeated runs print identical text.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import _ode
from .closed_form import (crossproduct_root, disk_neumann_spectrum, expand,
                          rectangle_neumann_spectrum)
from .counterexamples import (verify_central_symmetry_counterexample,
                              verify_order_symmetry_counterexamples)
from .radial_sl import (DECREASING, DIP, DIRICHLET, ModeProblem, ShellGeometry,
                        classify_profile, sl_eigenvalue, tau_h_derivative)
from .shell_spectrum import (assemble_spectrum, mode_eigenvalues, multiplicity_lambda,
                             second_eigenfunction_is_radial)
from .thresholds import find_h0, find_h1
from .trial_bounds import (ConcentricShell, EccentricShell, StarShell, check_long_inequality,
                           extend_profile, symmetry_identity_check, weinberger_quotient)

WIDE_SHELL = ShellGeometry(2, 1.0, 15.0)
REF_H = -0.8
REF_TAU_11 = 0.0126485
REF_TAU_02 = 0.0100829


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    budget: float
    elapsed: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] C{self.number:02d} {self.title}: {self.detail}"


def _fmt(x) -> str:
    return f"{x:.6g}"


def criterion_01():
    p11 = ModeProblem(WIDE_SHELL, 1, REF_H)
    p0 = ModeProblem(WIDE_SHELL, 0, REF_H)
    sl11, sl02 = sl_eigenvalue(p11, 1), sl_eigenvalue(p0, 2)
    b11 = crossproduct_root(1, 1, WIDE_SHELL, REF_H)
    b02 = crossproduct_root(0, 1, WIDE_SHELL, REF_H)
    ok = all(abs(x - REF_TAU_11) <= 1e-5 for x in (sl11, b11))
    ok &= all(abs(x - REF_TAU_02) <= 1e-5 for x in (sl02, b02))
    agree = max(abs(sl11 - b11) / b11, abs(sl02 - b02) / b02)
    ok &= agree <= 1e-8
    return ok, (f"tau_11 sl={_fmt(sl11)} bessel={_fmt(b11)}; tau_02 sl={_fmt(sl02)} "
                f"bessel={_fmt(b02)}; rel. agreement {agree:.1e}")


def criterion_02():
    v = {name: second_eigenfunction_is_radial(WIDE_SHELL, h).verdict
         for name, h in (("h=-0.8", REF_H), ("h=0", 0.0), ("h=inf", DIRICHLET))}
    ok = v == {"h=-0.8": "radial", "h=0": "nonradial", "h=inf": "nonradial"}
    return ok, ", ".join(f"{k}: {s}" for k, s in v.items())


def figure1_sweep(points: int = 200):
    hs = np.linspace(-1.01, 0.5, points)
    tau02 = np.array([sl_eigenvalue(ModeProblem(WIDE_SHELL, 0, h), 2) for h in hs])
    tau11 = np.array([sl_eigenvalue(ModeProblem(WIDE_SHELL, 1, h), 1) for h in hs])
    return hs, tau02, tau11


def criterion_03():
    hs, tau02, tau11 = figure1_sweep()
    increasing = bool(np.all(np.diff(tau02) > 0) and np.all(np.diff(tau11) > 0))
    diff = tau02 - tau11
    idx = np.flatnonzero(np.sign(diff[1:]) != np.sign(diff[:-1]))
    where = [(float(hs[i]), float(hs[i + 1])) for i in idx]
    ok = increasing and len(where) == 1 and -0.8 < where[0][0] and where[0][1] < 0
    locs = "; ".join(f"({_fmt(a)}, {_fmt(b)})" for a, b in where)
    return ok, f"curves increasing: {increasing}; {len(where)} sign change(s) in {locs}"


def criterion_04():
    disk1 = expand(disk_neumann_spectrum(1.0, 2))
    diskp = expand(disk_neumann_spectrum(1 / math.sqrt(math.pi), 4))
    rect = [e.value for e in rectangle_neumann_spectrum(math.sqrt(3), 4)]
    square = [e.value for e in rectangle_neumann_spectrum(1.0, 5)]
    pi2 = math.pi ** 2
    ok = abs(disk1[1] - 3.38997) <= 1e-4
    ok &= abs(diskp[1] - 10.6499) <= 1e-3 and abs(diskp[3] - 29.3059) <= 1e-3
    ok &= math.isclose(rect[2], 4 * pi2 / 3, rel_tol=1e-14)
    ok &= math.isclose(rect[3], 3 * pi2, rel_tol=1e-14)
    ok &= math.isclose(square[4], 4 * pi2, rel_tol=1e-14)
    return ok, (f"mu2(B1)={_fmt(disk1[1])}, mu2(Bp)={_fmt(diskp[1])}, mu4(Bp)={_fmt(diskp[3])}, "
                f"mu3(R)={_fmt(rect[2])}, mu4(R)={_fmt(rect[3])}, mu5(Q)={_fmt(square[4])}")


def criterion_05():
    reports = verify_central_symmetry_counterexample([0.2, 0.3, 0.4, 0.5, 0.6])
    ok = all(r.relation == ">" and r.margin > 0 for r in reports)
    return ok, "margins " + ", ".join(f"a={r.parameters['alpha']}: {_fmt(r.margin)}" for r in reports)


REF_DIFFERENCES = (13.1594 - 10.6499, 29.6088 - 29.3059, 39.4784 - 29.3059)


def criterion_06():
    reports = verify_order_symmetry_counterexamples()
    ok = all(r.relation == ">" for r in reports)
    ok &= all(abs(r.margin - d) <= 1e-3 for r, d in zip(reports, REF_DIFFERENCES))
    return ok, "margins " + ", ".join(_fmt(r.margin) for r in reports)


def criterion_07():
    worst = 0.0
    for N in (2, 3):
        g = ShellGeometry(N, 0.5, 1.0)
        for l in (0, 1, 2):
            for h in (-0.8, 0.5):
                p = ModeProblem(g, l, h)
                exact = tau_h_derivative(p, 1)
                d = 1e-5
                fd = (sl_eigenvalue(p.with_h(h + d), 1) - sl_eigenvalue(p.with_h(h - d), 1)) / (2 * d)
                worst = max(worst, abs(exact - fd) / abs(exact))
    return worst <= 1e-4, f"12 problems, worst relative deviation {worst:.2e}"


ORDERING_GEOMETRIES = (WIDE_SHELL, ShellGeometry(2, 0.5, 1.0), ShellGeometry(3, 0.5, 1.0),
                       ShellGeometry(3, 0.1, 2.0))


def criterion_08():
    failures = []
    for g in ORDERING_GEOMETRIES:
        for h in (-10.0, -0.8, 0.0, 1.0, DIRICHLET):
            if sl_eigenvalue(ModeProblem(g, 0, h), 2) <= 0:
                failures.append(f"tau_02<=0 {g} h={h}")
            t01 = sl_eigenvalue(ModeProblem(g, 0, h), 1)
            if h == 0.0:
                if abs(t01) > 1e-10:
                    failures.append(f"tau_01(0)={t01}")
            elif np.sign(t01) != np.sign(h):
                failures.append(f"sign tau_01 {g} h={h}")
            table = [[sl_eigenvalue(ModeProblem(g, l, h), j) for j in (1, 2, 3)] for l in (0, 1, 2)]
            for l in range(3):
                if not table[l][0] < table[l][1] < table[l][2]:
                    failures.append(f"row {l} {g} h={h}")
            for j in range(2):
                if not table[0][j] < table[1][j] < table[2][j]:
                    failures.append(f"column {j + 1} {g} h={h}")
    return not failures, "all ordering and sign checks hold" if not failures else "; ".join(failures)


BOUND_H = (-2.0, -0.8, 0.0, 0.5, DIRICHLET)
BOUND_L = (0, 1, 2)


def bound_matrix():
    """(domain, l, h, quotient, tau_l1) over the certification matrix."""
    a, b = 0.5, 1.0
    g = ShellGeometry(2, a, b)
    domains = [ConcentricShell(a, b)]
    domains += [EccentricShell(a, b, f * (b - a)) for f in (0.05, 0.3, 0.6, 0.9)]
    domains += [StarShell(a, b, (0.08, 0.02), 8), StarShell(a, b, (0.12,), 4)]
    r_max = max(d.r_max for d in domains)
    rows = []
    for h in BOUND_H:
        for l in BOUND_L:
            prof = extend_profile(ModeProblem(g, l, h), r_max)
            for d in domains:
                rows.append((d, l, h, weinberger_quotient(d, prof), prof.tau))
    return rows


def criterion_09():
    rows = bound_matrix()
    bad = []
    for d, l, h, qv, tau in rows:
        gap = tau - qv
        if gap < -1e-7:
            bad.append(f"bound violated {d} l={l} h={h}")
        equality = isinstance(d, ConcentricShell) or (l == 0 and h == 0)
        if equality and abs(gap) >= 1e-7:
            bad.append(f"no equality {d} l={l} h={h}")
        if not equality and abs(gap) < 1e-7:
            bad.append(f"unexpected equality {d} l={l} h={h}")
        if isinstance(d, EccentricShell) and h != 0 and gap <= 1e-6:
            bad.append(f"gap {gap:.2e} <= 1e-6 {d} l={l} h={h}")
    min_ecc = min(t - q for d, l, h, q, t in rows if isinstance(d, EccentricShell) and h != 0)
    detail = f"{len(rows)} cases; min eccentric gap (h!=0) {min_ecc:.2e}"
    return not bad, detail if not bad else detail + "; " + "; ".join(bad)


def long_inequality_cases():
    g = ShellGeometry(2, 0.5, 1.0)
    cases = []
    for l in range(5):
        hs = [-5.0, -0.8, 0.0, 1.0, DIRICHLET]
        if l >= 1:
            h0 = find_h0(g, l).value
            hs += [h0 * (1 + 1e-3), h0 * (1 - 1e-3)]
        cases += [ModeProblem(g, l, h) for h in hs]
    return cases


def criterion_10():
    worst, endpoint = math.inf, 0.0
    for p in long_inequality_cases():
        m = check_long_inequality(p)
        worst = min(worst, m.minimum)
        endpoint = max(endpoint, abs(m.endpoint))
    ok = worst >= -1e-9 and endpoint <= 1e-10
    return ok, f"min margin {worst:.3e}, max |endpoint margin| {endpoint:.1e}"


def criterion_11():
    parts, ok = [], True
    for g, l in ((WIDE_SHELL, 1), (WIDE_SHELL, 2), (ShellGeometry(2, 0.5, 1.0), 1),
                 (ShellGeometry(3, 0.5, 1.0), 1)):
        h1 = find_h1(g, l)
        h0 = find_h0(g, l)   # raises if the profile cross-validation fails
        ok &= h1.residual < 1e-9 and h1.value < 0 and h0.value >= h1.value
        parts.append(f"N={g.dimension} a={g.alpha} b={g.beta} l={l}: h1={_fmt(h1.value)} h0={_fmt(h0.value)}")
    return ok, "; ".join(parts)


def criterion_12():
    dom = StarShell(0.5, 1.0, (0.08, 0.02), 8)
    prof = extend_profile(ModeProblem(ShellGeometry(2, 0.5, 1.0), 1, -0.8), dom.r_max)
    reports = [symmetry_identity_check(dom, prof, i) for i in (1, 2, 3, 4)]
    ok = all(r.deviation <= 1e-7 for r in reports)
    ok &= reports[-1].identity == "pair_sum"
    ortho = max(r.orthogonality_max for r in reports)
    ok &= ortho <= 1e-8
    dev = max(r.deviation for r in reports)
    return ok, f"max identity deviation {dev:.1e}, max orthogonality {ortho:.1e}"


def fem_radial_eigenvalues(problem: ModeProblem, points: int = 2000, count: int = 3):
    """Linear finite elements for the weak form of the radial problem.

    Kept only as an independent check of the shooting solver.
    """
    g = problem.geometry
    n = g.dimension
    r = np.linspace(g.alpha, g.beta, points)
    m = points - 1
    xg, wg = np.polynomial.legendre.leggauss(3)
    K = np.zeros((points, points))
    M = np.zeros((points, points))
    q = problem.angular_coefficient
    for e in range(m):
        a, b = r[e], r[e + 1]
        le = b - a
        s = 0.5 * (a + b) + 0.5 * le * xg
        w = 0.5 * le * wg
        phi = np.vstack([(b - s) / le, (s - a) / le])
        dphi = np.array([-1.0 / le, 1.0 / le])
        pw = s ** (n - 1)
        idx = [e, e + 1]
        for i in range(2):
            for j in range(2):
                K[idx[i], idx[j]] += np.sum(w * (pw * dphi[i] * dphi[j] + q * s ** (n - 3) * phi[i] * phi[j]))
                M[idx[i], idx[j]] += np.sum(w * pw * phi[i] * phi[j])
    if problem.dirichlet:
        K, M = K[1:, 1:], M[1:, 1:]
    else:
        K[0, 0] += problem.h * g.alpha ** (n - 1)
    return scipy.linalg.eigh(K, M, eigvals_only=True, subset_by_index=[0, count - 1])


def criterion_13():
    g = WIDE_SHELL
    K = 12
    assembled = [e.tau for e in assemble_spectrum(g, REF_H, K)]
    brute = sorted(t for l in range(13) for t in mode_eigenvalues(g, REF_H, l, 12)
                   for _ in range(multiplicity_lambda(l, 2)))[:K]
    enum_dev = max(abs(a - b) / max(abs(b), 1e-12) for a, b in zip(assembled, brute))
    fem0 = fem_radial_eigenvalues(ModeProblem(g, 0, REF_H))
    fem1 = fem_radial_eigenvalues(ModeProblem(g, 1, REF_H))
    ref = [sl_eigenvalue(ModeProblem(g, 0, REF_H), 1), sl_eigenvalue(ModeProblem(g, 0, REF_H), 2),
           sl_eigenvalue(ModeProblem(g, 1, REF_H), 1)]
    fem = [fem0[0], fem0[1], fem1[0]]
    fem_dev = max(abs(a - b) / abs(b) for a, b in zip(fem, ref))
    ok = len(assembled) == K and enum_dev <= 1e-12 and fem_dev <= 1e-4
    return ok, f"enumeration max rel. deviation {enum_dev:.1e}; FEM max rel. deviation {fem_dev:.1e}"


CRITERIA = {
    1: ("reference radial eigenvalues (shooting + Bessel)", criterion_01, 1.0),
    2: ("radial second eigenfunction verdicts", criterion_02, 5.0),
    3: ("fig1 sweep: one sign change in (-0.8, 0)", criterion_03, 60.0),
    4: ("disk / rectangle closed forms", criterion_04, 1.0),
    5: ("central-symmetry counterexample on [0.2, 0.6]", criterion_05, 10.0),
    6: ("rectangle / square vs disk comparisons", criterion_06, 1.0),
    7: ("h-derivative identity vs finite differences", criterion_07, 30.0),
    8: ("ordering and sign properties", criterion_08, 30.0),
    9: ("trial-quotient bound certification", criterion_09, 180.0),
    10: ("pointwise inequality margins", criterion_10, 60.0),
    11: ("threshold consistency", criterion_11, 60.0),
    12: ("symmetry norm identities", criterion_12, 60.0),
    13: ("oracle equivalence (enumeration, finite elements)", criterion_13, 120.0),
}
FAST = (1, 2, 4, 5, 6, 7, 8, 10, 11, 12)


def warm_up() -> None:
    """Load the compiled integrator so that timings measure numerics only."""
    _ode.prufer_angle(0.5, 1.0, 2.0, 1.0, 0.0, 1.0, 1e-8, 1e-8, 1000)
    _ode.linear_on_grid(np.array([1.0, 0.0]), np.linspace(1.0, 2.0, 3), True, 1.0, 0.0, 1.0, 1e-8, 1e-8, 1000)


def run_criterion(number: int) -> CriterionResult:
    title, fn, budget = CRITERIA[number]
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a raised verification error is a failed criterion
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if elapsed > budget:
        ok = False
        detail += f" (exceeded {budget:g} s budget)"
    return CriterionResult(number, title, bool(ok), detail, budget, elapsed)


def run_suite(suite: str = "all") -> list[CriterionResult]:
    warm_up()
    numbers = sorted(CRITERIA) if suite == "all" else FAST
    return [run_criterion(n) for n in numbers]
