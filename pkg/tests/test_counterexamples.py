import math

import pytest

from robinshell.closed_form import disk_neumann_spectrum, expand
from robinshell.counterexamples import (compare, dumbbell_limit_spectrum, inner_dirichlet_tau,
                                        verify_central_symmetry_counterexample,
                                        verify_order_symmetry_counterexamples)
from robinshell.radial_sl import DIRICHLET, ModeProblem, ShellGeometry, sl_eigenvalue


def test_compare_relations():
    assert compare("x", "a", 2.0, "b", 1.0).relation == ">"
    assert compare("x", "a", 1.0, "b", 2.0).relation == "<"
    r = compare("x", "a", 1.0, "b", 1.0 + 1e-12)
    assert r.relation == "tie"


def test_central_symmetry_window():
    reports = verify_central_symmetry_counterexample([0.2, 0.3, 0.4, 0.5, 0.6])
    assert all(r.relation == ">" and r.margin > 0 for r in reports)
    # outside the window the comparison flips
    assert verify_central_symmetry_counterexample([0.05])[0].relation == "<"
    assert verify_central_symmetry_counterexample([0.9])[0].relation == "<"


def test_central_symmetry_ingredients():
    r = verify_central_symmetry_counterexample([0.4])[0]
    mu2 = expand(disk_neumann_spectrum(1.0, 2))[1]
    tau1 = sl_eigenvalue(ModeProblem(ShellGeometry(2, 0.4, 1.0), 0, DIRICHLET), 1)
    assert r.lhs_value == pytest.approx(min(mu2, tau1))
    # the equimeasurable shell's second eigenvalue comes from the l=1 mode
    assert r.rhs_value == pytest.approx(
        sl_eigenvalue(ModeProblem(ShellGeometry(2, 0.4, math.sqrt(2)), 1, DIRICHLET), 1))
    assert inner_dirichlet_tau(0.4, math.sqrt(2), 2) == r.rhs_value


def test_order_symmetry_margins():
    reports = verify_order_symmetry_counterexamples()
    assert [r.relation for r in reports] == [">", ">", ">"]
    assert [r.margin for r in reports] == pytest.approx([2.5095, 0.3029, 10.1725], abs=1e-3)


def test_dumbbell_limit():
    short = dumbbell_limit_spectrum(0.3, 0.4, 6)
    assert short.precondition_holds
    assert short.values == sorted(short.values)
    assert {e.source for e in short.entries} <= {"disk", "neck", "holed_disk"}
    assert short.neck_ground == pytest.approx((math.pi / 0.6) ** 2)
    assert not dumbbell_limit_spectrum(2.0, 0.4, 6).precondition_holds
    with pytest.raises(ValueError):
        dumbbell_limit_spectrum(0.3, 1.5, 4)
