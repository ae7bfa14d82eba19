import math

import numpy as np
import pytest

from magnetic_curves.exceptions import DomainError, UnknownFamily
from magnetic_curves.solutions.closedform import (
    FAMILIES,
    ClosedFormCurve,
    FamilyId,
    FamilySpec,
    Variant,
    eval_family,
    rotating_c,
)
from magnetic_curves.verification.residual import check_family

DERIVED = [
    FamilySpec("g1-v1-linear", lam=1.4, k=(0.3, -0.2, 0.5, 0.1, 0.7)),
    FamilySpec("g2-v1-linear", lam=0.8, k=(0.3, -0.2, 0.5, 0.1, 0.7)),
    FamilySpec("g1-v1-exp", lam=1.2, c=0.5, k=(0.4, -0.6, 0.2, 0.3, -0.1)),
    FamilySpec("g1-v1-exp", lam=0.7, c=-0.9, k=(1.0, 1.0, -1.0, 0.0, 0.5)),
    FamilySpec("g2-v1-trig", lam=1.5, c=-0.4, k=(0.4, -0.6, 0.2, 0.3, -0.1)),
    FamilySpec("g2-v1-trig", lam=0.6, c=0.2, k=(-0.8, 0.9, 0.5, -0.5, 0.0)),
    FamilySpec("g1-v4-special", lam=1.9, k=(0.7, -0.3, 0.2)),
    FamilySpec("g2-v4-circular", c1=0.3),
    FamilySpec("g2-v4-rotating", lam=0.9, k=(0.8, -0.5)),
    FamilySpec("g2-v4-rotating", lam=1.6, k=(0.5, 2.5), c1=-1.0),
]


@pytest.mark.parametrize("spec", DERIVED, ids=lambda s: s.family.value)
def test_derived_families_solve_the_system(spec):
    report = check_family(spec, np.linspace(0.0, 1.0, 201), tol=1e-8)
    assert report.passed, report


@pytest.mark.parametrize(
    "spec",
    [
        FamilySpec("g1-v1-linear", variant="as-printed", k=(1, 0, 1, 0, 0)),
        FamilySpec("g2-v1-linear", variant="as-printed", lam=1.3, k=(0.6, -0.4, 0.7, 0.3, 0.2)),
        FamilySpec("g1-v1-exp", variant="as-printed", lam=1.3, c=0.4, k=(0.6, -0.4, 0.7, 0.3, 0.2)),
        FamilySpec("g2-v1-trig", variant="as-printed", lam=1.3, c=0.4, k=(0.6, -0.4, 0.7, 0.3, 0.2)),
        FamilySpec("g1-v4-special", variant="as-printed", lam=1.0, k=(2.0, 1.0, 0.0)),
    ],
    ids=lambda s: s.family.value,
)
def test_printed_families_fail(spec):
    assert not check_family(spec, tol=1e-6).passed


@pytest.mark.parametrize("k1", [0.0, 1.0])
def test_printed_special_agrees_when_k1_is_0_or_1(k1):
    printed = FamilySpec("g1-v4-special", variant="as-printed", lam=1.3, k=(k1, 0.4, 0.2))
    derived = FamilySpec("g1-v4-special", lam=1.3, k=(k1, 0.4, 0.2))
    t = np.linspace(0.0, 1.0, 11)
    np.testing.assert_allclose(ClosedFormCurve(printed).positions(t), ClosedFormCurve(derived).positions(t), atol=1e-14)


def test_circular_curve_values():
    state = eval_family(FamilySpec("g2-v4-circular"), 0.0)
    assert tuple(state.pos) == (2.0, 0.0, 0.0)
    assert tuple(state.vel) == (0.0, -4.0, 8.0)
    quarter = eval_family(FamilySpec("g2-v4-circular", c1=1.0), math.pi / 4)
    np.testing.assert_allclose(quarter.pos, (0.0, -2.0, math.pi + 1.0), atol=1e-14)


def test_rotating_family_contains_circular():
    assert rotating_c(1.0, 2.0, 2.0) == 2.0
    t = np.linspace(0.0, 2 * math.pi, 50)
    rotating = ClosedFormCurve(FamilySpec("g2-v4-rotating", k=(2.0, 2.0)))
    circular = ClosedFormCurve(FamilySpec("g2-v4-circular"))
    np.testing.assert_allclose(rotating.positions(t), circular.positions(t), atol=1e-12)


def test_forced_constants():
    assert FamilySpec("g1-v1-linear", lam=2.0).c == -0.5
    assert FamilySpec("g2-v1-linear", lam=4.0).c == 0.25
    assert FamilySpec("g1-v4-special").c == 0.0


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(family="g1-v1-linear", c=0.5),
        dict(family="g2-v4-circular", lam=2.0),
        dict(family="g1-v1-exp", lam=1.0, c=-1.0),
        dict(family="g1-v1-exp", variant="as-printed", lam=1.0, c=-1.0),
        dict(family="g2-v1-trig", lam=2.0, c=0.5),
        dict(family="g2-v1-trig", variant="as-printed", lam=2.0, c=-0.5),
        dict(family="g2-v4-rotating", k=(1.0, 1.0)),
        dict(family="g1-v1-exp", lam=-1.0),
        dict(family="g1-v1-exp", k=(0.0,) * 6),
    ],
)
def test_spec_validation(kwargs):
    with pytest.raises(DomainError):
        FamilySpec(**kwargs)


def test_unknown_family():
    with pytest.raises(UnknownFamily):
        FamilySpec("nosuch")
    with pytest.raises(KeyError):
        FamilyId.parse("g3-v1-linear")


def test_names_and_variants():
    assert FamilyId.parse("G2_V4_CIRCULAR") is FamilyId.G2_V4_CIRCULAR
    assert Variant.parse("printed") is Variant.AS_PRINTED
    assert Variant.parse("derivation-consistent") is Variant.DERIVATION
    assert set(FAMILIES) == set(FamilyId)


def test_short_k_is_padded():
    assert FamilySpec("g1-v4-special", k=(1.0,)).k == (1.0, 0.0, 0.0, 0.0, 0.0)


def test_jet_shapes():
    t = np.linspace(0.0, 1.0, 7)
    jet = ClosedFormCurve(FamilySpec("g1-v1-exp", c=0.3, k=(0.1, 0.2, 0.3, 0.4, 0.5))).jet(t)
    assert jet.pos.shape == jet.vel.shape == jet.acc.shape == (3, 7)
