from fractions import Fraction

import pytest

from truncbt.core import experiments
from truncbt.core.errors import InsufficientData, InvalidArgumentError
from truncbt.core.experiments import (
    ChiFit,
    centralizing_sequence,
    chi_fit,
    dim_fit,
    dimension_report,
    level_experiment,
    lift_matrix,
    sample_stabilizer,
    separation_probe,
)
from truncbt.core.matrix import MatrixW
from truncbt.core.orbit import enumerate_gl, orbit_bfs
from truncbt.core.witt import RingDescriptor


def test_dim_fit_exact():
    fit = dim_fit([(2, 16), (1, 4), (3, 64)], 2)
    assert fit.estimate == 2
    assert fit.residual == Fraction(0)
    assert fit.reliable
    assert fit.points == [(1, 4), (2, 16), (3, 64)]
    assert fit.to_json()["residual"] == "0/1"


def test_dim_fit_fractional_counts():
    fit = dim_fit([(1, Fraction(1, 2)), (2, Fraction(2))], 2)
    assert fit.estimate == 2
    assert fit.reliable
    assert fit.to_json()["points"] == [[1, "1/2"], [2, 2]]


def test_dim_fit_unreliable():
    fit = dim_fit([(1, 1), (2, 3), (3, 1)], 2)
    assert fit.estimate == 0
    assert not fit.reliable


@pytest.mark.parametrize(
    "counts,error",
    [
        ([(1, 2)], InsufficientData),
        ([], InsufficientData),
        ([(1, 0), (2, 1)], InvalidArgumentError),
        ([(1, 2), (1, 4)], InvalidArgumentError),
    ],
)
def test_dim_fit_errors(counts, error):
    with pytest.raises(error):
        dim_fit(counts, 2)


@pytest.mark.parametrize(
    "n,stabilizer,chi,unipotent,orbit_normalized",
    [(1, 2, 1, 2, 8), (2, 12, 3, 4, 64)],
)
def test_sample_stabilizer_supersingular(
    supersingular, n, stabilizer, chi, unipotent, orbit_normalized
):
    sample = sample_stabilizer(supersingular, RingDescriptor(p=2, n=n))
    assert sample.stabilizer == stabilizer
    assert sample.chi == chi
    assert sample.unipotent == unipotent
    assert sample.orbit_normalized == orbit_normalized
    assert sample.orbit * sample.stabilizer == sample.group_order


def test_sample_stabilizer_ordinary(ordinary):
    sample = sample_stabilizer(ordinary, RingDescriptor(p=3))
    assert sample.chi == 4
    assert sample.unipotent == 1


@pytest.mark.parametrize(
    "recipe,gamma,orbit_dim,stratum_dim",
    [("supersingular", 1, 3, 0), ("ordinary", 0, 4, 1)],
)
def test_dimension_report(recipe, gamma, orbit_dim, stratum_dim, request):
    base = request.getfixturevalue(recipe)
    report = dimension_report(base, 2, 1, degrees=[1, 2, 3])
    assert report.gamma == gamma
    assert report.orbit_fit.estimate == orbit_dim
    assert report.total == 4
    assert report.consistent
    assert all(s.orbit_stabilizer for s in report.samples)
    doc = report.to_json()
    assert doc["stratum_dim"] == stratum_dim
    assert len(doc["samples"]) == 3
    assert doc["consistent"]


def test_dimension_report_counts_stabilizer_separately(supersingular, monkeypatch):
    found = experiments.automorphisms
    monkeypatch.setattr(
        experiments, "automorphisms", lambda D, cap=None: set(sorted(found(D, cap))[:1])
    )
    report = dimension_report(supersingular, 2, 1, degrees=[1, 2, 3])
    assert report.samples[0].stabilizer == 1
    assert not report.samples[0].orbit_stabilizer
    assert not report.consistent


def test_chi_fit_oscillating_counts(supersingular):
    result = chi_fit(supersingular, 2, 1, degrees=[1, 2, 3])
    # F_4^x meets F_q^x in 1, 3, 1 elements
    assert result.counts == [(1, 1), (2, 3), (3, 1)]
    assert result.verdict == "finite"
    doc = result.to_json()
    assert doc["verdict"] == "finite"
    assert not doc["reliable"]


@pytest.mark.parametrize(
    "p,degrees,counts",
    [(2, [1, 2, 3], [(1, 1), (2, 1), (3, 1)]), (3, [1, 2], [(1, 4), (2, 4)])],
)
def test_chi_fit_finite(ordinary, p, degrees, counts):
    # (p - 1)^2 at every q
    result = chi_fit(ordinary, p, 1, degrees=degrees)
    assert result.counts == counts
    assert result.fit.reliable
    assert result.verdict == "finite"


def test_chi_fit_growing_counts():
    counts = [(1, 2), (2, 4), (3, 8)]
    assert ChiFit(counts=counts, fit=dim_fit(counts, 2)).verdict == "inapplicable"


def test_centralizing_sequence(supersingular):
    result = centralizing_sequence(supersingular, 2, 1, degrees=[1, 2, 3])
    doc = result.to_json()
    assert doc["gammas"] == [[1, 1]]
    assert doc["s_D"] == 1
    assert doc["passed"]


def test_level_experiment(ordinary):
    ring = RingDescriptor(p=2)
    seeds = enumerate_gl(ring, 2)
    report = level_experiment(ordinary, ring, 1, seeds)
    polygons = {np for cls in report.classes for np in cls.polygons}
    assert len(polygons) == 2
    assert report.violations == 0
    assert sum(cls.members for cls in report.classes) == len(seeds)
    assert report.violations_by_level[0] == 1
    assert report.separating_level == 1


def test_level_experiment_validation(ordinary):
    ring = RingDescriptor(p=2)
    seeds = [MatrixW.identity(ring, 2)]
    with pytest.raises(InvalidArgumentError):
        level_experiment(ordinary, ring, -1, seeds)
    with pytest.raises(InvalidArgumentError):
        level_experiment(ordinary, ring, 2, seeds, precision=2)


def test_separation_probe(ordinary):
    ring = RingDescriptor(p=2)
    g1 = MatrixW.identity(ring, 2)
    orbit = orbit_bfs(ordinary.context(ring), g1, keep_elements=True).elements
    g2 = next(g for g in enumerate_gl(ring, 2) if g.entries not in orbit)
    assert separation_probe(ordinary, g1, g1) is None
    assert separation_probe(ordinary, g1, g2) == 1
    with pytest.raises(InvalidArgumentError):
        separation_probe(ordinary, g1, MatrixW.identity(RingDescriptor(p=3), 2))


def test_lift_matrix(f2):
    g = MatrixW.from_ints(f2, [[1, 1], [0, 1]])
    lifted = lift_matrix(g, 3)
    assert lifted.ring == RingDescriptor(p=2, m=3)
    assert lifted.entries == g.entries
    assert lift_matrix(lifted, 1) == g
