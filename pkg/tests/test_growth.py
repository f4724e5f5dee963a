"""Cover growth experiments: exact families, CSV output, caveat discipline."""

from fractions import Fraction

import pytest

from raag.errors import CoverSpecError, NotFlagError
from raag.fixtures import fixture
from raag.growth import CAVEAT, growth_experiment
from raag.models import FiniteQuotientSpec, standard_spec


def test_rejects_bad_inputs():
    c4 = fixture("cycle", n=4)
    with pytest.raises(NotFlagError):
        growth_experiment(fixture("rp2_6"), [standard_spec(fixture("rp2_6"), 2)], 2)
    with pytest.raises(CoverSpecError):
        growth_experiment(c4, [standard_spec(c4, 2)], 4)
    with pytest.raises(CoverSpecError):
        growth_experiment(c4, [], 2)
    with pytest.raises(CoverSpecError):
        growth_experiment(c4, [standard_spec(c4, 3), standard_spec(c4, 2)], 2)


def test_free_group_family_is_exact():
    x = fixture("discrete", n=2)
    series = growth_experiment(x, [standard_spec(x, k) for k in (2, 3, 4)], 2)
    assert series.derivable_family == "free group, b_1 from Euler characteristic"
    assert [c.index for c in series.covers] == [4, 9, 16]
    assert [c.betti for c in series.covers] == [(1, 5), (1, 10), (1, 17)]
    assert series.exact_match() is True
    assert series.reference == (0, 1)
    # b_1 / index approaches the reference b~_0 = 1 from above
    assert [c.ratio(1) for c in series.covers] == \
        [Fraction(5, 4), Fraction(10, 9), Fraction(17, 16)]


def test_torus_family_is_exact():
    edge = fixture("simplex", n=1)
    series = growth_experiment(edge, [standard_spec(edge, k) for k in (2, 3)], 3)
    assert series.derivable_family == "free abelian group, torus covers"
    assert all(c.betti == (1, 2, 1) for c in series.covers)
    assert series.exact_match() is True
    # every ratio tends to zero: the group is amenable, no growth anywhere
    assert series.reference == (0, 0, 0)


def test_product_family_with_block_split_spec():
    # join of two discrete pairs = 4-cycle; one coordinate block per side
    c4 = fixture("cycle", n=4)
    specs = [
        FiniteQuotientSpec(moduli=(k, k), images=((1, 0), (0, 1), (1, 0), (0, 1)))
        for k in (2, 3)
    ]
    series = growth_experiment(c4, specs, 2)
    assert series.derivable_family == "product of two free groups, Kunneth"
    # each side restricts to a deck group of order k, so the side rows are
    # (1, k + 1) and the cover betti numbers are their convolution
    assert [c.index for c in series.covers] == [4, 9]
    assert [c.expected for c in series.covers] == [(1, 6, 9), (1, 8, 16)]
    assert series.exact_match() is True


def test_standard_spec_on_square_is_product():
    c4 = fixture("cycle", n=4)
    series = growth_experiment(c4, [standard_spec(c4, k) for k in (2, 3)], 2)
    assert series.derivable_family == "product of two free groups, Kunneth"
    assert [c.index for c in series.covers] == [16, 81]
    assert [c.betti for c in series.covers] == [(1, 10, 25), (1, 20, 100)]
    assert series.exact_match() is True
    # b_2 / index = ((k^2 + 1) / k^2)^2 exceeds the reference b~_1 = 1 by
    # exactly (2 k^2 + 1) / k^4
    for k, cov in zip((2, 3), series.covers):
        assert cov.ratio(2) - 1 == Fraction(2 * k * k + 1, k ** 4)


def test_shared_coordinate_disables_product_form():
    c4 = fixture("cycle", n=4)
    spec = FiniteQuotientSpec(moduli=(2,), images=((1,), (1,), (1,), (1,)))
    series = growth_experiment(c4, [spec], 2)
    assert series.derivable_family is None
    assert series.exact_match() is None
    assert series.covers[0].expected is None
    assert series.covers[0].index == 2


def test_csv_is_exact_and_floatless():
    x = fixture("discrete", n=2)
    series = growth_experiment(x, [standard_spec(x, 2)], 2)
    csv_text = series.to_csv()
    lines = csv_text.strip().split("\n")
    assert lines[0].rstrip("\r") == \
        "modulus_vector,index,degree,betti,ratio_num,ratio_den,reference"
    assert lines[1].rstrip("\r") == "2x2,4,0,1,1,4,0"
    assert lines[2].rstrip("\r") == "2x2,4,1,5,5,4,1"
    assert "." not in csv_text
    assert "e" not in csv_text.lower().replace("modulus_vector,index,degree,betti,ratio_num,ratio_den,reference", "")


def test_report_always_carries_caveat():
    x = fixture("discrete", n=2)
    exact = growth_experiment(x, [standard_spec(x, 2)], 2)
    assert CAVEAT in exact.render_report()
    assert "EXACT" in exact.render_report()
    c4 = fixture("cycle", n=4)
    spec = FiniteQuotientSpec(moduli=(2,), images=((1,), (1,), (1,), (1,)))
    plain = growth_experiment(c4, [spec], 2)
    assert CAVEAT in plain.render_report()
    assert "EXACT" not in plain.render_report()


def test_worker_pool_matches_serial(monkeypatch):
    c4 = fixture("cycle", n=4)
    specs = [standard_spec(c4, 2), standard_spec(c4, 3)]
    monkeypatch.delenv("RAAG_THREADS", raising=False)
    serial = growth_experiment(c4, specs, 2)
    monkeypatch.setenv("RAAG_THREADS", "2")
    parallel = growth_experiment(c4, specs, 2)
    assert serial == parallel
    assert serial.to_csv() == parallel.to_csv()


def test_reference_column_uses_reduced_mod_p_betti():
    x = fixture("rp2_flag")
    spec = FiniteQuotientSpec(moduli=(2,), images=((1,),) * x.n_vertices)
    series = growth_experiment(x, [spec], 2)
    # reduced betti of the flag complex over F_2 is (0, 1, 1)
    assert series.reference == (0, 0, 1, 1)
