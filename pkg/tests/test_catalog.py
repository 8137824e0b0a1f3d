from fractions import Fraction as F

import pytest

from affine_homog import catalog as cat
from affine_homog.scalars import RationalFunc


def test_catalog_loads_twenty_entries():
    entries = cat.catalog()
    assert len(entries) == 20
    dims = [entries[f"N{k}"].expected_isotropy for k in range(1, 21)]
    assert dims == [4, 3, 2] + [1] * 17


def test_alpha_restrictions_recorded():
    entries = cat.catalog()
    assert entries["N7"].excluded_alphas == (F(0), F(1), F(2))
    assert entries["N16"].excluded_alphas == (F(0), F(1), F(2), F(3))
    assert not entries["N8"].uses_alpha


def test_base_jet_quartics():
    j = cat.base_jet("I1.1")
    assert j.poly.coefficient((3, 1, 0)) == F(1, 2)
    assert j.poly.coefficient((2, 0, 2)) == F(-1)
    j = cat.base_jet("I1.2")
    assert j.poly.coefficient((2, 0, 2)) == F(21, 4)


def test_i0_quartic_formulas():
    b = RationalFunc.gen("b")
    c22, c112, c004 = cat.i0_quartic_coeffs("I0.1", b)
    assert c22 == F(9, 4) and c112 == F(-9, 2)
    assert c004 == F(15, 32) * b
    c22, _, _ = cat.i0_quartic_coeffs("I0.3", F(2))
    assert c22 == F(-1, 4) * 3 * 9


def test_overlap_identities():
    rep = cat.overlap_identities()
    assert rep.passed
    assert set(rep.details) == {"I0.1=I0.2 at b=1", "I0.1=I0.3 at b=-4",
                                "I0.2=I0.3 at b=7/2"}


def test_verify_entry_quadric_and_cubic():
    rep = cat.verify_entry("N1", order=5)
    assert rep.passed and rep.details["isotropy_dim"] == 4
    rep = cat.verify_entry("N3", order=5)
    assert rep.passed and rep.details["isotropy_dim"] == 2
    assert rep.details["cubic_class"] == "I3"


def test_verify_entry_rejects_excluded_alpha():
    with pytest.raises(ValueError):
        cat.verify_entry("N7", alpha=F(2))
    with pytest.raises(ValueError):
        cat.verify_entry("N7")  # binding required


def test_discover_i1_two_points():
    comps = cat.discover("I1")
    assert [c.kind for c in comps] == ["point", "point"]
    assert [c.normal_form for c in comps] == ["I1.1", "I1.2"]


def test_discover_i0_two_parametric_families():
    comps = cat.discover("I0")
    assert [c.kind for c in comps] == ["family", "family"]
    assert sorted(c.normal_form for c in comps) == ["I0.1", "I0.2"]
    for c in comps:
        assert c.parameter is not None and not c.parameter.is_constant()


def test_confirm_isotropy_samples():
    assert cat.confirm_isotropy("I3", order=5).passed
    assert cat.confirm_isotropy("I0.2", b=F(9, 4), order=5).passed


def test_sphere_series_negative_branch():
    j = cat.sphere_series(-1, order=4)
    # (sqrt(1+4u)-1)/2 = u - u^2 + 2u^3 - 5u^4 in u = 2xy+z^2 collapsed
    assert j.poly.coefficient((2, 2, 0)) == F(-4)
    assert j.poly.coefficient((0, 0, 4)) == F(-1)


def test_reject_variant_v1_closes_then_fails():
    rep = cat.reject_variant("v1")
    assert rep.passed
    assert rep.details["closed_at_4"] is True
    assert rep.details["first_failing_order"] == 5


def test_closed_forms_match_completions_quick():
    for nf in ("I3", "I1.1"):
        cf = cat.closed_form_jet(nf, order=5)
        comp = cat.confirm_isotropy(nf, order=5).details["completed_jet"]
        assert cf == comp


def test_cubic_eigen_analysis():
    assert cat.cubic_eigen_analysis(t_range=4).passed


def test_coordinate_change_fixtures():
    assert cat.coordinate_change_fixtures(order=5).passed


def test_report_json_serializable():
    import json
    rep = cat.verify_entry("N1", order=4)
    json.dumps(rep.to_json())
