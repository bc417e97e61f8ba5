from fractions import Fraction

import pytest

from ksa2d.pipeline import (
    MINUS,
    ConfigError,
    DEFAULT_TOLERANCES,
    make_config,
    parse_config_file,
    reverify_deformation_document,
    run_cohomology,
    run_deform,
    run_geometry_report,
    run_verify,
    table1_rows,
    table2_rows,
    table3_rows,
    tables_payload,
)


def test_default_config():
    cfg = make_config({})
    assert cfg.signature == "1,1"
    assert cfg.sigma_b == -1
    assert cfg.b == 1
    assert cfg.tolerances == DEFAULT_TOLERANCES


def test_config_normalisation():
    cfg = make_config({"signature": "riemannian", "bilinear": "+1", "b": "1/2"})
    assert cfg.signature == "0,2"
    assert cfg.sigma_b == 1
    assert cfg.b == Fraction(1, 2)


def test_config_rejects_unknown_keys():
    with pytest.raises(ConfigError):
        make_config({"signatur": "1,1"})


def test_config_rejects_bad_values():
    with pytest.raises(ConfigError):
        make_config({"signature": "2,0"})
    with pytest.raises(ConfigError):
        make_config({"bilinear": "flat"})
    with pytest.raises(ConfigError):
        make_config({"b": "one half"})
    with pytest.raises(ConfigError):
        make_config({"geometry": "sphere"})
    with pytest.raises(ConfigError):
        make_config({"tolerances": {"bogus": 1e-3}})


def test_explicit_bilinear_matrix_selector():
    # a scalar multiple of the canonical symmetric form: current and the
    # cocycle's gamma components scale along with it
    cfg = make_config({"signature": "1,1", "bilinear": "0,3;3,0", "b": "1"})
    assert cfg.bilinear == "+"
    doc = run_deform(cfg)
    qq = next(b for b in doc["brackets"] if b["left"] == "Q_1" and b["right"] == "Q_1")
    assert qq["result"] == {"P_0": "3", "P_1": "3"}
    coh = run_cohomology(cfg)
    assert coh["dimension"] == 1
    assert coh["canonical"]["g_12"] == "-6"


def test_explicit_bilinear_matrix_rejections():
    with pytest.raises(ConfigError):
        make_config({"signature": "1,1", "bilinear": "1,0;0,1"})  # no definite type
    with pytest.raises(ConfigError):
        make_config({"bilinear": "0,0;0,0"})
    with pytest.raises(ConfigError):
        make_config({"bilinear": "1,2,3;4,5,6"})


def test_chiral_with_deformation_is_config_error():
    with pytest.raises(ConfigError, match="cohomology"):
        make_config({"module": "chiral+", "b": "1"})
    cfg = make_config({"module": "chiral+", "b": "0"})
    assert cfg.module == "chiral+"


def test_chiral_requires_lorentzian():
    with pytest.raises(ConfigError):
        make_config({"module": "chiral+", "signature": "0,2", "b": "0"})


def test_parse_config_file():
    text = """
    # sample configuration
    signature = 0,2
    bilinear = -
    b = 3/2
    tolerance.curvature = 1e-7
    """
    values = parse_config_file(text)
    cfg = make_config(values)
    assert cfg.signature == "0,2"
    assert cfg.b == Fraction(3, 2)
    assert cfg.tolerances["curvature"] == 1e-7
    assert cfg.tolerances["jacobi"] == DEFAULT_TOLERANCES["jacobi"]


def test_parse_config_file_rejects_garbage():
    with pytest.raises(ConfigError):
        parse_config_file("signature 1,1")


def test_table1_cells():
    rows = table1_rows()
    assert [tuple(r.values()) for r in rows] == [
        ("εᵀσ₁ε′", "+", "+", MINUS, "+", "+"),
        ("εᵀΩε′", MINUS, MINUS, MINUS, "+", "+"),
    ]


def test_table2_cells():
    rows = table2_rows()
    assert [tuple(r.values()) for r in rows] == [
        ("εᵀε′", "+", "+", "+"),
        ("εᵀΩε′", MINUS, MINUS, "+"),
    ]


def test_table3_five_rows():
    rows = table3_rows()
    assert len(rows) == 5
    expected = [
        ("(0,2)", "S", "+", "ℝ", "∇_Xε = b(*X)·ε", "H²"),
        ("(0,2)", "S", MINUS, "ℝ", "∇_Xε = bX·ε", "H²"),
        ("(1,1)", "S₊ ⊕ S₋", "+", "ℝ", "∇_Xε = b(*X)·ε", "dS₂"),
        ("(1,1)", "S₊ ⊕ S₋", MINUS, "ℝ", "∇_Xε = bX·ε", "AdS₂"),
        ("(1,1)", "S±", MINUS, "0", "∇_Xε = 0", MINUS),
    ]
    assert [tuple(r.values()) for r in rows] == expected


def test_tables_byte_stable():
    first = tables_payload()
    second = tables_payload()
    assert first["markdown"] == second["markdown"]
    assert first["csv"] == second["csv"]


def test_verify_algebraic_only_passes():
    cfg = make_config({"geometry": "none"})
    report = run_verify(cfg)
    assert report["passed"] and report["exit_code"] == 0
    names = [c["name"] for c in report["checks"]]
    assert "gamma_identities[1,1]" in names
    assert "chiral_cohomology[+]" in names


def test_verify_corrupted_fixture_fails():
    cfg = make_config({"geometry": "none", "fixture": "corrupted_bracket"})
    report = run_verify(cfg)
    assert not report["passed"] and report["exit_code"] == 1
    failing = [c["name"] for c in report["checks"] if not c["passed"]]
    assert failing and all(name.startswith("deformation_jacobi") for name in failing)


def test_verify_default_config_full_pipeline():
    report = run_verify(make_config({}))
    failing = [c["name"] for c in report["checks"] if not c["passed"]]
    assert report["passed"] and report["exit_code"] == 0, failing
    names = [c["name"] for c in report["checks"]]
    # the default sweep covers every benchmark background
    for tag in ("h2", "ds2", "ads2"):
        assert any(name.startswith(f"superalgebra_closure[{tag}") for name in names)
    assert "perturbed_metric_dimension_zero" in names


def test_verify_single_geometry():
    cfg = make_config({"geometry": "ads2"})
    report = run_verify(cfg)
    assert report["passed"], [c for c in report["checks"] if not c["passed"]]
    names = [c["name"] for c in report["checks"]]
    assert any(name.startswith("superalgebra_closure[ads2") for name in names)
    assert not any("[h2" in name for name in names)


def test_deform_document_and_round_trip():
    cfg = make_config({"signature": "1,1", "bilinear": "-", "b": "1"})
    doc = run_deform(cfg)
    pp = next(b for b in doc["brackets"] if b["left"] == "P_0" and b["right"] == "P_1")
    assert pp["result"] == {"L_*": "4"}
    assert doc["geometry_label"] == "ads2"
    assert doc["scalar_curvature"] == "-8"
    assert reverify_deformation_document(doc)


def test_deform_flat_at_zero():
    cfg = make_config({"signature": "0,2", "bilinear": "+", "b": "0"})
    doc = run_deform(cfg)
    assert doc["deformation_parameter"] == "0"
    assert doc["geometry_label"] == "flat"


def test_deform_h2_label():
    cfg = make_config({"signature": "0,2", "bilinear": "+", "b": "1/2"})
    doc = run_deform(cfg)
    assert doc["geometry_label"] == "h2"
    assert doc["scalar_curvature"] == "-2"


def test_cohomology_reports():
    full = run_cohomology(make_config({"signature": "1,1", "bilinear": "+"}))
    assert full["dimension"] == 1
    assert full["canonical"]["b_01"] == "1"
    chiral = run_cohomology(make_config({"module": "chiral+", "b": "0"}))
    assert chiral["dimension"] == 0
    assert chiral["canonical"] is None


def test_geometry_report_needs_concrete_kind():
    with pytest.raises(ConfigError):
        run_geometry_report(make_config({"geometry": "all"}))


def test_geometry_report_flat():
    cfg = make_config({"geometry": "flat", "signature": "0,2", "bilinear": "-", "b": "0"})
    report = run_geometry_report(cfg)
    assert report["killing_spinor_dimension"] == 2
    assert report["rd_max_component"] < 1e-12
