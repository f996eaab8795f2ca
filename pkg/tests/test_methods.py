"""The method catalogue: 13 entries, parameter handling, fit/transform."""
import numpy as np
import pytest

from topovec import methods
from topovec.barcode import Barcode, EmptyBarcodeError

TWO_BARS = Barcode(1, [(0, 2), (1, 3)])
CATEGORIES = {
    "statistical": {"persistence_statistics", "entropy_summary"},
    "algebraic": {"algebraic_functions", "tropical_coordinates", "complex_polynomial"},
    "curve": {"betti_curve", "lifespan_curve", "persistence_landscape", "persistence_silhouette"},
    "functional": {"persistence_image", "template_function"},
    "ensemble": {"adaptive_template", "atol"},
}


def test_exactly_thirteen_methods():
    assert len(methods.METHOD_IDS) == 13
    by_category: dict = {}
    for info in methods.list_methods():
        by_category.setdefault(info.category, set()).add(info.id)
    assert by_category == CATEGORIES


def test_render_hints():
    hints = {info.id: info.render_hint for info in methods.list_methods()}
    assert hints["persistence_statistics"] == "table"
    assert hints["betti_curve"] == "curve"
    assert hints["persistence_image"] == "heatmap"
    assert hints["tropical_coordinates"] == "bars"
    assert all(h in methods.RENDER_HINTS for h in hints.values())


def test_only_ensemble_methods_require_fit():
    for info in methods.list_methods():
        assert info.requires_fit == (info.category == "ensemble")


def test_documented_grids():
    by_id = {info.id: info for info in methods.list_methods()}
    tropical = by_id["tropical_coordinates"].params[0]
    assert tuple(tropical.grid) == (10, 50, 250, 500, 800)
    silhouette = [p for p in by_id["persistence_silhouette"].params if p.name == "alpha"][0]
    assert tuple(silhouette.grid) == (0, 1, 2, 5, 10, 20)
    atol_b = [p for p in by_id["atol"].params if p.name == "b"][0]
    assert tuple(atol_b.grid) == (2, 4, 8, 16, 32, 64)


def test_resolve_params_defaults_and_validation():
    resolved = methods.resolve_params("betti_curve", None)
    assert resolved == {"resolution": 100}
    assert methods.resolve_params("betti_curve", {"resolution": "50"}) == {"resolution": 50}
    with pytest.raises(methods.ParameterError):
        methods.resolve_params("betti_curve", {"resolution": 2.5})
    with pytest.raises(methods.ParameterError):
        methods.resolve_params("betti_curve", {"nope": 1})
    with pytest.raises(methods.ParameterError):
        methods.resolve_params("persistence_statistics", {"anything": 1})
    with pytest.raises(methods.ParameterError):
        methods.resolve_params("complex_polynomial", {"transform": "Q"})
    with pytest.raises(methods.UnknownMethodError):
        methods.resolve_params("mystery", None)


def test_feature_width_matches_transform():
    barcode = Barcode(1, [(0, 2), (1, 3), (0.5, 0.75)])
    small_fits = {"adaptive_template": {"k": 2}, "atol": {"b": 2}}
    for info in methods.list_methods():
        params = methods.resolve_params(info.id, small_fits.get(info.id))
        if info.requires_fit:
            state = methods.fit_state(info.id, [barcode, TWO_BARS], params, seed=1)
            fv = methods.transform(info.id, barcode, params, state=state)
        else:
            fv = methods.transform(info.id, barcode, params)
        assert fv.values.size == methods.feature_width(info.id, params)
        assert fv.labels == methods.feature_labels(info.id, params)
        assert fv.method == info.id


def test_transform_dims_concatenates_and_prefixes():
    barcodes = {0: Barcode(0, [(0, 1)]), 1: TWO_BARS}
    fv = methods.transform_dims("persistence_statistics", barcodes, (0, 1))
    assert fv.values.size == 76
    assert fv.labels[0] == "d0_births_mean"
    assert fv.labels[38] == "d1_births_mean"
    assert fv.dims == (0, 1)


def test_transform_dims_doubles_width_with_concat():
    barcodes = {0: Barcode(0, [(0, 1)]), 1: TWO_BARS}
    one = methods.transform_dims("betti_curve", barcodes, (0,), params={"resolution": 25})
    both = methods.transform_dims("betti_curve", barcodes, (0, 1), params={"resolution": 25})
    assert both.values.size == 2 * one.values.size


def test_transform_dims_empty_handling():
    barcodes = {0: Barcode(0, [(0, 1)])}
    with pytest.raises(EmptyBarcodeError):
        methods.transform_dims("persistence_statistics", barcodes, (0, 1))
    fv = methods.transform_dims("persistence_statistics", barcodes, (0, 1), on_empty="zeros")
    assert np.array_equal(fv.values[38:], np.zeros(38))
    assert fv.meta["zero_filled_dims"] == [1]


def test_ensemble_transform_without_state_raises():
    with pytest.raises(methods.NeedsFitError):
        methods.transform("atol", TWO_BARS)
    with pytest.raises(methods.NeedsFitError):
        methods.transform("adaptive_template", TWO_BARS)


def test_stateless_transform_uses_own_range():
    fv = methods.transform("betti_curve", TWO_BARS, {"resolution": 10})
    assert fv.meta["grid"][0] == 0.0
    assert fv.meta["grid"][-1] == 3.0
