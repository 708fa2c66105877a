import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from disklab import descriptors, jsonio
from disklab.blaschke import FiniteBlaschke
from disklab.compose import WeightedCompositionOperator, WeightedImage
from disklab.descriptors import DescriptorError, describe, dump, loads, parse, parse_action, parse_function
from disklab.handles import Quotient, RationalFunction, Scaled
from disklab.inner import InnerFunction
from disklab.outer import OuterFunction
from disklab.preserver import MonomialAction, synthesize
from disklab.series import TaylorSeries

disk_pt = st.complex_numbers(max_magnitude=0.95, allow_nan=False, allow_infinity=False)
angle = st.floats(-math.pi, math.pi, allow_nan=False)
inner = st.builds(
    lambda t, zs, ats: InnerFunction.from_data(complex(np.exp(1j * t)), tuple(zs), tuple(ats)),
    angle,
    st.lists(disk_pt, max_size=4),
    st.lists(st.tuples(angle, st.floats(0.01, 3)), max_size=3),
)


class TestJsonio:
    def test_float_precision(self):
        assert jsonio.dumps(0.1) == "0.10000000000000001"
        assert json.loads(jsonio.dumps(math.pi)) == math.pi

    def test_non_finite(self):
        assert jsonio.dumps([math.nan, math.inf]) == "[null, null]"

    def test_negative_zero(self):
        assert jsonio.dumps(-0.0) == "0"

    def test_complex_and_arrays(self):
        assert json.loads(jsonio.dumps({"z": 1 + 2j})) == {"z": [1, 2]}
        assert json.loads(jsonio.dumps(np.arange(3))) == [0, 1, 2]

    def test_flat_lists_inline(self):
        text = jsonio.dumps({"a": [1.0, 2.0], "b": {"c": True}})
        assert '"a": [1, 2]' in text and "\n" in text

    @given(st.floats(allow_nan=False, allow_infinity=False))
    def test_round_trip(self, x):
        assert jsonio.loads(jsonio.dumps(x)) == x


class TestRoundTrip:
    @given(inner)
    def test_inner_byte_identical(self, h):
        text = dump(h)
        again = dump(loads(text))
        assert text == again

    def test_blaschke_layout(self):
        d = describe(FiniteBlaschke(1j, (0.5,)))
        assert d == {"type": "blaschke", "constant": [0, 1], "zeros": [[0.5, 0]]}

    def test_inner_layout(self):
        d = describe(InnerFunction.from_data(1, (0.5,), ((0.0, 1.0),)))
        assert d["type"] == "inner" and d["blaschke"]["type"] == "blaschke" and d["atoms"] == [[0, 1]]

    @pytest.mark.parametrize("obj", [
        TaylorSeries([1, 2j, -0.5]),
        OuterFunction(np.log(np.abs(2 + np.exp(2j * np.pi * np.arange(16) / 16)))),
        RationalFunction((1, 0.5), (2, 1)),
        WeightedImage(FiniteBlaschke.mobius(0.5), FiniteBlaschke.monomial(2), TaylorSeries([0, 1])),
        Scaled(2j, FiniteBlaschke.mobius(0.3)),
        Quotient(FiniteBlaschke(1, (0.2, 0.3)), FiniteBlaschke(1, (0.2,))),
        WeightedCompositionOperator(FiniteBlaschke(1), FiniteBlaschke.mobius(0.5)),
        synthesize(FiniteBlaschke.mobius(0.5), InnerFunction.atom(0.0, 0.3), 3),
    ], ids=lambda o: type(o).__name__)
    def test_all_types(self, obj):
        text = dump(obj)
        back = loads(text)
        assert type(back) is type(obj)
        assert dump(back) == text

    def test_semantics_preserved(self):
        f = WeightedImage(FiniteBlaschke.mobius(0.5), FiniteBlaschke.monomial(2), TaylorSeries([1, 1]))
        g = loads(dump(f))
        z = np.array([0.1, 0.3j, -0.5 + 0.2j])
        assert np.abs(f(z) - g(z)).max() < 1e-15


class TestParse:
    def test_outer_modulus_forms(self):
        g = parse_function({"type": "outer", "modulus": 1})
        assert abs(g(0.3) - 1) < 1e-15
        g = parse_function({"type": "outer", "modulus": [2.0] * 8})
        assert abs(g(0.3) - 2) < 1e-14

    def test_inner_flat_form(self):
        h = parse_function({"type": "inner", "constant": 1, "zeros": [[0.5, 0]], "atoms": [[0, 1]]})
        assert h.zeros == (0.5,) and h.atoms == ((0.0, 1.0),)

    def test_dispatch(self):
        assert isinstance(parse({"type": "wco", "psi": {"type": "blaschke"}, "phi": {"type": "blaschke",
                                                                                    "zeros": [0]}}),
                          WeightedCompositionOperator)
        act = parse_action({"type": "action", "entries": [{"type": "blaschke", "zeros": [0] * k}
                                                          for k in range(3)]})
        assert isinstance(act, MonomialAction) and act.K == 2


class TestErrors:
    @pytest.mark.parametrize("doc, path", [
        ({"type": "blaschke", "zeros": [[1.5, 0]]}, "$.zeros[0]"),
        ({"type": "blaschke", "zeros": ["x"]}, "$.zeros[0]"),
        ({"type": "blaschke", "constant": 2}, "$.constant"),
        ({"type": "inner", "atoms": [[0, -1]]}, "$.atoms[0][1]"),
        ({"type": "inner", "atoms": [[0]]}, "$.atoms[0]"),
        ({"type": "nope"}, "$.type"),
        ({"zeros": []}, "$"),
        ({"type": "outer", "modulus": [1, 0]}, "$.modulus"),
        ({"type": "action", "entries": [{"type": "blaschke"}, {"type": "blaschke", "zeros": [[2, 0]]}]},
         "$.entries[1].zeros[0]"),
        ({"type": "action", "entries": [{"type": "blaschke"}]}, "$.entries"),
        ({"type": "wco", "psi": {"type": "blaschke"}, "phi": {"type": "taylor", "coeffs": [0, 3]}}, "$"),
    ])
    def test_paths(self, doc, path):
        with pytest.raises(DescriptorError) as exc:
            parse(doc)
        assert exc.value.path == path
        assert path in str(exc.value)

    def test_json_position(self):
        with pytest.raises(DescriptorError, match="line 2 column"):
            loads('{"type":\n blaschke}')

    def test_is_value_error(self):
        assert issubclass(DescriptorError, ValueError)

    def test_unknown_lists_types(self):
        with pytest.raises(DescriptorError) as exc:
            parse({"type": "nope"})
        for t in descriptors.FUNCTION_TYPES:
            assert t in str(exc.value)
