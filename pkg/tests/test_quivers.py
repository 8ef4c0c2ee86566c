from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallforge.errors import NotHereditarySetup
from hallforge.quivers import (Arrow, Quiver, canonical_quiver_json, dims_add,
                               dims_leq, dims_sub, dimvecs_up_to, line_quiver,
                               quiver_from_dict, quiver_to_dict, subdimvecs,
                               topological_order, total_dim, validate_quiver)


def test_line_quiver_shape():
    q = line_quiver(3)
    assert q.n == 3
    assert [(a.source, a.target) for a in q.arrows] == [(0, 1), (1, 2)]
    assert line_quiver(1).arrows == ()


def test_cycle_is_rejected():
    q = Quiver(("1", "2"), (Arrow(0, 1, "a"), Arrow(1, 0, "b")))
    with pytest.raises(NotHereditarySetup):
        validate_quiver(q)
    with pytest.raises(NotHereditarySetup):
        topological_order(q)


def test_self_loop_is_rejected():
    with pytest.raises(NotHereditarySetup):
        validate_quiver(Quiver(("1",), (Arrow(0, 0, "a"),)))


def test_topological_order_on_lines():
    assert topological_order(line_quiver(4)) == (0, 1, 2, 3)
    rev = Quiver(("1", "2"), (Arrow(1, 0, "a"),))
    assert topological_order(rev) == (1, 0)


def test_quiver_dict_roundtrip():
    q = line_quiver(2)
    d = quiver_to_dict(q)
    assert d == {"vertices": ["1", "2"],
                 "arrows": [{"src": "1", "dst": "2", "label": "a1"}]}
    assert quiver_from_dict(d) == q
    parsed = quiver_from_dict(json.loads(canonical_quiver_json(q)))
    assert parsed == q


def test_quiver_from_dict_errors():
    with pytest.raises(NotHereditarySetup):
        quiver_from_dict({"arrows": []})
    with pytest.raises(NotHereditarySetup):
        quiver_from_dict({"vertices": ["1"], "arrows": [{"src": "1", "dst": "9"}]})


def test_dims_helpers():
    assert dims_add((1, 2), (3, 4)) == (4, 6)
    assert dims_sub((3, 4), (1, 2)) == (2, 2)
    assert dims_leq((1, 2), (1, 3))
    assert not dims_leq((2, 0), (1, 3))
    assert total_dim((2, 3)) == 5


@given(st.lists(st.integers(0, 3), min_size=1, max_size=3))
@settings(max_examples=40, deadline=None)
def test_subdimvecs_count(dims):
    dims = tuple(dims)
    subs = list(subdimvecs(dims))
    expect = 1
    for d in dims:
        expect *= d + 1
    assert len(subs) == expect
    assert len(set(subs)) == len(subs)
    assert all(dims_leq(s, dims) for s in subs)


def test_dimvecs_up_to_counts():
    vecs = list(dimvecs_up_to(2, 2))
    assert sorted(vecs) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]
    assert list(dimvecs_up_to(1, 4)) == [(0,), (1,), (2,), (3,), (4,)]
