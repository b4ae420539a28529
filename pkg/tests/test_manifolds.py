"""Manifold specs: validation, JSON round trip, stabilization bookkeeping."""

import pytest

from derhom.manifolds import (InvalidSpec, ManifoldSpec, SpecMismatch,
                              check_stabilization)


def test_valid_specs():
    I = ManifoldSpec(((3, 4), (3, 4)))
    assert I.n == 7
    assert I.genus(3) == 2
    assert I.homology_degrees() == [3, 4]
    assert I.homology_rank(3) == 2
    J = ManifoldSpec(((3, 3),))
    assert J.n == 6
    assert J.homology_rank(3) == 2


@pytest.mark.parametrize("pairs", [
    (),                  # empty
    ((2, 5),),           # p < 3
    ((4, 3),),           # p > q
    ((3, 5),),           # q >= 2p - 1
    ((3, 4), (4, 4)),    # mixed total dimension
])
def test_invalid_specs(pairs):
    with pytest.raises(InvalidSpec):
        ManifoldSpec(pairs)


def test_json_round_trip():
    I = ManifoldSpec.from_json('{"pairs": [[3, 4], [3, 4]]}')
    assert I.pairs == ((3, 4), (3, 4))
    assert ManifoldSpec.from_json(I.to_json()) == I
    with pytest.raises(InvalidSpec):
        ManifoldSpec.from_json("not json")
    with pytest.raises(InvalidSpec):
        ManifoldSpec.from_json('{"other": 1}')


def test_stabilization():
    I = ManifoldSpec(((3, 4),))
    J = I.stabilized(3)
    assert J.pairs == ((3, 4), (3, 4))
    assert check_stabilization(I, J) == (3, 4)
    with pytest.raises(SpecMismatch):
        check_stabilization(J, I)
    with pytest.raises(SpecMismatch):
        check_stabilization(I, I)
