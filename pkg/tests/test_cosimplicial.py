import pytest

from specseq.cosimplicial import (
    Conormalization,
    ContractError,
    DirectSum,
    Tensor,
    TensorBicomplex,
    Unit,
    UniversalExample,
    VSquare,
    alexander_whitney,
    conormal_map,
    default_level_cap,
    identity_map,
    materialize,
    shuffle_map,
    suspend,
    universal_example,
    validate,
    validate_map,
)
from specseq.f2linalg import F2Matrix, rank
from specseq.verify import _nabla_aw

OBJECTS = [
    UniversalExample(1, 0, 0),
    UniversalExample(2, 1, 1),
    UniversalExample(3, 1, 2),
    UniversalExample(None, 1, 1),
    VSquare(1, 2),
    Unit(),
    suspend(UniversalExample(2, 0, 0), 2),
    DirectSum([UniversalExample(2, 1, 1), VSquare(0, 1)]),
    Tensor(UniversalExample(2, 0, 1), UniversalExample(1, 1, 1)),
]


@pytest.mark.parametrize("Y", OBJECTS, ids=repr)
def test_cosimplicial_identities(Y):
    validate(Y, level_cap=5, degree_bound=8)


@pytest.mark.parametrize("Y", OBJECTS, ids=repr)
def test_conormal_dims_match_matrix_route(Y):
    # lazy monomial enumeration vs echelon reduction of materialized matrices
    M = materialize(Y, 5, degree_bound=8)
    CY, CM = Conormalization(Y), Conormalization(M)
    for p in range(5):
        for q in M.dims.get(p, {}):
            span = []
            for k in range(1, p + 1):
                span += M.coface_images(k, p - 1, q)
            deg = rank(F2Matrix.from_rows(span, M.dim(p, q)))
            assert CY.dim(p, q) == CM.dim(p, q) == M.dim(p, q) - deg


@pytest.mark.parametrize("Y", OBJECTS, ids=repr)
def test_conormalization_is_a_bicomplex(Y):
    Conormalization(Y).check(4, 8)


def test_universal_example_columns():
    D = UniversalExample(2, 1, 1)
    C = Conormalization(D)
    assert D.max_column() == 3
    # id_[1] in column 1 and id_[2] in column 2 at total degree 0
    assert C.dim(1, 1) == 1
    assert C.dim(2, 2) == 1
    assert all(C.dim(4, q) == 0 for q in range(10))


def test_default_cap_and_contract():
    assert default_level_cap(2, 1) == 7
    assert default_level_cap(None, 1) is None
    with pytest.raises(ContractError):
        universal_example(2, 1, 0)


def test_materialized_universal_has_cap():
    Y = universal_example(2, 1, 1, level_cap=7)
    assert Y.level_cap == 7
    validate(Y)


def test_identity_map_is_valid():
    validate_map(identity_map(UniversalExample(2, 1, 1)), 4)


def test_validate_map_rejects_non_map():
    D = UniversalExample(2, 1, 1)
    from specseq.cosimplicial import CosimplicialMap

    bad = CosimplicialMap(D, D, lambda p, lab: [lab] if p == 1 else [])
    with pytest.raises(ContractError):
        validate_map(bad, 3)


PAIRS = [
    (UniversalExample(2, 1, 1), UniversalExample(2, 1, 1)),
    (VSquare(1, 1), UniversalExample(2, 0, 1)),
    (UniversalExample(3, 2, 2), UniversalExample(3, 2, 2)),
]


@pytest.mark.parametrize("X,Y", PAIRS, ids=repr)
def test_shuffle_after_aw_is_identity(X, Y):
    assert _nabla_aw(X, Y, 4, 2) == []


@pytest.mark.parametrize("X,Y", PAIRS[:2], ids=repr)
def test_aw_and_shuffle_are_chain_maps(X, Y):
    CX, CY = Conormalization(X), Conormalization(Y)
    CXY = Conormalization(Tensor(X, Y))
    alexander_whitney(CX, CY, CXY).check(3, 6)
    shuffle_map(CXY, CX, CY).check(3, 6)


def test_tensor_bicomplex_is_a_bicomplex():
    T = TensorBicomplex(Conormalization(UniversalExample(2, 1, 1)), Conormalization(VSquare(0, 1)))
    T.check(3, 6)


def test_conormal_map_of_identity():
    D = UniversalExample(2, 1, 1)
    f = conormal_map(identity_map(D))
    f.check(3, 5)
    assert f.apply(1, 1, 1) == 1
