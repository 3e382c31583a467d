import numpy as np
import pytest

from leibniz import catalog
from leibniz.algebra import LeibnizAlgebra, Subspace, derived_series, is_ideal, lower_central_series
from leibniz.derivations import characteristically_nilpotent, nonsingular_derivation_analysis
from leibniz.errors import ParameterMismatch, UnknownId


def test_published_ids():
    ids = catalog.catalog_ids()
    for cid in ("null2", "aff1", "remark-5", "nonliftable-2", "filiform-leibniz-5", "heisenberg"):
        assert cid in ids
    assert len(ids) == len(set(ids))


def test_unknown_id_lists_valid():
    with pytest.raises(UnknownId) as err:
        catalog.stock("no-such-algebra")
    assert "null2" in str(err.value)
    with pytest.raises(UnknownId):
        catalog.stock("remark-4")


def test_parametric_ids_beyond_list():
    assert catalog.stock("filiform-leibniz-14").algebra.dim == 14
    assert catalog.stock("remark-9").algebra.dim == 10


@pytest.mark.parametrize("cid", catalog.catalog_ids())
def test_facts_match_computation(cid):
    entry = catalog.stock(cid)
    A, f = entry.algebra, entry.facts
    assert entry.id == cid
    assert lower_central_series(A).reaches_zero == f["is_nilpotent"]
    assert derived_series(A).reaches_zero == f["is_solvable"]
    assert A.is_lie() == f["is_lie"]
    assert bool(characteristically_nilpotent(A)) == f["characteristically_nilpotent"]
    assert nonsingular_derivation_analysis(A).found_nonsingular == f["nonsingular_derivation"]
    for name, check in (("radical", derived_series), ("nilradical", lower_central_series)):
        basis = entry.subspace(name)
        if basis.shape[1] == 0:
            continue
        J = Subspace(A, basis)
        assert is_ideal(A, J).ok
        sub = LeibnizAlgebra(np.einsum("ai,bj,abk,kc->ijc", basis, basis, A.c, basis))
        assert check(sub).reaches_zero, name


def test_remark_family_table():
    A = catalog.remark_family(5, [1, 2, 3], theta=0.5)
    e = np.eye(6)
    assert np.allclose(A.bracket(e[0], e[0]), e[2])
    assert np.allclose(A.bracket(e[3], e[0]), e[4])
    assert np.allclose(A.bracket(e[0], e[1]), e[3] + 2 * e[4] + 0.5 * e[5])
    assert np.allclose(A.bracket(e[1], e[1]), e[3] + 2 * e[4] + 3 * e[5])
    assert np.allclose(A.bracket(e[3], e[1]), e[5])
    assert A.basis_labels()[0] == "e0"


def test_remark_family_parameters():
    with pytest.raises(ParameterMismatch):
        catalog.remark_family(5, [1, 1])
    with pytest.raises(ParameterMismatch):
        catalog.remark_family(4, [1, 1])
    with pytest.warns(catalog.RemarkParameterWarning):
        catalog.remark_family(5, [1, 0, 0])


def test_constructor_preconditions():
    with pytest.raises(ParameterMismatch):
        catalog.filiform_leibniz(1)
    with pytest.raises(ParameterMismatch):
        catalog.nonliftable_example(1)


def test_nonliftable_labels():
    assert catalog.nonliftable_example(2).basis_labels() == ("e1", "e2", "f1", "f2")
