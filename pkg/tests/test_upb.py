import numpy as np
import pytest

from pptball import (
    Bipartition,
    ProductState,
    UPBSet,
    build_complete_basis,
    eig_hermitian,
    get_upb,
    is_ppt,
    is_ppt_all_cuts,
    omega_state,
)


def gram_deviation(upb):
    full = np.column_stack([m.full_vector for m in upb.members])
    return np.abs(full.conj().T @ full - np.eye(upb.cardinality)).max()


def test_catalog_names():
    assert get_upb("tiles").cardinality == 5
    assert get_upb("pyramid").cardinality == 5
    assert get_upb("shifts").cardinality == 4
    assert get_upb("complete-2x2").cardinality == 4
    with pytest.raises(ValueError, match="unknown product-basis set"):
        get_upb("nope")


def test_gram_identities(tiles, pyramid, shifts):
    assert gram_deviation(tiles) < 1e-10
    assert gram_deviation(pyramid) < 1e-10
    assert gram_deviation(shifts) < 1e-12


def test_projector_traces(tiles, pyramid, shifts):
    for upb in (tiles, pyramid, shifts):
        assert abs(upb.projector.trace - upb.cardinality) < 1e-10


def test_projectors_are_idempotent(tiles, pyramid, shifts):
    for upb in (tiles, pyramid, shifts):
        p = upb.projector.matrix
        assert np.abs(p @ p - p).max() < 1e-10


def test_pyramid_next_nearest_orthogonality(pyramid):
    vecs = [m.local_vectors[0] for m in pyramid.members]
    assert abs(np.vdot(vecs[0], vecs[2])) < 1e-12


def test_product_state_requires_unit_norm():
    with pytest.raises(ValueError, match="norm"):
        ProductState((np.array([1.0, 1.0]),))


def test_from_vectors_rejects_non_orthonormal():
    e = np.eye(3)
    with pytest.raises(ValueError, match="orthonormal"):
        UPBSet.from_vectors("bad", (3, 3), [(e[0], e[0]), (e[0], e[0])])


def test_omega_flat_spectrum(tiles):
    omega = omega_state(tiles)
    vals = eig_hermitian(omega.op).eigenvalues
    assert np.abs(vals[:5]).max() < 1e-10
    assert np.abs(vals[5:] - 0.25).max() < 1e-10


def test_omega_is_ppt(tiles, shifts):
    rep = is_ppt(omega_state(tiles), Bipartition((1,)))
    assert rep and rep.min_eigenvalue >= -1e-9
    rep_all = is_ppt_all_cuts(omega_state(shifts))
    assert rep_all and len(rep_all.checks) == 3


def test_omega_has_zero_overlap_with_members(tiles, pyramid, shifts):
    for upb in (tiles, pyramid, shifts):
        omega = omega_state(upb)
        for m in upb.members:
            v = m.full_vector
            assert abs(np.vdot(v, omega.matrix @ v)) < 1e-12


def test_omega_rejects_complete_basis(complete22):
    with pytest.raises(ValueError, match="complement"):
        omega_state(complete22)


def test_complete_basis_projector_is_identity():
    upb = build_complete_basis((2, 2, 2))
    assert np.abs(upb.projector.matrix - np.eye(8)).max() < 1e-12


def test_json_export_roundtrip(shifts):
    data = shifts.to_json_dict()
    assert data["name"] == "shifts"
    assert data["local_dims"] == [2, 2, 2]
    assert len(data["members"]) == 4
    rebuilt = UPBSet.from_vectors(
        data["name"],
        data["local_dims"],
        [
            [np.array([complex(re, im) for re, im in vec]) for vec in member]
            for member in data["members"]
        ],
    )
    assert np.abs(rebuilt.projector.matrix - shifts.projector.matrix).max() < 1e-12
