import random

import pytest

from toricnash import fixtures
from toricnash.cone import Cone, NotPointedError
from toricnash.exactmath import identity, mat_apply, mat_mul
from toricnash.iso import (
    Fingerprint,
    IsoCertificate,
    certificate_for_matrix,
    find_isomorphism,
    fingerprint,
    invert_certificate,
    verify_certificate,
)
from toricnash.nash import chart
from toricnash.semigroup import AffineSemigroup, saturation_hilbert_basis

from helpers import apply_matrix, random_pointed_gens, random_unimodular


def _twist(s, u):
    return AffineSemigroup([apply_matrix(u, g) for g in s.generators], s.dim)


def _random_saturated(rng, dim, count):
    gens = random_pointed_gens(rng, dim, count)
    return AffineSemigroup(saturation_hilbert_basis(Cone(gens, dim)), dim)


def test_fingerprint_unimodular_invariance():
    rng = random.Random(501)
    for _ in range(30):
        dim = rng.choice((2, 3))
        s = _random_saturated(rng, dim, dim + 2)
        u = random_unimodular(rng, dim)
        assert fingerprint(s) == fingerprint(_twist(s, u))
        assert fingerprint(s).digest() == fingerprint(_twist(s, u)).digest()


def test_fingerprint_separates_easy_cases():
    a = AffineSemigroup(((1, 0), (0, 1)), 2)
    b = AffineSemigroup(((1, 0), (1, 1), (1, 2)), 2)
    assert fingerprint(a) != fingerprint(b)


def test_fingerprint_requires_pointed():
    with pytest.raises(NotPointedError):
        fingerprint(AffineSemigroup(((1,), (-1,)), 1))


def test_fingerprint_bytes_roundtrip_determinism():
    s = AffineSemigroup(((1, 0), (1, 1), (1, 2)), 2)
    fp = fingerprint(s)
    assert fp.to_bytes() == fingerprint(s).to_bytes()
    assert isinstance(fp, Fingerprint)
    assert len(fp.digest()) == 16


def test_find_isomorphism_identity():
    s = AffineSemigroup(((1, 0), (1, 1), (1, 2)), 2)
    cert = find_isomorphism(s, s)
    assert cert is not None
    assert cert.matrix == identity(2)
    assert verify_certificate(s, s, cert)


def test_find_isomorphism_on_twists():
    rng = random.Random(502)
    for _ in range(25):
        dim = rng.choice((2, 3))
        s = _random_saturated(rng, dim, dim + 2)
        u = random_unimodular(rng, dim)
        t = _twist(s, u)
        cert = find_isomorphism(s, t)
        assert cert is not None
        assert verify_certificate(s, t, cert)
        for v, image in cert.mapping:
            assert mat_apply(cert.matrix, v) == image
        # symmetry: the reverse direction also succeeds
        back = find_isomorphism(t, s)
        assert back is not None and verify_certificate(t, s, back)


def test_certificate_inversion_and_composition():
    rng = random.Random(503)
    for _ in range(15):
        dim = rng.choice((2, 3))
        s = _random_saturated(rng, dim, dim + 2)
        u = random_unimodular(rng, dim)
        t = _twist(s, u)
        cert = find_isomorphism(s, t)
        inv = invert_certificate(t, cert)
        assert verify_certificate(t, s, inv)
        assert mat_mul(inv.matrix, cert.matrix) == identity(dim)
        # compose s -> t -> s
        composed = certificate_for_matrix(s, mat_mul(inv.matrix, cert.matrix))
        assert verify_certificate(s, s, composed)


def test_non_equivalent_pairs():
    a = AffineSemigroup(((1, 0), (0, 1)), 2)
    b = AffineSemigroup(((1, 0), (1, 1), (1, 2)), 2)
    assert find_isomorphism(a, b) is None
    c = AffineSemigroup(((1, 0, 0), (0, 1, 0), (0, 0, 1)), 3)
    assert find_isomorphism(a, c) is None  # dimension mismatch
    # same Hilbert count, different facet counts
    d = AffineSemigroup(saturation_hilbert_basis(Cone(((1, 0), (1, 3)), 2)), 2)
    e = AffineSemigroup(((1, 0), (1, 1), (0, 1), (2, 1)), 2)
    if len(d.hilbert_basis()) == len(e.hilbert_basis()):
        assert find_isomorphism(d, e) is None


def test_verify_certificate_rejects_bad_input():
    s = AffineSemigroup(((1, 0), (0, 1)), 2)
    good = find_isomorphism(s, s)
    doubled = tuple(tuple(2 * x for x in col) for col in good.matrix)
    assert not verify_certificate(s, s, IsoCertificate(doubled, good.mapping))
    swapped = IsoCertificate(good.matrix, tuple((v, (9, 9)) for v, _ in good.mapping))
    assert not verify_certificate(s, s, swapped)
    t = AffineSemigroup(((1, 0, 0), (0, 1, 0), (0, 0, 1)), 3)
    assert not verify_certificate(s, t, good)


def test_embedded_loop_pair():
    s = fixtures.source_semigroup()
    ch = chart(s, fixtures.chart_subset_vectors(), 3, normalize=False)
    cert = find_isomorphism(s, ch.chart_semigroup)
    assert cert is not None
    assert verify_certificate(s, ch.chart_semigroup, cert)
    fixture_cert = certificate_for_matrix(s, fixtures.LOOP_MATRIX)
    assert verify_certificate(s, ch.chart_semigroup, fixture_cert)


def test_fingerprint_mismatch_blocks_search():
    # hilbert-count mismatch returns before any backtracking
    a = AffineSemigroup(((1, 0), (0, 1)), 2)
    b = AffineSemigroup(((1, 0), (1, 1), (1, 2)), 2)
    assert fingerprint(a).hilbert_count != fingerprint(b).hilbert_count
