import itertools

import numpy as np
import pytest

from revlogic.vword import ALPHABET, monoid_closure, rewrite_vword

# target-line action of each letter when the control is 1
V = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])
MATRICES = {"v": V, "u": V.conj().T, "N": np.array([[0, 1], [1, 0]], dtype=complex)}


def word_matrix(word):
    m = np.eye(2, dtype=complex)
    for sym in word:
        m = m @ MATRICES[sym]
    return m


def test_oracle_is_a_square_root_of_not():
    assert np.allclose(V @ V, MATRICES["N"], atol=1e-12)


@pytest.mark.parametrize("word, expected", [
    ("vv", ("N",)), ("uu", ("N",)),
    ("uv", ()), ("vu", ()),
    ("vN", ("u",)), ("Nv", ("u",)),
    ("uN", ("v",)), ("Nu", ("v",)),
    ("NN", ()),
    ("vNv", ()),
    ("vvvv", ()),
])
def test_identities(word, expected):
    assert rewrite_vword(word) == expected


def test_closure_has_four_elements():
    assert monoid_closure() == {(), ("v",), ("u",), ("N",)}


def test_rewrite_agrees_with_matrices():
    for n in range(0, 7):
        for word in itertools.product(ALPHABET, repeat=n):
            nf = rewrite_vword(word)
            assert len(nf) <= 1
            assert np.max(np.abs(word_matrix(word) - word_matrix(nf))) < 1e-12


def test_rejects_unknown_symbols():
    with pytest.raises(ValueError):
        rewrite_vword("vx")
