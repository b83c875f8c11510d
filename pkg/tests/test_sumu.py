import importlib

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circhopf.arith import Laurent
from circhopf.sumu import (
    IDENTITIES,
    NCPoly,
    Rewriter,
    SUmu,
    Tensor,
    canonical_keys,
    confluence_sweep,
    key_name,
    product_crosscheck,
    termination_sweep,
    verify,
    verify_all,
)
from circhopf.sumu.poly import word_key

verify_module = importlib.import_module("circhopf.sumu.verify")

s = Laurent.monomial(1)
ONE = Laurent.monomial(0)


@pytest.fixture(scope="module", params=[1, -1], ids=["mu+", "mu-"])
def H(request):
    return SUmu(request.param)


def poly(H, terms):
    return NCPoly(H.alg, {word_key(w): Laurent.lift(c) for w, c in terms.items()})


def tensor(H, terms):
    return Tensor(H.alg, {(word_key(x), word_key(y)): Laurent.lift(c) for (x, y), c in terms.items()})


# -- canonical forms -----------------------------------------------------------


def test_canonical_basis_counts():
    # degree-d words: a^k c^m C^n (k+m+n = d) plus A^k c^m C^n (k >= 1)
    for d in range(5):
        keys = [k for k in canonical_keys(d) if sum(abs(x) for x in k) == d]
        expected = (d + 1) * (d + 2) // 2 + d * (d + 1) // 2
        assert len(keys) == expected
    assert key_name(word_key("AAcC")) == "ahat^2*c*cstar"


def test_relation_ahat_a(H):
    mu = H.mu
    assert Rewriter(H.sign).normalize("Aa") == poly(H, {"": ONE, "cC": mu})


def test_relation_a_ahat(H):
    mu = H.mu
    assert Rewriter(H.sign).normalize("aA") == poly(H, {"": ONE, "cC": mu ** 3})


def test_relation_c_a(H):
    assert Rewriter(H.sign).normalize("ca") == poly(H, {"ac": H.mu ** -1})
    assert Rewriter(H.sign).normalize("Cc") == poly(H, {"cC": ONE})


def test_rewriter_agrees_with_product(H):
    rw = Rewriter(H.sign)
    for w in ("CAa", "cAca", "AaAa", "CcaA"):
        assert rw.normalize(w) == H.word(w)


def test_measure_decreases_on_each_rule(H):
    rw = Rewriter(H.sign)
    for w in ("Aa", "aA", "Cc", "ca", "Ca", "cA", "CA", "CcAa"):
        for pos in rw.redexes(w):
            for _, out in rw.rewrite_at(w, pos):
                assert rw.measure(out) < rw.measure(w)


@settings(max_examples=40, deadline=None)
@given(st.text(alphabet="aAcC", max_size=6), st.text(alphabet="aAcC", max_size=6))
def test_normal_form_is_multiplicative(u, v):
    H = SUmu(1)
    assert H.word(u + v) == H.word(u) * H.word(v)


# -- structure maps ----------------------------------------------------------------


def test_coproduct_on_generators(H):
    mu = H.mu
    assert H.delta(H.gen("a")) == tensor(H, {("a", "a"): ONE, ("C", "c"): mu ** 2})
    assert H.delta(H.gen("c")) == tensor(H, {("c", "a"): ONE, ("A", "c"): ONE})
    assert H.delta(H.word("")) == tensor(H, {("", ""): ONE})


@settings(max_examples=25, deadline=None)
@given(st.text(alphabet="aAcC", max_size=4), st.text(alphabet="aAcC", max_size=4))
def test_coproduct_is_multiplicative(u, v):
    H = SUmu(-1)
    assert H.delta(H.word(u + v)) == H.delta(H.word(u)) * H.delta(H.word(v))


def test_antipode_values(H):
    mu = H.mu
    assert H.antipode(H.gen("C")) == H.gen("C") * (-(mu ** -1))
    assert H.antipode(H.antipode(H.gen("c"))) == H.gen("c") * mu ** 2
    assert H.circ_poly(H.gen("c")) == H.gen("C")


def test_antipode_axiom_by_hand(H):
    # S(c) a + S(ahat) c = -mu c a + a c = 0
    lhs = H.antipode(H.gen("c")) * H.gen("a") + H.antipode(H.gen("A")) * H.gen("c")
    assert lhs.is_zero()


def test_functional_values(H):
    assert H.functional_theta(H.gen("A")) == s ** 2
    assert H.functional_beta(H.word("aa")) == s ** -2
    assert H.functional_theta(H.word("ca")) == Laurent()
    assert H.functional_beta(H.gen("c")) == Laurent()


def test_convolution_examples(H):
    c = H.gen("c")
    assert H.convolve(H.eps, None)(c) == c
    assert H.convolve(H.beta, H.beta_power(-1))(c) == c * s ** 2
    theta_s = H.theta.after(H.antipode)
    assert H.convolve(H.theta, theta_s)(c) == c * H.mu ** 2


def test_named_operator_values(H):
    a, A, c = H.gen("a"), H.gen("A"), H.gen("c")
    assert H.positive_antipode()(a) == a
    assert H.positive_antipode()(c) == c * s ** 2
    assert H.nakayama()(a) == a * H.mu ** -2
    assert H.nakayama_sqrt()(a) == a * s ** -2
    assert H.unitary_antipode()(a) == A * s ** 2
    assert H.unitary_antipode()(c) == c * (-H.sign)


# -- verification catalog -------------------------------------------------------------


def test_identity_catalog_names():
    assert set(IDENTITIES) == {
        "hopf-axioms", "circ-hopf", "s2-theta", "splus", "nakayama",
        "psqrt", "unitary", "deltaN", "radford",
    }


def test_hopf_axioms_degree_one():
    assert verify("hopf-axioms", 1).ok


@pytest.mark.parametrize("sign", [1, -1])
def test_all_identities_degree_four(sign):
    results = verify_all(4, sign)
    assert [r.identity for r in results] == list(IDENTITIES)
    bad = [(r.identity, r.witness) for r in results if not r.ok]
    assert not bad


def test_unknown_identity():
    with pytest.raises(KeyError):
        verify("no-such-identity", 2)


def test_negative_control_names_witness(monkeypatch):
    class Sabotaged(SUmu):
        def __init__(self, sign):
            super().__init__(sign)
            self.theta = self.beta  # wrong character in S^2 = theta * id * theta S

    monkeypatch.setattr(verify_module, "SUmu", Sabotaged)
    res = verify("s2-theta", 3, 1)
    assert not res.ok
    witnesses = {c.name: c.witness for c in res.checks}
    assert witnesses == {"theta-generator-values": "a", "S2-equals-theta-id-thetaS": "c"}


# -- rewriting system properties ------------------------------------------------------


@pytest.mark.parametrize("sign", [1, -1])
def test_termination_sweep(sign):
    chk = termination_sweep(sign, samples=10_000, max_length=12, seed=0)
    assert chk.ok and chk.checked == 10_000


@pytest.mark.parametrize("sign", [1, -1])
def test_local_confluence_to_length_eight(sign):
    chk = confluence_sweep(sign, max_length=8)
    assert chk.ok, chk.witness


@pytest.mark.parametrize("sign", [1, -1])
def test_closed_form_product_matches_rewriting(sign):
    assert product_crosscheck(sign, degree=4).ok
