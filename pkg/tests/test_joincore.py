"""Scheme-level tests: vector layout, tag laws, match vs plaintext oracle."""

import random

import pytest

from securejoin.algebra.matrix import determinant
from securejoin.errors import FingerprintMismatchError, ParameterError
from securejoin.fhipe import ipe_token
from securejoin.joincore import (
    UNCONSTRAINED,
    JoinQuery,
    PlainRow,
    PlainTable,
    SchemeParams,
    SelectionClause,
    TableSchema,
    TableToken,
    build_query_vector,
    build_row_vector,
    oracle_join,
    sj_decrypt_table,
    sj_encrypt_row,
    sj_encrypt_table,
    sj_match,
    sj_run_query,
    sj_setup,
    sj_token_gen,
)
from securejoin.joincore.model import Tag
from securejoin.predicate import embed_attr, eval_poly, hash_join_value
from securejoin.tabledata import gen_random_instance




def inner(u, v, q):
    return sum(a * b for a, b in zip(u, v)) % q


class TestParams:
    @pytest.mark.parametrize("m,t,n", [(1, 1, 5), (2, 1, 7), (8, 10, 91)])
    def test_dimension(self, m, t, n):
        assert SchemeParams(m=m, t=t).n == n

    def test_bad_params(self):
        with pytest.raises(ParameterError):
            SchemeParams(m=0, t=1)
        with pytest.raises(ParameterError):
            SchemeParams(m=1, t=0)

    def test_clause_bounds(self):
        params = SchemeParams(m=2, t=2)
        params.check_clause(SelectionClause({1: ("a", "b")}))
        with pytest.raises(ParameterError, match="too many IN values"):
            params.check_clause(SelectionClause({1: ("a", "b", "c")}))
        with pytest.raises(ParameterError):
            params.check_clause(SelectionClause({3: ("a",)}))


class TestVectors:
    def test_row_vector_layout(self, toy101):
        q = toy101.order
        params = SchemeParams(m=1, t=1)
        row = PlainRow(row_id=1, join_value="x", attrs=("u",))
        w = build_row_vector(row, params, q, gamma1=77, gamma2=1)
        assert w == [hash_join_value("x", q), 1, embed_attr(1, "u", q), 77, 0]

    def test_query_vector_unconstrained(self, toy101):
        q = toy101.order
        params = SchemeParams(m=2, t=1)
        v = build_query_vector(9, UNCONSTRAINED, params, q, delta=55, rng=random.Random(0))
        assert v == [9, 0, 0, 0, 0, 0, 55]

    def test_query_vector_single_constrained_block(self, toy101):
        # one constrained attribute: key, its t+1 coefficients, zero block
        q = toy101.order
        params = SchemeParams(m=2, t=1)
        clause = SelectionClause({1: ("val",)})
        v = build_query_vector(9, clause, params, q, delta=3, rng=random.Random(1))
        assert len(v) == 7
        assert v[0] == 9
        assert v[3:5] == [0, 0]  # unconstrained attribute block
        assert v[5:] == [0, 3]
        root = embed_attr(1, "val", q)
        assert eval_poly(v[1:3], root, q) == 0

    def test_slot_cancellation(self, toy101):
        # <v, w> must ignore gamma1 and delta entirely
        q = toy101.order
        params = SchemeParams(m=2, t=2)
        row = PlainRow(row_id=1, join_value="j", attrs=("p", "r"))
        clause = SelectionClause({2: ("r", "s")})
        rng = random.Random(2)
        base = None
        for gamma1, delta in [(0, 0), (13, 77), (100, 1)]:
            w = build_row_vector(row, params, q, gamma1=gamma1, gamma2=5)
            v = build_query_vector(7, clause, params, q, delta=delta, rng=random.Random(3))
            got = inner(v, w, q)
            base = got if base is None else base
            assert got == base

    def test_inner_product_law(self, toy101):
        # <v, w> = k*H(join) + gamma2 * sum_i P_i(a_i), checked in the clear
        q = toy101.order
        params = SchemeParams(m=3, t=2)
        rng = random.Random(4)
        row = PlainRow(row_id=1, join_value="jv", attrs=("x1", "x2", "x3"))
        clause = SelectionClause({1: ("x1",), 3: ("other", "misc")})
        k, gamma2 = 11, 29
        w = build_row_vector(row, params, q, gamma1=rng.randrange(q), gamma2=gamma2)
        v = build_query_vector(k, clause, params, q, delta=rng.randrange(q), rng=rng)
        poly_sum = 0
        for i in range(1, 4):
            coeffs = v[1 + (i - 1) * 3 : 1 + i * 3]
            poly_sum += eval_poly(coeffs, embed_attr(i, row.attrs[i - 1], q), q)
        want = (k * hash_join_value("jv", q) + gamma2 * poly_sum) % q
        assert inner(v, w, q) == want

    def test_zero_k_rejected(self, toy101):
        params = SchemeParams(m=1, t=1)
        with pytest.raises(ParameterError):
            build_query_vector(0, UNCONSTRAINED, params, toy101.order, 1, random.Random(0))


class TestEncryption:
    def test_probabilistic(self, toy_big):
        rng = random.Random(5)
        _, msk, params = sj_setup(toy_big, 1, 1, rng)
        row = PlainRow(row_id=1, join_value="a", attrs=("b",))
        c1 = sj_encrypt_row(msk, params, row, rng)
        c2 = sj_encrypt_row(msk, params, row, rng)
        assert c1.cipher != c2.cipher
        assert len(c1.cipher) == params.n

    def test_reencrypted_table_has_no_repeated_vectors(self, toy_big):
        rng = random.Random(6)
        table, _, _ = gen_random_instance(seed=7, n_rows=12, m=2, t=2, join_domain=3)
        _, msk, params = sj_setup(toy_big, 2, 2, rng)
        enc1 = sj_encrypt_table(msk, params, table, rng)
        enc2 = sj_encrypt_table(msk, params, table, rng)
        blobs = set()
        for enc in (enc1, enc2):
            for row in enc.rows:
                blobs.add(b"".join(toy_big.g2_to_bytes(e) for e in row.cipher))
        assert len(blobs) == 24

    def test_schema_mismatch(self, toy101):
        rng = random.Random(7)
        _, msk, params = sj_setup(toy101, 2, 1, rng)
        row = PlainRow(row_id=1, join_value="a", attrs=("only-one",))
        with pytest.raises(ParameterError):
            sj_encrypt_row(msk, params, row, rng)


class TestTagLaws:
    def satisfying_setup(self, suite, seed):
        rng = random.Random(seed)
        pp, msk, params = sj_setup(suite, 2, 2, rng)
        row = PlainRow(row_id=1, join_value="teams-1", attrs=("alpha", "beta"))
        clause = SelectionClause({1: ("alpha", "other")})
        return rng, pp, msk, params, row, clause

    def test_satisfying_row_tag_is_key_times_hash(self, toy_big):
        # tag exponent = det(B) * k * H(join) whenever the clause is hit
        suite = toy_big
        rng, pp, msk, params, row, clause = self.satisfying_setup(suite, 8)
        q = suite.order
        k = 12345
        v = build_query_vector(k, clause, params, q, delta=rng.randrange(q), rng=rng)
        token = TableToken(table_id="A", elems=tuple(ipe_token(msk, v)))
        enc = sj_encrypt_row(msk, params, row, rng)
        det = determinant([list(r) for r in msk.b], q)
        want = suite.gt_exp_of(suite.gt_gen(), det * k * hash_join_value("teams-1", q) % q)
        tag_bytes = sj_decrypt_table(
            suite,
            token,
            _one_row_table(params, suite, msk.fingerprint, enc),
            "q",
        )[0].value
        assert tag_bytes == suite.gt_to_bytes(want)

    def test_non_satisfying_row_tag_randomized(self, toy_big):
        suite = toy_big
        rng, pp, msk, params, row, _ = self.satisfying_setup(suite, 9)
        q = suite.order
        clause_miss = SelectionClause({1: ("nothere",)})
        k = 54321
        v = build_query_vector(k, clause_miss, params, q, delta=rng.randrange(q), rng=rng)
        token = TableToken(table_id="A", elems=tuple(ipe_token(msk, v)))
        enc = sj_encrypt_row(msk, params, row, rng)
        det = determinant([list(r) for r in msk.b], q)
        clean = suite.gt_exp_of(suite.gt_gen(), det * k * hash_join_value("teams-1", q) % q)
        tag_bytes = sj_decrypt_table(
            suite, token, _one_row_table(params, suite, msk.fingerprint, enc), "q"
        )[0].value
        assert tag_bytes != suite.gt_to_bytes(clean)

    def test_same_row_different_queries_differ(self, toy_big):
        suite = toy_big
        rng = random.Random(10)
        _, msk, params = sj_setup(suite, 1, 1, rng)
        table = PlainTable(
            schema=TableSchema(table_id="A", join_attr="j", attr_names=("a1",)),
            rows=(PlainRow(row_id=1, join_value="x", attrs=("y",)),),
        )
        enc = sj_encrypt_table(msk, params, table, rng)
        query = JoinQuery(query_id="q", clause_a=UNCONSTRAINED, clause_b=UNCONSTRAINED)
        tags = []
        for attempt in range(2):
            pair = sj_token_gen(msk, params, query, rng)
            tags.append(sj_decrypt_table(suite, pair.token_a, enc, f"q{attempt}")[0].value)
        assert tags[0] != tags[1]


def _one_row_table(params, suite, fingerprint, enc_row):
    from securejoin.joincore.model import EncryptedTable

    return EncryptedTable(
        table_id="A",
        params=params,
        suite_name=suite.name,
        fingerprint=fingerprint,
        rows=(enc_row,),
    )


class TestMatchAndOracle:
    def test_oracle_demo_queries(self, demo):
        teams, employees, queries = demo
        r1 = oracle_join(teams, employees, queries[0])
        assert r1.join_pairs == ((1, 2),)
        assert r1.groups == ((("Employees", 2), ("Teams", 1)),)
        r2 = oracle_join(teams, employees, queries[1])
        assert r2.join_pairs == ((2, 3),)

    def test_oracle_unconstrained_cross_product(self, demo):
        teams, employees, _ = demo
        query = JoinQuery(query_id="all", clause_a=UNCONSTRAINED, clause_b=UNCONSTRAINED)
        result = oracle_join(teams, employees, query)
        assert result.join_pairs == ((1, 1), (1, 2), (2, 3), (2, 4))
        # intra-table co-members surface through the groups
        assert result.groups == (
            (("Employees", 1), ("Employees", 2), ("Teams", 1)),
            (("Employees", 3), ("Employees", 4), ("Teams", 2)),
        )

    def test_oracle_empty_tables(self):
        schema_a = TableSchema(table_id="A", join_attr="j", attr_names=("x",))
        schema_b = TableSchema(table_id="B", join_attr="j", attr_names=("x",))
        query = JoinQuery(query_id="e", clause_a=UNCONSTRAINED, clause_b=UNCONSTRAINED)
        result = oracle_join(
            PlainTable(schema_a, ()), PlainTable(schema_b, ()), query
        )
        assert result.join_pairs == ()
        assert result.groups == ()

    def test_match_disjoint_tags_empty(self):
        tags_a = [Tag(value=b"aa", table_id="A", row_id=1, query_id="q")]
        tags_b = [Tag(value=b"bb", table_id="B", row_id=1, query_id="q")]
        result = sj_match(tags_a, tags_b)
        assert result.join_pairs == ()
        assert result.groups == ()

    def test_match_rejects_mixed_queries(self):
        tags_a = [Tag(value=b"aa", table_id="A", row_id=1, query_id="q1")]
        tags_b = [Tag(value=b"aa", table_id="B", row_id=1, query_id="q2")]
        with pytest.raises(ValueError):
            sj_match(tags_a, tags_b)

    def test_demo_pipeline_toy(self, toy_big, demo):
        teams, employees, queries = demo
        rng = random.Random(11)
        _, msk, params = sj_setup(toy_big, 2, 1, rng)
        enc_teams = sj_encrypt_table(msk, params, teams, rng)
        enc_emp = sj_encrypt_table(msk, params, employees, rng)
        for query in queries:
            pair = sj_token_gen(msk, params, query, rng)
            tags_a, tags_b = sj_run_query(toy_big, pair, enc_teams, enc_emp)
            got = sj_match(tags_a, tags_b)
            want = oracle_join(teams, employees, query)
            assert got == want

    def test_fingerprint_mismatch_detected(self, toy_big, demo):
        teams, employees, queries = demo
        rng = random.Random(12)
        _, msk1, params = sj_setup(toy_big, 2, 1, rng)
        _, msk2, _ = sj_setup(toy_big, 2, 1, rng)
        enc = sj_encrypt_table(msk1, params, teams, rng)
        pair = sj_token_gen(msk2, params, queries[0], rng)
        with pytest.raises(FingerprintMismatchError, match="token/table key mismatch"):
            sj_decrypt_table(toy_big, pair.token_a, enc, "t1", pair.fingerprint)


class TestFunctionalEquivalence:
    @pytest.mark.parametrize("seed", range(40, 65))
    def test_pipeline_matches_oracle(self, toy_big, seed):
        rng = random.Random(seed)
        m = rng.randint(1, 3)
        t = rng.randint(1, 4)
        table_a, table_b, query = gen_random_instance(
            seed=seed, n_rows=rng.randint(4, 24), m=m, t=t, join_domain=rng.randint(1, 8)
        )
        _, msk, params = sj_setup(toy_big, m, t, rng)
        enc_a = sj_encrypt_table(msk, params, table_a, rng)
        enc_b = sj_encrypt_table(msk, params, table_b, rng)
        pair = sj_token_gen(msk, params, query, rng)
        tags_a, tags_b = sj_run_query(toy_big, pair, enc_a, enc_b)
        assert sj_match(tags_a, tags_b) == oracle_join(table_a, table_b, query)

    def test_pipeline_matches_oracle_bn256(self, bn256):
        rng = random.Random(70)
        table_a, table_b, query = gen_random_instance(
            seed=70, n_rows=8, m=1, t=2, join_domain=3
        )
        _, msk, params = sj_setup(bn256, 1, 2, rng)
        enc_a = sj_encrypt_table(msk, params, table_a, rng)
        enc_b = sj_encrypt_table(msk, params, table_b, rng)
        pair = sj_token_gen(msk, params, query, rng)
        tags_a, tags_b = sj_run_query(bn256, pair, enc_a, enc_b)
        assert sj_match(tags_a, tags_b) == oracle_join(table_a, table_b, query)
