import random

import pytest

from swapkit.formula import (Binary, ParseError, Signature, Unary, Var, circ,
                             conj, disj, imp, match_schema, neg, parse,
                             subformula_closure, substitute, to_text)
from helpers import naive_subformulas, random_formula

p, q, r = Var("p"), Var("q"), Var("r")


def test_parse_atomic():
    assert parse("p") == p


def test_parse_gentle_explosion_instance():
    # @p -> (p -> (~p -> q)), instantiating the gentle-explosion schema
    got = parse("@p -> (p -> (~p -> q))")
    assert got == imp(circ(p), imp(p, imp(neg(p), q)))


def test_parse_precedence_and_over_or():
    assert parse("p & q | r") == disj(conj(p, q), r)


def test_parse_unary_binds_tightest():
    assert parse("~p & q") == conj(neg(p), q)
    assert parse("~(p & q)") == neg(conj(p, q))
    assert parse("~~p") == neg(neg(p))


def test_imp_right_associative():
    assert parse("p -> q -> r") == imp(p, imp(q, r))


def test_iff_desugars():
    assert parse("p <-> q") == conj(imp(p, q), imp(q, p))
    # the AST never contains a biconditional node
    assert "<->" not in to_text(parse("p <-> q"))


def test_parse_errors_carry_offset():
    with pytest.raises(ParseError) as err:
        parse("p & ")
    assert err.value.position == 4
    with pytest.raises(ParseError):
        parse("p $ q")
    with pytest.raises(ParseError):
        parse("(p & q")
    with pytest.raises(ParseError):
        parse("p q")


def test_signature_disjoint_arities():
    with pytest.raises(ValueError):
        Signature(unary=("~",), binary=("~", "&"))


def test_roundtrip_random_asts():
    rng = random.Random(7)
    for _ in range(400):
        f = random_formula(rng, ["p", "q", "r", "s"], 8)
        assert parse(to_text(f)) == f


def test_subformula_closure_direct_listing():
    got = subformula_closure([parse("p | ~p")])
    assert got == [p, neg(p), disj(p, neg(p))]


def test_subformula_closure_dedups():
    assert subformula_closure([p, p]) == [p]


def test_subformula_closure_against_naive_recomputation():
    f = parse("@p -> q")
    got = subformula_closure([f])
    assert set(got) == naive_subformulas(f)
    assert len(got) == len(set(got))
    rng = random.Random(21)
    for _ in range(100):
        fs = [random_formula(rng, ["a", "b", "c"], 5) for _ in range(3)]
        got = subformula_closure(fs)
        want = set()
        for g in fs:
            want |= naive_subformulas(g)
        assert set(got) == want
        # children first
        position = {g: i for i, g in enumerate(got)}
        for g in got:
            if isinstance(g, Unary):
                assert position[g.child] < position[g]
            elif isinstance(g, Binary):
                assert position[g.left] < position[g]
                assert position[g.right] < position[g]


def test_match_schema_simple():
    schema = parse("A -> (B -> A)")
    assert match_schema(schema, parse("p -> (q -> p)")) == {"A": p, "B": q}


def test_match_schema_shape_mismatch():
    assert match_schema(parse("A -> (B -> A)"), parse("p -> q")) is None


def test_match_schema_repeated_metavariable():
    schema = parse("A | ~A")
    assert match_schema(schema, parse("(p & q) | ~(p & q)")) == {"A": conj(p, q)}
    assert match_schema(schema, parse("(p & q) | ~(p & r)")) is None


def test_formula_corpus_file_roundtrips():
    # one UTF-8 formula per line, the on-disk exchange format
    from pathlib import Path
    lines = (Path(__file__).parent / "formulas.txt").read_text("utf-8")
    count = 0
    for line in lines.splitlines():
        if not line.strip():
            continue
        f = parse(line)
        assert parse(to_text(f)) == f
        count += 1
    assert count >= 10


def test_match_schema_roundtrip_random():
    rng = random.Random(5)
    schema = parse("(A -> (B -> C)) -> ((A -> B) -> (A -> C))")
    for _ in range(200):
        binding = {m: random_formula(rng, ["x", "y"], 4) for m in "ABC"}
        inst = substitute(schema, binding)
        assert match_schema(schema, inst) == binding
