from fractions import Fraction

import pytest

from quivrad.errors import NotAdmissibleError, ParseError
from quivrad.quiver import (
    Path,
    classify,
    parse_presentation,
    path_basis,
    sinks_and_sources,
    validate_admissible,
    zero_relation_vertices,
)

from conftest import load


def brute_force_nonzero_paths(pres, max_len=12):
    """Oracle for monomial ideals: composable words avoiding relation subwords."""
    rel_words = [tuple(r.terms[0][1].arrows) for r in pres.relations]
    assert all(r.is_zero_relation() for r in pres.relations)
    out = {(v, ()) for v in pres.quiver.vertices}
    frontier = [(v, ()) for v in pres.quiver.vertices]
    for _ in range(max_len):
        nxt = []
        for (start, word) in frontier:
            at = start
            for name in word:
                at = pres.quiver.arrow(name).target
            for arr in pres.quiver.out_arrows(at):
                w = word + (arr.name,)
                if any(w[k:k + len(r)] == r for r in rel_words for k in range(len(w) - len(r) + 1)):
                    continue
                nxt.append((start, w))
        out.update(nxt)
        frontier = nxt
        if not frontier:
            break
    return out


def test_s2_parse_shape():
    pres = load("s2_cyclic")
    assert len(pres.quiver.vertices) == 3
    assert len(pres.quiver.arrows) == 3
    assert len(pres.relations) == 1
    rel = pres.relations[0]
    assert rel.is_zero_relation()
    assert rel.terms[0][1].length == 3


def test_vertices_only_is_semisimple():
    pres = parse_presentation("vertex 1 2 3\n")
    rep = validate_admissible(pres)
    assert rep.algebra_dim == 3
    assert rep.nilpotency_degree == 1
    assert rep.longest_path_length == 0


def test_ex25_parse_shape():
    pres = load("ex_2_5")
    assert len(pres.quiver.vertices) == 10
    comm = [r for r in pres.relations if len(r.terms) == 2]
    zeros = [r for r in pres.relations if r.is_zero_relation()]
    assert len(comm) == 1 and len(zeros) == 2
    c1, c2 = (c for c, _ in comm[0].terms)
    assert c1 + c2 == 0


def test_rational_coefficients_parse():
    pres = parse_presentation(
        "vertex 1 2 3\narrow p 1 2\narrow q 2 3\narrow r 1 3\n"
        "relation 3/2*p*q - r  # mixed lengths\n")
    (ca, pa), (cb, pb) = pres.relations[0].terms
    assert ca == Fraction(3, 2) and cb == -1
    assert pa.arrows == ("p", "q") and pb.arrows == ("r",)


@pytest.mark.parametrize("text,fragment", [
    ("vertex 1\nvertex 1\n", "duplicate vertex"),
    ("vertex 1 2\narrow a 1 2\narrow a 1 2\n", "duplicate arrow"),
    ("vertex 1 2\narrow a 1 3\n", "unknown vertex"),
    ("vertex 1 2\narrow a 1 2\nrelation a*b\n", "unknown arrow"),
    ("vertex 1 2\narrow a 1 2\nrelation a*a\n", "compose"),
    ("vertex 1 2 3\narrow a 1 2\narrow b 1 3\nrelation a - b\n", "parallel"),
    ("vertex 1 2\narrow a 1 2\nrelation 2*\n", "path"),
    ("vertex 1 2\narrow a 1 2\nrelation a ?\n", "unexpected character"),
    ("vertex 1 2\nbogus a\n", "unknown statement"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as err:
        parse_presentation(text)
    assert fragment in str(err.value)


def test_parse_error_carries_line_and_column():
    with pytest.raises(ParseError) as err:
        parse_presentation("vertex 1 2\narrow a 1 2\nrelation a ?\n")
    assert err.value.line == 3
    assert err.value.column is not None


def test_s2_admissibility_profile():
    # oracle: enumerate composable words without the relation subword by hand
    pres = load("s2_cyclic")
    words = brute_force_nonzero_paths(pres)
    longest = max(len(w) for _, w in words)
    assert longest == 3
    report = validate_admissible(pres)
    assert report.longest_path_length == longest
    assert report.nilpotency_degree == longest + 1
    assert report.algebra_dim == len(words)  # monomial: surviving words are a basis


def test_single_arrow_relation_not_admissible():
    with pytest.raises(NotAdmissibleError):
        validate_admissible(load("bad_length1"))


def test_loop_without_relation_not_admissible():
    pres = parse_presentation("vertex 1\narrow rho 1 1\n")
    with pytest.raises(NotAdmissibleError):
        validate_admissible(pres, max_len=16)


def test_path_basis_s2():
    pres = load("s2_cyclic")
    basis11 = path_basis(pres, "1", "1")
    assert [str(p) for p in basis11] == ["e_1", "alpha*beta"]
    assert path_basis(pres, "3", "1") == []


def test_path_basis_ex25_identifies_parallel_paths():
    pres = load("ex_2_5")
    assert len(path_basis(pres, "1", "4")) == 1
    # the two parallel routes 1 -> 3 are identified by the commutativity relation
    assert len(path_basis(pres, "1", "3")) == 1


def test_path_basis_dims_sum_to_algebra_dim():
    for name in ("s2_cyclic", "ex_2_5", "s3_cycle", "ex_4_5"):
        pres = load(name)
        report = validate_admissible(pres)
        total = sum(len(path_basis(pres, i, j))
                    for i in pres.quiver.vertices for j in pres.quiver.vertices)
        assert total == report.algebra_dim


def test_sinks_and_sources():
    sinks, sources, middle = sinks_and_sources(load("ex_2_5").quiver)
    assert set(sinks) == {"7", "10"}
    assert set(sources) == {"1"}
    assert set(middle) == {"2", "3", "4", "5", "6", "8", "9"}

    single = parse_presentation("vertex 1\n").quiver
    sinks, sources, middle = sinks_and_sources(single)
    assert sinks == ("1",) and sources == ("1",) and middle == ()

    sinks, sources, middle = sinks_and_sources(load("s2_cyclic").quiver)
    assert set(middle) == {"1", "2"} and sinks == ("3",) and sources == ()


def test_zero_relation_vertices():
    assert zero_relation_vertices(load("s2_cyclic")) == ("1", "2")
    assert set(zero_relation_vertices(load("ex_2_5"))) == {"6", "9"}
    assert set(zero_relation_vertices(load("s3_cycle"))) == {"1", "2", "3"}
    only_comm = parse_presentation(
        "vertex 1 2 3\narrow a 1 2\narrow b 2 3\narrow c 1 3\nrelation a*b - c\n")
    assert zero_relation_vertices(only_comm) == ()


def test_classify_ex45_grafo():
    cls = classify(load("ex_4_5"))
    assert not cls.is_monomial
    shape = cls.toupie
    assert shape is not None and shape.grafo is not None
    g = shape.grafo
    zero_branch = shape.branches[g.zero_branch]
    assert zero_branch.vertices == ("2", "3")
    assert g.n3 == 2 and (g.j, g.t) == (1, 2)
    assert sorted((g.n1, g.n2)) == [1, 1]


def test_classify_s2_monomial_not_toupie():
    cls = classify(load("s2_cyclic"))
    assert cls.is_monomial
    assert cls.toupie is None


def test_classify_ex25_neither():
    cls = classify(load("ex_2_5"))
    assert not cls.is_monomial
    assert cls.toupie is None


def test_classify_final_toupie_without_grafo():
    cls = classify(load("s4_final"))
    assert cls.toupie is not None
    assert cls.toupie.grafo is None  # three relations: not the one-zero-relation pattern


def test_classify_linear_quiver_is_not_toupie():
    assert classify(load("a3")).toupie is None


def test_path_composition_associative_and_unital():
    quiver = load("s2_cyclic").quiver
    p = Path(quiver, "1", ("alpha",))
    q = Path(quiver, "2", ("beta",))
    r = Path(quiver, "1", ("alpha", "gamma"))
    left = p.then(q).then(Path(quiver, "1", ("alpha", "gamma")).then(Path(quiver, "3")))
    right = p.then(q.then(r))
    assert left == right
    assert p.then(Path(quiver, "2")) == p
    assert Path(quiver, "1").then(p) == p


def test_path_display_orders():
    quiver = load("s2_cyclic").quiver
    p = Path(quiver, "1", ("alpha", "beta"))
    assert str(p) == "alpha*beta"      # traversal order
    assert p.rtl() == "beta*alpha"     # classical right-to-left notation
