import pytest
from conftest import group
from hypothesis import given
from hypothesis import strategies as st

from ctlab.corpus import (
    default_corpus_text,
    load_corpus,
    parse_corpus_text,
    parse_group_spec,
    parse_spec,
    resolve,
)
from ctlab.errors import InputError, ResourceError, SpecSyntaxError
from ctlab.permgroup import CAPS


def test_trivial_group():
    assert parse_group_spec("C1").order == 1


def test_s5():
    G = parse_group_spec("S5")
    assert G.order == 120 and G.classes.k == 7


def test_explicit_generators():
    G = parse_group_spec("perm:3:[(1 2);(1 2 3)]")
    assert G.order == 6 and G.degree == 3


@pytest.mark.parametrize(
    "spec, order",
    [("C9", 9), ("D14", 14), ("D4", 4), ("Q12", 12), ("Q16", 16), ("S4", 24), ("A4", 12), ("A5", 60),
     ("SL23", 24), ("F20", 20), ("C2xS3", 12), ("C3xS3xC2", 36)],
)
def test_family_orders(spec, order):
    assert parse_group_spec(spec).order == order


def test_dicyclic_has_unique_involution():
    for spec in ("Q8", "Q12", "Q16"):
        G = parse_group_spec(spec)
        assert (G.element_orders == 2).sum() == 1


def test_sl23_is_not_s4():
    assert parse_group_spec("SL23").classes.k == 7
    assert (parse_group_spec("SL23").element_orders == 2).sum() == 1


def test_direct_product_multiplies_order_and_classes():
    for a, b in [("S3", "C3"), ("Q8", "C2"), ("A4", "C2"), ("D10", "S3")]:
        A, B, P = group(a), group(b), parse_group_spec(f"{a}x{b}")
        assert P.order == A.order * B.order
        assert P.classes.k == A.classes.k * B.classes.k


@pytest.mark.parametrize(
    "text, position",
    [("", 0), ("X3", 0), ("S", 1), ("C0", 1), ("D7", 1), ("Q6", 1), ("S3x", 3), ("S3*C2", 2),
     ("perm:3:[(1 4)]", 11), ("perm:3:[(1 2 1)]", 13), ("perm:0:[]", 5), ("perm:3:[(1 2]", 12)],
)
def test_syntax_errors_carry_position(text, position):
    with pytest.raises(SpecSyntaxError) as exc:
        parse_group_spec(text)
    assert exc.value.position == position


def test_order_cap(monkeypatch):
    monkeypatch.setattr(CAPS, "max_order", 100)
    with pytest.raises(ResourceError):
        parse_group_spec("S5")


@given(
    st.lists(
        st.one_of(
            st.builds(lambda n: f"C{n}", st.integers(1, 6)),
            st.builds(lambda n: f"D{2 * n}", st.integers(1, 5)),
            st.builds(lambda n: f"S{n}", st.integers(1, 4)),
            st.sampled_from(["Q8", "A4", "F20", "perm:4:[(1 2)(3 4);(1 3)]"]),
        ),
        min_size=1,
        max_size=2,
    )
)
def test_render_round_trip(factors):
    text = "x".join(factors)
    spec = parse_spec(text)
    again = parse_spec(spec.render())
    assert again == spec
    G, H = resolve(spec), resolve(again)
    assert G.key == H.key


def test_render_normalizes_explicit_cycles():
    spec = parse_spec("perm:4:[ (1 2)(3) ; (2 3 4) ]")
    assert spec.render() == "perm:4:[(1 2);(2 3 4)]"


# -- corpus files ------------------------------------------------------------------


def test_empty_corpus(tmp_path):
    f = tmp_path / "empty.txt"
    f.write_text("")
    assert load_corpus(f) == []


def test_two_group_corpus(tmp_path):
    f = tmp_path / "two.txt"
    f.write_text("S3\n# comment\n\nQ8  # trailing comment\n")
    got = load_corpus(f)
    assert [(n, G.order) for n, G in got] == [("S3", 6), ("Q8", 8)]


def test_named_entries(tmp_path):
    f = tmp_path / "named.txt"
    f.write_text("sym3 = perm:3:[(1 2);(1 2 3)]\n")
    [(name, G)] = load_corpus(f)
    assert name == "sym3" and G.order == 6


def test_duplicate_name_reports_line():
    with pytest.raises(InputError, match=r":3: duplicate name 'S3' \(first on line 1\)"):
        parse_corpus_text("S3\nQ8\nS3\n")


def test_bad_line_reports_line_number():
    with pytest.raises(InputError, match=r"c.txt:2:"):
        parse_corpus_text("S3\nS3x\n", "c.txt")


def test_default_corpus_contents():
    entries = parse_corpus_text(default_corpus_text())
    names = [n for n, _ in entries]
    for required in ["C2", "C12", "C2xC2", "C2xC4", "D6", "D24", "Q8", "Q16", "S3", "S6", "A4", "A5",
                     "SL23", "F20", "C2xS3", "C3xS3", "C2xA4", "C2xQ8"]:
        assert required in names
    assert all(f"D{n}" in names for n in range(6, 25, 2))
    assert all(f"C{n}" in names for n in range(2, 13))
    for _, spec in entries:
        expected = spec.expected_order()
        if expected is not None:
            assert resolve(spec).order == expected
