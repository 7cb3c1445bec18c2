import pytest
from hypothesis import given
from hypothesis import strategies as st

from causaldef.minkowski import EQ, LAM, NE, NTAU, NTAU_NE, SIG, TAU, Point
from causaldef.formulas import (
    And,
    Atom,
    Exists,
    FormulaSyntaxError,
    Not,
    NotQuantifierFree,
    Or,
    UnboundVariable,
    UnknownName,
    UnknownRelation,
    builtin,
    builtin_names,
    classify_prefix,
    count_variables,
    eval_qf,
    free_vars,
    nnf,
    parse,
    swap_time_space,
    to_text,
)

NAMES = (
    "PsiTS PsiTL PsiST PsiSL PsiLS PsiLT Ets Utl Est Usl "
    "EtsHat UtlHat EstHat UslHat Wsl Wst WslMirror WstMirror"
).split()

# (variables, prefix) as tabulated for each formula
CLAIMS = {
    "PsiTS": (4, "A1E1"),
    "PsiST": (4, "A1E1"),
    "PsiTL": (4, "E1A1"),
    "PsiSL": (4, "E1A1"),
    "PsiLS": (4, "E1A1"),
    "PsiLT": (4, "A1E1"),
    "Ets": (6, "E4"),
    "Est": (6, "E4"),
    "Utl": (6, "A4"),
    "Usl": (6, "A4"),
    "EtsHat": (5, "E3"),
    "EstHat": (5, "E3"),
    "UtlHat": (5, "A3"),
    "UslHat": (5, "A3"),
    "Wsl": (6, "A2E2"),
    "Wst": (6, "E2A2"),
    "WslMirror": (6, "A2E2"),
    "WstMirror": (6, "E2A2"),
}


def test_builtin_names():
    assert sorted(builtin_names()) == sorted(NAMES)
    with pytest.raises(UnknownName):
        builtin("Nope")


def test_parse_atom():
    assert parse("x tau y") == Atom("x", TAU, "y")


def test_parse_inner_block():
    f = parse("exists u (u tau z & u ntau x & u ntau y)")
    assert isinstance(f, Exists)
    assert classify_prefix(f).name == "E1"
    assert count_variables(f) == 4
    assert set(free_vars(f)) == {"x", "y", "z"}


def test_parse_chain():
    assert parse("x T,S y z") == And((Atom("x", TAU, "y"), Atom("x", SIG, "z")))
    assert parse("x T~T p q") == And((Atom("x", TAU, "p"), Atom("x", NTAU, "q")))
    assert parse("x ~T_ne y") == Atom("x", NTAU_NE, "y")


def test_parse_operators():
    f = parse("!(x = y) | x lam y & x != y")
    assert f == Or((Not(Atom("x", EQ, "y")), And((Atom("x", LAM, "y"), Atom("x", NE, "y")))))


@pytest.mark.parametrize("text", ["x tau", "x foo y", "exists (x tau y)", "x tau y)", "(x tau y", "x T,S y"])
def test_syntax_errors(text):
    with pytest.raises(FormulaSyntaxError):
        parse(text)


def test_syntax_error_position():
    with pytest.raises(UnknownRelation) as info:
        parse("x tau y & x bogus y")
    assert info.value.pos == 12


def test_eval_qf():
    f = parse("x tau y")
    assert eval_qf(f, {"x": Point((0, 0)), "y": Point((1, 0))})
    assert not eval_qf(parse("x != y"), {"x": Point((0, 0)), "y": Point((0, 0))})
    with pytest.raises(UnboundVariable):
        eval_qf(f, {"x": Point((0, 0))})
    with pytest.raises(NotQuantifierFree):
        eval_qf(parse("exists z (z tau x)"), {"x": Point((0, 0))})


@pytest.mark.parametrize("name", NAMES)
def test_claims(name):
    nf = builtin(name)
    assert (nf.vars, nf.prefix.name) == CLAIMS[name]
    assert nf.matches_claim()


@pytest.mark.parametrize("name", NAMES)
def test_round_trip(name):
    f = builtin(name).formula
    assert parse(to_text(f)) == f


@pytest.mark.parametrize("name", NAMES)
def test_nnf_keeps_meaningful_shape(name):
    f = builtin(name).formula
    assert nnf(nnf(f)) == nnf(f)
    assert classify_prefix(nnf(f)) == classify_prefix(f)


def test_mirror_symmetry():
    for a, b in (("PsiTS", "PsiST"), ("PsiTL", "PsiSL"), ("Ets", "Est"), ("Utl", "Usl"),
                 ("EtsHat", "EstHat"), ("UtlHat", "UslHat")):
        assert swap_time_space(builtin(a).formula) == builtin(b).formula


def test_w_mirror_replaces_sig_by_tau():
    # Wsl and Wst only use sigma-based atoms, so the swap is the replacement
    for name in ("Wsl", "Wst"):
        f = builtin(name).formula
        assert "tau" not in to_text(f)
        assert swap_time_space(f) == builtin(name + "Mirror").formula


def test_psi_tl_expansion():
    ts = builtin("PsiTS").formula
    assert builtin("PsiTL").formula == And((Not(ts), Atom("x", NTAU, "y"), Atom("x", NE, "y")))


def test_u_is_negated_e_within_complement():
    # U = not E, p != q, p tau-bar q
    for e, u in (("Ets", "Utl"), ("EtsHat", "UtlHat")):
        ef = builtin(e).formula
        uf = builtin(u).formula
        assert isinstance(uf, And) and uf.parts[0] == Not(ef)
        assert set(uf.parts[1:]) == {Atom("p", NE, "q"), Atom("p", NTAU, "q")}


rel_words = st.sampled_from(["tau", "lam", "sig", "eq", "ntau", "nlam", "nsig", "!=", "T", "S", "L"])
var_names = st.sampled_from(["x", "y", "z", "u"])


@st.composite
def formulas(draw, depth=3):
    if depth == 0 or draw(st.booleans()):
        return f"{draw(var_names)} {draw(rel_words)} {draw(var_names)}"
    kind = draw(st.sampled_from(["and", "or", "not", "exists", "forall"]))
    if kind == "not":
        return f"!({draw(formulas(depth - 1))})"
    if kind in ("exists", "forall"):
        return f"{kind} {draw(var_names)} ({draw(formulas(depth - 1))})"
    op = "&" if kind == "and" else "|"
    return f"({draw(formulas(depth - 1))}) {op} ({draw(formulas(depth - 1))})"


@given(formulas())
def test_random_round_trip(text):
    f = parse(text)
    assert parse(to_text(f)) == f
