import pytest

from relrew.rewrite import parse_trs

ARITH_TEXT = """\
# Peano-style arithmetic
sig 0/0 S/1 A/2 M/2
var x y
rule A(0,x) -> x
rule A(S(x),y) -> S(A(x,y))
rule M(0,x) -> 0
rule M(S(x),y) -> A(M(x,y),y)
"""


@pytest.fixture(scope="session")
def arith():
    return parse_trs(ARITH_TEXT)


@pytest.fixture
def arith_file(tmp_path):
    p = tmp_path / "arith.trs"
    p.write_text(ARITH_TEXT)
    return str(p)
