"""First-order terms over a ranked signature, contexts, and finite term universes.

Terms are interned: structurally equal terms are the same object, so equality
and hashing are O(1).  A universe is a finite, subterm-closed set of terms,
either "all terms up to a depth bound" or an explicit term set (e.g. the
reachable closure of a rewrite graph).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

HOLE = "□"  # single-hole marker used by contexts

_NAME_RE = re.compile(r"[A-Za-z0-9_'+\-]+")


class TermError(ValueError):
    """Malformed term, parse error, or arity violation."""


class UniverseError(ValueError):
    """A universe was too large to materialize."""


class Signature:
    """A ranked alphabet mapping operator names to arities."""

    __slots__ = ("_arities", "_items")

    def __init__(self, arities: Mapping[str, int]):
        for name, ar in arities.items():
            if not _NAME_RE.fullmatch(name) or name == HOLE:
                raise TermError(f"bad operator name: {name!r}")
            if ar < 0:
                raise TermError(f"negative arity for {name}")
        self._arities = dict(arities)
        self._items = tuple(sorted(self._arities.items()))

    def arity(self, name: str) -> int:
        return self._arities[name]

    def __contains__(self, name: str) -> bool:
        return name in self._arities

    def __iter__(self) -> Iterator[Tuple[str, int]]:
        return iter(self._items)

    def constants(self) -> Tuple[str, ...]:
        return tuple(n for n, a in self._items if a == 0)

    def operators(self) -> Tuple[Tuple[str, int], ...]:
        """Operators of arity >= 1, sorted by name."""
        return tuple((n, a) for n, a in self._items if a >= 1)

    def max_arity(self) -> int:
        return max((a for _, a in self._items), default=0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Signature) and self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        return "Signature({%s})" % ", ".join(f"{n!r}: {a}" for n, a in self._items)


class Term:
    """An interned first-order term: a variable or an operator application."""

    __slots__ = ("name", "args", "is_var", "depth", "size")
    _intern: Dict[tuple, "Term"] = {}

    def __new__(cls, name: str, args: Tuple["Term", ...] = (), is_var: bool = False):
        key = (name, args, is_var)
        t = cls._intern.get(key)
        if t is not None:
            return t
        if is_var and args:
            raise TermError("variables take no arguments")
        t = object.__new__(cls)
        t.name = name
        t.args = args
        t.is_var = is_var
        t.depth = max((a.depth for a in args), default=-1) + 1
        t.size = 1 + sum(a.size for a in args)
        cls._intern[key] = t
        return t

    # interning makes identity-based eq/hash correct
    def __repr__(self) -> str:
        return f"Term({format_term(self)!r})"

    def __str__(self) -> str:
        return format_term(self)


def var(name: str) -> Term:
    return Term(name, (), True)


def app(name: str, *args: Term) -> Term:
    return Term(name, tuple(args), False)


def term_key(t: Term):
    """Deterministic structural sort key (depth, then name, then args)."""
    return (t.depth, t.is_var, t.name, tuple(term_key(a) for a in t.args))


def format_term(t: Term) -> str:
    if not t.args:
        return t.name
    return f"{t.name}({','.join(format_term(a) for a in t.args)})"


def parse_term(text: str, signature: Signature, variables: Sequence[str]) -> Term:
    """Parse ``name(arg,...)`` concrete syntax.

    A bare name is a constant if the signature declares it with arity 0,
    a variable if it is in ``variables``, and an error otherwise.
    """
    varset = set(variables)
    pos = 0
    text = text.strip()

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def parse() -> Term:
        nonlocal pos
        skip_ws()
        m = _NAME_RE.match(text, pos)
        if not m:
            raise TermError(f"expected a name at position {pos} in {text!r}")
        name = m.group(0)
        pos = m.end()
        skip_ws()
        if pos < len(text) and text[pos] == "(":
            pos += 1
            args: List[Term] = []
            skip_ws()
            if pos < len(text) and text[pos] == ")":
                pos += 1
            else:
                while True:
                    args.append(parse())
                    skip_ws()
                    if pos < len(text) and text[pos] == ",":
                        pos += 1
                        continue
                    if pos < len(text) and text[pos] == ")":
                        pos += 1
                        break
                    raise TermError(f"expected ',' or ')' at position {pos} in {text!r}")
            if name not in signature:
                raise TermError(f"unknown operator {name!r}")
            if signature.arity(name) != len(args):
                raise TermError(
                    f"operator {name!r} expects {signature.arity(name)} "
                    f"arguments, got {len(args)}"
                )
            return app(name, *args)
        if name in signature:
            if signature.arity(name) != 0:
                raise TermError(f"operator {name!r} needs arguments")
            return app(name)
        if name in varset:
            return var(name)
        raise TermError(f"unknown name {name!r} (not an operator or declared variable)")

    t = parse()
    skip_ws()
    if pos != len(text):
        raise TermError(f"trailing input at position {pos} in {text!r}")
    return t


@lru_cache(maxsize=None)
def free_vars(t: Term) -> frozenset:
    if t.is_var:
        return frozenset((t.name,))
    out: frozenset = frozenset()
    for a in t.args:
        out |= free_vars(a)
    return out


def apply_subst(t: Term, subst: Mapping[str, Term]) -> Term:
    if t.is_var:
        return subst.get(t.name, t)
    if not t.args:
        return t
    return app(t.name, *(apply_subst(a, subst) for a in t.args))


def match(pattern: Term, subject: Term) -> Optional[Dict[str, Term]]:
    """Match ``pattern`` against ``subject``; return the witnessing
    substitution on the pattern's variables, or None."""
    subst: Dict[str, Term] = {}

    def go(p: Term, s: Term) -> bool:
        if p.is_var:
            bound = subst.get(p.name)
            if bound is None:
                subst[p.name] = s
                return True
            return bound is s
        if s.is_var or p.name != s.name or len(p.args) != len(s.args):
            return False
        return all(go(pa, sa) for pa, sa in zip(p.args, s.args))

    return subst if go(pattern, subject) else None


def subterms(t: Term) -> Iterator[Term]:
    """All subterms of t, including t itself (pre-order, with repeats)."""
    yield t
    for a in t.args:
        yield from subterms(a)


def is_well_formed(t: Term, signature: Signature, variables: Sequence[str]) -> bool:
    if t.is_var:
        return t.name in variables
    if t.name not in signature or signature.arity(t.name) != len(t.args):
        return False
    return all(is_well_formed(a, signature, variables) for a in t.args)


# ---------------------------------------------------------------------------
# Contexts: terms with exactly one hole.

hole = Term(HOLE)


def is_context(c: Term) -> bool:
    return sum(1 for s in subterms(c) if s is hole) == 1


def plug(context: Term, t: Term) -> Term:
    """Replace the unique hole in ``context`` by ``t``."""
    if context is hole:
        return t
    if context.is_var or not context.args:
        return context
    return Term(context.name, tuple(plug(a, t) for a in context.args), False)


def decompose(t: Term) -> List[Tuple[Term, Term]]:
    """All ways to write ``t = plug(c, s)``: the trivial split plus one
    split per proper subterm occurrence."""
    out: List[Tuple[Term, Term]] = [(hole, t)]
    if not t.is_var:
        for i, a in enumerate(t.args):
            for c, s in decompose(a):
                wrapped = Term(
                    t.name,
                    t.args[:i] + (c,) + t.args[i + 1:],
                    False,
                )
                out.append((wrapped, s))
    return out


# ---------------------------------------------------------------------------
# Universes.

DEFAULT_UNIVERSE_CAP = 500_000


@dataclass(frozen=True)
class Universe:
    """A finite, subterm-closed set of well-formed terms.

    With ``explicit=None`` the universe is all well-formed terms of depth at
    most ``depth``.  An explicit universe carries its (subterm-closed) term
    set; ``depth`` then records the maximum depth present.
    """

    signature: Signature
    variables: Tuple[str, ...]
    depth: int
    explicit: Optional[frozenset] = None

    def __post_init__(self):
        if self.depth < 0:
            raise UniverseError("universe depth must be >= 0")

    # -- membership ---------------------------------------------------------
    def __contains__(self, t: Term) -> bool:
        if self.explicit is not None:
            return t in self.explicit
        return t.depth <= self.depth and is_well_formed(
            t, self.signature, self.variables
        )

    # -- enumeration --------------------------------------------------------
    def size(self) -> int:
        if self.explicit is not None:
            return len(self.explicit)
        return _depth_universe_size(self.signature, self.variables, self.depth)

    def terms(self) -> Tuple[Term, ...]:
        """All terms, sorted by the deterministic structural key."""
        if self.explicit is not None:
            return _sorted_terms(self.explicit)
        return _depth_universe_terms(self.signature, self.variables, self.depth)

    def terms_up_to(self, d: int) -> Tuple[Term, ...]:
        """The terms of depth <= d, sorted."""
        if self.explicit is not None:
            return tuple(t for t in self.terms() if t.depth <= d)
        return _depth_universe_terms(self.signature, self.variables, min(d, self.depth))

    def restrict(self, d: int) -> "Universe":
        if self.explicit is not None:
            return Universe(
                self.signature,
                self.variables,
                min(d, self.depth),
                frozenset(t for t in self.explicit if t.depth <= d),
            )
        return Universe(self.signature, self.variables, min(d, self.depth))

    def var_terms(self) -> Tuple[Term, ...]:
        vs = tuple(var(v) for v in sorted(self.variables))
        if self.explicit is not None:
            return tuple(v for v in vs if v in self.explicit)
        return vs

    def constant_terms(self) -> Tuple[Term, ...]:
        cs = tuple(app(c) for c in self.signature.constants())
        if self.explicit is not None:
            return tuple(c for c in cs if c in self.explicit)
        return cs

    @staticmethod
    def from_terms(signature: Signature, variables: Sequence[str],
                   terms: Sequence[Term]) -> "Universe":
        """Explicit universe: the subterm closure of ``terms``."""
        closed = set()
        for t in terms:
            for s in subterms(t):
                closed.add(s)
        for t in closed:
            if not is_well_formed(t, signature, variables):
                raise TermError(f"term {format_term(t)} is not well-formed here")
        depth = max((t.depth for t in closed), default=0)
        return Universe(signature, tuple(sorted(variables)), depth, frozenset(closed))


@lru_cache(maxsize=None)
def _depth_universe_size(sig: Signature, variables: Tuple[str, ...], d: int) -> int:
    leaves = len(variables) + len(sig.constants())
    if d == 0:
        return leaves
    below = _depth_universe_size(sig, variables, d - 1)
    return leaves + sum(below ** a for _, a in sig.operators())


@lru_cache(maxsize=None)
def _depth_universe_terms(sig: Signature, variables: Tuple[str, ...],
                          d: int) -> Tuple[Term, ...]:
    n = _depth_universe_size(sig, variables, d)
    if n > DEFAULT_UNIVERSE_CAP:
        raise UniverseError(
            f"universe of depth {d} has {n} terms "
            f"(cap {DEFAULT_UNIVERSE_CAP}); not materializing"
        )
    out = [var(v) for v in sorted(variables)]
    out.extend(app(c) for c in sig.constants())
    if d > 0:
        below = _depth_universe_terms(sig, variables, d - 1)
        for name, ar in sig.operators():
            for args in product(below, repeat=ar):
                out.append(app(name, *args))
    return tuple(sorted(set(out), key=term_key))


@lru_cache(maxsize=None)
def universe(signature: Signature, variables: Tuple[str, ...], depth: int) -> Universe:
    return Universe(signature, tuple(sorted(variables)), depth)


def _sorted_terms(ts) -> Tuple[Term, ...]:
    return tuple(sorted(ts, key=term_key))
