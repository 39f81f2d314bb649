"""Symbolic algebra of controlled square-root-of-NOT gates on one target.

Letters: ``v`` (controlled-V), ``u`` (controlled-V dagger), ``N`` (NOT).
Words reduce with vv = uu = N, uv = vu = I, vN = Nv = u, uN = Nu = v,
and NN = I.
"""
from __future__ import annotations

from typing import Iterable

__all__ = ["ALPHABET", "RULES", "rewrite_vword", "normal_forms", "monoid_closure"]

ALPHABET = ("v", "u", "N")

# pair -> replacement ("" is the identity)
RULES = {
    ("v", "v"): "N",
    ("u", "u"): "N",
    ("u", "v"): "",
    ("v", "u"): "",
    ("v", "N"): "u",
    ("N", "v"): "u",
    ("u", "N"): "v",
    ("N", "u"): "v",
    ("N", "N"): "",
}


def rewrite_vword(word: Iterable[str]) -> tuple:
    """Reduce ``word`` to its normal form, a tuple of length 0 or 1."""
    stack: list = []
    for sym in word:
        if sym not in ALPHABET:
            raise ValueError(f"symbol {sym!r} not in {ALPHABET}")
        # every rule maps a pair to at most one letter, so reduce greedily
        while stack:
            repl = RULES[(stack[-1], sym)]
            stack.pop()
            if not repl:
                sym = None
                break
            sym = repl
        if sym is not None:
            stack.append(sym)
    return tuple(stack)


def normal_forms() -> list:
    return [(), ("v",), ("u",), ("N",)]


def monoid_closure() -> set:
    """Every normal form reachable by multiplying letters, starting from the identity."""
    seen = {()}
    frontier = [()]
    while frontier:
        w = frontier.pop()
        for a in ALPHABET:
            r = rewrite_vword(w + (a,))
            if r not in seen:
                seen.add(r)
                frontier.append(r)
    return seen
