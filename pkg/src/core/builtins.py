"""Builtin algebras: the Sugihara chains S_n, the algebra E and its relatives."""
import logging
import re

import numpy as np

from .algebra import (
    FiniteAlgebra,
    Profile,
    direct_product,
    renamed,
    subalgebra,
    validated,
    with_bounds,
)
from .exceptions import UnknownBuiltin
from .poset import FinitePoset
from .twist import bowtie_down

logger = logging.getLogger(__name__)

E_ELEMENTS = ("(-2,-2)", "(-1,-1)", "(-1,1)", "(0,-1)", "(0,1)", "(1,-1)", "(1,1)", "(2,2)")
E_NEG_NAMES = ("a", "b", "c", "f", "t")


def sugihara_values(n: int) -> list[int]:
    """Carrier of S_n: {-m..m} for odd n, {-m..-1, 1..m} for even n."""
    m = n // 2
    if n % 2:
        return list(range(-m, m + 1))
    return [v for v in range(-m, m + 1) if v != 0]


def sugihara_chain(n: int) -> FiniteAlgebra:
    """The n-element Sugihara chain with its closed-form operations."""
    if n < 1:
        raise UnknownBuiltin(f"S{n}")
    values = sugihara_values(n)
    pos = {v: i for i, v in enumerate(values)}
    size = len(values)

    def mult(x, y):
        if abs(x) > abs(y):
            return x
        if abs(x) < abs(y):
            return y
        return min(x, y)

    def arrow(x, y):
        return max(-x, y) if x <= y else min(-x, y)

    mult_t = np.array([[pos[mult(x, y)] for y in values] for x in values], dtype=np.intp)
    arrow_t = np.array([[pos[arrow(x, y)] for y in values] for x in values], dtype=np.intp)
    neg_t = np.array([pos[-x] for x in values], dtype=np.intp)
    leq = np.array([[x <= y for y in values] for x in values], dtype=bool)
    idx = np.arange(size)
    poset = FinitePoset.from_leq([str(v) for v in values], leq)
    return FiniteAlgebra(
        poset,
        np.minimum(idx[:, None], idx[None, :]),
        np.maximum(idx[:, None], idx[None, :]),
        mult=mult_t,
        arrow=arrow_t,
        unit=pos[0] if n % 2 else pos[1],
        neg=neg_t,
        profile=Profile.SUGIHARA,
        name=f"S{n}",
    )


def algebra_e() -> FiniteAlgebra:
    """The eight-element subalgebra of S5 x S4."""
    big = direct_product(sugihara_chain(5), sugihara_chain(4), name="S5xS4")
    return subalgebra(big, [big.index(x) for x in E_ELEMENTS], name="E")


def algebra_e_bot() -> FiniteAlgebra:
    return with_bounds(algebra_e()).evolve(name="E_bot")


def algebra_e_neg() -> FiniteAlgebra:
    return renamed(bowtie_down(algebra_e()), E_NEG_NAMES, name="E_neg")


def alter_ego(bounded: bool = False) -> FiniteAlgebra:
    """The three-element i-lattice on -1 < 0 < 1, Kleene when bounded."""
    values = [-1, 0, 1]
    idx = np.arange(3)
    leq = idx[:, None] <= idx[None, :]
    poset = FinitePoset.from_leq([str(v) for v in values], leq)
    return FiniteAlgebra(
        poset,
        np.minimum(idx[:, None], idx[None, :]),
        np.maximum(idx[:, None], idx[None, :]),
        neg=np.array([2, 1, 0]),
        constants={"bot": 0, "top": 2} if bounded else {},
        profile=Profile.KLEENE if bounded else Profile.ILATTICE,
        name="K3" if bounded else "L3",
    )


_FIXED = {
    "E": algebra_e,
    "E_bot": algebra_e_bot,
    "E_neg": algebra_e_neg,
    "L3": lambda: alter_ego(False),
    "K3": lambda: alter_ego(True),
}

BUILTIN_NAMES = tuple([f"S{n}" for n in range(2, 9)] + list(_FIXED))


def builtin(name: str) -> FiniteAlgebra:
    """A validated builtin algebra by name (S2..S8, E, E_bot, E_neg, L3, K3).

    Raises:
        UnknownBuiltin: The name is not one of the builtins.
    """
    key = name.strip()
    match = re.fullmatch(r"S_?(\d+)", key)
    if match and 2 <= int(match.group(1)) <= 8:
        A = sugihara_chain(int(match.group(1)))
    elif key in _FIXED:
        A = _FIXED[key]()
    else:
        raise UnknownBuiltin(name)
    logger.info(f"Builtin {A.name}: {A.n} elements, profile {A.profile.value}")
    return validated(A)
