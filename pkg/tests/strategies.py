"""Hypothesis strategies shared by the test modules."""
from hypothesis import strategies as st

from shlab.formula import BOT, TOP, Imp, Join, Meet, Neg, Var

VARS = ("x", "y", "z")


def formulas(names=VARS, max_leaves=12, negation=True):
    leaves = st.sampled_from([Var(n) for n in names] + [BOT, TOP])

    def extend(children):
        ops = [st.builds(Meet, children, children), st.builds(Join, children, children),
               st.builds(Imp, children, children)]
        if negation:
            ops.append(st.builds(Neg, children))
        return st.one_of(*ops)

    return st.recursive(leaves, extend, max_leaves=max_leaves)
