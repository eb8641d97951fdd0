"""Walk through the ten 3-element semi-Heyting chains and their negations.

Run with:  python demos/three_element_chains.py
"""
from shlab import library
from shlab.algebra import enumerate_sh, expand_dm, expand_dp, isomorphic
from shlab.classes import check_class
from shlab.equations import DEDUCTION, holds, holds_pointwise_star_eq_neg

# %% every semi-Heyting algebra on 0 < a < 1, up to isomorphism
found = enumerate_sh(3)
print(len(found), "algebras of order 3")
for A in found:
    name = next(f"L{i}" for i in range(1, 11) if isomorphic(A, library.get(f"L{i}")))
    row = "  ".join(f"{A.labels[x]}->{A.labels[y]}={A.labels[A.imp[x][y]]}"
                    for x in range(3) for y in range(3))
    print(f"{name:4s} {row}")

# %% two ways to add a negation: a' = a (De Morgan) or a' = 1 (dual pseudocomplement)
L3 = library.get("L3")
for B in (expand_dm(L3), expand_dp(L3)):
    print(B.name, [B.labels[B.neg[x]] for x in range(3)],
          "DMSH" if check_class(B, "DMSH") else "", "DPCSH" if check_class(B, "DPCSH") else "")

# %% the deduction identity holds exactly where x' is the pseudocomplement x -> 0
for A in library.core_library():
    d = holds(A, DEDUCTION)
    assert d.ok == holds_pointwise_star_eq_neg(A)
    if not d.ok and A.name == "L1dm":
        print("L1dm:", d)
print("with the property:", [A.name for A in library.core_library() if holds(A, DEDUCTION).ok])
