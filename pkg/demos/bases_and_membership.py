"""Equational bases, free algebras and variety membership.

Run with:  python demos/bases_and_membership.py
"""
from shlab import library
from shlab.corpus import verify_entry
from shlab.equations import get, verify_base
from shlab.varieties import free_algebra, member_of_variety

lib = library.get

# %% a base checked against the whole library: C1 cuts V(L1dm) out of DMSHC3
print(verify_entry("dm.L1").summary())

# %% the base for V(L5dm) is also satisfied by 2e, which is not in V(L5dm)
rep = verify_entry("dm.L5")
print(rep.summary().splitlines()[-1])
print(member_of_variety(lib("2e"), [lib("L5dm")]).certificate)
fixed = verify_base([lib("L5dm"), lib("2e")], "DMSHC3", [get("C7")], library.expanded_library())
print("with 2e added as a generator:", "pass" if fixed.ok else "fail")

# %% free algebras: one generator over 2e, then over L1dm
F = free_algebra([lib("2e")], 1)
print(F.size, "elements:", [str(t) for t in F.terms])
F = free_algebra([lib("L1dm")], 1)
print(F.size, "elements over L1dm")

# %% membership with a certificate either way
for A, K in (("2e", ["L1dm"]), ("L1dm", ["2e"]), ("D2", ["D1", "D2", "D3"])):
    r = member_of_variety(lib(A), library.get_many(K))
    print(f"{A} in V({','.join(K)}):", r.member, "|", r.certificate)
