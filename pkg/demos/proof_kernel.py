"""Checking, searching and discharging Hilbert-style proofs.

Run with:  python demos/proof_kernel.py
"""
from shlab.formula import render
from shlab.proofs import (check_proof, deduction_closure_check, discharge, fixture_scripts,
                          mutation_scripts, search_proof)

fx = fixture_scripts()

# %% a shipped derivation of (x | y)' => x' & y'
s = fx["join-demorgan-half"]
print(s.dump())
print(check_proof(s))

# %% a one-line mutation is caught at the line that changed
bad, line = mutation_scripts()["mut-join-demorgan-half--scp-forward"]
print(check_proof(bad), "| expected line", line)

# %% bounded search: contraposition of a premise by scp
found = search_proof("DHMSH", ["x => y"], "y' => x'", depth_cap=2)
print(found.dump())

# %% ... but the contraposition theorem itself is out of reach, as it must be
print(search_proof("DHMSH", [], "(x => y) => (y' => x')", depth_cap=2))

# %% in L(2e) the deduction property holds, so premises can be discharged
t = discharge(fx["ded-smp"])
print(render(t.conclusion, sugar=True), "in", len(t.lines), "lines:", check_proof(t))
print(deduction_closure_check("L(2e)").as_dict()["verdict"])
