"""C4: the f-equations decide every candidate independently of the diamond route."""
from __future__ import annotations

from rmatrix.rsolver import candidates, check_f_equations, f_from_pairing, solve

# ell = 12 gives |Lambda_W / Lambda'| beyond the exhaustive-check bound
for ell in (3, 6, 8):
    accepted = {s.omega for s in solve("C4", ell)}
    for p in candidates("C4", ell):
        ok = check_f_equations(f_from_pairing("C4", ell, p, bound=5000), bound=5000)
        flag = "accepted" if p in accepted else "rejected"
        turns = [[str(t) for t in row] for row in p.turns]
        print(f"ell={ell:>2} d={p.d} turns={turns}: solver {flag}, f-equations {ok}")
