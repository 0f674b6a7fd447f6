"""B2 quotient diamonds across ell, next to the solution sets they produce."""
from __future__ import annotations

from rmatrix import build_diamond, kernel_lattice, solve
from rmatrix.diamond import classify_case
from rmatrix.rsolver import cyclic_shape_matches

# "param case" is what the (N, m_[n], ell_[n]) parameters predict; "shape" says
# whether the computed diamond really is that cyclic diamond.  When it is not,
# the solver evaluates the diamond-equations on the computed diamond directly.
print("ell  (G; A, B, C, D; phi1; phi2)                   param case  shape  solutions")
for ell in (3, 5, 6, 7, 8, 9, 12):
    spec = build_diamond("B2", ell, kernel_lattice("B2", ell, "square"))
    G, A, B, C, D, p1, p2 = spec.summary()
    sols = [s.dk for s in solve("B2", ell)]
    row = f"({G}; {A}, {B}, {C}, {D}; {p1}; {p2})"
    shape = "yes" if cyclic_shape_matches(spec) else "no"
    print(f"{ell:>3}  {row:<45} {classify_case(spec):>10}  {shape:>5}  {sols}")

# At even ell, (ell/2) lambda_1 is central for the root lattice only:
# pairing it with lambda_2 gives ell/2, which is not a multiple of ell.
