"""Tour of the library on GD(2,3) x GD(3,3) over a few characteristics.

Run: python3 demos/walkthrough.py
"""

from gdterwilliger import (
    B2Label,
    GDParams,
    TripleSet,
    basis_element,
    center_dim,
    dim_T,
    multiply_b2,
    radical_dim,
    radical_nilpotency_index,
    wedderburn,
)
from gdterwilliger import matrix_oracle as mo

factors = ((2, 3), (3, 3))

for q in (0, 2, 3, 5):
    params = GDParams(factors, q)
    w = wedderburn(params)
    print(f"char {q}: dim T = {dim_T(params)}, dim Z = {center_dim(params)}, "
          f"dim Rad = {radical_dim(params)}, index {radical_nilpotency_index(params)}, "
          f"T/Rad = {w.pretty()}")

# one structure constant, computed symbolically and checked on matrices
params = GDParams(factors, 5)
k, l = (0, 2), (1, 2)
a = B2Label(k, l, TripleSet(0, 0, 0b10))
b = B2Label(l, k, TripleSet(0, 0b10, 0b10))
prod = multiply_b2(params, a, b)
print("\nproduct over F_5:", {str(lab): c for lab, c in prod.terms.items()})

space = mo.VertexSpace(params)
lhs = mo.realize(space, basis_element(params, a)) @ mo.realize(space, basis_element(params, b))
print("matches the explicit", space.N, "x", space.N, "matrix product:", lhs == mo.realize(space, prod))
print("dimension certificate:", mo.certified_dimension(space))
