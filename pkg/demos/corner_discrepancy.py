"""Where the product formula for corner quotients undercounts.

For a coordinate with more than two groups inside the support of g2, the
local count of surviving labels is 3 when p does not divide (l-1)m, 2 when
p divides l-1 but not m, and 1 when p divides m.  The product formula
2^(n1+n3) 3^(n2) gives 1 in the middle case.  The matrix oracle sides with
the label count.

Run: python3 demos/corner_discrepancy.py
"""

from gdterwilliger import GDParams, enumerate_colors
from gdterwilliger import matrix_oracle as mo

for factors, q in [(((3, 3),), 2), (((4, 2),), 3), (((3, 3), (2, 3)), 2)]:
    space = mo.VertexSpace(GDParams(factors, q))
    for g in enumerate_colors(space.params):
        d = mo.verify_corner(space, g).detail
        if d["quotient_dim"] != d["product_formula_quotient_dim"]:
            print(f"{space.params.spec_string():>8} char {q} color {g}: "
                  f"oracle {d['quotient_dim']}, label count {d['predicted_quotient_dim']}, "
                  f"product formula {d['product_formula_quotient_dim']}")
