"""
Exact Holant values on small graphs
===================================

Brute-force reference evaluation: every edge takes a colour in
{0, 1, ..., kappa}, each vertex signature scores its incident colours,
and fugacities weight the nonzero colours.
"""

from holant import MultiGraph, brute_holant, exact_gibbs, uniform_assignment

# a 4-cycle with the matching signature at every vertex: Holant at
# fugacity (1, t) is the matching polynomial 1 + 4t + 2t^2
G = MultiGraph.from_text("4 4\n0 1\n1 2\n2 3\n0 3\n")
assign = uniform_assignment(G, "matching")

for t in (0.1, 0.5, 1.0):
    rep = brute_holant(G, assign, (1.0, t))
    print(f"t = {t:4.1f}   Z = {rep.value.real:.6f}   (terms: {rep.terms})")

# the full table of weighted assignments is available on request
rep = brute_holant(G, assign, (1.0, 0.5), keep_table=True)
print("\nnonzero assignments at t = 0.5:")
for sigma, w in sorted(rep.table.items()):
    if w:
        print("  colours", sigma, "->", w.real)

# with nonnegative weights the same table normalises to a Gibbs law
gibbs = exact_gibbs(G, assign, (1.0, 0.5))
print("\nGibbs mass of the empty matching:", round(gibbs[(0, 0, 0, 0)], 6))
print("total mass:", round(sum(gibbs.values()), 12))
