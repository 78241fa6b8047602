"""
United vectors, nonnegative factorizations, and the hull of lifts
=================================================================

A vector u is united with a unit vector w when u.w = u.u.  Families of
pairwise-orthogonal united vectors are exactly the Gram-side shadow of
nonnegative factorizations: they can be rotated into the closed positive
orthant.  The same geometry underlies the main program -- an optimal
matrix of value n is a convex combination of isomorphism lifts, and the
decomposition below recovers the weights.
"""

import numpy as np

import thetaiso as th

rng = np.random.default_rng(5)

# Build three united vectors against a unit w by rotating the canonical
# configuration (sqrt(a_i) e_i) with a random orthogonal matrix.
a = np.array([0.5, 0.3, 0.2])
roots = np.sqrt(a)
m = 5
us = [roots[i] * np.eye(m)[i] for i in range(3)]
w = np.zeros(m)
w[:3] = roots
Q, _ = np.linalg.qr(rng.standard_normal((m, m)))
us = [Q @ u for u in us]
w = Q @ w

for i, u in enumerate(us):
    print(f"u{i}: |u|^2 = {u @ u:.6f}, u.w = {u @ w:.6f}, "
          f"united: {th.is_united(u, w)}")
print("weights sum to 1, so the family is maximal: "
      f"|sum(u) - w| = {np.max(np.abs(sum(us) - w)):.2e}")

# cp_factor_united rebuilds the family inside the nonnegative orthant;
# all inner products survive the move.
factors = th.cp_factor_united(us, w)
print("\nnonnegative factor rows (last row is w):")
print(np.round(factors, 6))
original = np.vstack(us + [w])
print("Gram error:",
      np.max(np.abs(original @ original.T - factors @ factors.T)))

# The hull of isomorphism lifts: mix a few lifts of C4 automorphisms and
# recover the weights by nonnegative least squares.
g = th.cycle_graph(4)
isos = th.enumerate_isomorphisms(g, g, size_limit=None)
print(f"\nC4 has {len(isos)} automorphisms")
lifts = [th.lift(sigma) for sigma in isos]
mix = rng.dirichlet(np.ones(3))
picks = rng.choice(len(lifts), size=3, replace=False)
Y = sum(wt * lifts[int(i)].extended() for wt, i in zip(mix, picks))
res = th.convex_decompose(Y, lifts)
print(f"decomposition success: {res.success}, residual {res.residual:.2e}")
for weight, lift_obj in res.combination.terms:
    print(f"  weight {weight:.6f}  sigma {lift_obj.sigma}")
print("input weights were:", sorted(np.round(mix, 6), reverse=True))
print("(dependent lifts may redistribute weights; the recombined matrix,")
print(" not the weight vector, is the certified object)")
