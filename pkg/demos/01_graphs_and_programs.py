"""
Build graphs and compile a pair into the lifted matrix program
==============================================================

The program variable is a symmetric (n^2+1) x (n^2+1) matrix Y indexed by
vertex pairs (i, j) -> i*n + j plus one extra coordinate omega = n^2.
Equality constraints pin the omega corner to 1, tie each diagonal entry to
its omega row, and zero out every entry whose pair of assignments is
incompatible (shared row, shared column, or adjacency mismatch).
"""

import numpy as np

import thetaiso as th

# Two labelings of the 5-cycle: same graph, scrambled vertices.
g1 = th.cycle_graph(5)
g2 = th.relabel(g1, (1, 3, 0, 4, 2))
print("g1 edges:", sorted(g1.edges))
print("g2 edges:", sorted(g2.edges))
print("degrees:", g1.degrees(), "and", g2.degrees())

# The pair index maps (i, j) to i*n + j; omega sits at n^2.
index = th.VertexPairIndex(g1.n)
print("\nindex of pair (2, 4):", index.index(2, 4))
print("pair at 14:", index.pair(14))
print("omega:", index.omega, "matrix side:", index.size)

# Compile the pair into a program and look at its constraint budget.
program = th.build_program(g1, g2)
print("\nconstraint counts by kind:")
for kind, count in sorted(program.constraint_counts().items()):
    print(f"  {kind:>12}: {count}")

# Entries forced to zero correspond exactly to edges of the association
# graph on vertex pairs -- incompatible assignments cannot both be chosen.
zeros = program.zero_pair_set()
assoc = th.association_graph(g1, g2)
print("\nforced-zero entry pairs:", len(zeros))
print("association-graph edges:", assoc.num_edges)
print("identical sets:", zeros == {tuple(sorted(e)) for e in assoc.edges})

# The objective simply sums the n^2 diagonal entries over vertex pairs.
Y = np.eye(index.size) / g1.n
Y[index.omega, index.omega] = 1.0
print("\nobjective at a scaled identity:", th.objective_value(Y, program))
