"""Shared fixtures: the graph zoo and cached solver runs over the corpus."""

import json
import os

import numpy as np
import pytest

import thetaiso as th


def four_vertex_zoo():
    """Named 4-vertex graphs used by the exhaustive lift checks."""
    return {
        "p4": th.path_graph(4),
        "c4": th.cycle_graph(4),
        "k4": th.complete_graph(4),
        "k13": th.star_graph(4),
        "e4": th.empty_graph(4),
        "p3+k1": th.Graph(4, [(0, 1), (1, 2)]),
        "triangle+k1": th.Graph(4, [(0, 1), (1, 2), (0, 2)]),
    }


@pytest.fixture(scope="session")
def zoo4():
    return four_vertex_zoo()


@pytest.fixture(scope="session")
def corpus_entries():
    """Manifest entries of the bundled corpus with graphs loaded."""
    root = th.corpus_path()
    with open(os.path.join(root, "manifest.json")) as fh:
        manifest = json.load(fh)
    out = []
    for entry in manifest["pairs"]:
        g1 = th.load_graph(os.path.join(root, entry["g1"]))
        g2 = th.load_graph(os.path.join(root, entry["g2"]))
        out.append((entry["name"], g1, g2, bool(entry["isomorphic"])))
    return out


@pytest.fixture(scope="session")
def solved_corpus(corpus_entries):
    """One solve per corpus pair per session: name -> (g1, g2, truth,
    program, result, verdict)."""
    cache = {}
    for name, g1, g2, truth in corpus_entries:
        program = th.build_program(g1, g2)
        result = th.solve(program)
        verdict = th.decide(result, g1, g2)
        cache[name] = (g1, g2, truth, program, result, verdict)
    return cache


def united_family(rng, k, m, full_mass=False):
    """Random orthogonal united vectors u_1..u_k and unit w in R^m.

    Built from canonical factors (sqrt(a_i) e_i and the vector of roots) and
    rotated by a random orthogonal matrix, which preserves every inner
    product.  With full_mass=True the weights a_i sum to exactly 1, making
    the family maximal (the u_i sum to w).
    """
    assert m >= k + 1
    if full_mass:
        a = rng.dirichlet(np.ones(k))
        a = a / a.sum()
    else:
        a = rng.dirichlet(np.ones(k + 1))[:k]
    roots = np.sqrt(a)
    us = np.zeros((k, m))
    us[np.arange(k), np.arange(k)] = roots
    w = np.zeros(m)
    w[:k] = roots
    # sqrt of the ~1e-16 rounding residue would leave a spurious ~1e-8
    # coordinate, so the full-mass case pins the slack to exactly zero.
    w[k] = 0.0 if full_mass else np.sqrt(1.0 - a.sum())
    Q, _ = np.linalg.qr(rng.standard_normal((m, m)))
    return [Q @ u for u in us], Q @ w, a


def random_doubly_stochastic(rng, n, terms=None):
    """Known convex combination of permutation matrices and its weights."""
    if terms is None:
        terms = int(rng.integers(2, n + 3))
    weights = rng.dirichlet(np.ones(terms))
    perms = [tuple(rng.permutation(n).tolist()) for _ in range(terms)]
    X = np.zeros((n, n))
    for w, sigma in zip(weights, perms):
        X[np.arange(n), list(sigma)] += w
    return X, list(zip(weights.tolist(), perms))
