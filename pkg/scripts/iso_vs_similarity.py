"""Compare isomorphism of the built order-16 schemes with the similarity test."""

import itertools
import time

from hadscheme.builder import build_sh
from hadscheme.catalogue import order4_schemes
from hadscheme.groups import SchemeGroups, similar_check
from hadscheme.hadamard import H0, H1, H2, H3
from hadscheme.iso import scheme_isomorphic

MATRICES = {"H0": H0, "H1": H1, "H2": H2, "H3": H3}

start = time.perf_counter()
for name, base in order4_schemes().items():
    groups = SchemeGroups.of(base)
    built = {k: build_sh(base, h).scheme for k, h in MATRICES.items()}
    for a, b in itertools.combinations_with_replacement(MATRICES, 2):
        iso = scheme_isomorphic(built[a], built[b]) is not None
        sim = similar_check(MATRICES[a], MATRICES[b], base, groups)
        flag = "" if iso == sim else "  MISMATCH"
        print(f"{name} {a}~{b}: isomorphic={iso} similar={sim}{flag}")
print(f"{time.perf_counter() - start:.1f}s")
