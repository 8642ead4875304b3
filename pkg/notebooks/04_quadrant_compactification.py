"""A1 x A1 with the subdivided positive chamber: the full pipeline."""

from kcompact import load_instance
from kcompact.compactification import (
    oracle_agreement,
    ordinary_rank_certificate,
    two_path_agreement,
    verify_presentation_over_wonderful,
)

inst = load_instance("quadrant_a1xa1")
X = inst.compactification()
print(X, "cells:", [c.to_json() for c in X.cells])

print("structural vs pointwise:", oracle_agreement(X).to_json())
print("ordinary rank:", ordinary_rank_certificate(X).data)
print("two-path ordinary agreement:", two_path_agreement(X).ok)

rep = verify_presentation_over_wonderful(X)
print("presentation:", rep.ok, {k: rep.data[k] for k in ("rank_over_wonderful", "non_faces")})

# drop the exponent of the middle ray in the relation for alpha_1
bad = verify_presentation_over_wonderful(X, exponents={0: [1, 0, 0]})
print("corrupted relation caught:", [f["check"] for f in bad.failures])
