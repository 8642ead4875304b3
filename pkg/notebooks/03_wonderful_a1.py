# Wonderful compactification of PGL2: equivariant classes and the ordinary ring.
from kcompact.compactification import (
    Compactification,
    OrdinaryRing,
    basis_element,
    multiply_pointwise,
    multiply_structural,
    ordinary_rank_certificate,
    two_path_agreement,
)
from kcompact.weyl import RootSystem

X = Compactification.wonderful(RootSystem.from_type("A1"))
print(X)

g = basis_element(X, {0}, 1)
print("gamma_s as a tuple:", g.tuple())

sq = multiply_structural(g, g)
print("gamma_s^2 =", sq)
assert sq == multiply_pointwise(g, g)

R = OrdinaryRing(X)
gs = R.gamma_element(1)
print("ordinary gamma_s^2:", (gs * gs).to_json())
print("Z-rank:", ordinary_rank_certificate(X, R).data["rank"])
print("two paths agree:", two_path_agreement(X, R).ok)

# flipping the lambda sign breaks agreement; see the decisions ledger
print("wrong sign agrees:", two_path_agreement(X, OrdinaryRing(X, lambda_sign=-1)).ok)
