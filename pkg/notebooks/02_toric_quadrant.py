# The subdivided quadrant: fan checks, moment order, GKM classes, orbit basis.
from kcompact.fan import Fan, PLFunction, check_ample, git_invariants, moment_order, wall_character
from kcompact.toric import basis_matrix, orbit_class, ray_generator, sr_vanishing_check, verify_srpres_point

F = Fan([[1, 0], [1, 1], [0, 1]], [[0, 1], [1, 2]])
print(F, "smooth:", F.is_smooth())
print("wall character:", wall_character(F, 0, 1))

psi = PLFunction(F, [0, 1, 0])
print("linear forms h_sigma:", psi.forms, "ample:", check_ample(F, psi).ok)

cells = moment_order(F, psi, (1, 2))
for c in cells:
    print(c.to_json())

# X_0 is e^{(1,-1)} on the first cone and 1 on the second
print("X_0 =", ray_generator(F, 0))
print("x(rho_0) =", orbit_class(F, (0,)))

for row in basis_matrix(F, cells):
    print(row)

print("non-faces vanish:", sr_vanishing_check(F).ok)
print("point presentation:", verify_srpres_point(F, psi, (1, 2)).data["rank"])
print("Pic rank:", git_invariants(F)["pic_rank"], "Gale duals:", git_invariants(F)["gale_duals"])
