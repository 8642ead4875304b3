"""Command-line front end.

Exit codes: 0 all checks pass, 1 a verification failed, 2 the instance is
malformed, 3 an internal inconsistency.  Data goes to stdout as JSON,
diagnostics to stderr as JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .compactification import (
    OrdinaryRing,
    basis_elements,
    check_membership,
    find_ample,
    multiply_structural,
    oracle_agreement,
    ordinary_rank_certificate,
    two_path_agreement,
    verify_presentation_over_wonderful,
)
from .fan import (
    FanError,
    NonGenericError,
    check_ample,
    facet_orthogonal_to_root,
    git_invariants,
    moment_order,
    star_property_violations,
    validate_positive_subdivision,
    wall_character,
)
from .instance import Instance, SchemaError, load_instance
from .steinberg import check_product_support, lambda_bar, steinberg_basis, structure_table
from .toric import (
    basis_matrix,
    check_basis_matrix,
    monomial_relation_check,
    ordinary_structure,
    ray_generator,
    sr_vanishing_check,
    verify_srpres_point,
)
from .weyl import RootSystem, c_sets, minimal_coset_reps, parabolic_elements, subsets, weyl_group


class VerificationFailure(Exception):
    pass


def _label(I) -> list:
    return [i + 1 for i in sorted(I)]


def _subset_key(I) -> str:
    return ",".join(f"a{i + 1}" for i in sorted(I)) or "empty"


# -- sections -----------------------------------------------------------------------


def weyl_section(rs: RootSystem) -> tuple:
    W = weyl_group(rs)
    cs = c_sets(rs)
    seen = set()
    disjoint = True
    for I in subsets(rs):
        for w in cs[I]:
            disjoint &= w not in seen
            seen.add(w)
    cosets_ok = all(len(minimal_coset_reps(rs, I)) * len(parabolic_elements(rs, I)) == len(W) for I in subsets(rs))
    partition_ok = disjoint and len(seen) == len(W)
    out = {
        "root_system": rs.to_json(),
        "order": len(W),
        "positive_roots": [list(b) for b in rs.positive_roots],
        "elements": [{"word": w.word_str(), "length": w.length, "matrix": [list(r) for r in w.matrix]} for w in W],
        "c_sets": {_subset_key(I): [w.word_str() for w in cs[I]] for I in subsets(rs)},
        "c_set_sizes": {_subset_key(I): len(cs[I]) for I in subsets(rs)},
        "checks": {"partition": partition_ok, "coset_factorization": cosets_ok},
    }
    return out, partition_ok and cosets_ok


def steinberg_section(rs: RootSystem, jobs: int = 1) -> tuple:
    B = steinberg_basis(rs)
    W = B.W
    table = structure_table(rs, jobs)
    words = [w.word_str() for w in W]
    a, c = {}, {}
    for i, row in enumerate(table):
        for j, coeffs in enumerate(row):
            for k, x in enumerate(coeffs):
                if x:
                    key = f"{words[i]}*{words[j]}->{words[k]}"
                    a[key] = x.to_json()
                    if x.augment():
                        c[key] = x.augment()
    support = check_product_support(rs)
    det_ok = not B.determinant.is_zero()
    out = {
        "f": {words[k]: f.to_json() for k, f in enumerate(B.elements)},
        "subsets": {words[k]: _label(B.subset_of(k)) for k in range(len(W))},
        "a": a,
        "c": c,
        "lambda_bar": {_subset_key(I): list(lambda_bar(rs, B, I).coeffs) for I in subsets(rs)},
        "checks": {"determinant_nonzero": det_ok, "product_support": not support},
    }
    return out, det_ok and not support


def fan_section(inst: Instance) -> tuple:
    F, rs = inst.fan, inst.root_system
    rep = F.validate()
    out: dict = {"fan": F.to_json(), "validation": rep.to_json()}
    ok = rep.ok
    if not rep.ok:
        return out, False
    out["smooth"] = F.is_smooth()
    out["walls"] = [
        {"cones": [list(F.maximal_cones[a]), list(F.maximal_cones[b])], "chi": list(wall_character(F, a, b))}
        for a, b in F.adjacent_pairs()
    ]
    out["minimal_non_faces"] = [list(nf) for nf in F.minimal_non_faces()]
    try:
        out["git"] = git_invariants(F)
    except FanError as exc:
        out["git"] = {"error": str(exc)}
        ok = False
    psi = inst.pl_function()
    if psi is not None:
        amp = check_ample(F, psi)
        out["ample"] = amp.to_json()
        ok &= amp.ok
        if inst.direction is not None and amp.ok:
            try:
                cells = moment_order(F, psi, inst.direction)
            except NonGenericError as exc:
                out["moment_order"] = {"error": str(exc)}
                ok = False
            else:
                viol = star_property_violations(cells)
                out["moment_order"] = {
                    "cells": [c.to_json() for c in cells],
                    "star_property": not viol,
                }
                ok &= not viol
    if rs is not None:
        sub = validate_positive_subdivision(rs, F)
        out["positive_subdivision"] = sub.to_json()
        ok &= sub.ok
        if sub.ok:
            out["facets_orthogonal_to_roots"] = {
                ",".join(map(str, s)): [i + 1 for i in rs.simple_indices if facet_orthogonal_to_root(F, k, i)]
                for k, s in enumerate(F.maximal_cones)
            }
    return out, ok


def toric_section(inst: Instance) -> tuple:
    F = inst.fan
    rep = F.validate()
    if not rep.ok or not F.is_smooth():
        return {"error": "the fan is not a smooth fan", "validation": rep.to_json()}, False
    psi = inst.pl_function() or find_ample(F)
    direction = inst.direction
    if direction is None:
        from .compactification import _default_directions

        for d in _default_directions(F.dim):
            try:
                moment_order(F, psi, d)
            except (NonGenericError, FanError):
                continue
            direction = d
            break
    cells = moment_order(F, psi, direction)
    M = basis_matrix(F, cells)
    mrep = check_basis_matrix(M)
    sr = sr_vanishing_check(F)
    mono = monomial_relation_check(F)
    pt = verify_srpres_point(F, psi, direction)
    out = {
        "psi": list(psi.values),
        "bb_direction": list(direction),
        "cells": [c.to_json() for c in cells],
        "generators": {str(j): ray_generator(F, j).to_json() for j in range(len(F.rays))},
        "basis_matrix": [[x.to_json() for x in row] for row in M],
        "basis_matrix_check": mrep.to_json(),
        "stanley_reisner": sr.to_json(),
        "monomial_relations": mono.to_json(),
        "point_presentation": pt.to_json(),
        "ordinary_structure": ordinary_structure(F, cells),
    }
    return out, mrep.ok and sr.ok and mono.ok and pt.ok


def kring_section(inst: Instance, tables=("equivariant", "ordinary"), verify=("membership", "oracle", "presentation")) -> tuple:
    C = inst.compactification()
    words = [C.word(k) for k in range(C.size)]
    out: dict = {"instance": C.name, "convention": C.convention, "weyl_order": C.size, "m": C.m}
    ok = True
    B = basis_elements(C)
    if "equivariant" in tables:
        out["equivariant_table"] = {
            f"{words[i]}*{words[j]}": multiply_structural(x, y).to_json()
            for i, x in enumerate(B)
            for j, y in enumerate(B)
        }
    ring = None
    if "ordinary" in tables or "oracle" in verify:
        ring = OrdinaryRing(C)
    if "ordinary" in tables:
        labels = [f"{words[v]}|{i}" for v in range(C.size) for i in range(C.m)]
        tab = ring.table()
        cert = ordinary_rank_certificate(C, ring)
        out["ordinary_rank"] = cert.to_json()
        ok &= cert.ok
        out["ordinary_table"] = {
            f"{labels[p]}*{labels[q]}": tab[p][q].to_json() for p in range(len(labels)) for q in range(len(labels))
        }
    checks: dict = {}
    if "membership" in verify:
        bad = []
        for i, x in enumerate(B):
            if not check_membership(C, x.tuple()).ok:
                bad.append(words[i])
            for j, y in enumerate(B):
                if not check_membership(C, multiply_structural(x, y).tuple()).ok:
                    bad.append(f"{words[i]}*{words[j]}")
        checks["membership"] = {"ok": not bad, "failures": bad}
        ok &= not bad
    if "oracle" in verify:
        r1 = oracle_agreement(C)
        r2 = two_path_agreement(C, ring)
        checks["multiplication_oracle"] = r1.to_json()
        checks["ordinary_two_path"] = r2.to_json()
        ok &= r1.ok and r2.ok
    if "presentation" in verify:
        r = verify_presentation_over_wonderful(C)
        checks["presentation"] = r.to_json()
        ok &= r.ok
        # negative control: zero out one nonzero exponent
        i = C.rs.simple_indices[0]
        exps = [row[i] for row in C.fan.rays]
        j = next(k for k, e in enumerate(exps) if e)
        exps[j] = 0
        neg = verify_presentation_over_wonderful(C, exponents={i: exps})
        checks["presentation_negative_control"] = {"detected": not neg.ok, "corrupted": {str(i): exps}}
        ok &= not neg.ok
    out["checks"] = checks
    return out, ok


def verify_all(inst: Instance, jobs: int = 1) -> tuple:
    out: dict = {"instance": inst.name}
    ok = True
    rs, F = inst.root_system, inst.fan
    if rs is not None:
        sec, k = weyl_section(rs)
        out["weyl"] = {"order": sec["order"], "c_set_sizes": sec["c_set_sizes"], "checks": sec["checks"]}
        ok &= k
        sec, k = steinberg_section(rs, jobs)
        out["steinberg"] = sec
        ok &= k
    if F is not None:
        sec, k = fan_section(inst)
        out["fan"] = sec
        ok &= k
        if k and F.is_smooth():
            sec, k = toric_section(inst)
            out["toric_k"] = sec
            ok &= k
    if rs is not None and F is not None:
        sec, k = kring_section(inst)
        out["kring"] = sec
        ok &= k
    out["ok"] = bool(ok)
    return out, ok


# -- plumbing -----------------------------------------------------------------------


def _json_default(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True, default=_json_default)


def _error(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kcompact", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--instance", required=True, help="instance JSON file or builtin name")
        sp.add_argument("--jobs", type=int, default=None, help="worker processes for table computations")
        return sp

    common(sub.add_parser("weyl", help="Weyl group, lengths and C-sets"))
    common(sub.add_parser("steinberg", help="Steinberg basis and structure constants"))
    common(sub.add_parser("fan", help="fan validation, walls, ampleness, moment order, GIT data"))
    common(sub.add_parser("toric-k", help="GKM model, orbit basis and presentations"))
    k = common(sub.add_parser("kring", help="equivariant and ordinary K-rings"))
    k.add_argument("--table", action="append", choices=["equivariant", "ordinary"], default=None)
    k.add_argument("--verify", action="append", choices=["membership", "oracle", "presentation"], default=None)
    common(sub.add_parser("verify-all", help="every applicable check"))
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        inst = load_instance(args.instance)
        jobs = args.jobs or inst.options.get("jobs", 1)
        if args.command in ("weyl", "steinberg") and inst.root_system is None:
            raise SchemaError("this command needs a root system")
        if args.command in ("fan", "toric-k") and inst.fan is None:
            raise SchemaError("this command needs a fan")
        if args.command == "weyl":
            out, ok = weyl_section(inst.root_system)
        elif args.command == "steinberg":
            out, ok = steinberg_section(inst.root_system, jobs)
        elif args.command == "fan":
            out, ok = fan_section(inst)
        elif args.command == "toric-k":
            out, ok = toric_section(inst)
        elif args.command == "kring":
            out, ok = kring_section(inst, tuple(args.table or ()), tuple(args.verify or ()))
        else:
            out, ok = verify_all(inst, jobs)
    except SchemaError as exc:
        return _error("schema", str(exc), 2)
    except (FanError, VerificationFailure) as exc:
        return _error("verification", str(exc), 1)
    except Exception as exc:  # noqa: BLE001 - reported as an internal inconsistency
        return _error("internal", f"{type(exc).__name__}: {exc}", 3)
    sys.stdout.write(dumps(out) + "\n")
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
