"""``vkf`` command line: one subcommand per workbench operation, JSON on stdout.

Exit codes: 0 success, 1 invalid input, 2 resource guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import certificates, complex_core, deleted_product, homology, witness
from .complex_core import ComplexError, GuardExceeded

VERBS = ("complex", "homology", "conf", "check-def1", "check-saturated", "weight-bound",
         "certify", "witness", "nerve-map", "psi", "trials")


class InputError(Exception):
    pass


def _load_complex(args) -> complex_core.SimplicialComplex:
    if args.complex and args.generate:
        raise InputError("give either --complex or --generate, not both")
    if args.generate:
        kind, _, num = args.generate.partition(":")
        try:
            return complex_core.generate(kind, int(num))
        except (ValueError, TypeError) as exc:
            raise InputError(f"bad --generate value {args.generate!r}: {exc}") from None
    if not args.complex:
        raise InputError("--complex FILE (or --generate KIND:N) is required")
    try:
        text = Path(args.complex).read_text()
        return complex_core.from_json(text, max_faces=args.max_cells)
    except OSError as exc:
        raise InputError(f"cannot read {args.complex}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.complex} is not valid JSON: {exc}") from None


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InputError(f"--{name.replace('_', '-')} is required for {args.verb}")


def _load_coords(args, X) -> witness.AffineMap:
    _need(args, "coords")
    try:
        return witness.affine_map_from_json(Path(args.coords).read_text(), X)
    except OSError as exc:
        raise InputError(f"cannot read {args.coords}: {exc}") from None
    except (json.JSONDecodeError, KeyError, ZeroDivisionError) as exc:
        raise InputError(f"malformed coordinates file: {exc!r}") from None


def _config(args) -> dict:
    keys = ("verb", "complex", "generate", "coords", "r", "p", "k", "n", "d", "upto", "seed",
            "trials", "bound", "coord_box", "lift", "threads", "max_cells")
    return {k: getattr(args, k) for k in keys}


def cmd_complex(args, X):
    return {"complex": complex_core.to_dict(X), "digest": X.digest(), "vertex_count": X.vertex_count,
            "dim": X.dim, "f_vector": X.f_vector(), "euler_characteristic": X.euler_characteristic()}


def cmd_homology(args, X):
    _need(args, "p", "upto")
    if args.r is None:
        bv = homology.betti(X, args.p, args.upto, max_cells=args.max_cells)
        return {"space": "X", "betti": bv.to_dict()}
    conf = deleted_product.build_conf(X, args.r, max_total_dim=max(args.upto, 0) + 1,
                                      max_cells=args.max_cells)
    bv = homology.betti(conf, args.p, args.upto, max_cells=args.max_cells)
    return {"space": f"Conf_{args.r}(X)", "betti": bv.to_dict()}


def cmd_conf(args, X):
    _need(args, "r")
    C = deleted_product.build_conf(X, args.r, max_cells=args.max_cells)
    return {"conf": C.to_dict(), "empty": C.is_empty, "euler_characteristic": C.euler_characteristic()}


def cmd_def1(args, X):
    _need(args, "k", "n", "p")
    return certificates.check_complementary_acyclic(X, args.k, args.n, args.p,
                                                    max_tuples=args.max_cells).to_dict()


def cmd_saturated(args, X):
    _need(args, "r", "p")
    return certificates.check_saturated(X, args.r, args.p, max_tuples=args.max_cells).to_dict()


def cmd_weight(args, X):
    _need(args, "r", "p", "n")
    return certificates.weight_lower_bound(X, args.r, args.p, args.n, max_cells=args.max_cells).to_dict()


def cmd_certify(args, X):
    _need(args, "r", "p", "n", "d")
    kexp = args.k
    if kexp is None:
        kexp = certificates.prime_power_exponent(args.r, args.p) or 0
    rep = certificates.certify_hypotheses(X, args.r, args.p, kexp, args.n, args.d,
                                          max_cells=args.max_cells)
    return rep.to_dict()


def cmd_witness(args, X):
    _need(args, "n", "r")
    f = _load_coords(args, X)
    if args.lift:
        return witness.constraint_lift(X, args.n, f, args.r, max_tuples=args.max_cells).to_dict(X)
    w = witness.find_witness(X, args.n, args.r, f, args.bound, max_tuples=args.max_cells)
    if w is None:
        return {"witness": None}
    return {"witness": w.to_dict(X), "verified": bool(witness.verify_witness(w, f))}


def cmd_nerve(args, X):
    _need(args, "r", "n")
    cover = deleted_product.upper_ideal_cover(X, args.r, args.n)
    out = {"cover_checks": cover.verify(), "poset_size": len(cover.big)}
    out["map"] = deleted_product.nerve_map(cover).to_dict() if cover.big else None
    return out


def cmd_psi(args, X):
    _need(args, "n")
    return deleted_product.psi_map(X, args.n).to_dict()


def cmd_trials(args, X):
    _need(args, "n", "r", "d", "seed")
    stats = witness.random_trials(X, args.n, args.r, args.d, args.trials, args.seed,
                                  coord_box=args.coord_box, bound=args.bound)
    return stats.to_dict()


COMMANDS = {
    "complex": cmd_complex, "homology": cmd_homology, "conf": cmd_conf, "check-def1": cmd_def1,
    "check-saturated": cmd_saturated, "weight-bound": cmd_weight, "certify": cmd_certify,
    "witness": cmd_witness, "nerve-map": cmd_nerve, "psi": cmd_psi, "trials": cmd_trials,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vkf", description=__doc__.splitlines()[0])
    parser.add_argument("verb", choices=VERBS)
    parser.add_argument("--complex", metavar="FILE")
    parser.add_argument("--generate", metavar="KIND:N",
                        help="simplex:N, boundary:N or crosspolytope:D instead of --complex")
    parser.add_argument("--coords", metavar="FILE")
    for name in ("r", "p", "k", "n", "d", "upto", "seed", "bound"):
        parser.add_argument(f"--{name}", type=int)
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--coord-box", type=int, default=10)
    parser.add_argument("--lift", action="store_true", help="witness: run the constraint lift")
    parser.add_argument("--threads", type=int, default=1,
                        help="accepted for interface stability; computation is single threaded")
    parser.add_argument("--max-cells", type=int, default=complex_core.DEFAULT_MAX_FACES)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        X = _load_complex(args)
        result = COMMANDS[args.verb](args, X)
    except GuardExceeded as exc:
        print(f"vkf: resource guard exceeded: {exc}", file=sys.stderr)
        return 2
    except (InputError, ComplexError, ValueError) as exc:
        print(f"vkf: invalid input: {exc}", file=sys.stderr)
        return 1
    doc = {"config": _config(args), "result": result}
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
