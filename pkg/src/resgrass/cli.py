"""Command-line front end for the resonance pipeline and its oracles.

Subcommands: r1 (Hilbert polynomial of the first resonance variety),
check-point (Aomoto profile and resonance verdict for one point), oracle
(exhaustive small-field cross-check), fixtures (list built-ins), bench
(per-stage timings; no external baseline is run).  Exit codes: 0 success,
2 input error, 3 budget error.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
from pathlib import Path

from .arrangement import Arrangement, fixture, load_arrangement
from .errors import BudgetError, InputError
from .exterior import ExtElement
from .field import DEFAULT_MODULUS, is_prime
from .oracle import aomoto_profile, check_prop21, is_resonant_1, is_resonant_k
from .resonance import r1_hilbert

FIXTURES = ("A3", "Hessian")
STAGES = ("span", "groebner", "hilbert", "total")


def _load(args) -> Arrangement:
    if args.fixture and args.input:
        raise InputError("give either --fixture or --input, not both")
    if args.fixture:
        return fixture(args.fixture)
    if args.input:
        path = Path(args.input)
        try:
            text = path.read_text()
        except OSError as e:
            raise InputError(f"cannot read {args.input}: {e}") from None
        return load_arrangement(text, name=path.stem, p=args.p)
    raise InputError("an arrangement is required: --fixture <name> or --input <path>")


def _parse_coords(text: str, n: int) -> list[int]:
    try:
        coords = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise InputError(f"coordinates must be comma-separated integers, got {text!r}") from None
    if len(coords) != n:
        raise InputError(f"expected {n} coordinates, got {len(coords)}")
    return coords


def cmd_r1(args) -> int:
    arr = _load(args)
    rep = r1_hilbert(arr, p=args.p, order=args.order)
    if args.json:
        print(rep.to_json())
        return 0
    print(f"arrangement: {arr.describe()}")
    print(f"hilbert: {rep.hilbert}")
    print(f"os points: {rep.n_os_points}")
    print(f"span forms: {rep.n_span_forms}")
    t = rep.timings_ms
    print("timings ms: " + "  ".join(f"{s}={t[s]:.3f}" for s in STAGES))
    return 0


def cmd_check_point(args) -> int:
    arr = _load(args)
    coords = _parse_coords(args.coords, arr.n)
    p = args.p
    pt = ExtElement(p, 1, {(i,): c % p for i, c in enumerate(coords) if c % p})
    k = args.k
    prof = aomoto_profile(arr, pt, up_to=k)
    res1 = is_resonant_1(arr, pt)
    kres = is_resonant_k(arr, pt, k) if k >= 2 else None
    if args.json:
        obj = {
            "arrangement": arr.name,
            "coords": coords,
            "p": p,
            "profile": json.loads(prof.to_json()),
            "resonant_1": res1,
        }
        if kres is not None:
            obj["k_check"] = {
                "k": kres.k,
                "h": kres.h,
                "resonant": kres.resonant,
                "witness": kres.witness,
                "divergence": kres.divergence,
            }
        print(json.dumps(obj))
        return 0
    print(f"arrangement: {arr.describe()}")
    print(f"point: ({', '.join(str(c) for c in coords)}) over F_{p}")
    print(f"profile h^0..h^{k}: {' '.join(str(h) for h in prof.dims)}")
    print(f"resonant (grade 1): {'yes' if res1 else 'no'}")
    if kres is not None:
        print(
            f"grade {kres.k}: h={kres.h} resonant={'yes' if kres.resonant else 'no'} "
            f"witness={'yes' if kres.witness else 'no'} "
            f"divergence={'yes' if kres.divergence else 'no'}"
        )
    return 0


def cmd_oracle(args) -> int:
    arr = _load(args)
    rep = check_prop21(arr, args.q, args.budget)
    if args.json:
        print(rep.to_json())
        return 0
    print(f"arrangement: {arr.describe()}")
    print(f"field: F_{rep.q}")
    print(f"agree: {'yes' if rep.agree else 'no'}")
    print(f"resonant points: {rep.n_resonant}")
    disjoint = "yes" if rep.planes_pairwise_disjoint else "no"
    print(f"planes: {rep.n_planes} (pairwise disjoint: {disjoint})")
    print(f"plane points: {rep.n_plane_points}")
    if rep.missing:
        print(f"missing from rank test: {[list(pt) for pt in rep.missing]}")
    if rep.extra:
        print(f"flagged on no plane: {[list(pt) for pt in rep.extra]}")
    return 0


def cmd_fixtures(args) -> int:
    if args.json:
        rows = []
        for name in FIXTURES:
            arr = fixture(name)
            rows.append(
                {
                    "name": arr.name,
                    "n": arr.n,
                    "flats": len(arr.flats),
                    "realized": arr.matrix is not None,
                }
            )
        print(json.dumps(rows))
        return 0
    for name in FIXTURES:
        print(fixture(name).describe())
    return 0


def cmd_bench(args) -> int:
    names = [args.fixture] if args.fixture else list(FIXTURES)
    results = []
    for name in names:
        arr = fixture(name)
        runs = [r1_hilbert(arr, p=args.p) for _ in range(args.repeat)]
        stages = {
            s: {
                "min": min(r.timings_ms[s] for r in runs),
                "median": statistics.median(r.timings_ms[s] for r in runs),
            }
            for s in STAGES
        }
        results.append(
            {
                "fixture": arr.name,
                "hilbert": runs[0].hilbert,
                "runs": args.repeat,
                "stages": stages,
            }
        )
    if args.json:
        print(json.dumps({"results": results}))
        return 0
    for res in results:
        print(f"{res['fixture']}: {res['hilbert']} (runs={res['runs']})")
        for s in STAGES:
            st = res["stages"][s]
            print(f"  {s:<9} min={st['min']:.3f} ms  median={st['median']:.3f} ms")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resgrass",
        description="First resonance varieties via Grassmannians, with oracles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    src = argparse.ArgumentParser(add_help=False)
    src.add_argument("--fixture", help="built-in arrangement: A3 or Hessian")
    src.add_argument("--input", help="path to an arrangement file (JSON, matrix, or flats)")
    src.add_argument("--p", type=int, default=DEFAULT_MODULUS, help="field modulus (prime)")
    src.add_argument("--json", action="store_true", help="machine-readable output")

    r1 = sub.add_parser("r1", parents=[src], help="Hilbert polynomial of R^1")
    r1.add_argument("--order", choices=("grevlex", "lex"), default="grevlex",
                    help="monomial order for the Groebner step")
    r1.set_defaults(func=cmd_r1)

    cp = sub.add_parser("check-point", parents=[src], help="resonance verdict for a point")
    cp.add_argument("coords", help="comma-separated integer coordinates, length n")
    cp.add_argument("--k", type=int, default=1, help="profile depth (grade)")
    cp.set_defaults(func=cmd_check_point)

    orc = sub.add_parser("oracle", parents=[src], help="exhaustive F_q cross-check")
    orc.add_argument("--q", type=int, default=5, help="enumeration field size (prime)")
    orc.add_argument("--budget", type=int, default=None,
                     help="candidate cap (default 10^7 or RESGRASS_BUDGET)")
    orc.set_defaults(func=cmd_oracle)

    fx = sub.add_parser("fixtures", help="list built-in arrangements")
    fx.add_argument("--json", action="store_true", help="machine-readable output")
    fx.set_defaults(func=cmd_fixtures)

    bench = sub.add_parser("bench", help="per-stage pipeline timings")
    bench.add_argument("--fixture", help="bench one fixture instead of all")
    bench.add_argument("--p", type=int, default=DEFAULT_MODULUS, help="field modulus (prime)")
    bench.add_argument("--repeat", type=int, default=3, help="runs per fixture")
    bench.add_argument("--json", action="store_true", help="machine-readable output")
    bench.set_defaults(func=cmd_bench)
    return parser


def _validate(args):
    p = getattr(args, "p", None)
    if p is not None and not is_prime(p):
        raise InputError(f"--p must be prime, got {p}")
    q = getattr(args, "q", None)
    if q is not None and not is_prime(q):
        raise InputError(f"--q must be prime, got {q}")
    budget = getattr(args, "budget", None)
    if budget is not None and budget <= 0:
        raise InputError(f"--budget must be positive, got {budget}")
    repeat = getattr(args, "repeat", None)
    if repeat is not None and repeat <= 0:
        raise InputError(f"--repeat must be positive, got {repeat}")
    k = getattr(args, "k", None)
    if k is not None and k < 1:
        raise InputError(f"--k must be at least 1, got {k}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _validate(args)
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except BudgetError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
