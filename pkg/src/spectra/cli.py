"""Command-line surface: load/save structures, compute probabilities, apply
constructions, run verification suites, and emit spectrum reports.

Exit codes: 0 success, 1 verification failure, 2 input or validation error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import DEFAULT_CAPS
from .core import COMMUTE, FiniteGroup, FiniteRing, PolySpec, format_rational
from .errors import SpectraError
from .io import (
    dumps_canonical,
    load_structure,
    save_structure,
    spectrum_report_dict,
    structure_to_dict,
)
from .probability import pr_c_group, pr_f_ring
from .spectrum import BilinearFamilySpec, gate_check_32
from .verify import SUITES, run_suite

_CONSTRUCT_OPS = ("nring", "circle", "commring", "malcev", "product")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectra",
        description="Exact commuting/annihilating/f-probabilities in finite "
                    "groups and rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_inputs(p, twice=False):
        p.add_argument("--catalog", action="append", default=[],
                       metavar="NAME", help="catalog name, e.g. heisenberg:3")
        p.add_argument("--in", action="append", default=[], dest="paths",
                       metavar="FILE", help="JSON structure file")
        if twice:
            return
        return p

    prob = sub.add_parser("prob", help="print a probability as p/q")
    add_inputs(prob)
    prob.add_argument("--kind", choices=("group", "ring"),
                      help="sanity check on the input kind")
    prob.add_argument("--poly", metavar="A,B",
                      help="ring pairing coefficients (default 1,-1)")
    prob.add_argument("--method", choices=("brute", "class-count"),
                      default="brute", help="group counting method")

    con = sub.add_parser("construct", help="apply a construction, write JSON")
    add_inputs(con)
    con.add_argument("--op", required=True, choices=_CONSTRUCT_OPS)
    con.add_argument("--out", required=True, metavar="FILE")
    con.add_argument("--order-cap", type=int, default=None)

    ana = sub.add_parser("analyze", help="print structural facts")
    add_inputs(ana)

    ver = sub.add_parser("verify", help="run a named verification suite")
    ver.add_argument("--suite", required=True, choices=sorted(SUITES))
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--order-cap", type=int, default=None)
    ver.add_argument("--max-order", type=int, default=None)
    ver.add_argument("--min-instances", type=int, default=None)
    ver.add_argument("--pairs", type=int, default=None)

    enu = sub.add_parser("enumerate", help="sweep a family and print its spectrum")
    enu.add_argument("--invariants", metavar="D1,D2,...",
                     help="exhaustive sweep over all compatible sc tensors")
    enu.add_argument("--bilinear", metavar="V/W",
                     help="bilinear family, e.g. 2,2/2")
    enu.add_argument("--full", action="store_true",
                     help="bilinear family without the alternating restriction")
    enu.add_argument("--poly", metavar="A,B", help="pairing (default 1,-1)")
    enu.add_argument("--out", metavar="FILE", help="also write the JSON report")

    cat = sub.add_parser("catalog", help="build a named structure (or list names)")
    cat.add_argument("name", nargs="?", help="e.g. ut3:2, symmetric:4")
    cat.add_argument("--out", metavar="FILE")
    return parser


def _load_inputs(args) -> list:
    from .constructions import catalog

    structures = [catalog(name) for name in args.catalog]
    structures.extend(load_structure(path) for path in args.paths)
    return structures


def _one_input(args):
    structures = _load_inputs(args)
    if len(structures) != 1:
        raise SpectraError(f"expected exactly one input, got {len(structures)}")
    return structures[0]


def _cmd_prob(args) -> int:
    obj = _one_input(args)
    kind = "group" if isinstance(obj, FiniteGroup) else "ring"
    if args.kind and args.kind != kind:
        raise SpectraError(f"input is a {kind}, not a {args.kind}")
    if kind == "group":
        if args.poly:
            raise SpectraError("--poly only applies to rings")
        result = pr_c_group(obj, method=args.method)
    else:
        poly = PolySpec.parse(args.poly) if args.poly else COMMUTE
        result = pr_f_ring(obj, poly)
    print(format_rational(result.value))
    return 0


def _cmd_construct(args) -> int:
    from .constructions import (circle_group, commutator_ring,
                                direct_product_group, direct_product_ring,
                                malcev_group, nring)

    caps = DEFAULT_CAPS if args.order_cap is None else \
        DEFAULT_CAPS.with_order_cap(args.order_cap)
    structures = _load_inputs(args)
    if args.op == "product":
        if len(structures) != 2:
            raise SpectraError("product needs exactly two inputs")
        a, b = structures
        if isinstance(a, FiniteGroup) != isinstance(b, FiniteGroup):
            raise SpectraError("product inputs must both be groups or both rings")
        out = direct_product_group(a, b, caps) if isinstance(a, FiniteGroup) \
            else direct_product_ring(a, b, caps)
    else:
        obj = structures[0] if len(structures) == 1 else None
        if obj is None:
            raise SpectraError(f"{args.op} needs exactly one input")
        if args.op == "nring":
            out = nring(_expect(obj, FiniteRing, args.op), caps)
        elif args.op == "circle":
            out = circle_group(_expect(obj, FiniteRing, args.op), caps)
        elif args.op == "commring":
            out = commutator_ring(_expect(obj, FiniteGroup, args.op), caps)
        else:
            out = malcev_group(_expect(obj, FiniteRing, args.op), caps)
    save_structure(out, args.out)
    kind = "group" if isinstance(out, FiniteGroup) else "ring"
    order = out.n if isinstance(out, FiniteGroup) else out.order
    print(f"wrote {kind} of order {order} to {args.out}")
    return 0


def _expect(obj, cls, op):
    if not isinstance(obj, cls):
        want = "ring" if cls is FiniteRing else "group"
        raise SpectraError(f"{op} needs a {want} input")
    return obj


def _cmd_analyze(args) -> int:
    from .structure import (center_group, is_antisymmetric, is_associative,
                            is_strongly_antisymmetric, lower_central_series,
                            parity_and_p, ring_powers)

    obj = _one_input(args)
    parity = parity_and_p(obj)
    if isinstance(obj, FiniteGroup):
        print(f"kind: group{_name_suffix(obj.name)}")
        print(f"order: {obj.n}")
        _print_parity(parity)
        print(f"abelian: {_yn(obj.is_abelian)}")
        print(f"center size: {center_group(obj).size}")
        series = lower_central_series(obj)
        cls = series.class_value if series.nilpotent else "not nilpotent"
        print(f"nilpotency class: {cls}")
        print(f"lower central series sizes: {list(series.series_sizes)}")
    else:
        print(f"kind: ring{_name_suffix(obj.name)}")
        print(f"order: {obj.order}")
        print(f"invariants: {list(obj.invariants)}")
        _print_parity(parity)
        powers = ring_powers(obj)
        cls = powers.class_value if powers.nilpotent else "not nilpotent"
        print(f"power chain class: {cls}")
        print(f"power chain sizes: {list(powers.series_sizes)}")
        print(f"associative: {_yn(is_associative(obj))}")
        print(f"antisymmetric: {_yn(is_antisymmetric(obj))}")
        print(f"strongly antisymmetric: {_yn(is_strongly_antisymmetric(obj))}")
    return 0


def _name_suffix(name: str) -> str:
    return f" ({name})" if name else ""


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def _print_parity(parity) -> None:
    print(f"odd order: {_yn(parity.is_odd)}")
    if parity.prime_power:
        p, e = parity.prime_power
        print(f"prime power: {p}^{e}")
    else:
        print("prime power: no")


def _cmd_verify(args) -> int:
    caps = DEFAULT_CAPS
    overrides = {}
    if args.max_order is not None:
        overrides["max_order"] = args.max_order
    if args.min_instances is not None:
        overrides["min_instances"] = args.min_instances
    if args.pairs is not None:
        overrides["pairs"] = args.pairs
    if args.order_cap is not None:
        if args.suite == "odd22":
            overrides["order_cap"] = args.order_cap
        else:
            caps = replace(caps, order_cap=args.order_cap)
    report = run_suite(args.suite, caps=caps, seed=args.seed, **overrides)
    print(f"suite: {report.suite}")
    print(f"instances checked: {report.instances}")
    print(f"max order: {report.max_order}")
    print(f"wall time: {report.wall_time:.2f}s")
    print(f"failures: {len(report.failures)}")
    for failure in report.failures:
        print(f"  FAIL {failure.message}")
        if failure.witness is not None:
            print(f"       witness: {dumps_canonical(failure.witness).strip()}")
    return 0 if report.ok else 1


def _cmd_enumerate(args) -> int:
    from .spectrum import enumerate_bilinear_rings, enumerate_general_rings, spectrum_of

    if bool(args.invariants) == bool(args.bilinear):
        raise SpectraError("choose exactly one of --invariants / --bilinear")
    poly = PolySpec.parse(args.poly) if args.poly else COMMUTE
    if args.invariants:
        invariants = tuple(int(d) for d in args.invariants.split(","))
        rings = enumerate_general_rings(invariants)
        family = f"general({args.invariants})"
    else:
        v_text, _, w_text = args.bilinear.partition("/")
        if not w_text:
            raise SpectraError("--bilinear expects V/W, e.g. 2,2/2")
        spec = BilinearFamilySpec(
            tuple(int(d) for d in v_text.split(",")),
            tuple(int(d) for d in w_text.split(",")),
            alternating=not args.full)
        rings = enumerate_bilinear_rings(spec)
        family = f"bilinear({args.bilinear})"
    spectrum = spectrum_of(rings, poly, family)
    gate = gate_check_32(spectrum) if poly == COMMUTE else None
    text = dumps_canonical(spectrum_report_dict(spectrum, gate))
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    return 0


def _cmd_catalog(args) -> int:
    from .constructions import catalog, catalog_names

    if not args.name:
        print("\n".join(catalog_names()))
        return 0
    obj = catalog(args.name)
    if args.out:
        save_structure(obj, args.out)
        print(f"wrote {args.name} to {args.out}")
    else:
        sys.stdout.write(dumps_canonical(structure_to_dict(obj)))
    return 0


_HANDLERS = {
    "prob": _cmd_prob,
    "construct": _cmd_construct,
    "analyze": _cmd_analyze,
    "verify": _cmd_verify,
    "enumerate": _cmd_enumerate,
    "catalog": _cmd_catalog,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except SpectraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
