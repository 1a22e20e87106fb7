"""Command line interface.

Exit codes: 0 success, 1 computation error, 2 input or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from pathlib import Path

from .arrangements import parse_line_file, presentation_from_lines
from .covers import FiniteAbelianQuotient, SchreierCover, fermat_group, load_ceva_group, tietze_simplify
from .dsl import parse_group_dsl, render_group_dsl
from .engine import METHODS, depth, torsion_scan
from .words import Character, GroupPresentation, validate_character


class InputError(Exception):
    """Bad command line input; reported with exit code 2."""


# --- input parsing ---

def load_group(source: str, affine: bool = False) -> GroupPresentation:
    """``ceva``, ``fermat:N``, a ``.lines`` arrangement file or a group DSL file."""
    try:
        if source == "ceva":
            return load_ceva_group()
        m = re.fullmatch(r"fermat:(\d+)", source)
        if m:
            return fermat_group(int(m.group(1)))
        path = Path(source)
        text = path.read_text()
        if path.suffix == ".lines":
            return presentation_from_lines(parse_line_file(text), projective=not affine)
        return parse_group_dsl(text)
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    except ValueError as exc:
        raise InputError(f"{source}: {exc}") from None


_VALUE_RE = re.compile(r"z\(\s*(\d+)\s*,\s*(-?\d+)\s*\)|(-?1)")


def parse_character(text: str, P: GroupPresentation) -> Character:
    """'e5=z(2,1),e3_0=1' sets e5 to zeta_2^1; unlisted generators go to 1; -1 means z(2,1)."""
    values: dict[int, tuple[int, int]] = {}
    for item in filter(None, (s.strip() for s in re.split(r",(?![^()]*\))", text))):
        if "=" not in item:
            raise InputError(f"character entry {item!r} is not of the form name=value")
        name, val = (s.strip() for s in item.split("=", 1))
        try:
            g = P.index(name)
        except (KeyError, ValueError):
            raise InputError(f"unknown generator {name!r} in character") from None
        m = _VALUE_RE.fullmatch(val)
        if not m:
            raise InputError(f"cannot parse value {val!r}; use z(N,k), 1 or -1")
        if m.group(3) is not None:
            N, k = (1, 0) if m.group(3) == "1" else (2, 1)
        else:
            N, k = int(m.group(1)), int(m.group(2))
            if N < 1:
                raise InputError("root-of-unity order must be positive")
        values[g] = (N, k)
    order = math.lcm(*(N for N, _ in values.values())) if values else 1
    ex = [0] * P.ngens
    for g, (N, k) in values.items():
        ex[g] = k * (order // N)
    return Character(order, tuple(ex))


def _split_names(text: str | None, P: GroupPresentation) -> list[int] | None:
    if not text:
        return None
    try:
        return [P.index(s.strip()) for s in text.split(",") if s.strip()]
    except (KeyError, ValueError) as exc:
        raise InputError(f"unknown generator in {text!r}: {exc}") from None


def _words(texts: list[str], P: GroupPresentation):
    """Parse relator words over P's generators with the group DSL."""
    if not texts:
        return []
    src = "group W { gens " + " ".join(P.names) + "; " + " ".join(f"rel {t};" for t in texts) + " }"
    try:
        return list(parse_group_dsl(src).relators)
    except ValueError as exc:
        raise InputError(f"cannot parse word list: {exc}") from None


def _load_json(source: str) -> dict:
    from .fixtures import data_text

    try:
        path = Path(source)
        text = path.read_text() if path.exists() else data_text(source)
        return json.loads(text)
    except (OSError, FileNotFoundError):
        raise InputError(f"cannot read fixture {source}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: invalid JSON ({exc})") from None


# --- subcommands ---

def cmd_depth(args, out) -> int:
    P = load_group(args.group, args.affine)
    chi = parse_character(args.char, P)
    ok, why = validate_character(chi, P)
    if not ok:
        raise InputError(f"invalid character: {why}")
    rep = depth(P, chi, args.method)
    d = rep.to_json()
    d["generators"] = list(P.names)
    json.dump(d, out, indent=2)
    out.write("\n")
    return 0


def cmd_scan(args, out) -> int:
    P = load_group(args.group, args.affine)
    mask = _split_names(args.mask, P)
    jobs = args.jobs if args.jobs else (os.cpu_count() or 1)
    res = torsion_scan(P, args.order, mask, args.method, jobs=jobs, budget=args.budget)
    if args.format == "json":
        json.dump({"generators": list(P.names), "order": args.order,
                   "results": [r.to_json() for r in res.values()]}, out, indent=2)
        out.write("\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["order"] + list(P.names) + ["depth", "method"])
        for chi, r in res.items():
            w.writerow([chi.order] + list(chi.exponents) + [r.depth, r.method])
    return 0


def _parse_image(text: str, P: GroupPresentation, k: int) -> tuple[int, tuple[int, ...]]:
    if "=" not in text:
        raise InputError(f"image {text!r} is not of the form name=a,b,...")
    name, vals = text.split("=", 1)
    g = _split_names(name, P)[0]
    try:
        v = tuple(int(x) for x in vals.split(","))
    except ValueError:
        raise InputError(f"malformed image {text!r}") from None
    if len(v) != k:
        raise InputError(f"image of {name} needs {k} coordinates")
    return g, v


def cmd_cover(args, out) -> int:
    P = load_group(args.group)
    try:
        factors = tuple(int(x) for x in args.factors.split(","))
    except ValueError:
        raise InputError(f"malformed factor list {args.factors!r}") from None
    images = [(0,) * len(factors)] * P.ngens
    for source in args.image or []:
        g, v = _parse_image(source, P, len(factors))
        images[g] = v
    alpha = FiniteAbelianQuotient(factors, tuple(images))
    trans = _split_names(args.transversal, P)
    cover = SchreierCover(P, alpha, trans)
    K = cover.presentation().with_relators(cover.lift_relators(_words(args.kill or [], P)))
    if args.simplify:
        keep = _split_names(args.keep, K) or []
        K, _ = tietze_simplify(K, args.budget, keep)
    out.write(render_group_dsl(K, args.name))
    return 0


def cmd_arrangement(args, out) -> int:
    try:
        lines = parse_line_file(Path(args.lines).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {args.lines}: {exc.strerror}") from None
    except ValueError as exc:
        raise InputError(f"{args.lines}: {exc}") from None
    P = presentation_from_lines(lines, projective=not args.affine)
    out.write(render_group_dsl(P, args.name))
    return 0


def _pencil_verify(data: dict, out) -> int:
    from .fixtures import arrangement_group, fermat_pencils
    from .orbifold import C22, check_equivariance, lift_pencil, orbifold_depth, verify_marked_pencil
    from .words import verify_hom

    ok = True
    if "types" in (data.get("pencils") or [{}])[0]:
        rho = Character.from_signs(data["marking"])
        d_rho = orbifold_depth(C22, rho)
        for entry in data["pencils"]:
            P = arrangement_group(len(entry["types"]))
            p, _ = lift_pencil(P, entry["types"], entry["name"])
            chi = Character.from_signs(entry["character"])
            marked = verify_marked_pencil(p, chi, rho)
            d = depth(P, chi).depth
            ok &= marked
            out.write(f"{entry['name']}: marked={marked} depth={d} d(rho)={d_rho}\n")
    else:
        n = data["n"]
        pencils, _ = fermat_pencils(n)
        rho = Character(data["marking"]["order"], tuple(data["marking"]["exponents"]))
        chi = Character(data["character"]["order"], tuple(data["character"]["exponents"]))
        for p in pencils:
            good = verify_hom(p.hom) and check_equivariance(p) and verify_marked_pencil(p, chi, rho)
            ok &= good
            out.write(f"{p.name}: hom, equivariance and pullback {'ok' if good else 'FAIL'}\n")
    return 0 if ok else 1


def _pencil_independence(data: dict, out) -> int:
    from .fixtures import fermat_pencils
    from .orbifold import independence_check

    if "n" not in data:
        raise InputError("independence needs a fixture with equivariant data")
    pencils, _ = fermat_pencils(data["n"])
    res = independence_check(pencils, data["n"], data.get("independence_generators"))
    json.dump(res, out, indent=2)
    out.write("\n")
    return 0


def cmd_pencil(args, out) -> int:
    data = _load_json(args.fixture)
    if args.action == "verify":
        return _pencil_verify(data, out)
    return _pencil_independence(data, out)


def cmd_fixtures(args, out) -> int:
    from .acceptance import run_all

    results = run_all(lambda r: (out.write(r.line() + "\n"), out.flush()))
    passed = sum(r.passed for r in results)
    out.write(f"{passed}/{len(results)} criteria passed\n")
    return 0 if passed == len(results) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="charvar", description="Depths of torsion characters of presented groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    def group_arg(p):
        p.add_argument("group", help="group DSL file, .lines arrangement file, 'ceva' or 'fermat:N'")
        p.add_argument("--affine", action="store_true", help="treat a line file as an affine arrangement")

    p = sub.add_parser("depth", help="depth of one character")
    group_arg(p)
    p.add_argument("--char", required=True, help="e.g. 'e5=z(2,1),e3_0=1'; unlisted generators are 1")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("scan", help="depths of all characters of order dividing N")
    group_arg(p)
    p.add_argument("order", type=int)
    p.add_argument("--mask", help="comma-separated generators allowed to be nontrivial")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: CPU count)")
    p.add_argument("--budget", type=int, default=200_000)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("cover", help="kernel of a map onto a finite abelian group")
    p.add_argument("group")
    p.add_argument("--factors", required=True, help="orders of the cyclic factors, e.g. 2,2")
    p.add_argument("--image", action="append", help="generator image, e.g. e1=1,0 (default 0)")
    p.add_argument("--transversal", help="generators used for coset representatives, e.g. e1,e2")
    p.add_argument("--kill", action="append", help="word to kill in every coset, e.g. 'e0^2'")
    p.add_argument("--simplify", action="store_true")
    p.add_argument("--keep", help="Schreier generators to keep while simplifying")
    p.add_argument("--budget", type=int, default=10_000)
    p.add_argument("--name", default="K")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("arrangement", help="presentation of a real line arrangement complement")
    p.add_argument("lines")
    p.add_argument("--affine", action="store_true")
    p.add_argument("--name", default="A")
    p.set_defaults(func=cmd_arrangement)

    p = sub.add_parser("pencil", help="pencil fixtures")
    p.add_argument("action", choices=("verify", "independence"))
    p.add_argument("fixture", help="JSON file or bundled fixture name")
    p.set_defaults(func=cmd_pencil)

    p = sub.add_parser("fixtures", help="bundled checks")
    p.add_argument("action", choices=("run",))
    p.set_defaults(func=cmd_fixtures)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"charvar: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError, ArithmeticError) as exc:
        print(f"charvar: error: {exc}", file=sys.stderr)
        return 1


def run(argv) -> tuple[int, str]:
    """Run the CLI and capture standard output (for tests)."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
