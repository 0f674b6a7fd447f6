"""Command-line front end: solve single cells, sweep the reproduction grid, verify A1."""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from .diamond import fundamental_group, kernel_lattice, lattice_data
from .lattice import ResourceError
from .rootdata import DomainError, RootSystemType
from .rsolver import ExcludedError, R0Solution, check_f_equations, f_from_solution, solve
from .table1 import GRID_ELLS, GRID_TYPES, expected, is_excluded, signature

__all__ = [
    "main",
    "SolutionEntry",
    "SolutionReport",
    "build_report",
    "report_to_json",
    "report_from_json",
    "format_report",
    "table_rows",
    "EXIT_OK",
    "EXIT_INPUT",
    "EXIT_EMPTY",
    "EXIT_EXCLUDED",
    "EXIT_MISMATCH",
]

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_EMPTY = 2
EXIT_EXCLUDED = 3
EXIT_MISMATCH = 4


@dataclass(frozen=True)
class SolutionEntry:
    H1_order: int
    H_type: str  # isomorphism type of H1 (and H2), e.g. Z4 or Z2xZ2
    H1: tuple  # generators, each a tuple of pi1 coordinates
    H2: tuple
    omega: tuple  # exponent matrix on generator pairs, entries (num, den) of exp(2 pi i num/den)
    dk: tuple | None
    starred: bool
    verification: str  # not-run | passed | failed | skipped: <reason>


@dataclass(frozen=True)
class SolutionReport:
    type: str
    rank: int
    ell: int
    kernel: str
    pi1: tuple  # invariant factors
    pi1_generators: tuple  # names
    starred: bool
    count: int
    solutions: tuple


def _entry(sol: R0Solution, verification: str) -> SolutionEntry:
    p = sol.omega
    orders = [p.G.element_order(b) for b in p.basis1]
    return SolutionEntry(
        H1_order=p.d,
        H_type="x".join(f"Z{o}" for o in orders) or "Z1",
        H1=tuple(tuple(int(c) for c in b) for b in p.basis1),
        H2=tuple(tuple(int(c) for c in b) for b in p.basis2),
        omega=tuple(tuple((t.numerator, t.denominator) for t in row) for row in p.turns),
        dk=tuple(sol.dk) if sol.dk else None,
        starred=sol.starred,
        verification=verification,
    )


def _verify_f(sol: R0Solution, bound: int) -> str:
    try:
        f = f_from_solution(sol, bound=bound)
        return "passed" if check_f_equations(f, bound=bound) else "failed"
    except ResourceError as e:
        return f"skipped: {e}"


def _verify_full(sol: R0Solution) -> str:
    from .uqverify import SmallQuantumSl2, assemble_R_from_solution, verify_quasitriangular

    alg = SmallQuantumSl2(sol.ell)
    rep = verify_quasitriangular(alg, assemble_R_from_solution(alg, sol))
    return "passed" if rep.ok else "failed"


def build_report(t: RootSystemType, ell: int, kernel: str = "square", verify: str = "none", bound: int = 200):
    lp = kernel_lattice(t, ell, kernel)
    sols = solve(t, ell, lp)
    G = fundamental_group(t)
    entries = []
    for s in sols:
        if verify == "none":
            v = "not-run"
        elif verify == "f":
            v = _verify_f(s, bound)
        else:
            v = _verify_f(s, bound)
            if str(t) == "A1" and v != "failed":
                v = _verify_full(s)
        entries.append(_entry(s, v))
    entries.sort(key=lambda e: (e.H1_order, e.H1, e.H2, e.omega))
    return SolutionReport(
        type=str(t),
        rank=t.rank,
        ell=ell,
        kernel=kernel,
        pi1=tuple(G.invariant_factors),
        pi1_generators=tuple(G.names),
        starred=lattice_data(t, ell).starred,
        count=len(entries),
        solutions=tuple(entries),
    )


def report_to_json(r: SolutionReport) -> dict:
    d = asdict(r)

    def lists(x):
        if isinstance(x, (list, tuple)):
            return [lists(y) for y in x]
        if isinstance(x, dict):
            return {k: lists(v) for k, v in x.items()}
        return x

    return lists(d)


def _tuples(x):
    return tuple(_tuples(y) for y in x) if isinstance(x, list) else x


def report_from_json(d: dict) -> SolutionReport:
    sols = tuple(
        SolutionEntry(
            H1_order=s["H1_order"],
            H_type=s["H_type"],
            H1=_tuples(s["H1"]),
            H2=_tuples(s["H2"]),
            omega=_tuples(s["omega"]),
            dk=_tuples(s["dk"]) if s["dk"] is not None else None,
            starred=s["starred"],
            verification=s["verification"],
        )
        for s in d["solutions"]
    )
    return SolutionReport(
        type=d["type"],
        rank=d["rank"],
        ell=d["ell"],
        kernel=d["kernel"],
        pi1=_tuples(d["pi1"]),
        pi1_generators=_tuples(d["pi1_generators"]),
        starred=d["starred"],
        count=d["count"],
        solutions=sols,
    )


def _elem_name(x, names) -> str:
    parts = [n if c == 1 else f"{c}{n}" for c, n in zip(x, names) if c]
    return "+".join(parts) or "0"


def format_report(r: SolutionReport) -> str:
    star = "*" if r.starred else ""
    lines = [
        f"{r.type}  ell={r.ell}  kernel={r.kernel}  pi1=" + ("x".join(f"Z{f}" for f in r.pi1) or "Z1"),
        f"{'#':>4} | {'H_i':<6}| {'H1':<22}| {'H2':<22}| omega on generator pairs",
        f"{str(r.count) + star:>4} |",
    ]
    names = r.pi1_generators
    for s in r.solutions:
        h1 = "<" + ", ".join(_elem_name(b, names) for b in s.H1) + ">" if s.H1 else "{0}"
        h2 = "<" + ", ".join(_elem_name(b, names) for b in s.H2) + ">" if s.H2 else "{0}"
        om = []
        for i, row in enumerate(s.omega):
            for j, (n, dd) in enumerate(row):
                a, b = _elem_name(s.H1[i], names), _elem_name(s.H2[j], names)
                om.append(f"w({a},{b})=e(2pi i {n}/{dd})" if n else f"w({a},{b})=1")
        om_s = "; ".join(om) or "w(0,0)=1"
        dk = f"  (d,k)={s.dk[0]},{s.dk[1]}" if s.dk else ""
        ver = f"  [{s.verification}]" if s.verification != "not-run" else ""
        lines.append(f"{'':>4} | {s.H_type:<6}| {h1:<22}| {h2:<22}| {om_s}{dk}{ver}")
    return "\n".join(lines)


# --- grid sweep -----------------------------------------------------------------


def _cell(args):
    from .rootdata import parse_type

    name, ell = args
    t = parse_type(name)
    t0 = time.perf_counter()
    exp = expected(t, ell)
    sols = solve(t, ell)
    got = frozenset(signature(s.omega) for s in sols)
    starred = lattice_data(t, ell).starred
    match = got == exp.solutions and starred == exp.starred
    if match:
        status = "PASS"
    elif exp.open_question:
        status = "WARN"
    else:
        status = "FAIL"
    alt = exp.alternative is not None and got == exp.alternative
    got_labels = [s.dk if s.dk else _sig_label(s) for s in sols]
    return {
        "type": name,
        "ell": ell,
        "status": status,
        "count": len(sols),
        "expected_count": len(exp.solutions),
        "starred": starred,
        "expected_starred": exp.starred,
        "got": got_labels,
        "expected": list(exp.labels),
        "alternative_matches": alt,
        "note": exp.note,
        "seconds": time.perf_counter() - t0,
    }


def _sig_label(s: R0Solution) -> str:
    names = fundamental_group(s.g).names
    p = s.omega
    h1 = ",".join(_elem_name(b, names) for b in p.basis1) or "0"
    h2 = ",".join(_elem_name(b, names) for b in p.basis2) or "0"
    mat = [[str(t) for t in row] for row in p.turns]
    return f"<{h1}>x<{h2}> {mat}"


def table_rows(types=GRID_TYPES, ells=GRID_ELLS, max_rank: int | None = None, jobs: int = 1) -> list[dict]:
    from .rootdata import parse_type

    cells = []
    for name in types:
        t = parse_type(name)
        if max_rank is not None and t.rank > max_rank:
            continue
        for ell in ells:
            if not is_excluded(t, ell):
                cells.append((name, ell))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(_cell, cells))
    else:
        rows = [_cell(c) for c in cells]
    return rows


def _format_row(row: dict) -> str:
    star = "*" if row["starred"] else ""
    estar = "*" if row["expected_starred"] else ""
    s = f"{row['status']:<4} {row['type']:<3} ell={row['ell']:<3} #{row['count']}{star} (table #{row['expected_count']}{estar})"
    if row["status"] != "PASS":
        s += f"\n       computed: {row['got']}\n       table:    {row['expected']}"
        if row["status"] == "WARN":
            which = "matches" if row["alternative_matches"] else "does not match"
            s += f"\n       open question ({row['note']}): computed set {which} the other reading"
    return s


# --- argument handling ------------------------------------------------------------


def _parse_type(family: str, rank: int) -> RootSystemType:
    return RootSystemType(family.upper(), rank)


def _cmd_solve(a) -> int:
    t = _parse_type(a.type, a.rank)
    try:
        r = build_report(t, a.ell, a.kernel, a.verify, a.f_bound)
    except ExcludedError as e:
        subs = " x ".join(str(s) for s in e.substitute)
        print(f"{t} at ell={a.ell} is excluded; substitute {subs}", file=sys.stderr)
        return EXIT_EXCLUDED
    if a.format == "json":
        print(json.dumps(report_to_json(r), indent=2))
    else:
        print(format_report(r))
    return EXIT_OK if r.count else EXIT_EMPTY


def _cmd_table(a) -> int:
    ells = tuple(int(x) for x in a.ell_set.split(",")) if a.ell_set else GRID_ELLS
    types = tuple(a.types.split(",")) if a.types else GRID_TYPES
    rows = table_rows(types, ells, a.max_rank, a.jobs)
    if a.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        for row in rows:
            print(_format_row(row))
    counts = {k: sum(r["status"] == k for r in rows) for k in ("PASS", "WARN", "FAIL")}
    print(f"summary: {counts['PASS']} PASS, {counts['WARN']} WARN, {counts['FAIL']} FAIL", file=sys.stderr)
    return EXIT_MISMATCH if counts["FAIL"] else EXIT_OK


def _cmd_verify(a) -> int:
    t = _parse_type(a.type, a.rank)
    if a.full and str(t) != "A1":
        print(
            "full axiom verification is only available for A1; "
            "use check_f_equations (verify without --full) for other types",
            file=sys.stderr,
        )
        return EXIT_INPUT
    try:
        sols = solve(t, a.ell)
    except ExcludedError as e:
        print(f"{t} at ell={a.ell} is excluded; substitute {' x '.join(map(str, e.substitute))}", file=sys.stderr)
        return EXIT_EXCLUDED
    if not sols:
        print("no solutions")
        return EXIT_EMPTY
    bad = False
    if a.full:
        from .uqverify import SmallQuantumSl2, assemble_R_from_solution, verify_quasitriangular

        alg = SmallQuantumSl2(a.ell)
        print(f"A1 ell={a.ell}: algebra dimension {alg.dimension}")
        for s in sols:
            t0 = time.perf_counter()
            rep = verify_quasitriangular(alg, assemble_R_from_solution(alg, s))
            dt = time.perf_counter() - t0
            flags = ", ".join(
                f"{name}={'pass' if ok else 'FAIL'}"
                for name, ok in zip(("intertwining", "coproduct-left", "coproduct-right"), rep.axioms())
            )
            print(f"  (d,k)={s.dk}: invertible={'yes' if rep.invertible else 'NO'}, {flags}  ({dt:.2f}s)")
            bad |= not rep.ok
    else:
        for s in sols:
            t0 = time.perf_counter()
            v = _verify_f(s, a.f_bound)
            print(f"  {_sig_label(s)}: f-equations {v}  ({time.perf_counter() - t0:.2f}s)")
            bad |= v == "failed"
    return EXIT_MISMATCH if bad else EXIT_OK


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rmatrix", description="R-matrices of small quantum groups")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("solve", help="solutions for one (type, rank, ell)")
    s.add_argument("--type", required=True, choices=list("ABCDEFGabcdefg"))
    s.add_argument("--rank", required=True, type=int)
    s.add_argument("--ell", required=True, type=int)
    s.add_argument("--kernel", choices=("square", "lusztig"), default="square")
    s.add_argument("--format", choices=("table", "json"), default="table")
    s.add_argument("--verify", choices=("none", "f", "full"), default="none")
    s.add_argument("--f-bound", type=int, default=200)
    s.set_defaults(func=_cmd_solve)

    t = sub.add_parser("table", help="sweep the grid and compare with the reference table")
    t.add_argument("--max-rank", type=int, default=None)
    t.add_argument("--ell-set", default=None, help="comma-separated ell values")
    t.add_argument("--types", default=None, help="comma-separated types such as A1,B2")
    t.add_argument("--format", choices=("text", "json"), default="text")
    t.add_argument("--jobs", type=int, default=1)
    t.set_defaults(func=_cmd_table)

    v = sub.add_parser("verify", help="verify the solutions of one cell")
    v.add_argument("--type", required=True, choices=list("ABCDEFGabcdefg"))
    v.add_argument("--rank", required=True, type=int)
    v.add_argument("--ell", required=True, type=int)
    v.add_argument("--full", action="store_true", help="check the R-matrix axioms in the A1 algebra")
    v.add_argument("--f-bound", type=int, default=200)
    v.set_defaults(func=_cmd_verify)
    return p


def main(argv=None) -> int:
    p = _parser()
    try:
        a = p.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return a.func(a)
    except (DomainError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
