"""Command-line interface.

Exit status: 0 when every check passes, 1 when any check fails, 2 on a usage
or input-validation error. The default tolerance is read from the
``UNIBRAID_TOL`` environment variable.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .braidgen import (
    CLASSES,
    BraidSpec,
    OddBraidParams,
    build_block_diagonalizer,
    build_braid,
    build_generators,
    build_M,
    build_odd_braid,
    build_projectors,
    canonicalize_phases,
    diagonal_form,
    phased_braid,
)
from .conformance import (
    ODD_TOLERANCE,
    ResidualReport,
    check_baxterized,
    check_braid,
    check_diagonalization,
    check_hecke,
    check_odd_braid,
    check_odd_unitarity,
    check_periodicity,
    check_projectors,
    check_quadratic,
    check_unitarity,
    residual_report,
)
from .entangle import act_and_analyze, bell_generalized, odd_ket_label, odd_superpositions, schmidt_profile
from .fusion import check_block_recursion, closed_form_trace, structured_block_traces
from .links import BraidWord, build_enhanced, invariant
from .physics import (
    SingularShiftError,
    cayley_closed_form_n1,
    cayley_closed_form_n2,
    cayley_potential,
    hamiltonian,
    hamiltonian_two_site_formula,
    potential_V,
)
from .tensorcore import default_tolerance

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FAMILIES = ("rhat", "P+", "P-", "M", "Minv", "V", "diag", "odd", "phased")
REPORT_HEADER = "check\tmax_abs\tfrobenius\ttol\tstatus"


class UsageError(Exception):
    pass


# -- matrix documents ---------------------------------------------------------


@dataclass
class MatrixDocument:
    """Dense complex matrix with string metadata; ``data`` is row-major ``[re, im]`` pairs."""

    matrix: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def cols(self) -> int:
        return self.matrix.shape[1]

    def dumps(self) -> str:
        flat = np.asarray(self.matrix, dtype=np.complex128).reshape(-1)
        if not np.all(np.isfinite(flat)):
            raise ValueError("matrix has non-finite entries")
        pairs = ",\n    ".join(f"[{z.real:.17g}, {z.imag:.17g}]" for z in flat)
        meta = json.dumps({k: str(v) for k, v in sorted(self.meta.items())})
        return (
            f'{{\n  "rows": {self.rows},\n  "cols": {self.cols},\n'
            f'  "meta": {meta},\n  "data": [\n    {pairs}\n  ]\n}}\n'
        )

    @classmethod
    def loads(cls, text: str) -> "MatrixDocument":
        try:
            doc = json.loads(text)
            rows, cols = int(doc["rows"]), int(doc["cols"])
            data = np.asarray(doc["data"], dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed matrix document: {exc}") from exc
        if data.shape != (rows * cols, 2):
            raise ValueError(f"malformed matrix document: data shape {data.shape} for {rows}x{cols}")
        m = (data[:, 0] + 1j * data[:, 1]).reshape(rows, cols)
        return cls(m, dict(doc.get("meta", {})))


# -- helpers ------------------------------------------------------------------


def _tol(args) -> float:
    return args.tol if args.tol is not None else default_tolerance()


def _emit_reports(reports, out) -> int:
    print(REPORT_HEADER, file=out)
    for r in reports:
        print(r.row(), file=out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _odd_params(args) -> OddBraidParams:
    p = args.params if args.params is not None else [1.0, -1.0, 0.5, -0.5, 0.25, -0.25]
    if len(p) != 6:
        raise UsageError(f"--params needs 6 values, got {len(p)}")
    return OddBraidParams(*p, theta=args.theta)


def _write_doc(doc: MatrixDocument, args, out):
    text = doc.dumps()
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from exc


# -- gen / check ----------------------------------------------------------------


def build_family(args) -> MatrixDocument:
    fam, n = args.family, args.n
    meta = {"family": fam, "n": n}
    if fam == "rhat":
        spec = BraidSpec(n, args.cls, args.z)
        m = build_braid(spec if args.power == 1 else spec.inverse())
        meta.update({"class": spec.cls, "z": repr(args.z), "power": args.power})
    elif fam in ("P+", "P-"):
        m = build_projectors(n)[0 if fam == "P+" else 1]
    elif fam in ("M", "Minv"):
        m = build_M(n, inverse=fam == "Minv")
    elif fam == "V":
        m = build_block_diagonalizer(n)
    elif fam == "diag":
        m = diagonal_form(n, args.z)
        meta["z"] = repr(args.z)
    elif fam == "odd":
        params = _odd_params(args)
        m = build_odd_braid(params)
        meta = {"family": fam, "theta": repr(args.theta), "params": ",".join(map(repr, args.params or []))}
    else:  # phased
        m = phased_braid(args.phi)
        meta = {"family": fam, "phi": repr(args.phi)}
    return MatrixDocument(m, meta)


def document_reports(doc: MatrixDocument, tol: float) -> list[ResidualReport]:
    """Unitarity always; the constant braid equation for constant braid matrices; idempotency for projectors."""
    m = doc.matrix
    family = doc.meta.get("family", "rhat")
    if family in ("P+", "P-"):
        return [residual_report("idempotent", m @ m - m, tol)]
    reports = [check_unitarity(m, tol)]
    constant = family == "phased" or (family == "rhat" and abs(float(doc.meta.get("z", "1"))) == 1.0)
    if constant:
        reports.append(check_braid(m, tol))
    return reports


def cmd_gen(args, out) -> int:
    doc = build_family(args)
    if not args.check:
        _write_doc(doc, args, out)
        return EXIT_OK
    tol = _tol(args)
    again = MatrixDocument.loads(doc.dumps())
    before, after = document_reports(doc, tol), document_reports(again, tol)
    identical = np.array_equal(doc.matrix, again.matrix) and before == after
    print(REPORT_HEADER, file=out)
    for r in after:
        print(r.row(), file=out)
    print(f"round-trip\t{'identical' if identical else 'DIFFERS'}", file=out)
    return EXIT_OK if identical else EXIT_FAIL


def cmd_check(args, out) -> int:
    with open(args.path, encoding="utf-8") as fh:
        doc = MatrixDocument.loads(fh.read())
    return _emit_reports(document_reports(doc, _tol(args)), out)


# -- verify -------------------------------------------------------------------


def verify_tasks(max_n: int, grid: int, seed: int, draws: int, tol: float) -> list[tuple[tuple, callable]]:
    """``(sort key, thunk)`` pairs of the conformance sweep.

    The constant braid equation is checked at ``z = ±1``; elsewhere on the
    grid the Baxterized equation is the one that holds.
    """
    zs = np.linspace(-1.0, 1.0, grid)
    tasks = []
    for n in range(1, max_n + 1):
        for ci, cls in enumerate(CLASSES):
            for z in (-1.0, 1.0):
                tasks.append(((n, ci, 0, z, 0.0), lambda n=n, cls=cls, z=z: _named(
                    check_braid(build_braid(BraidSpec(n, cls, z)), tol), f"braid[n={n},{cls},z={z:g}]")))
            for a, z in enumerate(zs):
                tasks.append(((n, ci, 1, z, 0.0), lambda n=n, cls=cls, z=z: _named(
                    check_unitarity(build_braid(BraidSpec(n, cls, z)), tol), f"unitarity[n={n},{cls},z={z:g}]")))
                tasks.append(((n, ci, 2, z, 0.0), lambda n=n, cls=cls, z=z: _named(
                    check_quadratic(BraidSpec(n, cls, z), tol), f"quadratic[n={n},{cls},z={z:g}]")))
                for zp in zs:
                    if abs(1.0 + z * zp) < 1e-12:
                        continue
                    tasks.append(((n, ci, 3, z, zp), lambda n=n, cls=cls, z=z, zp=zp:
                                  check_baxterized(n, cls, z, zp, tol)))
            tasks.append(((n, ci, 4, 1.0, 0.0), lambda n=n, cls=cls: _named(
                check_hecke(build_braid(BraidSpec(n, cls)), tol), f"hecke[n={n},{cls}]")))
            tasks.append(((n, ci, 5, 1.0, 0.0), lambda n=n, cls=cls: [
                _named(r, f"{r.name}[n={n},{cls}]") for r in check_periodicity(build_braid(BraidSpec(n, cls)), tol)]))
        tasks.append(((n, 9, 6, 0.0, 0.0), lambda n=n: check_projectors(n, tol=tol)))
        tasks.append(((n, 9, 7, 0.0, 0.0), lambda n=n: check_diagonalization(n, tol=tol)))
    rng = np.random.default_rng(seed)
    for k in range(draws):
        vals = rng.uniform(-2.0, 2.0, 6)
        theta, thetap = rng.uniform(-1.0, 1.0, 2)
        params = OddBraidParams(*vals, theta=theta)
        tasks.append(((99, k, 8, theta, thetap), lambda p=params, t=theta, tp=thetap, k=k: [
            _named(check_odd_braid(p, t, tp, max(tol, ODD_TOLERANCE)), f"odd-braid[draw={k}]"),
            _named(check_odd_unitarity(p, max(tol, 1e-12)), f"odd-unitarity[draw={k}]"),
        ]))
    return tasks


def _named(r: ResidualReport, name: str) -> ResidualReport:
    return ResidualReport(name, r.max_abs_residual, r.frobenius_residual, r.tolerance)


def run_verify(max_n: int, grid: int, seed: int, draws: int, jobs: int, tol: float) -> list[ResidualReport]:
    tasks = sorted(verify_tasks(max_n, grid, seed, draws, tol), key=lambda t: t[0])
    thunks = [t[1] for t in tasks]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda f: f(), thunks))
    else:
        results = [f() for f in thunks]
    reports = []
    for r in results:
        reports.extend(r if isinstance(r, list) else [r])
    return reports


def cmd_verify(args, out) -> int:
    if args.max_n < 1 or args.grid < 2 or args.jobs < 1 or args.draws < 0:
        raise UsageError("--max-n >= 1, --grid >= 2, --jobs >= 1 and --draws >= 0 are required")
    reports = run_verify(args.max_n, args.grid, args.seed, args.draws, args.jobs, _tol(args))
    return _emit_reports(reports, out)


# -- tower, hamiltonian, potential -------------------------------------------------


def cmd_tower(args, out) -> int:
    tol = args.tol if args.tol is not None else 1e-10
    print("order\ttrace\tclosed_form\trel_err\tstatus", file=out)
    ok = True
    for r in range(1, args.order + 1):
        tr = complex(np.sum(structured_block_traces(args.kind, args.n, args.z, r, args.cls)))
        ref = closed_form_trace(args.n, args.z, r)
        rel = abs(tr - ref) / max(abs(ref), 1e-300)
        good = rel <= tol
        ok &= good
        print(f"{r}\t{tr.real:.17g}\t{ref:.17g}\t{rel:.3e}\t{'pass' if good else 'FAIL'}", file=out)
    rec = check_block_recursion(args.kind, args.n, args.z, args.order, args.cls)
    print(rec.row(), file=out)
    return EXIT_OK if ok and rec.passed else EXIT_FAIL


def cmd_hamiltonian(args, out) -> int:
    H = hamiltonian(args.n, args.sites, args.cls)
    meta = {"family": "hamiltonian", "n": args.n, "sites": args.sites, "class": args.cls}
    status = EXIT_OK
    if args.sites == 2:
        res = float(np.max(np.abs(H - hamiltonian_two_site_formula(args.n))))
        meta["formula_residual"] = repr(res)
        status = EXIT_OK if res == 0.0 else EXIT_FAIL
    _write_doc(MatrixDocument(H, meta), args, out)
    return status


def cmd_potential(args, out) -> int:
    try:
        X = cayley_potential(args.n, args.z, args.mu)
    except SingularShiftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    meta = {"family": f"potential-{args.kind}", "n": args.n, "z": repr(args.z), "mu": repr(args.mu)}
    status = EXIT_OK
    if args.n <= 2:
        closed = cayley_closed_form_n1(args.z, args.mu) if args.n == 1 else cayley_closed_form_n2(args.z, args.mu)
        res = float(np.max(np.abs(X - closed)))
        meta["closed_form_residual"] = repr(res)
        status = EXIT_OK if res <= (args.tol if args.tol is not None else 1e-10) else EXIT_FAIL
    M = X if args.kind == "X" else potential_V(args.n, args.z, args.mu)
    _write_doc(MatrixDocument(M, meta), args, out)
    return status


# -- invariant, entangle, gauge -------------------------------------------------


def cmd_invariant(args, out) -> int:
    d = args.d if args.d is not None else [1.0] * args.n
    system = build_enhanced(args.n, d)
    word = BraidWord.parse(args.word, args.strands)
    val = invariant(system, word, args.z)
    trace_F = float(np.sum(system.F_diagonal).real)
    report = {
        "word": str(word),
        "strands": word.strands,
        "n": args.n,
        "d": list(system.d),
        "z": args.z,
        "value": [val.real, val.imag],
        "b": system.b_at(args.z),
        "unknot_trace_F": trace_F,
        "unknot_b_over_sqrt2": system.b / np.sqrt(2.0),
        "note": "the unknot evaluates to Tr F, which is twice b/sqrt(2)",
    }
    print(json.dumps(report, indent=2), file=out)
    return EXIT_OK


def _profile_json(p) -> dict:
    return {"coefficients": [float(c) for c in p.coefficients], "rank": p.rank, "entropy_bits": p.entropy_bits}


def _support_json(state, labels=None) -> list:
    return [
        {"ket": labels(i, j) if labels else [i, j], "amplitude": [a.real, a.imag]}
        for (i, j), a in sorted(state.support().items())
    ]


def cmd_entangle(args, out) -> int:
    if args.odd:
        states = odd_superpositions(_odd_params(args))
        label = lambda i, j: odd_ket_label((i - 1) * 3 + (j - 1))  # noqa: E731
        payload = [
            {"input": odd_ket_label(k), "output": _support_json(s, label), "schmidt": _profile_json(schmidt_profile(s))}
            for k, s in enumerate(states)
        ]
    elif args.bell is not None:
        try:
            j, k, sign = (int(t) for t in args.bell.split(","))
        except ValueError as exc:
            raise UsageError(f"--bell expects j,k,sign: {args.bell!r}") from exc
        s = bell_generalized(args.n, args.z, j, k, sign)
        payload = {"state": _support_json(s), "flip_sign": s.flip_sign, "schmidt": _profile_json(schmidt_profile(s))}
    else:
        s, p = act_and_analyze(args.n, args.z, args.c, args.cp)
        payload = {"input": [args.c, args.cp], "state": _support_json(s), "flip_sign": s.flip_sign,
                   "schmidt": _profile_json(p)}
    print(json.dumps(payload, indent=2), file=out)
    return EXIT_OK


def cmd_gauge(args, out) -> int:
    tol = args.tol if args.tol is not None else 1e-13
    r = phased_braid(args.phi)
    Y, canon = canonicalize_phases(r)
    g = build_generators(1)
    target = (np.eye(4) + np.kron(g.L, g.K)) / np.sqrt(2.0)
    form = residual_report(f"canonical=L(x)K[phi={args.phi:g}]", canon - target, tol)
    before, after = check_braid(r), check_braid(canon)
    change = ResidualReport(
        f"braid-residual-change[phi={args.phi:g}]",
        abs(before.max_abs_residual - after.max_abs_residual),
        abs(before.frobenius_residual - after.frobenius_residual),
        1e-12,
    )
    meta = {"family": "gauge", "phi": repr(args.phi), "Y": f"diag({Y[0, 0]!r}, {Y[1, 1]!r})"}
    _write_doc(MatrixDocument(canon, meta), args, out)
    return _emit_reports([form, _named(before, "braid[phased]"), _named(after, "braid[canonical]"), change],
                         sys.stderr if not getattr(args, "output", None) else out)


# -- parser ---------------------------------------------------------------------


def _class_arg(text: str) -> str:
    from .braidgen import canonical_class

    try:
        return canonical_class(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unibraid", description="Unitary braid matrices and derived structures.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n=True, tol=True, output=False):
        if n:
            p.add_argument("--n", type=int, default=1, help="half the local dimension (default 1)")
        if tol:
            p.add_argument("--tol", type=float, default=None, help="tolerance override")
        if output:
            p.add_argument("--output", "-o", help="write the matrix document here instead of stdout")

    def odd(p):
        p.add_argument("--params", type=_float_list, default=None,
                       help="m11+,m11-,m12+,m12-,m21+,m21- for the 9x9 family")
        p.add_argument("--theta", type=float, default=0.0)

    p = sub.add_parser("gen", help="emit a matrix document")
    common(p, output=True)
    p.add_argument("--family", choices=FAMILIES, default="rhat")
    p.add_argument("--class", dest="cls", type=_class_arg, default="KJ")
    p.add_argument("--z", type=float, default=1.0)
    p.add_argument("--power", type=int, choices=(1, -1), default=1)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--check", action="store_true", help="re-ingest the document and compare residual reports")
    odd(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="residual reports of a matrix document")
    common(p, n=False)
    p.add_argument("path")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="conformance sweep")
    common(p, n=False)
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--grid", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--draws", type=int, default=3, help="random draws of the 9x9 family")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tower", help="tower traces against the closed form")
    common(p)
    p.add_argument("--kind", choices=("L", "T"), default="L")
    p.add_argument("--class", dest="cls", type=_class_arg, default="KJ")
    p.add_argument("--z", type=float, default=0.5)
    p.add_argument("--order", type=int, default=4)
    p.set_defaults(func=cmd_tower)

    p = sub.add_parser("hamiltonian", help="chain Hamiltonian")
    common(p, tol=False, output=True)
    p.add_argument("--sites", type=int, default=2)
    p.add_argument("--class", dest="cls", type=_class_arg, default="KJ")
    p.set_defaults(func=cmd_hamiltonian)

    p = sub.add_parser("potential", help="Cayley-transform potential")
    common(p, output=True)
    p.add_argument("--z", type=float, default=0.5)
    p.add_argument("--mu", type=_parse_complex, default=0.3)
    p.add_argument("--kind", choices=("X", "V"), default="X")
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser("invariant", help="link invariant of a braid word")
    common(p, tol=False)
    p.add_argument("--d", type=_float_list, default=None, help="comma-separated d_1..d_n (default all 1)")
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--word", default="", help='e.g. "1,2,-1"')
    p.add_argument("--z", type=float, default=1.0)
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("entangle", help="entangled states from product states")
    common(p, tol=False)
    p.add_argument("--z", type=float, default=1.0)
    p.add_argument("--c", type=int, default=1)
    p.add_argument("--cp", type=int, default=1)
    p.add_argument("--bell", default=None, help="j,k,sign for the generalized Bell state")
    p.add_argument("--odd", action="store_true", help="9x9 family superpositions")
    odd(p)
    p.set_defaults(func=cmd_entangle)

    p = sub.add_parser("gauge", help="remove anti-diagonal phases from the 4x4 braid matrix")
    common(p, n=False, output=True)
    p.add_argument("--phi", type=float, default=0.0)
    p.set_defaults(func=cmd_gauge)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, ValueError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"{parser.prog} {args.command}: failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


run = main

if __name__ == "__main__":
    sys.exit(main())
