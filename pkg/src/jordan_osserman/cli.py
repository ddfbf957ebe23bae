"""Command-line front end.

Exit codes: 0 ran and consistent with the theory, 1 operational error,
2 theorem hypothesis p < q not met, 3 a proven claim appears violated.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .char_class import Obstruction, factorization_obstruction, obstruction_table
from .curvature import (
    constant_curvature_tensor,
    from_symmetric_form,
    jacobi_operator,
    perturbed_constant_curvature,
    validate_symmetries,
)
from .errors import HypothesisViolation, OssermanError, SymmetryError
from .indefinite import DEFAULT_TOL, SignatureSpace, sample_unit_spacelike
from .osserman import DEFAULT_SAMPLES, spacelike_jordan_osserman_test, verify_main_theorem
from .serialization import dumps, read_json, tensor_from_json, tensor_to_json, vector_to_json
from .spectral import (
    DEFAULT_CLUSTER_TOL,
    full_decomposition,
    isotropic_top_stratum,
    jordan_structure,
    para_complex_check,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_HYPOTHESIS = 2
EXIT_VIOLATION = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


class CliError(Exception):
    pass


def _signature(text):
    try:
        p, q = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected P,Q, got {text!r}")
    return p, q


def _floats(text):
    return [float(t) for t in text.split(",") if t.strip()]


def _symmetric_form(text, m):
    kind, _, body = text.partition(":")
    if kind != "diag":
        raise CliError(f"unsupported symmetric form {text!r} (use diag:a,b,...)")
    vals = _floats(body)
    if len(vals) != m:
        raise CliError(f"diag form has {len(vals)} entries, signature needs {m}")
    return np.diag(vals)


def _add_source(p):
    g = p.add_argument_group("tensor source (generator or --input)")
    g.add_argument("--signature", type=_signature, metavar="P,Q")
    g.add_argument("--constant-curvature", type=float, metavar="K")
    g.add_argument("--symmetric-form", metavar="diag:a,b,...")
    g.add_argument("--perturb", type=float, metavar="EPS",
                   help="add EPS times the rank-one term along the last basis vector")
    g.add_argument("--input", metavar="FILE", help="tensor JSON file")


def _add_sampling(p):
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, metavar="N")
    p.add_argument("--seed", type=int, default=0, metavar="S")


def _add_tols(p):
    p.add_argument("--tol-rank", type=float, default=DEFAULT_TOL, metavar="X")
    p.add_argument("--tol-cluster", type=float, default=DEFAULT_CLUSTER_TOL, metavar="X")
    p.add_argument("--tol-symmetry", type=float, default=DEFAULT_TOL, metavar="X")


def _tensor(args, allow_input=True):
    generated = args.constant_curvature is not None or args.symmetric_form is not None
    if args.input and generated:
        raise CliError("give either a generator or --input, not both")
    if args.input:
        if not allow_input:
            raise CliError("generate needs a generator, not --input")
        try:
            return tensor_from_json(read_json(args.input), args.tol_symmetry)
        except SymmetryError as exc:
            raise CliError(f"{args.input}: {exc}") from exc
    if not generated:
        raise CliError("no tensor source: use --constant-curvature, --symmetric-form or --input")
    if args.signature is None:
        raise CliError("--signature is required with a generator")
    if args.constant_curvature is not None and args.symmetric_form is not None:
        raise CliError("choose one of --constant-curvature and --symmetric-form")
    space = SignatureSpace.standard(*args.signature)
    if args.symmetric_form is not None:
        R = from_symmetric_form(space, _symmetric_form(args.symmetric_form, space.dim))
        if args.perturb:
            raise CliError("--perturb applies to --constant-curvature only")
    elif args.perturb:
        R = perturbed_constant_curvature(space, args.constant_curvature, args.perturb)
    else:
        R = constant_curvature_tensor(space, args.constant_curvature)
    return R


def _config(args):
    keys = ("signature", "constant_curvature", "symmetric_form", "perturb", "input",
            "samples", "seed", "tol_rank", "tol_cluster", "tol_symmetry")
    out = {k: getattr(args, k) for k in keys if hasattr(args, k)}
    if out.get("signature") is not None:
        out["signature"] = list(out["signature"])
    return out


def _emit(args, payload):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(payload))


def cmd_generate(args):
    R = _tensor(args, allow_input=False)
    report = validate_symmetries(R, args.tol_symmetry)
    if not report.passed:
        raise CliError(f"generated tensor fails validation: {report.to_dict()}")
    text = dumps(tensor_to_json(R))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote m={R.space.dim} tensor, signature ({R.space.p},{R.space.q}), to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_classify(args):
    R = _tensor(args)
    v = spacelike_jordan_osserman_test(R, args.samples, args.seed, args.tol_cluster, args.tol_rank)
    _emit(args, {"command": "classify", "config": _config(args), "verdict": v.to_dict()})
    print(f"{v.kind.value}: signature ({R.space.p},{R.space.q}), "
          f"{v.samples_used} samples, seed {v.seed}")
    if v.reference_structure is not None:
        print(f"  reference structure: {json.dumps(v.reference_structure)}")
    if v.witness:
        print(f"  witness: samples {v.witness.first_index} and {v.witness.second_index} "
              f"differ in {v.witness.what}")
    return EXIT_OK


def cmd_verify_theorem(args):
    R = _tensor(args)
    try:
        rep = verify_main_theorem(R, args.samples, args.seed, args.tol_cluster, args.tol_rank)
    except HypothesisViolation as exc:
        _emit(args, {"command": "verify-theorem", "config": _config(args),
                     "error": str(exc), "hypothesis": "p<q violated"})
        print(f"{exc}; the theorem says nothing here (use classify instead)")
        return EXIT_HYPOTHESIS
    _emit(args, {"command": "verify-theorem", "config": _config(args), "report": rep.to_dict()})
    if not rep.hypothesis_met:
        print(f"hypothesis not met: tensor is {rep.verdict.kind.value} on the samples; "
              "conclusions not evaluated")
        return EXIT_OK
    status = "PASS" if rep.passed else "FAIL"
    print(f"{status}: eigenvalues real={rep.eigenvalues_all_real}, "
          f"diagonalizable={rep.diagonalizable_everywhere} at all {len(rep.per_sample_details)} samples")
    return EXIT_OK if rep.passed else EXIT_VIOLATION


def cmd_obstruction(args):
    pinned = (args.p, args.q, args.r)
    if all(v is not None for v in pinned):
        rows = [(args.p, args.q, args.r, factorization_obstruction(args.p, args.q, args.r))]
    else:
        if args.q is not None and args.q > args.max_q:
            raise CliError(f"q={args.q} exceeds --max-q={args.max_q}")
        rows = obstruction_table(args.max_q, args.p, args.q, args.r)
        if not rows:
            raise CliError("no (p, q, r) with 1 <= r <= p < q in the requested range")
    bad = [row for row in rows if row[3] is not Obstruction.IMPOSSIBLE]
    table = [{"p": p, "q": q, "r": r, "verdict": v.value} for p, q, r, v in rows]
    _emit(args, {"command": "obstruction", "rows": table, "all_impossible": not bad})
    if args.format == "json":
        sys.stdout.write(dumps(table))
    else:
        print(f"{'p':>3} {'q':>3} {'r':>3}  verdict")
        for p, q, r, v in rows:
            print(f"{p:>3} {q:>3} {r:>3}  {v.value}")
    print(f"{len(rows)} cases, {len(bad)} possible witnesses", file=sys.stderr)
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_decompose(args):
    R = _tensor(args)
    space = R.space
    if args.point:
        x = space.check_vector(np.array(_floats(args.point)))
    else:
        x = sample_unit_spacelike(space, args.seed, 1)[0]
    J = jacobi_operator(R, x).matrix
    st = jordan_structure(space, J, args.tol_rank, args.tol_cluster)
    dec = full_decomposition(space, J, args.tol_rank, args.tol_cluster)
    comps = []
    for (lam, sub), (_, sizes) in zip(dec.components, st.blocks):
        neg, pos, zero = sub.signature(args.tol_rank)
        entry = {"eigenvalue": lam.to_dict(), "dim": sub.dim, "sizes": list(sizes),
                 "signature": [neg, pos], "degenerate_directions": zero}
        if max(sizes) > 1:
            strat = isotropic_top_stratum(space, J, lam, args.tol_rank)
            entry["isotropic_stratum"] = {"power": strat.power, "dim": strat.subspace.dim,
                                          "max_gram_entry": strat.max_gram_entry,
                                          "isotropic": strat.isotropic}
        elif not lam.is_real:
            entry["para_complex"] = para_complex_check(space, J, lam, args.tol_rank).to_dict()
        comps.append(entry)
    payload = {
        "command": "decompose", "config": _config(args),
        "point": vector_to_json(x), "structure": st.to_json(), "components": comps,
        "orthogonality_residual": dec.orthogonality_residual, "min_abs_det": dec.min_abs_det,
    }
    _emit(args, payload)
    print(f"J(x) at {np.array2string(x, precision=4)}:")
    for c in comps:
        ev = c["eigenvalue"]
        lam = f"{ev['re']:.6g}" + (f"+{ev['im']:.6g}i" if ev["im"] else "")
        print(f"  {lam}: dim {c['dim']}, blocks {c['sizes']}, signature {tuple(c['signature'])}")
    print(f"  orthogonality residual {dec.orthogonality_residual:.2e}, "
          f"min |det| {dec.min_abs_det:.2e}")
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="jordan-osserman", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a curvature tensor JSON file")
    _add_source(g)
    g.add_argument("--tol-symmetry", type=float, default=DEFAULT_TOL, metavar="X")
    g.add_argument("--out", metavar="FILE")
    g.set_defaults(func=cmd_generate)

    for name, func, help_ in (
        ("classify", cmd_classify, "spacelike (Jordan) Osserman classification"),
        ("verify-theorem", cmd_verify_theorem, "check real spectrum and diagonalizability for p<q"),
        ("decompose", cmd_decompose, "generalized eigenspace decomposition of J(x)"),
    ):
        c = sub.add_parser(name, help=help_)
        _add_source(c)
        _add_sampling(c)
        _add_tols(c)
        c.add_argument("--out", metavar="FILE", help="write the full JSON report here")
        if name == "decompose":
            c.add_argument("--point", metavar="x1,x2,...",
                           help="base point (default: first unit spacelike sample of --seed)")
        c.set_defaults(func=func)

    o = sub.add_parser("obstruction", help="Z2 factorization obstruction table")
    o.add_argument("--p", type=int)
    o.add_argument("--q", type=int)
    o.add_argument("--r", type=int)
    o.add_argument("--max-q", type=int, default=12)
    o.add_argument("--format", choices=("text", "json"), default="text")
    o.add_argument("--out", metavar="FILE")
    o.set_defaults(func=cmd_obstruction)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, OssermanError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
