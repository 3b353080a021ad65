"""Command-line front-end.

Exit status: 0 success, 1 invalid arguments or input, 2 file I/O failure,
3 a verification check failed.  Errors are reported as a single JSON line on
standard error.

File formats
------------
Data file (grid values), one record per line, ``#`` starts a comment::

    3 2 0.25
    3 1 -1.5

Coefficient file, self-describing header then one record per label::

    kind amdst
    N 4
    n 2
    3 2 0.5
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from typing import Optional, Sequence

import numpy as np

from . import discrete as disc
from .errors import InvalidArgumentError, SizeLimitError
from .kernel import AngularConvention, Family, evaluate
from .symmetry import (DominantLabelSet, GridKind, LabelSetKind, enumerate_grid,
                       enumerate_labels)
from .verify import SUITES, run_suite

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_VERIFY = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, status: int = EXIT_INVALID):
        super().__init__(message)
        self.status = status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


# ---------------------------------------------------------------- parsing helpers

def _vector(text: str, what: str) -> np.ndarray:
    try:
        values = np.array([float(v) for v in text.split(",")])
    except ValueError:
        raise CliError(f"{what} must be comma-separated numbers, got {text!r}")
    if not np.all(np.isfinite(values)):
        raise CliError(f"{what} entries must be finite")
    return values


def _int_tuple(tokens: Sequence[str], where: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in tokens)
    except ValueError:
        raise CliError(f"{where}: expected integer indices, got {' '.join(tokens)!r}")


def _finite(token: str, where: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise CliError(f"{where}: bad value {token!r}")
    if not np.isfinite(value):
        raise CliError(f"{where}: value {token!r} is not finite")
    return value


def _records(path: str) -> list[list[str]]:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}", EXIT_IO)
    out = []
    for line in lines:
        body = line.split("#", 1)[0].strip()
        if body:
            out.append(body.split())
    return out


def _write_atomic(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".symtrig-", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror or exc}", EXIT_IO)


def _transform_kind(args) -> disc.TransformKind:
    if args.kind is None or args.N is None:
        raise CliError("--kind and --N are required")
    kind = disc.TransformKind.parse(args.kind, args.N, 1)
    n = args.n if args.n is not None else (2 if kind.kind.multivariate else 1)
    return disc.TransformKind(kind.kind, args.N, n)


def read_data(path: str, tk: disc.TransformKind) -> np.ndarray:
    """Grid values in canonical order; every grid point must appear exactly once."""
    position = {k: i for i, k in enumerate(tk.grid())}
    values = np.full(len(position), np.nan)
    for rec in _records(path):
        if len(rec) != tk.n + 1:
            raise CliError(f"{path}: record {' '.join(rec)!r} needs {tk.n} indices and a value")
        k = _int_tuple(rec[:-1], path)
        if k not in position:
            raise CliError(f"{path}: point {k} is not on the {tk.kind.value} grid (N={tk.N})")
        if not np.isnan(values[position[k]]):
            raise CliError(f"{path}: point {k} given twice")
        values[position[k]] = _finite(rec[-1], path)
    missing = [k for k, i in position.items() if np.isnan(values[i])]
    if missing:
        raise CliError(f"{path}: {len(missing)} grid points missing, first {missing[0]}")
    return values


def format_data(tk: disc.TransformKind, values: np.ndarray) -> str:
    lines = [f"# {tk.kind.value} grid values, N={tk.N}, n={tk.n}"]
    lines += [" ".join(map(str, k)) + f" {float(v)!r}" for k, v in zip(tk.grid(), values)]
    return "\n".join(lines) + "\n"


def format_coefficients(tk: disc.TransformKind, coeffs: np.ndarray) -> str:
    lines = [f"kind {tk.kind.value}", f"N {tk.N}", f"n {tk.n}"]
    lines += [" ".join(map(str, r)) + f" {float(c)!r}" for r, c in zip(tk.labels(), coeffs)]
    return "\n".join(lines) + "\n"


def read_coefficients(path: str) -> tuple[disc.TransformKind, np.ndarray]:
    header: dict[str, str] = {}
    body = []
    for rec in _records(path):
        if rec[0] in ("kind", "N", "n") and len(rec) == 2 and rec[0] not in header:
            header[rec[0]] = rec[1]
        else:
            body.append(rec)
    if set(header) != {"kind", "N", "n"}:
        raise CliError(f"{path}: header must give kind, N and n")
    try:
        tk = disc.TransformKind.parse(header["kind"], int(header["N"]), int(header["n"]))
    except ValueError as exc:
        raise CliError(f"{path}: {exc}")
    position = {r: i for i, r in enumerate(tk.labels())}
    coeffs = np.full(len(position), np.nan)
    for rec in body:
        if len(rec) != tk.n + 1:
            raise CliError(f"{path}: record {' '.join(rec)!r} needs {tk.n} indices and a value")
        r = _int_tuple(rec[:-1], path)
        if r not in position:
            raise CliError(f"{path}: label {r} is not in the {tk.kind.value} label set")
        if not np.isnan(coeffs[position[r]]):
            raise CliError(f"{path}: label {r} given twice")
        coeffs[position[r]] = _finite(rec[-1], path)
    # absent labels carry a zero coefficient
    return tk, np.nan_to_num(coeffs, nan=0.0)


# ---------------------------------------------------------------- commands

def cmd_eval(args) -> int:
    if args.family is None or args.label is None or args.point is None:
        raise CliError("eval needs --family, --label and --point")
    lam = _vector(args.label, "--label")
    x = _vector(args.point, "--point")
    print(repr(float(evaluate(args.family, args.conv, lam, x))))
    return EXIT_OK


def cmd_transform(args) -> int:
    tk = _transform_kind(args)
    if args.input is None:
        raise CliError("transform needs --in")
    coeffs = disc.forward(tk, read_data(args.input, tk))
    _write_atomic(args.out, format_coefficients(tk, coeffs))
    return EXIT_OK


def cmd_inverse(args) -> int:
    if args.input is None:
        raise CliError("inverse needs --in")
    tk, coeffs = read_coefficients(args.input)
    for flag, have in (("--N", tk.N), ("--n", tk.n)):
        given = getattr(args, flag[2:])
        if given is not None and given != have:
            raise CliError(f"{flag} {given} contradicts the coefficient file ({have})")
    if args.kind is not None and disc.Kind(args.kind.lower()) is not tk.kind:
        raise CliError(f"--kind {args.kind} contradicts the coefficient file ({tk.kind.value})")
    _write_atomic(args.out, format_data(tk, disc.inverse(tk, coeffs)))
    return EXIT_OK


def cmd_gram(args) -> int:
    tk = _transform_kind(args)
    gram = disc.gram_matrix(tk)
    expected = disc.expected_gram_diagonal(tk)
    lines = [f"# gram matrix of {tk.kind.value}, N={tk.N}, n={tk.n}; rows follow the label order"]
    lines += [" ".join(f"{v:.12g}" for v in row) for row in gram]
    off = gram - np.diag(np.diag(gram))
    lines.append(f"max_offdiag {float(np.max(np.abs(off), initial=0.0)):.3e}")
    lines.append(f"max_diag_defect {float(np.max(np.abs(np.diag(gram) - expected), initial=0.0)):.3e}")
    _write_atomic(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def _enumeration_target(args):
    name = args.kind
    if name is None:
        raise CliError("enumerate needs --kind (a transform kind, label-set kind or grid kind)")
    if args.N is None:
        raise CliError("enumerate needs --N")
    n = args.n if args.n is not None else 2
    for enum_cls in (LabelSetKind, GridKind):
        try:
            return enum_cls(name), n
        except ValueError:
            pass
    tk = _transform_kind(args)
    return tk, tk.n


def cmd_enumerate(args) -> int:
    target, n = _enumeration_target(args)
    lines = []
    if isinstance(target, LabelSetKind):
        lines += [" ".join(map(str, m)) for m in enumerate_labels(DominantLabelSet(target, args.N, n))]
    elif isinstance(target, GridKind):
        lines += [" ".join(map(str, p.numerators)) for p in enumerate_grid(target, args.N, n)]
    else:
        if args.what in ("labels", "both"):
            lines.append("# labels")
            lines += [" ".join(map(str, r)) for r in target.labels()]
        if args.what in ("grid", "both"):
            lines.append("# grid")
            lines += [" ".join(map(str, k)) for k in target.grid()]
    _write_atomic(args.out, "\n".join(lines) + ("\n" if lines else ""))
    return EXIT_OK


def sample_mesh(n: int, mesh: int) -> np.ndarray:
    """Regular mesh of ``[0, 1/2]`` per axis, restricted to weakly descending points."""
    if mesh < 2:
        raise CliError("--mesh needs at least 2 points per axis")
    axis = np.linspace(0.0, 0.5, mesh)
    grids = np.meshgrid(*([axis] * n), indexing="ij")
    x = np.stack([g.ravel() for g in grids], axis=-1)
    keep = np.all(np.diff(x, axis=1) <= 0, axis=1)
    return x[keep]


def cmd_sample(args) -> int:
    if args.family is None or args.label is None:
        raise CliError("sample needs --family and --label")
    lam = _vector(args.label, "--label")
    x = sample_mesh(lam.shape[0], args.mesh)
    values = evaluate(args.family, args.conv, lam[None, :], x)
    header = ",".join([f"x{i + 1}" for i in range(lam.shape[0])] + ["value"])
    rows = [",".join(f"{v!r}" for v in (*p, float(f))) for p, f in zip(x.tolist(), values)]
    _write_atomic(args.out, "\n".join([header] + rows) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.N is not None and args.N < 1 or args.n is not None and args.n < 1:
        raise CliError("--N and --n must be positive")
    rows = run_suite(args.suite, N=args.N, n=args.n, quad_points=args.quad_points, tol=args.tol)
    width = max(len(r.name) for r in rows)
    lines = [f"{'check':<{width}}  {'max_defect':>11}  {'tol':>9}  result"]
    for r in rows:
        lines.append(f"{r.name:<{width}}  {r.max_defect:11.3e}  {r.tol:9.1e}  "
                     f"{'pass' if r.passed else 'FAIL'}")
    failed = sum(not r.passed for r in rows)
    lines.append(f"{len(rows) - failed}/{len(rows)} checks passed")
    _write_atomic(args.out, "\n".join(lines) + "\n")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


COMMANDS = {
    "eval": cmd_eval,
    "transform": cmd_transform,
    "inverse": cmd_inverse,
    "gram": cmd_gram,
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "sample": cmd_sample,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="symtrig", description=__doc__.split("\n")[0], allow_abbrev=False)
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--family", choices=[f.value for f in Family])
    parser.add_argument("--conv", choices=[c.value for c in AngularConvention], default="two-pi")
    parser.add_argument("--kind")
    parser.add_argument("--label")
    parser.add_argument("--point")
    parser.add_argument("--N", type=int)
    parser.add_argument("--n", type=int)
    parser.add_argument("--in", dest="input")
    parser.add_argument("--out")
    parser.add_argument("--quad-points", type=int, default=32)
    parser.add_argument("--tol", type=float)
    parser.add_argument("--suite", choices=SUITES, default="all")
    parser.add_argument("--mesh", type=int, default=101)
    parser.add_argument("--what", choices=("labels", "grid", "both"), default="both")
    return parser


def _report(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except CliError as exc:
        _report("io" if exc.status == EXIT_IO else "invalid-argument", str(exc))
        return exc.status
    except (InvalidArgumentError, SizeLimitError, ValueError) as exc:
        _report("invalid-argument", str(exc))
        return EXIT_INVALID
    except OSError as exc:
        _report("io", str(exc))
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
