"""
Command-line front end.

Every command reads JSON, runs one pipeline and writes JSON (or CSV for ``experiment``)
to stdout or ``--out``. Exit status is 0 on success, 1 for rejected input and 2 when the
computation itself fails.
"""

import argparse
import json
import logging
import sys
from collections.abc import Mapping, Sequence
from fractions import Fraction
from typing import IO, Any, NoReturn, Optional

import numpy as np
import sympy

from polyshadow.geometry.constants import DEFAULT_CROSS_CHECK_EVERY, DEFAULT_TRIALS
from polyshadow.geometry.context import DEFAULT_SEED
from polyshadow.geometry.exceptions import PolyshadowValidationError, exit_code_for
from polyshadow.geometry.kernel.scalar import DEFAULT_TOLERANCE, encode_scalar
from polyshadow.geometry.toolkit import Toolkit
from polyshadow.models.experiment import ExperimentConfig
from polyshadow.models.polytope import Face, Polytope
from polyshadow.models.quadratic import QuadraticForm
from polyshadow.models.shared import GeometryObject
from polyshadow.models.subspace import Subspace

logger = logging.getLogger(__name__)

SCHEMA_HELP = """\
input formats:
  polytope   {"object": "polytope", "vertices": [[x, ...], ...]} or a bare list of points;
             scalars are numbers or "p/q" strings
  subspace   coords:i,j,...  |  file:<path> ({"basis": [[...], ...]})  |  random:d
  f          norm2  |  const  |  inline JSON {"c": ..., "b": [...], "A": [[...], ...]}
  vector     comma separated scalars, e.g. 0,0,1 or 1/2,1/3
"""

KIND_ALIASES = {
    "b1-projection": "b1",
    "simplex-projection": "simplex",
    "sphere-projection": "sphere",
}


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors print the input schema and count as rejected input."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        sys.stderr.write(SCHEMA_HELP)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="polyshadow",
        description=__doc__,
        epilog=SCHEMA_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--backend", choices=("exact", "float"), default="float")
    parser.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--out", help="output path (stdout when omitted)")
    parser.add_argument("--verbose", action="store_true", help="enable debug logging")
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str, body: bool = True) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        if body:
            sub.add_argument("--input", required=True, help="polytope JSON path, or - for stdin")
        return sub

    command("hull", "canonical V-polytope with dimension and f-vector")
    faces = command("faces", "face lattice as vertex-index sets")
    faces.add_argument("--dim", type=int, help="only faces of this dimension")
    command("volume", "exact or float volume inside the affine hull")
    lk = command("lk", "isotropy constant")
    lk.add_argument("--report", action="store_true", help="print the full inertia report")
    embed = command("embed", "write a body as a projection of B1^n or of the simplex")
    embed.add_argument("--kind", choices=("b1", "simplex"), default="b1")
    shadow = command("shadow", "d-faces tiling the projection onto a subspace")
    shadow.add_argument("--subspace", required=True)
    shadow.add_argument("--direction", help="generic direction u (sampled when omitted)")
    shadow.add_argument("--verify", action="store_true", help="attach the tiling report")
    shadow.add_argument("--full-family", action="store_true", help="also enumerate every selected face")
    integrate = command("project-integrate", "integrate a quadratic over the projection")
    integrate.add_argument("--subspace", required=True)
    integrate.add_argument("--f", default="norm2")
    steiner = command("steiner", "Steiner symmetrization with respect to the hyperplane nu-perp")
    steiner.add_argument("--direction", required=True)
    steiner.add_argument("--checks", action="store_true", help="attach the inertia checks")
    section = command("section", "section by the hyperplane <a, x> = c")
    section.add_argument("--normal", required=True)
    section.add_argument("--offset", default="0")

    experiment = command("experiment", "randomized projection experiment", body=False)
    experiment.add_argument("--config", help="ExperimentConfig JSON path")
    experiment.add_argument("--kind", default="b1")
    experiment.add_argument("--n", type=int)
    experiment.add_argument("--d", help="subspace dimension or comma separated list")
    experiment.add_argument("--m", type=int)
    experiment.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    experiment.add_argument("--symmetric", action=argparse.BooleanOptionalAction, default=True)
    experiment.add_argument("--workers", type=int, default=1)
    experiment.add_argument("--timing", action="store_true", help="record per-trial runtimes")
    experiment.add_argument("--cross-check-every", type=int, default=DEFAULT_CROSS_CHECK_EVERY)
    experiment.add_argument("--summary", help="path for the JSON summary")
    return parser


def jsonable(value: Any) -> Any:
    """Plain JSON data for reports mixing models, exact scalars and containers."""
    if isinstance(value, GeometryObject):
        return value.to_dict()
    if isinstance(value, Face):
        return list(value.vertex_ids)
    if isinstance(value, Mapping):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if isinstance(value, (bool, str)) or value is None:
        return value
    if isinstance(value, (Fraction, sympy.Basic)):
        return encode_scalar(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if hasattr(value, "to_dict"):
        return value.to_dict()
    return str(value)


def read_json(path: str) -> Any:
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def read_polytope(toolkit: Toolkit, path: str) -> Polytope:
    data = read_json(path)
    if isinstance(data, list):
        return toolkit.canonical_hull(data)
    if isinstance(data, Mapping) and "vertices" in data:
        return Polytope.load(data, toolkit.backend)
    raise PolyshadowValidationError("input is not a polytope", {"path": path})


def parse_vector(text: str, toolkit: Toolkit) -> tuple[Any, ...]:
    parts = [part.strip() for part in text.split(",") if part.strip()]
    if not parts:
        raise PolyshadowValidationError("empty vector", {"text": text})
    return toolkit.backend.vector(parts)


def parse_subspace(text: str, n: int, toolkit: Toolkit) -> Subspace:
    kind, _, rest = text.partition(":")
    if kind == "coords":
        indices = [int(part) for part in rest.split(",") if part.strip()]
        return Subspace.coordinate(n, indices, toolkit.backend)
    if kind == "file":
        return Subspace.load(read_json(rest), toolkit.backend)
    if kind == "random":
        return toolkit.random_subspace(n, int(rest))
    raise PolyshadowValidationError("unknown subspace description", {"text": text})


def parse_form(text: str, n: int, toolkit: Toolkit) -> QuadraticForm:
    if text == "norm2":
        return QuadraticForm.norm2(n, toolkit.backend)
    if text == "const":
        return QuadraticForm.const(n, toolkit.backend)
    return QuadraticForm.load(json.loads(text), toolkit.backend)


def experiment_config(args: argparse.Namespace) -> ExperimentConfig:
    if args.config:
        props = dict(read_json(args.config))
        props.setdefault("backend", args.backend)
        props.setdefault("seed", args.seed)
        return ExperimentConfig.load(props)
    if args.n is None or args.d is None:
        raise PolyshadowValidationError("experiment needs --config or both --n and --d")
    ds = [int(part) for part in args.d.split(",") if part.strip()]
    return ExperimentConfig(
        n=args.n,
        d=ds[0] if len(ds) == 1 else ds,
        m=args.m,
        kind=KIND_ALIASES.get(args.kind, args.kind),
        symmetric=args.symmetric,
        trials=args.trials,
        seed=args.seed,
        backend=args.backend,
        output=args.out,
        workers=args.workers,
        timing=args.timing,
        cross_check_every=args.cross_check_every,
    )


def run_command(toolkit: Toolkit, args: argparse.Namespace, stream: IO[str]) -> Optional[Any]:
    """Run one subcommand; returns the JSON payload, or None when it wrote its own output."""
    command = args.command
    if command == "experiment":
        config = experiment_config(args)
        records, summary = toolkit.run_projection_experiment(config)
        toolkit.lab.write_csv(records, stream)
        if args.summary:
            with open(args.summary, "w", encoding="utf-8") as handle:
                json.dump(jsonable(summary), handle, indent=2, sort_keys=True)
                handle.write("\n")
        return None

    polytope = read_polytope(toolkit, args.input)
    if command == "hull":
        return {**polytope.to_dict(), "dim": polytope.dim, "f_vector": list(polytope.f_vector())}
    if command == "faces":
        dims = [args.dim] if args.dim is not None else range(polytope.dim + 1)
        return {
            "f_vector": list(polytope.f_vector()),
            "faces": {str(j): [list(face.vertex_ids) for face in polytope.faces(j)] for j in dims},
        }
    if command == "volume":
        return {"dim": polytope.dim, "volume": toolkit.volume(polytope)}
    if command == "lk":
        report = toolkit.inertia(polytope)
        return report if args.report else {"L": report.L}
    if command == "embed":
        if args.kind == "b1":
            embedding = toolkit.embed_as_b1_projection(polytope)
            source = toolkit.cross_polytope(embedding.subspace.ambient_dim)
        else:
            embedding = toolkit.embed_as_simplex_projection(polytope)
            source = toolkit.standard_simplex(embedding.subspace.ambient_dim - 1)
        shadow = toolkit.project(source, embedding.subspace)
        return {
            **embedding.to_dict(),
            "L_body": toolkit.isotropy_constant(polytope),
            "L_projection": toolkit.isotropy_constant(shadow),
        }

    n = polytope.ambient_dim
    if command == "shadow":
        subspace = parse_subspace(args.subspace, n, toolkit)
        direction = parse_vector(args.direction, toolkit) if args.direction else None
        decomposition = toolkit.shadow_faces(polytope, subspace, direction)
        payload = decomposition.to_dict()
        if args.verify or args.full_family:
            payload["tiling"] = toolkit.verify_tiling(decomposition, full_family=args.full_family)
        return payload
    if command == "project-integrate":
        subspace = parse_subspace(args.subspace, n, toolkit)
        f = parse_form(args.f, n, toolkit)
        return {"d": subspace.dim, "value": toolkit.integrate_over_projection(polytope, subspace, f)}
    if command == "steiner":
        result = toolkit.steiner_symmetrize(polytope, parse_vector(args.direction, toolkit))
        payload = result.to_dict()
        if args.checks:
            payload["checks"] = toolkit.steiner_inertia_checks(result)
        return payload
    if command == "section":
        cut = toolkit.hyperplane_section(polytope, parse_vector(args.normal, toolkit), args.offset)
        return {**cut.to_dict(), "dim": cut.dim, "volume": toolkit.volume(cut)}
    raise PolyshadowValidationError("unknown command", {"command": command})


def emit(payload: Any, stream: IO[str]) -> None:
    json.dump(jsonable(payload), stream, indent=2, sort_keys=True)
    stream.write("\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, format="%(asctime)s %(name)s %(levelname)s %(message)s")
    try:
        workers = getattr(args, "workers", 1)
        with Toolkit(backend=args.backend, tolerance=args.tol, seed=args.seed, workers=workers) as toolkit:
            if args.out:
                with open(args.out, "w", encoding="utf-8", newline="") as handle:
                    payload = run_command(toolkit, args, handle)
                    if payload is not None:
                        emit(payload, handle)
            else:
                payload = run_command(toolkit, args, sys.stdout)
                if payload is not None:
                    emit(payload, sys.stdout)
    except Exception as exc:
        code = exit_code_for(exc)
        logger.debug("command failed", exc_info=True)
        sys.stderr.write(f"polyshadow: {exc.__class__.__name__}: {exc}\n")
        return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
