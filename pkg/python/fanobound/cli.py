"""
fanobound command line interface

One click command per engine plus `batch` for instance files. Every
command builds jobs, runs them through `fanobound.jobs`, writes the
canonical report to stdout or --output, and exits with the worst job
status: 0 ok, 1 usage or parse error, 2 hypothesis error, 3 identity
counterexample.
"""
# this_file: python/fanobound/cli.py

import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple

import click

from . import __version__
from .classification import ALIASES, RULES, SHAPES
from .errors import FanoboundError, UsageError
from .jobs import Job, batch_exit_code, execute, load_instance
from .report import emit

logger = logging.getLogger("fanobound")

FORMATS = ("json", "text")


class ExitCodeGroup(click.Group):
    """Group whose option errors exit 1, matching engine usage errors."""

    def main(self, *args, **kwargs):
        kwargs["standalone_mode"] = False
        try:
            rv = super().main(*args, **kwargs)
        except click.exceptions.Abort:
            click.echo("\nInterrupted", err=True)
            sys.exit(130)
        except click.ClickException as e:
            e.show()
            sys.exit(1)
        sys.exit(rv if isinstance(rv, int) else 0)


def configure_logging(verbose: bool, quiet: bool) -> None:
    """Route package logs to stderr: DEBUG with --verbose, ERROR with --quiet, WARNING otherwise."""
    level = logging.DEBUG if verbose else logging.ERROR if quiet else logging.WARNING
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False


def report_options(func):
    """--input/--format/--output shared by every engine command."""
    func = click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path), help="Write the report here (stdout if omitted)")(func)
    func = click.option("-O", "--format", "output_format", type=click.Choice(FORMATS), default="json", show_default=True, help="Report format")(func)
    func = click.option("-i", "--input", "input_file", type=click.Path(dir_okay=False, path_type=Path), help="Instance file; runs its jobs of this command's kind")(func)
    return func


def _drop_none(params: Dict[str, Any]) -> Dict[str, Any]:
    return {key: value for key, value in params.items() if value is not None}


def _comma_list(value: Optional[str], name: str) -> Optional[List[str]]:
    if value is None:
        return None
    items = [item.strip() for item in value.split(",") if item.strip()]
    if not items:
        raise UsageError(f"--{name} needs a comma-separated list")
    return items


def _int_list(value: Optional[str], name: str) -> Optional[List[int]]:
    items = _comma_list(value, name)
    if items is None:
        return None
    try:
        return [int(item) for item in items]
    except ValueError as exc:
        raise UsageError(f"--{name} must list integers, got {value!r}") from exc


def _parse_settings(settings: Iterable[str]) -> Dict[str, Any]:
    """KEY=VALUE pairs; integer-looking values become ints."""
    params: Dict[str, Any] = {}
    for setting in settings:
        key, sep, raw = setting.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"--set expects KEY=VALUE, got {setting!r}")
        raw = raw.strip()
        try:
            params[key.strip()] = int(raw)
        except ValueError:
            params[key.strip()] = raw
    return params


def _jobs_for(kind: str, params: Dict[str, Any], input_file: Optional[Path]) -> Tuple[Job, ...]:
    if input_file is None:
        return (Job(0, kind, params),)
    if params:
        raise UsageError("give either --input or inline flags, not both")
    jobs = tuple(job for job in load_instance(input_file).jobs if job.kind == kind)
    if not jobs:
        raise UsageError(f"{input_file} holds no {kind!r} jobs")
    return jobs


def _finish(report: Dict[str, Any], output_format: str, output: Optional[Path]) -> None:
    for entry in report["jobs"]:
        if "error" in entry:
            click.echo(f"Error: job {entry['index']} ({entry['kind']}): {entry['error']}", err=True)
        elif entry["status"] == "counterexample":
            click.echo(f"Counterexample: {entry['result']['counterexample']}", err=True)
    text = emit(report, output_format, output)
    if output is None:
        click.echo(text, nl=False)
    else:
        logger.info("report written to %s", output)
    sys.exit(batch_exit_code(report))


def _run(kind: str, params: Dict[str, Any], input_file: Optional[Path], output_format: str, output: Optional[Path], workers: int = 1) -> None:
    try:
        jobs = _jobs_for(kind, _drop_none(params), input_file)
        report = execute(jobs, workers)
    except FanoboundError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(e.exit_code)
    _finish(report, output_format, output)


@click.group(cls=ExitCodeGroup)
@click.version_option(version=__version__, prog_name="fanobound")
@click.option("-v", "--verbose", is_flag=True, help="Debug logging on stderr")
@click.option("-q", "--quiet", is_flag=True, help="Errors only on stderr")
def cli(verbose: bool, quiet: bool):
    """fanobound - exact Chern numbers, degree bounds and quadric endomorphisms"""
    configure_logging(verbose, quiet)


@cli.command(name="info")
@click.option("--aliases", is_flag=True, help="List named varieties")
@click.option("--shapes", is_flag=True, help="List verdict descriptor shapes")
@click.option("--rules", is_flag=True, help="List citable rules")
def info(aliases: bool, shapes: bool, rules: bool):
    """Show named varieties, descriptor shapes and rules"""
    show_all = not (aliases or shapes or rules)
    click.echo(f"fanobound v{__version__}")
    click.echo()
    if aliases or show_all:
        click.echo("Aliases:")
        for name in sorted(ALIASES):
            click.echo(f"  {name:18s} - {ALIASES[name]().label}")
        click.echo("  delpezzo:n=N,d=D   - del Pezzo table row")
        click.echo("  mukai:n=N,g=G      - Mukai table row")
        click.echo("  wps:W/D            - e.g. wps:3,2,1,1,1/6")
        click.echo()
    if shapes or show_all:
        click.echo("Descriptor shapes:")
        for name, keys in SHAPES.items():
            click.echo(f"  {name:18s} - {', '.join(keys)}")
        click.echo()
    if rules or show_all:
        click.echo("Rules:")
        for rule_id in sorted(RULES):
            click.echo(f"  {rule_id:34s} {RULES[rule_id].quote}")


@cli.command(name="chern")
@click.option("-w", "--weights", help="Weights, comma separated (e.g. 3,2,1,1,1)")
@click.option("-d", "--degree", type=int, help="Hypersurface degree")
@click.option("-V", "--variety", help="Named variety instead of --weights/--degree")
@click.option("-t", "--twist", type=int, default=0, show_default=True, help="Twist a in Omega(a)")
@click.option("--strict", is_flag=True, help="Refuse weights outside the coprime, a_0 <= d range")
@report_options
def chern(weights, degree, variety, twist, strict, input_file, output_format, output):
    """Total Chern class of Omega_X(a) and its top Chern number"""
    params = {"weights": weights, "degree": degree, "variety": variety}
    if any(v is not None for v in params.values()):
        params.update(twist=twist, strict=strict or None)
    _run("chern", params, input_file, output_format, output)


@cli.command(name="positivity")
@click.option("-w", "--weights", help="Weights, comma separated")
@click.option("-d", "--degree", type=int, help="Hypersurface degree")
@click.option("-V", "--variety", help="Named variety instead of --weights/--degree")
@report_options
def positivity(weights, degree, variety, input_file, output_format, output):
    """Top Chern number margin at the twist a_0 + a_1"""
    _run("positivity", {"weights": weights, "degree": degree, "variety": variety}, input_file, output_format, output)


@cli.command(name="bound")
@click.option("--x", "x_ref", help="Target variety X of the morphism Y -> X (alias or wps:W/D)")
@click.option("--y", "y_ref", help="Source variety Y of the morphism Y -> X (alias or wps:W/D)")
@click.option("--u", type=int, help="Twist u with Omega_X(u) globally generated")
@click.option("--m", type=int, help="Check the inequality at this m (needs --deg)")
@click.option("--deg", type=int, help="Morphism degree for the inequality check")
@report_options
def bound(x_ref, y_ref, u, m, deg, input_file, output_format, output):
    """Degree bound for finite morphisms Y -> X"""
    _run("bound", {"x": x_ref, "y": y_ref, "u": u, "m": m, "deg": deg}, input_file, output_format, output)


@cli.command(name="quadric")
@click.option("-n", "--ambient-dim", type=int, help="Ambient projective dimension")
@click.option("-k", "--paper-k", type=int, help="Rank of the form minus one")
@click.option("--matrix", help="Symmetric Gram matrix as JSON rows, entries integers or 'p/q'")
@click.option("--lambdas", help="Pencil eigenvalues, comma separated, for the projected quadric")
@click.option("--index", type=int, help="Eigenvalue index projected away (with --lambdas)")
@click.option("--q", type=int, default=2, show_default=True, help="Power-map exponent for the witness")
@click.option("--normal-form", is_flag=True, help="Include the diagonal-to-normal-form substitution")
@report_options
def quadric(ambient_dim, paper_k, matrix, lambdas, index, q, normal_form, input_file, output_format, output):
    """Decide whether a quadric admits a non-isomorphic endomorphism"""
    try:
        params: Dict[str, Any] = {"ambient_dim": ambient_dim, "paper_k": paper_k}
        if matrix is not None:
            try:
                params["matrix"] = json.loads(matrix)
            except json.JSONDecodeError as exc:
                raise UsageError(f"--matrix is not valid JSON: {exc}") from exc
        if lambdas is not None:
            params["pencil"] = {"lambdas": _comma_list(lambdas, "lambdas"), "index": index}
    except FanoboundError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(e.exit_code)
    if any(v is not None for v in params.values()):
        params.update(q=q, normal_form=normal_form or None)
    _run("quadric", params, input_file, output_format, output)


@cli.command(name="classify")
@click.option("--op", default="verdict", show_default=True, help="verdict, delpezzo, mukai, splitting-types, standard-p, index-facts, ramification")
@click.option("--shape", help="Descriptor shape for --op verdict")
@click.option("-s", "--set", "settings", multiple=True, help="Extra KEY=VALUE parameter (repeatable)")
@click.option("--n", type=int, help="Dimension")
@click.option("--d", type=int, help="Del Pezzo or hypersurface degree")
@click.option("--g", type=int, help="Mukai genus")
@click.option("--k", type=int, help="Quadric rank minus one")
@click.option("--index", type=int, help="Fano index")
@click.option("--rho", type=int, help="Picard number")
@report_options
def classify(op, shape, settings, n, d, g, k, index, rho, input_file, output_format, output):
    """Table lookups and cited verdicts"""
    try:
        fields = _drop_none({"n": n, "d": d, "g": g, "k": k, "index": index, "rho": rho})
        fields.update(_parse_settings(settings))
    except FanoboundError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(e.exit_code)
    params: Dict[str, Any] = {}
    if op == "verdict" and (shape is not None or fields):
        params = {"op": op, "subject": {"shape": shape, **fields}}
    elif op != "verdict" or fields:
        params = {"op": op, **fields}
    _run("classify", params, input_file, output_format, output)


@cli.command(name="check-identities")
@click.option("--max-a0", type=int, help="Largest weight a_0 on the grid")
@click.option("--max-n", type=int, help="Largest dimension on the grid")
@click.option("--max-d", type=int, help="Largest degree on the grid")
@click.option("--twists", help="Twists to visit, comma separated")
@click.option("--diagonal-only", is_flag=True, help="Visit only a = d, where the closed form is skipped")
@report_options
def check_identities(max_a0, max_n, max_d, twists, diagonal_only, input_file, output_format, output):
    """Exhaustively cross-check the Chern identities on a grid"""
    try:
        params = {
            "max_a0": max_a0,
            "max_n": max_n,
            "max_d": max_d,
            "twists": _int_list(twists, "twists"),
            "diagonal_only": diagonal_only or None,
        }
    except FanoboundError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(e.exit_code)
    if input_file is None:
        click.echo("Checking identities...", err=True)
    _run("identity-check", params, input_file, output_format, output)


@cli.command(name="batch")
@click.option("-i", "--input", "input_file", type=click.Path(dir_okay=False, path_type=Path), required=True, help="Instance file")
@click.option("-O", "--format", "output_format", type=click.Choice(FORMATS), default="json", show_default=True, help="Report format")
@click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path), help="Write the report here (stdout if omitted)")
@click.option("-j", "--jobs", "workers", type=int, default=1, show_default=True, envvar="FANOBOUND_JOBS", help="Worker threads")
def batch(input_file, output_format, output, workers):
    """Run every job of an instance file"""
    try:
        instance = load_instance(input_file)
        click.echo(f"Running {len(instance.jobs)} jobs with {workers} worker(s)...", err=True)
        report = execute(instance.jobs, workers)
    except FanoboundError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(e.exit_code)
    _finish(report, output_format, output)


def main():
    """Main CLI entry point"""
    try:
        cli()
    except KeyboardInterrupt:
        click.echo("\nInterrupted", err=True)
        sys.exit(130)
    except FanoboundError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(e.exit_code)
    except Exception as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
