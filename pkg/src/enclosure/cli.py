"""``enclose`` command line.

Exit codes: 0 success, 1 a condition or verification fails (oracle: no
enclosure), 2 parameters outside the covered regime (oracle: budget
exhausted), 3 unreadable or invalid input, 4 internal construction failure.
"""

from __future__ import annotations

import logging
import os
import sys

import click

from . import fileformat as ff
from .enclose import MODES, decide, enclose, verify_enclosure
from .errors import ConstructionError, DecisionFailedError, GenerationError, NotStrongError, OutOfRegimeError
from .oracle import OracleVerdict, SearchBudget, oracle_exists, random_instance

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_REGIME = 2
EXIT_INPUT = 3
EXIT_INTERNAL = 4

DEFAULT_SEED = 0

log = logging.getLogger("enclosure")


class InputError(Exception):
    pass


def _params(inst: ff.InstanceFile, mu, m, mode):
    p = inst.params
    mu = mu if mu is not None else p.get("mu")
    m = m if m is not None else p.get("m")
    mode = mode or p.get("mode") or "hamiltonian"
    if mu is None or m is None:
        raise InputError("mu and m must be given as options or in the file's params")
    if mode not in MODES:
        raise InputError(f"mode must be one of {', '.join(MODES)}")
    return int(mu), int(m), mode


def _load(path):
    try:
        return ff.read_instance(path)
    except OSError as exc:
        raise InputError(str(exc)) from exc
    except ff.FormatError as exc:
        raise InputError(f"{path}: {exc}") from exc


mu_opt = click.option("--mu", type=int, default=None, help="Multiplicity of the enclosing complete graph.")
m_opt = click.option("--m", "m", type=int, default=None, help="Number of added vertices.")
mode_opt = click.option("--mode", type=click.Choice(MODES), default=None)


@click.group()
def cli():
    """Decide and construct enclosures of path decompositions of lambda K_n."""


@cli.command()
@click.argument("input", type=click.Path(dir_okay=False))
@mu_opt
@m_opt
@mode_opt
def check(input, mu, m, mode):
    """Evaluate the enclosure conditions for INPUT."""
    inst = _load(input)
    mu, m, mode = _params(inst, mu, m, mode)
    try:
        dec = decide(inst.decomposition, mu, m, mode)
    except NotStrongError as exc:
        click.echo(f"verdict: not enclosable ({exc})")
        return EXIT_FAIL
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    click.echo(f"mode {mode}, n={inst.n}, m={m}, lambda={inst.lam}, mu={mu}, k={inst.decomposition.k}")
    click.echo(f"regime: {dec.regime}")
    for c in dec.conditions:
        click.echo("  " + c.row())
    if not dec.in_regime:
        click.echo("verdict: out of regime")
        return EXIT_REGIME
    click.echo("verdict: " + ("enclosable" if dec.ok else "not enclosable"))
    return EXIT_OK if dec.ok else EXIT_FAIL


@cli.command()
@click.argument("input", type=click.Path(dir_okay=False))
@mu_opt
@m_opt
@mode_opt
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None,
              help="Certificate path (default: standard output).")
def construct(input, mu, m, mode, output):
    """Build and verify an enclosing decomposition for INPUT."""
    inst = _load(input)
    mu, m, mode = _params(inst, mu, m, mode)
    try:
        cert = enclose(inst.decomposition, mu, m, mode)
    except OutOfRegimeError as exc:
        click.echo(f"out of regime: {exc}", err=True)
        return EXIT_REGIME
    except DecisionFailedError as exc:
        for c in exc.decision.conditions:
            click.echo("  " + c.row(), err=True)
        click.echo("not enclosable; no certificate written", err=True)
        return EXIT_FAIL
    except NotStrongError as exc:
        click.echo(f"not enclosable ({exc}); no certificate written", err=True)
        return EXIT_FAIL
    except ConstructionError as exc:
        click.echo(f"internal construction failure: {exc}", err=True)
        return EXIT_INTERNAL
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    text = ff.dumps(ff.certificate_to_dict(inst, cert.output, mu, m, mode, cert.transcript))
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
        click.echo(f"certificate written to {output}", err=True)
    else:
        click.echo(text, nl=False)
    return EXIT_OK


@cli.command()
@click.argument("original", type=click.Path(dir_okay=False))
@click.argument("certificate", type=click.Path(dir_okay=False))
@mode_opt
def verify(original, certificate, mode):
    """Check that CERTIFICATE encloses ORIGINAL."""
    inst = _load(original)
    try:
        cert = ff.read_certificate(certificate)
    except (OSError, ff.FormatError) as exc:
        raise InputError(f"{certificate}: {exc}") from exc
    mode = mode or cert.mode
    if mode not in MODES:
        raise InputError(f"unknown mode {mode!r}")
    failures = []
    if ff.instance_hash(inst) != cert.instance_sha256:
        failures.append("certificate was not built from this instance (hash mismatch)")
    if cert.labels[: inst.n] != list(inst.labels):
        failures.append("certificate does not keep the instance's vertex labels first")
    failures += verify_enclosure(inst.decomposition, cert.decomposition, cert.mu, mode).failures
    for f in failures:
        click.echo("FAIL " + f)
    click.echo("verified" if not failures else f"{len(failures)} failure(s)")
    return EXIT_OK if not failures else EXIT_FAIL


@cli.command()
@click.argument("input", type=click.Path(dir_okay=False))
@mu_opt
@m_opt
@mode_opt
@click.option("--budget", type=int, default=SearchBudget.node_limit, show_default=True,
              help="Search node limit.")
@click.option("--time-limit", type=float, default=SearchBudget.time_limit, show_default=True)
@click.option("--max-vertices", type=int, default=SearchBudget.max_vertices, show_default=True)
@click.option("--max-mu", type=int, default=SearchBudget.max_multiplicity, show_default=True)
def oracle(input, mu, m, mode, budget, time_limit, max_vertices, max_mu):
    """Brute-force search for an enclosure of INPUT."""
    inst = _load(input)
    mu, m, mode = _params(inst, mu, m, mode)
    limits = SearchBudget(max_vertices=max_vertices, max_multiplicity=max_mu,
                          node_limit=budget, time_limit=time_limit)
    try:
        res = oracle_exists(inst.decomposition, mu, m, mode, limits)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    click.echo(f"{res.verdict.value} ({res.nodes} nodes{'; ' + res.reason if res.reason else ''})")
    return {OracleVerdict.YES: EXIT_OK, OracleVerdict.NO: EXIT_FAIL}.get(res.verdict, EXIT_REGIME)


@cli.command()
@click.option("--seed", type=int, default=None, help=f"RNG seed (default {DEFAULT_SEED}).")
@click.option("--n", "n", type=int, required=True)
@click.option("--lambda", "lam", type=int, default=1, show_default=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--strong/--no-strong", default=False)
@mu_opt
@m_opt
@mode_opt
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
def gen(seed, n, lam, k, strong, mu, m, mode, output):
    """Write a random path decomposition of lambda K_n."""
    if seed is None:
        seed = DEFAULT_SEED
    click.echo(f"seed={seed}", err=True)
    try:
        d = random_instance(seed, n, lam, k, strong)
    except (GenerationError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    params = {key: val for key, val in (("mu", mu), ("m", m), ("mode", mode)) if val is not None}
    text = ff.dumps(ff.instance_to_dict(ff.InstanceFile(d, lam, list(range(n)), params)))
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    return EXIT_OK


def main(argv=None) -> int:
    level = os.environ.get("ENCLOSE_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        code = cli.main(args=argv, prog_name="enclose", standalone_mode=False)
    except InputError as exc:
        click.echo(f"error: {exc}", err=True)
        code = EXIT_INPUT
    except click.exceptions.Exit as exc:
        code = exc.exit_code
    except click.ClickException as exc:
        exc.show()
        code = EXIT_INPUT
    except click.exceptions.Abort:
        code = EXIT_INPUT
    return int(code or 0)


if __name__ == "__main__":
    sys.exit(main())
