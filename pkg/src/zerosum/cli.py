"""Command-line front end.

JSON to stdout by default (``--pretty`` indents it); every run embeds its
full configuration in the emitted object.  Exit codes: 0 all checks
passed, 1 counterexample found, 2 usage or parse error, 3 search budget
exceeded.
"""

from __future__ import annotations

import functools
import json
import os
import sys

import click

from . import __version__
from .classification import classify_long_zero_sum, construct_exceptional, verify_casen
from .enumeration import EnumSpec, davenport, enumerate_sequences, resolve_cache, s_leq
from .errors import BudgetExceeded, ParseError, ZsError
from .groups import group
from .lifting import verify_propbfix_item1, verify_propbfix_item2
from .perturbation import verify_perturbation
from .properties import verify_property_b, verify_property_c
from .report import Report
from .sequences import Sequence

EXIT_PASS = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def parse_sequence_file(path: str) -> Sequence:
    """Read and validate a sequence JSON file.

    Accepts either a bare sequence object or a report (as written by the
    construct commands) whose "sequence" key holds one.
    """
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if isinstance(obj, dict) and isinstance(obj.get("sequence"), dict):
        obj = obj["sequence"]
    return Sequence.from_json_obj(obj)


def _guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except BudgetExceeded as exc:
            click.echo(
                json.dumps({"error": "BudgetExceeded", "message": str(exc)}),
                err=True,
            )
            sys.exit(EXIT_BUDGET)
        except ZsError as exc:
            click.echo(
                json.dumps({"error": type(exc).__name__, "message": str(exc)}),
                err=True,
            )
            sys.exit(EXIT_USAGE)

    return wrapper


def _emit(obj: dict, config: dict, pretty: bool, output: str | None) -> None:
    payload = dict(obj)
    payload["config"] = config
    text = json.dumps(payload, indent=2 if pretty else None, sort_keys=True)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


def _finish_report(rep: Report, config: dict, pretty: bool, output: str | None) -> None:
    _emit(rep.to_json_obj(), config, pretty, output)
    sys.exit(EXIT_COUNTEREXAMPLE if rep.counterexamples else EXIT_PASS)


def _default_jobs(jobs: int | None) -> int:
    return jobs if jobs else (os.cpu_count() or 1)


pretty_opt = click.option("--pretty", is_flag=True, help="Indent the JSON output.")
output_opt = click.option(
    "--output", type=click.Path(dir_okay=False), default=None,
    help="Write the report to a file instead of stdout.",
)
jobs_opt = click.option(
    "--jobs", type=click.IntRange(min=1), default=None,
    help="Worker processes (default: all cores).",
)
cache_dir_opt = click.option(
    "--cache-dir", type=click.Path(file_okay=False), default=None,
    help="Result cache directory (default: $ZS_CACHE or ./.zs-cache).",
)
no_cache_opt = click.option("--no-cache", is_flag=True, help="Disable the result cache.")


@click.group()
@click.version_option(__version__)
def main() -> None:
    """Zero-sum sequence toolkit for rank-two cyclic groups."""


@main.command("davenport")
@click.option("--n", required=True, type=click.IntRange(min=2), help="Group modulus.")
@click.option("--bound", type=click.IntRange(min=1), default=7,
              help="Largest modulus the search budget admits.")
@jobs_opt
@cache_dir_opt
@no_cache_opt
@pretty_opt
@output_opt
@_guarded
def davenport_cmd(n, bound, jobs, cache_dir, no_cache, pretty, output):
    """Davenport constant of (Z/NZ)^2."""
    jobs = _default_jobs(jobs)
    config = {"subcommand": "davenport", "n": n, "bound": bound, "jobs": jobs,
              "cache_dir": cache_dir, "no_cache": no_cache}
    cache = resolve_cache(cache_dir, enabled=not no_cache)
    value = davenport(group(n), bound=bound, jobs=jobs, cache=cache)
    _emit({"check": "davenport", "n": n, "value": value}, config, pretty, output)
    sys.exit(EXIT_PASS)


@main.command("sleq")
@click.option("--n", required=True, type=click.IntRange(min=2), help="Group modulus.")
@click.option("--k", required=True, type=click.IntRange(min=1),
              help="Zero-sum length threshold.")
@click.option("--bound", type=click.IntRange(min=1), default=5,
              help="Largest modulus the search budget admits.")
@jobs_opt
@cache_dir_opt
@no_cache_opt
@pretty_opt
@output_opt
@_guarded
def sleq_cmd(n, k, bound, jobs, cache_dir, no_cache, pretty, output):
    """Least length forcing a nonempty zero-sum subsequence of length <= k."""
    jobs = _default_jobs(jobs)
    config = {"subcommand": "sleq", "n": n, "k": k, "bound": bound, "jobs": jobs,
              "cache_dir": cache_dir, "no_cache": no_cache}
    cache = resolve_cache(cache_dir, enabled=not no_cache)
    value = s_leq(group(n), k, bound=bound, jobs=jobs, cache=cache)
    _emit({"check": "sleq", "n": n, "k": k, "value": value}, config, pretty, output)
    sys.exit(EXIT_PASS)


@main.command("enumerate")
@click.option("--n", required=True, type=click.IntRange(min=2), help="Group modulus.")
@click.option("--length", required=True, type=click.IntRange(min=0),
              help="Sequence length.")
@click.option("--predicate", default="all",
              type=click.Choice(["all", "zero-sum-free", "minimal-zero-sum",
                                 "no-short-zero-sum", "zero-sum-no-short"]))
@click.option("--k", type=click.IntRange(min=1), default=None,
              help="Length threshold for the predicates that take one.")
@click.option("--raw", is_flag=True, help="List all sequences, not one per orbit.")
@click.option("--limit", type=click.IntRange(min=0), default=100,
              help="Cap on listed sequences (0 = no cap); the count is always exact.")
@jobs_opt
@cache_dir_opt
@no_cache_opt
@pretty_opt
@output_opt
@_guarded
def enumerate_cmd(n, length, predicate, k, raw, limit, jobs, cache_dir, no_cache,
                  pretty, output):
    """List sequences with a given property, up to symmetry by default."""
    jobs = _default_jobs(jobs)
    config = {"subcommand": "enumerate", "n": n, "length": length,
              "predicate": predicate, "k": k, "raw": raw, "limit": limit,
              "jobs": jobs, "cache_dir": cache_dir, "no_cache": no_cache}
    cache = resolve_cache(cache_dir, enabled=not no_cache)
    params = {"k": k} if k is not None else {}
    spec = EnumSpec(n, length, predicate, params, up_to_symmetry=not raw)
    seqs, stats = enumerate_sequences(spec, jobs=jobs, cache=cache)
    listed = seqs if limit == 0 else seqs[:limit]
    _emit(
        {
            "check": "enumerate",
            "count": len(seqs),
            "sequences": [s.to_json_obj() for s in listed],
            "truncated": len(listed) < len(seqs),
            "nodes": stats.nodes,
        },
        config, pretty, output,
    )
    sys.exit(EXIT_PASS)


@main.command("classify")
@click.option("--file", "path", required=True,
              type=click.Path(exists=False, dir_okay=False),
              help="Sequence JSON file.")
@click.option("--n", type=click.IntRange(min=2), default=None,
              help="Expected modulus; must match the file when given.")
@pretty_opt
@output_opt
@_guarded
def classify_cmd(path, n, pretty, output):
    """Sort a long zero-sum sequence into the two structural families."""
    config = {"subcommand": "classify", "file": path, "n": n}
    seq = parse_sequence_file(path)
    if n is not None and seq.group.n != n:
        raise ParseError(f"file has modulus {seq.group.n}, expected {n}")
    outcome = classify_long_zero_sum(seq)
    _emit(outcome.to_json_obj(), config, pretty, output)
    sys.exit(EXIT_PASS if outcome.classified else EXIT_COUNTEREXAMPLE)


@main.group("construct")
def construct_grp() -> None:
    """Builders for the named sequence families."""


@construct_grp.command("exceptional")
@click.option("--n", required=True, type=click.IntRange(min=2), help="Group modulus.")
@click.option("--x", required=True, type=int, help="Coset parameter.")
@click.option("--a", type=click.IntRange(min=1), default=1)
@click.option("--b", type=click.IntRange(min=1), default=1)
@click.option("--c", type=click.IntRange(min=1), default=1)
@pretty_opt
@output_opt
@_guarded
def construct_exceptional_cmd(n, x, a, b, c, pretty, output):
    """The four-element family outside the one-coset classification."""
    config = {"subcommand": "construct exceptional", "n": n, "x": x,
              "a": a, "b": b, "c": c}
    seq = construct_exceptional(n, x, a, b, c)
    _emit({"check": "construct-exceptional", "sequence": seq.to_json_obj()},
          config, pretty, output)
    sys.exit(EXIT_PASS)


@main.group("verify")
def verify_grp() -> None:
    """Exhaustive and sampled checks of the structure results."""


@verify_grp.command("property-b")
@click.option("--n", required=True, type=click.IntRange(min=2), help="Group modulus.")
@click.option("--bound", type=click.IntRange(min=1), default=6)
@jobs_opt
@cache_dir_opt
@no_cache_opt
@pretty_opt
@output_opt
@_guarded
def property_b_cmd(n, bound, jobs, cache_dir, no_cache, pretty, output):
    """Every maximal-length minimal zero-sum has the one-coset form."""
    jobs = _default_jobs(jobs)
    config = {"subcommand": "verify property-b", "n": n, "bound": bound,
              "jobs": jobs, "cache_dir": cache_dir, "no_cache": no_cache}
    cache = resolve_cache(cache_dir, enabled=not no_cache)
    rep = verify_property_b(n, bound=bound, jobs=jobs, cache=cache)
    _finish_report(rep, config, pretty, output)


@verify_grp.command("property-c")
@click.option("--n", required=True, type=click.IntRange(min=2), help="Group modulus.")
@click.option("--bound", type=click.IntRange(min=1), default=5)
@jobs_opt
@cache_dir_opt
@no_cache_opt
@pretty_opt
@output_opt
@_guarded
def property_c_cmd(n, bound, jobs, cache_dir, no_cache, pretty, output):
    """Three-heavy-element profile at length 3(n-1) without short zero-sums."""
    jobs = _default_jobs(jobs)
    config = {"subcommand": "verify property-c", "n": n, "bound": bound,
              "jobs": jobs, "cache_dir": cache_dir, "no_cache": no_cache}
    cache = resolve_cache(cache_dir, enabled=not no_cache)
    rep = verify_property_c(n, bound=bound, jobs=jobs, cache=cache)
    _finish_report(rep, config, pretty, output)


@verify_grp.command("casen")
@click.option("--n", required=True, type=click.IntRange(min=2), help="Group modulus.")
@click.option("--s", type=click.IntRange(min=1), default=1,
              help="Length excess in multiples of n.")
@click.option("--force", is_flag=True, help="Ignore the built-in budget guard.")
@jobs_opt
@cache_dir_opt
@no_cache_opt
@pretty_opt
@output_opt
@_guarded
def casen_cmd(n, s, force, jobs, cache_dir, no_cache, pretty, output):
    """Classify every qualifying zero-sum of length (2+s)n-1."""
    jobs = _default_jobs(jobs)
    config = {"subcommand": "verify casen", "n": n, "s": s, "force": force,
              "jobs": jobs, "cache_dir": cache_dir, "no_cache": no_cache}
    cache = resolve_cache(cache_dir, enabled=not no_cache)
    rep = verify_casen(n, s, force=force, jobs=jobs, cache=cache)
    _finish_report(rep, config, pretty, output)


@verify_grp.command("perturbation")
@click.option("--m", required=True, type=click.IntRange(min=2), help="Group modulus.")
@click.option("--lemma", required=True, type=click.Choice(["I", "II", "III"]))
@click.option("--bound", type=click.IntRange(min=1), default=6)
@jobs_opt
@pretty_opt
@output_opt
@_guarded
def perturbation_cmd(m, lemma, bound, jobs, pretty, output):
    """Pairwise-move offsets around the maximal-length family."""
    jobs = _default_jobs(jobs)
    config = {"subcommand": "verify perturbation", "m": m, "lemma": lemma,
              "bound": bound, "jobs": jobs}
    rep = verify_perturbation(m, lemma, bound=bound, jobs=jobs)
    _finish_report(rep, config, pretty, output)


@verify_grp.command("propbfix")
@click.option("--item", required=True, type=click.Choice(["1", "2"]))
@click.option("--m", required=True, type=click.IntRange(min=2))
@click.option("--n", required=True, type=click.IntRange(min=2))
@click.option("--samples", type=click.IntRange(min=1), default=10_000,
              help="Sample count for item 1.")
@click.option("--seed", type=int, default=2026)
@click.option("--exhaustive", is_flag=True, help="Item 1: enumerate instead of sampling.")
@click.option("--structured", type=click.IntRange(min=1), default=256,
              help="Item 2: fiberwise-constant lift budget.")
@click.option("--random-lifts", type=click.IntRange(min=0), default=64,
              help="Item 2: fully random lift budget.")
@jobs_opt
@pretty_opt
@output_opt
@_guarded
def propbfix_cmd(item, m, n, samples, seed, exhaustive, structured, random_lifts,
                 jobs, pretty, output):
    """Image behavior of maximal-length minimal zero-sums under mult-by-m."""
    jobs = _default_jobs(jobs)
    config = {"subcommand": "verify propbfix", "item": int(item), "m": m, "n": n,
              "samples": samples, "seed": seed, "exhaustive": exhaustive,
              "structured": structured, "random_lifts": random_lifts, "jobs": jobs}
    if item == "1":
        rep = verify_propbfix_item1(m, n, samples=samples, seed=seed,
                                    exhaustive=exhaustive, jobs=jobs)
    else:
        rep = verify_propbfix_item2(m, n, structured=structured,
                                    random_lifts=random_lifts, seed=seed)
    _finish_report(rep, config, pretty, output)


@main.group("cache")
def cache_grp() -> None:
    """Result cache maintenance."""


@cache_grp.command("purge")
@cache_dir_opt
@pretty_opt
@output_opt
@_guarded
def cache_purge_cmd(cache_dir, pretty, output):
    """Remove all cached search results."""
    config = {"subcommand": "cache purge", "cache_dir": cache_dir}
    cache = resolve_cache(cache_dir)
    removed = cache.purge()
    _emit({"check": "cache-purge", "removed": removed, "directory": cache.directory},
          config, pretty, output)
    sys.exit(EXIT_PASS)


if __name__ == "__main__":
    main()
