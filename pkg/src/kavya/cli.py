"""Command line entry point.

Exit codes: 0 success, 1 input error (including bad usage), 2 annotation
validation error, 3 internal error.
"""

from __future__ import annotations

import json
import sys
from dataclasses import replace
from pathlib import Path

import click

from . import __version__
from .annotations import parse_annotations, validate
from .config import MODULES, load_config
from .errors import KavyaError, KavyaValidationError
from .meter import identify, load_meter_db, scan
from .pipeline import bundled_annotations_path, bundled_composition_path, run_pipeline
from .report import FORMATS, emit
from .text.composition import load_composition
from .text.translit import SCHEMES, from_canonical, transliterate

EXIT_OK, EXIT_INPUT, EXIT_VALIDATION, EXIT_INTERNAL = 0, 1, 2, 3


def _composition_arg(path: str | None, example: bool) -> Path:
    if example:
        if path:
            raise click.UsageError("give a composition file or --example, not both")
        return bundled_composition_path()
    if not path:
        raise click.UsageError("missing composition file (or use --example for the bundled text)")
    return Path(path)


def _write(data: bytes, out: str | None) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="kavya")
def cli() -> None:
    """Analyze Sanskrit poetry: meter, style, figures, and grade."""


@cli.command()
@click.argument("composition", required=False)
@click.option("--example", is_flag=True, help="Analyze the bundled Siksastaka with its annotations.")
@click.option("--annotations", "annotations", type=click.Path(dir_okay=False), help="Annotation JSON file.")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), help="TOML config (default: $KAVYA_CONFIG).")
@click.option("--meter-db", type=click.Path(dir_okay=False), help="Meter database file.")
@click.option("--modules", help=f"Comma-separated subset of: {','.join(MODULES)}.")
@click.option("--budget", type=int, help="Max edit distance per pada for fuzzy meter matches.")
@click.option("--threads", type=int, help="Analyze stanzas on this many threads.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), help="Write the report here instead of stdout.")
def analyze(composition, example, annotations, config_path, meter_db, modules, budget, threads, fmt, out):
    """Run the full analysis pipeline on COMPOSITION."""
    comp_path = _composition_arg(composition, example)
    if example and annotations is None:
        annotations = bundled_annotations_path()
    cfg = load_config(config_path)
    overrides: dict = {}
    if meter_db:
        overrides["meter_db"] = Path(meter_db)
    if modules:
        overrides["modules"] = tuple(m.strip() for m in modules.split(",") if m.strip())
    if budget is not None:
        overrides["budget"] = budget
    if threads is not None:
        overrides["threads"] = threads
    report = run_pipeline(comp_path, annotations, replace(cfg, **overrides))
    _write(emit(report, fmt), out)


@cli.command("scan")
@click.argument("composition", required=False)
@click.option("--example", is_flag=True, help="Scan the bundled Siksastaka.")
@click.option("--stanza", type=int, help="Only this stanza (1-based).")
@click.option("--meter-db", type=click.Path(dir_okay=False), help="Meter database file.")
@click.option("--budget", type=int, default=2, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
def scan_cmd(composition, example, stanza, meter_db, budget, as_json):
    """Syllabify, weigh and identify the meter of each stanza."""
    comp = load_composition(_composition_arg(composition, example))
    db = load_meter_db(meter_db)
    stanzas = comp.stanzas
    if stanza is not None:
        if not 1 <= stanza <= len(stanzas):
            raise click.BadParameter(f"stanza must be in 1..{len(stanzas)}", param_hint="--stanza")
        stanzas = (comp.stanza(stanza),)
    rows = []
    for st in stanzas:
        result = scan(st)
        matches = identify(result, db, budget)
        rows.append({
            "stanza": st.index,
            "padas": [
                {"text": p.iast(), "syllables": [from_canonical(str(s), "iast") for s in p.syllables], "weights": w}
                for p, w in zip(st.padas, result.padas)
            ],
            "meter": matches[0].meter_name if matches else None,
            "match_kind": matches[0].match_kind if matches else None,
            "distance": matches[0].distance if matches else None,
        })
    if as_json:
        click.echo(json.dumps(rows, ensure_ascii=False, indent=2))
        return
    for row in rows:
        kind = "" if row["match_kind"] in (None, "exact") else f" (fuzzy, distance {row['distance']})"
        click.echo(f"stanza {row['stanza']}: {row['meter'] or 'unidentified'}{kind}")
        for p in row["padas"]:
            click.echo(f"  {p['weights']:<22} {'-'.join(p['syllables'])}")


@cli.group()
def meters() -> None:
    """Inspect the meter database."""


@meters.command("list")
@click.option("--meter-db", type=click.Path(dir_okay=False), help="Meter database file.")
@click.option("--family", help="Only meters of this family.")
def meters_list(meter_db, family):
    """List meters with their pada patterns."""
    db = load_meter_db(meter_db)
    for m in db:
        if family and m.family != family:
            continue
        if m.family == "anustubh":
            pattern = f"odd ....{m.pada_patterns[0]}. even ....{m.pada_patterns[1]}."
            if m.variants:
                pattern += " vipula " + ",".join(f"{k}={v}" for k, v in m.variants)
        elif m.family == "upajati":
            pattern = " + ".join(m.components)
        elif m.family == "ardhasamavrtta":
            pattern = f"{m.pada_patterns[0]} / {m.pada_patterns[1]}"
        else:
            pattern = m.pada_patterns[0]
        gana = f"  [{m.gana_notation}]" if m.gana_notation else ""
        click.echo(f"{m.name:<20} {m.family:<15} {pattern}{gana}")


@cli.command("validate-annotations")
@click.argument("annotations", required=False)
@click.argument("composition", required=False)
@click.option("--example", is_flag=True, help="Validate the bundled annotation file against the bundled text.")
def validate_annotations(annotations, composition, example):
    """Check ANNOTATIONS against COMPOSITION; exit 2 on any problem."""
    if example:
        annotations, composition = bundled_annotations_path(), bundled_composition_path()
    if not annotations or not composition:
        raise click.UsageError("need ANNOTATIONS and COMPOSITION files (or --example)")
    comp = load_composition(composition)
    aset = parse_annotations(Path(annotations))
    report = validate(aset, comp)
    if report.ok:
        counts = ", ".join(f"{k} {v}" for k, v in report.checked.items())
        click.echo(f"ok: {report.resolved_refs} references resolved ({counts})")
        return
    for issue in report.errors:
        click.echo(str(issue), err=True)
    raise SystemExit(EXIT_VALIDATION)


@cli.command("transliterate")
@click.argument("text")
@click.option("--from", "src", type=click.Choice(SCHEMES), default="iast", show_default=True)
@click.option("--to", "dst", type=click.Choice(SCHEMES), default="devanagari", show_default=True)
def transliterate_cmd(text, src, dst):
    """Convert TEXT between schemes."""
    click.echo(transliterate(text, src, dst))


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, prog_name="kavya", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        click.echo("aborted", err=True)
        return EXIT_INPUT
    except click.ClickException as exc:
        exc.show()
        return EXIT_INPUT
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    except KavyaValidationError as exc:
        click.echo(f"validation error: {exc}", err=True)
        return exc.exit_code
    except KavyaError as exc:
        click.echo(f"error: {exc}", err=True)
        return exc.exit_code
    except Exception as exc:  # noqa: BLE001
        click.echo(f"internal error: {type(exc).__name__}: {exc}", err=True)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
