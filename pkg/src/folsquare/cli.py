"""Command-line interface.

Exit codes: 0 on success, 1 on domain failures (unparsable formula, bad
dataset, failed run), 2 on usage errors (click's default).
"""

from __future__ import annotations

import json
import sys
import warnings
from pathlib import Path

import click

from folsquare.agent import PipelineConfig, completed_ids, run_instances
from folsquare.backend import (
    CachedBackend,
    HttpBackend,
    HttpConfig,
    RecordingBackend,
    ScriptedBackend,
    cache_stats,
    clear_cache,
)
from folsquare.bench import evaluate, load_dataset, render_markdown, write_report
from folsquare.errors import ParseError, SchemaError
from folsquare.fol import (
    Atom,
    Binary,
    Not,
    Quantified,
    parse_formula,
    render,
    validate_cfg,
)
from folsquare.oracle import entail
from folsquare.semiotic import SquarePosition, build_square
from folsquare.textmetrics import corpus_stats


def _ast_dict(f):
    if isinstance(f, Atom):
        return {
            "node": "atom",
            "pred": f.pred,
            "args": [{"kind": type(t).__name__.lower(), "name": getattr(t, "name", str(t))} for t in f.args],
        }
    if isinstance(f, Not):
        return {"node": "not", "sub": _ast_dict(f.sub)}
    if isinstance(f, Binary):
        return {"node": "binary", "op": f.op.name.lower(), "left": _ast_dict(f.left), "right": _ast_dict(f.right)}
    if isinstance(f, Quantified):
        return {"node": "quantified", "quant": f.quant.name.lower(), "var": f.var, "body": _ast_dict(f.body)}
    raise TypeError(f"not a formula: {f!r}")


def _echo_json(data):
    click.echo(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))


def _read_formula_lines(path: str):
    formulas = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        formulas.append(parse_formula(line))
    return formulas


@click.group()
def main():
    """First-order semiotic squares: parse, verify, reason, evaluate."""


@main.command("parse")
@click.argument("formula_text")
@click.option("--json", "as_json", is_flag=True, help="Emit the AST and validation report as JSON.")
def cmd_parse(formula_text, as_json):
    """Parse and validate a formula; exit 0 iff it is valid."""
    report = validate_cfg(formula_text)
    if as_json:
        payload = {
            "valid": report.valid,
            "failures": [
                {"check": f.check, "span": list(f.location), "message": f.message}
                for f in report.failures
            ],
        }
        if report.formula is not None:
            payload["ast"] = _ast_dict(report.formula)
            payload["rendered"] = render(report.formula)
        _echo_json(payload)
    else:
        if report.formula is not None:
            click.echo(render(report.formula))
        for failure in report.failures:
            click.echo(
                f"{failure.check} at {failure.location[0]}..{failure.location[1]}: {failure.message}",
                err=True,
            )
    sys.exit(0 if report.valid else 1)


@main.command("square")
@click.argument("formula_text")
@click.option("--statement", default="", help="Natural-language statement for the position.")
@click.option("--premises", "premises_path", type=click.Path(exists=True), default=None)
@click.option("--domain-sizes", default="1,2,3", show_default=True)
@click.option("--json", "as_json", is_flag=True)
def cmd_square(formula_text, statement, premises_path, domain_sizes, as_json):
    """Build and verify a semiotic square from a formula."""
    try:
        formula = parse_formula(formula_text)
        premises = _read_formula_lines(premises_path) if premises_path else []
    except ParseError as err:
        click.echo(str(err), err=True)
        sys.exit(1)
    max_domain = max(int(s) for s in domain_sizes.split(","))
    square = build_square(
        SquarePosition(statement=statement or formula_text, formula=formula),
        premises=premises,
        max_domain=max_domain,
    )
    if as_json:
        _echo_json(
            {
                "square": square.to_record(),
                "contrary_kind": square.contrary_kind,
                "constraints": [
                    {"kind": c.kind, "target": render(c.target), "satisfied": c.satisfied}
                    for c in square.constraints
                ],
                "validation": {
                    "truth_table_ok": square.validation.truth_table_ok,
                    "cfg_ok": square.validation.cfg_ok,
                    "llm_ok": square.validation.llm_ok,
                },
            }
        )
    else:
        record = square.to_record()
        for key in ("S1", "not_S1", "S2", "not_S2"):
            click.echo(f"{key}: {record[key]['FOL'] or '(unusable)'}")
        click.echo(f"contrary: {square.contrary_kind}")
    sys.exit(0)


@main.command("entail")
@click.argument("premises_path", type=click.Path(exists=True))
@click.argument("query_text")
@click.option("--domain-sizes", default="1,2,3", show_default=True)
@click.option("--json", "as_json", is_flag=True)
def cmd_entail(premises_path, query_text, domain_sizes, as_json):
    """Three-valued entailment of a query against a premises file."""
    try:
        premises = _read_formula_lines(premises_path)
        query = parse_formula(query_text)
    except ParseError as err:
        click.echo(str(err), err=True)
        sys.exit(1)
    sizes = [int(s) for s in domain_sizes.split(",")]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        verdict = entail(premises, query, domain_sizes=sizes)
    for warning in caught:
        click.echo(f"warning: {warning.message}", err=True)
    if as_json:
        _echo_json({"verdict": verdict.label.value, "source": verdict.source.value})
    else:
        click.echo(verdict.label.value)
    sys.exit(0)


def _build_backend(config: dict):
    name = config.get("backend", "scripted")
    if name == "scripted":
        replay = config.get("replay_file")
        if not replay:
            raise click.UsageError("scripted backend needs a replay_file in the config")
        backend = ScriptedBackend.from_file(replay)
    elif name == "http":
        http_config = HttpConfig.load(config.get("http_config"))
        if "endpoint" in config:
            http_config.base_url = config["endpoint"]
        if "model_name" in config:
            http_config.model_name = config["model_name"]
        if "retries" in config:
            http_config.retries = int(config["retries"])
        backend = HttpBackend(http_config)
    else:
        raise click.UsageError(f"unknown backend {name!r}")
    if config.get("cache_dir"):
        backend = CachedBackend(backend, config["cache_dir"])
    if config.get("record_file"):
        backend = RecordingBackend(backend)
    return backend


@main.command("run")
@click.option("--dataset", "dataset_path", type=click.Path(exists=True), required=True)
@click.option("--format", "format_name", default="custom", show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True), required=True)
@click.option("--backend", "backend_name", type=click.Choice(["scripted", "http"]), default=None)
@click.option("--model", default=None)
@click.option("--ablate", multiple=True,
              type=click.Choice(["no_square", "no_plan", "no_reflect", "no_fol", "no_statement"]))
@click.option("--two-label", is_flag=True, default=None)
@click.option("--out", "out_path", default="results.jsonl", show_default=True)
@click.option("--domain-sizes", default=None)
@click.option("--concurrency", type=int, default=None)
def cmd_run(dataset_path, format_name, config_path, backend_name, model, ablate,
            two_label, out_path, domain_sizes, concurrency):
    """Run the pipeline over a dataset; records stream to the results file."""
    config_data = json.loads(Path(config_path).read_text(encoding="utf-8"))
    if backend_name:
        config_data["backend"] = backend_name
    if model:
        config_data["model_name"] = model
    if ablate:
        config_data.setdefault("ablations", [])
        config_data["ablations"] = list(config_data["ablations"]) + list(ablate)
    if two_label:
        config_data["two_label"] = True
    if domain_sizes:
        config_data["domain_sizes"] = [int(s) for s in domain_sizes.split(",")]
    if concurrency:
        config_data["concurrency"] = concurrency

    try:
        instances = load_dataset(dataset_path, format_name)
    except SchemaError as err:
        click.echo(str(err), err=True)
        sys.exit(1)

    pipeline_config = PipelineConfig.from_dict(config_data)
    backend = _build_backend(config_data)
    skip = completed_ids(out_path)
    if skip:
        click.echo(f"resuming: skipping {len(skip)} completed instance(s)", err=True)
    try:
        records = run_instances(
            instances, pipeline_config, backend, results_path=out_path, skip_ids=skip
        )
    except LookupError as err:
        click.echo(f"backend exhausted: {err}", err=True)
        sys.exit(1)
    if config_data.get("record_file") and isinstance(backend, RecordingBackend):
        backend.save(config_data["record_file"])

    # the summary report covers this invocation's records only
    fresh = {r.instance_id for r in records}
    scored = [i for i in instances if str(i.id) in fresh]
    report = evaluate(records, scored, run_metadata={"backend": config_data.get("backend", "scripted")})
    report_path = Path(out_path).with_suffix(".report.json")
    write_report(report, report_path, "json")
    click.echo(
        f"{report.overall.count} instance(s), accuracy {report.overall_accuracy:.4f}; "
        f"records → {out_path}; report → {report_path}",
        err=True,
    )
    sys.exit(0)


@main.command("eval")
@click.option("--records", "records_path", type=click.Path(exists=True), required=True)
@click.option("--dataset", "dataset_path", type=click.Path(exists=True), required=True)
@click.option("--format", "format_name", default="custom", show_default=True)
@click.option("--out", "out_prefix", default="eval", show_default=True)
def cmd_eval(records_path, dataset_path, format_name, out_prefix):
    """Score a results file against gold labels; writes JSON and markdown."""
    from dataclasses import dataclass

    from folsquare.oracle import Label, Source, Verdict

    @dataclass
    class LoadedRecord:
        instance_id: str
        final: Verdict
        contrary_kind: str
        resolution_path: str

    try:
        instances = load_dataset(dataset_path, format_name)
    except SchemaError as err:
        click.echo(str(err), err=True)
        sys.exit(1)
    records = []
    for line in Path(records_path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        data = json.loads(line)
        records.append(
            LoadedRecord(
                instance_id=str(data["instance_id"]),
                final=Verdict(Label(data["final"]), Source(data.get("final_source", "Default"))),
                contrary_kind=data.get("contrary_kind", "Absent"),
                resolution_path=data.get("resolution_path", "Unknown"),
            )
        )
    try:
        report = evaluate(records, instances)
    except KeyError as err:
        click.echo(str(err), err=True)
        sys.exit(1)
    write_report(report, f"{out_prefix}.json", "json")
    write_report(report, f"{out_prefix}.md", "markdown")
    click.echo(render_markdown(report))
    sys.exit(0)


@main.command("metrics")
@click.argument("path", type=click.Path(exists=True))
@click.option("--format", "format_name", default=None,
              help="Treat the input as a dataset in this format; metrics run over context+question text.")
@click.option("--json", "as_json", is_flag=True)
def cmd_metrics(path, format_name, as_json):
    """Corpus complexity metrics for a text file or dataset."""
    try:
        if format_name:
            instances = load_dataset(path, format_name)
            text = "\n".join(f"{i.context}\n{i.question}" for i in instances)
        else:
            text = Path(path).read_text(encoding="utf-8")
        stats = corpus_stats(text)
    except (SchemaError, ValueError) as err:
        click.echo(str(err), err=True)
        sys.exit(1)
    if as_json:
        _echo_json(stats.to_dict())
    else:
        for key, value in stats.to_dict().items():
            click.echo(f"{key}: {value}")
    sys.exit(0)


@main.command("cache")
@click.option("--dir", "cache_dir", required=True, type=click.Path())
@click.option("--clear", is_flag=True)
def cmd_cache(cache_dir, clear):
    """Inspect or clear the response cache."""
    if clear:
        removed = clear_cache(cache_dir)
        click.echo(f"removed {removed} entries")
    _echo_json(cache_stats(cache_dir))
    sys.exit(0)


if __name__ == "__main__":
    main()
