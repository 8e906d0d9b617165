"""Command-line interface.

Subcommands map one-to-one onto the engine operations; stdout carries the
requested artifact and nothing else, diagnostics go to stderr. Exit
codes: 0 success, 1 validation failure, 2 I/O failure, 3 internal error.

``SOPPIA_SCHEMA`` and ``SOPPIA_STORE`` provide defaults for ``--schema``
and ``--store``. The ``--format json`` output of ``assess`` is the same
canonical JSON the service returns in its ``data`` section.
"""

from __future__ import annotations

import argparse
import os
import sys

from .canonical import canonical_json
from .errors import (
    BindError,
    NotFound,
    ParseError,
    SoppiaError,
    StorageError,
)
from .numeric import dec
from .pipeline import assess_case, result_to_dict
from .prompting import parse_response, parsed_response_to_dict, render_prompt
from .reporting import render_report_text
from .schema import (
    CriteriaSchema,
    default_clt_schema,
    load_schema_file,
    schema_from_dict,
    validate_schema,
)
from .scoring import load_case_file, missing_criteria
from .sensitivity import WhatIfDelta, what_if


def _resolve_schema(path: str | None) -> CriteriaSchema:
    resolved = path or os.environ.get("SOPPIA_SCHEMA")
    if resolved:
        return load_schema_file(resolved)
    return default_clt_schema()


def _read_text(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _cmd_assess(args: argparse.Namespace) -> int:
    schema = _resolve_schema(args.schema)
    case = load_case_file(args.case)
    result = assess_case(schema, case)
    if result.report is None:
        missing = ", ".join(missing_criteria(schema, case))
        print(f"case incomplete: missing {missing}", file=sys.stderr)
        return 1
    if args.format == "json":
        print(canonical_json(result_to_dict(result, include_renderings=True)))
    else:
        sys.stdout.write(render_report_text(result.report, args.format))
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    from .classification import classify_total

    schema = _resolve_schema(args.schema)
    classification = classify_total(schema, dec(args.total, field="--total"))
    suffix = " (below scale)" if classification.below_scale else ""
    print(
        f"{classification.band_label} / {classification.third.value} third{suffix}"
    )
    return 0


def _parse_overrides(pairs: list[str], *, what: str) -> dict[str, str]:
    overrides: dict[str, str] = {}
    for pair in pairs:
        if "=" not in pair:
            raise ParseError(f"bad {what} {pair!r}; expected ID=value")
        criterion_id, _, value = pair.partition("=")
        overrides[criterion_id.strip()] = value.strip()
    return overrides


def _cmd_whatif(args: argparse.Namespace) -> int:
    schema = _resolve_schema(args.schema)
    case = load_case_file(args.case)
    presences: dict[str, int] = {}
    for criterion_id, value in _parse_overrides(args.set or [], what="--set").items():
        try:
            presences[criterion_id] = int(value)
        except ValueError:
            raise ParseError(
                f"presence for {criterion_id} must be an integer, got {value!r}"
            ) from None
    weights = {
        criterion_id: dec(value, field=f"--set-weight {criterion_id}")
        for criterion_id, value in _parse_overrides(
            args.set_weight or [], what="--set-weight"
        ).items()
    }
    outcome = what_if(
        schema, case, WhatIfDelta(presence_overrides=presences, weight_overrides=weights)
    )
    print(
        canonical_json(
            {
                "before": result_to_dict(outcome.before, include_report=False),
                "after": result_to_dict(outcome.after, include_report=False),
                "changed_fields": list(outcome.changed_fields),
            }
        )
    )
    return 0


def _cmd_prompt_render(args: argparse.Namespace) -> int:
    schema = _resolve_schema(args.schema)
    facts = _read_text(args.facts)
    sys.stdout.write(render_prompt(schema, facts).rendered + "\n")
    return 0


def _cmd_prompt_parse(args: argparse.Namespace) -> int:
    schema = _resolve_schema(args.schema)
    parsed = parse_response(_read_text(args.infile), schema)
    print(canonical_json(parsed_response_to_dict(parsed)))
    for diagnostic in parsed.diagnostics:
        print(f"diagnostic: {diagnostic}", file=sys.stderr)
    return 0


def _cmd_schema_validate(args: argparse.Namespace) -> int:
    import json as _json

    try:
        document = _json.loads(_read_text(args.infile))
    except _json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    schema = schema_from_dict(document)
    violations = validate_schema(schema)
    if violations:
        for violation in violations:
            print(f"{violation.field}: {violation.message}", file=sys.stderr)
        return 1
    print("OK")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from .api import ServiceConfig, serve
    from .prompting import CompletionEndpoint

    store_root = args.store or os.environ.get("SOPPIA_STORE") or "./soppia_store"
    llm_endpoint = None
    if args.llm_endpoint:
        llm_endpoint = CompletionEndpoint(
            url=args.llm_endpoint,
            token_env=args.llm_token_env,
            timeout_seconds=args.llm_timeout,
        )
    schema_path = args.schema or os.environ.get("SOPPIA_SCHEMA")
    serve(
        ServiceConfig(
            port=args.port,
            host=args.host,
            store_root=store_root,
            schema_path=schema_path,
            llm_endpoint=llm_endpoint,
        )
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="soppia",
        description="Weighted-criteria assessment of non-pecuniary damages.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    assess = sub.add_parser("assess", help="score, classify, and report a case file")
    assess.add_argument("--case", required=True, help="path to a case JSON file")
    assess.add_argument("--schema", help="path to a schema JSON file")
    assess.add_argument(
        "--format", choices=("plain", "markdown", "json"), default="plain"
    )
    assess.set_defaults(func=_cmd_assess)

    classify = sub.add_parser("classify", help="classify a raw weighted total")
    classify.add_argument("--total", required=True, help="weighted total, e.g. 43.8")
    classify.add_argument("--schema", help="path to a schema JSON file")
    classify.set_defaults(func=_cmd_classify)

    whatif = sub.add_parser("whatif", help="compare a case before and after a delta")
    whatif.add_argument("--case", required=True, help="path to a case JSON file")
    whatif.add_argument("--schema", help="path to a schema JSON file")
    whatif.add_argument(
        "--set",
        action="append",
        metavar="ID=PRESENCE",
        help="override a presence level (repeatable)",
    )
    whatif.add_argument(
        "--set-weight",
        action="append",
        metavar="ID=WEIGHT",
        help="override a criterion weight (repeatable)",
    )
    whatif.set_defaults(func=_cmd_whatif)

    prompt = sub.add_parser("prompt", help="render or parse model prompts")
    prompt_sub = prompt.add_subparsers(dest="prompt_command", required=True)
    render = prompt_sub.add_parser("render", help="render the structured prompt")
    render.add_argument("--facts", required=True, help="path to a facts text file")
    render.add_argument("--schema", help="path to a schema JSON file")
    render.set_defaults(func=_cmd_prompt_render)
    parse = prompt_sub.add_parser("parse", help="parse a model response")
    parse.add_argument("--in", dest="infile", required=True, help="path to a response file")
    parse.add_argument("--schema", help="path to a schema JSON file")
    parse.set_defaults(func=_cmd_prompt_parse)

    schema_cmd = sub.add_parser("schema", help="schema utilities")
    schema_sub = schema_cmd.add_subparsers(dest="schema_command", required=True)
    validate = schema_sub.add_parser("validate", help="validate a schema document")
    validate.add_argument("--in", dest="infile", required=True, help="path to a schema file")
    validate.set_defaults(func=_cmd_schema_validate)

    serve_cmd = sub.add_parser("serve", help="run the HTTP service")
    serve_cmd.add_argument("--port", type=int, default=8000)
    serve_cmd.add_argument("--host", default="127.0.0.1")
    serve_cmd.add_argument("--store", help="store root directory")
    serve_cmd.add_argument("--schema", help="path to a schema JSON file")
    serve_cmd.add_argument("--llm-endpoint", help="completion endpoint URL")
    serve_cmd.add_argument(
        "--llm-token-env",
        help="name of the environment variable holding the bearer token",
    )
    serve_cmd.add_argument("--llm-timeout", type=float, default=30.0)
    serve_cmd.set_defaults(func=_cmd_serve)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NotFound, StorageError, BindError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SoppiaError as exc:
        where = f" ({exc.field})" if exc.field else ""
        print(f"error: {exc}{where}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())
