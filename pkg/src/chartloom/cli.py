"""Command line interface for the whole pipeline.

Exit codes: 0 success, 1 usage error, 2 pipeline error (machine-readable JSON
on stderr).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .config import DEFAULT_CONFIG, Config
from .corpus.generate import (
    corpus_specs,
    generate_synthetic_chart,
    read_manifest,
    score_corpus,
    write_manifest,
)
from .decorations import apply_corrections, corrections_from_json
from .errors import ChartloomError
from .grec.model import GrecTemplate
from .reuse import (
    DataTable,
    ReuseSession,
    check_compatibility,
    generate_sample_data,
    infer_schema,
)
from .service.store import SessionStore, bound_template_dict


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(1)


def _load_config(path: str | None) -> Config:
    if not path:
        return DEFAULT_CONFIG
    with open(path) as fh:
        return Config.from_dict(json.load(fh))


def _cmd_deconstruct(args) -> int:
    from .decorations import detect_decorations, strip_decorations
    from .grec.deconstruct import deconstruct
    from .ingest.scene import filter_noise, normalize_scene

    config = _load_config(args.config)
    with open(args.chart) as fh:
        svg = fh.read()
    scene = filter_noise(normalize_scene(svg, config), config)
    decoration = detect_decorations(scene, config)
    if args.corrections:
        with open(args.corrections) as fh:
            decoration = apply_corrections(decoration, scene,
                                           corrections_from_json(fh.read()), config)
    content = strip_decorations(scene, decoration, config)
    template = deconstruct(content, decoration, config)
    with open(args.output, "w") as fh:
        fh.write(template.to_json())
    report = {
        "template": args.output,
        "rects": len(content.rects()),
        "decorations": decoration.summary(),
        "schema": infer_schema(template).to_dict(),
        "warnings": template.warnings,
    }
    print(json.dumps(report, indent=2))
    return 0


def _cmd_sample_data(args) -> int:
    template = _read_template(args.template)
    schema = infer_schema(template)
    table = generate_sample_data(schema, template)
    with open(args.output, "w", newline="") as fh:
        fh.write(table.to_csv())
    print(json.dumps({"rows": table.row_count, "columns": table.names(),
                      "schema": schema.to_dict()}, indent=2))
    return 0


def _cmd_check(args) -> int:
    template = _read_template(args.template)
    with open(args.data) as fh:
        table = DataTable.from_csv(fh.read())
    report = check_compatibility(infer_schema(template), table)
    print(json.dumps(report.to_dict(), indent=2))
    return 0  # the check is advisory: a not-ok report is still a clean exit


def _cmd_apply(args) -> int:
    template = _read_template(args.template)
    with open(args.data) as fh:
        table = DataTable.from_csv(fh.read())
    with open(args.choices) as fh:
        choice_list = json.load(fh)
    session = ReuseSession(template=template, table=table,
                           config=template.config or DEFAULT_CONFIG)
    for i, choice in enumerate(choice_list):
        session.apply_step(i, choice)
    svg = session.final_svg()
    with open(args.output, "w") as fh:
        fh.write(svg)
    sidecar = args.output + ".template.json"
    with open(sidecar, "w") as fh:
        json.dump(bound_template_dict(template, session), fh, indent=2)
    print(json.dumps({"svg": args.output, "template": sidecar,
                      "warnings": session.warnings}, indent=2))
    return 0


def _cmd_corpus(args) -> int:
    if args.action == "generate":
        specs = corpus_specs(seeds=tuple(args.seeds))
        os.makedirs(args.output, exist_ok=True)
        write_manifest(os.path.join(args.output, "manifest.json"), specs)
        for spec in specs:
            chart = generate_synthetic_chart(spec)
            with open(os.path.join(args.output, f"{spec.name}.svg"), "w") as fh:
                fh.write(chart.svg)
            table = DataTable.from_rows(chart.build.rows)
            with open(os.path.join(args.output, f"{spec.name}.csv"), "w", newline="") as fh:
                fh.write(table.to_csv())
        print(json.dumps({"charts": len(specs), "directory": args.output}, indent=2))
        return 0
    specs = (read_manifest(args.manifest) if args.manifest
             else corpus_specs(seeds=tuple(args.seeds)))
    report = score_corpus(specs, _load_config(args.config))
    for r in report["results"]:
        print(f"{'ok ' if r['ok'] else 'FAIL'}  {r['chart']:34s} {r['seconds']:.3f}s")
    print(f"accuracy {report['matched']}/{report['total']} = "
          f"{report['accuracy'] * 100:.2f}%  ({report['seconds']}s total)")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.api import create_app

    store = SessionStore(directory=args.sessions_dir)
    app = create_app(store, _load_config(args.config))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _read_template(path: str) -> GrecTemplate:
    with open(path) as fh:
        return GrecTemplate.from_json(fh.read())


def build_parser() -> _Parser:
    parser = _Parser(prog="chartloom",
                     description="Deconstruct SVG charts and reuse their layouts")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("deconstruct", help="SVG chart to template JSON")
    p.add_argument("chart")
    p.add_argument("--corrections", help="JSON file of correction records")
    p.add_argument("--config")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_deconstruct)

    p = sub.add_parser("sample-data", help="synthesize a sample CSV for a template")
    p.add_argument("template")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_sample_data)

    p = sub.add_parser("check", help="advisory schema compatibility check")
    p.add_argument("template")
    p.add_argument("data")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("apply", help="bind a dataset and render the final SVG")
    p.add_argument("template")
    p.add_argument("data")
    p.add_argument("--choices", required=True,
                   help="JSON array of {field, channel?} applied in step order")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_apply)

    p = sub.add_parser("corpus", help="synthetic corpus generation and scoring")
    p.add_argument("action", choices=["generate", "score"])
    p.add_argument("-o", "--output", default="corpus-out")
    p.add_argument("--manifest")
    p.add_argument("--config")
    p.add_argument("--seeds", type=lambda s: [int(x) for x in s.split(",")],
                   default=[1, 2])
    p.set_defaults(func=_cmd_corpus)

    p = sub.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--port", type=int,
                   default=int(os.environ.get("CHARTLOOM_PORT", "8080")))
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--sessions-dir")
    p.add_argument("--config")
    p.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ChartloomError as exc:
        sys.stderr.write(json.dumps(
            {"error": str(exc), "kind": type(exc).__name__}) + "\n")
        return 2
    except FileNotFoundError as exc:
        sys.stderr.write(json.dumps({"error": str(exc), "kind": "FileNotFound"}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
