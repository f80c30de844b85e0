import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from dotenv import load_dotenv

# Load environment variables from .env file (override any shell env vars)
load_dotenv(override=True)

from glarb import config
from glarb.abelian import format_elem, parse_elem, parse_group
from glarb.arboricity import arb_exact, arb_oracle
from glarb.bounds import bounds_report, create_ramsey_bound
from glarb.certificates import CycleCert, SubdivCert, verify
from glarb.constructions import blocks_construction, eta_encoding, lower_bound_instance, unbounded_instance
from glarb.cycles import find_a_cycle
from glarb.errors import GlarbError, MalformedInputError
from glarb.fileio import (
    format_certificate,
    format_graph,
    graph_digest,
    parse_certificate,
    parse_graph,
    parse_plain_graph,
    parse_stage,
    parse_value_set,
)
from glarb.long_cycle import extract_long_a_cycle
from glarb.subdivision import StageReport, extract_a_subdivision, long_cycle_in_subdivision

logger = logging.getLogger(__name__)

# Exact bounds can run to millions of digits
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

# Exit codes beyond those carried by GlarbError
EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_STAGE_REPORT = 2


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise MalformedInputError(f"{path} is not UTF-8 text: {e.reason} at byte {e.start}")


def _load_graph(path: str):
    return parse_graph(_read(path))


def _emit_certificate(result: dict, cert, graph, values, out: Optional[str]) -> dict:
    """Attach the certificate text, or write it to --out and record the path"""
    text = format_certificate(cert, graph_digest(graph, values))
    if out:
        Path(out).write_text(text, encoding="utf-8")
        result["certificate_file"] = out
    else:
        result["certificate"] = text
    return result


# ===================== Solvers =====================

def cmd_arb(args) -> Tuple[dict, int]:
    graph, values = _load_graph(args.graph)
    found = arb_exact(graph, values, args.budget)
    result = {"success": True, "command": "arb", **found.to_dict()}
    return _emit_certificate(result, found.witness, graph, values, args.out), EXIT_OK


def cmd_arb_oracle(args) -> Tuple[dict, int]:
    graph, values = _load_graph(args.graph)
    value = arb_oracle(graph, values, args.max_vertices)
    return {"success": True, "command": "arb-oracle", "value": value}, EXIT_OK


def cmd_find_cycle(args) -> Tuple[dict, int]:
    graph, values = _load_graph(args.graph)
    found = find_a_cycle(graph, values, args.min_len)
    if found is None:
        return {"success": True, "command": "find-cycle", "found": False, "cycle": "none"}, EXIT_OK
    result = {"success": True, "command": "find-cycle", "found": True,
              "length": found.length, "value": format_elem(found.value)}
    return _emit_certificate(result, found, graph, values, args.out), EXIT_OK


# ===================== Extraction =====================

def cmd_extract_cycle(args) -> Tuple[dict, int]:
    graph, values = _load_graph(args.graph)
    stage = parse_stage(_read(args.staged)) if args.staged else None
    found = extract_long_a_cycle(graph, values, args.d, stage, args.budget)
    result = {"success": True, "command": "extract-cycle", "mode": "staged" if stage else "full",
              "length": found.length, "value": format_elem(found.value)}
    return _emit_certificate(result, found, graph, values, args.out), EXIT_OK


def _stage_report(command: str, report: StageReport) -> Tuple[dict, int]:
    logger.warning(f"{command} stopped at stage {report.stage}: {report.detail}")
    return {"command": command, **report.to_dict()}, EXIT_STAGE_REPORT


def cmd_extract_subdivision(args) -> Tuple[dict, int]:
    graph, values = _load_graph(args.graph)
    stage = parse_stage(_read(args.staged)) if args.staged else None
    ramsey = create_ramsey_bound(args.ramsey_policy)
    found = extract_a_subdivision(graph, values, args.t, args.d, stage, ramsey, args.budget)
    if isinstance(found, StageReport):
        return _stage_report("extract-subdivision", found)
    result = {"success": True, "command": "extract-subdivision", "mode": "staged" if stage else "full",
              "t": found.t, "branch": list(found.branch)}
    return _emit_certificate(result, found, graph, values, args.out), EXIT_OK


def cmd_cycle_in_subdivision(args) -> Tuple[dict, int]:
    graph, values = _load_graph(args.graph)
    subdivision, digest = parse_certificate(_read(args.certificate), graph.group)
    if not isinstance(subdivision, SubdivCert):
        raise MalformedInputError(f"{args.certificate} is not a subdivision certificate")
    if digest != graph_digest(graph, values):
        raise MalformedInputError(f"{args.certificate} certifies a different graph")
    ramsey = create_ramsey_bound(args.ramsey_policy)
    found = long_cycle_in_subdivision(graph, subdivision, values, args.p, args.k,
                                      args.r, args.beta, args.mu, ramsey)
    if isinstance(found, StageReport):
        return _stage_report("cycle-in-subdivision", found)
    result = {"success": True, "command": "cycle-in-subdivision",
              "length": found.length, "value": format_elem(found.value)}
    return _emit_certificate(result, found, graph, values, args.out), EXIT_OK


# ===================== Generators =====================

def _write_graph(args, graph, values, extra: dict) -> Tuple[dict, int]:
    """Graph text to --out (with a JSON summary) or straight to stdout"""
    text = format_graph(graph, values)
    if not args.out:
        return {"raw": text}, EXIT_OK
    Path(args.out).write_text(text, encoding="utf-8")
    return {"success": True, "command": f"gen {args.family}", "graph_file": args.out,
            "vertices": graph.n, "edges": graph.edge_count(), **extra}, EXIT_OK


def cmd_gen(args) -> Tuple[dict, int]:
    if args.family == "eta":
        n, edges, marked = parse_plain_graph(_read(args.plain))
        graph, values = eta_encoding(n, edges, marked)
        return _write_graph(args, graph, values, {"marked": len(marked)})

    group = parse_group(args.group)
    values = parse_value_set(group, args.A)
    if args.family == "lower-bound":
        x = parse_elem(group, args.x)
        graph = lower_bound_instance(values, x, args.t)
        return _write_graph(args, graph, values, {"x": format_elem(x)})
    if args.family == "unbounded":
        graph, case, element, ell = unbounded_instance(values, args.t)
        return _write_graph(args, graph, values, {"case": case, "element": format_elem(element), "ell": ell})
    y = parse_elem(group, args.y)
    graph = blocks_construction(group, y, args.t, values)
    return _write_graph(args, graph, values, {"y": format_elem(y)})


# ===================== Verification and bounds =====================

def cmd_verify(args) -> Tuple[dict, int]:
    graph, values = _load_graph(args.graph)
    cert, digest = parse_certificate(_read(args.certificate), graph.group)
    expected = graph_digest(graph, values)
    if digest != expected:
        return {"success": False, "command": "verify", "verdict": "FAIL", "rule": "graph-digest",
                "detail": f"certificate names graph {digest}, file hashes to {expected}"}, EXIT_VERIFY_FAILED
    d = args.d
    if d is None and isinstance(cert, (CycleCert, SubdivCert)):
        d = cert.d
    verdict = verify(graph, values, cert, d, args.k)
    result = {"command": "verify", **verdict.to_dict()}
    return result, EXIT_OK if verdict else EXIT_VERIFY_FAILED


def cmd_bounds(args) -> Tuple[dict, int]:
    ramsey = create_ramsey_bound(args.ramsey_policy)
    report = bounds_report(args.omega, args.t, args.d, args.p, args.k, ramsey)
    return {"success": True, "command": "bounds", **report}, EXIT_OK


COMMANDS = {
    "arb": cmd_arb,
    "arb-oracle": cmd_arb_oracle,
    "find-cycle": cmd_find_cycle,
    "extract-cycle": cmd_extract_cycle,
    "extract-subdivision": cmd_extract_subdivision,
    "cycle-in-subdivision": cmd_cycle_in_subdivision,
    "gen": cmd_gen,
    "verify": cmd_verify,
    "bounds": cmd_bounds,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="glarb", description="Vertex-arboricity of group-labelled graphs")
    parser.add_argument("--max-cycles", type=int, help="cap for simple-cycle enumeration")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("arb", help="exact arboricity with a partition witness")
    p.add_argument("graph")
    p.add_argument("--budget", type=int)
    p.add_argument("--out")

    p = sub.add_parser("arb-oracle", help="brute-force arboricity for small graphs")
    p.add_argument("graph")
    p.add_argument("--max-vertices", type=int)

    p = sub.add_parser("find-cycle", help="shortest A-cycle of length at least --min-len")
    p.add_argument("graph")
    p.add_argument("--min-len", type=int, default=3)
    p.add_argument("--out")

    p = sub.add_parser("extract-cycle", help="A-cycle of length at least --d")
    p.add_argument("graph")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--staged")
    p.add_argument("--budget", type=int)
    p.add_argument("--out")

    p = sub.add_parser("extract-subdivision", help="(A,d)-subdivision of K_t")
    p.add_argument("graph")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--staged")
    p.add_argument("--budget", type=int)
    p.add_argument("--ramsey-policy")
    p.add_argument("--out")

    p = sub.add_parser("cycle-in-subdivision", help="(A,k)-cycle inside an (A,1)-subdivision")
    p.add_argument("graph")
    p.add_argument("certificate")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--beta", type=int)
    p.add_argument("--mu", type=int)
    p.add_argument("--ramsey-policy")
    p.add_argument("--out")

    p = sub.add_parser("gen", help="generate an extremal instance")
    p.add_argument("family", choices=["lower-bound", "unbounded", "blocks", "eta"])
    p.add_argument("plain", nargs="?", help="plain graph file for eta")
    p.add_argument("--group")
    p.add_argument("--A")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--t", type=int)
    p.add_argument("--out")

    p = sub.add_parser("verify", help="check a certificate against its graph")
    p.add_argument("graph")
    p.add_argument("certificate")
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int)

    p = sub.add_parser("bounds", help="exact thresholds as big integers")
    p.add_argument("--omega", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--ramsey-policy")
    return parser


def _check_gen_args(args) -> None:
    needed = {"eta": ["plain"], "lower-bound": ["group", "A", "x", "t"],
              "unbounded": ["group", "A", "t"], "blocks": ["group", "A", "y", "t"]}[args.family]
    missing = [name for name in needed if getattr(args, name) is None]
    if missing:
        raise MalformedInputError(f"gen {args.family} needs {', '.join(missing)}")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, config.LOG_LEVEL.upper(), logging.WARNING),
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    if args.max_cycles is not None:
        config.CYCLE_CAPACITY = args.max_cycles

    try:
        if args.command == "gen":
            _check_gen_args(args)
        result, code = COMMANDS[args.command](args)
    except GlarbError as e:
        logger.error(f"{args.command} failed: {e}")
        result, code = e.to_dict(), e.exit_code
    except OSError as e:
        result, code = {"success": False, "error": str(e), "type": type(e).__name__}, MalformedInputError.exit_code

    if "raw" in result:
        sys.stdout.write(result["raw"])
    else:
        print(json.dumps(result, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
