"""Command-line interface: JSON documents in, JSON reports out.

Exit codes: 0 decided true / construction succeeded, 1 decided false
(counterexample in the report), 2 bounded-inconclusive (cap reached or
certificate not found within caps), 3 input error.  Reports are
printed to standard output and are byte-identical for identical
inputs; `--human` renders the same report as text.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from .core import (
    Act,
    ActMap,
    Congruence,
    FiniteMonoid,
    StructureError,
    set_empty_acts_allowed,
    validate,
)
from .constructions import (
    ConstructionResult,
    Nonexistence,
    TensorMap,
    TensorResult,
    pullback,
    pushout,
    rees_quotient,
    tensor,
)
from .classes import (
    ActClass,
    Decision,
    EPI,
    MONO,
    SPLIT_EPI,
    SPLIT_MONO,
    UNITARY,
    classify_map,
    default_bound,
    in_class,
    is_flat_bounded,
    is_stable_bounded,
    projective_for,
    pure_epi,
    unitary_with_complement_in,
    universe,
)
from .documents import Document, DocumentError, DocumentSet, parse_text
from .homsearch import MapRetractWitness, Square, enumerate_maps, find_filler
from .wfs import (
    CentredPrecoverEvidence,
    CofCertificate,
    Factorization,
    SOAResult,
    SOASquare,
    SOAStage,
    WfsReport,
    centred_factor_via_precover,
    centred_wfs_precover,
    check_precover,
    cof_certificate,
    factor_unitary_split,
    factor_via_precover,
    precover,
    small_object_factorize,
    wfs_verify,
)

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3


class CliInputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliInputError(message)


# ---------------------------------------------------------------------------
# serialization


def to_jsonable(obj: Any) -> Any:
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, FiniteMonoid):
        out = {"size": obj.size, "identity": obj.identity, "mul": [list(r) for r in obj.mul]}
        if obj.zero is not None:
            out["zero"] = obj.zero
        return out
    if isinstance(obj, Act):
        return {
            "size": obj.size,
            "side": obj.side,
            "centred": obj.centred,
            "action": [list(r) for r in obj.action],
        }
    if isinstance(obj, ActMap):
        return {
            "values": list(obj.values),
            "source": to_jsonable(obj.source),
            "target": to_jsonable(obj.target),
        }
    if isinstance(obj, Congruence):
        return {"reps": list(obj.reps), "blocks": [list(b) for b in obj.blocks()]}
    if isinstance(obj, Square):
        return {
            "f": to_jsonable(obj.f),
            "g": to_jsonable(obj.g),
            "u": to_jsonable(obj.u),
            "v": to_jsonable(obj.v),
        }
    if isinstance(obj, MapRetractWitness):
        return {"alpha": to_jsonable(obj.alpha), "beta": to_jsonable(obj.beta)}
    if isinstance(obj, Decision):
        out = {"holds": obj.holds, "law": obj.law, "bounded": obj.bounded}
        if obj.bound is not None:
            out["bound"] = obj.bound
        if obj.witness is not None:
            out["witness"] = to_jsonable(obj.witness)
        if obj.counterexample is not None:
            out["counterexample"] = to_jsonable(obj.counterexample)
        return out
    if isinstance(obj, ConstructionResult):
        return {
            "object": to_jsonable(obj.object),
            "legs": {name: to_jsonable(leg) for name, leg in obj.legs},
            "provenance": obj.provenance[0],
        }
    if isinstance(obj, TensorResult):
        return {
            "class_count": obj.class_count,
            "class_table": [list(r) for r in obj.class_table],
        }
    if isinstance(obj, TensorMap):
        return {
            "values": list(obj.values),
            "injective": obj.is_injective,
            "source_classes": obj.source.class_count,
            "target_classes": obj.target.class_count,
        }
    if isinstance(obj, Factorization):
        return {
            "left": to_jsonable(obj.left),
            "right": to_jsonable(obj.right),
            "left_class": obj.left_class.kind,
            "right_class": obj.right_class.kind,
            "certificates": {name: to_jsonable(dec) for name, dec in obj.certificates},
        }
    if isinstance(obj, SOASquare):
        return {
            "generator": obj.gen_index,
            "u": list(obj.u.values),
            "v": list(obj.v.values),
        }
    if isinstance(obj, SOAStage):
        return {
            "size": obj.act.size,
            "act": to_jsonable(obj.act),
            "step": list(obj.step.values),
            "phi": list(obj.phi.values),
            "squares": [to_jsonable(sq) for sq in obj.squares],
        }
    if isinstance(obj, SOAResult):
        return {
            "status": obj.status,
            "steps": len(obj.stages),
            "stages": [to_jsonable(st) for st in obj.stages],
            "theta": to_jsonable(obj.theta),
            "phi": to_jsonable(obj.phi),
            "rlp_certificate": to_jsonable(obj.rlp_certificate),
        }
    if isinstance(obj, CofCertificate):
        return {
            "steps": [to_jsonable(st) for st in obj.steps],
            "composite": to_jsonable(obj.composite),
            "retract": to_jsonable(obj.retract),
        }
    if isinstance(obj, WfsReport):
        return {
            "passed": obj.passed,
            "maps_checked": obj.maps_checked,
            "left_members": obj.left_members,
            "right_members": obj.right_members,
            "squares_checked": obj.squares_checked,
            "factorization_failures": [
                {
                    "map": to_jsonable(h),
                    "left": to_jsonable(ld),
                    "right": to_jsonable(rd),
                }
                for h, ld, rd in obj.factorization_failures
            ],
            "lifting_failures": [to_jsonable(sq) for sq in obj.lifting_failures],
            "retract_failures": [
                {
                    "side": side,
                    "ambient": to_jsonable(f),
                    "retract": to_jsonable(g),
                    "witness": to_jsonable(w),
                }
                for side, f, g, w in obj.retract_failures
            ],
        }
    if isinstance(obj, CentredPrecoverEvidence):
        return {
            "middle": to_jsonable(obj.middle),
            "factorization": to_jsonable(obj.factorization),
            "degenerate": obj.degenerate,
            "fillers": [
                {"probe_map": list(u.values), "filler": list(h.values)}
                for u, h in obj.fillers
            ],
        }
    if isinstance(obj, Nonexistence):
        return {"nonexistence": obj.reason}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return repr(obj)


def report_render(report: dict) -> str:
    """Deterministic human-readable rendering of a JSON report."""
    lines: list[str] = []

    def emit(key: str, value: Any, depth: int):
        pad = "  " * depth
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            for k in sorted(value):
                emit(k, value[k], depth + 1)
        elif isinstance(value, list):
            if all(isinstance(v, (int, bool)) for v in value):
                lines.append(f"{pad}{key}: {value}")
            else:
                lines.append(f"{pad}{key}: ({len(value)} entries)")
                for i, v in enumerate(value[:4]):
                    emit(f"[{i}]", v, depth + 1)
                if len(value) > 4:
                    lines.append(f"{pad}  ... {len(value) - 4} more")
        else:
            lines.append(f"{pad}{key}: {value}")

    headline = [
        f"command: {report.get('command', '?')}",
        f"verdict: {report.get('verdict', '?')}",
    ]
    if "law" in report:
        headline.append(f"law: {report['law']}")
    if "bound" in report:
        headline.append(f"bound: {report['bound']}")
    lines.extend(headline)
    for key in sorted(report):
        if key in ("command", "verdict", "law", "bound"):
            continue
        emit(key, report[key], 0)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# selection helpers


def _load(files: list[str], inline_docs: list[dict] | None = None) -> DocumentSet:
    docs: list[Document] = []
    for name in files:
        path = Path(name)
        if not path.exists():
            raise CliInputError(f"no such file: {name}")
        docs.extend(parse_text(path.read_text(), where=name))
    for raw in inline_docs or []:
        docs.extend(parse_text(json.dumps(raw), where="<job>"))
    return DocumentSet.from_documents(docs)


def _pick(table: dict, name: str | None, kind: str):
    if name is not None:
        if name not in table:
            raise CliInputError(f"no {kind} document named {name!r}")
        return table[name]
    if len(table) == 1:
        return next(iter(table.values()))
    raise CliInputError(
        f"expected exactly one {kind} document or an explicit name, "
        f"found {len(table)}: {sorted(table)}"
    )


def _pick_two(table: dict, first: str | None, second: str | None, kind: str):
    if first is not None and second is not None:
        for name in (first, second):
            if name not in table:
                raise CliInputError(f"no {kind} document named {name!r}")
        return table[first], table[second]
    if len(table) == 2:
        items = list(table.values())
        return items[0], items[1]
    raise CliInputError(f"expected exactly two {kind} documents or explicit names")


_DESCRIPTORS = {
    "unitary": UNITARY,
    "split-epi": SPLIT_EPI,
    "split-mono": SPLIT_MONO,
    "mono": MONO,
    "epi": EPI,
}


# ---------------------------------------------------------------------------
# commands


def _cmd_validate(args, ds: DocumentSet):
    findings = []
    for doc in ds.documents:
        obj = None
        if doc.kind == "monoid":
            obj = ds.monoids[doc.name]
        elif doc.kind == "act":
            obj = ds.acts[doc.name]
        elif doc.kind == "map":
            obj = ds.maps[doc.name]
        if obj is None:
            continue
        violations = validate(obj)
        if violations:
            findings.append({"kind": doc.kind, "name": doc.name, "violations": violations})
    verdict = "true" if not findings else "false"
    report = {
        "command": "validate",
        "verdict": verdict,
        "law": "structure-laws",
        "documents_checked": len(ds.documents),
        "violations": findings,
    }
    return report, EXIT_TRUE if not findings else EXIT_FALSE


def _cmd_hom(args, ds: DocumentSet):
    if args.source or args.target:
        source = _pick(ds.acts, args.source, "act")
        target = _pick(ds.acts, args.target, "act")
    else:
        source, target = _pick_two(ds.acts, None, None, "act")
    maps = enumerate_maps(source, target)
    report = {
        "command": "hom",
        "verdict": "true",
        "law": "hom-set-enumeration",
        "count": len(maps),
        "maps": [list(m.values) for m in maps],
    }
    return report, EXIT_TRUE


def _cmd_lift(args, ds: DocumentSet):
    square = _pick(ds.squares, args.square, "square")
    filler = find_filler(square)
    report = {
        "command": "lift",
        "verdict": "true" if filler else "false",
        "law": "lifting-square-filler",
        "filler": to_jsonable(filler) if filler else None,
    }
    return report, EXIT_TRUE if filler else EXIT_FALSE


def _cmd_classify(args, ds: DocumentSet):
    m = _pick(ds.maps, args.map, "map")
    flags = classify_map(m)
    report = {
        "command": "classify",
        "verdict": "true",
        "law": "map-classification",
        "flags": {
            "mono": flags.mono,
            "epi": flags.epi,
            "split_mono": flags.split_mono,
            "split_epi": flags.split_epi,
            "unitary": flags.unitary,
            "iso": flags.iso,
        },
    }
    return report, EXIT_TRUE


def _cmd_factor(args, ds: DocumentSet):
    m = _pick(ds.maps, args.map, "map")
    if args.system == "u-sp":
        fact = factor_unitary_split(m)
    else:
        act_class = _pick(ds.classes, getattr(args, "class"), "class")
        fact = factor_via_precover(m, act_class)
        if isinstance(fact, Nonexistence):
            report = {
                "command": "factor",
                "verdict": "false",
                "law": "precover-factorization",
                "nonexistence": fact.reason,
            }
            return report, EXIT_FALSE
    law = "unitary-split-factorization" if args.system == "u-sp" else "precover-factorization"
    certified = all(dec.holds for _, dec in fact.certificates)
    report = {
        "command": "factor",
        "verdict": "true" if certified else "false",
        "law": law,
        "factorization": to_jsonable(fact),
    }
    return report, EXIT_TRUE if certified else EXIT_FALSE


def _cmd_pushout(args, ds: DocumentSet):
    f, u = _pick_two(ds.maps, args.first, args.second, "map")
    result = pushout(f, u)
    report = {
        "command": "pushout",
        "verdict": "true",
        "law": "pushout-construction",
        "result": to_jsonable(result),
    }
    return report, EXIT_TRUE


def _cmd_pullback(args, ds: DocumentSet):
    f, g = _pick_two(ds.maps, args.first, args.second, "map")
    result = pullback(f, g)
    if isinstance(result, Nonexistence):
        report = {
            "command": "pullback",
            "verdict": "false",
            "law": "pullback-construction",
            "nonexistence": result.reason,
        }
        return report, EXIT_FALSE
    report = {
        "command": "pullback",
        "verdict": "true",
        "law": "pullback-construction",
        "result": to_jsonable(result),
    }
    return report, EXIT_TRUE


def _cmd_tensor(args, ds: DocumentSet):
    if args.right or args.left:
        right = _pick(ds.acts, args.right, "act")
        left = _pick(ds.acts, args.left, "act")
    else:
        rights = {k: v for k, v in ds.acts.items() if v.side == "right"}
        lefts = {k: v for k, v in ds.acts.items() if v.side == "left"}
        right = _pick(rights, None, "right act")
        left = _pick(lefts, None, "left act")
    t = tensor(right, left)
    report = {
        "command": "tensor",
        "verdict": "true",
        "law": "tensor-product",
        "result": to_jsonable(t),
    }
    return report, EXIT_TRUE


def _cmd_rees(args, ds: DocumentSet):
    m = _pick(ds.maps, args.map, "map")
    result = rees_quotient(m, require_mono=not args.allow_non_mono)
    report = {
        "command": "rees",
        "verdict": "true",
        "law": "rees-quotient",
        "result": to_jsonable(result),
        "size_law": {
            "target": m.target.size,
            "image": len(m.image()),
            "quotient": result.object.size,
        },
    }
    return report, EXIT_TRUE


def _cmd_flat(args, ds: DocumentSet):
    act = _pick(ds.acts, args.act, "act")
    bound = args.bound if args.bound is not None else default_bound(act)
    dec = is_flat_bounded(act, bound)
    table = []
    if dec.holds:
        for inc, ok in dec.witness:
            table.append(
                {
                    "ambient": to_jsonable(inc.target),
                    "subact_elements": list(inc.values),
                    "injective": ok,
                }
            )
    report = {
        "command": "flat",
        "verdict": "true" if dec.holds else "false",
        "law": dec.law,
        "bounded": True,
        "bound": bound,
        "inclusions": table,
    }
    if not dec.holds:
        inc, collided = dec.counterexample
        report["counterexample"] = {
            "inclusion": to_jsonable(inc),
            "collided_classes": list(collided),
        }
    return report, EXIT_TRUE if dec.holds else EXIT_FALSE


def _cmd_pure(args, ds: DocumentSet):
    m = _pick(ds.maps, args.map, "map")
    bound = args.bound if args.bound is not None else default_bound(m)
    dec = in_class(m, pure_epi(bound))
    report = {
        "command": "pure",
        "verdict": "true" if dec.holds else "false",
        "law": dec.law,
        "bounded": True,
        "bound": bound,
    }
    if not dec.holds:
        report["counterexample"] = to_jsonable(dec.counterexample)
    return report, EXIT_TRUE if dec.holds else EXIT_FALSE


def _cmd_stable(args, ds: DocumentSet):
    m = _pick(ds.maps, args.map, "map")
    bound = args.bound if args.bound is not None else default_bound(m)
    dec = is_stable_bounded(m, bound)
    report = {
        "command": "stable",
        "verdict": "true" if dec.holds else "false",
        "law": dec.law,
        "bounded": True,
        "bound": bound,
    }
    if not dec.holds:
        report["counterexample"] = to_jsonable(dec.counterexample)
    return report, EXIT_TRUE if dec.holds else EXIT_FALSE


def _cmd_precover(args, ds: DocumentSet):
    act = _pick(ds.acts, args.act, "act")
    act_class = _pick(ds.classes, getattr(args, "class"), "class")
    result = precover(act, act_class)
    if isinstance(result, Nonexistence):
        report = {
            "command": "precover",
            "verdict": "false",
            "law": "canonical-precover",
            "nonexistence": result.reason,
        }
        return report, EXIT_FALSE
    report = {
        "command": "precover",
        "verdict": "true",
        "law": "canonical-precover",
        "map": to_jsonable(result),
    }
    return report, EXIT_TRUE


def _cmd_cover_check(args, ds: DocumentSet):
    m = _pick(ds.maps, args.map, "map")
    act_class = _pick(ds.classes, getattr(args, "class"), "class")
    dec = check_precover(m, act_class, mode=args.mode)
    report = {
        "command": "cover-check",
        "verdict": "true" if dec.holds else "false",
        "law": dec.law,
    }
    if not dec.holds:
        report["counterexample"] = to_jsonable(dec.counterexample)
    return report, EXIT_TRUE if dec.holds else EXIT_FALSE


def _cmd_wfs_verify(args, ds: DocumentSet):
    monoid = _pick(ds.monoids, args.monoid, "monoid")
    uni = universe(monoid, args.universe)
    left = _DESCRIPTORS[args.left]
    right = _DESCRIPTORS[args.right]
    rep = wfs_verify(left, right, uni, factor_unitary_split)
    report = {
        "command": "wfs-verify",
        "verdict": "true" if rep.passed else "false",
        "law": "wfs-axioms",
        "left": args.left,
        "right": args.right,
        "universe_size": args.universe,
        "report": to_jsonable(rep),
    }
    return report, EXIT_TRUE if rep.passed else EXIT_FALSE


def _cmd_soa(args, ds: DocumentSet):
    m = _pick(ds.maps, args.map, "map")
    gens = [_pick(ds.maps, g, "map") for g in args.gens]
    result = small_object_factorize(m, gens, max_steps=args.max_steps, max_size=args.max_size)
    completed = result.status == "completed"
    report = {
        "command": "soa",
        "verdict": "true" if completed else "inconclusive",
        "law": "small-object-factorization",
        "status": result.status,
        "stages": len(result.stages),
        "stage_sizes": [st.act.size for st in result.stages],
        "result": to_jsonable(result),
    }
    return report, EXIT_TRUE if completed else EXIT_INCONCLUSIVE


def _cmd_cof_cert(args, ds: DocumentSet):
    m = _pick(ds.maps, args.map, "map")
    gens = [_pick(ds.maps, g, "map") for g in args.gens]
    cert = cof_certificate(m, gens, max_len=args.max_len, max_size=args.max_size)
    if cert is None:
        report = {
            "command": "cof-cert",
            "verdict": "inconclusive",
            "law": "cof-retract-certificate",
            "note": "no certificate found within caps; this is not a refutation",
        }
        return report, EXIT_INCONCLUSIVE
    report = {
        "command": "cof-cert",
        "verdict": "true",
        "law": "cof-retract-certificate",
        "steps": len(cert.steps),
        "certificate": to_jsonable(cert),
    }
    return report, EXIT_TRUE


def _cmd_centred_precover(args, ds: DocumentSet):
    act = _pick(ds.acts, args.act, "act")
    act_class = _pick(ds.classes, getattr(args, "class"), "class")
    members = [
        Act(m.monoid, m.side, m.size, m.action, centred=True) for m in act_class.members
    ]
    centred_class = ActClass(
        "explicit",
        members=tuple(members),
        closed_coproducts=act_class.closed_coproducts,
        closed_summands=act_class.closed_summands,
        closed_retracts=act_class.closed_retracts,
    )
    if args.probe is not None:
        probe = _pick(ds.acts, args.probe, "act")
        probe = Act(probe.monoid, probe.side, probe.size, probe.action, centred=True)
    else:
        probe = members[0]
    act = Act(act.monoid, act.side, act.size, act.action, centred=True)
    evidence = centred_wfs_precover(
        act,
        unitary_with_complement_in(centred_class),
        projective_for(centred_class),
        lambda bang: centred_factor_via_precover(bang, centred_class),
        probe,
    )
    report = {
        "command": "centred-precover",
        "verdict": "true",
        "law": "centred-precover-derivation",
        "evidence": to_jsonable(evidence),
    }
    return report, EXIT_TRUE


def _cmd_job(args, ds_unused):
    path = Path(args.jobfile)
    if not path.exists():
        raise CliInputError(f"no such file: {args.jobfile}")
    docs = parse_text(path.read_text(), where=args.jobfile)
    jobs = [d for d in docs if d.kind == "job"]
    if len(jobs) != 1:
        raise CliInputError("job file must contain exactly one job document")
    job = jobs[0]
    command = job.body.get("command")
    arguments = job.body.get("arguments", [])
    documents = job.body.get("documents", [])
    if not isinstance(command, str) or command == "job":
        raise CliInputError("job document needs a non-job command string")
    if not isinstance(arguments, list) or not all(isinstance(a, str) for a in arguments):
        raise CliInputError("job arguments must be a list of strings")
    return None, _dispatch([command, *arguments], inline_docs=documents)


_COMMANDS = {
    "validate": _cmd_validate,
    "hom": _cmd_hom,
    "lift": _cmd_lift,
    "classify": _cmd_classify,
    "factor": _cmd_factor,
    "pushout": _cmd_pushout,
    "pullback": _cmd_pullback,
    "tensor": _cmd_tensor,
    "rees": _cmd_rees,
    "flat": _cmd_flat,
    "pure": _cmd_pure,
    "stable": _cmd_stable,
    "precover": _cmd_precover,
    "cover-check": _cmd_cover_check,
    "wfs-verify": _cmd_wfs_verify,
    "soa": _cmd_soa,
    "cof-cert": _cmd_cof_cert,
    "centred-precover": _cmd_centred_precover,
}


def _build_parser() -> _Parser:
    parser = _Parser(prog="finact", description=__doc__)
    parser.add_argument("--human", action="store_true", help="render the report as text")
    parser.add_argument(
        "--allow-empty-acts", action="store_true", help="permit empty carriers"
    )
    parser.add_argument(
        "--defaults", metavar="PATH", help="JSON file with default option values"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        if name != "job":
            p.add_argument("files", nargs="*", metavar="FILE")
        return p

    cmd("validate")
    p = cmd("hom")
    p.add_argument("--source")
    p.add_argument("--target")
    p = cmd("lift")
    p.add_argument("--square")
    p = cmd("classify")
    p.add_argument("--map")
    p = cmd("factor")
    p.add_argument("--system", choices=["u-sp", "precover"], required=True)
    p.add_argument("--map")
    p.add_argument("--class", dest="class")
    p = cmd("pushout")
    p.add_argument("--first")
    p.add_argument("--second")
    p = cmd("pullback")
    p.add_argument("--first")
    p.add_argument("--second")
    p = cmd("tensor")
    p.add_argument("--right")
    p.add_argument("--left")
    p = cmd("rees")
    p.add_argument("--map")
    p.add_argument("--allow-non-mono", action="store_true")
    p = cmd("flat")
    p.add_argument("--act")
    p.add_argument("--bound", type=int)
    p = cmd("pure")
    p.add_argument("--map")
    p.add_argument("--bound", type=int)
    p = cmd("stable")
    p.add_argument("--map")
    p.add_argument("--bound", type=int)
    p = cmd("precover")
    p.add_argument("--act")
    p.add_argument("--class", dest="class", required=True)
    p = cmd("cover-check")
    p.add_argument("--map")
    p.add_argument("--class", dest="class", required=True)
    p.add_argument("--mode", choices=["precover", "cover"], default="precover")
    p = cmd("wfs-verify")
    p.add_argument("--monoid")
    p.add_argument("--universe", type=int, required=True)
    p.add_argument("--left", choices=sorted(_DESCRIPTORS), default="unitary")
    p.add_argument("--right", choices=sorted(_DESCRIPTORS), default="split-epi")
    p = cmd("soa")
    p.add_argument("--map")
    p.add_argument("--gens", nargs="+", required=True)
    p.add_argument("--max-steps", type=int, default=8)
    p.add_argument("--max-size", type=int, default=512)
    p = cmd("cof-cert")
    p.add_argument("--map")
    p.add_argument("--gens", nargs="+", required=True)
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--max-size", type=int, default=512)
    p = cmd("centred-precover")
    p.add_argument("--act")
    p.add_argument("--class", dest="class", required=True)
    p.add_argument("--probe")
    p = cmd("job")
    p.add_argument("jobfile")
    return parser


def _apply_defaults(args) -> None:
    if not args.defaults:
        return
    path = Path(args.defaults)
    if not path.exists():
        raise CliInputError(f"no such defaults file: {args.defaults}")
    try:
        table = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise CliInputError(f"defaults file is not valid JSON: {exc}") from exc
    if not isinstance(table, dict):
        raise CliInputError("defaults file must hold a JSON object")
    for key, value in table.items():
        attr = key.replace("-", "_")
        if hasattr(args, attr) and getattr(args, attr) is None:
            setattr(args, attr, value)


def _dispatch(argv: list[str], inline_docs: list[dict] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    _apply_defaults(args)
    if args.allow_empty_acts:
        set_empty_acts_allowed(True)
    if args.command == "job":
        _, code = _cmd_job(args, None)
        return code
    ds = _load(getattr(args, "files", []), inline_docs)
    report, code = _COMMANDS[args.command](args, ds)
    report["exit_code"] = code
    text = report_render(report) if args.human else json.dumps(
        report, sort_keys=True, indent=2
    ) + "\n"
    sys.stdout.write(text)
    return code


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        return _dispatch(list(argv))
    except (CliInputError, DocumentError, StructureError) as exc:
        error = {"verdict": "error", "error": str(exc), "exit_code": EXIT_INPUT}
        sys.stdout.write(json.dumps(error, sort_keys=True, indent=2) + "\n")
        return EXIT_INPUT
    except ValueError as exc:
        error = {"verdict": "error", "error": str(exc), "exit_code": EXIT_INPUT}
        sys.stdout.write(json.dumps(error, sort_keys=True, indent=2) + "\n")
        return EXIT_INPUT


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
