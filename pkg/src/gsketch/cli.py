"""Command-line interface.

Exit codes: 0 success, 1 a checked constraint fails, 2 input/usage error,
3 the repair step bound was exhausted while rules still matched.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .category import initial_morphism
from .conditions import (Constraint, Forall, check_constraint,
                         violating_extensions)
from .deduction import (CertificationError, ConstrainedSketch, RuleShapeError,
                        conj_elim, conj_intro, find_matches, modus_ponens,
                        repair_to_fixpoint, skolemize, statement_to_constraint,
                        universal_elim)
from .dsl import (Document, ParseError, ResolutionError, ValidationError,
                  parse, parse_files, print_document)
from .graphs import GraphMorphism, MismatchError, identity
from .sketches import Sketch, SketchMorphism, Statement
from .translation import translate_condition


class InputError(ValueError):
    pass


def _morphism_json(m: GraphMorphism) -> dict:
    return {"nodes": dict(sorted(m.node_map.items())),
            "edges": dict(sorted(m.edge_map.items()))}


def _morphism_table(m: GraphMorphism) -> str:
    entries = ["%s -> %s" % kv for kv in sorted(m.node_map.items())]
    entries += ["%s -> %s" % kv for kv in sorted(m.edge_map.items())]
    return "{%s}" % ", ".join(entries)


def _target_sketch(doc: Document, args, decl=None) -> Sketch:
    if getattr(args, "sketch", None):
        if args.sketch not in doc.sketches:
            raise InputError("unknown sketch %r" % args.sketch)
        return doc.sketches[args.sketch]
    if decl is not None and decl.anchor is not None:
        fits = [sk for sk in doc.sketches.values()
                if sk.context == decl.anchor.cod]
        if len(fits) == 1:
            return fits[0]
        if not fits:
            raise InputError("no sketch matches the constraint anchor; "
                             "pass --sketch")
        raise InputError("several sketches match the constraint anchor; "
                         "pass --sketch")
    if len(doc.sketches) == 1:
        return next(iter(doc.sketches.values()))
    raise InputError("document has %d sketches; pass --sketch"
                     % len(doc.sketches))


def cmd_check(doc: Document, args) -> int:
    if args.constraint:
        names = list(args.constraint)
        for name in names:
            if name not in doc.constraints:
                raise InputError("unknown constraint %r" % name)
    else:
        names = list(doc.constraints)
    if not names:
        raise InputError("document declares no constraints")
    reports = []
    all_hold = True
    for name in names:
        decl = doc.constraints[name]
        sketch = _target_sketch(doc, args, decl)
        k = decl.resolve(sketch.context)
        verdict = check_constraint(sketch, k)
        all_hold = all_hold and verdict.holds
        report = {"constraint": name, "holds": verdict.holds,
                  "anchor": _morphism_json(k.anchor)}
        if verdict.witness is not None:
            report["witness"] = _morphism_json(verdict.witness)
        if verdict.counterexample is not None:
            report["counterexample"] = _morphism_json(verdict.counterexample)
        reports.append(report)
        if not args.json:
            print("%s: %s" % (name, "holds" if verdict.holds else "FAILS"))
            if verdict.witness is not None:
                print("  witness %s" % _morphism_table(verdict.witness))
            if verdict.counterexample is not None:
                print("  counterexample %s"
                      % _morphism_table(verdict.counterexample))
            if not verdict.holds and isinstance(k.condition, Forall):
                for r in violating_extensions(k.anchor, sketch, k.condition):
                    print("  violating extension %s" % _morphism_table(r))
    if args.json:
        print(json.dumps(reports, indent=2))
    return 0 if all_hold else 1


def cmd_repair(doc: Document, args) -> int:
    rules = []
    for name in args.rules:
        if name not in doc.rules:
            raise InputError("unknown rule %r" % name)
        rules.append(doc.rules[name])
    sketch = _target_sketch(doc, args)
    final, trace, exhausted = repair_to_fixpoint(rules, sketch, args.max_steps)
    for i, step in enumerate(trace, start=1):
        print("step %d: match %s" % (i, _morphism_table(step.match)))
    out = Document()
    out.footprints.update(doc.footprints)
    out.sketches["repaired"] = final
    text = print_document(out)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        print(text, end="")
    if exhausted:
        print("step bound exhausted with rules still applicable",
              file=sys.stderr)
        return 3
    return 0


def cmd_translate(doc: Document, args) -> int:
    if args.condition not in doc.conditions:
        raise InputError("unknown condition %r" % args.condition)
    if args.along not in doc.morphisms:
        raise InputError("unknown morphism %r" % args.along)
    cond = doc.conditions[args.condition]
    c = doc.morphisms[args.along]
    if c.dom != cond.context:
        raise InputError("morphism %r does not start at the condition context"
                         % args.along)
    from .dsl import format_condition
    print(format_condition(translate_condition(c, cond), doc), end="")
    return 0


def _sketch_for_graph(doc: Document, graph, what: str) -> Sketch:
    fits = [sk for sk in doc.sketches.values() if sk.context == graph]
    if len(fits) > 1:
        raise InputError("several sketches share the %s context" % what)
    return fits[0] if fits else Sketch(graph)


def _span(doc: Document, names: List[str], cospan: bool):
    if len(names) != 2:
        raise InputError("expected exactly two morphism names")
    ms = []
    for name in names:
        if name not in doc.morphisms:
            raise InputError("unknown morphism %r" % name)
        ms.append(doc.morphisms[name])
    shared = "codomain" if cospan else "domain"
    a, b = ms
    if (a.cod != b.cod) if cospan else (a.dom != b.dom):
        raise InputError("the two morphisms do not share a %s" % shared)
    return ms


def cmd_pushout(doc: Document, args) -> int:
    from .sketches import sketch_pushout
    m, r = _span(doc, args.span, cospan=False)
    apex = _sketch_for_graph(doc, m.dom, "shared domain")
    left = SketchMorphism(apex, _sketch_for_graph(doc, m.cod, "codomain"), m)
    right = SketchMorphism(apex, _sketch_for_graph(doc, r.cod, "codomain"), r)
    d, r_star, m_star = sketch_pushout(left, right)
    out = Document()
    out.footprints.update(doc.footprints)
    out.sketches["pushout"] = d
    print(print_document(out), end="")
    print("# left leg %s" % _morphism_table(r_star.morphism))
    print("# right leg %s" % _morphism_table(m_star.morphism))
    return 0


def cmd_pullback(doc: Document, args) -> int:
    from .sketches import sketch_pullback
    m, r = _span(doc, args.cospan, cospan=True)
    base = _sketch_for_graph(doc, m.cod, "shared codomain")
    left = SketchMorphism(_sketch_for_graph(doc, m.dom, "domain"), base, m)
    right = SketchMorphism(_sketch_for_graph(doc, r.dom, "domain"), base, r)
    d, m_star, r_star = sketch_pullback(left, right)
    out = Document()
    out.footprints.update(doc.footprints)
    out.sketches["pullback"] = d
    print(print_document(out), end="")
    print("# left projection %s" % _morphism_table(m_star.morphism))
    print("# right projection %s" % _morphism_table(r_star.morphism))
    return 0


def _run_deduce_script(doc: Document, sketch: Sketch, lines) -> dict:
    """Run a deduction script against a sketch; returns the constraint store.

    Commands (one per line, ``#`` comments):
      assume COND (MORPH|initial) as NAME
      elim NAME via MORPH as NAME
      mp NAME with NAME as NAME
      skolem NAME as NAME
      intro NAME... as NAME
      split NAME as PREFIX
      inst PRED via {x -> y, ...} def COND as NAME
    """
    store: dict = {}
    state = ConstrainedSketch(sketch)

    def constraint(name):
        if name not in store:
            raise InputError("unknown deduced constraint %r" % name)
        return store[name]

    def bind(name, k, *, certify=True):
        nonlocal state
        if certify:
            state = state.with_constraint(k)
        store[name] = k

    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        try:
            if "as" not in words:
                raise InputError("missing 'as NAME'")
            split_at = len(words) - 1 - words[::-1].index("as")
            head, new_name = words[:split_at], words[split_at + 1]
            op = head[0]
            if op == "assume":
                cond = doc.conditions[head[1]]
                anchor = (initial_morphism(state.sketch.context)
                          if head[2] == "initial" else doc.morphisms[head[2]])
                bind(new_name, Constraint(cond, anchor))
            elif op == "elim":
                assert head[2] == "via"
                bind(new_name, universal_elim(constraint(head[1]),
                                              doc.morphisms[head[3]]))
            elif op == "mp":
                assert head[2] == "with"
                bind(new_name, modus_ponens(constraint(head[1]),
                                            constraint(head[3])))
            elif op == "skolem":
                # the working sketch changes; earlier certifications stay in
                # the store but concern the pre-skolemization sketch
                h, k, _ = skolemize(constraint(head[1]), state.sketch)
                state = ConstrainedSketch(h)
                bind(new_name, k)
            elif op == "intro":
                bind(new_name, conj_intro([constraint(n) for n in head[1:]]))
            elif op == "split":
                for i, part in enumerate(conj_elim(constraint(head[1])),
                                         start=1):
                    bind("%s_%d" % (new_name, i), part)
                continue
            elif op == "inst":
                idx = line.index("{")
                end = line.index("}", idx)
                pairs = {}
                for chunk in line[idx + 1:end].split(","):
                    a, b = (part.strip() for part in chunk.split("->"))
                    pairs[a] = b
                pred = doc.predicate(head[1])
                rest = line[end + 1:].split()
                assert rest[0] == "def"
                definition = doc.conditions[rest[1]]
                from .graphs import morphism_of
                nodes = {k: v for k, v in pairs.items() if k in pred.arity.nodes}
                edges = {k: v for k, v in pairs.items() if k in pred.arity.edges}
                binding = morphism_of(pred.arity, state.sketch.context,
                                      nodes, edges)
                s = Statement(pred, binding)
                if s not in state.sketch.statements:
                    raise InputError("statement is not in the sketch")
                bind(new_name, statement_to_constraint(
                    s, definition, identity(pred.arity)))
            else:
                raise InputError("unknown deduction command %r" % op)
        except (KeyError, IndexError, AssertionError) as exc:
            raise InputError("line %d: malformed command (%s)"
                             % (lineno, line)) from exc
        except (InputError, MismatchError, RuleShapeError,
                CertificationError) as exc:
            raise InputError("line %d: %s" % (lineno, exc)) from exc
    return store


def cmd_deduce(doc: Document, args) -> int:
    sketch = _target_sketch(doc, args)
    with open(args.script, encoding="utf-8") as handle:
        lines = handle.readlines()
    store = _run_deduce_script(doc, sketch, lines)
    from .dsl import format_condition
    for name, k in store.items():
        print("%s: anchor %s" % (name, _morphism_table(k.anchor)))
        print(format_condition(k.condition, doc), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gsketch",
        description="Check, repair, translate and deduce constraints on "
                    "generalized sketches.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, sketch=True):
        p.add_argument("files", nargs="+", help="DSL source files")
        if sketch:
            p.add_argument("--sketch", help="target sketch name")

    p = sub.add_parser("check", help="check declared constraints")
    common(p)
    which = p.add_mutually_exclusive_group()
    which.add_argument("--constraint", action="append",
                       help="constraint to check (repeatable)")
    which.add_argument("--all", action="store_true",
                       help="check every declared constraint (the default)")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("repair", help="apply repair rules to a fixpoint")
    common(p)
    p.add_argument("--rules", nargs="+", required=True, help="rule names")
    p.add_argument("--max-steps", type=int, default=100)
    p.add_argument("--out", help="write the repaired sketch to a file")
    p.set_defaults(func=cmd_repair)

    p = sub.add_parser("translate", help="translate a condition along a morphism")
    common(p, sketch=False)
    p.add_argument("--condition", required=True)
    p.add_argument("--along", required=True, help="morphism name")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("deduce", help="run a deduction script")
    common(p)
    p.add_argument("--script", required=True, help="deduction script path")
    p.set_defaults(func=cmd_deduce)

    p = sub.add_parser("pushout", help="sketch pushout of a span")
    common(p, sketch=False)
    p.add_argument("--span", nargs=2, required=True, metavar="MORPHISM")
    p.set_defaults(func=cmd_pushout)

    p = sub.add_parser("pullback", help="sketch pullback of a cospan")
    common(p, sketch=False)
    p.add_argument("--cospan", nargs=2, required=True, metavar="MORPHISM")
    p.set_defaults(func=cmd_pullback)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = parse_files(args.files)
        return args.func(doc, args)
    except (OSError, ParseError, ResolutionError, ValidationError,
            InputError, MismatchError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
