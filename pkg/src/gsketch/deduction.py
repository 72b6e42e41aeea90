"""Rule application by sketch pushout with negative application conditions,
the repair loop, and the constraint deduction steps (universal elimination,
modus ponens, Skolemization, conjunction rules, statement instantiation and
constraint translation along sketch morphisms).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple

from .conditions import (And, Condition, Constraint, Exists, Forall, Not,
                         Stmt, Top, check_constraint, conj, statements_conj,
                         unguarded_exists)
from .graphs import (GraphMorphism, MismatchError, compose,
                     enumerate_morphisms, identity)
from .sketches import (Sketch, SketchMorphism, Statement, sketch_pushout,
                       translate_statement)


class RuleShapeError(ValueError):
    """A condition is not of the universally-constrained shape rules require."""


class CertificationError(ValueError):
    """A constraint offered as certified does not hold on its sketch."""


@dataclass(frozen=True)
class Rule:
    """A transformation rule a: (L, S1) -> (R, S2 + a(S1))."""
    lhs: Sketch
    rhs: Sketch
    morphism: GraphMorphism  # L -> R at context level
    added_statements: frozenset

    @classmethod
    def build(cls, lhs: Sketch, morphism: GraphMorphism,
              added_statements: Iterable[Statement]) -> "Rule":
        added = frozenset(added_statements)
        translated = {translate_statement(morphism, s) for s in lhs.statements}
        rhs = Sketch(morphism.cod, added | translated)
        return cls(lhs, rhs, morphism, added)

    def __post_init__(self):
        if self.morphism.dom != self.lhs.context or \
           self.morphism.cod != self.rhs.context:
            raise MismatchError("rule morphism endpoints differ from the sketches")
        translated = {translate_statement(self.morphism, s)
                      for s in self.lhs.statements}
        if self.rhs.statements != frozenset(self.added_statements) | translated:
            raise MismatchError(
                "rhs statements must be the added ones plus the lhs image")

    def as_sketch_morphism(self) -> SketchMorphism:
        return SketchMorphism(self.lhs, self.rhs, self.morphism)

    def nac_condition(self) -> Condition:
        """The negative application condition: no completion along the rule."""
        return Not(self.lhs.context, unguarded_exists(
            self.morphism,
            statements_conj(self.rhs.context, self.added_statements)))

    def premise_condition(self) -> Condition:
        return statements_conj(self.lhs.context, self.lhs.statements)


def _statement_set(cond: Condition):
    """Statements of a statement-conjunction node; None if not of that shape."""
    if isinstance(cond, Top):
        return frozenset()
    if isinstance(cond, Stmt):
        return frozenset([cond.statement])
    if isinstance(cond, And) and all(isinstance(c, Stmt) for c in cond.children):
        return frozenset(c.statement for c in cond.children)
    return None


def rule_from_condition(cond: Condition) -> Rule:
    """Extract a rule from a universally-constrained closed condition.

    Accepted shapes (S1, S2 statement conjunctions):
      - forall(L: exists(S1, a, S2))
      - forall(L: (S1 -> exists(a, S2)))   [implication encoded at identity]
      - forall(L: (S1 -> S2))              [rule morphism is the identity]
    """
    if not (isinstance(cond, Forall) and isinstance(cond.guard, Top)
            and cond.context.is_empty()):
        raise RuleShapeError("expected an unguarded closed universal condition")
    body = cond.body
    if not isinstance(body, Exists):
        raise RuleShapeError("universal body must be a guarded existential")
    premise = _statement_set(body.guard)
    if premise is None:
        raise RuleShapeError("existential guard must be a statement conjunction")
    l_ctx = body.context
    lhs = Sketch(l_ctx, premise)
    inner = body.body
    if body.shift == identity(l_ctx) and isinstance(inner, Exists) \
            and isinstance(inner.guard, Top):
        conclusion = _statement_set(inner.body)
        if conclusion is None:
            raise RuleShapeError(
                "inner existential body must be a statement conjunction")
        return Rule.build(lhs, inner.shift, conclusion)
    conclusion = _statement_set(inner)
    if conclusion is None:
        raise RuleShapeError("existential body must be a statement conjunction")
    return Rule.build(lhs, body.shift, conclusion)


def find_matches(rule: Rule, g: Sketch) -> list:
    """All matches of the rule in canonical order: context morphisms t: L -> G
    satisfying the premise statements and the negative application condition.
    """
    premise = rule.premise_condition()
    nac = rule.nac_condition()
    matches = []
    for t in enumerate_morphisms(rule.lhs.context, g.context):
        from .conditions import satisfies
        if satisfies(t, g, premise).holds and satisfies(t, g, nac).holds:
            matches.append(t)
    return matches


def apply_rule(rule: Rule, match: GraphMorphism, g: Sketch):
    """Apply the rule at a match by a sketch pushout.

    Returns ``(H, a_star: G -> H, t_star: R -> H)``.  The match must come
    from :func:`find_matches`.
    """
    if match not in find_matches(rule, g):
        raise MismatchError("morphism is not a valid match for this rule")
    t = SketchMorphism(rule.lhs, g, match)
    h, t_star, a_star = sketch_pushout(rule.as_sketch_morphism(), t)
    return h, a_star, t_star


@dataclass(frozen=True)
class RepairStep:
    rule: Rule
    match: GraphMorphism
    result: Sketch
    a_star: SketchMorphism  # previous sketch -> result
    t_star: SketchMorphism  # rule rhs -> result


@dataclass
class RepairTrace:
    steps: list = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


def repair_to_fixpoint(rules, g: Sketch, max_steps: int):
    """Repeatedly apply the first matching rule (rule order, then canonical
    match order), one application per iteration.

    Returns ``(final sketch, trace, exhausted)``; ``exhausted`` is True when
    the step bound was reached while some rule still matched.
    """
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    trace = RepairTrace()
    current = g
    for _ in range(max_steps):
        fired = False
        for rule in rules:
            matches = find_matches(rule, current)
            if matches:
                h, a_star, t_star = apply_rule(rule, matches[0], current)
                trace.steps.append(
                    RepairStep(rule, matches[0], h, a_star, t_star))
                current = h
                fired = True
                break
        if not fired:
            return current, trace, False
    exhausted = any(find_matches(rule, current) for rule in rules)
    return current, trace, exhausted


def universal_elim(k: Constraint, t: GraphMorphism) -> Constraint:
    """From an unguarded universal constraint and an extension of its anchor,
    deduce the body constraint at the extension."""
    cond = k.condition
    if not (isinstance(cond, Forall) and isinstance(cond.guard, Top)):
        raise RuleShapeError("universal elimination needs an unguarded forall")
    if t.dom != cond.shift.cod or t.cod != k.anchor.cod:
        raise MismatchError("extension endpoints do not fit the constraint")
    if compose(cond.shift, t) != k.anchor:
        raise MismatchError("morphism is not an extension of the anchor")
    return Constraint(cond.body, t)


def modus_ponens(k: Constraint, g: Constraint) -> Constraint:
    """From (exists(guard, a, body), t) and the certified guard (guard, t),
    deduce the unguarded existential (exists(a, body), t)."""
    cond = k.condition
    if not isinstance(cond, Exists):
        raise RuleShapeError("modus ponens needs a guarded existential")
    if g.anchor != k.anchor:
        raise MismatchError("guard constraint must share the anchor")
    if g.condition != cond.guard:
        raise MismatchError("guard constraint must match the existential guard")
    return Constraint(unguarded_exists(cond.shift, cond.body), k.anchor)


def skolemize(k: Constraint, g: Sketch):
    """Materialize an unguarded existential constraint by a sketch pushout.

    The condition must be exists(a: L -> R, S2) with S2 a statement
    conjunction.  Returns ``(H, (S2, t_star), a_star: G -> H)``; the new
    constraint is certified on H by construction.
    """
    cond = k.condition
    if not (isinstance(cond, Exists) and isinstance(cond.guard, Top)):
        raise RuleShapeError("skolemization needs an unguarded existential")
    added = _statement_set(cond.body)
    if added is None:
        raise RuleShapeError("existential body must be a statement conjunction")
    if k.anchor.cod != g.context:
        raise MismatchError("constraint is not anchored in the sketch context")
    lhs = Sketch(cond.shift.dom)
    rule = Rule.build(lhs, cond.shift, added)
    t = SketchMorphism(lhs, g, k.anchor)
    h, t_star, a_star = sketch_pushout(rule.as_sketch_morphism(), t)
    new = Constraint(statements_conj(rule.rhs.context, added), t_star.morphism)
    return h, new, a_star


def conj_intro(ks) -> Constraint:
    """Conjoin constraints sharing an anchor."""
    ks = list(ks)
    if not ks:
        raise ValueError("conjunction introduction needs a known anchor; "
                         "pass at least one constraint")
    anchor = ks[0].anchor
    for k in ks[1:]:
        if k.anchor != anchor:
            raise MismatchError("conjunction introduction needs a common anchor")
    return Constraint(conj(anchor.dom, (k.condition for k in ks)), anchor)


def conj_elim(k: Constraint) -> list:
    if not isinstance(k.condition, And):
        raise RuleShapeError("conjunction elimination needs a conjunction root")
    return [Constraint(child, k.anchor) for child in k.condition.children]


def statement_to_constraint(s: Statement, definition: Condition,
                            c: GraphMorphism) -> Constraint:
    """Instantiate a predicate's defining condition at a statement's binding.

    Returns (definition, c;binding).  Not automatically certified: this is
    the step that injects predicate meaning and may surface implicit
    knowledge, so the caller checks.
    """
    if definition.context != c.dom:
        raise MismatchError("defining condition must live over the morphism domain")
    if c.cod != s.predicate.arity:
        raise MismatchError("morphism must land in the predicate arity")
    return Constraint(definition, compose(c, s.binding))


def cstr_translate(phi: SketchMorphism, k: Constraint) -> Constraint:
    """Translate a constraint along a sketch morphism by post-composition."""
    if k.anchor.cod != phi.dom.context:
        raise MismatchError("constraint is not anchored in the morphism domain")
    return Constraint(k.condition, compose(k.anchor, phi.morphism))


class ConstrainedSketch:
    """A sketch with a store of constraints certified to hold on it."""

    __slots__ = ("sketch", "constraints", "certified")

    def __init__(self, sketch: Sketch, constraints: Iterable[Constraint] = (),
                 *, _certified: bool = True):
        constraints = frozenset(constraints)
        for k in constraints:
            if k.anchor.cod != sketch.context:
                raise MismatchError("constraint is not anchored in the sketch")
            if _certified and not check_constraint(sketch, k).holds:
                raise CertificationError("constraint does not hold on the sketch")
        object.__setattr__(self, "sketch", sketch)
        object.__setattr__(self, "constraints", constraints)
        object.__setattr__(self, "certified", _certified)

    @classmethod
    def unchecked(cls, sketch: Sketch,
                  constraints: Iterable[Constraint] = ()) -> "ConstrainedSketch":
        """Hypothesis store: constraints are NOT certified to hold."""
        return cls(sketch, constraints, _certified=False)

    def __setattr__(self, name, value):
        raise AttributeError("ConstrainedSketch is immutable")

    def with_constraint(self, k: Constraint) -> "ConstrainedSketch":
        return ConstrainedSketch(self.sketch, self.constraints | {k},
                                 _certified=self.certified)
