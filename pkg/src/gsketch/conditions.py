"""First-order conditions over contexts, their satisfaction, and constraints.

The AST follows the guarded-quantifier syntax: a quantifier carries a guard
over its own context K, a shift morphism a: K -> M, and a body over M.  The
semantics is classical and two-valued; quantifiers range over the extensions
r: M -> G with a;r = t.  Empty conjunction is true, empty disjunction false.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

from .category import initial_morphism
from .graphs import (Graph, GraphMorphism, MismatchError, compose,
                     enumerate_extensions, enumerate_morphisms_extending,
                     identity, is_monomorphism)
from .sketches import (Sketch, SketchMorphism, Statement, statement_key,
                       translate_statement)


class EvaluationBudgetExceeded(RuntimeError):
    """The evaluator's step budget ran out (should not happen at desk scale)."""


class IllFormedConditionError(ValueError):
    pass


@dataclass(frozen=True)
class Condition:
    """Base class; every condition node knows its context graph."""
    context: Graph


@dataclass(frozen=True)
class Stmt(Condition):
    statement: Statement


@dataclass(frozen=True)
class Top(Condition):
    pass


@dataclass(frozen=True)
class Bottom(Condition):
    pass


@dataclass(frozen=True)
class And(Condition):
    children: Tuple[Condition, ...]


@dataclass(frozen=True)
class Or(Condition):
    children: Tuple[Condition, ...]


@dataclass(frozen=True)
class Not(Condition):
    child: Condition


@dataclass(frozen=True)
class Exists(Condition):
    guard: Condition
    shift: GraphMorphism  # K -> M
    body: Condition


@dataclass(frozen=True)
class Forall(Condition):
    guard: Condition
    shift: GraphMorphism
    body: Condition


def stmt(s: Statement) -> Stmt:
    return Stmt(s.context, s)


def conj(context: Graph, children) -> Condition:
    return And(context, tuple(children))


def disj(context: Graph, children) -> Condition:
    return Or(context, tuple(children))


def statements_conj(context: Graph, statements) -> Condition:
    """Canonically ordered conjunction of statement leaves."""
    return conj(context, (stmt(s) for s in sorted(statements, key=statement_key)))


def implication(lhs: Condition, rhs: Condition) -> Condition:
    """Propositional implication: the degenerate guarded quantification at id."""
    if lhs.context != rhs.context:
        raise MismatchError("implication needs both sides over the same context")
    return Exists(lhs.context, lhs, identity(lhs.context), rhs)


def unguarded_exists(shift: GraphMorphism, body: Condition) -> Condition:
    return Exists(shift.dom, Top(shift.dom), shift, body)


def unguarded_forall(shift: GraphMorphism, body: Condition) -> Condition:
    return Forall(shift.dom, Top(shift.dom), shift, body)


def well_formed(c: Condition) -> list:
    """Context-discipline violations throughout the tree; empty iff well formed."""
    violations = []

    def walk(node, path):
        if isinstance(node, Stmt):
            if node.statement.context != node.context:
                violations.append("%s: statement bound outside its context" % path)
        elif isinstance(node, (And, Or)):
            for i, child in enumerate(node.children):
                if child.context != node.context:
                    violations.append("%s[%d]: context differs from parent"
                                      % (path, i))
                walk(child, "%s[%d]" % (path, i))
        elif isinstance(node, Not):
            if node.child.context != node.context:
                violations.append("%s: negated child has a different context" % path)
            walk(node.child, path + ".child")
        elif isinstance(node, (Exists, Forall)):
            if node.shift.dom != node.context:
                violations.append("%s: shift domain differs from context" % path)
            if node.guard.context != node.context:
                violations.append("%s: guard context differs from context" % path)
            if node.body.context != node.shift.cod:
                violations.append("%s: body context differs from shift codomain"
                                  % path)
            walk(node.guard, path + ".guard")
            walk(node.body, path + ".body")

    walk(c, "root")
    return violations


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[GraphMorphism] = None         # satisfying extension
    counterexample: Optional[GraphMorphism] = None  # violating extension
    inner: Optional["Verdict"] = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class Constraint:
    condition: Condition
    anchor: GraphMorphism  # condition context -> target context

    def __post_init__(self):
        if self.anchor.dom != self.condition.context:
            raise MismatchError("anchor domain differs from the condition context")

    def is_global(self) -> bool:
        return self.anchor.dom.is_empty()


class _Budget:
    __slots__ = ("left",)

    def __init__(self, steps):
        self.left = steps

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise EvaluationBudgetExceeded("evaluation step budget exhausted")


DEFAULT_BUDGET = 10_000_000


def satisfies(t: GraphMorphism, g: Sketch, c: Condition, *,
              restrict_to_monos: bool = False,
              budget: int = DEFAULT_BUDGET) -> Verdict:
    """Evaluate t |= c relative to the sketch g.

    ``restrict_to_monos`` restricts quantifier extensions to monomorphisms.
    """
    if t.dom != c.context or t.cod != g.context:
        raise MismatchError("anchor endpoints differ from condition/sketch contexts")
    problems = well_formed(c)
    if problems:
        raise IllFormedConditionError("; ".join(problems))
    return _eval(t, g, c, restrict_to_monos, _Budget(budget))


def _extensions(a, t, restrict):
    rs = enumerate_extensions(a, t)
    if restrict:
        rs = [r for r in rs if is_monomorphism(r)]
    return rs


def _eval(t, g, c, restrict, budget) -> Verdict:
    budget.spend()
    if isinstance(c, Stmt):
        return Verdict(translate_statement(t, c.statement) in g.statements)
    if isinstance(c, Top):
        return Verdict(True)
    if isinstance(c, Bottom):
        return Verdict(False)
    if isinstance(c, And):
        for child in c.children:
            v = _eval(t, g, child, restrict, budget)
            if not v.holds:
                return Verdict(False, inner=v)
        return Verdict(True)
    if isinstance(c, Or):
        for child in c.children:
            v = _eval(t, g, child, restrict, budget)
            if v.holds:
                return Verdict(True, inner=v)
        return Verdict(False)
    if isinstance(c, Not):
        return Verdict(not _eval(t, g, c.child, restrict, budget).holds)
    if isinstance(c, Exists):
        if not _eval(t, g, c.guard, restrict, budget).holds:
            return Verdict(True)
        for r in _extensions(c.shift, t, restrict):
            v = _eval(r, g, c.body, restrict, budget)
            if v.holds:
                return Verdict(True, witness=r, inner=v)
        return Verdict(False)
    if isinstance(c, Forall):
        if not _eval(t, g, c.guard, restrict, budget).holds:
            return Verdict(True)
        for r in _extensions(c.shift, t, restrict):
            v = _eval(r, g, c.body, restrict, budget)
            if not v.holds:
                return Verdict(False, counterexample=r, inner=v)
        return Verdict(True)
    raise TypeError("unknown condition node %r" % type(c).__name__)


def check_constraint(g: Sketch, k: Constraint, *,
                     restrict_to_monos: bool = False) -> Verdict:
    if k.anchor.cod != g.context:
        raise MismatchError("constraint anchor does not land in the sketch context")
    return satisfies(k.anchor, g, k.condition, restrict_to_monos=restrict_to_monos)


def violating_extensions(t: GraphMorphism, g: Sketch, c: Forall, *,
                         restrict_to_monos: bool = False) -> list:
    """All counterexample extensions of a universally quantified condition."""
    if not isinstance(c, Forall):
        raise TypeError("expected a universally quantified condition")
    if not satisfies(t, g, c.guard, restrict_to_monos=restrict_to_monos).holds:
        return []
    return [r for r in _extensions(c.shift, t, restrict_to_monos)
            if not satisfies(r, g, c.body,
                             restrict_to_monos=restrict_to_monos).holds]


def uc(rule: SketchMorphism) -> Condition:
    """Closed encoding of a positive universal constraint for a: L -> R."""
    a = rule.morphism
    l, r = rule.dom, rule.cod
    body = Exists(l.context, statements_conj(l.context, l.statements), a,
                  statements_conj(r.context, r.statements))
    return unguarded_forall(initial_morphism(l.context), body)


def nuc(rule: SketchMorphism) -> Condition:
    """Closed encoding of a negative universal constraint for a: L -> R."""
    a = rule.morphism
    l, r = rule.dom, rule.cod
    inner = unguarded_exists(a, statements_conj(r.context, r.statements))
    body = implication(statements_conj(l.context, l.statements),
                       Not(l.context, inner))
    return unguarded_forall(initial_morphism(l.context), body)


def is_closed(c: Condition) -> bool:
    return c.context.is_empty()


def conditions_equal_modulo_renaming(a: Condition, b: Condition) -> bool:
    """Structural equality of two conditions up to consistent renaming of all
    context elements.

    Walks both trees in parallel; quantifier shifts force partial
    correspondences between the codomain contexts, and remaining elements are
    matched by a bounded isomorphism search.
    """
    from .graphs import is_isomorphism

    def isos_extending(ga, gb, node_seed, edge_seed):
        for m in enumerate_morphisms_extending(ga, gb, node_seed, edge_seed):
            if is_isomorphism(m):
                yield m

    def walk(na, nb, corr):
        # corr: GraphMorphism a.context -> b.context (an isomorphism)
        if type(na) is not type(nb):
            return False
        if isinstance(na, (Top, Bottom)):
            return True
        if isinstance(na, Stmt):
            sa, sb = na.statement, nb.statement
            if sa.predicate.name != sb.predicate.name:
                return False
            if sa.predicate.arity != sb.predicate.arity:
                return False
            return (compose(sa.binding, corr) == sb.binding)
        if isinstance(na, (And, Or)):
            if len(na.children) != len(nb.children):
                return False
            return all(walk(ca, cb, corr)
                       for ca, cb in zip(na.children, nb.children))
        if isinstance(na, Not):
            return walk(na.child, nb.child, corr)
        if isinstance(na, (Exists, Forall)):
            if not walk(na.guard, nb.guard, corr):
                return False
            ma, mb = na.shift.cod, nb.shift.cod
            if len(ma.nodes) != len(mb.nodes) or len(ma.edges) != len(mb.edges):
                return False
            node_seed, edge_seed = {}, {}
            for k in na.shift.dom.nodes:
                img = nb.shift.node_map[corr.node_map[k]]
                if node_seed.setdefault(na.shift.node_map[k], img) != img:
                    return False
            for k in na.shift.dom.edges:
                img = nb.shift.edge_map[corr.edge_map[k]]
                if edge_seed.setdefault(na.shift.edge_map[k], img) != img:
                    return False
            for corr2 in isos_extending(ma, mb, node_seed, edge_seed):
                if walk(na.body, nb.body, corr2):
                    return True
            return False
        raise TypeError("unknown condition node %r" % type(na).__name__)

    return any(walk(a, b, corr)
               for corr in isos_extending(a.context, b.context, {}, {}))
