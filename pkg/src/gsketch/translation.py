"""Translation of conditions along context morphisms via chosen pushouts.

Statement leaves translate by post-composition, connectives homomorphically,
and quantifiers via the chosen pushout of the span H <- K -> M: the shift is
replaced by the opposite injection and the body is translated along the other
one.  When the translating morphism is an isomorphism the chosen pushout is
the degenerate cospan (c^-1;a, id), which keeps translated conditions
readable and makes identity translation structurally trivial.
"""
from __future__ import annotations

from .category import pushout
from .conditions import (And, Bottom, Condition, Exists, Forall, Not, Or,
                         Stmt, Top, satisfies)
from .graphs import (Graph, GraphMorphism, MismatchError, compose,
                     enumerate_morphisms, identity, invert, is_isomorphism)
from .sketches import translate_statement


def chosen_pushout(c: GraphMorphism, a: GraphMorphism):
    """Chosen pushout of the span H <-c- K -a-> M.

    Returns ``(a_star: H -> M_c, c_star: M -> M_c)``.
    """
    if c.dom != a.dom:
        raise MismatchError("chosen pushout needs a span with a common domain")
    if is_isomorphism(c):
        return compose(invert(c), a), identity(a.cod)
    po = pushout(c, a)  # left: H -> D, right: M -> D
    return po.left, po.right


def translate_condition(c: GraphMorphism, cond: Condition) -> Condition:
    """Translate a condition over K into a condition over H along c: K -> H."""
    if c.dom != cond.context:
        raise MismatchError("translation morphism must start at the condition context")
    h = c.cod
    if isinstance(cond, Stmt):
        return Stmt(h, translate_statement(c, cond.statement))
    if isinstance(cond, Top):
        return Top(h)
    if isinstance(cond, Bottom):
        return Bottom(h)
    if isinstance(cond, And):
        return And(h, tuple(translate_condition(c, x) for x in cond.children))
    if isinstance(cond, Or):
        return Or(h, tuple(translate_condition(c, x) for x in cond.children))
    if isinstance(cond, Not):
        return Not(h, translate_condition(c, cond.child))
    if isinstance(cond, (Exists, Forall)):
        a_star, c_star = chosen_pushout(c, cond.shift)
        guard = translate_condition(c, cond.guard)
        body = translate_condition(c_star, cond.body)
        cls = Exists if isinstance(cond, Exists) else Forall
        return cls(h, guard, a_star, body)
    raise TypeError("unknown condition node %r" % type(cond).__name__)


def shift_equivalence_oracle(c: GraphMorphism, cond: Condition,
                             sample_sketches) -> bool:
    """Semantic check of translation: for every sample sketch G and every
    t: H -> G, t satisfies the translated condition iff c;t satisfies the
    original.  Returns whether all anchors agree.
    """
    translated = translate_condition(c, cond)
    for g in sample_sketches:
        for t in enumerate_morphisms(c.cod, g.context):
            lhs = satisfies(t, g, translated).holds
            rhs = satisfies(compose(c, t), g, cond).holds
            if lhs != rhs:
                return False
    return True
