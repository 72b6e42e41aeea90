"""Constraint engine for generalized sketches over finite directed multigraphs."""

from .graphs import (Graph, GraphMorphism, MismatchError, NotInvertibleError,
                     compose, enumerate_extensions, enumerate_morphisms,
                     graph_of, identity, invert, is_isomorphism,
                     is_monomorphism, morphism_of, validate_graph)
from .category import (PullbackResult, PushoutResult, initial_graph,
                       initial_morphism, pullback, pushout, verify_pullback,
                       verify_pushout)
from .sketches import (Footprint, MultiSketch, MultiSketchMorphism,
                       PredicateSymbol, Sketch, SketchMorphism, Statement,
                       is_sketch_morphism, multi_pullback, multi_pushout,
                       sketch_pullback, sketch_pushout, sketches_isomorphic,
                       translate_statement)
from .conditions import (And, Bottom, Condition, Constraint, Exists, Forall,
                         Not, Or, Stmt, Top, Verdict, check_constraint,
                         conditions_equal_modulo_renaming, conj, disj,
                         implication, is_closed, nuc, satisfies,
                         statements_conj, stmt, uc, unguarded_exists,
                         unguarded_forall, violating_extensions, well_formed)
from .translation import (chosen_pushout, shift_equivalence_oracle,
                          translate_condition)
from .deduction import (CertificationError, ConstrainedSketch, Rule,
                        RuleShapeError, apply_rule, conj_elim, conj_intro,
                        cstr_translate, find_matches, modus_ponens,
                        repair_to_fixpoint, rule_from_condition, skolemize,
                        statement_to_constraint, universal_elim)
from .ct import (CT_FOOTPRINT, build_ct_fixtures, colimit_condition,
                 comp_stmt, cone_contexts, final_stmt, limit_condition,
                 monic_stmt, unfold)
from .dsl import (Document, ParseError, ResolutionError, ValidationError,
                  format_condition, parse, parse_files, print_document)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
