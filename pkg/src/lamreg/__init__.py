"""Regular languages of simply typed lambda-terms.

Submodules:

* :mod:`lamreg.syntax`: types, terms, typechecking, normalization, casting
  and enumeration of normal forms;
* :mod:`lamreg.surface`: text syntax for types and terms;
* :mod:`lamreg.finsem`: interpretation in finite sets;
* :mod:`lamreg.recognizers`: semantic and syntactic recognizers;
* :mod:`lamreg.encodings`: Church words, DFAs and untyped terms;
* :mod:`lamreg.compiler`: translations between recognizer kinds;
* :mod:`lamreg.logrel`: logical relations between finite interpretations;
* :mod:`lamreg.verify`: bounded-exhaustive verification batteries.
"""

from .syntax import (
    AND, FALSE, NOT, O, ONE, TRUE, UNIT, App, Arrow, Base, Lam, Pair, Prod, Proj,
    SimpleType, StlcTypeError, Term, Unit, UnitIntro, Var, beta_eta_equal, bool_type,
    cast_term, enumerate_normal_terms, is_normal, normalize, power, subst_type,
    term_size, typecheck,
)
from .surface import (
    ParseError, church_type, fin_type, parse_term, parse_type, print_term, print_type,
    untyped_terms_type,
)
from .finsem import (
    BaseDom, DomainTooLarge, FinDomain, FinElem, FunDom, ProdDom, UnitDom, apply_elem,
    denote_type, elem_at, enumerate_domain, eval_term, index_of,
)
from .recognizers import (
    SemRecognizer, SynRecognizer, accept_all, complement, equivalence_on, intersect,
    reject_all, sem_accepts, syn_accepts, union,
)
from .encodings import (
    EVEN_ONES, EVEN_UNARY, ODD_TWOS, Dfa, ScopedTerm, affine_recognizer, decode_scoped,
    decode_word, dfa_to_recognizer, encode_scoped, encode_word, is_affine,
    parity_sem_recognizer, parity_syn_recognizer, parse_untyped, run_dfa, words,
)
from .compiler import (
    FinCombinatorKit, SizeGuardError, build_kit, pi_term, sem_to_syn, syn_to_sem,
)
from .logrel import (
    FinRelation, PreconditionError, fundamental_lemma_check, is_partial_surjection,
    lift_relation, partial_surjection_closure_check, partial_surjections, point_relation,
    pullback_recognizer, random_term,
)

__version__ = "0.1.0"
