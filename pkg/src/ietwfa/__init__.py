"""Input-erasing two-way finite automata: simulation, conversions and restrictions."""
from .core import (Classification, Direction, Ietwgfa, Nfa, Rule, Transition, Violation, classify,
                   nfa_accepts, nfa_enumerate, rule_direction, validate_automaton)
from .grammars import (EvenLinearWitness, GrammarRule, LinearGrammar, is_even_linear, lg_accepts,
                       lg_enumerate, validate_grammar)
from .simulation import (Configuration, Mode, Trace, accepts, apply_rule, enumerate_language, replay,
                         start_configuration, trace)
from .conversions import (elg_to_gfa_init_even, even_to_efree_sfa, gfa_to_lg, gfa_to_sfa,
                          init_even_to_elg, init_even_to_sfa, lg_to_gfa, lift_even_to_init_even,
                          remove_epsilon)
from .restrictions import restrict_finite_prefix, restrict_middle, restrict_sides, restrict_whole
from .oracle import (EquivResult, GenConfig, equiv_up_to, oracle_accepts, oracle_language, random_gfa,
                     random_lg, random_nfa)
from .textformat import FiniteLanguage, ParseError, parse_spec, serialize

__version__ = "0.1.0"
