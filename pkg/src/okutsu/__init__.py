"""MacLane-Vaquie chains, Okutsu frames and the main invariant of a root."""

from .basefields import LaurentField, PuiseuxField, QpField
from .chains import (MLVChain, compute_chain, global_invariants, slopes_and_secondary,
                     step_invariants, verify_chain)
from .errors import (BudgetExhausted, InseparableError, OkutsuError, PrecisionError,
                     ReducibleError, UnstableAtPrecision)
from .frames import (OkutsuFrame, chain_from_frame, conjecture_probe, frame_from_chain,
                     frame_from_sequence, is_tame, main_invariant, ramification_polygon,
                     sequence_from_frame, tame_checks, verify_frame, verify_sequence,
                     wd_equivalence_check)
from .poly import Poly, format_poly, sep_approx
from .values import INF, ValueSubgroup
from .vf import RootValuation, distance, weight

__version__ = "0.1.0"
