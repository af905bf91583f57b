"""sievelab: large-sieve experiments for special characters to prime-square moduli."""

from .angles import RationalAngle
from .characters import (
    CharacterValue,
    SpecialCharacter,
    UnitDecomposition,
    dirichlet_char_mod_p,
    enumerate_G_a,
    teichmuller_split,
    xi_eval,
)
from .expsums import (
    AmplitudeSpec,
    SumReport,
    amplitude_sum,
    complete_incomplete,
    error_term_bound,
    factorization_check,
    gcd_sum,
    kloosterman,
    ramanujan,
    weil_check,
)
from .modular import (
    PrimeModulus,
    discrete_log,
    euler_phi,
    inv_mod,
    is_prime,
    pow_mod,
    primes_in,
    primitive_root,
    tau,
)
from .sequences import load_sequence
from .sieve import (
    CoefficientSequence,
    GramKernel,
    SieveReport,
    bound_report,
    classical_mult_lhs,
    extremal_delta,
    gram_kernel,
    identity_check,
    lhs_character_side,
    lhs_congruence_side,
    trivial_bound_check,
)

__version__ = "0.1.0"
