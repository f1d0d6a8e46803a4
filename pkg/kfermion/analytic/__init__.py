from .bargmann import (
    BargmannPoly,
    anticommutator_identities_check,
    bargmann_coefficients,
    bargmann_monomial,
    bargmann_transform,
    derivative,
    euler_operator,
    faithfulness_check,
    fibonacci_difference,
    generalized_derivative,
    intertwining_check,
    parity,
)
from .coherent import (
    CoherentState,
    coherent_diagnostics,
    coherent_state,
    e_kappa,
    e_kappa_terms,
    residual,
)
from .grassmann import GrassmannElement, grassmann_coherent
