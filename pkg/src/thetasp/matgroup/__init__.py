"""Exact matrix groups: Sp_2n elements, unipotent families, characters, identities."""
from .families import (
    CharacterFunctional,
    UnipotentFamily,
    direct_sum,
    embed_family,
    family_plus_character,
    levi_radical,
    levi_radical_0,
    max_unipotent,
    u_prime,
    u_radical,
    u_radical_1,
    y_group,
)
from .identities import (
    EXCHANGES,
    TRANSPORT_STEPS,
    HeisenbergReport,
    TransportError,
    TransportReport,
    conjugate_family,
    heisenberg_structure,
    modulus_character_exponent,
    root_exchange_check,
    stabilizer,
    stabilizer_dimension,
    verify_integral_transport,
    verify_product_decomposition,
)
from .symplectic import (
    CATALOG,
    NotSymplecticError,
    SymplecticElement,
    build_element,
    estar,
    form_matrix,
    in_lie_algebra,
    is_symplectic,
)

symplectic_form_matrix = form_matrix
