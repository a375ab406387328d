"""Exact free-space norms, LP certificates and l1-type sequence constants."""

from ._schurlab import (
    MetricSpace,
    best_subset_bruteforce,
    certify,
    chain_witness_x,
    chain_witness_z,
    claim_ids,
    complexified_norm,
    exlf3_index,
    exlf3_space,
    exlf_index,
    exlf_norm_formula,
    exlf_space,
    family_tags,
    free_norm,
    free_norm_witness,
    gliding_hump,
    halfplane_select,
    lip_constant,
    mprime_norm_formula,
    mprime_space,
    quantities,
    roots_witness,
    run_claims,
    sandwich_check,
    sign_sup_norm,
    staged,
    staged_tags,
    star_extension,
    telescoping_identity,
)

__all__ = [name for name in dir() if not name.startswith("_")]
