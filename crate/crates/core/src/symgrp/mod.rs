//! The generic module `W_d^r`, Young symmetrizers and the ideals of generic flattenings.

mod characters;
mod ideal;
mod tableau;
mod welement;
mod young;

pub use characters::{centralizer_order, irreducible_character, multiplicity_by_character, permutation_character};
pub use ideal::{
    check_1flattening, circled_expand, compare_generic, flattening_count, for_each_flattening, generic_ideal_space,
    multiplicity, subtableau_flattening, CircledExpansion, ExpansionTerm, GenericComparison, GenericSpace, HwtSampler,
    HwtSpace, ModuleBasis, MultiplicityMethod, OneFlatteningCheck, SampleConfig, ShapeComparison, Strategy,
    DEFAULT_PLATEAU, FULL_AMBIENT_LIMIT, FULL_GENERATOR_LIMIT,
};
pub use tableau::{tableau_normalize, Normalized, Tableau};
pub use welement::{act, generic_flattening, GenericFlattening, Permutation, WElement};
pub use young::{specialize_weight, young_apply, HwtVector, Symmetrizer};
