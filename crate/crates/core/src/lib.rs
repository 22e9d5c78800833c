//! The `m`-bracket Dyck shift: words and their monoid reduction, exact
//! cylinder values of the coin-flip coding measure `μ̃`, seeded samplers for
//! `μ̃`, `μ_+` and `μ_-`, holonomies, entropy, and the diagnostics built on
//! them.
//!
//! ```no_run
//! use dyck_shift::{parse_word, reduce, mu_tilde_cylinder, AlphabetParams};
//!
//! let p = AlphabetParams::new(3)?;
//! let w = parse_word("a1 a2 b2 b1 a3", &p)?;
//! assert_eq!(reduce(&w).to_string(), "a3");
//! assert_eq!(mu_tilde_cylinder(&parse_word("a1 b1", &p)?, 0, &p).fraction_string(), "1/12");
//! # Ok::<(), dyck_shift::DyckError>(())
//! ```

pub mod alphabet;
pub mod analysis;
pub mod cli;
pub mod coding;
pub mod collapse;
pub mod entropy;
pub mod error;
pub mod holonomy;
pub mod language;
pub mod matching;
pub mod measure;
pub mod monoid;
pub mod sampler;
pub mod verify;
pub mod window;

pub use alphabet::{parse_word, AlphabetParams, Kind, Symbol, Word};
pub use analysis::{
    a_c_n_frequency, classify_window, disjoint_difference_sigma, empirical_cylinder,
    holonomy_frequency_pair, matching_times, paired_cylinder_difference, EmpiricalEstimate,
    MatchingTime, MatchingTimes, PairedDifference, TailLabel, WindowClassification,
};
pub use coding::{
    apply_f, epsilon, gamma, height_cocycle, match_zeros, project_z, project_z_letters,
    tilde_height, Lookup,
};
pub use collapse::{
    collapse_minus, collapse_minus_letters, collapse_plus, collapse_plus_letters,
    collapsed_cocycle, invert_collapse_minus, invert_collapse_plus, invert_collapse_plus_range,
    CollapseVariant, CollapsedLetter, CollapsedWindow,
};
pub use entropy::{entropy_exact, entropy_table, EntropyReport, LogCombination};
pub use error::{DyckError, Result};
pub use holonomy::{
    equivalent_pairs, holonomy_apply, holonomy_invariance_exact, Holonomy, InvarianceReport,
};
pub use language::{
    count_balanced, count_language, enumerate_language, equivalence_classes,
    minimal_balanced_extensions, Extension,
};
pub use matching::{height, height_profile, match_annotate, varpi, MatchAnnotation};
pub use measure::{
    balanced_cylinder_value, extension_additivity_check, minimal_extension_mass, mu_tilde_cylinder,
    MeasureValue, Monomial,
};
pub use monoid::{are_equivalent, is_balanced, is_in_language, reduce, NormalForm};
pub use sampler::{
    sample_mu_minus, sample_mu_plus, sample_mu_tilde, sample_with, SamplerConfig, Samples,
};
pub use window::{BinaryWindow, IndexWindow, PointWindow, Provenance, SamplerId};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crate_doc_snippet() -> Result<()> {
        let p = AlphabetParams::new(3)?;
        let w = parse_word("a1 a2 b2 b1 a3", &p)?;
        assert_eq!(reduce(&w).to_string(), "a3");
        assert_eq!(
            mu_tilde_cylinder(&parse_word("a1 b1", &p)?, 0, &p).fraction_string(),
            "1/12"
        );
        Ok(())
    }
}
