//! Models of the based mapping space `Map_*(X, Y)`.

pub mod bs;
pub mod decompose;
pub mod reduce;
pub mod split;

pub use bs::{based_model, check_vanishing, BsGenerator, BsModel, BsOptions};
pub use reduce::{minimal_reduce, MinimalReduction};
pub use split::{bracket_length, distinguish, word_length, splitting_check, FailedHypothesis, FailureReport, NonSplitting, SplittingWitness, Verdict};
pub use decompose::{
    decompose, homotopy_ranks_from_counts, homotopy_ranks_from_reduction, non_free_witness, CellStep, Decomposition,
    NonFreeWitness,
};
