//! Emotional profiling of word co-occurrence networks.
//!
//! Text is cleaned and stemmed ([`text`]), turned into bigram networks under
//! a common link budget ([`cooccur`]), analysed for centrality and
//! communities ([`graphan`]), scored against an affect lexicon ([`affect`],
//! [`profiling`]) and topic-modelled ([`topics`]). [`pipeline`] runs the
//! whole chain over several corpora.

pub mod affect;
pub mod cooccur;
pub mod corpus;
pub mod error;
pub mod export;
pub mod graph;
pub mod graphan;
pub mod pipeline;
pub mod porter;
pub mod profiling;
pub mod text;
pub mod topics;

pub use error::{Error, ErrorKind, Result};
pub use porter::porter_stem;
