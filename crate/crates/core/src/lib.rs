//! Value quantales, quantale-valued distances on finite sets, and the
//! finite topologies they generate.

pub mod commands;
pub mod constructions;
pub mod creg;
pub mod dyadic;
pub mod format;
pub mod halfline;
pub mod lattice;
pub mod omega;
pub mod oracle;
pub mod quantale;
pub mod space;
pub mod symmetry;
pub mod topology;
pub mod upset;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    struct Readme;
    #[doc = include_str!("../../../book/src/intro.md")]
    struct Intro;
    #[doc = include_str!("../../../book/src/quantales.md")]
    struct Quantales;
    #[doc = include_str!("../../../book/src/spaces.md")]
    struct Spaces;
    #[doc = include_str!("../../../book/src/metrization.md")]
    struct Metrization;
    #[doc = include_str!("../../../book/src/separation.md")]
    struct Separation;
    #[doc = include_str!("../../../book/src/constructions.md")]
    struct Constructions;
    #[doc = include_str!("../../../book/src/symmetry.md")]
    struct Symmetry;
    #[doc = include_str!("../../../book/src/complete_regularity.md")]
    struct CompleteRegularity;
    #[doc = include_str!("../../../book/src/sequence.md")]
    struct Sequence;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
