pub mod error;
pub mod exactla;
pub mod repcore;
pub mod hodge1;
pub mod plectic;
pub mod realforms;
pub mod extcalc;
pub mod io;
pub mod cli;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/representations.md")]
    mod representations {}
    #[doc = include_str!("../../../book/src/hodge.md")]
    mod hodge {}
    #[doc = include_str!("../../../book/src/plectic.md")]
    mod plectic {}
    #[doc = include_str!("../../../book/src/real.md")]
    mod real {}
    #[doc = include_str!("../../../book/src/ext.md")]
    mod ext {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
