pub mod bundled;
pub mod code;
pub mod digest;
pub mod dsl;
pub mod engine;
pub mod inspect;
pub mod lang;
pub mod search;
pub mod transforms;
pub mod translator;

pub use lang::Lang;
