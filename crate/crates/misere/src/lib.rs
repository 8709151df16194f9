//! Partizan misère game analysis: outcomes, misère monoids, genus, the
//! star algebra, mirroring strategies and heap subtraction games.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod expr;
pub mod genus;
pub mod heap;
pub mod outcome;
pub mod position;
pub mod quotient;
pub mod star;
pub mod strategy;

pub use error::{Error, Result};
pub use genus::{nim_heap_genus, Genus};
pub use heap::{HeapGame, HeapVector, OutcomeTable, PeriodicityBounds, PeriodicityReport, SubtractionGameSpec};
pub use outcome::{Comparison, Convention, Outcome, SumPosition};
pub use position::{Engine, Name, PositionId, Side, StructuralProfile, SumKind};
pub use quotient::{PositionQuotient, QuotientReport, QuotientStatus, RelationCheck};
pub use star::{IsoCheck, StarImage};
pub use strategy::{Playout, StrategyState};
