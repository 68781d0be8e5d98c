//! Exact symbolic computations with differential graded operads.

pub mod classical;
pub mod cobar;
pub mod conv;
pub mod cooperad;
pub mod degeneracy;
pub mod endo;
pub mod free;
pub mod golden;
pub mod ideal;
pub mod linear;
pub mod model;
pub mod operad;
pub mod poisson;
pub mod poly;
pub mod symseq;
pub mod trees;
pub mod vanishing;
