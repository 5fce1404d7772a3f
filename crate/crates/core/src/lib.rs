pub mod cohomology;
pub mod descent;
pub mod linalg;
pub mod obstructions;
pub mod root_datum;
pub mod sections;
pub mod toda;
pub mod representation;
pub mod weyl;
