pub mod algebra;
pub mod links;
pub mod jones;
pub mod ohtsuki;
pub mod diagrams;
