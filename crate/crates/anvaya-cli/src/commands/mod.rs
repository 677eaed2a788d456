pub mod evaluate;
pub mod linearize;
pub mod prompt;
pub mod score;
pub mod stats;
