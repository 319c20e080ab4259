pub mod exact_linalg;
pub mod forms;
pub mod variations;
pub mod mcg;
pub mod james_ss;
pub mod cli;
