pub mod commands;
pub mod document;
pub mod isogeny;
pub mod run;
