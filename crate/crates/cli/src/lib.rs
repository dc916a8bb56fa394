pub mod app;
pub mod examples;
pub mod format;
pub mod report;
