pub mod oracle;
pub mod properties;
pub mod strategies;
