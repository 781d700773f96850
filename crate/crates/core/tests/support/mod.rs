pub mod fidelity;
pub mod gen;
pub mod oracle;
pub mod props;
