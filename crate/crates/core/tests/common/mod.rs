pub mod regressions;
