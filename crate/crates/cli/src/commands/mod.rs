pub mod bench;
pub mod gen;
pub mod norms;
pub mod round;
pub mod solve;
pub mod verify;

/// How a command finished when it did not fail outright.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    /// A value was requested but only infeasibility was certified.
    Infeasible,
    /// `verify` found at least one failing check.
    ChecksFailed,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Infeasible | Status::ChecksFailed => 1,
        }
    }
}
