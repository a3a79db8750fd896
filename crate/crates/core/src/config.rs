/// Size caps for the two evaluation regimes.
///
/// Groups up to `max_exhaustive` get a full element store; groups up to
/// `max_order` still get an exact order and a stabilizer-chain membership
/// oracle. Anything larger is refused outright. `max_pair` bounds the
/// groups on which the quadratic pair enumeration (dn/ds) is attempted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_order: u64,
    pub max_exhaustive: u64,
    pub max_pair: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_order: 1_000_000,
            max_exhaustive: 200_000,
            max_pair: 5_000,
        }
    }
}
