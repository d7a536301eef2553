//! Resource caps for orbit detection, automaton exploration, and
//! complementation. The underlying theory guarantees termination for the
//! supported systems; the caps turn implementation bugs and unsupported
//! configurations into reported errors instead of hangs.

/// Caps threaded through representation and automaton construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of distinct remainders tracked during period detection.
    pub orbit_cap: usize,
    /// Maximum number of automaton states explored in one construction.
    pub state_cap: usize,
    /// Maximum rank used by complementation; `None` means the exact 2·|Q|.
    pub rank_cap: Option<u32>,
    /// Exponent bound for unit-group matching and independence searches.
    pub exponent_cap: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { orbit_cap: 1_000_000, state_cap: 1_000_000, rank_cap: None, exponent_cap: 200 }
    }
}
