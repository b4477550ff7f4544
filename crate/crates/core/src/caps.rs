use serde::{Deserialize, Serialize};

/// Environment variable overriding [`Caps::hamiltonian`].
pub const ORACLE_CAP_ENV: &str = "IDEALGRAPH_ORACLE_CAP";

/// Size limits for the exhaustive procedures.
///
/// Exceeding a cap is always reported as [`crate::Error::CapExceeded`];
/// nothing is truncated silently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Total ideal count accepted by ideal enumeration.
    pub ideals: usize,
    /// Nontrivial ideal count for independence searches.
    pub independence: usize,
    /// Vertex count for building an intersection graph.
    pub graph: usize,
    /// Largest cycle length for the induced-cycle search.
    pub induced_cycle_len: usize,
    /// Vertex count for induced cycle and claw searches.
    pub induced_vertices: usize,
    /// Vertex count for the Hamiltonian oracle.
    pub hamiltonian: usize,
    /// Vertex count for the cycle-spectrum oracle.
    pub spectrum: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            ideals: 4096,
            independence: 64,
            graph: 2000,
            induced_cycle_len: 8,
            induced_vertices: 64,
            hamiltonian: 16,
            spectrum: 14,
        }
    }
}

impl Caps {
    /// Defaults, with the Hamiltonian oracle cap taken from
    /// `IDEALGRAPH_ORACLE_CAP` when it is set to a valid integer.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(cap) = std::env::var(ORACLE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            caps.hamiltonian = cap;
        }
        caps
    }
}
