/// Resource caps applied by generators, enumerators and searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of candidates a brute-force generator may examine.
    pub max_subsets: u64,
    /// Maximum number of lattice points in an enumeration box.
    pub max_lattice: u64,
    /// Largest cube dimension accepted by the exact index computation.
    pub index_dim: usize,
}

pub const DEFAULT_CAP: u64 = 1 << 22;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_subsets: DEFAULT_CAP,
            max_lattice: DEFAULT_CAP,
            index_dim: 4,
        }
    }
}

impl Limits {
    pub fn with_max_subsets(mut self, cap: u64) -> Self {
        self.max_subsets = cap;
        self
    }

    pub fn with_max_lattice(mut self, cap: u64) -> Self {
        self.max_lattice = cap;
        self
    }

    pub fn with_index_dim(mut self, d: usize) -> Self {
        self.index_dim = d;
        self
    }

    pub(crate) fn check_subsets(&self, what: &str, count: u128) -> crate::Result<()> {
        if count > self.max_subsets as u128 {
            Err(crate::Error::TooLarge { what: what.to_string(), count, cap: self.max_subsets })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_lattice(&self, what: &str, count: u128) -> crate::Result<()> {
        if count > self.max_lattice as u128 {
            Err(crate::Error::TooLarge { what: what.to_string(), count, cap: self.max_lattice })
        } else {
            Ok(())
        }
    }
}
