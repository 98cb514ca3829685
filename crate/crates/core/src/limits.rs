/// Resource caps shared by the brute-force procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest monoid produced by products, transition closures and quotients of words.
    pub size_cap: usize,
    /// Largest number of variable assignments an identity scan may enumerate.
    pub search_cap: u64,
    /// Largest automaton the subset construction may build.
    pub state_cap: usize,
    /// Largest ranker set used to key word signatures.
    pub ranker_cap: usize,
    /// Worker threads for identity scans; `1` runs inline.
    pub jobs: usize,
}

impl Limits {
    pub const DEFAULT_SIZE_CAP: usize = 5000;
    pub const DEFAULT_SEARCH_CAP: u64 = 100_000_000;
    pub const DEFAULT_STATE_CAP: usize = 100_000;
    pub const DEFAULT_RANKER_CAP: usize = 20_000;

    pub fn with_search_cap(mut self, cap: u64) -> Self {
        self.search_cap = cap;
        self
    }

    pub fn with_size_cap(mut self, cap: usize) -> Self {
        self.size_cap = cap;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            size_cap: Self::DEFAULT_SIZE_CAP,
            search_cap: Self::DEFAULT_SEARCH_CAP,
            state_cap: Self::DEFAULT_STATE_CAP,
            ranker_cap: Self::DEFAULT_RANKER_CAP,
            jobs: 1,
        }
    }
}
