//! Drivers behind the `bandsub` command: the check-then-build pipeline,
//! random geometric graph experiments and conjecture hunts.

pub mod hunt;
pub mod pipeline;
pub mod rggrun;

use rayon::ThreadPool;

/// Process exit codes. Each failure cause has its own code.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const WITNESS: i32 = 4;
    pub const CONDITION: i32 = 5;
    pub const ASSEMBLY: i32 = 6;
    pub const VERIFICATION: i32 = 7;
    pub const IO: i32 = 8;
    pub const PARAMS: i32 = 9;
    pub const COUNTEREXAMPLE: i32 = 10;
    pub const ORACLE: i32 = 11;
}

/// A worker pool with `jobs` threads (0 means rayon's default).
pub fn pool(jobs: usize) -> ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
}

/// splitmix64 finaliser.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives an independent seed for trial `t` of cell `(n, k)`.
pub fn trial_seed(base: u64, n: usize, k: usize, t: usize) -> u64 {
    mix(mix(mix(base) ^ n as u64) ^ (k as u64) << 32 ^ t as u64)
}
