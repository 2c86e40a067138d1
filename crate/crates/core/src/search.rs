//! Exhaustive enumeration of small loops as reduced Latin squares, with a
//! seeded random sampler for orders beyond exhaustive reach.
//!
//! A reduced square has its first row and first column equal to
//! `0, 1, ..., n-1`, so element 0 is a two-sided identity. Counts refer to
//! reduced squares, not isomorphism classes.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::magma::{ClassTag, FiniteBinarySystem};

/// Largest order enumerated exhaustively.
pub const MAX_EXHAUSTIVE_ORDER: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    Any,
    Group,
    Nonassociative,
    Commutative,
    Metagroup,
    CentralMetagroup,
    MetagroupNotGroup,
}

impl Predicate {
    pub const ALL: [Predicate; 7] = [
        Predicate::Any,
        Predicate::Group,
        Predicate::Nonassociative,
        Predicate::Commutative,
        Predicate::Metagroup,
        Predicate::CentralMetagroup,
        Predicate::MetagroupNotGroup,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Predicate::Any => "any",
            Predicate::Group => "group",
            Predicate::Nonassociative => "nonassociative",
            Predicate::Commutative => "commutative",
            Predicate::Metagroup => "metagroup",
            Predicate::CentralMetagroup => "central-metagroup",
            Predicate::MetagroupNotGroup => "metagroup-not-group",
        }
    }

    pub fn test(self, g: &FiniteBinarySystem) -> bool {
        let tag = g.classify();
        match self {
            Predicate::Any => true,
            Predicate::Group => tag == ClassTag::Group,
            Predicate::Nonassociative => !tag.implies(ClassTag::Group),
            Predicate::Commutative => g.is_commutative(),
            Predicate::Metagroup => tag.implies(ClassTag::Metagroup),
            Predicate::CentralMetagroup => tag.implies(ClassTag::CentralMetagroup),
            Predicate::MetagroupNotGroup => tag.implies(ClassTag::Metagroup) && tag != ClassTag::Group,
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.replace('_', "-");
        Predicate::ALL
            .into_iter()
            .find(|p| p.as_str() == s || (s == "loop" && *p == Predicate::Any))
            .ok_or_else(|| {
                let names: Vec<&str> = Predicate::ALL.iter().map(|p| p.as_str()).collect();
                Error::Input(format!("unknown predicate `{s}` (expected one of {})", names.join(", ")))
            })
    }
}

/// Result of a search.
#[derive(Debug, Clone, Serialize)]
pub struct SearchSummary {
    pub order: usize,
    pub predicate: Predicate,
    /// Reduced squares examined.
    pub total: usize,
    pub matched: usize,
    pub exhaustive: bool,
    pub normalization: &'static str,
    /// Matching tables in enumeration order.
    #[serde(skip)]
    pub tables: Vec<FiniteBinarySystem>,
}

const NORMALIZATION: &str = "first row and first column fixed to 0..n-1";

type Square = Vec<u8>;

/// Fills cells `(r, c)`, `r, c >= 1`, from position `start` in row-major order.
struct Filler {
    n: usize,
    grid: Square,
    row_used: Vec<u16>,
    col_used: Vec<u16>,
}

impl Filler {
    fn new(n: usize) -> Self {
        let mut f = Filler {
            n,
            grid: vec![0; n * n],
            row_used: vec![0; n],
            col_used: vec![0; n],
        };
        for i in 0..n {
            f.set(0, i, i as u8);
            if i > 0 {
                f.set(i, 0, i as u8);
            }
        }
        f
    }

    fn set(&mut self, r: usize, c: usize, v: u8) {
        self.grid[r * self.n + c] = v;
        self.row_used[r] |= 1 << v;
        self.col_used[c] |= 1 << v;
    }

    fn unset(&mut self, r: usize, c: usize) {
        let v = self.grid[r * self.n + c];
        self.row_used[r] &= !(1 << v);
        self.col_used[c] &= !(1 << v);
    }

    fn candidates(&self, r: usize, c: usize) -> impl Iterator<Item = u8> + '_ {
        let used = self.row_used[r] | self.col_used[c];
        (0..self.n as u8).filter(move |&v| used & (1 << v) == 0)
    }

    /// Visits every completion of the cells from `pos` up to `end`.
    fn fill(&mut self, pos: usize, end: usize, visit: &mut dyn FnMut(&Square)) {
        let n = self.n;
        if pos == end {
            visit(&self.grid);
            return;
        }
        let (r, c) = (pos / (n - 1) + 1, pos % (n - 1) + 1);
        let cands: Vec<u8> = self.candidates(r, c).collect();
        for v in cands {
            self.set(r, c, v);
            self.fill(pos + 1, end, visit);
            self.unset(r, c);
        }
    }
}

fn to_system(n: usize, sq: &Square) -> FiniteBinarySystem {
    FiniteBinarySystem::from_flat(n, sq.iter().map(|&v| v as u32).collect())
}

/// Every reduced Latin square of order `n` in lexicographic order.
pub fn enumerate_reduced(n: usize) -> Vec<FiniteBinarySystem> {
    search_small(n, Predicate::Any, None)
        .expect("order within bounds")
        .tables
}

/// Enumerates all reduced Latin squares of `order` and keeps those satisfying
/// `predicate`. Work is split by the second row; `jobs` limits the worker
/// threads. Results do not depend on `jobs`.
pub fn search_small(order: usize, predicate: Predicate, jobs: Option<usize>) -> Result<SearchSummary> {
    if order == 0 {
        return Err(Error::Input("order must be positive".into()));
    }
    if order > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::Resource(format!(
            "exhaustive search is limited to order {MAX_EXHAUSTIVE_ORDER}; use randomized sampling (--seed) for order {order}"
        )));
    }
    let n = order;
    if n == 1 {
        let g = to_system(1, &vec![0]);
        let hit = predicate.test(&g);
        return Ok(SearchSummary {
            order,
            predicate,
            total: 1,
            matched: hit as usize,
            exhaustive: true,
            normalization: NORMALIZATION,
            tables: if hit { vec![g] } else { Vec::new() },
        });
    }
    let row_cells = n - 1;
    let all_cells = (n - 1) * (n - 1);
    let mut prefixes: Vec<Square> = Vec::new();
    Filler::new(n).fill(0, row_cells, &mut |g| prefixes.push(g.clone()));

    let run = || -> Vec<(usize, Vec<FiniteBinarySystem>)> {
        prefixes
            .par_iter()
            .map(|prefix| {
                let mut f = Filler::new(n);
                for c in 1..n {
                    f.set(1, c, prefix[n + c]);
                }
                let mut total = 0;
                let mut hits = Vec::new();
                f.fill(row_cells, all_cells, &mut |sq| {
                    total += 1;
                    let g = to_system(n, sq);
                    if predicate.test(&g) {
                        hits.push(g);
                    }
                });
                (total, hits)
            })
            .collect()
    };
    let parts = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Resource(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    let total = parts.iter().map(|p| p.0).sum();
    let tables: Vec<FiniteBinarySystem> = parts.into_iter().flat_map(|p| p.1).collect();
    Ok(SearchSummary {
        order,
        predicate,
        total,
        matched: tables.len(),
        exhaustive: true,
        normalization: NORMALIZATION,
        tables,
    })
}

/// One random reduced Latin square, by backtracking with shuffled candidates.
/// The distribution is not uniform.
pub fn random_reduced(n: usize, rng: &mut StdRng) -> Result<FiniteBinarySystem> {
    if n == 0 || n > 16 {
        return Err(Error::Input("random squares need 1 <= order <= 16".into()));
    }
    if n == 1 {
        return Ok(to_system(1, &vec![0]));
    }
    let mut f = Filler::new(n);
    let cells = (n - 1) * (n - 1);
    fn go(f: &mut Filler, pos: usize, end: usize, rng: &mut StdRng) -> bool {
        if pos == end {
            return true;
        }
        let n = f.n;
        let (r, c) = (pos / (n - 1) + 1, pos % (n - 1) + 1);
        let mut cands: Vec<u8> = f.candidates(r, c).collect();
        cands.shuffle(rng);
        for v in cands {
            f.set(r, c, v);
            if go(f, pos + 1, end, rng) {
                return true;
            }
            f.unset(r, c);
        }
        false
    }
    let found = go(&mut f, 0, cells, rng);
    debug_assert!(found, "the backtracking is exhaustive and a reduced square exists");
    Ok(to_system(n, &f.grid))
}

/// Samples `samples` random reduced squares from `seed` and counts matches.
pub fn search_random(order: usize, predicate: Predicate, samples: usize, seed: u64) -> Result<SearchSummary> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut tables = Vec::new();
    for _ in 0..samples {
        let g = random_reduced(order, &mut rng)?;
        if predicate.test(&g) {
            tables.push(g);
        }
    }
    Ok(SearchSummary {
        order,
        predicate,
        total: samples,
        matched: tables.len(),
        exhaustive: false,
        normalization: NORMALIZATION,
        tables,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| search_small(n, Predicate::Any, None).unwrap().total).collect();
        assert_eq!(counts, vec![1, 1, 1, 4, 56]);
    }

    #[test]
    fn order_four_loops_are_groups() {
        let s = search_small(4, Predicate::Group, None).unwrap();
        assert_eq!(s.matched, 4);
    }

    #[test]
    fn order_five_split() {
        let groups = search_small(5, Predicate::Group, Some(2)).unwrap().matched;
        let non = search_small(5, Predicate::Nonassociative, Some(1)).unwrap().matched;
        assert_eq!(groups, 6);
        assert_eq!(groups + non, 56);
    }

    #[test]
    fn too_large() {
        assert!(matches!(search_small(7, Predicate::Any, None), Err(Error::Resource(_))));
    }

    #[test]
    fn random_squares_are_loops_and_reproducible() {
        let a = search_random(7, Predicate::Any, 5, 42).unwrap();
        let b = search_random(7, Predicate::Any, 5, 42).unwrap();
        assert_eq!(a.tables, b.tables);
        assert!(a.tables.iter().all(|g| g.is_loop()));
    }

    #[test]
    fn predicate_names() {
        for p in Predicate::ALL {
            assert_eq!(p.as_str().parse::<Predicate>().unwrap(), p);
        }
        assert!("nope".parse::<Predicate>().is_err());
    }
}
