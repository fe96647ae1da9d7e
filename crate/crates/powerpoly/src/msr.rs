//! Minimum-sum integer representations and the index built from them.
//!
//! A weighted game has integer representations; among them the ones with the
//! smallest total weight form a finite set. The search fixes the total, then
//! enumerates weight vectors sorted inside each equivalence class by depth
//! first search: desirability forces strictly smaller weights across class
//! boundaries in every representation, while members of one class may carry
//! any permutation of their class's multiset. The quota is forced at the
//! optimum (largest losing sum plus one), so representations are enumerated
//! as weight vectors.

use num_traits::{One, Zero};

use crate::game::WeightedGame;
use crate::indices::{IndexKind, PowerVector};
use crate::lp::{self, LpOutcome};
use crate::rational::Rat;
use crate::{Error, Result};

/// Search cap: the enumeration is exponential in the voter count.
pub const MSR_VOTER_CAP: usize = 12;

/// Safety valve against degenerate permutation blowup.
const MSR_SOLUTION_CAP: usize = 100_000;

/// One integer representation `[quota; w1,...,wn]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerRepresentation {
    pub quota: u64,
    pub weights: Vec<u64>,
}

impl IntegerRepresentation {
    pub fn to_text(&self) -> String {
        let ws: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        format!("[{};{}]", self.quota, ws.join(","))
    }
}

/// All minimum-sum representations and their normalized average.
#[derive(Clone, Debug)]
pub struct MSRSolution {
    pub total_weight: u64,
    pub representations: Vec<IntegerRepresentation>,
    pub normalized_average: PowerVector,
}

/// Computes the minimum-sum representation index, enumerating every optimal
/// representation. With `type_revealing` the weights are constrained to be
/// equal inside each equivalence class and zero for dummies.
pub fn msri(game: &WeightedGame, type_revealing: bool) -> Result<MSRSolution> {
    let n = game.n();
    if n > MSR_VOTER_CAP {
        return Err(Error::CapExceeded(format!(
            "minimum-sum search supports up to {MSR_VOTER_CAP} voters, game has {n}"
        )));
    }
    let frontiers = game.frontiers()?;
    let winning: Vec<u32> = frontiers.minimal_winning.iter().map(|c| c.0).collect();
    let losing: Vec<u32> = frontiers.maximal_losing.iter().map(|c| c.0).collect();
    let partition = game.type_partition()?;
    let classes = partition.classes.clone();
    if let Some(d) = partition.dummy_class {
        debug_assert_eq!(d, classes.len() - 1, "dummy class sorts weakest");
    }

    let lower = lp_lower_bound(game, &winning, &losing)?;
    let upper = scaled_upper_bound(game, &classes, type_revealing, &winning, &losing)?;
    debug_assert!(lower <= upper);

    for target in lower..=upper {
        let canonical = if type_revealing {
            enumerate_type_revealing(
                target,
                &classes,
                partition.dummy_class,
                n,
                &winning,
                &losing,
            )
        } else {
            enumerate_class_sorted(target, &classes, n, &winning, &losing)
        };
        if canonical.is_empty() {
            continue;
        }
        let mut representations = Vec::new();
        for rep in canonical {
            if type_revealing {
                representations.push(rep);
            } else {
                expand_class_permutations(&rep, &classes, &mut representations)?;
            }
        }
        representations.sort_by(|a, b| b.weights.cmp(&a.weights));

        let count = Rat::from_integer((representations.len() as u64).into());
        let total = Rat::from_integer(target.into());
        let entries: Vec<Rat> = (0..n)
            .map(|i| {
                let sum: u64 = representations.iter().map(|r| r.weights[i]).sum();
                Rat::from_integer(sum.into()) / (&count * &total)
            })
            .collect();
        let kind = if type_revealing {
            IndexKind::MsriTypeRevealing
        } else {
            IndexKind::Msri
        };
        return Ok(MSRSolution {
            total_weight: target,
            representations,
            normalized_average: PowerVector::checked(kind, entries)?,
        });
    }
    Err(Error::Internal("no integer representation up to a valid one".into()))
}

/// Ceiling of the LP relaxation of min Σw.
fn lp_lower_bound(game: &WeightedGame, winning: &[u32], losing: &[u32]) -> Result<u64> {
    let n = game.n();
    // Variables: w_0..w_{n-1}, q; all non-negative.
    let mut constraints = Vec::new();
    let row = |mask: u32, q_coeff: Rat| {
        let mut coeffs = vec![Rat::zero(); n + 1];
        for i in 0..n {
            if mask & (1 << i) != 0 {
                coeffs[i] = Rat::one();
            }
        }
        coeffs[n] = q_coeff;
        coeffs
    };
    for &s in winning {
        constraints.push(lp::Constraint::ge(row(s, -Rat::one()), Rat::zero()));
    }
    for &t in losing {
        constraints.push(lp::Constraint::le(row(t, -Rat::one()), -Rat::one()));
    }
    let mut q_row = vec![Rat::zero(); n + 1];
    q_row[n] = Rat::one();
    constraints.push(lp::Constraint::ge(q_row, Rat::one()));
    let mut objective = vec![Rat::one(); n + 1];
    objective[n] = Rat::zero();
    let problem = lp::Lp {
        maximize: false,
        objective,
        constraints,
        free: vec![false; n + 1],
    };
    match lp::solve(&problem)? {
        LpOutcome::Optimal { value, .. } => {
            let ceiling = value.ceil().to_integer();
            u64::try_from(ceiling).map_err(|_| {
                Error::CapExceeded("relaxation bound exceeds u64".into())
            })
        }
        _ => Err(Error::Internal("weight relaxation must have an optimum".into())),
    }
}

/// Total weight of a valid (type-revealing if requested) integer
/// representation built from the scaled game; bounds the search.
fn scaled_upper_bound(
    game: &WeightedGame,
    classes: &[Vec<usize>],
    type_revealing: bool,
    winning: &[u32],
    losing: &[u32],
) -> Result<u64> {
    let (_, scaled) = game.integer_scaled();
    let mut weights: Vec<u64> = Vec::with_capacity(scaled.len());
    for w in &scaled {
        weights.push(u64::try_from(w.clone()).map_err(|_| {
            Error::CapExceeded("scaled integer weights exceed u64".into())
        })?);
    }
    if type_revealing {
        // Symmetrize per class: replace members by the class average, scaled
        // by the class-size lcm to stay integral. Averaging representations
        // of the same game is again a representation (the constraint set is
        // convex and invariant under within-class swaps).
        let lcm = classes
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64));
        for class in classes {
            let total: u64 = class.iter().map(|&v| weights[v]).sum();
            let share = total * (lcm / class.len() as u64);
            for &v in class {
                weights[v] = share;
            }
        }
        // The non-class values were already multiplied by lcm via shares;
        // nothing else to scale, but the quota gap must be revalidated.
        let (min_win, max_lose) = frontier_sums(&weights, winning, losing);
        if min_win <= max_lose {
            return Err(Error::Internal("symmetrized bound is not a representation".into()));
        }
    }
    Ok(weights.iter().sum())
}

/// Smallest winning and largest losing totals under integer weights.
fn frontier_sums(weights: &[u64], winning: &[u32], losing: &[u32]) -> (u64, u64) {
    let sum = |mask: u32| -> u64 {
        weights
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, w)| *w)
            .sum()
    };
    let min_win = winning.iter().map(|&m| sum(m)).min().unwrap_or(u64::MAX);
    let max_lose = losing.iter().map(|&m| sum(m)).max().unwrap_or(0);
    (min_win, max_lose)
}

/// Validates a full weight assignment; returns the forced quota.
fn validate(weights: &[u64], winning: &[u32], losing: &[u32]) -> Option<u64> {
    let (min_win, max_lose) = frontier_sums(weights, winning, losing);
    (min_win > max_lose).then_some(max_lose + 1)
}

/// Enumerates weight vectors with total `target`, sorted descending inside
/// each class and strictly dropping across class boundaries.
fn enumerate_class_sorted(
    target: u64,
    classes: &[Vec<usize>],
    n: usize,
    winning: &[u32],
    losing: &[u32],
) -> Vec<IntegerRepresentation> {
    // Positions visit classes in desirability order.
    let mut order = Vec::with_capacity(n);
    for (c, class) in classes.iter().enumerate() {
        for (k, &v) in class.iter().enumerate() {
            order.push((v, c > 0 && k == 0));
        }
    }
    let mut weights = vec![0u64; n];
    let mut found = Vec::new();
    struct Dfs<'a> {
        order: &'a [(usize, bool)],
        winning: &'a [u32],
        losing: &'a [u32],
        weights: Vec<u64>,
        found: Vec<IntegerRepresentation>,
    }
    impl Dfs<'_> {
        fn go(&mut self, pos: usize, prev: u64, remaining: u64) {
            if pos == self.order.len() {
                if remaining == 0 {
                    if let Some(quota) = validate(&self.weights, self.winning, self.losing) {
                        self.found.push(IntegerRepresentation {
                            quota,
                            weights: self.weights.clone(),
                        });
                    }
                }
                return;
            }
            let (voter, boundary) = self.order[pos];
            let cap = if pos == 0 {
                remaining
            } else if boundary {
                if prev == 0 {
                    return;
                }
                (prev - 1).min(remaining)
            } else {
                prev.min(remaining)
            };
            let slots_after = (self.order.len() - pos) as u64;
            // Descending weights cannot exceed w per slot, so w must cover
            // at least remaining / slots.
            let low = remaining.div_ceil(slots_after);
            if low > cap {
                return;
            }
            for w in (low..=cap).rev() {
                self.weights[voter] = w;
                self.go(pos + 1, w, remaining - w);
            }
            self.weights[voter] = 0;
        }
    }
    let mut dfs = Dfs {
        order: &order,
        winning,
        losing,
        weights: std::mem::take(&mut weights),
        found: std::mem::take(&mut found),
    };
    dfs.go(0, 0, target);
    dfs.found
}

/// Enumerates per-class values with total `target`, strictly descending
/// across classes, dummies pinned at zero.
fn enumerate_type_revealing(
    target: u64,
    classes: &[Vec<usize>],
    dummy_class: Option<usize>,
    n: usize,
    winning: &[u32],
    losing: &[u32],
) -> Vec<IntegerRepresentation> {
    struct Dfs<'a> {
        classes: &'a [Vec<usize>],
        dummy_class: Option<usize>,
        winning: &'a [u32],
        losing: &'a [u32],
        weights: Vec<u64>,
        found: Vec<IntegerRepresentation>,
    }
    impl Dfs<'_> {
        fn go(&mut self, class: usize, prev: u64, remaining: u64) {
            if class == self.classes.len() {
                if remaining == 0 {
                    if let Some(quota) = validate(&self.weights, self.winning, self.losing) {
                        self.found.push(IntegerRepresentation {
                            quota,
                            weights: self.weights.clone(),
                        });
                    }
                }
                return;
            }
            let members = &self.classes[class];
            let size = members.len() as u64;
            let assign = |dfs: &mut Self, value: u64, rem: u64| {
                for &v in members {
                    dfs.weights[v] = value;
                }
                dfs.go(class + 1, value, rem);
                for &v in members {
                    dfs.weights[v] = 0;
                }
            };
            if Some(class) == self.dummy_class {
                assign(self, 0, remaining);
                return;
            }
            let cap_order = if class == 0 {
                remaining / size
            } else {
                if prev == 0 {
                    return;
                }
                (prev - 1).min(remaining / size)
            };
            for value in (0..=cap_order).rev() {
                let used = value * size;
                let future: u64 = self.classes[class + 1..]
                    .iter()
                    .map(|c| c.len() as u64)
                    .sum();
                // Later classes stay below `value`; prune when they cannot
                // absorb the remainder.
                let max_future = if value == 0 { 0 } else { (value - 1) * future };
                if remaining - used > max_future {
                    continue;
                }
                assign(self, value, remaining - used);
            }
        }
    }
    let mut dfs = Dfs {
        classes,
        dummy_class,
        winning,
        losing,
        weights: vec![0u64; n],
        found: Vec::new(),
    };
    dfs.go(0, 0, target);
    dfs.found
}

/// Expands a class-sorted solution into all distinct labeled vectors; a swap
/// of equivalent voters maps the frontier sets onto themselves, so validity
/// and quota carry over.
fn expand_class_permutations(
    rep: &IntegerRepresentation,
    classes: &[Vec<usize>],
    out: &mut Vec<IntegerRepresentation>,
) -> Result<()> {
    let mut labeled = vec![rep.weights.clone()];
    for class in classes {
        let values: Vec<u64> = class.iter().map(|&v| rep.weights[v]).collect();
        let perms = distinct_permutations(&values);
        if perms.len() > 1 {
            let mut next = Vec::with_capacity(labeled.len() * perms.len());
            for base in &labeled {
                for perm in &perms {
                    let mut w = base.clone();
                    for (&v, &value) in class.iter().zip(perm) {
                        w[v] = value;
                    }
                    next.push(w);
                }
            }
            labeled = next;
        }
        if labeled.len() > MSR_SOLUTION_CAP {
            return Err(Error::CapExceeded(
                "too many minimum-sum representations to enumerate".into(),
            ));
        }
    }
    for weights in labeled {
        out.push(IntegerRepresentation {
            quota: rep.quota,
            weights,
        });
    }
    Ok(())
}

/// All distinct orderings of a multiset.
fn distinct_permutations(values: &[u64]) -> Vec<Vec<u64>> {
    let mut pool = values.to_vec();
    pool.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(values.len());
    fn rec(pool: &mut Vec<u64>, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if pool.is_empty() {
            out.push(current.clone());
            return;
        }
        let mut last: Option<u64> = None;
        for i in 0..pool.len() {
            if last == Some(pool[i]) {
                continue;
            }
            last = Some(pool[i]);
            let v = pool.remove(i);
            current.push(v);
            rec(pool, current, out);
            current.pop();
            pool.insert(i, v);
        }
    }
    rec(&mut pool, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn game(text: &str) -> WeightedGame {
        WeightedGame::parse(text).unwrap()
    }

    #[test]
    fn five_voter_game_has_unique_minimum() {
        let sol = msri(&game("[13;9,4,3,2,1]"), false).unwrap();
        assert_eq!(sol.total_weight, 12);
        assert_eq!(sol.representations.len(), 1);
        assert_eq!(sol.representations[0].to_text(), "[8;5,3,2,1,1]");
        assert_eq!(
            sol.normalized_average.entries,
            vec![ratio(5, 12), ratio(3, 12), ratio(2, 12), ratio(1, 12), ratio(1, 12)]
        );
        assert_eq!(sol.normalized_average.kind, IndexKind::Msri);

        // Already type-consistent, so the revealing variant coincides.
        let typed = msri(&game("[13;9,4,3,2,1]"), true).unwrap();
        assert_eq!(typed.total_weight, 12);
        assert_eq!(typed.representations[0].to_text(), "[8;5,3,2,1,1]");
    }

    #[test]
    fn eight_voter_game_has_two_minima() {
        let sol = msri(&game("[12;7,6,6,4,4,4,3,2]"), false).unwrap();
        assert_eq!(sol.total_weight, 36);
        let texts: Vec<String> = sol.representations.iter().map(|r| r.to_text()).collect();
        assert_eq!(
            texts,
            vec!["[12;7,6,6,4,4,4,3,2]", "[12;7,6,6,4,4,4,2,3]"]
        );
        // Voters 7 and 8 average (3+2)/2 = 5/2 out of 36.
        assert_eq!(sol.normalized_average.entries[6], ratio(5, 72));
        assert_eq!(sol.normalized_average.entries[7], ratio(5, 72));
    }

    #[test]
    fn eight_voter_game_type_revealing_minimum() {
        let sol = msri(&game("[12;7,6,6,4,4,4,3,2]"), true).unwrap();
        assert_eq!(sol.total_weight, 43);
        assert_eq!(sol.representations.len(), 1);
        assert_eq!(sol.representations[0].to_text(), "[14;8,7,7,5,5,5,3,3]");
        assert_eq!(sol.normalized_average.kind, IndexKind::MsriTypeRevealing);
        assert_eq!(sol.normalized_average.entries[0], ratio(8, 43));
    }

    #[test]
    fn dummy_gets_weight_zero() {
        let sol = msri(&game("[51;47,46,5,2]"), false).unwrap();
        assert_eq!(sol.total_weight, 3);
        assert_eq!(sol.representations[0].to_text(), "[2;1,1,1,0]");
        assert_eq!(
            sol.normalized_average.entries,
            vec![ratio(1, 3), ratio(1, 3), ratio(1, 3), ratio(0, 1)]
        );
    }

    #[test]
    fn three_voter_game_is_its_own_minimum() {
        let sol = msri(&game("[3;2,1,1]"), false).unwrap();
        assert_eq!(sol.total_weight, 4);
        assert_eq!(sol.representations.len(), 1);
        assert_eq!(sol.representations[0].to_text(), "[3;2,1,1]");
    }

    #[test]
    fn voter_cap_is_enforced() {
        let g = game("[7;1,1,1,1,1,1,1,1,1,1,1,1,1]");
        assert!(matches!(msri(&g, false), Err(Error::CapExceeded(_))));
    }
}
