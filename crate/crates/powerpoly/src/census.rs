//! Catalogs of small weighted games and counts of integer representations.
//!
//! The catalog enumerates every weighted game with up to `n` voters once,
//! keyed by its canonical minimum-sum representation with weights sorted in
//! descending order. Games whose weakest voters are dummies appear padded at
//! every voter count, matching how small games embed into larger ones.
//!
//! The representation census counts labeled integer weight vectors of a
//! fixed total that remain feasible for a game, optionally weighting each
//! vector by the number of admissible integer quotas.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::game::WeightedGame;
use crate::lp::{self, LpOutcome};
use crate::msr::{msri, IntegerRepresentation};
use crate::par;
use crate::rational::Rat;
use crate::{Error, Result};

/// Catalog cap: the enumeration visits every monotone coalition structure.
pub const CATALOG_VOTER_CAP: usize = 6;

/// Census cap on the weight total (loop budget).
pub const CENSUS_TOTAL_CAP: u64 = 10_000;

/// Every weighted game with up to `n` voters, canonically represented.
#[derive(Clone, Debug)]
pub struct GameCatalog {
    pub n: usize,
    pub games: Vec<WeightedGame>,
}

/// Count and exact average of feasible integer weight vectors.
#[derive(Clone, Debug)]
pub struct CensusResult {
    pub count: BigInt,
    /// Mean weight vector normalized by the total; `None` when nothing is
    /// feasible at the requested total.
    pub average: Option<Vec<Rat>>,
}

/// Enumerates all weighted games with up to `n` voters. Games on fewer
/// voters are included once per voter count, padded with dummies.
pub fn enumerate_weighted_games(n: usize) -> Result<GameCatalog> {
    if n == 0 {
        return Err(Error::Invalid("catalog needs at least one voter".into()));
    }
    if n > CATALOG_VOTER_CAP {
        return Err(Error::CapExceeded(format!(
            "catalog supports up to {CATALOG_VOTER_CAP} voters, got {n}"
        )));
    }
    let mut base: Vec<Vec<IntegerRepresentation>> = Vec::with_capacity(n);
    for m in 1..=n {
        base.push(dummy_free_games(m)?);
    }
    let mut entries: Vec<(usize, IntegerRepresentation)> = Vec::new();
    for m in 1..=n {
        for smaller in &base[..m] {
            for rep in smaller {
                let mut weights = rep.weights.clone();
                weights.resize(m, 0);
                entries.push((
                    m,
                    IntegerRepresentation {
                        quota: rep.quota,
                        weights,
                    },
                ));
            }
        }
    }
    entries.sort_by(|a, b| {
        (a.0, &a.1.weights, a.1.quota).cmp(&(b.0, &b.1.weights, b.1.quota))
    });
    let games = entries
        .into_iter()
        .map(|(_, rep)| representation_game(&rep))
        .collect::<Result<Vec<_>>>()?;
    Ok(GameCatalog { n, games })
}

fn representation_game(rep: &IntegerRepresentation) -> Result<WeightedGame> {
    WeightedGame::new(
        Rat::from_integer(rep.quota.into()),
        rep.weights
            .iter()
            .map(|&w| Rat::from_integer(w.into()))
            .collect(),
    )
}

/// All weighted games on exactly `m` voters in which no voter is a dummy,
/// one canonical minimum-sum representation each.
///
/// Enumeration walks monotone winning tables that also respect the strength
/// order of voters (voter 0 strongest): replacing a member by a stronger one
/// keeps a coalition winning. Weighted games are exactly such tables that
/// pass an exact-LP separation test.
fn dummy_free_games(m: usize) -> Result<Vec<IntegerRepresentation>> {
    debug_assert!((1..=CATALOG_VOTER_CAP).contains(&m));
    let full: u32 = ((1u64 << m) - 1) as u32;
    let member_list = |s: u32| -> Vec<usize> { (0..m).filter(|i| s >> i & 1 == 1).collect() };

    // Linear extension of the strengthen-order: weaker coalitions first.
    let mut order: Vec<u32> = (0..=full).collect();
    order.sort_by(|&a, &b| {
        a.count_ones()
            .cmp(&b.count_ones())
            .then_with(|| member_list(b).cmp(&member_list(a)))
    });
    debug_assert_eq!(order[0], 0);
    debug_assert_eq!(*order.last().unwrap(), full);

    // Immediate weakenings of a coalition: demote one member by one rank, or
    // drop the weakest voter. Chains of these reach every weaker coalition.
    let weakenings = |s: u32| -> Vec<u32> {
        let mut out = Vec::new();
        for r in 0..m - 1 {
            if s >> r & 1 == 1 && s >> (r + 1) & 1 == 0 {
                out.push(s & !(1 << r) | 1 << (r + 1));
            }
        }
        if s >> (m - 1) & 1 == 1 {
            out.push(s & !(1 << (m - 1)));
        }
        out
    };

    // DFS over the undecided coalitions, branching only where monotonicity
    // leaves a choice; each leaf is one complete winning table (a u64 with
    // bit s = coalition s wins).
    let mut tables: Vec<u64> = Vec::new();
    let mut win = vec![false; full as usize + 1];
    fn assign(
        pos: usize,
        order: &[u32],
        weakenings: &dyn Fn(u32) -> Vec<u32>,
        win: &mut Vec<bool>,
        full: u32,
        tables: &mut Vec<u64>,
    ) {
        if pos == order.len() {
            let mut bits = 0u64;
            for (s, &w) in win.iter().enumerate() {
                if w {
                    bits |= 1 << s;
                }
            }
            tables.push(bits);
            return;
        }
        let s = order[pos];
        if s == 0 {
            win[0] = false;
            assign(pos + 1, order, weakenings, win, full, tables);
            return;
        }
        let forced = weakenings(s).iter().any(|&t| win[t as usize]);
        win[s as usize] = true;
        assign(pos + 1, order, weakenings, win, full, tables);
        // The grand coalition must win; everything else may also lose.
        if !forced && s != full {
            win[s as usize] = false;
            assign(pos + 1, order, weakenings, win, full, tables);
            win[s as usize] = true;
        }
    }
    assign(0, &order, &weakenings, &mut win, full, &mut tables);

    // Weed out non-weighted tables and tables with a dummy weakest voter,
    // then canonicalize survivors; candidates are independent.
    let canonical: Vec<Option<IntegerRepresentation>> = par::map_vec(tables, |bits| {
        canonical_weighted(bits, m).expect("exact arithmetic cannot fail here")
    });
    let mut out: Vec<IntegerRepresentation> = canonical.into_iter().flatten().collect();
    out.sort_by(|a, b| (&a.weights, a.quota).cmp(&(&b.weights, b.quota)));
    Ok(out)
}

/// LP separation test for one winning table; returns the canonical
/// minimum-sum representation when the table is weighted and its weakest
/// voter is not a dummy.
fn canonical_weighted(bits: u64, m: usize) -> Result<Option<IntegerRepresentation>> {
    let winning = |s: u32| bits >> s & 1 == 1;
    let full: u32 = ((1u64 << m) - 1) as u32;
    let mut minimal_winning = Vec::new();
    let mut maximal_losing = Vec::new();
    for s in 0..=full {
        if winning(s) {
            if (0..m).all(|i| s >> i & 1 == 0 || !winning(s & !(1 << i))) {
                minimal_winning.push(s);
            }
        } else if (0..m).all(|i| s >> i & 1 == 1 || winning(s | 1 << i)) {
            maximal_losing.push(s);
        }
    }
    // A dummy weakest voter means this is a padded smaller game.
    if !minimal_winning.iter().any(|s| s >> (m - 1) & 1 == 1) {
        return Ok(None);
    }

    // Feasibility: w(S) >= q on minimal winning, w(T) <= q-1 on maximal
    // losing, weights non-increasing, q >= 1. Variables w_0..w_{m-1}, q.
    use num_traits::One;
    let mut constraints = Vec::new();
    let row = |mask: u32| -> Vec<Rat> {
        let mut coeffs = vec![Rat::zero(); m + 1];
        for i in 0..m {
            if mask >> i & 1 == 1 {
                coeffs[i] = Rat::one();
            }
        }
        coeffs[m] = -Rat::one();
        coeffs
    };
    for &s in &minimal_winning {
        constraints.push(lp::Constraint::ge(row(s), Rat::zero()));
    }
    for &t in &maximal_losing {
        constraints.push(lp::Constraint::le(row(t), -Rat::one()));
    }
    for i in 0..m - 1 {
        let mut coeffs = vec![Rat::zero(); m + 1];
        coeffs[i] = Rat::one();
        coeffs[i + 1] = -Rat::one();
        constraints.push(lp::Constraint::ge(coeffs, Rat::zero()));
    }
    let mut q_row = vec![Rat::zero(); m + 1];
    q_row[m] = Rat::one();
    constraints.push(lp::Constraint::ge(q_row, Rat::one()));
    let mut objective = vec![Rat::one(); m + 1];
    objective[m] = Rat::zero();
    let problem = lp::Lp {
        maximize: false,
        objective,
        constraints,
        free: vec![false; m + 1],
    };
    let point = match lp::solve(&problem)? {
        LpOutcome::Optimal { point, .. } => point,
        LpOutcome::Infeasible => return Ok(None),
        LpOutcome::Unbounded => {
            return Err(Error::Internal("bounded-below LP reported unbounded".into()))
        }
    };
    // Clear denominators: scaling keeps every constraint (the losing gap
    // only widens), giving an integer game with the same table.
    let scale: BigInt = point
        .iter()
        .fold(BigInt::from(1), |acc, r| num_integer::lcm(acc, r.denom().clone()));
    let scale = Rat::from_integer(scale);
    let weights: Vec<Rat> = point[..m].iter().map(|w| w * &scale).collect();
    let quota = &point[m] * &scale;
    let game = WeightedGame::new(quota, weights)?;
    let solution = msri(&game, false)?;
    debug_assert_eq!(solution.representations.len(), 1, "unique below eight voters");
    Ok(Some(solution.representations[0].clone()))
}

/// Counts integer weight vectors `w >= 0` with the given total that are
/// feasible for the game; with `include_quota` each vector counts once per
/// admissible integer quota. The average is the exact mean vector divided
/// by the total.
pub fn integer_representation_census(
    game: &WeightedGame,
    total: u64,
    include_quota: bool,
) -> Result<CensusResult> {
    let n = game.n();
    if (total as u128) < n as u128 {
        return Err(Error::Invalid(format!(
            "total {total} is below the voter count {n}"
        )));
    }
    if total > CENSUS_TOTAL_CAP {
        return Err(Error::CapExceeded(format!(
            "census total {total} exceeds the {CENSUS_TOTAL_CAP} loop budget"
        )));
    }
    let f = game.frontiers()?;
    let winning: Vec<u32> = f.minimal_winning.iter().map(|c| c.0).collect();
    let losing: Vec<u32> = f.maximal_losing.iter().map(|c| c.0).collect();

    #[derive(Clone)]
    struct Acc {
        count: u128,
        sums: Vec<u128>,
    }
    let leaf = |w: &[u64], acc: &mut Acc| {
        let sum = |mask: u32| -> u64 {
            w.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| *v)
                .sum()
        };
        let min_win = winning.iter().map(|&s| sum(s)).min().unwrap_or(u64::MAX);
        let max_lose = losing.iter().map(|&t| sum(t)).max().unwrap_or(0);
        if min_win <= max_lose {
            return;
        }
        let multiplicity = if include_quota {
            (min_win - max_lose) as u128
        } else {
            1
        };
        acc.count += multiplicity;
        for (s, &v) in acc.sums.iter_mut().zip(w) {
            *s += multiplicity * v as u128;
        }
    };
    fn scan(
        w: &mut Vec<u64>,
        pos: usize,
        remaining: u64,
        leaf: &impl Fn(&[u64], &mut Acc),
        acc: &mut Acc,
    ) {
        if pos == w.len() - 1 {
            w[pos] = remaining;
            leaf(w, acc);
            return;
        }
        for v in 0..=remaining {
            w[pos] = v;
            scan(w, pos + 1, remaining - v, leaf, acc);
        }
    }

    let empty = Acc {
        count: 0,
        sums: vec![0; n],
    };
    let acc = if n == 1 {
        let mut acc = empty;
        leaf(&[total], &mut acc);
        acc
    } else {
        // Branches over the first weight are independent.
        let parts = par::map_range(total as usize + 1, |w0| {
            let mut acc = Acc {
                count: 0,
                sums: vec![0; n],
            };
            let mut w = vec![0u64; n];
            w[0] = w0 as u64;
            scan(&mut w, 1, total - w0 as u64, &leaf, &mut acc);
            acc
        });
        parts.into_iter().fold(empty, |mut a, b| {
            a.count += b.count;
            for (s, t) in a.sums.iter_mut().zip(&b.sums) {
                *s += t;
            }
            a
        })
    };

    let count = BigInt::from(acc.count);
    let average = if acc.count == 0 {
        None
    } else {
        let denom = BigInt::from(acc.count) * BigInt::from(total);
        Some(
            acc.sums
                .iter()
                .map(|&s| Rat::new(BigInt::from(s), denom.clone()))
                .collect(),
        )
    };
    Ok(CensusResult { count, average })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{ratio, to_decimal};

    fn texts(catalog: &GameCatalog) -> Vec<String> {
        catalog.games.iter().map(|g| g.to_text()).collect()
    }

    #[test]
    fn one_voter_catalog() {
        let catalog = enumerate_weighted_games(1).unwrap();
        assert_eq!(texts(&catalog), vec!["[1;1]"]);
    }

    #[test]
    fn two_voter_catalog() {
        let catalog = enumerate_weighted_games(2).unwrap();
        let mut got = texts(&catalog);
        got.sort();
        let mut want = vec!["[1;1]", "[1;1,0]", "[1;1,1]", "[2;1,1]"];
        want.sort_unstable();
        assert_eq!(got, want);
    }

    #[test]
    fn three_voter_catalog_lists_all_twelve_games() {
        let catalog = enumerate_weighted_games(3).unwrap();
        let mut got = texts(&catalog);
        got.sort();
        let mut want = vec![
            "[1;1]",
            "[1;1,0]",
            "[1;1,1]",
            "[2;1,1]",
            "[1;1,0,0]",
            "[1;1,1,0]",
            "[2;1,1,0]",
            "[1;1,1,1]",
            "[2;1,1,1]",
            "[3;1,1,1]",
            "[3;2,1,1]",
            "[2;2,1,1]",
        ];
        want.sort_unstable();
        assert_eq!(got, want);
    }

    #[test]
    fn canonical_representations_round_trip() {
        let catalog = enumerate_weighted_games(4).unwrap();
        assert_eq!(catalog.games.len(), 4 + 3 * 2 + 2 * 5 + 17);
        for game in &catalog.games {
            let again = msri(game, false).unwrap();
            assert_eq!(again.representations.len(), 1);
            assert_eq!(
                representation_game(&again.representations[0])
                    .unwrap()
                    .to_text(),
                game.to_text()
            );
        }
    }

    #[test]
    fn catalog_is_closed_under_duality() {
        let catalog = enumerate_weighted_games(4).unwrap();
        let have: std::collections::BTreeSet<String> =
            texts(&catalog).into_iter().collect();
        for game in &catalog.games {
            let dual = game.dual().unwrap();
            let canonical = msri(&dual, false).unwrap();
            let text = representation_game(&canonical.representations[0])
                .unwrap()
                .to_text();
            assert!(have.contains(&text), "dual {text} missing from catalog");
        }
    }

    #[test]
    fn census_counts_match_published_values() {
        let game = WeightedGame::parse("[3;2,1,1]").unwrap();
        let result = integer_representation_census(&game, 100, false).unwrap();
        assert_eq!(result.count, BigInt::from(1601));
        let avg = result.average.unwrap();
        let rendered: Vec<String> = avg.iter().map(|r| to_decimal(r, 6)).collect();
        assert_eq!(rendered, vec!["0.608832", "0.195584", "0.195584"]);

        let big = integer_representation_census(&game, 1000, false).unwrap();
        assert_eq!(big.count, BigInt::from(166001));
    }

    #[test]
    fn symmetric_game_count_matches_published_value() {
        let game = WeightedGame::parse("[2;1,1,1]").unwrap();
        let result = integer_representation_census(&game, 100, false).unwrap();
        assert_eq!(result.count, BigInt::from(1176));
        let avg = result.average.unwrap();
        assert_eq!(avg, vec![ratio(1, 3), ratio(1, 3), ratio(1, 3)]);
    }

    #[test]
    fn quota_weighting_counts_pairs() {
        let game = WeightedGame::parse("[1;1]").unwrap();
        let plain = integer_representation_census(&game, 5, false).unwrap();
        assert_eq!(plain.count, BigInt::from(1));
        // w = (5) admits q in 1..=5.
        let pairs = integer_representation_census(&game, 5, true).unwrap();
        assert_eq!(pairs.count, BigInt::from(5));
        assert_eq!(pairs.average.unwrap(), vec![ratio(1, 1)]);
    }

    #[test]
    fn census_average_approaches_exact_index() {
        let game = WeightedGame::parse("[3;2,1,1]").unwrap();
        let exact = [ratio(11, 18), ratio(7, 36), ratio(7, 36)];
        let gap = |total: u64| -> Rat {
            let avg = integer_representation_census(&game, total, false)
                .unwrap()
                .average
                .unwrap();
            avg.iter()
                .zip(&exact)
                .map(|(a, e)| {
                    let d = a - e;
                    if d < Rat::zero() {
                        -d
                    } else {
                        d
                    }
                })
                .max()
                .unwrap()
        };
        assert!(gap(1000) < gap(100));
    }

    #[test]
    fn infeasible_total_yields_empty_census() {
        // No vector of total 3 separates the frontiers of [3;2,1,1].
        let game = WeightedGame::parse("[3;2,1,1]").unwrap();
        let result = integer_representation_census(&game, 3, false).unwrap();
        assert_eq!(result.count, BigInt::zero());
        assert!(result.average.is_none());
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(
            enumerate_weighted_games(7),
            Err(Error::CapExceeded(_))
        ));
        assert!(matches!(enumerate_weighted_games(0), Err(Error::Invalid(_))));
        let game = WeightedGame::parse("[3;2,1,1]").unwrap();
        assert!(matches!(
            integer_representation_census(&game, 2, false),
            Err(Error::Invalid(_))
        ));
        assert!(matches!(
            integer_representation_census(&game, 10_001, false),
            Err(Error::CapExceeded(_))
        ));
    }
}
