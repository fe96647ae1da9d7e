//! Seat apportionment and inverse design of a game from a target power
//! distribution.
//!
//! Two allocation routes: the D'Hondt highest-averages method on raw votes,
//! and proportional rounding of an exact power vector. The inverse problem
//! fixes the target as the weight vector and grid-searches the quota.

use num_traits::{One, Zero};

use crate::game::WeightedGame;
use crate::indices::{power_index, IndexKind};
use crate::par;
use crate::rational::{is_normalized, round_half_up, Rat};
use crate::{Error, Result};

/// A seat allocation along with the game it implies.
#[derive(Clone, Debug)]
pub struct SeatAllocation {
    pub labels: Vec<String>,
    pub votes: Vec<Rat>,
    pub seats: Vec<u64>,
    pub house: u64,
    /// Quota of the implied voting game (simple majority of the house for
    /// D'Hondt, the source game's quota for index-proportional seats).
    pub quota: Option<Rat>,
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("P{i}")).collect()
}

/// D'Hondt highest-averages apportionment. Ties go to the party with more
/// raw votes, then to the lower index.
pub fn dhondt(votes: &[u64], house: u64) -> Result<SeatAllocation> {
    if votes.is_empty() {
        return Err(Error::Invalid("no parties to seat".into()));
    }
    if house == 0 {
        return Err(Error::Invalid("house must hold at least one seat".into()));
    }
    if votes.contains(&0) {
        return Err(Error::Invalid("every party needs a positive vote count".into()));
    }
    let mut seats = vec![0u64; votes.len()];
    for _ in 0..house {
        // Next seat goes to the party with the highest votes/(seats+1).
        let mut best = 0usize;
        for i in 1..votes.len() {
            let lhs = votes[i] as u128 * (seats[best] + 1) as u128;
            let rhs = votes[best] as u128 * (seats[i] + 1) as u128;
            if lhs > rhs || (lhs == rhs && votes[i] > votes[best]) {
                best = i;
            }
        }
        seats[best] += 1;
    }
    let majority = Rat::from_integer((house / 2 + 1).into());
    Ok(SeatAllocation {
        labels: default_labels(votes.len()),
        votes: votes
            .iter()
            .map(|&v| Rat::from_integer(v.into()))
            .collect(),
        seats,
        house,
        quota: Some(majority),
    })
}

/// Distributes `house` seats proportionally to an exact power index,
/// rounding each share half up. Without `adjust` the seat total is reported
/// as rounded, even when it misses the house size; with `adjust` the
/// difference is charged to the most powerful party, whose margin absorbs
/// it without changing the index.
pub fn index_seats(
    game: &WeightedGame,
    kind: IndexKind,
    house: u64,
    adjust: bool,
) -> Result<SeatAllocation> {
    if house == 0 {
        return Err(Error::Invalid("house must hold at least one seat".into()));
    }
    let power = power_index(game, kind)?;
    let house_rat = Rat::from_integer(house.into());
    let mut seats: Vec<i128> = power
        .entries
        .iter()
        .map(|p| {
            let raw = p * &house_rat;
            i128::try_from(round_half_up(&raw)).expect("seat counts are small")
        })
        .collect();
    if adjust {
        let total: i128 = seats.iter().sum();
        let largest = power
            .entries
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .map(|(i, _)| i)
            .expect("at least one voter");
        seats[largest] += house as i128 - total;
        if seats[largest] < 0 {
            return Err(Error::Invalid(
                "house too small for a largest-party correction".into(),
            ));
        }
    }
    Ok(SeatAllocation {
        labels: default_labels(game.n()),
        votes: game.weights().to_vec(),
        seats: seats.iter().map(|&s| s as u64).collect(),
        house,
        quota: Some(game.quota().clone()),
    })
}

/// Result of the quota grid search.
#[derive(Clone, Debug)]
pub struct InverseDesign {
    pub quota: Rat,
    pub game: WeightedGame,
    /// Sum of squared deviations between the target and the game's index.
    pub objective: Rat,
}

/// Designs a weighted game whose power distribution approximates `target`:
/// the target itself becomes the weight vector, and the quota is scanned
/// over the grid `k * step` inside (max single weight, 1], so every voter
/// alone loses. Returns the grid point with the smallest sum of squared
/// deviations; ties go to the smaller quota.
pub fn inverse_design(
    target: &[Rat],
    kind: IndexKind,
    step: &Rat,
) -> Result<InverseDesign> {
    if target.is_empty() {
        return Err(Error::Invalid("target distribution is empty".into()));
    }
    if !is_normalized(target) {
        return Err(Error::Invalid(
            "target entries must be non-negative and sum to one".into(),
        ));
    }
    if step <= &Rat::zero() || step > &Rat::one() {
        return Err(Error::Invalid("grid step must lie in (0, 1]".into()));
    }
    let max_weight = target.iter().max().expect("non-empty target");
    // Smallest k with k*step > max_weight, largest with k*step <= 1.
    let lo = (max_weight / step).floor().to_integer() + 1u8;
    let hi = (Rat::one() / step).floor().to_integer();
    let lo = u64::try_from(lo).map_err(|_| Error::Invalid("grid start overflows".into()))?;
    let hi = u64::try_from(hi).map_err(|_| Error::CapExceeded("grid too fine".into()))?;
    if lo > hi {
        return Err(Error::Invalid(
            "no valid game on the grid: every candidate quota is above one".into(),
        ));
    }

    let candidates: Vec<u64> = (lo..=hi).collect();
    let evaluated: Vec<Result<(Rat, WeightedGame, Rat)>> = par::map_vec(candidates, |k| {
        let quota = Rat::from_integer(k.into()) * step;
        let game = WeightedGame::new(quota.clone(), target.to_vec())?;
        let power = power_index(&game, kind)?;
        let objective: Rat = power
            .entries
            .iter()
            .zip(target)
            .map(|(p, t)| {
                let d = p - t;
                &d * &d
            })
            .sum();
        Ok((quota, game, objective))
    });

    let mut best: Option<(Rat, WeightedGame, Rat)> = None;
    for item in evaluated {
        let (quota, game, objective) = item?;
        let better = match &best {
            None => true,
            Some((_, _, obj)) => objective < *obj,
        };
        if better {
            best = Some((quota, game, objective));
        }
    }
    let (quota, game, objective) =
        best.ok_or_else(|| Error::Invalid("no valid game on the grid".into()))?;
    Ok(InverseDesign {
        quota,
        game,
        objective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio, to_decimal};

    const AUSTRIA_VOTES: [u64; 6] = [1_258_605, 1_125_876, 962_313, 582_657, 268_679, 232_946];

    #[test]
    fn dhondt_reproduces_austrian_parliament() {
        let allocation = dhondt(&AUSTRIA_VOTES, 183).unwrap();
        assert_eq!(allocation.seats, vec![52, 47, 40, 24, 11, 9]);
        assert_eq!(allocation.seats.iter().sum::<u64>(), 183);
        assert_eq!(allocation.quota, Some(rat(92)));
    }

    #[test]
    fn dhondt_is_scale_invariant() {
        let scaled: Vec<u64> = AUSTRIA_VOTES.iter().map(|v| v * 7).collect();
        let allocation = dhondt(&scaled, 183).unwrap();
        assert_eq!(allocation.seats, vec![52, 47, 40, 24, 11, 9]);
    }

    #[test]
    fn dhondt_edge_cases() {
        assert_eq!(dhondt(&[1234], 9).unwrap().seats, vec![9]);
        assert_eq!(dhondt(&[100, 100], 4).unwrap().seats, vec![2, 2]);
        assert!(matches!(dhondt(&[10, 0], 4), Err(Error::Invalid(_))));
    }

    #[test]
    fn popular_votes_and_seats_share_a_power_distribution() {
        let by_votes = WeightedGame::new(
            rat(2_215_538),
            AUSTRIA_VOTES.iter().map(|&v| rat(v as i64)).collect(),
        )
        .unwrap();
        let by_seats = WeightedGame::parse("[92;52,47,40,24,11,9]").unwrap();
        let a = power_index(&by_votes, IndexKind::ShapleyShubik).unwrap();
        let b = power_index(&by_seats, IndexKind::ShapleyShubik).unwrap();
        assert_eq!(a.entries, b.entries);
        let rendered: Vec<String> = b.entries.iter().map(|p| to_decimal(p, 3)).collect();
        assert_eq!(
            rendered,
            vec!["0.367", "0.267", "0.267", "0.033", "0.033", "0.033"]
        );
    }

    #[test]
    fn shapley_shubik_seats_match_published_allocation() {
        let game = WeightedGame::parse("[92;52,47,40,24,11,9]").unwrap();
        let allocation = index_seats(&game, IndexKind::ShapleyShubik, 183, false).unwrap();
        assert_eq!(allocation.seats, vec![67, 49, 49, 6, 6, 6]);
        assert_eq!(allocation.seats.iter().sum::<u64>(), 183);
    }

    #[test]
    fn average_weight_seats_overshoot_by_one_and_adjust() {
        let game = WeightedGame::parse("[92;52,47,40,24,11,9]").unwrap();
        let plain = index_seats(&game, IndexKind::Awi, 183, false).unwrap();
        assert_eq!(plain.seats, vec![63, 44, 44, 11, 11, 11]);
        assert_eq!(plain.seats.iter().sum::<u64>(), 184);

        let adjusted = index_seats(&game, IndexKind::Awi, 183, true).unwrap();
        assert_eq!(adjusted.seats, vec![62, 44, 44, 11, 11, 11]);
        assert_eq!(adjusted.seats.iter().sum::<u64>(), 183);
    }

    #[test]
    fn dictator_takes_the_whole_house() {
        let game = WeightedGame::parse("[3;4,1,1]").unwrap();
        let allocation = index_seats(&game, IndexKind::Banzhaf, 25, false).unwrap();
        assert_eq!(allocation.seats, vec![25, 0, 0]);
    }

    #[test]
    fn symmetric_target_designs_a_pair_rule() {
        let target = vec![ratio(1, 3), ratio(1, 3), ratio(1, 3), Rat::zero()];
        let design = inverse_design(&target, IndexKind::Awi, &ratio(1, 3)).unwrap();
        assert_eq!(design.quota, ratio(2, 3));
        assert!(design.objective.is_zero());
    }

    #[test]
    fn target_from_a_known_game_recovers_its_winning_sets() {
        let source = WeightedGame::parse("[3;2,1,1]").unwrap();
        let target = power_index(&source, IndexKind::Awi).unwrap().entries;
        let design = inverse_design(&target, IndexKind::Awi, &ratio(1, 100)).unwrap();
        assert!(design.objective.is_zero());
        assert_eq!(
            design.game.frontiers().unwrap().minimal_winning,
            source.frontiers().unwrap().minimal_winning
        );
    }

    #[test]
    fn published_five_voter_row_is_not_beaten_by_its_own_game() {
        let target = vec![
            ratio(300, 1000),
            ratio(198, 1000),
            ratio(198, 1000),
            ratio(198, 1000),
            ratio(106, 1000),
        ];
        let design = inverse_design(&target, IndexKind::Awi, &ratio(1, 100)).unwrap();
        let reference = WeightedGame::parse("[5;3,2,2,2,1]").unwrap();
        let power = power_index(&reference, IndexKind::Awi).unwrap();
        let reference_ssd: Rat = power
            .entries
            .iter()
            .zip(&target)
            .map(|(p, t)| {
                let d = p - t;
                &d * &d
            })
            .sum();
        assert!(design.objective <= reference_ssd);
    }

    #[test]
    fn dictator_target_has_no_grid() {
        let target = vec![Rat::one(), Rat::zero()];
        assert!(matches!(
            inverse_design(&target, IndexKind::Awi, &ratio(1, 10)),
            Err(Error::Invalid(_))
        ));
    }
}
