//! Paradox audits (bloc, donation, added blocker, bicameral meet) and the
//! pairwise index distance study.
//!
//! Each audit builds the perturbed game, evaluates one index on both games
//! exactly, and derives the paradox flag from the stored vectors, so a
//! report can always be re-checked from its own fields.

use num_traits::Zero;

use crate::census::enumerate_weighted_games;
use crate::game::{Coalition, SimpleGame, WeightedGame};
use crate::indices::{power_index, IndexKind, PowerVector};
use crate::lp::{self, LpOutcome};
use crate::par;
use crate::rational::{to_f64, Rat};
use crate::{Error, Result};

/// Which perturbation an audit applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditKind {
    Bloc,
    Donation,
    AddedBlocker,
}

/// Outcome of one audit under one index.
#[derive(Clone, Debug)]
pub struct ParadoxReport {
    pub audit: AuditKind,
    pub index: IndexKind,
    pub before: WeightedGame,
    pub after: WeightedGame,
    pub power_before: PowerVector,
    pub power_after: PowerVector,
    pub paradox: bool,
    /// Bloc audits: bloc power minus the members' combined prior power
    /// (negative means the merged bloc holds less than its parts did).
    pub neutrality_gap: Option<Rat>,
    /// Added-blocker audits: incumbent power ratio before and after.
    pub ratio_before: Option<Rat>,
    pub ratio_after: Option<Rat>,
}

/// Merges voter `j` into voter `i` (weights added, `j` kept as a
/// zero-weight dummy so positions stay aligned) and checks whether the bloc
/// commands at least the power either member had alone.
pub fn bloc_audit(
    game: &WeightedGame,
    i: usize,
    j: usize,
    index: IndexKind,
) -> Result<ParadoxReport> {
    let n = game.n();
    if i >= n || j >= n || i == j {
        return Err(Error::Invalid(format!(
            "bloc audit needs two distinct voters below {n}, got {i} and {j}"
        )));
    }
    let mut weights = game.weights().to_vec();
    weights[i] = &weights[i] + &weights[j];
    weights[j] = Rat::zero();
    let after = WeightedGame::new(game.quota().clone(), weights)?;

    let power_before = power_index(game, index)?;
    let power_after = power_index(&after, index)?;
    let solo = power_before.entries[i].clone().max(power_before.entries[j].clone());
    let bloc = power_after.entries[i].clone();
    let paradox = bloc < solo;
    let gap = &bloc - &(&power_before.entries[i] + &power_before.entries[j]);
    Ok(ParadoxReport {
        audit: AuditKind::Bloc,
        index,
        before: game.clone(),
        after,
        power_before,
        power_after,
        paradox,
        neutrality_gap: Some(gap),
        ratio_before: None,
        ratio_after: None,
    })
}

/// Transfers `amount` of weight from `donor` to `recipient` and checks
/// whether the donor's power strictly increases.
pub fn donation_audit(
    game: &WeightedGame,
    donor: usize,
    recipient: usize,
    amount: &Rat,
    index: IndexKind,
) -> Result<ParadoxReport> {
    let n = game.n();
    if donor >= n || recipient >= n || donor == recipient {
        return Err(Error::Invalid(format!(
            "donation audit needs two distinct voters below {n}, got {donor} and {recipient}"
        )));
    }
    if amount < &Rat::zero() || amount > &game.weights()[donor] {
        return Err(Error::Invalid(
            "donation amount must lie between zero and the donor's weight".into(),
        ));
    }
    let mut weights = game.weights().to_vec();
    weights[donor] = &weights[donor] - amount;
    weights[recipient] = &weights[recipient] + amount;
    let after = WeightedGame::new(game.quota().clone(), weights)?;

    let power_before = power_index(game, index)?;
    let power_after = power_index(&after, index)?;
    let paradox = power_after.entries[donor] > power_before.entries[donor];
    Ok(ParadoxReport {
        audit: AuditKind::Donation,
        index,
        before: game.clone(),
        after,
        power_before,
        power_after,
        paradox,
        neutrality_gap: None,
        ratio_before: None,
        ratio_after: None,
    })
}

/// Bicameral meet of two games on disjoint voter sets: coalitions win when
/// their parts win in both chambers. Returns the meet and a weighted
/// representation of it; errs when the meet is not weighted.
pub fn bicameral_meet(
    first: &WeightedGame,
    second: &WeightedGame,
) -> Result<(SimpleGame, WeightedGame)> {
    let n1 = first.n();
    let n2 = second.n();
    let n = n1 + n2;
    let f1 = first.frontiers()?;
    let f2 = second.frontiers()?;
    // Unions of minimal winning coalitions are exactly the meet's minimal
    // winning coalitions: removing any member breaks one chamber.
    let mut minimal = Vec::with_capacity(f1.minimal_winning.len() * f2.minimal_winning.len());
    for a in &f1.minimal_winning {
        for b in &f2.minimal_winning {
            minimal.push(Coalition(a.0 | b.0 << n1));
        }
    }
    let meet = SimpleGame::new(n, minimal)?;
    let weighted = weighted_representation(&meet)?.ok_or_else(|| {
        Error::Invalid("bicameral meet is not a weighted game; indices are undefined".into())
    })?;
    Ok((meet, weighted))
}

/// Exact-LP search for a weighted representation of a simple game.
fn weighted_representation(game: &SimpleGame) -> Result<Option<WeightedGame>> {
    use num_traits::{One, Zero};
    let n = game.n();
    let f = game.frontiers();
    let row = |mask: u32| -> Vec<Rat> {
        let mut coeffs = vec![Rat::zero(); n + 1];
        for i in 0..n {
            if mask >> i & 1 == 1 {
                coeffs[i] = Rat::one();
            }
        }
        coeffs[n] = -Rat::one();
        coeffs
    };
    let mut constraints = Vec::new();
    for s in &f.minimal_winning {
        constraints.push(lp::Constraint::ge(row(s.0), Rat::zero()));
    }
    for t in &f.maximal_losing {
        constraints.push(lp::Constraint::le(row(t.0), -Rat::one()));
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
    let point = match lp::solve(&problem)? {
        LpOutcome::Optimal { point, .. } => point,
        LpOutcome::Infeasible => return Ok(None),
        LpOutcome::Unbounded => {
            return Err(Error::Internal("bounded-below LP reported unbounded".into()))
        }
    };
    let scale: num_bigint::BigInt = point
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, r| {
            num_integer::lcm(acc, r.denom().clone())
        });
    let scale = Rat::from_integer(scale);
    let weights: Vec<Rat> = point[..n].iter().map(|w| w * &scale).collect();
    let quota = &point[n] * &scale;
    Ok(Some(WeightedGame::new(quota, weights)?))
}

/// Joins `[q; w]` with the one-voter game `[b; b]` into `[q+b; w, b]` (the
/// bicameral meet with a blocker) and checks whether the power ratio of two
/// incumbent voters is preserved.
pub fn added_blocker_audit(
    game: &WeightedGame,
    blocker: &Rat,
    i: usize,
    j: usize,
    index: IndexKind,
) -> Result<ParadoxReport> {
    let n = game.n();
    if i >= n || j >= n || i == j {
        return Err(Error::Invalid(format!(
            "added-blocker audit needs two distinct incumbents below {n}, got {i} and {j}"
        )));
    }
    if blocker <= &Rat::zero() {
        return Err(Error::Invalid("blocker weight must be positive".into()));
    }
    let mut weights = game.weights().to_vec();
    weights.push(blocker.clone());
    let after = WeightedGame::new(game.quota() + blocker, weights)?;

    let power_before = power_index(game, index)?;
    let power_after = power_index(&after, index)?;
    let ratio = |v: &PowerVector| -> Result<Rat> {
        if v.entries[j].is_zero() {
            return Err(Error::Invalid(format!(
                "voter {j} has zero power; the ratio is undefined"
            )));
        }
        Ok(&v.entries[i] / &v.entries[j])
    };
    let ratio_before = ratio(&power_before)?;
    let ratio_after = ratio(&power_after)?;
    let paradox = ratio_before != ratio_after;
    Ok(ParadoxReport {
        audit: AuditKind::AddedBlocker,
        index,
        before: game.clone(),
        after,
        power_before,
        power_after,
        paradox,
        neutrality_gap: None,
        ratio_before: Some(ratio_before),
        ratio_after: Some(ratio_after),
    })
}

/// One pairwise distance between two indices on one catalog game.
#[derive(Clone, Debug)]
pub struct DistanceRow {
    pub n: usize,
    pub game: String,
    pub pair: (IndexKind, IndexKind),
    pub distance: f64,
}

/// Distance quantiles over all games with up to `n` voters for one pair.
#[derive(Clone, Debug)]
pub struct QuantileRow {
    pub n: usize,
    pub pair: (IndexKind, IndexKind),
    pub q01: f64,
    pub q25: f64,
    pub q50: f64,
    pub q75: f64,
    pub q99: f64,
}

/// All pairwise index distances over a game catalog plus cumulative
/// quantile summaries.
#[derive(Clone, Debug)]
pub struct DistanceTable {
    pub rows: Vec<DistanceRow>,
    pub summary: Vec<QuantileRow>,
}

fn pair_label(pair: (IndexKind, IndexKind)) -> String {
    format!("{}-{}", pair.0.name(), pair.1.name())
}

impl DistanceTable {
    /// One line per (game, pair): `n,game,pair,distance`.
    pub fn rows_csv(&self) -> String {
        let mut out = String::from("n,game,pair,distance\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{:.6}\n",
                r.n,
                r.game,
                pair_label(r.pair),
                r.distance
            ));
        }
        out
    }

    /// One line per (n, pair): `n,pair,q01,q25,q50,q75,q99`.
    pub fn summary_csv(&self) -> String {
        let mut out = String::from("n,pair,q01,q25,q50,q75,q99\n");
        for r in &self.summary {
            out.push_str(&format!(
                "{},{},{:.6},{:.6},{:.6},{:.6},{:.6}\n",
                r.n,
                pair_label(r.pair),
                r.q01,
                r.q25,
                r.q50,
                r.q75,
                r.q99
            ));
        }
        out
    }
}

/// Euclidean distances between the given indices for every game with up to
/// `n_max` voters, with quantile summaries accumulated per voter bound.
pub fn distance_study(n_max: usize, kinds: &[IndexKind]) -> Result<DistanceTable> {
    if kinds.len() < 2 {
        return Err(Error::Invalid("distance study needs at least two indices".into()));
    }
    let catalog = enumerate_weighted_games(n_max)?;
    let mut pairs: Vec<(IndexKind, IndexKind)> = Vec::new();
    for (a, &ka) in kinds.iter().enumerate() {
        for &kb in &kinds[a + 1..] {
            pairs.push((ka, kb));
        }
    }
    pairs.sort_by_key(|&p| pair_label(p));

    let per_game: Vec<Result<Vec<DistanceRow>>> = par::map_slice(&catalog.games, |game| {
        let vectors: Vec<PowerVector> = kinds
            .iter()
            .map(|&k| power_index(game, k))
            .collect::<Result<_>>()?;
        let find = |k: IndexKind| &vectors[kinds.iter().position(|&x| x == k).unwrap()];
        Ok(pairs
            .iter()
            .map(|&pair| {
                let (va, vb) = (find(pair.0), find(pair.1));
                let distance = va
                    .entries
                    .iter()
                    .zip(&vb.entries)
                    .map(|(a, b)| {
                        let d = to_f64(a) - to_f64(b);
                        d * d
                    })
                    .sum::<f64>()
                    .sqrt();
                DistanceRow {
                    n: game.n(),
                    game: game.to_text(),
                    pair,
                    distance,
                }
            })
            .collect())
    });
    let mut rows = Vec::new();
    for r in per_game {
        rows.extend(r?);
    }

    // Cumulative summaries mirror how the distances are usually plotted:
    // each bound covers all games with at most that many voters.
    let quantile = |sorted: &[f64], p: f64| -> f64 {
        let idx = ((sorted.len() - 1) as f64 * p).round() as usize;
        sorted[idx]
    };
    let mut summary = Vec::new();
    for bound in 1..=n_max {
        for &pair in &pairs {
            let mut values: Vec<f64> = rows
                .iter()
                .filter(|r| r.n <= bound && r.pair == pair)
                .map(|r| r.distance)
                .collect();
            values.sort_by(f64::total_cmp);
            summary.push(QuantileRow {
                n: bound,
                pair,
                q01: quantile(&values, 0.01),
                q25: quantile(&values, 0.25),
                q50: quantile(&values, 0.50),
                q75: quantile(&values, 0.75),
                q99: quantile(&values, 0.99),
            });
        }
    }
    Ok(DistanceTable { rows, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio, to_decimal};

    fn game(text: &str) -> WeightedGame {
        WeightedGame::parse(text).unwrap()
    }

    #[test]
    fn bloc_of_two_smallest_voters_under_exact_msr_index() {
        let g = game("[37;25,20,17,15,9,6,2,1]");
        let report = bloc_audit(&g, 6, 7, IndexKind::Msri).unwrap();
        assert!(report.paradox);
        assert_eq!(to_decimal(&report.power_before.entries[6], 4), "0.0328");
        assert_eq!(to_decimal(&report.power_after.entries[6], 4), "0.0303");
        assert_eq!(report.after.to_text(), "[37;25,20,17,15,9,6,3,0]");
    }

    #[test]
    fn classical_indices_dodge_the_bloc_paradox_here() {
        let g = game("[37;25,20,17,15,9,6,2,1]");
        let bzi = bloc_audit(&g, 6, 7, IndexKind::Banzhaf).unwrap();
        assert!(!bzi.paradox);
        assert_eq!(to_decimal(&bzi.power_before.entries[6], 4), "0.0240");
        assert_eq!(to_decimal(&bzi.power_after.entries[6], 4), "0.0291");
        let ssi = bloc_audit(&g, 6, 7, IndexKind::ShapleyShubik).unwrap();
        assert!(!ssi.paradox);
        assert_eq!(to_decimal(&ssi.power_before.entries[6], 4), "0.0202");
        assert_eq!(to_decimal(&ssi.power_after.entries[6], 4), "0.0262");
    }

    #[test]
    fn symmetric_bloc_shows_broken_neutrality_but_no_paradox() {
        let g = game("[3;1,1,1,1]");
        let report = bloc_audit(&g, 2, 3, IndexKind::Awti).unwrap();
        assert!(!report.paradox);
        assert_eq!(report.power_before.entries[2], ratio(1, 4));
        assert_eq!(report.power_after.entries[2], ratio(2, 3));
        // The bloc holds more than its members held together.
        assert_eq!(report.neutrality_gap, Some(ratio(1, 6)));
    }

    #[test]
    fn donation_helps_the_donor_under_average_indices() {
        let g = game("[13;9,4,3,2,1]");
        let awi = donation_audit(&g, 0, 1, &rat(1), IndexKind::Awi).unwrap();
        assert!(awi.paradox);
        assert_eq!(awi.after.to_text(), "[13;8,5,3,2,1]");
        assert_eq!(to_decimal(&awi.power_before.entries[0], 3), "0.518");
        assert_eq!(to_decimal(&awi.power_after.entries[0], 3), "0.535");

        let msri = donation_audit(&g, 0, 1, &rat(1), IndexKind::Msri).unwrap();
        assert!(msri.paradox);

        let ssi = donation_audit(&g, 0, 1, &rat(1), IndexKind::ShapleyShubik).unwrap();
        assert!(!ssi.paradox);
        assert_eq!(to_decimal(&ssi.power_before.entries[0], 3), "0.617");
        assert_eq!(to_decimal(&ssi.power_after.entries[0], 3), "0.583");

        let bzi = donation_audit(&g, 0, 1, &rat(1), IndexKind::Banzhaf).unwrap();
        assert!(!bzi.paradox);
    }

    #[test]
    fn zero_donation_changes_nothing() {
        let g = game("[13;9,4,3,2,1]");
        let report = donation_audit(&g, 0, 1, &Rat::zero(), IndexKind::Banzhaf).unwrap();
        assert!(!report.paradox);
        assert_eq!(report.power_before.entries, report.power_after.entries);
    }

    #[test]
    fn meet_with_a_dictator_chamber_matches_direct_join() {
        let (meet, weighted) = bicameral_meet(&game("[3;2,1,1]"), &game("[5;5]")).unwrap();
        assert_eq!(meet.n(), 4);
        let direct = game("[8;2,1,1,5]");
        assert_eq!(
            weighted.frontiers().unwrap().minimal_winning,
            direct.frontiers().unwrap().minimal_winning
        );
        assert_eq!(
            meet.frontiers().minimal_winning,
            direct.frontiers().unwrap().minimal_winning
        );
    }

    #[test]
    fn added_blocker_shifts_average_index_ratios() {
        let g = game("[3;2,1,1]");
        let awi = added_blocker_audit(&g, &rat(5), 0, 1, IndexKind::Awi).unwrap();
        assert!(awi.paradox);
        assert_eq!(awi.ratio_before, Some(ratio(22, 7)));
        assert_eq!(awi.ratio_after, Some(ratio(19, 5)));
        assert_eq!(awi.after.to_text(), "[8;2,1,1,5]");

        let bzi = added_blocker_audit(&g, &rat(5), 0, 1, IndexKind::Banzhaf).unwrap();
        assert!(!bzi.paradox);
        assert_eq!(bzi.ratio_before, Some(rat(3)));
        assert_eq!(bzi.ratio_after, Some(rat(3)));

        let msri = added_blocker_audit(&g, &rat(5), 0, 1, IndexKind::Msri).unwrap();
        assert!(!msri.paradox);
        assert_eq!(msri.ratio_before, Some(rat(2)));
        assert_eq!(msri.ratio_after, Some(rat(2)));
    }

    #[test]
    fn distance_rows_cover_catalog_pairs_exactly() {
        let kinds = [IndexKind::Banzhaf, IndexKind::ShapleyShubik, IndexKind::Awi];
        let table = distance_study(3, &kinds).unwrap();
        // 12 catalog games, 3 pairs each.
        assert_eq!(table.rows.len(), 36);
        assert_eq!(table.summary.len(), 9);

        let row = table
            .rows
            .iter()
            .find(|r| r.game == "[3;2,1,1]" && r.pair == (IndexKind::Banzhaf, IndexKind::ShapleyShubik))
            .unwrap();
        let expected = ((3.0f64 / 5.0 - 2.0 / 3.0).powi(2)
            + 2.0 * (1.0f64 / 5.0 - 1.0 / 6.0).powi(2))
        .sqrt();
        assert!((row.distance - expected).abs() < 1e-12);

        // Fully symmetric games collapse all indices onto one point.
        for r in table.rows.iter().filter(|r| r.game == "[2;1,1,1]") {
            assert_eq!(r.distance, 0.0);
        }

        let csv = table.rows_csv();
        assert!(csv.starts_with("n,game,pair,distance\n"));
        assert!(table.summary_csv().starts_with("n,pair,q01,q25,q50,q75,q99\n"));
    }
}
