//! Power indices: polytope centroids, Banzhaf, and Shapley-Shubik.
//!
//! The four average indices are centroids of the game's weight or
//! representation polytope, restricted to reveal dummies (and, for the type
//! variants, to equalize weights inside each equivalence class). Dummies are
//! stripped before the polytope is built and re-inserted as exact zeros,
//! which yields the same result as building the restricted polytope on the
//! full voter set. Banzhaf and Shapley-Shubik are computed from critical
//! swings over the full coalition table.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::game::WeightedGame;
use crate::polytope::{build_polytope, integrate, PolytopeKind, Restrictions};
use crate::rational::{format_rat, to_decimal, Rat};
use crate::{Error, Result};

/// Which power index a vector carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexKind {
    /// Average weight index: centroid of the dummy-revealing weight polytope.
    Awi,
    /// Average representation index: weight part of the centroid of the
    /// dummy-revealing representation polytope.
    Ari,
    /// Type-restricted average weight index.
    Awti,
    /// Type-restricted average representation index.
    Arti,
    /// Normalized critical-swing counts.
    Banzhaf,
    /// Pivotal-ordering shares.
    ShapleyShubik,
    /// Normalized average of all minimum-sum integer representations.
    Msri,
    /// Normalized average of all type-revealing minimum-sum representations.
    MsriTypeRevealing,
}

impl IndexKind {
    pub fn name(self) -> &'static str {
        match self {
            IndexKind::Awi => "AWI",
            IndexKind::Ari => "ARI",
            IndexKind::Awti => "AWTI",
            IndexKind::Arti => "ARTI",
            IndexKind::Banzhaf => "BZI",
            IndexKind::ShapleyShubik => "SSI",
            IndexKind::Msri => "MSRI",
            IndexKind::MsriTypeRevealing => "MSRI-T",
        }
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IndexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<IndexKind> {
        match s.to_ascii_lowercase().as_str() {
            "awi" => Ok(IndexKind::Awi),
            "ari" => Ok(IndexKind::Ari),
            "awti" => Ok(IndexKind::Awti),
            "arti" => Ok(IndexKind::Arti),
            "bzi" | "banzhaf" => Ok(IndexKind::Banzhaf),
            "ssi" | "shapley-shubik" => Ok(IndexKind::ShapleyShubik),
            "msri" => Ok(IndexKind::Msri),
            "msri-t" | "msri-type" => Ok(IndexKind::MsriTypeRevealing),
            other => Err(Error::Parse(format!("unknown index kind '{other}'"))),
        }
    }
}

/// Exact power distribution: non-negative rationals summing to one, with
/// dummies at exactly zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerVector {
    pub kind: IndexKind,
    pub entries: Vec<Rat>,
}

impl PowerVector {
    /// Wraps entries after checking the distribution invariants.
    pub(crate) fn checked(kind: IndexKind, entries: Vec<Rat>) -> Result<PowerVector> {
        if entries.iter().any(|e| e.is_negative()) {
            return Err(Error::Internal(format!("{kind} produced a negative entry")));
        }
        let sum: Rat = entries.iter().sum();
        if !sum.is_one() {
            return Err(Error::Internal(format!(
                "{kind} entries sum to {} instead of 1",
                format_rat(&sum)
            )));
        }
        Ok(PowerVector { kind, entries })
    }

    /// Entries rendered as fixed-point decimals, rounded half to even.
    pub fn decimals(&self, places: u32) -> Vec<String> {
        self.entries.iter().map(|e| to_decimal(e, places)).collect()
    }
}

/// Average quota and weights of the representation polytope; a valid
/// (non-strict) representation of the game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AverageRepresentation {
    pub quota_bar: Rat,
    pub weights_bar: Vec<Rat>,
}

/// Computes AWI, ARI, AWTI, or ARTI.
pub fn average_index(game: &WeightedGame, kind: IndexKind) -> Result<PowerVector> {
    let (representation, types) = match kind {
        IndexKind::Awi => (false, false),
        IndexKind::Ari => (true, false),
        IndexKind::Awti => (false, true),
        IndexKind::Arti => (true, true),
        other => {
            return Err(Error::Invalid(format!(
                "{other} is not an average index kind"
            )))
        }
    };
    let (entries, _) = average_core(game, representation, types)?;
    PowerVector::checked(kind, entries)
}

/// Average representation (quota and weights) behind ARI (`types = false`)
/// or ARTI (`types = true`).
pub fn average_representation(
    game: &WeightedGame,
    types: bool,
) -> Result<AverageRepresentation> {
    let (weights_bar, quota) = average_core(game, true, types)?;
    let quota_bar = quota.ok_or_else(|| {
        Error::Internal("representation polytope lost its quota coordinate".into())
    })?;
    Ok(AverageRepresentation { quota_bar, weights_bar })
}

/// Shared centroid path: strip dummies, build the restricted polytope on the
/// reduced game, integrate, and re-insert zeros.
fn average_core(
    game: &WeightedGame,
    representation: bool,
    types: bool,
) -> Result<(Vec<Rat>, Option<Rat>)> {
    let (reduced, keep) = game.dummy_reduce()?;
    let kind = if representation {
        PolytopeKind::Representation
    } else {
        PolytopeKind::Weight
    };
    let restrictions = Restrictions { dummy: false, types };
    let p = build_polytope(&reduced, kind, restrictions)?;
    let res = integrate(&p)?;
    let mut entries = vec![Rat::zero(); game.n()];
    for (reduced_idx, &voter) in keep.iter().enumerate() {
        entries[voter] = res.recovered.weights[reduced_idx].clone();
    }
    Ok((entries, res.recovered.quota))
}

/// Computes any supported power index, dispatching on the kind.
pub fn power_index(game: &WeightedGame, kind: IndexKind) -> Result<PowerVector> {
    match kind {
        IndexKind::Awi | IndexKind::Ari | IndexKind::Awti | IndexKind::Arti => {
            average_index(game, kind)
        }
        IndexKind::Banzhaf | IndexKind::ShapleyShubik => classical_index(game, kind),
        IndexKind::Msri => Ok(crate::msr::msri(game, false)?.normalized_average),
        IndexKind::MsriTypeRevealing => Ok(crate::msr::msri(game, true)?.normalized_average),
    }
}

/// Computes the Banzhaf or Shapley-Shubik index.
pub fn classical_index(game: &WeightedGame, kind: IndexKind) -> Result<PowerVector> {
    let n = game.n();
    let table = game.winning_table()?;
    // swings[i][s]: number of coalitions of size s in which voter i is
    // critical.
    let mut swings = vec![vec![0u64; n + 1]; n];
    for mask in 1u32..(1u32 << n) {
        if !table.get(mask) {
            continue;
        }
        let size = mask.count_ones() as usize;
        for i in 0..n {
            let bit = 1u32 << i;
            if mask & bit != 0 && !table.get(mask & !bit) {
                swings[i][size] += 1;
            }
        }
    }
    match kind {
        IndexKind::Banzhaf => {
            let eta: Vec<u64> = swings.iter().map(|row| row.iter().sum()).collect();
            let total: u64 = eta.iter().sum();
            if total == 0 {
                return Err(Error::Internal("no critical swings in a valid game".into()));
            }
            let total = Rat::from_integer(total.into());
            let entries = eta
                .iter()
                .map(|&e| Rat::from_integer(e.into()) / &total)
                .collect();
            PowerVector::checked(kind, entries)
        }
        IndexKind::ShapleyShubik => {
            // Pivot share of a swing in a size-s coalition: (s-1)!(n-s)!/n!.
            let factorial = |k: usize| -> BigInt {
                (1..=k).map(BigInt::from).product::<BigInt>().max(BigInt::one())
            };
            let n_fact = Rat::from_integer(factorial(n));
            let share: Vec<Rat> = (0..=n)
                .map(|s| {
                    if s == 0 {
                        Rat::zero()
                    } else {
                        Rat::from_integer(factorial(s - 1) * factorial(n - s)) / &n_fact
                    }
                })
                .collect();
            let entries = swings
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .map(|(s, &count)| Rat::from_integer(count.into()) * &share[s])
                        .sum()
                })
                .collect();
            PowerVector::checked(kind, entries)
        }
        other => Err(Error::Invalid(format!(
            "{other} is not a swing-based index kind"
        ))),
    }
}

/// JSON report for a computed index.
pub fn index_json(
    game: &WeightedGame,
    power: &PowerVector,
    quota_bar: Option<&Rat>,
    places: u32,
) -> serde_json::Value {
    let mut out = serde_json::json!({
        "game": game.to_text(),
        "index": power.kind.name(),
        "power": power.entries.iter().map(format_rat).collect::<Vec<_>>(),
        "decimal": power.decimals(places),
    });
    if let Some(q) = quota_bar {
        out["quota_bar"] = serde_json::Value::String(format_rat(q));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{is_feasible, is_representation};
    use crate::rational::{rat, ratio};

    fn game(text: &str) -> WeightedGame {
        WeightedGame::parse(text).unwrap()
    }

    #[test]
    fn average_indices_three_voter_example() {
        let g = game("[3;2,1,1]");
        let awi = average_index(&g, IndexKind::Awi).unwrap();
        assert_eq!(awi.entries, vec![ratio(11, 18), ratio(7, 36), ratio(7, 36)]);
        let ari = average_index(&g, IndexKind::Ari).unwrap();
        assert_eq!(ari.entries, vec![ratio(7, 12), ratio(5, 24), ratio(5, 24)]);
        let awti = average_index(&g, IndexKind::Awti).unwrap();
        assert_eq!(awti.entries, vec![ratio(2, 3), ratio(1, 6), ratio(1, 6)]);
        let arti = average_index(&g, IndexKind::Arti).unwrap();
        assert_eq!(arti.entries, vec![ratio(11, 18), ratio(7, 36), ratio(7, 36)]);
    }

    #[test]
    fn average_representation_is_a_representation() {
        let g = game("[3;2,1,1]");
        let rep = average_representation(&g, false).unwrap();
        // Quota frozen from integrating q over the representation polytope
        // by hand (split at q = 2/3).
        assert_eq!(rep.quota_bar, ratio(2, 3));
        assert_eq!(
            rep.weights_bar,
            vec![ratio(7, 12), ratio(5, 24), ratio(5, 24)]
        );
        assert!(is_representation(&g, &rep.quota_bar, &rep.weights_bar).unwrap());

        let rep = average_representation(&g, true).unwrap();
        assert_eq!(rep.quota_bar, ratio(13, 18));
        assert!(is_representation(&g, &rep.quota_bar, &rep.weights_bar).unwrap());
    }

    #[test]
    fn average_indices_match_published_decimals() {
        let g = game("[5;3,2,2,2,1]");
        let awi = average_index(&g, IndexKind::Awi).unwrap();
        assert_eq!(
            awi.decimals(3),
            vec!["0.300", "0.198", "0.198", "0.198", "0.104"]
        );
        let ari = average_index(&g, IndexKind::Ari).unwrap();
        assert_eq!(
            ari.decimals(3),
            vec!["0.300", "0.199", "0.199", "0.199", "0.103"]
        );
    }

    #[test]
    fn dummy_gets_zero_and_reduced_symmetry_shows() {
        let g = game("[51;47,46,5,2]");
        let awi = average_index(&g, IndexKind::Awi).unwrap();
        assert_eq!(
            awi.entries,
            vec![ratio(1, 3), ratio(1, 3), ratio(1, 3), rat(0)]
        );
    }

    #[test]
    fn restricted_polytope_path_matches_reduction_path() {
        for text in ["[51;47,46,5,2]", "[5;3,2,1,1]"] {
            let g = game(text);
            let p = build_polytope(&g, PolytopeKind::Weight, Restrictions::DUMMY).unwrap();
            let direct = integrate(&p).unwrap();
            let awi = average_index(&g, IndexKind::Awi).unwrap();
            assert_eq!(direct.recovered.weights, awi.entries, "{text}");
        }
    }

    #[test]
    fn equivalent_voters_share_power() {
        let g = game("[13;9,4,3,2,1]");
        for kind in [IndexKind::Awi, IndexKind::Ari, IndexKind::Awti, IndexKind::Arti] {
            let v = average_index(&g, kind).unwrap();
            assert_eq!(v.entries[3], v.entries[4], "{kind}");
        }
    }

    #[test]
    fn dual_game_has_same_average_power() {
        for text in ["[3;2,1,1]", "[13;9,4,3,2,1]"] {
            let g = game(text);
            let d = g.dual().unwrap();
            for kind in [IndexKind::Awi, IndexKind::Ari] {
                let a = average_index(&g, kind).unwrap();
                let b = average_index(&d, kind).unwrap();
                assert_eq!(a.entries, b.entries, "{text} {kind}");
            }
        }
    }

    #[test]
    fn classical_indices_match_published_values() {
        let g = game("[3;2,1,1]");
        let bzi = classical_index(&g, IndexKind::Banzhaf).unwrap();
        assert_eq!(bzi.entries, vec![ratio(3, 5), ratio(1, 5), ratio(1, 5)]);
        let ssi = classical_index(&g, IndexKind::ShapleyShubik).unwrap();
        assert_eq!(ssi.entries, vec![ratio(2, 3), ratio(1, 6), ratio(1, 6)]);

        let g = game("[3;2,1,1,1]");
        let ssi = classical_index(&g, IndexKind::ShapleyShubik).unwrap();
        assert_eq!(
            ssi.entries,
            vec![ratio(1, 2), ratio(1, 6), ratio(1, 6), ratio(1, 6)]
        );

        let g = game("[1;1,0]");
        let bzi = classical_index(&g, IndexKind::Banzhaf).unwrap();
        assert_eq!(bzi.entries, vec![rat(1), rat(0)]);
        let ssi = classical_index(&g, IndexKind::ShapleyShubik).unwrap();
        assert_eq!(ssi.entries, vec![rat(1), rat(0)]);
    }

    #[test]
    fn classical_indices_can_fail_feasibility() {
        // Swing-based indices are weight-compatible here ...
        let g = game("[3;2,1,1]");
        let bzi = classical_index(&g, IndexKind::Banzhaf).unwrap();
        assert!(is_feasible(&g, &bzi.entries).unwrap());
        // ... but not for this game, where both average indices still are.
        let g = game("[3;2,1,1,1]");
        let ssi = classical_index(&g, IndexKind::ShapleyShubik).unwrap();
        assert!(!is_feasible(&g, &ssi.entries).unwrap());
        let bzi = classical_index(&g, IndexKind::Banzhaf).unwrap();
        assert!(!is_feasible(&g, &bzi.entries).unwrap());
        let awi = average_index(&g, IndexKind::Awi).unwrap();
        assert!(is_feasible(&g, &awi.entries).unwrap());
    }

    #[test]
    fn kind_parsing_round_trips() {
        for kind in [
            IndexKind::Awi,
            IndexKind::Ari,
            IndexKind::Awti,
            IndexKind::Arti,
            IndexKind::Banzhaf,
            IndexKind::ShapleyShubik,
            IndexKind::Msri,
            IndexKind::MsriTypeRevealing,
        ] {
            let parsed: IndexKind = kind.name().parse().unwrap();
            assert_eq!(parsed, kind);
        }
        assert!("nucleolus".parse::<IndexKind>().is_err());
    }

    #[test]
    fn json_report_shape() {
        let g = game("[3;2,1,1]");
        let ari = average_index(&g, IndexKind::Ari).unwrap();
        let rep = average_representation(&g, false).unwrap();
        let json = index_json(&g, &ari, Some(&rep.quota_bar), 3);
        assert_eq!(json["game"], "[3;2,1,1]");
        assert_eq!(json["index"], "ARI");
        assert_eq!(json["power"][0], "7/12");
        assert_eq!(json["decimal"][0], "0.583");
        assert_eq!(json["quota_bar"], "2/3");
    }
}
