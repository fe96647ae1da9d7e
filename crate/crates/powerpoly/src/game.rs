//! Weighted majority games, simple games, and their coalition structure.
//!
//! Voters are indexed `0..n` internally and rendered 1-based in text output.
//! Coalitions are bitmasks, so every operation that scans `2^n` subsets is
//! capped at [`FRONTIER_CAP`] voters.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{format_rat, parse_rat, rat_sum, Rat};
use crate::{Error, Result};

/// Largest voter count for operations that enumerate all coalitions.
pub const FRONTIER_CAP: usize = 24;

/// A set of voters encoded as a bitmask over indices `0..n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coalition(pub u32);

impl Coalition {
    /// The empty coalition.
    pub const EMPTY: Coalition = Coalition(0);

    /// Coalition holding every voter of an `n`-voter game.
    pub fn full(n: usize) -> Coalition {
        Coalition(((1u64 << n) - 1) as u32)
    }

    /// Builds a coalition from 0-based voter indices.
    pub fn from_members(members: &[usize]) -> Coalition {
        Coalition(members.iter().fold(0u32, |m, &i| m | (1 << i)))
    }

    pub fn contains(&self, voter: usize) -> bool {
        self.0 & (1 << voter) != 0
    }

    pub fn insert(&self, voter: usize) -> Coalition {
        Coalition(self.0 | (1 << voter))
    }

    pub fn remove(&self, voter: usize) -> Coalition {
        Coalition(self.0 & !(1 << voter))
    }

    pub fn is_subset_of(&self, other: &Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// Iterates member indices in ascending order.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..u32::BITS as usize).filter(|i| self.contains(*i))
    }
}

impl std::fmt::Debug for Coalition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

impl std::fmt::Display for Coalition {
    /// Renders 1-based, e.g. `{1,3}`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.members().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// The minimal winning and maximal losing coalitions of a monotone game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalitionFrontiers {
    pub n: usize,
    pub minimal_winning: Vec<Coalition>,
    pub maximal_losing: Vec<Coalition>,
}

/// Shift-minimal winning and shift-maximal losing coalitions of a complete
/// game, in original voter labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftFrontiers {
    pub shift_minimal_winning: Vec<Coalition>,
    pub shift_maximal_losing: Vec<Coalition>,
}

/// Dummy voters, vetoers, and the dictator (if any) of a game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoterClassification {
    pub dummies: Vec<usize>,
    pub vetoers: Vec<usize>,
    pub dictator: Option<usize>,
}

/// A weighted majority game `[q; w_1, ..., w_n]` with rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGame {
    quota: Rat,
    weights: Vec<Rat>,
}

impl WeightedGame {
    /// Validates quota and weights: `0 < q <= w(N)`, all weights `>= 0`.
    pub fn new(quota: Rat, weights: Vec<Rat>) -> Result<WeightedGame> {
        if weights.is_empty() {
            return Err(Error::Parse("game needs at least one voter".into()));
        }
        if weights.len() > u32::BITS as usize {
            return Err(Error::CapExceeded(format!(
                "{} voters exceeds the {} supported by coalition masks",
                weights.len(),
                u32::BITS
            )));
        }
        if !quota.is_positive() {
            return Err(Error::Parse(format!(
                "quota {} is not positive",
                format_rat(&quota)
            )));
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::Parse(format!("negative weight {}", format_rat(w))));
        }
        let total = rat_sum(&weights);
        if quota > total {
            return Err(Error::Parse(format!(
                "quota {} exceeds total weight {}",
                format_rat(&quota),
                format_rat(&total)
            )));
        }
        Ok(WeightedGame { quota, weights })
    }

    /// Parses the bracket format `[q; w1, w2, ...]` with integer or `p/q`
    /// entries; whitespace is ignored.
    pub fn parse(text: &str) -> Result<WeightedGame> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [q; w1, ...], got {t:?}")))?;
        let (q_text, w_text) = inner
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("missing ';' after quota in {t:?}")))?;
        let quota = parse_rat(q_text).map_err(Error::Parse)?;
        let weights = w_text
            .split(',')
            .map(|w| parse_rat(w).map_err(Error::Parse))
            .collect::<Result<Vec<_>>>()?;
        WeightedGame::new(quota, weights)
    }

    /// Canonical bracket rendering; parses back to an equal game.
    pub fn to_text(&self) -> String {
        let ws: Vec<String> = self.weights.iter().map(format_rat).collect();
        format!("[{};{}]", format_rat(&self.quota), ws.join(","))
    }

    /// JSON mirror of the bracket format.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "quota": format_rat(&self.quota),
            "weights": self.weights.iter().map(format_rat).collect::<Vec<_>>(),
        })
    }

    /// Parses the JSON mirror produced by [`WeightedGame::to_json`].
    pub fn from_json(value: &serde_json::Value) -> Result<WeightedGame> {
        let quota = value
            .get("quota")
            .and_then(|q| q.as_str())
            .ok_or_else(|| Error::Parse("missing string field 'quota'".into()))?;
        let weights = value
            .get("weights")
            .and_then(|w| w.as_array())
            .ok_or_else(|| Error::Parse("missing array field 'weights'".into()))?;
        let quota = parse_rat(quota).map_err(Error::Parse)?;
        let weights = weights
            .iter()
            .map(|w| {
                w.as_str()
                    .ok_or_else(|| Error::Parse("weight entries must be strings".into()))
                    .and_then(|s| parse_rat(s).map_err(Error::Parse))
            })
            .collect::<Result<Vec<_>>>()?;
        WeightedGame::new(quota, weights)
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn quota(&self) -> &Rat {
        &self.quota
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn total_weight(&self) -> Rat {
        rat_sum(&self.weights)
    }

    /// Total weight of a coalition.
    pub fn weight_of(&self, coalition: Coalition) -> Rat {
        rat_sum(coalition.members().map(|i| &self.weights[i]))
    }

    /// Whether the coalition meets the quota. The empty coalition loses.
    pub fn is_winning(&self, coalition: Coalition) -> bool {
        self.weight_of(coalition) >= self.quota
    }

    /// Scales quota and weights to integers. The quota is rounded up, which
    /// preserves the game because coalition weights are integral after
    /// scaling.
    pub fn integer_scaled(&self) -> (BigInt, Vec<BigInt>) {
        let mut lcm = self.quota.denom().clone();
        for w in &self.weights {
            lcm = lcm.lcm(w.denom());
        }
        let scale = Rat::from_integer(lcm);
        let weights: Vec<BigInt> = self
            .weights
            .iter()
            .map(|w| (w * &scale).to_integer())
            .collect();
        let q = &self.quota * &scale;
        let quota = if q.is_integer() {
            q.to_integer()
        } else {
            q.to_integer() + 1
        };
        (quota, weights)
    }

    /// Winning table over all `2^n` coalitions.
    pub(crate) fn winning_table(&self) -> Result<WinningTable> {
        let n = self.n();
        if n > FRONTIER_CAP {
            return Err(Error::CapExceeded(format!(
                "coalition enumeration capped at {FRONTIER_CAP} voters, game has {n}"
            )));
        }
        let (quota, weights) = self.integer_scaled();
        let mut table = WinningTable::new(n);
        // Gray-code walk keeps one add or subtract per subset.
        let mut sum = BigInt::zero();
        let mut prev = 0u32;
        if sum >= quota {
            table.set(0);
        }
        for k in 1u64..(1u64 << n) {
            let gray = (k ^ (k >> 1)) as u32;
            let bit = (gray ^ prev).trailing_zeros() as usize;
            if gray & (1 << bit) != 0 {
                sum += &weights[bit];
            } else {
                sum -= &weights[bit];
            }
            if sum >= quota {
                table.set(gray);
            }
            prev = gray;
        }
        Ok(table)
    }

    /// Minimal winning and maximal losing coalitions by full subset scan.
    pub fn frontiers(&self) -> Result<CoalitionFrontiers> {
        Ok(self.winning_table()?.frontiers())
    }

    /// The game viewed purely through its winning coalitions.
    pub fn to_simple(&self) -> Result<SimpleGame> {
        let f = self.frontiers()?;
        Ok(SimpleGame {
            n: f.n,
            minimal_winning: f.minimal_winning,
        })
    }

    /// Whether the two games have identical winning coalitions.
    pub fn equivalent_to(&self, other: &WeightedGame) -> Result<bool> {
        Ok(self.n() == other.n() && self.frontiers()? == other.frontiers()?)
    }

    /// Dummies, vetoers, and dictator of the game.
    pub fn classify(&self) -> Result<VoterClassification> {
        Ok(self.frontiers()?.classify())
    }

    /// Desirability relation over all voter pairs.
    pub fn desirability(&self) -> Result<Desirability> {
        let table = self.winning_table()?;
        Ok(Desirability::from_table(&table))
    }

    /// Type partition (desirability classes, strongest first).
    pub fn type_partition(&self) -> Result<TypePartition> {
        let f = self.frontiers()?;
        TypePartition::build(&self.desirability()?, &f)
    }

    /// Shift frontiers; errors when the game is not complete.
    pub fn shift_frontiers(&self) -> Result<ShiftFrontiers> {
        let table = self.winning_table()?;
        shift_frontiers_of(&table)
    }

    /// The dual game `[w(N) - q + 1; w]` of the scaled integer form.
    pub fn dual(&self) -> Result<WeightedGame> {
        let (quota, weights) = self.integer_scaled();
        let total: BigInt = weights.iter().sum();
        let dual_quota = total - quota + 1;
        WeightedGame::new(
            Rat::from_integer(dual_quota),
            weights.into_iter().map(Rat::from_integer).collect(),
        )
    }

    /// Drops dummy voters, keeping quota and remaining weights. Returns the
    /// reduced game and, per reduced position, the original voter index.
    pub fn dummy_reduce(&self) -> Result<(WeightedGame, Vec<usize>)> {
        let class = self.classify()?;
        let keep: Vec<usize> = (0..self.n())
            .filter(|i| !class.dummies.contains(i))
            .collect();
        let reduced = WeightedGame::new(
            self.quota.clone(),
            keep.iter().map(|&i| self.weights[i].clone()).collect(),
        )?;
        Ok((reduced, keep))
    }
}

/// Tests whether normalized `weights` admit some quota that represents the
/// game: every minimal winning coalition must outweigh every maximal losing
/// one strictly.
pub fn is_feasible(game: &WeightedGame, weights: &[Rat]) -> Result<bool> {
    if weights.len() != game.n() {
        return Err(Error::Invalid(format!(
            "weight vector has {} entries, game has {} voters",
            weights.len(),
            game.n()
        )));
    }
    if weights.iter().any(|w| w.is_negative()) || !rat_sum(weights).is_one() {
        return Err(Error::Invalid(
            "feasibility test needs a normalized non-negative weight vector".into(),
        ));
    }
    let f = game.frontiers()?;
    let sum = |c: &Coalition| rat_sum(c.members().map(|i| &weights[i]));
    let min_win = f.minimal_winning.iter().map(sum).min();
    let max_lose = f.maximal_losing.iter().map(sum).max();
    match (min_win, max_lose) {
        (Some(w), Some(l)) => Ok(w > l),
        _ => Err(Error::Internal("game with empty frontier".into())),
    }
}

/// Tests whether `(quota, weights)` is a representation of the game: minimal
/// winning coalitions reach the quota, maximal losing ones stay strictly
/// below it.
pub fn is_representation(game: &WeightedGame, quota: &Rat, weights: &[Rat]) -> Result<bool> {
    if weights.len() != game.n() {
        return Err(Error::Invalid(format!(
            "weight vector has {} entries, game has {} voters",
            weights.len(),
            game.n()
        )));
    }
    if weights.iter().any(|w| w.is_negative()) || !quota.is_positive() {
        return Ok(false);
    }
    let f = game.frontiers()?;
    let sum = |c: &Coalition| rat_sum(c.members().map(|i| &weights[i]));
    Ok(f.minimal_winning.iter().all(|s| &sum(s) >= quota)
        && f.maximal_losing.iter().all(|t| &sum(t) < quota))
}

/// A monotone simple game given by its minimal winning coalitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGame {
    n: usize,
    minimal_winning: Vec<Coalition>,
}

impl SimpleGame {
    /// Builds from an antichain of minimal winning coalitions; validates the
    /// antichain property and that some coalition wins.
    pub fn new(n: usize, mut minimal_winning: Vec<Coalition>) -> Result<SimpleGame> {
        if n == 0 || n > FRONTIER_CAP {
            return Err(Error::CapExceeded(format!(
                "simple games support 1..={FRONTIER_CAP} voters, got {n}"
            )));
        }
        if minimal_winning.is_empty() {
            return Err(Error::Invalid("no winning coalitions".into()));
        }
        minimal_winning.sort();
        minimal_winning.dedup();
        for s in &minimal_winning {
            if !s.is_subset_of(&Coalition::full(n)) {
                return Err(Error::Invalid(format!("coalition {s} outside 1..={n}")));
            }
        }
        for (i, s) in minimal_winning.iter().enumerate() {
            for t in &minimal_winning[i + 1..] {
                if s.is_subset_of(t) || t.is_subset_of(s) {
                    return Err(Error::Invalid(format!(
                        "{s} and {t} violate the antichain property"
                    )));
                }
            }
        }
        Ok(SimpleGame { n, minimal_winning })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn minimal_winning(&self) -> &[Coalition] {
        &self.minimal_winning
    }

    /// Whether the coalition contains some minimal winning coalition.
    pub fn is_winning(&self, coalition: Coalition) -> bool {
        self.minimal_winning
            .iter()
            .any(|m| m.is_subset_of(&coalition))
    }

    /// Winning table via monotone closure of the minimal winning seeds.
    fn winning_table(&self) -> WinningTable {
        let mut table = WinningTable::new(self.n);
        for m in &self.minimal_winning {
            table.set(m.0);
        }
        // S \ {i} < S numerically, so one ascending pass closes upward.
        for s in 1u64..(1u64 << self.n) {
            let s = s as u32;
            if table.get(s) {
                continue;
            }
            let mut bits = s;
            while bits != 0 {
                let bit = bits & bits.wrapping_neg();
                if table.get(s & !bit) {
                    table.set(s);
                    break;
                }
                bits &= !bit;
            }
        }
        table
    }

    pub fn frontiers(&self) -> CoalitionFrontiers {
        self.winning_table().frontiers()
    }

    pub fn classify(&self) -> VoterClassification {
        self.frontiers().classify()
    }

    pub fn desirability(&self) -> Desirability {
        Desirability::from_table(&self.winning_table())
    }

    pub fn type_partition(&self) -> Result<TypePartition> {
        TypePartition::build(&self.desirability(), &self.frontiers())
    }

    pub fn shift_frontiers(&self) -> Result<ShiftFrontiers> {
        shift_frontiers_of(&self.winning_table())
    }
}

/// Bit table of the winning predicate over all coalitions.
pub(crate) struct WinningTable {
    n: usize,
    bits: Vec<u64>,
}

impl WinningTable {
    fn new(n: usize) -> WinningTable {
        WinningTable {
            n,
            bits: vec![0u64; (1usize << n).div_ceil(64)],
        }
    }

    pub(crate) fn n(&self) -> usize {
        self.n
    }

    fn set(&mut self, mask: u32) {
        self.bits[(mask >> 6) as usize] |= 1u64 << (mask & 63);
    }

    pub(crate) fn get(&self, mask: u32) -> bool {
        self.bits[(mask >> 6) as usize] & (1u64 << (mask & 63)) != 0
    }

    pub(crate) fn frontiers(&self) -> CoalitionFrontiers {
        let n = self.n;
        let mut minimal_winning = Vec::new();
        let mut maximal_losing = Vec::new();
        for s in 0..(1u64 << n) as u32 {
            if self.get(s) {
                if (0..n).all(|i| s & (1 << i) == 0 || !self.get(s & !(1 << i))) {
                    minimal_winning.push(Coalition(s));
                }
            } else if (0..n).all(|i| s & (1 << i) != 0 || self.get(s | (1 << i))) {
                maximal_losing.push(Coalition(s));
            }
        }
        CoalitionFrontiers {
            n,
            minimal_winning,
            maximal_losing,
        }
    }
}

impl CoalitionFrontiers {
    /// Dummies, vetoers, and dictator read off the minimal winning sets.
    pub fn classify(&self) -> VoterClassification {
        let in_some = self
            .minimal_winning
            .iter()
            .fold(0u32, |acc, c| acc | c.0);
        let in_all = self
            .minimal_winning
            .iter()
            .fold(Coalition::full(self.n).0, |acc, c| acc & c.0);
        let dummies = (0..self.n).filter(|i| in_some & (1 << i) == 0).collect();
        let vetoers: Vec<usize> = (0..self.n).filter(|i| in_all & (1 << i) != 0).collect();
        let dictator = match self.minimal_winning.as_slice() {
            [only] if only.len() == 1 => only.members().next(),
            _ => None,
        };
        VoterClassification {
            dummies,
            vetoers,
            dictator,
        }
    }
}

/// The "at least as desirable" relation over all ordered voter pairs.
#[derive(Clone, Debug)]
pub struct Desirability {
    n: usize,
    geq: Vec<bool>,
}

impl Desirability {
    fn from_table(table: &WinningTable) -> Desirability {
        let n = table.n();
        let mut geq = vec![true; n * n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                geq[i * n + j] = Self::pair_geq(table, i, j);
            }
        }
        Desirability { n, geq }
    }

    /// `v(S + i) >= v(S + j)` for every coalition S avoiding both voters.
    fn pair_geq(table: &WinningTable, i: usize, j: usize) -> bool {
        let n = table.n();
        let rest: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
        for pick in 0..(1u64 << rest.len()) as u32 {
            let mut s = 0u32;
            for (b, &voter) in rest.iter().enumerate() {
                if pick & (1 << b) != 0 {
                    s |= 1 << voter;
                }
            }
            if table.get(s | (1 << j)) && !table.get(s | (1 << i)) {
                return false;
            }
        }
        true
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether voter `i` is at least as desirable as voter `j`.
    pub fn geq(&self, i: usize, j: usize) -> bool {
        self.geq[i * self.n + j]
    }

    pub fn equivalent(&self, i: usize, j: usize) -> bool {
        self.geq(i, j) && self.geq(j, i)
    }

    pub fn strictly(&self, i: usize, j: usize) -> bool {
        self.geq(i, j) && !self.geq(j, i)
    }

    /// Every pair comparable in at least one direction.
    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.geq(i, j) || self.geq(j, i)))
    }

    /// Voters sorted by descending desirability, stable over original order.
    /// Errors when some pair is incomparable.
    pub fn sorted_voters(&self) -> Result<Vec<usize>> {
        if !self.is_complete() {
            let (i, j) = (0..self.n)
                .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
                .find(|&(i, j)| !self.geq(i, j) && !self.geq(j, i))
                .expect("incomplete relation has an incomparable pair");
            return Err(Error::NotComplete(format!(
                "voters {} and {} are incomparable",
                i + 1,
                j + 1
            )));
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&a, &b| {
            if self.strictly(a, b) {
                std::cmp::Ordering::Less
            } else if self.strictly(b, a) {
                std::cmp::Ordering::Greater
            } else {
                a.cmp(&b)
            }
        });
        Ok(order)
    }
}

/// Desirability classes in descending order; dummies, when present, form the
/// trailing class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypePartition {
    /// Voter classes, strongest first, members ascending.
    pub classes: Vec<Vec<usize>>,
    /// Index of the trailing dummy class in `classes`, when dummies exist.
    pub dummy_class: Option<usize>,
}

impl TypePartition {
    fn build(rel: &Desirability, frontiers: &CoalitionFrontiers) -> Result<TypePartition> {
        let order = rel.sorted_voters()?;
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            match classes.last_mut() {
                Some(class) if rel.equivalent(class[0], v) => class.push(v),
                _ => classes.push(vec![v]),
            }
        }
        for class in &mut classes {
            class.sort_unstable();
        }
        let dummies = frontiers.classify().dummies;
        let dummy_class = match dummies.first() {
            None => None,
            Some(&d) => {
                let idx = classes
                    .iter()
                    .position(|c| c.contains(&d))
                    .expect("dummy voter missing from its class");
                debug_assert_eq!(idx, classes.len() - 1);
                debug_assert_eq!(classes[idx], dummies);
                Some(idx)
            }
        };
        Ok(TypePartition {
            classes,
            dummy_class,
        })
    }

    /// Number of classes excluding the dummy class.
    pub fn t(&self) -> usize {
        self.classes.len() - usize::from(self.dummy_class.is_some())
    }

    /// Classes without the trailing dummy class.
    pub fn non_dummy_classes(&self) -> &[Vec<usize>] {
        match self.dummy_class {
            Some(idx) => &self.classes[..idx],
            None => &self.classes,
        }
    }
}

/// Direct left-shifts make a coalition stronger by one step; right-shifts
/// weaken it. Shift frontiers are the frontier members stable under them.
fn shift_frontiers_of(table: &WinningTable) -> Result<ShiftFrontiers> {
    let rel = Desirability::from_table(table);
    let order = rel.sorted_voters()?;
    let n = table.n();
    // position[v] = rank of voter v, 0 strongest.
    let mut position = vec![0usize; n];
    for (rank, &v) in order.iter().enumerate() {
        position[v] = rank;
    }
    let frontiers = table.frontiers();
    let to_ranks = |c: &Coalition| Coalition(c.members().fold(0, |m, v| m | (1 << position[v])));
    let from_ranks = |c: Coalition| Coalition(c.members().fold(0, |m, r| m | (1 << order[r])));

    let direct_right_shifts = |s: Coalition| {
        let mut out = Vec::new();
        for r in s.members() {
            if r + 1 < n && !s.contains(r + 1) {
                out.push(s.remove(r).insert(r + 1));
            }
        }
        if s.contains(n - 1) {
            out.push(s.remove(n - 1));
        }
        out
    };
    let direct_left_shifts = |s: Coalition| {
        let mut out = Vec::new();
        for r in s.members() {
            if r > 0 && !s.contains(r - 1) {
                out.push(s.remove(r).insert(r - 1));
            }
        }
        if !s.contains(n - 1) {
            out.push(s.insert(n - 1));
        }
        out
    };

    let winning_in_ranks = |c: Coalition| table.get(from_ranks(c).0);
    let shift_minimal_winning = frontiers
        .minimal_winning
        .iter()
        .filter(|s| {
            let ranked = to_ranks(s);
            direct_right_shifts(ranked)
                .into_iter()
                .all(|t| !winning_in_ranks(t))
        })
        .copied()
        .collect();
    let shift_maximal_losing = frontiers
        .maximal_losing
        .iter()
        .filter(|s| {
            let ranked = to_ranks(s);
            direct_left_shifts(ranked)
                .into_iter()
                .all(winning_in_ranks)
        })
        .copied()
        .collect();
    Ok(ShiftFrontiers {
        shift_minimal_winning,
        shift_maximal_losing,
    })
}
