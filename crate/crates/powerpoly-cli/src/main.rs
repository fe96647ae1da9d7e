//! Command line front end for the voting power library.
//!
//! One subcommand per analysis; results stream to stdout as text, JSON, or
//! CSV. Exit codes separate bad input (2), requests over the size caps (3),
//! and internal invariant failures (4).

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use powerpoly::audits::{
    added_blocker_audit, bicameral_meet, bloc_audit, distance_study, donation_audit,
    ParadoxReport,
};
use powerpoly::census::{enumerate_weighted_games, integer_representation_census};
use powerpoly::indices::{power_index, IndexKind};
use powerpoly::rational::{format_rat, parse_rat, to_decimal, Rat};
use powerpoly::sampler::{hit_and_run_estimate, ChainConfig};
use powerpoly::{
    apportion, build_polytope, integrate, Error, PolytopeKind, Restrictions, WeightedGame,
};

#[derive(Parser)]
#[command(
    name = "powerpoly",
    about = "Power indices, representation polytopes, and seat apportionment \
             for weighted voting games",
    version
)]
struct RunManifest {
    /// Output format for the subcommand's result.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

fn parse_kind(s: &str) -> Result<IndexKind, String> {
    s.parse::<IndexKind>().map_err(|e| e.to_string())
}

fn parse_rational(s: &str) -> Result<Rat, String> {
    parse_rat(s)
}

#[derive(Subcommand)]
enum Command {
    /// Compute a power index of a game, exactly.
    Index(IndexArgs),
    /// Integrate over a game's weight or representation polytope.
    Polytope(PolytopeArgs),
    /// List all weighted games with up to a given number of voters.
    Census(CensusArgs),
    /// Count integer representations of a game at a fixed weight total.
    Intreps(IntrepsArgs),
    /// Run a paradox audit (bloc, donation, added blocker) or a bicameral meet.
    Audit(AuditArgs),
    /// Tabulate pairwise index distances over the census.
    Distances(DistancesArgs),
    /// Allocate parliamentary seats from raw votes.
    Seats(SeatsArgs),
    /// Search for a quota whose game matches a target power distribution.
    Inverse(InverseArgs),
    /// Regenerate the reference tables of all four average indices.
    Tables(TablesArgs),
    /// Estimate an average index by hit-and-run sampling.
    Sample(SampleArgs),
}

#[derive(Args)]
struct IndexArgs {
    /// Game in bracket form, e.g. "[3;2,1,1]".
    #[arg(long)]
    game: String,
    /// awi | ari | awti | arti | bzi | ssi | msri | msri-type
    #[arg(long, value_parser = parse_kind, default_value = "awi")]
    kind: IndexKind,
}

#[derive(Args)]
struct PolytopeArgs {
    #[arg(long)]
    game: String,
    /// Integrate over weight vectors or (quota, weights) pairs.
    #[arg(long, value_enum, default_value_t = Space::Weight)]
    space: Space,
    /// Fix dummy voters' weights to zero.
    #[arg(long)]
    dummy: bool,
    /// Force equal weights inside each equivalence class of voters.
    #[arg(long)]
    types: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    Weight,
    Representation,
}

#[derive(Args)]
struct CensusArgs {
    /// Largest number of voters to include.
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct IntrepsArgs {
    #[arg(long)]
    game: String,
    /// Weight total each counted representation must have.
    #[arg(long)]
    total: u64,
    /// Weigh each weight vector by its number of feasible integer quotas.
    #[arg(long)]
    count_quotas: bool,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long, value_enum)]
    kind: Audit,
    /// Game under audit (bloc, donation, blocker).
    #[arg(long, required_unless_present = "first")]
    game: Option<String>,
    /// Power index the audit evaluates.
    #[arg(long, value_parser = parse_kind, default_value = "awi")]
    index: IndexKind,
    /// First voter of the audit (1-based): bloc absorber, donor, or
    /// numerator of the blocker ratio.
    #[arg(long)]
    i: Option<usize>,
    /// Second voter (1-based): bloc partner, recipient, or denominator.
    #[arg(long)]
    j: Option<usize>,
    /// Weight transferred by a donation.
    #[arg(long, value_parser = parse_rational)]
    amount: Option<Rat>,
    /// Weight of the added blocker.
    #[arg(long, value_parser = parse_rational)]
    blocker_weight: Option<Rat>,
    /// First chamber of a bicameral meet.
    #[arg(long)]
    first: Option<String>,
    /// Second chamber of a bicameral meet.
    #[arg(long)]
    second: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Audit {
    Bloc,
    Donation,
    Blocker,
    Meet,
}

#[derive(Args)]
struct DistancesArgs {
    /// Largest number of voters to include.
    #[arg(long)]
    n: usize,
    /// Comma-separated index kinds to compare pairwise.
    #[arg(long, default_value = "awi,ari,bzi,ssi")]
    kinds: String,
    /// Print distribution quantiles per pair instead of per-game rows.
    #[arg(long)]
    summary: bool,
}

#[derive(Args)]
struct SeatsArgs {
    /// Comma-separated vote counts, e.g. "1258605,1125876,962313".
    #[arg(long)]
    votes: String,
    /// Number of seats to allocate.
    #[arg(long)]
    house: u64,
    #[arg(long, value_enum, default_value_t = Method::Dhondt)]
    method: Method,
    /// Charge any rounding surplus or deficit to the most powerful party.
    #[arg(long)]
    adjust: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Dhondt,
    Ssi,
    Awi,
}

#[derive(Args)]
struct InverseArgs {
    /// Comma-separated target power distribution, rationals or decimals.
    #[arg(long)]
    target: String,
    #[arg(long, value_parser = parse_kind, default_value = "awi")]
    index: IndexKind,
    /// Quota grid step, e.g. "1/100".
    #[arg(long, value_parser = parse_rational, default_value = "1/100")]
    step: Rat,
    /// Rescale the target to sum to one before searching.
    #[arg(long)]
    normalize: bool,
}

#[derive(Args)]
struct TablesArgs {
    /// Tabulate AWI, ARI, AWTI, ARTI for every game, at three decimals.
    #[arg(long)]
    appendix: bool,
    /// Number of voters each tabulated game is padded to.
    #[arg(long, default_value_t = 5)]
    n: usize,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    game: String,
    /// awi | ari | awti | arti
    #[arg(long, value_parser = parse_kind, default_value = "awi")]
    kind: IndexKind,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1_000)]
    burn_in: usize,
    /// Keep every k-th state of the chain.
    #[arg(long, default_value_t = 1)]
    thin: usize,
}

fn main() -> ExitCode {
    let manifest = RunManifest::parse();
    if let Err(err) = configure_threads() {
        eprintln!("error: {err}");
        return ExitCode::from(2);
    }
    match run(&manifest) {
        Ok(output) => {
            println!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::Parse(_) | Error::Invalid(_) | Error::NotComplete(_) => 2,
                Error::CapExceeded(_) => 3,
                Error::Internal(_) => 4,
            };
            ExitCode::from(code)
        }
    }
}

/// Applies the POWERPOLY_THREADS cap before any parallel work starts.
fn configure_threads() -> Result<(), Error> {
    let Ok(raw) = std::env::var("POWERPOLY_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .parse()
        .map_err(|_| Error::Parse(format!("POWERPOLY_THREADS must be a number, got {raw:?}")))?;
    if threads == 0 {
        return Err(Error::Parse("POWERPOLY_THREADS must be at least 1".into()));
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    Ok(())
}

fn run(manifest: &RunManifest) -> Result<String, Error> {
    match &manifest.command {
        Command::Index(args) => run_index(args, manifest.format),
        Command::Polytope(args) => run_polytope(args, manifest.format),
        Command::Census(args) => run_census(args, manifest.format),
        Command::Intreps(args) => run_intreps(args, manifest.format),
        Command::Audit(args) => run_audit(args, manifest.format),
        Command::Distances(args) => run_distances(args, manifest.format),
        Command::Seats(args) => run_seats(args, manifest.format),
        Command::Inverse(args) => run_inverse(args, manifest.format),
        Command::Tables(args) => run_tables(args, manifest.format),
        Command::Sample(args) => run_sample(args, manifest.format),
    }
}

/// Comma-separated rationals, accepting decimals.
fn parse_vector(text: &str) -> Result<Vec<Rat>, Error> {
    text.split(',')
        .map(|t| parse_rat(t).map_err(Error::Parse))
        .collect()
}

fn rat_strings(entries: &[Rat]) -> Vec<String> {
    entries.iter().map(format_rat).collect()
}

/// Quotes a CSV field that may contain commas.
fn csv_quote(field: &str) -> String {
    format!("\"{field}\"")
}

fn run_index(args: &IndexArgs, format: Format) -> Result<String, Error> {
    let game = WeightedGame::parse(&args.game)?;
    let power = power_index(&game, args.kind)?;
    Ok(match format {
        Format::Text => rat_strings(&power.entries).join(" "),
        Format::Json => json!({
            "game": game.to_text(),
            "kind": args.kind.name(),
            "power": rat_strings(&power.entries),
        })
        .to_string(),
        Format::Csv => {
            let mut out = String::from("voter,power\n");
            for (i, p) in power.entries.iter().enumerate() {
                out.push_str(&format!("{},{}\n", i + 1, format_rat(p)));
            }
            out.trim_end().to_string()
        }
    })
}

fn run_polytope(args: &PolytopeArgs, format: Format) -> Result<String, Error> {
    let game = WeightedGame::parse(&args.game)?;
    let kind = match args.space {
        Space::Weight => PolytopeKind::Weight,
        Space::Representation => PolytopeKind::Representation,
    };
    let restrictions = Restrictions {
        dummy: args.dummy,
        types: args.types,
    };
    let polytope = build_polytope(&game, kind, restrictions)?;
    let result = integrate(&polytope)?;
    Ok(match format {
        Format::Text => {
            let mut lines = vec![
                format!("dimension: {}", polytope.labels.len()),
                format!("volume: {}", format_rat(&result.volume)),
            ];
            for (label, moment) in polytope.labels.iter().zip(&result.moments) {
                lines.push(format!("integral {label}: {}", format_rat(moment)));
            }
            if let Some(q) = &result.recovered.quota {
                lines.push(format!("average quota: {}", format_rat(q)));
            }
            lines.push(format!(
                "average weights: {}",
                rat_strings(&result.recovered.weights).join(" ")
            ));
            lines.join("\n")
        }
        Format::Json | Format::Csv => json!({
            "game": game.to_text(),
            "dimension": polytope.labels.len(),
            "volume": format_rat(&result.volume),
            "labels": polytope.labels,
            "moments": rat_strings(&result.moments),
            "centroid": rat_strings(&result.centroid),
            "quota": result.recovered.quota.as_ref().map(format_rat),
            "weights": rat_strings(&result.recovered.weights),
        })
        .to_string(),
    })
}

fn run_census(args: &CensusArgs, format: Format) -> Result<String, Error> {
    let catalog = enumerate_weighted_games(args.n)?;
    Ok(match format {
        Format::Text => {
            let mut lines: Vec<String> = catalog.games.iter().map(|g| g.to_text()).collect();
            lines.push(format!("total: {}", catalog.games.len()));
            lines.join("\n")
        }
        Format::Json => json!({
            "n": catalog.n,
            "count": catalog.games.len(),
            "games": catalog.games.iter().map(|g| g.to_text()).collect::<Vec<_>>(),
        })
        .to_string(),
        Format::Csv => {
            let mut out = String::from("voters,game\n");
            for game in &catalog.games {
                out.push_str(&format!("{},{}\n", game.n(), csv_quote(&game.to_text())));
            }
            out.trim_end().to_string()
        }
    })
}

fn run_intreps(args: &IntrepsArgs, format: Format) -> Result<String, Error> {
    let game = WeightedGame::parse(&args.game)?;
    let result = integer_representation_census(&game, args.total, args.count_quotas)?;
    let decimals = result
        .average
        .as_ref()
        .map(|avg| avg.iter().map(|a| to_decimal(a, 6)).collect::<Vec<_>>());
    Ok(match format {
        Format::Text => {
            let mut lines = vec![format!("count: {}", result.count)];
            match &decimals {
                Some(avg) => lines.push(format!("average: {}", avg.join(" "))),
                None => lines.push("average: none".into()),
            }
            lines.join("\n")
        }
        Format::Json | Format::Csv => json!({
            "game": game.to_text(),
            "total": args.total,
            "count_quotas": args.count_quotas,
            "count": result.count.to_string(),
            "average": result.average.as_ref().map(|avg| rat_strings(avg)),
            "average_decimal": decimals,
        })
        .to_string(),
    })
}

fn paradox_text(report: &ParadoxReport) -> String {
    let mut lines = vec![
        format!("index: {}", report.index.name()),
        format!(
            "before: {} -> {}",
            report.before.to_text(),
            rat_strings(&report.power_before.entries).join(" ")
        ),
        format!(
            "after: {} -> {}",
            report.after.to_text(),
            rat_strings(&report.power_after.entries).join(" ")
        ),
    ];
    if let Some(gap) = &report.neutrality_gap {
        lines.push(format!("neutrality gap: {}", format_rat(gap)));
    }
    if let (Some(rb), Some(ra)) = (&report.ratio_before, &report.ratio_after) {
        lines.push(format!(
            "ratio: {} -> {}",
            format_rat(rb),
            format_rat(ra)
        ));
    }
    lines.push(format!(
        "paradox: {}",
        if report.paradox { "yes" } else { "no" }
    ));
    lines.join("\n")
}

fn paradox_json(report: &ParadoxReport) -> String {
    json!({
        "index": report.index.name(),
        "before": report.before.to_text(),
        "after": report.after.to_text(),
        "power_before": rat_strings(&report.power_before.entries),
        "power_after": rat_strings(&report.power_after.entries),
        "neutrality_gap": report.neutrality_gap.as_ref().map(format_rat),
        "ratio_before": report.ratio_before.as_ref().map(format_rat),
        "ratio_after": report.ratio_after.as_ref().map(format_rat),
        "paradox": report.paradox,
    })
    .to_string()
}

/// Converts a 1-based CLI voter argument to an internal index.
fn voter_arg(value: Option<usize>, name: &str) -> Result<usize, Error> {
    let v = value.ok_or_else(|| Error::Parse(format!("--{name} is required for this audit")))?;
    if v == 0 {
        return Err(Error::Parse(format!("--{name} counts voters from 1")));
    }
    Ok(v - 1)
}

fn run_audit(args: &AuditArgs, format: Format) -> Result<String, Error> {
    if let Audit::Meet = args.kind {
        let first = WeightedGame::parse(
            args.first
                .as_deref()
                .ok_or_else(|| Error::Parse("--first is required for a meet".into()))?,
        )?;
        let second = WeightedGame::parse(
            args.second
                .as_deref()
                .ok_or_else(|| Error::Parse("--second is required for a meet".into()))?,
        )?;
        let (meet, weighted) = bicameral_meet(&first, &second)?;
        return Ok(match format {
            Format::Text => format!(
                "meet: {}\nminimal winning coalitions: {}",
                weighted.to_text(),
                meet.minimal_winning().len()
            ),
            Format::Json | Format::Csv => json!({
                "first": first.to_text(),
                "second": second.to_text(),
                "meet": weighted.to_text(),
                "minimal_winning": meet.minimal_winning().len(),
            })
            .to_string(),
        });
    }

    let game = WeightedGame::parse(
        args.game
            .as_deref()
            .ok_or_else(|| Error::Parse("--game is required for this audit".into()))?,
    )?;
    let i = voter_arg(args.i, "i")?;
    let j = voter_arg(args.j, "j")?;
    let report = match args.kind {
        Audit::Bloc => bloc_audit(&game, i, j, args.index)?,
        Audit::Donation => {
            let amount = args
                .amount
                .clone()
                .ok_or_else(|| Error::Parse("--amount is required for a donation".into()))?;
            donation_audit(&game, i, j, &amount, args.index)?
        }
        Audit::Blocker => {
            let blocker = args.blocker_weight.clone().ok_or_else(|| {
                Error::Parse("--blocker-weight is required for an added blocker".into())
            })?;
            added_blocker_audit(&game, &blocker, i, j, args.index)?
        }
        Audit::Meet => unreachable!("handled above"),
    };
    Ok(match format {
        Format::Text => paradox_text(&report),
        Format::Json | Format::Csv => paradox_json(&report),
    })
}

fn run_distances(args: &DistancesArgs, format: Format) -> Result<String, Error> {
    let kinds = args
        .kinds
        .split(',')
        .map(|k| k.trim().parse::<IndexKind>())
        .collect::<Result<Vec<_>, _>>()?;
    let table = distance_study(args.n, &kinds)?;
    Ok(match format {
        Format::Text | Format::Csv => {
            if args.summary {
                table.summary_csv().trim_end().to_string()
            } else {
                table.rows_csv().trim_end().to_string()
            }
        }
        Format::Json => {
            let rows: Vec<_> = table
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "game": r.game,
                        "pair": format!("{}-{}", r.pair.0.name(), r.pair.1.name()),
                        "distance": r.distance,
                    })
                })
                .collect();
            let summary: Vec<_> = table
                .summary
                .iter()
                .map(|q| {
                    json!({
                        "n": q.n,
                        "pair": format!("{}-{}", q.pair.0.name(), q.pair.1.name()),
                        "q01": q.q01, "q25": q.q25, "q50": q.q50,
                        "q75": q.q75, "q99": q.q99,
                    })
                })
                .collect();
            json!({ "rows": rows, "summary": summary }).to_string()
        }
    })
}

fn seat_output(allocation: &apportion::SeatAllocation, format: Format) -> String {
    let allocated: u64 = allocation.seats.iter().sum();
    match format {
        Format::Text => {
            let mut lines = Vec::new();
            for ((label, votes), seats) in allocation
                .labels
                .iter()
                .zip(&allocation.votes)
                .zip(&allocation.seats)
            {
                lines.push(format!("{label}: {} votes, {seats} seats", format_rat(votes)));
            }
            lines.push(format!(
                "house: {}, allocated: {allocated}",
                allocation.house
            ));
            if let Some(q) = &allocation.quota {
                lines.push(format!("implied quota: {}", format_rat(q)));
            }
            lines.join("\n")
        }
        Format::Json => json!({
            "labels": allocation.labels,
            "votes": rat_strings(&allocation.votes),
            "seats": allocation.seats,
            "house": allocation.house,
            "allocated": allocated,
            "quota": allocation.quota.as_ref().map(format_rat),
        })
        .to_string(),
        Format::Csv => {
            let mut out = String::from("party,votes,seats\n");
            for ((label, votes), seats) in allocation
                .labels
                .iter()
                .zip(&allocation.votes)
                .zip(&allocation.seats)
            {
                out.push_str(&format!("{label},{},{seats}\n", format_rat(votes)));
            }
            out.trim_end().to_string()
        }
    }
}

fn run_seats(args: &SeatsArgs, format: Format) -> Result<String, Error> {
    let votes: Vec<u64> = args
        .votes
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad vote count {v:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let by_divisors = apportion::dhondt(&votes, args.house)?;
    let allocation = match args.method {
        Method::Dhondt => by_divisors,
        Method::Ssi | Method::Awi => {
            // Power is measured on the voting body the divisor seats create,
            // under simple majority rule.
            let quota = by_divisors
                .quota
                .clone()
                .expect("divisor allocations carry their majority quota");
            let weights = by_divisors
                .seats
                .iter()
                .map(|&s| Rat::from_integer(s.into()))
                .collect();
            let game = WeightedGame::new(quota, weights)?;
            let kind = match args.method {
                Method::Ssi => IndexKind::ShapleyShubik,
                _ => IndexKind::Awi,
            };
            let mut allocation = apportion::index_seats(&game, kind, args.house, args.adjust)?;
            allocation.votes = votes
                .iter()
                .map(|&v| Rat::from_integer(v.into()))
                .collect();
            allocation
        }
    };
    Ok(seat_output(&allocation, format))
}

fn run_inverse(args: &InverseArgs, format: Format) -> Result<String, Error> {
    let mut target = parse_vector(&args.target)?;
    if args.normalize {
        let sum: Rat = target.iter().sum();
        if sum == powerpoly::rational::rat(0) {
            return Err(Error::Invalid("target sums to zero".into()));
        }
        for entry in &mut target {
            *entry /= sum.clone();
        }
    }
    let design = apportion::inverse_design(&target, args.index, &args.step)?;
    Ok(match format {
        Format::Text => [
            format!("quota: {}", format_rat(&design.quota)),
            format!("game: {}", design.game.to_text()),
            format!("objective: {}", format_rat(&design.objective)),
        ]
        .join("\n"),
        Format::Json | Format::Csv => json!({
            "quota": format_rat(&design.quota),
            "game": design.game.to_text(),
            "objective": format_rat(&design.objective),
        })
        .to_string(),
    })
}

fn run_tables(args: &TablesArgs, format: Format) -> Result<String, Error> {
    if !args.appendix {
        return Err(Error::Invalid(
            "only the --appendix table sweep is available".into(),
        ));
    }
    let catalog = enumerate_weighted_games(args.n)?;
    let kinds = [IndexKind::Awi, IndexKind::Ari, IndexKind::Awti, IndexKind::Arti];
    // The reference tables list each game once, padded with dummies to
    // exactly n voters; smaller catalog entries are that padding's prefixes.
    let games: Vec<&WeightedGame> = catalog.games.iter().filter(|g| g.n() == args.n).collect();
    let mut rows: Vec<(String, Vec<Vec<String>>)> = Vec::with_capacity(games.len());
    for game in games {
        let mut vectors = Vec::with_capacity(kinds.len());
        for kind in kinds {
            let power = power_index(game, kind)?;
            vectors.push(
                power
                    .entries
                    .iter()
                    .map(|p| to_decimal(p, 3))
                    .collect::<Vec<_>>(),
            );
        }
        rows.push((game.to_text(), vectors));
    }
    Ok(match format {
        Format::Text | Format::Csv => {
            let mut header = vec!["game".to_string()];
            for kind in kinds {
                for v in 1..=args.n {
                    header.push(format!("{}{v}", kind.name().to_ascii_lowercase()));
                }
            }
            let mut out = header.join(",");
            for (game, vectors) in &rows {
                out.push('\n');
                out.push_str(&csv_quote(game));
                for vector in vectors {
                    out.push(',');
                    out.push_str(&vector.join(","));
                }
            }
            out
        }
        Format::Json => {
            let entries: Vec<_> = rows
                .iter()
                .map(|(game, vectors)| {
                    json!({
                        "game": game,
                        "awi": vectors[0], "ari": vectors[1],
                        "awti": vectors[2], "arti": vectors[3],
                    })
                })
                .collect();
            json!({ "n": args.n, "rows": entries }).to_string()
        }
    })
}

fn run_sample(args: &SampleArgs, format: Format) -> Result<String, Error> {
    let game = WeightedGame::parse(&args.game)?;
    let config = ChainConfig {
        seed: args.seed,
        burn_in: args.burn_in,
        thinning: args.thin,
        samples: args.samples,
    };
    let estimate = hit_and_run_estimate(&game, args.kind, &config)?;
    let fmt = |xs: &[f64]| {
        xs.iter()
            .map(|x| format!("{x:.6}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    Ok(match format {
        Format::Text => {
            let mut lines = vec![
                format!("mean: {}", fmt(&estimate.mean)),
                format!("stderr: {}", fmt(&estimate.stderr)),
            ];
            if let (Some(qm), Some(qs)) = (estimate.quota_mean, estimate.quota_stderr) {
                lines.push(format!("quota: {qm:.6} (stderr {qs:.6})"));
            }
            lines.push(format!(
                "samples: {}, escapes: {}",
                estimate.samples, estimate.escapes
            ));
            lines.join("\n")
        }
        Format::Json | Format::Csv => json!({
            "game": game.to_text(),
            "kind": args.kind.name(),
            "mean": estimate.mean,
            "stderr": estimate.stderr,
            "quota_mean": estimate.quota_mean,
            "quota_stderr": estimate.quota_stderr,
            "samples": estimate.samples,
            "escapes": estimate.escapes,
        })
        .to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_parses_every_subcommand() {
        RunManifest::parse_from(["powerpoly", "index", "--game", "[3;2,1,1]", "--kind", "awti"]);
        RunManifest::parse_from(["powerpoly", "census", "--n", "3", "--format", "json"]);
        RunManifest::parse_from([
            "powerpoly", "seats", "--votes", "10,20", "--house", "5", "--method", "awi",
        ]);
    }

    #[test]
    fn voter_arguments_are_one_based() {
        assert_eq!(voter_arg(Some(1), "i").unwrap(), 0);
        assert!(voter_arg(Some(0), "i").is_err());
        assert!(voter_arg(None, "i").is_err());
    }

    #[test]
    fn seat_game_round_trips_through_text() {
        let game = WeightedGame::parse("[92;52,47,40,24,11,9]").unwrap();
        assert_eq!(WeightedGame::parse(&game.to_text()).unwrap(), game);
    }
}
