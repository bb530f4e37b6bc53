use std::io::Write;

use clap::{Subcommand, ValueEnum};
use npeano::analysis::{BinRule, HOLDER_CONSTANT};
use npeano::{Analyzer, DigitSeq, PeanoCurve, Tail};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{CliError, CliResult, Config, Format, Violations};

#[derive(Debug, Subcommand)]
pub enum AnalyzeCommand {
    /// First-digit census `|Q_i(s)|` for every coordinate.
    Census,
    /// Bin counts of `x_i` over the depth-J grid (`--bin-depth` sets d).
    Histogram {
        #[arg(long, value_enum, default_value_t = Rule::Representation)]
        rule: Rule,
    },
    /// Largest Hölder ratio at every depth up to J.
    Holder,
    /// Lower-modulus witnesses at depths 1..=J for `--trials` random parameters.
    Witness,
    /// Box-counting slope of the graph of `x_i` over `--levels`.
    Dimension,
    /// Exact self-affinity residuals for `--trials` random cuts.
    Selfaffine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    Representation,
    UpperEdge,
}

pub fn run(
    cmd: &AnalyzeCommand,
    config: &Config,
    max_cells: u64,
    out: &mut dyn Write,
) -> CliResult<Violations> {
    let analyzer = Analyzer::new(config.dim)?.with_max_cells(max_cells);
    match cmd {
        AnalyzeCommand::Census => census(&analyzer, config, out),
        AnalyzeCommand::Histogram { rule } => histogram(&analyzer, config, *rule, out),
        AnalyzeCommand::Holder => holder(&analyzer, config, out),
        AnalyzeCommand::Witness => witness(&analyzer, config, out),
        AnalyzeCommand::Dimension => dimension(&analyzer, config, out),
        AnalyzeCommand::Selfaffine => selfaffine(analyzer.curve(), config, out),
    }
}

fn depth(config: &Config, default: usize) -> CliResult<usize> {
    match config.depth.unwrap_or(default) {
        0 => Err(CliError::Usage("--depth must be at least 1".into())),
        d => Ok(d),
    }
}

fn json(out: &mut dyn Write, value: &impl Serialize) -> CliResult<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn census(analyzer: &Analyzer, config: &Config, out: &mut dyn Write) -> CliResult<Violations> {
    let table = analyzer.census_table()?;
    let expected = table.expected();
    let mut violations = Vec::new();
    for (i, row) in table.counts.iter().enumerate() {
        for (s, &c) in row.iter().enumerate() {
            if c != expected {
                violations.push(format!("census i={} s={s}: {c} != {expected}", i + 1));
            }
        }
    }
    match config.format {
        Format::Text | Format::Csv => {
            writeln!(out, "i,s,count")?;
            for (i, row) in table.counts.iter().enumerate() {
                for (s, c) in row.iter().enumerate() {
                    writeln!(out, "{},{s},{c}", i + 1)?;
                }
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Entry {
                i: usize,
                s: usize,
                count: u64,
            }
            let entries: Vec<Entry> = table
                .counts
                .iter()
                .enumerate()
                .flat_map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(move |(s, &count)| Entry { i: i + 1, s, count })
                })
                .collect();
            json(
                out,
                &serde_json::json!({ "dim": table.dim, "expected": expected, "counts": entries }),
            )?;
        }
    }
    Ok(violations)
}

fn histogram(
    analyzer: &Analyzer,
    config: &Config,
    rule: Rule,
    out: &mut dyn Write,
) -> CliResult<Violations> {
    let grid_depth = depth(config, 3)?;
    let rule = match rule {
        Rule::Representation => BinRule::Representation,
        Rule::UpperEdge => BinRule::UpperEdge,
    };
    let h = analyzer.histogram(config.coord, grid_depth, config.bin_depth, rule)?;
    let expected = h.expected();
    let violations = h
        .counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| (c as f64 - expected).abs() > 1.0)
        .map(|(b, c)| format!("histogram bin {b}: {c} is not within 1 of {expected}"))
        .collect();
    match config.format {
        Format::Text | Format::Csv => {
            writeln!(out, "bin,count")?;
            for (b, c) in h.counts.iter().enumerate() {
                writeln!(out, "{b},{c}")?;
            }
        }
        Format::Json => json(
            out,
            &serde_json::json!({
                "dim": analyzer.dim(),
                "coord": config.coord,
                "grid_depth": h.grid_depth,
                "bin_depth": h.bin_depth,
                "counts": h.counts,
            }),
        )?,
    }
    Ok(violations)
}

fn holder(analyzer: &Analyzer, config: &Config, out: &mut dyn Write) -> CliResult<Violations> {
    let max_depth = depth(config, 3)?;
    let reports = (1..=max_depth)
        .map(|d| analyzer.holder_scan(config.coord, d))
        .collect::<npeano::Result<Vec<_>>>()?;
    let n = analyzer.dim() as u32;
    // compare max_ratio^n against 6^n exactly
    let bound = (HOLDER_CONSTANT as u128).pow(n);
    let mut violations = Vec::new();
    for r in &reports {
        if *r.max_ratio_pow.numer() > bound * *r.max_ratio_pow.denom() {
            violations.push(format!(
                "holder depth {}: ratio {} exceeds {HOLDER_CONSTANT}",
                r.depth, r.max_ratio
            ));
        }
    }
    for w in reports.windows(2).filter(|w| w[0].depth >= 2) {
        if w[1].max_ratio_pow > w[0].max_ratio_pow {
            violations.push(format!(
                "holder ratio grows from depth {} to {}: {} -> {}",
                w[0].depth, w[1].depth, w[0].max_ratio, w[1].max_ratio
            ));
        }
    }
    #[derive(Serialize)]
    struct Row {
        depth: usize,
        max_ratio: String,
        max_ratio_pow: String,
        t: String,
        u: String,
        pairs: u64,
    }
    let rows: Vec<Row> = reports
        .iter()
        .map(|r| Row {
            depth: r.depth,
            max_ratio: format!("{:.6}", r.max_ratio),
            max_ratio_pow: r.max_ratio_pow.to_string(),
            t: r.t.to_string(),
            u: r.u.to_string(),
            pairs: r.pairs,
        })
        .collect();
    match config.format {
        Format::Text | Format::Csv => {
            writeln!(out, "depth,max_ratio,max_ratio_pow,t,u,pairs")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.depth, r.max_ratio, r.max_ratio_pow, r.t, r.u, r.pairs
                )?;
            }
        }
        Format::Json => json(
            out,
            &serde_json::json!({ "dim": n, "coord": config.coord, "bound": HOLDER_CONSTANT, "scans": rows }),
        )?,
    }
    Ok(violations)
}

/// A canonical parameter with `len` random digits.
fn random_param(rng: &mut ChaCha8Rng, len: usize) -> DigitSeq {
    let digits: Vec<u8> = (0..len).map(|_| rng.gen_range(0..3)).collect();
    DigitSeq::from_digits(&digits, Tail::Zero)
        .expect("digits are ternary")
        .canonical()
}

fn witness(analyzer: &Analyzer, config: &Config, out: &mut dyn Write) -> CliResult<Violations> {
    let max_depth = depth(config, 6)?;
    let n = analyzer.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    #[derive(Serialize)]
    struct Row {
        trial: usize,
        depth: usize,
        t: String,
        u: String,
        delta_x: String,
        delta_t: String,
        quotient: String,
    }
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for trial in 0..config.trials {
        let t = random_param(&mut rng, n * (max_depth + 2));
        for d in 1..=max_depth {
            let w = analyzer.lower_modulus_witness(config.coord, &t, d)?;
            // delta_x >= 3^-d / 2
            let twice = w.delta_x.numerator() * 2u32 * npeano::ternary::pow3(d as u32);
            if twice < npeano::ternary::pow3(w.delta_x.exponent()) {
                violations.push(format!(
                    "witness t={t} depth {d}: |dx| = {} < 3^-{d}/2",
                    w.delta_x
                ));
            }
            rows.push(Row {
                trial,
                depth: d,
                t: t.to_string(),
                u: w.u.to_string(),
                delta_x: w.delta_x.to_string(),
                delta_t: w.delta_t.to_string(),
                quotient: format!("{:.6e}", w.quotient),
            });
        }
    }
    match config.format {
        Format::Text | Format::Csv => {
            writeln!(out, "trial,depth,t,u,delta_x,delta_t,quotient")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.trial, r.depth, r.t, r.u, r.delta_x, r.delta_t, r.quotient
                )?;
            }
        }
        Format::Json => json(
            out,
            &serde_json::json!({ "dim": n, "coord": config.coord, "seed": config.seed, "witnesses": rows }),
        )?,
    }
    Ok(violations)
}

fn dimension(analyzer: &Analyzer, config: &Config, out: &mut dyn Write) -> CliResult<Violations> {
    let levels = config
        .levels
        .clone()
        .ok_or_else(|| CliError::Usage("analyze dimension needs --levels A..B".into()))?;
    let e = analyzer.box_counting(config.coord, levels)?;
    let mut violations = Vec::new();
    for (k, (&l, &c)) in e.levels.iter().zip(&e.box_counts).enumerate() {
        if c > 9u64.saturating_pow(l as u32) {
            violations.push(format!("level {l}: {c} boxes exceed 9^{l}"));
        }
        if k > 0 && c < e.box_counts[k - 1] {
            violations.push(format!("level {l}: box count decreased"));
        }
    }
    let slope = format!("{:.6}", e.slope);
    match config.format {
        Format::Text | Format::Csv => {
            writeln!(out, "level,box_count")?;
            for (l, c) in e.levels.iter().zip(&e.box_counts) {
                writeln!(out, "{l},{c}")?;
            }
            writeln!(out, "# slope {slope}, expected {}", e.expected)?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Level {
                level: usize,
                box_count: u64,
            }
            let levels: Vec<Level> = e
                .levels
                .iter()
                .zip(&e.box_counts)
                .map(|(&level, &box_count)| Level { level, box_count })
                .collect();
            json(
                out,
                &serde_json::json!({
                    "dim": analyzer.dim(),
                    "coord": config.coord,
                    "levels": levels,
                    "slope": slope,
                    "expected": e.expected.to_string(),
                }),
            )?;
        }
    }
    Ok(violations)
}

fn selfaffine(curve: &PeanoCurve, config: &Config, out: &mut dyn Write) -> CliResult<Violations> {
    let max_depth = depth(config, 8)?;
    let n = curve.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut violations = Vec::new();
    for _ in 0..config.trials {
        let len = rng.gen_range(0..=n * max_depth);
        let t = random_param(&mut rng, len);
        let i = rng.gen_range(1..=n);
        let k = rng.gen_range(1..=max_depth);
        let r = curve.self_affinity_residual(&t, i, k, max_depth)?;
        if !r.is_zero() {
            violations.push(format!("selfaffine t={t} i={i} k={k}: residual {r}"));
        }
    }
    match config.format {
        Format::Text | Format::Csv => {
            if violations.is_empty() {
                writeln!(out, "residuals: all zero")?;
            } else {
                writeln!(
                    out,
                    "residuals: {} nonzero of {}",
                    violations.len(),
                    config.trials
                )?;
            }
        }
        Format::Json => json(
            out,
            &serde_json::json!({
                "dim": n,
                "depth": max_depth,
                "trials": config.trials,
                "seed": config.seed,
                "nonzero": violations,
            }),
        )?,
    }
    Ok(violations)
}
