//! Command-line front end: expansions, keys, rebasing, block-sum reports,
//! root sets, and the (p, b) sweep.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use midybase::expansion::{self, Expansion, RenderStyle, DEFAULT_DIGIT_CAP};
use midybase::midy;
use midybase::numtheory;
use midybase::rebase;
use midybase::sweep::{self, SweepParams, SweepRecord};

#[derive(Parser)]
#[command(
    name = "midybase",
    version,
    about = "Exact periodic radix expansions, base-change keys, and block-sum checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable lines.
    Plain,
    /// One JSON object on stdout.
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Style {
    /// Alphanumeric digits for bases up to 36, bracketed numbers beyond.
    Auto,
    /// Alphanumeric digits only; bases above 36 are rejected.
    Alnum,
    /// Every digit as a bracketed number, any base.
    Bracket,
}

impl From<Style> for RenderStyle {
    fn from(style: Style) -> Self {
        match style {
            Style::Auto => RenderStyle::Auto,
            Style::Alnum => RenderStyle::Alnum,
            Style::Bracket => RenderStyle::Bracket,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Expand num/den in a base into preperiodic and periodic digits.
    Expand {
        #[arg(long)]
        num: u64,
        #[arg(long)]
        den: u64,
        #[arg(long)]
        base: u64,
        /// Fail instead of computing more digits than this.
        #[arg(long, default_value_t = DEFAULT_DIGIT_CAP)]
        max_digits: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Style::Auto)]
        style: Style,
    },
    /// Print the base-change key of a modulus: powers of the base mod m.
    Key {
        /// The modulus m of the fraction n/m being transported.
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        base: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Expand num/den in a base, then transport the digits to base + den*t.
    Rebase {
        #[arg(long)]
        num: u64,
        #[arg(long)]
        den: u64,
        #[arg(long)]
        base: u64,
        /// Base step count: the target base is base + den*t.
        #[arg(long)]
        t: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Style::Auto)]
        style: Style,
    },
    /// Split the period of 1/p into d blocks and report their sum and alpha.
    Midy {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        base: u64,
        #[arg(long)]
        d: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Print alpha for (p, d): the sum of the d-th roots of unity mod p,
    /// divided by p.
    Alpha {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// List the d-th roots of unity modulo an odd prime p.
    Roots {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Tabulate alpha over primes p <= p-max and bases 2..=base-max as CSV.
    Sweep {
        #[arg(long)]
        p_max: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        base_max: u64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (default: all available cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), Box<dyn std::error::Error>> {
    match cli.command {
        Command::Expand {
            num,
            den,
            base,
            max_digits,
            format,
            style,
        } => {
            let e = expansion::expand_with_cap(num, den, base, max_digits)?;
            print_expansion(&e, format, style.into())?;
        }
        Command::Key {
            modulus,
            base,
            format,
        } => {
            let key = rebase::key_of(modulus, base)?;
            match format {
                Format::Plain => println!("{key}"),
                Format::Structured => println!(
                    "{}",
                    serde_json::json!({
                        "modulus": key.modulus(),
                        "base": key.base(),
                        "residues": key.residues(),
                    })
                ),
            }
        }
        Command::Rebase {
            num,
            den,
            base,
            t,
            format,
            style,
        } => {
            let e = expansion::expand(num, den, base)?;
            let moved = rebase::rebase(&e, t)?;
            print_expansion(&moved, format, style.into())?;
        }
        Command::Midy { p, base, d, format } => {
            let report = midy::report(p, base, d)?;
            match format {
                Format::Plain => {
                    println!("p: {}", report.p);
                    println!("base: {}", report.base);
                    println!("ell: {}", report.ell);
                    println!("d: {}", report.d);
                    for (i, block) in report.blocks.iter().enumerate() {
                        println!(
                            "block {}: {}",
                            i + 1,
                            render_block(block, report.base, report.block_digit_width)?
                        );
                    }
                    println!("sum: {}", render_value(&report.sum, report.base)?);
                    println!("repunit: {}", render_value(&report.repunit, report.base)?);
                    println!("alpha: {}", report.alpha);
                }
                Format::Structured => {
                    let blocks: Vec<String> =
                        report.blocks.iter().map(|b| b.to_string()).collect();
                    println!(
                        "{}",
                        serde_json::json!({
                            "p": report.p,
                            "b": report.base,
                            "ell": report.ell,
                            "d": report.d,
                            "block_digit_width": report.block_digit_width,
                            "blocks": blocks,
                            "sum": report.sum.to_string(),
                            "repunit": report.repunit.to_string(),
                            "alpha": report.alpha,
                            "sum_rendered": render_value(&report.sum, report.base)?,
                            "repunit_rendered": render_value(&report.repunit, report.base)?,
                        })
                    );
                }
            }
        }
        Command::Alpha { p, d, format } => {
            let alpha = numtheory::alpha_constant(p, d)?;
            match format {
                Format::Plain => println!("{alpha}"),
                Format::Structured => {
                    println!("{}", serde_json::json!({ "p": p, "d": d, "alpha": alpha }))
                }
            }
        }
        Command::Roots { p, d, format } => {
            let set = numtheory::dth_roots_of_unity(d, p)?;
            match format {
                Format::Plain => {
                    let line: Vec<String> = set.roots.iter().map(u64::to_string).collect();
                    println!("{}", line.join(" "));
                }
                Format::Structured => println!(
                    "{}",
                    serde_json::json!({ "p": set.p, "d": set.d, "roots": set.roots })
                ),
            }
        }
        Command::Sweep {
            p_max,
            d,
            base_max,
            out,
            jobs,
        } => {
            let records = sweep::run_sweep(&SweepParams {
                p_max,
                d,
                base_max,
                jobs,
            })?;
            match out {
                Some(path) => {
                    let mut file = File::create(&path)?;
                    sweep::write_csv(&records, &mut file)?;
                    file.flush()?;
                    let stdout = io::stdout();
                    emit_sweep_notes(&records, stdout.lock())?;
                }
                None => {
                    let stdout = io::stdout();
                    sweep::write_csv(&records, stdout.lock())?;
                    let stderr = io::stderr();
                    emit_sweep_notes(&records, stderr.lock())?;
                }
            }
        }
    }
    Ok(())
}

fn print_expansion(e: &Expansion, format: Format, style: RenderStyle) -> midybase::Result<()> {
    match format {
        Format::Plain => println!("{}", expansion::render(e, style)?),
        Format::Structured => {
            let (num, den) = e.source();
            println!(
                "{}",
                serde_json::json!({
                    "base": e.base(),
                    "preperiod": e.preperiod(),
                    "period": e.period(),
                    "num": num,
                    "den": den,
                    "rendered": expansion::render(e, style)?,
                })
            );
        }
    }
    Ok(())
}

/// Renders a block value in the report's base, zero-padded on the left to
/// the block digit width.
fn render_block(value: &BigUint, base: u64, width: u64) -> midybase::Result<String> {
    let mut digits = expansion::digits_in_base(value, base)?;
    if digits == [0] {
        digits.clear();
    }
    let width = width as usize;
    let mut padded = vec![0u64; width - digits.len()];
    padded.append(&mut digits);
    expansion::render_digits(&padded, base, RenderStyle::Auto)
}

fn render_value(value: &BigUint, base: u64) -> midybase::Result<String> {
    let digits = expansion::digits_in_base(value, base)?;
    expansion::render_digits(&digits, base, RenderStyle::Auto)
}

/// Summary lines and any out-of-range findings, after the CSV itself.
fn emit_sweep_notes<W: Write>(records: &[SweepRecord], mut out: W) -> io::Result<()> {
    let summary = sweep::summarize(records);
    if summary.rows == 0 {
        writeln!(out, "warning: no records matched the sweep parameters")?;
        return Ok(());
    }
    writeln!(out, "rows: {}", summary.rows)?;
    writeln!(
        out,
        "alpha range: {}..={}",
        summary.alpha_min.expect("nonempty"),
        summary.alpha_max.expect("nonempty")
    )?;
    let histogram: Vec<String> = summary
        .histogram
        .iter()
        .map(|(alpha, count)| format!("{alpha}:{count}"))
        .collect();
    writeln!(out, "alpha histogram: {}", histogram.join(" "))?;
    for r in sweep::alpha_range_findings(records) {
        writeln!(
            out,
            "FINDING: alpha out of range at p={} b={}: ell={} d={} alpha={}",
            r.p, r.b, r.ell, r.d, r.alpha
        )?;
    }
    Ok(())
}
