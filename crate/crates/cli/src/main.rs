//! `dcoset`: double cosets of finite Coxeter groups and their Bruhat order.
//!
//! Generators are 1-indexed on every surface. Subsets are space-separated
//! (`-I "1 3"`), with `""` or `-` for the empty set; words are hyphen-joined
//! (`--min 2-1`).

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use dcoset::verify::{self, Verifier};
use dcoset::{CoxeterGroup, CoxeterMatrix, GenSet, SinglestepExpr};

#[derive(Parser)]
#[command(name = "dcoset", version, about = "Bruhat order on parabolic double cosets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarise the group and list its elements.
    Group {
        #[command(flatten)]
        source: Source,
    },
    /// TSV table of the (I, J)-cosets.
    Cosets {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        types: Types,
    },
    /// A reduced expression for the (I, J)-coset of an element.
    Rex {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        types: Types,
        /// Any element of the coset, e.g. `2-1`.
        #[arg(long = "min", value_name = "WORD")]
        word: String,
    },
    /// Every path subordinate to an expression.
    Paths {
        #[command(flatten)]
        source: Source,
        /// Expression such as `[],[1],[]`.
        #[arg(long)]
        expr: String,
    },
    /// The termini of the paths subordinate to an expression.
    Term {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        expr: String,
    },
    /// Hasse diagram of the (I, J)-cosets as DOT.
    Hasse {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        types: Types,
        /// Write the diagram here instead of standard output.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Run the verification checks; exits 0 iff all pass.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Longest expression width for checks that range over expressions.
        /// Defaults to 6 at rank 2 or less, 5 at rank 3 and 4 above.
        #[arg(long)]
        width_cap: Option<usize>,
        /// Comma-separated check names; all checks when omitted.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// Add elapsed milliseconds to the report.
        #[arg(long)]
        timings: bool,
        /// Random triples for associativity on groups too large for an
        /// exhaustive test.
        #[arg(long, default_value_t = verify::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// List the checks with the statement each one tests.
    Manifest,
}

#[derive(Args)]
struct Source {
    /// Named group: A1xA1, An, Bn, Dn, H3, H4, I2(k).
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    preset: Option<String>,
    /// Group file with `rank N` and `m i j v` lines.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Enumeration guard on the group size.
    #[arg(long, default_value_t = dcoset::group::DEFAULT_CAP)]
    cap: usize,
}

impl Source {
    fn build(&self) -> Result<CoxeterGroup> {
        match (&self.preset, &self.file) {
            (Some(name), _) => {
                let matrix = CoxeterMatrix::preset(name)?;
                Ok(CoxeterGroup::build(matrix, self.cap)?.with_name(name))
            }
            (None, Some(path)) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let matrix = CoxeterMatrix::parse_file(&text)?;
                let name = path.file_stem().map_or("group".into(), |s| s.to_string_lossy().into_owned());
                Ok(CoxeterGroup::build(matrix, self.cap)?.with_name(&name))
            }
            (None, None) => bail!("one of --preset or --file is required"),
        }
    }
}

#[derive(Args)]
struct Types {
    /// Left subset, e.g. "1 2"; "" or "-" for none.
    #[arg(short = 'I', default_value = "", allow_hyphen_values = true)]
    left: String,
    /// Right subset.
    #[arg(short = 'J', default_value = "", allow_hyphen_values = true)]
    right: String,
}

impl Types {
    fn parse(&self, g: &CoxeterGroup) -> Result<(GenSet, GenSet)> {
        let left = GenSet::parse(&self.left, g.rank()).context("in -I")?;
        let right = GenSet::parse(&self.right, g.rank()).context("in -J")?;
        Ok((left, right))
    }
}

fn default_width_cap(rank: usize) -> usize {
    match rank {
        0..=2 => 6,
        3 => 5,
        _ => 4,
    }
}

fn run(cli: Cli) -> Result<bool> {
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Group { source } => {
            let g = source.build()?;
            let w0 = g.longest_element(g.generators());
            writeln!(out, "name\t{}", g.name())?;
            writeln!(out, "rank\t{}", g.rank())?;
            writeln!(out, "size\t{}", g.size())?;
            writeln!(out, "longest\t{}\t{}", g.format(w0), g.length(w0))?;
            write!(out, "{}", g.matrix())?;
            writeln!(out, "index\tword\tlength")?;
            for x in g.elements() {
                writeln!(out, "{}\t{}\t{}", x.index(), g.format(x), g.length(x))?;
            }
        }
        Command::Cosets { source, types } => {
            let g = source.build()?;
            let (left, right) = types.parse(&g)?;
            write!(out, "{}", g.cosets_tsv(&g.enumerate_cosets(left, right)))?;
        }
        Command::Rex { source, types, word } => {
            let g = source.build()?;
            let (left, right) = types.parse(&g)?;
            let w = g.parse_element(&word).context("in --min")?;
            let p = g.coset_of(w, left, right);
            writeln!(out, "{}", g.find_reduced_expression(&p))?;
        }
        Command::Paths { source, expr } => {
            let g = source.build()?;
            let e = SinglestepExpr::parse(&expr, g.rank()).context("in --expr")?;
            let paths = g.enumerate_paths(&e);
            for (k, path) in paths.iter().enumerate() {
                let tag = if path.is_forward() { " forward" } else { "" };
                writeln!(out, "path {}{tag}", k + 1)?;
                write!(out, "{}", g.render_path(path))?;
            }
            writeln!(out, "{} paths", paths.len())?;
        }
        Command::Term { source, expr } => {
            let g = source.build()?;
            let e = SinglestepExpr::parse(&expr, g.rank()).context("in --expr")?;
            write!(out, "{}", g.cosets_tsv(&g.term_set(&e)))?;
        }
        Command::Hasse { source, types, dot } => {
            let g = source.build()?;
            let (left, right) = types.parse(&g)?;
            let text = g.hasse_dot(left, right);
            match dot {
                Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => write!(out, "{text}")?,
            }
        }
        Command::Verify {
            source,
            width_cap,
            checks,
            timings,
            samples,
            seed,
        } => {
            let g = source.build()?;
            let cap = width_cap.unwrap_or_else(|| default_width_cap(g.rank()));
            let names: Vec<&str> = checks.iter().map(String::as_str).filter(|s| !s.is_empty()).collect();
            let results = Verifier::new(&g, cap).with_samples(samples, seed).run(&names)?;
            write!(out, "{}", verify::report_tsv(&results, timings))?;
            eprint!("{}", verify::summary(&results));
            return Ok(results.iter().all(|r| r.passed()));
        }
        Command::Manifest => write!(out, "{}", verify::manifest())?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
