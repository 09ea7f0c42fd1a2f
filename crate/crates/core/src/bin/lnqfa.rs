use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lnqfa::verify::{self, fixed12, to_json};

/// Build and check the n+2 state quantum automaton for L_n.
#[derive(Parser)]
#[command(name = "lnqfa", version)]
struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Acceptance probability of one word.
    Run {
        /// Odd modulus n > 2.
        #[arg(long = "n")]
        n: u64,
        /// Word over {a, b}; may be empty.
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Check the probability bounds over all short words and random long ones.
    Scan {
        /// Odd modulus n > 2.
        #[arg(long = "n")]
        n: u64,
        /// Enumerate every word up to this length.
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Number of random longer words to test.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Seed for the random words.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Classify every power of M_n.
    Lemmas {
        /// Odd modulus n > 2.
        #[arg(long = "n")]
        n: u64,
    },
    /// QFA vs DFA state counts.
    Compare {
        /// Odd modulus n > 2.
        #[arg(long = "n")]
        n: u64,
    },
    /// Write the QFA, DFA and circulant JSON files.
    Export {
        /// Odd modulus n > 2.
        #[arg(long = "n")]
        n: u64,
        /// Output directory (created if missing).
        #[arg(long)]
        out: PathBuf,
    },
}

const VERIFY_FAILED: u8 = 1;
const USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE)
        }
    }
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(VERIFY_FAILED)
    }
}

fn execute(cli: &Cli) -> lnqfa::Result<ExitCode> {
    match &cli.command {
        Command::Run { n, word } => {
            let r = verify::run_report(*n, word)?;
            if cli.json {
                println!("{}", to_json(&r));
            } else {
                println!("word        = {:?}", r.word);
                println!("count_a     = {}", r.stats.count_a);
                println!("count_b     = {}", r.stats.count_b);
                println!("p_accept    = {}", fixed12(r.p_accept));
                println!("p_reject    = {}", fixed12(r.p_reject));
                println!("p_residual  = {}", fixed12(r.p_residual));
                println!("member      = {}", r.member);
                println!(
                    "bound       = {} (1/p_min, p_min = {})",
                    fixed12(r.bound),
                    r.p_min
                );
                println!("within      = {}", r.within_bound);
            }
            Ok(status(r.within_bound))
        }
        Command::Scan {
            n,
            max_len,
            samples,
            seed,
        } => {
            let r = verify::scan(*n, *max_len, *samples, *seed)?;
            if cli.json {
                println!("{}", to_json(&r));
            } else {
                println!("n = {}, p_min = {}", r.n, r.p_min);
                println!("words scanned      {}", r.words_scanned);
                println!("members            {}", r.members);
                println!("min member prob    {}", fixed12(r.min_member_prob));
                println!("max nonmember prob {}", fixed12(r.max_nonmember_prob));
                println!("bound              {}", fixed12(r.bound));
                println!("counterexamples    {}", r.counterexamples.len());
                println!("shuffle mismatches {}", r.shuffle_mismatches.len());
                for c in &r.counterexamples {
                    println!(
                        "  {:?} member={} p={}",
                        c.word,
                        c.member,
                        fixed12(c.p_accept)
                    );
                }
            }
            eprintln!(
                "scanned {} words in {:.3}s",
                r.words_scanned,
                r.elapsed.as_secs_f64()
            );
            Ok(status(r.ok()))
        }
        Command::Lemmas { n } => {
            let r = verify::lemmas(*n)?;
            if cli.json {
                println!("{}", to_json(&r));
            } else {
                println!(
                    "{:>4} {:>4} {:>4} {:>4} {:>16} {:>16}",
                    "s", "l", "g", "k", "|c|", "|x0|^2"
                );
                let dash = || "-".to_string();
                for row in &r.rows {
                    println!(
                        "{:>4} {:>4} {:>4} {:>4} {:>16} {:>16}",
                        row.s,
                        row.l.map_or_else(dash, |v| v.to_string()),
                        row.g.map_or_else(dash, |v| v.to_string()),
                        row.k.map_or_else(dash, |v| v.to_string()),
                        row.c_abs.map_or_else(dash, fixed12),
                        fixed12(row.x0_sq),
                    );
                }
                if let Some(ok) = r.lemma2_ok {
                    println!("prime structure (l = 1, k = 1/s): {ok}");
                }
                println!("period structure (l < n, l(n) = n): {}", r.lemma3_ok);
                println!("origin bound (|x0|^2 <= 1/p_min):   {}", r.corollary1_ok);
            }
            Ok(status(r.ok()))
        }
        Command::Compare { n } => {
            let r = verify::compare(*n)?;
            if cli.json {
                println!("{}", to_json(&r));
            } else {
                println!(
                    "QFA states         {} ({} simulated)",
                    r.paper_state_count, r.internal_state_count
                );
                println!("DFA states         {}", r.dfa_states);
                match r.minimized_dfa_states {
                    Some(m) => println!("minimal DFA states {m}"),
                    None => println!(
                        "minimal DFA states (skipped, n > {})",
                        verify::MINIMIZE_LIMIT
                    ),
                }
                println!("ratio              {}", fixed12(r.ratio));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Export { n, out } => {
            let files = verify::export(*n, out)?;
            if cli.json {
                let names: Vec<String> = files.iter().map(|p| p.display().to_string()).collect();
                println!("{}", to_json(&names));
            } else {
                for f in files {
                    println!("wrote {}", f.display());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
