use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use carpet_core::addressing::{canonical_word, word_to_coord, Coord};
use carpet_core::ball::{ball_at_level, limit_ball, stabilization_level};
use carpet_core::graph::{build_cells, d_sequence};
use carpet_core::iso::{classify, rooted_iso_finite, transport, unrooted_iso, RootedPair};
use carpet_core::word::{dihedral_group, FiniteWord, InfiniteWord};
use carpet_core::{limits, CarpetError};

mod render;
mod selftest;

#[derive(Parser)]
#[command(
    name = "carpet",
    version,
    about = "Sierpinski carpet graphs and their limit-graph isomorphism classes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the level-n graph.
    Gen {
        #[arg(short)]
        n: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Pixels per lattice unit (SVG only).
        #[arg(long, default_value_t = 12)]
        unit: u32,
    },
    /// Counts for the level-n graph.
    Stats {
        #[arg(short)]
        n: u32,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Coordinate of the vertex named by a finite word.
    Coord {
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Lexicographically least word naming the same vertex.
    Canon {
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Distances to the internal boundary, levels 2..=N.
    Dseq {
        word: String,
        #[arg(short = 'N')]
        depth: u32,
        #[arg(long)]
        json: bool,
    },
    /// Rooted isomorphism of the level-N approximations.
    IsoRooted {
        left: String,
        right: String,
        #[arg(short = 'N')]
        depth: u32,
        #[arg(long)]
        json: bool,
    },
    /// Unrooted isomorphism of the limit graphs.
    Iso {
        left: String,
        right: String,
        #[arg(long)]
        json: bool,
    },
    /// Partition words into isomorphism classes of limit graphs.
    Classify {
        #[arg(required = true)]
        words: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Rooted ball of radius r in the limit graph (or at a fixed level).
    Ball {
        word: String,
        #[arg(short)]
        r: u32,
        #[arg(long)]
        level: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// The eight images of a word under the symmetry group.
    Orbit {
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the built-in consistency checks.
    Selftest,
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    schema: u32,
    #[serde(flatten)]
    body: T,
}

fn json<T: Serialize>(body: T) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope { schema: 1, body })
        .expect("output types serialize");
    s.push('\n');
    s
}

fn finite(s: &str) -> Result<FiniteWord, CarpetError> {
    Ok(s.parse::<FiniteWord>()?)
}

fn infinite(s: &str) -> Result<InfiniteWord, CarpetError> {
    Ok(s.parse::<InfiniteWord>()?)
}

#[derive(Serialize)]
struct CoordOut {
    word: String,
    coord: Coord,
}

#[derive(Serialize)]
struct DseqOut {
    word: String,
    depth: u32,
    values: carpet_core::DistanceSeq,
}

#[derive(Serialize)]
struct RootedOut {
    left: String,
    right: String,
    depth: u32,
    isomorphic: bool,
    left_dseq: carpet_core::DistanceSeq,
    right_dseq: carpet_core::DistanceSeq,
}

#[derive(Serialize)]
struct IsoOut {
    left: String,
    right: String,
    #[serde(flatten)]
    verdict: carpet_core::IsoVerdict,
}

#[derive(Serialize)]
struct MemberOut {
    word: String,
    witness: String,
}

#[derive(Serialize)]
struct ClassesOut {
    classes: Vec<Vec<MemberOut>>,
}

#[derive(Serialize)]
struct OrbitEntry {
    element: String,
    tail: String,
    word: String,
}

#[derive(Serialize)]
struct OrbitOut {
    word: String,
    images: Vec<OrbitEntry>,
}

fn run(command: Command) -> Result<(String, bool), CarpetError> {
    let out = match command {
        Command::Gen { n, format, unit } => {
            let g = build_cells(n)?;
            match format {
                Format::Json => {
                    let mut s = serde_json::to_string(&Envelope {
                        schema: 1,
                        body: &g,
                    })
                    .expect("graphs serialize");
                    s.push('\n');
                    s
                }
                Format::Dot => render::dot(&g),
                Format::Svg => render::svg(&g, unit.max(1)),
            }
        }
        Command::Stats {
            n,
            json: as_json,
            csv,
        } => {
            let stats = render::Stats::of(&build_cells(n)?);
            if csv {
                stats.csv()
            } else if as_json {
                json(stats)
            } else {
                stats.text()
            }
        }
        Command::Coord {
            word,
            json: as_json,
        } => {
            let w = finite(&word)?;
            let coord = word_to_coord(&w);
            if as_json {
                json(CoordOut {
                    word: w.to_string(),
                    coord,
                })
            } else {
                format!("{coord}\n")
            }
        }
        Command::Canon {
            word,
            json: as_json,
        } => {
            let w = finite(&word)?;
            let canon = canonical_word(&w);
            if as_json {
                json(serde_json::json!({ "word": w.to_string(), "canonical": canon.to_string() }))
            } else {
                format!("{canon}\n")
            }
        }
        Command::Dseq {
            word,
            depth,
            json: as_json,
        } => {
            let w = infinite(&word)?;
            let values = d_sequence(&w, depth)?;
            if as_json {
                json(DseqOut {
                    word: w.to_string(),
                    depth,
                    values,
                })
            } else {
                format!("{values}\n")
            }
        }
        Command::IsoRooted {
            left,
            right,
            depth,
            json: as_json,
        } => {
            let pair = RootedPair {
                left: infinite(&left)?,
                right: infinite(&right)?,
                depth,
            };
            let isomorphic = rooted_iso_finite(&pair)?;
            let out = RootedOut {
                left: pair.left.to_string(),
                right: pair.right.to_string(),
                depth,
                isomorphic,
                left_dseq: d_sequence(&pair.left, depth)?,
                right_dseq: d_sequence(&pair.right, depth)?,
            };
            if as_json {
                json(out)
            } else {
                format!(
                    "{} depth={} left={} right={}\n",
                    if isomorphic {
                        "isomorphic"
                    } else {
                        "not isomorphic"
                    },
                    depth,
                    out.left_dseq,
                    out.right_dseq
                )
            }
        }
        Command::Iso {
            left,
            right,
            json: as_json,
        } => {
            let (l, r) = (infinite(&left)?, infinite(&right)?);
            let verdict = unrooted_iso(&l, &r);
            if as_json {
                json(IsoOut {
                    left: l.to_string(),
                    right: r.to_string(),
                    verdict,
                })
            } else {
                match verdict.witness {
                    Some(w) => format!("isomorphic witness={w}\n"),
                    None => "not isomorphic\n".to_string(),
                }
            }
        }
        Command::Classify {
            words,
            json: as_json,
        } => {
            let ws = words
                .iter()
                .map(|s| infinite(s))
                .collect::<Result<Vec<_>, _>>()?;
            let classes = classify(&ws);
            if as_json {
                json(ClassesOut {
                    classes: classes
                        .iter()
                        .map(|c| {
                            c.members
                                .iter()
                                .map(|m| MemberOut {
                                    word: m.word.to_string(),
                                    witness: m.witness.cycle_notation(),
                                })
                                .collect()
                        })
                        .collect(),
                })
            } else {
                let mut s = String::new();
                for (k, c) in classes.iter().enumerate() {
                    let members: Vec<String> = c
                        .members
                        .iter()
                        .map(|m| format!("{}[{}]", m.word, m.witness))
                        .collect();
                    s.push_str(&format!("class {}: {}\n", k + 1, members.join(" ")));
                }
                s
            }
        }
        Command::Ball {
            word,
            r,
            level,
            json: as_json,
        } => {
            let w = infinite(&word)?;
            let ball = match level {
                Some(n) => ball_at_level(&w, r, n)?,
                None => limit_ball(&w, r)?,
            };
            if as_json {
                json(&ball)
            } else {
                let offsets: Vec<String> = ball
                    .offsets()
                    .iter()
                    .map(|(x, y)| format!("({x},{y})"))
                    .collect();
                let mut s = format!(
                    "radius={} level={} vertices={} edges={}",
                    ball.radius(),
                    ball.level(),
                    ball.vertex_count(),
                    ball.edges().len()
                );
                if level.is_none() {
                    s.push_str(&format!(
                        " stabilization_level={}",
                        stabilization_level(&w, r)?
                    ));
                }
                s.push('\n');
                s.push_str(&offsets.join(" "));
                s.push('\n');
                s
            }
        }
        Command::Orbit {
            word,
            json: as_json,
        } => {
            let w = infinite(&word)?;
            let images: Vec<OrbitEntry> = dihedral_group()
                .iter()
                .map(|sigma| OrbitEntry {
                    element: sigma.cycle_notation(),
                    tail: sigma.apply(&w.tail).to_string(),
                    word: transport(&w, sigma).to_string(),
                })
                .collect();
            if as_json {
                json(OrbitOut {
                    word: w.to_string(),
                    images,
                })
            } else {
                images
                    .iter()
                    .map(|e| format!("{:<18} {:<12} {}\n", e.element, e.tail, e.word))
                    .collect()
            }
        }
        Command::Selftest => {
            let (report, ok) = selftest::run();
            return Ok((report, ok));
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = limits::init_from_env() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match run(cli.command) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
