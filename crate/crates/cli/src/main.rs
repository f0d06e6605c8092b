//! JSON-lines command-line front end for the l1vol library.
//!
//! Every run prints one configuration header line (from which the run is
//! reproducible) followed by result lines, all JSON objects. Rational
//! numbers are rendered as `"p/q"` strings. Exit codes: 0 for success —
//! including honest `Unknown`/`Exhausted` outcomes — 1 for domain errors
//! (and rejected witnesses), 2 for usage errors.

use std::fmt::Display;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use l1vol::rational::Rational;
use l1vol::re_set::ReSet;
use l1vol::scl::{self, Matrix2};
use l1vol::simplicial::{
    self, fixtures, ComplexFile, SearchOutcome, SimplicialComplex, SimvolStream, Witness,
};
use l1vol::streams::{frontier_fill_pairs, inf_ratio, specker, LowerBoundStream, UpperBoundStream};
use l1vol::urm::Natural;
use l1vol::{fields, DyadicInterval};

#[derive(Parser)]
#[command(
    name = "l1vol",
    version,
    about = "Certified enclosures, bound streams, and l1-norm certificates"
)]
struct Cli {
    /// Worker threads for the parallel searches. Output bytes do not
    /// depend on this value.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enclose alpha(n) = 24 arccos(1 - 2^-(n+1)) / pi.
    Alpha {
        #[arg(long)]
        n: u32,
        /// Enclosure width target 2^-bits.
        #[arg(long, default_value_t = 64)]
        bits: u32,
    },
    /// Stable commutator length of the lift of a parabolic-limit matrix.
    Scl {
        /// Four rational entries a,b,c,d (row major).
        #[arg(long, value_delimiter = ',')]
        matrix: Vec<String>,
        #[arg(long, default_value_t = 64)]
        bits: u32,
    },
    /// Volume value K * alpha(n), labeled per unit K.
    Simvol {
        #[arg(long)]
        n: u32,
        /// Multiplicity parameter; the output scales linearly in it.
        #[arg(long = "K", default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 64)]
        bits: u32,
    },
    /// Multiplicative relation search among the unit-circle generators
    /// attached to Mersenne primes.
    Independence {
        /// Prime exponents p of the generators gamma_p.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u32>,
        /// Exponent bound for the exact search.
        #[arg(long)]
        bound: u32,
        /// Also run the certified numeric search at this precision.
        #[arg(long)]
        numeric_bits: Option<u32>,
        /// Coefficient bound for the numeric search (defaults to --bound).
        #[arg(long)]
        coeff_bound: Option<u32>,
    },
    /// Binary-weight bound streams of a recursively enumerable set.
    Specker {
        /// One of: evens, odds, threes, all, empty, halting.
        #[arg(long)]
        set: String,
        /// Advances per stream.
        #[arg(long)]
        budget: u64,
    },
    /// Dump a named bound stream.
    Stream {
        /// One of: succ-ratio, evens-lower, evens-upper, threes-lower,
        /// threes-upper, halting-lower.
        #[arg(long)]
        name: String,
        #[arg(long)]
        steps: u64,
    },
    /// Integral homology via Smith normal form.
    Homology {
        /// Complex file, or a builtin name (triangle, sphere, torus, klein).
        #[arg(long)]
        complex: String,
        /// Single degree; all degrees up to the dimension when absent.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// l1-norm certification: search, verify, and stream bounds.
    #[command(subcommand)]
    L1(L1Command),
}

#[derive(Subcommand)]
enum L1Command {
    /// Search for a witness within the given norm and depth budgets.
    SemiDecide {
        /// Complex file, or a builtin name (triangle, sphere, torus, klein).
        #[arg(long)]
        complex: String,
        /// Multiplicity of the fundamental class.
        #[arg(long, default_value_t = 1)]
        m: u64,
        /// Norm budget.
        #[arg(long)]
        n: u64,
        /// Domain subdivision depth budget.
        #[arg(long)]
        rmax: usize,
        /// Target subdivision depth budget.
        #[arg(long, default_value_t = 0)]
        smax: usize,
        /// Write a certified witness (with its target embedded) here.
        #[arg(long)]
        out: Option<String>,
    },
    /// Re-verify a stored witness file.
    Verify {
        /// Witness file; its embedded target is used unless --complex is given.
        #[arg(long)]
        witness: String,
        /// Complex file or builtin name overriding the embedded target.
        #[arg(long)]
        complex: Option<String>,
    },
    /// Advance the scheduled bound stream for a fundamental class.
    Stream {
        /// Complex file, or a builtin name (triangle, sphere, torus, klein).
        #[arg(long)]
        complex: String,
        /// Number of schedule cells to process after the seed emission.
        #[arg(long)]
        cells: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn emit(line: Value) {
    println!("{line}");
}

fn rat(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn interval(enclosure: &DyadicInterval) -> (Value, Value, Value) {
    let (lo, hi) = enclosure.to_rationals();
    (rat(&lo), rat(&hi), rat(&enclosure.width()))
}

fn run(cli: Cli) -> Result<(), String> {
    let threads = cli.threads.max(1);
    match cli.command {
        Command::Alpha { n, bits } => {
            emit(json!({"command": "alpha", "n": n, "bits": bits, "threads": threads}));
            let value = scl::alpha(n, bits);
            let (lo, hi, width) = interval(&value.enclosure);
            let mut line = json!({"n": n, "lo": lo, "hi": hi, "width": width});
            if let Some(exact) = value.exact {
                line["exact"] = rat(&exact);
            }
            emit(line);
            Ok(())
        }
        Command::Scl { matrix, bits } => {
            emit(json!({
                "command": "scl", "matrix": matrix, "bits": bits, "threads": threads
            }));
            let entries: Vec<Rational> = matrix
                .iter()
                .map(|s| s.parse::<Rational>().map_err(|e| format!("matrix entry {s:?}: {e}")))
                .collect::<Result<_, _>>()?;
            let [a, b, c, d]: [Rational; 4] = entries
                .try_into()
                .map_err(|_| "matrix needs exactly four entries a,b,c,d".to_string())?;
            let matrix = Matrix2::new(a, b, c, d).map_err(display)?;
            let value = scl::scl_lift(&matrix, bits).map_err(display)?;
            let (lo, hi, width) = interval(&value);
            emit(json!({"lo": lo, "hi": hi, "width": width}));
            Ok(())
        }
        Command::Simvol { n, k, bits } => {
            emit(json!({"command": "simvol", "n": n, "K": k, "bits": bits, "threads": threads}));
            if k < 1 {
                return Err("K must be at least 1".into());
            }
            let value = scl::simvol_value(n, k, bits);
            let (lo, hi, width) = interval(&value.enclosure);
            let mut line = json!({"n": n, "K": k, "lo": lo, "hi": hi, "width": width});
            if let Some(exact) = value.exact {
                line["exact"] = rat(&exact);
            }
            emit(line);
            Ok(())
        }
        Command::Independence {
            primes,
            bound,
            numeric_bits,
            coeff_bound,
        } => {
            emit(json!({
                "command": "independence", "primes": primes, "bound": bound,
                "numeric_bits": numeric_bits, "coeff_bound": coeff_bound,
                "threads": threads
            }));
            let relations = fields::relation_search_exact(&primes, bound, threads)
                .map_err(display)?;
            emit(json!({
                "check": "exact", "bound": bound,
                "relations": relations, "independent": relations.is_empty()
            }));
            if let Some(bits) = numeric_bits {
                let coeffs = coeff_bound.unwrap_or(bound);
                let verdict =
                    fields::relation_search_numeric(&primes, coeffs, bits).map_err(display)?;
                let line = match verdict {
                    fields::RelationVerdict::NoRelationFound { margin } => json!({
                        "check": "numeric", "bits": bits, "coeff_bound": coeffs,
                        "verdict": "no-relation-found", "margin": rat(&margin)
                    }),
                    fields::RelationVerdict::RelationsFound { relations } => json!({
                        "check": "numeric", "bits": bits, "coeff_bound": coeffs,
                        "verdict": "relations-found", "relations": relations
                    }),
                    fields::RelationVerdict::InsufficientPrecision => json!({
                        "check": "numeric", "bits": bits, "coeff_bound": coeffs,
                        "verdict": "insufficient-precision"
                    }),
                };
                emit(line);
            }
            Ok(())
        }
        Command::Specker { set, budget } => {
            emit(json!({
                "command": "specker", "set": set, "budget": budget, "threads": threads
            }));
            let set = named_set(&set)?;
            let (mut lower, mut upper) = specker(&set);
            for k in 0..budget {
                if let Some(bound) = lower.advance().map_err(display)? {
                    emit(json!({"k": k, "bound": rat(&bound), "kind": "lower"}));
                }
                if let Some(bound) = upper.advance().map_err(display)? {
                    emit(json!({"k": k, "bound": rat(&bound), "kind": "upper"}));
                }
            }
            emit(json!({"summary": {
                "lower_best": lower.best().map(|b| rat(b)),
                "upper_best": upper.best().map(|b| rat(b))
            }}));
            Ok(())
        }
        Command::Stream { name, steps } => {
            emit(json!({"command": "stream", "name": name, "steps": steps, "threads": threads}));
            match named_stream(&name)? {
                NamedStream::Upper(mut stream) => {
                    for k in 0..steps {
                        if let Some(bound) = stream.advance().map_err(display)? {
                            emit(json!({"k": k, "bound": rat(&bound), "kind": "upper"}));
                        }
                    }
                    emit(json!({"summary": {"best": stream.best().map(|b| rat(b))}}));
                }
                NamedStream::Lower(mut stream) => {
                    for k in 0..steps {
                        if let Some(bound) = stream.advance().map_err(display)? {
                            emit(json!({"k": k, "bound": rat(&bound), "kind": "lower"}));
                        }
                    }
                    emit(json!({"summary": {"best": stream.best().map(|b| rat(b))}}));
                }
            }
            Ok(())
        }
        Command::Homology { complex, degree } => {
            emit(json!({
                "command": "homology", "complex": complex, "degree": degree,
                "threads": threads
            }));
            let complex = load_complex(&complex)?;
            let degrees: Vec<usize> = match degree {
                Some(k) => vec![k],
                None => (0..=complex.dimension()).collect(),
            };
            for k in degrees {
                let group = simplicial::homology(&complex, k);
                let torsion: Vec<String> =
                    group.torsion.iter().map(|d| d.to_string()).collect();
                emit(json!({"degree": k, "betti": group.betti, "torsion": torsion}));
            }
            Ok(())
        }
        Command::L1(l1) => run_l1(l1, threads),
    }
}

fn run_l1(command: L1Command, threads: usize) -> Result<(), String> {
    match command {
        L1Command::SemiDecide {
            complex,
            m,
            n,
            rmax,
            smax,
            out,
        } => {
            emit(json!({
                "command": "l1 semi-decide", "complex": complex, "m": m, "n": n,
                "rmax": rmax, "smax": smax, "out": out, "threads": threads
            }));
            let target = load_complex(&complex)?;
            let outcome =
                simplicial::semi_decide(&target, m, n, rmax, smax, threads).map_err(display)?;
            match outcome {
                SearchOutcome::Certified(witness) => {
                    let bound = Rational::ratio(witness.norm() as i64, witness.m as i64);
                    let stored = witness_file(&target, &witness);
                    if let Some(path) = &out {
                        std::fs::write(path, format!("{stored:#}\n"))
                            .map_err(|e| format!("writing {path}: {e}"))?;
                        emit(json!({
                            "outcome": "certified", "bound": rat(&bound),
                            "witness_path": path
                        }));
                    } else {
                        emit(json!({
                            "outcome": "certified", "bound": rat(&bound),
                            "witness": stored
                        }));
                    }
                }
                SearchOutcome::Exhausted => {
                    emit(json!({"outcome": "exhausted"}));
                }
            }
            Ok(())
        }
        L1Command::Verify { witness, complex } => {
            emit(json!({
                "command": "l1 verify", "witness": witness, "complex": complex,
                "threads": threads
            }));
            let text = std::fs::read_to_string(&witness)
                .map_err(|e| format!("reading {witness}: {e}"))?;
            let mut value: Value =
                serde_json::from_str(&text).map_err(|e| format!("parsing {witness}: {e}"))?;
            let embedded = value
                .as_object_mut()
                .ok_or_else(|| "witness file must be a JSON object".to_string())?
                .remove("target");
            let target = match (complex, embedded) {
                (Some(name), _) => load_complex(&name)?,
                (None, Some(target_value)) => {
                    let file: ComplexFile = serde_json::from_value(target_value)
                        .map_err(|e| format!("embedded target: {e}"))?;
                    SimplicialComplex::from_file(file).map_err(display)?
                }
                (None, None) => {
                    return Err("no --complex given and no target embedded in the file".into())
                }
            };
            let parsed: Witness =
                serde_json::from_value(value).map_err(|e| format!("witness shape: {e}"))?;
            match simplicial::verify_witness(&target, &parsed) {
                Ok(certificates) => {
                    let bound = Rational::ratio(parsed.norm() as i64, parsed.m as i64);
                    emit(json!({
                        "verdict": "accepted", "bound": rat(&bound),
                        "certificates": {
                            "cancelled_faces": certificates.cancelled_faces,
                            "comparison_depth": certificates.comparison_depth
                        }
                    }));
                    Ok(())
                }
                Err(rejection) => {
                    emit(json!({"verdict": "rejected", "reason": rejection.to_string()}));
                    Err(format!("witness rejected: {rejection}"))
                }
            }
        }
        L1Command::Stream { complex, cells } => {
            emit(json!({
                "command": "l1 stream", "complex": complex, "cells": cells,
                "threads": threads
            }));
            let target = load_complex(&complex)?;
            let mut stream = SimvolStream::new(&target, threads).map_err(display)?;
            let seed = stream.advance();
            if let Some(bound) = &seed.improved {
                emit(json!({"k": 0, "bound": rat(bound), "kind": "upper", "cell": Value::Null}));
            }
            for _ in 0..cells {
                let step = stream.advance();
                if let Some(bound) = &step.improved {
                    emit(json!({
                        "k": step.index, "bound": rat(bound), "kind": "upper",
                        "cell": step.cell
                    }));
                }
            }
            emit(json!({"summary": {
                "cells": stream.cells_processed(),
                "min": stream.running_min().map(|b| rat(b))
            }}));
            Ok(())
        }
    }
}

/// The composite on-disk witness format: the witness fields plus a
/// `"target"` key holding the complex it certifies, so the file is
/// re-verifiable on its own.
fn witness_file(target: &SimplicialComplex, witness: &Witness) -> Value {
    let d = target.dimension();
    let file = ComplexFile {
        dimension: d,
        top_simplices: target.simplices(d).to_vec(),
        orientations: target.orientations().map(|o| o.to_vec()),
    };
    let mut value = serde_json::to_value(witness).expect("witness serializes");
    value["target"] = serde_json::to_value(file).expect("complex serializes");
    value
}

fn named_set(name: &str) -> Result<ReSet, String> {
    Ok(match name {
        "evens" => ReSet::evens(),
        "odds" => ReSet::odds(),
        "threes" => ReSet::threes(),
        "all" => ReSet::all(),
        "empty" => ReSet::empty(),
        "halting" => ReSet::HaltingSet,
        other => return Err(format!("unknown set {other:?}")),
    })
}

enum NamedStream {
    Upper(UpperBoundStream),
    Lower(LowerBoundStream),
}

fn named_stream(name: &str) -> Result<NamedStream, String> {
    Ok(match name {
        // Upper bounds of inf { (m + 1) / m } = 1 from the frontier walk.
        "succ-ratio" => NamedStream::Upper(inf_ratio(frontier_fill_pairs(|m| {
            Natural::from(m) + 1u32
        }))),
        "evens-lower" => NamedStream::Lower(specker(&ReSet::evens()).0),
        "evens-upper" => NamedStream::Upper(specker(&ReSet::evens()).1),
        "threes-lower" => NamedStream::Lower(specker(&ReSet::threes()).0),
        "threes-upper" => NamedStream::Upper(specker(&ReSet::threes()).1),
        "halting-lower" => NamedStream::Lower(specker(&ReSet::HaltingSet).0),
        other => return Err(format!("unknown stream {other:?}")),
    })
}

/// Builtin fixtures by name; anything else is read as a file path.
fn load_complex(spec: &str) -> Result<SimplicialComplex, String> {
    let builtin = match spec {
        "triangle" => Some(fixtures::triangle()),
        "sphere" => Some(fixtures::boundary_delta3()),
        "torus" => Some(fixtures::torus_seven()),
        "klein" => Some(fixtures::klein_nine()),
        _ => None,
    };
    if let Some(complex) = builtin {
        return Ok(complex);
    }
    let text =
        std::fs::read_to_string(spec).map_err(|e| format!("reading {spec}: {e}"))?;
    SimplicialComplex::from_json_str(&text).map_err(display)
}

fn display(e: impl Display) -> String {
    e.to_string()
}
