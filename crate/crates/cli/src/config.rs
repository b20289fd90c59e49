use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use skein_core::heegaard::SlideBounds;
use skein_core::ring::GaussRat;

#[derive(Parser, Debug)]
#[command(name = "skein", version, about = "Exact Kauffman bracket skein computations on genus-1 surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Evaluation point for ζ.
    #[arg(long, global = true, value_enum, default_value = "symbolic", allow_hyphen_values = true)]
    pub zeta: Zeta,
    #[arg(long, global = true, default_value_t = skein_core::skein::DEFAULT_CROSSING_CAP)]
    pub max_crossings: usize,
    /// Complexity bound for truncated quotients.
    #[arg(long, global = true, default_value_t = 4)]
    pub truncation: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Bounds {
    #[arg(long, default_value_t = SlideBounds::default().max_multiplicity)]
    pub max_multiplicity: u32,
    #[arg(long, default_value_t = SlideBounds::default().max_slope)]
    pub max_slope: i64,
    #[arg(long, default_value_t = SlideBounds::default().max_arcs)]
    pub max_arcs: usize,
    #[arg(long, default_value_t = SlideBounds::default().winding_range)]
    pub winding: i64,
}

impl Bounds {
    pub fn resolve(&self) -> SlideBounds {
        SlideBounds {
            max_multiplicity: self.max_multiplicity,
            max_slope: self.max_slope,
            max_arcs: self.max_arcs,
            winding_range: self.winding,
        }
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Bracket of a diagram file in the simple-multicurve basis.
    Bracket { diagram: PathBuf },
    /// Bracket of the first diagram stacked over the second; signed by lk₂ when a splitting is given.
    Product {
        above: PathBuf,
        below: PathBuf,
        #[arg(long)]
        heegaard: Option<PathBuf>,
    },
    /// Checks that bracketing commutes with ψ and φ, on a file or a random suite.
    VerifyComm {
        diagram: Option<PathBuf>,
        #[arg(long, default_value_t = 30)]
        trials: usize,
    },
    /// φ and ψ suites: orientation independence, agreement on multicurves, grading.
    VerifyMarche {
        #[arg(long, default_value_t = 30)]
        trials: usize,
    },
    /// H₁, mod-4 writhes of handle slides and ψ on the slide relations.
    HeegaardAudit {
        heegaard: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Dimension of a truncated presentation of the ℤ₂-null part at ζ = −1 or −i.
    QuotientDim {
        heegaard: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Random checks of the twisted group algebra on the torus lattice.
    AAlgebra {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Zeta {
    Symbolic,
    #[value(name = "1")]
    One,
    #[value(name = "-1")]
    MinusOne,
    #[value(name = "i")]
    I,
    #[value(name = "-i")]
    MinusI,
}

impl Zeta {
    pub fn name(self) -> &'static str {
        match self {
            Zeta::Symbolic => "symbolic",
            Zeta::One => "1",
            Zeta::MinusOne => "-1",
            Zeta::I => "i",
            Zeta::MinusI => "-i",
        }
    }

    pub fn value(self) -> Option<GaussRat> {
        match self {
            Zeta::Symbolic => None,
            Zeta::One => Some(GaussRat::from_int(1)),
            Zeta::MinusOne => Some(GaussRat::from_int(-1)),
            Zeta::I => Some(GaussRat::i()),
            Zeta::MinusI => Some(-GaussRat::i()),
        }
    }

    pub fn require(self, what: &str) -> Result<GaussRat> {
        match self.value() {
            Some(z) => Ok(z),
            None => bail!("{what} needs a numeric --zeta"),
        }
    }
}

/// The fully resolved run configuration, embedded in every report.
pub fn resolved(cli: &Cli) -> Value {
    let c = &cli.common;
    let path = |p: &PathBuf| Value::String(p.display().to_string());
    let (name, inputs, extra) = match &cli.command {
        Command::Bracket { diagram } => ("bracket", vec![path(diagram)], json!({})),
        Command::Product { above, below, heegaard } => {
            let mut v = vec![path(above), path(below)];
            v.extend(heegaard.iter().map(path));
            ("product", v, json!({}))
        }
        Command::VerifyComm { diagram, trials } => ("verify-comm", diagram.iter().map(path).collect(), json!({"trials": trials})),
        Command::VerifyMarche { trials } => ("verify-marche", vec![], json!({"trials": trials})),
        Command::HeegaardAudit { heegaard, bounds } => {
            ("heegaard-audit", vec![path(heegaard)], json!({"slide_bounds": bounds.resolve().to_json()}))
        }
        Command::QuotientDim { heegaard, bounds } => {
            ("quotient-dim", vec![path(heegaard)], json!({"slide_bounds": bounds.resolve().to_json()}))
        }
        Command::AAlgebra { trials } => ("a-algebra", vec![], json!({"trials": trials})),
    };
    let mut v = json!({
        "subcommand": name,
        "inputs": inputs,
        "zeta": c.zeta.name(),
        "max_crossings": c.max_crossings,
        "truncation": c.truncation,
        "seed": c.seed,
        "out": c.out.as_ref().map(path),
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    v
}
