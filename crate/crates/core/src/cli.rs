//! Command-line front end. Every subcommand writes its outputs into the
//! output directory together with `<subcommand>.meta.json` (version, config
//! hash, arguments, output digests); nothing time-dependent is recorded, so
//! equal inputs give byte-identical files.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::census::{density_report, FieldTable, PairKernel, PairKernelOptions, ReportInputs};
use crate::config::{Config, MAX_CUBIC_DISC};
use crate::conductor::{
    disc_from_conductor_bound, first_cyclic_of_order, tame_conductor, wild_cap, GroupKind, RamificationProfile,
};
use crate::cubicenum::{enumerate_cubic_fields_with, oracle_enumerate, EnumOptions, ORACLE_MAX};
use crate::nfield::{NumberField, ZPoly};
use crate::orthoclass::{classify, parse_generators, MatrixGroup3};
use crate::quadchar::{default_radius, enumerate_quad_chars_with};
use crate::reptheory::{builtin_table, so3_type_characters};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_COVERAGE_GAP: i32 = 2;
pub const EXIT_SCHEMA: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "artin3",
    version,
    about = "Exact tools for counting orthogonal three-dimensional Artin representations by conductor"
)]
pub struct Cli {
    /// TOML configuration file (grid, caps, box radius, constants, modes, output directory)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for output files; overrides the config
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    /// Worker threads for enumeration and the pair census; overrides the config
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Character table of a built-in group (C1..C12, D1..D12, A4, S4, A5 and their products with C2),
    /// checked for row and column orthogonality
    Chartab {
        /// group label, e.g. A5 or S4xC2
        group: String,
    },
    /// Classify a finite subgroup of O(3) from exact generator matrices: whether it lies in SO(3),
    /// contains −1, is irreducible, its isomorphism type, and the H × {±1} or isoclinic structure
    Classify {
        /// JSON file {"generators": [[[..],[..],[..]], ...]}; entries are integers, "p/q" strings or cyclotomic objects
        #[arg(long)]
        generators: PathBuf,
    },
    /// Tame conductor of each faithful three-dimensional trivial-determinant character of A4, S4 or A5
    /// under a ramification profile; the exponent at a tame prime is dim V − dim V^I
    Conductor {
        /// GROUP:p=e,...  with e the tame inertia order at p, or w for a wild prime (2, 3, 5), e.g. A5:7=2,11=3,2=w
        #[arg(long)]
        shape: String,
    },
    /// Enumerate cubic fields with |d| ≤ X through reduced binary cubic forms
    EnumCubic {
        /// discriminant bound X
        #[arg(long)]
        max_disc: u64,
        /// also run the independent brute-force enumeration over monic cubics and compare the two lists
        #[arg(long)]
        oracle: bool,
    },
    /// Quadratic characters χ of a cubic field M with conductor norm q(χ) ≤ x, found as Kummer
    /// extensions M(√α) with α in a coordinate box; each record carries the sextic field and d_K = d_M²·q(χ)
    Quadchar {
        /// defining polynomial, as "x^3 - x - 1" or an ascending list "-1,-1,0,1"
        #[arg(long)]
        field: String,
        /// conductor bound x
        #[arg(long)]
        max_cond: u64,
        /// Kummer box radius; defaults to the config value or a radius growing with x·√d_M
        #[arg(long)]
        radius: Option<u32>,
    },
    /// Evaluate every counting function on the grid: abelian counts, the primitive SO(3) bound from
    /// quartic and quintic tables, the monomial pair counts over cubic fields and the twisted A5 count
    Census {
        /// comma-separated increasing conductor bounds
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<u64>>,
        /// field tables (CSV or JSON lines) with A4, S4 quartics and A5 quintics
        #[arg(long, value_delimiter = ',')]
        tables: Vec<PathBuf>,
    },
    /// Write the density report (CSV with a JSON mirror) to the given path
    Report {
        /// output CSV path; the JSON mirror is written next to it
        #[arg(long)]
        out: PathBuf,
        /// comma-separated increasing conductor bounds
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<u64>>,
        /// field tables (CSV or JSON lines)
        #[arg(long, value_delimiter = ',')]
        tables: Vec<PathBuf>,
    },
}

/// Outcome of a subcommand: exit code plus files written.
struct Outcome {
    code: i32,
    files: Vec<PathBuf>,
    summary: serde_json::Value,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    msg: String,
}

fn fail(code: i32, msg: impl ToString) -> Failure {
    Failure { code, msg: msg.to_string() }
}

#[derive(Serialize)]
struct RunMetadata<'a> {
    tool: &'static str,
    version: &'static str,
    subcommand: &'a str,
    arguments: Vec<String>,
    config_hash: String,
    exit_code: i32,
    outputs: Vec<(String, String)>,
    summary: &'a serde_json::Value,
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<PathBuf, Failure> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|e| fail(EXIT_FAILURE, format!("{}: {e}", parent.display())))?;
        }
    }
    std::fs::write(path, bytes).map_err(|e| fail(EXIT_FAILURE, format!("{}: {e}", path.display())))?;
    Ok(path.to_path_buf())
}

fn digest(path: &Path) -> String {
    std::fs::read(path).map(|b| hex::encode(Sha256::digest(&b))).unwrap_or_default()
}

/// Parses and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let mut config = match &cli.config {
        Some(p) => match Config::load(p) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        },
        None => Config::default(),
    };
    if let Some(d) = &cli.out_dir {
        config.output.dir = d.clone();
    }
    if let Some(w) = cli.workers {
        config.modes.workers = w;
    }
    if let Err(e) = config.validate() {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    let name = subcommand_name(&cli.command);
    let outcome = match execute(&cli.command, &config) {
        Ok(o) => o,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            return f.code;
        }
    };
    let meta = RunMetadata {
        tool: "artin3",
        version: env!("CARGO_PKG_VERSION"),
        subcommand: name,
        arguments: args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
        config_hash: config.hash(),
        exit_code: outcome.code,
        outputs: outcome.files.iter().map(|f| (f.display().to_string(), digest(f))).collect(),
        summary: &outcome.summary,
    };
    let meta_path = config.output.dir.join(format!("{name}.meta.json"));
    let text = serde_json::to_string_pretty(&meta).expect("metadata serializes");
    if let Err(f) = write_file(&meta_path, text.as_bytes()) {
        eprintln!("error: {}", f.msg);
        return f.code;
    }
    println!("{}", serde_json::to_string_pretty(&outcome.summary).expect("summary serializes"));
    outcome.code
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Chartab { .. } => "chartab",
        Command::Classify { .. } => "classify",
        Command::Conductor { .. } => "conductor",
        Command::EnumCubic { .. } => "enum-cubic",
        Command::Quadchar { .. } => "quadchar",
        Command::Census { .. } => "census",
        Command::Report { .. } => "report",
    }
}

fn execute(cmd: &Command, cfg: &Config) -> Result<Outcome, Failure> {
    let dir = &cfg.output.dir;
    match cmd {
        Command::Chartab { group } => {
            let t = builtin_table(group).map_err(|e| fail(EXIT_USAGE, e))?;
            let check = t.check_orthogonality();
            match &check {
                Ok(()) => log::info!("{group}: row and column orthogonality hold"),
                Err(e) => log::error!("{group}: orthogonality fails: {e}"),
            }
            let mut json = t.to_json();
            json["orthogonality"] = serde_json::json!(check.is_ok());
            let path = write_file(&dir.join(format!("chartab_{group}.json")), pretty(&json).as_bytes())?;
            let code = if check.is_ok() { EXIT_OK } else { EXIT_FAILURE };
            Ok(Outcome {
                code,
                files: vec![path],
                summary: serde_json::json!({"group": group, "classes": t.characters.len(), "orthogonality": check.is_ok()}),
            })
        }
        Command::Classify { generators } => {
            let text = std::fs::read_to_string(generators).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", generators.display())))?;
            let gens = parse_generators(&text).map_err(|e| fail(EXIT_USAGE, e))?;
            let g = MatrixGroup3::close(&gens).map_err(|e| fail(EXIT_FAILURE, e))?;
            let c = classify(&g).map_err(|e| fail(EXIT_FAILURE, e))?;
            let json = serde_json::to_value(&c).expect("classification serializes");
            let path = write_file(&dir.join("classify.json"), pretty(&json).as_bytes())?;
            Ok(Outcome { code: EXIT_OK, files: vec![path], summary: json })
        }
        Command::Conductor { shape } => {
            let json = conductor_shape(shape)?;
            let path = write_file(&dir.join("conductor.json"), pretty(&json).as_bytes())?;
            Ok(Outcome { code: EXIT_OK, files: vec![path], summary: json })
        }
        Command::EnumCubic { max_disc, oracle } => enum_cubic(*max_disc, *oracle, cfg),
        Command::Quadchar { field, max_cond, radius } => quadchar(field, *max_cond, radius.or(cfg.bounds.kummer_radius), cfg),
        Command::Census { grid, tables } => {
            let (csv, json, summary, code) = census(grid, tables, cfg)?;
            let a = write_file(&dir.join("density_report.csv"), csv.as_bytes())?;
            let b = write_file(&dir.join("density_report.json"), json.as_bytes())?;
            Ok(Outcome { code, files: vec![a, b], summary })
        }
        Command::Report { out, grid, tables } => {
            let (csv, json, summary, code) = census(grid, tables, cfg)?;
            let a = write_file(out, csv.as_bytes())?;
            let b = write_file(&out.with_extension("json"), json.as_bytes())?;
            Ok(Outcome { code, files: vec![a, b], summary })
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

fn conductor_shape(shape: &str) -> Result<serde_json::Value, Failure> {
    let usage = |m: &str| fail(EXIT_USAGE, format!("bad --shape {shape:?}: {m}"));
    let (group, rest) = shape.split_once(':').ok_or_else(|| usage("expected GROUP:p=e,..."))?;
    let kind = match group.trim() {
        "A4" => GroupKind::A4,
        "S4" => GroupKind::S4,
        "A5" => GroupKind::A5,
        _ => return Err(usage("group must be A4, S4 or A5")),
    };
    let mut profile = RamificationProfile::new();
    for item in rest.split(',').filter(|s| !s.trim().is_empty()) {
        let (p, e) = item.split_once('=').ok_or_else(|| usage("entries are p=e"))?;
        let p: u64 = p.trim().parse().map_err(|_| usage("prime is not an integer"))?;
        profile = if e.trim() == "w" {
            profile.wild(p)
        } else {
            let e: u32 = e.trim().parse().map_err(|_| usage("inertia order is not an integer"))?;
            profile.tame(p, e, kind == GroupKind::A5)
        }
        .map_err(|e| usage(&e.to_string()))?;
    }
    let table = builtin_table(group.trim()).map_err(|e| fail(EXIT_FAILURE, e))?;
    let mut chars = Vec::new();
    for (name, chi) in so3_type_characters(&table) {
        let resolver = first_cyclic_of_order(&chi);
        let q = tame_conductor(&chi, &profile, &resolver).map_err(|e| usage(&e.to_string()))?;
        chars.push(serde_json::json!({
            "character": name,
            "tame_conductor": q.to_string(),
            "tame_conductor_value": q.value().to_string(),
            "field_disc_bound": disc_from_conductor_bound(kind, &q).to_string(),
        }));
    }
    let cap = wild_cap(kind.degree()).expect("degree 4 or 5");
    Ok(serde_json::json!({
        "group": group.trim(),
        "profile": profile,
        "wild_cap": cap.to_string(),
        "characters": chars,
    }))
}

fn enum_cubic(x: u64, oracle: bool, cfg: &Config) -> Result<Outcome, Failure> {
    if x > MAX_CUBIC_DISC {
        return Err(fail(EXIT_USAGE, format!("--max-disc exceeds {MAX_CUBIC_DISC}")));
    }
    if oracle && x > ORACLE_MAX {
        return Err(fail(EXIT_USAGE, format!("--oracle supports X ≤ {ORACLE_MAX}")));
    }
    let dir = &cfg.output.dir;
    let opts = EnumOptions { workers: cfg.modes.workers, certify: true };
    let (fields, stats) = enumerate_cubic_fields_with(x, &opts);
    let mut buf = Vec::new();
    FieldTable::from_cubics(&fields, "cubic form enumeration").write_csv(&mut buf).map_err(|e| fail(EXIT_FAILURE, e))?;
    let mut files = vec![write_file(&dir.join("cubic_fields.csv"), &buf)?];
    let mut summary = serde_json::json!({
        "max_disc": x,
        "fields": fields.len(),
        "stats": stats,
    });
    let mut code = EXIT_OK;
    if oracle {
        let o = oracle_enumerate(x).map_err(|e| fail(EXIT_FAILURE, e))?;
        let mut buf = Vec::new();
        FieldTable::from_cubics(&o, "monic cubic search").write_csv(&mut buf).map_err(|e| fail(EXIT_FAILURE, e))?;
        files.push(write_file(&dir.join("cubic_fields_oracle.csv"), &buf)?);
        let agree = o == fields;
        summary["oracle_fields"] = serde_json::json!(o.len());
        summary["oracle_agrees"] = serde_json::json!(agree);
        if !agree {
            code = EXIT_FAILURE;
        }
    }
    Ok(Outcome { code, files, summary })
}

#[derive(Serialize)]
struct QuadCharRow {
    degree: usize,
    coeffs: String,
    disc: String,
    galois_label: String,
    source: String,
    alpha: String,
    conductor: u64,
}

fn quadchar(field: &str, x: u64, radius: Option<u32>, cfg: &Config) -> Result<Outcome, Failure> {
    let poly: ZPoly = field.parse().map_err(|e| fail(EXIT_USAGE, e))?;
    let m = NumberField::new(poly).map_err(|e| fail(EXIT_USAGE, e))?;
    let dm = num_traits::Signed::abs(m.disc());
    let dm_u64 = num_traits::ToPrimitive::to_u64(&dm).ok_or_else(|| fail(EXIT_USAGE, "discriminant too large"))?;
    let radius = radius.unwrap_or_else(|| default_radius(x, dm_u64));
    let search = enumerate_quad_chars_with(&m, x, radius, cfg.modes.workers).map_err(|e| fail(EXIT_USAGE, e))?;
    let mut wr = csv::Writer::from_writer(Vec::new());
    for r in &search.records {
        let coeffs: Vec<String> = r.sextic_poly().coeffs().iter().map(|c| c.to_string()).collect();
        let row = QuadCharRow {
            degree: 6,
            coeffs: format!("[{}]", coeffs.join(",")),
            disc: r.sextic_disc().to_string(),
            galois_label: String::new(),
            source: format!("kummer over {}", m.poly()),
            alpha: format!("[{},{},{}]", r.alpha_coords[0], r.alpha_coords[1], r.alpha_coords[2]),
            conductor: r.conductor,
        };
        wr.serialize(row).map_err(|e| fail(EXIT_FAILURE, e))?;
    }
    let buf = wr.into_inner().map_err(|e| fail(EXIT_FAILURE, e))?;
    let path = write_file(&cfg.output.dir.join("quadchar.csv"), &buf)?;
    let summary = serde_json::json!({
        "field": m.poly().to_string(),
        "disc": m.disc().to_string(),
        "bound": x,
        "radius": radius,
        "characters": search.records.len(),
        "sextics_built": search.sextics_built,
        "complete": search.completeness,
    });
    Ok(Outcome { code: EXIT_OK, files: vec![path], summary })
}

fn census(
    grid: &Option<Vec<u64>>,
    tables: &[PathBuf],
    cfg: &Config,
) -> Result<(String, String, serde_json::Value, i32), Failure> {
    let grid = grid.clone().unwrap_or_else(|| cfg.bounds.grid.clone());
    if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(fail(EXIT_USAGE, "--grid must be strictly increasing"));
    }
    let x_max = *grid.last().unwrap();
    let paths: Vec<PathBuf> = if tables.is_empty() { cfg.output.tables.clone() } else { tables.to_vec() };
    let mut table = FieldTable::new();
    for p in &paths {
        let t = FieldTable::load(p, cfg.modes.ingest).map_err(|e| fail(e.exit_code().max(EXIT_FAILURE), e))?;
        for f in &t.flagged {
            log::warn!("{}: {f}", p.display());
        }
        table.merge(t);
    }
    let caps = cfg.wild_caps().map_err(|e| fail(EXIT_USAGE, e))?;
    let cubic_cap = cfg.bounds.max_cubic_disc.max(x_max);
    let opts = EnumOptions { workers: cfg.modes.workers, certify: true };
    let (cubics, _) = enumerate_cubic_fields_with(cubic_cap, &opts);
    let kopts = PairKernelOptions { radius: cfg.bounds.kummer_radius, workers: cfg.modes.workers };
    let kernel = PairKernel::build(&cubics, cubic_cap, x_max, &kopts).map_err(|e| fail(EXIT_FAILURE, e))?;
    let inputs = ReportInputs { tables: &table, kernel: &kernel, caps, policy: cfg.modes.index_policy };
    let report = density_report(&grid, &inputs).map_err(|e| fail(EXIT_USAGE, e))?;
    let (checked, mismatches) = report.double_entry();
    let summary = serde_json::json!({
        "grid": grid,
        "table_rows": table.rows.len(),
        "cubic_fields": cubics.len(),
        "double_entry_checked": checked,
        "double_entry_mismatches": mismatches,
        "non_monotone": report.non_monotone(),
    });
    let mut json = report.to_json();
    json.push('\n');
    let code = if mismatches > 0 { EXIT_FAILURE } else { report.exit_code() };
    Ok((report.to_csv(), json, summary, code))
}
