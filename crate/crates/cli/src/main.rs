//! `skewgor`: command-line front end.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use skewgor::betti::BettiTable;
use skewgor::duality::trivial_extension;
use skewgor::gb::skew::{skew_groebner, MonomialOrder};
use skewgor::gb::{nc_groebner, permutation_census, CensusMode, WordOrder};
use skewgor::identities::gulliksen_check;
use skewgor::presentations::catalog::{self, CatalogEntry, EntryKind};
use skewgor::presentations::{algebra_from_presentation, ExtQuotientPresentation, Kind};
use skewgor::report::{field_name, render_text, sort_canonical, tally, Record, Verdict};
use skewgor::resolution::{bass_from_resolution, minimal_resolution, GradedModule};
use skewgor::series::{Series1, Series2};
use skewgor::suite::{catalog_suite, acceptance_suite, verify_entry, SuiteOptions};
use skewgor::with_field;

#[derive(Parser)]
#[command(name = "skewgor", version, about = "Exact graded-algebra workbench for skew-symmetric 3-forms")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// field characteristic, 0 or a prime (default: the entry's, else 0)
    #[arg(long = "char", global = true)]
    characteristic: Option<u64>,
    #[arg(long, global = true, default_value_t = 12)]
    cutoff_z: usize,
    #[arg(long, global = true, default_value_t = 6)]
    cutoff_h: usize,
    /// generator order for Groebner bases, e.g. "5 1 2 4 6 7 3 8 9"
    #[arg(long, global = true)]
    order: Option<String>,
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, visible_alias = "report", global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IdealKind {
    Exterior,
    Commutative,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// the ten grouped acceptance criteria
    Paper,
    Catalog,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Full,
    Sample,
}

/// Where the algebra comes from: a catalog entry, a trivector, an ideal, or a file.
#[derive(Args, Clone)]
struct Input {
    /// catalog entry name (see `catalog`)
    #[arg(long)]
    entry: Option<String>,
    /// trivector, e.g. "123 456" or "e1^e2^e3 - e4^e5^e6"
    #[arg(long)]
    form: Option<String>,
    /// comma-separated quadratic (or higher) relations
    #[arg(long)]
    ideal: Option<String>,
    /// ambient ring of --ideal
    #[arg(long, value_enum, default_value_t = IdealKind::Exterior)]
    kind: IdealKind,
    /// variable names of --ideal, space separated
    #[arg(long)]
    vars: Option<String>,
    /// file in the catalog entry format
    #[arg(long)]
    input: Option<PathBuf>,
}

impl Input {
    fn resolve(&self) -> anyhow::Result<CatalogEntry> {
        let given = [self.entry.is_some(), self.form.is_some(), self.ideal.is_some(), self.input.is_some()];
        match given.iter().filter(|&&b| b).count() {
            0 => bail!("give one of --entry, --form, --ideal or --input"),
            1 => {}
            _ => bail!("--entry, --form, --ideal and --input are exclusive"),
        }
        if let Some(name) = &self.entry {
            return Ok(catalog::catalog(name)?);
        }
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            return Ok(CatalogEntry::from_text(&text)?);
        }
        let (kind, payload, vars) = if let Some(f) = &self.form {
            (EntryKind::Trivector, f.clone(), vec![])
        } else {
            let vars: Vec<String> = self
                .vars
                .as_deref()
                .ok_or_else(|| anyhow!("--ideal needs --vars"))?
                .split_whitespace()
                .map(String::from)
                .collect();
            let kind = match self.kind {
                IdealKind::Exterior => EntryKind::ExteriorIdeal,
                IdealKind::Commutative => EntryKind::CommutativeIdeal,
            };
            (kind, self.ideal.clone().unwrap_or_default(), vars)
        };
        let entry = CatalogEntry {
            name: "input".into(),
            description: String::new(),
            kind,
            payload,
            vars,
            characteristic: 0,
            expected: vec![],
        };
        // surface parse errors here rather than deep inside a computation
        entry.presentation()?;
        Ok(entry)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Koszul dual presentation and 1/A^!(z)
    Dual(Input),
    /// Gorenstein algebra of a trivector (or the presented quotient ring)
    Gor(Input),
    /// Hilbert series of the algebra and of its quadratic part
    Hilbert(Input),
    /// Groebner basis of the Koszul dual, or of the ideal itself with --skew
    Gb {
        #[command(flatten)]
        input: Input,
        /// Groebner basis of the (skew-)commutative ideal under grevlex
        #[arg(long)]
        skew: bool,
    },
    /// Betti table of the residue field and 1/P(x,y)
    Betti(Input),
    /// Bass series and Bass/P
    Bass(Input),
    /// Trivial extension by the injective hull of k, with the Gulliksen check
    Extension(Input),
    /// Check published values
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::Paper)]
        suite: Suite,
        /// restrict the catalog suite to one entry
        #[arg(long)]
        entry: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
        #[arg(long, default_value_t = 5000)]
        sample: usize,
    },
    /// Count generator orders giving a quadratic Groebner basis of the dual
    Census {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
        #[arg(long, default_value_t = 5000)]
        sample: usize,
        #[arg(long, default_value_t = 5)]
        witnesses: usize,
    },
    /// List catalog entries, or show one
    Catalog {
        name: Option<String>,
        /// list published verdicts that cannot be checked
        #[arg(long)]
        unverified: bool,
    },
}

/// Result of a command: machine-readable value, text rendering, success flag.
struct Output {
    json: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn info(json: Value, text: String) -> Self {
        Self { json, text, ok: true }
    }
}

fn coeffs1(s: &Series1) -> Value {
    json!(s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

fn terms2(s: &Series2) -> Value {
    json!(s.terms().iter().map(|(i, j, c)| json!([i, j, c.to_string()])).collect::<Vec<_>>())
}

fn betti_text(t: &BettiTable) -> String {
    let mut out = String::new();
    for i in 0..=t.max_i {
        let row: Vec<String> = (0..=t.max_j).map(|j| t.get(i, j).to_string()).collect();
        out += &format!("  i={i}: {}\n", row.join(" "));
    }
    out
}

fn characteristic(g: &Global, e: &CatalogEntry) -> u64 {
    g.characteristic.unwrap_or(e.characteristic)
}

fn word_order(g: &Global, n: usize) -> anyhow::Result<WordOrder> {
    Ok(match &g.order {
        Some(o) => WordOrder::parse(o, n)?,
        None => WordOrder::natural(n),
    })
}

fn header(e: &CatalogEntry, c: u64) -> String {
    format!("{} ({}) over {}\n", e.name, e.kind, field_name(c))
}

fn cmd_dual(g: &Global, input: &Input) -> anyhow::Result<Output> {
    let e = input.resolve()?;
    let c = characteristic(g, &e);
    let dual = e.dual()?;
    let order = word_order(g, dual.rank())?;
    let n = g.cutoff_z;
    let (series, complete) = with_field!(c, |f| {
        let gb = nc_groebner(f, &dual, &order, n)?;
        (gb.hilbert(n)?, gb.complete_through())
    });
    let inv = series.invert()?;
    let rels = dual.format_relations();
    let text = format!(
        "{}relations ({}):\n{}\nA^!(z) = {series}\n1/A^!(z) = {inv}\n",
        header(&e, c),
        rels.len(),
        rels.iter().map(|r| format!("  {r}")).collect::<Vec<_>>().join("\n")
    );
    let json = json!({
        "entry": e.name, "characteristic": c, "cutoff_z": n, "complete_through": complete,
        "relations": rels, "hilbert": coeffs1(&series), "inverse": coeffs1(&inv),
    });
    Ok(Output::info(json, text))
}

fn cmd_gor(g: &Global, input: &Input) -> anyhow::Result<Output> {
    let e = input.resolve()?;
    let c = characteristic(g, &e);
    let p = e.presentation()?;
    let (dims, socle) = with_field!(c, |f| {
        let a = algebra_from_presentation(f, &p)?;
        (a.dims(), a.socle().len())
    });
    let hilbert = Series1::from_ints(&dims.iter().map(|&d| d as i64).collect::<Vec<_>>(), dims.len() - 1);
    let rels = p.format_relations();
    let text = format!(
        "{}Hilbert series: {hilbert}\nsocle dimension: {socle}\nrelations ({}):\n{}\n",
        header(&e, c),
        rels.len(),
        rels.iter().map(|r| format!("  {r}")).collect::<Vec<_>>().join("\n")
    );
    let json = json!({
        "entry": e.name, "characteristic": c, "hilbert": dims, "socle_dimension": socle,
        "gorenstein": socle == 1, "relations": rels,
    });
    Ok(Output::info(json, text))
}

fn cmd_hilbert(g: &Global, input: &Input) -> anyhow::Result<Output> {
    let e = input.resolve()?;
    let c = characteristic(g, &e);
    let p = e.presentation()?;
    let q = p.quadratic_part();
    let (full, quad) = with_field!(c, |f| {
        let quad = match algebra_from_presentation(f, &q) {
            Ok(a) => Some(a.dims()),
            Err(skewgor::Error::NotArtinian(_)) => None,
            Err(e) => return Err(e.into()),
        };
        (algebra_from_presentation(f, &p)?.dims(), quad)
    });
    let show = |d: &[usize]| d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let text = format!(
        "{}algebra: {}\nquadratic part: {}\n",
        header(&e, c),
        show(&full),
        quad.as_deref().map(show).unwrap_or_else(|| "not finite dimensional".into())
    );
    Ok(Output::info(json!({"entry": e.name, "characteristic": c, "hilbert": full, "quadratic_hilbert": quad}), text))
}

fn cmd_gb(g: &Global, input: &Input, skew: bool) -> anyhow::Result<Output> {
    let e = input.resolve()?;
    let c = characteristic(g, &e);
    if skew {
        let p: ExtQuotientPresentation = e.presentation()?;
        let maxdeg = (p.max_relation_degree() + 2).max(4);
        let gb = skew_groebner(&p, &MonomialOrder::grevlex(p.rank()), maxdeg)?;
        let elems = gb.formatted();
        let kind = if p.kind() == Kind::Exterior { "skew-commutative" } else { "commutative" };
        let text = format!(
            "{}{kind} Groebner basis, grevlex, degree <= {maxdeg}: {} elements, quadratic: {}\n{}\n",
            header(&e, 0),
            elems.len(),
            gb.is_quadratic(),
            elems.iter().map(|r| format!("  {r}")).collect::<Vec<_>>().join("\n")
        );
        let json = json!({"entry": e.name, "characteristic": 0, "maxdeg": maxdeg, "quadratic": gb.is_quadratic(), "elements": elems});
        return Ok(Output::info(json, text));
    }
    let dual = e.dual()?;
    let order = word_order(g, dual.rank())?;
    let n = g.cutoff_z;
    let (elems, counts, hilbert) = with_field!(c, |f| {
        let gb = nc_groebner(f, &dual, &order, n)?;
        let elems: Vec<String> = (0..gb.elements().len()).map(|i| gb.format_element(i)).collect();
        (elems, gb.degree_counts(), gb.hilbert(n)?)
    });
    let quadratic = counts.iter().skip(3).all(|&k| k == 0);
    let text = format!(
        "{}order: {}\nelements by degree: {}\nquadratic: {quadratic}\nHilbert series: {hilbert}\n{}\n",
        header(&e, c),
        order.sequence().iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" "),
        counts.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" "),
        elems.iter().map(|r| format!("  {r}")).collect::<Vec<_>>().join("\n")
    );
    let json = json!({
        "entry": e.name, "characteristic": c, "cutoff_z": n, "degree_counts": counts,
        "quadratic": quadratic, "hilbert": coeffs1(&hilbert), "elements": elems,
    });
    Ok(Output::info(json, text))
}

fn cmd_betti(g: &Global, input: &Input) -> anyhow::Result<Output> {
    let e = input.resolve()?;
    let c = characteristic(g, &e);
    let p = e.presentation()?;
    let h = g.cutoff_h;
    let table = with_field!(c, |f| {
        let a = algebra_from_presentation(f, &p)?;
        let res = minimal_resolution(&a, &GradedModule::residue_field(&a), h)?;
        res.verify()?;
        res.betti()
    });
    let inv = table.series().invert()?;
    let text = format!("{}Tor_(i,j)(k,k), h <= {h}:\n{}1/P(x,y) = {inv}\n", header(&e, c), betti_text(&table));
    let json = json!({"entry": e.name, "characteristic": c, "cutoff_h": h, "betti": table.entries, "inverse_poincare": terms2(&inv)});
    Ok(Output::info(json, text))
}

fn cmd_bass(g: &Global, input: &Input) -> anyhow::Result<Output> {
    let e = input.resolve()?;
    let c = characteristic(g, &e);
    let p = e.presentation()?;
    let h = g.cutoff_h;
    let (bass, poincare) = with_field!(c, |f| {
        let a = algebra_from_presentation(f, &p)?;
        let res = minimal_resolution(&a, &GradedModule::residue_field(&a), h + 1)?;
        res.verify()?;
        let bass = bass_from_resolution(&res, h);
        let (mx, my) = bass.cutoffs();
        (bass, res.betti().series().truncate(mx, my))
    });
    let ratio = &bass * &poincare.invert()?;
    let text = format!("{}Bass(x,y) = {bass}\nBass/P = {ratio}\n", header(&e, c));
    let json = json!({"entry": e.name, "characteristic": c, "cutoff_h": h, "bass": terms2(&bass), "bass_over_poincare": terms2(&ratio)});
    Ok(Output::info(json, text))
}

fn cmd_extension(g: &Global, input: &Input) -> anyhow::Result<Output> {
    let e = input.resolve()?;
    let c = characteristic(g, &e);
    let p = e.presentation()?;
    let h = g.cutoff_h;
    let (dims, report) = with_field!(c, |f| {
        let a = algebra_from_presentation(f, &p)?;
        (trivial_extension(&a)?.dims(), gulliksen_check(&e.name, &a, h)?)
    });
    let holds = report.holds == Some(true);
    let mut text = format!(
        "{}G = A x| I(k): {}\n{}: {} (h <= {h})\n",
        header(&e, c),
        dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "),
        report.formula,
        if holds { "holds" } else { "fails" }
    );
    if let Some(r) = &report.residual {
        text += &format!("residual: {r}\n");
    }
    let json = json!({"entry": e.name, "characteristic": c, "hilbert": dims, "gulliksen": report});
    Ok(Output { json, text, ok: holds })
}

fn suite_options(g: &Global, mode: Mode, sample: usize) -> SuiteOptions {
    SuiteOptions {
        cutoff_z: g.cutoff_z,
        cutoff_h: g.cutoff_h,
        jobs: g.jobs,
        census_full: mode == Mode::Full,
        sample,
        seed: g.seed,
        characteristic: g.characteristic,
    }
}

fn records_json(records: &[Record]) -> Value {
    serde_json::to_value(records).unwrap_or(Value::Null)
}

fn cmd_verify(g: &Global, suite: Suite, entry: Option<&str>, mode: Mode, sample: usize) -> anyhow::Result<Output> {
    let opts = suite_options(g, mode, sample);
    if suite == Suite::Paper && entry.is_some() {
        bail!("--entry applies to --suite catalog");
    }
    if suite == Suite::Catalog {
        let mut records = match entry {
            Some(name) => verify_entry(&catalog::catalog(name)?, &opts),
            None => catalog_suite(&opts),
        };
        sort_canonical(&mut records);
        let (pass, fail, skip) = tally(&records);
        let text = format!("{}{pass} passed, {fail} failed, {skip} skipped\n", render_text(&records, false));
        let json = json!({"records": records_json(&records), "passed": pass, "failed": fail, "skipped": skip});
        return Ok(Output { json, text, ok: fail == 0 });
    }
    let criteria = acceptance_suite(&opts);
    let mut text = String::new();
    let mut summary = String::from("criterion  verdict  records\n");
    let mut items = Vec::new();
    for c in &criteria {
        let mut records = c.records.clone();
        sort_canonical(&mut records);
        let verdict = if c.passed() { Verdict::Pass } else { Verdict::Fail };
        text += &format!("== {} criterion {}: {}\n", verdict.label(), c.number, c.title);
        text += &render_text(&records, false);
        summary += &format!("{:>9}  {:<7}  {}\n", c.number, verdict.label(), records.len());
        eprintln!("criterion {}: {:.2}s", c.number, c.wall_time.as_secs_f64());
        items.push(json!({"criterion": c.number, "title": c.title, "verdict": verdict, "records": records_json(&records)}));
    }
    let ok = criteria.iter().all(|c| c.passed());
    text += &summary;
    Ok(Output { json: json!({"criteria": items}), text, ok })
}

fn cmd_census(g: &Global, input: &Input, mode: Mode, sample: usize, witnesses: usize) -> anyhow::Result<Output> {
    let e = input.resolve()?;
    let dual = e.dual()?;
    let mode = match mode {
        Mode::Full => CensusMode::Full,
        Mode::Sample => CensusMode::Sample { count: sample, seed: g.seed },
    };
    let rep = permutation_census(&dual, mode, g.jobs, witnesses)?;
    eprintln!("census: {:.2}s", rep.wall_time.as_secs_f64());
    let mut text = format!(
        "{} / {} quadratic\nscreened over {}, {} passing orders confirmed over QQ\n",
        rep.passing, rep.total, rep.field, rep.confirmed
    );
    for w in &rep.witnesses {
        text += &format!("witness: {w}\n");
    }
    let json = json!({"entry": e.name, "census": rep});
    Ok(Output::info(json, text))
}

fn cmd_catalog(name: Option<&str>, unverified: bool) -> anyhow::Result<Output> {
    if unverified {
        let items = catalog::unverified();
        let text = items.iter().map(|(k, v)| format!("{k}: {v}\n")).collect();
        return Ok(Output::info(json!(items), text));
    }
    match name {
        None => {
            let all = catalog::all();
            let text = all
                .iter()
                .map(|e| format!("{:<8} {:<17} {}\n", e.name, e.kind.to_string(), e.payload))
                .collect();
            Ok(Output::info(json!(all), text))
        }
        Some(n) => {
            let e = catalog::catalog(n)?;
            let mut text = format!(
                "{}\n{}\nkind: {}\npayload: {}\n",
                e.name, e.description, e.kind, e.payload
            );
            if !e.vars.is_empty() {
                text += &format!("vars: {}\n", e.vars.join(" "));
            }
            if e.characteristic != 0 {
                text += &format!("characteristic: {}\n", e.characteristic);
            }
            for x in &e.expected {
                text += &format!("expect {} = {}\n    source: {}\n", x.key, x.value, x.citation);
            }
            Ok(Output::info(json!(e), text))
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let g = &cli.global;
    match &cli.command {
        Command::Dual(i) => cmd_dual(g, i),
        Command::Gor(i) => cmd_gor(g, i),
        Command::Hilbert(i) => cmd_hilbert(g, i),
        Command::Gb { input, skew } => cmd_gb(g, input, *skew),
        Command::Betti(i) => cmd_betti(g, i),
        Command::Bass(i) => cmd_bass(g, i),
        Command::Extension(i) => cmd_extension(g, i),
        Command::Verify { suite, entry, mode, sample } => cmd_verify(g, *suite, entry.as_deref(), *mode, *sample),
        Command::Census { input, mode, sample, witnesses } => cmd_census(g, input, *mode, *sample, *witnesses),
        Command::Catalog { name, unverified } => cmd_catalog(name.as_deref(), *unverified),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    match cli.global.format {
        Format::Text => print!("{}", out.text),
        Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).unwrap_or_default()),
    }
    eprintln!("wall time: {:.3}s", start.elapsed().as_secs_f64());
    ExitCode::from(if out.ok { 0 } else { 1 })
}
