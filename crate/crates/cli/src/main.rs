//! `subnorm`: exact subnormalizer and Sylow-census computations on
//! finite permutation groups, plus the `verify-paper` harness that runs
//! the full acceptance suite.

mod census;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use subnorm_core::catalog;
use subnorm_core::counting;
use subnorm_core::group::is_prime_power_of;
use subnorm_core::io::{parse_group, serialize_group};
use subnorm_core::spr::{self, PairPolicy};
use subnorm_core::subnormal;
use subnorm_core::verify::{self, Session};
use subnorm_core::{Caps, Group, Permutation, Point};

use census::{append_record, read_census, CensusFormat, CensusRecord};

#[derive(Parser)]
#[command(name = "subnorm", version, about = "Exact subnormalizer toolkit for finite permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Catalog group (key like `A5`, or a builder spec like `psl2(7)`,
    /// `product(C2,A5)`, `wreath(A5,2)`)
    #[arg(long, global = true)]
    name: Option<String>,

    /// Group file in the text format (see README)
    #[arg(long, global = true)]
    file: Option<PathBuf>,

    /// Hard cap on group order
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_order: u64,

    /// Maximum order for the exhaustive element store
    #[arg(long, global = true, default_value_t = 200_000)]
    max_exhaustive: u64,

    /// Maximum order for the quadratic pair enumeration (dn/ds)
    #[arg(long, global = true, default_value_t = 5_000)]
    max_pair: u64,

    /// Output format for tabular commands
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,

    /// Worker threads (affects wall time only, never output bytes)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Census file path (defaults to $SUBNORM_CENSUS)
    #[arg(long, global = true)]
    census_file: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    JsonLines,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact group order
    Order,
    /// List conjugacy classes (order, size, centralizer order, representative)
    Classes,
    /// Sylow p-subgroup, count n_p, and normalizer order
    Sylow {
        #[arg(short)]
        p: u64,
    },
    /// spr(G); with --full, the per-class decomposition and pair degrees
    Spr {
        #[arg(long)]
        full: bool,
    },
    /// spr_G(x) for one element
    SprElement {
        /// Element as 1-based images, e.g. "2 3 1 4 5"
        #[arg(short = 'x')]
        element: String,
    },
    /// The subnormalizer S_G(x) = { g : ⟨x⟩ subnormal in ⟨x,g⟩ }
    Subnormalizer {
        #[arg(short = 'x')]
        element: String,
        /// Print only |S_G(x)|
        #[arg(long)]
        order_only: bool,
    },
    /// Census of p-elements
    Count {
        #[arg(short)]
        p: u64,
    },
    /// phi(L) = |U_2(L)| / |Aut(L)|_2, with Aut(L) supplied explicitly
    Phi {
        /// The automorphism group (catalog name or spec), containing the
        /// group as a normal subgroup at the same degree
        #[arg(long)]
        aut: String,
    },
    /// Compute the invariant bundle and append it to the census file
    Census {
        /// Also compute phi against this automorphism group
        #[arg(long)]
        aut: Option<String>,
        /// Read the census file back instead of appending
        #[arg(long)]
        show: bool,
    },
    /// Run the full acceptance suite (exit 1 on any failure)
    VerifyPaper {
        /// Comma-separated criterion ids (default: all)
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<usize>>,
        /// Print per-criterion detail lines
        #[arg(long)]
        verbose: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // affects wall time only; ignore failure if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn caps_of(cli: &Cli) -> Caps {
    Caps {
        max_order: cli.max_order,
        max_exhaustive: cli.max_exhaustive,
        max_pair: cli.max_pair,
    }
}

fn load_group(cli: &Cli) -> anyhow::Result<Group> {
    let caps = caps_of(cli);
    match (&cli.name, &cli.file) {
        (Some(name), None) => Ok(catalog::build(name, &caps)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            Ok(parse_group(&text, &caps)?)
        }
        (Some(_), Some(_)) => bail!("give either --name or --file, not both"),
        (None, None) => bail!("a group is required: --name <catalog key> or --file <path>"),
    }
}

fn parse_element(g: &Group, text: &str) -> anyhow::Result<Permutation> {
    let mut images: Vec<Point> = Vec::new();
    for token in text.split_whitespace() {
        let v: u64 = token
            .parse()
            .map_err(|_| anyhow!("bad image `{}` in element", token))?;
        if v == 0 || v > g.degree() as u64 {
            bail!("image {} out of range 1..={}", v, g.degree());
        }
        images.push((v - 1) as Point);
    }
    if images.len() != g.degree() {
        bail!(
            "element needs {} images (1-based), got {}",
            g.degree(),
            images.len()
        );
    }
    let p = Permutation::from_images(images)?;
    if !g.contains(&p) {
        bail!("element {} is not a member of the group", p);
    }
    Ok(p)
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    match &cli.command {
        Command::Order => {
            println!("{}", load_group(cli)?.order());
            Ok(ExitCode::SUCCESS)
        }
        Command::Classes => {
            let g = load_group(cli)?;
            let table = g.conjugacy_classes()?;
            for class in &table.classes {
                match cli.format {
                    Format::Tsv => println!(
                        "{}\t{}\t{}\t{}",
                        class.element_order, class.size, class.centralizer_order,
                        class.representative
                    ),
                    Format::JsonLines => println!(
                        "{}",
                        serde_json::json!({
                            "order": class.element_order,
                            "size": class.size,
                            "centralizer": class.centralizer_order,
                            "representative": class.representative.to_string(),
                        })
                    ),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sylow { p } => {
            let g = load_group(cli)?;
            let sys = g.sylow(*p)?;
            println!("order {}", sys.one_sylow.order());
            println!("count {}", sys.count);
            println!("normalizer {}", sys.normalizer_order);
            print!("{}", serialize_group(&sys.one_sylow));
            Ok(ExitCode::SUCCESS)
        }
        Command::Spr { full } => {
            let g = load_group(cli)?;
            let report = spr::spr_report(&g, if *full { PairPolicy::WithinCap } else { PairPolicy::Skip })?;
            if !*full {
                println!("{}", report.spr_total);
                return Ok(ExitCode::SUCCESS);
            }
            for row in &report.rows {
                match cli.format {
                    Format::Tsv => println!(
                        "{}\t{}\t{}\t{}",
                        row.element_order, row.class_size, row.spr, row.representative
                    ),
                    Format::JsonLines => println!(
                        "{}",
                        serde_json::json!({
                            "order": row.element_order,
                            "size": row.class_size,
                            "spr": row.spr.to_string(),
                            "representative": row.representative.to_string(),
                        })
                    ),
                }
            }
            println!("spr {}", report.spr_total);
            if let Some(dn) = &report.dn {
                println!("dn {}", dn);
            }
            if let Some(ds) = &report.ds {
                println!("ds {}", ds);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::SprElement { element } => {
            let g = load_group(cli)?;
            let x = parse_element(&g, element)?;
            println!("{}", spr::spr_element(&g, &x)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Subnormalizer {
            element,
            order_only,
        } => {
            let g = load_group(cli)?;
            let x = parse_element(&g, element)?;
            let set = subnormal::subnormalizer_bruteforce(&g, &x)?;
            println!("order {}", set.len());
            if !*order_only {
                for e in &set {
                    println!("{}", e);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Count { p } => {
            let g = load_group(cli)?;
            let census = counting::count_p_elements(&g, *p)?;
            println!("count {}", census.count);
            println!("p-part {}", census.p_part);
            println!("ratio {}", census.ratio);
            Ok(ExitCode::SUCCESS)
        }
        Command::Phi { aut } => {
            let g = load_group(cli)?;
            let aut_group = catalog::build(aut, &caps_of(cli))?;
            println!("{}", counting::phi_ratio(&g, &aut_group)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Census { aut, show } => run_census(cli, aut.as_deref(), *show),
        Command::VerifyPaper { only, verbose } => {
            let session = Session::new(caps_of(cli));
            let ids: Vec<usize> = match only {
                Some(ids) => {
                    for &id in ids {
                        if id == 0 || id > verify::CRITERIA_COUNT {
                            bail!("criterion ids run from 1 to {}", verify::CRITERIA_COUNT);
                        }
                    }
                    ids.clone()
                }
                None => (1..=verify::CRITERIA_COUNT).collect(),
            };
            let started = Instant::now();
            let results: Vec<_> = ids
                .iter()
                .map(|&id| verify::criterion(&session, id).expect("valid id"))
                .collect();
            let mut failed = 0;
            for result in &results {
                println!("{}", result.summary_line());
                if *verbose || !result.passed {
                    for line in &result.details {
                        println!("    {}", line);
                    }
                }
                if !result.passed {
                    failed += 1;
                }
            }
            if failed == 0 {
                println!(
                    "all {} criteria passed ({:.1?})",
                    results.len(),
                    started.elapsed()
                );
                Ok(ExitCode::SUCCESS)
            } else {
                println!("{} of {} criteria FAILED", failed, results.len());
                Ok(ExitCode::FAILURE)
            }
        }
    }
}

fn census_path(cli: &Cli) -> anyhow::Result<PathBuf> {
    if let Some(path) = &cli.census_file {
        return Ok(path.clone());
    }
    if let Ok(path) = std::env::var("SUBNORM_CENSUS") {
        return Ok(PathBuf::from(path));
    }
    bail!("no census path: pass --census-file or set SUBNORM_CENSUS");
}

fn run_census(cli: &Cli, aut: Option<&str>, show: bool) -> anyhow::Result<ExitCode> {
    let path = census_path(cli)?;
    if show {
        let (records, warnings) = read_census(&path)?;
        let format = match cli.format {
            Format::Tsv => CensusFormat::Tsv,
            Format::JsonLines => CensusFormat::JsonLines,
        };
        for record in &records {
            println!("{}", record.render(format));
        }
        if warnings > 0 {
            eprintln!("warning: skipped {} malformed line(s)", warnings);
        }
        return Ok(ExitCode::SUCCESS);
    }

    let g = load_group(cli)?;
    let key = cli
        .name
        .clone()
        .or_else(|| cli.file.as_ref().map(|p| p.display().to_string()))
        .unwrap_or_else(|| "anonymous".into());
    let entry = cli.name.as_deref().and_then(catalog::manifest_entry);

    let report = spr::spr_report(&g, PairPolicy::Skip)?;
    let mut u_ratios = std::collections::BTreeMap::new();
    for p in g.primes() {
        u_ratios.insert(p, counting::count_p_elements(&g, p)?.ratio.to_string());
    }
    let phi = match aut {
        Some(spec) => {
            let aut_group = catalog::build(spec, &caps_of(cli))?;
            Some(counting::phi_ratio(&g, &aut_group)?.to_string())
        }
        None => None,
    };

    let mut checks = std::collections::BTreeMap::new();
    let table = g.conjugacy_classes()?;
    let mut casolo_ok = true;
    for class in &table.classes {
        if class.element_order == 1 {
            continue;
        }
        for p in g.primes() {
            if is_prime_power_of(class.element_order, p) {
                casolo_ok &= subnormal::casolo_report(&g, &class.representative, p)?
                    .identities_hold;
                break;
            }
        }
    }
    checks.insert("casolo".to_string(), casolo_ok);
    let mut sum_ok = true;
    for p in g.primes() {
        sum_ok &= counting::sum_identity_check(&g, p)?.holds;
    }
    checks.insert("sum_identity".to_string(), sum_ok);
    checks.insert(
        "p_core_criterion".to_string(),
        spr::check_op_criterion(&g)?.is_empty(),
    );
    if let Some(entry) = entry {
        if entry.simple {
            checks.insert(
                "lyons".to_string(),
                counting::lyons_check(&g).iter().all(|r| r.holds),
            );
        }
        if let Some(p) = entry.lie_characteristic {
            checks.insert(
                "steinberg".to_string(),
                counting::steinberg_instance_check(&g, p)?.holds,
            );
        }
    }

    let record = CensusRecord {
        key,
        order: g.order(),
        spr: report.spr_total.to_string(),
        u_ratios,
        phi,
        checks,
        version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    };
    let format = match cli.format {
        Format::Tsv => CensusFormat::Tsv,
        Format::JsonLines => CensusFormat::JsonLines,
    };
    append_record(&path, &record, format)?;
    println!("{}", record.render(format));
    let all_ok = record.checks.values().all(|&ok| ok);
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
